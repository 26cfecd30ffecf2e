mod common;

use common::{expected_transcript, golden_dir, run_binary, run_transcript, TRANSCRIPTS};
use qpoints::matrix::example_matrix;
use qpoints::parse_matrix_file;

#[test]
fn golden_transcripts() {
    for t in &TRANSCRIPTS {
        let (code, out) = run_transcript(t);
        assert_eq!(code, 0, "{}", t.name);
        assert_eq!(
            String::from_utf8(out).unwrap(),
            String::from_utf8(expected_transcript(t)).unwrap(),
            "{}",
            t.name
        );
    }
}

#[test]
fn output_is_deterministic() {
    for t in &TRANSCRIPTS {
        assert_eq!(run_transcript(t), run_transcript(t), "{}", t.name);
    }
    let args = ["gen", "random", "--n", "6", "--seed", "31"];
    assert_eq!(run_binary(&args, b"").stdout, run_binary(&args, b"").stdout);
}

#[test]
fn golden_inputs_parse_to_the_example() {
    let text = std::fs::read_to_string(golden_dir().join("example.qm")).unwrap();
    assert_eq!(parse_matrix_file(&text).unwrap(), example_matrix(None));
    let printed = run_binary(&["example"], b"").stdout;
    assert_eq!(
        parse_matrix_file(std::str::from_utf8(&printed).unwrap()).unwrap(),
        example_matrix(None)
    );
}

#[test]
fn verify_flag_keeps_the_components() {
    let plain = run_binary(&["components", "{golden}/example.qm"], b"");
    let verified = run_binary(&["components", "{golden}/example.qm", "--verify"], b"");
    assert_eq!(verified.code, 0);
    assert_eq!(plain.stdout, verified.stdout);

    let out = run_binary(&["verify", "{golden}/example.qm"], b"");
    assert_eq!(out.code, 0);
    assert!(String::from_utf8(out.stdout).unwrap().ends_with("agreement: yes\n"));
}

#[test]
fn threads_do_not_change_output() {
    let input = run_binary(
        &[
            "gen",
            "random",
            "--n",
            "9",
            "--seed",
            "4",
            "--max-denominator",
            "2",
            "--symbols",
            "0",
        ],
        b"",
    )
    .stdout;
    let one = run_binary(&["components", "-", "--json"], &input);
    let four = run_binary(&["components", "-", "--json", "--threads", "4"], &input);
    assert_eq!(one.code, 0);
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn exit_codes() {
    let bad_syntax = run_binary(&["components", "-"], b"n = 1\nq 0 1 = a^^2\n");
    assert_eq!(bad_syntax.code, 2);
    assert!(String::from_utf8(bad_syntax.stderr).unwrap().contains("line 2"));

    assert_eq!(run_binary(&["components", "-"], b"n = 1\nq 0 1 = 0\n").code, 1);
    assert_eq!(
        run_binary(&["components", "-"], b"n = 2\nq 0 1 = a\nq 1 2 = b\n").code,
        1
    );
    assert_eq!(run_binary(&["components"], b"").code, 2);
    assert_eq!(
        run_binary(&["membership", "{golden}/example.qm", "--point", "1,,0,1"], b"").code,
        2
    );
    assert_eq!(
        run_binary(&["membership", "{golden}/example.qm", "--point", "1,0,1"], b"").code,
        1
    );
    assert_eq!(run_binary(&["gen", "cube", "--n", "2"], b"").code, 2);
}

#[test]
fn membership_on_a_component() {
    let out = run_binary(&["membership", "{golden}/example.qm", "--point", "-1,0,0,zeta(5)"], b"");
    assert_eq!(out.code, 0);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "in pts (on P(0,3))\n");
}

#[test]
fn gen_round_trips() {
    for args in [
        &["gen", "sign", "--n", "5"][..],
        &["gen", "rank1", "--n", "3", "--weights", "2,-1,a^(1/2),zeta(8)^3"],
        &["gen", "random", "--n", "7", "--seed", "12"],
        &["gen", "random", "--n", "4", "--fresh"],
    ] {
        let out = run_binary(args, b"");
        assert_eq!(out.code, 0, "{args:?}");
        parse_matrix_file(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    }
    let rank1 = run_binary(&["gen", "rank1", "--n", "3"], b"").stdout;
    let full = run_binary(&["components", "-", "--json"], &rank1);
    assert!(String::from_utf8(full.stdout)
        .unwrap()
        .contains(r#""is_full_space":true"#));
}
