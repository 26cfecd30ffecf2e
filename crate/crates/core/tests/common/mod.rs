#![allow(dead_code)]

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Stdio};

use num_rational::BigRational;
use qpoints::matrix::{random_matrix, RandomPool};
use qpoints::{Generator, QuantumMatrix, UnitMonomial};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SYMBOLS: [&str; 5] = ["a", "b", "c", "x", "y_1"];
pub const PRIMES: [u64; 6] = [2, 3, 5, 7, 97, 4294967291];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random canonical value: a root of unity of order ≤ 12 times a few symbol
/// and prime powers, some with fractional exponents.
pub fn random_unit(rng: &mut ChaCha8Rng) -> UnitMonomial {
    let den = rng.gen_range(1..=12i64);
    let mut x = UnitMonomial::root_of_unity(rng.gen_range(0..den), den).unwrap();
    let factors = rng.gen_range(0..4);
    for _ in 0..factors {
        let g = if rng.gen_bool(0.6) {
            Generator::symbol(SYMBOLS.choose(rng).unwrap()).unwrap()
        } else {
            Generator::prime(*PRIMES.choose(rng).unwrap()).unwrap()
        };
        let exp_den = *[1i64, 1, 1, 2, 3].choose(rng).unwrap();
        let exp = BigRational::new(rng.gen_range(-3..=3i64).into(), exp_den.into());
        x = x.mul(&UnitMonomial::generator_power(g, exp));
    }
    x
}

pub fn random_units(rng: &mut ChaCha8Rng, len: usize) -> Vec<UnitMonomial> {
    (0..len).map(|_| random_unit(rng)).collect()
}

/// Pool mix used for randomized matrix tests: phases of order ≤ 6 and up to
/// four shared symbols, biased toward small pools so that coherent triples
/// (and thus larger components) actually occur.
pub fn random_pool(rng: &mut ChaCha8Rng) -> RandomPool {
    if rng.gen_bool(0.5) {
        RandomPool::mixed(rng.gen_range(1..=3), rng.gen_range(0..=1))
    } else {
        RandomPool::mixed(rng.gen_range(1..=6), rng.gen_range(0..=4))
    }
}

pub fn random_test_matrix(seed: u64, min_n: usize, max_n: usize) -> QuantumMatrix {
    let mut r = rng(seed);
    let n = r.gen_range(min_n..=max_n);
    let pool = random_pool(&mut r);
    random_matrix(n, r.gen(), &pool)
}

/// Matrix with arbitrary random entries (fractional exponents, primes).
pub fn random_general_matrix(seed: u64, max_n: usize) -> QuantumMatrix {
    let mut r = rng(seed);
    let n = r.gen_range(0..=max_n);
    let entries = random_units(&mut r, n * (n + 1) / 2);
    let mut it = entries.into_iter();
    QuantumMatrix::from_upper(n, |_, _| it.next().unwrap())
}

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub struct Transcript {
    pub name: &'static str,
    /// Commands run left to right, each one's stdout feeding the next.
    pub pipeline: &'static [&'static [&'static str]],
    pub expected: &'static str,
}

pub const TRANSCRIPTS: [Transcript; 7] = [
    Transcript {
        name: "example matrix file",
        pipeline: &[&["example"]],
        expected: "example.out",
    },
    Transcript {
        name: "components of the example, JSON",
        pipeline: &[&["components", "{golden}/example.qm", "--json"]],
        expected: "components_example_json.out",
    },
    Transcript {
        name: "components of the example with x = ac, JSON",
        pipeline: &[&["components", "{golden}/example_x_eq_ac.qm", "--json"]],
        expected: "components_x_eq_ac_json.out",
    },
    Transcript {
        name: "gen sign --n 3 | components -",
        pipeline: &[&["gen", "sign", "--n", "3"], &["components", "-"]],
        expected: "sign3_components.out",
    },
    Transcript {
        name: "membership of [1:1:0:1] in the example",
        pipeline: &[&["membership", "{golden}/example.qm", "--point", "1,1,0,1"]],
        expected: "membership_example_1101.out",
    },
    Transcript {
        name: "localize the example at 0",
        pipeline: &[&["localize", "{golden}/example.qm", "--at", "0"]],
        expected: "localize_example_0.out",
    },
    Transcript {
        name: "delete index 3 from the example",
        pipeline: &[&["delete", "{golden}/example.qm", "--at", "3"]],
        expected: "delete_example_3.out",
    },
];

pub struct Output {
    pub code: i32,
    pub stdout: Vec<u8>,
    pub stderr: Vec<u8>,
}

pub fn run_binary(args: &[&str], stdin: &[u8]) -> Output {
    let golden = golden_dir();
    let args: Vec<String> = args
        .iter()
        .map(|a| a.replace("{golden}", golden.to_str().unwrap()))
        .collect();
    let mut child = Command::new(env!("CARGO_BIN_EXE_qpoints"))
        .args(&args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn qpoints");
    child.stdin.take().unwrap().write_all(stdin).unwrap();
    let out = child.wait_with_output().unwrap();
    Output {
        code: out.status.code().expect("exited normally"),
        stdout: out.stdout,
        stderr: out.stderr,
    }
}

/// Runs a transcript and returns `(exit code of the last stage, stdout)`.
pub fn run_transcript(t: &Transcript) -> (i32, Vec<u8>) {
    let mut input = Vec::new();
    let mut code = 0;
    for stage in t.pipeline {
        let out = run_binary(stage, &input);
        code = out.code;
        input = out.stdout;
    }
    (code, input)
}

pub fn expected_transcript(t: &Transcript) -> Vec<u8> {
    std::fs::read(golden_dir().join(t.expected)).expect("golden file")
}
