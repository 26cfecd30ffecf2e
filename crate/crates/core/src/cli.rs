//! The `qpoints` command-line front end.
//!
//! Exit codes: 0 on success, 1 on domain errors (zero scalars, invalid
//! matrices, algorithm disagreement under `--verify`), 2 on usage and syntax
//! errors.

use std::ffi::OsString;
use std::io::{self, Read, Write};

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::components::{
    brute_force_components, components_with, membership, recursive_components, ComponentOptions, ComponentsError,
    PointVariety, BRUTE_FORCE_MAX_N,
};
use crate::matrix::{
    delete_index, example_matrix, localize, random_matrix, rank_one_from_weights, sign_matrix, IndexMap, IndexSubset,
    MatrixError, QuantumMatrix, RandomPool,
};
use crate::parser::{
    format_matrix_file, parse_matrix_file, parse_point, parse_scalar, variety_to_json, ParseError, RunMeta,
};
use crate::scalar::UnitMonomial;

pub const DEFAULT_MAX_COMPONENTS: u64 = 1_000_000;

#[derive(Debug, Parser)]
#[command(
    name = "qpoints",
    version,
    about = "Irreducible components of point varieties of quantum polynomial algebras"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the irreducible components of the point variety
    Components {
        /// Matrix file, or `-` for standard input
        file: String,
        /// Print one line of JSON instead of text
        #[arg(long)]
        json: bool,
        /// Give up once more components than this have been found
        #[arg(long, default_value_t = DEFAULT_MAX_COMPONENTS, value_parser = clap::value_parser!(u64).range(1..))]
        max_components: u64,
        /// Cross-check against the recursive and brute-force algorithms
        #[arg(long)]
        verify: bool,
        /// Worker threads for the per-index clique searches
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Decide whether a point lies on the point variety
    Membership {
        file: String,
        /// Comma-separated coordinates; write 0 for a zero coordinate
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Print the localized matrix r_jl = q_ij q_jl q_il^-1
    Localize {
        file: String,
        #[arg(long)]
        at: usize,
    },
    /// Print the matrix with one row and column removed
    Delete {
        file: String,
        #[arg(long)]
        at: usize,
    },
    /// Run all three component algorithms and compare them
    Verify { file: String },
    /// Print a generated matrix file
    Gen {
        #[arg(value_enum)]
        kind: GenKind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Weights for `rank1`, comma separated (default w0,…,wn)
        #[arg(long, allow_hyphen_values = true)]
        weights: Option<String>,
        /// Largest root-of-unity order for `random`
        #[arg(long, default_value_t = 6)]
        max_denominator: u32,
        /// Number of shared symbols for `random`
        #[arg(long, default_value_t = 4)]
        symbols: usize,
        /// Give every entry of `random` its own symbol
        #[arg(long)]
        fresh: bool,
    },
    /// Print the built-in four-variable example matrix
    Example,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    Sign,
    Rank1,
    Random,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Input { path: String, source: io::Error },
    #[error("{context}: {source}")]
    Parse { context: String, source: ParseError },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Components(#[from] ComponentsError),
    #[error("component algorithms disagree")]
    Disagreement,
    #[error("writing output: {0}")]
    Output(#[from] io::Error),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_)
            | CliError::Input { .. }
            | CliError::Parse {
                source: ParseError::Syntax { .. },
                ..
            } => 2,
            _ => 1,
        }
    }
}

/// Runs the CLI on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = stderr.write_all(text.as_bytes());
                    2
                }
            };
        }
    };
    match execute(config, stdin, stdout, stderr) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn load_matrix(path: &str, stdin: &mut dyn Read) -> Result<QuantumMatrix, CliError> {
    let text = if path == "-" {
        let mut buf = String::new();
        stdin.read_to_string(&mut buf).map_err(|source| CliError::Input {
            path: "<stdin>".into(),
            source,
        })?;
        buf
    } else {
        std::fs::read_to_string(path).map_err(|source| CliError::Input {
            path: path.into(),
            source,
        })?
    };
    parse_matrix_file(&text).map_err(|source| CliError::Parse {
        context: if path == "-" { "<stdin>".into() } else { path.into() },
        source,
    })
}

fn component_label(s: &IndexSubset) -> String {
    let parts: Vec<String> = s.indices().iter().map(usize::to_string).collect();
    format!("P({})", parts.join(","))
}

fn component_line(v: &PointVariety) -> String {
    let labels: Vec<String> = v.components().iter().map(component_label).collect();
    labels.join(" ")
}

/// One `P(i_0,…,i_k)` line per component, then the dimension and whether the
/// variety is the whole space.
pub fn render_text(v: &PointVariety) -> String {
    let mut out = String::new();
    for s in v.components() {
        out.push_str(&component_label(s));
        out.push('\n');
    }
    out.push_str(&format!("dimension = {}\n", v.dimension()));
    out.push_str(&format!(
        "full space: {}\n",
        if v.is_full_space() { "yes" } else { "no" }
    ));
    out
}

struct Comparison {
    clique: PointVariety,
    brute: Option<PointVariety>,
    recursive: PointVariety,
}

impl Comparison {
    fn run(q: &QuantumMatrix, clique: PointVariety) -> Result<Self, CliError> {
        let brute = if q.n() <= BRUTE_FORCE_MAX_N {
            Some(brute_force_components(q)?)
        } else {
            None
        };
        Ok(Comparison {
            clique,
            brute,
            recursive: recursive_components(q),
        })
    }

    fn agree(&self) -> bool {
        self.recursive == self.clique && self.brute.as_ref().is_none_or(|b| *b == self.clique)
    }

    fn report(&self) -> String {
        let brute = match &self.brute {
            Some(b) => component_line(b),
            None => format!("skipped (n > {BRUTE_FORCE_MAX_N})"),
        };
        format!(
            "clique:      {}\nbrute force: {}\nrecursive:   {}\n",
            component_line(&self.clique),
            brute,
            component_line(&self.recursive)
        )
    }
}

fn reindex_header(what: &str, map: &IndexMap) -> String {
    let olds: Vec<String> = map.new_to_old().iter().map(usize::to_string).collect();
    format!(
        "# {what}; rows 0..{} were original indices {}\n",
        olds.len() - 1,
        olds.join(",")
    )
}

fn parse_weights(text: &str) -> Result<Vec<UnitMonomial>, CliError> {
    text.split(',')
        .map(|w| {
            parse_scalar(w).map_err(|source| CliError::Parse {
                context: "--weights".into(),
                source,
            })
        })
        .collect()
}

pub const EXAMPLE_HEADER: &str = "\
# Four-variable example. Components for a free x:
#   P(0,1,2), P(1,2,3), P(0,3)
# Setting x = a*c makes the matrix rank one.
# Entry (2,3) is the reciprocal of the (3,2) entry b*a^-1*c^-1.
";

fn execute(
    config: RunConfig,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<(), CliError> {
    match config.command {
        Command::Components {
            file,
            json,
            max_components,
            verify,
            threads,
        } => {
            let q = load_matrix(&file, stdin)?;
            let opts = ComponentOptions {
                max_components: Some(usize::try_from(max_components).unwrap_or(usize::MAX)),
                threads,
            };
            let v = components_with(&q, &opts)?;
            if verify {
                let cmp = Comparison::run(&q, v.clone())?;
                if !cmp.agree() {
                    stderr.write_all(cmp.report().as_bytes())?;
                    return Err(CliError::Disagreement);
                }
            }
            if json {
                let meta = RunMeta {
                    verified: verify.then_some(true),
                };
                writeln!(stdout, "{}", variety_to_json(&v, &meta))?;
            } else {
                stdout.write_all(render_text(&v).as_bytes())?;
            }
        }
        Command::Membership { file, point } => {
            let q = load_matrix(&file, stdin)?;
            let p = parse_point(&point).map_err(|source| CliError::Parse {
                context: "--point".into(),
                source,
            })?;
            if membership(&q, &p)? {
                let v = components_with(&q, &ComponentOptions::default())?;
                let on = v
                    .containing_component(&p.support())
                    .expect("rank-one support lies in a component");
                writeln!(stdout, "in pts (on {})", component_label(on))?;
            } else {
                writeln!(stdout, "NOT in pts")?;
            }
        }
        Command::Localize { file, at } => {
            let q = load_matrix(&file, stdin)?;
            let (r, map) = localize(&q, at)?;
            stdout.write_all(reindex_header(&format!("localized at index {at}"), &map).as_bytes())?;
            stdout.write_all(format_matrix_file(&r).as_bytes())?;
        }
        Command::Delete { file, at } => {
            let q = load_matrix(&file, stdin)?;
            let (r, map) = delete_index(&q, at)?;
            stdout.write_all(reindex_header(&format!("index {at} deleted"), &map).as_bytes())?;
            stdout.write_all(format_matrix_file(&r).as_bytes())?;
        }
        Command::Verify { file } => {
            let q = load_matrix(&file, stdin)?;
            let v = components_with(&q, &ComponentOptions::default())?;
            let cmp = Comparison::run(&q, v)?;
            stdout.write_all(cmp.report().as_bytes())?;
            if !cmp.agree() {
                writeln!(stdout, "agreement: no")?;
                return Err(CliError::Disagreement);
            }
            writeln!(stdout, "agreement: yes")?;
        }
        Command::Gen {
            kind,
            n,
            seed,
            weights,
            max_denominator,
            symbols,
            fresh,
        } => {
            let q = match kind {
                GenKind::Sign => sign_matrix(n),
                GenKind::Rank1 => {
                    let w = match weights {
                        Some(text) => parse_weights(&text)?,
                        None => (0..=n)
                            .map(|k| UnitMonomial::symbol(&format!("w{k}")).expect("valid symbol"))
                            .collect(),
                    };
                    if w.len() != n + 1 {
                        return Err(CliError::Usage(format!(
                            "--weights needs {} values for n = {n}, got {}",
                            n + 1,
                            w.len()
                        )));
                    }
                    rank_one_from_weights(&w)?
                }
                GenKind::Random => {
                    let pool = if fresh {
                        RandomPool::FreshSymbols
                    } else {
                        RandomPool::mixed(max_denominator, symbols)
                    };
                    random_matrix(n, seed, &pool)
                }
            };
            stdout.write_all(format_matrix_file(&q).as_bytes())?;
        }
        Command::Example => {
            stdout.write_all(EXAMPLE_HEADER.as_bytes())?;
            stdout.write_all(format_matrix_file(&example_matrix(None)).as_bytes())?;
        }
    }
    Ok(())
}
