use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::scalar::{Generator, UnitMonomial};

use super::{MatrixError, QuantumMatrix};

/// The rank-one matrix `q_ij = a_i · a_j^-1`.
pub fn rank_one_from_weights(weights: &[UnitMonomial]) -> Result<QuantumMatrix, MatrixError> {
    if weights.is_empty() {
        return Err(MatrixError::Empty);
    }
    Ok(QuantumMatrix::from_fn_unchecked(weights.len(), |i, j| {
        weights[i].div(&weights[j])
    }))
}

/// Entrywise product with the rank-one matrix of `weights`. Every
/// coherence value `q_ij q_jl q_il^-1` is unchanged.
pub fn gauge_twist(q: &QuantumMatrix, weights: &[UnitMonomial]) -> Result<QuantumMatrix, MatrixError> {
    if weights.len() != q.size() {
        return Err(MatrixError::LengthMismatch {
            expected: q.size(),
            found: weights.len(),
        });
    }
    Ok(QuantumMatrix::from_fn_unchecked(q.size(), |i, j| {
        weights[i].div(&weights[j]).mul(q.get(i, j))
    }))
}

/// `m_ij = -1` for all `i ≠ j`.
pub fn sign_matrix(n: usize) -> QuantumMatrix {
    QuantumMatrix::from_upper(n, |_, _| UnitMonomial::minus_one())
}

/// The four-variable matrix
///
/// ```text
/// [ 1       a       b          x        ]
/// [ a^-1    1       a^-1 b     c        ]
/// [ b^-1    a b^-1  1          a b^-1 c ]
/// [ x^-1    c^-1    a^-1 b c^-1  1      ]
/// ```
///
/// with `x` a free symbol, or the given value. Its components are
/// `{0,1,2}, {1,2,3}, {0,3}` for free `x` and everything when `x = ac`.
pub fn example_matrix(x: Option<UnitMonomial>) -> QuantumMatrix {
    let s = |name: &str| UnitMonomial::symbol(name).expect("valid symbol");
    let (a, b, c) = (s("a"), s("b"), s("c"));
    let x = x.unwrap_or_else(|| s("x"));
    QuantumMatrix::from_upper(3, |i, j| match (i, j) {
        (0, 1) => a.clone(),
        (0, 2) => b.clone(),
        (0, 3) => x.clone(),
        (1, 2) => a.inv().mul(&b),
        (1, 3) => c.clone(),
        (2, 3) => a.div(&b).mul(&c),
        _ => unreachable!(),
    })
}

/// Where the entries of [`random_matrix`] come from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RandomPool {
    /// Each entry is a random root of unity of order at most
    /// `max_denominator` times `s0^e0 ⋯ s{k-1}^e{k-1}` over `symbols` shared
    /// symbols, exponents drawn from `-max_exponent..=max_exponent`.
    Mixed {
        max_denominator: u32,
        symbols: usize,
        max_exponent: u32,
    },
    /// Entry `(i, j)` is its own symbol `q{i}_{j}`.
    FreshSymbols,
}

impl RandomPool {
    pub fn mixed(max_denominator: u32, symbols: usize) -> Self {
        RandomPool::Mixed {
            max_denominator,
            symbols,
            max_exponent: 1,
        }
    }
}

/// Deterministic in `(n, seed, pool)`.
pub fn random_matrix(n: usize, seed: u64, pool: &RandomPool) -> QuantumMatrix {
    match *pool {
        RandomPool::FreshSymbols => QuantumMatrix::from_upper(n, |i, j| {
            UnitMonomial::symbol(&format!("q{i}_{j}")).expect("valid symbol")
        }),
        RandomPool::Mixed {
            max_denominator,
            symbols,
            max_exponent,
        } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let gens: Vec<Generator> = (0..symbols)
                .map(|k| Generator::symbol(&format!("s{k}")).expect("valid symbol"))
                .collect();
            let max_den = i64::from(max_denominator.max(1));
            let max_exp = i64::from(max_exponent);
            QuantumMatrix::from_upper(n, |_, _| {
                let den = rng.gen_range(1..=max_den);
                let num = rng.gen_range(0..den);
                let mut x = UnitMonomial::root_of_unity(num, den).expect("positive order");
                for g in &gens {
                    let e = rng.gen_range(-max_exp..=max_exp);
                    x = x.mul(&UnitMonomial::generator_power(
                        g.clone(),
                        BigRational::from_integer(e.into()),
                    ));
                }
                x
            })
        }
    }
}
