//! Exact arithmetic in the multiplicative group generated by roots of unity,
//! named formal parameters and rational primes.
//!
//! A [`UnitMonomial`] is `e^{2πi·phase} · ∏ g^{e_g}` with a rational phase in
//! `[0, 1)` and nonzero rational exponents on [`Generator`]s. The group is
//! torsion × free abelian, so the canonical form is unique and structural
//! equality is equality of complex numbers (symbols read as independent
//! transcendentals).

mod factor;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Div, Mul};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use factor::{factorize, is_prime};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("zero is not a unit")]
    ZeroScalar,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("roots of unity need a positive order")]
    ZeroRootOrder,
    #[error("invalid symbol name `{0}`")]
    InvalidSymbol(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
}

/// Free generator of the non-torsion part.
///
/// Symbols sort before primes; symbols compare by name, primes by value.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    Symbol(String),
    Prime(u64),
}

impl Generator {
    pub fn symbol(name: &str) -> Result<Self, ScalarError> {
        if is_symbol_name(name) {
            Ok(Generator::Symbol(name.to_owned()))
        } else {
            Err(ScalarError::InvalidSymbol(name.to_owned()))
        }
    }

    pub fn prime(p: u64) -> Result<Self, ScalarError> {
        if is_prime(p) {
            Ok(Generator::Prime(p))
        } else {
            Err(ScalarError::NotPrime(p))
        }
    }
}

/// Identifiers usable as symbols. `i` and `zeta` are reserved by the
/// expression syntax.
pub fn is_symbol_name(name: &str) -> bool {
    let mut chars = name.chars();
    let head_ok = matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_');
    head_ok && chars.all(|c| c.is_ascii_alphanumeric() || c == '_') && name != "i" && name != "zeta"
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UnitMonomial {
    phase: BigRational,
    exponents: BTreeMap<Generator, BigRational>,
}

fn reduce_phase(phase: BigRational) -> BigRational {
    let floor = phase.floor();
    phase - floor
}

impl UnitMonomial {
    pub fn one() -> Self {
        UnitMonomial {
            phase: BigRational::zero(),
            exponents: BTreeMap::new(),
        }
    }

    pub fn minus_one() -> Self {
        Self::from_phase(BigRational::new(1.into(), 2.into()))
    }

    /// `e^{2πi·phase}`; the phase is taken modulo 1.
    pub fn from_phase(phase: BigRational) -> Self {
        UnitMonomial {
            phase: reduce_phase(phase),
            exponents: BTreeMap::new(),
        }
    }

    /// `ζ_order^k = e^{2πi·k/order}`.
    pub fn root_of_unity(k: impl Into<BigInt>, order: impl Into<BigInt>) -> Result<Self, ScalarError> {
        let order = order.into();
        if !order.is_positive() {
            return Err(ScalarError::ZeroRootOrder);
        }
        Ok(Self::from_phase(BigRational::new(k.into(), order)))
    }

    pub fn symbol(name: &str) -> Result<Self, ScalarError> {
        Ok(Self::generator(Generator::symbol(name)?))
    }

    pub fn generator(g: Generator) -> Self {
        Self::generator_power(g, BigRational::one())
    }

    pub fn generator_power(g: Generator, exponent: BigRational) -> Self {
        let mut exponents = BTreeMap::new();
        if !exponent.is_zero() {
            exponents.insert(g, exponent);
        }
        UnitMonomial {
            phase: BigRational::zero(),
            exponents,
        }
    }

    /// The unit `p / q`: the sign becomes phase 1/2 and `|p/q|` is factored
    /// into prime generators.
    pub fn from_rational(p: i64, q: i64) -> Result<Self, ScalarError> {
        if p == 0 {
            return Err(ScalarError::ZeroScalar);
        }
        if q == 0 {
            return Err(ScalarError::ZeroDenominator);
        }
        let mut out = Self::from_unsigned(p.unsigned_abs()).div(&Self::from_unsigned(q.unsigned_abs()));
        if (p < 0) != (q < 0) {
            out = out.mul(&Self::minus_one());
        }
        Ok(out)
    }

    /// Panics on zero.
    pub(crate) fn from_unsigned(n: u64) -> Self {
        let exponents = factorize(n)
            .into_iter()
            .map(|(p, e)| (Generator::Prime(p), BigRational::from_integer(e.into())))
            .collect();
        UnitMonomial {
            phase: BigRational::zero(),
            exponents,
        }
    }

    pub fn phase(&self) -> &BigRational {
        &self.phase
    }

    /// Nonzero exponents in generator order.
    pub fn exponents(&self) -> &BTreeMap<Generator, BigRational> {
        &self.exponents
    }

    pub fn exponent(&self, g: &Generator) -> BigRational {
        self.exponents.get(g).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_one(&self) -> bool {
        self.phase.is_zero() && self.exponents.is_empty()
    }

    /// True when the value is a root of unity.
    pub fn is_torsion(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut exponents = self.exponents.clone();
        for (g, e) in &other.exponents {
            let sum = exponents.get(g).map_or_else(|| e.clone(), |x| x + e);
            if sum.is_zero() {
                exponents.remove(g);
            } else {
                exponents.insert(g.clone(), sum);
            }
        }
        UnitMonomial {
            phase: reduce_phase(&self.phase + &other.phase),
            exponents,
        }
    }

    pub fn inv(&self) -> Self {
        UnitMonomial {
            phase: reduce_phase(-&self.phase),
            exponents: self.exponents.iter().map(|(g, e)| (g.clone(), -e)).collect(),
        }
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    pub fn pow(&self, k: i64) -> Self {
        self.pow_rational(&BigRational::from_integer(k.into()))
    }

    /// Raises the free part to a rational power and the phase by the same
    /// factor. Only integer powers are group homomorphisms on the torsion part;
    /// for a fractional `k` this picks the principal branch of the phase.
    pub fn pow_rational(&self, k: &BigRational) -> Self {
        if k.is_zero() {
            return Self::one();
        }
        UnitMonomial {
            phase: reduce_phase(&self.phase * k),
            exponents: self.exponents.iter().map(|(g, e)| (g.clone(), e * k)).collect(),
        }
    }
}

impl Default for UnitMonomial {
    fn default() -> Self {
        Self::one()
    }
}

impl fmt::Display for UnitMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parser::format_scalar(self))
    }
}

impl Mul for &UnitMonomial {
    type Output = UnitMonomial;
    fn mul(self, rhs: Self) -> UnitMonomial {
        UnitMonomial::mul(self, rhs)
    }
}

impl Div for &UnitMonomial {
    type Output = UnitMonomial;
    fn div(self, rhs: Self) -> UnitMonomial {
        UnitMonomial::div(self, rhs)
    }
}

impl std::iter::Product for UnitMonomial {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::one(), |acc, x| UnitMonomial::mul(&acc, &x))
    }
}
