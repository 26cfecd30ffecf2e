//! Text formats: scalar expressions, matrix documents, points and JSON output.
//!
//! Scalar grammar (`^` binds tighter than `*` and `/`; unary minus takes the
//! whole following atom):
//!
//! ```text
//! expr     := term (('*' | '/') term)*
//! term     := atom ('^' exponent)?
//! exponent := signed-integer | '(' signed-integer '/' natural ')'
//! atom     := natural | identifier | 'i' | 'zeta(' natural ')' | '-' atom | '(' expr ')'
//! ```
//!
//! Matrix documents are line based:
//!
//! ```text
//! # comment
//! n = 2
//! q 0 1 = a
//! q 0 2 = -1
//! q 1 2 = zeta(3)*b^-1
//! ```
//!
//! Only the strict upper triangle is written; the diagonal is 1 and the lower
//! triangle is forced by `q_ji = q_ij^-1`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::components::{PointVariety, ProjectivePoint};
use crate::matrix::QuantumMatrix;
use crate::scalar::{Generator, UnitMonomial};

/// 1-based source location.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {pos}: {message}")]
    Syntax { pos: Position, message: String },
    #[error("zero scalar at {pos}: entries must be nonzero")]
    ZeroScalar { pos: Position },
    #[error("missing entry q {0} {1}")]
    MissingEntry(usize, usize),
    #[error("duplicate entry q {0} {1}")]
    DuplicateEntry(usize, usize),
    #[error("index {index} out of range for n = {n} at {pos}")]
    IndexOutOfRange { index: usize, n: usize, pos: Position },
}

impl ParseError {
    fn syntax(pos: Position, message: impl Into<String>) -> Self {
        ParseError::Syntax {
            pos,
            message: message.into(),
        }
    }

    // Moves a position computed inside a single-line fragment to where the
    // fragment sits in the enclosing text.
    fn shifted(self, line: usize, column_offset: usize) -> Self {
        let shift = |p: Position| Position {
            line,
            column: p.column + column_offset,
        };
        match self {
            ParseError::Syntax { pos, message } => ParseError::Syntax {
                pos: shift(pos),
                message,
            },
            ParseError::ZeroScalar { pos } => ParseError::ZeroScalar { pos: shift(pos) },
            ParseError::IndexOutOfRange { index, n, pos } => ParseError::IndexOutOfRange {
                index,
                n,
                pos: shift(pos),
            },
            other => other,
        }
    }
}

struct ExprParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> ExprParser<'a> {
    fn new(text: &'a str) -> Self {
        ExprParser {
            src: text.as_bytes(),
            pos: 0,
        }
    }

    fn here(&self) -> Position {
        Position {
            line: 1,
            column: self.pos + 1,
        }
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::syntax(self.here(), message)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{}`", c as char)))
        }
    }

    fn digits(&mut self) -> Result<BigUint, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("nonempty digit string"))
    }

    fn signed_integer(&mut self) -> Result<BigInt, ParseError> {
        let negative = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let magnitude = BigInt::from(self.digits()?);
        Ok(if negative { -magnitude } else { magnitude })
    }

    fn expr(&mut self) -> Result<UnitMonomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'*') {
                acc = acc.mul(&self.term()?);
            } else if self.eat(b'/') {
                acc = acc.div(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<UnitMonomial, ParseError> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let exponent = if self.eat(b'(') {
            let num = self.signed_integer()?;
            self.expect(b'/')?;
            let den_pos = self.here();
            let den = BigInt::from(self.digits()?);
            if den.is_zero() {
                return Err(ParseError::syntax(den_pos, "zero exponent denominator"));
            }
            self.expect(b')')?;
            BigRational::new(num, den)
        } else {
            BigRational::from_integer(self.signed_integer()?)
        };
        Ok(base.pow_rational(&exponent))
    }

    fn atom(&mut self) -> Result<UnitMonomial, ParseError> {
        match self.peek() {
            None => Err(self.error("unexpected end of expression")),
            Some(b'-') => {
                self.pos += 1;
                Ok(UnitMonomial::minus_one().mul(&self.atom()?))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(b')')?;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let pos = self.here();
                let value = self.digits()?;
                if value.is_zero() {
                    return Err(ParseError::ZeroScalar { pos });
                }
                let value = value
                    .to_u64()
                    .ok_or_else(|| ParseError::syntax(pos, "integer literal does not fit in 64 bits"))?;
                Ok(UnitMonomial::from_unsigned(value))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let pos = self.here();
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii identifier");
                match name {
                    "i" => Ok(UnitMonomial::root_of_unity(1, 4).expect("positive order")),
                    "zeta" => {
                        self.expect(b'(')?;
                        let order_pos = self.here();
                        let order = self.digits()?;
                        if order.is_zero() {
                            return Err(ParseError::syntax(order_pos, "zeta order must be positive"));
                        }
                        self.expect(b')')?;
                        Ok(UnitMonomial::root_of_unity(1, BigInt::from(order)).expect("positive order"))
                    }
                    _ => UnitMonomial::symbol(name).map_err(|e| ParseError::syntax(pos, e.to_string())),
                }
            }
            Some(c) => Err(self.error(format!("unexpected `{}`", c as char))),
        }
    }
}

/// Parses a scalar expression into canonical form.
pub fn parse_scalar(text: &str) -> Result<UnitMonomial, ParseError> {
    let mut p = ExprParser::new(text);
    if p.peek().is_none() {
        return Err(p.error("empty expression"));
    }
    let value = p.expr()?;
    if p.peek().is_some() {
        return Err(p.error("trailing input"));
    }
    Ok(value)
}

fn format_exponent(e: &BigRational) -> Option<String> {
    if e.is_one() {
        None
    } else if e.is_integer() {
        Some(format!("^{}", e.numer()))
    } else {
        Some(format!("^({}/{})", e.numer(), e.denom()))
    }
}

/// Canonical text for a scalar; [`parse_scalar`] reads it back to the same value.
///
/// The phase comes first (`-1` or `zeta(d)^k`), then symbols in lexicographic
/// order, then primes ascending, joined by `*`.
pub fn format_scalar(x: &UnitMonomial) -> String {
    let mut factors = Vec::new();
    let phase = x.phase();
    if !phase.is_zero() {
        if *phase == BigRational::new(1.into(), 2.into()) {
            factors.push("-1".to_owned());
        } else if phase.numer().is_one() {
            factors.push(format!("zeta({})", phase.denom()));
        } else {
            factors.push(format!("zeta({})^{}", phase.denom(), phase.numer()));
        }
    }
    for (g, e) in x.exponents() {
        let base = match g {
            Generator::Symbol(s) => s.clone(),
            Generator::Prime(p) => p.to_string(),
        };
        factors.push(match format_exponent(e) {
            Some(suffix) => base + &suffix,
            None => base,
        });
    }
    if factors.is_empty() {
        "1".to_owned()
    } else {
        factors.join("*")
    }
}

/// An upper-triangle entry as it appeared in the source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DocumentEntry {
    pub text: String,
    pub pos: Position,
}

/// Textual form of a quantum matrix: `n` plus one expression per pair `i < j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixDocument {
    pub n: usize,
    pub entries: BTreeMap<(usize, usize), DocumentEntry>,
}

fn parse_index(token: &str, pos: Position) -> Result<usize, ParseError> {
    token
        .parse()
        .map_err(|_| ParseError::syntax(pos, format!("expected an index, found `{token}`")))
}

impl MatrixDocument {
    /// Checks the line structure and that every pair `i < j` appears once.
    /// Entry expressions are kept as text.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut n = None;
        let mut entries = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let content = raw.split('#').next().unwrap_or("");
            if content.trim().is_empty() {
                continue;
            }
            let indent = content.len() - content.trim_start().len();
            let at = |offset: usize| Position {
                line: line_no,
                column: offset + 1,
            };
            let Some(eq) = content.find('=') else {
                return Err(ParseError::syntax(at(indent), "expected `=`"));
            };
            let lhs: Vec<&str> = content[..eq].split_whitespace().collect();
            let rhs = &content[eq + 1..];
            let rhs_offset = eq + 1 + (rhs.len() - rhs.trim_start().len());
            match lhs.as_slice() {
                ["n"] => {
                    if n.is_some() {
                        return Err(ParseError::syntax(at(indent), "duplicate `n` line"));
                    }
                    if !entries.is_empty() {
                        return Err(ParseError::syntax(at(indent), "`n = …` must precede the entries"));
                    }
                    let value = rhs.trim();
                    n = Some(value.parse().map_err(|_| {
                        ParseError::syntax(at(rhs_offset), format!("expected a natural number, found `{value}`"))
                    })?);
                }
                ["q", i, j] => {
                    let Some(n) = n else {
                        return Err(ParseError::syntax(at(indent), "entry before `n = …` line"));
                    };
                    let i = parse_index(i, at(indent))?;
                    let j = parse_index(j, at(indent))?;
                    if i >= j {
                        return Err(ParseError::syntax(
                            at(indent),
                            format!("entry q {i} {j} is not above the diagonal (need i < j)"),
                        ));
                    }
                    if j > n {
                        return Err(ParseError::IndexOutOfRange {
                            index: j,
                            n,
                            pos: at(indent),
                        });
                    }
                    let entry = DocumentEntry {
                        text: rhs.trim().to_owned(),
                        pos: at(rhs_offset),
                    };
                    if entries.insert((i, j), entry).is_some() {
                        return Err(ParseError::DuplicateEntry(i, j));
                    }
                }
                _ => {
                    return Err(ParseError::syntax(
                        at(indent),
                        "expected `n = <natural>` or `q <i> <j> = <expr>`",
                    ))
                }
            }
        }
        let n = n.ok_or_else(|| ParseError::syntax(Position { line: 1, column: 1 }, "missing `n = …` line"))?;
        for i in 0..=n {
            for j in i + 1..=n {
                if !entries.contains_key(&(i, j)) {
                    return Err(ParseError::MissingEntry(i, j));
                }
            }
        }
        Ok(MatrixDocument { n, entries })
    }

    pub fn from_matrix(q: &QuantumMatrix) -> Self {
        let entries = q
            .upper_entries()
            .enumerate()
            .map(|(k, (i, j, x))| {
                let entry = DocumentEntry {
                    text: format_scalar(x),
                    pos: Position { line: k + 2, column: 1 },
                };
                ((i, j), entry)
            })
            .collect();
        MatrixDocument { n: q.n(), entries }
    }

    pub fn to_matrix(&self) -> Result<QuantumMatrix, ParseError> {
        let mut values = BTreeMap::new();
        for (&key, entry) in &self.entries {
            let x = parse_scalar(&entry.text).map_err(|e| e.shifted(entry.pos.line, entry.pos.column - 1))?;
            values.insert(key, x);
        }
        Ok(QuantumMatrix::from_upper(self.n, |i, j| values[&(i, j)].clone()))
    }
}

impl fmt::Display for MatrixDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n = {}", self.n)?;
        for (&(i, j), entry) in &self.entries {
            writeln!(f, "q {i} {j} = {}", entry.text)?;
        }
        Ok(())
    }
}

pub fn parse_matrix_file(text: &str) -> Result<QuantumMatrix, ParseError> {
    MatrixDocument::parse(text)?.to_matrix()
}

/// Serializes the upper triangle in the matrix file format.
pub fn format_matrix_file(q: &QuantumMatrix) -> String {
    MatrixDocument::from_matrix(q).to_string()
}

/// Parses comma-separated homogeneous coordinates; a literal `0` is a zero
/// coordinate, anything else a scalar expression.
pub fn parse_point(text: &str) -> Result<ProjectivePoint, ParseError> {
    let mut coords = Vec::new();
    let mut offset = 0;
    for field in text.split(',') {
        if field.trim() == "0" {
            coords.push(None);
        } else {
            coords.push(Some(parse_scalar(field).map_err(|e| e.shifted(1, offset))?));
        }
        offset += field.len() + 1;
    }
    ProjectivePoint::new(coords).map_err(|_| {
        ParseError::syntax(
            Position { line: 1, column: 1 },
            "a projective point needs a nonzero coordinate",
        )
    })
}

/// Extra fields attached to JSON output. Empty metadata is omitted.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct RunMeta {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
}

impl RunMeta {
    fn is_empty(&self) -> bool {
        self.verified.is_none()
    }
}

#[derive(Serialize)]
struct VarietyJson<'a> {
    n: usize,
    components: Vec<&'a [usize]>,
    dimension: usize,
    is_full_space: bool,
    #[serde(skip_serializing_if = "RunMeta::is_empty")]
    meta: &'a RunMeta,
}

/// Single-line JSON with keys `n`, `components`, `dimension`,
/// `is_full_space` (and `meta` when non-empty), components in canonical order.
pub fn variety_to_json(v: &PointVariety, meta: &RunMeta) -> String {
    let doc = VarietyJson {
        n: v.n(),
        components: v.components().iter().map(|s| s.indices()).collect(),
        dimension: v.dimension(),
        is_full_space: v.is_full_space(),
        meta,
    };
    serde_json::to_string(&doc).expect("plain data serializes")
}
