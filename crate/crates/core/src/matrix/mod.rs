//! Quantum parameter matrices and the matrix-level constructions on them.

mod generate;
mod ops;

use std::fmt;

use thiserror::Error;

use crate::scalar::UnitMonomial;

pub use generate::{example_matrix, gauge_twist, random_matrix, rank_one_from_weights, sign_matrix, RandomPool};
pub use ops::{
    coherence_value, coherent, delete_index, is_rank_one, is_rank_one_subset, is_rank_one_subset_all_triples,
    is_rank_one_subset_by_minors, is_rank_one_subset_from_base, localize,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("cannot delete the only remaining index")]
    CannotDeleteLast,
    #[error("indices must be pairwise distinct")]
    IndicesNotDistinct,
    #[error("index subset is empty")]
    EmptySubset,
    #[error("index {0} is repeated")]
    DuplicateIndex(usize),
    #[error("base index {0} is not in the subset")]
    BaseNotInSubset(usize),
    #[error("expected {expected} values, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("matrix has no rows")]
    Empty,
    #[error("matrix is not square")]
    NotSquare,
    #[error("diagonal entry ({0},{0}) is not 1")]
    DiagonalNotOne(usize),
    #[error("entries ({0},{1}) and ({1},{0}) are not reciprocal")]
    NotReciprocal(usize, usize),
}

/// The `(n+1)×(n+1)` parameter matrix of a quantum polynomial algebra:
/// unit diagonal and `q_ji = q_ij^-1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuantumMatrix {
    size: usize,
    entries: Vec<UnitMonomial>,
}

impl QuantumMatrix {
    /// Builds the matrix from its strict upper triangle; `f(i, j)` is called
    /// once for each `i < j` in row-major order.
    pub fn from_upper(n: usize, mut f: impl FnMut(usize, usize) -> UnitMonomial) -> Self {
        let size = n + 1;
        let mut entries = vec![UnitMonomial::one(); size * size];
        for i in 0..size {
            for j in i + 1..size {
                let x = f(i, j);
                entries[j * size + i] = x.inv();
                entries[i * size + j] = x;
            }
        }
        QuantumMatrix { size, entries }
    }

    /// Validating constructor for a full matrix.
    pub fn from_rows(rows: Vec<Vec<UnitMonomial>>) -> Result<Self, MatrixError> {
        let size = rows.len();
        if size == 0 {
            return Err(MatrixError::Empty);
        }
        if rows.iter().any(|r| r.len() != size) {
            return Err(MatrixError::NotSquare);
        }
        let q = QuantumMatrix {
            size,
            entries: rows.into_iter().flatten().collect(),
        };
        q.check_invariants()?;
        Ok(q)
    }

    // Callers guarantee the invariants; tests re-check them.
    pub(crate) fn from_fn_unchecked(size: usize, f: impl Fn(usize, usize) -> UnitMonomial) -> Self {
        assert!(size > 0);
        let entries = (0..size * size).map(|k| f(k / size, k % size)).collect();
        QuantumMatrix { size, entries }
    }

    pub fn all_ones(n: usize) -> Self {
        Self::from_upper(n, |_, _| UnitMonomial::one())
    }

    pub fn check_invariants(&self) -> Result<(), MatrixError> {
        if self.size == 0 {
            return Err(MatrixError::Empty);
        }
        if self.entries.len() != self.size * self.size {
            return Err(MatrixError::NotSquare);
        }
        for i in 0..self.size {
            if !self.get(i, i).is_one() {
                return Err(MatrixError::DiagonalNotOne(i));
            }
            for j in i + 1..self.size {
                if !self.get(i, j).mul(self.get(j, i)).is_one() {
                    return Err(MatrixError::NotReciprocal(i, j));
                }
            }
        }
        Ok(())
    }

    /// The matrix has `n + 1` rows.
    pub fn n(&self) -> usize {
        self.size - 1
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &UnitMonomial {
        assert!(
            i < self.size && j < self.size,
            "({i},{j}) outside {0}×{0} matrix",
            self.size
        );
        &self.entries[i * self.size + j]
    }

    pub(crate) fn check_index(&self, index: usize) -> Result<(), MatrixError> {
        if index < self.size {
            Ok(())
        } else {
            Err(MatrixError::IndexOutOfRange { index, n: self.n() })
        }
    }

    /// `(i, j, q_ij)` for `i < j`, row-major.
    pub fn upper_entries(&self) -> impl Iterator<Item = (usize, usize, &UnitMonomial)> + '_ {
        (0..self.size).flat_map(move |i| (i + 1..self.size).map(move |j| (i, j, self.get(i, j))))
    }

    /// Relabels index `k` as `perm[k]`: the result has `q'_{perm[i] perm[j]} = q_ij`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self, MatrixError> {
        if perm.len() != self.size {
            return Err(MatrixError::LengthMismatch {
                expected: self.size,
                found: perm.len(),
            });
        }
        let mut inverse = vec![usize::MAX; self.size];
        for (old, &new) in perm.iter().enumerate() {
            self.check_index(new)?;
            if inverse[new] != usize::MAX {
                return Err(MatrixError::DuplicateIndex(new));
            }
            inverse[new] = old;
        }
        Ok(Self::from_fn_unchecked(self.size, |i, j| {
            self.get(inverse[i], inverse[j]).clone()
        }))
    }
}

impl fmt::Display for QuantumMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.size {
            let row: Vec<String> = (0..self.size).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Sorted, duplicate-free set of indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexSubset(Vec<usize>);

impl IndexSubset {
    /// Sorts the indices; repeated indices are rejected.
    pub fn new(mut indices: Vec<usize>) -> Result<Self, MatrixError> {
        indices.sort_unstable();
        if let Some(w) = indices.windows(2).find(|w| w[0] == w[1]) {
            return Err(MatrixError::DuplicateIndex(w[0]));
        }
        Ok(IndexSubset(indices))
    }

    pub(crate) fn from_sorted_unchecked(indices: Vec<usize>) -> Self {
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        IndexSubset(indices)
    }

    /// `{0, …, n}`.
    pub fn full(n: usize) -> Self {
        IndexSubset((0..=n).collect())
    }

    pub fn singleton(i: usize) -> Self {
        IndexSubset(vec![i])
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn is_subset_of(&self, other: &IndexSubset) -> bool {
        self.0.iter().all(|&i| other.contains(i))
    }

    pub fn with(&self, i: usize) -> Self {
        let mut v = self.0.clone();
        if let Err(at) = v.binary_search(&i) {
            v.insert(at, i);
        }
        IndexSubset(v)
    }

    pub fn map(&self, f: impl Fn(usize) -> usize) -> Result<Self, MatrixError> {
        Self::new(self.0.iter().map(|&i| f(i)).collect())
    }

    pub(crate) fn check_bounds(&self, q: &QuantumMatrix) -> Result<(), MatrixError> {
        match self.0.last() {
            Some(&max) => q.check_index(max),
            None => Err(MatrixError::EmptySubset),
        }
    }
}

impl fmt::Display for IndexSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Correspondence between the indices of a derived matrix and the matrix it
/// came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexMap {
    new_to_old: Vec<usize>,
    old_size: usize,
}

impl IndexMap {
    /// Map of the matrix obtained by dropping `removed` from `0..old_size`.
    pub(crate) fn dropping(old_size: usize, removed: usize) -> Self {
        IndexMap {
            new_to_old: (0..old_size).filter(|&k| k != removed).collect(),
            old_size,
        }
    }

    pub fn to_old(&self, new: usize) -> usize {
        self.new_to_old[new]
    }

    pub fn to_new(&self, old: usize) -> Option<usize> {
        if old >= self.old_size {
            return None;
        }
        self.new_to_old.binary_search(&old).ok()
    }

    pub fn new_to_old(&self) -> &[usize] {
        &self.new_to_old
    }

    pub fn subset_to_old(&self, s: &IndexSubset) -> IndexSubset {
        IndexSubset::from_sorted_unchecked(s.indices().iter().map(|&k| self.to_old(k)).collect())
    }
}
