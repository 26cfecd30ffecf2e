//! Irreducible components of the point variety.
//!
//! The point variety of `A_Q` is the union of the coordinate subspaces
//! `P(S)` over index sets `S` whose principal submatrix has rank one, so its
//! components are the maximal such `S`. Three routes compute them:
//!
//! - [`components`]: for every base index `i`, the maximal cliques `C` of
//!   the coherence graph at `i` give the maximal rank-one sets `{i} ∪ C`.
//! - [`recursive_components`]: split along one generator into the part where
//!   it vanishes (recurse on the deleted matrix) and the part where it is
//!   invertible (cliques of the localized relations).
//! - [`brute_force_components`]: test every subset, keep the maximal ones.

mod graph;

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::matrix::{coherent, delete_index, is_rank_one_subset, IndexSubset, MatrixError, QuantumMatrix};
use crate::scalar::UnitMonomial;

pub use graph::{coherence_graph, maximal_cliques, maximal_cliques_limited, CoherenceGraph};

/// Largest `n` accepted by [`brute_force_components`].
pub const BRUTE_FORCE_MAX_N: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComponentsError {
    #[error("more than {limit} components")]
    ComponentLimitExceeded { limit: usize },
    #[error("n = {n} is too large for subset enumeration (max {max})")]
    TooLarge { n: usize, max: usize },
    #[error("the zero vector is not a projective point")]
    ZeroPoint,
    #[error("point has {found} coordinates, expected {expected}")]
    PointDimensionMismatch { expected: usize, found: usize },
    #[error("could not start worker threads: {0}")]
    ThreadPool(String),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// Why a set of subsets is not a valid component list.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VarietyError {
    #[error("component {0} is empty or has an index above n")]
    OutOfRange(IndexSubset),
    #[error("component {0} is contained in {1}")]
    NotAntichain(IndexSubset, IndexSubset),
    #[error("index {0} lies in no component")]
    IndexUncovered(usize),
    #[error("line P({0},{1}) lies in no component")]
    PairUncovered(usize, usize),
    #[error("component {0} is not rank one")]
    NotRankOne(IndexSubset),
    #[error("component {0} extends by index {1}")]
    NotMaximal(IndexSubset, usize),
}

/// Irreducible components of a point variety in `P^n`, in canonical order:
/// larger components first, equal sizes lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PointVariety {
    n: usize,
    components: Vec<IndexSubset>,
}

fn canonical_order(a: &IndexSubset, b: &IndexSubset) -> std::cmp::Ordering {
    b.len().cmp(&a.len()).then_with(|| a.cmp(b))
}

impl PointVariety {
    /// Validating constructor: the subsets must form a covering antichain.
    pub fn new(n: usize, components: impl IntoIterator<Item = IndexSubset>) -> Result<Self, VarietyError> {
        let v = Self::from_components(n, components);
        v.check_invariants()?;
        Ok(v)
    }

    fn from_components(n: usize, components: impl IntoIterator<Item = IndexSubset>) -> Self {
        let mut components: Vec<IndexSubset> = components.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        components.sort_by(canonical_order);
        PointVariety { n, components }
    }

    // Drops every subset strictly contained in another one.
    fn from_maximal_of(n: usize, candidates: BTreeSet<IndexSubset>) -> Self {
        let maximal: Vec<IndexSubset> = candidates
            .iter()
            .filter(|s| !candidates.iter().any(|t| t != *s && s.is_subset_of(t)))
            .cloned()
            .collect();
        Self::from_components(n, maximal)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn components(&self) -> &[IndexSubset] {
        &self.components
    }

    /// Largest `|S| - 1` over the components.
    pub fn dimension(&self) -> usize {
        self.components.iter().map(|s| s.len() - 1).max().unwrap_or(0)
    }

    pub fn is_full_space(&self) -> bool {
        self.components.len() == 1 && self.components[0] == IndexSubset::full(self.n)
    }

    /// A component whose subspace contains every point with this support.
    pub fn containing_component(&self, support: &IndexSubset) -> Option<&IndexSubset> {
        self.components.iter().find(|c| support.is_subset_of(c))
    }

    pub fn contains_support(&self, support: &IndexSubset) -> bool {
        self.containing_component(support).is_some()
    }

    /// Antichain and coverage (every index, and every pair when `n ≥ 1`).
    pub fn check_invariants(&self) -> Result<(), VarietyError> {
        for s in &self.components {
            if s.is_empty() || s.indices().last().is_some_and(|&m| m > self.n) {
                return Err(VarietyError::OutOfRange(s.clone()));
            }
        }
        for s in &self.components {
            if let Some(t) = self.components.iter().find(|t| *t != s && s.is_subset_of(t)) {
                return Err(VarietyError::NotAntichain(s.clone(), t.clone()));
            }
        }
        for i in 0..=self.n {
            if !self.components.iter().any(|s| s.contains(i)) {
                return Err(VarietyError::IndexUncovered(i));
            }
            for j in i + 1..=self.n {
                if !self.components.iter().any(|s| s.contains(i) && s.contains(j)) {
                    return Err(VarietyError::PairUncovered(i, j));
                }
            }
        }
        Ok(())
    }

    /// [`check_invariants`](Self::check_invariants) plus: each component is
    /// rank one for `q` and no index can be added to it.
    pub fn check_against(&self, q: &QuantumMatrix) -> Result<(), VarietyError> {
        self.check_invariants()?;
        for s in &self.components {
            if !is_rank_one_subset(q, s).map_err(|_| VarietyError::OutOfRange(s.clone()))? {
                return Err(VarietyError::NotRankOne(s.clone()));
            }
            for k in (0..=self.n).filter(|&k| !s.contains(k)) {
                if is_rank_one_subset(q, &s.with(k)).expect("in range") {
                    return Err(VarietyError::NotMaximal(s.clone(), k));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for PointVariety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// A point of `P^n` in homogeneous coordinates; `None` is a zero coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectivePoint {
    coords: Vec<Option<UnitMonomial>>,
}

impl ProjectivePoint {
    pub fn new(coords: Vec<Option<UnitMonomial>>) -> Result<Self, ComponentsError> {
        if coords.iter().all(Option::is_none) {
            return Err(ComponentsError::ZeroPoint);
        }
        Ok(ProjectivePoint { coords })
    }

    pub fn coords(&self) -> &[Option<UnitMonomial>] {
        &self.coords
    }

    /// Positions of the nonzero coordinates.
    pub fn support(&self) -> IndexSubset {
        IndexSubset::new(
            self.coords
                .iter()
                .enumerate()
                .filter_map(|(k, x)| x.as_ref().map(|_| k))
                .collect(),
        )
        .expect("positions are distinct")
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coords
            .iter()
            .map(|x| x.as_ref().map_or_else(|| "0".to_owned(), ToString::to_string))
            .collect();
        write!(f, "[{}]", parts.join(":"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentOptions {
    /// Fail with [`ComponentsError::ComponentLimitExceeded`] past this many.
    pub max_components: Option<usize>,
    /// Worker threads for the per-base searches; 0 or 1 runs sequentially.
    pub threads: usize,
}

impl Default for ComponentOptions {
    fn default() -> Self {
        ComponentOptions {
            max_components: None,
            threads: 1,
        }
    }
}

fn components_through(
    q: &QuantumMatrix,
    base: usize,
    limit: Option<usize>,
) -> Result<Vec<IndexSubset>, ComponentsError> {
    let g = coherence_graph(q, base)?;
    Ok(maximal_cliques_limited(&g, limit)?
        .into_iter()
        .map(|c| c.with(base))
        .collect())
}

/// Irreducible components via coherence-graph cliques.
pub fn components(q: &QuantumMatrix) -> PointVariety {
    components_with(q, &ComponentOptions::default()).expect("no limit, sequential")
}

pub fn components_with(q: &QuantumMatrix, opts: &ComponentOptions) -> Result<PointVariety, ComponentsError> {
    if q.n() == 0 {
        return Ok(PointVariety::from_components(0, [IndexSubset::singleton(0)]));
    }
    let limit = opts.max_components;
    let per_base: Vec<Vec<IndexSubset>> = if opts.threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.threads)
            .build()
            .map_err(|e| ComponentsError::ThreadPool(e.to_string()))?;
        pool.install(|| {
            (0..q.size())
                .into_par_iter()
                .map(|i| components_through(q, i, limit))
                .collect::<Result<_, _>>()
        })?
    } else {
        (0..q.size())
            .map(|i| components_through(q, i, limit))
            .collect::<Result<_, _>>()?
    };
    let merged: BTreeSet<IndexSubset> = per_base.into_iter().flatten().collect();
    if let Some(limit) = limit {
        if merged.len() > limit {
            return Err(ComponentsError::ComponentLimitExceeded { limit });
        }
    }
    Ok(PointVariety::from_components(q.n(), merged))
}

/// Which generator the recursion splits along first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Elimination {
    First,
    Last,
}

/// Components by recursion on the last index.
pub fn recursive_components(q: &QuantumMatrix) -> PointVariety {
    recursive_components_with(q, Elimination::Last)
}

/// At each level the eliminated index `i` splits the variety into the locus
/// where `x_i` vanishes (components of the matrix with `i` deleted) and the
/// locus where it does not (`{i} ∪ C` for maximal cliques `C` of the
/// coherence graph at `i`). Subsets swallowed by another are dropped.
pub fn recursive_components_with(q: &QuantumMatrix, elimination: Elimination) -> PointVariety {
    PointVariety::from_maximal_of(q.n(), recursive_candidates(q, elimination))
}

fn recursive_candidates(q: &QuantumMatrix, elimination: Elimination) -> BTreeSet<IndexSubset> {
    if q.n() == 0 {
        return BTreeSet::from([IndexSubset::singleton(0)]);
    }
    let i = match elimination {
        Elimination::First => 0,
        Elimination::Last => q.n(),
    };
    let (deleted, map) = delete_index(q, i).expect("n >= 1");
    let vanishing = PointVariety::from_maximal_of(deleted.n(), recursive_candidates(&deleted, elimination));
    let mut out: BTreeSet<IndexSubset> = vanishing.components().iter().map(|s| map.subset_to_old(s)).collect();
    let g = coherence_graph(q, i).expect("index in range");
    out.extend(maximal_cliques(&g).into_iter().map(|c| c.with(i)));
    out
}

/// Components by testing every subset of `{0, …, n}` with the all-triples
/// rank-one test. Exponential; limited to `n ≤ BRUTE_FORCE_MAX_N`.
pub fn brute_force_components(q: &QuantumMatrix) -> Result<PointVariety, ComponentsError> {
    let n = q.n();
    if n > BRUTE_FORCE_MAX_N {
        return Err(ComponentsError::TooLarge {
            n,
            max: BRUTE_FORCE_MAX_N,
        });
    }
    let size = q.size();
    let subset_of =
        |mask: usize| IndexSubset::new((0..size).filter(|k| mask >> k & 1 == 1).collect()).expect("distinct");
    // coherence of each triple i < j < l, computed once
    let mut triple = vec![false; size * size * size];
    for i in 0..size {
        for j in i + 1..size {
            for l in j + 1..size {
                triple[(i * size + j) * size + l] = coherent(q, i, j, l).expect("distinct, in range");
            }
        }
    }
    let rank_one: Vec<bool> = (0..1usize << size)
        .map(|mask| {
            let idx: Vec<usize> = (0..size).filter(|k| mask >> k & 1 == 1).collect();
            !idx.is_empty()
                && idx.iter().enumerate().all(|(a, &i)| {
                    idx.iter()
                        .enumerate()
                        .skip(a + 1)
                        .all(|(b, &j)| idx[b + 1..].iter().all(|&l| triple[(i * size + j) * size + l]))
                })
        })
        .collect();
    let maximal = (1..1usize << size)
        .filter(|&mask| rank_one[mask] && (0..size).all(|k| mask >> k & 1 == 1 || !rank_one[mask | 1 << k]))
        .map(subset_of);
    Ok(PointVariety::from_components(n, maximal))
}

/// Whether the point lies on the point variety: its support must be rank one.
pub fn membership(q: &QuantumMatrix, p: &ProjectivePoint) -> Result<bool, ComponentsError> {
    if p.coords().len() != q.size() {
        return Err(ComponentsError::PointDimensionMismatch {
            expected: q.size(),
            found: p.coords().len(),
        });
    }
    Ok(is_rank_one_subset(q, &p.support())?)
}

pub fn dimension(q: &QuantumMatrix) -> usize {
    components(q).dimension()
}
