use fixedbitset::FixedBitSet;

use crate::matrix::{coherence_value, IndexSubset, MatrixError, QuantumMatrix};

use super::ComponentsError;

/// Graph on the indices other than `base`; `{j, l}` is an edge when the
/// triple `(base, j, l)` is coherent.
///
/// Rank-one subsets containing `base` are exactly `{base} ∪ C` for cliques `C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoherenceGraph {
    base: usize,
    vertices: FixedBitSet,
    adjacency: Vec<FixedBitSet>,
}

impl CoherenceGraph {
    /// Arbitrary graph on `0..order` minus `base`, for tests and tools.
    pub fn from_edges(base: usize, order: usize, edges: &[(usize, usize)]) -> Result<Self, MatrixError> {
        if base >= order {
            return Err(MatrixError::IndexOutOfRange {
                index: base,
                n: order.saturating_sub(1),
            });
        }
        let mut g = Self::edgeless(base, order);
        for &(j, l) in edges {
            for k in [j, l] {
                if k >= order {
                    return Err(MatrixError::IndexOutOfRange { index: k, n: order - 1 });
                }
            }
            if j == l || j == base || l == base {
                return Err(MatrixError::IndicesNotDistinct);
            }
            g.add_edge(j, l);
        }
        Ok(g)
    }

    fn edgeless(base: usize, order: usize) -> Self {
        let mut vertices = FixedBitSet::with_capacity(order);
        vertices.insert_range(..);
        vertices.set(base, false);
        CoherenceGraph {
            base,
            vertices,
            adjacency: vec![FixedBitSet::with_capacity(order); order],
        }
    }

    fn add_edge(&mut self, j: usize, l: usize) {
        self.adjacency[j].insert(l);
        self.adjacency[l].insert(j);
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.vertices.ones()
    }

    pub fn has_edge(&self, j: usize, l: usize) -> bool {
        self.adjacency.get(j).is_some_and(|nbrs| nbrs.contains(l))
    }

    /// Edges `(j, l)` with `j < l`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.vertices()
            .flat_map(|j| self.adjacency[j].ones().filter(move |&l| l > j).map(move |l| (j, l)))
            .collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].count_ones(..)
    }
}

pub fn coherence_graph(q: &QuantumMatrix, base: usize) -> Result<CoherenceGraph, MatrixError> {
    if base > q.n() {
        return Err(MatrixError::IndexOutOfRange { index: base, n: q.n() });
    }
    let mut g = CoherenceGraph::edgeless(base, q.size());
    let others: Vec<usize> = (0..q.size()).filter(|&k| k != base).collect();
    for (a, &j) in others.iter().enumerate() {
        for &l in &others[a + 1..] {
            if coherence_value(q, base, j, l).is_one() {
                g.add_edge(j, l);
            }
        }
    }
    Ok(g)
}

// Smallest-last order: repeatedly remove a vertex of minimum remaining degree.
fn degeneracy_order(g: &CoherenceGraph) -> Vec<usize> {
    let mut remaining = g.vertices.clone();
    let mut degree: Vec<usize> = (0..g.adjacency.len())
        .map(|v| g.adjacency[v].intersection(&remaining).count())
        .collect();
    let mut order = Vec::with_capacity(remaining.count_ones(..));
    while let Some(v) = remaining.ones().min_by_key(|&v| (degree[v], v)) {
        remaining.set(v, false);
        for u in g.adjacency[v].ones() {
            if remaining.contains(u) {
                degree[u] -= 1;
            }
        }
        order.push(v);
    }
    order
}

struct CliqueSearch<'a> {
    g: &'a CoherenceGraph,
    limit: Option<usize>,
    found: Vec<IndexSubset>,
}

impl CliqueSearch<'_> {
    fn report(&mut self, clique: &[usize]) -> Result<(), ComponentsError> {
        let mut c = clique.to_vec();
        c.sort_unstable();
        self.found
            .push(IndexSubset::new(c).expect("clique vertices are distinct"));
        match self.limit {
            Some(limit) if self.found.len() > limit => Err(ComponentsError::ComponentLimitExceeded { limit }),
            _ => Ok(()),
        }
    }

    // Bron-Kerbosch with Tomita pivoting.
    fn expand(
        &mut self,
        clique: &mut Vec<usize>,
        mut candidates: FixedBitSet,
        mut excluded: FixedBitSet,
    ) -> Result<(), ComponentsError> {
        if candidates.is_clear() && excluded.is_clear() {
            return self.report(clique);
        }
        let pivot = candidates
            .ones()
            .chain(excluded.ones())
            .max_by_key(|&u| self.g.adjacency[u].intersection(&candidates).count())
            .expect("candidates or excluded nonempty");
        let mut branch = candidates.clone();
        branch.difference_with(&self.g.adjacency[pivot]);
        for v in branch.ones() {
            let nbrs = &self.g.adjacency[v];
            clique.push(v);
            self.expand(clique, &candidates & nbrs, &excluded & nbrs)?;
            clique.pop();
            candidates.set(v, false);
            excluded.insert(v);
        }
        Ok(())
    }
}

/// All maximal cliques, each as a sorted subset, in discovery order.
/// Isolated vertices are singleton cliques; a graph with no vertices has none.
pub fn maximal_cliques(g: &CoherenceGraph) -> Vec<IndexSubset> {
    maximal_cliques_limited(g, None).expect("no limit")
}

/// Like [`maximal_cliques`] but fails once more than `limit` cliques are found.
pub fn maximal_cliques_limited(g: &CoherenceGraph, limit: Option<usize>) -> Result<Vec<IndexSubset>, ComponentsError> {
    let mut search = CliqueSearch {
        g,
        limit,
        found: Vec::new(),
    };
    let order = degeneracy_order(g);
    let mut earlier = FixedBitSet::with_capacity(g.adjacency.len());
    let mut later = g.vertices.clone();
    for v in order {
        later.set(v, false);
        let nbrs = &g.adjacency[v];
        search.expand(&mut vec![v], &later & nbrs, &earlier & nbrs)?;
        earlier.insert(v);
    }
    Ok(search.found)
}
