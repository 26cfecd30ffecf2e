use crate::scalar::UnitMonomial;

use super::{IndexMap, IndexSubset, MatrixError, QuantumMatrix};

/// Removes row and column `i`. Surviving indices keep their order and are
/// renumbered densely; the returned map relates new indices to old ones.
pub fn delete_index(q: &QuantumMatrix, i: usize) -> Result<(QuantumMatrix, IndexMap), MatrixError> {
    q.check_index(i)?;
    if q.n() == 0 {
        return Err(MatrixError::CannotDeleteLast);
    }
    let map = IndexMap::dropping(q.size(), i);
    let out = QuantumMatrix::from_fn_unchecked(q.n(), |a, b| q.get(map.to_old(a), map.to_old(b)).clone());
    Ok((out, map))
}

/// Parameter matrix of the degree-zero part after inverting generator `i`:
/// `r_jl = q_ij · q_jl · q_il^-1` over the indices `j, l ≠ i`.
pub fn localize(q: &QuantumMatrix, i: usize) -> Result<(QuantumMatrix, IndexMap), MatrixError> {
    q.check_index(i)?;
    if q.n() == 0 {
        return Err(MatrixError::CannotDeleteLast);
    }
    let map = IndexMap::dropping(q.size(), i);
    let out = QuantumMatrix::from_fn_unchecked(q.n(), |a, b| coherence_value(q, i, map.to_old(a), map.to_old(b)));
    Ok((out, map))
}

/// `q_ij · q_jl · q_il^-1`. Panics on out-of-range indices.
pub fn coherence_value(q: &QuantumMatrix, i: usize, j: usize, l: usize) -> UnitMonomial {
    q.get(i, j).mul(q.get(j, l)).div(q.get(i, l))
}

/// Whether `(i, j, l)` is a coherent triple, i.e. `r_jl = 1` after localizing at `i`.
pub fn coherent(q: &QuantumMatrix, i: usize, j: usize, l: usize) -> Result<bool, MatrixError> {
    for k in [i, j, l] {
        q.check_index(k)?;
    }
    if i == j || j == l || i == l {
        return Err(MatrixError::IndicesNotDistinct);
    }
    Ok(coherence_value(q, i, j, l).is_one())
}

fn pairs_coherent_with(q: &QuantumMatrix, s: &IndexSubset, base: usize) -> bool {
    let rest: Vec<usize> = s.indices().iter().copied().filter(|&k| k != base).collect();
    rest.iter()
        .enumerate()
        .all(|(a, &j)| rest[a + 1..].iter().all(|&l| coherence_value(q, base, j, l).is_one()))
}

/// Rank-one test for the principal submatrix on `s`, using `min(s)` as base.
pub fn is_rank_one_subset(q: &QuantumMatrix, s: &IndexSubset) -> Result<bool, MatrixError> {
    s.check_bounds(q)?;
    Ok(s.len() <= 2 || pairs_coherent_with(q, s, s.indices()[0]))
}

pub fn is_rank_one_subset_from_base(q: &QuantumMatrix, s: &IndexSubset, base: usize) -> Result<bool, MatrixError> {
    s.check_bounds(q)?;
    if !s.contains(base) {
        return Err(MatrixError::BaseNotInSubset(base));
    }
    Ok(s.len() <= 2 || pairs_coherent_with(q, s, base))
}

/// Checks every triple `i < j < l` in `s`.
pub fn is_rank_one_subset_all_triples(q: &QuantumMatrix, s: &IndexSubset) -> Result<bool, MatrixError> {
    s.check_bounds(q)?;
    let idx = s.indices();
    for (a, &i) in idx.iter().enumerate() {
        for (b, &j) in idx.iter().enumerate().skip(a + 1) {
            for &l in &idx[b + 1..] {
                if !coherence_value(q, i, j, l).is_one() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Checks that every 2×2 minor of the submatrix vanishes:
/// `q_ju · q_lv = q_jv · q_lu` for rows `j < l` and columns `u < v` in `s`.
pub fn is_rank_one_subset_by_minors(q: &QuantumMatrix, s: &IndexSubset) -> Result<bool, MatrixError> {
    s.check_bounds(q)?;
    let idx = s.indices();
    for (a, &j) in idx.iter().enumerate() {
        for &l in &idx[a + 1..] {
            for (c, &u) in idx.iter().enumerate() {
                for &v in &idx[c + 1..] {
                    if q.get(j, u).mul(q.get(l, v)) != q.get(j, v).mul(q.get(l, u)) {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

pub fn is_rank_one(q: &QuantumMatrix) -> bool {
    is_rank_one_subset(q, &IndexSubset::full(q.n())).expect("full subset is in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{example_matrix, sign_matrix};

    fn sym(s: &str) -> UnitMonomial {
        UnitMonomial::symbol(s).unwrap()
    }

    fn set(v: &[usize]) -> IndexSubset {
        IndexSubset::new(v.to_vec()).unwrap()
    }

    #[test]
    fn delete_from_example() {
        let (a, b) = (sym("a"), sym("b"));
        let (q, map) = delete_index(&example_matrix(None), 3).unwrap();
        let expected = QuantumMatrix::from_rows(vec![
            vec![UnitMonomial::one(), a.clone(), b.clone()],
            vec![a.inv(), UnitMonomial::one(), a.inv().mul(&b)],
            vec![b.inv(), a.div(&b), UnitMonomial::one()],
        ])
        .unwrap();
        assert_eq!(q, expected);
        assert_eq!(map.new_to_old(), &[0, 1, 2]);
    }

    #[test]
    fn delete_edge_cases() {
        let (q, _) = delete_index(&QuantumMatrix::from_upper(1, |_, _| sym("a")), 0).unwrap();
        assert_eq!(q, QuantumMatrix::all_ones(0));
        assert_eq!(
            delete_index(&QuantumMatrix::all_ones(0), 0),
            Err(MatrixError::CannotDeleteLast)
        );
        assert_eq!(
            delete_index(&QuantumMatrix::all_ones(2), 3),
            Err(MatrixError::IndexOutOfRange { index: 3, n: 2 })
        );
        for n in 1..6 {
            for i in 0..=n {
                assert_eq!(delete_index(&sign_matrix(n), i).unwrap().0, sign_matrix(n - 1));
            }
        }
    }

    #[test]
    fn localize_examples() {
        for i in 0..4 {
            assert_eq!(
                localize(&QuantumMatrix::all_ones(3), i).unwrap().0,
                QuantumMatrix::all_ones(2)
            );
        }
        // (-1)(-1)(-1)^{-1} = -1 off the diagonal
        assert_eq!(localize(&sign_matrix(3), 0).unwrap().0, sign_matrix(2));

        let (r, map) = localize(&example_matrix(None), 0).unwrap();
        r.check_invariants().unwrap();
        assert_eq!(map.new_to_old(), &[1, 2, 3]);
        assert!(r.get(0, 1).is_one()); // r_12 = a·(a^{-1}b)·b^{-1}
        assert!(!r.get(0, 2).is_one());
        assert!(!r.get(1, 2).is_one());
    }

    #[test]
    fn coherent_examples() {
        assert!(coherent(&QuantumMatrix::all_ones(3), 2, 0, 1).unwrap());
        assert!(!coherent(&sign_matrix(3), 0, 1, 2).unwrap());
        assert!(!coherent(&example_matrix(None), 0, 1, 3).unwrap());
        let ac = sym("a").mul(&sym("c"));
        assert!(coherent(&example_matrix(Some(ac)), 0, 1, 3).unwrap());
        assert_eq!(coherent(&sign_matrix(3), 0, 1, 1), Err(MatrixError::IndicesNotDistinct));
        assert!(matches!(
            coherent(&sign_matrix(3), 0, 1, 4),
            Err(MatrixError::IndexOutOfRange { index: 4, .. })
        ));
    }

    #[test]
    fn rank_one_subset_examples() {
        let ex = example_matrix(None);
        let signs = sign_matrix(4);
        for s in [set(&[2]), set(&[0, 3]), set(&[1, 4])] {
            assert!(is_rank_one_subset(&signs, &s).unwrap());
        }
        assert!(is_rank_one_subset(&ex, &set(&[1, 2, 3])).unwrap());
        assert!(is_rank_one_subset(&ex, &set(&[0, 1, 2])).unwrap());
        assert!(!is_rank_one_subset(&ex, &set(&[0, 1, 3])).unwrap());
        assert!(!is_rank_one_subset(&signs, &set(&[1, 2, 4])).unwrap());
        assert_eq!(
            is_rank_one_subset(&ex, &IndexSubset::new(vec![]).unwrap()),
            Err(MatrixError::EmptySubset)
        );
        assert_eq!(
            is_rank_one_subset_from_base(&ex, &set(&[0, 1]), 2),
            Err(MatrixError::BaseNotInSubset(2))
        );
    }

    #[test]
    fn rank_one_tests_agree_on_example() {
        let ex = example_matrix(None);
        for mask in 1u32..16 {
            let s = IndexSubset::new((0..4).filter(|k| mask >> k & 1 == 1).collect()).unwrap();
            let direct = is_rank_one_subset(&ex, &s).unwrap();
            assert_eq!(direct, is_rank_one_subset_all_triples(&ex, &s).unwrap(), "{s}");
            assert_eq!(direct, is_rank_one_subset_by_minors(&ex, &s).unwrap(), "{s}");
            for &b in s.indices() {
                assert_eq!(direct, is_rank_one_subset_from_base(&ex, &s, b).unwrap());
            }
        }
    }

    #[test]
    fn whole_matrix_rank_one() {
        assert!(is_rank_one(&QuantumMatrix::all_ones(4)));
        assert!(is_rank_one(&QuantumMatrix::all_ones(0)));
        assert!(is_rank_one(&sign_matrix(1)));
        for n in 2..8 {
            assert!(!is_rank_one(&sign_matrix(n)));
        }
        assert!(is_rank_one(&example_matrix(Some(sym("a").mul(&sym("c"))))));
        assert!(!is_rank_one(&example_matrix(None)));
    }
}
