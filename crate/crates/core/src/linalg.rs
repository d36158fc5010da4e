//! Exact sparse row reduction.
//!
//! [`EchelonBasis`] keeps a reduced row echelon basis of a growing subspace
//! of `T^dim`, inserting one sparse vector at a time. Kernels are read off as
//! the orthogonal complement of the accumulated constraint rows.

use std::collections::BTreeMap;

use crate::scalar::ExactScalar;

/// Sparse vector: `(column, nonzero value)` pairs sorted by column.
pub type SparseVec<T> = Vec<(usize, T)>;

#[derive(Clone, Debug)]
pub struct EchelonBasis<T> {
    dim: usize,
    rows: Vec<SparseVec<T>>,
    /// pivot column -> row index
    pivots: BTreeMap<usize, usize>,
}

impl<T: ExactScalar> EchelonBasis<T> {
    pub fn new(dim: usize) -> Self {
        EchelonBasis { dim, rows: Vec::new(), pivots: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    /// The basis rows, each with leading coefficient 1 and zeros in every
    /// other pivot column.
    pub fn rows(&self) -> &[SparseVec<T>] {
        &self.rows
    }

    fn densify(&self, v: &[(usize, T)]) -> Vec<T> {
        let mut dense = vec![T::zero(); self.dim];
        for (i, c) in v {
            dense[*i] = dense[*i].clone() + c.clone();
        }
        dense
    }

    fn reduce_dense(&self, dense: &mut [T]) {
        for (&p, &r) in &self.pivots {
            if dense[p].is_zero() {
                continue;
            }
            let f = dense[p].clone();
            for (j, c) in &self.rows[r] {
                dense[*j] = dense[*j].clone() - f.clone() * c.clone();
            }
        }
    }

    /// Remainder of `v` after reduction against the basis.
    pub fn reduce(&self, v: &[(usize, T)]) -> SparseVec<T> {
        let mut dense = self.densify(v);
        self.reduce_dense(&mut dense);
        sparsify(dense)
    }

    pub fn contains(&self, v: &[(usize, T)]) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &[(usize, T)]) -> bool {
        if self.is_full() {
            return false;
        }
        let rem = self.reduce(v);
        let Some((p, lead)) = rem.first().cloned() else {
            return false;
        };
        let inv = T::one() / lead;
        let row: SparseVec<T> = rem.into_iter().map(|(j, c)| (j, c * inv.clone())).collect();
        for existing in &mut self.rows {
            let Ok(k) = existing.binary_search_by_key(&p, |(j, _)| *j) else {
                continue;
            };
            let f = existing[k].1.clone();
            let mut merged = BTreeMap::new();
            for (j, c) in existing.drain(..) {
                merged.insert(j, c);
            }
            for (j, c) in &row {
                let cur = merged.remove(j).unwrap_or_else(T::zero);
                let next = cur - f.clone() * c.clone();
                if !next.is_zero() {
                    merged.insert(*j, next);
                }
            }
            *existing = merged.into_iter().collect();
        }
        self.pivots.insert(p, self.rows.len());
        self.rows.push(row);
        true
    }

    /// A basis of `{c : <c, r> = 0 for every row r}`, one vector per free
    /// column in increasing order.
    pub fn complement(&self) -> Vec<SparseVec<T>> {
        let mut out = Vec::new();
        for f in (0..self.dim).filter(|c| !self.pivots.contains_key(c)) {
            let mut v = vec![(f, T::one())];
            for (&p, &r) in &self.pivots {
                if let Ok(k) = self.rows[r].binary_search_by_key(&f, |(j, _)| *j) {
                    v.push((p, -self.rows[r][k].1.clone()));
                }
            }
            v.sort_by_key(|(j, _)| *j);
            out.push(v);
        }
        out
    }

    /// Whether the two spans coincide.
    pub fn same_span(&self, other: &Self) -> bool {
        self.dim == other.dim && self.rank() == other.rank() && other.rows.iter().all(|r| self.contains(r))
    }
}

pub fn sparsify<T: ExactScalar>(dense: Vec<T>) -> SparseVec<T> {
    dense.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Rational, Scalar};
    use proptest::prelude::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn dot(a: &[(usize, Rational)], b: &[(usize, Rational)]) -> Rational {
        let mut s = q(0);
        for (i, x) in a {
            for (j, y) in b {
                if i == j {
                    s += x.clone() * y.clone();
                }
            }
        }
        s
    }

    #[test]
    fn small_example() {
        let mut e = EchelonBasis::new(3);
        assert!(e.insert(&[(0, q(1)), (1, q(2))]));
        assert!(e.insert(&[(1, q(1)), (2, q(1))]));
        assert!(!e.insert(&[(0, q(1)), (1, q(3)), (2, q(1))]));
        assert_eq!(e.rank(), 2);
        let k = e.complement();
        assert_eq!(k, vec![vec![(0, q(2)), (1, q(-1)), (2, q(1))]]);
        assert!(e.contains(&[(0, q(2)), (1, q(5)), (2, q(1))]));
    }

    fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..6, 1usize..7).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-2i64..=2, c), r))
    }

    proptest! {
        #[test]
        fn complement_is_orthogonal_and_of_correct_size(m in small_matrix()) {
            let dim = m[0].len();
            let mut e = EchelonBasis::new(dim);
            let rows: Vec<SparseVec<Rational>> = m.iter().map(|r| sparsify(r.iter().map(|&x| q(x)).collect())).collect();
            for r in &rows {
                e.insert(r);
            }
            let k = e.complement();
            prop_assert_eq!(k.len() + e.rank(), dim);
            for v in &k {
                for r in &rows {
                    prop_assert_eq!(dot(v, r), q(0));
                }
            }
            for r in &rows {
                prop_assert!(e.contains(r));
            }
            let mut again = EchelonBasis::new(dim);
            for r in rows.iter().rev() {
                again.insert(r);
            }
            prop_assert!(again.same_span(&e));
        }
    }
}
