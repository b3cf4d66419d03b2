//! Incremental row echelon form over sparse rational vectors.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::rat::Rat;
use super::sparse::{axpy, SparseMat, SparseVec};

/// Vectors inserted one at a time and kept in echelon form.
///
/// With tracking enabled every stored row remembers how it was built from the
/// independent vectors inserted so far, so membership queries can also return
/// coordinates.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<SparseVec>,
    pivots: BTreeMap<usize, usize>,
    combos: Option<Vec<SparseVec>>,
    basis_len: usize,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn with_tracking() -> Self {
        Echelon {
            combos: Some(Vec::new()),
            ..Echelon::default()
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    fn reduce_inner(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let mut v = v.clone();
        let mut combo = SparseVec::new();
        let mut start = 0usize;
        loop {
            let next = v
                .range(start..)
                .find(|(k, _)| self.pivots.contains_key(k))
                .map(|(k, c)| (*k, c.clone()));
            let Some((k, c)) = next else { break };
            let r = self.pivots[&k];
            axpy(&mut v, &-c.clone(), &self.rows[r]);
            if let Some(combos) = &self.combos {
                axpy(&mut combo, &c, &combos[r]);
            }
            start = k + 1;
        }
        (v, combo)
    }

    /// Residual of `v` after elimination against the stored rows.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        self.reduce_inner(v).0
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Coordinates of `v` in terms of the independent vectors inserted so far.
    /// Requires tracking; `None` when `v` is outside the span.
    pub fn express(&self, v: &SparseVec) -> Option<SparseVec> {
        assert!(self.combos.is_some(), "express requires a tracking echelon");
        let (res, combo) = self.reduce_inner(v);
        res.is_empty().then_some(combo)
    }

    /// Inserts `v`; returns its basis index when it was independent.
    pub fn insert(&mut self, v: &SparseVec) -> Option<usize> {
        let (mut res, combo) = self.reduce_inner(v);
        let (&lead, lead_val) = res.iter().next()?;
        let inv = Rat::one() / lead_val.clone();
        for x in res.values_mut() {
            *x *= &inv;
        }
        let idx = self.basis_len;
        self.basis_len += 1;
        if let Some(combos) = &mut self.combos {
            let mut t = SparseVec::new();
            t.insert(idx, Rat::one());
            axpy(&mut t, &-Rat::one(), &combo);
            for x in t.values_mut() {
                *x *= &inv;
            }
            combos.push(t);
        }
        self.pivots.insert(lead, self.rows.len());
        self.rows.push(std::mem::take(&mut res));
        Some(idx)
    }

    /// Fully reduced rows, ordered by pivot column.
    pub fn into_rref(self) -> Vec<SparseVec> {
        let mut rows = self.rows;
        let order: Vec<(usize, usize)> = self.pivots.iter().map(|(&c, &r)| (c, r)).collect();
        for &(col, r) in order.iter().rev() {
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i == r {
                    continue;
                }
                if let Some(c) = row.get(&col).cloned() {
                    axpy(row, &-c, &pivot_row);
                }
            }
        }
        order.into_iter().map(|(_, r)| std::mem::take(&mut rows[r])).collect()
    }
}

pub fn rank(m: &SparseMat) -> usize {
    let mut e = Echelon::new();
    for r in 0..m.rows() {
        e.insert(m.row(r));
    }
    e.rank()
}

/// Rank of the span of a list of vectors.
pub fn span_rank<'a, I: IntoIterator<Item = &'a SparseVec>>(vs: I) -> usize {
    let mut e = Echelon::new();
    for v in vs {
        e.insert(v);
    }
    e.rank()
}

/// Basis of the null space `{x : m x = 0}`.
pub fn kernel(m: &SparseMat) -> Vec<SparseVec> {
    let mut e = Echelon::new();
    for r in 0..m.rows() {
        e.insert(m.row(r));
    }
    let rref = e.into_rref();
    let pivot_cols: BTreeMap<usize, usize> = rref
        .iter()
        .enumerate()
        .map(|(i, row)| (*row.keys().next().expect("nonzero row"), i))
        .collect();
    let mut out = Vec::new();
    for free in 0..m.cols() {
        if pivot_cols.contains_key(&free) {
            continue;
        }
        let mut x = SparseVec::new();
        x.insert(free, Rat::one());
        for (&pc, &ri) in &pivot_cols {
            if let Some(c) = rref[ri].get(&free) {
                if !c.is_zero() {
                    x.insert(pc, -c.clone());
                }
            }
        }
        out.push(x);
    }
    out
}

/// Independent subset of `vs`, keeping the first occurrence of each new direction.
pub fn independent_subset(vs: &[SparseVec]) -> Vec<usize> {
    let mut e = Echelon::new();
    vs.iter()
        .enumerate()
        .filter_map(|(i, v)| e.insert(v).map(|_| i))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::int;

    fn v(entries: &[(usize, i64)]) -> SparseVec {
        entries.iter().map(|&(i, x)| (i, int(x))).collect()
    }

    #[test]
    fn rank_and_membership() {
        let mut e = Echelon::with_tracking();
        assert_eq!(e.insert(&v(&[(0, 1), (1, 2)])), Some(0));
        assert_eq!(e.insert(&v(&[(1, 1), (2, 1)])), Some(1));
        assert_eq!(e.insert(&v(&[(0, 1), (1, 3), (2, 1)])), None);
        assert_eq!(e.rank(), 2);
        let target = v(&[(0, 2), (1, 7), (2, 3)]);
        let c = e.express(&target).unwrap();
        assert_eq!(c.get(&0), Some(&int(2)));
        assert_eq!(c.get(&1), Some(&int(3)));
        assert!(!e.contains(&v(&[(2, 1)])));
    }

    #[test]
    fn kernel_of_rank_one() {
        let m = SparseMat::from_triplets(2, 3, vec![(0, 0, int(1)), (0, 1, int(1)), (1, 0, int(2)), (1, 1, int(2))]);
        let k = kernel(&m);
        assert_eq!(k.len(), 2);
        for x in &k {
            assert!(m.mul_vec(x).is_empty());
        }
        assert_eq!(rank(&m), 1);
    }

    #[test]
    fn kernel_of_identity_is_trivial() {
        assert!(kernel(&SparseMat::identity(4)).is_empty());
    }
}
