//! Sparse matrices over exact rationals, stored row-major with zeros absent.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rat::Rat;

/// Sparse vector: index -> nonzero value.
pub type SparseVec = BTreeMap<usize, Rat>;

/// `acc += factor * v`, dropping entries that cancel.
pub fn axpy(acc: &mut SparseVec, factor: &Rat, v: &SparseVec) {
    if factor.is_zero() {
        return;
    }
    for (&k, x) in v {
        add_entry(acc, k, factor * x);
    }
}

pub(crate) fn add_entry(acc: &mut SparseVec, k: usize, val: Rat) {
    if val.is_zero() {
        return;
    }
    match acc.entry(k) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(val);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += val;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparseMat {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl SparseMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMat {
            rows,
            cols,
            data: vec![SparseVec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, &Rat::one())
    }

    pub fn scalar(n: usize, c: &Rat) -> Self {
        let mut m = Self::zeros(n, n);
        if !c.is_zero() {
            for i in 0..n {
                m.data[i].insert(i, c.clone());
            }
        }
        m
    }

    /// Single matrix unit with a 1 at `(r, c)`.
    pub fn unit(rows: usize, cols: usize, r: usize, c: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        m.set(r, c, Rat::one());
        m
    }

    /// Builds a matrix from triplets, summing duplicates.
    pub fn from_triplets<I>(rows: usize, cols: usize, entries: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, Rat)>,
    {
        let mut m = Self::zeros(rows, cols);
        for (r, c, v) in entries {
            m.add_to(r, c, v);
        }
        m
    }

    /// Matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[SparseVec]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (&i, v) in col {
                assert!(i < rows, "column entry {i} out of range {rows}");
                m.data[i].insert(j, v.clone());
            }
        }
        m
    }

    pub fn diagonal(entries: &[Rat]) -> Self {
        let n = entries.len();
        Self::from_triplets(n, n, entries.iter().enumerate().map(|(i, v)| (i, i, v.clone())))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    pub fn get(&self, r: usize, c: usize) -> Rat {
        self.data[r].get(&c).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of range");
        if v.is_zero() {
            self.data[r].remove(&c);
        } else {
            self.data[r].insert(c, v);
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: Rat) {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of range");
        add_entry(&mut self.data[r], c, v);
    }

    pub fn row(&self, r: usize) -> &SparseVec {
        &self.data[r]
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Rat)> + '_ {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().map(move |(&j, v)| (i, j, v)))
    }

    pub fn triplets(&self) -> Vec<(usize, usize, Rat)> {
        self.iter().map(|(i, j, v)| (i, j, v.clone())).collect()
    }

    pub fn column(&self, c: usize) -> SparseVec {
        self.data
            .iter()
            .enumerate()
            .filter_map(|(i, row)| row.get(&c).map(|v| (i, v.clone())))
            .collect()
    }

    pub fn columns(&self) -> Vec<SparseVec> {
        let mut cols = vec![SparseVec::new(); self.cols];
        for (i, j, v) in self.iter() {
            cols[j].insert(i, v.clone());
        }
        cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (i, j, v) in self.iter() {
            t.data[j].insert(i, v.clone());
        }
        t
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        SparseMat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|r| r.iter().map(|(&j, v)| (j, v * c)).collect())
                .collect(),
        }
    }

    pub fn trace(&self) -> Rat {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    pub fn mul_vec(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, row) in self.data.iter().enumerate() {
            let mut acc = Rat::zero();
            if row.len() < v.len() {
                for (j, a) in row {
                    if let Some(b) = v.get(j) {
                        acc += a * b;
                    }
                }
            } else {
                for (j, b) in v {
                    if let Some(a) = row.get(j) {
                        acc += a * b;
                    }
                }
            }
            if !acc.is_zero() {
                out.insert(i, acc);
            }
        }
        out
    }

    /// `self` restricted to the given rows and columns (in the given order).
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let col_pos: BTreeMap<usize, usize> = cols.iter().enumerate().map(|(p, &c)| (c, p)).collect();
        let mut m = Self::zeros(rows.len(), cols.len());
        for (ri, &r) in rows.iter().enumerate() {
            for (c, v) in &self.data[r] {
                if let Some(&p) = col_pos.get(c) {
                    m.data[ri].insert(p, v.clone());
                }
            }
        }
        m
    }

    pub fn is_diagonal(&self) -> bool {
        self.iter().all(|(i, j, _)| i == j)
    }

    /// Stacks matrices with equal column counts vertically.
    pub fn vstack(blocks: &[&SparseMat]) -> Self {
        let cols = blocks.first().map_or(0, |b| b.cols);
        let mut data = Vec::new();
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column mismatch");
            data.extend(b.data.iter().cloned());
        }
        SparseMat {
            rows: data.len(),
            cols,
            data,
        }
    }

    /// Concatenates matrices with equal row counts horizontally.
    pub fn hstack(blocks: &[&SparseMat]) -> Self {
        let rows = blocks.first().map_or(0, |b| b.rows);
        let mut m = Self::zeros(rows, blocks.iter().map(|b| b.cols).sum());
        let mut offset = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack row mismatch");
            for (i, j, v) in b.iter() {
                m.data[i].insert(j + offset, v.clone());
            }
            offset += b.cols;
        }
        m
    }

    /// Kronecker product; index of `(i, k)` is `i * other.rows + k`.
    pub fn kron(&self, other: &SparseMat) -> Self {
        let mut m = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for (i, j, a) in self.iter() {
            for (k, l, b) in other.iter() {
                m.data[i * other.rows + k].insert(j * other.cols + l, a * b);
            }
        }
        m
    }

    pub fn commutator(&self, other: &SparseMat) -> Self {
        &(self * other) - &(other * self)
    }

    pub fn to_dense(&self) -> Vec<Vec<Rat>> {
        let mut d = vec![vec![Rat::zero(); self.cols]; self.rows];
        for (i, j, v) in self.iter() {
            d[i][j] = v.clone();
        }
        d
    }
}

impl fmt::Debug for SparseMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparseMat({}x{}; ", self.rows, self.cols)?;
        let mut first = true;
        for (i, j, v) in self.iter() {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "({i},{j})={v}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for SparseMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl<'a> Add<&'a SparseMat> for &'a SparseMat {
    type Output = SparseMat;
    fn add(self, rhs: &SparseMat) -> SparseMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix add shape mismatch");
        let mut out = self.clone();
        for (i, row) in rhs.data.iter().enumerate() {
            for (&j, v) in row {
                add_entry(&mut out.data[i], j, v.clone());
            }
        }
        out
    }
}

impl<'a> Sub<&'a SparseMat> for &'a SparseMat {
    type Output = SparseMat;
    fn sub(self, rhs: &SparseMat) -> SparseMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix sub shape mismatch");
        let mut out = self.clone();
        for (i, row) in rhs.data.iter().enumerate() {
            for (&j, v) in row {
                add_entry(&mut out.data[i], j, -v.clone());
            }
        }
        out
    }
}

impl<'a> Mul<&'a SparseMat> for &'a SparseMat {
    type Output = SparseMat;
    fn mul(self, rhs: &SparseMat) -> SparseMat {
        assert_eq!(self.cols, rhs.rows, "matrix mul shape mismatch");
        let mut out = SparseMat::zeros(self.rows, rhs.cols);
        for (i, row) in self.data.iter().enumerate() {
            let acc = &mut out.data[i];
            for (&k, a) in row {
                for (&j, b) in &rhs.data[k] {
                    add_entry(acc, j, a * b);
                }
            }
        }
        out
    }
}

impl Neg for &SparseMat {
    type Output = SparseMat;
    fn neg(self) -> SparseMat {
        self.scale(&-Rat::one())
    }
}
