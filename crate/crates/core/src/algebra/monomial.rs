//! Graded-lexicographic monomial bases of homogeneous components.

use std::collections::HashMap;

use super::poly::Exponent;

/// All exponent vectors of length `nvars` and total degree `k`, in graded
/// lexicographic order (larger leading exponents first).
pub fn monomial_basis(nvars: usize, k: u32) -> Vec<Exponent> {
    let mut out = Vec::new();
    if nvars == 0 {
        if k == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut cur = vec![0u32; nvars];
    fill(&mut cur, 0, k, &mut out);
    out
}

fn fill(cur: &mut Vec<u32>, pos: usize, left: u32, out: &mut Vec<Exponent>) {
    if pos + 1 == cur.len() {
        cur[pos] = left;
        out.push(cur.clone());
        return;
    }
    for e in (0..=left).rev() {
        cur[pos] = e;
        fill(cur, pos + 1, left - e, out);
    }
    cur[pos] = 0;
}

/// `C(k + nvars - 1, nvars - 1)`, the dimension of the degree-`k` component.
pub fn component_dim(nvars: usize, k: u32) -> usize {
    if nvars == 0 {
        return usize::from(k == 0);
    }
    let (n, r) = (k as usize + nvars - 1, nvars - 1);
    let mut acc: u128 = 1;
    for i in 0..r.min(n - r) {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// A monomial basis together with its reverse lookup.
#[derive(Clone, Debug)]
pub struct MonomialIndex {
    pub degree: u32,
    basis: Vec<Exponent>,
    index: HashMap<Exponent, usize>,
}

impl MonomialIndex {
    pub fn new(nvars: usize, degree: u32) -> Self {
        let basis = monomial_basis(nvars, degree);
        let index = basis.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        MonomialIndex { degree, basis, index }
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Exponent] {
        &self.basis
    }

    pub fn position(&self, e: &[u32]) -> Option<usize> {
        self.index.get(e).copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_vars_degree_two() {
        assert_eq!(monomial_basis(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
    }

    #[test]
    fn degree_zero_is_single_constant() {
        assert_eq!(monomial_basis(4, 0), vec![vec![0, 0, 0, 0]]);
    }

    #[test]
    fn counts_match_binomials() {
        for nv in 1..6 {
            for k in 0..6 {
                assert_eq!(monomial_basis(nv, k).len(), component_dim(nv, k));
            }
        }
        assert_eq!(monomial_basis(4, 3).len(), 20);
    }

    #[test]
    fn index_round_trips() {
        let m = MonomialIndex::new(3, 3);
        for (i, e) in m.basis().iter().enumerate() {
            assert_eq!(m.position(e), Some(i));
        }
    }
}
