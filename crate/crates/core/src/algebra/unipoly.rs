//! Univariate rational polynomials, characteristic polynomials and rational roots.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rat::Rat;
use super::sparse::SparseMat;
use crate::error::{Error, Result};

/// Polynomial in `t` with coefficients stored lowest degree first.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UniPoly {
    coeffs: Vec<Rat>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::new(vec![Rat::one()])
    }

    /// `t - r`.
    pub fn linear(r: &Rat) -> Self {
        UniPoly::new(vec![-r.clone(), Rat::one()])
    }

    /// `prod (t - r)^m`.
    pub fn from_roots(roots: &[(Rat, usize)]) -> Self {
        let mut p = UniPoly::one();
        for (r, m) in roots {
            let l = UniPoly::linear(r);
            for _ in 0..*m {
                p = p.mul(&l);
            }
        }
        p
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, t: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn add(&self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = Rat::zero();
        UniPoly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + o.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn sub(&self, o: &UniPoly) -> UniPoly {
        self.add(&o.scale(&-Rat::one()))
    }

    pub fn scale(&self, c: &Rat) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rat::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead = d.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut q = vec![Rat::zero(); rem.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &rem[i + dd] / &lead;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * dc;
                }
            }
            q[i] = c;
        }
        rem.truncate(dd);
        (UniPoly::new(q), UniPoly::new(rem))
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&(Rat::one() / self.leading()))
    }

    pub fn gcd(&self, o: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Distinct rational roots with multiplicities, plus the monic cofactor
    /// that has no rational roots.
    pub fn rational_roots(&self) -> (Vec<(Rat, usize)>, UniPoly) {
        assert!(!self.is_zero(), "roots of the zero polynomial");
        let mut rest = self.monic();
        let mut roots = Vec::new();
        let sqfree = rest.div_rem(&rest.gcd(&rest.derivative())).0;
        for r in squarefree_rational_roots(&sqfree) {
            let lin = UniPoly::linear(&r);
            let mut m = 0;
            loop {
                let (q, rem) = rest.div_rem(&lin);
                if !rem.is_zero() {
                    break;
                }
                rest = q;
                m += 1;
            }
            roots.push((r, m));
        }
        roots.sort_by(|a, b| b.0.cmp(&a.0));
        (roots, rest)
    }

    /// Factored form over the rational roots, e.g. `(t-1)^9(t+1)^6(t+3)`.
    pub fn factored(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let (roots, rest) = self.rational_roots();
        let mut s = String::new();
        let lead = self.leading();
        if !lead.is_one() {
            s.push_str(&format!("{lead}*"));
        }
        for (r, m) in &roots {
            let f = if r.is_zero() {
                "t".to_string()
            } else if r.is_positive() {
                format!("(t-{r})")
            } else {
                format!("(t+{})", -r.clone())
            };
            s.push_str(&f);
            if *m > 1 {
                s.push_str(&format!("^{m}"));
            }
        }
        if rest.degree().unwrap_or(0) > 0 {
            s.push_str(&format!("({rest})"));
        }
        if s.is_empty() {
            s.push('1');
        }
        s
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut s = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let body = match i {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            };
            let first = s.is_empty();
            super::poly::push_term(&mut s, first, c, &body);
        }
        f.write_str(&s)
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    if n.is_zero() {
        return vec![BigInt::one()];
    }
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        let mut e = 0;
        while (&n % &p).is_zero() {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            factors.push((p.clone(), e));
        }
        p += 1;
    }
    if n > BigInt::one() {
        factors.push((n, 1));
    }
    let mut out = vec![BigInt::one()];
    for (p, e) in factors {
        let mut next = Vec::new();
        for d in &out {
            let mut m = d.clone();
            for _ in 0..=e {
                next.push(m.clone());
                m *= &p;
            }
        }
        out = next;
    }
    out
}

fn squarefree_rational_roots(p: &UniPoly) -> Vec<Rat> {
    let mut p = p.clone();
    let mut roots = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return roots;
    }
    if p.coeffs[0].is_zero() {
        roots.push(Rat::zero());
        p = UniPoly::new(p.coeffs[1..].to_vec());
    }
    if p.degree().unwrap_or(0) == 0 {
        return roots;
    }
    let lcm = p
        .coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.coeffs.iter().map(|c| (c * Rat::from_integer(lcm.clone())).to_integer()).collect();
    let lead = ints.last().expect("nonzero").clone();
    let constant = ints[0].clone();
    for q in divisors(&lead) {
        for a in divisors(&constant) {
            for r in [Rat::new(a.clone(), q.clone()), Rat::new(-a.clone(), q.clone())] {
                if !roots.contains(&r) && p.eval(&r).is_zero() {
                    roots.push(r);
                }
            }
        }
    }
    roots
}

fn dense_charpoly(mut a: Vec<Vec<Rat>>) -> UniPoly {
    let n = a.len();
    // Hessenberg reduction by elementary similarity transforms.
    for j in 0..n.saturating_sub(2) {
        let Some(p) = (j + 1..n).find(|&i| !a[i][j].is_zero()) else {
            continue;
        };
        if p != j + 1 {
            a.swap(p, j + 1);
            for row in a.iter_mut() {
                row.swap(p, j + 1);
            }
        }
        let piv = a[j + 1][j].clone();
        for r in j + 2..n {
            if a[r][j].is_zero() {
                continue;
            }
            let u = &a[r][j] / &piv;
            for c in 0..n {
                let v = &u * &a[j + 1][c];
                if !v.is_zero() {
                    a[r][c] -= v;
                }
            }
            for row in a.iter_mut() {
                let v = &u * &row[r];
                if !v.is_zero() {
                    row[j + 1] += v;
                }
            }
        }
    }
    let mut p: Vec<UniPoly> = vec![UniPoly::one()];
    for m in 1..=n {
        let mut pm = UniPoly::linear(&a[m - 1][m - 1]).mul(&p[m - 1]);
        let mut prod = Rat::one();
        for i in 1..m {
            prod *= &a[m - i][m - i - 1];
            if prod.is_zero() {
                break;
            }
            let c = &a[m - i - 1][m - 1] * &prod;
            if !c.is_zero() {
                pm = pm.sub(&p[m - i - 1].scale(&c));
            }
        }
        p.push(pm);
    }
    p.pop().expect("nonempty")
}

/// Connected components of the symmetric sparsity pattern.
fn components(m: &SparseMat) -> Vec<Vec<usize>> {
    let n = m.rows();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (i, j, _) in m.iter() {
        let (a, b) = (find(&mut parent, i), find(&mut parent, j));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    groups.into_values().collect()
}

/// Monic characteristic polynomial `det(t I - M)`.
///
/// The matrix is split into the diagonal blocks of its sparsity graph first,
/// and each block is reduced to Hessenberg form.
pub fn charpoly(m: &SparseMat) -> Result<UniPoly> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let mut acc = UniPoly::one();
    for comp in components(m) {
        let block = m.submatrix(&comp, &comp);
        acc = acc.mul(&dense_charpoly(block.to_dense()));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::{frac, int};

    #[test]
    fn identity_two() {
        let p = charpoly(&SparseMat::identity(2)).unwrap();
        assert_eq!(p.coeffs(), &[int(1), int(-2), int(1)]);
    }

    #[test]
    fn zero_matrix() {
        let p = charpoly(&SparseMat::zeros(3, 3)).unwrap();
        assert_eq!(p, UniPoly::new(vec![int(0), int(0), int(0), int(1)]));
        assert_eq!(p.factored(), "t^3");
    }

    #[test]
    fn non_square_rejected() {
        assert!(matches!(charpoly(&SparseMat::zeros(2, 3)), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn companion_matrix_recovers_polynomial() {
        // companion of t^3 - 2t^2 - 5t + 6 = (t-1)(t+2)(t-3)
        let m = SparseMat::from_triplets(
            3,
            3,
            vec![(1, 0, int(1)), (2, 1, int(1)), (0, 2, int(-6)), (1, 2, int(5)), (2, 2, int(2))],
        );
        let p = charpoly(&m).unwrap();
        assert_eq!(p, UniPoly::from_roots(&[(int(1), 1), (int(-2), 1), (int(3), 1)]));
        let (roots, rest) = p.rational_roots();
        assert_eq!(roots, vec![(int(3), 1), (int(1), 1), (int(-2), 1)]);
        assert_eq!(rest, UniPoly::one());
    }

    #[test]
    fn fractional_roots_and_display() {
        let p = UniPoly::from_roots(&[(frac(-2, 1), 4), (frac(1, 2), 16)]);
        assert_eq!(p.factored(), "(t-1/2)^16(t+2)^4");
        let q = UniPoly::new(vec![int(1), int(0), int(1)]);
        let (roots, rest) = q.rational_roots();
        assert!(roots.is_empty());
        assert_eq!(rest, q);
    }
}
