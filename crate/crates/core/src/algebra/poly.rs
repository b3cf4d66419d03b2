//! Multivariate polynomials with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rat::Rat;
use crate::error::{Error, Result};

pub type Exponent = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Exponent, Rat>,
}

pub(crate) fn check_vars(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::VariableMismatch { left: a, right: b })
    }
}

pub fn exponent_degree(e: &[u32]) -> u32 {
    e.iter().sum()
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rat::one())
    }

    pub fn monomial(nvars: usize, exp: Exponent, c: Rat) -> Self {
        assert_eq!(exp.len(), nvars, "exponent length mismatch");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Poly { nvars, terms }
    }

    /// The coordinate function `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable {i} out of range {nvars}");
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, e, Rat::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponent, Rat)>>(nvars: usize, terms: I) -> Self {
        let mut p = Poly::zero(nvars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, Rat> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Exponent, Rat> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[u32]) -> Rat {
        self.terms.get(e).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, e: Exponent, c: Rat) {
        assert_eq!(e.len(), self.nvars, "exponent length mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| exponent_degree(e)).max()
    }

    /// Common degree of all terms, if the polynomial is homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|e| exponent_degree(e));
        let d = it.next()?;
        it.all(|x| x == d).then_some(d)
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        check_vars(self.nvars, other.nvars)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        check_vars(self.nvars, other.nvars)?;
        let mut out = Poly::zero(self.nvars);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let e: Exponent = a.iter().zip(b).map(|(p, q)| p + q).collect();
                out.add_term(e, x * y);
            }
        }
        Ok(out)
    }

    pub fn mul_monomial(&self, exp: &[u32]) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(exp).map(|(p, q)| p + q).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut out = Poly::one(self.nvars);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// `d/dx_i`.
    pub fn partial(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut f = e.clone();
            f[i] -= 1;
            out.add_term(f, c * Rat::from_integer(e[i].into()));
        }
        out
    }

    /// Mixed partial `d^beta`.
    pub fn partial_multi(&self, beta: &[u32]) -> Poly {
        let mut out = Poly::zero(self.nvars);
        'terms: for (e, c) in &self.terms {
            let mut f = e.clone();
            let mut factor = c.clone();
            for (i, &b) in beta.iter().enumerate() {
                if f[i] < b {
                    continue 'terms;
                }
                for s in 0..b {
                    factor *= Rat::from_integer((f[i] - s).into());
                }
                f[i] -= b;
            }
            out.add_term(f, factor);
        }
        out
    }

    /// Homogeneous component of degree `k`.
    pub fn component(&self, k: u32) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| exponent_degree(e) == k)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &p) in point.iter().zip(e) {
                for _ in 0..p {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    /// Renders with variables named `x{first}`, `x{first+1}`, ...
    pub fn render(&self, first: usize) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(i, &p)| {
                    if p == 1 {
                        format!("x{}", i + first)
                    } else {
                        format!("x{}^{}", i + first, p)
                    }
                })
                .collect();
            push_term(&mut s, idx == 0, c, &mono.join("*"));
        }
        s
    }
}

/// Appends `c*body` to a sum, eliding unit coefficients.
pub(crate) fn push_term(s: &mut String, first: bool, c: &Rat, body: &str) {
    let neg = c < &Rat::zero();
    let abs = if neg { -c.clone() } else { c.clone() };
    if first {
        if neg {
            s.push('-');
        }
    } else {
        s.push_str(if neg { " - " } else { " + " });
    }
    if body.is_empty() {
        s.push_str(&abs.to_string());
    } else if abs.is_one() {
        s.push_str(body);
    } else {
        s.push_str(&format!("{abs}*{body}"));
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.nvars, self.render(0))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(0))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.try_add(rhs).expect("polynomial add")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.try_add(&-rhs).expect("polynomial sub")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.try_mul(rhs).expect("polynomial mul")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rat::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::int;

    #[test]
    fn product_rule_pieces() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let p = &(&x * &y) * &y;
        assert_eq!(p.partial(1), &(&x * &y).scale(&int(2)) + &Poly::zero(2));
        assert_eq!(p.partial_multi(&[1, 2]), Poly::constant(2, int(2)));
        assert_eq!(p.homogeneous_degree(), Some(3));
    }

    #[test]
    fn mismatched_vars_rejected() {
        assert!(Poly::one(2).try_add(&Poly::one(3)).is_err());
    }

    #[test]
    fn render_is_readable() {
        let p = &Poly::var(2, 0).scale(&int(2)) - &Poly::one(2);
        assert_eq!(p.render(1), "2*x1 - 1");
    }
}
