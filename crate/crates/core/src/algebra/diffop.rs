//! Differential operators with polynomial coefficients in normal order.
//!
//! An operator is stored as `sum_beta p_beta(x) d^beta` with every coefficient
//! to the left of every derivative. Composition reorders through the Leibniz
//! rule, so equal operators always have identical stored form.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::One;

use super::poly::{check_vars, exponent_degree, push_term, Exponent, Poly};
use super::rat::Rat;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DiffOp {
    nvars: usize,
    terms: BTreeMap<Exponent, Poly>,
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// All `delta <= beta` componentwise.
fn sub_exponents(beta: &[u32]) -> Vec<Exponent> {
    let mut out = vec![Vec::with_capacity(beta.len())];
    for &b in beta {
        let mut next = Vec::with_capacity(out.len() * (b as usize + 1));
        for prefix in &out {
            for d in 0..=b {
                let mut p = prefix.clone();
                p.push(d);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

impl DiffOp {
    pub fn zero(nvars: usize) -> Self {
        DiffOp {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(nvars: usize, c: Rat) -> Self {
        Self::multiplication(Poly::constant(nvars, c))
    }

    pub fn identity(nvars: usize) -> Self {
        Self::scalar(nvars, Rat::one())
    }

    /// Multiplication by `p`.
    pub fn multiplication(p: Poly) -> Self {
        let n = p.nvars();
        Self::term(p, vec![0; n])
    }

    /// `d/dx_i`.
    pub fn partial(nvars: usize, i: usize) -> Self {
        let mut b = vec![0; nvars];
        b[i] = 1;
        Self::term(Poly::one(nvars), b)
    }

    /// `p * d^beta`.
    pub fn term(p: Poly, beta: Exponent) -> Self {
        let mut op = DiffOp::zero(p.nvars());
        op.add_term(beta, p);
        op
    }

    /// `x_i d/dx_j`.
    pub fn x_d(nvars: usize, i: usize, j: usize) -> Self {
        let mut b = vec![0; nvars];
        b[j] = 1;
        Self::term(Poly::var(nvars, i), b)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, Poly> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, beta: Exponent, p: Poly) {
        assert_eq!(beta.len(), self.nvars, "derivative exponent length mismatch");
        assert_eq!(p.nvars(), self.nvars, "coefficient variable mismatch");
        if p.is_zero() {
            return;
        }
        match self.terms.entry(beta) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(p);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &p;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// Highest derivative order present; 0 for the zero operator.
    pub fn order(&self) -> u32 {
        self.terms.keys().map(|b| exponent_degree(b)).max().unwrap_or(0)
    }

    /// Degree shift `deg(coefficient) - |beta|`, if every monomial agrees.
    pub fn degree_shift(&self) -> Option<i64> {
        let mut shift = None;
        for (beta, p) in &self.terms {
            for e in p.terms().keys() {
                let s = exponent_degree(e) as i64 - exponent_degree(beta) as i64;
                match shift {
                    None => shift = Some(s),
                    Some(t) if t != s => return None,
                    _ => {}
                }
            }
        }
        shift
    }

    /// Coefficients `f_j` of a first-order operator `sum_j f_j d_j`.
    pub fn vector_field(&self) -> Result<Vec<Poly>> {
        let mut f = vec![Poly::zero(self.nvars); self.nvars];
        for (beta, p) in &self.terms {
            if exponent_degree(beta) != 1 {
                return Err(Error::NotVectorField);
            }
            let j = beta.iter().position(|&b| b == 1).expect("unit exponent");
            f[j] = p.clone();
        }
        Ok(f)
    }

    pub fn from_vector_field(fields: &[Poly]) -> Self {
        let n = fields.len();
        let mut op = DiffOp::zero(n);
        for (j, f) in fields.iter().enumerate() {
            let mut b = vec![0; n];
            b[j] = 1;
            op.add_term(b, f.clone());
        }
        op
    }

    pub fn scale(&self, c: &Rat) -> DiffOp {
        let mut out = DiffOp::zero(self.nvars);
        for (b, p) in &self.terms {
            out.add_term(b.clone(), p.scale(c));
        }
        out
    }

    pub fn try_add(&self, other: &DiffOp) -> Result<DiffOp> {
        check_vars(self.nvars, other.nvars)?;
        let mut out = self.clone();
        for (b, p) in &other.terms {
            out.add_term(b.clone(), p.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &DiffOp) -> Result<DiffOp> {
        self.try_add(&other.scale(&-Rat::one()))
    }

    /// Left multiplication by a polynomial.
    pub fn premultiply(&self, p: &Poly) -> Result<DiffOp> {
        check_vars(self.nvars, p.nvars())?;
        let mut out = DiffOp::zero(self.nvars);
        for (b, q) in &self.terms {
            out.add_term(b.clone(), p * q);
        }
        Ok(out)
    }

    /// Normal-ordered composition `self o other`.
    pub fn compose(&self, other: &DiffOp) -> Result<DiffOp> {
        check_vars(self.nvars, other.nvars)?;
        let mut out = DiffOp::zero(self.nvars);
        for (beta, f) in &self.terms {
            for delta in sub_exponents(beta) {
                let mut c = BigInt::one();
                for (&b, &d) in beta.iter().zip(&delta) {
                    c *= binomial(b, d);
                }
                let c = Rat::from_integer(c);
                for (gamma, g) in &other.terms {
                    let dg = g.partial_multi(&delta);
                    if dg.is_zero() {
                        continue;
                    }
                    let new_beta: Exponent = beta
                        .iter()
                        .zip(&delta)
                        .zip(gamma)
                        .map(|((b, d), g)| b - d + g)
                        .collect();
                    out.add_term(new_beta, (f * &dg).scale(&c));
                }
            }
        }
        Ok(out)
    }

    /// Commutator `self o other - other o self`.
    pub fn bracket(&self, other: &DiffOp) -> Result<DiffOp> {
        self.compose(other)?.try_sub(&other.compose(self)?)
    }

    pub fn apply(&self, f: &Poly) -> Result<Poly> {
        check_vars(self.nvars, f.nvars())?;
        let mut out = Poly::zero(self.nvars);
        for (beta, p) in &self.terms {
            let d = f.partial_multi(beta);
            if !d.is_zero() {
                out = &out + &(p * &d);
            }
        }
        Ok(out)
    }

    /// Renders with variables named `x{first}..` and derivatives `d{first}..`.
    pub fn render(&self, first: usize) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (idx, (beta, p)) in self.terms.iter().enumerate() {
            let d: Vec<String> = beta
                .iter()
                .enumerate()
                .filter(|(_, &b)| b > 0)
                .map(|(i, &b)| {
                    if b == 1 {
                        format!("d{}", i + first)
                    } else {
                        format!("d{}^{}", i + first, b)
                    }
                })
                .collect();
            let d = d.join("*");
            if p.len() == 1 {
                let (e, c) = p.terms().iter().next().expect("one term");
                let mono = Poly::monomial(self.nvars, e.clone(), Rat::one()).render(first);
                let body = match (mono == "1", d.is_empty()) {
                    (true, true) => String::new(),
                    (true, false) => d,
                    (false, true) => mono,
                    (false, false) => format!("{mono}*{d}"),
                };
                push_term(&mut s, idx == 0, c, &body);
            } else {
                let body = if d.is_empty() {
                    format!("({})", p.render(first))
                } else {
                    format!("({})*{d}", p.render(first))
                };
                push_term(&mut s, idx == 0, &Rat::one(), &body);
            }
        }
        s
    }
}

impl fmt::Debug for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiffOp[{}]({})", self.nvars, self.render(0))
    }
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(0))
    }
}

impl Add for &DiffOp {
    type Output = DiffOp;
    fn add(self, rhs: &DiffOp) -> DiffOp {
        self.try_add(rhs).expect("operator add")
    }
}

impl Sub for &DiffOp {
    type Output = DiffOp;
    fn sub(self, rhs: &DiffOp) -> DiffOp {
        self.try_sub(rhs).expect("operator sub")
    }
}

impl Mul for &DiffOp {
    type Output = DiffOp;
    fn mul(self, rhs: &DiffOp) -> DiffOp {
        self.compose(rhs).expect("operator compose")
    }
}

impl Neg for &DiffOp {
    type Output = DiffOp;
    fn neg(self) -> DiffOp {
        self.scale(&-Rat::one())
    }
}
