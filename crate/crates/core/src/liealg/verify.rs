//! Mechanical checks of the conformal bracket relations and of the isomorphism.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::conformal::{ConfKind, ConformalBasis, Ops};
use super::theta::Theta;
use crate::algebra::echelon::span_rank;
use crate::algebra::poly::Exponent;
use crate::algebra::{DiffOp, Rat, SparseVec};
use crate::error::Result;
use crate::report::Report;
use crate::weights::Series;

/// Interns `(derivative, monomial)` keys so operators become sparse vectors.
#[derive(Default, Debug)]
pub struct OpFlattener {
    keys: BTreeMap<(Exponent, Exponent), usize>,
}

impl OpFlattener {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn flatten(&mut self, op: &DiffOp) -> SparseVec {
        let mut v = SparseVec::new();
        for (beta, p) in op.terms() {
            for (e, c) in p.terms() {
                let next = self.keys.len();
                let k = *self.keys.entry((beta.clone(), e.clone())).or_insert(next);
                v.insert(k, c.clone());
            }
        }
        v
    }
}

/// Rank of the span of a list of operators.
pub fn op_rank<'a, I: IntoIterator<Item = &'a DiffOp>>(ops: I) -> usize {
    let mut f = OpFlattener::new();
    let vs: Vec<SparseVec> = ops.into_iter().map(|o| f.flatten(o)).collect();
    span_rank(&vs)
}

pub(crate) fn check_ops(report: &mut Report, first: usize, name: String, lhs: &DiffOp, rhs: &DiffOp) {
    let ok = lhs == rhs;
    let diff = if ok { "0".to_string() } else { (lhs - rhs).render(first) };
    report.record(name, ok, lhs.render(first), rhs.render(first), diff);
}

fn delta(a: usize, b: usize) -> Rat {
    if a == b {
        Rat::one()
    } else {
        Rat::zero()
    }
}

struct Table<'a> {
    ops: &'a Ops,
    first: usize,
    report: Report,
}

impl Table<'_> {
    fn eq(&mut self, name: String, lhs: DiffOp, rhs: DiffOp) {
        check_ops(&mut self.report, self.first, name, &lhs, &rhs);
    }

    fn br(&self, a: &DiffOp, b: &DiffOp) -> DiffOp {
        a.bracket(b).expect("same variables")
    }

    fn zero(&self) -> DiffOp {
        DiffOp::zero(self.ops.nvars())
    }

    /// Relations among translations, rotations, dilation and special generators.
    fn core_relations(&mut self) {
        let o = *self.ops;
        let n = o.layout().n;
        let idx = o.layout().indices();
        for &r in &idx {
            for &s in &idx {
                let jj = self.br(&o.j(r), &o.j(s));
                self.eq(format!("[J_{{{r}}},J_{{{s}}}] = 0"), jj, self.zero());
                let dd = self.br(&o.d(r), &o.d(s));
                self.eq(format!("[d_{{{r}}},d_{{{s}}}] = 0"), dd, self.zero());
            }
        }
        let dd = o.euler();
        for k in 1..=n {
            for i in 1..=n {
                let l = self.br(&o.d(k), &o.j(n + i));
                self.eq(format!("[d_{{{k}}},J_{{{}}}] = C_{{{i},{k}}}", n + i), l, o.c(i, k));
                let l = self.br(&o.d(n + k), &o.j(i));
                self.eq(format!("[d_{{{}}},J_{{{i}}}] = B_{{{i},{k}}}", n + k), l, o.b(i, k));
                let l = self.br(&o.d(k), &o.j(i));
                let r = &dd.scale(&delta(k, i)) + &o.a(i, k);
                self.eq(format!("[d_{{{k}}},J_{{{i}}}] = delta_{{{k},{i}}} D + A_{{{i},{k}}}"), l, r);
                let l = self.br(&o.d(n + k), &o.j(n + i));
                let r = &dd.scale(&delta(k, i)) - &o.a(k, i);
                self.eq(
                    format!("[d_{{{}}},J_{{{}}}] = delta_{{{k},{i}}} D - A_{{{k},{i}}}", n + k, n + i),
                    l,
                    r,
                );
                for j in 1..=n {
                    self.rotation_relations(k, i, j);
                }
            }
            let l = self.br(&dd, &o.j(k));
            self.eq(format!("[D,J_{{{k}}}] = J_{{{k}}}"), l, o.j(k));
            let l = self.br(&dd, &o.j(n + k));
            self.eq(format!("[D,J_{{{}}}] = J_{{{}}}", n + k, n + k), l, o.j(n + k));
            let l = self.br(&o.d(k), &dd);
            self.eq(format!("[d_{{{k}}},D] = d_{{{k}}}"), l, o.d(k));
            let l = self.br(&o.d(n + k), &dd);
            self.eq(format!("[d_{{{}}},D] = d_{{{}}}", n + k, n + k), l, o.d(n + k));
        }
    }

    fn rotation_relations(&mut self, k: usize, i: usize, j: usize) {
        let o = *self.ops;
        let n = o.layout().n;
        let (a, b, c) = (o.a(i, j), o.b(i, j), o.c(i, j));
        let sfx = format!("(k={k},i={i},j={j})");

        let l = self.br(&o.d(k), &a);
        self.eq(format!("[d_k,A_{{i,j}}] = delta_{{k,i}} d_j {sfx}"), l, o.d(j).scale(&delta(k, i)));
        let l = self.br(&o.d(k), &b);
        let r = &o.d(n + j).scale(&delta(k, i)) - &o.d(n + i).scale(&delta(k, j));
        self.eq(format!("[d_k,B_{{i,j}}] = delta_{{k,i}} d_{{n+j}} - delta_{{k,j}} d_{{n+i}} {sfx}"), l, r);
        let l = self.br(&o.d(k), &c);
        self.eq(format!("[d_k,C_{{i,j}}] = 0 {sfx}"), l, self.zero());

        let l = self.br(&o.d(n + k), &a);
        self.eq(
            format!("[d_{{n+k}},A_{{i,j}}] = -delta_{{k,j}} d_{{n+i}} {sfx}"),
            l,
            o.d(n + i).scale(&-delta(k, j)),
        );
        let l = self.br(&o.d(n + k), &b);
        self.eq(format!("[d_{{n+k}},B_{{i,j}}] = 0 {sfx}"), l, self.zero());
        let l = self.br(&o.d(n + k), &c);
        let r = &o.d(j).scale(&delta(k, i)) - &o.d(i).scale(&delta(k, j));
        self.eq(format!("[d_{{n+k}},C_{{i,j}}] = delta_{{k,i}} d_j - delta_{{k,j}} d_i {sfx}"), l, r);

        let l = self.br(&o.j(k), &a);
        self.eq(format!("[J_k,A_{{i,j}}] = -delta_{{k,j}} J_i {sfx}"), l, o.j(i).scale(&-delta(k, j)));
        let l = self.br(&o.j(k), &b);
        self.eq(format!("[J_k,B_{{i,j}}] = 0 {sfx}"), l, self.zero());
        let l = self.br(&o.j(k), &c);
        let r = &o.j(n + j).scale(&delta(k, i)) - &o.j(n + i).scale(&delta(k, j));
        self.eq(format!("[J_k,C_{{i,j}}] = delta_{{k,i}} J_{{n+j}} - delta_{{k,j}} J_{{n+i}} {sfx}"), l, r);

        let l = self.br(&o.j(n + k), &a);
        self.eq(
            format!("[J_{{n+k}},A_{{i,j}}] = delta_{{k,i}} J_{{n+j}} {sfx}"),
            l,
            o.j(n + j).scale(&delta(k, i)),
        );
        let l = self.br(&o.j(n + k), &b);
        let r = &o.j(j).scale(&delta(k, i)) - &o.j(i).scale(&delta(k, j));
        self.eq(format!("[J_{{n+k}},B_{{i,j}}] = delta_{{k,i}} J_j - delta_{{k,j}} J_i {sfx}"), l, r);
        let l = self.br(&o.j(n + k), &c);
        self.eq(format!("[J_{{n+k}},C_{{i,j}}] = 0 {sfx}"), l, self.zero());
    }

    /// Relations involving `x_0`: only for the odd series.
    fn odd_relations(&mut self) {
        let o = *self.ops;
        let n = o.layout().n;
        let (d0, j0) = (o.d(0), o.j(0));
        let l = self.br(&d0, &j0);
        self.eq("[d_0,J_0] = D".into(), l, o.euler());
        for i in 1..=n {
            let sfx = format!("(i={i})");
            let l = self.br(&d0, &o.j(n + i));
            self.eq(format!("[d_0,J_{{n+i}}] = -K_i {sfx}"), l, -&o.k(i));
            let l = self.br(&d0, &o.j(i));
            self.eq(format!("[d_0,J_i] = -K_{{n+i}} {sfx}"), l, -&o.k(n + i));
            let l = self.br(&d0, &o.k(i));
            self.eq(format!("[d_0,K_i] = d_i {sfx}"), l, o.d(i));
            let l = self.br(&d0, &o.k(n + i));
            self.eq(format!("[d_0,K_{{n+i}}] = d_{{n+i}} {sfx}"), l, o.d(n + i));
            let l = self.br(&o.d(i), &j0);
            self.eq(format!("[d_i,J_0] = K_i {sfx}"), l, o.k(i));
            let l = self.br(&o.d(n + i), &j0);
            self.eq(format!("[d_{{n+i}},J_0] = K_{{n+i}} {sfx}"), l, o.k(n + i));
            let l = self.br(&j0, &o.k(i));
            self.eq(format!("[J_0,K_i] = J_{{n+i}} {sfx}"), l, o.j(n + i));
            let l = self.br(&j0, &o.k(n + i));
            self.eq(format!("[J_0,K_{{n+i}}] = J_i {sfx}"), l, o.j(i));
            for j in 1..=n {
                let sfx = format!("(i={i},j={j})");
                let z = self.zero();
                let dz = d0.scale(&-delta(i, j));
                let jz = j0.scale(&-delta(i, j));
                let l = self.br(&o.d(i), &o.k(j));
                self.eq(format!("[d_i,K_j] = 0 {sfx}"), l, z.clone());
                let l = self.br(&o.d(n + i), &o.k(n + j));
                self.eq(format!("[d_{{n+i}},K_{{n+j}}] = 0 {sfx}"), l, z.clone());
                let l = self.br(&o.d(i), &o.k(n + j));
                self.eq(format!("[d_i,K_{{n+j}}] = -delta_{{i,j}} d_0 {sfx}"), l, dz.clone());
                let l = self.br(&o.d(n + i), &o.k(j));
                self.eq(format!("[d_{{n+i}},K_j] = -delta_{{i,j}} d_0 {sfx}"), l, dz);
                let l = self.br(&o.j(i), &o.k(j));
                self.eq(format!("[J_i,K_j] = -delta_{{i,j}} J_0 {sfx}"), l, jz.clone());
                let l = self.br(&o.j(n + i), &o.k(n + j));
                self.eq(format!("[J_{{n+i}},K_{{n+j}}] = -delta_{{i,j}} J_0 {sfx}"), l, jz);
                let l = self.br(&o.j(i), &o.k(n + j));
                self.eq(format!("[J_i,K_{{n+j}}] = 0 {sfx}"), l, z.clone());
                let l = self.br(&o.j(n + i), &o.k(j));
                self.eq(format!("[J_{{n+i}},K_j] = 0 {sfx}"), l, z.clone());
                for (name, x) in [("A", o.a(i, j)), ("B", o.b(i, j)), ("C", o.c(i, j))] {
                    let l = self.br(&d0, &x);
                    self.eq(format!("[d_0,{name}_{{i,j}}] = 0 {sfx}"), l, z.clone());
                    let l = self.br(&j0, &x);
                    self.eq(format!("[J_0,{name}_{{i,j}}] = 0 {sfx}"), l, z.clone());
                }
            }
        }
    }
}

/// Checks every listed commutation relation of the conformal generators.
pub fn verify_bracket_tables(n: usize, series: Series) -> Result<Report> {
    series.check_rank(n)?;
    let ops = Ops::new(series, n);
    let mut t = Table {
        ops: &ops,
        first: series.first_index(),
        report: Report::new(format!("bracket relations, series {series}, n={n}")),
    };
    t.core_relations();
    if series == Series::B {
        t.odd_relations();
    }
    Ok(t.report)
}

/// Checks `theta([X,Y]) = [theta(X), theta(Y)]` on all basis pairs and injectivity.
pub fn verify_theta_homomorphism(n: usize, series: Series) -> Result<Report> {
    let theta = Theta::new(series, n)?;
    let dom = theta.domain();
    let first = series.first_index();
    let images: Vec<DiffOp> = (0..dom.len()).map(|i| theta.image_of(i)).collect();
    let mut report = Report::new(format!("theta homomorphism, series {series}, n={n}"));
    for a in 0..dom.len() {
        for b in 0..dom.len() {
            let lhs = theta.apply_coords(&dom.bracket(a, b));
            let rhs = images[a].bracket(&images[b])?;
            let name = format!("theta([{}, {}])", dom.element(a).label, dom.element(b).label);
            check_ops(&mut report, first, name, &lhs, &rhs);
        }
    }
    let rank = op_rank(&images);
    report.check(
        "images linearly independent",
        rank == dom.len(),
        format!("rank {rank} of {} images", dom.len()),
    );
    Ok(report)
}

/// Dimension of the span of the conformal generators.
pub fn conformal_dimension(c: &ConformalBasis) -> usize {
    op_rank(c.gens().iter().map(|g| &g.op))
}

/// The generators without `x_0`-terms close under bracket (odd series).
pub fn even_subalgebra_closes(n: usize) -> Result<bool> {
    let c = ConformalBasis::new(n, Series::B)?;
    let sub: Vec<&DiffOp> = c
        .gens()
        .iter()
        .filter(|g| !matches!(g.kind, ConfKind::K(_) | ConfKind::J(0) | ConfKind::Partial(0)))
        .map(|g| &g.op)
        .collect();
    let mut f = OpFlattener::new();
    let base: Vec<SparseVec> = sub.iter().map(|o| f.flatten(o)).collect();
    let r0 = span_rank(&base);
    for a in &sub {
        for b in &sub {
            let z = a.bracket(b)?;
            let mut vs = base.clone();
            vs.push(f.flatten(&z));
            if span_rank(&vs) != r0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_hold_small_rank() {
        for (s, n) in [(Series::D, 2), (Series::B, 1), (Series::B, 2)] {
            let r = verify_bracket_tables(n, s).unwrap();
            assert!(r.passed(), "{r}");
            assert!(r.len() > 50);
        }
    }

    #[test]
    fn theta_is_isomorphism_small() {
        let r = verify_theta_homomorphism(1, Series::B).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.len(), 10 * 10 + 1);
    }

    #[test]
    fn dimensions_by_rank() {
        let c = ConformalBasis::new(2, Series::D).unwrap();
        assert_eq!(conformal_dimension(&c), 15);
        let c = ConformalBasis::new(2, Series::B).unwrap();
        assert_eq!(conformal_dimension(&c), 21);
    }

    #[test]
    fn even_part_is_subalgebra() {
        assert!(even_subalgebra_closes(2).unwrap());
    }
}
