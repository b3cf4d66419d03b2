//! Shen's embedding of vector fields into vector fields plus matrix-valued functions.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::One;

use crate::algebra::echelon::span_rank;
use crate::algebra::poly::Exponent;
use crate::algebra::{DiffOp, Poly, Rat, SparseMat, SparseVec};
use crate::error::{Error, Result};
use crate::liealg::verify::OpFlattener;
use crate::liealg::{ConfKind, ConformalBasis, Layout, Ops, OrthoBasis};
use crate::report::Report;
use crate::weights::Series;

/// Polynomial matrix `sum_alpha x^alpha M_alpha`; zero coefficients are never stored.
pub type PolyMat = BTreeMap<Exponent, SparseMat>;

fn add_term(pm: &mut PolyMat, e: Exponent, m: SparseMat) {
    if m.is_zero() {
        return;
    }
    match pm.get_mut(&e) {
        Some(cur) => {
            let s = &*cur + &m;
            if s.is_zero() {
                pm.remove(&e);
            } else {
                *cur = s;
            }
        }
        None => {
            pm.insert(e, m);
        }
    }
}

fn add_exp(a: &[u32], b: &[u32]) -> Exponent {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// An element `d + A` of the semidirect product of vector fields and `gl(m, A)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendedOp {
    pub field: DiffOp,
    pub gl: PolyMat,
    m: usize,
}

/// Matrix part split into `o(m)` coordinates and the coefficient of the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitParts {
    pub ortho: BTreeMap<Exponent, SparseVec>,
    pub central: Poly,
}

impl ExtendedOp {
    pub fn new(field: DiffOp, gl: PolyMat) -> Self {
        let m = field.nvars();
        let mut clean = PolyMat::new();
        for (e, x) in gl {
            assert_eq!((x.rows(), x.cols()), (m, m), "matrix size must match variable count");
            add_term(&mut clean, e, x);
        }
        ExtendedOp { field, gl: clean, m }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn nvars(&self) -> usize {
        self.field.nvars()
    }

    fn apply_field(&self, pm: &PolyMat) -> Result<PolyMat> {
        let mut out = PolyMat::new();
        for (e, x) in pm {
            let p = self.field.apply(&Poly::monomial(self.nvars(), e.clone(), Rat::one()))?;
            for (f, c) in p.terms() {
                add_term(&mut out, f.clone(), x.scale(c));
            }
        }
        Ok(out)
    }

    /// `[d1 + A1, d2 + A2] = [d1, d2] + [A1, A2] + d1(A2) - d2(A1)`.
    pub fn bracket(&self, other: &ExtendedOp) -> Result<ExtendedOp> {
        let field = self.field.bracket(&other.field)?;
        let mut gl = PolyMat::new();
        for (a, x) in &self.gl {
            for (b, y) in &other.gl {
                add_term(&mut gl, add_exp(a, b), x.commutator(y));
            }
        }
        for (e, x) in self.apply_field(&other.gl)? {
            add_term(&mut gl, e, x);
        }
        for (e, x) in other.apply_field(&self.gl)? {
            add_term(&mut gl, e, -&x);
        }
        Ok(ExtendedOp::new(field, gl))
    }

    pub fn scale(&self, c: &Rat) -> ExtendedOp {
        ExtendedOp::new(self.field.scale(c), self.gl.iter().map(|(e, x)| (e.clone(), x.scale(c))).collect())
    }

    pub fn add(&self, other: &ExtendedOp) -> ExtendedOp {
        let mut gl = self.gl.clone();
        for (e, x) in &other.gl {
            add_term(&mut gl, e.clone(), x.clone());
        }
        ExtendedOp::new(&self.field + &other.field, gl)
    }

    /// Splits every matrix coefficient as `(trace/m) I + X` with `X` in `o(m)`.
    pub fn split(&self, basis: &OrthoBasis) -> Result<SplitParts> {
        let m = self.m;
        let mut ortho = BTreeMap::new();
        let mut central = Poly::zero(self.nvars());
        for (e, x) in &self.gl {
            let t = x.trace() / Rat::from_integer(m.into());
            let rest = x - &SparseMat::scalar(m, &t);
            let coords = basis.coordinates(&rest)?;
            if !coords.is_empty() {
                ortho.insert(e.clone(), coords);
            }
            central.add_term(e.clone(), t);
        }
        Ok(SplitParts { ortho, central })
    }

    pub fn render(&self, layout: Layout) -> String {
        let first = layout.series.first_index();
        let mut s = self.field.render(first);
        let mut entries: BTreeMap<(usize, usize), Poly> = BTreeMap::new();
        for (e, x) in &self.gl {
            for (r, c, v) in x.iter() {
                entries
                    .entry((r, c))
                    .or_insert_with(|| Poly::zero(self.nvars()))
                    .add_term(e.clone(), v.clone());
            }
        }
        for ((r, c), p) in entries {
            let _ = write!(s, " + ({})E_{{{},{}}}", p.render(first), layout.index(r), layout.index(c));
        }
        s
    }
}

/// `sum f_j d_j  ->  sum f_j d_j + sum_{i,j} d_i(f_j) E_{i,j}` over all indices.
pub fn shen_general(xi: &DiffOp) -> Result<ExtendedOp> {
    let f = xi.vector_field()?;
    let m = xi.nvars();
    let mut gl = PolyMat::new();
    for (j, fj) in f.iter().enumerate() {
        for i in 0..m {
            for (e, c) in fj.partial(i).terms() {
                let mut x = SparseMat::zeros(m, m);
                x.set(i, j, c.clone());
                add_term(&mut gl, e.clone(), x);
            }
        }
    }
    Ok(ExtendedOp::new(xi.clone(), gl))
}

/// Shen's embedding restricted to the conformal algebra.
pub fn shen_embed(conformal: &ConformalBasis, xi: &DiffOp) -> Result<ExtendedOp> {
    let mut f = OpFlattener::new();
    let mut vs: Vec<SparseVec> = conformal.gens().iter().map(|g| f.flatten(&g.op)).collect();
    let r0 = span_rank(&vs);
    vs.push(f.flatten(xi));
    if span_rank(&vs) != r0 {
        return Err(Error::NotInAlgebra("operator outside the conformal algebra".into()));
    }
    shen_general(xi)
}

/// Builder for the closed forms of the embedding on generators.
struct Closed<'a> {
    ops: &'a Ops,
}

impl Closed<'_> {
    fn layout(&self) -> Layout {
        self.ops.layout()
    }

    fn e(&self, r: usize, c: usize) -> SparseMat {
        let l = self.layout();
        SparseMat::unit(l.size(), l.size(), l.pos(r), l.pos(c))
    }

    fn e_minus(&self, a: (usize, usize), b: (usize, usize)) -> SparseMat {
        &self.e(a.0, a.1) - &self.e(b.0, b.1)
    }

    fn identity(&self) -> SparseMat {
        SparseMat::identity(self.layout().size())
    }

    fn constant(&self, x: SparseMat) -> PolyMat {
        let mut pm = PolyMat::new();
        add_term(&mut pm, vec![0; self.ops.nvars()], x);
        pm
    }

    fn linear(&self, pm: &mut PolyMat, r: usize, x: SparseMat) {
        let mut e = vec![0; self.ops.nvars()];
        e[self.layout().pos(r)] = 1;
        add_term(pm, e, x);
    }

    fn form(&self, kind: ConfKind, fault: bool) -> ExtendedOp {
        let o = self.ops;
        let l = self.layout();
        let n = l.n;
        let odd = l.series == Series::B;
        let field = o.op(kind);
        let gl = match kind {
            ConfKind::Partial(_) => PolyMat::new(),
            ConfKind::A(i, j) => self.constant(self.e_minus((i, j), (n + j, n + i))),
            ConfKind::B(r, s) => self.constant(self.e_minus((r, n + s), (s, n + r))),
            ConfKind::C(r, s) => self.constant(self.e_minus((n + r, s), (n + s, r))),
            ConfKind::D => self.constant(self.identity()),
            ConfKind::K(s) if s <= n => self.constant(self.e_minus((0, s), (n + s, 0))),
            ConfKind::K(s) => self.constant(self.e_minus((0, s), (s - n, 0))),
            ConfKind::J(0) => {
                let mut pm = PolyMat::new();
                for s in 1..=n {
                    self.linear(&mut pm, s, self.e_minus((0, s), (n + s, 0)));
                    self.linear(&mut pm, n + s, self.e_minus((0, n + s), (s, 0)));
                }
                self.linear(&mut pm, 0, self.identity());
                pm
            }
            ConfKind::J(r) => {
                let (i, hi) = if r <= n { (r, r) } else { (r - n, r) };
                let upper = r <= n;
                let mut pm = PolyMat::new();
                let sign = if fault && r == 1 { -Rat::one() } else { Rat::one() };
                for p in 1..=n {
                    let x = if upper {
                        self.e_minus((i, n + p), (p, n + i))
                    } else {
                        self.e_minus((n + i, n + p), (p, i))
                    };
                    self.linear(&mut pm, n + p, x);
                    let y = if upper {
                        self.e_minus((i, p), (n + p, n + i))
                    } else {
                        self.e_minus((n + i, p), (n + p, i))
                    };
                    self.linear(&mut pm, p, y.scale(&sign));
                }
                if odd {
                    let z = if upper {
                        self.e_minus((i, 0), (0, n + i))
                    } else {
                        self.e_minus((n + i, 0), (0, i))
                    };
                    self.linear(&mut pm, 0, z);
                }
                self.linear(&mut pm, hi, self.identity());
                pm
            }
        };
        ExtendedOp::new(field, gl)
    }
}

/// Closed-form image of a generator; `fault` flips one sign in the image of `J_1`.
pub fn shen_closed_form(ops: &Ops, kind: ConfKind, fault: bool) -> ExtendedOp {
    Closed { ops }.form(kind, fault)
}

/// Checks the closed forms, the homomorphism property on all generator pairs,
/// and that every image lies in `o(m, A) + A * identity` plus vector fields.
pub fn verify_shen_monomorphism(n: usize, series: Series, fault: bool) -> Result<Report> {
    let conformal = ConformalBasis::new(n, series)?;
    let ortho = OrthoBasis::new(series, n)?;
    let ops = conformal.ops();
    let layout = ops.layout();
    let mut report = Report::new(format!("Shen embedding, series {series}, n={n}"));
    let images: Vec<ExtendedOp> = conformal
        .gens()
        .iter()
        .map(|g| shen_general(&g.op))
        .collect::<Result<_>>()?;
    for (g, img) in conformal.gens().iter().zip(&images) {
        let closed = shen_closed_form(ops, g.kind, fault);
        let ok = &closed == img;
        let diff = if ok {
            "0".into()
        } else {
            closed.add(&img.scale(&-Rat::one())).render(layout)
        };
        report.record(
            format!("closed form of Im({})", g.label),
            ok,
            closed.render(layout),
            img.render(layout),
            diff,
        );
        match img.split(&ortho) {
            Ok(parts) => {
                let central_ok = match g.kind {
                    ConfKind::A(..) | ConfKind::B(..) | ConfKind::C(..) | ConfKind::K(_) | ConfKind::Partial(_) => {
                        parts.central.is_zero()
                    }
                    _ => true,
                };
                report.check(
                    format!("Im({}) lies in o(m,A) + A*central", g.label),
                    central_ok,
                    format!("central part {}", parts.central.render(series.first_index())),
                );
            }
            Err(e) => report.check(format!("Im({}) lies in o(m,A) + A*central", g.label), false, e.to_string()),
        }
    }
    for (a, ga) in conformal.gens().iter().enumerate() {
        for (b, gb) in conformal.gens().iter().enumerate() {
            let lhs = shen_general(&ga.op.bracket(&gb.op)?)?;
            let rhs = images[a].bracket(&images[b])?;
            let ok = lhs == rhs;
            let diff = if ok {
                "0".into()
            } else {
                lhs.add(&rhs.scale(&-Rat::one())).render(layout)
            };
            report.record(
                format!("Im([{}, {}]) = [Im({}), Im({})]", ga.label, gb.label, ga.label, gb.label),
                ok,
                lhs.render(layout),
                rhs.render(layout),
                diff,
            );
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::int;

    #[test]
    fn dilation_and_translation() {
        let c = ConformalBasis::new(2, Series::D).unwrap();
        let d = shen_general(c.get(ConfKind::D)).unwrap();
        assert_eq!(d.gl.len(), 1);
        assert_eq!(d.gl[&vec![0, 0, 0, 0]], SparseMat::identity(4));
        let p = shen_general(c.get(ConfKind::Partial(3))).unwrap();
        assert!(p.gl.is_empty());
    }

    #[test]
    fn split_of_j_has_linear_central_part() {
        let c = ConformalBasis::new(2, Series::B).unwrap();
        let o = OrthoBasis::new(Series::B, 2).unwrap();
        let parts = shen_general(c.get(ConfKind::J(0))).unwrap().split(&o).unwrap();
        assert_eq!(parts.central, c.ops().x(0));
        let parts = shen_general(c.get(ConfKind::A(1, 2))).unwrap().split(&o).unwrap();
        assert!(parts.central.is_zero());
    }

    #[test]
    fn outside_span_rejected() {
        let c = ConformalBasis::new(2, Series::D).unwrap();
        let x = DiffOp::term(c.ops().x(1).pow(2), vec![1, 0, 0, 0]);
        assert!(matches!(shen_embed(&c, &x), Err(Error::NotInAlgebra(_))));
        assert!(shen_embed(&c, &c.get(ConfKind::J(2)).scale(&int(3))).is_ok());
    }

    #[test]
    fn monomorphism_small() {
        let r = verify_shen_monomorphism(1, Series::B, false).unwrap();
        assert!(r.passed(), "{r}");
        let r = verify_shen_monomorphism(2, Series::D, false).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn fault_is_caught_once() {
        let clean = verify_shen_monomorphism(2, Series::D, false).unwrap();
        let bad = verify_shen_monomorphism(2, Series::D, true).unwrap();
        assert_eq!(bad.failure_count(), clean.failure_count() + 1);
        assert!(bad.failures().next().unwrap().identity.contains("J_{1}"));
    }
}
