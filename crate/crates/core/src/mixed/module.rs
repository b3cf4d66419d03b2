//! The generalized conformal module `A (x) V(mu)` with central charge `b`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use super::shen::shen_general;
use crate::algebra::monomial::component_dim;
use crate::algebra::poly::Exponent;
use crate::algebra::{DiffOp, MonomialIndex, Poly, Rat, SparseMat, SparseVec};
use crate::error::{Error, Result};
use crate::highest_weight::IrrepData;
use crate::liealg::{ConfKind, ConformalBasis, Ops, Theta};
use crate::weights::{Series, WeightVec};

pub const DEFAULT_SLICE_CAP: usize = 4096;

/// A generator prepared for acting: its vector field and the terms
/// `x^alpha (x) (rho(O_alpha) + b c_alpha)` of its matrix part.
#[derive(Clone, Debug)]
struct ModuleOp {
    field: DiffOp,
    shift: i64,
    terms: Vec<(Exponent, SparseMat, Rat)>,
}

#[derive(Clone, Debug)]
pub struct ConformalModule {
    irrep: IrrepData,
    b: Rat,
    theta: Theta,
    prepared: Vec<ModuleOp>,
    cap: usize,
}

impl ConformalModule {
    pub fn new(irrep: IrrepData, b: Rat) -> Result<Self> {
        let mu = irrep.mu();
        let theta = Theta::new(mu.series(), mu.n())?;
        let algebra = irrep.algebra().clone();
        let mut prepared = Vec::new();
        for g in theta.target().gens() {
            let ext = shen_general(&g.op)?;
            let parts = ext.split(&algebra)?;
            let mut terms = Vec::new();
            let mut keys: Vec<&Exponent> = parts.ortho.keys().chain(parts.central.terms().keys()).collect();
            keys.sort();
            keys.dedup();
            for e in keys {
                let rho = parts.ortho.get(e).map(|c| irrep.act(c)).unwrap_or_else(|| SparseMat::zeros(irrep.dim(), irrep.dim()));
                terms.push((e.clone(), rho, parts.central.coeff(e)));
            }
            let shift = g.op.degree_shift().unwrap_or(0);
            prepared.push(ModuleOp {
                field: g.op.clone(),
                shift,
                terms,
            });
        }
        Ok(ConformalModule {
            irrep,
            b,
            theta,
            prepared,
            cap: DEFAULT_SLICE_CAP,
        })
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    /// Same module data with a different central charge.
    pub fn with_b(&self, b: Rat) -> Self {
        ConformalModule { b, ..self.clone() }
    }

    pub fn b(&self) -> &Rat {
        &self.b
    }

    pub fn irrep(&self) -> &IrrepData {
        &self.irrep
    }

    pub fn mu(&self) -> &WeightVec {
        self.irrep.mu()
    }

    pub fn series(&self) -> Series {
        self.mu().series()
    }

    pub fn theta(&self) -> &Theta {
        &self.theta
    }

    pub fn conformal(&self) -> &ConformalBasis {
        self.theta.target()
    }

    pub fn ops(&self) -> &Ops {
        self.conformal().ops()
    }

    pub fn nvars(&self) -> usize {
        self.conformal().nvars()
    }

    /// Dimension of the degree-`k` slice; zero for negative `k`.
    pub fn slice_dim(&self, k: i64) -> usize {
        if k < 0 {
            0
        } else {
            component_dim(self.nvars(), k as u32) * self.irrep.dim()
        }
    }

    fn check_cap(&self, k: i64) -> Result<()> {
        let dim = self.slice_dim(k);
        if dim > self.cap {
            return Err(Error::CapExceeded { dim, cap: self.cap });
        }
        Ok(())
    }

    fn monomials(&self, k: i64) -> MonomialIndex {
        MonomialIndex::new(self.nvars(), k.max(0) as u32)
    }

    /// Degree shift of a conformal generator.
    pub fn shift(&self, kind: ConfKind) -> i64 {
        let i = self.conformal().index_of(kind).expect("generator of this algebra");
        self.prepared[i].shift
    }

    fn act_prepared(&self, op: &ModuleOp, k: i64) -> Result<SparseMat> {
        let target = k + op.shift;
        let d = self.irrep.dim();
        let rows = self.slice_dim(target);
        let cols = self.slice_dim(k);
        if cols == 0 || rows == 0 {
            return Ok(SparseMat::zeros(rows, cols));
        }
        self.check_cap(k)?;
        self.check_cap(target)?;
        let src = self.monomials(k);
        let dst = self.monomials(target);
        let blocks: Vec<(&Exponent, SparseMat)> = op
            .terms
            .iter()
            .map(|(e, rho, c)| {
                let m = if c.is_zero() {
                    rho.clone()
                } else {
                    rho + &SparseMat::scalar(d, &(c * &self.b))
                };
                (e, m)
            })
            .filter(|(_, m)| !m.is_zero())
            .collect();
        let mut out = SparseMat::zeros(rows, cols);
        for (bi, beta) in src.basis().iter().enumerate() {
            let image = op.field.apply(&Poly::monomial(self.nvars(), beta.clone(), Rat::one()))?;
            for (g, c) in image.terms() {
                let gi = dst.position(g).expect("homogeneous image");
                for j in 0..d {
                    out.add_to(gi * d + j, bi * d + j, c.clone());
                }
            }
            for (alpha, m) in &blocks {
                let e: Exponent = alpha.iter().zip(beta).map(|(a, b)| a + b).collect();
                let ei = dst.position(&e).expect("homogeneous image");
                for (r, c, v) in m.iter() {
                    out.add_to(ei * d + r, bi * d + c, v.clone());
                }
            }
        }
        Ok(out)
    }

    /// Action of a conformal generator as a map from degree `k` to degree `k + shift`.
    pub fn act_conformal(&self, kind: ConfKind, k: i64) -> Result<SparseMat> {
        let i = self
            .conformal()
            .index_of(kind)
            .ok_or_else(|| Error::NotInAlgebra(format!("no generator {}", kind.label())))?;
        self.act_prepared(&self.prepared[i], k)
    }

    /// Action of the `idx`-th basis element of `o(m+2)` through the isomorphism.
    pub fn act_ortho(&self, idx: usize, k: i64) -> Result<SparseMat> {
        let (s, kind) = self.theta.image_kind(idx);
        Ok(self.act_conformal(kind, k)?.scale(s))
    }

    /// Degree shift of the `idx`-th basis element of `o(m+2)`.
    pub fn ortho_shift(&self, idx: usize) -> i64 {
        self.shift(self.theta.image_kind(idx).1)
    }

    /// Action of an `o(m+2)` element given by coordinates, all of one degree shift.
    pub fn act_coords(&self, coords: &SparseVec, k: i64) -> Result<SparseMat> {
        let mut shift = None;
        for &i in coords.keys() {
            let s = self.ortho_shift(i);
            if shift.is_some_and(|t| t != s) {
                return Err(Error::NotHomogeneous);
            }
            shift = Some(s);
        }
        let s = shift.unwrap_or(0);
        let mut out = SparseMat::zeros(self.slice_dim(k + s), self.slice_dim(k));
        for (&i, c) in coords {
            out = &out + &self.act_ortho(i, k)?.scale(c);
        }
        Ok(out)
    }

    /// Multiplication by a homogeneous polynomial, from degree `k` to `k + deg f`.
    pub fn multiply(&self, f: &Poly, k: i64) -> Result<SparseMat> {
        let deg = match f.homogeneous_degree() {
            Some(e) => e as i64,
            None if f.is_zero() => 0,
            None => return Err(Error::NotHomogeneous),
        };
        let d = self.irrep.dim();
        let rows = self.slice_dim(k + deg);
        let cols = self.slice_dim(k);
        let mut out = SparseMat::zeros(rows, cols);
        if cols == 0 {
            return Ok(out);
        }
        self.check_cap(k + deg)?;
        let src = self.monomials(k);
        let dst = self.monomials(k + deg);
        for (bi, beta) in src.basis().iter().enumerate() {
            for (g, c) in f.mul_monomial(beta).terms() {
                let gi = dst.position(g).expect("homogeneous product");
                for j in 0..d {
                    out.add_to(gi * d + j, bi * d + j, c.clone());
                }
            }
        }
        Ok(out)
    }

    /// The map `x^alpha (x) v -> J^alpha (1 (x) v)` on degree `k`.
    pub fn phi(&self, k: u32) -> Result<SparseMat> {
        let order: Vec<usize> = (0..self.nvars()).collect();
        self.phi_ordered(k, &order)
    }

    /// As [`ConformalModule::phi`], with `J^alpha` expanded by repeatedly applying the
    /// factor at the first position of `order` that occurs in `alpha`.
    pub fn phi_ordered(&self, k: u32, order: &[usize]) -> Result<SparseMat> {
        let layout = self.ops().layout();
        let d = self.irrep.dim();
        let mut prev = SparseMat::identity(d);
        let mut js: BTreeMap<usize, SparseMat> = BTreeMap::new();
        for level in 1..=k {
            let k0 = i64::from(level - 1);
            for &p in order {
                js.insert(p, self.act_conformal(ConfKind::J(layout.index(p)), k0)?);
            }
            let lower = self.monomials(k0);
            let here = self.monomials(i64::from(level));
            let mut cols = Vec::with_capacity(here.len() * d);
            for alpha in here.basis() {
                let p = *order.iter().find(|&&p| alpha[p] > 0).expect("positive degree");
                let mut a = alpha.clone();
                a[p] -= 1;
                let ai = lower.position(&a).expect("lower monomial");
                for j in 0..d {
                    cols.push(js[&p].mul_vec(&prev.column(ai * d + j)));
                }
            }
            prev = SparseMat::from_columns(self.slice_dim(i64::from(level)), &cols);
        }
        Ok(prev)
    }

    /// The vector `x^alpha (x) v_j` of degree `|alpha|`.
    pub fn basis_vector(&self, alpha: &[u32], j: usize) -> SparseVec {
        let k: u32 = alpha.iter().sum();
        let idx = self.monomials(i64::from(k)).position(alpha).expect("exponent of the right length");
        let mut v = SparseVec::new();
        v.insert(idx * self.irrep.dim() + j, Rat::one());
        v
    }
}

/// Action of every `o(m+2)` basis element on one homogeneous slice.
#[derive(Clone, Debug, Serialize)]
pub struct SliceAction {
    pub label: String,
    pub shift: i64,
    #[serde(skip)]
    pub matrix: SparseMat,
}

#[derive(Clone, Debug)]
pub struct GradedSlice {
    pub mu: WeightVec,
    pub b: Rat,
    pub k: u32,
    pub dim: usize,
    pub dims: [usize; 3],
    pub actions: Vec<SliceAction>,
}

impl GradedSlice {
    /// Matrix of the `idx`-th basis element, from degree `k` to `k + shift`.
    pub fn action(&self, idx: usize) -> &SparseMat {
        &self.actions[idx].matrix
    }

    pub fn by_label(&self, label: &str) -> Option<&SliceAction> {
        self.actions.iter().find(|a| a.label == label)
    }
}

pub fn build_slice(module: &ConformalModule, k: u32) -> Result<GradedSlice> {
    let k0 = i64::from(k);
    let dims = [module.slice_dim(k0 - 1), module.slice_dim(k0), module.slice_dim(k0 + 1)];
    let domain = module.theta().domain();
    let actions = (0..domain.len())
        .map(|i| {
            Ok(SliceAction {
                label: domain.elements()[i].label.clone(),
                shift: module.ortho_shift(i),
                matrix: module.act_ortho(i, k0)?,
            })
        })
        .collect::<Result<_>>()?;
    Ok(GradedSlice {
        mu: module.mu().clone(),
        b: module.b().clone(),
        k,
        dim: dims[1],
        dims,
        actions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::{frac, int};
    use crate::highest_weight::build_irrep;

    fn module(s: Series, mu: &str, b: Rat) -> ConformalModule {
        let w = WeightVec::parse(s, mu).unwrap();
        ConformalModule::new(build_irrep(&w).unwrap(), b).unwrap()
    }

    #[test]
    fn trivial_module_j_on_constants() {
        let m = module(Series::D, "0,0", frac(2, 7));
        for i in 1..=4 {
            let j = m.act_conformal(ConfKind::J(i), 0).unwrap();
            let mut alpha = vec![0; 4];
            alpha[i - 1] = 1;
            let want = m.basis_vector(&alpha, 0);
            let got = j.mul_vec(&m.basis_vector(&[0, 0, 0, 0], 0));
            let want: SparseVec = want.into_iter().map(|(i, v)| (i, v * frac(2, 7))).collect();
            assert_eq!(got, want);
        }
    }

    #[test]
    fn partials_vanish_on_degree_zero() {
        let m = module(Series::B, "1,0", int(1));
        for r in 0..5 {
            let a = m.act_conformal(ConfKind::Partial(r), 0).unwrap();
            assert_eq!((a.rows(), a.cols()), (0, 5));
        }
    }

    #[test]
    fn module_axiom_on_low_degrees() {
        let m = module(Series::D, "1,0", frac(1, 3));
        let dom = m.theta().domain();
        for k in 0..2i64 {
            for a in 0..dom.len() {
                for b in 0..dom.len() {
                    let (sa, sb) = (m.ortho_shift(a), m.ortho_shift(b));
                    let lhs = m.act_coords(&dom.bracket(a, b), k).unwrap();
                    let ab = &m.act_ortho(a, k + sb).unwrap() * &m.act_ortho(b, k).unwrap();
                    let ba = &m.act_ortho(b, k + sa).unwrap() * &m.act_ortho(a, k).unwrap();
                    let rhs = &ab - &ba;
                    if lhs.rows() == rhs.rows() {
                        assert_eq!(lhs, rhs, "{} {}", dom.elements()[a].label, dom.elements()[b].label);
                    } else {
                        assert!(rhs.is_zero() && lhs.is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn phi_is_order_independent() {
        let m = module(Series::B, "1,0", frac(-1, 2));
        let a = m.phi(2).unwrap();
        let b = m.phi_ordered(2, &[4, 2, 0, 3, 1]).unwrap();
        assert_eq!(a, b);
        assert_eq!(m.phi(0).unwrap(), SparseMat::identity(5));
    }

    #[test]
    fn slice_dimensions() {
        let m = module(Series::D, "1,0", int(0));
        let s = build_slice(&m, 1).unwrap();
        assert_eq!(s.dims, [4, 16, 40]);
        assert_eq!(s.actions.len(), 15);
        let cap = m.clone().with_cap(10);
        assert!(matches!(build_slice(&cap, 1), Err(Error::CapExceeded { .. })));
    }
}
