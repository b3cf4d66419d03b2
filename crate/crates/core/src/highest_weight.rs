//! Finite-dimensional irreducible modules V(mu) as explicit matrices.
//!
//! Vectors are produced depth by depth as `f_j u`. Below the highest weight a
//! vector of an irreducible module is zero exactly when every `e_i` kills it,
//! so each candidate is identified with the tuple of its `e_i`-images, which
//! are already expressed in the basis built at the previous depth.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::echelon::kernel;
use crate::algebra::rat::parse_rat;
use crate::algebra::sparse::axpy;
use crate::algebra::{Echelon, Rat, SparseMat, SparseVec};
use crate::error::{Error, Result};
use crate::liealg::OrthoBasis;
use crate::report::Report;
use crate::weights::{casimir_eigenvalue, is_dominant, weyl_dim, Series, WeightVec};

pub const DEFAULT_CAP: usize = 512;

#[derive(Clone, Debug)]
pub struct IrrepData {
    mu: WeightVec,
    algebra: OrthoBasis,
    weights: Vec<Vec<Rat>>,
    rep: Vec<SparseMat>,
}

impl IrrepData {
    pub fn mu(&self) -> &WeightVec {
        &self.mu
    }

    pub fn algebra(&self) -> &OrthoBasis {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    /// Index of the highest-weight vector.
    pub fn highest(&self) -> usize {
        0
    }

    pub fn weight(&self, i: usize) -> WeightVec {
        WeightVec::new(self.mu.series(), self.weights[i].clone()).expect("weights lie in Z/2")
    }

    pub fn weights(&self) -> Vec<WeightVec> {
        (0..self.dim()).map(|i| self.weight(i)).collect()
    }

    /// Matrix of the `i`-th algebra basis element.
    pub fn rep(&self, i: usize) -> &SparseMat {
        &self.rep[i]
    }

    pub fn matrices(&self) -> &[SparseMat] {
        &self.rep
    }

    pub fn rep_by_label(&self, label: &str) -> Option<&SparseMat> {
        self.algebra.elements().iter().position(|e| e.label == label).map(|i| &self.rep[i])
    }

    /// Action of an algebra element given by coordinates.
    pub fn act(&self, coords: &SparseVec) -> SparseMat {
        let mut out = SparseMat::zeros(self.dim(), self.dim());
        for (&i, c) in coords {
            out = &out + &self.rep[i].scale(c);
        }
        out
    }

    /// Action of an algebra element given as a defining matrix.
    pub fn act_matrix(&self, x: &SparseMat) -> Result<SparseMat> {
        Ok(self.act(&self.algebra.coordinates(x)?))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let doc = IrrepDoc {
            schema: 1,
            series: self.mu.series(),
            mu: self.mu.to_string(),
            dim: self.dim(),
            weights: self.weights().iter().map(|w| w.to_string()).collect(),
            matrices: self
                .algebra
                .elements()
                .iter()
                .zip(&self.rep)
                .map(|(e, m)| {
                    let entries = m.triplets().into_iter().map(|(r, c, v)| (r, c, v.to_string())).collect();
                    (e.label.clone(), entries)
                })
                .collect(),
        };
        serde_json::to_value(doc).expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let doc: IrrepDoc = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let mu = WeightVec::parse(doc.series, &doc.mu)?;
        let algebra = OrthoBasis::new(doc.series, mu.n())?;
        if doc.weights.len() != doc.dim {
            return Err(Error::Parse(format!("{} weights for dimension {}", doc.weights.len(), doc.dim)));
        }
        let weights = doc
            .weights
            .iter()
            .map(|w| WeightVec::parse(doc.series, w).map(|w| w.coords().to_vec()))
            .collect::<Result<Vec<_>>>()?;
        let mut rep = Vec::with_capacity(algebra.len());
        for e in algebra.elements() {
            let entries = doc
                .matrices
                .get(&e.label)
                .ok_or_else(|| Error::Parse(format!("missing matrix {}", e.label)))?;
            let mut m = SparseMat::zeros(doc.dim, doc.dim);
            for (r, c, s) in entries {
                if *r >= doc.dim || *c >= doc.dim {
                    return Err(Error::Parse(format!("entry ({r},{c}) outside dimension {}", doc.dim)));
                }
                m.set(*r, *c, parse_rat(s)?);
            }
            rep.push(m);
        }
        Ok(IrrepData {
            mu,
            algebra,
            weights,
            rep,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct IrrepDoc {
    schema: u32,
    series: Series,
    mu: String,
    dim: usize,
    weights: Vec<String>,
    matrices: BTreeMap<String, Vec<(usize, usize, String)>>,
}

fn sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn apply(cols: &[SparseVec], v: &SparseVec) -> SparseVec {
    let mut out = SparseVec::new();
    for (&k, c) in v {
        axpy(&mut out, c, &cols[k]);
    }
    out
}

pub fn build_irrep(mu: &WeightVec) -> Result<IrrepData> {
    build_irrep_capped(mu, DEFAULT_CAP)
}

pub fn build_irrep_capped(mu: &WeightVec, cap: usize) -> Result<IrrepData> {
    if !is_dominant(mu) {
        return Err(Error::NotDominant(mu.to_string()));
    }
    let dim = weyl_dim(mu)?;
    if dim > cap {
        return Err(Error::CapExceeded { dim, cap });
    }
    let algebra = OrthoBasis::new(mu.series(), mu.n())?;
    let n = mu.n();
    let simples = algebra.simple_roots();
    let alphas: Vec<Vec<Rat>> = simples
        .iter()
        .map(|&(e, _)| algebra.element(e).root.iter().map(|&a| Rat::from_integer(a.into())).collect())
        .collect();
    let layout = algebra.layout();
    // coefficient of H_k in [e_j, f_j]
    let coroots: Vec<Vec<Rat>> = simples
        .iter()
        .map(|&(e, f)| {
            let h = algebra.element(e).matrix.commutator(&algebra.element(f).matrix);
            (1..=n).map(|k| h.get(layout.pos(k), layout.pos(k))).collect()
        })
        .collect();
    let pair = |w: &[Rat], j: usize| -> Rat { w.iter().zip(&coroots[j]).map(|(a, b)| a * b).sum() };

    let r = simples.len();
    let mut weights: Vec<Vec<Rat>> = vec![mu.coords().to_vec()];
    let mut e_act: Vec<Vec<SparseVec>> = vec![vec![SparseVec::new()]; r];
    let mut f_act: Vec<Vec<SparseVec>> = vec![Vec::new(); r];
    let mut layer = vec![0usize];
    while !layer.is_empty() {
        let mut groups: BTreeMap<Vec<Rat>, (Echelon, Vec<usize>)> = BTreeMap::new();
        let mut next = Vec::new();
        for &u in &layer {
            for j in 0..r {
                let w = sub(&weights[u], &alphas[j]);
                let mut images: Vec<SparseVec> = (0..r)
                    .map(|i| {
                        let eu = &e_act[i][u];
                        if eu.is_empty() {
                            SparseVec::new()
                        } else {
                            apply(&f_act[j], eu)
                        }
                    })
                    .collect();
                let hj = pair(&weights[u], j);
                if !hj.is_zero() {
                    axpy(&mut images[j], &hj, &[(u, Rat::from_integer(1.into()))].into_iter().collect());
                }
                let mut combined = SparseVec::new();
                for im in &images {
                    for (k, c) in im {
                        combined.insert(*k, c.clone());
                    }
                }
                let fu = if combined.is_empty() {
                    SparseVec::new()
                } else {
                    let (ech, members) = groups.entry(w.clone()).or_insert_with(|| (Echelon::with_tracking(), Vec::new()));
                    if ech.insert(&combined).is_some() {
                        let g = weights.len();
                        if g >= cap {
                            return Err(Error::CapExceeded { dim: g + 1, cap });
                        }
                        weights.push(w);
                        for (i, im) in images.into_iter().enumerate() {
                            e_act[i].push(im);
                        }
                        members.push(g);
                        next.push(g);
                        [(g, Rat::from_integer(1.into()))].into_iter().collect()
                    } else {
                        let coeffs = ech.express(&combined).expect("dependent vector lies in span");
                        coeffs.into_iter().map(|(k, c)| (members[k], c)).collect()
                    }
                };
                if f_act[j].len() <= u {
                    f_act[j].resize(u + 1, SparseVec::new());
                }
                f_act[j][u] = fu;
            }
        }
        layer = next;
    }
    let d = weights.len();
    if d != dim {
        return Err(Error::DimensionMismatch(format!(
            "constructed dimension {d} differs from Weyl dimension {dim}"
        )));
    }
    for fa in &mut f_act {
        fa.resize(d, SparseVec::new());
    }

    let mut rep: Vec<Option<SparseMat>> = vec![None; algebra.len()];
    for k in 0..n {
        let diag: Vec<Rat> = weights.iter().map(|w| w[k].clone()).collect();
        rep[algebra.cartan().start + k] = Some(SparseMat::diagonal(&diag));
    }
    let mut frontier = Vec::new();
    for (j, &(e, f)) in simples.iter().enumerate() {
        rep[e] = Some(SparseMat::from_columns(d, &e_act[j]));
        rep[f] = Some(SparseMat::from_columns(d, &f_act[j]));
        frontier.push((e, j, true));
        frontier.push((f, j, false));
    }
    while let Some((x, _, positive)) = frontier.pop() {
        for (j, &(e, f)) in simples.iter().enumerate() {
            let s = if positive { e } else { f };
            let z = algebra.element(s).matrix.commutator(&algebra.element(x).matrix);
            let coords = algebra.coordinates(&z)?;
            let Some((&y, c)) = coords.iter().next() else { continue };
            debug_assert_eq!(coords.len(), 1);
            if rep[y].is_some() {
                continue;
            }
            let rs = rep[s].as_ref().expect("simple known");
            let rx = rep[x].as_ref().expect("frontier known");
            rep[y] = Some(rs.commutator(rx).scale(&(Rat::from_integer(1.into()) / c)));
            frontier.push((y, j, positive));
        }
    }
    let rep = rep
        .into_iter()
        .enumerate()
        .map(|(i, m)| m.ok_or_else(|| Error::DimensionMismatch(format!("element {i} unreachable"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(IrrepData {
        mu: mu.clone(),
        algebra,
        weights,
        rep,
    })
}

/// Casimir element assembled from the representation matrices.
pub fn omega_matrix(v: &IrrepData) -> SparseMat {
    let mut w = SparseMat::zeros(v.dim(), v.dim());
    for (a, b, c) in v.algebra.casimir_pairs() {
        w = &w + &(v.rep(a) * v.rep(b)).scale(&c);
    }
    w
}

/// Checks the homomorphism property, weights, highest-weight vector,
/// irreducibility and the Casimir scalar.
pub fn validate_irrep(v: &IrrepData) -> Report {
    let alg = &v.algebra;
    let mut report = Report::new(format!("irrep V({}) series {}", v.mu, v.mu.series()));
    let expected = weyl_dim(&v.mu).unwrap_or(0);
    report.check_eq("dimension equals Weyl dimension", &v.dim(), &expected, || {
        format!("{}", v.dim() as i64 - expected as i64)
    });
    let mut bad = Vec::new();
    for a in 0..alg.len() {
        for b in a + 1..alg.len() {
            let lhs = v.act(&alg.bracket(a, b));
            let rhs = v.rep(a).commutator(v.rep(b));
            if lhs != rhs {
                bad.push(format!("[{}, {}]", alg.element(a).label, alg.element(b).label));
            }
        }
    }
    report.check("representation preserves brackets", bad.is_empty(), bad.join("; "));
    let diag_ok = alg.cartan().all(|k| {
        let m = v.rep(k);
        m.is_diagonal() && (0..v.dim()).all(|i| m.get(i, i) == v.weights[i][k])
    });
    report.check("Cartan acts diagonally by the listed weights", diag_ok, "");
    let hv = v.highest();
    let killed = (0..alg.len())
        .filter(|&i| alg.is_positive(i))
        .all(|i| v.rep(i).column(hv).is_empty());
    report.check("positive root vectors kill the highest-weight vector", killed, "");
    let raising: Vec<&SparseMat> = alg.simple_roots().iter().map(|&(e, _)| v.rep(e)).collect();
    let stacked = SparseMat::vstack(&raising);
    let singular = kernel(&stacked).len();
    report.check(
        "joint kernel of raising operators is one-dimensional",
        singular == 1,
        format!("dimension {singular}"),
    );
    let c = casimir_eigenvalue(&v.mu);
    let w = omega_matrix(v);
    let want = SparseMat::scalar(v.dim(), &c);
    report.check_eq(format!("Casimir acts by {c}"), &w, &want, || format!("{:?}", &w - &want));
    report
}

/// `V(eps_1) (x) V(mu)` with the diagonal action; natural basis index is major.
#[derive(Clone, Debug)]
pub struct TensorModule {
    pub natural_dim: usize,
    pub irrep_dim: usize,
    pub rep: Vec<SparseMat>,
}

impl TensorModule {
    pub fn dim(&self) -> usize {
        self.natural_dim * self.irrep_dim
    }
}

pub fn tensor_with_natural(v: &IrrepData) -> Result<TensorModule> {
    tensor_with_natural_capped(v, DEFAULT_CAP)
}

pub fn tensor_with_natural_capped(v: &IrrepData, cap: usize) -> Result<TensorModule> {
    let m = v.algebra.m();
    let dim = m * v.dim();
    if dim > cap {
        return Err(Error::CapExceeded { dim, cap });
    }
    let id_nat = SparseMat::identity(m);
    let id_v = SparseMat::identity(v.dim());
    let rep = v
        .algebra
        .elements()
        .iter()
        .zip(&v.rep)
        .map(|(e, r)| &e.matrix.kron(&id_v) + &id_nat.kron(r))
        .collect();
    Ok(TensorModule {
        natural_dim: m,
        irrep_dim: v.dim(),
        rep,
    })
}
