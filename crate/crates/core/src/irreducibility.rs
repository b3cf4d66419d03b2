//! Degree-by-degree irreducibility checks for the generalized conformal modules.

use std::fmt;

use num_traits::One;
use serde::Serialize;

use crate::algebra::echelon::{kernel, rank};
use crate::algebra::rat::{frac, int};
use crate::algebra::{charpoly, DiffOp, Echelon, MonomialIndex, Poly, Rat, SparseMat, SparseVec};
use crate::error::{Error, Result};
use crate::liealg::{ConfKind, Ops};
use crate::mixed::ConformalModule;
use crate::report::Report;
use crate::weights::{critical_b_set, Series, WeightVec};

pub const DEFAULT_MAX_DEGREE: u32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    IrreducibleUpToD,
    ProperSubmoduleFound,
    CriticalB,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::IrreducibleUpToD => "irreducible-up-to-D",
            Verdict::ProperSubmoduleFound => "proper-submodule-found",
            Verdict::CriticalB => "critical-b",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelRecord {
    pub k: u32,
    pub dim: usize,
    pub rank: usize,
}

impl LevelRecord {
    pub fn full(&self) -> bool {
        self.rank == self.dim
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EigenEntry {
    #[serde(with = "crate::algebra::rat::serde_str")]
    pub value: Rat,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanResult {
    pub mu: String,
    pub series: Series,
    #[serde(with = "crate::algebra::rat::serde_str")]
    pub b: Rat,
    pub max_degree: u32,
    pub levels: Vec<LevelRecord>,
    /// Eigenvalues of `phi` on degree one.
    pub phi_eigenvalues: Vec<EigenEntry>,
    pub verdict: Verdict,
}

impl ScanResult {
    pub fn first_deficient(&self) -> Option<&LevelRecord> {
        self.levels.iter().find(|l| !l.full())
    }
}

/// Matrix whose columns span `sum_r J_r(A_k (x) M)` inside degree `k + 1`.
fn j_span(module: &ConformalModule, k: u32) -> Result<SparseMat> {
    let layout = module.ops().layout();
    let mats = layout
        .indices()
        .into_iter()
        .map(|r| module.act_conformal(ConfKind::J(r), i64::from(k)))
        .collect::<Result<Vec<_>>>()?;
    let refs: Vec<&SparseMat> = mats.iter().collect();
    Ok(SparseMat::hstack(&refs))
}

pub fn surjectivity_scan(module: &ConformalModule, max_degree: u32) -> Result<ScanResult> {
    let mut levels = Vec::new();
    for k in 1..=max_degree {
        let span = j_span(module, k - 1)?;
        levels.push(LevelRecord {
            k,
            dim: module.slice_dim(i64::from(k)),
            rank: rank(&span),
        });
    }
    let (roots, _) = charpoly(&module.phi(1)?)?.rational_roots();
    let mut phi_eigenvalues: Vec<EigenEntry> = roots
        .into_iter()
        .map(|(value, multiplicity)| EigenEntry { value, multiplicity })
        .collect();
    phi_eigenvalues.sort_by(|a, b| b.value.cmp(&a.value));
    let verdict = if levels.iter().any(|l| !l.full()) {
        Verdict::ProperSubmoduleFound
    } else if matches!(classify_b(module.mu(), module.b())?, Classification::Excluded { .. }) {
        Verdict::CriticalB
    } else {
        Verdict::IrreducibleUpToD
    };
    Ok(ScanResult {
        mu: module.mu().to_string(),
        series: module.series(),
        b: module.b().clone(),
        max_degree,
        levels,
        phi_eigenvalues,
        verdict,
    })
}

/// Graded basis of a subspace, one echelon per degree `0..=D`.
#[derive(Clone, Debug)]
pub struct Submodule {
    pub levels: Vec<Vec<SparseVec>>,
    pub ambient: Vec<usize>,
    /// Every basis element of `o(m+2)` maps the truncation into itself.
    pub closed: bool,
}

impl Submodule {
    pub fn dims(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }

    pub fn is_proper(&self) -> bool {
        self.dims().iter().zip(&self.ambient).any(|(a, b)| a < b)
    }

    fn echelon(&self, k: usize) -> Echelon {
        let mut e = Echelon::new();
        for v in &self.levels[k] {
            e.insert(v);
        }
        e
    }
}

fn span_closure(module: &ConformalModule, seed: Vec<SparseVec>, seed_degree: usize, max_degree: u32) -> Result<Submodule> {
    let top = max_degree as usize;
    let mut ech: Vec<Echelon> = (0..=top).map(|_| Echelon::new()).collect();
    let mut queue: Vec<(usize, SparseVec)> = Vec::new();
    for v in seed {
        if ech[seed_degree].insert(&v).is_some() {
            queue.push((seed_degree, v));
        }
    }
    let count = module.theta().domain().len();
    let mut cache: std::collections::BTreeMap<(usize, usize), SparseMat> = Default::default();
    while let Some((k, v)) = queue.pop() {
        for i in 0..count {
            let t = k as i64 + module.ortho_shift(i);
            if t < 0 || t > top as i64 {
                continue;
            }
            if let std::collections::btree_map::Entry::Vacant(e) = cache.entry((i, k)) {
                e.insert(module.act_ortho(i, k as i64)?);
            }
            let w = cache[&(i, k)].mul_vec(&v);
            if !w.is_empty() && ech[t as usize].insert(&w).is_some() {
                queue.push((t as usize, w));
            }
        }
    }
    let levels: Vec<Vec<SparseVec>> = ech.into_iter().map(Echelon::into_rref).collect();
    let ambient = (0..=top).map(|k| module.slice_dim(k as i64)).collect();
    let mut sub = Submodule {
        levels,
        ambient,
        closed: false,
    };
    sub.closed = is_closed(module, &sub)?;
    Ok(sub)
}

fn is_closed(module: &ConformalModule, sub: &Submodule) -> Result<bool> {
    let top = sub.levels.len() as i64 - 1;
    let echs: Vec<Echelon> = (0..sub.levels.len()).map(|k| sub.echelon(k)).collect();
    for i in 0..module.theta().domain().len() {
        for (k, basis) in sub.levels.iter().enumerate() {
            let t = k as i64 + module.ortho_shift(i);
            if t < 0 || t > top || basis.is_empty() {
                continue;
            }
            let a = module.act_ortho(i, k as i64)?;
            if !basis.iter().all(|v| echs[t as usize].contains(&a.mul_vec(v))) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The truncation of `U(J)(1 (x) M)` built as the span closure of `1 (x) M` under all
/// generators; returned when it is a proper subspace.
pub fn detect_submodule(module: &ConformalModule, max_degree: u32) -> Result<Option<Submodule>> {
    let d = module.irrep().dim();
    let seed = (0..d)
        .map(|j| {
            let mut v = SparseVec::new();
            v.insert(j, Rat::one());
            v
        })
        .collect();
    let sub = span_closure(module, seed, 0, max_degree)?;
    Ok(sub.is_proper().then_some(sub))
}

/// Span closure of a single vector of degree `k`.
pub fn generated_by(module: &ConformalModule, v: SparseVec, k: usize, max_degree: u32) -> Result<Submodule> {
    span_closure(module, vec![v], k, max_degree)
}

/// Scan of the quotient by `sub`: from the lowest degree where the quotient is nonzero,
/// `sum_r J_r` of each level together with `sub` must fill the next level.
pub fn quotient_scan(module: &ConformalModule, sub: &Submodule) -> Result<Vec<LevelRecord>> {
    let dims = sub.dims();
    let start = match dims.iter().zip(&sub.ambient).position(|(a, b)| a < b) {
        Some(s) => s,
        None => return Ok(Vec::new()),
    };
    let mut out = Vec::new();
    for k in start + 1..sub.levels.len() {
        let span = j_span(module, (k - 1) as u32)?;
        let mut e = sub.echelon(k);
        for c in span.columns() {
            e.insert(&c);
        }
        out.push(LevelRecord {
            k: k as u32,
            dim: sub.ambient[k],
            rank: e.rank(),
        });
    }
    Ok(out)
}

/// Whether `eta (A_{l-1} (x) M)` lies in `sum_r J_r(A_l (x) M)`.
pub fn eta_in_j_span(module: &ConformalModule, l: u32) -> Result<bool> {
    let mut e = Echelon::new();
    for c in j_span(module, l)?.columns() {
        e.insert(&c);
    }
    let eta = module.multiply(&module.ops().eta(), i64::from(l) - 1)?;
    Ok(eta.columns().iter().all(|c| e.contains(c)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "class", rename_all = "lowercase")]
pub enum Classification {
    Generic,
    Excluded { reason: String },
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Generic => f.write_str("generic"),
            Classification::Excluded { reason } => write!(f, "excluded(b in {reason})"),
        }
    }
}

pub fn classify_b(mu: &WeightVec, b: &Rat) -> Result<Classification> {
    let set = critical_b_set(mu)?;
    Ok(match set.first_containing(b) {
        Some(ray) => Classification::Excluded { reason: ray.to_string() },
        None => Classification::Generic,
    })
}

/// `{0, +-1, +-2, 1/2, -1/2, 1/3, 7/2}` and the critical points within 3 of a ray base.
pub fn default_b_samples(mu: &WeightVec) -> Result<Vec<Rat>> {
    let mut out = vec![int(0), int(1), int(-1), int(2), int(-2), frac(1, 2), frac(-1, 2), frac(1, 3), frac(7, 2)];
    for ray in critical_b_set(mu)?.rays {
        let mut b = ray.base.clone();
        while (&ray.base - &b) <= int(3) {
            out.push(b.clone());
            b -= &ray.step;
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Matrix of a homogeneous operator from `A_k` to `A_{k + shift}` in monomial bases.
pub fn poly_operator_matrix(op: &DiffOp, k: u32, shift: i64) -> Result<SparseMat> {
    let n = op.nvars();
    let src = MonomialIndex::new(n, k);
    let t = i64::from(k) + shift;
    if t < 0 {
        return Ok(SparseMat::zeros(0, src.len()));
    }
    let dst = MonomialIndex::new(n, t as u32);
    let mut out = SparseMat::zeros(dst.len(), src.len());
    for (i, e) in src.basis().iter().enumerate() {
        for (g, c) in op.apply(&Poly::monomial(n, e.clone(), Rat::one()))?.terms() {
            let r = dst.position(g).ok_or(Error::NotHomogeneous)?;
            out.add_to(r, i, c.clone());
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct HarmonicComponent {
    /// Power of `eta`.
    pub m: u32,
    pub degree: u32,
    pub dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct HarmonicBasis {
    pub k: u32,
    pub n: usize,
    pub series: Series,
    pub dim_a: usize,
    /// Harmonic polynomials of degree `k` as coefficient vectors in the monomial basis.
    #[serde(skip)]
    pub harmonic: Vec<SparseVec>,
    pub components: Vec<HarmonicComponent>,
}

/// `A_k = sum_m eta^m H_{k-2m}` with `H_j` the harmonic polynomials of degree `j`.
pub fn harmonic_decompose(k: u32, n: usize, series: Series) -> Result<(HarmonicBasis, Report)> {
    series.check_rank(n)?;
    let ops = Ops::new(series, n);
    let nv = ops.nvars();
    let lap = ops.laplacian();
    let mut report = Report::new(format!("harmonic decomposition, series {series}, n={n}, k={k}"));
    let harmonic_of = |j: u32| -> Result<Vec<SparseVec>> {
        let m = poly_operator_matrix(&lap, j, -2)?;
        Ok(if m.rows() == 0 {
            (0..m.cols()).map(|i| SparseVec::from([(i, Rat::one())])).collect()
        } else {
            kernel(&m)
        })
    };
    let dim_a = MonomialIndex::new(nv, k).len();
    let harmonic = harmonic_of(k)?;
    let lap_k = poly_operator_matrix(&lap, k, -2)?;
    report.check(
        "the Laplacian annihilates the harmonic basis",
        harmonic.iter().all(|v| lap_k.mul_vec(v).is_empty()),
        format!("{} vectors", harmonic.len()),
    );
    let mut components = Vec::new();
    let mut all = Echelon::new();
    let mut total = 0;
    for m in 0..=k / 2 {
        let j = k - 2 * m;
        let h = harmonic_of(j)?;
        let eta_m = poly_operator_matrix(&DiffOp::multiplication(ops.eta().pow(m)), j, i64::from(2 * m))?;
        for v in &h {
            all.insert(&eta_m.mul_vec(v));
        }
        total += h.len();
        components.push(HarmonicComponent { m, degree: j, dim: h.len() });
        // Delta^m maps the filtration piece ker Delta^{m+1} onto H_{k-2m}.
        let mut pow = SparseMat::identity(dim_a);
        let mut src = k;
        for _ in 0..m {
            pow = &poly_operator_matrix(&lap, src, -2)? * &pow;
            src -= 2;
        }
        let filtration = {
            let next = if src >= 2 {
                &poly_operator_matrix(&lap, src, -2)? * &pow
            } else {
                SparseMat::zeros(0, dim_a)
            };
            if next.rows() == 0 {
                (0..dim_a).map(|i| SparseVec::from([(i, Rat::one())])).collect()
            } else {
                kernel(&next)
            }
        };
        let mut image = Echelon::new();
        for v in &filtration {
            image.insert(&pow.mul_vec(v));
        }
        let mut target = Echelon::new();
        for v in &h {
            target.insert(v);
        }
        let same = image.rank() == target.rank() && h.iter().all(|v| image.contains(v));
        report.check(
            format!("Delta^{m} maps ker Delta^{} on A_{k} onto H_{j}", m + 1),
            same,
            format!("image rank {}, dim H_{j} = {}", image.rank(), h.len()),
        );
    }
    report.check_eq("sum of dim H_(k-2m) equals dim A_k", &total, &dim_a, || {
        format!("{}", total as i64 - dim_a as i64)
    });
    report.check_eq("the eta^m H_(k-2m) span A_k", &all.rank(), &dim_a, || {
        format!("{}", all.rank() as i64 - dim_a as i64)
    });
    let basis = HarmonicBasis {
        k,
        n,
        series,
        dim_a,
        harmonic,
        components,
    };
    Ok((basis, report))
}

/// The commutator `[Delta, eta]` compared with `n + D` (D) and `1 + 2n + D` (B).
pub fn verify_delta_eta(n: usize, series: Series) -> Result<Report> {
    series.check_rank(n)?;
    let ops = Ops::new(series, n);
    let first = series.first_index();
    let lhs = ops.laplacian().bracket(&DiffOp::multiplication(ops.eta()))?;
    let c = match series {
        Series::D => n as i64,
        Series::B => 1 + 2 * n as i64,
    };
    let rhs = &DiffOp::scalar(ops.nvars(), int(c)) + &ops.euler();
    let mut report = Report::new(format!("[Delta, eta], series {series}, n={n}"));
    let ok = lhs == rhs;
    let diff = (&lhs - &rhs).render(first);
    report.record(format!("[Delta, eta] = {c} + D"), ok, lhs.render(first), rhs.render(first), diff);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use num_traits::Zero;

    use super::*;
    use crate::highest_weight::build_irrep;

    fn module(s: Series, mu: &str, b: Rat) -> ConformalModule {
        let w = WeightVec::parse(s, mu).unwrap();
        ConformalModule::new(build_irrep(&w).unwrap(), b).unwrap()
    }

    #[test]
    fn classify_examples() {
        let mu = WeightVec::parse(Series::D, "1,0").unwrap();
        assert_eq!(classify_b(&mu, &int(1)).unwrap().to_string(), "excluded(b in 1-N/2)");
        assert_eq!(classify_b(&mu, &frac(5, 3)).unwrap(), Classification::Generic);
        let z = WeightVec::zero(Series::D, 2).unwrap();
        assert!(matches!(classify_b(&z, &int(-2)).unwrap(), Classification::Excluded { .. }));
        let s = WeightVec::parse(Series::B, "1/2,1/2").unwrap();
        assert_eq!(classify_b(&s, &int(2)).unwrap().to_string(), "excluded(b in 2-N/2)");
    }

    #[test]
    fn scan_generic_and_critical() {
        let r = surjectivity_scan(&module(Series::D, "1,0", frac(1, 3)), 3).unwrap();
        assert_eq!(r.verdict, Verdict::IrreducibleUpToD);
        let r = surjectivity_scan(&module(Series::D, "1,0", int(3)), 2).unwrap();
        assert_eq!(r.verdict, Verdict::ProperSubmoduleFound);
        assert_eq!(r.first_deficient().unwrap().k, 1);
        assert!(r.phi_eigenvalues.iter().any(|e| e.value.is_zero()));
    }

    #[test]
    fn trivial_weight_b_zero_gives_constants() {
        let m = module(Series::D, "0,0", int(0));
        let sub = detect_submodule(&m, 3).unwrap().unwrap();
        assert_eq!(sub.dims(), vec![1, 0, 0, 0]);
        assert!(sub.closed);
        assert!(quotient_scan(&m, &sub).unwrap().iter().all(LevelRecord::full));
        assert!(detect_submodule(&m.with_b(frac(1, 2)), 3).unwrap().is_none());
    }

    #[test]
    fn harmonic_small() {
        let (h, r) = harmonic_decompose(2, 2, Series::D).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!((h.dim_a, h.harmonic.len()), (10, 9));
        let (h, _) = harmonic_decompose(1, 2, Series::B).unwrap();
        assert_eq!(h.harmonic.len(), 5);
        let (h, _) = harmonic_decompose(0, 3, Series::D).unwrap();
        assert_eq!(h.harmonic.len(), 1);
    }

    #[test]
    fn delta_eta_even() {
        assert!(verify_delta_eta(2, Series::D).unwrap().passed());
        assert!(verify_delta_eta(3, Series::D).unwrap().passed());
    }

    #[test]
    fn eta_containment() {
        let m = module(Series::D, "1,0", frac(1, 3));
        assert!(eta_in_j_span(&m, 1).unwrap());
        assert!(eta_in_j_span(&m, 2).unwrap());
    }
}
