//! The Casimir element, the split operator on `V(eps_1) (x) V(mu)`, and the invariant `T`.

use std::collections::BTreeMap;

use num_traits::One;
use serde::Serialize;

use crate::algebra::echelon::kernel;
use crate::algebra::{charpoly, Rat, SparseMat, UniPoly};
use crate::error::{Error, Result};
use crate::highest_weight::{tensor_with_natural_capped, IrrepData};
use crate::liealg::ConfKind;
use crate::mixed::ConformalModule;
use crate::report::Report;
use crate::weights::{casimir_difference, casimir_eigenvalue, omega_tilde_spectrum, pieri_decompose, weyl_dim, Series, WeightVec};

pub use crate::highest_weight::omega_matrix;

pub const DEFAULT_TENSOR_CAP: usize = 1024;

/// The operator `sum c X (x) rho(Y)` on `V(eps_1) (x) V(mu)`, natural index major.
#[derive(Clone, Debug)]
pub struct OmegaTildeMatrix {
    pub mu: WeightVec,
    pub dim: usize,
    pub matrix: SparseMat,
}

pub fn omega_tilde_matrix(v: &IrrepData) -> Result<OmegaTildeMatrix> {
    omega_tilde_matrix_capped(v, DEFAULT_TENSOR_CAP)
}

pub fn omega_tilde_matrix_capped(v: &IrrepData, cap: usize) -> Result<OmegaTildeMatrix> {
    let algebra = v.algebra();
    let dim = algebra.m() * v.dim();
    if dim > cap {
        return Err(Error::CapExceeded { dim, cap });
    }
    let mut w = SparseMat::zeros(dim, dim);
    for (a, b, c) in algebra.casimir_pairs() {
        w = &w + &algebra.elements()[a].matrix.kron(v.rep(b)).scale(&c);
    }
    Ok(OmegaTildeMatrix {
        mu: v.mu().clone(),
        dim,
        matrix: w,
    })
}

/// Closed-form characteristic polynomial of the split operator.
pub fn closed_form_charpoly(mu: &WeightVec) -> Result<UniPoly> {
    Ok(UniPoly::from_roots(&omega_tilde_spectrum(mu)?.pairs()))
}

#[derive(Clone, Debug, Serialize)]
pub struct CharpolyResult {
    pub mu: String,
    pub series: String,
    pub charpoly_computed: String,
    pub charpoly_closed_form: String,
    #[serde(rename = "match")]
    pub matches: bool,
}

/// Compares the computed characteristic polynomial with the closed form, checks the
/// cross identity with the tensor Casimir and the eigenspace dimensions.
pub fn verify_charpoly_lemma(v: &IrrepData) -> Result<(CharpolyResult, Report)> {
    let mu = v.mu();
    let mut report = Report::new(format!("characteristic polynomial, series {}, mu=({mu})", mu.series()));
    let wt = omega_tilde_matrix(v)?;
    let computed = charpoly(&wt.matrix)?;
    let closed = closed_form_charpoly(mu)?;
    let matches = computed == closed;
    report.record(
        "charpoly of omega-tilde equals the closed form",
        matches,
        computed.factored(),
        closed.factored(),
        computed.sub(&closed).to_string(),
    );
    let tensor = tensor_with_natural_capped(v, DEFAULT_TENSOR_CAP)?;
    let mut big = SparseMat::zeros(wt.dim, wt.dim);
    for (a, b, c) in v.algebra().casimir_pairs() {
        big = &big + &(&tensor.rep[a] * &tensor.rep[b]).scale(&c);
    }
    let eps = WeightVec::epsilon(mu.series(), mu.n(), 1)?;
    let shift = casimir_eigenvalue(&eps) + casimir_eigenvalue(mu);
    let half = Rat::new(1.into(), 2.into());
    let cross = (&big - &SparseMat::scalar(wt.dim, &shift)).scale(&half);
    report.check_eq(
        "omega-tilde = (omega on the tensor - c(eps_1) - c(mu)) / 2",
        &wt.matrix,
        &cross,
        || format!("{:?}", &wt.matrix - &cross),
    );
    for (lambda, mult) in omega_tilde_spectrum(mu)?.pairs() {
        let dim = kernel(&(&wt.matrix - &SparseMat::scalar(wt.dim, &lambda))).len();
        report.check_eq(format!("eigenspace of {lambda} has dimension {mult}"), &dim, &mult, || {
            format!("{}", dim as i64 - mult as i64)
        });
    }
    let result = CharpolyResult {
        mu: mu.to_string(),
        series: mu.series().to_string(),
        charpoly_computed: computed.factored(),
        charpoly_closed_form: closed.factored(),
        matches,
    };
    Ok((result, report))
}

/// Dimensions of the exact eigenspaces of a matrix at the given eigenvalues.
pub fn eigenspace_dims(m: &SparseMat, values: &[Rat]) -> Vec<usize> {
    values
        .iter()
        .map(|l| kernel(&(m - &SparseMat::scalar(m.rows(), l))).len())
        .collect()
}

/// Eigenspace dimensions of the split operator against the Weyl dimensions of the
/// tensor product summands, grouped by Casimir difference.
pub fn verify_pieri_dimensions(v: &IrrepData) -> Result<Report> {
    let mu = v.mu();
    let mut report = Report::new(format!("Pieri dimensions, series {}, mu=({mu})", mu.series()));
    let wt = omega_tilde_matrix(v)?;
    let mut groups: BTreeMap<Rat, usize> = BTreeMap::new();
    let mut total = 0;
    for s in pieri_decompose(mu)? {
        let d = weyl_dim(&s.weight)?;
        total += d;
        *groups.entry(casimir_difference(mu, &s.weight)).or_default() += d;
    }
    report.check_eq(format!("{} * {} = sum of summand dimensions", v.algebra().m(), v.dim()), &total, &wt.dim, || {
        format!("{}", total as i64 - wt.dim as i64)
    });
    for (lambda, want) in groups {
        let dim = kernel(&(&wt.matrix - &SparseMat::scalar(wt.dim, &lambda))).len();
        report.check_eq(format!("eigenspace of {lambda} has dimension {want}"), &dim, &want, || {
            format!("{}", dim as i64 - want as i64)
        });
    }
    Ok(report)
}

/// `phi` on degree one against `b + omega-tilde`.
pub fn verify_phi_degree_one(module: &ConformalModule) -> Result<Report> {
    let mu = module.mu();
    let mut report = Report::new(format!("phi on degree one, series {}, mu=({mu}), b={}", mu.series(), module.b()));
    let phi = module.phi(1)?;
    let wt = omega_tilde_matrix(module.irrep())?;
    let want = &SparseMat::scalar(wt.dim, module.b()) + &wt.matrix;
    report.check_eq("phi = b + omega-tilde on degree one", &phi, &want, || format!("{:?}", &phi - &want));
    Ok(report)
}

/// `T = sum_r J_r x_{r*}` as a map from degree `k` to degree `k + 2`.
pub fn t_matrix(module: &ConformalModule, k: u32) -> Result<SparseMat> {
    let ops = module.ops();
    let layout = ops.layout();
    let k0 = i64::from(k);
    let mut out = SparseMat::zeros(module.slice_dim(k0 + 2), module.slice_dim(k0));
    for r in layout.indices() {
        let x = module.multiply(&ops.x(layout.dual(r)), k0)?;
        let j = module.act_conformal(ConfKind::J(r), k0 + 1)?;
        out = &out + &(&j * &x);
    }
    Ok(out)
}

/// The scalar `(2b + 2 - 2n + k)` for D and `(2b - 2n + k + 1)` for B.
pub fn t_scalar(series: Series, n: usize, b: &Rat, k: u32) -> Rat {
    let two = Rat::from_integer(2.into());
    let base = &two * b - Rat::from_integer((2 * n as i64).into()) + Rat::from_integer(i64::from(k).into());
    match series {
        Series::D => base + &two,
        Series::B => base + Rat::one(),
    }
}

pub fn verify_t_operator(module: &ConformalModule, k: u32) -> Result<Report> {
    let mu = module.mu();
    let mut report = Report::new(format!("invariant T, series {}, mu=({mu}), b={}, k={k}", mu.series(), module.b()));
    let t = t_matrix(module, k)?;
    let c = t_scalar(mu.series(), mu.n(), module.b(), k);
    let eta = module.multiply(&module.ops().eta(), i64::from(k))?.scale(&c);
    report.check_eq(format!("T = ({c}) eta on degree {k}"), &t, &eta, || format!("{:?}", &t - &eta));
    Ok(report)
}

/// Whether `m` commutes with every matrix in `ms`.
pub fn commutes_with_all(m: &SparseMat, ms: &[SparseMat]) -> bool {
    ms.iter().all(|x| m.commutator(x).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::{frac, int};
    use crate::highest_weight::build_irrep;

    fn irrep(s: Series, mu: &str) -> IrrepData {
        build_irrep(&WeightVec::parse(s, mu).unwrap()).unwrap()
    }

    #[test]
    fn omega_on_small_irreps() {
        assert_eq!(omega_matrix(&irrep(Series::D, "1,0")), SparseMat::scalar(4, &int(3)));
        assert_eq!(omega_matrix(&irrep(Series::D, "1,1")), SparseMat::scalar(3, &int(4)));
        assert!(omega_matrix(&irrep(Series::D, "0,0")).is_zero());
    }

    #[test]
    fn charpoly_natural_d2() {
        let (res, rep) = verify_charpoly_lemma(&irrep(Series::D, "1,0")).unwrap();
        assert!(rep.passed(), "{rep}");
        let want = UniPoly::from_roots(&[(int(1), 9), (int(-1), 6), (int(-3), 1)]);
        assert_eq!(charpoly(&omega_tilde_matrix(&irrep(Series::D, "1,0")).unwrap().matrix).unwrap(), want);
        assert!(res.matches);
    }

    #[test]
    fn charpoly_spin_b2() {
        let v = irrep(Series::B, "1/2,1/2");
        let want = UniPoly::from_roots(&[(int(-2), 4), (frac(1, 2), 16)]);
        assert_eq!(charpoly(&omega_tilde_matrix(&v).unwrap().matrix).unwrap(), want);
    }

    #[test]
    fn omega_tilde_is_invariant() {
        let v = irrep(Series::B, "1,0");
        let wt = omega_tilde_matrix(&v).unwrap();
        let t = tensor_with_natural_capped(&v, 100).unwrap();
        assert!(commutes_with_all(&wt.matrix, &t.rep));
        assert!(omega_tilde_matrix(&irrep(Series::D, "0,0")).unwrap().matrix.is_zero());
    }

    #[test]
    fn t_scalars_and_examples() {
        assert_eq!(t_scalar(Series::D, 2, &int(1), 0), int(0));
        assert_eq!(t_scalar(Series::D, 2, &int(2), 1), int(3));
        assert_eq!(t_scalar(Series::B, 2, &int(2), 1), int(2));
        let v = irrep(Series::D, "1,0");
        let m = ConformalModule::new(v, int(1)).unwrap();
        assert!(t_matrix(&m, 0).unwrap().is_zero());
        for k in 0..3 {
            let r = verify_t_operator(&m, k).unwrap();
            assert!(r.passed(), "{r}");
        }
        let m = ConformalModule::new(irrep(Series::B, "1,0"), frac(1, 3)).unwrap();
        for k in 0..3 {
            let r = verify_t_operator(&m, k).unwrap();
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn pieri_dimensions() {
        for (s, mu) in [(Series::B, "1/2,1/2"), (Series::D, "1,-1"), (Series::B, "1,1")] {
            let r = verify_pieri_dimensions(&irrep(s, mu)).unwrap();
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn phi_degree_one() {
        for (s, mu) in [(Series::D, "1,0"), (Series::B, "1/2,1/2"), (Series::B, "0,0")] {
            let m = ConformalModule::new(irrep(s, mu), frac(1, 3)).unwrap();
            let r = verify_phi_degree_one(&m).unwrap();
            assert!(r.passed(), "{r}");
        }
    }
}
