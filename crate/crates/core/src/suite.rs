//! The fixed verification battery.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::algebra::rat::{frac, int};
use crate::algebra::Rat;
use crate::error::Result;
use crate::highest_weight::{build_irrep, validate_irrep};
use crate::irreducibility::{
    detect_submodule, harmonic_decompose, quotient_scan, surjectivity_scan, verify_delta_eta, LevelRecord, Verdict,
};
use crate::liealg::{verify_bracket_tables, verify_theta_homomorphism};
use crate::mixed::{verify_shen_monomorphism, ConformalModule};
use crate::report::Report;
use crate::spectral::{verify_charpoly_lemma, verify_phi_degree_one, verify_pieri_dimensions, verify_t_operator};
use crate::weights::{Series, WeightVec};

#[derive(Clone, Debug, Serialize)]
pub struct SuiteEntry {
    pub name: String,
    pub passed: bool,
    pub checks: usize,
    pub failures: Vec<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub entries: Vec<SuiteEntry>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }

    pub fn failed(&self) -> impl Iterator<Item = &SuiteEntry> {
        self.entries.iter().filter(|e| !e.passed)
    }
}

type Check = fn(bool) -> Result<Report>;

fn weight(s: Series, mu: &str) -> Result<WeightVec> {
    WeightVec::parse(s, mu)
}

fn module(s: Series, mu: &str, b: Rat) -> Result<ConformalModule> {
    ConformalModule::new(build_irrep(&weight(s, mu)?)?, b)
}

fn brackets(_: bool) -> Result<Report> {
    let mut r = Report::new("bracket tables");
    for (n, s) in [(2, Series::D), (3, Series::D), (1, Series::B), (2, Series::B)] {
        r.merge(verify_bracket_tables(n, s)?);
    }
    Ok(r)
}

fn theta(_: bool) -> Result<Report> {
    let mut r = Report::new("isomorphism onto the conformal algebra");
    r.merge(verify_theta_homomorphism(2, Series::D)?);
    r.merge(verify_theta_homomorphism(2, Series::B)?);
    Ok(r)
}

fn shen(fault: bool) -> Result<Report> {
    let mut r = Report::new("Shen embedding");
    r.merge(verify_shen_monomorphism(2, Series::D, fault)?);
    r.merge(verify_shen_monomorphism(2, Series::B, false)?);
    Ok(r)
}

pub const CASIMIR_WEIGHTS: [(Series, &str); 6] = [
    (Series::D, "1,0"),
    (Series::D, "1,1"),
    (Series::D, "1,-1"),
    (Series::D, "2,0"),
    (Series::B, "1,0"),
    (Series::B, "1/2,1/2"),
];

pub const CHARPOLY_WEIGHTS: [(Series, &str); 8] = [
    (Series::D, "1,0"),
    (Series::D, "1,1"),
    (Series::D, "1,-1"),
    (Series::D, "2,0"),
    (Series::B, "1,0"),
    (Series::B, "1/2,1/2"),
    (Series::B, "1,1"),
    (Series::D, "1,1,0"),
];

fn casimir(_: bool) -> Result<Report> {
    let mut r = Report::new("Casimir scalar");
    for (s, mu) in CASIMIR_WEIGHTS {
        r.merge(validate_irrep(&build_irrep(&weight(s, mu)?)?));
    }
    Ok(r)
}

fn charpolys(_: bool) -> Result<Report> {
    let mut r = Report::new("characteristic polynomials");
    for (s, mu) in CHARPOLY_WEIGHTS {
        r.merge(verify_charpoly_lemma(&build_irrep(&weight(s, mu)?)?)?.1);
    }
    Ok(r)
}

fn pieri(_: bool) -> Result<Report> {
    let mut r = Report::new("Pieri dimensions");
    for (s, mu) in CHARPOLY_WEIGHTS {
        r.merge(verify_pieri_dimensions(&build_irrep(&weight(s, mu)?)?)?);
    }
    Ok(r)
}

fn phi_one(_: bool) -> Result<Report> {
    let mut r = Report::new("phi on degree one");
    for (s, mu) in [(Series::D, "1,0"), (Series::D, "1,1"), (Series::B, "1,0"), (Series::B, "1/2,1/2")] {
        let m = module(s, mu, int(0))?;
        for b in [int(0), frac(1, 3), int(-2)] {
            r.merge(verify_phi_degree_one(&m.with_b(b))?);
        }
    }
    Ok(r)
}

fn t_operator(_: bool) -> Result<Report> {
    let mut r = Report::new("invariant T");
    for (s, mu) in [(Series::D, "1,0"), (Series::B, "1/2,1/2")] {
        let m = module(s, mu, int(0))?;
        for b in [int(0), int(1), frac(1, 3)] {
            let mb = m.with_b(b);
            for k in 0..=4 {
                r.merge(verify_t_operator(&mb, k)?);
            }
        }
    }
    Ok(r)
}

fn scan_levels(r: &mut Report, name: &str, levels: &[LevelRecord]) {
    for l in levels {
        r.check(format!("{name}: full rank at degree {}", l.k), l.full(), format!("rank {} of {}", l.rank, l.dim));
    }
}

fn sufficiency(_: bool) -> Result<Report> {
    let mut r = Report::new("irreducibility for generic b");
    for (s, mu, b) in [
        (Series::D, "1,0", frac(1, 3)),
        (Series::D, "1,0", frac(5, 3)),
        (Series::B, "1/2,1/2", frac(1, 4)),
        (Series::B, "1,0", frac(1, 3)),
    ] {
        let res = surjectivity_scan(&module(s, mu, b.clone())?, 4)?;
        let name = format!("{s} mu=({mu}) b={b}");
        scan_levels(&mut r, &name, &res.levels);
        r.check(format!("{name}: verdict"), res.verdict == Verdict::IrreducibleUpToD, res.verdict.to_string());
    }
    let res = surjectivity_scan(&module(Series::D, "1,0", int(3))?, 2)?;
    r.check(
        "D mu=(1,0) b=3: rank deficiency at degree 1",
        res.first_deficient().map(|l| l.k) == Some(1),
        format!("{:?}", res.levels),
    );
    Ok(r)
}

fn trivial_weight(_: bool) -> Result<Report> {
    let mut r = Report::new("trivial highest weight");
    for s in [Series::D, Series::B] {
        let m = module(s, "0,0", int(0))?;
        for b in [frac(1, 2), int(1), frac(5, 2)] {
            let res = surjectivity_scan(&m.with_b(b.clone()), 4)?;
            scan_levels(&mut r, &format!("{s} mu=0 b={b}"), &res.levels);
        }
        for b in [int(0), int(-1), int(-2)] {
            let name = format!("{s} mu=0 b={b}");
            match detect_submodule(&m.with_b(b.clone()), 4)? {
                Some(sub) => {
                    r.check(format!("{name}: submodule is closed"), sub.closed, format!("{:?}", sub.dims()));
                    if b == int(0) {
                        r.check(
                            format!("{name}: submodule is the constants"),
                            sub.dims() == vec![1, 0, 0, 0, 0],
                            format!("{:?}", sub.dims()),
                        );
                        scan_levels(&mut r, &format!("{name} quotient"), &quotient_scan(&m.with_b(b), &sub)?);
                    }
                }
                None => r.check(format!("{name}: proper submodule"), false, "none found"),
            }
        }
    }
    Ok(r)
}

fn harmonic(_: bool) -> Result<Report> {
    let mut r = Report::new("harmonic decomposition");
    r.merge(verify_delta_eta(2, Series::D)?);
    r.merge(verify_delta_eta(2, Series::B)?);
    let (h, rep) = harmonic_decompose(2, 2, Series::D)?;
    r.merge(rep);
    r.check("dim H_2 = dim A_2 - 1", h.harmonic.len() + 1 == h.dim_a, format!("{} vs {}", h.harmonic.len(), h.dim_a));
    Ok(r)
}

pub const CHECKS: [(&str, Check); 11] = [
    ("01-bracket-tables", brackets),
    ("02-theta-isomorphism", theta),
    ("03-shen-embedding", shen),
    ("04-casimir-scalar", casimir),
    ("05-charpoly", charpolys),
    ("06-phi-degree-one", phi_one),
    ("07-invariant-t", t_operator),
    ("08-generic-irreducibility", sufficiency),
    ("09-trivial-weight", trivial_weight),
    ("10-pieri-dimensions", pieri),
    ("11-harmonic", harmonic),
];

/// Runs every check in name order; `fault` flips one sign in a closed form of the embedding.
pub fn run_suite(fault: bool) -> Result<SuiteReport> {
    let mut checks = CHECKS.to_vec();
    checks.sort_by_key(|(n, _)| *n);
    let mut entries = Vec::new();
    for (name, f) in checks {
        let start = Instant::now();
        let report = f(fault)?;
        entries.push(SuiteEntry {
            name: name.to_string(),
            passed: report.passed(),
            checks: report.len(),
            failures: report.failures().map(|c| c.identity.clone()).collect(),
            elapsed: start.elapsed(),
        });
    }
    Ok(SuiteReport { entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_sorted_and_unique() {
        let mut names: Vec<&str> = CHECKS.iter().map(|c| c.0).collect();
        let orig = names.clone();
        names.sort();
        names.dedup();
        assert_eq!(names, orig);
    }

    #[test]
    fn fault_flag_reaches_one_check() {
        assert!(shen(false).unwrap().passed());
        let bad = shen(true).unwrap();
        assert_eq!(bad.failure_count(), 1);
    }
}
