use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use orthoconf::algebra::rat::parse_rat;
use orthoconf::highest_weight::validate_irrep;
use orthoconf::irreducibility::{harmonic_decompose, verify_delta_eta};
use orthoconf::liealg::{verify_bracket_tables, verify_theta_homomorphism};
use orthoconf::mixed::verify_shen_monomorphism;
use orthoconf::spectral::{t_matrix, t_scalar, verify_charpoly_lemma, verify_pieri_dimensions, verify_t_operator};
use orthoconf::suite::run_suite;
use orthoconf::weights::{critical_b_set, pieri_decompose, summand_eigenvalue, weyl_dim};
use orthoconf::{
    build_irrep, classify_b, surjectivity_scan, Classification, ConformalModule, Error, Rat, Report, Series, Verdict,
    WeightVec,
};

#[derive(Parser, Debug)]
#[command(name = "orthoconf", version, about = "Exact checks for conformal representations of orthogonal Lie algebras")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,

    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Bracket tables of the conformal operators.
    VerifyBrackets(RankArgs),
    /// Homomorphism property of the isomorphism onto the conformal algebra.
    VerifyTheta(RankArgs),
    /// Shen's embedding on all generator pairs.
    VerifyShen {
        #[command(flatten)]
        rank: RankArgs,
        /// Flip one sign in the closed form of the image of J_1.
        #[arg(long)]
        inject_fault: bool,
    },
    /// Build V(mu) and check it.
    BuildIrrep(WeightArgs),
    /// Summands of V(eps_1) (x) V(mu).
    Pieri(WeightArgs),
    /// Characteristic polynomial of the split Casimir.
    Charpoly(WeightArgs),
    /// The invariant T on one degree.
    TOperator {
        #[command(flatten)]
        weight: WeightArgs,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, default_value_t = 0)]
        k: u32,
    },
    /// Degree-by-degree surjectivity scan.
    Scan {
        #[command(flatten)]
        weight: WeightArgs,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, default_value_t = 4)]
        max_degree: u32,
    },
    /// Whether b lies in the critical set of mu.
    Classify {
        #[command(flatten)]
        weight: WeightArgs,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Harmonic decomposition of the degree-k polynomials.
    Harmonic {
        #[command(flatten)]
        rank: RankArgs,
        #[arg(long, default_value_t = 2)]
        k: u32,
    },
    /// The fixed verification battery.
    Suite {
        #[arg(long)]
        inject_fault: bool,
    },
}

#[derive(Args, Debug)]
struct RankArgs {
    #[arg(long, value_parser = parse_series)]
    series: Series,
    #[arg(long)]
    n: usize,
}

#[derive(Args, Debug)]
struct WeightArgs {
    #[arg(long, value_parser = parse_series)]
    series: Series,
    /// Comma-separated coordinates such as `1,0` or `1/2,1/2`; zero when omitted.
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<String>,
    #[arg(long)]
    n: Option<usize>,
}

fn parse_series(s: &str) -> Result<Series, String> {
    s.parse::<Series>().map_err(|e| e.to_string())
}

struct Outcome {
    code: u8,
    text: String,
    json: Value,
}

enum Failure {
    Usage(String),
    Math(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_)
            | Error::InvalidWeight(_)
            | Error::NotDominant(_)
            | Error::RankTooSmall { .. }
            | Error::MatrixSizeTooSmall(_)
            | Error::CapExceeded { .. } => Failure::Usage(e.to_string()),
            other => Failure::Math(other),
        }
    }
}

impl WeightArgs {
    fn weight(&self) -> Result<WeightVec, Failure> {
        let w = match (&self.mu, self.n) {
            (Some(s), _) => WeightVec::parse(self.series, s)?,
            (None, Some(n)) => WeightVec::zero(self.series, n)?,
            (None, None) => return Err(Failure::Usage("either --mu or --n is required".into())),
        };
        if let Some(n) = self.n {
            if n != w.n() {
                return Err(Failure::Usage(format!("--mu has {} coordinates but --n is {n}", w.n())));
            }
        }
        Ok(w)
    }
}

fn parse_b(s: &str) -> Result<Rat, Failure> {
    parse_rat(s).map_err(|e| Failure::Usage(e.to_string()))
}

fn report_outcome(verb: &str, report: Report) -> Outcome {
    let code = u8::from(!report.passed());
    let mut text = format!(
        "{}: {} of {} checks passed\n",
        report.title,
        report.len() - report.failure_count(),
        report.len()
    );
    if !report.passed() {
        let _ = write!(text, "{report}");
    }
    Outcome {
        code,
        text,
        json: json!({ "command": verb, "passed": report.passed(), "report": report }),
    }
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    Ok(match &cli.verb {
        Verb::VerifyBrackets(r) => report_outcome("verify-brackets", verify_bracket_tables(r.n, r.series)?),
        Verb::VerifyTheta(r) => report_outcome("verify-theta", verify_theta_homomorphism(r.n, r.series)?),
        Verb::VerifyShen { rank, inject_fault } => {
            report_outcome("verify-shen", verify_shen_monomorphism(rank.n, rank.series, *inject_fault)?)
        }
        Verb::BuildIrrep(w) => {
            let mu = w.weight()?;
            let v = build_irrep(&mu)?;
            let report = validate_irrep(&v);
            let mut out = report_outcome("build-irrep", report);
            out.text = format!("V({mu}) of dimension {}\n{}", v.dim(), out.text);
            out.json["irrep"] = v.to_json();
            out
        }
        Verb::Pieri(w) => {
            let mu = w.weight()?;
            let mut text = format!("V(eps_1) (x) V({mu}):\n");
            let mut rows = Vec::new();
            let mut total = 0;
            for s in pieri_decompose(&mu)? {
                let d = weyl_dim(&s.weight)?;
                let e = summand_eigenvalue(&mu, s.kind);
                total += d;
                let _ = writeln!(text, "  V({})  dim {d}  eigenvalue {e}", s.weight);
                rows.push(json!({ "weight": s.weight, "dim": d, "eigenvalue": e.to_string() }));
            }
            let v = build_irrep(&mu)?;
            let report = verify_pieri_dimensions(&v)?;
            let _ = writeln!(text, "total {total} = {} * {}", v.algebra().m(), v.dim());
            let mut out = report_outcome("pieri", report);
            out.text = format!("{text}{}", out.text);
            out.json["summands"] = Value::Array(rows);
            out
        }
        Verb::Charpoly(w) => {
            let mu = w.weight()?;
            let (res, report) = verify_charpoly_lemma(&build_irrep(&mu)?)?;
            let mut out = report_outcome("charpoly", report);
            out.text = format!(
                "computed:    {}\nclosed form: {}\n{}\n{}",
                res.charpoly_computed,
                res.charpoly_closed_form,
                if res.matches { "closed-form match" } else { "closed-form MISMATCH" },
                out.text
            );
            out.json["result"] = serde_json::to_value(&res).expect("serializable");
            out
        }
        Verb::TOperator { weight, b, k } => {
            let mu = weight.weight()?;
            let b = parse_b(b)?;
            let m = ConformalModule::new(build_irrep(&mu)?, b.clone())?;
            let report = verify_t_operator(&m, *k)?;
            let zero = t_matrix(&m, *k)?.is_zero();
            let c = t_scalar(mu.series(), mu.n(), &b, *k);
            let mut out = report_outcome("t-operator", report);
            out.text = format!("T = ({c}) eta on degree {k}{}\n{}", if zero { " (T = 0)" } else { "" }, out.text);
            out.json["scalar"] = json!(c.to_string());
            out
        }
        Verb::Scan { weight, b, max_degree } => {
            let mu = weight.weight()?;
            let m = ConformalModule::new(build_irrep(&mu)?, parse_b(b)?)?;
            let res = surjectivity_scan(&m, *max_degree)?;
            let mut text = format!("scan {} mu=({}) b={} up to degree {max_degree}\n", res.series, res.mu, res.b);
            for l in &res.levels {
                let _ = writeln!(text, "  degree {}: rank {} of {}", l.k, l.rank, l.dim);
            }
            let eig: Vec<String> = res.phi_eigenvalues.iter().map(|e| format!("{}^{}", e.value, e.multiplicity)).collect();
            let _ = writeln!(text, "  phi eigenvalues on degree 1: {}", eig.join(", "));
            let verdict = res.verdict.to_string().replace("-D", &format!("-{max_degree}"));
            let _ = writeln!(text, "verdict: {verdict}");
            Outcome {
                code: u8::from(res.verdict == Verdict::ProperSubmoduleFound),
                text,
                json: json!({ "command": "scan", "scan": res, "verdict": verdict }),
            }
        }
        Verb::Classify { weight, b } => {
            let mu = weight.weight()?;
            let b = parse_b(b)?;
            let set = critical_b_set(&mu)?;
            let class = classify_b(&mu, &b)?;
            let reducible = set.sharp && class != Classification::Generic;
            Outcome {
                code: u8::from(reducible),
                text: format!("critical set {set}\n{class}\n"),
                json: json!({ "command": "classify", "critical_set": set, "classification": class, "reducible": reducible }),
            }
        }
        Verb::Harmonic { rank, k } => {
            let (h, mut report) = harmonic_decompose(*k, rank.n, rank.series)?;
            report.merge(verify_delta_eta(rank.n, rank.series)?);
            let mut out = report_outcome("harmonic", report);
            let parts: Vec<String> = h.components.iter().map(|c| format!("eta^{} H_{} ({})", c.m, c.degree, c.dim)).collect();
            out.text = format!("dim A_{k} = {} = {}\n{}", h.dim_a, parts.join(" + "), out.text);
            out.json["decomposition"] = serde_json::to_value(&h).expect("serializable");
            out
        }
        Verb::Suite { inject_fault } => {
            let s = run_suite(*inject_fault)?;
            let mut text = String::new();
            for e in &s.entries {
                let status = if e.passed { "pass" } else { "FAIL" };
                let _ = writeln!(text, "{status} {:<28} {:>6} checks {:>9.3}s", e.name, e.checks, e.elapsed.as_secs_f64());
                for f in &e.failures {
                    let _ = writeln!(text, "     failed: {f}");
                }
            }
            let failed = s.failed().count();
            let _ = writeln!(text, "{} of {} passed", s.entries.len() - failed, s.entries.len());
            Outcome {
                code: u8::from(!s.passed()),
                text,
                json: json!({ "command": "suite", "passed": s.passed(), "checks": s.entries }),
            }
        }
    })
}

fn emit(cli: &Cli, out: &Outcome) -> std::io::Result<()> {
    let body = match cli.format {
        Format::Text => out.text.clone(),
        Format::Json => {
            let mut v = out.json.clone();
            v["schema"] = json!(1);
            serde_json::to_string_pretty(&v).expect("serializable") + "\n"
        }
    };
    match &cli.output {
        Some(p) => std::fs::write(p, body),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => match emit(&cli, &out) {
            Ok(()) => ExitCode::from(out.code),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Math(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("orthoconf").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn negative_b_parses() {
        let cli = parse(&["scan", "--series", "D", "--n", "2", "--b", "-3/2"]);
        match cli.verb {
            Verb::Scan { b, max_degree, .. } => {
                assert_eq!(parse_b(&b).ok(), Some(Rat::new((-3).into(), 2.into())));
                assert_eq!(max_degree, 4);
            }
            _ => panic!("wrong verb"),
        }
    }

    #[test]
    fn weight_defaults_and_mismatch() {
        let w = WeightArgs { series: Series::B, mu: None, n: Some(2) };
        assert!(w.weight().ok().unwrap().is_zero());
        let w = WeightArgs { series: Series::D, mu: Some("1,0".into()), n: Some(3) };
        assert!(matches!(w.weight(), Err(Failure::Usage(_))));
        let w = WeightArgs { series: Series::D, mu: None, n: None };
        assert!(matches!(w.weight(), Err(Failure::Usage(_))));
    }

    #[test]
    fn error_classes() {
        assert!(matches!(Failure::from(Error::Parse("x".into())), Failure::Usage(_)));
        assert!(matches!(parse_b("1/0"), Err(Failure::Usage(_))));
        assert!(parse_series("C").is_err());
    }
}
