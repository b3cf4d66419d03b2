//! Weight-lattice combinatorics for the orthogonal series.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize, Serializer};

use crate::algebra::rat::{frac, half, int, is_half_integer, is_natural, parse_rat, Rat};
use crate::error::{Error, Result};

/// `D` is o(2n), `B` is o(2n+1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Series {
    D,
    B,
}

impl Series {
    pub fn letter(self) -> char {
        match self {
            Series::D => 'D',
            Series::B => 'B',
        }
    }

    pub fn min_rank(self) -> usize {
        match self {
            Series::D => 2,
            Series::B => 1,
        }
    }

    pub fn check_rank(self, n: usize) -> Result<()> {
        if n < self.min_rank() {
            Err(Error::RankTooSmall {
                series: self.letter(),
                n,
            })
        } else {
            Ok(())
        }
    }

    /// Size of the defining matrices, `2n` or `2n+1`.
    pub fn matrix_size(self, n: usize) -> usize {
        match self {
            Series::D => 2 * n,
            Series::B => 2 * n + 1,
        }
    }

    /// Name of the first coordinate: `x1` for D, `x0` for B.
    pub fn first_index(self) -> usize {
        match self {
            Series::D => 1,
            Series::B => 0,
        }
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for Series {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "D" | "d" => Ok(Series::D),
            "B" | "b" => Ok(Series::B),
            other => Err(Error::Parse(format!("unknown series {other:?}, expected D or B"))),
        }
    }
}

/// A weight `sum mu_i eps_i` with coordinates in Z/2.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct WeightVec {
    series: Series,
    coords: Vec<Rat>,
}

impl WeightVec {
    pub fn new(series: Series, coords: Vec<Rat>) -> Result<Self> {
        series.check_rank(coords.len())?;
        if let Some(c) = coords.iter().find(|c| !is_half_integer(c)) {
            return Err(Error::InvalidWeight(format!("coordinate {c} is not in Z/2")));
        }
        Ok(WeightVec { series, coords })
    }

    pub fn from_ints(series: Series, coords: &[i64]) -> Result<Self> {
        Self::new(series, coords.iter().map(|&c| int(c)).collect())
    }

    /// Parses a comma-separated list of rationals such as `"3/2,1/2"`.
    pub fn parse(series: Series, s: &str) -> Result<Self> {
        let coords = s
            .split(',')
            .map(parse_rat)
            .collect::<Result<Vec<_>>>()?;
        Self::new(series, coords)
    }

    pub fn zero(series: Series, n: usize) -> Result<Self> {
        Self::new(series, vec![Rat::zero(); n])
    }

    /// `eps_i`, with `i` counted from 1.
    pub fn epsilon(series: Series, n: usize, i: usize) -> Result<Self> {
        assert!((1..=n).contains(&i), "epsilon index {i} out of range");
        let mut c = vec![Rat::zero(); n];
        c[i - 1] = Rat::one();
        Self::new(series, c)
    }

    pub fn series(&self) -> Series {
        self.series
    }

    pub fn n(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    /// Coordinate `mu_i`, `i` counted from 1.
    pub fn at(&self, i: usize) -> &Rat {
        &self.coords[i - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn inner(&self, other: &WeightVec) -> Rat {
        inner(&self.coords, &other.coords)
    }

    pub fn add(&self, other: &WeightVec) -> WeightVec {
        WeightVec {
            series: self.series,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &WeightVec) -> WeightVec {
        WeightVec {
            series: self.series,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> WeightVec {
        WeightVec {
            series: self.series,
            coords: self.coords.iter().map(|a| a * c).collect(),
        }
    }

    fn shifted(&self, i: usize, delta: i64) -> WeightVec {
        let mut w = self.clone();
        w.coords[i - 1] += int(delta);
        w
    }
}

pub(crate) fn inner(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl fmt::Display for WeightVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl Serialize for WeightVec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Serialized form of a weight together with its series.
#[derive(Serialize, Deserialize)]
struct TaggedWeight {
    series: Series,
    mu: String,
}

impl WeightVec {
    pub fn to_tagged_json(&self) -> serde_json::Value {
        serde_json::to_value(TaggedWeight {
            series: self.series,
            mu: self.to_string(),
        })
        .expect("serializable")
    }

    pub fn from_tagged_json(v: &serde_json::Value) -> Result<Self> {
        let t: TaggedWeight = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        WeightVec::parse(t.series, &t.mu)
    }
}


/// Membership in the dominant integral cone of the weight's series.
pub fn is_dominant(mu: &WeightVec) -> bool {
    let c = &mu.coords;
    let n = c.len();
    let steps = (0..n - 1).all(|i| is_natural(&(&c[i] - &c[i + 1])));
    match mu.series {
        Series::D => steps && is_natural(&(&c[n - 2] + &c[n - 1])),
        Series::B => steps && !c[n - 1].is_negative() && is_half_integer(&c[n - 1]),
    }
}

fn require_dominant(mu: &WeightVec) -> Result<()> {
    if is_dominant(mu) {
        Ok(())
    } else {
        Err(Error::NotDominant(format!("{} ({})", mu, mu.series)))
    }
}

/// Block boundaries `0 = n_0 < n_1 < ... < n_s = n` of equal consecutive coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JumpSeq(pub Vec<usize>);

impl JumpSeq {
    pub fn s(&self) -> usize {
        self.0.len() - 1
    }

    /// `n_r`.
    pub fn get(&self, r: usize) -> usize {
        self.0[r]
    }

    /// Length of the leading block, `n_1`.
    pub fn iota(&self) -> usize {
        self.0[1]
    }
}

pub fn jump_sequence(mu: &WeightVec) -> Result<JumpSeq> {
    require_dominant(mu)?;
    let n = mu.n();
    let mut seq = vec![0];
    for i in 1..n {
        if mu.at(i) != mu.at(i + 1) {
            seq.push(i);
        }
    }
    seq.push(n);
    Ok(JumpSeq(seq))
}

/// Half the sum of the positive roots.
pub fn rho(series: Series, n: usize) -> WeightVec {
    let coords = (1..=n)
        .map(|i| match series {
            Series::D => int((n - i) as i64),
            Series::B => int((n - i) as i64) + half(),
        })
        .collect();
    WeightVec { series, coords }
}

/// Positive roots `eps_i +- eps_j` (i < j), plus `eps_i` for B.
pub fn positive_roots(series: Series, n: usize) -> Vec<Vec<Rat>> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for sign in [-1i64, 1] {
                let mut r = vec![Rat::zero(); n];
                r[i] = Rat::one();
                r[j] = int(sign);
                out.push(r);
            }
        }
    }
    if series == Series::B {
        for i in 0..n {
            let mut r = vec![Rat::zero(); n];
            r[i] = Rat::one();
            out.push(r);
        }
    }
    out
}

/// Weyl dimension formula.
pub fn weyl_dim(mu: &WeightVec) -> Result<usize> {
    require_dominant(mu)?;
    let r = rho(mu.series, mu.n());
    let shifted = mu.add(&r);
    let mut acc = Rat::one();
    for a in positive_roots(mu.series, mu.n()) {
        acc *= inner(&shifted.coords, &a) / inner(&r.coords, &a);
    }
    assert!(acc.is_integer(), "Weyl dimension {acc} is not an integer");
    Ok(acc.to_integer().to_usize().expect("dimension fits usize"))
}

/// `(mu + 2 rho, mu)`.
pub fn casimir_eigenvalue(mu: &WeightVec) -> Rat {
    let r = rho(mu.series, mu.n());
    mu.add(&r.scale(&int(2))).inner(mu)
}

/// How a Pieri summand arises from `mu`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PieriKind {
    /// `mu + eps_i`
    Raise(usize),
    /// `mu - eps_i`
    Lower(usize),
    /// `mu` itself (B series, zero weight of the natural module)
    Same,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PieriSummand {
    pub weight: WeightVec,
    pub kind: PieriKind,
}

/// Highest weights of the irreducible summands of `V(eps_1) (x) V(mu)`.
///
/// Each summand occurs once. `mu +- eps_i` appears exactly when it is
/// dominant; for B the summand `V(mu)` appears exactly when `mu_n != 0`.
pub fn pieri_decompose(mu: &WeightVec) -> Result<Vec<PieriSummand>> {
    require_dominant(mu)?;
    let n = mu.n();
    let mut out = Vec::new();
    for i in 1..=n {
        let w = mu.shifted(i, 1);
        if is_dominant(&w) {
            out.push(PieriSummand {
                weight: w,
                kind: PieriKind::Raise(i),
            });
        }
    }
    if mu.series == Series::B && !mu.at(n).is_zero() {
        out.push(PieriSummand {
            weight: mu.clone(),
            kind: PieriKind::Same,
        });
    }
    for i in (1..=n).rev() {
        let w = mu.shifted(i, -1);
        if is_dominant(&w) {
            out.push(PieriSummand {
                weight: w,
                kind: PieriKind::Lower(i),
            });
        }
    }
    Ok(out)
}

/// Eigenvalue of the split Casimir on a Pieri summand, from the shift identities.
pub fn summand_eigenvalue(mu: &WeightVec, kind: PieriKind) -> Rat {
    let n = mu.n() as i64;
    match (mu.series, kind) {
        (_, PieriKind::Raise(i)) => mu.at(i) + int(1 - i as i64),
        (Series::D, PieriKind::Lower(i)) => int(1 + i as i64 - 2 * n) - mu.at(i),
        (Series::B, PieriKind::Lower(i)) => int(i as i64 - 2 * n) - mu.at(i),
        (_, PieriKind::Same) => int(-n),
    }
}

/// `(c(nu) - c(mu) - c(eps_1)) / 2`.
pub fn casimir_difference(mu: &WeightVec, nu: &WeightVec) -> Rat {
    let e1 = WeightVec::epsilon(mu.series, mu.n(), 1).expect("valid rank");
    (casimir_eigenvalue(nu) - casimir_eigenvalue(mu) - casimir_eigenvalue(&e1)) * frac(1, 2)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumEntry {
    #[serde(with = "crate::algebra::rat::serde_str")]
    pub eigenvalue: Rat,
    pub multiplicity: usize,
}

/// Eigenvalues with multiplicities, distinct and sorted in decreasing order.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize)]
pub struct Spectrum {
    pub entries: Vec<SpectrumEntry>,
}

impl Spectrum {
    pub fn from_pairs<I: IntoIterator<Item = (Rat, usize)>>(pairs: I) -> Self {
        let mut entries: Vec<SpectrumEntry> = Vec::new();
        for (ev, m) in pairs {
            if m == 0 {
                continue;
            }
            match entries.iter_mut().find(|e| e.eigenvalue == ev) {
                Some(e) => e.multiplicity += m,
                None => entries.push(SpectrumEntry {
                    eigenvalue: ev,
                    multiplicity: m,
                }),
            }
        }
        entries.sort_by(|a, b| b.eigenvalue.cmp(&a.eigenvalue));
        Spectrum { entries }
    }

    pub fn total(&self) -> usize {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }

    pub fn pairs(&self) -> Vec<(Rat, usize)> {
        self.entries.iter().map(|e| (e.eigenvalue.clone(), e.multiplicity)).collect()
    }

    pub fn shifted(&self, by: &Rat) -> Spectrum {
        Spectrum::from_pairs(self.entries.iter().map(|e| (&e.eigenvalue + by, e.multiplicity)))
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|e| format!("({}, {})", e.eigenvalue, e.multiplicity))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Closed-form spectrum of the split Casimir on `V(eps_1) (x) V(mu)`.
pub fn omega_tilde_spectrum(mu: &WeightVec) -> Result<Spectrum> {
    let summands = pieri_decompose(mu)?;
    let mut pairs = Vec::with_capacity(summands.len());
    for s in &summands {
        pairs.push((summand_eigenvalue(mu, s.kind), weyl_dim(&s.weight)?));
    }
    Ok(Spectrum::from_pairs(pairs))
}

/// The set `base - step * N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeRay {
    #[serde(with = "crate::algebra::rat::serde_str")]
    pub base: Rat,
    #[serde(with = "crate::algebra::rat::serde_str")]
    pub step: Rat,
    pub label: String,
}

impl LatticeRay {
    pub fn new(base: Rat, step: Rat, label: impl Into<String>) -> Self {
        LatticeRay {
            base,
            step,
            label: label.into(),
        }
    }

    pub fn contains(&self, b: &Rat) -> bool {
        is_natural(&((&self.base - b) / &self.step))
    }
}

impl fmt::Display for LatticeRay {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lattice = if self.step.is_one() { "N".to_string() } else { format!("{}N", self.step) };
        let lattice = if self.step == half() { "N/2".to_string() } else { lattice };
        write!(f, "{}-{}", self.base, lattice)
    }
}

/// Values of the central charge excluded by the irreducibility criteria.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriticalSet {
    pub rays: Vec<LatticeRay>,
    /// True when the set is exactly the reducibility locus (the `mu = 0` case).
    pub sharp: bool,
}

impl CriticalSet {
    pub fn contains(&self, b: &Rat) -> bool {
        self.rays.iter().any(|r| r.contains(b))
    }

    pub fn first_containing(&self, b: &Rat) -> Option<&LatticeRay> {
        self.rays.iter().find(|r| r.contains(b))
    }
}

impl fmt::Display for CriticalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rays.is_empty() {
            return f.write_str("{}");
        }
        let parts: Vec<String> = self.rays.iter().map(|r| format!("{{{r}}}")).collect();
        f.write_str(&parts.join(" u "))
    }
}

fn all_half(mu: &WeightVec) -> bool {
    mu.coords.iter().all(|c| *c == half())
}

pub fn critical_b_set(mu: &WeightVec) -> Result<CriticalSet> {
    require_dominant(mu)?;
    let n = mu.n() as i64;
    if mu.is_zero() {
        return Ok(CriticalSet {
            rays: vec![LatticeRay::new(Rat::zero(), Rat::one(), "-N")],
            sharp: true,
        });
    }
    let seq = jump_sequence(mu)?;
    let n1 = seq.iota() as i64;
    let mu1 = mu.at(1).clone();
    let mut rays = Vec::new();
    match mu.series {
        Series::D => {
            rays.push(LatticeRay::new(int(n - 1), half(), "n-1-N/2"));
            let nn = mu.n();
            let special = mu.at(nn - 1) == &-mu.at(nn).clone() && mu.at(nn - 1).is_positive() && seq.s() == 2;
            if special {
                rays.push(LatticeRay::new(&mu1 + int(n - 1), Rat::one(), "mu_1+n-1-N"));
            } else {
                rays.push(LatticeRay::new(&mu1 + int(2 * n - n1 - 1), Rat::one(), "mu_1+2n-n_1-1-N"));
            }
        }
        Series::B => {
            rays.push(LatticeRay::new(int(n), half(), "n-N/2"));
            if !all_half(mu) {
                rays.push(LatticeRay::new(&mu1 + int(2 * n - n1), Rat::one(), "mu_1+2n-n_1-N"));
            }
        }
    }
    Ok(CriticalSet { rays, sharp: false })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(c: &[i64]) -> WeightVec {
        WeightVec::from_ints(Series::D, c).unwrap()
    }

    fn b(s: &str) -> WeightVec {
        WeightVec::parse(Series::B, s).unwrap()
    }

    #[test]
    fn dominance() {
        assert!(is_dominant(&d(&[1, 0])));
        assert!(!is_dominant(&d(&[0, 1])));
        assert!(is_dominant(&d(&[1, -1])));
        assert!(is_dominant(&b("1/2,1/2")));
        assert!(!is_dominant(&b("1,1/2")));
        assert!(!is_dominant(&b("0,-1")));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(WeightVec::parse(Series::D, "1,x").is_err());
        assert!(WeightVec::parse(Series::D, "1/3,0").is_err());
        assert!(WeightVec::parse(Series::D, "1").is_err());
        assert_eq!(b("3/2,1/2").to_string(), "3/2,1/2");
    }

    #[test]
    fn jump_sequences() {
        assert_eq!(jump_sequence(&d(&[1, 0])).unwrap().0, vec![0, 1, 2]);
        assert_eq!(jump_sequence(&d(&[2, 2, 2])).unwrap().0, vec![0, 3]);
        assert_eq!(jump_sequence(&d(&[3, 1, 1, 0])).unwrap().0, vec![0, 1, 3, 4]);
        assert!(jump_sequence(&d(&[0, 1])).is_err());
    }

    #[test]
    fn rho_values() {
        assert_eq!(rho(Series::D, 2), d(&[1, 0]));
        assert_eq!(rho(Series::B, 2), b("3/2,1/2"));
        assert_eq!(rho(Series::D, 4), d(&[3, 2, 1, 0]));
    }

    #[test]
    fn dimensions() {
        assert_eq!(weyl_dim(&d(&[1, 0])).unwrap(), 4);
        assert_eq!(weyl_dim(&d(&[1, 1])).unwrap(), 3);
        assert_eq!(weyl_dim(&b("1/2,1/2")).unwrap(), 4);
        assert_eq!(weyl_dim(&b("1,0")).unwrap(), 5);
        assert_eq!(weyl_dim(&d(&[1, 1, 0])).unwrap(), 15);
    }

    #[test]
    fn casimir_values() {
        assert_eq!(casimir_eigenvalue(&d(&[1, 0])), int(3));
        assert_eq!(casimir_eigenvalue(&b("1/2,1/2")), frac(5, 2));
        assert_eq!(casimir_eigenvalue(&d(&[0, 0])), int(0));
    }

    #[test]
    fn pieri_examples() {
        let ws = |mu: &WeightVec| -> Vec<String> {
            let mut v: Vec<String> = pieri_decompose(mu).unwrap().iter().map(|s| s.weight.to_string()).collect();
            v.sort();
            v
        };
        assert_eq!(ws(&d(&[1, 0])), vec!["0,0", "1,-1", "1,1", "2,0"]);
        assert_eq!(ws(&d(&[0, 0])), vec!["1,0"]);
        assert_eq!(ws(&b("1/2,1/2")), vec!["1/2,1/2", "3/2,1/2"]);
        assert_eq!(ws(&b("1,0")), vec!["0,0", "1,1", "2,0"]);
    }

    #[test]
    fn spectrum_examples() {
        let s = omega_tilde_spectrum(&d(&[1, 0])).unwrap();
        assert_eq!(s.pairs(), vec![(int(1), 9), (int(-1), 6), (int(-3), 1)]);
        let s = omega_tilde_spectrum(&b("1/2,1/2")).unwrap();
        assert_eq!(s.pairs(), vec![(frac(1, 2), 16), (int(-2), 4)]);
        let s = omega_tilde_spectrum(&d(&[0, 0, 0])).unwrap();
        assert_eq!(s.pairs(), vec![(int(0), 6)]);
    }

    #[test]
    fn critical_sets() {
        let c = critical_b_set(&d(&[1, 0])).unwrap();
        assert_eq!(c.to_string(), "{1-N/2} u {3-N}");
        let c = critical_b_set(&d(&[1, -1])).unwrap();
        assert_eq!(c.to_string(), "{1-N/2} u {2-N}");
        let c = critical_b_set(&b("1/2,1/2")).unwrap();
        assert_eq!(c.rays.len(), 1);
        let c = critical_b_set(&d(&[0, 0])).unwrap();
        assert!(c.sharp && c.contains(&int(-2)) && !c.contains(&int(1)));
    }

    #[test]
    fn weight_json_round_trip() {
        let w = b("3/2,1/2");
        let back = WeightVec::from_tagged_json(&w.to_tagged_json()).unwrap();
        assert_eq!(back, w);
    }
}
