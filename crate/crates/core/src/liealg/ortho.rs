//! Split realizations of o(2n) and o(2n+1) as matrices.
//!
//! Matrix positions follow the variable layout: for D the index `i` in
//! `1..=2n` sits at position `i-1`; for B the extra index `0` sits at
//! position 0 and `i` at position `i`.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{Rat, SparseMat, SparseVec};
use crate::error::{Error, Result};
use crate::weights::Series;

/// Root-vector type of a basis element; indices count from 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum OrthoKind {
    /// `E_{k,k} - E_{n+k,n+k}`
    Cartan(usize),
    /// `E_{i,j} - E_{n+j,n+i}`, `i != j`, root `eps_i - eps_j`
    A(usize, usize),
    /// `E_{p,n+q} - E_{q,n+p}`, `p < q`, root `eps_p + eps_q`
    P(usize, usize),
    /// `E_{n+p,q} - E_{n+q,p}`, `p < q`, root `-eps_p - eps_q`
    Q(usize, usize),
    /// `E_{0,i} - E_{n+i,0}`, root `-eps_i`
    K(usize),
    /// `E_{0,n+i} - E_{i,0}`, root `eps_i`
    Kp(usize),
}

#[derive(Clone, Debug)]
pub struct OrthoElement {
    pub kind: OrthoKind,
    pub label: String,
    pub matrix: SparseMat,
    pub root: Vec<i64>,
}

impl OrthoElement {
    pub fn is_cartan(&self) -> bool {
        matches!(self.kind, OrthoKind::Cartan(_))
    }

    pub fn height(&self, series: Series) -> i64 {
        let n = self.root.len() as i64;
        self.root
            .iter()
            .enumerate()
            .map(|(k, a)| {
                let w = match series {
                    Series::D => n - 1 - k as i64,
                    Series::B => n - k as i64,
                };
                a * w
            })
            .sum()
    }
}

/// Index layout shared by the matrix and polynomial realizations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Layout {
    pub series: Series,
    pub n: usize,
}

impl Layout {
    pub fn new(series: Series, n: usize) -> Self {
        Layout { series, n }
    }

    pub fn size(&self) -> usize {
        self.series.matrix_size(self.n)
    }

    /// Position of the label `r` (`1..=2n`, or `0..=2n` for B).
    pub fn pos(&self, r: usize) -> usize {
        match self.series {
            Series::D => {
                assert!((1..=2 * self.n).contains(&r), "index {r} out of range");
                r - 1
            }
            Series::B => {
                assert!(r <= 2 * self.n, "index {r} out of range");
                r
            }
        }
    }

    /// Label of position `p`.
    pub fn index(&self, p: usize) -> usize {
        p + self.series.first_index()
    }

    /// Index paired with `r` by the bilinear form (`i <-> n+i`, `0 <-> 0`).
    pub fn dual(&self, r: usize) -> usize {
        let n = self.n;
        match r {
            0 => 0,
            r if r <= n => r + n,
            r => r - n,
        }
    }

    /// All labels in position order.
    pub fn indices(&self) -> Vec<usize> {
        (0..self.size()).map(|p| self.index(p)).collect()
    }
}

/// Ordered basis of o(m): Cartan first, then positive roots by height, then negatives.
#[derive(Clone, Debug)]
pub struct OrthoBasis {
    layout: Layout,
    elements: Vec<OrthoElement>,
    pivots: Vec<(usize, usize)>,
    lookup: HashMap<OrthoKind, usize>,
}

fn e_minus(layout: &Layout, a: (usize, usize), b: (usize, usize)) -> SparseMat {
    let m = layout.size();
    let mut x = SparseMat::zeros(m, m);
    x.add_to(layout.pos(a.0), layout.pos(a.1), Rat::one());
    x.add_to(layout.pos(b.0), layout.pos(b.1), -Rat::one());
    x
}

fn root(n: usize, plus: &[usize], minus: &[usize]) -> Vec<i64> {
    let mut r = vec![0; n];
    for &i in plus {
        r[i - 1] += 1;
    }
    for &i in minus {
        r[i - 1] -= 1;
    }
    r
}

impl OrthoBasis {
    pub fn new(series: Series, n: usize) -> Result<Self> {
        series.check_rank(n)?;
        let layout = Layout::new(series, n);
        let label = |a: (usize, usize), b: (usize, usize)| format!("E_{{{},{}}}-E_{{{},{}}}", a.0, a.1, b.0, b.1);
        let mut raw: Vec<(OrthoElement, (usize, usize))> = Vec::new();
        let mut push = |kind, a: (usize, usize), b: (usize, usize), r: Vec<i64>| {
            let el = OrthoElement {
                kind,
                label: label(a, b),
                matrix: e_minus(&layout, a, b),
                root: r,
            };
            raw.push((el, (layout.pos(a.0), layout.pos(a.1))));
        };
        for k in 1..=n {
            push(OrthoKind::Cartan(k), (k, k), (n + k, n + k), vec![0; n]);
        }
        for i in 1..=n {
            for j in 1..=n {
                if i != j {
                    push(OrthoKind::A(i, j), (i, j), (n + j, n + i), root(n, &[i], &[j]));
                }
            }
        }
        for p in 1..=n {
            for q in p + 1..=n {
                push(OrthoKind::P(p, q), (p, n + q), (q, n + p), root(n, &[p, q], &[]));
                push(OrthoKind::Q(p, q), (n + p, q), (n + q, p), root(n, &[], &[p, q]));
            }
        }
        if series == Series::B {
            for i in 1..=n {
                push(OrthoKind::K(i), (0, i), (n + i, 0), root(n, &[], &[i]));
                push(OrthoKind::Kp(i), (0, n + i), (i, 0), root(n, &[i], &[]));
            }
        }
        let height = |e: &OrthoElement| e.height(series);
        let (cartan, rest): (Vec<_>, Vec<_>) = raw.into_iter().partition(|(e, _)| e.is_cartan());
        let (mut pos, mut neg): (Vec<_>, Vec<_>) = rest.into_iter().partition(|(e, _)| height(e) > 0);
        pos.sort_by(|(a, _), (b, _)| height(a).cmp(&height(b)).then(b.root.cmp(&a.root)));
        neg.sort_by(|(a, _), (b, _)| height(b).cmp(&height(a)).then(a.root.cmp(&b.root)));
        let all: Vec<_> = cartan.into_iter().chain(pos).chain(neg).collect();
        let lookup = all.iter().enumerate().map(|(i, (e, _))| (e.kind, i)).collect();
        let (elements, pivots) = all.into_iter().unzip();
        Ok(OrthoBasis {
            layout,
            elements,
            pivots,
            lookup,
        })
    }

    pub fn layout(&self) -> Layout {
        self.layout
    }

    pub fn series(&self) -> Series {
        self.layout.series
    }

    pub fn rank(&self) -> usize {
        self.layout.n
    }

    /// Matrix size `m`.
    pub fn m(&self) -> usize {
        self.layout.size()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[OrthoElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &OrthoElement {
        &self.elements[i]
    }

    pub fn index_of(&self, kind: OrthoKind) -> Option<usize> {
        self.lookup.get(&kind).copied()
    }

    pub fn get(&self, kind: OrthoKind) -> &OrthoElement {
        &self.elements[self.lookup[&kind]]
    }

    pub fn cartan(&self) -> std::ops::Range<usize> {
        0..self.layout.n
    }

    pub fn is_positive(&self, i: usize) -> bool {
        self.elements[i].height(self.series()) > 0
    }

    /// The symmetric form preserved by every element.
    pub fn gram(&self) -> SparseMat {
        let l = self.layout;
        let m = l.size();
        let mut g = SparseMat::zeros(m, m);
        for r in l.indices() {
            g.set(l.pos(r), l.pos(l.dual(r)), Rat::one());
        }
        g
    }

    /// `X^T G + G X = 0`.
    pub fn preserves_form(&self, x: &SparseMat) -> bool {
        let g = self.gram();
        (&(&x.transpose() * &g) + &(&g * x)).is_zero()
    }

    /// Coordinates of `x` in this basis.
    pub fn coordinates(&self, x: &SparseMat) -> Result<SparseVec> {
        if x.rows() != self.m() || x.cols() != self.m() {
            return Err(Error::DimensionMismatch(format!(
                "expected {0}x{0} matrix, got {1}x{2}",
                self.m(),
                x.rows(),
                x.cols()
            )));
        }
        let mut c = SparseVec::new();
        for (i, &(r, col)) in self.pivots.iter().enumerate() {
            let v = x.get(r, col);
            if !v.is_zero() {
                c.insert(i, v);
            }
        }
        if &self.combine(&c) != x {
            return Err(Error::NotInAlgebra(format!("{x:?}")));
        }
        Ok(c)
    }

    pub fn combine(&self, coords: &SparseVec) -> SparseMat {
        let mut out = SparseMat::zeros(self.m(), self.m());
        for (&i, c) in coords {
            out = &out + &self.elements[i].matrix.scale(c);
        }
        out
    }

    /// Structure constants: coordinates of `[X_a, X_b]`.
    pub fn bracket(&self, a: usize, b: usize) -> SparseVec {
        let z = self.elements[a].matrix.commutator(&self.elements[b].matrix);
        self.coordinates(&z).expect("o(m) is closed under bracket")
    }

    /// Simple root vectors as `(e_i, f_i)` index pairs.
    pub fn simple_roots(&self) -> Vec<(usize, usize)> {
        let n = self.layout.n;
        let mut out: Vec<(usize, usize)> = (1..n)
            .map(|i| (self.lookup[&OrthoKind::A(i, i + 1)], self.lookup[&OrthoKind::A(i + 1, i)]))
            .collect();
        match self.series() {
            Series::D => out.push((
                self.lookup[&OrthoKind::P(n - 1, n)],
                self.lookup[&OrthoKind::Q(n - 1, n)],
            )),
            Series::B => out.push((self.lookup[&OrthoKind::Kp(n)], self.lookup[&OrthoKind::K(n)])),
        }
        out
    }

    /// Triples `(X, Y, c)` with `omega = sum c X Y` the Casimir element.
    pub fn casimir_pairs(&self) -> Vec<(usize, usize, Rat)> {
        let n = self.layout.n;
        let ix = |k| self.lookup[&k];
        let (one, minus) = (Rat::one(), -Rat::one());
        let mut out = Vec::new();
        for p in 1..=n {
            for q in p + 1..=n {
                out.push((ix(OrthoKind::P(p, q)), ix(OrthoKind::Q(p, q)), minus.clone()));
                out.push((ix(OrthoKind::Q(p, q)), ix(OrthoKind::P(p, q)), minus.clone()));
            }
        }
        if self.series() == Series::B {
            for i in 1..=n {
                out.push((ix(OrthoKind::K(i)), ix(OrthoKind::Kp(i)), minus.clone()));
                out.push((ix(OrthoKind::Kp(i)), ix(OrthoKind::K(i)), minus.clone()));
            }
        }
        for i in 1..=n {
            for j in 1..=n {
                if i == j {
                    out.push((ix(OrthoKind::Cartan(i)), ix(OrthoKind::Cartan(i)), one.clone()));
                } else {
                    out.push((ix(OrthoKind::A(i, j)), ix(OrthoKind::A(j, i)), one.clone()));
                }
            }
        }
        out
    }
}

impl fmt::Display for OrthoBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "o({}) basis, {} elements", self.m(), self.len())?;
        for e in &self.elements {
            writeln!(f, "  {:<20} root {:?}", e.label, e.root)?;
        }
        Ok(())
    }
}

/// o(m) for `m >= 3`: series D when `m` is even, B when odd.
pub fn build_ortho(m: usize) -> Result<OrthoBasis> {
    if m < 3 {
        return Err(Error::MatrixSizeTooSmall(m));
    }
    if m.is_multiple_of(2) {
        OrthoBasis::new(Series::D, m / 2)
    } else {
        OrthoBasis::new(Series::B, (m - 1) / 2)
    }
}
