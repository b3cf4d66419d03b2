//! The isomorphism from o(m+2) onto the conformal algebra.

use num_traits::One;

use super::conformal::{ConfKind, ConformalBasis};
use super::ortho::{OrthoBasis, OrthoKind};
use crate::algebra::{DiffOp, Rat, SparseMat, SparseVec};
use crate::error::Result;
use crate::weights::Series;

#[derive(Clone, Debug)]
pub struct Theta {
    domain: OrthoBasis,
    target: ConformalBasis,
    images: Vec<(Rat, ConfKind)>,
}

/// Image of a domain basis element of rank `n+1` as `(sign, generator)`.
fn image(kind: OrthoKind, n: usize) -> (i64, ConfKind) {
    let big = n + 1;
    match kind {
        OrthoKind::Cartan(k) if k == big => (-1, ConfKind::D),
        OrthoKind::Cartan(k) => (1, ConfKind::A(k, k)),
        OrthoKind::A(i, j) if i == big => (1, ConfKind::Partial(j)),
        OrthoKind::A(i, j) if j == big => (-1, ConfKind::J(i)),
        OrthoKind::A(i, j) => (1, ConfKind::A(i, j)),
        OrthoKind::P(p, q) if q == big => (-1, ConfKind::Partial(n + p)),
        OrthoKind::P(p, q) => (1, ConfKind::B(p, q)),
        OrthoKind::Q(p, q) if q == big => (-1, ConfKind::J(n + p)),
        OrthoKind::Q(p, q) => (1, ConfKind::C(p, q)),
        OrthoKind::K(i) if i == big => (-1, ConfKind::J(0)),
        OrthoKind::K(i) => (1, ConfKind::K(i)),
        OrthoKind::Kp(i) if i == big => (-1, ConfKind::Partial(0)),
        OrthoKind::Kp(i) => (1, ConfKind::K(n + i)),
    }
}

impl Theta {
    pub fn new(series: Series, n: usize) -> Result<Self> {
        let target = ConformalBasis::new(n, series)?;
        let domain = OrthoBasis::new(series, n + 1)?;
        let images = domain
            .elements()
            .iter()
            .map(|e| {
                let (s, k) = image(e.kind, n);
                (Rat::from_integer(s.into()), k)
            })
            .collect();
        Ok(Theta {
            domain,
            target,
            images,
        })
    }

    pub fn domain(&self) -> &OrthoBasis {
        &self.domain
    }

    pub fn target(&self) -> &ConformalBasis {
        &self.target
    }

    /// Image of the `i`-th domain basis element as `(sign, generator)`.
    pub fn image_kind(&self, i: usize) -> (&Rat, ConfKind) {
        let (s, k) = &self.images[i];
        (s, *k)
    }

    pub fn image_of(&self, i: usize) -> DiffOp {
        let (s, k) = &self.images[i];
        self.target.get(*k).scale(s)
    }

    pub fn apply_coords(&self, coords: &SparseVec) -> DiffOp {
        let mut out = DiffOp::zero(self.target.nvars());
        for (&i, c) in coords {
            out = &out + &self.image_of(i).scale(c);
        }
        out
    }

    /// `theta(X)` for a matrix `X` of the domain algebra.
    pub fn apply(&self, x: &SparseMat) -> Result<DiffOp> {
        Ok(self.apply_coords(&self.domain.coordinates(x)?))
    }

    /// Domain element mapped to the given generator, with its sign.
    pub fn preimage(&self, kind: ConfKind) -> Option<(usize, Rat)> {
        self.images
            .iter()
            .position(|(_, k)| *k == kind)
            .map(|i| (i, Rat::one() / &self.images[i].0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_images() {
        let t = Theta::new(Series::D, 2).unwrap();
        let o = t.domain();
        let ops = t.target().ops();
        let h = &o.get(OrthoKind::Cartan(3)).matrix;
        assert_eq!(t.apply(h).unwrap(), -&ops.euler());
        assert_eq!(o.get(OrthoKind::A(1, 3)).label, "E_{1,3}-E_{6,4}");
        assert_eq!(t.apply(&o.get(OrthoKind::A(1, 3)).matrix).unwrap(), -&ops.j(1));
        let tb = Theta::new(Series::B, 2).unwrap();
        let k = tb.domain().get(OrthoKind::K(3));
        assert_eq!(k.label, "E_{0,3}-E_{6,0}");
        assert_eq!(tb.apply(&k.matrix).unwrap(), -&tb.target().ops().j(0));
    }

    #[test]
    fn every_generator_is_hit_once() {
        for (s, n) in [(Series::D, 2), (Series::B, 2), (Series::D, 3), (Series::B, 1)] {
            let t = Theta::new(s, n).unwrap();
            assert_eq!(t.domain().len(), t.target().len());
            for g in t.target().gens() {
                assert!(t.preimage(g.kind).is_some(), "{}", g.label);
            }
        }
    }
}
