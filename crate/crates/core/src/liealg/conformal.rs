//! The conformal algebras as first-order differential operators.

use std::collections::HashMap;

use num_traits::One;
use serde::Serialize;

use super::ortho::Layout;
use crate::algebra::rat::{half, int};
use crate::algebra::{DiffOp, Poly, Rat};
use crate::error::Result;
use crate::weights::Series;

/// Generator type; indices are labels (`1..=2n`, plus 0 for B).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ConfKind {
    D,
    Partial(usize),
    J(usize),
    A(usize, usize),
    B(usize, usize),
    C(usize, usize),
    K(usize),
}

impl ConfKind {
    pub fn label(&self) -> String {
        match *self {
            ConfKind::D => "D".into(),
            ConfKind::Partial(r) => format!("d_{{{r}}}"),
            ConfKind::J(r) => format!("J_{{{r}}}"),
            ConfKind::A(i, j) => format!("A_{{{i},{j}}}"),
            ConfKind::B(i, j) => format!("B_{{{i},{j}}}"),
            ConfKind::C(i, j) => format!("C_{{{i},{j}}}"),
            ConfKind::K(s) => format!("K_{{{s}}}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ConformalGen {
    pub kind: ConfKind,
    pub label: String,
    pub op: DiffOp,
}

/// Operator factory over the variables of a layout.
#[derive(Clone, Copy, Debug)]
pub struct Ops {
    layout: Layout,
}

impl Ops {
    pub fn new(series: Series, n: usize) -> Self {
        Ops {
            layout: Layout::new(series, n),
        }
    }

    pub fn layout(&self) -> Layout {
        self.layout
    }

    pub fn nvars(&self) -> usize {
        self.layout.size()
    }

    pub fn x(&self, r: usize) -> Poly {
        Poly::var(self.nvars(), self.layout.pos(r))
    }

    pub fn d(&self, r: usize) -> DiffOp {
        DiffOp::partial(self.nvars(), self.layout.pos(r))
    }

    /// `x_r d_s`.
    pub fn xd(&self, r: usize, s: usize) -> DiffOp {
        DiffOp::x_d(self.nvars(), self.layout.pos(r), self.layout.pos(s))
    }

    pub fn euler(&self) -> DiffOp {
        let mut out = DiffOp::zero(self.nvars());
        for r in self.layout.indices() {
            out = &out + &self.xd(r, r);
        }
        out
    }

    /// The invariant quadratic form.
    pub fn eta(&self) -> Poly {
        let n = self.layout.n;
        let mut p = Poly::zero(self.nvars());
        for i in 1..=n {
            p = &p + &(&self.x(i) * &self.x(n + i));
        }
        if self.layout.series == Series::B {
            p = &p + &self.x(0).pow(2).scale(&half());
        }
        p
    }

    /// The invariant Laplacian.
    pub fn laplacian(&self) -> DiffOp {
        let n = self.layout.n;
        let mut out = DiffOp::zero(self.nvars());
        let c = match self.layout.series {
            Series::D => Rat::one(),
            Series::B => int(2),
        };
        for r in 1..=n {
            out = &out + &(&self.d(r) * &self.d(n + r)).scale(&c);
        }
        if self.layout.series == Series::B {
            out = &out + &(&self.d(0) * &self.d(0));
        }
        out
    }

    /// `J_r = x_r D - eta d_{r*}` where `r*` is the dual index.
    pub fn j(&self, r: usize) -> DiffOp {
        let xd = DiffOp::multiplication(self.x(r)).compose(&self.euler()).expect("same variables");
        let rest = self.d(self.layout.dual(r)).premultiply(&self.eta()).expect("same variables");
        &xd - &rest
    }

    pub fn a(&self, i: usize, j: usize) -> DiffOp {
        let n = self.layout.n;
        &self.xd(i, j) - &self.xd(n + j, n + i)
    }

    pub fn b(&self, i: usize, j: usize) -> DiffOp {
        let n = self.layout.n;
        &self.xd(i, n + j) - &self.xd(j, n + i)
    }

    pub fn c(&self, i: usize, j: usize) -> DiffOp {
        let n = self.layout.n;
        &self.xd(n + i, j) - &self.xd(n + j, i)
    }

    /// `K_s` for `s` in `1..=2n`: `x_0 d_s - x_{s*} d_0`.
    pub fn k(&self, s: usize) -> DiffOp {
        &self.xd(0, s) - &self.xd(self.layout.dual(s), 0)
    }

    pub fn op(&self, kind: ConfKind) -> DiffOp {
        match kind {
            ConfKind::D => self.euler(),
            ConfKind::Partial(r) => self.d(r),
            ConfKind::J(r) => self.j(r),
            ConfKind::A(i, j) => self.a(i, j),
            ConfKind::B(i, j) => self.b(i, j),
            ConfKind::C(i, j) => self.c(i, j),
            ConfKind::K(s) => self.k(s),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ConformalBasis {
    ops: Ops,
    gens: Vec<ConformalGen>,
    lookup: HashMap<ConfKind, usize>,
}

impl ConformalBasis {
    pub fn new(n: usize, series: Series) -> Result<Self> {
        series.check_rank(n)?;
        let ops = Ops::new(series, n);
        let layout = ops.layout();
        let mut kinds = vec![ConfKind::D];
        kinds.extend(layout.indices().into_iter().map(ConfKind::Partial));
        kinds.extend(layout.indices().into_iter().map(ConfKind::J));
        for i in 1..=n {
            for j in 1..=n {
                kinds.push(ConfKind::A(i, j));
            }
        }
        for i in 1..=n {
            for j in i + 1..=n {
                kinds.push(ConfKind::B(i, j));
            }
        }
        for i in 1..=n {
            for j in i + 1..=n {
                kinds.push(ConfKind::C(i, j));
            }
        }
        if series == Series::B {
            kinds.extend((1..=2 * n).map(ConfKind::K));
        }
        let gens: Vec<ConformalGen> = kinds
            .into_iter()
            .map(|kind| ConformalGen {
                kind,
                label: kind.label(),
                op: ops.op(kind),
            })
            .collect();
        let lookup = gens.iter().enumerate().map(|(i, g)| (g.kind, i)).collect();
        Ok(ConformalBasis { ops, gens, lookup })
    }

    pub fn ops(&self) -> &Ops {
        &self.ops
    }

    pub fn series(&self) -> Series {
        self.ops.layout.series
    }

    pub fn rank(&self) -> usize {
        self.ops.layout.n
    }

    pub fn nvars(&self) -> usize {
        self.ops.nvars()
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn gens(&self) -> &[ConformalGen] {
        &self.gens
    }

    pub fn index_of(&self, kind: ConfKind) -> Option<usize> {
        self.lookup.get(&kind).copied()
    }

    pub fn get(&self, kind: ConfKind) -> &DiffOp {
        &self.gens[self.lookup[&kind]].op
    }
}

pub fn build_conformal(n: usize, series: Series) -> Result<ConformalBasis> {
    ConformalBasis::new(n, series)
}
