//! Tests through the public interface, with oracles computed here.

use num_traits::{One, Zero};
use proptest::prelude::*;

use orthoconf::algebra::echelon::{rank, span_rank};
use orthoconf::algebra::monomial::component_dim;
use orthoconf::algebra::rat::{frac, int};
use orthoconf::algebra::{DiffOp, Poly, Rat, SparseMat, SparseVec};
use orthoconf::highest_weight::IrrepData;
use orthoconf::irreducibility::{eta_in_j_span, harmonic_decompose};
use orthoconf::liealg::verify::OpFlattener;
use orthoconf::liealg::{ConfKind, ConformalBasis, Layout, OrthoBasis, Theta};
use orthoconf::mixed::{shen_general, ConformalModule};
use orthoconf::spectral::omega_tilde_matrix;
use orthoconf::{build_irrep, Series, WeightVec};

const NV: usize = 3;

fn small_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(((0u32..3, 0u32..3, 0u32..2), -3i64..4), 0..4)
        .prop_map(|terms| Poly::from_terms(NV, terms.into_iter().map(|((a, b, c), v)| (vec![a, b, c], int(v)))))
}

fn small_op() -> impl Strategy<Value = DiffOp> {
    prop::collection::vec((small_poly(), (0u32..2, 0u32..2, 0u32..2)), 0..3).prop_map(|terms| {
        terms
            .into_iter()
            .fold(DiffOp::zero(NV), |acc, (p, (a, b, c))| &acc + &DiffOp::term(p, vec![a, b, c]))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bracket_is_antisymmetric(a in small_op(), b in small_op()) {
        prop_assert_eq!(a.bracket(&b).unwrap(), -&b.bracket(&a).unwrap());
    }

    #[test]
    fn bracket_satisfies_jacobi(a in small_op(), b in small_op(), c in small_op()) {
        let t1 = a.bracket(&b.bracket(&c).unwrap()).unwrap();
        let t2 = b.bracket(&c.bracket(&a).unwrap()).unwrap();
        let t3 = c.bracket(&a.bracket(&b).unwrap()).unwrap();
        prop_assert!((&(&t1 + &t2) + &t3).is_zero());
    }

    #[test]
    fn bracket_agrees_with_application(a in small_op(), b in small_op(), f in small_poly()) {
        let lhs = a.bracket(&b).unwrap().apply(&f).unwrap();
        let ab = a.apply(&b.apply(&f).unwrap()).unwrap();
        let ba = b.apply(&a.apply(&f).unwrap()).unwrap();
        prop_assert_eq!(lhs, &ab - &ba);
    }

    #[test]
    fn partial_obeys_leibniz(f in small_poly(), g in small_poly(), i in 0usize..NV) {
        let lhs = (&f * &g).partial(i);
        let rhs = &(&f.partial(i) * &g) + &(&f * &g.partial(i));
        prop_assert_eq!(lhs, rhs);
    }
}

fn gram(series: Series, n: usize) -> SparseMat {
    let l = Layout::new(series, n);
    let mut g = SparseMat::zeros(l.size(), l.size());
    for i in 1..=n {
        g.set(l.pos(i), l.pos(n + i), Rat::one());
        g.set(l.pos(n + i), l.pos(i), Rat::one());
    }
    if series == Series::B {
        g.set(0, 0, Rat::one());
    }
    g
}

#[test]
fn orthogonal_bases_preserve_the_form() {
    for (s, n) in [(Series::D, 2), (Series::D, 3), (Series::B, 1), (Series::B, 2), (Series::B, 3)] {
        let o = OrthoBasis::new(s, n).unwrap();
        let g = gram(s, n);
        let m = g.rows();
        assert_eq!(o.len(), m * (m - 1) / 2);
        for e in o.elements() {
            assert!((&(&e.matrix.transpose() * &g) + &(&g * &e.matrix)).is_zero(), "{}", e.label);
        }
        let flat: Vec<SparseVec> = o
            .elements()
            .iter()
            .map(|e| e.matrix.iter().map(|(r, c, v)| (r * m + c, v.clone())).collect())
            .collect();
        assert_eq!(span_rank(&flat), o.len());
    }
}

/// Weyl dimension computed from the root system written out here.
fn weyl_oracle(mu: &WeightVec) -> usize {
    let n = mu.n();
    let half = frac(1, 2);
    let rho: Vec<Rat> = (1..=n)
        .map(|i| {
            let r = int((n - i) as i64);
            if mu.series() == Series::B {
                r + &half
            } else {
                r
            }
        })
        .collect();
    let mut roots: Vec<Vec<Rat>> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for sign in [1, -1] {
                let mut a = vec![Rat::zero(); n];
                a[i] = int(1);
                a[j] = int(sign);
                roots.push(a);
            }
        }
        if mu.series() == Series::B {
            let mut a = vec![Rat::zero(); n];
            a[i] = int(1);
            roots.push(a);
        }
    }
    let dot = |x: &[Rat], y: &[Rat]| x.iter().zip(y).fold(Rat::zero(), |acc, (a, b)| acc + a * b);
    let shifted: Vec<Rat> = mu.coords().iter().zip(&rho).map(|(a, b)| a + b).collect();
    let mut d = Rat::one();
    for a in &roots {
        d *= dot(&shifted, a) / dot(&rho, a);
    }
    assert!(d.is_integer());
    d.to_integer().try_into().unwrap()
}

#[test]
fn irrep_dimensions_match_weyl() {
    for (s, mu) in [
        (Series::D, "1,0"),
        (Series::D, "1,1"),
        (Series::D, "2,-1"),
        (Series::D, "1,1,0"),
        (Series::D, "1/2,1/2,-1/2"),
        (Series::B, "1,0"),
        (Series::B, "1/2,1/2"),
        (Series::B, "2,1"),
        (Series::B, "1/2,1/2,1/2"),
    ] {
        let w = WeightVec::parse(s, mu).unwrap();
        assert_eq!(build_irrep(&w).unwrap().dim(), weyl_oracle(&w), "{s} {mu}");
    }
}

#[test]
fn irrep_json_round_trip() {
    let v = build_irrep(&WeightVec::parse(Series::B, "1/2,1/2").unwrap()).unwrap();
    let back = IrrepData::from_json(&v.to_json()).unwrap();
    assert_eq!(back.matrices(), v.matrices());
    assert_eq!(back.weights(), v.weights());
}

#[test]
fn theta_images_are_independent() {
    for (s, n) in [(Series::D, 2), (Series::B, 2)] {
        let t = Theta::new(s, n).unwrap();
        let mut f = OpFlattener::new();
        let vs: Vec<SparseVec> = (0..t.domain().len()).map(|i| f.flatten(&t.image_of(i))).collect();
        assert_eq!(span_rank(&vs), t.domain().len());
    }
}

#[test]
fn shen_image_of_j0() {
    let c = ConformalBasis::new(2, Series::B).unwrap();
    let l = Layout::new(Series::B, 2);
    let img = shen_general(c.get(ConfKind::J(0))).unwrap();
    let unit = |r: usize, s: usize| SparseMat::unit(5, 5, l.pos(r), l.pos(s));
    let lin = |p: usize| {
        let mut e = vec![0u32; 5];
        e[l.pos(p)] = 1;
        e
    };
    let mut want = std::collections::BTreeMap::new();
    for s in 1..=2 {
        want.insert(lin(s), &unit(0, s) - &unit(2 + s, 0));
        want.insert(lin(2 + s), &unit(0, 2 + s) - &unit(s, 0));
    }
    want.insert(lin(0), SparseMat::identity(5));
    assert_eq!(img.gl, want);
}

fn module(s: Series, mu: &str, b: Rat) -> ConformalModule {
    ConformalModule::new(build_irrep(&WeightVec::parse(s, mu).unwrap()).unwrap(), b).unwrap()
}

fn poly_tensor(m: &ConformalModule, p: &Poly, j: usize) -> SparseVec {
    let mut out = SparseVec::new();
    for (e, c) in p.terms() {
        for (i, v) in m.basis_vector(e, j) {
            *out.entry(i).or_insert_with(Rat::zero) += v * c;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

#[test]
fn phi_commutes_with_the_even_part() {
    let m = module(Series::D, "1,0", frac(2, 5));
    let phi = m.phi(2).unwrap();
    for kind in [ConfKind::A(1, 2), ConfKind::A(2, 2), ConfKind::B(1, 2), ConfKind::C(1, 2)] {
        let a = m.act_conformal(kind, 2).unwrap();
        assert_eq!(&a * &phi, &phi * &a, "{}", kind.label());
    }
    let m = module(Series::B, "1,0", frac(2, 5));
    let phi = m.phi(2).unwrap();
    for kind in [ConfKind::K(1), ConfKind::K(4), ConfKind::A(2, 1)] {
        let a = m.act_conformal(kind, 2).unwrap();
        assert_eq!(&a * &phi, &phi * &a, "{}", kind.label());
    }
}

#[test]
fn j_action_splits_through_degree_one() {
    for (s, mu) in [(Series::D, "1,0"), (Series::B, "1/2,1/2")] {
        let b = frac(1, 3);
        let m = module(s, mu, b.clone());
        let ops = *m.ops();
        let layout = ops.layout();
        let wt = omega_tilde_matrix(m.irrep()).unwrap().matrix;
        let d = m.irrep().dim();
        let eta = ops.eta();
        for l in 1..=2u32 {
            let mono = orthoconf::algebra::monomial_basis(m.nvars(), l);
            for g in mono.iter().take(6) {
                let gp = Poly::monomial(m.nvars(), g.clone(), Rat::one());
                for r in layout.indices() {
                    let j = m.act_conformal(ConfKind::J(r), i64::from(l)).unwrap();
                    for v in 0..d {
                        let mut lhs = j.mul_vec(&m.basis_vector(g, v));
                        let dg = gp.partial(layout.pos(layout.dual(r)));
                        for (i, c) in poly_tensor(&m, &(&eta * &dg), v) {
                            *lhs.entry(i).or_insert_with(Rat::zero) += c;
                        }
                        lhs.retain(|_, c| !c.is_zero());
                        let mut e1 = vec![0u32; m.nvars()];
                        e1[layout.pos(r)] = 1;
                        let x = m.basis_vector(&e1, v);
                        let shift = SparseMat::scalar(wt.rows(), &(int(i64::from(l)) + &b));
                        let w = (&shift + &wt).mul_vec(&x);
                        let rhs = m.multiply(&gp, 1).unwrap().mul_vec(&w);
                        assert_eq!(lhs, rhs, "{s} l={l} r={r} g={g:?} v={v}");
                    }
                }
            }
        }
    }
}

#[test]
fn eta_lies_in_the_j_span_off_the_critical_line() {
    let m = module(Series::D, "1,0", frac(1, 3));
    for l in 1..=3 {
        assert!(eta_in_j_span(&m, l).unwrap());
    }
    // 2b + 1 - 2n + l = 0 at b = 1, l = 2.
    let m = module(Series::D, "0,0", int(1));
    assert!(!eta_in_j_span(&m, 1).unwrap());
}

#[test]
fn harmonic_dimensions() {
    for (s, n) in [(Series::D, 2), (Series::D, 3), (Series::B, 1), (Series::B, 2)] {
        let nv = s.matrix_size(n);
        for k in 0..=4u32 {
            let (h, rep) = harmonic_decompose(k, n, s).unwrap();
            assert!(rep.passed(), "{rep}");
            let below = if k >= 2 { component_dim(nv, k - 2) } else { 0 };
            assert_eq!(h.harmonic.len(), component_dim(nv, k) - below, "{s} n={n} k={k}");
        }
    }
}

#[test]
fn module_axiom_on_degree_two() {
    let m = module(Series::B, "1/2,1/2", frac(-3, 2));
    let dom = m.theta().domain();
    let picks = [0, 3, 7, 12, 20];
    for &a in &picks {
        for b in 0..dom.len() {
            let (sa, sb) = (m.ortho_shift(a), m.ortho_shift(b));
            let br = dom.bracket(a, b);
            if br.is_empty() {
                let ab = &m.act_ortho(a, 2 + sb).unwrap() * &m.act_ortho(b, 2).unwrap();
                let ba = &m.act_ortho(b, 2 + sa).unwrap() * &m.act_ortho(a, 2).unwrap();
                assert!((&ab - &ba).is_zero());
                continue;
            }
            let lhs = m.act_coords(&br, 2).unwrap();
            let ab = &m.act_ortho(a, 2 + sb).unwrap() * &m.act_ortho(b, 2).unwrap();
            let ba = &m.act_ortho(b, 2 + sa).unwrap() * &m.act_ortho(a, 2).unwrap();
            assert_eq!(lhs, &ab - &ba);
        }
    }
}

#[test]
fn phi_rank_drops_exactly_at_critical_b() {
    let m = module(Series::D, "1,0", int(3));
    assert_eq!(rank(&m.phi(1).unwrap()), 15);
    assert_eq!(rank(&m.with_b(frac(1, 3)).phi(1).unwrap()), 16);
}
