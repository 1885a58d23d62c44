//! Shared helpers for the integration tests: deterministic random cochains
//! and small algebra fixtures.

#![allow(dead_code)]

use ocha_core::cochain::{open_tuples, wedge_basis};
use ocha_core::graded::GradedSpace;
use ocha_core::{OCCochain, Scalar, Space, SymCochain};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn space(name: &str, shift: i64, basis: &[(&str, i64)]) -> Space {
    GradedSpace::new(
        name,
        shift,
        basis.iter().map(|&(l, d)| (l.to_string(), d)),
    )
    .unwrap()
}

/// Closed space with a mix of parities, dimension 2 or 3.
pub fn random_closed_space(rng: &mut ChaCha8Rng, max_dim: u32) -> Space {
    let dim = rng.gen_range(1..=max_dim.max(1));
    let basis: Vec<(String, i64)> = (0..dim)
        .map(|i| (format!("b{i}"), rng.gen_range(0..=3)))
        .collect();
    GradedSpace::new("B", 2, basis).unwrap()
}

pub fn random_open_space(rng: &mut ChaCha8Rng, max_dim: u32) -> Space {
    let dim = rng.gen_range(1..=max_dim.max(1));
    let basis: Vec<(String, i64)> = (0..dim)
        .map(|i| (format!("a{i}"), rng.gen_range(0..=2)))
        .collect();
    GradedSpace::new("A", 1, basis).unwrap()
}

fn nonzero_coeff(rng: &mut ChaCha8Rng) -> Scalar {
    let options = [-2i64, -1, 1, 2];
    Scalar::from_int(*options.choose(rng).unwrap())
}

/// Random homogeneous open-closed cochain of the requested shifted degree
/// with support among the given components; may come out zero when no cell
/// has the requested degree.
pub fn random_oc_cochain(
    rng: &mut ChaCha8Rng,
    b: &Space,
    a: &Space,
    target: &Space,
    degree: i64,
    components: &[(u32, u32)],
    entries_per_component: usize,
) -> OCCochain {
    let mut out = OCCochain::zero(b, a, target);
    for &(l, k) in components {
        let mut cells = Vec::new();
        for w in wedge_basis(b, l) {
            for t in open_tuples(a, k) {
                for o in 0..target.dim() {
                    let closed_sum: i64 =
                        w.factors().iter().map(|&i| b.shifted_degree(i)).sum();
                    let open_sum: i64 = t.iter().map(|&i| a.shifted_degree(i)).sum();
                    if target.shifted_degree(o) - closed_sum - open_sum == degree {
                        cells.push((w.clone(), t.clone(), o));
                    }
                }
            }
        }
        cells.shuffle(rng);
        for (w, t, o) in cells.into_iter().take(entries_per_component) {
            let c = nonzero_coeff(rng);
            out.add_entry(w.factors(), &t, o, &c).unwrap();
        }
    }
    out
}

/// Random homogeneous cochain over `(B; A, A)`, trying several degrees until
/// the result is nonzero.
pub fn random_endo_cochain(
    rng: &mut ChaCha8Rng,
    b: &Space,
    a: &Space,
    components: &[(u32, u32)],
    entries: usize,
) -> OCCochain {
    for _ in 0..12 {
        let degree = rng.gen_range(-2..=3);
        let c = random_oc_cochain(rng, b, a, a, degree, components, entries);
        if !c.is_zero() {
            return c;
        }
    }
    random_oc_cochain(rng, b, a, a, 1, components, entries)
}

pub fn random_sym_cochain(
    rng: &mut ChaCha8Rng,
    b: &Space,
    degree: i64,
    arities: &[u32],
    entries_per_arity: usize,
) -> SymCochain {
    let mut out = SymCochain::zero(b, b);
    for &l in arities {
        let mut cells = Vec::new();
        for w in wedge_basis(b, l) {
            for o in 0..b.dim() {
                let closed_sum: i64 =
                    w.factors().iter().map(|&i| b.shifted_degree(i)).sum();
                if b.shifted_degree(o) - closed_sum == degree {
                    cells.push((w.clone(), o));
                }
            }
        }
        cells.shuffle(rng);
        for (w, o) in cells.into_iter().take(entries_per_arity) {
            let c = nonzero_coeff(rng);
            out.add_entry(w.factors(), o, &c).unwrap();
        }
    }
    out
}

// ---- fixtures ----------------------------------------------------------

/// Abelian closed structure: a two-term acyclic complex, `d(u) = v`.
pub fn abelian_l() -> (Space, SymCochain) {
    let b = space("B", 2, &[("u", 1), ("v", 2)]);
    let mut l = SymCochain::zero(&b, &b);
    l.add_entry(&[0], 1, &Scalar::one()).unwrap();
    (b, l)
}

/// Two-dimensional Lie algebra `[e, f] = e`, encoded with odd shifted
/// degrees so the wedge realizes the antisymmetry of the bracket.
pub fn two_dim_lie() -> (Space, SymCochain) {
    let b = space("B", 2, &[("e", 1), ("f", 1)]);
    let mut l = SymCochain::zero(&b, &b);
    l.add_entry(&[0, 1], 0, &Scalar::one()).unwrap();
    (b, l)
}

/// The three-dimensional simple Lie algebra: `[e,f]=h, [h,e]=2e, [h,f]=−2f`,
/// with a genuinely nontrivial Jacobi check at arity three.
pub fn sl2_lie() -> (Space, SymCochain) {
    let b = space("B", 2, &[("e", 1), ("f", 1), ("h", 1)]);
    let mut l = SymCochain::zero(&b, &b);
    // l2(e∧f) = h, l2(e∧h) = −[h,e] = −2e, l2(f∧h) = −[h,f] = 2f.
    l.add_entry(&[0, 1], 2, &Scalar::one()).unwrap();
    l.add_entry(&[0, 2], 0, &Scalar::from_int(-2)).unwrap();
    l.add_entry(&[1, 2], 1, &Scalar::from_int(2)).unwrap();
    (b, l)
}

/// A dg Lie algebra with nonzero differential and bracket:
/// `d(x) = y`, `[x, y] = y`.
pub fn dg_lie() -> (Space, SymCochain) {
    let b = space("B", 2, &[("x", 1), ("y", 2)]);
    let mut l = SymCochain::zero(&b, &b);
    l.add_entry(&[0], 1, &Scalar::one()).unwrap();
    l.add_entry(&[0, 1], 1, &Scalar::one()).unwrap();
    (b, l)
}

/// A broken variant: the differential fails to be a derivation of the
/// bracket, so the structure equation fails at arity two.
pub fn broken_dg_lie() -> (Space, SymCochain) {
    let b = space("B", 2, &[("x", 1), ("y", 2), ("w", 3)]);
    let mut l = SymCochain::zero(&b, &b);
    l.add_entry(&[0], 1, &Scalar::one()).unwrap();
    l.add_entry(&[1, 1], 2, &Scalar::one()).unwrap();
    (b, l)
}

/// The dual numbers `k[x]/(x²)` in degree 0 as an open-only structure over
/// the given ambient closed space.
pub fn dual_numbers_m(b: &Space) -> (Space, OCCochain) {
    let a = space("A", 1, &[("e", 0), ("x", 0)]);
    let mut m = OCCochain::zero(b, &a, &a);
    m.add_entry(&[], &[0, 0], 0, &Scalar::one()).unwrap();
    m.add_entry(&[], &[0, 1], 1, &Scalar::one()).unwrap();
    m.add_entry(&[], &[1, 0], 1, &Scalar::one()).unwrap();
    (a, m)
}

/// The ground field as a one-dimensional unital algebra.
pub fn unit_algebra_m(b: &Space) -> (Space, OCCochain) {
    let a = space("A", 1, &[("e", 0)]);
    let mut m = OCCochain::zero(b, &a, &a);
    m.add_entry(&[], &[0, 0], 0, &Scalar::one()).unwrap();
    (a, m)
}

/// The finite surrogate of the pullback structure: closed side a circle
/// model `{1M, th}` with zero differential, open side one-dimensional, the
/// closed-to-open map sending `1M ↦ 1N`.
pub fn circle_pullback() -> (Space, Space, SymCochain, OCCochain) {
    let b = space("B", 2, &[("1M", 0), ("th", 1)]);
    let a = space("A", 1, &[("1N", 0)]);
    let l = SymCochain::zero(&b, &b);
    let mut q = OCCochain::zero(&b, &a, &a);
    q.add_entry(&[], &[0, 0], 0, &Scalar::one()).unwrap();
    q.add_entry(&[0], &[], 0, &Scalar::one()).unwrap();
    (b, a, l, q)
}
