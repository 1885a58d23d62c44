//! Cochain representation: canonical keys, normalization, evaluation,
//! linearity, and the open-only embedding.

mod common;

use common::*;
use ocha_core::cochain::{normalize_wedge, zero_closed_space, DegreeKind, Normalized};
use ocha_core::combinatorics::koszul_sign;
use ocha_core::graded::Vector;
use ocha_core::{brace, hat_action, OCCochain, Scalar, Sign};
use rand::seq::SliceRandom;
use rand::Rng;

#[test]
fn normalize_sorted_word_is_plus() {
    let b = space("B", 2, &[("p", 0), ("q", 1), ("r", 2)]);
    match normalize_wedge(&b, &[0, 1, 2]).unwrap() {
        Normalized::Word { word, sign } => {
            assert_eq!(word.factors(), &[0, 1, 2]);
            assert_eq!(sign, Sign::Plus);
        }
        Normalized::Zero => panic!("not zero"),
    }
}

#[test]
fn normalize_swapped_odds_is_minus() {
    // Both of shifted degree −1.
    let b = space("B", 2, &[("p", 1), ("q", 1)]);
    match normalize_wedge(&b, &[1, 0]).unwrap() {
        Normalized::Word { word, sign } => {
            assert_eq!(word.factors(), &[0, 1]);
            assert_eq!(sign, Sign::Minus);
        }
        Normalized::Zero => panic!("not zero"),
    }
}

#[test]
fn normalize_repeated_odd_is_zero() {
    let b = space("B", 2, &[("p", 1), ("q", 0)]);
    assert_eq!(normalize_wedge(&b, &[0, 1, 0]).unwrap(), Normalized::Zero);
    // Even repeats survive.
    assert!(matches!(
        normalize_wedge(&b, &[1, 1]).unwrap(),
        Normalized::Word { .. }
    ));
}

#[test]
fn normalize_unknown_label_is_error() {
    let b = space("B", 2, &[("p", 1)]);
    assert!(normalize_wedge(&b, &[3]).is_err());
}

#[test]
fn normalize_sign_matches_inversion_count_oracle() {
    let mut r = rng(11);
    let b = space("B", 2, &[("p", 0), ("q", 1), ("r", 2), ("s", 3)]);
    for _ in 0..200 {
        let len = r.gen_range(1..=4usize);
        let factors: Vec<u32> = (0..len).map(|_| r.gen_range(0..4u32)).collect();
        let normalized = normalize_wedge(&b, &factors).unwrap();
        // Oracle: stable argsort permutation and the inversion-pair formula.
        let mut order: Vec<usize> = (0..len).collect();
        order.sort_by_key(|&i| (factors[i], i));
        let mut perm = vec![0usize; len];
        for (new_pos, &orig) in order.iter().enumerate() {
            perm[orig] = new_pos;
        }
        let degrees: Vec<i64> = factors.iter().map(|&i| b.shifted_degree(i)).collect();
        let expected_sign = koszul_sign(&degrees, &perm).unwrap();
        let mut sorted = factors.clone();
        sorted.sort();
        let repeated_odd = sorted
            .windows(2)
            .any(|p| p[0] == p[1] && b.shifted_degree(p[0]) % 2 != 0);
        match normalized {
            Normalized::Zero => assert!(repeated_odd),
            Normalized::Word { word, sign } => {
                assert!(!repeated_odd);
                assert_eq!(word.factors(), &sorted[..]);
                assert_eq!(sign, expected_sign);
            }
        }
    }
}

#[test]
fn canonical_key_invariant_unsorted_and_sorted_inserts_agree() {
    let b = space("B", 2, &[("p", 1), ("q", 2), ("r", 1)]);
    let a = space("A", 1, &[("a", 0)]);
    let mut via_unsorted = OCCochain::zero(&b, &a, &a);
    via_unsorted
        .add_entry(&[2, 1, 0], &[0], 0, &Scalar::from_int(3))
        .unwrap();
    let mut via_sorted = OCCochain::zero(&b, &a, &a);
    // Sorting (r,q,p) -> (p,q,r) moves r past q (even·odd -> +) then past p
    // (odd·odd -> −), and q past p (even -> +): net sign −1.
    via_sorted
        .add_entry(&[0, 1, 2], &[0], 0, &Scalar::from_int(-3))
        .unwrap();
    assert_eq!(via_unsorted, via_sorted);
}

#[test]
fn evaluate_returns_stored_constants_verbatim() {
    let (b, a, _l, q) = circle_pullback();
    let y = Vector::basis(&b, 0).unwrap();
    let got = q.evaluate(&[y], &[]).unwrap();
    assert_eq!(got.coeff(0), Scalar::one());
    let x = Vector::basis(&a, 0).unwrap();
    let got = q.evaluate(&[], &[x.clone(), x]).unwrap();
    assert_eq!(got.coeff(0), Scalar::one());
}

#[test]
fn evaluate_on_repeated_odd_closed_inputs_is_zero() {
    // p has odd shifted degree; graded symmetry forces D(p, p; ..) = 0.
    let b = space("B", 2, &[("p", 1), ("q", 2)]);
    let a = space("A", 1, &[("a", 0)]);
    let mut d = OCCochain::zero(&b, &a, &a);
    d.add_entry(&[0, 1], &[], 0, &Scalar::one()).unwrap();
    let p = Vector::basis(&b, 0).unwrap();
    let got = d.evaluate(&[p.clone(), p], &[]).unwrap();
    assert!(got.is_zero());
}

#[test]
fn evaluate_is_graded_symmetric_under_permutations() {
    let mut r = rng(23);
    for trial in 0..30 {
        let b = random_closed_space(&mut r, 3);
        let a = random_open_space(&mut r, 2);
        let l = r.gen_range(1..=4u32);
        let k = r.gen_range(0..=1u32);
        let d = random_endo_cochain(&mut r, &b, &a, &[(l, k)], 4);
        // Random closed basis inputs, possibly with repeats.
        let ys: Vec<u32> = (0..l).map(|_| r.gen_range(0..b.dim())).collect();
        let xs: Vec<u32> = (0..k).map(|_| r.gen_range(0..a.dim())).collect();
        let mut perm: Vec<usize> = (0..l as usize).collect();
        perm.shuffle(&mut r);
        let y_vecs: Vec<Vector> = ys
            .iter()
            .map(|&i| Vector::basis(&b, i).unwrap())
            .collect();
        let x_vecs: Vec<Vector> = xs
            .iter()
            .map(|&i| Vector::basis(&a, i).unwrap())
            .collect();
        // permuted[new_pos] = y[orig] with perm[orig] = new_pos.
        let mut permuted = y_vecs.clone();
        for (orig, &new_pos) in perm.iter().enumerate() {
            permuted[new_pos] = y_vecs[orig].clone();
        }
        let degrees: Vec<i64> = ys.iter().map(|&i| b.shifted_degree(i)).collect();
        let sign = koszul_sign(&degrees, &perm).unwrap();
        let direct = d.evaluate(&y_vecs, &x_vecs).unwrap();
        let via_perm = d.evaluate(&permuted, &x_vecs).unwrap();
        assert_eq!(
            via_perm,
            direct.scale(&sign.scalar()),
            "trial {trial}: graded symmetry violated"
        );
    }
}

#[test]
fn add_and_scale_are_linear_under_evaluation() {
    let mut r = rng(37);
    let b = random_closed_space(&mut r, 2);
    let a = random_open_space(&mut r, 2);
    let d = random_endo_cochain(&mut r, &b, &a, &[(1, 1), (0, 2)], 3);
    let e = random_endo_cochain(&mut r, &b, &a, &[(1, 1), (2, 0)], 3);
    let zero = OCCochain::zero(&b, &a, &a);
    assert_eq!(d.add(&zero).unwrap(), d);
    assert!(d.scale(&Scalar::from_int(-1)).add(&d).unwrap().is_zero());
    let sum = d.add(&e).unwrap();
    for _ in 0..10 {
        let ys = vec![Vector::basis(&b, r.gen_range(0..b.dim())).unwrap()];
        let xs = vec![Vector::basis(&a, r.gen_range(0..a.dim())).unwrap()];
        let lhs = sum.evaluate(&ys, &xs).unwrap();
        let rhs = d
            .evaluate(&ys, &xs)
            .unwrap()
            .add(&e.evaluate(&ys, &xs).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn degree_bookkeeping_matches_evaluation() {
    // |φ(b; a)| = |φ| + Σ|b| + Σ|a| for every stored entry.
    let mut r = rng(41);
    for _ in 0..20 {
        let b = random_closed_space(&mut r, 3);
        let a = random_open_space(&mut r, 2);
        let degree = r.gen_range(-2..=3);
        let d = random_oc_cochain(&mut r, &b, &a, &a, degree, &[(1, 1), (2, 0), (0, 2)], 3);
        match d.degree() {
            DegreeKind::Zero => {}
            DegreeKind::Homogeneous(found) => assert_eq!(found, degree),
            DegreeKind::Mixed => panic!("random cochain must be homogeneous"),
        }
        for (&(l, k), comp) in d.components() {
            let _ = (l, k);
            for (key, target) in comp {
                for (&out, _) in target {
                    assert_eq!(d.entry_degree(key, out), degree);
                }
            }
        }
    }
}

#[test]
fn embed_round_trips_and_kills_hat() {
    let (b, l) = sl2_lie();
    let (_a, m) = dual_numbers_m(&zero_closed_space());
    let embedded = m.embed_into(&b).unwrap();
    assert_eq!(embedded.project_open(), m);
    // The closed-string action vanishes on open-only cochains.
    let hat = hat_action(&l, &embedded, None).unwrap();
    assert!(hat.is_zero());
    // Embedding intertwines the brace: embed(m){embed(m)} = embed(m{m}).
    let lhs = brace(&embedded, &[&embedded], None).unwrap();
    let rhs = brace(&m, &[&m], None).unwrap().embed_into(&b).unwrap();
    assert_eq!(lhs, rhs);
}

#[test]
fn embed_rejects_closed_components() {
    let (b, _a, _l, q) = circle_pullback();
    // q has a (1,0) component, so it is not open-only.
    assert!(q.project_open().embed_into(&b).is_ok());
    assert!(q.embed_into(&b).is_err());
}

#[test]
fn homogeneous_parts_recombine() {
    let b = space("B", 2, &[("p", 1), ("q", 2)]);
    let a = space("A", 1, &[("a", 0), ("c", 1)]);
    let mut d = OCCochain::zero(&b, &a, &a);
    d.add_entry(&[0], &[0], 0, &Scalar::one()).unwrap();
    d.add_entry(&[1], &[1], 0, &Scalar::from_int(2)).unwrap();
    assert_eq!(d.degree(), DegreeKind::Mixed);
    let parts = d.homogeneous_parts();
    assert_eq!(parts.len(), 2);
    let mut sum = OCCochain::zero(&b, &a, &a);
    for part in parts.values() {
        assert!(part.degree().homogeneous().is_some());
        sum = sum.add(part).unwrap();
    }
    assert_eq!(sum, d);
}
