//! Property tests over random weights of small affine algebras.

use kacmoody::affine_weights::{
    affine_dominant_conjugate, affine_inner, affine_leq, affine_reflection, is_dominant, AffineWeight,
};
use kacmoody::casimir_audit::{casimir_shift, AffineGram, RootCombination};
use kacmoody::rational::{frac, q, Q};
use kacmoody::reports::parse_weight_expr;
use kacmoody::root_core::{FiniteWeight, FormSign, RootSystem};
use proptest::prelude::*;

const TYPES: [&str; 6] = ["A1", "A2", "B2", "C2", "G2", "A3"];

fn rs(s: &str) -> RootSystem {
    RootSystem::build(s.parse().unwrap(), FormSign::Positive).unwrap()
}

fn small_q() -> impl Strategy<Value = Q> {
    (-12i64..=12, 1i64..=4).prop_map(|(n, d)| frac(n, d))
}

fn weight(rank: usize) -> impl Strategy<Value = AffineWeight> {
    (prop::collection::vec(small_q(), rank), small_q(), small_q())
        .prop_map(|(f, d, k)| AffineWeight::compose(FiniteWeight(f), d, k))
}

fn typed_weights(count: usize) -> impl Strategy<Value = (&'static str, Vec<AffineWeight>)> {
    prop::sample::select(TYPES.to_vec())
        .prop_flat_map(move |t| (Just(t), prop::collection::vec(weight(rs(t).rank()), count)))
}

/// Integral weights of positive level, so that the dominant conjugate exists.
fn typed_integral_weight() -> impl Strategy<Value = (&'static str, AffineWeight)> {
    prop::sample::select(TYPES.to_vec()).prop_flat_map(|t| {
        let n = rs(t).rank();
        (prop::collection::vec(-6i64..=6, n), -3i64..=3, 1i64..=3)
            .prop_map(move |(f, d, k)| (t, AffineWeight::compose(FiniteWeight::from_ints(&f), q(d), q(k))))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn compose_inverts_decompose((_, ws) in typed_weights(1)) {
        let w = &ws[0];
        let (f, d, k) = w.decompose();
        prop_assert_eq!(&AffineWeight::compose(f, d, k), w);
    }

    #[test]
    fn inner_product_is_symmetric_and_reflection_invariant((t, ws) in typed_weights(2), i in 0usize..4) {
        let rs = rs(t);
        let i = i % (rs.rank() + 1);
        let (a, b) = (&ws[0], &ws[1]);
        prop_assert_eq!(affine_inner(&rs, a, b), affine_inner(&rs, b, a));
        let (ra, rb) = (affine_reflection(&rs, i, a), affine_reflection(&rs, i, b));
        prop_assert_eq!(affine_inner(&rs, &ra, &rb), affine_inner(&rs, a, b));
        prop_assert_eq!(&affine_reflection(&rs, i, &ra), a);
    }

    #[test]
    fn gram_matrix_agrees_with_inner_product((t, ws) in typed_weights(2)) {
        let rs = rs(t);
        let gram = AffineGram::new(&rs);
        prop_assert_eq!(gram.pairing(&ws[0], &ws[1]), affine_inner(&rs, &ws[0], &ws[1]));
    }

    #[test]
    fn order_is_reflexive_antisymmetric_transitive((t, ws) in typed_weights(3)) {
        let rs = rs(t);
        let (a, b, c) = (&ws[0], &ws[1], &ws[2]);
        prop_assert!(affine_leq(&rs, a, a));
        if affine_leq(&rs, a, b) && affine_leq(&rs, b, a) {
            prop_assert_eq!(a, b);
        }
        if affine_leq(&rs, a, b) && affine_leq(&rs, b, c) {
            prop_assert!(affine_leq(&rs, a, c));
        }
    }

    #[test]
    fn order_is_translation_invariant((t, ws) in typed_weights(3)) {
        let rs = rs(t);
        let (a, b, c) = (&ws[0], &ws[1], &ws[2]);
        prop_assert_eq!(affine_leq(&rs, a, b), affine_leq(&rs, &(a + c), &(b + c)));
    }

    #[test]
    fn casimir_shift_composes(
        t in prop::sample::select(TYPES.to_vec()),
        labels in prop::collection::vec(-3i64..=3, 3),
        b1 in prop::collection::vec(0i64..=2, 4),
        b2 in prop::collection::vec(0i64..=2, 4),
        a in small_q(),
    ) {
        let rs = rs(t);
        let n = rs.rank();
        let gram = AffineGram::new(&rs);
        let lambda = AffineWeight::compose(FiniteWeight::from_ints(&labels[..n]), q(0), q(2));
        let beta1 = RootCombination::new(&rs, b1[..=n].to_vec()).unwrap();
        let beta2 = RootCombination::new(&rs, b2[..=n].to_vec()).unwrap();
        let sum = RootCombination::new(&rs, b1[..=n].iter().zip(&b2[..=n]).map(|(x, y)| x + y).collect()).unwrap();
        let first = casimir_shift(&rs, &gram, &lambda, &beta1, &a).unwrap();
        let mid = &lambda - &beta1.to_weight(&rs);
        let second = casimir_shift(&rs, &gram, &mid, &beta2, &first).unwrap();
        prop_assert_eq!(second, casimir_shift(&rs, &gram, &lambda, &sum, &a).unwrap());
    }

    #[test]
    fn dominant_conjugate_is_dominant_and_above((t, w) in typed_integral_weight()) {
        let rs = rs(t);
        let plus = affine_dominant_conjugate(&rs, &w).unwrap();
        prop_assert!(is_dominant(&rs, &plus).unwrap());
        prop_assert!(affine_leq(&rs, &w, &plus));
        prop_assert_eq!(affine_inner(&rs, &plus, &plus), affine_inner(&rs, &w, &w));
    }

    #[test]
    fn weight_expressions_read_back((t, ws) in typed_weights(1)) {
        let rs = rs(t);
        let w = &ws[0];
        let mut expr = format!("{}*Λ0 + {}*δ", w.level, w.d);
        for (i, x) in w.finite.0.iter().enumerate() {
            expr.push_str(&format!(" + {}ω{}", x, i + 1));
        }
        let expr = expr.replace("+ -", "- ");
        prop_assert_eq!(&parse_weight_expr(&rs, &expr).unwrap(), w);
    }
}
