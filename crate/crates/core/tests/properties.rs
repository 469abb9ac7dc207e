//! Cross-module invariants of the constructions.

use num_rational::Ratio;
use proptest::prelude::*;

use zcap_core::arrays::{max_zcz_rect, zcap_check, RootArray};
use zcap_core::constructions::{
    corollary1_combine, corollary1_combine_with, lemma6_base, theorem1_combine, theorem2_direct,
    CombineOptions, Theorem2Params,
};
use zcap_core::sequences::max_zcz;
use zcap_core::{gdj_pair, Companion, Permutation, RootVector, ZqVector};

fn perm_strategy(m: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=m).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::new(images).unwrap())
}

/// `(q, m, π, v)` for a Golay pair.
fn gdj_strategy(
    qs: Vec<u32>,
    max_m: usize,
) -> impl Strategy<Value = (u32, usize, Permutation, Vec<i64>)> {
    (prop::sample::select(qs), 1..=max_m).prop_flat_map(|(q, m)| {
        (
            Just(q),
            Just(m),
            perm_strategy(m),
            proptest::collection::vec(0..q as i64, m + 1),
        )
    })
}

fn binary_pair() -> impl Strategy<Value = (ZqVector, ZqVector)> {
    prop_oneof![
        Just(lemma6_base()),
        gdj_strategy(vec![2], 4)
            .prop_map(|(q, m, p, v)| gdj_pair(q, m, &p, &v, Companion::First).unwrap()),
        (1usize..=12).prop_flat_map(|len| {
            (
                proptest::collection::vec(0u32..2, len),
                proptest::collection::vec(0u32..2, len),
            )
                .prop_map(|(a, b)| (ZqVector::new(2, a).unwrap(), ZqVector::new(2, b).unwrap()))
        }),
    ]
}

fn lifted(a: &zcap_core::Zq2DArray) -> RootArray {
    RootArray::lift(a, a.q()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn theorem1_meets_input_widths(
        (a, b) in binary_pair(),
        (q, m, perm, v) in gdj_strategy(vec![2, 4, 8], 3),
        alt in any::<bool>(),
    ) {
        let companion = if alt { Companion::Last } else { Companion::First };
        let (c, d) = gdj_pair(q, m, &perm, &v, companion).unwrap();
        let (a, b) = (RootVector::from(&a), RootVector::from(&b));
        let (c, d) = (RootVector::from(&c), RootVector::from(&d));
        let z1 = max_zcz(&a, &b).unwrap().width;
        let out = theorem1_combine(&a, &b, &c, &d).unwrap();
        prop_assert_eq!((out.z1, out.z2), (z1, c.len()));
        let cert = zcap_check(&out.s, &out.t, z1, c.len()).unwrap();
        prop_assert!(cert.verified);
        prop_assert_eq!(cert.peak, 2 * (a.len() * c.len()) as i64);
    }

    #[test]
    fn corollary1_lifts_to_theorem1(
        (a, b) in binary_pair(),
        (q, m, perm, v) in gdj_strategy(vec![2, 4, 8, 16], 3),
    ) {
        let (c, d) = gdj_pair(q, m, &perm, &v, Companion::First).unwrap();
        let zq = corollary1_combine(&a, &b, &c, &d).unwrap();
        let complex = theorem1_combine(
            &RootVector::from(&a),
            &RootVector::from(&b),
            &RootVector::from(&c),
            &RootVector::from(&d),
        )
        .unwrap();
        prop_assert_eq!(lifted(&zq.s).lift_to(complex.s.modulus()).unwrap(), complex.s);
        prop_assert_eq!(lifted(&zq.t).lift_to(complex.t.modulus()).unwrap(), complex.t);
    }

    #[test]
    fn theorem2_companion_and_ratio(
        (q, m, perm, v) in gdj_strategy(vec![2, 4, 6], 3),
        n_seed in 0usize..4,
    ) {
        let n = n_seed % (m + 1);
        let p = Theorem2Params::new(q, m, n, perm.clone(), v).unwrap();
        let out = theorem2_direct(&p).unwrap();
        let (rows, cols) = p.dims();
        let half = q / 2;
        // y_{π(1)} sits in the row index when π(1) <= n, else in the column index
        let pivot = perm.at(1);
        for i in 0..rows {
            for g in 0..cols {
                let bit = if pivot <= n {
                    (i >> (n - pivot)) & 1
                } else {
                    (g >> (m - pivot)) & 1
                } as u32;
                prop_assert_eq!(out.t.get(i, g), (out.s.get(i, g) + half * bit) % q);
            }
        }
        let frontier = max_zcz_rect(&lifted(&out.s), &lifted(&out.t)).unwrap();
        prop_assert!(frontier.best_ratio() >= Ratio::new(6, 7));
        let (z1, z2) = p.zone();
        prop_assert!(frontier.admits(z1, z2));
    }
}

#[test]
fn gcap_from_two_golay_pairs() {
    let signs = |s: &[i8]| RootVector::from_signs(s).unwrap();
    let a = signs(&[1, 1, 1, -1, 1, 1, -1, 1]);
    let b = signs(&[1, 1, 1, -1, -1, -1, 1, -1]);
    assert!(max_zcz(&a, &b).unwrap().is_gcp());
    let (c, d) = gdj_pair(
        4,
        3,
        &Permutation::identity(3),
        &[1, 0, 3, 2],
        Companion::First,
    )
    .unwrap();
    let out = theorem1_combine(&a, &b, &RootVector::from(&c), &RootVector::from(&d)).unwrap();
    let cert = zcap_check(&out.s, &out.t, 8, 8).unwrap();
    assert!(cert.is_gcap());
    assert!(max_zcz_rect(&out.s, &out.t).unwrap().is_gcap());
}

#[test]
fn length_ten_pair_with_octary_gdj() {
    let a = ZqVector::new(2, vec![0, 0, 1, 0, 1, 0, 1, 1, 0, 0]).unwrap();
    let b = ZqVector::new(2, vec![0, 0, 1, 0, 0, 0, 0, 0, 1, 1]).unwrap();
    let width = max_zcz(&RootVector::from(&a), &RootVector::from(&b))
        .unwrap()
        .width;
    assert!(width >= 5, "width {width}");
    let (c, d) = gdj_pair(
        8,
        2,
        &Permutation::identity(2),
        &[3, 5, 1],
        Companion::First,
    )
    .unwrap();
    let opts = CombineOptions {
        claimed: Some((5, 4)),
        ..Default::default()
    };
    let out = corollary1_combine_with(&a, &b, &c, &d, &opts).unwrap();
    assert_eq!((out.s.rows(), out.s.cols()), (10, 4));
    assert!(
        zcap_check(&lifted(&out.s), &lifted(&out.t), 5, 4)
            .unwrap()
            .verified
    );
}
