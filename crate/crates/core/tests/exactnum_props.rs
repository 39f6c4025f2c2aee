mod common;

use common::*;
use dagger_core::exactnum::*;
use proptest::prelude::*;

fn hilbert(a: i64, b: i64, p: i64) -> i8 {
    hilbert_symbol(&rat_int(a), &rat_int(b), &Place::Finite(big(p))).unwrap()
}

#[test]
fn hilbert_matches_oracle() {
    for p in [2, 3] {
        for a in -12i64..=12 {
            for b in -12i64..=12 {
                if a == 0 || b == 0 {
                    continue;
                }
                assert_eq!(hilbert(a, b, p), hilbert_oracle(a, b, p), "({a},{b})_{p}");
            }
        }
    }
    for (a, b) in [
        (2, 5),
        (5, 5),
        (-1, 5),
        (10, 3),
        (-5, -5),
        (15, 7),
        (3, -10),
    ] {
        assert_eq!(hilbert(a, b, 5), hilbert_oracle(a, b, 5), "({a},{b})_5");
    }
}

#[test]
fn defect_matches_oracle() {
    for p in [2i64, 3, 5] {
        for a in -40i64..=40 {
            if a == 0 {
                continue;
            }
            let lib = quadratic_defect(&rat_int(a), &big(p)).unwrap().valuation;
            let cap = [(2, 9), (3, 6), (5, 5)]
                .iter()
                .find(|c| c.0 == p)
                .unwrap()
                .1;
            let expect = match defect_oracle(&rat_int(a), p, cap) {
                None => Valuation::Infinite,
                Some(v) => Valuation::Finite(v),
            };
            assert_eq!(lib, expect, "𝔡({a}) at {p}");
        }
    }
    for (n, d) in [(1, 2), (3, 4), (5, 4), (7, 9), (-1, 8), (2, 27)] {
        let a = rat_frac(n, d);
        for p in [2i64, 3] {
            let lib = quadratic_defect(&a, &big(p)).unwrap().valuation;
            let expect = defect_oracle(&a, p, 7).map_or(Valuation::Infinite, Valuation::Finite);
            assert_eq!(lib, expect, "𝔡({n}/{d}) at {p}");
        }
    }
}

fn places(a: i64, b: i64) -> Vec<Place> {
    let mut ps = vec![Place::Infinite, Place::Finite(big(2))];
    for n in [a, b] {
        for (p, _) in factor(&big(n)).unwrap() {
            if !ps.contains(&Place::Finite(p.clone())) {
                ps.push(Place::Finite(p));
            }
        }
    }
    ps
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn product_formula(a in -10_000i64..10_000, b in -10_000i64..10_000, c in 1i64..50, d in 1i64..50) {
        prop_assume!(a != 0 && b != 0);
        let (x, y) = (rat_frac(a, c), rat_frac(b, d));
        let mut prod = 1i8;
        let mut ps = places(a * d * d, b * c * c);
        ps.extend(places(c, d));
        ps.dedup();
        let mut seen = Vec::new();
        for v in ps {
            if seen.contains(&v) {
                continue;
            }
            prod *= hilbert_symbol(&x, &y, &v).unwrap();
            seen.push(v);
        }
        prop_assert_eq!(prod, 1);
    }

    #[test]
    fn hilbert_is_symmetric_and_bimultiplicative(a in -300i64..300, b in -300i64..300, c in -300i64..300, p in prop::sample::select(vec![2i64, 3, 5, 7, 11])) {
        prop_assume!(a != 0 && b != 0 && c != 0);
        let h = |x: i64, y: i64| hilbert(x, y, p);
        prop_assert_eq!(h(a, b), h(b, a));
        prop_assert_eq!(h(a, b * c), h(a, b) * h(a, c));
        prop_assert_eq!(h(a, -a), 1);
        if a != 1 {
            prop_assert_eq!(h(a, 1 - a), 1);
        }
    }

    #[test]
    fn square_classes(a in -5000i64..5000, k in 1i64..40) {
        prop_assume!(a != 0);
        let c = square_class(&rat_int(a)).unwrap();
        prop_assert_eq!(square_class(&rat_frac(a * k * k, 1)).unwrap(), c.clone());
        prop_assert_eq!(square_class(&rat_frac(a, k * k)).unwrap(), c.clone());
        prop_assert!(is_square_free(c.representative()).unwrap());
    }

    #[test]
    fn defect_scaling(a in -2000i64..2000, p in prop::sample::select(vec![2i64, 3, 5])) {
        prop_assume!(a != 0);
        let d = quadratic_defect(&rat_int(a), &big(p)).unwrap().valuation;
        let d2 = quadratic_defect(&rat_int(a * p * p), &big(p)).unwrap().valuation;
        prop_assert_eq!(d.shift(2), d2);
        let v = valuation(&rat_int(a), &big(p)).unwrap();
        prop_assert!(d >= v);
    }
}
