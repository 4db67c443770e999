mod common;

use autonomous_operator::hurwitz::HurwitzSeries;
use autonomous_operator::rings::{factorial, Ring};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

/// `sum_j f_j g^j / j!` by repeated multiplication, the textbook definition.
fn substitute(f: &HurwitzSeries, g: &HurwitzSeries) -> HurwitzSeries {
    let k = f.ring().fraction_field();
    let (f, g) = (f.lift(&k).unwrap(), g.lift(&k).unwrap());
    let n = f.order();
    let mut total = HurwitzSeries::zero(&k, n);
    let mut power = HurwitzSeries::one(&k, n);
    for j in 0..=n {
        let w = BigRational::new(BigInt::from(1), factorial(j));
        let c = k.mul(f.coeff(j), &k.from_rational(&w).unwrap());
        total = total.add(&power.scale(&c)).unwrap();
        power = power.mul(&g).unwrap();
    }
    total
}

fn rings() -> Vec<Ring> {
    vec![Ring::rationals(), Ring::gaussian()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn derivative_is_linear_and_leibniz(seed in any::<u64>(), n in 1usize..9) {
        let mut rng = common::rng(seed);
        for r in common::rings() {
            let (f, g) = (common::series(&r, &mut rng, n), common::series(&r, &mut rng, n));
            let c = r.random_element(&mut rng, 4);
            let sum = f.add(&g).unwrap().derivative().unwrap();
            prop_assert_eq!(sum, f.derivative().unwrap().add(&g.derivative().unwrap()).unwrap());
            prop_assert_eq!(f.scale(&c).derivative().unwrap(), f.derivative().unwrap().scale(&c));
            let lhs = f.mul(&g).unwrap().derivative().unwrap();
            let rhs = f.derivative().unwrap().mul(&g).unwrap().add(&f.mul(&g.derivative().unwrap()).unwrap()).unwrap();
            prop_assert!(lhs.series_eq(&rhs, n - 1).unwrap());
        }
    }

    #[test]
    fn composition_matches_substitution(seed in any::<u64>(), n in 0usize..9) {
        let mut rng = common::rng(seed);
        for r in rings() {
            let f = common::series(&r, &mut rng, n);
            let mut g = common::elems(&r, &mut rng, n + 1);
            g[0] = r.zero();
            let g = HurwitzSeries::new(&r, g).unwrap();
            let composed = f.compose(&g).unwrap();
            prop_assert_eq!(composed.lift(&r.fraction_field()).unwrap(), substitute(&f, &g));
        }
    }

    #[test]
    fn scale_substitution_composes(seed in any::<u64>(), n in 0usize..9) {
        let mut rng = common::rng(seed);
        for r in common::rings() {
            let f = common::series(&r, &mut rng, n);
            let (a, b) = (r.random_element(&mut rng, 4), r.random_element(&mut rng, 4));
            prop_assert_eq!(f.scale_substitute(&a).scale_substitute(&b), f.scale_substitute(&r.mul(&a, &b)));
        }
    }

    #[test]
    fn taylor_shift_round_trip(seed in any::<u64>(), n in 0usize..9) {
        let mut rng = common::rng(seed);
        for r in common::rings() {
            let f = common::series(&r, &mut rng, n);
            let c = r.random_element(&mut rng, 4);
            let back = f.taylor_shift(&c).unwrap().taylor_shift(&r.neg(&c)).unwrap();
            prop_assert_eq!(back, f.lift(&r.fraction_field()).unwrap());
        }
    }

    #[test]
    fn json_round_trip(seed in any::<u64>(), n in 0usize..6) {
        let mut rng = common::rng(seed);
        for r in common::rings() {
            let f = common::series(&r, &mut rng, n);
            let text = serde_json::to_string(&f.to_json()).unwrap();
            let back = HurwitzSeries::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
            prop_assert_eq!(back, f);
        }
    }
}

#[test]
fn product_of_exponentials() {
    let q = Ring::rationals();
    let (a, b) = (q.from_int(2), q.from_int(-5));
    let lhs = HurwitzSeries::exp_scaled(&q, &a, 8)
        .mul(&HurwitzSeries::exp_scaled(&q, &b, 8))
        .unwrap();
    assert_eq!(lhs, HurwitzSeries::exp_scaled(&q, &q.add(&a, &b), 8));
}

#[test]
fn truncation_is_reported() {
    let z = Ring::integers();
    let f = HurwitzSeries::from_ints(&z, &[1, 2, 3]);
    let g = HurwitzSeries::from_ints(&z, &[1, 2, 3, 4, 5]);
    assert_eq!(f.mul(&g).unwrap().order(), 2);
    assert_eq!(f.derivative().unwrap().order(), 1);
    assert!(f.series_eq(&g, 3).is_err());
    assert!(f.compose(&g).is_err());
}
