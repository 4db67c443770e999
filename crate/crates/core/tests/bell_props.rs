#![allow(clippy::needless_range_loop)]

mod common;

use autonomous_operator::bell::{
    complete_bell, faa_di_bruno, partial_bell, partial_bell_rec, partitions,
};
use autonomous_operator::rings::{Elem, Ring};
use num_bigint::BigInt;
use proptest::prelude::*;

/// Bell numbers from `B_{n+1} = sum_k C(n, k) B_k`.
fn bell_numbers(n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::from(1)];
    for m in 0..n {
        let mut next = BigInt::from(0);
        let mut c = BigInt::from(1);
        for (k, b) in out.iter().enumerate() {
            next += &c * b;
            c = c * BigInt::from(m - k) / BigInt::from(k + 1);
        }
        out.push(next);
    }
    out
}

/// Stirling numbers of the second kind by `S(n, k) = k S(n-1, k) + S(n-1, k-1)`.
fn stirling2(n: usize, k: usize) -> BigInt {
    let mut t = vec![vec![BigInt::from(0); n + 1]; n + 1];
    t[0][0] = BigInt::from(1);
    for i in 1..=n {
        for j in 1..=i {
            t[i][j] = BigInt::from(j) * &t[i - 1][j] + &t[i - 1][j - 1];
        }
    }
    t[n][k].clone()
}

fn eisen() -> Ring {
    Ring::eisenstein()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn two_algorithms_agree(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        for r in [Ring::integers(), eisen()] {
            let b = common::elems(&r, &mut rng, 10);
            for n in 1..=10 {
                for k in 1..=n {
                    prop_assert_eq!(partial_bell(&r, n, k, &b).unwrap(), partial_bell_rec(&r, n, k, &b).unwrap());
                }
            }
        }
    }

    #[test]
    fn edge_terms(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let r = eisen();
        let b = common::elems(&r, &mut rng, 10);
        for n in 1..=10 {
            prop_assert_eq!(&partial_bell(&r, n, 1, &b).unwrap(), &b[n - 1]);
            prop_assert_eq!(partial_bell(&r, n, n, &b).unwrap(), r.pow(&b[0], n as u64));
        }
    }

    #[test]
    fn weighted_homogeneity(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let r = Ring::gaussian();
        let b = common::elems(&r, &mut rng, 8);
        let alpha = r.random_element(&mut rng, 3);
        let scaled: Vec<Elem> = b.iter().enumerate().map(|(i, x)| r.mul(&r.pow(&alpha, i as u64 + 1), x)).collect();
        for n in 1..=8 {
            for k in 1..=n {
                let lhs = partial_bell(&r, n, k, &scaled).unwrap();
                prop_assert_eq!(lhs, r.mul(&r.pow(&alpha, n as u64), &partial_bell(&r, n, k, &b).unwrap()));
            }
        }
    }

    #[test]
    fn complete_polynomials_match_expansion(a in prop::collection::vec(-50i64..50, 3), b in prop::collection::vec(-50i64..50, 3)) {
        let z = Ring::integers();
        let (ea, eb) = (common::ints(&z, &a), common::ints(&z, &b));
        let y = |n| complete_bell(&z, n, &eb, &ea).unwrap();
        prop_assert_eq!(y(1), z.from_int(a[0] * b[0]));
        prop_assert_eq!(y(2), z.from_int(a[0] * b[1] + a[1] * b[0] * b[0]));
        prop_assert_eq!(y(3), z.from_int(a[0] * b[2] + a[1] * 3 * b[0] * b[1] + a[2] * b[0].pow(3)));
    }
}

#[test]
fn sums_of_ones_are_bell_and_stirling_numbers() {
    let z = Ring::integers();
    let ones = vec![z.one(); 12];
    let bells = bell_numbers(12);
    for n in 1..=12 {
        let mut total = z.zero();
        for k in 1..=n {
            let b = partial_bell(&z, n, k, &ones).unwrap();
            assert_eq!(b, z.from_bigint(&stirling2(n, k)), "S({n},{k})");
            total = z.add(&total, &b);
        }
        assert_eq!(total, z.from_bigint(&bells[n]));
    }
    assert_eq!(
        bells[1..=6].to_vec(),
        [1, 2, 5, 15, 52, 203].map(BigInt::from).to_vec()
    );
}

#[test]
fn partition_counts_match_recurrence() {
    // p(n, k) = p(n-1, k-1) + p(n-k, k)
    let mut p = vec![vec![0usize; 16]; 16];
    p[0][0] = 1;
    for n in 1..16 {
        for k in 1..=n {
            p[n][k] = p[n - 1][k - 1] + p[n - k][k];
        }
    }
    for n in 1..16 {
        for k in 1..=n {
            let list = partitions(n, k).unwrap();
            assert_eq!(list.len(), p[n][k], "p({n},{k})");
            assert!(list
                .windows(2)
                .all(|w| w[0].multiplicities() > w[1].multiplicities()));
        }
    }
}

#[test]
fn faa_di_bruno_of_exponentials() {
    // exp(e^X - 1) has the Bell numbers as Hurwitz coefficients
    let z = Ring::integers();
    let outer = vec![z.one(); 9];
    let mut inner = vec![z.one(); 9];
    inner[0] = z.zero();
    let got = faa_di_bruno(&z, &outer, &inner);
    let want: Vec<Elem> = bell_numbers(8).iter().map(|b| z.from_bigint(b)).collect();
    assert_eq!(got, want);
}
