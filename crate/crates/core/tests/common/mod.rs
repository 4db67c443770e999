#![allow(dead_code)]

use autonomous_operator::hurwitz::HurwitzSeries;
use autonomous_operator::rings::{Elem, Ring};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rings() -> Vec<Ring> {
    [
        "z",
        "q",
        "gauss",
        "eisen",
        "quad:2",
        "quad:5",
        "roots:5",
        "frac(gauss)",
    ]
    .iter()
    .map(|s| Ring::new(s.parse().unwrap()).unwrap())
    .collect()
}

pub fn elems(ring: &Ring, rng: &mut ChaCha8Rng, n: usize) -> Vec<Elem> {
    (0..n).map(|_| ring.random_element(rng, 4)).collect()
}

pub fn series(ring: &Ring, rng: &mut ChaCha8Rng, order: usize) -> HurwitzSeries {
    HurwitzSeries::new(ring, elems(ring, rng, order + 1)).unwrap()
}

pub fn ints(ring: &Ring, xs: &[i64]) -> Vec<Elem> {
    xs.iter().map(|&x| ring.from_int(x)).collect()
}
