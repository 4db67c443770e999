//! The autonomous operator.
//!
//! For a sequence `x = (x_0, x_1, ...)` the image is `(A_1, A_2, ...)` with
//! `A_1 = x_0` and `A_{n+1} = Y_n(A_1, ..., A_n; x_1, ..., x_n)`. Applied to the
//! derivative sequence of a series `f` the terms are series again and satisfy
//! `A_{n+1} = f * A_n'`, which gives a second, independent algorithm.

use num_bigint::BigInt;

use crate::bell::{self, Arith};
use crate::error::{Error, Result};
use crate::hurwitz::{HurwitzSeries, SeriesArith};
use crate::rings::{binomial, Elem, Ring};

/// Bell recursion over any [`Arith`]; returns `A_1, ..., A_L` for an input of length `L`.
pub fn apply_with<A: Arith>(ar: &A, x: &[A::T]) -> Vec<A::T> {
    let Some(first) = x.first() else {
        return Vec::new();
    };
    let mut out = vec![first.clone()];
    let mut table = vec![vec![ar.one()]];
    for n in 1..x.len() {
        let row = bell::bell_row(ar, &out, &table, n);
        let mut acc = ar.zero();
        for k in 1..=n {
            if !ar.is_zero(&x[k]) {
                acc = ar.add(&acc, &ar.mul(&row[k], &x[k]));
            }
        }
        table.push(row);
        out.push(acc);
    }
    out
}

/// Pointwise image of a finite sequence.
pub fn apply_pointwise(ring: &Ring, x: &[Elem]) -> Result<Vec<Elem>> {
    if x.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(apply_with(ring, x))
}

/// Series-mode image by the chain `A_1 = f`, `A_{n+1} = f * A_n'`.
/// Term `n` is valid to order `N - n + 1`, so at most `N + 1` terms exist.
pub fn apply_series(f: &HurwitzSeries, terms: usize) -> Result<Vec<HurwitzSeries>> {
    check_terms(f, terms)?;
    let mut out: Vec<HurwitzSeries> = Vec::with_capacity(terms);
    if terms == 0 {
        return Ok(out);
    }
    out.push(f.clone());
    for _ in 1..terms {
        let next = f.mul(&out.last().unwrap().derivative()?)?;
        out.push(next);
    }
    Ok(out)
}

/// Series-mode image by the Bell recursion on `(f, f', f'', ...)`.
pub fn apply_series_bell(f: &HurwitzSeries, terms: usize) -> Result<Vec<HurwitzSeries>> {
    check_terms(f, terms)?;
    let n = f.order();
    let ar = SeriesArith {
        ring: f.ring().clone(),
        order: n,
    };
    let deltas = f.delta_sequence();
    apply_with(&ar, &deltas[..terms])
        .into_iter()
        .enumerate()
        .map(|(i, a)| a.truncate(n - i))
        .collect()
}

fn check_terms(f: &HurwitzSeries, terms: usize) -> Result<()> {
    if terms > f.order() + 1 {
        return Err(Error::OrderExhausted(format!(
            "{terms} terms requested from a series of order {}",
            f.order()
        )));
    }
    Ok(())
}

/// Result of inverting the operator over the fraction field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inverse {
    /// The ring the terms live in: `Frac(R)`.
    pub field: Ring,
    pub terms: Vec<Elem>,
    /// Whether every term lies in the original ring.
    pub in_ring: bool,
}

/// The unique `x` with `apply_pointwise(x) = y`, solved triangularly.
///
/// Since the image must equal `y`, the Bell polynomials take `y` as their arguments:
/// `y_n = sum_{k=1}^n B_{n,k}(y_0, ..., y_{n-k}) x_k`, whose last term is `y_0^n x_n`.
pub fn invert(ring: &Ring, y: &[Elem]) -> Result<Inverse> {
    let Some(y0) = y.first() else {
        return Err(Error::EmptyInput);
    };
    if ring.is_zero(y0) {
        return Err(Error::ZeroLeadingTerm);
    }
    let field = ring.fraction_field();
    let y0_inv = field.try_invert(y0)?;
    let table = bell::bell_table(&field, &y[..y.len() - 1], y.len() - 1);
    let mut x = vec![y0.clone()];
    for n in 1..y.len() {
        let mut rest = y[n].clone();
        for (k, xk) in x.iter().enumerate().skip(1) {
            rest = field.sub(&rest, &field.mul(&table[n][k], xk));
        }
        x.push(field.mul(&rest, &field.pow(&y0_inv, n as u64)));
    }
    let in_ring = x.iter().all(|t| ring.contains(t));
    Ok(Inverse {
        field,
        terms: x,
        in_ring,
    })
}

/// `A(alpha x)_n == alpha^n A(x)_n` for every term.
pub fn check_scaling(ring: &Ring, x: &[Elem], alpha: &Elem) -> Result<bool> {
    let scaled: Vec<Elem> = x.iter().map(|t| ring.mul(alpha, t)).collect();
    let lhs = apply_pointwise(ring, &scaled)?;
    let rhs = apply_pointwise(ring, x)?;
    Ok(lhs
        .iter()
        .zip(&rhs)
        .enumerate()
        .all(|(i, (l, r))| *l == ring.mul(&ring.pow(alpha, i as u64 + 1), r)))
}

fn agree_to_common_order(lhs: &[HurwitzSeries], rhs: &[HurwitzSeries]) -> Result<bool> {
    for (l, r) in lhs.iter().zip(rhs) {
        let upto = l.order().min(r.order());
        if !l.series_eq(r, upto)? {
            return Ok(false);
        }
    }
    Ok(lhs.len() == rhs.len())
}

/// Image of `exp(alpha X) f` against `exp(alpha n X) * A_n(F)` where
/// `F_n = sum_k C(n,k) alpha^{n-k} f^{(k)}`, for the first `depth` terms.
pub fn check_exp_factor(f: &HurwitzSeries, alpha: &Elem, depth: usize) -> Result<bool> {
    let ring = f.ring();
    let n = f.order();
    let g = HurwitzSeries::exp_scaled(ring, alpha, n).mul(f)?;
    let lhs = apply_series(&g, depth)?;

    let deltas = f.delta_sequence();
    let mut big_f = Vec::with_capacity(depth);
    for m in 0..depth {
        let mut acc = HurwitzSeries::zero(ring, n - m);
        for (k, dk) in deltas.iter().enumerate().take(m + 1) {
            let c = ring.mul_int(&ring.pow(alpha, (m - k) as u64), &binomial(m, k));
            acc = acc.add(&dk.scale(&c))?;
        }
        big_f.push(acc);
    }
    let ar = SeriesArith {
        ring: ring.clone(),
        order: n,
    };
    let image = apply_with(&ar, &big_f);
    let rhs = image
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let e = HurwitzSeries::exp_scaled(ring, &ring.mul_int(alpha, &BigInt::from(i + 1)), n);
            e.mul(&a.truncate(n - i)?)
        })
        .collect::<Result<Vec<_>>>()?;
    agree_to_common_order(&lhs, &rhs)
}

/// Image of `exp(f)` against `exp(n f) * A_n(Y)` where `Y_0 = 1` and
/// `Y_n = sum_k B_{n,k}(f', f'', ...)`, for the first `depth` terms. Needs `f(0) = 0`.
pub fn check_exp_composition(f: &HurwitzSeries, depth: usize) -> Result<bool> {
    let ring = f.ring();
    if !ring.is_zero(f.coeff(0)) {
        return Err(Error::NonzeroConstantTerm);
    }
    let n = f.order();
    let exp = HurwitzSeries::exp(ring, n);
    let lhs = apply_series(&exp.compose(f)?, depth)?;

    let ar = SeriesArith {
        ring: ring.clone(),
        order: n,
    };
    let derivs = f.delta_sequence();
    let table = bell::bell_table(&ar, &derivs[1..], depth.saturating_sub(1));
    let mut y = vec![HurwitzSeries::one(ring, n)];
    for m in 1..depth {
        let mut acc = HurwitzSeries::zero(ring, n - m);
        for entry in table[m].iter().skip(1) {
            acc = acc.add(&entry.truncate(entry.order().min(n - m))?)?;
        }
        y.push(acc);
    }
    let image = apply_with(&ar, &y);
    let rhs = image
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let nf = f.mul_int(&BigInt::from(i + 1));
            exp.compose(&nf)?.mul(&a.truncate(a.order().min(n - i))?)
        })
        .collect::<Result<Vec<_>>>()?;
    agree_to_common_order(&lhs, &rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(ring: &Ring, v: &[i64]) -> Vec<Elem> {
        v.iter().map(|&t| ring.from_int(t)).collect()
    }

    #[test]
    fn all_ones_gives_factorials() {
        let z = Ring::integers();
        assert_eq!(
            apply_pointwise(&z, &ints(&z, &[1; 6])).unwrap(),
            ints(&z, &[1, 1, 2, 6, 24, 120])
        );
    }

    #[test]
    fn affine_and_null_sequences() {
        let z = Ring::integers();
        assert_eq!(
            apply_pointwise(&z, &ints(&z, &[3, 2, 0, 0, 0])).unwrap(),
            ints(&z, &[3, 6, 12, 24, 48])
        );
        assert_eq!(
            apply_pointwise(&z, &ints(&z, &[0, 5, -1, 7])).unwrap(),
            ints(&z, &[0, 0, 0, 0])
        );
        assert_eq!(apply_pointwise(&z, &[]), Err(Error::EmptyInput));
    }

    #[test]
    fn low_terms_match_the_general_form() {
        let z = Ring::integers();
        let (a0, a1, a2) = (3, -2, 5);
        let got = apply_pointwise(&z, &ints(&z, &[a0, a1, a2])).unwrap();
        assert_eq!(got, ints(&z, &[a0, a0 * a1, a0 * a1 * a1 + a0 * a0 * a2]));
    }

    #[test]
    fn inverse_examples() {
        let z = Ring::integers();
        let inv = invert(&z, &ints(&z, &[1, 1, 2])).unwrap();
        assert_eq!(inv.terms, ints(&Ring::rationals(), &[1, 1, 1]));
        assert!(inv.in_ring);
        let inv = invert(&z, &ints(&z, &[1, 1, 2, 3])).unwrap();
        assert_eq!(inv.terms, ints(&Ring::rationals(), &[1, 1, 1, -2]));
        assert_eq!(
            invert(&z, &ints(&z, &[0, 1, 2])),
            Err(Error::ZeroLeadingTerm)
        );
        let inv = invert(&z, &ints(&z, &[2, 2, 3])).unwrap();
        assert_eq!(inv.terms[1], z.one());
        assert!(!inv.in_ring);
        assert_eq!(
            apply_pointwise(&inv.field, &inv.terms).unwrap(),
            ints(&z, &[2, 2, 3])
        );
    }

    #[test]
    fn series_modes_agree_on_exp() {
        let q = Ring::rationals();
        let f = HurwitzSeries::exp(&q, 6);
        let chain = apply_series(&f, 7).unwrap();
        let bell = apply_series_bell(&f, 7).unwrap();
        assert_eq!(chain, bell);
        for (i, a) in chain.iter().enumerate() {
            let n = i as i64 + 1;
            let fact: i64 = (1..n).product();
            let expected: Vec<i64> = (0..=a.order() as u32).map(|j| fact * n.pow(j)).collect();
            assert_eq!(*a, HurwitzSeries::from_ints(&q, &expected));
            assert_eq!(a.order(), 6 - i);
        }
        assert!(matches!(apply_series(&f, 8), Err(Error::OrderExhausted(_))));
    }

    #[test]
    fn constant_and_affine_fields() {
        let z = Ring::integers();
        let c = HurwitzSeries::from_ints(&z, &[4, 0, 0, 0]);
        let img = apply_series(&c, 4).unwrap();
        assert_eq!(img[0], c);
        for a in &img[1..] {
            assert!(a.coeffs().iter().all(|t| z.is_zero(t)));
        }
        let f = HurwitzSeries::from_ints(&z, &[2, 3, 0, 0, 0]);
        for (i, a) in apply_series(&f, 5).unwrap().iter().enumerate() {
            let b = 3i64.pow(i as u32);
            assert!(a
                .series_eq(
                    &f.truncate(a.order()).unwrap().mul_int(&BigInt::from(b)),
                    a.order()
                )
                .unwrap());
        }
    }

    #[test]
    fn scaling_and_special_inputs() {
        let q = Ring::rationals();
        let one = HurwitzSeries::one(&q, 6);
        assert!(check_exp_factor(&one, &q.one(), 5).unwrap());
        let x = HurwitzSeries::variable(&q, 6);
        assert!(check_exp_factor(&x, &q.one(), 3).unwrap());
        assert!(check_exp_factor(&x, &q.zero(), 3).unwrap());
        assert!(check_exp_composition(&HurwitzSeries::zero(&q, 5), 4).unwrap());
        assert!(check_exp_composition(&x, 5).unwrap());
        let half_x2 = HurwitzSeries::from_ints(&q, &[0, 0, 1, 0, 0, 0]);
        assert!(check_exp_composition(&half_x2, 3).unwrap());
        assert_eq!(
            check_exp_composition(&one, 3),
            Err(Error::NonzeroConstantTerm)
        );
    }

    #[test]
    fn scaling_examples() {
        let z = Ring::integers();
        let x = ints(&z, &[1, 1, 1]);
        assert!(check_scaling(&z, &x, &z.one()).unwrap());
        assert!(check_scaling(&z, &x, &z.from_int(2)).unwrap());
        assert_eq!(
            apply_pointwise(&z, &ints(&z, &[2, 2, 2])).unwrap(),
            ints(&z, &[2, 4, 16])
        );
        assert!(check_scaling(&z, &x, &z.zero()).unwrap());
    }
}
