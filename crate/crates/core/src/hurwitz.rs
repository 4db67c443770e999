//! Truncated Hurwitz series `sum_{n<=N} a_n X^n/n!`.
//!
//! Coefficients are the EGF numerators `a_n`, so products are binomial convolutions
//! and the derivative is a left shift. Every operation keeps track of the order to
//! which its result is valid: products and sums take the smaller order, the
//! derivative loses one, and nothing is ever padded with zeros.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::bell::{self, Arith};
use crate::error::{Error, Result};
use crate::rings::{binomial_convolution, factorial, Elem, Ring, RingSpec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HurwitzSeries {
    ring: Ring,
    coeffs: Vec<Elem>,
}

/// JSON form `{"ring": ..., "order": N, "egf_coeffs": [...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub ring: String,
    pub order: usize,
    pub egf_coeffs: Vec<String>,
}

fn mismatch(a: &Ring, b: &Ring) -> Error {
    Error::RingMismatch(a.to_string(), b.to_string())
}

impl HurwitzSeries {
    pub fn new(ring: &Ring, coeffs: Vec<Elem>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptyInput);
        }
        if let Some(bad) = coeffs.iter().find(|c| !ring.contains(c)) {
            return Err(Error::RingMismatch(format!("{bad:?}"), ring.to_string()));
        }
        Ok(HurwitzSeries {
            ring: ring.clone(),
            coeffs,
        })
    }

    pub(crate) fn from_parts(ring: &Ring, coeffs: Vec<Elem>) -> Self {
        debug_assert!(!coeffs.is_empty());
        HurwitzSeries {
            ring: ring.clone(),
            coeffs,
        }
    }

    pub fn from_ints(ring: &Ring, coeffs: &[i64]) -> Self {
        Self::from_parts(ring, coeffs.iter().map(|&c| ring.from_int(c)).collect())
    }

    pub fn parse(ring: &Ring, coeffs: &[&str]) -> Result<Self> {
        let coeffs = coeffs
            .iter()
            .map(|c| ring.parse(c))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ring, coeffs)
    }

    pub fn zero(ring: &Ring, order: usize) -> Self {
        Self::from_parts(ring, vec![ring.zero(); order + 1])
    }

    pub fn constant(ring: &Ring, c: Elem, order: usize) -> Self {
        let mut coeffs = vec![ring.zero(); order + 1];
        coeffs[0] = c;
        Self::from_parts(ring, coeffs)
    }

    pub fn one(ring: &Ring, order: usize) -> Self {
        Self::constant(ring, ring.one(), order)
    }

    /// The series `X`.
    pub fn variable(ring: &Ring, order: usize) -> Self {
        let mut s = Self::zero(ring, order);
        if order >= 1 {
            s.coeffs[1] = ring.one();
        }
        s
    }

    /// `exp(alpha X)`, coefficients `alpha^n`.
    pub fn exp_scaled(ring: &Ring, alpha: &Elem, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut p = ring.one();
        for _ in 0..=order {
            coeffs.push(p.clone());
            p = ring.mul(&p, alpha);
        }
        Self::from_parts(ring, coeffs)
    }

    pub fn exp(ring: &Ring, order: usize) -> Self {
        Self::from_parts(ring, vec![ring.one(); order + 1])
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &Elem {
        &self.coeffs[n]
    }

    pub fn into_coeffs(self) -> Vec<Elem> {
        self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(Error::OrderExceeded {
                requested: order,
                available: self.order(),
            });
        }
        Ok(Self::from_parts(&self.ring, self.coeffs[..=order].to_vec()))
    }

    /// The same coefficients viewed in a larger ring, e.g. the fraction field.
    pub fn lift(&self, ring: &Ring) -> Result<Self> {
        Self::new(ring, self.coeffs.clone())
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(mismatch(&self.ring, &other.ring))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.add_unchecked(other))
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| self.ring.add(a, b))
            .collect();
        Self::from_parts(&self.ring, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self::from_parts(
            &self.ring,
            self.coeffs.iter().map(|a| self.ring.neg(a)).collect(),
        )
    }

    pub fn scale(&self, c: &Elem) -> Self {
        Self::from_parts(
            &self.ring,
            self.coeffs.iter().map(|a| self.ring.mul(c, a)).collect(),
        )
    }

    pub fn mul_int(&self, k: &BigInt) -> Self {
        Self::from_parts(
            &self.ring,
            self.coeffs
                .iter()
                .map(|a| self.ring.mul_int(a, k))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        Self::from_parts(
            &self.ring,
            binomial_convolution(&self.ring, &self.coeffs, &other.coeffs),
        )
    }

    pub fn derivative(&self) -> Result<Self> {
        if self.order() == 0 {
            return Err(Error::OrderExhausted(
                "derivative of an order-0 series".into(),
            ));
        }
        Ok(Self::from_parts(&self.ring, self.coeffs[1..].to_vec()))
    }

    /// `f, f', f'', ..., f^(N)` with orders `N, N-1, ..., 0`.
    pub fn delta_sequence(&self) -> Vec<Self> {
        (0..=self.order())
            .map(|k| Self::from_parts(&self.ring, self.coeffs[k..].to_vec()))
            .collect()
    }

    /// `f(g(X))` for `g(0) = 0`, by the Faa di Bruno (Bell polynomial) formula.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        self.check_ring(inner)?;
        if !self.ring.is_zero(&inner.coeffs[0]) {
            return Err(Error::NonzeroConstantTerm);
        }
        let coeffs = bell::faa_di_bruno(&self.ring, &self.coeffs, &inner.coeffs);
        Ok(Self::from_parts(&self.ring, coeffs))
    }

    /// `f(aX)`: coefficients `a^n a_n`.
    pub fn scale_substitute(&self, a: &Elem) -> Self {
        let mut p = self.ring.one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(self.ring.mul(&p, c));
            p = self.ring.mul(&p, a);
        }
        Self::from_parts(&self.ring, coeffs)
    }

    /// `f(X + c)` over `Frac(R)`: `b_n = sum_{j<=N-n} a_{n+j} c^j / j!`.
    pub fn taylor_shift(&self, c: &Elem) -> Result<Self> {
        let field = self.ring.fraction_field();
        self.taylor_shift_in(&field, c)
    }

    /// Taylor shift by `c` taken in `target`, a ring whose scalars are the coefficients
    /// of `self` lifted to the fraction field (for instance a series ring over it).
    /// With a nilpotent `c` this evaluates every derivative of `f` at `x0 + c`.
    pub fn taylor_shift_in(&self, target: &Ring, c: &Elem) -> Result<Self> {
        if !target.contains(c) {
            return Err(Error::RingMismatch(format!("{c:?}"), target.to_string()));
        }
        let n_max = self.order();
        let mut powers = Vec::with_capacity(n_max + 1);
        let mut p = target.one();
        for j in 0..=n_max {
            let inv_fact = BigRational::new(BigInt::one(), factorial(j));
            powers.push(target.scale_by_rational(&p, &inv_fact));
            p = target.mul(&p, c);
        }
        let lifted: Vec<Elem> = self.coeffs.iter().map(|a| target.lift_scalar(a)).collect();
        let coeffs = (0..=n_max)
            .map(|n| {
                let mut acc = target.zero();
                for j in 0..=n_max - n {
                    acc = target.add(&acc, &target.mul(&lifted[n + j], &powers[j]));
                }
                acc
            })
            .collect();
        Ok(Self::from_parts(target, coeffs))
    }

    /// Exact coefficient comparison up to `upto`.
    pub fn series_eq(&self, other: &Self, upto: usize) -> Result<bool> {
        self.check_ring(other)?;
        let available = self.order().min(other.order());
        if upto > available {
            return Err(Error::OrderExceeded {
                requested: upto,
                available,
            });
        }
        Ok(self.coeffs[..=upto] == other.coeffs[..=upto])
    }

    /// Truncated value `sum a_n c^n / n!` in `Frac(R)`.
    pub fn evaluate(&self, c: &Elem) -> Result<Elem> {
        let field = self.ring.fraction_field();
        if !field.contains(c) {
            return Err(Error::RingMismatch(format!("{c:?}"), field.to_string()));
        }
        let mut acc = field.zero();
        let mut p = field.one();
        for (n, a) in self.coeffs.iter().enumerate() {
            let term = field.mul(a, &p);
            acc = field.add(
                &acc,
                &field.scale_by_rational(&term, &BigRational::new(BigInt::one(), factorial(n))),
            );
            p = field.mul(&p, c);
        }
        Ok(acc)
    }

    /// This series as an element of `series(R, N)`.
    pub fn to_elem(&self) -> (Ring, Elem) {
        (
            Ring::series_over(&self.ring, self.order()),
            Elem::Series(self.coeffs.clone()),
        )
    }

    pub fn from_elem(series_ring: &Ring, x: &Elem) -> Result<Self> {
        match (series_ring.series_parts(), x) {
            (Some((base, _)), Elem::Series(c)) if series_ring.contains(x) => {
                Ok(Self::from_parts(base, c.clone()))
            }
            _ => Err(Error::RingMismatch(
                format!("{x:?}"),
                series_ring.to_string(),
            )),
        }
    }

    pub fn render(&self) -> String {
        let items: Vec<String> = self.coeffs.iter().map(|c| self.ring.render(c)).collect();
        format!("[{}]", items.join(","))
    }

    pub fn to_json(&self) -> SeriesJson {
        SeriesJson {
            ring: self.ring.to_string(),
            order: self.order(),
            egf_coeffs: self.coeffs.iter().map(|c| self.ring.render(c)).collect(),
        }
    }

    pub fn from_json(json: &SeriesJson) -> Result<Self> {
        let spec: RingSpec = json.ring.parse()?;
        let ring = Ring::new(spec)?;
        if json.egf_coeffs.len() != json.order + 1 {
            return Err(Error::Parse {
                what: "series json",
                input: format!("{json:?}"),
            });
        }
        let coeffs = json
            .egf_coeffs
            .iter()
            .map(|c| ring.parse(c))
            .collect::<Result<Vec<_>>>()?;
        Self::new(&ring, coeffs)
    }
}

/// A finite prefix `x_0, ..., x_{L-1}` of a sequence in `R^N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientSequence {
    ring: Ring,
    terms: Vec<Elem>,
}

impl CoefficientSequence {
    pub fn new(ring: &Ring, terms: Vec<Elem>) -> Result<Self> {
        if let Some(bad) = terms.iter().find(|c| !ring.contains(c)) {
            return Err(Error::RingMismatch(format!("{bad:?}"), ring.to_string()));
        }
        Ok(CoefficientSequence {
            ring: ring.clone(),
            terms,
        })
    }

    pub fn from_ints(ring: &Ring, terms: &[i64]) -> Self {
        CoefficientSequence {
            ring: ring.clone(),
            terms: terms.iter().map(|&t| ring.from_int(t)).collect(),
        }
    }

    pub fn parse(ring: &Ring, terms: &[&str]) -> Result<Self> {
        let terms = terms
            .iter()
            .map(|t| ring.parse(t))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ring, terms)
    }

    /// The evaluation at 0 of the Hurwitz expansion of `f`: its coefficient list.
    pub fn expansion_at_zero(f: &HurwitzSeries) -> Self {
        CoefficientSequence {
            ring: f.ring.clone(),
            terms: f.coeffs.clone(),
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[Elem] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn render(&self) -> Vec<String> {
        self.terms.iter().map(|t| self.ring.render(t)).collect()
    }
}

/// Arithmetic on truncated series of possibly different orders, for running the
/// Bell-polynomial recursions with series-valued entries. Results carry the smaller
/// order of their operands; constants are created at `order`.
#[derive(Clone, Debug)]
pub struct SeriesArith {
    pub ring: Ring,
    pub order: usize,
}

impl Arith for SeriesArith {
    type T = HurwitzSeries;

    fn zero(&self) -> HurwitzSeries {
        HurwitzSeries::zero(&self.ring, self.order)
    }

    fn one(&self) -> HurwitzSeries {
        HurwitzSeries::one(&self.ring, self.order)
    }

    fn add(&self, x: &HurwitzSeries, y: &HurwitzSeries) -> HurwitzSeries {
        x.add_unchecked(y)
    }

    fn mul(&self, x: &HurwitzSeries, y: &HurwitzSeries) -> HurwitzSeries {
        x.mul_unchecked(y)
    }

    fn mul_int(&self, x: &HurwitzSeries, k: &BigInt) -> HurwitzSeries {
        x.mul_int(k)
    }

    fn is_zero(&self, x: &HurwitzSeries) -> bool {
        x.coeffs.iter().all(|c| self.ring.is_zero(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Ring {
        Ring::rationals()
    }

    fn qs(coeffs: &[&str]) -> HurwitzSeries {
        HurwitzSeries::parse(&q(), coeffs).unwrap()
    }

    #[test]
    fn add_and_scale() {
        let q = q();
        let f = HurwitzSeries::from_ints(&q, &[1, 1, 1]);
        let g = HurwitzSeries::from_ints(&q, &[0, 1, 2]);
        assert_eq!(f.add(&g).unwrap(), HurwitzSeries::from_ints(&q, &[1, 2, 3]));
        assert_eq!(f.scale(&q.zero()), HurwitzSeries::zero(&q, 2));
        assert_eq!(
            HurwitzSeries::exp(&q, 3).scale(&q.from_int(2)),
            HurwitzSeries::from_ints(&q, &[2, 2, 2, 2])
        );
        let short = HurwitzSeries::from_ints(&q, &[1, 1]);
        assert_eq!(f.add(&short).unwrap().order(), 1);
        assert!(matches!(
            f.add(&HurwitzSeries::zero(&Ring::integers(), 2)),
            Err(Error::RingMismatch(..))
        ));
    }

    #[test]
    fn products() {
        let q = q();
        let e = HurwitzSeries::exp(&q, 5);
        assert_eq!(
            e.mul(&e).unwrap(),
            HurwitzSeries::from_ints(&q, &[1, 2, 4, 8, 16, 32])
        );
        let x = HurwitzSeries::variable(&q, 3);
        assert_eq!(
            x.mul(&x).unwrap(),
            HurwitzSeries::from_ints(&q, &[0, 0, 2, 0])
        );
        let f = qs(&["1/2", "3", "-1", "7"]);
        assert_eq!(f.mul(&HurwitzSeries::one(&q, 3)).unwrap(), f);
    }

    #[test]
    fn derivatives() {
        let q = q();
        let f = qs(&["1", "2", "3"]);
        assert_eq!(f.derivative().unwrap(), qs(&["2", "3"]));
        assert_eq!(qs(&["0", "0", "1"]).derivative().unwrap(), qs(&["0", "1"]));
        assert!(matches!(
            qs(&["4"]).derivative(),
            Err(Error::OrderExhausted(_))
        ));
        let seq = HurwitzSeries::exp(&q, 3).delta_sequence();
        assert_eq!(seq.len(), 4);
        for (k, s) in seq.iter().enumerate() {
            assert_eq!(*s, HurwitzSeries::exp(&q, 3 - k));
        }
    }

    #[test]
    fn composition() {
        let q = q();
        let f = qs(&["3", "1/2", "-2", "5"]);
        assert_eq!(f.compose(&HurwitzSeries::variable(&q, 3)).unwrap(), f);
        let two_x = qs(&["0", "2", "0", "0", "0"]);
        assert_eq!(
            HurwitzSeries::exp(&q, 4).compose(&two_x).unwrap(),
            HurwitzSeries::from_ints(&q, &[1, 2, 4, 8, 16])
        );
        assert_eq!(
            f.compose(&qs(&["1", "1", "0", "0"])),
            Err(Error::NonzeroConstantTerm)
        );
    }

    #[test]
    fn scale_substitution() {
        let q = q();
        let f = HurwitzSeries::from_ints(&q, &[1, 2, 3]);
        assert_eq!(f.scale_substitute(&q.one()), f);
        assert_eq!(
            f.scale_substitute(&q.from_int(2)),
            HurwitzSeries::from_ints(&q, &[1, 4, 12])
        );
        assert_eq!(
            HurwitzSeries::exp(&q, 3).scale_substitute(&q.from_int(-1)),
            HurwitzSeries::from_ints(&q, &[1, -1, 1, -1])
        );
    }

    #[test]
    fn shifts_and_evaluation() {
        let q = q();
        let f = qs(&["1", "2", "1"]);
        assert_eq!(f.taylor_shift(&q.zero()).unwrap(), f);
        assert_eq!(
            qs(&["0", "1"]).taylor_shift(&q.from_int(5)).unwrap(),
            qs(&["5", "1"])
        );
        assert_eq!(f.taylor_shift(&q.one()).unwrap(), qs(&["7/2", "3", "1"]));
        assert_eq!(
            HurwitzSeries::from_ints(&q, &[1, 1, 1])
                .evaluate(&q.from_int(2))
                .unwrap(),
            q.from_int(5)
        );
        assert_eq!(f.evaluate(&q.zero()).unwrap(), q.one());
        assert!(f.series_eq(&f, 2).unwrap());
        assert!(matches!(
            f.series_eq(&f, 3),
            Err(Error::OrderExceeded { .. })
        ));
    }

    #[test]
    fn integer_series_shift_lands_in_fraction_field() {
        let z = Ring::integers();
        let f = HurwitzSeries::from_ints(&z, &[0, 0, 1]);
        let shifted = f.taylor_shift(&z.from_int(1)).unwrap();
        assert_eq!(*shifted.ring(), Ring::rationals());
        assert_eq!(shifted, qs(&["1/2", "1", "1"]));
    }

    #[test]
    fn json_round_trip() {
        let g = Ring::gaussian();
        let f = HurwitzSeries::parse(&g, &["1+2i", "-3i", "4"]).unwrap();
        let json = f.to_json();
        assert_eq!(json.egf_coeffs, vec!["1+2i", "-3i", "4"]);
        let text = serde_json::to_string(&json).unwrap();
        assert_eq!(
            text,
            r#"{"ring":"gauss","order":2,"egf_coeffs":["1+2i","-3i","4"]}"#
        );
        let back: SeriesJson = serde_json::from_str(&text).unwrap();
        assert_eq!(HurwitzSeries::from_json(&back).unwrap(), f);
    }
}
