//! Exact arithmetic for the supported integral domains.
//!
//! Elements are plain values ([`Elem`]); every operation goes through a [`Ring`]
//! handle that knows how to interpret them. A ring and its fraction field share
//! the same element representation, so lifting an element into `Frac(R)` is free
//! and [`Ring::contains`] decides membership in the smaller ring.
//!
//! | ring | payload |
//! |------|---------|
//! | `z`, `q` | [`Elem::Rat`] (integral for `z`) |
//! | `gauss`, `eisen`, `quad:d` and their fraction fields | [`Elem::Quad`] `a + b*g` |
//! | `roots:m`, `roots:all` and their fraction fields | [`Elem::Cyclo`] |
//! | `series(R,N)` | [`Elem::Series`], `N+1` Hurwitz coefficients |

pub mod cyclotomic;
pub mod spec;
pub(crate) mod text;
pub mod units;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
pub use cyclotomic::Cyclo;
pub use spec::{RingSpec, RootsOrder};
pub use units::{unit_group_model, UnitGroupModel};

/// An exact ring element. Its meaning depends on the [`Ring`] it is used with.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Elem {
    Rat(BigRational),
    /// `a + b*g` where `g` is the generator of a quadratic ring.
    Quad(BigRational, BigRational),
    Cyclo(Cyclo),
    /// Hurwitz coefficients `a_0..a_N` of a truncated series.
    Series(Vec<Elem>),
}

/// Generator `g` of a quadratic ring, reduced by `g^2 = p + q*g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct QuadGen {
    pub p: i64,
    pub q: i64,
    pub letter: char,
}

impl QuadGen {
    fn for_spec(spec: &RingSpec) -> Option<QuadGen> {
        match spec {
            RingSpec::Gaussian => Some(QuadGen {
                p: -1,
                q: 0,
                letter: 'i',
            }),
            RingSpec::Eisenstein => Some(QuadGen {
                p: -1,
                q: -1,
                letter: 'w',
            }),
            RingSpec::QuadReal(d) if d.rem_euclid(4) == 1 => Some(QuadGen {
                p: (d - 1) / 4,
                q: 1,
                letter: 'r',
            }),
            RingSpec::QuadReal(d) => Some(QuadGen {
                p: *d,
                q: 0,
                letter: 'r',
            }),
            _ => None,
        }
    }

    fn to_complex(self) -> Complex64 {
        let disc = (self.q * self.q + 4 * self.p) as f64;
        let root = Complex64::new(disc, 0.0).sqrt();
        (Complex64::new(self.q as f64, 0.0) + root) / 2.0
    }

    fn mul(
        self,
        a: &BigRational,
        b: &BigRational,
        c: &BigRational,
        d: &BigRational,
    ) -> (BigRational, BigRational) {
        let bd = b * d;
        let p = BigRational::from_integer(self.p.into());
        let q = BigRational::from_integer(self.q.into());
        (a * c + &bd * p, a * d + b * c + bd * q)
    }

    fn norm(self, a: &BigRational, b: &BigRational) -> BigRational {
        let p = BigRational::from_integer(self.p.into());
        let q = BigRational::from_integer(self.q.into());
        a * a + q * a * b - p * b * b
    }

    fn conj(self, a: &BigRational, b: &BigRational) -> (BigRational, BigRational) {
        (a + b * BigRational::from_integer(self.q.into()), -b)
    }
}

#[derive(Debug)]
enum Kind {
    Integers,
    Rationals,
    Quad { gen: QuadGen, field: bool },
    Cyclo { order: RootsOrder, field: bool },
    Series { base: Ring, order: usize },
}

#[derive(Debug)]
struct Inner {
    spec: RingSpec,
    kind: Kind,
}

/// Handle to a constructed ring. Cheap to clone; equality is equality of canonical specs.
#[derive(Clone)]
pub struct Ring {
    inner: Arc<Inner>,
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.spec == other.inner.spec
    }
}

impl Eq for Ring {}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({})", self.inner.spec)
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.inner.spec.fmt(f)
    }
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Ring {
    pub fn new(spec: RingSpec) -> Result<Ring> {
        let spec = spec.canonical()?;
        let kind = match &spec {
            RingSpec::Integers => Kind::Integers,
            RingSpec::Rationals => Kind::Rationals,
            RingSpec::Gaussian | RingSpec::Eisenstein | RingSpec::QuadReal(_) => Kind::Quad {
                gen: QuadGen::for_spec(&spec).unwrap(),
                field: false,
            },
            RingSpec::RootsOfUnity(order) => Kind::Cyclo {
                order: *order,
                field: false,
            },
            RingSpec::FractionOf(inner) => match inner.as_ref() {
                RingSpec::RootsOfUnity(order) => Kind::Cyclo {
                    order: *order,
                    field: true,
                },
                other => Kind::Quad {
                    gen: QuadGen::for_spec(other).unwrap(),
                    field: true,
                },
            },
            RingSpec::SeriesOver(inner, order) => Kind::Series {
                base: Ring::new((**inner).clone())?,
                order: *order,
            },
        };
        Ok(Ring {
            inner: Arc::new(Inner { spec, kind }),
        })
    }

    pub fn integers() -> Ring {
        Ring::new(RingSpec::Integers).unwrap()
    }

    pub fn rationals() -> Ring {
        Ring::new(RingSpec::Rationals).unwrap()
    }

    pub fn gaussian() -> Ring {
        Ring::new(RingSpec::Gaussian).unwrap()
    }

    pub fn eisenstein() -> Ring {
        Ring::new(RingSpec::Eisenstein).unwrap()
    }

    pub fn quad_real(d: i64) -> Result<Ring> {
        Ring::new(RingSpec::QuadReal(d))
    }

    pub fn roots_of_unity(order: RootsOrder) -> Result<Ring> {
        Ring::new(RingSpec::RootsOfUnity(order))
    }

    pub fn series_over(base: &Ring, order: usize) -> Ring {
        Ring::new(RingSpec::series_over(base.spec().clone(), order))
            .expect("series over a valid ring is valid")
    }

    pub fn spec(&self) -> &RingSpec {
        &self.inner.spec
    }

    pub fn is_field(&self) -> bool {
        match &self.inner.kind {
            Kind::Rationals => true,
            Kind::Quad { field, .. } | Kind::Cyclo { field, .. } => *field,
            Kind::Integers | Kind::Series { .. } => false,
        }
    }

    pub fn is_series(&self) -> bool {
        matches!(self.inner.kind, Kind::Series { .. })
    }

    /// Base ring and order of a series ring.
    pub fn series_parts(&self) -> Option<(&Ring, usize)> {
        match &self.inner.kind {
            Kind::Series { base, order } => Some((base, *order)),
            _ => None,
        }
    }

    /// `Frac(R)`. Series rings have no fraction field; for them the coefficient ring is
    /// replaced by its fraction field instead.
    pub fn fraction_field(&self) -> Ring {
        if self.is_field() {
            return self.clone();
        }
        match &self.inner.kind {
            Kind::Series { base, order } => Ring::series_over(&base.fraction_field(), *order),
            _ => Ring::new(RingSpec::fraction_of(self.spec().clone())).expect("fraction field"),
        }
    }

    pub(crate) fn quad_gen(&self) -> Option<QuadGen> {
        match &self.inner.kind {
            Kind::Quad { gen, .. } => Some(*gen),
            _ => None,
        }
    }

    pub(crate) fn roots_order(&self) -> Option<RootsOrder> {
        match &self.inner.kind {
            Kind::Cyclo { order, .. } => Some(*order),
            _ => None,
        }
    }

    fn mismatch(&self, x: &Elem) -> ! {
        panic!("element {x:?} does not belong to ring {}", self.spec())
    }

    // ---- constructors ------------------------------------------------------------

    /// The canonical image of a rational number. Only meaningful as a ring element when
    /// the value lies in the ring; callers dividing by integers rely on the sharing of
    /// representation between `R` and `Frac(R)`.
    pub(crate) fn rational_unchecked(&self, q: BigRational) -> Elem {
        match &self.inner.kind {
            Kind::Integers | Kind::Rationals => Elem::Rat(q),
            Kind::Quad { .. } => Elem::Quad(q, BigRational::zero()),
            Kind::Cyclo { .. } => Elem::Cyclo(Cyclo::from_rational(q)),
            Kind::Series { base, order } => {
                let mut coeffs = vec![base.zero(); order + 1];
                coeffs[0] = base.rational_unchecked(q);
                Elem::Series(coeffs)
            }
        }
    }

    pub fn from_rational(&self, q: &BigRational) -> Result<Elem> {
        let x = self.rational_unchecked(q.clone());
        if self.contains(&x) {
            Ok(x)
        } else {
            Err(Error::NotDivisible(self.spec().to_string()))
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Elem {
        self.rational_unchecked(BigRational::from_integer(n.clone()))
    }

    pub fn from_int(&self, n: i64) -> Elem {
        self.rational_unchecked(rat(n))
    }

    pub fn zero(&self) -> Elem {
        self.from_int(0)
    }

    pub fn one(&self) -> Elem {
        self.from_int(1)
    }

    /// `a + b*g` in a quadratic ring.
    pub fn quad(&self, a: i64, b: i64) -> Elem {
        assert!(
            self.quad_gen().is_some(),
            "{} is not quadratic",
            self.spec()
        );
        Elem::Quad(rat(a), rat(b))
    }

    /// The generator `g` of a quadratic ring (`i`, `w`, `sqrt(d)` or `(1+sqrt(d))/2`).
    pub fn generator(&self) -> Option<Elem> {
        self.quad_gen().map(|_| Elem::Quad(rat(0), rat(1)))
    }

    /// `exp(2 pi i * num/den)` in a root-of-unity ring.
    pub fn root_of_unity(&self, num: i64, den: u64) -> Result<Elem> {
        let x = match &self.inner.kind {
            Kind::Cyclo { .. } => Elem::Cyclo(Cyclo::root(num, den)),
            _ => {
                return Err(Error::Unsupported(format!(
                    "roots of unity in {}",
                    self.spec()
                )))
            }
        };
        if self.contains(&x) {
            Ok(x)
        } else {
            Err(Error::Unsupported(format!(
                "zeta({num}/{den}) is not in {}",
                self.spec()
            )))
        }
    }

    /// Constant series with the given base-ring value.
    pub fn constant(&self, x: Elem) -> Elem {
        match &self.inner.kind {
            Kind::Series { base, order } => {
                let mut coeffs = vec![base.zero(); order + 1];
                coeffs[0] = x;
                Elem::Series(coeffs)
            }
            _ => x,
        }
    }

    /// Embeds an element of `base` (the bottom coefficient ring of a tower) as a constant.
    pub fn lift_scalar(&self, x: &Elem) -> Elem {
        match &self.inner.kind {
            Kind::Series { base, .. } => self.constant(base.lift_scalar(x)),
            _ => x.clone(),
        }
    }

    // ---- arithmetic ----------------------------------------------------------------

    pub fn add(&self, x: &Elem, y: &Elem) -> Elem {
        match (x, y) {
            (Elem::Rat(a), Elem::Rat(b)) => Elem::Rat(a + b),
            (Elem::Quad(a, b), Elem::Quad(c, d)) => Elem::Quad(a + c, b + d),
            (Elem::Cyclo(a), Elem::Cyclo(b)) => Elem::Cyclo(a.add(b)),
            (Elem::Series(a), Elem::Series(b)) => {
                let (base, _) = self.series_parts().unwrap_or_else(|| self.mismatch(x));
                Elem::Series(a.iter().zip(b).map(|(u, v)| base.add(u, v)).collect())
            }
            _ => self.mismatch(x),
        }
    }

    pub fn neg(&self, x: &Elem) -> Elem {
        match x {
            Elem::Rat(a) => Elem::Rat(-a),
            Elem::Quad(a, b) => Elem::Quad(-a, -b),
            Elem::Cyclo(a) => Elem::Cyclo(a.neg()),
            Elem::Series(a) => {
                let (base, _) = self.series_parts().unwrap_or_else(|| self.mismatch(x));
                Elem::Series(a.iter().map(|u| base.neg(u)).collect())
            }
        }
    }

    pub fn sub(&self, x: &Elem, y: &Elem) -> Elem {
        match (x, y) {
            (Elem::Rat(a), Elem::Rat(b)) => Elem::Rat(a - b),
            (Elem::Quad(a, b), Elem::Quad(c, d)) => Elem::Quad(a - c, b - d),
            (Elem::Cyclo(a), Elem::Cyclo(b)) => Elem::Cyclo(a.sub(b)),
            _ => self.add(x, &self.neg(y)),
        }
    }

    pub fn mul(&self, x: &Elem, y: &Elem) -> Elem {
        match (x, y) {
            (Elem::Rat(a), Elem::Rat(b)) => Elem::Rat(a * b),
            (Elem::Quad(a, b), Elem::Quad(c, d)) => {
                let gen = self.quad_gen().unwrap_or_else(|| self.mismatch(x));
                let (u, v) = gen.mul(a, b, c, d);
                Elem::Quad(u, v)
            }
            (Elem::Cyclo(a), Elem::Cyclo(b)) => Elem::Cyclo(a.mul(b)),
            (Elem::Series(a), Elem::Series(b)) => {
                let (base, _) = self.series_parts().unwrap_or_else(|| self.mismatch(x));
                Elem::Series(binomial_convolution(base, a, b))
            }
            _ => self.mismatch(x),
        }
    }

    /// `k * x` via the canonical map `Z -> R`.
    pub fn mul_int(&self, x: &Elem, k: &BigInt) -> Elem {
        self.scale_by_rational(x, &BigRational::from_integer(k.clone()))
    }

    /// `q * x`; the result lies in the ring only when the product is integral.
    pub(crate) fn scale_by_rational(&self, x: &Elem, q: &BigRational) -> Elem {
        match x {
            Elem::Rat(a) => Elem::Rat(a * q),
            Elem::Quad(a, b) => Elem::Quad(a * q, b * q),
            Elem::Cyclo(a) => Elem::Cyclo(a.scale(q)),
            Elem::Series(a) => {
                let (base, _) = self.series_parts().unwrap_or_else(|| self.mismatch(x));
                Elem::Series(a.iter().map(|u| base.scale_by_rational(u, q)).collect())
            }
        }
    }

    pub fn pow(&self, x: &Elem, mut e: u64) -> Elem {
        let mut result = self.one();
        let mut base = x.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        result
    }

    /// `x^e` for any integer `e`; negative exponents need `x` to be a unit.
    pub fn pow_signed(&self, x: &Elem, e: i64) -> Result<Elem> {
        if e >= 0 {
            Ok(self.pow(x, e as u64))
        } else {
            Ok(self.pow(&self.try_invert(x)?, e.unsigned_abs()))
        }
    }

    pub fn sum<'a>(&self, items: impl IntoIterator<Item = &'a Elem>) -> Elem {
        items
            .into_iter()
            .fold(self.zero(), |acc, x| self.add(&acc, x))
    }

    pub fn is_zero(&self, x: &Elem) -> bool {
        match x {
            Elem::Rat(a) => a.is_zero(),
            Elem::Quad(a, b) => a.is_zero() && b.is_zero(),
            Elem::Cyclo(a) => a.is_zero(),
            Elem::Series(a) => match self.series_parts() {
                Some((base, _)) => a.iter().all(|u| base.is_zero(u)),
                None => self.mismatch(x),
            },
        }
    }

    pub fn is_one(&self, x: &Elem) -> bool {
        *x == self.one()
    }

    /// Inverse in the fraction field (or, for series, in the series ring over it).
    fn field_inverse(&self, x: &Elem) -> Result<Elem> {
        if self.is_zero(x) {
            return Err(Error::DivisionByZero);
        }
        Ok(match x {
            Elem::Rat(a) => Elem::Rat(a.recip()),
            Elem::Quad(a, b) => {
                let gen = self.quad_gen().unwrap_or_else(|| self.mismatch(x));
                let n = gen.norm(a, b);
                let (c, d) = gen.conj(a, b);
                Elem::Quad(c / &n, d / n)
            }
            Elem::Cyclo(a) => Elem::Cyclo(a.inverse().ok_or(Error::DivisionByZero)?),
            Elem::Series(a) => {
                let (base, _) = self.series_parts().unwrap_or_else(|| self.mismatch(x));
                let head = base.try_invert(&a[0]).map_err(|e| match e {
                    Error::DivisionByZero => Error::NotAUnit,
                    other => other,
                })?;
                Elem::Series(series_inverse(base, a, &head))
            }
        })
    }

    /// `y` with `x*y = 1`. In a field every nonzero element inverts.
    pub fn try_invert(&self, x: &Elem) -> Result<Elem> {
        let y = self.field_inverse(x)?;
        if self.contains(&y) {
            Ok(y)
        } else {
            Err(Error::NotAUnit)
        }
    }

    pub fn is_unit(&self, x: &Elem) -> bool {
        self.try_invert(x).is_ok()
    }

    /// Exact quotient `x / y` when it lies in the ring.
    pub fn try_divide(&self, x: &Elem, y: &Elem) -> Result<Elem> {
        if self.is_zero(y) {
            return Err(Error::DivisionByZero);
        }
        if let Elem::Series(_) = y {
            return match self.field_inverse(y) {
                Ok(inv) => {
                    let q = self.mul(x, &inv);
                    if self.contains(&q) {
                        Ok(q)
                    } else {
                        Err(Error::NotDivisible(self.spec().to_string()))
                    }
                }
                Err(Error::NotAUnit) => Err(Error::NotDivisible(self.spec().to_string())),
                Err(e) => Err(e),
            };
        }
        let q = self.mul(x, &self.field_inverse(y)?);
        if self.contains(&q) {
            Ok(q)
        } else {
            Err(Error::NotDivisible(self.spec().to_string()))
        }
    }

    /// Whether `x` is a well-formed element of this ring (integrality included).
    pub fn contains(&self, x: &Elem) -> bool {
        match (&self.inner.kind, x) {
            (Kind::Integers, Elem::Rat(a)) => a.is_integer(),
            (Kind::Rationals, Elem::Rat(_)) => true,
            (Kind::Quad { field, .. }, Elem::Quad(a, b)) => {
                *field || (a.is_integer() && b.is_integer())
            }
            (Kind::Cyclo { order, field }, Elem::Cyclo(c)) => {
                let in_field = match order {
                    RootsOrder::All => true,
                    RootsOrder::Finite(m) => m % c.normalized().conductor() == 0,
                };
                in_field && (*field || c.is_integral())
            }
            (Kind::Series { base, order }, Elem::Series(a)) => {
                a.len() == order + 1 && a.iter().all(|u| base.contains(u))
            }
            _ => false,
        }
    }

    /// The value as a rational number, when it is one.
    pub fn as_rational(&self, x: &Elem) -> Option<BigRational> {
        match x {
            Elem::Rat(a) => Some(a.clone()),
            Elem::Quad(a, b) => b.is_zero().then(|| a.clone()),
            Elem::Cyclo(c) => c.as_rational(),
            Elem::Series(a) => {
                let (base, _) = self.series_parts()?;
                if a[1..].iter().all(|u| base.is_zero(u)) {
                    base.as_rational(&a[0])
                } else {
                    None
                }
            }
        }
    }

    /// Floating-point image under the complex embedding
    /// (`w -> (-1 + sqrt(3) i)/2`, `sqrt(d)` positive, `zeta(q) -> exp(2 pi i q)`).
    pub fn embed_complex(&self, x: &Elem) -> Result<Complex64> {
        match x {
            Elem::Rat(a) => Ok(Complex64::new(a.to_f64().unwrap_or(f64::NAN), 0.0)),
            Elem::Quad(a, b) => {
                let gen = self.quad_gen().unwrap_or_else(|| self.mismatch(x));
                let (a, b) = (
                    a.to_f64().unwrap_or(f64::NAN),
                    b.to_f64().unwrap_or(f64::NAN),
                );
                Ok(Complex64::new(a, 0.0) + gen.to_complex() * b)
            }
            Elem::Cyclo(c) => Ok(c.to_complex()),
            Elem::Series(_) => Err(Error::NotEmbeddable(self.spec().to_string())),
        }
    }

    // ---- sampling --------------------------------------------------------------------

    /// A random element with small coordinates (absolute value at most `bound`).
    pub fn random_element<R: rand::Rng + ?Sized>(&self, rng: &mut R, bound: i64) -> Elem {
        let field = self.is_field();
        let coord = |rng: &mut R| -> BigRational {
            let num = rng.gen_range(-bound..=bound);
            let den = if field { rng.gen_range(1..=3) } else { 1 };
            BigRational::new(num.into(), BigInt::from(den))
        };
        match &self.inner.kind {
            Kind::Integers | Kind::Rationals => Elem::Rat(coord(rng)),
            Kind::Quad { .. } => Elem::Quad(coord(rng), coord(rng)),
            Kind::Cyclo { order, .. } => {
                let n = match order {
                    RootsOrder::Finite(m) => *m,
                    RootsOrder::All => 12,
                };
                let mut acc = Cyclo::zero();
                for j in 0..cyclotomic::euler_phi(n) {
                    acc = acc.add(&Cyclo::root(j as i64, n).scale(&coord(rng)));
                }
                Elem::Cyclo(acc)
            }
            Kind::Series { base, order } => Elem::Series(
                (0..=*order)
                    .map(|_| base.random_element(rng, bound))
                    .collect(),
            ),
        }
    }

    pub fn random_nonzero<R: rand::Rng + ?Sized>(&self, rng: &mut R, bound: i64) -> Elem {
        loop {
            let x = self.random_element(rng, bound);
            if !self.is_zero(&x) {
                return x;
            }
        }
    }

    /// Size measure used to keep randomized checks small.
    pub fn height(&self, x: &Elem) -> BigRational {
        match x {
            Elem::Rat(a) => a.abs(),
            Elem::Quad(a, b) => a.abs().max(b.abs()),
            Elem::Cyclo(c) => c.max_abs_coeff(),
            Elem::Series(a) => {
                let (base, _) = self.series_parts().unwrap_or_else(|| self.mismatch(x));
                a.iter()
                    .map(|u| base.height(u))
                    .max()
                    .unwrap_or_else(BigRational::zero)
            }
        }
    }
}

/// Binomial coefficient `C(n, k)` as a big integer.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Product of two Hurwitz coefficient lists, truncated to the shorter one.
pub(crate) fn binomial_convolution(ring: &Ring, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let len = a.len().min(b.len());
    (0..len)
        .map(|n| {
            let mut acc = ring.zero();
            for k in 0..=n {
                if ring.is_zero(&a[k]) || ring.is_zero(&b[n - k]) {
                    continue;
                }
                let term = ring.mul(&a[k], &b[n - k]);
                acc = ring.add(&acc, &ring.mul_int(&term, &binomial(n, k)));
            }
            acc
        })
        .collect()
}

fn series_inverse(base: &Ring, a: &[Elem], head_inv: &Elem) -> Vec<Elem> {
    let mut b: Vec<Elem> = Vec::with_capacity(a.len());
    b.push(head_inv.clone());
    for n in 1..a.len() {
        let mut acc = base.zero();
        for k in 1..=n {
            let term = base.mul(&a[k], &b[n - k]);
            acc = base.add(&acc, &base.mul_int(&term, &binomial(n, k)));
        }
        b.push(base.neg(&base.mul(head_inv, &acc)));
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn quadratic_unit_identities() {
        let z2 = Ring::quad_real(2).unwrap();
        assert!(z2.is_one(&z2.mul(&z2.quad(1, 1), &z2.quad(-1, 1))));
        assert_eq!(z2.try_invert(&z2.quad(1, 1)).unwrap(), z2.quad(-1, 1));
        let eis = Ring::eisenstein();
        let w = eis.generator().unwrap();
        let w2 = eis.mul(&w, &w);
        assert_eq!(w2, eis.quad(-1, -1));
        assert!(eis.is_one(&eis.mul(&w, &w2)));
        let gauss = Ring::gaussian();
        let i = gauss.generator().unwrap();
        assert_eq!(gauss.try_invert(&i).unwrap(), gauss.quad(0, -1));
        assert_eq!(gauss.mul(&i, &i), gauss.from_int(-1));
    }

    #[test]
    fn golden_ring_uses_half_integer_generator() {
        let r = Ring::quad_real(5).unwrap();
        let phi = r.generator().unwrap();
        // phi^2 = phi + 1
        assert_eq!(r.mul(&phi, &phi), r.quad(1, 1));
        assert!(r.is_unit(&phi));
        let z = r.embed_complex(&phi).unwrap();
        assert!((z.re - 1.618_033_988_749_895).abs() < 1e-12);
    }

    #[test]
    fn invert_errors() {
        let z = Ring::integers();
        assert_eq!(z.try_invert(&z.from_int(2)), Err(Error::NotAUnit));
        assert_eq!(z.try_invert(&z.zero()), Err(Error::DivisionByZero));
        assert_eq!(z.try_invert(&z.from_int(-1)).unwrap(), z.from_int(-1));
        let q = Ring::rationals();
        assert_eq!(
            q.try_invert(&q.from_int(2)).unwrap(),
            Elem::Rat(BigRational::new(1.into(), 2.into()))
        );
        assert!(z.try_divide(&z.from_int(3), &z.from_int(2)).is_err());
        assert_eq!(
            z.try_divide(&z.from_int(6), &z.from_int(-2)).unwrap(),
            z.from_int(-3)
        );
        let gauss = Ring::gaussian();
        // (1+i)^2 = 2i, so 2i / (1+i) = 1+i
        assert_eq!(
            gauss
                .try_divide(&gauss.quad(0, 2), &gauss.quad(1, 1))
                .unwrap(),
            gauss.quad(1, 1)
        );
        assert!(gauss
            .try_divide(&gauss.quad(1, 0), &gauss.quad(1, 1))
            .is_err());
    }

    #[test]
    fn fraction_field_agrees_with_base() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for ring in [
            Ring::integers(),
            Ring::gaussian(),
            Ring::eisenstein(),
            Ring::quad_real(3).unwrap(),
        ] {
            let field = ring.fraction_field();
            assert!(field.is_field());
            for _ in 0..20 {
                let x = ring.random_element(&mut rng, 5);
                let y = ring.random_element(&mut rng, 5);
                assert_eq!(ring.mul(&x, &y), field.mul(&x, &y));
                assert_eq!(ring.add(&x, &y), field.add(&x, &y));
                assert!(field.contains(&x));
            }
        }
    }

    #[test]
    fn embeddings() {
        let eis = Ring::eisenstein();
        let w = eis.embed_complex(&eis.generator().unwrap()).unwrap();
        assert!((w.re + 0.5).abs() < 1e-15 && (w.im - 0.866_025_403_784_438_6).abs() < 1e-15);
        let q = Ring::rationals();
        let x = q
            .embed_complex(&Elem::Rat(BigRational::new(3.into(), 2.into())))
            .unwrap();
        assert_eq!((x.re, x.im), (1.5, 0.0));
        let z2 = Ring::quad_real(2).unwrap();
        let y = z2.embed_complex(&z2.quad(1, 1)).unwrap();
        assert!((y.re - 2.414_213_562_373_095).abs() < 1e-12 && y.im == 0.0);
        let s = Ring::series_over(&q, 2);
        assert!(matches!(
            s.embed_complex(&s.one()),
            Err(Error::NotEmbeddable(_))
        ));
    }

    #[test]
    fn series_ring_inverse() {
        let q = Ring::rationals();
        let s = Ring::series_over(&q, 4);
        // exp(X) has Hurwitz coefficients all ones; its inverse is exp(-X).
        let exp = Elem::Series(vec![q.one(); 5]);
        let inv = s.try_invert(&exp).unwrap();
        let expected = Elem::Series(
            (0..5)
                .map(|n| q.from_int(if n % 2 == 0 { 1 } else { -1 }))
                .collect(),
        );
        assert_eq!(inv, expected);
        let x = Elem::Series(vec![q.zero(), q.one(), q.zero(), q.zero(), q.zero()]);
        assert_eq!(s.try_invert(&x), Err(Error::NotAUnit));
    }

    #[test]
    fn roots_of_unity_ring() {
        let r = Ring::roots_of_unity(RootsOrder::Finite(12)).unwrap();
        let z = r.root_of_unity(5, 12).unwrap();
        assert!(r.is_unit(&z));
        assert!(r.is_one(&r.pow(&z, 12)));
        assert!(r.root_of_unity(1, 5).is_err());
        let two = r.from_int(2);
        assert!(!r.is_unit(&two));
        assert!(r.fraction_field().is_unit(&two));
    }
}
