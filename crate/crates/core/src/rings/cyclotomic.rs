//! Exact arithmetic in cyclotomic fields `Q(zeta_n)`.
//!
//! An element is stored as its coordinates in the power basis
//! `1, zeta_n, ..., zeta_n^(phi(n)-1)`. Elements with different conductors are
//! lifted to the least common multiple before they are combined, so the
//! conductor of a value only ever grows to the lcm of the conductors that fed it.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Integer coefficients of the `n`-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_poly(n: u64) -> Arc<Vec<i128>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<i128>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    assert!(n > 0, "cyclotomic polynomial of order 0");
    // x^n - 1 divided by every Phi_d with d | n, d < n.
    let mut poly = vec![0i128; n as usize + 1];
    poly[0] = -1;
    poly[n as usize] = 1;
    for d in divisors(n) {
        if d == n {
            continue;
        }
        poly = div_monic_exact(&poly, &cyclotomic_poly(d));
    }
    let poly = Arc::new(poly);
    cache.lock().unwrap().insert(n, poly.clone());
    poly
}

fn div_monic_exact(num: &[i128], den: &[i128]) -> Vec<i128> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qlen = num.len() - dd;
    let mut quot = vec![0i128; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        if c != 0 {
            for (j, dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|r| *r == 0));
    quot
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn euler_phi(n: u64) -> u64 {
    (cyclotomic_poly(n).len() - 1) as u64
}

/// Reduces a polynomial in `zeta_n` modulo the `n`-th cyclotomic polynomial.
fn reduce(mut poly: Vec<BigRational>, n: u64) -> Vec<BigRational> {
    let phi = cyclotomic_poly(n);
    let deg = phi.len() - 1;
    for i in (deg..poly.len()).rev() {
        let c = std::mem::replace(&mut poly[i], BigRational::zero());
        if c.is_zero() {
            continue;
        }
        for (j, pj) in phi.iter().take(deg).enumerate() {
            if *pj != 0 {
                poly[i - deg + j] -= &c * BigRational::from_integer(BigInt::from(*pj));
            }
        }
    }
    poly.resize(deg, BigRational::zero());
    poly
}

#[derive(Clone, Debug)]
pub struct Cyclo {
    n: u64,
    coeffs: Vec<BigRational>,
}

impl Cyclo {
    pub fn from_rational(q: BigRational) -> Self {
        Cyclo {
            n: 1,
            coeffs: vec![q],
        }
    }

    pub fn zero() -> Self {
        Self::from_rational(BigRational::zero())
    }

    /// `exp(2 pi i * num / den)`.
    pub fn root(num: i64, den: u64) -> Self {
        assert!(den > 0);
        let j = num.rem_euclid(den as i64) as u64;
        let g = j.gcd(&den);
        let (j, n) = (j / g, den / g);
        let mut poly = vec![BigRational::zero(); j as usize + 1];
        poly[j as usize] = BigRational::one();
        Cyclo {
            n,
            coeffs: reduce(poly, n),
        }
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coordinates in the power basis of `Q(zeta_l)`; `l` must be a multiple of the conductor.
    fn lift(&self, l: u64) -> Vec<BigRational> {
        if l == self.n {
            return self.coeffs.clone();
        }
        debug_assert_eq!(l % self.n, 0);
        let step = (l / self.n) as usize;
        let mut poly = vec![BigRational::zero(); step * (self.coeffs.len().max(1) - 1) + 1];
        for (j, c) in self.coeffs.iter().enumerate() {
            poly[j * step] = c.clone();
        }
        reduce(poly, l)
    }

    fn common(&self, other: &Self) -> (u64, Vec<BigRational>, Vec<BigRational>) {
        let l = self.n.lcm(&other.n);
        (l, self.lift(l), other.lift(l))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (n, a, b) = self.common(other);
        Cyclo {
            n,
            coeffs: a.into_iter().zip(b).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let (n, a, b) = self.common(other);
        Cyclo {
            n,
            coeffs: a.into_iter().zip(b).map(|(x, y)| x - y).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Cyclo {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Cyclo {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (n, a, b) = self.common(other);
        let mut prod = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        Cyclo {
            n,
            coeffs: reduce(prod, n),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Multiplicative inverse in `Q(zeta_n)`, by solving `self * y = 1`.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.n;
        let dim = self.coeffs.len();
        // Column j of the multiplication matrix is self * zeta^j.
        let columns: Vec<Vec<BigRational>> = (0..dim)
            .map(|j| {
                let mut poly = vec![BigRational::zero(); dim + j];
                for (i, c) in self.coeffs.iter().enumerate() {
                    poly[i + j] = c.clone();
                }
                reduce(poly, n)
            })
            .collect();
        let mut rhs = vec![BigRational::zero(); dim];
        rhs[0] = BigRational::one();
        solve_columns(&columns, &rhs).map(|coeffs| Cyclo { n, coeffs })
    }

    /// Same value, re-expressed over the smallest cyclotomic field that contains it.
    pub fn normalized(&self) -> Self {
        if self.n == 1 {
            return self.clone();
        }
        for d in divisors(self.n) {
            if d == self.n {
                break;
            }
            let dim = euler_phi(d) as usize;
            let columns: Vec<Vec<BigRational>> = (0..dim)
                .map(|j| Cyclo::root(j as i64, d).lift(self.n))
                .collect();
            if let Some(coeffs) = solve_columns(&columns, &self.coeffs) {
                return Cyclo { n: d, coeffs };
            }
        }
        self.clone()
    }

    /// `Some((j, m))` when the value is exactly `exp(2 pi i j / m)` with `j/m` reduced.
    pub fn as_root_of_unity(&self) -> Option<(u64, u64)> {
        let me = self.normalized();
        let m = if me.n.is_multiple_of(2) {
            me.n
        } else {
            2 * me.n
        };
        (0..m).find(|&j| Cyclo::root(j as i64, m) == me).map(|j| {
            let g = j.gcd(&m);
            (j / g, m / g)
        })
    }

    pub fn to_complex(&self) -> Complex64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| {
                let theta = 2.0 * std::f64::consts::PI * j as f64 / self.n as f64;
                Complex64::from_polar(1.0, theta) * c.to_f64().unwrap_or(f64::NAN)
            })
            .sum()
    }

    /// The rational value, when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        let me = self.normalized();
        (me.n == 1).then(|| me.coeffs[0].clone())
    }

    pub fn max_abs_coeff(&self) -> BigRational {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigRational::zero)
    }
}

impl PartialEq for Cyclo {
    fn eq(&self, other: &Self) -> bool {
        if self.n == other.n {
            return self.coeffs == other.coeffs;
        }
        let (_, a, b) = self.common(other);
        a == b
    }
}

impl Eq for Cyclo {}

/// Finds `y` with `sum_j y_j * columns[j] = rhs`, if the system is consistent.
fn solve_columns(columns: &[Vec<BigRational>], rhs: &[BigRational]) -> Option<Vec<BigRational>> {
    let rows = rhs.len();
    let cols = columns.len();
    let mut m: Vec<Vec<BigRational>> = (0..rows)
        .map(|r| {
            let mut row: Vec<BigRational> = columns.iter().map(|c| c[r].clone()).collect();
            row.push(rhs[r].clone());
            row
        })
        .collect();
    let mut pivots = Vec::with_capacity(cols);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in c..=cols {
                    let delta = &f * &m[r][k];
                    m[i][k] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if m[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut y = vec![BigRational::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        y[c] = m[i][cols].clone();
    }
    Some(y)
}
