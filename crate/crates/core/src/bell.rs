//! Partial and complete Bell polynomials.
//!
//! `B_{n,k}(b_1, ..., b_{n-k+1})` is computed two ways: as a sum over partitions of `n`
//! into `k` parts with integer weights `n!/(prod j_h! (h!)^{j_h})`, and by the recurrence
//! `B_{n,k} = sum_{i=1}^{n-k+1} C(n-1, i-1) b_i B_{n-i,k-1}`. Both only multiply by
//! integers, so they work over any ring (and over series-valued entries through
//! [`Arith`]).

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::rings::{binomial, factorial, Elem, Ring};

/// Commutative ring operations on values of type `T`.
pub trait Arith {
    type T: Clone;
    fn zero(&self) -> Self::T;
    fn one(&self) -> Self::T;
    fn add(&self, x: &Self::T, y: &Self::T) -> Self::T;
    fn mul(&self, x: &Self::T, y: &Self::T) -> Self::T;
    fn mul_int(&self, x: &Self::T, k: &BigInt) -> Self::T;
    fn is_zero(&self, x: &Self::T) -> bool;
}

impl Arith for Ring {
    type T = Elem;

    fn zero(&self) -> Elem {
        Ring::zero(self)
    }

    fn one(&self) -> Elem {
        Ring::one(self)
    }

    fn add(&self, x: &Elem, y: &Elem) -> Elem {
        Ring::add(self, x, y)
    }

    fn mul(&self, x: &Elem, y: &Elem) -> Elem {
        Ring::mul(self, x, y)
    }

    fn mul_int(&self, x: &Elem, k: &BigInt) -> Elem {
        Ring::mul_int(self, x, k)
    }

    fn is_zero(&self, x: &Elem) -> bool {
        Ring::is_zero(self, x)
    }
}

/// A partition of `n` by multiplicities: `multiplicities[h-1] = j_h`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    n: usize,
    multiplicities: Vec<usize>,
}

impl Partition {
    pub fn new(multiplicities: Vec<usize>) -> Result<Self> {
        let n = multiplicities.len();
        let total: usize = multiplicities
            .iter()
            .enumerate()
            .map(|(i, j)| (i + 1) * j)
            .sum();
        if total != n {
            return Err(Error::BadRange(format!(
                "multiplicities sum to {total}, expected {n}"
            )));
        }
        Ok(Partition { n, multiplicities })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `j_h` for `1 <= h <= n`.
    pub fn multiplicity(&self, h: usize) -> usize {
        self.multiplicities[h - 1]
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    /// Number of parts, `sum j_h`.
    pub fn len(&self) -> usize {
        self.multiplicities.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// `n! / (prod_h j_h! (h!)^{j_h})`.
    pub fn weight(&self) -> BigInt {
        let mut den = BigInt::from(1);
        for (i, &j) in self.multiplicities.iter().enumerate() {
            if j > 0 {
                den *= factorial(j) * num_traits::pow(factorial(i + 1), j);
            }
        }
        factorial(self.n) / den
    }
}

fn check_range(n: usize, k: usize) -> Result<()> {
    if k < 1 || k > n {
        return Err(Error::BadRange(format!(
            "need 1 <= k <= n, got n={n}, k={k}"
        )));
    }
    Ok(())
}

/// Partitions of `n` into exactly `k` parts, in decreasing lexicographic order of
/// `(j_1, ..., j_n)`.
pub fn partitions(n: usize, k: usize) -> Result<Vec<Partition>> {
    check_range(n, k)?;
    let mut out = Vec::new();
    // prefixes of nonincreasing parts, with the sum still to distribute
    let mut stack: Vec<(Vec<usize>, usize)> = vec![(Vec::with_capacity(k), n)];
    while let Some((prefix, remaining)) = stack.pop() {
        let slots = k - prefix.len();
        if slots == 0 {
            let mut multiplicities = vec![0usize; n];
            for &p in &prefix {
                multiplicities[p - 1] += 1;
            }
            out.push(Partition { n, multiplicities });
            continue;
        }
        let max = prefix.last().copied().unwrap_or(n);
        let hi = max.min(remaining + 1 - slots);
        let lo = remaining.div_ceil(slots);
        for p in lo..=hi {
            let mut next = prefix.clone();
            next.push(p);
            stack.push((next, remaining - p));
        }
    }
    out.sort_by(|a, b| b.multiplicities.cmp(&a.multiplicities));
    Ok(out)
}

fn needed(b: &[impl Clone], n: usize, k: usize) -> Result<()> {
    if b.len() < n - k + 1 {
        return Err(Error::BadRange(format!(
            "B_{{{n},{k}}} needs {} entries of b, got {}",
            n - k + 1,
            b.len()
        )));
    }
    Ok(())
}

/// `B_{n,k}(b_1, ...)` by summing over partitions; `b[0]` is `b_1`.
pub fn partial_bell<A: Arith>(ar: &A, n: usize, k: usize, b: &[A::T]) -> Result<A::T> {
    check_range(n, k)?;
    needed(b, n, k)?;
    let mut acc = ar.zero();
    for p in partitions(n, k)? {
        let mut term = ar.one();
        for (i, &j) in p.multiplicities.iter().enumerate() {
            for _ in 0..j {
                term = ar.mul(&term, &b[i]);
            }
        }
        acc = ar.add(&acc, &ar.mul_int(&term, &p.weight()));
    }
    Ok(acc)
}

/// `B_{n,k}(b_1, ...)` by the recurrence in `n`.
pub fn partial_bell_rec<A: Arith>(ar: &A, n: usize, k: usize, b: &[A::T]) -> Result<A::T> {
    check_range(n, k)?;
    needed(b, n, k)?;
    let table = bell_table(ar, &b[..(n - k + 1)], n);
    Ok(table[n][k].clone())
}

/// Table `B[m][j]` for `0 <= j <= m <= n_max`, where entries that need more of `b`
/// than supplied are left at zero. `B[0][0] = 1`.
pub fn bell_table<A: Arith>(ar: &A, b: &[A::T], n_max: usize) -> Vec<Vec<A::T>> {
    let mut table: Vec<Vec<A::T>> = Vec::with_capacity(n_max + 1);
    table.push(vec![ar.one()]);
    for m in 1..=n_max {
        table.push(bell_row(ar, b, &table, m));
    }
    table
}

/// Row `m` of the Bell table given rows `0..m`.
pub(crate) fn bell_row<A: Arith>(ar: &A, b: &[A::T], table: &[Vec<A::T>], m: usize) -> Vec<A::T> {
    let mut row = vec![ar.zero(); m + 1];
    for (j, slot) in row.iter_mut().enumerate().skip(1) {
        let mut acc = ar.zero();
        for i in 1..=(m - j + 1) {
            if i > b.len() {
                break;
            }
            let prev = &table[m - i][j - 1];
            if ar.is_zero(prev) {
                continue;
            }
            let term = ar.mul(&b[i - 1], prev);
            acc = ar.add(&acc, &ar.mul_int(&term, &binomial(m - 1, i - 1)));
        }
        *slot = acc;
    }
    row
}

/// `Y_n = sum_{k=1}^n B_{n,k}(b) a_k`; `b[0] = b_1`, `a[0] = a_1`.
pub fn complete_bell<A: Arith>(ar: &A, n: usize, b: &[A::T], a: &[A::T]) -> Result<A::T> {
    if n < 1 || b.len() < n || a.len() < n {
        return Err(Error::BadRange(format!(
            "Y_{n} needs n >= 1 and n entries of a and b"
        )));
    }
    let table = bell_table(ar, &b[..n], n);
    let mut acc = ar.zero();
    for k in 1..=n {
        acc = ar.add(&acc, &ar.mul(&table[n][k], &a[k - 1]));
    }
    Ok(acc)
}

/// Faa di Bruno: given `outer = (F_0, ..., F_N)` and `inner = (g_0, g_1, ..., g_N)`,
/// returns `h_0 = F_0` and `h_n = sum_k B_{n,k}(g_1, ...) F_k`. With `F_k` the Hurwitz
/// coefficients of `f` and `g_0 = 0` this is the composition `f(g(X))`; `g_0` is ignored.
pub fn faa_di_bruno<A: Arith>(ar: &A, outer: &[A::T], inner: &[A::T]) -> Vec<A::T> {
    let len = outer.len().min(inner.len());
    if len == 0 {
        return Vec::new();
    }
    let table = bell_table(ar, &inner[1..len], len - 1);
    let mut out = Vec::with_capacity(len);
    out.push(outer[0].clone());
    for n in 1..len {
        let mut acc = ar.zero();
        for k in 1..=n {
            acc = ar.add(&acc, &ar.mul(&table[n][k], &outer[k]));
        }
        out.push(acc);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mults(n: usize, k: usize) -> Vec<Vec<usize>> {
        partitions(n, k)
            .unwrap()
            .into_iter()
            .map(|p| p.multiplicities)
            .collect()
    }

    #[test]
    fn small_partitions() {
        assert_eq!(mults(3, 2), vec![vec![1, 1, 0]]);
        assert_eq!(mults(4, 2), vec![vec![1, 0, 1, 0], vec![0, 2, 0, 0]]);
        assert_eq!(mults(3, 3), vec![vec![3, 0, 0]]);
        assert_eq!(mults(1, 1), vec![vec![1]]);
        assert!(partitions(3, 4).is_err());
        assert!(partitions(3, 0).is_err());
    }

    #[test]
    fn partition_counts() {
        // p(n, k): partitions of n into exactly k parts
        let expected_7 = [1, 3, 4, 3, 2, 1, 1];
        for (k, want) in expected_7.iter().enumerate() {
            assert_eq!(partitions(7, k + 1).unwrap().len(), *want);
        }
        for n in 1..=10 {
            for k in 1..=n {
                for p in partitions(n, k).unwrap() {
                    assert_eq!(p.len(), k);
                    assert!(Partition::new(p.multiplicities().to_vec()).is_ok());
                }
            }
        }
    }

    #[test]
    fn displayed_values() {
        let z = Ring::integers();
        let ones = vec![z.one(); 4];
        assert_eq!(partial_bell(&z, 3, 2, &ones).unwrap(), z.from_int(3));
        let twos = vec![z.from_int(2), z.from_int(5), z.from_int(7)];
        assert_eq!(partial_bell(&z, 3, 3, &twos).unwrap(), z.from_int(8));
        assert_eq!(partial_bell(&z, 4, 2, &ones).unwrap(), z.from_int(7));
        assert_eq!(partial_bell_rec(&z, 4, 2, &ones).unwrap(), z.from_int(7));
        assert_eq!(
            complete_bell(&z, 1, &[z.from_int(3)], &[z.from_int(5)]).unwrap(),
            z.from_int(15)
        );
        assert_eq!(complete_bell(&z, 2, &ones, &ones).unwrap(), z.from_int(2));
        assert_eq!(complete_bell(&z, 3, &ones, &ones).unwrap(), z.from_int(5));
        assert!(partial_bell(&z, 2, 3, &ones).is_err());
        assert!(complete_bell(&z, 0, &ones, &ones).is_err());
    }

    #[test]
    fn weights_are_integers() {
        let p = Partition::new(vec![1, 0, 1, 0]).unwrap();
        assert_eq!(p.weight(), BigInt::from(4));
        let p = Partition::new(vec![0, 2, 0, 0]).unwrap();
        assert_eq!(p.weight(), BigInt::from(3));
    }
}
