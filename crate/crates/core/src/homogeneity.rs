//! Homogeneity groups `H_k`: unit sequences `h` with `A(h x) = h^k A(x)`.
//!
//! For `k >= 2` these are exactly `h_n = a^{1-n} b^n` with `a^{k-1} = 1` and
//! `b^{k-1} = a`. Every solution is a torsion unit (`b^{(k-1)^2} = 1`), so the solver
//! searches the finite torsion subgroup of the unit group; in the complex mode it
//! searches the `(k-1)^2`-th roots of unity. Group structure is computed from the
//! multiplication table and compared with the classical tables where they exist.

use std::collections::BTreeMap;

use num_integer::Integer;
use serde::Serialize;

use crate::autonomous::apply_pointwise;
use crate::error::{Error, Result};
use crate::rings::{unit_group_model, Elem, Ring, RingSpec, RootsOrder};

/// A pair `(a, b)` generating `h_n = a^{1-n} b^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneityPair {
    pub k: u64,
    pub a: Elem,
    pub b: Elem,
}

impl HomogeneityPair {
    /// Checks `a^{k-1} = 1, b^{k-1} = a` for `k >= 2`; for `k = 1` needs `a = 1`, `b != 0`.
    pub fn new(ring: &Ring, k: u64, a: Elem, b: Elem) -> Result<Self> {
        let ok = match k {
            0 => false,
            1 => ring.is_one(&a) && !ring.is_zero(&b),
            _ => ring.is_one(&ring.pow(&a, k - 1)) && ring.pow(&b, k - 1) == a,
        };
        if !ok {
            return Err(Error::BadRange(format!(
                "({}, {}) does not satisfy the equations for k = {k}",
                ring.render(&a),
                ring.render(&b)
            )));
        }
        Ok(HomogeneityPair { k, a, b })
    }

    /// `h_n = a^{1-n} b^n`.
    pub fn term(&self, ring: &Ring, n: usize) -> Result<Elem> {
        let a_part = ring.pow_signed(&self.a, 1 - n as i64)?;
        Ok(ring.mul(&a_part, &ring.pow(&self.b, n as u64)))
    }

    pub fn sequence(&self, ring: &Ring, len: usize) -> Result<Vec<Elem>> {
        (0..len).map(|n| self.term(ring, n)).collect()
    }

    pub fn render(&self, ring: &Ring) -> (String, String) {
        (ring.render(&self.a), ring.render(&self.b))
    }
}

/// Invariant-factor decomposition `Z_{d_1} x ... x Z_{d_r}` with `d_1 | d_2 | ...`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianGroupStructure {
    pub order: u64,
    pub invariant_factors: Vec<u64>,
    pub exponent: u64,
}

/// What the classical tables say about `H_k` for a ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TabulatedClaim {
    pub pairs: Option<Vec<(Elem, Elem)>>,
    pub order: u64,
    pub invariant_factors: Option<Vec<u64>>,
}

#[derive(Clone, Debug)]
pub struct SolveReport {
    pub ring: Ring,
    pub k: u64,
    pub pairs: Vec<HomogeneityPair>,
    pub structure: AbelianGroupStructure,
    pub claim: Option<TabulatedClaim>,
    /// `None` when there is no claim to compare against.
    pub agreement: Option<bool>,
}

fn complex_mode(ring: &Ring) -> bool {
    matches!(ring.spec(), RingSpec::RootsOfUnity(RootsOrder::All))
}

/// The finite set every solution lies in.
fn candidate_units(ring: &Ring, k: u64) -> Result<Vec<Elem>> {
    if complex_mode(ring) {
        let m = (k - 1) * (k - 1);
        return (0..m).map(|j| ring.root_of_unity(j as i64, m)).collect();
    }
    let model = unit_group_model(ring)?;
    Ok(model.torsion_units(ring))
}

/// All pairs `(a, b)` of units with `a^{k-1} = 1` and `b^{k-1} = a`.
pub fn solve_hk(ring: &Ring, k: u64) -> Result<Vec<HomogeneityPair>> {
    if k < 2 {
        return Err(Error::BadRange(format!("solve_hk needs k >= 2, got {k}")));
    }
    let units = candidate_units(ring, k)?;
    let mut pairs = Vec::new();
    for b in &units {
        let a = ring.pow(b, k - 1);
        if ring.is_one(&ring.pow(&a, k - 1)) {
            pairs.push(HomogeneityPair { k, a, b: b.clone() });
        }
    }
    Ok(pairs)
}

/// Pairs given by `a = e^{2 pi i j/(k-1)}`, `b = e^{2 pi i (j + l(k-1))/(k-1)^2}` for
/// `0 <= j, l <= k-2`, i.e. `h_n = e^{2 pi i ((j(1-n) + l n)(k-1) + j n)/(k-1)^2}`.
pub fn complex_formula_pairs(ring: &Ring, k: u64) -> Result<Vec<HomogeneityPair>> {
    if !complex_mode(ring) || k < 2 {
        return Err(Error::Unsupported(
            "the closed formula needs roots:all and k >= 2".into(),
        ));
    }
    let m = k - 1;
    let mut out = Vec::new();
    for j in 0..m {
        for l in 0..m {
            let a = ring.root_of_unity(j as i64, m)?;
            let b = ring.root_of_unity((j + l * m) as i64, m * m)?;
            out.push(HomogeneityPair { k, a, b });
        }
    }
    Ok(out)
}

/// Description of `H_1` (all unit sequences `(u^n)`).
#[derive(Clone, Debug)]
pub struct H1Description {
    /// Units `u`, one per listed sequence `(u^n)`.
    pub units: Vec<Elem>,
    /// Whether `units` is the whole group (torsion-only unit group).
    pub complete: bool,
    /// Symbolic form, e.g. `{(zeta^j)^n}` or `{((+-eps^m)^n) : m in Z}`.
    pub description: String,
}

/// `H_1` for a ring with a unit model; free parts are listed for `|m| <= bound_m`.
pub fn h1_describe(ring: &Ring, bound_m: u32) -> Result<H1Description> {
    let model = unit_group_model(ring)?;
    let units: Vec<Elem> = model
        .units_up_to(ring, bound_m)
        .into_iter()
        .map(|(_, _, u)| u)
        .collect();
    let zeta = ring.render(&model.torsion_generator);
    let description = match &model.fundamental_unit {
        Some(eps) => format!("{{((+-({})^m)^n) : m in Z}}", ring.render(eps)),
        None => format!("{{(({zeta})^(j n)) : 0 <= j < {}}}", model.torsion_order),
    };
    Ok(H1Description {
        units,
        complete: model.free_rank == 0,
        description,
    })
}

fn pair_mul(ring: &Ring, x: &HomogeneityPair, y: &HomogeneityPair) -> (Elem, Elem) {
    (ring.mul(&x.a, &y.a), ring.mul(&x.b, &y.b))
}

fn index_of(pairs: &[HomogeneityPair], p: &(Elem, Elem)) -> Option<usize> {
    pairs.iter().position(|q| q.a == p.0 && q.b == p.1)
}

fn prime_factors(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Invariant factors of the finite abelian group formed by `pairs` under the
/// componentwise product (which is the product of the generated sequences).
pub fn group_structure(ring: &Ring, pairs: &[HomogeneityPair]) -> Result<AbelianGroupStructure> {
    let n = pairs.len();
    if n == 0 {
        return Err(Error::NotClosed("empty set".into()));
    }
    let identity = index_of(pairs, &(ring.one(), ring.one()))
        .ok_or_else(|| Error::NotClosed("identity pair (1,1) missing".into()))?;
    let mut table = vec![vec![0usize; n]; n];
    for i in 0..n {
        for j in 0..n {
            let prod = pair_mul(ring, &pairs[i], &pairs[j]);
            table[i][j] = index_of(pairs, &prod).ok_or_else(|| {
                Error::NotClosed(format!(
                    "({}, {}) * ({}, {}) is not in the set",
                    ring.render(&pairs[i].a),
                    ring.render(&pairs[i].b),
                    ring.render(&pairs[j].a),
                    ring.render(&pairs[j].b)
                ))
            })?;
        }
    }
    let power = |g: usize, e: u64| -> usize {
        let mut acc = identity;
        for _ in 0..e {
            acc = table[acc][g];
        }
        acc
    };
    // For each prime p, the p-primary part has a partition lambda read off from
    // #{g : g^{p^i} = e} = p^{sum_j min(lambda_j, i)}.
    let mut per_prime: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for (p, e) in prime_factors(n as u64) {
        let mut logs = vec![0u32];
        let mut pi = 1u64;
        for _ in 0..e {
            pi *= p;
            let count = (0..n).filter(|&g| power(g, pi) == identity).count() as u64;
            let mut s = 0;
            let mut c = count;
            while c > 1 {
                c /= p;
                s += 1;
            }
            logs.push(s);
        }
        // parts of size >= i
        let at_least: Vec<u32> = logs.windows(2).map(|w| w[1] - w[0]).collect();
        let mut parts = Vec::new();
        for i in 0..at_least.len() {
            let exactly = at_least[i] - at_least.get(i + 1).copied().unwrap_or(0);
            parts.extend(std::iter::repeat_n(i as u32 + 1, exactly as usize));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        per_prime.insert(p, parts);
    }
    let rank = per_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut factors = vec![1u64; rank];
    for (p, parts) in &per_prime {
        for (i, &e) in parts.iter().enumerate() {
            factors[i] *= p.pow(e);
        }
    }
    factors.reverse();
    let order: u64 = factors.iter().product();
    if order != n as u64 {
        return Err(Error::NotClosed(format!(
            "structure of order {order} for a set of {n} pairs"
        )));
    }
    let exponent = factors.last().copied().unwrap_or(1);
    Ok(AbelianGroupStructure {
        order,
        invariant_factors: factors,
        exponent,
    })
}

/// `A(h x)_n == (h_{n-1})^k A(x)_n` for `n = 1..L`, with `L = x.len()`.
pub fn check_action(ring: &Ring, pair: &HomogeneityPair, x: &[Elem]) -> Result<bool> {
    let h = pair.sequence(ring, x.len())?;
    let hx: Vec<Elem> = h.iter().zip(x).map(|(a, b)| ring.mul(a, b)).collect();
    let lhs = apply_pointwise(ring, &hx)?;
    let rhs = apply_pointwise(ring, x)?;
    Ok(lhs
        .iter()
        .zip(&rhs)
        .zip(&h)
        .all(|((l, r), hn)| *l == ring.mul(&ring.pow(hn, pair.k), r)))
}

/// `h^{(k-1)^2} = e` and `(a^{n-1} b^{-n})` inverts `h`, for `n <= depth`.
pub fn exponent_check(ring: &Ring, pair: &HomogeneityPair, depth: usize) -> Result<bool> {
    let e = (pair.k - 1) * (pair.k - 1);
    for n in 0..=depth {
        let hn = pair.term(ring, n)?;
        if !ring.is_one(&ring.pow(&hn, e)) {
            return Ok(false);
        }
        let inv = ring.mul(
            &ring.pow_signed(&pair.a, n as i64 - 1)?,
            &ring.pow_signed(&pair.b, -(n as i64))?,
        );
        if !ring.is_one(&ring.mul(&hn, &inv)) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn is_pow2(n: u64) -> Option<u32> {
    (n > 0 && n.is_power_of_two()).then(|| n.trailing_zeros())
}

/// `n = 3^m 2^l`, returned as `(m, l)`.
fn three_two(mut n: u64) -> Option<(u32, u32)> {
    if n == 0 {
        return None;
    }
    let mut m = 0;
    while n.is_multiple_of(3) {
        n /= 3;
        m += 1;
    }
    is_pow2(n).map(|l| (m, l))
}

/// The classical description of `H_k` for the rings where one is tabulated.
pub fn tabulated_claim(ring: &Ring, k: u64) -> Option<TabulatedClaim> {
    let one = ring.one();
    let trivial = || TabulatedClaim {
        pairs: Some(vec![(one.clone(), one.clone())]),
        order: 1,
        invariant_factors: Some(vec![]),
    };
    let claim = |pairs: Vec<(Elem, Elem)>, factors: Vec<u64>| TabulatedClaim {
        order: pairs.len() as u64,
        pairs: Some(pairs),
        invariant_factors: Some(factors),
    };
    if k < 2 {
        return None;
    }
    match ring.spec() {
        RingSpec::Integers | RingSpec::QuadReal(_) => Some(trivial()),
        RingSpec::Gaussian => {
            let i = ring.quad(0, 1);
            let mi = ring.quad(0, -1);
            let m1 = ring.from_int(-1);
            let h1 = vec![
                (one.clone(), one.clone()),
                (one.clone(), m1.clone()),
                (one.clone(), i.clone()),
                (one.clone(), mi.clone()),
            ];
            let h3 = vec![
                (one.clone(), one.clone()),
                (one.clone(), m1.clone()),
                (m1.clone(), i),
                (m1, mi),
            ];
            match k {
                3 => Some(claim(h3, vec![2, 2])),
                5 => Some(claim(h1, vec![4])),
                _ if is_pow2(k - 1).is_some_and(|l| l >= 3) => Some(claim(h1, vec![4])),
                _ => Some(trivial()),
            }
        }
        RingSpec::Eisenstein => {
            let w = ring.quad(0, 1);
            let w2 = ring.quad(-1, -1);
            let m1 = ring.from_int(-1);
            let with_one =
                |bs: Vec<Elem>| bs.into_iter().map(|b| (one.clone(), b)).collect::<Vec<_>>();
            let h1 = with_one(vec![
                one.clone(),
                m1.clone(),
                w.clone(),
                ring.neg(&w),
                w2.clone(),
                ring.neg(&w2),
            ]);
            let h3 = with_one(vec![one.clone(), m1]);
            let h4 = with_one(vec![one.clone(), w, w2]);
            let n = k - 1;
            match (k, three_two(n)) {
                (3, _) => Some(claim(h3, vec![2])),
                (4, _) => Some(claim(h4, vec![3])),
                (7, _) => Some(claim(h1, vec![6])),
                (_, Some((1, l))) if l >= 2 => Some(claim(h1, vec![6])),
                (_, Some((0, l))) if l >= 2 => Some(claim(h3, vec![2])),
                (_, Some((m, _))) if m >= 2 => Some(claim(h4, vec![3])),
                _ => Some(trivial()),
            }
        }
        RingSpec::RootsOfUnity(RootsOrder::All) => {
            let factors = match k {
                2 => Some(vec![]),
                3 => Some(vec![4]),
                _ => None,
            };
            Some(TabulatedClaim {
                pairs: None,
                order: (k - 1) * (k - 1),
                invariant_factors: factors,
            })
        }
        _ => None,
    }
}

fn same_pairs(computed: &[HomogeneityPair], claimed: &[(Elem, Elem)]) -> bool {
    computed.len() == claimed.len()
        && claimed
            .iter()
            .all(|(a, b)| computed.iter().any(|p| p.a == *a && p.b == *b))
}

/// Solves `H_k`, computes its structure and compares with the tabulated claim.
pub fn solve_report(ring: &Ring, k: u64) -> Result<SolveReport> {
    let pairs = solve_hk(ring, k)?;
    let structure = group_structure(ring, &pairs)?;
    let claim = tabulated_claim(ring, k);
    let agreement = claim.as_ref().map(|c| {
        c.order == structure.order
            && c.pairs.as_ref().is_none_or(|p| same_pairs(&pairs, p))
            && c.invariant_factors
                .as_ref()
                .is_none_or(|f| *f == structure.invariant_factors)
    });
    Ok(SolveReport {
        ring: ring.clone(),
        k,
        pairs,
        structure,
        claim,
        agreement,
    })
}

/// Expected size of `H_k` from the unit model: `gcd(w, (k-1)^2)`.
pub fn expected_order(w: u64, k: u64) -> u64 {
    w.gcd(&((k - 1) * (k - 1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pairs_text(ring: &Ring, pairs: &[HomogeneityPair]) -> Vec<(String, String)> {
        let mut v: Vec<_> = pairs.iter().map(|p| p.render(ring)).collect();
        v.sort();
        v
    }

    fn sorted(v: &[(&str, &str)]) -> Vec<(String, String)> {
        let mut v: Vec<_> = v
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        v.sort();
        v
    }

    #[test]
    fn gaussian_tables() {
        let g = Ring::gaussian();
        let h3 = solve_hk(&g, 3).unwrap();
        assert_eq!(
            pairs_text(&g, &h3),
            sorted(&[("1", "1"), ("1", "-1"), ("-1", "1i"), ("-1", "-1i")])
        );
        let s = group_structure(&g, &h3).unwrap();
        assert_eq!(
            s,
            AbelianGroupStructure {
                order: 4,
                invariant_factors: vec![4],
                exponent: 4
            }
        );
        let h5 = solve_hk(&g, 5).unwrap();
        assert_eq!(
            pairs_text(&g, &h5),
            sorted(&[("1", "1"), ("1", "-1"), ("1", "1i"), ("1", "-1i")])
        );
        for k in [2, 4, 6] {
            assert_eq!(solve_hk(&g, k).unwrap().len(), 1);
        }
        for k in [9, 17] {
            assert_eq!(
                pairs_text(&g, &solve_hk(&g, k).unwrap()),
                pairs_text(&g, &h5)
            );
        }
    }

    #[test]
    fn eisenstein_tables() {
        let e = Ring::eisenstein();
        let h4 = solve_hk(&e, 4).unwrap();
        assert_eq!(
            pairs_text(&e, &h4),
            sorted(&[("1", "1"), ("1", "1w"), ("1", "-1-1w")])
        );
        assert_eq!(group_structure(&e, &h4).unwrap().invariant_factors, vec![3]);
        assert_eq!(
            group_structure(&e, &solve_hk(&e, 3).unwrap())
                .unwrap()
                .invariant_factors,
            vec![2]
        );
        assert_eq!(
            group_structure(&e, &solve_hk(&e, 7).unwrap())
                .unwrap()
                .invariant_factors,
            vec![6]
        );
        for k in 2..=13 {
            let report = solve_report(&e, k).unwrap();
            let expect_flag = k == 11;
            assert_eq!(report.agreement, Some(!expect_flag), "k = {k}");
        }
    }

    #[test]
    fn flags_on_known_discrepancies() {
        let g = Ring::gaussian();
        assert_eq!(solve_report(&g, 3).unwrap().agreement, Some(false));
        assert_eq!(solve_report(&g, 5).unwrap().agreement, Some(true));
        let z = Ring::integers();
        assert_eq!(solve_report(&z, 2).unwrap().agreement, Some(true));
        assert_eq!(solve_report(&z, 3).unwrap().agreement, Some(false));
    }

    #[test]
    fn complex_mode_counts() {
        let c = Ring::roots_of_unity(RootsOrder::All).unwrap();
        for k in 2..=6u64 {
            let pairs = solve_hk(&c, k).unwrap();
            assert_eq!(pairs.len() as u64, (k - 1) * (k - 1));
            let formula = complex_formula_pairs(&c, k).unwrap();
            assert!(same_pairs(
                &pairs,
                &formula
                    .iter()
                    .map(|p| (p.a.clone(), p.b.clone()))
                    .collect::<Vec<_>>()
            ));
        }
        assert_eq!(
            group_structure(&c, &solve_hk(&c, 3).unwrap())
                .unwrap()
                .invariant_factors,
            vec![4]
        );
    }

    #[test]
    fn action_and_exponent() {
        let g = Ring::gaussian();
        let pair = HomogeneityPair::new(&g, 3, g.from_int(-1), g.quad(0, 1)).unwrap();
        let x = vec![g.one(); 4];
        assert!(check_action(&g, &pair, &x).unwrap());
        assert_eq!(
            pair.sequence(&g, 4).unwrap(),
            vec![g.from_int(-1), g.quad(0, 1), g.one(), g.quad(0, -1)]
        );
        assert!(exponent_check(&g, &pair, 8).unwrap());
        let e = Ring::eisenstein();
        let pair = HomogeneityPair::new(&e, 4, e.one(), e.quad(0, 1)).unwrap();
        assert!(exponent_check(&e, &pair, 8).unwrap());
        assert!(HomogeneityPair::new(&g, 3, g.one(), g.quad(0, 1)).is_err());
    }

    #[test]
    fn first_power_group() {
        let z2 = Ring::quad_real(2).unwrap();
        let d = h1_describe(&z2, 2).unwrap();
        assert_eq!(d.units.len(), 10);
        assert!(!d.complete);
        assert_eq!(h1_describe(&Ring::eisenstein(), 0).unwrap().units.len(), 6);
        assert_eq!(
            h1_describe(&Ring::integers(), 3).unwrap().units,
            vec![Ring::integers().one(), Ring::integers().from_int(-1)]
        );
    }

    #[test]
    fn closure_failure_is_reported() {
        let z = Ring::integers();
        let pairs = vec![
            HomogeneityPair {
                k: 3,
                a: z.one(),
                b: z.one(),
            },
            HomogeneityPair {
                k: 3,
                a: z.one(),
                b: z.from_int(2),
            },
        ];
        assert!(matches!(
            group_structure(&z, &pairs),
            Err(Error::NotClosed(_))
        ));
    }
}
