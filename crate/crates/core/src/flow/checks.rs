//! Exact checks of the flow identities at finite truncation order.

use crate::autonomous::{apply_pointwise, apply_series_bell};
use crate::bell::faa_di_bruno;
use crate::error::{Error, Result};
use crate::hurwitz::{HurwitzSeries, SeriesArith};
use crate::rings::{binomial, Elem, Ring};

use super::{flow_at_point, symbolic_flow, VectorFieldSpec};

/// `Phi(t, Phi(s, x0))` as coefficients `c[m][n]` of `s^m t^n / (m! n!)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariateFlow {
    pub ring: Ring,
    pub coeffs: Vec<Vec<Elem>>,
}

impl BivariateFlow {
    pub fn orders(&self) -> (usize, usize) {
        (self.coeffs.len() - 1, self.coeffs[0].len() - 1)
    }

    pub fn coeff(&self, m: usize, n: usize) -> &Elem {
        &self.coeffs[m][n]
    }
}

/// Builds `Phi(s)` at `x0`, evaluates every `f^{(k)}(Phi(s))` by a Taylor shift in the
/// ring of series in `s`, and runs the operator there. `f` is the expansion at `x0`
/// and must have order at least `ms + mt - 1`.
pub fn bivariate_flow(f: &HurwitzSeries, x0: &Elem, ms: usize, mt: usize) -> Result<BivariateFlow> {
    let k = f.ring().fraction_field();
    let f = f.lift(&k)?;
    if f.order() + 1 < ms + mt {
        return Err(Error::OrderExhausted(format!(
            "orders ({ms}, {mt}) need a field of order {}, got {}",
            ms + mt - 1,
            f.order()
        )));
    }
    let single = flow_at_point(&VectorFieldSpec::series(&f)?, x0, ms)?;
    let s_ring = Ring::series_over(&k, ms);
    let phi_s = Elem::Series(single.coeffs.clone());
    let mut shift = single.coeffs;
    shift[0] = k.zero();
    let shifted = f.taylor_shift_in(&s_ring, &Elem::Series(shift))?;
    let mut columns = vec![phi_s];
    if mt > 0 {
        columns.extend(apply_pointwise(&s_ring, &shifted.coeffs()[..mt])?);
    }
    let coeffs = (0..=ms)
        .map(|m| {
            columns
                .iter()
                .map(|col| match col {
                    Elem::Series(c) => c[m].clone(),
                    _ => unreachable!("series ring elements are series"),
                })
                .collect()
        })
        .collect();
    Ok(BivariateFlow { ring: k, coeffs })
}

/// `Phi(t, Phi(s, x0)) = Phi(s + t, x0)`, coefficientwise: `c[m][n] = Phi_{m+n}`.
pub fn group_law_check(f: &HurwitzSeries, x0: &Elem, ms: usize, mt: usize) -> Result<bool> {
    let bi = bivariate_flow(f, x0, ms, mt)?;
    let single = flow_at_point(&VectorFieldSpec::series(f)?, x0, ms + mt)?;
    Ok((0..=ms).all(|m| (0..=mt).all(|n| bi.coeffs[m][n] == single.coeffs[m + n])))
}

/// Outcome of [`pde_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PdeReport {
    /// `f * d/dx A_n = A_{n+1}` for `n < depth`.
    pub space: bool,
    /// `d/dt Phi = f(Phi)` for the first `depth` coefficients.
    pub time: bool,
}

impl PdeReport {
    pub fn holds(&self) -> bool {
        self.space && self.time
    }
}

/// Both sides of `f(x) d/dx Phi = d/dt Phi = f(Phi)` with symbolic `x`. `f` is the
/// expansion at any base point and `X` the displacement from it.
pub fn pde_check(f: &HurwitzSeries, depth: usize) -> Result<PdeReport> {
    let k = f.ring().fraction_field();
    let f = f.lift(&k)?;
    let a = apply_series_bell(&f, depth + 1)?;
    let mut space = true;
    for n in 0..depth {
        let lhs = f.mul(&a[n].derivative()?)?;
        let upto = lhs.order().min(a[n + 1].order());
        space &= lhs.series_eq(&a[n + 1], upto)?;
    }

    // f(X + c(t)) with c(t) = sum_{n>=1} A_n t^n/n!, as a t-series of X-series
    let ar = SeriesArith {
        ring: k.clone(),
        order: f.order(),
    };
    let outer = f.delta_sequence();
    let mut inner = vec![HurwitzSeries::zero(&k, f.order())];
    inner.extend(a.iter().take(depth).cloned());
    let composed = faa_di_bruno(&ar, &outer[..=depth], &inner);
    let mut time = true;
    for n in 0..depth {
        let upto = composed[n].order().min(a[n].order());
        time &= composed[n].series_eq(&a[n], upto)?;
    }
    Ok(PdeReport { space, time })
}

/// The flow of `r f` has coefficients `r^n Phi_n`.
pub fn time_scale_check(
    field: &VectorFieldSpec,
    x0: &Elem,
    r: &Elem,
    depth: usize,
) -> Result<bool> {
    let k = &field.field;
    let plain = flow_at_point(field, x0, depth)?;
    let scaled = flow_at_point(&field.scaled(r), x0, depth)?;
    Ok((0..=depth).all(|n| scaled.coeffs[n] == k.mul(&k.pow(r, n as u64), &plain.coeffs[n])))
}

/// The four module axioms for the action `Phi_{t,r} * s = Phi_{ts,r}` with composition
/// of flows as the group law.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleAxioms {
    /// `(Phi_s o Phi_t) * v = Phi_{sv} o Phi_{tv}`
    pub distributes_over_composition: bool,
    /// `Phi * (v + w) = (Phi * v) o (Phi * w)`
    pub distributes_over_sum: bool,
    /// `Phi * (vw) = (Phi * v) * w`
    pub associative: bool,
    /// `Phi * 1 = Phi`
    pub unital: bool,
}

impl ModuleAxioms {
    pub fn all(&self) -> bool {
        self.distributes_over_composition
            && self.distributes_over_sum
            && self.associative
            && self.unital
    }
}

/// Checks the module axioms for the flow of `r f` at `x0` to `depth` in each time
/// variable. `f` is the expansion at `x0` and needs order `2 depth - 1`.
pub fn module_axioms_check(
    f: &HurwitzSeries,
    x0: &Elem,
    r: &Elem,
    v: &Elem,
    w: &Elem,
    depth: usize,
) -> Result<ModuleAxioms> {
    let k = f.ring().fraction_field();
    let f = f.lift(&k)?;
    let rf = f.scale(r);
    let pow = |x: &Elem, n: usize| k.pow(x, n as u64);

    // substituting s -> sv, t -> tv scales c[m][n] by v^{m+n}; the right side is the
    // bivariate flow of the field v r f
    let bi = bivariate_flow(&rf, x0, depth, depth)?;
    let bi_v = bivariate_flow(&rf.scale(v), x0, depth, depth)?;
    let distributes_over_composition = (0..=depth)
        .all(|m| (0..=depth).all(|n| k.mul(&pow(v, m + n), &bi.coeffs[m][n]) == bi_v.coeffs[m][n]));

    // Phi(tv, Phi(tw, x)) has t^N/N! coefficient sum_m C(N, m) v^m w^{N-m} c[m][N-m]
    let psi = flow_at_point(&VectorFieldSpec::series(&rf)?, x0, 2 * depth)?;
    let vw_sum = k.add(v, w);
    let distributes_over_sum = (0..=depth).all(|big_n| {
        let mut acc = k.zero();
        for m in 0..=big_n {
            let term = k.mul(
                &k.mul(&pow(v, m), &pow(w, big_n - m)),
                &bi.coeffs[m][big_n - m],
            );
            acc = k.add(&acc, &k.mul_int(&term, &binomial(big_n, m)));
        }
        acc == k.mul(&pow(&vw_sum, big_n), &psi.coeffs[big_n])
    });

    let vw = k.mul(v, w);
    let associative = (0..=depth).all(|n| {
        let once = k.mul(&pow(&vw, n), &psi.coeffs[n]);
        let twice = k.mul(&pow(w, n), &k.mul(&pow(v, n), &psi.coeffs[n]));
        once == twice
    });

    let unital = (0..=depth).all(|n| k.mul(&pow(&k.one(), n), &psi.coeffs[n]) == psi.coeffs[n]);

    Ok(ModuleAxioms {
        distributes_over_composition,
        distributes_over_sum,
        associative,
        unital,
    })
}

fn series_coeffs(x: &Elem) -> &[Elem] {
    match x {
        Elem::Series(c) => c,
        _ => unreachable!("symbolic flows have series coefficients"),
    }
}

/// `a Phi(t, x, f(a x)) = Phi(a t, a x, f)` for the expansion `f` at 0, compared as
/// series in `x` coefficient by coefficient in `t`.
pub fn gmodule_identity_check(f: &HurwitzSeries, a: &Elem, depth: usize) -> Result<bool> {
    let k = f.ring().fraction_field();
    let f = f.lift(&k)?;
    let lhs = symbolic_flow(&f.scale_substitute(a), &k.zero(), depth)?.scale(a);
    let rhs = symbolic_flow(&f, &k.zero(), depth)?;
    Ok((0..=depth).all(|n| {
        let phi = HurwitzSeries::from_parts(&k, series_coeffs(&rhs.coeffs[n]).to_vec());
        let rhs_n = phi.scale_substitute(a).scale(&k.pow(a, n as u64));
        series_coeffs(&lhs.coeffs[n]) == rhs_n.coeffs()
    }))
}

/// Outcome of [`gmodule_k_identity_check`] for a pair `(a, b)` and `c = a^{-1} b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KIdentity {
    /// `c Phi(t, x, a f(c x)) = Phi(c t, c x, f)`
    pub stated: bool,
    /// `c Phi(t, x, a f(c x)) = Phi(c a t, c x, f)`
    pub rescaled: bool,
}

/// Compares the twisted flow `c Phi(t, x, a f(c x))` with `Phi` at `c x`, once with
/// time `c t` and once with time `c a t`.
pub fn gmodule_k_identity_check(
    f: &HurwitzSeries,
    a: &Elem,
    b: &Elem,
    depth: usize,
) -> Result<KIdentity> {
    let k = f.ring().fraction_field();
    let f = f.lift(&k)?;
    let c = k.try_divide(b, a)?;
    let lhs = symbolic_flow(&f.scale_substitute(&c).scale(a), &k.zero(), depth)?.scale(&c);
    let rhs = symbolic_flow(&f, &k.zero(), depth)?;
    let matches = |time: &Elem| {
        (0..=depth).all(|n| {
            let phi = HurwitzSeries::from_parts(&k, series_coeffs(&rhs.coeffs[n]).to_vec());
            let rhs_n = phi.scale_substitute(&c).scale(&k.pow(time, n as u64));
            series_coeffs(&lhs.coeffs[n]) == rhs_n.coeffs()
        })
    };
    Ok(KIdentity {
        stated: matches(&c),
        rescaled: matches(&k.mul(&c, a)),
    })
}
