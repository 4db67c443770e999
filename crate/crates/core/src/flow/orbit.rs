//! Equilibria, unit-twisted families of flows and numeric orbit samples.

use std::io::Write;

use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::homogeneity::solve_hk;
use crate::rings::{factorial, unit_group_model, Elem, Ring};

use super::{flow_at_point, symbolic_flow, FieldKind, FlowSeries, VectorFieldSpec};

/// `f(x*) = 0`, cross-checked against `Phi_n(x*) = 0` for `1 <= n <= 8`.
pub fn equilibrium_check(field: &VectorFieldSpec, x_star: &Elem) -> Result<bool> {
    let k = &field.field;
    if let FieldKind::ExpField(a) = &field.kind {
        if !k.is_zero(x_star) {
            return Ok(k.is_zero(a));
        }
    }
    let order = match &field.kind {
        FieldKind::Series(s) => s.order().min(7) + 1,
        _ => 8,
    };
    let root = k.is_zero(&field.derivatives_at(x_star, 1)?[0]);
    let phi = flow_at_point(field, x_star, order)?;
    let still = phi.coeffs[1..].iter().all(|c| k.is_zero(c));
    if root != still {
        return Err(Error::Inconsistent(format!(
            "f({}) = 0 is {root} but the flow is {}constant",
            k.render(x_star),
            if still { "" } else { "not " }
        )));
    }
    Ok(root)
}

/// One flow of a twisted family: `scalar * Phi(t, x, a f(scalar x))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitMember {
    pub a: Elem,
    pub scalar: Elem,
    pub flow: FlowSeries,
}

/// The family `{c Phi(t, x, a f(c x))}` with symbolic `x` around 0: for `k = 1` the
/// pairs are `(1, u)` over the units `u` (free part capped at `|m| <= bound_m`), for
/// `k >= 2` the solutions `(a, b)` of the homogeneity equations with `c = a^{-1} b`.
/// Identical flows are reported once. Series fields are read as expansions at 0.
pub fn gmodule_orbit(
    field: &VectorFieldSpec,
    k: u64,
    ring: &Ring,
    bound_m: u32,
    order: usize,
) -> Result<Vec<OrbitMember>> {
    let twists: Vec<(Elem, Elem)> = match k {
        0 => return Err(Error::BadRange("k must be at least 1".into())),
        1 => {
            let model = unit_group_model(ring)?;
            model
                .units_up_to(ring, bound_m)
                .into_iter()
                .map(|(_, _, u)| (ring.one(), u))
                .collect()
        }
        _ => {
            let mut out = Vec::new();
            for pair in solve_hk(ring, k)? {
                let c = ring.try_divide(&pair.b, &pair.a)?;
                out.push((pair.a, c));
            }
            out
        }
    };
    let x_order = match &field.kind {
        FieldKind::Series(s) => s.order(),
        _ => 2 * order,
    };
    let zero = field.field.zero();
    let mut members: Vec<OrbitMember> = Vec::new();
    for (a, c) in twists {
        let twisted = field.twisted(&a, &c, x_order);
        let flow = symbolic_flow(&twisted.expansion_at(&zero, x_order)?, &zero, order)?.scale(&c);
        if members.iter().all(|m| m.flow != flow) {
            members.push(OrbitMember { a, scalar: c, flow });
        }
    }
    Ok(members)
}

/// A sample of a truncated flow at a complex time.
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitRow {
    pub t: Complex64,
    pub phi: Complex64,
    /// `|Phi_M| |t|^M / M!`
    pub tail_bound: f64,
}

/// Evaluates `sum_n Phi_n t^n/n!` at each grid point.
pub fn orbit_samples(flow: &FlowSeries, t_grid: &[Complex64]) -> Result<Vec<OrbitRow>> {
    let coeffs: Vec<Complex64> = flow
        .coeffs
        .iter()
        .map(|c| flow.ring.embed_complex(c))
        .collect::<Result<_>>()?;
    let inv_fact: Vec<f64> = (0..coeffs.len())
        .map(|n| 1.0 / factorial(n).to_f64().unwrap_or(f64::INFINITY))
        .collect();
    let m = coeffs.len() - 1;
    Ok(t_grid
        .iter()
        .map(|&t| {
            let mut phi = Complex64::new(0.0, 0.0);
            let mut p = Complex64::new(1.0, 0.0);
            for (c, w) in coeffs.iter().zip(&inv_fact) {
                phi += c * p * w;
                p *= t;
            }
            let tail_bound = coeffs[m].norm() * t.norm().powi(m as i32) * inv_fact[m];
            OrbitRow { t, phi, tail_bound }
        })
        .collect())
}

/// `start:end:count`, evenly spaced real times including both ends.
pub fn parse_grid(text: &str) -> Result<Vec<Complex64>> {
    let bad = || Error::Parse {
        what: "time grid",
        input: text.to_string(),
    };
    let parts: Vec<&str> = text.split(':').map(str::trim).collect();
    let [start, end, count] = parts.as_slice() else {
        return Err(bad());
    };
    let start: f64 = start.parse().map_err(|_| bad())?;
    let end: f64 = end.parse().map_err(|_| bad())?;
    let count: usize = count.parse().map_err(|_| bad())?;
    if count == 0 || !start.is_finite() || !end.is_finite() {
        return Err(bad());
    }
    let step = if count == 1 {
        0.0
    } else {
        (end - start) / (count - 1) as f64
    };
    Ok((0..count)
        .map(|i| Complex64::new(start + step * i as f64, 0.0))
        .collect())
}

fn fixed(x: f64) -> String {
    let s = format!("{x:.12}");
    if s.trim_start_matches('-')
        .chars()
        .all(|c| c == '0' || c == '.')
    {
        s.trim_start_matches('-').to_string()
    } else {
        s
    }
}

/// Writes rows as CSV with header `t_re,t_im,phi_re,phi_im,tail_bound`.
pub fn write_orbit_csv<W: Write>(rows: &[OrbitRow], out: W) -> Result<()> {
    let io = |e: csv::Error| Error::Unsupported(format!("csv output: {e}"));
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["t_re", "t_im", "phi_re", "phi_im", "tail_bound"])
        .map_err(io)?;
    for r in rows {
        w.write_record([
            fixed(r.t.re),
            fixed(r.t.im),
            fixed(r.phi.re),
            fixed(r.phi.im),
            fixed(r.tail_bound),
        ])
        .map_err(io)?;
    }
    w.flush()
        .map_err(|e| Error::Unsupported(format!("csv output: {e}")))?;
    Ok(())
}
