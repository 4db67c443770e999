//! Randomized invariant suite over one ring, aggregated into a status table.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::autonomous::{
    apply_pointwise, apply_series, apply_series_bell, check_exp_composition, check_exp_factor,
    check_scaling, invert,
};
use crate::bell::{partial_bell, partial_bell_rec};
use crate::error::{Error, Result};
use crate::flow::{
    closed_form_flow, equilibrium_check, flow_at_point, gmodule_identity_check,
    gmodule_k_identity_check, group_law_check, module_axioms_check, pde_check, time_scale_check,
    VectorFieldSpec,
};
use crate::homogeneity::{check_action, exponent_check, solve_report};
use crate::hurwitz::HurwitzSeries;
use crate::rings::{factorial, unit_group_model, Elem, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// The computation disagrees with a tabulated claim; not a failure.
    Flag,
    /// Not applicable to this ring.
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Flag => "FLAG",
            Status::Skip => "SKIP",
        })
    }
}

#[derive(Clone, Debug)]
pub struct CheckRow {
    pub module: &'static str,
    pub name: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub ring: Ring,
    pub order: usize,
    pub rows: Vec<CheckRow>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.status != Status::Fail)
    }

    pub fn count(&self, status: Status) -> usize {
        self.rows.iter().filter(|r| r.status == status).count()
    }

    /// Fixed-width table, one line per check, followed by a summary line.
    pub fn render(&self) -> String {
        let width = self
            .rows
            .iter()
            .map(|r| r.module.len() + r.name.len() + 1)
            .max()
            .unwrap_or(0);
        let mut out = String::new();
        for r in &self.rows {
            let label = format!("{}/{}", r.module, r.name);
            let line = format!(
                "{:<4}  {:<width$}  {}",
                r.status.to_string(),
                label,
                r.detail
            );
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out.push_str(&format!(
            "ring {} order {}: {} pass, {} fail, {} flag, {} skip\n",
            self.ring,
            self.order,
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Flag),
            self.count(Status::Skip)
        ));
        out
    }
}

struct Suite {
    ring: Ring,
    field: Ring,
    order: usize,
    rng: ChaCha8Rng,
    rows: Vec<CheckRow>,
}

impl Suite {
    fn record(&mut self, module: &'static str, name: &str, outcome: Result<bool>) {
        let (status, detail) = match outcome {
            Ok(true) => (Status::Pass, String::new()),
            Ok(false) => (Status::Fail, "mismatch".to_string()),
            Err(e @ (Error::Unsupported(_) | Error::UnsupportedBasePoint(_))) => {
                (Status::Skip, e.to_string())
            }
            Err(e) => (Status::Fail, e.to_string()),
        };
        self.rows.push(CheckRow {
            module,
            name: name.to_string(),
            status,
            detail,
        });
    }

    fn row(&mut self, module: &'static str, name: &str, status: Status, detail: String) {
        self.rows.push(CheckRow {
            module,
            name: name.to_string(),
            status,
            detail,
        });
    }

    fn elem(&mut self) -> Elem {
        self.ring.random_element(&mut self.rng, 3)
    }

    fn nonzero(&mut self) -> Elem {
        self.ring.random_nonzero(&mut self.rng, 3)
    }

    fn seq(&mut self, len: usize) -> Vec<Elem> {
        (0..len).map(|_| self.elem()).collect()
    }

    fn series(&mut self, order: usize) -> Result<HurwitzSeries> {
        let coeffs = self.seq(order + 1);
        HurwitzSeries::new(&self.ring, coeffs)
    }

    fn field_series(&mut self, order: usize) -> Result<HurwitzSeries> {
        let k = self.field.clone();
        let coeffs = (0..=order)
            .map(|_| k.random_element(&mut self.rng, 3))
            .collect();
        HurwitzSeries::new(&k, coeffs)
    }
}

/// Runs every check over `ring` with sequences and series of length/order `order`.
pub fn run_all(ring: &Ring, order: usize, seed: u64) -> Result<VerifyReport> {
    if order < 2 {
        return Err(Error::BadRange(format!(
            "verify needs order >= 2, got {order}"
        )));
    }
    let mut s = Suite {
        ring: ring.clone(),
        field: ring.fraction_field(),
        order,
        rng: ChaCha8Rng::seed_from_u64(seed),
        rows: Vec::new(),
    };
    rings_checks(&mut s);
    hurwitz_checks(&mut s);
    bell_checks(&mut s);
    autonomous_checks(&mut s);
    homogeneity_checks(&mut s);
    flow_checks(&mut s);
    Ok(VerifyReport {
        ring: ring.clone(),
        order,
        rows: s.rows,
    })
}

fn repeat(
    s: &mut Suite,
    times: usize,
    mut body: impl FnMut(&mut Suite) -> Result<bool>,
) -> Result<bool> {
    for _ in 0..times {
        if !body(s)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn rings_checks(s: &mut Suite) {
    let axioms = repeat(s, 20, |s| {
        let (x, y, z) = (s.elem(), s.elem(), s.elem());
        let r = &s.ring;
        Ok(r.mul(&r.mul(&x, &y), &z) == r.mul(&x, &r.mul(&y, &z))
            && r.add(&r.add(&x, &y), &z) == r.add(&x, &r.add(&y, &z))
            && r.mul(&x, &r.add(&y, &z)) == r.add(&r.mul(&x, &y), &r.mul(&x, &z))
            && r.mul(&x, &y) == r.mul(&y, &x))
    });
    s.record("rings", "axioms", axioms);

    let inverses = repeat(s, 20, |s| {
        let x = s.nonzero();
        match s.ring.try_invert(&x) {
            Ok(inv) => Ok(s.ring.is_one(&s.ring.mul(&x, &inv))),
            Err(Error::NotAUnit) => Ok(true),
            Err(e) => Err(e),
        }
    });
    s.record("rings", "inverses", inverses);

    match unit_group_model(&s.ring) {
        Ok(model) => {
            let r = &s.ring;
            let w = model.torsion_order;
            let mut ok = r.is_one(&r.pow(&model.torsion_generator, w));
            for p in 2..=w {
                if w % p == 0 && (2..p).all(|d| p % d != 0) {
                    ok &= !r.is_one(&r.pow(&model.torsion_generator, w / p));
                }
            }
            if let Some(eps) = &model.fundamental_unit {
                ok &= r.is_unit(eps) && !r.is_one(eps) && !r.is_one(&r.neg(eps));
            }
            s.record("rings", "unit model", Ok(ok));
        }
        Err(e) => s.row("rings", "unit model", Status::Skip, e.to_string()),
    }
}

/// `f(g) = sum_j (f_j / j!) g^j`, evaluated by Horner's rule with series products.
fn horner_compose(f: &HurwitzSeries, g: &HurwitzSeries) -> Result<HurwitzSeries> {
    let k = f.ring().fraction_field();
    let (f, g) = (f.lift(&k)?, g.lift(&k)?);
    let n = f.order().min(g.order());
    let g = g.truncate(n)?;
    let mut acc = HurwitzSeries::zero(&k, n);
    for j in (0..=n).rev() {
        let c = k.scale_by_rational(f.coeff(j), &BigRational::new(BigInt::from(1), factorial(j)));
        acc = acc.mul(&g)?.add(&HurwitzSeries::constant(&k, c, n))?;
    }
    Ok(acc)
}

fn hurwitz_checks(s: &mut Suite) {
    let n = s.order;
    let leibniz = repeat(s, 5, |s| {
        let (f, g) = (s.series(n)?, s.series(n)?);
        let lhs = f.mul(&g)?.derivative()?;
        let rhs = f.derivative()?.mul(&g)?.add(&f.mul(&g.derivative()?)?)?;
        lhs.series_eq(&rhs, n - 1)
    });
    s.record("hurwitz", "leibniz", leibniz);

    let compose = repeat(s, 5, |s| {
        let f = s.series(n)?;
        let mut g = s.series(n)?.into_coeffs();
        g[0] = s.ring.zero();
        let g = HurwitzSeries::new(&s.ring, g)?;
        let lhs = f.compose(&g)?.lift(&s.field)?;
        lhs.series_eq(&horner_compose(&f, &g)?, n)
    });
    s.record("hurwitz", "compose = horner", compose);

    let scale = repeat(s, 5, |s| {
        let (f, a, b) = (s.series(n)?, s.elem(), s.elem());
        Ok(f.scale_substitute(&a).scale_substitute(&b) == f.scale_substitute(&s.ring.mul(&a, &b)))
    });
    s.record("hurwitz", "scale substitution", scale);

    let shift = repeat(s, 5, |s| {
        let (f, c) = (s.series(n)?, s.elem());
        let back = f.taylor_shift(&c)?.taylor_shift(&s.ring.neg(&c))?;
        back.series_eq(&f.lift(&s.field)?, n)
    });
    s.record("hurwitz", "taylor shift round trip", shift);
}

fn bell_checks(s: &mut Suite) {
    let n_max = s.order.min(10);
    let agree = repeat(s, 3, |s| {
        let b = s.seq(n_max);
        for n in 1..=n_max {
            for k in 1..=n {
                if partial_bell(&s.ring, n, k, &b)? != partial_bell_rec(&s.ring, n, k, &b)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    });
    s.record("bell", "partitions = recurrence", agree);

    let edges = repeat(s, 3, |s| {
        let b = s.seq(n_max);
        for n in 1..=n_max {
            if partial_bell(&s.ring, n, 1, &b)? != b[n - 1]
                || partial_bell(&s.ring, n, n, &b)? != s.ring.pow(&b[0], n as u64)
            {
                return Ok(false);
            }
        }
        Ok(true)
    });
    s.record("bell", "edge terms", edges);

    let ones = vec![s.ring.one(); n_max];
    let known = [1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975];
    let numbers = (1..=n_max).try_fold(true, |ok, n| {
        let mut total = s.ring.zero();
        for k in 1..=n {
            total = s.ring.add(&total, &partial_bell(&s.ring, n, k, &ones)?);
        }
        Ok(ok && total == s.ring.from_int(known[n]))
    });
    s.record("bell", "bell numbers", numbers);

    let homog = repeat(s, 3, |s| {
        let (b, alpha) = (s.seq(n_max), s.elem());
        let scaled: Vec<Elem> = b
            .iter()
            .enumerate()
            .map(|(i, x)| s.ring.mul(&s.ring.pow(&alpha, i as u64 + 1), x))
            .collect();
        for n in 1..=n_max {
            for k in 1..=n {
                let lhs = partial_bell(&s.ring, n, k, &scaled)?;
                let rhs = s.ring.mul(
                    &s.ring.pow(&alpha, n as u64),
                    &partial_bell(&s.ring, n, k, &b)?,
                );
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    });
    s.record("bell", "weighted homogeneity", homog);
}

fn autonomous_checks(s: &mut Suite) {
    let n = s.order;
    let chain = repeat(s, 5, |s| {
        let f = s.series(n)?;
        let (a, b) = (apply_series(&f, n + 1)?, apply_series_bell(&f, n + 1)?);
        Ok(a == b)
    });
    s.record("autonomous", "chain = bell recursion", chain);

    let nesting = repeat(s, 3, |s| {
        let f = s.series(n)?;
        let terms = (n + 1).min(5);
        let chain = apply_series(&f, terms)?;
        let mut nested = f.clone();
        for a in chain.iter().skip(1) {
            nested = f.mul(&nested.derivative()?)?;
            if nested != *a {
                return Ok(false);
            }
        }
        Ok(true)
    });
    s.record("autonomous", "nested form", nesting);

    let eval = repeat(s, 5, |s| {
        let f = s.series(n)?;
        let series = apply_series(&f, n + 1)?;
        let point = apply_pointwise(&s.ring, f.coeffs())?;
        Ok(series.iter().zip(&point).all(|(a, p)| a.coeff(0) == p))
    });
    s.record("autonomous", "evaluation at 0", eval);

    let null = repeat(s, 5, |s| {
        let mut x = s.seq(n);
        x[0] = s.ring.zero();
        Ok(apply_pointwise(&s.ring, &x)?
            .iter()
            .all(|t| s.ring.is_zero(t)))
    });
    s.record("autonomous", "null space", null);

    let scaling = repeat(s, 20, |s| {
        let (x, alpha) = (s.seq(n), s.elem());
        check_scaling(&s.ring, &x, &alpha)
    });
    s.record("autonomous", "scaling", scaling);

    let round = repeat(s, 10, |s| {
        let mut x = s.seq(n);
        x[0] = s.nonzero();
        let y = apply_pointwise(&s.ring, &x)?;
        let back = invert(&s.ring, &y)?;
        let field_y: Vec<Elem> = (0..n)
            .map(|_| s.field.random_element(&mut s.rng, 3))
            .collect();
        if s.field.is_zero(&field_y[0]) {
            return Ok(back.terms == x);
        }
        let inv = invert(&s.field, &field_y)?;
        Ok(back.terms == x && apply_pointwise(&s.field, &inv.terms)? == field_y)
    });
    s.record("autonomous", "invert round trips", round);

    let linear = repeat(s, 5, |s| {
        let (x0, y0, a, b) = (s.elem(), s.elem(), s.elem(), s.elem());
        let r = &s.ring;
        let pad = |v: Elem| {
            let mut seq = vec![r.zero(); n];
            seq[0] = v;
            seq
        };
        let combo = r.add(&r.mul(&a, &x0), &r.mul(&b, &y0));
        let lhs = apply_pointwise(r, &pad(combo))?;
        let (ax, by) = (apply_pointwise(r, &pad(x0))?, apply_pointwise(r, &pad(y0))?);
        Ok(lhs
            .iter()
            .zip(ax.iter().zip(&by))
            .all(|(l, (p, q))| *l == r.add(&r.mul(&a, p), &r.mul(&b, q))))
    });
    s.record("autonomous", "linear part", linear);

    let ideal = repeat(s, 5, |s| {
        let (a, x) = (s.nonzero(), s.seq(n));
        let ax: Vec<Elem> = x.iter().map(|t| s.ring.mul(&a, t)).collect();
        Ok(apply_pointwise(&s.ring, &ax)?
            .iter()
            .all(|t| s.ring.try_divide(t, &a).is_ok_and(|q| s.ring.contains(&q))))
    });
    s.record("autonomous", "principal ideal image", ideal);

    let depth = n.min(6);
    let prop4 = repeat(s, 5, |s| {
        let (f, alpha) = (s.series(n)?, s.elem());
        check_exp_factor(&f, &alpha, depth)
    });
    s.record("autonomous", "exponential factor", prop4);
    let prop5 = repeat(s, 5, |s| {
        let mut c = s.series(n)?.into_coeffs();
        c[0] = s.ring.zero();
        check_exp_composition(&HurwitzSeries::new(&s.ring, c)?, depth)
    });
    s.record("autonomous", "exponential composition", prop5);
}

fn homogeneity_checks(s: &mut Suite) {
    for k in 2..=6u64 {
        let report = match solve_report(&s.ring, k) {
            Ok(r) => r,
            Err(e @ Error::Unsupported(_)) => {
                s.row("homogeneity", "solve", Status::Skip, e.to_string());
                return;
            }
            Err(e) => {
                s.record("homogeneity", &format!("H_{k}"), Err(e));
                continue;
            }
        };
        let r = s.ring.clone();
        let pairs = report.pairs.clone();
        let sq = (k - 1) * (k - 1);
        let mut ok = sq % report.structure.exponent == 0;
        for p in &pairs {
            ok &= r.is_one(&r.pow(&p.a, k - 1)) && r.pow(&p.b, k - 1) == p.a;
            ok &= exponent_check(&r, p, 6).unwrap_or(false);
            for _ in 0..5 {
                let x = s.seq(6);
                ok &= check_action(&r, p, &x).unwrap_or(false);
            }
            for q in &pairs {
                let prod = (r.mul(&p.a, &q.a), r.mul(&p.b, &q.b));
                ok &= pairs.iter().any(|t| t.a == prod.0 && t.b == prod.1);
            }
        }
        let name = format!("H_{k}");
        let detail = format!(
            "{} pairs, exponent {}, factors {:?}",
            pairs.len(),
            report.structure.exponent,
            report.structure.invariant_factors
        );
        let status = match (ok, report.agreement) {
            (false, _) => Status::Fail,
            (true, Some(false)) => Status::Flag,
            _ => Status::Pass,
        };
        let detail = if status == Status::Flag {
            format!("{detail}; differs from tabulated claim")
        } else {
            detail
        };
        s.row("homogeneity", &name, status, detail);
    }
}

fn flow_checks(s: &mut Suite) {
    let k = s.field.clone();
    let m = s.order;
    let closed = repeat(s, 3, |s| {
        let (a, b, x0) = (s.nonzero(), s.nonzero(), s.elem());
        let fields = [
            (VectorFieldSpec::constant(&k, a.clone())?, x0.clone()),
            (VectorFieldSpec::affine(&k, a.clone(), b)?, x0),
            (VectorFieldSpec::exp_field(&k, a)?, k.zero()),
        ];
        for (f, x) in &fields {
            if flow_at_point(f, x, m)? != closed_form_flow(f, x, m)? {
                return Ok(false);
            }
        }
        Ok(true)
    });
    s.record("flow", "closed forms", closed);

    let half = (m / 2).max(1);
    let law = repeat(s, 3, |s| {
        let (a, b, x0) = (s.nonzero(), s.nonzero(), s.elem());
        let need = 2 * half;
        let kinds = [
            (
                VectorFieldSpec::constant(&k, a.clone())?.expansion_at(&x0, need)?,
                x0.clone(),
            ),
            (
                VectorFieldSpec::affine(&k, a.clone(), b)?.expansion_at(&x0, need)?,
                x0.clone(),
            ),
            (
                VectorFieldSpec::exp_field(&k, a)?.expansion_at(&k.zero(), need)?,
                k.zero(),
            ),
            (s.field_series(need)?, x0),
        ];
        for (f, x) in &kinds {
            if !group_law_check(f, x, half, half)? {
                return Ok(false);
            }
        }
        Ok(true)
    });
    s.record("flow", "group law", law);

    let pde = repeat(s, 3, |s| {
        let f = s.field_series(m)?;
        Ok(pde_check(&f, m - 1)?.holds())
    });
    s.record("flow", "pde", pde);

    let scale = repeat(s, 5, |s| {
        let (a, b, x0, r) = (s.elem(), s.elem(), s.elem(), s.elem());
        time_scale_check(&VectorFieldSpec::affine(&k, a, b)?, &x0, &r, m)
    });
    s.record("flow", "time scaling", scale);

    let axioms = repeat(s, 2, |s| {
        let f = s.field_series(2 * half)?;
        let (x0, r, v, w) = (s.elem(), s.elem(), s.elem(), s.elem());
        Ok(module_axioms_check(&f, &x0, &r, &v, &w, half)?.all())
    });
    s.record("flow", "module axioms", axioms);

    let model = match unit_group_model(&s.ring) {
        Ok(model) => model,
        Err(e) => {
            s.row("flow", "unit twists", Status::Skip, e.to_string());
            return;
        }
    };
    let units: Vec<Elem> = model
        .units_up_to(&s.ring, 1)
        .into_iter()
        .map(|(_, _, u)| u)
        .collect();
    let depth = m.min(4);
    let twists = repeat(s, 2, |s| {
        let f = s.field_series(2 * depth)?;
        for u in &units {
            if !gmodule_identity_check(&f, u, depth)? {
                return Ok(false);
            }
        }
        Ok(true)
    });
    s.record("flow", "unit twists", twists);

    let equilibria = repeat(s, 3, |s| {
        let (b, x_star) = (s.nonzero(), s.elem());
        let a = k.neg(&k.mul(&b, &x_star));
        let field = VectorFieldSpec::affine(&k, a, b)?;
        if !equilibrium_check(&field, &x_star)? {
            return Ok(false);
        }
        for u in &units {
            let twisted = field.twisted(&k.one(), u, 1);
            if !equilibrium_check(&twisted, &k.try_divide(&x_star, u)?)? {
                return Ok(false);
            }
        }
        Ok(true)
    });
    s.record("flow", "twisted equilibria", equilibria);

    // c Phi(t, x, a f(c x)) against Phi(c t, c x): holds only when a = 1
    let f = match s.field_series(2 * depth) {
        Ok(f) => f,
        Err(e) => return s.record("flow", "k-twists", Err(e)),
    };
    let mut stated = true;
    let mut rescaled = true;
    for kk in 2..=6 {
        if let Ok(report) = solve_report(&s.ring, kk) {
            for p in report.pairs {
                match gmodule_k_identity_check(&f, &p.a, &p.b, depth) {
                    Ok(r) => {
                        stated &= r.stated;
                        rescaled &= r.rescaled;
                    }
                    Err(_) => rescaled = false,
                }
            }
        }
    }
    let (status, detail) = match (rescaled, stated) {
        (false, _) => (Status::Fail, "mismatch".to_string()),
        (true, true) => (Status::Pass, String::new()),
        (true, false) => (
            Status::Flag,
            "holds with time c a t, not c t, when a != 1".to_string(),
        ),
    };
    s.row("flow", "k-twists", status, detail);
}
