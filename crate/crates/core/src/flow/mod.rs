//! Flows of one-dimensional autonomous equations `x' = f(x)`.
//!
//! The flow is the EGF of the operator's image:
//! `Phi(t, x) = x + sum_{n>=1} A_n(f(x), ..., f^{(n-1)}(x)) t^n/n!`.
//! At a base point the `A_n` are numbers in `Frac(R)`; with symbolic `x` they are
//! series in `X = x - x0` (see [`symbolic_flow`]).

mod checks;
mod orbit;

pub use checks::{
    bivariate_flow, gmodule_identity_check, gmodule_k_identity_check, group_law_check,
    module_axioms_check, pde_check, time_scale_check, BivariateFlow, KIdentity, ModuleAxioms,
    PdeReport,
};
pub use orbit::{
    equilibrium_check, gmodule_orbit, orbit_samples, parse_grid, write_orbit_csv, OrbitMember,
    OrbitRow,
};

use crate::autonomous::{apply_pointwise, apply_series};
use crate::error::{Error, Result};
use crate::hurwitz::HurwitzSeries;
use crate::rings::{factorial, text::split_list, Elem, Ring};

/// Right-hand side of `x' = f(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldKind {
    /// `f(x) = a`
    Constant(Elem),
    /// `f(x) = a + b x`
    Affine(Elem, Elem),
    /// `f(x) = a exp(x)`; only expandable at `x = 0`.
    ExpField(Elem),
    /// Hurwitz expansion of `f` at the base point.
    Series(HurwitzSeries),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorFieldSpec {
    /// `Frac(R)`, where the parameters live.
    pub field: Ring,
    pub kind: FieldKind,
}

impl VectorFieldSpec {
    pub fn new(ring: &Ring, kind: FieldKind) -> Result<Self> {
        let field = ring.fraction_field();
        let params: Vec<&Elem> = match &kind {
            FieldKind::Constant(a) | FieldKind::ExpField(a) => vec![a],
            FieldKind::Affine(a, b) => vec![a, b],
            FieldKind::Series(s) => s.coeffs().iter().collect(),
        };
        if let Some(bad) = params.into_iter().find(|p| !field.contains(p)) {
            return Err(Error::RingMismatch(format!("{bad:?}"), field.to_string()));
        }
        let kind = match kind {
            FieldKind::Series(s) => FieldKind::Series(s.lift(&field)?),
            other => other,
        };
        Ok(VectorFieldSpec { field, kind })
    }

    pub fn constant(ring: &Ring, a: Elem) -> Result<Self> {
        Self::new(ring, FieldKind::Constant(a))
    }

    pub fn affine(ring: &Ring, a: Elem, b: Elem) -> Result<Self> {
        Self::new(ring, FieldKind::Affine(a, b))
    }

    pub fn exp_field(ring: &Ring, a: Elem) -> Result<Self> {
        Self::new(ring, FieldKind::ExpField(a))
    }

    pub fn series(f: &HurwitzSeries) -> Result<Self> {
        Self::new(f.ring(), FieldKind::Series(f.clone()))
    }

    /// Parses `const:a`, `affine:a,b`, `expfield:a` or `series:[c0,c1,...]`.
    pub fn parse(ring: &Ring, text: &str) -> Result<Self> {
        let bad = || Error::Parse {
            what: "vector field",
            input: text.to_string(),
        };
        let field = ring.fraction_field();
        let (name, args) = text.trim().split_once(':').ok_or_else(bad)?;
        let args: String = args.chars().filter(|c| !c.is_whitespace()).collect();
        let values = |s: &str| -> Result<Vec<Elem>> {
            split_list(s).iter().map(|v| field.parse(v)).collect()
        };
        let kind = match name.trim().to_ascii_lowercase().as_str() {
            "const" | "constant" => match values(&args)?.as_slice() {
                [a] => FieldKind::Constant(a.clone()),
                _ => return Err(bad()),
            },
            "affine" => match values(&args)?.as_slice() {
                [a, b] => FieldKind::Affine(a.clone(), b.clone()),
                _ => return Err(bad()),
            },
            "expfield" | "exp" => match values(&args)?.as_slice() {
                [a] => FieldKind::ExpField(a.clone()),
                _ => return Err(bad()),
            },
            "series" => {
                let body = args
                    .strip_prefix('[')
                    .and_then(|s| s.strip_suffix(']'))
                    .ok_or_else(bad)?;
                FieldKind::Series(HurwitzSeries::new(&field, values(body)?)?)
            }
            _ => return Err(bad()),
        };
        Self::new(&field, kind)
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            FieldKind::Constant(_) => "const",
            FieldKind::Affine(..) => "affine",
            FieldKind::ExpField(_) => "expfield",
            FieldKind::Series(_) => "series",
        }
    }

    /// `f(x0), f'(x0), ..., f^{(count-1)}(x0)` in `Frac(R)`.
    pub fn derivatives_at(&self, x0: &Elem, count: usize) -> Result<Vec<Elem>> {
        let k = &self.field;
        if !k.contains(x0) {
            return Err(Error::RingMismatch(format!("{x0:?}"), k.to_string()));
        }
        let mut out = vec![k.zero(); count];
        match &self.kind {
            FieldKind::Constant(a) => {
                if count > 0 {
                    out[0] = a.clone();
                }
            }
            FieldKind::Affine(a, b) => {
                if count > 0 {
                    out[0] = k.add(a, &k.mul(b, x0));
                }
                if count > 1 {
                    out[1] = b.clone();
                }
            }
            FieldKind::ExpField(a) => {
                if !k.is_zero(x0) {
                    return Err(Error::UnsupportedBasePoint(format!(
                        "a*exp(x) at x0 = {}; supply the field as a series instead",
                        k.render(x0)
                    )));
                }
                out = vec![a.clone(); count];
            }
            FieldKind::Series(s) => {
                if count > s.order() + 1 {
                    return Err(Error::OrderExhausted(format!(
                        "{count} derivatives needed from a series of order {}",
                        s.order()
                    )));
                }
                out = s.coeffs()[..count].to_vec();
            }
        }
        Ok(out)
    }

    /// Hurwitz expansion of `f` at `x0` to the given order.
    pub fn expansion_at(&self, x0: &Elem, order: usize) -> Result<HurwitzSeries> {
        HurwitzSeries::new(&self.field, self.derivatives_at(x0, order + 1)?)
    }

    /// The field `r f`.
    pub fn scaled(&self, r: &Elem) -> Self {
        let k = &self.field;
        let kind = match &self.kind {
            FieldKind::Constant(a) => FieldKind::Constant(k.mul(r, a)),
            FieldKind::Affine(a, b) => FieldKind::Affine(k.mul(r, a), k.mul(r, b)),
            FieldKind::ExpField(a) => FieldKind::ExpField(k.mul(r, a)),
            FieldKind::Series(s) => FieldKind::Series(s.scale(r)),
        };
        VectorFieldSpec {
            field: k.clone(),
            kind,
        }
    }

    /// The field `x -> a f(c x)`, expanded at 0. Series fields are read as expansions at 0.
    /// `order` is used when the result has no closed form.
    pub fn twisted(&self, a: &Elem, c: &Elem, order: usize) -> Self {
        let k = &self.field;
        let kind = match &self.kind {
            FieldKind::Constant(alpha) => FieldKind::Constant(k.mul(a, alpha)),
            FieldKind::Affine(alpha, beta) => {
                FieldKind::Affine(k.mul(a, alpha), k.mul(&k.mul(a, beta), c))
            }
            FieldKind::ExpField(alpha) if k.is_one(c) => FieldKind::ExpField(k.mul(a, alpha)),
            FieldKind::ExpField(alpha) => {
                let s = HurwitzSeries::exp_scaled(k, c, order).scale(&k.mul(a, alpha));
                FieldKind::Series(s)
            }
            FieldKind::Series(s) => FieldKind::Series(s.scale_substitute(c).scale(a)),
        };
        VectorFieldSpec {
            field: k.clone(),
            kind,
        }
    }

    pub fn render(&self) -> String {
        let k = &self.field;
        match &self.kind {
            FieldKind::Constant(a) => format!("const:{}", k.render(a)),
            FieldKind::Affine(a, b) => format!("affine:{},{}", k.render(a), k.render(b)),
            FieldKind::ExpField(a) => format!("expfield:{}", k.render(a)),
            FieldKind::Series(s) => format!("series:{}", s.render()),
        }
    }
}

/// Hurwitz `t`-coefficients `Phi_0, ..., Phi_M` of a flow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowSeries {
    /// Coefficient ring: `Frac(R)` at a point, a series ring over it for symbolic `x`.
    pub ring: Ring,
    pub base_point: Elem,
    pub coeffs: Vec<Elem>,
}

impl FlowSeries {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn scale(&self, c: &Elem) -> FlowSeries {
        let lifted = self.ring.lift_scalar(c);
        FlowSeries {
            ring: self.ring.clone(),
            base_point: self.base_point.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|x| self.ring.mul(&lifted, x))
                .collect(),
        }
    }

    pub fn render(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| self.ring.render(c)).collect()
    }
}

/// `Phi_0 = x0`, `Phi_n = A_n(f(x0), ..., f^{(n-1)}(x0))` for `n <= order`.
pub fn flow_at_point(field: &VectorFieldSpec, x0: &Elem, order: usize) -> Result<FlowSeries> {
    let k = &field.field;
    let mut coeffs = vec![x0.clone()];
    if order > 0 {
        let derivs = field.derivatives_at(x0, order)?;
        coeffs.extend(apply_pointwise(k, &derivs)?);
    }
    Ok(FlowSeries {
        ring: k.clone(),
        base_point: x0.clone(),
        coeffs,
    })
}

/// Taylor coefficients of the known closed forms: `x + a t`,
/// `x + (a/b + x)(exp(b t) - 1)` and `x - ln(1 - a exp(x) t)` at `x = 0`.
pub fn closed_form_flow(field: &VectorFieldSpec, x0: &Elem, order: usize) -> Result<FlowSeries> {
    let k = &field.field;
    let mut coeffs = vec![x0.clone()];
    match &field.kind {
        FieldKind::Constant(a) => {
            coeffs.extend((1..=order).map(|n| if n == 1 { a.clone() } else { k.zero() }));
        }
        FieldKind::Affine(a, b) if k.is_zero(b) => {
            coeffs.extend((1..=order).map(|n| if n == 1 { a.clone() } else { k.zero() }));
        }
        FieldKind::Affine(a, b) => {
            // (a/b + x)(exp(bt) - 1) contributes (a/b + x) b^n to t^n/n!
            let shift = k.add(&k.try_divide(a, b)?, x0);
            coeffs.extend((1..=order).map(|n| k.mul(&shift, &k.pow(b, n as u64))));
        }
        FieldKind::ExpField(a) => {
            if !k.is_zero(x0) {
                return Err(Error::UnsupportedBasePoint(format!(
                    "a*exp(x) at x0 = {}",
                    k.render(x0)
                )));
            }
            // -ln(1 - c t) = sum (n-1)! c^n t^n/n! with c = a exp(0) = a
            coeffs.extend((1..=order).map(|n| k.mul_int(&k.pow(a, n as u64), &factorial(n - 1))));
        }
        FieldKind::Series(_) => return Err(Error::UnsupportedKind("series".into())),
    }
    Ok(FlowSeries {
        ring: k.clone(),
        base_point: x0.clone(),
        coeffs,
    })
}

/// Flow with symbolic `x = x0 + X`: `Phi_0 = x0 + X` and `Phi_n = A_n` as series in `X`.
/// `f` is the expansion at `x0`; the coefficients are valid to order `N - M + 1`.
pub fn symbolic_flow(f: &HurwitzSeries, x0: &Elem, order: usize) -> Result<FlowSeries> {
    let field = f.ring().fraction_field();
    let f = f.lift(&field)?;
    let n = f.order();
    if order == 0 || order > n + 1 {
        return Err(Error::OrderExhausted(format!(
            "flow order {order} from a field of order {n}"
        )));
    }
    let nx = n + 1 - order;
    let ring = Ring::series_over(&field, nx);
    let mut base = HurwitzSeries::variable(&field, nx).into_coeffs();
    base[0] = x0.clone();
    let base = Elem::Series(base);
    let mut coeffs = vec![base.clone()];
    for a in apply_series(&f, order)? {
        coeffs.push(Elem::Series(a.truncate(nx)?.into_coeffs()));
    }
    Ok(FlowSeries {
        ring,
        base_point: base,
        coeffs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_examples() {
        let q = Ring::rationals();
        let c = VectorFieldSpec::constant(&q, q.from_int(2)).unwrap();
        let phi = flow_at_point(&c, &q.from_int(5), 4).unwrap();
        assert_eq!(
            phi.coeffs,
            vec![q.from_int(5), q.from_int(2), q.zero(), q.zero(), q.zero()]
        );

        let aff = VectorFieldSpec::affine(&q, q.from_int(2), q.from_int(3)).unwrap();
        let phi = flow_at_point(&aff, &q.zero(), 4).unwrap();
        let expect: Vec<Elem> = [0, 2, 6, 18, 54].iter().map(|&v| q.from_int(v)).collect();
        assert_eq!(phi.coeffs, expect);
        assert_eq!(closed_form_flow(&aff, &q.zero(), 4).unwrap(), phi);

        let e = VectorFieldSpec::exp_field(&q, q.one()).unwrap();
        let phi = flow_at_point(&e, &q.zero(), 5).unwrap();
        let expect: Vec<Elem> = [0, 1, 1, 2, 6, 24].iter().map(|&v| q.from_int(v)).collect();
        assert_eq!(phi.coeffs, expect);
        assert!(matches!(
            flow_at_point(&e, &q.one(), 3),
            Err(Error::UnsupportedBasePoint(_))
        ));

        let exp_t = VectorFieldSpec::affine(&q, q.zero(), q.one()).unwrap();
        assert_eq!(
            closed_form_flow(&exp_t, &q.one(), 4).unwrap().coeffs,
            vec![q.one(); 5]
        );
    }

    #[test]
    fn field_parsing() {
        let g = Ring::gaussian();
        let f = VectorFieldSpec::parse(&g, "affine:1+1i, 1/2").unwrap();
        assert_eq!(f.render(), "affine:1+1i,1/2");
        let s = VectorFieldSpec::parse(&g, "series:[1,1i,0]").unwrap();
        assert_eq!(s.kind_name(), "series");
        assert!(VectorFieldSpec::parse(&g, "affine:1").is_err());
        assert!(VectorFieldSpec::parse(&g, "wave:1").is_err());
        assert!(closed_form_flow(&s, &g.zero(), 2).is_err());
    }

    #[test]
    fn symbolic_flow_of_constant_field() {
        let q = Ring::rationals();
        let f = HurwitzSeries::from_ints(&q, &[3, 0, 0, 0, 0]);
        let phi = symbolic_flow(&f, &q.zero(), 3).unwrap();
        assert_eq!(
            phi.render(),
            vec!["[0,1,0]", "[3,0,0]", "[0,0,0]", "[0,0,0]"]
        );
    }
}
