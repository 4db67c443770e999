//! Truncated exponential generating functions: products, derivatives, composition.

use autonomous_operator::error::Result;
use autonomous_operator::hurwitz::HurwitzSeries;
use autonomous_operator::rings::Ring;

fn show(label: &str, s: &HurwitzSeries) {
    println!("{label:>14}: {}", s.render());
}

fn main() -> Result<()> {
    let q = Ring::rationals();
    let exp = HurwitzSeries::exp(&q, 6);
    let x = HurwitzSeries::variable(&q, 6);
    show("exp(x)", &exp);
    show("x", &x);
    show("x exp(x)", &x.mul(&exp)?);
    show("d/dx exp(x)", &exp.derivative()?);
    show("exp(2x)", &exp.scale_substitute(&q.from_int(2)));
    show("exp(x) shifted", &exp.taylor_shift(&q.one())?);

    // exp(exp(x) - 1) has the Bell numbers as coefficients
    let inner = exp.sub(&HurwitzSeries::one(&q, 6))?;
    show("exp(exp(x)-1)", &exp.compose(&inner)?);

    let g = Ring::gaussian();
    let i = g.generator().expect("gaussian generator");
    show("exp(ix)", &HurwitzSeries::exp_scaled(&g, &i, 6));
    Ok(())
}
