//! Flows of autonomous vector fields: coefficients, closed forms and the group law.

use autonomous_operator::error::Result;
use autonomous_operator::flow::{
    closed_form_flow, equilibrium_check, flow_at_point, group_law_check, pde_check, symbolic_flow,
    time_scale_check, VectorFieldSpec,
};
use autonomous_operator::rings::Ring;

fn main() -> Result<()> {
    let q = Ring::rationals();
    let x0 = q.one();
    for text in [
        "const:3",
        "affine:2,1",
        "expfield:1",
        "series:[1,0,1,0,0,0,0]",
    ] {
        let field = VectorFieldSpec::parse(&q, text)?;
        let flow = match flow_at_point(&field, &x0, 6) {
            Ok(flow) => flow,
            Err(e) => {
                println!("{}: {e}", field.render());
                continue;
            }
        };
        println!(
            "{}: Phi at x0 = 1: [{}]",
            field.render(),
            flow.render().join(", ")
        );
        match closed_form_flow(&field, &x0, 6) {
            Ok(closed) => println!("  closed form agrees: {}", closed == flow),
            Err(e) => println!("  no closed form: {e}"),
        }
    }

    // x' = 1 + x^2 at 0 gives tan t; the field is padded to the order the checks need
    let field = VectorFieldSpec::parse(&q, "series:[1,0,2,0,0,0,0,0,0,0,0,0,0]")?;
    let f = field.expansion_at(&q.zero(), 12)?;
    println!(
        "tan: [{}]",
        flow_at_point(&field, &q.zero(), 9)?.render().join(", ")
    );
    println!(
        "group law to (4, 4): {}",
        group_law_check(&f, &q.zero(), 4, 4)?
    );
    println!("pde to depth 5: {}", pde_check(&f, 5)?.holds());
    println!(
        "time scaling by 3: {}",
        time_scale_check(&field, &q.zero(), &q.from_int(3), 6)?
    );

    let affine = VectorFieldSpec::parse(&q, "affine:2,1")?;
    println!(
        "x = -2 is an equilibrium of 2 + x: {}",
        equilibrium_check(&affine, &q.from_int(-2))?
    );

    // Phi(t, x) with symbolic x: the coefficient of t^n/n! is a series in x
    let sym = symbolic_flow(&affine.expansion_at(&q.zero(), 6)?, &q.zero(), 3)?;
    for (n, c) in sym.render().iter().enumerate() {
        println!("  Phi_{n}(x) = {c}");
    }
    Ok(())
}
