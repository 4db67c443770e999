//! The autonomous operator on sequences and on power series, and its inverse.

use autonomous_operator::autonomous::{apply_pointwise, apply_series, check_scaling, invert};
use autonomous_operator::error::Result;
use autonomous_operator::hurwitz::HurwitzSeries;
use autonomous_operator::rings::Ring;

fn render(ring: &Ring, xs: &[autonomous_operator::rings::Elem]) -> String {
    let items: Vec<String> = xs.iter().map(|x| ring.render(x)).collect();
    format!("[{}]", items.join(", "))
}

fn main() -> Result<()> {
    let z = Ring::integers();
    let ones: Vec<_> = (0..7).map(|_| z.one()).collect();
    let image = apply_pointwise(&z, &ones)?;
    println!("A(1, 1, 1, ...) = {}", render(&z, &image));

    let back = invert(&z, &image)?;
    println!(
        "inverse: {} (integral: {})",
        render(&back.field, &back.terms),
        back.in_ring
    );

    let y = vec![z.from_int(2), z.one(), z.one()];
    let pre = invert(&z, &y)?;
    println!(
        "A^-1(2, 1, 1) = {} (integral: {})",
        render(&pre.field, &pre.terms),
        pre.in_ring
    );

    let x: Vec<_> = [3, -1, 4, 1, -5].iter().map(|&n| z.from_int(n)).collect();
    println!(
        "A(2x)_n = 2^n A(x)_n: {}",
        check_scaling(&z, &x, &z.from_int(2))?
    );

    // A_1, A_2, A_3 for f = exp: f, f f', f (f f'' + f'^2)
    let q = Ring::rationals();
    let f = HurwitzSeries::exp(&q, 6);
    for (n, a) in apply_series(&f, 4)?.iter().enumerate() {
        println!("A_{n}(exp) = {}", a.render());
    }
    Ok(())
}
