//! Partial and complete Bell polynomials and Faa di Bruno composition.

use autonomous_operator::bell::{
    complete_bell, faa_di_bruno, partial_bell, partial_bell_rec, partitions,
};
use autonomous_operator::error::Result;
use autonomous_operator::rings::Ring;

fn main() -> Result<()> {
    let z = Ring::integers();
    let ones: Vec<_> = (0..8).map(|_| z.one()).collect();

    println!("partitions of 5 into 2 parts:");
    for p in partitions(5, 2)? {
        println!(
            "  multiplicities {:?}, weight {}",
            p.multiplicities(),
            p.weight()
        );
    }

    // B_{n,k}(1, 1, ...) are the Stirling numbers of the second kind
    for n in 1..=6 {
        let row: Vec<String> = (1..=n)
            .map(|k| partial_bell(&z, n, k, &ones).map(|v| z.render(&v)))
            .collect::<Result<_>>()?;
        println!("S({n}, k) = {}", row.join(" "));
    }
    let b = vec![z.from_int(2), z.from_int(3), z.from_int(5), z.from_int(7)];
    let direct = partial_bell(&z, 5, 2, &b)?;
    let rec = partial_bell_rec(&z, 5, 2, &b)?;
    println!(
        "B_5,2(2,3,5,7) = {} by partitions, {} by recurrence",
        z.render(&direct),
        z.render(&rec)
    );

    let bell: Vec<String> = (1..8)
        .map(|n| complete_bell(&z, n, &ones, &ones).map(|v| z.render(&v)))
        .collect::<Result<_>>()?;
    println!("complete Bell numbers: {}", bell.join(" "));

    // derivatives of exp(exp(x) - 1) at 0
    let composed = faa_di_bruno(
        &z,
        &ones,
        &[z.zero(), z.one(), z.one(), z.one(), z.one(), z.one()],
    );
    let shown: Vec<String> = composed.iter().map(|v| z.render(v)).collect();
    println!("Faa di Bruno: {}", shown.join(" "));
    Ok(())
}
