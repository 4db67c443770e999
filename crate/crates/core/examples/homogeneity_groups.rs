//! Solutions of the homogeneity equations `a^(k-1) = 1`, `b^(k-1) = a` and their groups.

use autonomous_operator::error::{Error, Result};
use autonomous_operator::homogeneity::{check_action, h1_describe, solve_report};
use autonomous_operator::rings::Ring;

fn main() -> Result<()> {
    let rings = [
        Ring::integers(),
        Ring::gaussian(),
        Ring::eisenstein(),
        Ring::quad_real(2)?,
    ];
    for ring in &rings {
        let h1 = h1_describe(ring, 2)?;
        println!("{ring} H_1: {}", h1.description);
        for k in 2..=7 {
            let report = match solve_report(ring, k) {
                Ok(r) => r,
                Err(Error::Unsupported(why)) => {
                    println!("  H_{k}: {why}");
                    continue;
                }
                Err(e) => return Err(e),
            };
            let pairs: Vec<String> = report
                .pairs
                .iter()
                .map(|p| {
                    let (a, b) = p.render(ring);
                    format!("({a}, {b})")
                })
                .collect();
            let agrees = match report.agreement {
                Some(true) => "matches the tables",
                Some(false) => "differs from the tables",
                None => "no tabulated value",
            };
            println!(
                "  H_{k}: order {}, factors {:?}, {agrees}: {}",
                report.structure.order,
                report.structure.invariant_factors,
                pairs.join(" ")
            );
        }
    }

    let z = Ring::integers();
    let x: Vec<_> = (1..=6).map(|n| z.from_int(n)).collect();
    for pair in autonomous_operator::homogeneity::solve_hk(&z, 3)? {
        println!(
            "z k=3 {:?} acts compatibly: {}",
            pair.render(&z),
            check_action(&z, &pair, &x)?
        );
    }
    Ok(())
}
