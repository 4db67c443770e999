//! Arithmetic in the supported coefficient rings and their unit groups.

use autonomous_operator::error::Result;
use autonomous_operator::rings::{unit_group_model, Ring, RingSpec};

fn main() -> Result<()> {
    for text in [
        "z",
        "q",
        "gauss",
        "eisen",
        "quad:2",
        "quad:5",
        "roots:6",
        "frac(gauss)",
    ] {
        let ring = Ring::new(text.parse::<RingSpec>()?)?;
        let g = ring.generator().unwrap_or_else(|| ring.one());
        let x = ring.add(&ring.from_int(2), &g);
        let sq = ring.mul(&x, &x);
        let inv = ring
            .try_invert(&x)
            .map(|y| ring.render(&y))
            .unwrap_or_else(|_| "none".into());
        println!(
            "{ring}: x = {}, x^2 = {}, 1/x = {inv}",
            ring.render(&x),
            ring.render(&sq)
        );
        if let Ok(model) = unit_group_model(&ring) {
            let torsion: Vec<String> = model
                .torsion_units(&ring)
                .iter()
                .map(|u| ring.render(u))
                .collect();
            let free = model
                .fundamental_unit
                .as_ref()
                .map(|e| format!(", fundamental unit {}", ring.render(e)))
                .unwrap_or_default();
            println!("  torsion units [{}]{free}", torsion.join(", "));
        }
    }
    Ok(())
}
