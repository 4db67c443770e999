//! Runs every consistency check over a ring and prints the report.

use autonomous_operator::error::Result;
use autonomous_operator::rings::{Ring, RingSpec};
use autonomous_operator::verify::run_all;

fn main() -> Result<()> {
    let text = std::env::args().nth(1).unwrap_or_else(|| "gauss".into());
    let ring = Ring::new(text.parse::<RingSpec>()?)?;
    let report = run_all(&ring, 5, 7)?;
    print!("{}", report.render());
    if !report.passed() {
        std::process::exit(1);
    }
    Ok(())
}
