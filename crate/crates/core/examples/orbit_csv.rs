//! Samples a truncated flow along a time grid and writes it as CSV to stdout.

use autonomous_operator::error::Result;
use autonomous_operator::flow::{
    flow_at_point, orbit_samples, parse_grid, write_orbit_csv, VectorFieldSpec,
};
use autonomous_operator::rings::Ring;

fn main() -> Result<()> {
    let g = Ring::gaussian().fraction_field();
    let i = g.generator().expect("gaussian generator");
    // x' = i x from x0 = 1 traces the unit circle
    let field = VectorFieldSpec::affine(&g, g.zero(), i)?;
    let flow = flow_at_point(&field, &g.one(), 24)?;
    let rows = orbit_samples(&flow, &parse_grid("0:3.14159265358979:9")?)?;
    write_orbit_csv(&rows, std::io::stdout().lock())
}
