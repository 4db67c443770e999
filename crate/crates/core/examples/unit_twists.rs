//! Families of flows obtained by twisting a field with units and homogeneity pairs.

use autonomous_operator::error::Result;
use autonomous_operator::flow::{
    gmodule_identity_check, gmodule_k_identity_check, gmodule_orbit, VectorFieldSpec,
};
use autonomous_operator::homogeneity::solve_hk;
use autonomous_operator::rings::{unit_group_model, Ring};

const FIELD: &str = "series:[1,1,1,1,1,1,1,1,1]";

fn main() -> Result<()> {
    let r = Ring::eisenstein();
    let f = VectorFieldSpec::parse(&r, FIELD)?.expansion_at(&r.zero(), 8)?;
    for u in unit_group_model(&r)?.torsion_units(&r) {
        println!(
            "a = {}: a Phi(t, x, f(a x)) = Phi(a t, a x): {}",
            r.render(&u),
            gmodule_identity_check(&f, &u, 4)?
        );
    }

    // c Phi(t, x, a f(c x)) against Phi(c t, c x) and Phi(c a t, c x)
    let g = Ring::gaussian();
    let fg = VectorFieldSpec::parse(&g, FIELD)?.expansion_at(&g.zero(), 8)?;
    for (ring, f, k) in [(&r, &f, 4), (&g, &fg, 3)] {
        for pair in solve_hk(ring, k)? {
            let id = gmodule_k_identity_check(f, &pair.a, &pair.b, 4)?;
            let (a, b) = pair.render(ring);
            println!(
                "{ring} k={k} (a, b) = ({a}, {b}): time c t {}, time c a t {}",
                id.stated, id.rescaled
            );
        }
    }

    let constant = VectorFieldSpec::parse(&r, "const:2")?;
    for m in gmodule_orbit(&constant, 4, &r, 3, 3)? {
        println!(
            "a = {}, c = {}: [{}]",
            r.render(&m.a),
            r.render(&m.scalar),
            m.flow.render().join(", ")
        );
    }
    Ok(())
}
