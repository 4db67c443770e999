use super::{Elem, Ring, RingSpec, RootsOrder};
use crate::error::{Error, Result};

/// Unit group `mu_w x <eps>^r` of a ring with a built-in model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitGroupModel {
    pub torsion_order: u64,
    pub torsion_generator: Elem,
    pub free_rank: u8,
    pub fundamental_unit: Option<Elem>,
}

impl UnitGroupModel {
    /// `zeta^j * eps^m`.
    pub fn unit(&self, ring: &Ring, j: u64, m: i64) -> Elem {
        let torsion = ring.pow(&self.torsion_generator, j % self.torsion_order);
        match &self.fundamental_unit {
            Some(eps) if m != 0 => {
                let free = ring.pow_signed(eps, m).expect("fundamental unit inverts");
                ring.mul(&torsion, &free)
            }
            _ => torsion,
        }
    }

    /// All torsion units `zeta^0, ..., zeta^(w-1)`.
    pub fn torsion_units(&self, ring: &Ring) -> Vec<Elem> {
        let mut out = Vec::with_capacity(self.torsion_order as usize);
        let mut x = ring.one();
        for _ in 0..self.torsion_order {
            out.push(x.clone());
            x = ring.mul(&x, &self.torsion_generator);
        }
        out
    }

    /// Units `zeta^j * eps^m` with `|m| <= bound_m` (just the torsion units when `r = 0`).
    pub fn units_up_to(&self, ring: &Ring, bound_m: u32) -> Vec<(u64, i64, Elem)> {
        let bound = if self.free_rank == 0 {
            0
        } else {
            bound_m as i64
        };
        let mut out = Vec::new();
        for m in -bound..=bound {
            for j in 0..self.torsion_order {
                out.push((j, m, self.unit(ring, j, m)));
            }
        }
        out
    }
}

/// The classical unit group of `ring`, for the rings that have one built in.
pub fn unit_group_model(ring: &Ring) -> Result<UnitGroupModel> {
    let finite = |w: u64, zeta: Elem| UnitGroupModel {
        torsion_order: w,
        torsion_generator: zeta,
        free_rank: 0,
        fundamental_unit: None,
    };
    let real = |eps: Elem| UnitGroupModel {
        torsion_order: 2,
        torsion_generator: ring.from_int(-1),
        free_rank: 1,
        fundamental_unit: Some(eps),
    };
    match ring.spec() {
        RingSpec::Integers => Ok(finite(2, ring.from_int(-1))),
        RingSpec::Gaussian => Ok(finite(4, ring.quad(0, 1))),
        RingSpec::Eisenstein => Ok(finite(6, ring.quad(0, -1))),
        RingSpec::QuadReal(2) => Ok(real(ring.quad(1, 1))),
        RingSpec::QuadReal(3) => Ok(real(ring.quad(2, 1))),
        RingSpec::QuadReal(5) => Ok(real(ring.quad(0, 1))),
        RingSpec::RootsOfUnity(RootsOrder::Finite(m)) => Ok(finite(*m, ring.root_of_unity(1, *m)?)),
        other => Err(Error::Unsupported(format!(
            "no unit group model for {other}"
        ))),
    }
}
