use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{integer_kernel, IntMatrix};

use super::{ConeIndices, Fan};

/// A codimension-one cone shared by two maximal cones, with the linear
/// relation among its rays and the two opposite rays.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wall {
    pub ray_indices: ConeIndices,
    /// Index (into `max_cones`) of the first maximal cone containing the wall.
    pub left: usize,
    pub right: usize,
    /// Coefficients over all rays; `relation · R = 0` for the ray matrix `R`.
    /// Positive exactly on the two opposite rays.
    pub relation: Vec<BigInt>,
}

impl Wall {
    /// Ray indices of the two maximal cones not on the wall (left, right).
    pub fn opposite_rays(&self, fan: &Fan) -> (usize, usize) {
        let other = |c: usize| {
            *fan.max_cones()[c].iter().find(|i| !self.ray_indices.contains(i)).expect("maximal cone has an opposite ray")
        };
        (other(self.left), other(self.right))
    }
}

/// Walls of a complete smooth fan with their integral relations
/// `v_p + v_q + Σ b_i v_i = 0` (the opposite rays have coefficient 1).
pub fn walls(fan: &Fan) -> Result<Vec<Wall>> {
    if !fan.is_smooth() {
        return Err(Error::NotSmooth("smooth-only intersection numbers".into()));
    }
    let walls = scaled_walls(fan)?;
    for w in &walls {
        let (p, q) = w.opposite_rays(fan);
        if !(w.relation[p].is_one() && w.relation[q].is_one()) {
            return Err(Error::Internal(format!("wall {:?} relation not normalized", w.ray_indices)));
        }
    }
    Ok(walls)
}

/// Walls of a complete simplicial fan. The relation is the primitive integer
/// relation with positive coefficients on the opposite rays, so it agrees
/// with [`walls`] on smooth fans and is a positive multiple of the curve
/// class otherwise.
pub fn scaled_walls(fan: &Fan) -> Result<Vec<Wall>> {
    if !fan.is_complete() {
        return Err(Error::Incomplete);
    }
    let m = fan.num_rays();
    let mut out = Vec::new();
    for (facet, cones) in fan.facet_incidence() {
        let &[left, right] = cones.as_slice() else {
            return Err(Error::Internal(format!("facet {facet:?} lies in {} maximal cones", cones.len())));
        };
        let opposite = |c: usize| *fan.max_cones()[c].iter().find(|i| !facet.contains(i)).expect("opposite ray");
        let (p, q) = (opposite(left), opposite(right));
        let involved: Vec<usize> = [p, q].into_iter().chain(facet.iter().copied()).collect();
        let kernel = integer_kernel(&fan.cone_matrix(&involved));
        if kernel.nrows() != 1 {
            return Err(Error::InvalidFan(format!("wall {facet:?} is not simplicial")));
        }
        let mut coeffs = kernel.row(0).to_vec();
        if coeffs[0].is_negative() {
            coeffs.iter_mut().for_each(|c| *c = -&*c);
        }
        if !(coeffs[0].is_positive() && coeffs[1].is_positive()) {
            return Err(Error::InvalidFan(format!("cones on both sides of wall {facet:?} overlap")));
        }
        let mut relation = vec![BigInt::zero(); m];
        for (&i, c) in involved.iter().zip(coeffs) {
            relation[i] += c;
        }
        out.push(Wall { ray_indices: facet, left, right, relation });
    }
    debug_assert!(out.iter().all(|w| is_relation(&fan.ray_matrix(), &w.relation)));
    Ok(out)
}

pub(crate) fn is_relation(rays: &IntMatrix, c: &[BigInt]) -> bool {
    rays.left_apply(c).iter().all(Zero::is_zero)
}
