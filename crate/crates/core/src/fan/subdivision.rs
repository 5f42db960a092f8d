use crate::error::{Error, Result};
use crate::linalg::LatticeVector;

use super::{is_subset, ConeIndices, Fan};

/// Star subdivision of `fan` at the primitive vector `w` (the toric blow-up).
///
/// `w` may lie in the relative interior of a cone of any dimension. Every
/// maximal cone containing that cone `σ` is replaced, in place, by the cones
/// `τ \ {i} ∪ {w}` for `i ∈ σ`; `w` becomes the last ray.
pub fn star_subdivision(fan: &Fan, w: &LatticeVector) -> Result<Fan> {
    if w.dim() != fan.dim() {
        return Err(Error::DimensionMismatch { context: "subdivision vector".into(), expected: fan.dim(), found: w.dim() });
    }
    if w.is_zero() {
        return Err(Error::ZeroVector);
    }
    if !w.is_primitive() {
        return Err(Error::NotPrimitive(w.to_string()));
    }
    if fan.ray_index(w).is_some() {
        return Err(Error::AlreadyRay(w.to_string()));
    }
    let sigma = fan.minimal_cone_containing_point(w).ok_or_else(|| Error::NotInSupport(w.to_string()))?;
    if sigma.len() < 2 {
        // a primitive vector on a ray is that ray
        return Err(Error::AlreadyRay(w.to_string()));
    }
    let new_index = fan.num_rays();
    let mut cones: Vec<ConeIndices> = Vec::with_capacity(fan.max_cones().len() + sigma.len());
    for tau in fan.max_cones() {
        if !is_subset(&sigma, tau) {
            cones.push(tau.clone());
            continue;
        }
        for drop in &sigma {
            let mut c: ConeIndices = tau.iter().copied().filter(|i| i != drop).collect();
            c.push(new_index);
            cones.push(c);
        }
    }
    let mut rays = fan.rays().to_vec();
    rays.push(w.clone());
    Fan::new(fan.dim(), rays, cones)
}
