use std::collections::BTreeSet;

use itertools::Itertools;

use crate::cone::RationalCone;
use crate::error::{Error, Result};
use crate::linalg::{all_unit, integer_kernel, primitive_part, smith_normal_form, IntMatrix, LatticeVector};

use super::{is_subset, ConeIndices, Fan};

/// Fan of the invariant subvariety `V(σ)`: the star of `σ` projected to
/// `N / (N ∩ span σ)`, with rays re-primitivized.
///
/// Quotient coordinates come from the canonical lattice basis of
/// `(span σ)^⊥ ∩ Z^n`, which maps `N` onto `Z^{n-k}`.
pub fn star_quotient_fan(fan: &Fan, sigma: &[usize]) -> Result<Fan> {
    let mut sigma: ConeIndices = sigma.to_vec();
    sigma.sort_unstable();
    if sigma.windows(2).any(|w| w[0] == w[1]) || !fan.contains_cone(&sigma) {
        return Err(Error::NotACone(format!("{sigma:?}")));
    }
    if sigma.is_empty() {
        return Ok(fan.clone());
    }
    let n = fan.dim();
    let projection = integer_kernel(&fan.cone_matrix(&sigma).transpose());
    debug_assert_eq!(projection.nrows(), n - sigma.len());

    let star: Vec<&ConeIndices> = fan.max_cones().iter().filter(|c| is_subset(&sigma, c)).collect();
    let kept: Vec<usize> = star
        .iter()
        .flat_map(|c| c.iter().copied())
        .filter(|i| !sigma.contains(i))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let rays = kept
        .iter()
        .map(|&i| primitive_part(&projection.apply(fan.ray(i))))
        .collect::<Result<Vec<LatticeVector>>>()?;
    let cones = star
        .iter()
        .map(|c| c.iter().filter(|i| !sigma.contains(i)).map(|i| kept.binary_search(i).expect("kept ray")).collect())
        .collect();
    Fan::new(n - sigma.len(), rays, cones)
}

/// Two maximal cones whose images under a lattice map do not meet in a common face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OverlapCertificate {
    pub first: usize,
    pub second: usize,
    pub first_image: RationalCone,
    pub second_image: RationalCone,
    /// Dimension of the intersection of the two images.
    pub intersection_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Projection {
    Quotient(Fan),
    Overlap(OverlapCertificate),
}

/// Pushes every maximal cone of `fan` forward along the surjection `map`
/// (a `d x n` integer matrix). Returns the image fan when the images fit
/// together as a simplicial fan, else a pair of overlapping images. Pairs
/// with full-dimensional overlap are reported in preference to others.
pub fn project_fan(fan: &Fan, map: &IntMatrix) -> Result<Projection> {
    if map.ncols() != fan.dim() {
        return Err(Error::DimensionMismatch { context: "projection matrix".into(), expected: fan.dim(), found: map.ncols() });
    }
    let d = map.nrows();
    if !all_unit(&smith_normal_form(map), d) {
        return Err(Error::NotSurjective);
    }
    let images: Vec<RationalCone> = fan
        .max_cones()
        .iter()
        .map(|c| {
            let gens: Vec<LatticeVector> = c.iter().map(|&i| map.apply(fan.ray(i))).collect();
            RationalCone::from_lattice_generators(d, &gens)
        })
        .collect();

    let mut partial: Option<OverlapCertificate> = None;
    for (i, j) in (0..images.len()).tuple_combinations() {
        let (a, b) = (&images[i], &images[j]);
        if a == b {
            continue;
        }
        let meet = a.intersect(b);
        if meet.is_face_of(a) && meet.is_face_of(b) {
            continue;
        }
        let cert = OverlapCertificate {
            first: i,
            second: j,
            first_image: a.clone(),
            second_image: b.clone(),
            intersection_dim: meet.dim(),
        };
        if meet.dim() == d {
            return Ok(Projection::Overlap(cert));
        }
        partial.get_or_insert(cert);
    }
    if let Some(cert) = partial {
        return Ok(Projection::Overlap(cert));
    }

    let distinct: Vec<&RationalCone> = images.iter().unique().collect();
    let maximal: Vec<&RationalCone> = distinct
        .iter()
        .copied()
        .filter(|c| !distinct.iter().any(|o| o != c && o.contains_cone(c)))
        .collect();
    if let Some(bad) = maximal.iter().find(|c| !c.is_pointed() || c.extremal_rays().len() != c.dim()) {
        return Err(Error::InvalidFan(format!(
            "image cone with rays [{}] is not strongly convex and simplicial",
            bad.generators().iter().join("; ")
        )));
    }
    let rays: Vec<LatticeVector> =
        maximal.iter().flat_map(|c| c.extremal_rays().iter().cloned()).collect::<BTreeSet<_>>().into_iter().collect();
    let mut cones: Vec<ConeIndices> = maximal
        .iter()
        .map(|c| c.extremal_rays().iter().map(|r| rays.binary_search(r).expect("collected ray")).sorted().collect())
        .collect();
    cones.sort();
    Ok(Projection::Quotient(Fan::new(d, rays, cones)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p1xp1() -> Fan {
        Fan::from_i64(2, &[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]], &[&[0, 2], &[0, 3], &[1, 2], &[1, 3]]).unwrap()
    }

    #[test]
    fn zero_cone_quotient_is_identity() {
        let f = p1xp1();
        assert_eq!(star_quotient_fan(&f, &[]).unwrap(), f);
    }

    #[test]
    fn quotient_by_ray_of_p1xp1() {
        let q = star_quotient_fan(&p1xp1(), &[0]).unwrap();
        assert_eq!(q.dim(), 1);
        assert_eq!(q.num_rays(), 2);
        assert!(q.is_valid() && q.is_complete() && q.is_smooth());
        let p1 = Fan::from_i64(1, &[&[1], &[-1]], &[&[0], &[1]]).unwrap();
        assert!(q.find_isomorphism(&p1).is_some());
    }

    #[test]
    fn non_cone_rejected() {
        assert!(matches!(star_quotient_fan(&p1xp1(), &[0, 1]), Err(Error::NotACone(_))));
    }

    #[test]
    fn projection_to_a_factor() {
        let map = IntMatrix::from_i64(&[&[1, 0]]);
        let Projection::Quotient(q) = project_fan(&p1xp1(), &map).unwrap() else { panic!("expected quotient fan") };
        assert_eq!(q, Fan::from_i64(1, &[&[-1], &[1]], &[&[0], &[1]]).unwrap());
    }

    #[test]
    fn non_surjective_map_rejected() {
        let map = IntMatrix::from_i64(&[&[2, 0]]);
        assert_eq!(project_fan(&p1xp1(), &map), Err(Error::NotSurjective));
    }

    #[test]
    fn diagonal_projection_overlaps() {
        // (x, y) -> x + y sends <e1, e2> onto [0, inf) and <e1, -e2> onto all of R
        let map = IntMatrix::from_i64(&[&[1, 1]]);
        let Projection::Overlap(cert) = project_fan(&p1xp1(), &map).unwrap() else { panic!("expected overlap") };
        assert_eq!(cert.intersection_dim, 1);
        assert_ne!(cert.first_image, cert.second_image);
    }
}
