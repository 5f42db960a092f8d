//! Divisor and curve classes of a complete simplicial toric variety, and the
//! cones living in them.
//!
//! With `R` the `m x n` ray matrix, divisor classes are `Q^m / im(R)` and
//! curve classes are the relations `{c : c · R = 0}`. We fix the canonical
//! (Hermite normal form) lattice basis `Q` of the relation lattice, a
//! `ρ x m` matrix with `ρ = m - n`. Then
//!
//! * a divisor `Σ d_i D_i` has coordinates `Q d ∈ Q^ρ` (kernel exactly `im R`),
//! * a relation `c` has coordinates `t` with `c = t Q`,
//!
//! and the intersection pairing `d · c` becomes the standard dot product of
//! the coordinates. All cones below use these coordinates.
//!
//! Why the central predicate only needs the extremal rays of the nef cone:
//! suppose every extremal ray of Nef lies in the interior of PE. A nonzero
//! nef class is a nonnegative combination of extremal rays with at least one
//! positive coefficient; adding a class of PE to an interior point of PE stays
//! interior, so the whole combination is interior, i.e. big. Hence
//! `∂Nef ∩ ∂PE = {0}` exactly when no extremal ray of Nef is on `∂PE`, and a
//! failing ray is itself a nontrivial nef class that is not big.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::cone::{Membership, RationalCone};
use crate::error::{Error, Result};
use crate::fan::{scaled_walls, Fan, Wall};
use crate::linalg::{integer_kernel, solve_combination, to_rational, IntMatrix, LatticeVector, RatVector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorClassSpace {
    dim: usize,
    num_rays: usize,
    /// `ρ x m`; rows are the canonical basis of the relation lattice.
    projection: IntMatrix,
}

/// A divisor `Σ d_i D_i` with its coordinates in `N^1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorClass {
    pub coefficients: RatVector,
    pub image: RatVector,
}

/// A curve class given by a relation among the rays.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveClass {
    pub relation: RatVector,
    pub coordinates: RatVector,
}

impl DivisorClassSpace {
    pub fn new(fan: &Fan) -> Result<Self> {
        if !fan.is_complete() {
            return Err(Error::Incomplete);
        }
        if !fan.is_simplicial() {
            return Err(Error::InvalidFan("fan is not simplicial".into()));
        }
        let projection = integer_kernel(&fan.ray_matrix());
        debug_assert_eq!(projection.nrows(), fan.num_rays() - fan.dim());
        Ok(Self { dim: fan.dim(), num_rays: fan.num_rays(), projection })
    }

    pub fn picard_rank(&self) -> usize {
        self.projection.nrows()
    }

    pub fn num_rays(&self) -> usize {
        self.num_rays
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn projection(&self) -> &IntMatrix {
        &self.projection
    }

    pub fn class_of(&self, coefficients: &[BigInt]) -> Result<DivisorClass> {
        self.class_of_rational(&RatVector::new(to_rational(coefficients)))
    }

    pub fn class_of_rational(&self, coefficients: &RatVector) -> Result<DivisorClass> {
        self.check_len(coefficients.dim(), "divisor coefficients")?;
        let image = self
            .projection
            .rows()
            .map(|q| to_rational(q).iter().zip(coefficients.iter()).fold(BigRational::zero(), |acc, (a, b)| acc + a * b))
            .collect();
        Ok(DivisorClass { coefficients: coefficients.clone(), image: RatVector::new(image) })
    }

    /// Class of the prime invariant divisor `D_i`.
    pub fn prime_divisor(&self, i: usize) -> DivisorClass {
        let mut d = vec![BigInt::zero(); self.num_rays];
        d[i] = BigInt::from(1);
        self.class_of(&d).expect("length matches")
    }

    /// Coordinates of the relation `c` (requires `c · R = 0`).
    pub fn curve_class(&self, relation: &[BigInt]) -> Result<CurveClass> {
        self.check_len(relation.len(), "relation")?;
        let rows: Vec<Vec<BigRational>> = self.projection.rows().map(to_rational).collect();
        let target = to_rational(relation);
        let t = solve_combination(&rows, &target)
            .ok_or_else(|| Error::Internal("vector is not a relation among the rays".into()))?;
        Ok(CurveClass { relation: RatVector::new(target), coordinates: RatVector::new(t) })
    }

    /// A divisor with the given class coordinates, scaled to coprime integers
    /// (a positive multiple of the requested class).
    pub fn representative(&self, image: &RatVector) -> Result<DivisorClass> {
        self.check_len_rank(image.dim())?;
        let columns: Vec<Vec<BigRational>> = (0..self.num_rays).map(|j| to_rational(&self.projection.column(j))).collect();
        let d = solve_combination(&columns, image).ok_or_else(|| Error::Internal("projection is not surjective".into()))?;
        match RatVector::new(d).primitive_integer() {
            Some(ints) => self.class_of(ints.coords()),
            None => self.class_of_rational(&RatVector::zero(self.num_rays)),
        }
    }

    fn check_len(&self, found: usize, context: &str) -> Result<()> {
        if found != self.num_rays {
            return Err(Error::DimensionMismatch { context: context.into(), expected: self.num_rays, found });
        }
        Ok(())
    }

    fn check_len_rank(&self, found: usize) -> Result<()> {
        if found != self.picard_rank() {
            return Err(Error::DimensionMismatch { context: "class coordinates".into(), expected: self.picard_rank(), found });
        }
        Ok(())
    }
}

/// The class space together with the Mori, nef and pseudo-effective cones.
#[derive(Clone, Debug)]
pub struct DivisorCones {
    pub space: DivisorClassSpace,
    pub walls: Vec<Wall>,
    /// Curve classes of the walls, in wall order.
    pub wall_curves: Vec<CurveClass>,
    pub mori: RationalCone,
    pub nef: RationalCone,
    pub pseudo_effective: RationalCone,
}

impl DivisorCones {
    /// For singular simplicial fans the wall classes are only known up to
    /// positive scaling, which every cone here is insensitive to.
    pub fn new(fan: &Fan) -> Result<Self> {
        let space = DivisorClassSpace::new(fan)?;
        let walls = scaled_walls(fan)?;
        let wall_curves = walls.iter().map(|w| space.curve_class(&w.relation)).collect::<Result<Vec<_>>>()?;
        let rho = space.picard_rank();
        let coords: Vec<RatVector> = wall_curves.iter().map(|c| c.coordinates.clone()).collect();
        let mori = RationalCone::from_generators(rho, &coords);
        let nef = RationalCone::from_inequalities(rho, &coords);
        let primes: Vec<RatVector> = (0..space.num_rays()).map(|i| space.prime_divisor(i).image).collect();
        let pseudo_effective = RationalCone::from_generators(rho, &primes);
        Ok(Self { space, walls, wall_curves, mori, nef, pseudo_effective })
    }

    pub fn picard_rank(&self) -> usize {
        self.space.picard_rank()
    }

    pub fn is_big(&self, d: &DivisorClass) -> bool {
        self.pseudo_effective.membership(&d.image) == Membership::Interior
    }

    pub fn is_nef(&self, d: &DivisorClass) -> bool {
        self.nef.contains(&d.image)
    }

    /// Nef cone of full dimension, i.e. some class is ample.
    pub fn is_projective(&self) -> bool {
        self.nef.dim() == self.picard_rank()
    }

    /// Extremal nef classes, each with a verdict: `true` when big.
    pub fn nef_ray_bigness(&self) -> Vec<(LatticeVector, bool)> {
        self.nef
            .generators()
            .into_iter()
            .map(|r| {
                let big = self.pseudo_effective.membership(&r.to_rational()) == Membership::Interior;
                (r, big)
            })
            .collect()
    }

    /// `∂Nef ∩ ∂PE = {0}`: every nontrivial nef class is big.
    pub fn boundary_meets_only_at_zero(&self) -> bool {
        self.nef_ray_bigness().iter().all(|(_, big)| *big)
    }

    pub fn nef_equals_pe(&self) -> bool {
        self.nef == self.pseudo_effective
    }

    /// A nontrivial nef class that is not big, taken among the extremal rays
    /// of the nef cone.
    pub fn nonbig_nef_witness(&self) -> Option<DivisorClass> {
        let (ray, _) = self.nef_ray_bigness().into_iter().find(|(_, big)| !big)?;
        Some(self.space.representative(&ray.to_rational()).expect("ray has class-space length"))
    }
}

pub fn class_space(fan: &Fan) -> Result<DivisorClassSpace> {
    DivisorClassSpace::new(fan)
}

pub fn mori_cone(fan: &Fan) -> Result<RationalCone> {
    Ok(DivisorCones::new(fan)?.mori)
}

pub fn nef_cone(fan: &Fan) -> Result<RationalCone> {
    Ok(DivisorCones::new(fan)?.nef)
}

pub fn pseudo_effective_cone(fan: &Fan) -> Result<RationalCone> {
    Ok(DivisorCones::new(fan)?.pseudo_effective)
}

pub fn is_big(fan: &Fan, d: &DivisorClass) -> Result<bool> {
    Ok(DivisorCones::new(fan)?.is_big(d))
}

pub fn is_projective(fan: &Fan) -> Result<bool> {
    Ok(DivisorCones::new(fan)?.is_projective())
}

pub fn boundary_meets_only_at_zero(fan: &Fan) -> Result<bool> {
    Ok(DivisorCones::new(fan)?.boundary_meets_only_at_zero())
}

pub fn nef_equals_pe(fan: &Fan) -> Result<bool> {
    Ok(DivisorCones::new(fan)?.nef_equals_pe())
}

pub fn has_nontrivial_nonbig_nef(fan: &Fan) -> Result<Option<DivisorClass>> {
    Ok(DivisorCones::new(fan)?.nonbig_nef_witness())
}
