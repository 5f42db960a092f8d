//! Simplicial fans in `N = Z^n`.
//!
//! A [`Fan`] is an ordered list of primitive rays together with its maximal
//! cones, each given as a sorted list of ray indices. Every cone is simplicial,
//! so the faces of a maximal cone are exactly the subsets of its index list.

mod json;
mod quotient;
mod subdivision;
mod walls;

pub use quotient::{project_fan, star_quotient_fan, OverlapCertificate, Projection};
pub use subdivision::star_subdivision;
pub use walls::{scaled_walls, walls, Wall};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::cone::RationalCone;
use crate::error::{Error, Result};
use crate::linalg::{smith_normal_form, solve_combination, to_rational, IntMatrix, LatticeVector, RatVector};

/// Sorted ray indices of a cone. The empty list is the zero cone.
pub type ConeIndices = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fan {
    dim: usize,
    rays: Vec<LatticeVector>,
    max_cones: Vec<ConeIndices>,
}

/// One way a fan can fail its invariants.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Violation {
    ZeroRay { ray: usize },
    NonPrimitiveRay { ray: usize },
    DuplicateRay { first: usize, second: usize },
    RepeatedIndex { cone: usize },
    NonSimplicial { cone: usize },
    /// Cone `cone` is a proper face of cone `container`.
    NotMaximal { cone: usize, container: usize },
    /// The two cones do not meet in a common face.
    BadIntersection { first: usize, second: usize },
    OrphanRay { ray: usize },
}

impl Violation {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::ZeroRay { .. } => "zero-ray",
            Self::NonPrimitiveRay { .. } => "non-primitive-ray",
            Self::DuplicateRay { .. } => "duplicate-ray",
            Self::RepeatedIndex { .. } => "repeated-index",
            Self::NonSimplicial { .. } => "non-simplicial-cone",
            Self::NotMaximal { .. } => "not-maximal",
            Self::BadIntersection { .. } => "bad-intersection",
            Self::OrphanRay { .. } => "orphan-ray",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::ZeroRay { ray } => write!(f, "ray {ray} is zero"),
            Self::NonPrimitiveRay { ray } => write!(f, "ray {ray} is not primitive"),
            Self::DuplicateRay { first, second } => write!(f, "rays {first} and {second} coincide"),
            Self::RepeatedIndex { cone } => write!(f, "cone {cone} repeats a ray index"),
            Self::NonSimplicial { cone } => write!(f, "cone {cone} is not simplicial"),
            Self::NotMaximal { cone, container } => write!(f, "cone {cone} is a face of cone {container}"),
            Self::BadIntersection { first, second } => {
                write!(f, "cones {first} and {second} do not intersect in a common face")
            }
            Self::OrphanRay { ray } => write!(f, "ray {ray} lies in no maximal cone"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl Fan {
    /// Builds a fan, checking only shapes (ray lengths, index ranges). Cone
    /// index lists are sorted. Use [`Fan::validate`] for the geometric invariants.
    pub fn new(dim: usize, rays: Vec<LatticeVector>, max_cones: Vec<ConeIndices>) -> Result<Self> {
        for (i, r) in rays.iter().enumerate() {
            if r.dim() != dim {
                return Err(Error::DimensionMismatch { context: format!("ray {i}"), expected: dim, found: r.dim() });
            }
        }
        let mut cones = Vec::with_capacity(max_cones.len());
        for mut c in max_cones {
            if let Some(&index) = c.iter().find(|&&i| i >= rays.len()) {
                return Err(Error::RayIndexOutOfRange { index, rays: rays.len() });
            }
            c.sort_unstable();
            cones.push(c);
        }
        Ok(Self { dim, rays, max_cones: cones })
    }

    pub fn from_i64(dim: usize, rays: &[&[i64]], max_cones: &[&[usize]]) -> Result<Self> {
        Self::new(
            dim,
            rays.iter().map(|r| LatticeVector::from_i64(r)).collect(),
            max_cones.iter().map(|c| c.to_vec()).collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn ray(&self, i: usize) -> &LatticeVector {
        &self.rays[i]
    }

    pub fn num_rays(&self) -> usize {
        self.rays.len()
    }

    pub fn max_cones(&self) -> &[ConeIndices] {
        &self.max_cones
    }

    pub fn ray_index(&self, v: &LatticeVector) -> Option<usize> {
        self.rays.iter().position(|r| r == v)
    }

    /// The `m x n` matrix whose rows are the rays.
    pub fn ray_matrix(&self) -> IntMatrix {
        IntMatrix::from_lattice_vectors(self.dim, &self.rays).expect("ray lengths checked at construction")
    }

    /// Rows are the generators of the given cone.
    pub fn cone_matrix(&self, cone: &[usize]) -> IntMatrix {
        let rows = cone.iter().map(|&i| self.rays[i].coords().to_vec()).collect();
        IntMatrix::from_rows(self.dim, rows).expect("ray lengths checked at construction")
    }

    pub fn cone_of(&self, cone: &[usize]) -> RationalCone {
        let gens: Vec<LatticeVector> = cone.iter().map(|&i| self.rays[i].clone()).collect();
        RationalCone::from_lattice_generators(self.dim, &gens)
    }

    /// Whether the sorted index set spans a cone of the fan.
    pub fn contains_cone(&self, cone: &[usize]) -> bool {
        self.max_cones.iter().any(|m| is_subset(cone, m))
    }

    /// Every cone of the fan (faces of maximal cones), sorted.
    pub fn cones(&self) -> BTreeSet<ConeIndices> {
        let mut out = BTreeSet::new();
        for m in &self.max_cones {
            for k in 0..=m.len() {
                out.extend(m.iter().copied().combinations(k));
            }
        }
        out
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let mut bad_ray = vec![false; self.rays.len()];
        for (i, r) in self.rays.iter().enumerate() {
            if r.is_zero() {
                violations.push(Violation::ZeroRay { ray: i });
                bad_ray[i] = true;
            } else if !r.is_primitive() {
                violations.push(Violation::NonPrimitiveRay { ray: i });
                bad_ray[i] = true;
            }
        }
        for (i, j) in (0..self.rays.len()).tuple_combinations() {
            if self.rays[i] == self.rays[j] {
                violations.push(Violation::DuplicateRay { first: i, second: j });
                bad_ray[j] = true;
            }
        }

        let mut usable = vec![true; self.max_cones.len()];
        for (ci, c) in self.max_cones.iter().enumerate() {
            if c.windows(2).any(|w| w[0] == w[1]) {
                violations.push(Violation::RepeatedIndex { cone: ci });
                usable[ci] = false;
            } else if self.cone_matrix(c).rank() != c.len() {
                violations.push(Violation::NonSimplicial { cone: ci });
                usable[ci] = false;
            }
            if c.iter().any(|&i| bad_ray[i]) {
                usable[ci] = false;
            }
        }

        let geometric: Vec<Option<RationalCone>> = self
            .max_cones
            .iter()
            .zip(&usable)
            .map(|(c, &ok)| ok.then(|| self.cone_of(c)))
            .collect();
        for (i, j) in (0..self.max_cones.len()).tuple_combinations() {
            let (a, b) = (&self.max_cones[i], &self.max_cones[j]);
            if a == b {
                violations.push(Violation::BadIntersection { first: i, second: j });
                continue;
            }
            if is_subset(a, b) {
                violations.push(Violation::NotMaximal { cone: i, container: j });
                continue;
            }
            if is_subset(b, a) {
                violations.push(Violation::NotMaximal { cone: j, container: i });
                continue;
            }
            let (Some(ca), Some(cb)) = (&geometric[i], &geometric[j]) else { continue };
            let common: Vec<usize> = a.iter().copied().filter(|x| b.contains(x)).collect();
            if !meet_in_common_face(ca, cb, &self.cone_of(&common)) {
                violations.push(Violation::BadIntersection { first: i, second: j });
            }
        }

        let mut used = vec![false; self.rays.len()];
        for c in &self.max_cones {
            for &i in c {
                used[i] = true;
            }
        }
        violations.extend(used.iter().enumerate().filter(|(_, &u)| !u).map(|(ray, _)| Violation::OrphanRay { ray }));
        violations.sort();
        ValidationReport { violations }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }

    pub fn is_simplicial(&self) -> bool {
        self.max_cones.iter().all(|c| self.cone_matrix(c).rank() == c.len())
    }

    /// Pure `n`-dimensional fan in which every facet of every maximal cone
    /// lies in exactly two maximal cones. Assumes a valid fan.
    pub fn is_complete(&self) -> bool {
        if self.max_cones.is_empty() || self.max_cones.iter().any(|c| c.len() != self.dim) {
            return false;
        }
        self.facet_incidence().values().all(|cones| cones.len() == 2)
    }

    /// Every maximal cone's generators extend to a lattice basis.
    pub fn is_smooth(&self) -> bool {
        self.max_cones.iter().all(|c| {
            let d = smith_normal_form(&self.cone_matrix(c));
            d.len() == c.len() && d.iter().all(|x| x == &num_bigint::BigInt::from(1))
        })
    }

    /// Codimension-one faces of maximal cones, with the maximal cones containing them.
    pub(crate) fn facet_incidence(&self) -> BTreeMap<ConeIndices, Vec<usize>> {
        let mut map: BTreeMap<ConeIndices, Vec<usize>> = BTreeMap::new();
        for (ci, c) in self.max_cones.iter().enumerate() {
            for skip in 0..c.len() {
                let facet: ConeIndices =
                    c.iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, &i)| i).collect();
                map.entry(facet).or_default().push(ci);
            }
        }
        map
    }

    /// The cone whose relative interior contains `x` (the zero cone for `x = 0`),
    /// or `None` if `x` lies outside the support.
    pub fn minimal_cone_containing(&self, x: &RatVector) -> Option<ConeIndices> {
        if x.is_zero() {
            return Some(Vec::new());
        }
        for c in &self.max_cones {
            let gens: Vec<Vec<BigRational>> = c.iter().map(|&i| to_rational(&self.rays[i])).collect();
            let Some(coeffs) = solve_combination(&gens, x) else { continue };
            if coeffs.iter().any(Signed::is_negative) {
                continue;
            }
            return Some(c.iter().zip(&coeffs).filter(|(_, a)| !a.is_zero()).map(|(&i, _)| i).collect());
        }
        None
    }

    pub fn minimal_cone_containing_point(&self, x: &LatticeVector) -> Option<ConeIndices> {
        self.minimal_cone_containing(&x.to_rational())
    }

    /// A lattice automorphism `A` (acting on column vectors) carrying the rays
    /// and maximal cones of `self` onto those of `other`, if one exists.
    /// Requires a full-dimensional maximal cone in `self`.
    pub fn find_isomorphism(&self, other: &Fan) -> Option<IntMatrix> {
        if self.dim != other.dim
            || self.rays.len() != other.rays.len()
            || self.max_cones.len() != other.max_cones.len()
        {
            return None;
        }
        let n = self.dim;
        let base = self.max_cones.iter().find(|c| c.len() == n)?;
        let source = self.cone_matrix(base).transpose();
        let target_cones: BTreeSet<BTreeSet<&LatticeVector>> = other
            .max_cones
            .iter()
            .map(|c| c.iter().map(|&i| &other.rays[i]).collect())
            .collect();
        let other_rays: BTreeSet<&LatticeVector> = other.rays.iter().collect();
        for tc in other.max_cones.iter().filter(|c| c.len() == n) {
            for perm in tc.iter().permutations(n) {
                let target = IntMatrix::from_rows(n, perm.iter().map(|&&i| other.rays[i].coords().to_vec()).collect())
                    .expect("ray lengths")
                    .transpose();
                let Some(a) = integral_solution(&source, &target) else { continue };
                if !a.determinant().is_ok_and(|d| d.abs() == num_bigint::BigInt::from(1)) {
                    continue;
                }
                let images: Vec<LatticeVector> = self.rays.iter().map(|r| a.apply(r)).collect();
                if !images.iter().all(|v| other_rays.contains(v)) {
                    continue;
                }
                let mapped: BTreeSet<BTreeSet<&LatticeVector>> =
                    self.max_cones.iter().map(|c| c.iter().map(|&i| &images[i]).collect()).collect();
                if mapped == target_cones {
                    return Some(a);
                }
            }
        }
        None
    }
}

/// Integer `A` with `A * source = target` for an invertible square `source`.
fn integral_solution(source: &IntMatrix, target: &IntMatrix) -> Option<IntMatrix> {
    let n = source.nrows();
    // rows of A: a_i * source = target_i, i.e. source^T a_i^T = target_i^T
    let cols: Vec<Vec<BigRational>> = (0..n).map(|i| to_rational(source.row(i))).collect();
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let rhs = to_rational(target.row(i));
        let a = solve_combination(&cols, &rhs)?;
        if a.iter().any(|x| !x.is_integer()) {
            return None;
        }
        rows.push(a.iter().map(|x| x.to_integer()).collect());
    }
    IntMatrix::from_rows(n, rows).ok()
}

fn meet_in_common_face(a: &RationalCone, b: &RationalCone, common: &RationalCone) -> bool {
    a.intersect(b) == *common
}

pub(crate) fn is_subset(small: &[usize], big: &[usize]) -> bool {
    small.iter().all(|x| big.binary_search(x).is_ok())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3() -> Fan {
        Fan::from_i64(
            3,
            &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[-1, -1, -1]],
            &[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]],
        )
        .unwrap()
    }

    #[test]
    fn p3_is_valid_complete_smooth() {
        let f = p3();
        assert!(f.validate().is_valid());
        assert!(f.is_complete());
        assert!(f.is_smooth());
    }

    #[test]
    fn duplicated_cone_is_bad_intersection() {
        let f = Fan::from_i64(
            3,
            &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[-1, -1, -1]],
            &[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3], &[0, 1, 3]],
        )
        .unwrap();
        let report = f.validate();
        assert!(!report.is_valid());
        assert!(report.violations.contains(&Violation::BadIntersection { first: 1, second: 4 }));
    }

    #[test]
    fn overlapping_cones_detected() {
        // <e1, e2> and <e1 + e2, -e1 + e2> overlap in an open region
        let f = Fan::from_i64(2, &[&[1, 0], &[0, 1], &[1, 1], &[-1, 1]], &[&[0, 1], &[2, 3]]).unwrap();
        assert_eq!(f.validate().violations, vec![Violation::BadIntersection { first: 0, second: 1 }]);
    }

    #[test]
    fn structural_violations() {
        let f = Fan::from_i64(2, &[&[2, 0], &[0, 1], &[0, 1], &[1, 1], &[-1, -1]], &[&[0, 1], &[1, 3]]).unwrap();
        let v = f.validate().violations;
        assert!(v.contains(&Violation::NonPrimitiveRay { ray: 0 }));
        assert!(v.contains(&Violation::DuplicateRay { first: 1, second: 2 }));
        assert!(v.contains(&Violation::OrphanRay { ray: 4 }));
        let g = Fan::from_i64(2, &[&[1, 0], &[2, 1], &[1, 1]], &[&[0, 1, 2]]).unwrap();
        assert!(g.validate().violations.contains(&Violation::NonSimplicial { cone: 0 }));
    }

    #[test]
    fn orthant_is_incomplete() {
        let f = Fan::from_i64(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]], &[&[0, 1, 2]]).unwrap();
        assert!(f.is_valid());
        assert!(!f.is_complete());
    }

    #[test]
    fn singular_cone_is_not_smooth() {
        let f = Fan::from_i64(2, &[&[1, 0], &[1, 2]], &[&[0, 1]]).unwrap();
        assert!(f.is_valid());
        assert!(!f.is_smooth());
    }

    #[test]
    fn minimal_cone_examples() {
        let f = p3();
        assert_eq!(f.minimal_cone_containing_point(&LatticeVector::zero(3)), Some(vec![]));
        assert_eq!(f.minimal_cone_containing_point(&LatticeVector::from_i64(&[1, 1, 0])), Some(vec![0, 1]));
        assert_eq!(f.minimal_cone_containing_point(&LatticeVector::from_i64(&[-2, -2, -2])), Some(vec![3]));
        assert_eq!(f.minimal_cone_containing_point(&LatticeVector::from_i64(&[0, -1, -1])), Some(vec![0, 3]));
        let orthant = Fan::from_i64(2, &[&[1, 0], &[0, 1]], &[&[0, 1]]).unwrap();
        assert_eq!(orthant.minimal_cone_containing_point(&LatticeVector::from_i64(&[-1, 0])), None);
    }

    #[test]
    fn isomorphism_of_relabelled_fan() {
        let f = p3();
        let g = Fan::from_i64(
            3,
            &[&[0, 0, 1], &[1, 1, -1], &[0, -1, 0], &[-1, 0, 0]],
            &[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]],
        )
        .unwrap();
        assert!(g.is_valid());
        let a = f.find_isomorphism(&g).unwrap();
        assert!(a.determinant().unwrap().abs() == num_bigint::BigInt::from(1));
        let square = Fan::from_i64(2, &[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]], &[&[0, 1], &[1, 2], &[2, 3], &[0, 3]])
            .unwrap();
        let h1 = Fan::from_i64(2, &[&[1, 0], &[0, 1], &[-1, 1], &[0, -1]], &[&[0, 1], &[1, 2], &[2, 3], &[0, 3]])
            .unwrap();
        assert!(square.find_isomorphism(&h1).is_none());
    }
}
