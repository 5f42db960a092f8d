//! Primitive collections, foci and primitive relations, and the
//! general/special classification of fans.
//!
//! A fan is *special* when at most `n` of its rays (distinct) admit a relation
//! `Σ a_j v_j = 0` with every `a_j` a positive integer, and *general*
//! otherwise. Positive integer relations are exactly rescaled strictly
//! positive rational kernel vectors, which is what gets tested.

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::cone::RationalCone;
use crate::divisor::{DivisorClassSpace, DivisorCones};
use crate::error::{Error, Result};
use crate::fan::{ConeIndices, Fan};
use crate::linalg::{solve_combination, strict_positive_kernel_exists, to_rational, LatticeVector, RatVector};

/// A minimal set of rays that spans no cone of the fan.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimitiveCollection(pub ConeIndices);

impl PrimitiveCollection {
    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `S(P)`, the sum of the collection's generators.
    pub fn ray_sum(&self, fan: &Fan) -> LatticeVector {
        self.0.iter().fold(LatticeVector::zero(fan.dim()), |acc, &i| acc.add(fan.ray(i)))
    }
}

/// `Σ_{i∈P} v_i - Σ_j a_j w_j = 0` over the focus generators `w_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimitiveRelation {
    pub collection: PrimitiveCollection,
    pub focus: ConeIndices,
    /// `a_j`, aligned with `focus`.
    pub coefficients: Vec<BigInt>,
    /// Coefficients over all rays: `+1` on the collection, `-a_j` on the focus.
    pub relation: Vec<BigInt>,
}

/// The minimal non-faces of the fan's simplicial complex, in lexicographic order.
pub fn primitive_collections(fan: &Fan) -> Vec<PrimitiveCollection> {
    let m = fan.num_rays();
    let mut out = Vec::new();
    let mut stack: Vec<ConeIndices> = vec![Vec::new()];
    while let Some(face) = stack.pop() {
        let start = face.last().map_or(0, |&l| l + 1);
        // push in reverse so children pop in increasing order
        let mut children = Vec::new();
        for j in start..m {
            let mut s = face.clone();
            s.push(j);
            if fan.contains_cone(&s) {
                children.push(s);
            } else if (0..s.len()).all(|k| {
                let sub: ConeIndices = s.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, &x)| x).collect();
                fan.contains_cone(&sub)
            }) {
                out.push(PrimitiveCollection(s));
            }
        }
        stack.extend(children.into_iter().rev());
    }
    out.sort();
    out
}

fn check_collection(fan: &Fan, p: &PrimitiveCollection) -> Result<()> {
    let s = p.indices();
    let ok = !s.is_empty()
        && s.windows(2).all(|w| w[0] < w[1])
        && s.iter().all(|&i| i < fan.num_rays())
        && !fan.contains_cone(s)
        && (0..s.len()).all(|k| {
            let sub: ConeIndices = s.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, &x)| x).collect();
            fan.contains_cone(&sub)
        });
    if ok {
        Ok(())
    } else {
        Err(Error::NotPrimitiveCollection(format!("{s:?}")))
    }
}

/// The smallest cone containing `S(P)`.
pub fn focus(fan: &Fan, p: &PrimitiveCollection) -> Result<ConeIndices> {
    check_collection(fan, p)?;
    let s = p.ray_sum(fan);
    fan.minimal_cone_containing_point(&s).ok_or_else(|| Error::NotInSupport(s.to_string()))
}

pub fn primitive_relation(fan: &Fan, p: &PrimitiveCollection) -> Result<PrimitiveRelation> {
    let focus = focus(fan, p)?;
    let s = p.ray_sum(fan);
    let gens: Vec<Vec<BigRational>> = focus.iter().map(|&i| to_rational(fan.ray(i))).collect();
    let coeffs = solve_combination(&gens, &to_rational(&s))
        .ok_or_else(|| Error::Internal("focus does not contain the ray sum".into()))?;
    if coeffs.iter().any(|a| !a.is_integer() || !a.is_positive()) {
        return Err(Error::NotSmooth(format!(
            "primitive relation of {:?} has non-integral coefficients",
            p.indices()
        )));
    }
    let coefficients: Vec<BigInt> = coeffs.iter().map(BigRational::to_integer).collect();
    let mut relation = vec![BigInt::zero(); fan.num_rays()];
    for &i in p.indices() {
        relation[i] += 1;
    }
    for (&j, a) in focus.iter().zip(&coefficients) {
        relation[j] -= a;
    }
    Ok(PrimitiveRelation { collection: p.clone(), focus, coefficients, relation })
}

pub fn primitive_relations(fan: &Fan) -> Result<Vec<PrimitiveRelation>> {
    primitive_collections(fan).iter().map(|p| primitive_relation(fan, p)).collect()
}

/// Cone in curve-class coordinates generated by all primitive relations.
/// For smooth projective fans this is the Mori cone.
pub fn mori_cone_via_relations(fan: &Fan) -> Result<RationalCone> {
    let space = DivisorClassSpace::new(fan)?;
    let coords = primitive_relations(fan)?
        .iter()
        .map(|r| space.curve_class(&r.relation).map(|c| c.coordinates))
        .collect::<Result<Vec<RatVector>>>()?;
    Ok(RationalCone::from_generators(space.picard_rank(), &coords))
}

/// A primitive collection whose generators sum to zero.
///
/// Smooth projective fans always have one, so not finding one on such a fan
/// is reported as an error rather than `None`.
pub fn zero_focus_collection(fan: &Fan) -> Result<Option<PrimitiveCollection>> {
    let found = primitive_collections(fan).into_iter().find(|p| p.ray_sum(fan).is_zero());
    if found.is_none() && fan.is_smooth() && DivisorCones::new(fan)?.is_projective() {
        return Err(Error::Internal("smooth projective fan without a zero-focus primitive collection".into()));
    }
    Ok(found)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generality {
    General,
    /// `Σ coefficients[j] * v_{rays[j]} = 0` with positive integer coefficients.
    Special { rays: Vec<usize>, coefficients: Vec<BigInt> },
}

impl Generality {
    pub fn is_general(&self) -> bool {
        matches!(self, Self::General)
    }
}

/// Classifies the fan, scanning subsets by size and then lexicographically.
pub fn classify(fan: &Fan) -> Generality {
    let m = fan.num_rays();
    for k in 1..=fan.dim().min(m) {
        for subset in (0..m).combinations(k) {
            if let Some(c) = strict_positive_kernel_exists(&fan.cone_matrix(&subset)) {
                let coefficients = c.iter().map(BigRational::to_integer).collect();
                return Generality::Special { rays: subset, coefficients };
            }
        }
    }
    Generality::General
}

pub fn is_general(fan: &Fan) -> bool {
    classify(fan).is_general()
}
