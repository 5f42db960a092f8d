//! Rational polyhedral cones with both descriptions kept in canonical form.
//!
//! A cone `C` in `Q^d` is stored as
//!
//! * V-side: a basis of its lineality space plus its extremal rays taken
//!   modulo that space (each ray projected onto the orthogonal complement of
//!   the lineality space);
//! * H-side: a basis of the orthogonal complement of its linear span (the
//!   implicit equations) plus its facet inner normals taken modulo those
//!   equations (each normal projected into the span of `C`).
//!
//! Subspace bases are in reduced row echelon form, every vector is scaled to
//! coprime integers by a positive factor (subspace bases: leading entry
//! positive), and lists are sorted lexicographically. Two cones are equal iff
//! their canonical forms are equal, and `dual` is the swap of the two sides.
//!
//! Both sides are produced by the double description method with
//! lexicographic constraint order and an exact rank test for adjacency.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::linalg::{
    canonical_row_space, dot, project_out, rank_int, scale_to_primitive, to_rational, LatticeVector, RatVector,
};

/// Position of a point relative to a cone. Interior is taken relative to the
/// cone's linear span.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Membership {
    Outside,
    Boundary,
    Interior,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalCone {
    ambient_dim: usize,
    lineality: Vec<LatticeVector>,
    rays: Vec<LatticeVector>,
    equations: Vec<LatticeVector>,
    facets: Vec<LatticeVector>,
}

impl RationalCone {
    /// The conical hull of `generators`. Zero vectors are ignored; no
    /// generators gives the zero cone.
    pub fn from_generators(ambient_dim: usize, generators: &[RatVector]) -> Self {
        let gens: Vec<Vec<BigInt>> =
            generators.iter().filter_map(|g| g.primitive_integer()).map(LatticeVector::into_coords).collect();
        Self::from_integer_generators(ambient_dim, gens)
    }

    pub fn from_lattice_generators(ambient_dim: usize, generators: &[LatticeVector]) -> Self {
        Self::from_integer_generators(ambient_dim, generators.iter().map(|g| g.coords().to_vec()).collect())
    }

    fn from_integer_generators(ambient_dim: usize, gens: Vec<Vec<BigInt>>) -> Self {
        for g in &gens {
            assert_eq!(g.len(), ambient_dim, "generator dimension");
        }
        let (equations, facets) = double_description(ambient_dim, &gens);
        let (lineality, rays) = double_description(ambient_dim, &h_constraints(&equations, &facets));
        Self { ambient_dim, lineality, rays, equations, facets }
    }

    /// `{x : a · x >= 0 for every a in inequalities}`.
    pub fn from_inequalities(ambient_dim: usize, inequalities: &[RatVector]) -> Self {
        Self::from_h(ambient_dim, &[], inequalities)
    }

    /// `{x : e · x = 0 for e in equations, a · x >= 0 for a in inequalities}`.
    pub fn from_h(ambient_dim: usize, equations: &[RatVector], inequalities: &[RatVector]) -> Self {
        let ints = |vs: &[RatVector]| -> Vec<LatticeVector> {
            vs.iter()
                .inspect(|v| assert_eq!(v.dim(), ambient_dim, "constraint dimension"))
                .filter_map(RatVector::primitive_integer)
                .collect()
        };
        let constraints = h_constraints(&ints(equations), &ints(inequalities));
        let (lineality, rays) = double_description(ambient_dim, &constraints);
        let (equations, facets) = double_description(ambient_dim, &h_constraints(&lineality, &rays));
        Self { ambient_dim, lineality, rays, equations, facets }
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Self::from_generators(ambient_dim, &[])
    }

    pub fn whole_space(ambient_dim: usize) -> Self {
        Self::from_inequalities(ambient_dim, &[])
    }

    /// `{u : u · v >= 0 for all v in self}`.
    pub fn dual(&self) -> Self {
        Self {
            ambient_dim: self.ambient_dim,
            lineality: self.equations.clone(),
            rays: self.facets.clone(),
            equations: self.lineality.clone(),
            facets: self.rays.clone(),
        }
    }

    pub fn intersect(&self, other: &Self) -> Self {
        assert_eq!(self.ambient_dim, other.ambient_dim, "intersecting cones of different ambient dimension");
        let to_rat = |vs: &[LatticeVector]| vs.iter().map(LatticeVector::to_rational).collect::<Vec<_>>();
        let eqs = [to_rat(&self.equations), to_rat(&other.equations)].concat();
        let ineqs = [to_rat(&self.facets), to_rat(&other.facets)].concat();
        Self::from_h(self.ambient_dim, &eqs, &ineqs)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Dimension of the linear span.
    pub fn dim(&self) -> usize {
        self.ambient_dim - self.equations.len()
    }

    pub fn extremal_rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn facets(&self) -> &[LatticeVector] {
        &self.facets
    }

    pub fn lineality(&self) -> &[LatticeVector] {
        &self.lineality
    }

    pub fn equations(&self) -> &[LatticeVector] {
        &self.equations
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.lineality.is_empty() && self.rays.is_empty()
    }

    /// A conic generating set: the extremal rays and both signs of each
    /// lineality basis vector.
    pub fn generators(&self) -> Vec<LatticeVector> {
        let mut out = self.rays.clone();
        for l in &self.lineality {
            out.push(l.clone());
            out.push(l.neg());
        }
        out
    }

    pub fn membership(&self, x: &RatVector) -> Membership {
        assert_eq!(x.dim(), self.ambient_dim, "point dimension");
        let eval = |a: &LatticeVector| dot(&to_rational(a), x);
        if self.equations.iter().any(|e| !eval(e).is_zero()) {
            return Membership::Outside;
        }
        let mut on_boundary = false;
        for f in &self.facets {
            let v = eval(f);
            if v.is_negative() {
                return Membership::Outside;
            }
            on_boundary |= v.is_zero();
        }
        if on_boundary {
            Membership::Boundary
        } else {
            Membership::Interior
        }
    }

    pub fn contains(&self, x: &RatVector) -> bool {
        self.membership(x) != Membership::Outside
    }

    pub fn contains_cone(&self, other: &Self) -> bool {
        other.generators().iter().all(|g| self.contains(&g.to_rational()))
    }

    /// Whether `self` is a face of `other`.
    pub fn is_face_of(&self, other: &Self) -> bool {
        if !other.contains_cone(self) {
            return false;
        }
        let gens = self.generators();
        let tight: Vec<RatVector> = other
            .facets
            .iter()
            .filter(|f| gens.iter().all(|g| f.dot(g).is_zero()))
            .map(LatticeVector::to_rational)
            .collect();
        let eqs: Vec<RatVector> =
            other.equations.iter().map(LatticeVector::to_rational).chain(tight).collect();
        let ineqs: Vec<RatVector> = other.facets.iter().map(LatticeVector::to_rational).collect();
        Self::from_h(self.ambient_dim, &eqs, &ineqs) == *self
    }
}

/// Inequality list encoding `equations` (both signs) and `inequalities`.
fn h_constraints(equations: &[LatticeVector], inequalities: &[LatticeVector]) -> Vec<Vec<BigInt>> {
    equations
        .iter()
        .flat_map(|e| [e.coords().to_vec(), e.neg().into_coords()])
        .chain(inequalities.iter().map(|a| a.coords().to_vec()))
        .collect()
}

struct WorkingRay {
    v: Vec<BigInt>,
    /// `tight[j]` for each constraint processed so far.
    tight: Vec<bool>,
}

/// Double description for `{x in Q^d : a · x >= 0}`: returns the canonical
/// lineality basis and the canonical extremal rays modulo lineality.
fn double_description(dim: usize, constraints: &[Vec<BigInt>]) -> (Vec<LatticeVector>, Vec<LatticeVector>) {
    let constraints: Vec<Vec<BigInt>> = constraints
        .iter()
        .filter(|a| a.iter().any(|x| !x.is_zero()))
        .map(|a| scale_to_primitive(a.clone()).into_coords())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();

    let mut lineality: Vec<Vec<BigInt>> = (0..dim)
        .map(|i| (0..dim).map(|j| BigInt::from(u8::from(i == j))).collect())
        .collect();
    let mut rays: Vec<WorkingRay> = Vec::new();

    for (j, a) in constraints.iter().enumerate() {
        let values: Vec<BigInt> = lineality.iter().map(|l| dot(a, l)).collect();
        if let Some(p) = values.iter().position(|v| !v.is_zero()) {
            let pivot = lineality.remove(p);
            let pv = values[p].clone();
            let rest = values.iter().enumerate().filter(|&(i, _)| i != p).map(|(_, v)| v);
            for (l, lv) in lineality.iter_mut().zip(rest) {
                if lv.is_zero() {
                    continue;
                }
                let combined: Vec<BigInt> = l.iter().zip(&pivot).map(|(x, y)| &pv * x - lv * y).collect();
                *l = scale_to_primitive(combined).into_coords();
            }
            let (abs_pv, sign) = (pv.abs(), pv.signum());
            for r in &mut rays {
                let rv = dot(a, &r.v);
                if !rv.is_zero() {
                    let shift = &sign * &rv;
                    let combined: Vec<BigInt> =
                        r.v.iter().zip(&pivot).map(|(x, y)| &abs_pv * x - &shift * y).collect();
                    r.v = scale_to_primitive(combined).into_coords();
                }
                r.tight.push(true);
            }
            let mut tight = vec![true; j];
            tight.push(false);
            rays.push(WorkingRay { v: pivot.iter().map(|x| &sign * x).collect(), tight });
            continue;
        }

        let values: Vec<BigInt> = rays.iter().map(|r| dot(a, &r.v)).collect();
        let target = dim as isize - lineality.len() as isize - 2;
        let mut next: Vec<WorkingRay> = Vec::new();
        let positive: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();
        let negative: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();
        if target >= 0 {
            for &pi in &positive {
                for &ni in &negative {
                    let (p, n) = (&rays[pi], &rays[ni]);
                    let common: Vec<usize> = (0..j).filter(|&k| p.tight[k] && n.tight[k]).collect();
                    if (common.len() as isize) < target {
                        continue;
                    }
                    let rows: Vec<Vec<BigInt>> = common.iter().map(|&k| constraints[k].clone()).collect();
                    if rank_int(&rows, dim) as isize != target {
                        continue;
                    }
                    let (ap, an) = (&values[pi], &values[ni]);
                    let combined: Vec<BigInt> = n.v.iter().zip(&p.v).map(|(x, y)| ap * x - an * y).collect();
                    let mut tight = vec![false; j + 1];
                    for &k in &common {
                        tight[k] = true;
                    }
                    tight[j] = true;
                    next.push(WorkingRay { v: scale_to_primitive(combined).into_coords(), tight });
                }
            }
        }
        let mut kept: Vec<WorkingRay> = Vec::with_capacity(rays.len() + next.len());
        for (r, v) in rays.into_iter().zip(&values) {
            if v.is_negative() {
                continue;
            }
            let mut r = r;
            r.tight.push(v.is_zero());
            kept.push(r);
        }
        kept.extend(next);
        rays = kept;
    }

    let lineality_canon = canonical_row_space(&lineality, dim);
    let basis: Vec<Vec<BigRational>> = lineality_canon.iter().map(|l| to_rational(l)).collect();
    let rays_canon: BTreeSet<LatticeVector> = rays
        .iter()
        .filter_map(|r| RatVector::new(project_out(&to_rational(&r.v), &basis)).primitive_integer())
        .collect();
    (lineality_canon, rays_canon.into_iter().collect())
}
