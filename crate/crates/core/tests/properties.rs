//! Randomized and exhaustive checks against independent oracles.

mod common;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use toricnef::batyrev::is_general;
use toricnef::catalog;
use toricnef::divisor::DivisorCones;
use toricnef::fan::{star_subdivision, walls};
use toricnef::linalg::{
    feasible_point, hermite_normal_form, integer_kernel, primitive_part, smith_normal_form, strict_positive_kernel_exists,
    Inequality,
};
use toricnef::{Fan, IntMatrix, LatticeVector, Membership, RationalCone, RatVector};

use common::{complete_catalog, nef_by_walls};

fn rational_vector(dim: usize) -> impl Strategy<Value = RatVector> {
    prop::collection::vec((-3i64..=3, 1i64..=3), dim).prop_map(|v| {
        RatVector::new(v.into_iter().map(|(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q))).collect())
    })
}

fn random_cone() -> impl Strategy<Value = (usize, Vec<RatVector>)> {
    (1usize..=5).prop_flat_map(|d| (Just(d), prop::collection::vec(rational_vector(d), 0..=8)))
}

fn int_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = IntMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-9i64..=9, c), r).prop_map(move |rows| {
            IntMatrix::from_rows(c, rows.into_iter().map(|row| row.into_iter().map(BigInt::from).collect()).collect())
                .unwrap()
        })
    })
}

fn rank_of(vs: &[LatticeVector], dim: usize) -> usize {
    if vs.is_empty() {
        return 0;
    }
    IntMatrix::from_lattice_vectors(dim, vs).unwrap().rank()
}

fn positively_parallel(a: &LatticeVector, b: &RatVector) -> bool {
    match b.primitive_integer() {
        Some(p) => &p == a,
        None => false,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn dual_is_an_involution((d, gens) in random_cone()) {
        let c = RationalCone::from_generators(d, &gens);
        prop_assert_eq!(c.dual().dual(), c.clone());
        // recomputing from the H-description gives the same cone
        let eqs: Vec<RatVector> = c.equations().iter().map(LatticeVector::to_rational).collect();
        let ineqs: Vec<RatVector> = c.facets().iter().map(LatticeVector::to_rational).collect();
        prop_assert_eq!(RationalCone::from_h(d, &eqs, &ineqs), c);
    }

    #[test]
    fn double_description_certificates((d, gens) in random_cone()) {
        let c = RationalCone::from_generators(d, &gens);
        let generators = c.generators();
        for g in &generators {
            for f in c.facets() {
                prop_assert!(f.dot(g) >= BigInt::zero());
            }
            for e in c.equations() {
                prop_assert!(e.dot(g).is_zero());
            }
        }
        for f in c.facets() {
            let mut tight: Vec<LatticeVector> = c.lineality().to_vec();
            tight.extend(c.extremal_rays().iter().filter(|r| f.dot(r).is_zero()).cloned());
            prop_assert_eq!(rank_of(&tight, d), c.dim() - 1);
        }
        for s in &gens {
            prop_assert!(c.contains(s));
        }
    }

    #[test]
    fn extremal_rays_come_from_the_generators((d, gens) in random_cone()) {
        let c = RationalCone::from_generators(d, &gens);
        prop_assume!(c.is_pointed());
        let rays = c.extremal_rays();
        for r in rays {
            prop_assert!(gens.iter().any(|g| positively_parallel(r, g)));
            // not in the cone of the remaining generators
            let others: Vec<RatVector> = gens.iter().filter(|g| !positively_parallel(r, g)).cloned().collect();
            prop_assert!(!RationalCone::from_generators(d, &others).contains(&r.to_rational()));
        }
        let rebuilt: Vec<RatVector> = rays.iter().map(LatticeVector::to_rational).collect();
        prop_assert_eq!(RationalCone::from_generators(d, &rebuilt), c);
    }

    #[test]
    fn membership_matches_the_facets((d, gens) in random_cone(), x in rational_vector(5)) {
        let x = RatVector::new(x.coords()[..d].to_vec());
        let c = RationalCone::from_generators(d, &gens);
        let on_span = c.equations().iter().all(|e| e.to_rational().dot(&x).is_zero());
        let values: Vec<BigRational> = c.facets().iter().map(|f| f.to_rational().dot(&x)).collect();
        let expected = if !on_span || values.iter().any(Signed::is_negative) {
            Membership::Outside
        } else if values.iter().any(Zero::is_zero) {
            Membership::Boundary
        } else {
            Membership::Interior
        };
        prop_assert_eq!(c.membership(&x), expected);
    }

    #[test]
    fn hermite_transform_is_unimodular(a in int_matrix(5, 5)) {
        let (h, u) = hermite_normal_form(&a);
        prop_assert_eq!(u.determinant().unwrap().abs(), BigInt::one());
        prop_assert_eq!(u.mul(&a).unwrap(), h.clone());
        // echelon shape with positive pivots in strictly increasing columns
        let mut last: Option<usize> = None;
        let mut seen_zero = false;
        for row in h.rows() {
            match row.iter().position(|x| !x.is_zero()) {
                None => seen_zero = true,
                Some(p) => {
                    prop_assert!(!seen_zero);
                    prop_assert!(row[p].is_positive());
                    prop_assert!(last.is_none_or(|l| p > l));
                    last = Some(p);
                }
            }
        }
    }

    #[test]
    fn kernel_is_saturated_and_complete(a in int_matrix(6, 4)) {
        let k = integer_kernel(&a);
        prop_assert_eq!(k.nrows(), a.nrows() - a.rank());
        prop_assert!(k.mul(&a).unwrap().is_zero());
        for i in 0..k.nrows() {
            let row = k.row_vector(i);
            prop_assert_eq!(primitive_part(&row).unwrap(), row);
        }
        if k.nrows() > 0 {
            prop_assert!(smith_normal_form(&k).iter().all(One::is_one));
        }
    }

    #[test]
    fn smith_divisors_form_a_chain(a in int_matrix(4, 4)) {
        let s = smith_normal_form(&a);
        prop_assert_eq!(s.len(), a.rank());
        prop_assert!(s.iter().all(Signed::is_positive));
        for w in s.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        if a.nrows() == a.ncols() && a.rank() == a.nrows() {
            prop_assert_eq!(s.iter().product::<BigInt>(), a.determinant().unwrap().abs());
        }
    }
}

fn subdivision_base() -> impl Strategy<Value = Fan> {
    prop::sample::select(vec![
        catalog::projective_space(2).unwrap(),
        catalog::projective_space(3).unwrap(),
        catalog::hirzebruch(1),
        catalog::example_8_10(),
        catalog::product_of_projective_spaces(&[1, 1, 1]).unwrap(),
    ])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    /// Blowing up along the sum of a cone's generators refines the fan,
    /// keeps it smooth and complete, and never turns a special fan general.
    #[test]
    fn star_subdivision_refines(base in subdivision_base(), pick in any::<prop::sample::Index>(), mask in 1u32..8) {
        let cone = pick.get(base.max_cones()).clone();
        let face: Vec<usize> = cone.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &r)| r).collect();
        prop_assume!(face.len() >= 2);
        let w = face.iter().fold(LatticeVector::zero(base.dim()), |acc, &i| acc.add(base.ray(i)));
        let fine = star_subdivision(&base, &w).unwrap();
        prop_assert_eq!(fine.num_rays(), base.num_rays() + 1);
        prop_assert!(fine.is_valid() && fine.is_complete() && fine.is_smooth());
        let star = base.max_cones().iter().filter(|c| face.iter().all(|i| c.contains(i))).count();
        prop_assert_eq!(fine.max_cones().len(), base.max_cones().len() + (face.len() - 1) * star);
        for c in fine.max_cones() {
            let small = fine.cone_of(c);
            prop_assert!(base.max_cones().iter().any(|b| base.cone_of(b).contains_cone(&small)));
        }
        if is_general(&fine) {
            prop_assert!(is_general(&base));
        }
    }
}

const SEARCH_BOUND: i64 = 20;

/// A positive integer relation with entries in `1..=SEARCH_BOUND`, by
/// enumerating all but the last coefficient and solving for that one.
fn brute_positive_relation(vectors: &[Vec<i64>]) -> Option<Vec<i64>> {
    let (last, rest) = vectors.split_last().unwrap();
    let dim = last.len();
    let pivot = last.iter().position(|&x| x != 0)?;
    let search = |head: &Vec<i64>| {
        let partial: Vec<i64> = (0..dim).map(|j| rest.iter().zip(head).map(|(v, a)| v[j] * a).sum()).collect();
        if partial[pivot] % last[pivot] != 0 {
            return None;
        }
        let a = -partial[pivot] / last[pivot];
        let ok = (1..=SEARCH_BOUND).contains(&a) && (0..dim).all(|j| partial[j] + a * last[j] == 0);
        ok.then(|| head.iter().copied().chain([a]).collect())
    };
    if rest.is_empty() {
        return None;
    }
    (0..rest.len()).map(|_| 1..=SEARCH_BOUND).multi_cartesian_product().find_map(|head| search(&head))
}

#[test]
fn positive_kernel_agrees_with_enumeration() {
    let small = |x: &BigInt| i64::try_from(x).unwrap();
    for (name, fan) in complete_catalog() {
        let rays: Vec<Vec<i64>> = fan.rays().iter().map(|r| r.coords().iter().map(small).collect()).collect();
        for k in 1..=4.min(fan.num_rays()) {
            for subset in (0..fan.num_rays()).combinations(k) {
                let vectors: Vec<Vec<i64>> = subset.iter().map(|&i| rays[i].clone()).collect();
                let found = strict_positive_kernel_exists(&fan.cone_matrix(&subset));
                let brute = brute_positive_relation(&vectors);
                assert_eq!(found.is_some(), brute.is_some(), "{name} {subset:?}");
                if let Some(c) = found {
                    assert!(c.iter().all(|a| a.is_integer() && a.is_positive()));
                    let ints: Vec<BigInt> = c.iter().map(BigRational::to_integer).collect();
                    assert!(fan.cone_matrix(&subset).left_apply(&ints).iter().all(Zero::is_zero));
                }
            }
        }
    }
}

fn random_nef_direction(cones: &DivisorCones, rng: &mut ChaCha8Rng) -> RatVector {
    let rho = cones.picard_rank();
    let mut x = vec![BigInt::zero(); rho];
    for g in cones.nef.generators() {
        let t = BigInt::from(rng.gen_range(0..3));
        for (xi, gi) in x.iter_mut().zip(g.coords()) {
            *xi += &t * gi;
        }
    }
    for xi in &mut x {
        if rng.gen_bool(0.3) {
            *xi += rng.gen_range(-1..=1);
        }
    }
    LatticeVector::new(x).to_rational()
}

#[test]
fn nef_membership_agrees_with_wall_evaluation() {
    for (seed, (name, fan)) in complete_catalog().into_iter().enumerate() {
        let cones = DivisorCones::new(&fan).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed as u64);
        let m = fan.num_rays();
        let (mut nef, mut not_nef) = (0, 0);
        for trial in 0..100 {
            let class = if trial % 2 == 0 {
                let d: Vec<BigInt> = (0..m).map(|_| BigInt::from(rng.gen_range(-3..=3))).collect();
                cones.space.class_of(&d).unwrap()
            } else {
                let x = random_nef_direction(&cones, &mut rng);
                let class = cones.space.representative(&x).unwrap();
                assert!(class.image.is_zero() || class.image.primitive_integer() == x.primitive_integer());
                class
            };
            let expected = nef_by_walls(&cones, &class.image);
            assert_eq!(cones.is_nef(&class), expected, "{name}: {}", class.image);
            if expected {
                nef += 1;
            } else {
                not_nef += 1;
            }
        }
        assert!(nef > 0 && not_nef > 0, "{name}: {nef} nef, {not_nef} not");
    }
}

#[test]
fn cone_relations_on_every_complete_catalog_fan() {
    for (name, fan) in complete_catalog() {
        let cones = DivisorCones::new(&fan).unwrap();
        assert_eq!(cones.nef, cones.mori.dual(), "{name}");
        assert_eq!(cones.mori, cones.nef.dual(), "{name}");
        assert!(cones.pseudo_effective.contains_cone(&cones.nef), "{name}");
        assert!(cones.pseudo_effective.is_full_dimensional(), "{name}");
        assert_eq!(cones.boundary_meets_only_at_zero(), cones.nonbig_nef_witness().is_none(), "{name}");
        assert_eq!(cones.space.picard_rank(), fan.num_rays() - fan.dim(), "{name}");
    }
}

/// Some class is positive on every wall curve.
fn has_ample_class(cones: &DivisorCones) -> bool {
    let rho = cones.picard_rank();
    let ineqs: Vec<Inequality> = cones
        .wall_curves
        .iter()
        .map(|c| c.coordinates.coords().to_vec())
        .unique()
        .map(|c| Inequality::new(c, BigRational::one()))
        .collect();
    feasible_point(rho, &ineqs).is_some()
}

#[test]
fn projectivity_agrees_with_ample_class_search() {
    for (name, fan) in complete_catalog() {
        let cones = DivisorCones::new(&fan).unwrap();
        assert_eq!(cones.is_projective(), has_ample_class(&cones), "{name}");
    }
}

#[test]
fn wall_relations_are_relations() {
    for (name, fan) in complete_catalog() {
        for w in walls(&fan).unwrap() {
            assert!(common::is_relation(&fan, &w.relation), "{name}");
            let (a, b) = w.opposite_rays(&fan);
            assert!(w.relation[a].is_one() && w.relation[b].is_one(), "{name}");
            for (i, c) in w.relation.iter().enumerate() {
                assert!(c.is_zero() || i == a || i == b || w.ray_indices.contains(&i), "{name}");
            }
        }
    }
}

#[test]
fn complete_simplicial_threefolds_have_euler_cone_count() {
    for (name, fan) in complete_catalog() {
        if fan.dim() == 3 {
            assert_eq!(fan.max_cones().len(), 2 * (fan.num_rays() - 2), "{name}");
            assert_eq!(walls(&fan).unwrap().len(), 3 * fan.num_rays() - 6, "{name}");
        }
    }
}

#[test]
fn catalog_fans_survive_json() {
    let mut fans = complete_catalog();
    fans.push(("general_ndim(5)".into(), catalog::general_ndim(5).unwrap()));
    for (name, fan) in fans {
        assert!(fan.is_valid(), "{name}");
        let text = fan.to_json();
        let back = Fan::from_json(&text).unwrap();
        assert_eq!(back, fan, "{name}");
        assert_eq!(back.to_json(), text, "{name}");
    }
}

#[test]
fn singular_fans_use_scaled_wall_classes() {
    // P(1,1,2) and its product with P^1
    let weighted = Fan::from_i64(2, &[&[1, 0], &[0, 1], &[-1, -2]], &[&[0, 1], &[0, 2], &[1, 2]]).unwrap();
    let fans = [weighted.clone(), catalog::product(&weighted, &catalog::projective_space(1).unwrap())];
    for fan in fans {
        assert!(!fan.is_smooth());
        assert!(walls(&fan).is_err());
        let cones = DivisorCones::new(&fan).unwrap();
        assert!(cones.is_projective());
        assert_eq!(cones.nef, cones.mori.dual());
        // every effective divisor is nef on products of Picard rank one varieties
        assert!(cones.nef_equals_pe());
    }
}
