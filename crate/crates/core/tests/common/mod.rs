#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use toricnef::catalog;
use toricnef::divisor::{DivisorClassSpace, DivisorCones};
use toricnef::linalg::strict_positive_kernel_exists;
use toricnef::{Fan, IntMatrix, RatVector};

pub fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// `Σ c_i v_i = 0`, checked coordinatewise.
pub fn is_relation(fan: &Fan, c: &[BigInt]) -> bool {
    (0..fan.dim()).all(|k| fan.rays().iter().zip(c).map(|(v, ci)| &v.coords()[k] * ci).sum::<BigInt>().is_zero())
}

/// A class is big iff it is a combination of all prime divisors with strictly
/// positive coefficients, i.e. the columns of `Q` and `-x` admit a strictly
/// positive relation.
pub fn big_by_positive_combination(space: &DivisorClassSpace, x: &RatVector) -> bool {
    let Some(x) = x.primitive_integer() else { return false };
    let q = space.projection();
    let mut rows: Vec<Vec<BigInt>> = (0..q.ncols()).map(|j| q.column(j)).collect();
    rows.push(x.neg().into_coords());
    let m = IntMatrix::from_rows(q.nrows(), rows).unwrap();
    strict_positive_kernel_exists(&m).is_some()
}

/// Nef by direct evaluation on every wall curve.
pub fn nef_by_walls(cones: &DivisorCones, x: &RatVector) -> bool {
    cones.wall_curves.iter().all(|c| x.dot(&c.coordinates) >= BigRational::zero())
}

pub fn predicate_by_oracle(cones: &DivisorCones) -> bool {
    cones.nef.generators().iter().all(|r| {
        let x = r.to_rational();
        nef_by_walls(cones, &x) && big_by_positive_combination(&cones.space, &x)
    })
}

pub fn smooth_projective_catalog() -> Vec<(String, Fan)> {
    let mut out: Vec<(String, Fan)> = (1..=4).map(|n| (format!("P^{n}"), catalog::projective_space(n).unwrap())).collect();
    out.push(("example_8_10".into(), catalog::example_8_10()));
    for k in 6..=8 {
        out.push((format!("X_{k}"), catalog::example_xk(k).unwrap()));
    }
    out.push(("general_ndim(4)".into(), catalog::general_ndim(4).unwrap()));
    out.push(("blown_up_p2".into(), catalog::blown_up_p2()));
    out.push(("F_2".into(), catalog::hirzebruch(2)));
    out.push(("P^1xP^1".into(), catalog::product_of_projective_spaces(&[1, 1]).unwrap()));
    out.push(("P^1xP^2".into(), catalog::product_of_projective_spaces(&[1, 2]).unwrap()));
    let p2 = catalog::projective_space(2).unwrap();
    out.push(("P(O+O(1)) over P^2".into(), catalog::projectivized_split_bundle(&p2, &ints(&[1, 0, 0]), 1).unwrap()));
    out
}

/// Every complete catalog fan, projective or not.
pub fn complete_catalog() -> Vec<(String, Fan)> {
    let mut out = smooth_projective_catalog();
    out.push(("miyake_oda".into(), catalog::miyake_oda()));
    out
}
