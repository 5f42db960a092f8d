//! Exact rational feasibility by Fourier–Motzkin elimination.

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{integer_kernel, IntMatrix, RatVector};

/// The half-space `coeffs · x >= bound`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Inequality {
    pub coeffs: Vec<BigRational>,
    pub bound: BigRational,
}

impl Inequality {
    pub fn new(coeffs: Vec<BigRational>, bound: BigRational) -> Self {
        Self { coeffs, bound }
    }

    fn eval(&self, x: &[BigRational]) -> BigRational {
        super::dot(&self.coeffs, x)
    }

    /// Scales so the first nonzero coefficient has absolute value one.
    fn normalized(mut self) -> Self {
        if let Some(lead) = self.coeffs.iter().find(|c| !c.is_zero()).map(|c| c.abs()) {
            for c in &mut self.coeffs {
                *c /= &lead;
            }
            self.bound /= &lead;
        }
        self
    }
}

/// Finds a point satisfying every inequality, or `None` if the system is empty.
///
/// Variables are eliminated from the last to the first; the witness is built
/// by back-substitution, each coordinate taking its tightest lower bound
/// (or upper bound when unbounded below, or 0 when free).
pub fn feasible_point(dim: usize, ineqs: &[Inequality]) -> Option<Vec<BigRational>> {
    // levels[k] involves only variables 0..dim-k
    let mut levels: Vec<Vec<Inequality>> = Vec::with_capacity(dim + 1);
    let mut current: Vec<Inequality> = dedup(ineqs.iter().cloned());
    for var in (0..dim).rev() {
        levels.push(current.clone());
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for q in current {
            if q.coeffs[var].is_positive() {
                pos.push(q);
            } else if q.coeffs[var].is_negative() {
                neg.push(q);
            } else {
                rest.push(q);
            }
        }
        for p in &pos {
            for n in &neg {
                let (a, b) = (&p.coeffs[var], -&n.coeffs[var]);
                // b*p + a*n cancels `var`
                let coeffs: Vec<BigRational> =
                    p.coeffs.iter().zip(&n.coeffs).map(|(x, y)| &b * x + a * y).collect();
                let bound = &b * &p.bound + a * &n.bound;
                rest.push(Inequality { coeffs, bound });
            }
        }
        current = Vec::new();
        for q in dedup(rest) {
            if q.coeffs.iter().all(Zero::is_zero) {
                if q.bound.is_positive() {
                    return None;
                }
            } else {
                current.push(q);
            }
        }
    }
    debug_assert!(current.is_empty());

    let mut x = vec![BigRational::zero(); dim];
    for var in 0..dim {
        let system = &levels[dim - 1 - var];
        let mut lower: Option<BigRational> = None;
        let mut upper: Option<BigRational> = None;
        for q in system {
            let a = &q.coeffs[var];
            if a.is_zero() {
                continue;
            }
            let partial: BigRational =
                (0..var).fold(BigRational::zero(), |acc, j| acc + &q.coeffs[j] * &x[j]);
            let bound = (&q.bound - partial) / a;
            if a.is_positive() {
                if lower.as_ref().is_none_or(|l| bound > *l) {
                    lower = Some(bound);
                }
            } else if upper.as_ref().is_none_or(|u| bound < *u) {
                upper = Some(bound);
            }
        }
        x[var] = lower.or(upper).unwrap_or_else(BigRational::zero);
    }
    debug_assert!(ineqs.iter().all(|q| q.eval(&x) >= q.bound));
    Some(x)
}

fn dedup(qs: impl IntoIterator<Item = Inequality>) -> Vec<Inequality> {
    qs.into_iter().map(Inequality::normalized).collect::<BTreeSet<_>>().into_iter().collect()
}

/// Looks for `c > 0` (every entry strictly positive) with `c · A = 0`.
///
/// The rows of `A` are the candidate vectors. Strictness is homogenized as
/// `c >= 1`, which is equivalent because the solution set is a cone. The
/// returned certificate is scaled to coprime positive integers.
pub fn strict_positive_kernel_exists(a: &IntMatrix) -> Option<RatVector> {
    let k = a.nrows();
    if k == 0 {
        return None;
    }
    let kernel = integer_kernel(a);
    let q = kernel.nrows();
    if q == 0 {
        return None;
    }
    // c = t · kernel, constraints c_i >= 1
    let ineqs: Vec<Inequality> = (0..k)
        .map(|i| {
            let coeffs = (0..q).map(|j| BigRational::from_integer(kernel[(j, i)].clone())).collect();
            Inequality::new(coeffs, BigRational::one())
        })
        .collect();
    let t = feasible_point(q, &ineqs)?;
    let c: Vec<BigRational> = (0..k)
        .map(|i| (0..q).fold(BigRational::zero(), |acc, j| acc + &t[j] * BigRational::from_integer(kernel[(j, i)].clone())))
        .collect();
    let ints = RatVector::new(c).primitive_integer()?;
    debug_assert!(ints.iter().all(Signed::is_positive));
    Some(ints.to_rational())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn ineq(coeffs: &[i64], bound: i64) -> Inequality {
        Inequality::new(coeffs.iter().map(|&c| r(c)).collect(), r(bound))
    }

    fn ints(v: &RatVector) -> Vec<BigInt> {
        v.iter().map(|c| c.to_integer()).collect()
    }

    #[test]
    fn feasible_triangle() {
        // x >= 1, y >= 1, x + y <= 3
        let qs = vec![ineq(&[1, 0], 1), ineq(&[0, 1], 1), ineq(&[-1, -1], -3)];
        let x = feasible_point(2, &qs).unwrap();
        assert!(qs.iter().all(|q| q.eval(&x) >= q.bound));
    }

    #[test]
    fn infeasible_strip() {
        // x >= 2, x <= 1
        let qs = vec![ineq(&[1], 2), ineq(&[-1], -1)];
        assert!(feasible_point(1, &qs).is_none());
        // x + y >= 1, -x - y >= 0
        let qs = vec![ineq(&[1, 1], 1), ineq(&[-1, -1], 0)];
        assert!(feasible_point(2, &qs).is_none());
    }

    #[test]
    fn opposite_pair_has_positive_relation() {
        let a = IntMatrix::from_i64(&[&[0, 0, 1], &[0, 0, -1]]);
        let c = strict_positive_kernel_exists(&a).unwrap();
        assert_eq!(ints(&c), vec![BigInt::from(1), BigInt::from(1)]);
    }

    #[test]
    fn independent_rays_have_none() {
        let a = IntMatrix::from_i64(&[&[1, 0], &[0, 1]]);
        assert!(strict_positive_kernel_exists(&a).is_none());
    }

    #[test]
    fn projective_space_relation() {
        let a = IntMatrix::from_i64(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[-1, -1, -1]]);
        let c = strict_positive_kernel_exists(&a).unwrap();
        assert_eq!(ints(&c), vec![BigInt::from(1); 4]);
    }

    #[test]
    fn kernel_without_positive_vector() {
        // kernel spanned by (1, 1, -1): no strictly positive element
        let a = IntMatrix::from_i64(&[&[1, 0], &[0, 1], &[1, 1]]);
        assert!(strict_positive_kernel_exists(&a).is_none());
    }

    #[test]
    fn weighted_relation() {
        // v1 + 2 v2 + v3 = 0 for (1,0), (0,1), (-1,-2)
        let a = IntMatrix::from_i64(&[&[1, 0], &[0, 1], &[-1, -2]]);
        let c = strict_positive_kernel_exists(&a).unwrap();
        assert_eq!(ints(&c), vec![BigInt::from(1), BigInt::from(2), BigInt::from(1)]);
    }
}
