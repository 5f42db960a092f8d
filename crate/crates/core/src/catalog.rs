//! Builders for the fans studied in this crate and a few comparison fans.
//!
//! The threefold `example_8_10`, its blow-ups `example_xk` and the
//! higher-dimensional `general_ndim` are produced by replaying their chains of
//! star subdivisions of projective space rather than by listing cones.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::fan::{star_subdivision, ConeIndices, Fan};
use crate::linalg::LatticeVector;

/// Rays `e_1, ..., e_n, -(e_1 + ... + e_n)`; the maximal cones omit one ray each.
pub fn projective_space(n: usize) -> Result<Fan> {
    if n == 0 {
        return Err(Error::InvalidFan("projective space needs n >= 1".into()));
    }
    let mut rays: Vec<LatticeVector> = (0..n)
        .map(|i| LatticeVector::from_i64(&(0..n).map(|j| i64::from(i == j)).collect::<Vec<_>>()))
        .collect();
    rays.push(LatticeVector::from_i64(&vec![-1; n]));
    let cones = (0..=n).rev().map(|skip| (0..=n).filter(|&i| i != skip).collect()).collect();
    Fan::new(n, rays, cones)
}

fn subdivide_chain(mut fan: Fan, centers: impl IntoIterator<Item = LatticeVector>) -> Result<Fan> {
    for w in centers {
        fan = star_subdivision(&fan, &w)?;
    }
    Ok(fan)
}

/// The smooth projective threefold with `ρ = 5` obtained from `P^3` by
/// blowing up, inside `<v1, v2, v4>`, at
/// `v5 = (1,-1,-2)`, `v6 = (1,0,-1)`, `v7 = (0,-1,-2)`, `v8 = (0,0,-1)` in turn.
/// Rays are `v1, ..., v8` in that order.
pub fn example_8_10() -> Fan {
    let centers = [[1, -1, -2], [1, 0, -1], [0, -1, -2], [0, 0, -1]];
    subdivide_chain(projective_space(3).expect("n = 3"), centers.iter().map(|c| LatticeVector::from_i64(c)))
        .expect("subdivision chain of P^3")
}

/// `X_k` for `k >= 6`: further blow-ups of [`example_8_10`] inside
/// `<v5, v7, v8>` at `u_6 = v5 + v7 + v8` and `u_{j+1} = v5 + v7 + u_j`.
/// Picard rank `k`.
pub fn example_xk(k: usize) -> Result<Fan> {
    if k < 6 {
        return Err(Error::InvalidFan("X_k is defined for k >= 6".into()));
    }
    let base = example_8_10();
    let (v5, v7, v8) = (base.ray(4).clone(), base.ray(6).clone(), base.ray(7).clone());
    let step = v5.add(&v7);
    let mut centers = Vec::with_capacity(k - 5);
    let mut u = step.add(&v8);
    for _ in 6..=k {
        centers.push(u.clone());
        u = step.add(&u);
    }
    subdivide_chain(base, centers)
}

/// The smooth complete non-projective threefold with seven rays, transcribed
/// as listed (rays `v1..v7` at indices `0..6`).
pub fn miyake_oda() -> Fan {
    Fan::from_i64(
        3,
        &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[-1, -1, -1], &[0, -1, -1], &[-1, 0, -1], &[-1, -1, 0]],
        &[
            &[0, 1, 2],
            &[3, 4, 5],
            &[3, 5, 6],
            &[3, 4, 6],
            &[0, 1, 4],
            &[1, 4, 5],
            &[1, 2, 5],
            &[2, 5, 6],
            &[0, 2, 6],
            &[0, 4, 6],
        ],
    )
    .expect("literal fan")
}

/// The `n`-dimensional analogue of [`example_8_10`]: `P^n` (rays
/// `v1, v2, v3, w_1, ..., w_{n-3}, v4`) blown up at
/// `v5 = (1,-1,-2,...,-2)`, `v6 = (1,0,-1,...,-1)`, `v7 = (0,-1,-2,...,-2)`,
/// `v8 = (0,0,-1,...,-1)`. Each center lies in the relative interior of a
/// 3-dimensional cone. For `n = 3` this is [`example_8_10`].
pub fn general_ndim(n: usize) -> Result<Fan> {
    if n < 3 {
        return Err(Error::InvalidFan("the construction needs n >= 3".into()));
    }
    let tail = |head: [i64; 3], rest: i64| {
        let mut v = head.to_vec();
        v.extend(std::iter::repeat_n(rest, n - 3));
        LatticeVector::from_i64(&v)
    };
    let centers = [tail([1, -1, -2], -2), tail([1, 0, -1], -1), tail([0, -1, -2], -2), tail([0, 0, -1], -1)];
    subdivide_chain(projective_space(n)?, centers)
}

/// Product fan in `N_1 ⊕ N_2`: rays of `a` then rays of `b`, cones `σ × τ`.
pub fn product(a: &Fan, b: &Fan) -> Fan {
    let (na, nb) = (a.dim(), b.dim());
    let zeros = |k: usize| vec![BigInt::from(0); k];
    let mut rays: Vec<LatticeVector> = a.rays().iter().map(|r| [r.coords().to_vec(), zeros(nb)].concat().into()).collect();
    rays.extend(b.rays().iter().map(|r| LatticeVector::from([zeros(na), r.coords().to_vec()].concat())));
    let offset = a.num_rays();
    let cones = a
        .max_cones()
        .iter()
        .flat_map(|s| b.max_cones().iter().map(move |t| s.iter().copied().chain(t.iter().map(|i| i + offset)).collect()))
        .collect();
    Fan::new(na + nb, rays, cones).expect("product of well-formed fans")
}

/// Fan of `P(O^k ⊕ L)` over the complete smooth fan `base`, where `L` is the
/// divisor `Σ l_i D_i`.
///
/// Lattice `N ⊕ Z^k`. Fiber rays `f_1, ..., f_k` are the unit vectors of
/// `Z^k` and `f_0 = -(f_1 + ... + f_k)`. Base ray `v_i` lifts to
/// `(v_i, l_i, ..., l_i)`, i.e. the twist by `L` sits on the `f_0` side.
/// Maximal cones are a lifted base cone plus all fiber rays but one.
/// Rays: lifted base rays, then `f_1..f_k`, then `f_0`.
pub fn projectivized_split_bundle(base: &Fan, l: &[BigInt], k: usize) -> Result<Fan> {
    if k == 0 {
        return Err(Error::InvalidFan("bundle rank k must be >= 1".into()));
    }
    if l.len() != base.num_rays() {
        return Err(Error::DimensionMismatch { context: "line bundle coefficients".into(), expected: base.num_rays(), found: l.len() });
    }
    if !base.is_complete() || !base.is_smooth() {
        return Err(Error::InvalidFan("base must be complete and smooth".into()));
    }
    let n = base.dim();
    let m = base.num_rays();
    let mut rays: Vec<LatticeVector> = base
        .rays()
        .iter()
        .zip(l)
        .map(|(v, li)| [v.coords().to_vec(), vec![li.clone(); k]].concat().into())
        .collect();
    for j in 0..k {
        let mut f = vec![BigInt::from(0); n + k];
        f[n + j] = BigInt::from(1);
        rays.push(f.into());
    }
    rays.push([vec![BigInt::from(0); n], vec![BigInt::from(-1); k]].concat().into());
    let fiber: Vec<usize> = (m..=m + k).collect();
    let mut cones: Vec<ConeIndices> = Vec::new();
    for sigma in base.max_cones() {
        for omit in fiber.iter().rev() {
            cones.push(sigma.iter().copied().chain(fiber.iter().copied().filter(|f| f != omit)).collect());
        }
    }
    Fan::new(n + k, rays, cones)
}

/// `P^2` blown up at a torus-fixed point.
pub fn blown_up_p2() -> Fan {
    star_subdivision(&projective_space(2).expect("n = 2"), &LatticeVector::from_i64(&[1, 1])).expect("smooth blow-up")
}

/// Hirzebruch surface `F_a` with rays `(1,0), (0,1), (-1,a), (0,-1)`.
pub fn hirzebruch(a: i64) -> Fan {
    Fan::from_i64(2, &[&[1, 0], &[0, 1], &[-1, a], &[0, -1]], &[&[0, 1], &[1, 2], &[2, 3], &[0, 3]])
        .expect("literal fan")
}

/// Product of projective spaces `P^{n_1} × ... × P^{n_r}`.
pub fn product_of_projective_spaces(dims: &[usize]) -> Result<Fan> {
    let mut it = dims.iter();
    let first = it.next().ok_or_else(|| Error::InvalidFan("empty product".into()))?;
    it.try_fold(projective_space(*first)?, |acc, &d| Ok(product(&acc, &projective_space(d)?)))
}
