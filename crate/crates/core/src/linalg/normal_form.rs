//! Hermite and Smith normal forms over Z, and integer left kernels.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

type Rows = Vec<Vec<BigInt>>;

fn to_rows(a: &IntMatrix) -> Rows {
    a.rows().map(<[BigInt]>::to_vec).collect()
}

fn from_rows(cols: usize, rows: Rows) -> IntMatrix {
    IntMatrix::from_rows(cols, rows).expect("rows produced with consistent width")
}

/// `dst -= q * src`
fn sub_multiple(dst: &mut [BigInt], src: &[BigInt], q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for (d, s) in dst.iter_mut().zip(src) {
        *d -= q * s;
    }
}

/// Row-style Hermite normal form.
///
/// Returns `(H, U)` with `U` unimodular and `U * A = H`. `H` is in row echelon
/// form: pivots are positive, entries above a pivot lie in `[0, pivot)`, and
/// zero rows sit at the bottom. Pivot choice is deterministic (smallest
/// absolute value, lowest row index on ties).
pub fn hermite_normal_form(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (m, n) = (a.nrows(), a.ncols());
    let mut h = to_rows(a);
    let mut u = to_rows(&IntMatrix::identity(m));
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        loop {
            let pivot = (r..m)
                .filter(|&i| !h[i][c].is_zero())
                .min_by(|&i, &j| h[i][c].abs().cmp(&h[j][c].abs()).then(i.cmp(&j)));
            let Some(p) = pivot else { break };
            h.swap(r, p);
            u.swap(r, p);
            let mut done = true;
            for i in r + 1..m {
                if h[i][c].is_zero() {
                    continue;
                }
                let q = h[i][c].div_floor(&h[r][c]);
                let (hr, ur) = (h[r].clone(), u[r].clone());
                sub_multiple(&mut h[i], &hr, &q);
                sub_multiple(&mut u[i], &ur, &q);
                if !h[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h.get(r).is_none_or(|row| row[c].is_zero()) {
            continue;
        }
        if h[r][c].is_negative() {
            for x in h[r].iter_mut().chain(u[r].iter_mut()) {
                *x = -&*x;
            }
        }
        let (hr, ur) = (h[r].clone(), u[r].clone());
        for i in 0..r {
            let q = h[i][c].div_floor(&hr[c]);
            sub_multiple(&mut h[i], &hr, &q);
            sub_multiple(&mut u[i], &ur, &q);
        }
        r += 1;
    }
    (from_rows(n, h), from_rows(m, u))
}

/// Nonzero elementary divisors `d_1 | d_2 | ... | d_r` of `A`, where `r` is its rank.
pub fn smith_normal_form(a: &IntMatrix) -> Vec<BigInt> {
    let (m, n) = (a.nrows(), a.ncols());
    let mut s = to_rows(a);
    let mut diag = Vec::new();
    for t in 0..m.min(n) {
        // pivot: smallest nonzero absolute value in the trailing block
        let Some((pi, pj)) = (t..m)
            .flat_map(|i| (t..n).map(move |j| (i, j)))
            .filter(|&(i, j)| !s[i][j].is_zero())
            .min_by(|&(i, j), &(k, l)| s[i][j].abs().cmp(&s[k][l].abs()))
        else {
            break;
        };
        s.swap(t, pi);
        for row in s.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut changed = false;
            // clear column t
            for i in t + 1..m {
                if s[i][t].is_zero() {
                    continue;
                }
                let q = s[i][t].div_floor(&s[t][t]);
                let st = s[t].clone();
                sub_multiple(&mut s[i], &st, &q);
                if !s[i][t].is_zero() {
                    s.swap(t, i);
                    changed = true;
                }
            }
            // clear row t
            for j in t + 1..n {
                if s[t][j].is_zero() {
                    continue;
                }
                let q = s[t][j].div_floor(&s[t][t]);
                for row in s.iter_mut() {
                    let v = &row[j] - &q * &row[t];
                    row[j] = v;
                }
                if !s[t][j].is_zero() {
                    for row in s.iter_mut() {
                        row.swap(t, j);
                    }
                    changed = true;
                }
            }
            if changed {
                continue;
            }
            // divisibility: fold a non-divisible entry into row t and retry
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !s[i][j].is_multiple_of(&s[t][t])));
            match bad {
                Some(i) => {
                    let si = s[i].clone();
                    for (x, y) in s[t].iter_mut().zip(&si) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        diag.push(s[t][t].abs());
    }
    diag
}

/// Lattice basis (as rows) of the left kernel `{c in Z^m : c * A = 0}`.
///
/// The basis is saturated and returned in Hermite normal form, so it is a
/// canonical function of the kernel lattice.
pub fn integer_kernel(a: &IntMatrix) -> IntMatrix {
    let m = a.nrows();
    let (h, u) = hermite_normal_form(a);
    let kernel_rows: Rows =
        (0..m).filter(|&i| h.row(i).iter().all(Zero::is_zero)).map(|i| u.row(i).to_vec()).collect();
    if kernel_rows.is_empty() {
        return IntMatrix::zeros(0, m);
    }
    let k = from_rows(m, kernel_rows);
    let (hk, _) = hermite_normal_form(&k);
    let rows: Rows = hk.rows().filter(|r| r.iter().any(|x| !x.is_zero())).map(<[BigInt]>::to_vec).collect();
    from_rows(m, rows)
}

/// `true` when `d` is 1 for every entry and there are `count` entries.
pub(crate) fn all_unit(divisors: &[BigInt], count: usize) -> bool {
    divisors.len() == count && divisors.iter().all(One::is_one)
}
