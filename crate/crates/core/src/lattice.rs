//! Integer points in the ellipsoid `{v : v^T G v <= r^2}` for a positive
//! definite rational `G`.
//!
//! Membership is decided on the exact rational value of `v^T G v`, compared
//! against `r^2` with a relative slack of `BALL_SLACK` so that radii coming
//! from floating point inputs include their boundary points.

use num_rational::{BigRational, Rational64};
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::exact;

pub const BALL_SLACK: f64 = 1e-9;

/// `v^T G v <= r^2`, decided on the exact value of the form.
pub fn in_ball(g: &[Vec<BigRational>], v: &[i64], radius_sq: f64) -> bool {
    let q = exact::big_to_f64(&exact::bilinear(g, v, v));
    q <= radius_sq * (1.0 + BALL_SLACK) + BALL_SLACK
}

/// Checks symmetry and exact positive definiteness.
pub fn check_positive_definite(g: &[Vec<Rational64>]) -> Result<()> {
    if !exact::is_symmetric(g) {
        return Err(Error::invalid("bounds.g", "metric must be a symmetric square matrix"));
    }
    let inertia = exact::inertia(&exact::rational_matrix_to_big(g));
    if inertia.positive != g.len() {
        return Err(Error::invalid("bounds.g", "metric must be positive definite"));
    }
    Ok(())
}

fn inverse_diagonal(g: &[Vec<BigRational>]) -> Vec<f64> {
    // Gauss-Jordan on [G | I]
    let n = g.len();
    let mut a: Vec<Vec<BigRational>> = g
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| exact::big_from_int(i64::from(i == j))));
            r
        })
        .collect();
    for k in 0..n {
        let p = (k..n).find(|&i| !num_traits::Zero::is_zero(&a[i][k])).expect("nonsingular");
        a.swap(p, k);
        let pivot = a[k][k].clone();
        for v in a[k].iter_mut() {
            *v /= &pivot;
        }
        for r in 0..n {
            if r != k && !num_traits::Zero::is_zero(&a[r][k]) {
                let f = a[r][k].clone();
                for c in 0..2 * n {
                    let t = &f * &a[k][c];
                    a[r][c] -= t;
                }
            }
        }
    }
    (0..n).map(|i| exact::big_to_f64(&a[i][n + i].abs())).collect()
}

/// Bounding-box enumeration: `|v_i| <= r sqrt((G^-1)_ii)`, filtered by
/// [`in_ball`]. Output is sorted lexicographically.
pub fn ball_points_box(g: &[Vec<Rational64>], radius_sq: f64) -> Result<Vec<Vec<i64>>> {
    check_positive_definite(g)?;
    let big = exact::rational_matrix_to_big(g);
    let n = g.len();
    let r2 = radius_sq.max(0.0) * (1.0 + 2.0 * BALL_SLACK) + 2.0 * BALL_SLACK;
    let bounds: Vec<i64> = inverse_diagonal(&big)
        .iter()
        .map(|&d| (r2 * d).sqrt().floor() as i64)
        .collect();
    let mut out = Vec::new();
    let mut v: Vec<i64> = bounds.iter().map(|b| -b).collect();
    if n == 0 {
        return Ok(vec![Vec::new()]);
    }
    loop {
        if in_ball(&big, &v, radius_sq) {
            out.push(v.clone());
        }
        // odometer, last coordinate fastest
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if v[i] < bounds[i] {
                v[i] += 1;
                for j in i + 1..n {
                    v[j] = -bounds[j];
                }
                break;
            }
        }
    }
}

/// Fincke–Pohst enumeration via `G = L D L^T`. Produces the same sorted
/// list as [`ball_points_box`].
pub fn ball_points_fincke_pohst(g: &[Vec<Rational64>], radius_sq: f64) -> Result<Vec<Vec<i64>>> {
    check_positive_definite(g)?;
    let big = exact::rational_matrix_to_big(g);
    let n = g.len();
    if n == 0 {
        return Ok(vec![Vec::new()]);
    }
    let gf: Vec<Vec<f64>> = big.iter().map(|r| r.iter().map(exact::big_to_f64).collect()).collect();
    // unit lower triangular L and diagonal D with G = L D L^T
    let mut l = vec![vec![0.0; n]; n];
    let mut d = vec![0.0; n];
    for j in 0..n {
        let s: f64 = (0..j).map(|k| l[j][k] * l[j][k] * d[k]).sum();
        d[j] = gf[j][j] - s;
        l[j][j] = 1.0;
        for i in j + 1..n {
            let s: f64 = (0..j).map(|k| l[i][k] * l[j][k] * d[k]).sum();
            l[i][j] = (gf[i][j] - s) / d[j];
        }
    }
    let budget = radius_sq.max(0.0) * (1.0 + 1e-6) + 1e-6;
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    descend(n - 1, &l, &d, budget, 0.0, &mut x, &mut |v| {
        if in_ball(&big, v, radius_sq) {
            out.push(v.to_vec());
        }
    });
    out.sort();
    Ok(out)
}

/// `x^T G x = sum_i d_i (x_i + sum_{j>i} L_ji x_j)^2`; coordinates are
/// fixed from the last one down.
fn descend(
    i: usize,
    l: &[Vec<f64>],
    d: &[f64],
    budget: f64,
    used: f64,
    x: &mut [i64],
    visit: &mut impl FnMut(&[i64]),
) {
    let n = x.len();
    let center: f64 = -(i + 1..n).map(|j| l[j][i] * x[j] as f64).sum::<f64>();
    let room = ((budget - used) / d[i]).max(0.0).sqrt();
    let lo = (center - room).ceil() as i64;
    let hi = (center + room).floor() as i64;
    for xi in lo..=hi {
        x[i] = xi;
        let y = xi as f64 - center;
        let part = used + d[i] * y * y;
        if part > budget {
            continue;
        }
        if i == 0 {
            visit(x);
        } else {
            descend(i - 1, l, d, budget, part, x, visit);
        }
    }
    x[i] = 0;
}
