//! Small complex linear algebra helpers.
//!
//! Hermitian products are conjugate-linear in the first slot and linear in
//! the second: `<v, w> = sum conj(v_i) w_i`. The rank-one endomorphism
//! `v w^*` maps `x` to `v <w, x>`, i.e. it is the matrix `v w^H`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

pub type CMat = DMatrix<Complex64>;
pub type CVec = DVector<Complex64>;

pub const I: Complex64 = Complex64::new(0.0, 1.0);

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `<v, w>`, conjugate-linear in `v`.
pub fn hdot(v: &CVec, w: &CVec) -> Complex64 {
    v.iter().zip(w.iter()).map(|(a, b)| a.conj() * b).sum()
}

pub fn norm_sqr(v: &CVec) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

/// `v w^*` as a matrix.
pub fn rank_one(v: &CVec, w: &CVec) -> CMat {
    v * w.adjoint()
}

/// Frobenius pairing `tr(a^H b)`.
pub fn frobenius_inner(a: &CMat, b: &CMat) -> Complex64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

pub fn frobenius_norm_sqr(a: &CMat) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum()
}

pub fn trace(a: &CMat) -> Complex64 {
    a.diagonal().iter().sum()
}

/// Trace-free part `a - tr(a)/n id`.
pub fn trace_free(a: &CMat) -> CMat {
    let n = a.nrows();
    let mut out = a.clone();
    let shift = trace(a) / n as f64;
    for i in 0..n {
        out[(i, i)] -= shift;
    }
    out
}

pub fn scalar_matrix(n: usize, z: Complex64) -> CMat {
    CMat::from_diagonal_element(n, n, z)
}

pub fn basis_vector(n: usize, i: usize) -> CVec {
    let mut v = CVec::zeros(n);
    v[i] = c(1.0, 0.0);
    v
}

/// `E_ij`, the matrix unit.
pub fn matrix_unit(n: usize, i: usize, j: usize) -> CMat {
    let mut m = CMat::zeros(n, n);
    m[(i, j)] = c(1.0, 0.0);
    m
}

pub fn max_abs_diff(a: &CMat, b: &CMat) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn is_hermitian(a: &CMat, tol: f64) -> bool {
    max_abs_diff(a, &a.adjoint()) <= tol
}

pub fn is_skew_hermitian(a: &CMat, tol: f64) -> bool {
    max_abs_diff(a, &(-a.adjoint())) <= tol
}

pub fn random_gaussian_vec<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CVec {
    CVec::from_fn(n, |_, _| {
        c(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

pub fn random_gaussian_mat<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMat {
    CMat::from_fn(n, n, |_, _| {
        c(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

/// Haar-distributed element of SU(n): QR of a Ginibre matrix with the
/// phases of `R` moved into `Q`, then divided by an n-th root of the
/// determinant.
pub fn random_special_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMat {
    let qr = random_gaussian_mat(rng, n).qr();
    let (mut q, r) = qr.unpack();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { c(1.0, 0.0) };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    let det = q.determinant();
    let root = Complex64::from_polar(1.0, det.arg() / n as f64);
    q.map(|z| z / root)
}

/// Kronecker product `a ⊗ b`, with `a` indexing the outer blocks.
pub fn kron(a: &CMat, b: &CMat) -> CMat {
    let (p, q) = (b.nrows(), b.ncols());
    CMat::from_fn(a.nrows() * p, a.ncols() * q, |r, s| {
        a[(r / p, s / q)] * b[(r % p, s % q)]
    })
}
