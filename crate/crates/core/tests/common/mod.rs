#![allow(dead_code)]

use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type IntMat = Vec<Vec<i64>>;

pub fn matmul(a: &IntMat, b: &IntMat) -> IntMat {
    let n = a.len();
    let m = b[0].len();
    (0..n)
        .map(|i| (0..m).map(|j| (0..b.len()).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

pub fn transpose(a: &IntMat) -> IntMat {
    (0..a[0].len()).map(|j| a.iter().map(|row| row[j]).collect()).collect()
}

pub fn matvec(a: &IntMat, v: &[i64]) -> Vec<i64> {
    a.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

pub fn identity(n: usize) -> IntMat {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

pub fn pair(q: &IntMat, x: &[i64], y: &[i64]) -> i64 {
    x.iter().zip(matvec(q, y)).map(|(a, b)| a * b).sum()
}

/// A unimodular form `P^T Q P` built from `(±1)` and hyperbolic blocks `Q`,
/// with a characteristic class expressed in the new basis.
#[derive(Debug, Clone)]
pub struct RandomForm {
    pub form: IntMat,
    pub b2plus: usize,
    pub characteristic: Vec<i64>,
    /// `P`, mapping new coordinates to block coordinates
    pub basis: IntMat,
    pub basis_inv: IntMat,
}

pub fn random_form(rng: &mut ChaCha8Rng, max_b2: usize) -> RandomForm {
    let mut diag_blocks: Vec<i64> = Vec::new();
    let mut hyperbolic = 0usize;
    let target = rng.random_range(1..=max_b2);
    while diag_blocks.len() + 2 * hyperbolic < target {
        let room = target - diag_blocks.len() - 2 * hyperbolic;
        if room >= 2 && rng.random_bool(0.3) {
            hyperbolic += 1;
        } else {
            diag_blocks.push(if rng.random_bool(0.5) { 1 } else { -1 });
        }
    }
    let b2 = diag_blocks.len() + 2 * hyperbolic;
    let mut q = vec![vec![0i64; b2]; b2];
    let mut c = vec![0i64; b2];
    for (i, &d) in diag_blocks.iter().enumerate() {
        q[i][i] = d;
        c[i] = 2 * rng.random_range(-2..=2) + 1;
    }
    for h in 0..hyperbolic {
        let i = diag_blocks.len() + 2 * h;
        q[i][i + 1] = 1;
        q[i + 1][i] = 1;
        c[i] = 2 * rng.random_range(-1..=1);
        c[i + 1] = 2 * rng.random_range(-1..=1);
    }
    let b2plus = diag_blocks.iter().filter(|&&d| d > 0).count() + hyperbolic;

    let mut p = identity(b2);
    let mut p_inv = identity(b2);
    if b2 > 1 {
        for _ in 0..b2 {
            let i = rng.random_range(0..b2);
            let mut j = rng.random_range(0..b2 - 1);
            if j >= i {
                j += 1;
            }
            let s = if rng.random_bool(0.5) { 1 } else { -1 };
            // new e_i = e_i + s e_j
            let mut e = identity(b2);
            e[j][i] = s;
            let mut e_inv = identity(b2);
            e_inv[j][i] = -s;
            p = matmul(&p, &e);
            p_inv = matmul(&e_inv, &p_inv);
        }
    }
    let form = matmul(&matmul(&transpose(&p), &q), &p);
    let characteristic = matvec(&p_inv, &c);
    RandomForm { form, b2plus, characteristic, basis: p, basis_inv: p_inv }
}

pub fn random_class(rng: &mut ChaCha8Rng, b2: usize, r: i64) -> Vec<i64> {
    (0..b2).map(|_| rng.random_range(-r..=r)).collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `<ch(E) e^{c/2} Â, [X]>` from the textbook degree-four expansion.
pub fn dirac_index_oracle(q: &IntMat, sigma: i64, rank: i64, c1: &[i64], c2: i64, spinc: &[i64]) -> Rational64 {
    Rational64::new(pair(q, c1, c1) - 2 * c2, 2)
        + Rational64::new(pair(q, c1, spinc), 2)
        + Rational64::new(rank * (pair(q, spinc, spinc) - sigma), 8)
}

pub fn sigma(q: &IntMat, b2plus: usize) -> i64 {
    2 * b2plus as i64 - q.len() as i64
}
