//! Independent reference computations for the acceptance suite.
//!
//! Nothing here calls into `monopole-core`: every value is recomputed from
//! textbook formulas or by brute force so the suite compares two separate
//! implementations.

use nalgebra::DMatrix;
use num_rational::Rational64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type IntMat = Vec<Vec<i64>>;

pub fn pair(q: &IntMat, x: &[i64], y: &[i64]) -> i64 {
    (0..x.len()).map(|i| x[i] * (0..y.len()).map(|j| q[i][j] * y[j]).sum::<i64>()).sum()
}

fn matmul(a: &IntMat, b: &IntMat) -> IntMat {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

fn identity(n: usize) -> IntMat {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

/// Unimodular form in a scrambled basis, with a characteristic class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Form {
    pub q: IntMat,
    pub b2plus: usize,
    pub characteristic: Vec<i64>,
}

impl Form {
    pub fn b2(&self) -> usize {
        self.q.len()
    }
    pub fn signature(&self) -> i64 {
        2 * self.b2plus as i64 - self.b2() as i64
    }
}

/// `pos (1) + neg (-1) + hyperbolic H`, followed by `shuffles` random
/// elementary changes of basis.
pub fn scrambled_form(rng: &mut ChaCha8Rng, pos: usize, neg: usize, hyperbolic: usize, shuffles: usize) -> Form {
    let d = pos + neg;
    let b2 = d + 2 * hyperbolic;
    let mut q = vec![vec![0i64; b2]; b2];
    let mut c = vec![0i64; b2];
    for i in 0..d {
        q[i][i] = if i < pos { 1 } else { -1 };
        c[i] = 2 * rng.random_range(-2..=2i64) + 1;
    }
    for h in 0..hyperbolic {
        let i = d + 2 * h;
        q[i][i + 1] = 1;
        q[i + 1][i] = 1;
        c[i] = 2 * rng.random_range(-1..=1i64);
        c[i + 1] = 2 * rng.random_range(-1..=1i64);
    }
    // P^T Q P with P = E_1 ... E_s; a class with block coordinates c has
    // coordinates P^{-1} c
    let mut p = identity(b2);
    let mut p_inv = identity(b2);
    for _ in 0..shuffles {
        if b2 < 2 {
            break;
        }
        let i = rng.random_range(0..b2);
        let j = (i + rng.random_range(1..b2)) % b2;
        let s = if rng.random_bool(0.5) { 1 } else { -1 };
        let mut e = identity(b2);
        e[j][i] = s;
        let mut e_inv = identity(b2);
        e_inv[j][i] = -s;
        p = matmul(&p, &e);
        p_inv = matmul(&e_inv, &p_inv);
    }
    let pt: IntMat = (0..b2).map(|i| (0..b2).map(|j| p[j][i]).collect()).collect();
    let q_new = matmul(&matmul(&pt, &q), &p);
    let characteristic = (0..b2).map(|i| (0..b2).map(|j| p_inv[i][j] * c[j]).sum()).collect();
    Form { q: q_new, b2plus: pos + hyperbolic, characteristic }
}

pub fn random_form(rng: &mut ChaCha8Rng, max_b2: usize) -> Form {
    loop {
        let pos = rng.random_range(0..=max_b2);
        let neg = rng.random_range(0..=max_b2);
        let hyp = rng.random_range(0..=max_b2 / 2);
        let b2 = pos + neg + 2 * hyp;
        if (1..=max_b2).contains(&b2) {
            return scrambled_form(rng, pos, neg, hyp, 2 * b2);
        }
    }
}

pub fn random_class(rng: &mut ChaCha8Rng, b2: usize, r: i64) -> Vec<i64> {
    (0..b2).map(|_| rng.random_range(-r..=r)).collect()
}

/// Seiberg–Witten dimension `(c1(s ⊗ L)^2 - 2 chi - 3 sigma) / 4` on a
/// simply connected manifold, where `c1(s ⊗ L) = c1(s) + 2 c1(L)`.
pub fn seiberg_witten_dimension(f: &Form, spinc: &[i64], line: &[i64]) -> Rational64 {
    let c: Vec<i64> = spinc.iter().zip(line).map(|(a, b)| a + 2 * b).collect();
    let chi = 2 + f.b2() as i64;
    Rational64::new(pair(&f.q, &c, &c) - 2 * chi - 3 * f.signature(), 4)
}

/// `8k - 3(1 + b2+)`.
pub fn su2_instanton_dimension(k: i64, b2plus: usize) -> i64 {
    8 * k - 3 * (1 + b2plus as i64)
}

/// `min_t |t - κ|^2 + (n - 1)|κ|^2` with `κ = (1 - tau) t / n + lambda`,
/// minimized by golden-section search along `t = s lambda / |lambda|`.
pub fn schur_bound_numeric(n: usize, tau: f64, lambda_abs: f64) -> f64 {
    let nf = n as f64;
    let f = |s: f64| {
        let kappa = (1.0 - tau) * s / nf + lambda_abs;
        (s - kappa).powi(2) + (nf - 1.0) * kappa * kappa
    };
    let (mut lo, mut hi) = (-100.0 * lambda_abs.max(1.0), 100.0 * lambda_abs.max(1.0));
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..200 {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        }
    }
    f(0.5 * (lo + hi)).max(0.0).sqrt()
}

/// Row of a reduction listing.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ReductionRow {
    pub rank: u32,
    pub k: u32,
    pub c1: Vec<i64>,
    pub c2: i64,
    pub perp_rank: u32,
    pub perp_c1: Vec<i64>,
    pub perp_c2: i64,
    pub tau: (i64, i64),
    pub dim_un: i64,
    pub dim_asd: i64,
    pub total: i64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReductionProblem {
    pub form: Form,
    pub spinc: Vec<i64>,
    pub rank: u32,
    pub c1: Vec<i64>,
    pub c2: i64,
    pub c_trace: f64,
    pub c_plus: f64,
    pub c_minus: f64,
    pub g: Vec<Vec<Rational64>>,
    pub kmax: u32,
    pub dirac_multiplicity: i64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BruteForce {
    pub rows: Vec<ReductionRow>,
    pub pruned: usize,
    pub lattice_points: usize,
}

const SLACK: f64 = 1e-9;

fn dirac_index(f: &Form, rank: i64, c1: &[i64], c2: i64, s: &[i64]) -> i64 {
    let v = Rational64::new(pair(&f.q, c1, c1) - 2 * c2, 2)
        + Rational64::new(pair(&f.q, c1, s), 2)
        + Rational64::new(rank * (pair(&f.q, s, s) - f.signature()), 8);
    assert!(v.is_integer(), "Dirac index {v} is not integral");
    v.to_integer()
}

fn p1(f: &Form, rank: i64, c1: &[i64], c2: i64) -> i64 {
    (rank - 1) * pair(&f.q, c1, c1) - 2 * rank * c2
}

/// Every `c1(F)` in a coordinate box that contains the `G`-ball, every
/// `c2(F)` allowed by Chern–Weil, every rank and stratum.
pub fn brute_force_reductions(p: &ReductionProblem) -> BruteForce {
    let b2 = p.form.b2();
    let gf = DMatrix::from_fn(b2, b2, |i, j| *p.g[i][j].numer() as f64 / *p.g[i][j].denom() as f64);
    let lambda_min = gf.symmetric_eigenvalues().min();
    let r2 = (p.c_trace / (2.0 * std::f64::consts::PI)).powi(2);
    let reach = ((r2 / lambda_min).sqrt() + 1.0).ceil() as i64;

    let mut points = Vec::new();
    let total = (2 * reach + 1).pow(b2 as u32);
    for mut code in 0..total {
        let v: Vec<i64> = (0..b2)
            .map(|_| {
                let d = code % (2 * reach + 1);
                code /= 2 * reach + 1;
                d - reach
            })
            .collect();
        let mut q = Rational64::from_integer(0);
        for i in 0..b2 {
            for j in 0..b2 {
                q += p.g[i][j] * v[i] * v[j];
            }
        }
        let qf = *q.numer() as f64 / *q.denom() as f64;
        if qf <= r2 * (1.0 + SLACK) + SLACK {
            points.push(v);
        }
    }

    let euler = p.form.b2plus as i64 + 1;
    let big_n = i64::from(p.rank);
    let scale = 8.0 * std::f64::consts::PI.powi(2);
    let mut rows = Vec::new();
    let mut pruned = 0;
    for v in &points {
        let half = pair(&p.form.q, v, v) as f64 / 2.0;
        let lo = half - p.c_plus * p.c_plus / scale;
        let hi = half + p.c_minus * p.c_minus / scale;
        let lo = (lo - SLACK * lo.abs().max(1.0)).ceil() as i64;
        let hi = (hi + SLACK * hi.abs().max(1.0)).floor() as i64;
        for n in 1..p.rank {
            let ni = i64::from(n);
            for k in 0..=p.kmax {
                let c2_range: Vec<i64> = if n == 1 {
                    if lo <= 0 && 0 <= hi { vec![0] } else { vec![] }
                } else {
                    (lo..=hi).collect()
                };
                for c2 in c2_range {
                    let perp_c1: Vec<i64> = p.c1.iter().zip(v).map(|(a, b)| a - b).collect();
                    let perp_c2 = p.c2 - i64::from(k) - c2 - pair(&p.form.q, v, &perp_c1);
                    let perp_rank = p.rank - n;
                    if perp_rank == 1 && perp_c2 != 0 {
                        pruned += 1;
                        continue;
                    }
                    let dim_un = -2 * p1(&p.form, ni, v, c2) - ni * ni * euler
                        + p.dirac_multiplicity * dirac_index(&p.form, ni, v, c2, &p.spinc);
                    let m = i64::from(perp_rank);
                    let dim_asd = if perp_rank >= 2 {
                        -2 * p1(&p.form, m, &perp_c1, perp_c2) - (m * m - 1) * euler
                    } else {
                        0
                    };
                    let g = gcd(big_n - ni, big_n);
                    rows.push(ReductionRow {
                        rank: n,
                        k,
                        c1: v.clone(),
                        c2,
                        perp_rank,
                        perp_c1,
                        perp_c2,
                        tau: ((big_n - ni) / g, big_n / g),
                        dim_un,
                        dim_asd,
                        total: dim_un + dim_asd,
                    });
                }
            }
        }
    }
    rows.sort();
    BruteForce { rows, pruned, lattice_points: points.len() }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 { a.abs() } else { gcd(b, a % b) }
}

/// Small positive definite rational metric `(A^T A + D) / d`.
pub fn random_metric(rng: &mut ChaCha8Rng, b2: usize) -> Vec<Vec<Rational64>> {
    let a: IntMat = (0..b2).map(|_| (0..b2).map(|_| rng.random_range(-1..=1)).collect()).collect();
    let d = rng.random_range(1..=3i64);
    (0..b2)
        .map(|i| {
            (0..b2)
                .map(|j| {
                    let ata: i64 = (0..b2).map(|k| a[k][i] * a[k][j]).sum();
                    let diag = if i == j { rng.random_range(1..=3) } else { 0 };
                    Rational64::new(ata + diag, d)
                })
                .collect()
        })
        .collect()
}

pub fn random_reduction_problem(rng: &mut ChaCha8Rng) -> ReductionProblem {
    let form = random_form(rng, 4);
    let b2 = form.b2();
    let c_trace = 2.0 * std::f64::consts::PI * rng.random_range(0.3..3.0);
    ReductionProblem {
        spinc: form.characteristic.clone(),
        rank: rng.random_range(2..=4),
        c1: random_class(rng, b2, 2),
        c2: rng.random_range(-2..=6),
        c_trace,
        c_plus: rng.random_range(0.0..15.0),
        c_minus: rng.random_range(0.0..15.0),
        g: random_metric(rng, b2),
        kmax: rng.random_range(0..=2),
        dirac_multiplicity: rng.random_range(1..=2),
        form,
    }
}
