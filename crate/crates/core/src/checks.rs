//! Randomized property suites for the `mu` map and the Kähler pointwise
//! algebra.
//!
//! Every check runs on its own ChaCha8 stream derived from the suite seed
//! and the check's name, `n` and `tau`, so results do not depend on how
//! the checks are scheduled. A check records its largest error and the
//! first sample that exceeds the tolerance.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::kaehler::{self, PointwiseField};
use crate::linalg::{self, c, CMat, CVec};
use crate::mu_kernel::{self, BlockEndo, SpinorPair};
use crate::optim::MultistartConfig;

#[derive(Debug, Clone, Serialize)]
pub struct Counterexample {
    pub sample: usize,
    pub error: f64,
    pub spinors: Vec<SpinorPair>,
    pub note: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub n: usize,
    pub tau: f64,
    pub samples: usize,
    pub max_error: f64,
    pub tolerance: f64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    fn new(suite: &str, seed: u64, checks: Vec<CheckResult>) -> Self {
        SuiteReport {
            suite: suite.into(),
            seed,
            passed: checks.iter().all(|c| c.passed),
            checks,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// One sample: the error and the inputs that produced it.
struct Sample {
    error: f64,
    spinors: Vec<SpinorPair>,
    note: String,
}

impl Sample {
    fn new(error: f64, spinors: Vec<SpinorPair>) -> Self {
        Sample { error, spinors, note: String::new() }
    }
}

struct Cell<F> {
    name: &'static str,
    n: usize,
    tau: f64,
    samples: usize,
    tolerance: f64,
    run: F,
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// FNV-1a over the cell's name, `n` and `tau`, so a cell's samples do not
/// depend on which other cells run.
fn stream_id(name: &str, n: usize, tau: f64) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let bytes = name.bytes().chain(n.to_le_bytes()).chain(tau.to_bits().to_le_bytes());
    for b in bytes {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

/// Runs the cells in parallel, each on its own stream.
fn run_cells<F>(seed: u64, cells: Vec<Cell<F>>) -> Vec<CheckResult>
where
    F: Fn(&mut ChaCha8Rng, usize, f64) -> Sample + Sync + Send,
{
    cells
        .into_par_iter()
        .map(|cell| {
            let mut rng = rng_for(seed, stream_id(cell.name, cell.n, cell.tau));
            let mut max_error: f64 = 0.0;
            let mut counterexample = None;
            for k in 0..cell.samples {
                let s = (cell.run)(&mut rng, cell.n, cell.tau);
                let bad = !(s.error <= cell.tolerance);
                if bad && counterexample.is_none() {
                    counterexample = Some(Counterexample {
                        sample: k,
                        error: s.error,
                        spinors: s.spinors,
                        note: s.note,
                    });
                }
                max_error = if s.error.is_nan() { f64::NAN } else { max_error.max(s.error) };
            }
            CheckResult {
                name: cell.name.into(),
                n: cell.n,
                tau: cell.tau,
                samples: cell.samples,
                max_error,
                tolerance: cell.tolerance,
                passed: counterexample.is_none(),
                note: None,
                counterexample,
            }
        })
        .collect()
}

fn random_spinor<R: Rng + ?Sized>(rng: &mut R, n: usize) -> SpinorPair {
    SpinorPair {
        alpha: linalg::random_gaussian_vec(rng, n),
        beta: linalg::random_gaussian_vec(rng, n),
    }
}

fn random_endo<R: Rng + ?Sized>(rng: &mut R, n: usize) -> BlockEndo {
    BlockEndo::from_matrix(linalg::random_gaussian_mat(rng, 2 * n)).expect("even size")
}

fn mu1(tau: f64, psi: &SpinorPair) -> BlockEndo {
    mu_kernel::mu(tau, psi, psi).expect("same n")
}

fn mu2(tau: f64, psi: &SpinorPair, phi: &SpinorPair) -> BlockEndo {
    mu_kernel::mu(tau, psi, phi).expect("same n")
}

#[derive(Debug, Clone)]
pub struct MuSuiteConfig {
    pub seed: u64,
    pub ns: Vec<usize>,
    pub taus: Vec<f64>,
    /// per `(check, n, tau)` cell
    pub samples: usize,
    /// per `n` for the zero-divisor identity and bound
    pub zero_divisor_samples: usize,
    pub tolerance: f64,
}

impl Default for MuSuiteConfig {
    fn default() -> Self {
        MuSuiteConfig {
            seed: 0,
            ns: (1..=6).collect(),
            taus: vec![0.0, 0.25, 0.5, 1.0],
            samples: 10_000,
            zero_divisor_samples: 100_000,
            tolerance: 1e-10,
        }
    }
}

type SampleFn = fn(&mut ChaCha8Rng, usize, f64) -> Sample;

fn quartic_identity(rng: &mut ChaCha8Rng, n: usize, tau: f64) -> Sample {
    let psi = random_spinor(rng, n);
    let x = mu_kernel::outer(&psi, &psi).expect("same n");
    let expected = mu_kernel::project_p(&x).frobenius_norm_sqr()
        + tau * mu_kernel::project_q(&x).frobenius_norm_sqr();
    let got = mu_kernel::quartic_form(tau, &psi);
    let scale = psi.norm_sqr().powi(2);
    Sample::new((got - expected).abs() / scale, vec![psi])
}

fn block_formula(rng: &mut ChaCha8Rng, n: usize, _tau: f64) -> Sample {
    let psi = random_spinor(rng, n);
    let x = mu_kernel::outer(&psi, &psi).expect("same n");
    let err = mu_kernel::p_block_formula(&psi).sub(&mu_kernel::project_p(&x)).frobenius_norm();
    Sample::new(err / psi.norm_sqr(), vec![psi])
}

fn orthogonality(rng: &mut ChaCha8Rng, n: usize, _tau: f64) -> Sample {
    let x = random_endo(rng, n);
    let y = random_endo(rng, n);
    let (px, qx) = (mu_kernel::project_p(&x), mu_kernel::project_q(&x));
    let (py, qy) = (mu_kernel::project_p(&y), mu_kernel::project_q(&y));
    let scale = x.frobenius_norm() * y.frobenius_norm();
    let cross = px.inner(&qy).norm() / scale;
    let idem_p = mu_kernel::project_p(&px).sub(&px).frobenius_norm() / x.frobenius_norm();
    let idem_q = mu_kernel::project_q(&qx).sub(&qx).frobenius_norm() / x.frobenius_norm();
    let self_adj = ((px.inner(&y) - x.inner(&py)).norm() + (qx.inner(&y) - x.inner(&qy)).norm()) / scale;
    let mut s = Sample::new(cross.max(idem_p).max(idem_q).max(self_adj), Vec::new());
    s.note = format!("cross {cross:e}, P^2-P {idem_p:e}, Q^2-Q {idem_q:e}, adjointness {self_adj:e}");
    s
}

fn hermiticity(rng: &mut ChaCha8Rng, n: usize, tau: f64) -> Sample {
    let psi = random_spinor(rng, n);
    let phi = random_spinor(rng, n);
    let m = mu1(tau, &psi);
    let mut diag = m.sub(&m.adjoint()).frobenius_norm() / psi.norm_sqr();
    if tau == 0.0 {
        for (a, b) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            diag = diag.max(linalg::trace(&m.block(a, b)).norm() / psi.norm_sqr());
        }
    }
    let swap = mu2(tau, &psi, &phi).adjoint().sub(&mu2(tau, &phi, &psi)).frobenius_norm()
        / (psi.norm() * phi.norm());
    Sample::new(diag.max(swap), vec![psi, phi])
}

fn monotonicity(rng: &mut ChaCha8Rng, n: usize, tau: f64) -> Sample {
    let psi = random_spinor(rng, n);
    let bigger = tau + rng.random::<f64>();
    let scale = psi.norm_sqr();
    let lo = mu1(tau, &psi).frobenius_norm();
    let hi = mu1(bigger, &psi).frobenius_norm();
    let x = mu_kernel::outer(&psi, &psi).expect("same n");
    let split = mu_kernel::project_p(&x).frobenius_norm_sqr()
        + tau * tau * mu_kernel::project_q(&x).frobenius_norm_sqr();
    let pythagoras = (lo * lo - split).abs() / (scale * scale);
    let mut s = Sample::new(((lo - hi).max(0.0) / scale).max(pythagoras), vec![psi]);
    s.note = format!("|mu({tau})| = {lo}, |mu({bigger})| = {hi}");
    s
}

fn equivariance(rng: &mut ChaCha8Rng, n: usize, tau: f64) -> Sample {
    let psi = random_spinor(rng, n);
    let phi = random_spinor(rng, n);
    let g = linalg::kron(&linalg::random_special_unitary(rng, 2), &linalg::random_special_unitary(rng, n));
    let act = |p: &SpinorPair| SpinorPair::from_stacked(&(&g * p.stacked()));
    let lhs = mu2(tau, &act(&psi), &act(&phi));
    let rhs = mu2(tau, &psi, &phi).conjugate_by(&g);
    Sample::new(lhs.sub(&rhs).frobenius_norm() / (psi.norm() * phi.norm()), vec![psi, phi])
}

fn phase_invariance(rng: &mut ChaCha8Rng, n: usize, tau: f64) -> Sample {
    let psi = random_spinor(rng, n);
    let phi = random_spinor(rng, n);
    let z = Complex64::from_polar(1.0, rng.random::<f64>() * std::f64::consts::TAU);
    let single = mu1(tau, &psi.scale(z)).sub(&mu1(tau, &psi)).frobenius_norm() / psi.norm_sqr();
    let pair = mu2(tau, &psi.scale(z), &phi.scale(z)).sub(&mu2(tau, &psi, &phi)).frobenius_norm()
        / (psi.norm() * phi.norm());
    Sample::new(single.max(pair), vec![psi, phi])
}

fn zero_divisor_identity(rng: &mut ChaCha8Rng, n: usize, _tau: f64) -> Sample {
    let alpha = linalg::random_gaussian_vec(rng, n);
    let beta = linalg::random_gaussian_vec(rng, n);
    let lhs = linalg::frobenius_norm_sqr(&mu_kernel::traceless_outer(&alpha, &beta));
    let (a2, b2) = (linalg::norm_sqr(&alpha), linalg::norm_sqr(&beta));
    let tr = linalg::trace(&linalg::rank_one(&alpha, &beta));
    let rhs = a2 * b2 - tr.norm_sqr() / n as f64;
    let floor = (1.0 - 1.0 / n as f64) * a2 * b2;
    let identity = (lhs - rhs).abs() / (a2 * b2);
    let below = (floor - lhs).max(0.0) / (a2 * b2);
    let spinor = SpinorPair { alpha, beta };
    let mut s = Sample::new(identity.max(below), vec![spinor]);
    s.note = format!("identity {identity:e}, below floor {below:e}");
    s
}

/// Integer sample with `n^2 ||(alpha beta^*)_0||^2` and
/// `n (n - 1) |alpha|^2 |beta|^2` computed exactly.
fn zero_divisor_bound_exact(rng: &mut ChaCha8Rng, n: usize, _tau: f64) -> Sample {
    const RANGE: i64 = 1 << 12;
    let draw = |rng: &mut ChaCha8Rng| -> Vec<(i128, i128)> {
        (0..n)
            .map(|_| (rng.random_range(-RANGE..=RANGE) as i128, rng.random_range(-RANGE..=RANGE) as i128))
            .collect()
    };
    let a = draw(rng);
    let b = draw(rng);
    // entry (i, j) of alpha beta^* is a_i conj(b_j)
    let entry = |i: usize, j: usize| -> (i128, i128) {
        let (ar, ai) = a[i];
        let (br, bi) = b[j];
        (ar * br + ai * bi, ai * br - ar * bi)
    };
    let tr = (0..n).map(|i| entry(i, i)).fold((0, 0), |s, e| (s.0 + e.0, s.1 + e.1));
    let nn = n as i128;
    let mut lhs: i128 = 0;
    for i in 0..n {
        for j in 0..n {
            let (mut re, mut im) = entry(i, j);
            re *= nn;
            im *= nn;
            if i == j {
                re -= tr.0;
                im -= tr.1;
            }
            lhs += re * re + im * im;
        }
    }
    let norm = |v: &[(i128, i128)]| v.iter().map(|(r, i)| r * r + i * i).sum::<i128>();
    let rhs = nn * (nn - 1) * norm(&a) * norm(&b);
    let to_vec = |v: &[(i128, i128)]| CVec::from_iterator(n, v.iter().map(|&(r, i)| c(r as f64, i as f64)));
    let mut s = Sample::new(if lhs >= rhs { 0.0 } else { 1.0 }, vec![SpinorPair { alpha: to_vec(&a), beta: to_vec(&b) }]);
    s.note = format!("n^2 |(ab*)_0|^2 = {lhs}, n(n-1)|a|^2|b|^2 = {rhs}");
    s
}

/// Selects which parts of the `mu` suite to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MuPart {
    All,
    Quartic,
    Block,
    Orthogonality,
    Hermiticity,
    Monotonicity,
    Equivariance,
    Phase,
    ZeroDivisor,
}

impl std::str::FromStr for MuPart {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "all" => MuPart::All,
            "quartic" => MuPart::Quartic,
            "block" => MuPart::Block,
            "orthogonality" => MuPart::Orthogonality,
            "hermiticity" => MuPart::Hermiticity,
            "monotonicity" => MuPart::Monotonicity,
            "equivariance" => MuPart::Equivariance,
            "phase" => MuPart::Phase,
            "zero-divisor" => MuPart::ZeroDivisor,
            other => {
                return Err(format!(
                    "unknown suite {other:?}; expected all, quartic, block, orthogonality, hermiticity, \
                     monotonicity, equivariance, phase or zero-divisor"
                ))
            }
        })
    }
}

pub fn mu_suite(cfg: &MuSuiteConfig, part: MuPart) -> SuiteReport {
    let checks: [(MuPart, &'static str, SampleFn); 7] = [
        (MuPart::Quartic, "quartic_identity", quartic_identity),
        (MuPart::Block, "block_formula", block_formula),
        (MuPart::Orthogonality, "projection_orthogonality", orthogonality),
        (MuPart::Hermiticity, "hermiticity", hermiticity),
        (MuPart::Monotonicity, "norm_monotone_in_tau", monotonicity),
        (MuPart::Equivariance, "su2_sun_equivariance", equivariance),
        (MuPart::Phase, "phase_invariance", phase_invariance),
    ];
    let want = |p: MuPart| part == MuPart::All || part == p;
    let mut cells = Vec::new();
    for &(p, name, run) in &checks {
        if !want(p) {
            continue;
        }
        for &n in &cfg.ns {
            for &tau in &cfg.taus {
                cells.push(Cell { name, n, tau, samples: cfg.samples, tolerance: cfg.tolerance, run });
            }
        }
    }
    for &n in &cfg.ns {
        if !want(MuPart::ZeroDivisor) {
            break;
        }
        cells.push(Cell {
            name: "zero_divisor_identity",
            n,
            tau: 0.0,
            samples: cfg.zero_divisor_samples,
            tolerance: cfg.tolerance,
            run: zero_divisor_identity as SampleFn,
        });
        cells.push(Cell {
            name: "zero_divisor_bound_exact",
            n,
            tau: 0.0,
            samples: cfg.zero_divisor_samples,
            tolerance: 0.0,
            run: zero_divisor_bound_exact as SampleFn,
        });
    }
    SuiteReport::new("mu", cfg.seed, run_cells(cfg.seed, cells))
}

#[derive(Debug, Clone)]
pub struct KaehlerSuiteConfig {
    pub seed: u64,
    /// per `(check, n, tau)` cell for the algebraic checks
    pub samples: usize,
    /// per `n` for the decoupling inequality
    pub decoupling_samples: usize,
    pub multistart: MultistartConfig,
    pub split_tolerance: f64,
}

impl Default for KaehlerSuiteConfig {
    fn default() -> Self {
        KaehlerSuiteConfig {
            seed: 0,
            samples: 10_000,
            decoupling_samples: 1_000_000 / 6 + 1,
            multistart: MultistartConfig { starts: 16, ..Default::default() },
            split_tolerance: 1e-9,
        }
    }
}

fn mu_kaehler_agreement(rng: &mut ChaCha8Rng, n: usize, tau: f64) -> Sample {
    let psi = random_spinor(rng, n);
    let k = kaehler::mu_kaehler(&psi.alpha, &psi.beta, tau).expect("same n");
    Sample::new(k.max_abs_diff(&mu1(tau, &psi)), vec![psi])
}

fn brace_properties(rng: &mut ChaCha8Rng, n: usize, tau: f64) -> Sample {
    let f = linalg::random_gaussian_mat(rng, n);
    let g = linalg::random_gaussian_mat(rng, n);
    let z = c(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5);
    let scale = f.norm() + g.norm();
    let linear = (kaehler::brace(&(&f * z + &g), tau) - (kaehler::brace(&f, tau) * z + kaehler::brace(&g, tau))).norm();
    let unit = (kaehler::brace(&f, 1.0) - &f).norm();
    let trace = (linalg::trace(&kaehler::brace(&f, tau)) - linalg::trace(&f) * tau).norm();
    let mut s = Sample::new(linear.max(unit).max(trace) / scale, Vec::new());
    s.note = format!("linearity {linear:e}, tau=1 {unit:e}, trace {trace:e}");
    s
}

fn clifford_structure(rng: &mut ChaCha8Rng, _n: usize, _tau: f64) -> Sample {
    let r: f64 = rng.random::<f64>() - 0.5;
    let eta02 = c(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5);
    let imaginary = kaehler::clifford_sd(c(0.0, r), kaehler::imaginary_form_20(eta02), eta02);
    let real = kaehler::clifford_sd(c(r, 0.0), eta02.conj(), eta02);
    let scale = 4.0 * (r.abs() + eta02.norm());
    let tr = linalg::trace(&imaginary).norm() + linalg::trace(&real).norm();
    let herm = (&imaginary - imaginary.adjoint()).norm();
    let skew = (&real + real.adjoint()).norm();
    let mut s = Sample::new((tr + herm + skew) / scale, Vec::new());
    s.note = format!("trace {tr:e}, imaginary forms non-Hermitian {herm:e}, real forms non-skew {skew:e}");
    s
}

fn random_skew_hermitian<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMat {
    let a = linalg::random_gaussian_mat(rng, n);
    (&a - a.adjoint()) * c(0.5, 0.0)
}

/// Alternates fields solving the equations with fields perturbed in one or
/// both components by at least `1e-3`.
fn split_verdicts(rng: &mut ChaCha8Rng, n: usize, tau: f64, tol: f64) -> Sample {
    let psi = random_spinor(rng, n);
    let eta02 = c(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5);
    let eta_lambda = c(0.0, rng.random::<f64>() - 0.5);
    let mut field = PointwiseField::satisfying(psi.alpha.clone(), psi.beta.clone(), eta02, eta_lambda, tau)
        .expect("valid shapes");
    let kind = rng.random_range(0..4u8);
    let size = 10f64.powf(rng.random_range(-3.0..0.0));
    if kind & 1 == 1 {
        let d = linalg::random_gaussian_mat(rng, n);
        field.f02 += &d * c(size / d.norm(), 0.0);
    }
    if kind & 2 == 2 {
        let d = random_skew_hermitian(rng, n);
        field.lambda_f += &d * c(size / d.norm(), 0.0);
    }
    let should_hold = kind == 0;
    let v = kaehler::verify_curvature_split(&field, tol);
    let wrong = v.matrix_satisfied != should_hold || v.split_satisfied != should_hold;
    let mut s = Sample::new(if wrong { 1.0 } else { 0.0 }, vec![psi]);
    s.note = format!(
        "perturbation {kind} of size {size:e}: matrix {} ({:e}), split {} ({:e}, {:e})",
        v.matrix_satisfied, v.matrix_residual, v.split_satisfied, v.f02_residual, v.lambda_residual
    );
    s
}

fn decoupling(rng: &mut ChaCha8Rng, n: usize, _tau: f64) -> Sample {
    let psi = random_spinor(rng, n);
    let tau: f64 = rng.random();
    let b = kaehler::decoupling_bound(&psi.alpha, &psi.beta, tau).expect("tau in range");
    let scale = psi.alpha.norm_squared() * psi.beta.norm_squared();
    let mut s = Sample::new((b.rhs - b.lhs).max(0.0) / scale, vec![psi]);
    s.note = format!("tau {tau}, lhs {}, rhs {}", b.lhs, b.rhs);
    s
}

pub const IMPOSSIBILITY_RELATIVE_TOLERANCE: f64 = 1e-4;

fn impossibility_checks(cfg: &KaehlerSuiteConfig) -> crate::Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for n in [2usize, 3] {
        for tau in [0.25, 0.5, 1.0] {
            for lambda in [c(1.0, 0.0), c(0.0, 2.0), c(0.0, 0.0)] {
                let r = kaehler::impossibility_margin(n, tau, lambda, &cfg.multistart, mu_kernel::POSITIVITY_FLOOR)?;
                let (error, tolerance) = if lambda.norm() > 0.0 {
                    (r.relative_deviation, IMPOSSIBILITY_RELATIVE_TOLERANCE)
                } else {
                    (r.optimization.estimate, 0.0)
                };
                let passed = error <= tolerance
                    && r.optimization.success.unwrap_or(true);
                let argmin = match &r.optimization.argmin {
                    mu_kernel::Argmin::Single(p) => vec![p.clone()],
                    mu_kernel::Argmin::Pair { psi, phi } => vec![psi.clone(), phi.clone()],
                };
                out.push(CheckResult {
                    name: "impossibility_margin".into(),
                    n,
                    tau,
                    samples: cfg.multistart.starts,
                    max_error: error,
                    tolerance,
                    passed,
                    note: Some(format!(
                        "lambda {}{:+}i, estimate {}, closed form {}",
                        lambda.re, lambda.im, r.optimization.estimate, r.closed_form
                    )),
                    counterexample: (!passed).then(|| Counterexample {
                        sample: 0,
                        error,
                        spinors: argmin,
                        note: "best start".into(),
                    }),
                });
            }
        }
    }
    Ok(out)
}

/// Selects which parts of the Kähler suite to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KaehlerPart {
    All,
    MuAgreement,
    Split,
    Decoupling,
    Impossibility,
}

impl std::str::FromStr for KaehlerPart {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "all" => KaehlerPart::All,
            "mu" => KaehlerPart::MuAgreement,
            "split" => KaehlerPart::Split,
            "decoupling" => KaehlerPart::Decoupling,
            "impossibility" => KaehlerPart::Impossibility,
            other => return Err(format!("unknown suite {other:?}; expected all, mu, split, decoupling or impossibility")),
        })
    }
}

pub fn kaehler_suite(cfg: &KaehlerSuiteConfig, part: KaehlerPart) -> crate::Result<SuiteReport> {
    let want = |p: KaehlerPart| part == KaehlerPart::All || part == p;
    let mut cells: Vec<Cell<Box<dyn Fn(&mut ChaCha8Rng, usize, f64) -> Sample + Sync + Send>>> = Vec::new();
    if want(KaehlerPart::MuAgreement) {
        for n in 1..=5 {
            for tau in [0.0, 0.25, 1.0] {
                cells.push(Cell { name: "mu_kaehler_agreement", n, tau, samples: cfg.samples, tolerance: 1e-12, run: Box::new(mu_kaehler_agreement) });
                cells.push(Cell { name: "brace_properties", n, tau, samples: cfg.samples, tolerance: 1e-12, run: Box::new(brace_properties) });
            }
        }
        cells.push(Cell { name: "clifford_structure", n: 1, tau: 0.0, samples: cfg.samples, tolerance: 1e-12, run: Box::new(clifford_structure) });
    }
    if want(KaehlerPart::Split) {
        let tol = cfg.split_tolerance;
        for n in 1..=5 {
            for tau in [0.0, 0.25, 0.5, 1.0] {
                cells.push(Cell {
                    name: "curvature_split_verdict",
                    n,
                    tau,
                    samples: cfg.samples,
                    tolerance: 0.0,
                    run: Box::new(move |rng, n, tau| split_verdicts(rng, n, tau, tol)),
                });
            }
        }
    }
    if want(KaehlerPart::Decoupling) {
        for n in 1..=6 {
            cells.push(Cell { name: "decoupling_inequality", n, tau: f64::NAN, samples: cfg.decoupling_samples, tolerance: 1e-12, run: Box::new(decoupling) });
        }
    }
    let mut checks = run_cells(cfg.seed, cells);
    if want(KaehlerPart::Impossibility) {
        checks.extend(impossibility_checks(cfg)?);
    }
    Ok(SuiteReport::new("kaehler", cfg.seed, checks))
}
