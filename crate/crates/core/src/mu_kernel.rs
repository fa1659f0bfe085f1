//! The quadratic map `mu_{0,tau}` on `C^2 ⊗ C^n`.
//!
//! A spinor `Psi = e1 ⊗ alpha + e2 ⊗ beta` is stored as the pair
//! `(alpha, beta)`; endomorphisms of `C^2 ⊗ C^n` are 2x2 arrays of n x n
//! blocks, stored as one `2n x 2n` matrix whose `(a, b)` block is rows
//! `a n .. (a+1) n`, columns `b n .. (b+1) n`. Under this layout `u ⊗ v`
//! is the Kronecker product `kron(u, v)`.
//!
//! `P` projects onto `sl(C^2) ⊗ sl(C^n)` and `Q` onto `sl(C^2) ⊗ C id`;
//! `mu(tau, Psi, Phi) = P(Psi Phi^*) + tau Q(Psi Phi^*)`. All norms are
//! Frobenius norms.

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{self, CMat, CVec};
use crate::optim::{self, Domain, MultistartConfig, Objective};
use crate::warning::Warning;

/// Default lower threshold a positive margin has to clear.
pub const POSITIVITY_FLOOR: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq)]
pub struct SpinorPair {
    pub alpha: CVec,
    pub beta: CVec,
}

impl SpinorPair {
    pub fn new(alpha: CVec, beta: CVec) -> Result<Self> {
        if alpha.len() != beta.len() {
            return Err(Error::DimensionMismatch {
                field: "spinor.beta",
                expected: alpha.len(),
                found: beta.len(),
            });
        }
        if alpha.is_empty() {
            return Err(Error::invalid("spinor", "n must be at least 1"));
        }
        Ok(SpinorPair { alpha, beta })
    }

    pub fn zero(n: usize) -> Self {
        SpinorPair {
            alpha: CVec::zeros(n),
            beta: CVec::zeros(n),
        }
    }

    pub fn n(&self) -> usize {
        self.alpha.len()
    }

    /// `(alpha, beta)` as one vector of length `2n`.
    pub fn stacked(&self) -> CVec {
        let n = self.n();
        CVec::from_fn(2 * n, |i, _| if i < n { self.alpha[i] } else { self.beta[i - n] })
    }

    pub fn from_stacked(v: &CVec) -> Self {
        let n = v.len() / 2;
        SpinorPair {
            alpha: v.rows(0, n).into_owned(),
            beta: v.rows(n, n).into_owned(),
        }
    }

    /// Real coordinates `(Re alpha, Im alpha, Re beta, Im beta)` interleaved
    /// per complex entry.
    pub fn to_real(&self) -> Vec<f64> {
        self.stacked().iter().flat_map(|z| [z.re, z.im]).collect()
    }

    pub fn from_real(x: &[f64]) -> Self {
        let v = CVec::from_fn(x.len() / 2, |i, _| Complex64::new(x[2 * i], x[2 * i + 1]));
        Self::from_stacked(&v)
    }

    pub fn norm_sqr(&self) -> f64 {
        linalg::norm_sqr(&self.alpha) + linalg::norm_sqr(&self.beta)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, z: Complex64) -> Self {
        SpinorPair {
            alpha: &self.alpha * z,
            beta: &self.beta * z,
        }
    }

    /// Hermitian product of the stacked vectors.
    pub fn hdot(&self, other: &SpinorPair) -> Complex64 {
        linalg::hdot(&self.alpha, &other.alpha) + linalg::hdot(&self.beta, &other.beta)
    }
}

impl Serialize for SpinorPair {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            alpha: Vec<[f64; 2]>,
            beta: Vec<[f64; 2]>,
        }
        let conv = |v: &CVec| v.iter().map(|z| [z.re, z.im]).collect();
        Repr {
            alpha: conv(&self.alpha),
            beta: conv(&self.beta),
        }
        .serialize(s)
    }
}

/// An element of `gl(C^2 ⊗ C^n)` in block form.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockEndo {
    n: usize,
    matrix: CMat,
}

impl BlockEndo {
    pub fn zero(n: usize) -> Self {
        BlockEndo { n, matrix: CMat::zeros(2 * n, 2 * n) }
    }

    pub fn identity(n: usize) -> Self {
        BlockEndo { n, matrix: CMat::identity(2 * n, 2 * n) }
    }

    pub fn from_matrix(matrix: CMat) -> Result<Self> {
        let (r, c) = matrix.shape();
        if r != c || r % 2 != 0 || r == 0 {
            return Err(Error::invalid(
                "block_endo",
                format!("expected a square matrix of even size, got {r}x{c}"),
            ));
        }
        Ok(BlockEndo { n: r / 2, matrix })
    }

    /// Assembles `[[m11, m12], [m21, m22]]`.
    pub fn from_blocks(m11: &CMat, m12: &CMat, m21: &CMat, m22: &CMat) -> Result<Self> {
        let n = m11.nrows();
        for (name, b) in [("m11", m11), ("m12", m12), ("m21", m21), ("m22", m22)] {
            if b.shape() != (n, n) {
                return Err(Error::invalid(
                    "block_endo",
                    format!("block {name} has shape {:?}, expected ({n}, {n})", b.shape()),
                ));
            }
        }
        let mut matrix = CMat::zeros(2 * n, 2 * n);
        matrix.view_mut((0, 0), (n, n)).copy_from(m11);
        matrix.view_mut((0, n), (n, n)).copy_from(m12);
        matrix.view_mut((n, 0), (n, n)).copy_from(m21);
        matrix.view_mut((n, n), (n, n)).copy_from(m22);
        Ok(BlockEndo { n, matrix })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &CMat {
        &self.matrix
    }

    /// Block `(a, b)` with `a, b` in `{0, 1}`.
    pub fn block(&self, a: usize, b: usize) -> CMat {
        self.matrix.view((a * self.n, b * self.n), (self.n, self.n)).into_owned()
    }

    pub fn frobenius_norm_sqr(&self) -> f64 {
        linalg::frobenius_norm_sqr(&self.matrix)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.frobenius_norm_sqr().sqrt()
    }

    /// Frobenius pairing `tr(self^H other)`.
    pub fn inner(&self, other: &BlockEndo) -> Complex64 {
        linalg::frobenius_inner(&self.matrix, &other.matrix)
    }

    pub fn apply(&self, psi: &SpinorPair) -> SpinorPair {
        SpinorPair::from_stacked(&(&self.matrix * psi.stacked()))
    }

    pub fn adjoint(&self) -> BlockEndo {
        BlockEndo { n: self.n, matrix: self.matrix.adjoint() }
    }

    pub fn add(&self, other: &BlockEndo) -> BlockEndo {
        BlockEndo { n: self.n, matrix: &self.matrix + &other.matrix }
    }

    pub fn sub(&self, other: &BlockEndo) -> BlockEndo {
        BlockEndo { n: self.n, matrix: &self.matrix - &other.matrix }
    }

    pub fn scale(&self, z: Complex64) -> BlockEndo {
        BlockEndo { n: self.n, matrix: &self.matrix * z }
    }

    /// `g M g^*` for `g` acting on `C^2 ⊗ C^n`.
    pub fn conjugate_by(&self, g: &CMat) -> BlockEndo {
        BlockEndo { n: self.n, matrix: g * &self.matrix * g.adjoint() }
    }

    pub fn max_abs_diff(&self, other: &BlockEndo) -> f64 {
        linalg::max_abs_diff(&self.matrix, &other.matrix)
    }
}

fn check_same_n(psi: &SpinorPair, phi: &SpinorPair) -> Result<()> {
    if psi.n() != phi.n() {
        return Err(Error::DimensionMismatch {
            field: "phi",
            expected: psi.n(),
            found: phi.n(),
        });
    }
    Ok(())
}

/// `Psi Phi^*`: the endomorphism `Xi -> Psi <Phi, Xi>`.
pub fn outer(psi: &SpinorPair, phi: &SpinorPair) -> Result<BlockEndo> {
    check_same_n(psi, phi)?;
    Ok(BlockEndo {
        n: psi.n(),
        matrix: linalg::rank_one(&psi.stacked(), &phi.stacked()),
    })
}

/// Removes the `C^2`-trace: subtracts `(M11 + M22)/2` from both diagonal blocks.
fn c2_trace_free(m: &BlockEndo) -> (CMat, CMat, CMat, CMat) {
    let half = (m.block(0, 0) + m.block(1, 1)) * Complex64::new(0.5, 0.0);
    (m.block(0, 0) - &half, m.block(0, 1), m.block(1, 0), m.block(1, 1) - half)
}

fn trace_part(a: &CMat) -> CMat {
    let n = a.nrows();
    linalg::scalar_matrix(n, linalg::trace(a) / n as f64)
}

/// Orthogonal projection onto `sl(C^2) ⊗ sl(C^n)`.
pub fn project_p(m: &BlockEndo) -> BlockEndo {
    let (a, b, c, d) = c2_trace_free(m);
    BlockEndo::from_blocks(
        &linalg::trace_free(&a),
        &linalg::trace_free(&b),
        &linalg::trace_free(&c),
        &linalg::trace_free(&d),
    )
    .expect("blocks share one size")
}

/// Orthogonal projection onto `sl(C^2) ⊗ C id`.
pub fn project_q(m: &BlockEndo) -> BlockEndo {
    let (a, b, c, d) = c2_trace_free(m);
    BlockEndo::from_blocks(&trace_part(&a), &trace_part(&b), &trace_part(&c), &trace_part(&d))
        .expect("blocks share one size")
}

pub fn tau_warning(tau: f64) -> Option<Warning> {
    (!(0.0..=1.0).contains(&tau)).then_some(Warning::TauOutOfRange { tau })
}

/// `mu_{0,tau}(Psi, Phi)`: linear in `Psi`, conjugate-linear in `Phi`.
///
/// Values of `tau` outside `[0, 1]` are evaluated; see [`tau_warning`].
pub fn mu(tau: f64, psi: &SpinorPair, phi: &SpinorPair) -> Result<BlockEndo> {
    let mut x = outer(psi, phi)?;
    apply_l_in_place(&mut x, tau);
    Ok(x)
}

/// `P + tau Q = (1 - T_2)(1 - (1 - tau) T_n)` in one pass, where `T_n`
/// keeps the trace part of each block and `T_2` averages the diagonal blocks.
fn apply_l_in_place(x: &mut BlockEndo, tau: f64) {
    let n = x.n;
    let m = &mut x.matrix;
    let shrink = Complex64::new((1.0 - tau) / n as f64, 0.0);
    for a in 0..2 {
        for b in 0..2 {
            let t = (0..n).map(|i| m[(a * n + i, b * n + i)]).sum::<Complex64>() * shrink;
            for i in 0..n {
                m[(a * n + i, b * n + i)] -= t;
            }
        }
    }
    for j in 0..n {
        for i in 0..n {
            let h = (m[(i, j)] + m[(n + i, n + j)]) * 0.5;
            m[(i, j)] -= h;
            m[(n + i, n + j)] -= h;
        }
    }
}

/// `Re <mu(tau, Psi) Psi, Psi>`.
pub fn quartic_form(tau: f64, psi: &SpinorPair) -> f64 {
    let m = mu(tau, psi, psi).expect("same spinor");
    psi.hdot(&m.apply(psi)).re
}

/// `(alpha beta^*)_0`, the trace-free part of a rank-one matrix.
pub fn traceless_outer(alpha: &CVec, beta: &CVec) -> CMat {
    linalg::trace_free(&linalg::rank_one(alpha, beta))
}

/// Block formula for `P(Psi Psi^*)`, assembled from trace-free rank-one
/// pieces without going through the projections.
pub fn p_block_formula(psi: &SpinorPair) -> BlockEndo {
    let half = Complex64::new(0.5, 0.0);
    let aa = traceless_outer(&psi.alpha, &psi.alpha);
    let bb = traceless_outer(&psi.beta, &psi.beta);
    BlockEndo::from_blocks(
        &((&aa - &bb) * half),
        &traceless_outer(&psi.alpha, &psi.beta),
        &traceless_outer(&psi.beta, &psi.alpha),
        &((bb - aa) * half),
    )
    .expect("blocks share one size")
}

/// Which of the minimizers a report refers to.
#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum Argmin {
    Single(SpinorPair),
    Pair { psi: SpinorPair, phi: SpinorPair },
}

/// Outcome of a multistart minimization of a nonnegative quantity.
#[derive(Debug, Clone, Serialize)]
pub struct OptimizationReport {
    pub objective: String,
    pub n: usize,
    pub tau: f64,
    pub estimate: f64,
    pub argmin: Argmin,
    pub starts: usize,
    pub seed: u64,
    pub iterations_per_start: usize,
    pub gradient_tolerance: f64,
    pub values_per_start: Vec<f64>,
    pub iterations_used: Vec<usize>,
    pub converged: Vec<bool>,
    pub all_converged: bool,
    pub positivity_floor: f64,
    /// `estimate > positivity_floor`, where that is the expected outcome.
    pub success: Option<bool>,
    pub warnings: Vec<Warning>,
}

/// `Psi -> |mu_{0,tau}(Psi)|^2` in real coordinates.
///
/// `P` and `Q` are orthogonal to each other, so with `L = P + tau Q` the
/// value is `<X, L^2 X>` for `X = Psi Psi^*` and the gradient is `4 H Psi`
/// with `H = P X + tau^2 Q X`.
pub struct QuadraticObjective {
    pub n: usize,
    pub tau: f64,
}

impl QuadraticObjective {
    fn weighted(&self, x: &BlockEndo) -> BlockEndo {
        project_p(x).add(&project_q(x).scale(Complex64::new(self.tau * self.tau, 0.0)))
    }
}

fn write_real(v: &CVec, out: &mut [f64], scale: f64) {
    for (i, z) in v.iter().enumerate() {
        out[2 * i] = scale * z.re;
        out[2 * i + 1] = scale * z.im;
    }
}

impl Objective for QuadraticObjective {
    fn dim(&self) -> usize {
        4 * self.n
    }

    fn value(&self, x: &[f64]) -> f64 {
        let psi = SpinorPair::from_real(x);
        mu(self.tau, &psi, &psi).expect("same spinor").frobenius_norm_sqr()
    }

    fn value_and_gradient(&self, x: &[f64], grad: &mut [f64]) -> f64 {
        let psi = SpinorPair::from_real(x);
        let xx = outer(&psi, &psi).expect("same spinor");
        let h = self.weighted(&xx);
        write_real(&(h.matrix() * psi.stacked()), grad, 4.0);
        xx.inner(&h).re
    }
}

/// `(Psi, Phi) -> |mu_{0,tau}(Psi, Phi)|^2` in real coordinates, `Psi`
/// first. Gradients are `2 H Phi` and `2 H^* Psi` with `H = L^2(Psi Phi^*)`.
pub struct BilinearObjective {
    pub n: usize,
    pub tau: f64,
}

impl Objective for BilinearObjective {
    fn dim(&self) -> usize {
        8 * self.n
    }

    fn value(&self, x: &[f64]) -> f64 {
        let (psi, phi) = split_pair(x, self.n);
        mu(self.tau, &psi, &phi).expect("same n").frobenius_norm_sqr()
    }

    fn value_and_gradient(&self, x: &[f64], grad: &mut [f64]) -> f64 {
        let (psi, phi) = split_pair(x, self.n);
        let xx = outer(&psi, &phi).expect("same n");
        let h = project_p(&xx).add(&project_q(&xx).scale(Complex64::new(self.tau * self.tau, 0.0)));
        let d = 4 * self.n;
        write_real(&(h.matrix() * phi.stacked()), &mut grad[..d], 2.0);
        write_real(&(h.matrix().adjoint() * psi.stacked()), &mut grad[d..], 2.0);
        xx.inner(&h).re
    }
}

fn split_pair(x: &[f64], n: usize) -> (SpinorPair, SpinorPair) {
    let d = 4 * n;
    (SpinorPair::from_real(&x[..d]), SpinorPair::from_real(&x[d..]))
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::invalid("n", "n must be at least 1"));
    }
    Ok(())
}

fn check_starts(cfg: &MultistartConfig) -> Result<()> {
    if cfg.starts == 0 {
        return Err(Error::invalid("starts", "at least one start is required"));
    }
    Ok(())
}

pub(crate) struct Summary {
    pub best: usize,
    pub values: Vec<f64>,
    pub iterations: Vec<usize>,
    pub converged: Vec<bool>,
}

/// Square roots of the per-start minima, since objectives are squared norms.
pub(crate) fn summarize(outcomes: &[optim::StartOutcome]) -> Summary {
    Summary {
        best: optim::best_index(outcomes).expect("at least one start"),
        values: outcomes.iter().map(|o| o.value.max(0.0).sqrt()).collect(),
        iterations: outcomes.iter().map(|o| o.iterations).collect(),
        converged: outcomes.iter().map(|o| o.converged).collect(),
    }
}

/// Estimates `c = min_{|Psi| = 1} |mu_{0,tau}(Psi)|` by multistart projected
/// gradient descent on the unit sphere of `C^{2n}`. The result is an upper
/// bound for `c`.
pub fn properness_constant_estimate(
    n: usize,
    tau: f64,
    cfg: &MultistartConfig,
    positivity_floor: f64,
) -> Result<OptimizationReport> {
    check_n(n)?;
    check_starts(cfg)?;
    let obj = QuadraticObjective { n, tau };
    let outcomes = optim::multistart(&obj, &Domain::Spheres(vec![4 * n]), cfg, &[]);
    let s = summarize(&outcomes);
    let estimate = s.values[s.best];
    Ok(OptimizationReport {
        objective: "min |mu(tau, psi)| over |psi| = 1".into(),
        n,
        tau,
        estimate,
        argmin: Argmin::Single(SpinorPair::from_real(&outcomes[s.best].x)),
        starts: cfg.starts,
        seed: cfg.seed,
        iterations_per_start: cfg.max_iterations,
        gradient_tolerance: cfg.gradient_tolerance,
        all_converged: s.converged.iter().all(|&c| c),
        values_per_start: s.values,
        iterations_used: s.iterations,
        converged: s.converged,
        positivity_floor,
        success: (n > 1).then_some(estimate > positivity_floor),
        warnings: tau_warning(tau).into_iter().collect(),
    })
}

/// Estimates `min |mu_{0,tau}(Psi, Phi)|` over unit `Psi`, `Phi`. Requires
/// `n >= 2` or `tau != 0`; below the floor the report's `success` is false.
pub fn zero_divisor_margin(
    n: usize,
    tau: f64,
    cfg: &MultistartConfig,
    positivity_floor: f64,
) -> Result<OptimizationReport> {
    check_n(n)?;
    check_starts(cfg)?;
    if n < 2 && tau == 0.0 {
        return Err(Error::Precondition(
            "mu is without zero-divisors only when n >= 2 or tau != 0".into(),
        ));
    }
    let obj = BilinearObjective { n, tau };
    let outcomes = optim::multistart(&obj, &Domain::Spheres(vec![4 * n, 4 * n]), cfg, &[]);
    let s = summarize(&outcomes);
    let estimate = s.values[s.best];
    let (psi, phi) = split_pair(&outcomes[s.best].x, n);
    Ok(OptimizationReport {
        objective: "min |mu(tau, psi, phi)| over |psi| = |phi| = 1".into(),
        n,
        tau,
        estimate,
        argmin: Argmin::Pair { psi, phi },
        starts: cfg.starts,
        seed: cfg.seed,
        iterations_per_start: cfg.max_iterations,
        gradient_tolerance: cfg.gradient_tolerance,
        all_converged: s.converged.iter().all(|&c| c),
        values_per_start: s.values,
        iterations_used: s.iterations,
        converged: s.converged,
        positivity_floor,
        success: Some(estimate > positivity_floor),
        warnings: tau_warning(tau).into_iter().collect(),
    })
}
