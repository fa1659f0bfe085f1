//! Fiberwise algebra of the U(n) monopole equations on a Kähler surface.
//!
//! At a point, `S^+ ⊗ E = Λ^{0,0} ⊗ E ⊕ Λ^{0,2} ⊗ E`. Fix unit generators
//! `φ02` of `Λ^{0,2}` and `φ20 = conj(φ02)` of `Λ^{2,0}`, normalized so that
//! `*(φ20 ∧ φ02) = 1`. A spinor is then a pair `(alpha, beta)` of vectors in
//! `C^n`, where `beta` holds the coefficients against `φ02`, and
//! `beta beta^* = *(beta ∧ conj(beta))`. Forms of type (0,2) and (2,0) are
//! likewise represented by their coefficients, and the (1,1) part by its
//! contraction `Λ_g`.
//!
//! For an imaginary-valued form the (2,0) coefficient is minus the
//! conjugate of the (0,2) coefficient; for a `u(E)`-valued form it is minus
//! the adjoint.
//!
//! Clifford multiplication on self-dual forms carries the fixed factor 4:
//! `γ(η) = 4 [[-i Λη, -η20], [η02, i Λη]]`.

use num_complex::Complex64;
use serde::Serialize;

use crate::cohomology::{CohClass2, FourManifold};
use crate::error::{Error, Result};
use crate::linalg::{self, CMat, CVec, I};
use crate::mu_kernel::{self, Argmin, BlockEndo, OptimizationReport, SpinorPair};
use crate::optim::{self, Domain, MultistartConfig, Objective};

/// `{f}_tau = (f)_0 + (tau/n) tr(f) id`.
pub fn brace(f: &CMat, tau: f64) -> CMat {
    let n = f.nrows();
    let mut out = f.clone();
    let shift = linalg::trace(f) * ((1.0 - tau) / n as f64);
    for i in 0..n {
        out[(i, i)] -= shift;
    }
    out
}

/// `mu_{0,tau}(alpha, beta)` written in brace form, blockwise.
pub fn mu_kaehler(alpha: &CVec, beta: &CVec, tau: f64) -> Result<BlockEndo> {
    if alpha.len() != beta.len() {
        return Err(Error::DimensionMismatch {
            field: "beta",
            expected: alpha.len(),
            found: beta.len(),
        });
    }
    let half = Complex64::new(0.5, 0.0);
    let aa = brace(&linalg::rank_one(alpha, alpha), tau);
    let bb = brace(&linalg::rank_one(beta, beta), tau);
    BlockEndo::from_blocks(
        &((&aa - &bb) * half),
        &brace(&linalg::rank_one(alpha, beta), tau),
        &brace(&linalg::rank_one(beta, alpha), tau),
        &((bb - aa) * half),
    )
}

/// Clifford multiplication of a self-dual 2-form with scalar coefficients.
pub fn clifford_sd(eta_lambda: Complex64, eta20: Complex64, eta02: Complex64) -> CMat {
    let four = Complex64::new(4.0, 0.0);
    CMat::from_row_slice(
        2,
        2,
        &[-I * eta_lambda * four, -eta20 * four, eta02 * four, I * eta_lambda * four],
    )
}

/// Same with `n x n` matrix coefficients, as an endomorphism of `C^2 ⊗ C^n`.
pub fn clifford_sd_matrix(lambda_part: &CMat, f20: &CMat, f02: &CMat) -> Result<BlockEndo> {
    let four = Complex64::new(4.0, 0.0);
    BlockEndo::from_blocks(
        &(lambda_part * (-I * four)),
        &(f20 * (-four)),
        &(f02 * four),
        &(lambda_part * (I * four)),
    )
}

/// (2,0) coefficient of an imaginary-valued self-dual form with the given
/// (0,2) coefficient.
pub fn imaginary_form_20(eta02: Complex64) -> Complex64 {
    -eta02.conj()
}

/// Pointwise values entering the curvature equation.
#[derive(Debug, Clone)]
pub struct PointwiseField {
    pub alpha: CVec,
    pub beta: CVec,
    /// Coefficient matrix of `F_A^{0,2}`.
    pub f02: CMat,
    /// `Λ_g(F_A)`, skew-Hermitian.
    pub lambda_f: CMat,
    pub eta02: Complex64,
    /// `Λ_g(η)`, purely imaginary.
    pub eta_lambda: Complex64,
    pub tau: f64,
}

const SHAPE_TOL: f64 = 1e-12;

impl PointwiseField {
    pub fn new(
        alpha: CVec,
        beta: CVec,
        f02: CMat,
        lambda_f: CMat,
        eta02: Complex64,
        eta_lambda: Complex64,
        tau: f64,
    ) -> Result<Self> {
        let n = alpha.len();
        if beta.len() != n {
            return Err(Error::DimensionMismatch { field: "beta", expected: n, found: beta.len() });
        }
        for (field, m) in [("f02", &f02), ("lambda_f", &lambda_f)] {
            if m.shape() != (n, n) {
                return Err(Error::invalid(field, format!("expected {n}x{n}, got {:?}", m.shape())));
            }
        }
        if eta_lambda.re.abs() > SHAPE_TOL * eta_lambda.norm().max(1.0) {
            return Err(Error::invalid("eta_lambda", "must be purely imaginary"));
        }
        let scale = lambda_f.iter().map(|z| z.norm()).fold(1.0, f64::max);
        if !linalg::is_skew_hermitian(&lambda_f, SHAPE_TOL * scale) {
            return Err(Error::invalid("lambda_f", "must be skew-Hermitian"));
        }
        Ok(PointwiseField { alpha, beta, f02, lambda_f, eta02, eta_lambda, tau })
    }

    /// The field whose curvature components solve both pointwise equations
    /// for the given spinor and perturbation.
    pub fn satisfying(
        alpha: CVec,
        beta: CVec,
        eta02: Complex64,
        eta_lambda: Complex64,
        tau: f64,
    ) -> Result<Self> {
        let f02 = f02_rhs(&alpha, &beta, eta02, tau);
        // -i Λ F = R  <=>  Λ F = i R
        let lambda_f = lambda_rhs(&alpha, &beta, eta_lambda, tau) * I;
        Self::new(alpha, beta, f02, lambda_f, eta02, eta_lambda, tau)
    }

    pub fn n(&self) -> usize {
        self.alpha.len()
    }
}

/// `¼ {beta alpha^*}_tau + η02 id`.
fn f02_rhs(alpha: &CVec, beta: &CVec, eta02: Complex64, tau: f64) -> CMat {
    let n = alpha.len();
    brace(&linalg::rank_one(beta, alpha), tau) * Complex64::new(0.25, 0.0)
        + linalg::scalar_matrix(n, eta02)
}

/// `⅛ {alpha alpha^* - beta beta^*}_tau - i Λη id`.
fn lambda_rhs(alpha: &CVec, beta: &CVec, eta_lambda: Complex64, tau: f64) -> CMat {
    let n = alpha.len();
    let diff = linalg::rank_one(alpha, alpha) - linalg::rank_one(beta, beta);
    brace(&diff, tau) * Complex64::new(0.125, 0.0) - linalg::scalar_matrix(n, I * eta_lambda)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurvatureSplitVerdict {
    /// Frobenius norm of `γ(F^+) - mu(Psi) - γ(η) id`.
    pub matrix_residual: f64,
    /// Frobenius norm of `F02 - ¼{beta alpha^*}_tau - η02 id`.
    pub f02_residual: f64,
    /// Frobenius norm of `-iΛF - ⅛{alpha alpha^* - beta beta^*}_tau + iΛη id`.
    pub lambda_residual: f64,
    pub tolerance: f64,
    pub matrix_satisfied: bool,
    pub split_satisfied: bool,
    pub equivalent: bool,
}

/// Evaluates the full curvature equation and its two pointwise components.
///
/// The off-diagonal upper block and the lower diagonal block of the matrix
/// equation are the adjoint and the negative of the two components, so the
/// matrix residual is `4 sqrt(2 r02^2 + 2 rΛ^2)`.
pub fn verify_curvature_split(p: &PointwiseField, tol: f64) -> CurvatureSplitVerdict {
    let n = p.n();
    let psi = SpinorPair { alpha: p.alpha.clone(), beta: p.beta.clone() };
    let f20 = -p.f02.adjoint();
    let gamma_f = clifford_sd_matrix(&p.lambda_f, &f20, &p.f02).expect("validated shapes");
    let mu = mu_kernel::mu(p.tau, &psi, &psi).expect("validated shapes");
    let gamma_eta = clifford_sd(p.eta_lambda, imaginary_form_20(p.eta02), p.eta02);
    let gamma_eta_id =
        BlockEndo::from_matrix(linalg::kron(&gamma_eta, &CMat::identity(n, n))).expect("even size");
    let matrix_residual = gamma_f.sub(&mu).sub(&gamma_eta_id).frobenius_norm();

    let f02_residual = (&p.f02 - f02_rhs(&p.alpha, &p.beta, p.eta02, p.tau)).norm();
    let lambda_lhs = &p.lambda_f * (-I);
    let lambda_residual = (lambda_lhs - lambda_rhs(&p.alpha, &p.beta, p.eta_lambda, p.tau)).norm();

    let matrix_satisfied = matrix_residual < tol;
    let split_satisfied = f02_residual < tol && lambda_residual < tol;
    CurvatureSplitVerdict {
        matrix_residual,
        f02_residual,
        lambda_residual,
        tolerance: tol,
        matrix_satisfied,
        split_satisfied,
        equivalent: matrix_satisfied == split_satisfied,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DecouplingBound {
    /// `Re <beta, {beta alpha^*}_tau alpha>`
    pub lhs: f64,
    /// `(1 - (1 - tau)/n) |alpha|^2 |beta|^2`
    pub rhs: f64,
}

impl DecouplingBound {
    pub fn holds(&self) -> bool {
        self.lhs >= self.rhs && self.rhs >= 0.0
    }
}

pub fn decoupling_bound(alpha: &CVec, beta: &CVec, tau: f64) -> Result<DecouplingBound> {
    let n = alpha.len();
    if beta.len() != n {
        return Err(Error::DimensionMismatch { field: "beta", expected: n, found: beta.len() });
    }
    if !(0.0..=1.0).contains(&tau) {
        return Err(Error::Precondition(format!("decoupling needs tau in [0, 1], got {tau}")));
    }
    let braced = brace(&linalg::rank_one(beta, alpha), tau);
    let lhs = linalg::hdot(beta, &(braced * alpha)).re;
    let rhs = (1.0 - (1.0 - tau) / n as f64) * linalg::norm_sqr(alpha) * linalg::norm_sqr(beta);
    Ok(DecouplingBound { lhs, rhs })
}

/// `min ||{beta alpha^*}_tau - lambda id||` over all `(alpha, beta)`, in
/// closed form: the trace-free part of `beta alpha^*` only adds norm, so
/// the minimum runs over normal rank-one matrices `t e e^*`, and minimizing
/// `|t - κ|^2 + (n-1)|κ|^2` with `κ = (1-tau) t / n + lambda` gives
/// `|lambda| sqrt(n (n-1) / (n - 1 + tau^2))`.
pub fn impossibility_closed_form(n: usize, tau: f64, lambda: Complex64) -> f64 {
    let n = n as f64;
    lambda.norm() * (n * (n - 1.0) / (n - 1.0 + tau * tau)).sqrt()
}

/// `(alpha, beta) -> ||{beta alpha^*}_tau - lambda id||^2` on `C^{2n}`.
pub struct ImpossibilityObjective {
    pub n: usize,
    pub tau: f64,
    pub lambda: Complex64,
}

impl ImpossibilityObjective {
    fn residual(&self, psi: &SpinorPair) -> CMat {
        brace(&linalg::rank_one(&psi.beta, &psi.alpha), self.tau)
            - linalg::scalar_matrix(self.n, self.lambda)
    }
}

impl Objective for ImpossibilityObjective {
    fn dim(&self) -> usize {
        4 * self.n
    }

    fn value(&self, x: &[f64]) -> f64 {
        linalg::frobenius_norm_sqr(&self.residual(&SpinorPair::from_real(x)))
    }

    fn value_and_gradient(&self, x: &[f64], grad: &mut [f64]) -> f64 {
        let psi = SpinorPair::from_real(x);
        let y = self.residual(&psi);
        // the brace map is self-adjoint, so the gradient pulls back through it
        let z = brace(&y, self.tau);
        let g_alpha = z.adjoint() * &psi.beta * Complex64::new(2.0, 0.0);
        let g_beta = &z * &psi.alpha * Complex64::new(2.0, 0.0);
        let g = SpinorPair { alpha: g_alpha, beta: g_beta }.to_real();
        grad.copy_from_slice(&g);
        linalg::frobenius_norm_sqr(&y)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ImpossibilityReport {
    #[serde(flatten)]
    pub optimization: OptimizationReport,
    pub lambda: [f64; 2],
    pub closed_form: f64,
    pub relative_deviation: f64,
}

/// Measures how far `{beta alpha^*}_tau` stays from `lambda id`. Start 0 is
/// the origin `alpha = beta = 0`; the rest are random Gaussian points.
pub fn impossibility_margin(
    n: usize,
    tau: f64,
    lambda: Complex64,
    cfg: &MultistartConfig,
    positivity_floor: f64,
) -> Result<ImpossibilityReport> {
    if n < 2 {
        return Err(Error::Precondition(format!("impossibility needs n >= 2, got {n}")));
    }
    if !(tau > 0.0 && tau <= 1.0) {
        return Err(Error::Precondition(format!("impossibility needs tau in (0, 1], got {tau}")));
    }
    if cfg.starts == 0 {
        return Err(Error::invalid("starts", "at least one start is required"));
    }
    let obj = ImpossibilityObjective { n, tau, lambda };
    let domain = Domain::Euclidean { start_scale: lambda.norm().max(1e-3).sqrt() };
    let outcomes = optim::multistart(&obj, &domain, cfg, &[vec![0.0; 4 * n]]);
    let s = mu_kernel::summarize(&outcomes);
    let estimate = s.values[s.best];
    let closed_form = impossibility_closed_form(n, tau, lambda);
    let relative_deviation = if closed_form > 0.0 {
        (estimate - closed_form).abs() / closed_form
    } else {
        estimate
    };
    Ok(ImpossibilityReport {
        optimization: OptimizationReport {
            objective: "min ||{beta alpha^*}_tau - lambda id|| over all alpha, beta".into(),
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
            success: (lambda.norm() > 0.0).then_some(estimate > positivity_floor),
            warnings: Vec::new(),
        },
        lambda: [lambda.re, lambda.im],
        closed_form,
        relative_deviation,
    })
}

/// `<2 pi i [η20] ∪ c1(E), [X]>` for a (2,0) class given by complex
/// coefficients in the integral basis. Hodge decompositions are not
/// computed: when the caller asserts that the real first Chern class is of
/// type (1,1) the pairing is zero.
pub fn topological_term(
    eta20: &[Complex64],
    c1: &CohClass2,
    m: &FourManifold,
    c1_is_type_11: bool,
) -> Result<Complex64> {
    if eta20.len() != m.b2() {
        return Err(Error::DimensionMismatch { field: "eta20", expected: m.b2(), found: eta20.len() });
    }
    if c1.len() != m.b2() {
        return Err(Error::DimensionMismatch { field: "bundle.c1", expected: m.b2(), found: c1.len() });
    }
    if c1_is_type_11 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let q = m.intersection_form();
    let pairing: Complex64 = (0..m.b2())
        .map(|i| eta20[i] * (0..m.b2()).map(|j| (q[i][j] * c1.0[j]) as f64).sum::<f64>())
        .sum();
    Ok(I * 2.0 * std::f64::consts::PI * pairing)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{basis_vector, c, matrix_unit, random_gaussian_mat, random_gaussian_vec};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn brace_examples() {
        let id = CMat::identity(3, 3);
        assert!(linalg::max_abs_diff(&brace(&id, 0.3), &(id.clone() * c(0.3, 0.0))) < 1e-15);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let f = random_gaussian_mat(&mut rng, 4);
        assert!(linalg::max_abs_diff(&brace(&f, 1.0), &f) < 1e-15);
        let e12 = matrix_unit(3, 0, 1);
        assert_eq!(brace(&e12, 0.6), e12);
        let t = linalg::trace(&brace(&f, 0.25));
        assert!((t - linalg::trace(&f) * 0.25).norm() < 1e-13);
    }

    #[test]
    fn mu_kaehler_examples() {
        let e1 = basis_vector(2, 0);
        let m = mu_kaehler(&e1, &CVec::zeros(2), 1.0).unwrap();
        let half = matrix_unit(2, 0, 0) * c(0.5, 0.0);
        let z = CMat::zeros(2, 2);
        let want = BlockEndo::from_blocks(&half, &z, &z, &(-half.clone())).unwrap();
        assert!(m.max_abs_diff(&want) < 1e-15);
        assert_eq!(mu_kaehler(&CVec::zeros(3), &CVec::zeros(3), 0.4).unwrap(), BlockEndo::zero(3));
        assert!(mu_kaehler(&CVec::zeros(3), &CVec::zeros(2), 0.4).is_err());
    }

    #[test]
    fn clifford_examples() {
        let zero = c(0.0, 0.0);
        assert_eq!(clifford_sd(zero, zero, zero), CMat::zeros(2, 2));
        let mu0 = 0.7;
        let g = clifford_sd(c(0.0, mu0), zero, zero);
        let want = CMat::from_row_slice(2, 2, &[c(4.0 * mu0, 0.0), zero, zero, c(-4.0 * mu0, 0.0)]);
        assert!(linalg::max_abs_diff(&g, &want) < 1e-15);
        let low = clifford_sd(zero, zero, c(1.0, 0.0));
        assert_eq!(low[(1, 0)], c(4.0, 0.0));
        assert_eq!(low[(0, 1)], zero);
        assert_eq!(low[(0, 0)], zero);
    }

    #[test]
    fn clifford_of_imaginary_form_is_hermitian_and_traceless() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..100 {
            let v = random_gaussian_vec(&mut rng, 2);
            let lam = c(0.0, v[0].re);
            let g = clifford_sd(lam, imaginary_form_20(v[1]), v[1]);
            assert!(linalg::trace(&g).norm() < 1e-14);
            assert!(linalg::is_hermitian(&g, 1e-14));
        }
    }

    #[test]
    fn split_examples() {
        let n = 2;
        let zero = PointwiseField::new(
            CVec::zeros(n),
            CVec::zeros(n),
            CMat::zeros(n, n),
            CMat::zeros(n, n),
            c(0.0, 0.0),
            c(0.0, 0.0),
            0.5,
        )
        .unwrap();
        let v = verify_curvature_split(&zero, 1e-9);
        assert_eq!((v.matrix_residual, v.f02_residual, v.lambda_residual), (0.0, 0.0, 0.0));
        assert!(v.equivalent);

        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let a = random_gaussian_vec(&mut rng, 3);
        let b = random_gaussian_vec(&mut rng, 3);
        let mut p = PointwiseField::satisfying(a, b, c(0.3, -1.2), c(0.0, 0.8), 0.4).unwrap();
        let v = verify_curvature_split(&p, 1e-9);
        assert!(v.matrix_residual < 1e-10 && v.split_satisfied && v.equivalent);

        p.f02 += matrix_unit(3, 0, 0);
        let v = verify_curvature_split(&p, 1e-9);
        assert!(v.matrix_residual > 0.0);
        assert!((v.f02_residual - 1.0).abs() < 1e-12);
        assert!(v.lambda_residual < 1e-12);
        assert!(!v.matrix_satisfied && !v.split_satisfied && v.equivalent);
        // only the two lower-left and upper-right blocks move
        assert!((v.matrix_residual - 4.0 * 2f64.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn field_validation() {
        let n = 2;
        let herm = CMat::identity(n, n);
        let err = PointwiseField::new(
            CVec::zeros(n),
            CVec::zeros(n),
            CMat::zeros(n, n),
            herm,
            c(0.0, 0.0),
            c(0.0, 0.0),
            0.5,
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidInput { field: "lambda_f", .. }));
        let err = PointwiseField::satisfying(CVec::zeros(n), CVec::zeros(n), c(0.0, 0.0), c(1.0, 0.0), 0.5)
            .unwrap_err();
        assert!(matches!(err, Error::InvalidInput { field: "eta_lambda", .. }));
    }

    #[test]
    fn decoupling_examples() {
        let e1 = basis_vector(2, 0);
        let e2 = basis_vector(2, 1);
        let z = decoupling_bound(&CVec::zeros(2), &e1, 0.3).unwrap();
        assert_eq!((z.lhs, z.rhs), (0.0, 0.0));
        let same = decoupling_bound(&e1, &e1, 1.0).unwrap();
        assert!((same.lhs - 1.0).abs() < 1e-15 && (same.rhs - 1.0).abs() < 1e-15);
        let orth = decoupling_bound(&e1, &e2, 0.0).unwrap();
        assert!((orth.lhs - 1.0).abs() < 1e-15 && (orth.rhs - 0.5).abs() < 1e-15);
        assert!(orth.holds());
        assert!(decoupling_bound(&e1, &e2, 1.5).is_err());
    }

    #[test]
    fn impossibility_closed_form_values() {
        let one = c(1.0, 0.0);
        assert!((impossibility_closed_form(2, 1.0, one) - 1.0).abs() < 1e-15);
        // sqrt(2 / 1.25)
        assert!((impossibility_closed_form(2, 0.5, one) - 1.6f64.sqrt()).abs() < 1e-15);
        assert_eq!(impossibility_closed_form(3, 0.5, c(0.0, 0.0)), 0.0);
    }

    #[test]
    fn impossibility_gradient_matches_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for n in 2..5 {
            let obj = ImpossibilityObjective { n, tau: 0.35, lambda: c(0.7, -1.1) };
            let x = SpinorPair {
                alpha: random_gaussian_vec(&mut rng, n),
                beta: random_gaussian_vec(&mut rng, n),
            }
            .to_real();
            let mut g = vec![0.0; obj.dim()];
            obj.value_and_gradient(&x, &mut g);
            let fd = optim::finite_difference_gradient(&obj, &x, 1e-6);
            let num: f64 = g.iter().zip(&fd).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
            let den: f64 = g.iter().map(|a| a * a).sum::<f64>().sqrt();
            assert!(num / den < 1e-6);
        }
    }

    #[test]
    fn impossibility_examples() {
        let cfg = MultistartConfig { starts: 12, seed: 7, ..Default::default() };
        let zero = impossibility_margin(2, 1.0, c(0.0, 0.0), &cfg, 1e-3).unwrap();
        assert_eq!(zero.optimization.estimate, 0.0);
        let r = impossibility_margin(2, 1.0, c(1.0, 0.0), &cfg, 1e-3).unwrap();
        assert!((r.optimization.estimate - 1.0).abs() < 1e-6, "{}", r.optimization.estimate);
        let h = impossibility_margin(2, 0.5, c(1.0, 0.0), &cfg, 1e-3).unwrap();
        assert!((h.optimization.estimate - 1.6f64.sqrt()).abs() < 1e-6);
        assert!(impossibility_margin(1, 0.5, c(1.0, 0.0), &cfg, 1e-3).is_err());
        assert!(impossibility_margin(2, 0.0, c(1.0, 0.0), &cfg, 1e-3).is_err());
    }

    #[test]
    fn topological_term_examples() {
        let m = FourManifold::new("S2xS2", 0, vec![vec![0, 1], vec![1, 0]]).unwrap();
        let c1 = CohClass2(vec![1, 0]);
        let eta = [c(0.0, 0.0), c(1.0, 0.5)];
        let t = topological_term(&eta, &c1, &m, false).unwrap();
        let two_pi = 2.0 * std::f64::consts::PI;
        assert!((t - c(-0.5 * two_pi, two_pi)).norm() < 1e-12);
        assert_eq!(topological_term(&eta, &c1, &m, true).unwrap(), c(0.0, 0.0));
        assert!(topological_term(&eta[..1], &c1, &m, false).is_err());
    }
}
