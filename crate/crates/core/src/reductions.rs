//! Circle-action fixed-point bookkeeping: reductions `E = F ⊕ F^⊥`, their
//! parameters and component dimensions, Chern–Weil windows for `c2`, the
//! Uhlenbeck strata and the generic vanishing verdict at `tau = 0`.
//!
//! Isomorphism classes of bundles are identified with `(rank, c1, c2)`.
//! The analytic bounds entering the finiteness argument are user input.

use std::f64::consts::PI;

use num_rational::Rational64;
use rayon::prelude::*;
use serde::Serialize;

use crate::cohomology::{self, BundleData, CohClass2, FourManifold, SpincStructure};
use crate::error::{Error, Result};
use crate::exact;
use crate::lattice;
use crate::warning::Warning;

/// L^2 curvature bounds and the harmonic-form metric on `H^2`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurvatureBounds {
    /// bound on `||tr F_A||`
    pub c_trace: f64,
    /// bound on `||F_A^+||`
    pub c_plus: f64,
    /// bound on `||F_A^-||`
    pub c_minus: f64,
    #[serde(with = "exact::rational_json::matrix")]
    pub g: Vec<Vec<Rational64>>,
}

impl CurvatureBounds {
    pub fn new(c_trace: f64, c_plus: f64, c_minus: f64, g: Vec<Vec<Rational64>>) -> Result<Self> {
        for (field, v) in [("bounds.c_trace", c_trace), ("bounds.c_plus", c_plus), ("bounds.c_minus", c_minus)] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::invalid(field, format!("must be a finite nonnegative number, got {v}")));
            }
        }
        lattice::check_positive_definite(&g)?;
        Ok(CurvatureBounds { c_trace, c_plus, c_minus, g })
    }

    pub fn with_identity_metric(b2: usize, c_trace: f64, c_plus: f64, c_minus: f64) -> Result<Self> {
        let g = (0..b2)
            .map(|i| (0..b2).map(|j| Rational64::from_integer(i64::from(i == j))).collect())
            .collect();
        Self::new(c_trace, c_plus, c_minus, g)
    }

    /// Radius squared of the `c1` ball, `(C_trace / 2 pi)^2`.
    pub fn c1_radius_sq(&self) -> f64 {
        let r = self.c_trace / (2.0 * PI);
        r * r
    }

    fn check_size(&self, m: &FourManifold) -> Result<()> {
        if self.g.len() != m.b2() {
            return Err(Error::DimensionMismatch {
                field: "bounds.g",
                expected: m.b2(),
                found: self.g.len(),
            });
        }
        Ok(())
    }
}

/// Result of the Whitney-sum computation for `F^⊥`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum WhitneyComplement {
    Consistent { bundle: BundleData },
    /// A line bundle would need `c2 != 0`.
    Inconsistent { rank: u32, c1: CohClass2, c2: i64 },
}

impl WhitneyComplement {
    pub fn rank(&self) -> u32 {
        match self {
            WhitneyComplement::Consistent { bundle } => bundle.rank,
            WhitneyComplement::Inconsistent { rank, .. } => *rank,
        }
    }

    pub fn bundle(&self) -> Option<&BundleData> {
        match self {
            WhitneyComplement::Consistent { bundle } => Some(bundle),
            WhitneyComplement::Inconsistent { .. } => None,
        }
    }
}

/// `F^⊥` with `F ⊕ F^⊥ = E_{-k}`: `c1 = c1(E) - c1(F)` and
/// `c2 = (c2(E) - k) - c2(F) - <c1(F) c1(F^⊥)>`.
pub fn whitney_complement(
    e: &BundleData,
    f: &BundleData,
    m: &FourManifold,
    k: u32,
) -> Result<WhitneyComplement> {
    if f.rank == 0 || f.rank >= e.rank {
        return Err(Error::Precondition(format!(
            "a proper summand needs 1 <= rank F < rank E, got rank F = {}, rank E = {}",
            f.rank, e.rank
        )));
    }
    let c1 = &e.c1 - &f.c1;
    let c2 = (e.c2 - i64::from(k)) - f.c2 - cohomology::cup(&f.c1, &c1, m)?;
    let rank = e.rank - f.rank;
    Ok(if rank == 1 && c2 != 0 {
        WhitneyComplement::Inconsistent { rank, c1, c2 }
    } else {
        WhitneyComplement::Consistent { bundle: BundleData { rank, c1, c2 } }
    })
}

/// `1 - n/N`.
pub fn tau_parameter(n: u32, big_n: u32) -> Result<Rational64> {
    if n == 0 || n >= big_n {
        return Err(Error::Precondition(format!("tau parameter needs 1 <= n < N, got n = {n}, N = {big_n}")));
    }
    Ok(Rational64::new(i64::from(big_n - n), i64::from(big_n)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ComponentDims {
    pub dim_un: i64,
    pub dim_asd: i64,
    pub total: i64,
}

/// Dimensions of `M_{s,F}(1 - n/N, F_θ^+/N) × M^asd_{F^⊥}`. A rank-one
/// complement contributes a point.
pub fn component_dims(
    e: &BundleData,
    s: &SpincStructure,
    m: &FourManifold,
    f: &BundleData,
    k: u32,
    dirac_multiplicity: i64,
) -> Result<ComponentDims> {
    let complement = whitney_complement(e, f, m, k)?;
    let dim_un = cohomology::expected_dim_un(f, s, m, dirac_multiplicity)?;
    let dim_asd = match &complement {
        WhitneyComplement::Consistent { bundle } if bundle.rank >= 2 => {
            cohomology::expected_dim_asd(bundle, m)?
        }
        _ => 0,
    };
    Ok(ComponentDims { dim_un, dim_asd, total: dim_un + dim_asd })
}

/// Integer interval `[lower, upper]`, empty when `lower > upper`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IntWindow {
    pub lower: i64,
    pub upper: i64,
}

impl IntWindow {
    pub fn is_empty(&self) -> bool {
        self.lower > self.upper
    }
    pub fn contains(&self, v: i64) -> bool {
        self.lower <= v && v <= self.upper
    }
    pub fn iter(&self) -> impl Iterator<Item = i64> {
        self.lower..=self.upper
    }
}

const WINDOW_SLACK: f64 = 1e-9;

/// Values of `<c2(F)>` allowed by
/// `c2 = ½<c1^2> + (||F^-||^2 - ||F^+||^2) / 8π²` under the given bounds.
pub fn chern_weil_c2_window(c1: &CohClass2, m: &FourManifold, bounds: &CurvatureBounds) -> Result<IntWindow> {
    let half = cohomology::cup(c1, c1, m)? as f64 / 2.0;
    let scale = 8.0 * PI * PI;
    let down = bounds.c_plus * bounds.c_plus / scale;
    let up = bounds.c_minus * bounds.c_minus / scale;
    let slack = |x: f64| WINDOW_SLACK * x.abs().max(1.0);
    let lo = half - down;
    let hi = half + up;
    Ok(IntWindow {
        lower: (lo - slack(lo)).ceil() as i64,
        upper: (hi + slack(hi)).floor() as i64,
    })
}

/// One fixed-point component label.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReductionCandidate {
    pub f: BundleData,
    pub f_perp: BundleData,
    #[serde(with = "exact::rational_json")]
    pub tau: Rational64,
    /// Scale of the induced perturbation, `η = (1/N) F_θ^+`.
    #[serde(with = "exact::rational_json")]
    pub eta_scale: Rational64,
    pub dim_un_part: i64,
    pub dim_asd_part: i64,
    pub total_dim: i64,
    pub stratum_k: u32,
    /// `sqrt(c1(F)^T G c1(F))`
    pub c1_norm: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReductionEnumeration {
    pub candidates: Vec<ReductionCandidate>,
    /// Complements that would be line bundles with nonzero `c2`.
    pub pruned_inconsistent: usize,
    pub lattice_points: usize,
    pub warnings: Vec<Warning>,
}

/// All reduction labels `[F]` compatible with the bounds, over ranks
/// `1..N` and strata `0..=k_max`, sorted by `(rank, k, c1, c2)`.
pub fn enumerate_reductions(
    m: &FourManifold,
    e: &BundleData,
    s: &SpincStructure,
    bounds: &CurvatureBounds,
    k_max: u32,
    dirac_multiplicity: i64,
) -> Result<ReductionEnumeration> {
    bounds.check_size(m)?;
    e.c1.check_len("bundle.c1", m)?;
    s.c1.check_len("spinc.c1", m)?;
    if e.rank < 2 {
        return Err(Error::Precondition(format!(
            "reductions need rank E >= 2, got {}",
            e.rank
        )));
    }
    let mut warnings = Vec::new();
    if m.b1() != 0 {
        warnings.push(Warning::NonzeroB1 { b1: m.b1() });
    }
    let points = lattice::ball_points_fincke_pohst(&bounds.g, bounds.c1_radius_sq())?;
    let g_big = exact::rational_matrix_to_big(&bounds.g);
    let windows: Vec<(CohClass2, IntWindow, f64)> = points
        .iter()
        .map(|v| {
            let c1 = CohClass2(v.clone());
            let w = chern_weil_c2_window(&c1, m, bounds)?;
            let norm = exact::big_to_f64(&exact::bilinear(&g_big, v, v)).sqrt();
            Ok((c1, w, norm))
        })
        .collect::<Result<_>>()?;

    let cells: Vec<(u32, u32)> = (1..e.rank).flat_map(|n| (0..=k_max).map(move |k| (n, k))).collect();
    let per_cell: Vec<(Vec<ReductionCandidate>, usize)> = cells
        .par_iter()
        .map(|&(rank, k)| {
            let tau = tau_parameter(rank, e.rank)?;
            let mut found = Vec::new();
            let mut pruned = 0;
            for (c1, window, norm) in &windows {
                let c2_values: Vec<i64> = if rank == 1 {
                    window.contains(0).then_some(0).into_iter().collect()
                } else {
                    window.iter().collect()
                };
                for c2 in c2_values {
                    let f = BundleData { rank, c1: c1.clone(), c2 };
                    let f_perp = match whitney_complement(e, &f, m, k)? {
                        WhitneyComplement::Consistent { bundle } => bundle,
                        WhitneyComplement::Inconsistent { .. } => {
                            pruned += 1;
                            continue;
                        }
                    };
                    let dims = component_dims(e, s, m, &f, k, dirac_multiplicity)?;
                    found.push(ReductionCandidate {
                        f,
                        f_perp,
                        tau,
                        eta_scale: Rational64::new(1, i64::from(e.rank)),
                        dim_un_part: dims.dim_un,
                        dim_asd_part: dims.dim_asd,
                        total_dim: dims.total,
                        stratum_k: k,
                        c1_norm: *norm,
                    });
                }
            }
            Ok((found, pruned))
        })
        .collect::<Result<_>>()?;

    let mut candidates = Vec::new();
    let mut pruned_inconsistent = 0;
    for (found, pruned) in per_cell {
        candidates.extend(found);
        pruned_inconsistent += pruned;
    }
    candidates.sort_by(|a, b| {
        (a.f.rank, a.stratum_k, &a.f.c1, a.f.c2).cmp(&(b.f.rank, b.stratum_k, &b.f.c1, b.f.c2))
    });
    Ok(ReductionEnumeration {
        candidates,
        pruned_inconsistent,
        lattice_points: points.len(),
        warnings,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Stratum {
    pub k: u32,
    pub bundle: BundleData,
    pub expected_dim_pun: i64,
}

/// Bundles `E_{-k}` of the ideal-monopole strata, `c2` lowered by `k`.
pub fn uhlenbeck_strata(
    e: &BundleData,
    m: &FourManifold,
    s: &SpincStructure,
    k_max: u32,
    dirac_multiplicity: i64,
) -> Result<Vec<Stratum>> {
    (0..=k_max)
        .map(|k| {
            let bundle = BundleData { rank: e.rank, c1: e.c1.clone(), c2: e.c2 - i64::from(k) };
            let expected_dim_pun = cohomology::expected_dim_pun(&bundle, s, m, dirac_multiplicity)?;
            Ok(Stratum { k, bundle, expected_dim_pun })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Tau0Verdict {
    pub vanishes_generically: bool,
    /// dimension of the cokernel of `d^+`, which is `b2+`
    pub cokernel_dimension: usize,
}

/// Reducible solutions at `tau = 0` are absent for generic perturbations
/// exactly when `b2+ > 0`.
pub fn generic_tau0_vanishing(m: &FourManifold) -> Tau0Verdict {
    Tau0Verdict {
        vanishes_generically: m.b2plus() > 0,
        cokernel_dimension: m.b2plus(),
    }
}
