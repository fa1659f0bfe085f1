//! Acceptance criteria 1-11. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails other than the documented
//! deviations listed in `KNOWN_DEVIATIONS`.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use monopole_acceptance as oracle;
use monopole_core::checks::{self, KaehlerPart, KaehlerSuiteConfig, MuPart, MuSuiteConfig};
use monopole_core::cohomology::{self, BundleData, CohClass2, FourManifold, SpincStructure};
use monopole_core::kaehler;
use monopole_core::linalg;
use monopole_core::mu_kernel::{self, SpinorPair, POSITIVITY_FLOOR};
use monopole_core::optim::MultistartConfig;
use monopole_core::reductions::{self, CurvatureBounds};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 7;

/// Criteria whose literal statement is known not to hold; each is paired
/// with a corrected companion check that must pass.
const KNOWN_DEVIATIONS: &[&str] = &["7", "10"];

struct Verdict {
    id: &'static str,
    title: &'static str,
    passed: bool,
    detail: String,
    elapsed: Duration,
    limit: Option<Duration>,
}

fn timed(
    id: &'static str,
    title: &'static str,
    limit: Option<u64>,
    f: impl FnOnce() -> (bool, String),
) -> Verdict {
    let start = Instant::now();
    let (ok, detail) = f();
    let elapsed = start.elapsed();
    let limit = limit.map(Duration::from_secs);
    let in_time = limit.is_none_or(|l| elapsed < l);
    let detail = if in_time {
        detail
    } else {
        format!("{detail}; exceeded runtime limit")
    };
    Verdict { id, title, passed: ok && in_time, detail, elapsed, limit }
}

fn manifold(f: &oracle::Form) -> FourManifold {
    FourManifold::new("X", 0, f.q.clone()).expect("valid form")
}

fn criterion_1() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let cases = 200;
    let mut mismatches = Vec::new();
    for _ in 0..cases {
        let f = oracle::random_form(&mut rng, 6);
        let m = manifold(&f);
        let line = oracle::random_class(&mut rng, f.b2(), 3);
        let l = BundleData::new(1, CohClass2(line.clone()), 0).unwrap();
        let s = SpincStructure::new(CohClass2(f.characteristic.clone()));
        let got = cohomology::expected_dim_un(&l, &s, &m, 2).unwrap();
        let want = oracle::seiberg_witten_dimension(&f, &f.characteristic, &line);
        if !(want.is_integer() && want.to_integer() == got) {
            mismatches.push(format!("form {:?} c {:?} L {:?}: {got} vs {want}", f.q, f.characteristic, line));
        }
    }
    (mismatches.is_empty(), format!("{cases} inputs, {} mismatches {:?}", mismatches.len(), mismatches.first()))
}

fn criterion_2() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut checked = 0;
    let mut bad = Vec::new();
    for b2plus in 0..=3usize {
        for neg in 0..=3usize {
            let f = oracle::scrambled_form(&mut rng, b2plus, neg, 0, 2 * (b2plus + neg));
            let m = manifold(&f);
            for k in 0..=5i64 {
                let e = BundleData::new(2, CohClass2::zero(f.b2()), k).unwrap();
                let got = cohomology::expected_dim_asd(&e, &m).unwrap();
                let want = oracle::su2_instanton_dimension(k, b2plus);
                checked += 1;
                if got != want {
                    bad.push((b2plus, neg, k, got, want));
                }
            }
        }
    }
    (bad.is_empty(), format!("{checked} cases, mismatches {bad:?}"))
}

fn criterion_3() -> (bool, String) {
    let cfg = MuSuiteConfig { seed: SEED, ..Default::default() };
    let r = checks::mu_suite(&cfg, MuPart::All);
    let identities = [
        "quartic_identity",
        "block_formula",
        "projection_orthogonality",
        "hermiticity",
        "norm_monotone_in_tau",
        "su2_sun_equivariance",
        "phase_invariance",
    ];
    let mut ok = true;
    let mut worst = 0f64;
    for name in identities {
        for n in 1..=6 {
            let cells: Vec<_> = r.checks.iter().filter(|c| c.name == name && c.n == n).collect();
            ok &= !cells.is_empty()
                && cells.iter().all(|c| c.passed && c.samples >= 10_000 && c.tolerance <= 1e-10);
            worst = cells.iter().map(|c| c.max_error).fold(worst, f64::max);
        }
    }
    (ok, format!("{} cells, worst relative error {worst:.2e}", r.checks.len()))
}

fn criterion_4() -> (bool, String) {
    let cfg = MuSuiteConfig { seed: SEED, ..Default::default() };
    let r = checks::mu_suite(&cfg, MuPart::ZeroDivisor);
    let identity = r.checks.iter().filter(|c| c.name == "zero_divisor_identity");
    let exact = r.checks.iter().filter(|c| c.name == "zero_divisor_bound_exact");
    let ok_identity = identity.clone().all(|c| c.passed && c.samples >= 100_000 && c.tolerance <= 1e-10);
    let ok_exact = exact.clone().all(|c| c.passed && c.samples >= 100_000);
    let worst = identity.map(|c| c.max_error).fold(0.0, f64::max);
    (
        ok_identity && ok_exact && r.checks.len() == 12,
        format!("identity worst {worst:.2e}, exact integer bound violations {}", exact.filter(|c| !c.passed).count()),
    )
}

fn criterion_5() -> (bool, String) {
    let cfg = MultistartConfig { seed: SEED, ..Default::default() };
    let mut ok = true;
    let mut parts = Vec::new();
    for n in 2..=5usize {
        let r = mu_kernel::properness_constant_estimate(n, 0.0, &cfg, POSITIVITY_FLOOR).unwrap();
        let upper = ((n as f64 - 1.0) / (2.0 * n as f64)).sqrt();
        let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ n as u64);
        let mut sphere_min = f64::INFINITY;
        for _ in 0..1_000_000 {
            let psi = SpinorPair {
                alpha: linalg::random_gaussian_vec(&mut rng, n),
                beta: linalg::random_gaussian_vec(&mut rng, n),
            };
            let psi = psi.scale(Complex64::new(1.0 / psi.norm(), 0.0));
            let x = mu_kernel::outer(&psi, &psi).unwrap();
            sphere_min = sphere_min.min(mu_kernel::project_p(&x).frobenius_norm());
        }
        let this = r.estimate > 1e-3 && r.estimate <= upper + 1e-6 && sphere_min >= r.estimate - 1e-4;
        ok &= this;
        parts.push(format!("n={n}: c_est {:.12} bound {:.12} sphere min {:.6}", r.estimate, upper, sphere_min));
    }
    (ok, parts.join("; "))
}

fn criterion_6() -> (bool, String) {
    let cfg = KaehlerSuiteConfig { seed: SEED, ..Default::default() };
    let mu = checks::kaehler_suite(&cfg, KaehlerPart::MuAgreement).unwrap();
    let split = checks::kaehler_suite(&cfg, KaehlerPart::Split).unwrap();
    let agreement: Vec<_> = mu.checks.iter().filter(|c| c.name == "mu_kaehler_agreement").collect();
    let ok_mu = !agreement.is_empty() && agreement.iter().all(|c| c.passed && c.tolerance <= 1e-12 && c.samples >= 10_000);
    let false_verdicts = split.checks.iter().filter(|c| !c.passed).count();
    let ok_split = split.checks.iter().all(|c| c.samples >= 10_000) && false_verdicts == 0;
    let worst = agreement.iter().map(|c| c.max_error).fold(0.0, f64::max);
    (
        ok_mu && ok_split && mu.passed,
        format!("mu agreement worst {worst:.2e}; split verdict cells with false verdicts: {false_verdicts}"),
    )
}

struct Margin {
    n: usize,
    tau: f64,
    lambda: Complex64,
    estimate: f64,
}

fn margins() -> Vec<Margin> {
    let cfg = MultistartConfig { seed: SEED, starts: 16, ..Default::default() };
    let mut out = Vec::new();
    for n in [2usize, 3] {
        for tau in [0.25, 0.5, 1.0] {
            for lambda in [Complex64::new(1.0, 0.0), Complex64::new(0.0, 2.0), Complex64::new(0.0, 0.0)] {
                let r = kaehler::impossibility_margin(n, tau, lambda, &cfg, POSITIVITY_FLOOR).unwrap();
                out.push(Margin { n, tau, lambda, estimate: r.optimization.estimate });
            }
        }
    }
    out
}

fn judge_margins(ms: &[Margin], oracle_value: impl Fn(usize, f64, f64) -> f64) -> (bool, String) {
    let mut bad = Vec::new();
    for m in ms {
        let expected = oracle_value(m.n, m.tau, m.lambda.norm());
        let ok = if m.lambda.norm() == 0.0 {
            m.estimate == 0.0
        } else {
            (m.estimate - expected).abs() <= 1e-4 * expected
        };
        if !ok {
            bad.push(format!("n={} tau={} lambda={}: measured {:.6}, oracle {:.6}", m.n, m.tau, m.lambda, m.estimate, expected));
        }
    }
    (bad.is_empty(), format!("{} of {} cases disagree {:?}", bad.len(), ms.len(), bad))
}

fn criterion_7(ms: &[Margin]) -> (bool, String) {
    judge_margins(ms, |n, tau, l| {
        let n = n as f64;
        n * (n - 1.0).sqrt() * l / (n - 1.0 + tau)
    })
}

fn criterion_7_corrected(ms: &[Margin]) -> (bool, String) {
    let (ok, detail) = judge_margins(ms, oracle::schur_bound_numeric);
    // random points never beat the oracle
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut undercut = 0;
    for n in [2usize, 3] {
        for tau in [0.25, 0.5, 1.0] {
            let bound = oracle::schur_bound_numeric(n, tau, 1.0);
            for _ in 0..20_000 {
                let a = linalg::random_gaussian_vec(&mut rng, n);
                let b = linalg::random_gaussian_vec(&mut rng, n);
                let m = kaehler::brace(&linalg::rank_one(&b, &a), tau) - linalg::scalar_matrix(n, Complex64::new(1.0, 0.0));
                if m.norm() < bound - 1e-7 {
                    undercut += 1;
                }
            }
        }
    }
    (ok && undercut == 0, format!("{detail}; random points below oracle: {undercut}"))
}

fn criterion_8() -> (bool, String) {
    let cfg = KaehlerSuiteConfig { seed: SEED, ..Default::default() };
    let r = checks::kaehler_suite(&cfg, KaehlerPart::Decoupling).unwrap();
    let samples: usize = r.checks.iter().map(|c| c.samples).sum();
    let violations = r.checks.iter().filter(|c| !c.passed).count();
    (
        samples >= 1_000_000 && violations == 0,
        format!("{samples} samples over tau in [0, 1], n = 1..6; failing cells {violations}"),
    )
}

fn criterion_9() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut mismatches = Vec::new();
    let mut max_points = 0;
    let mut rank_two_violations = 0;
    let instances = 25;
    for i in 0..instances {
        let p = oracle::random_reduction_problem(&mut rng);
        let m = manifold(&p.form);
        let e = BundleData::new(p.rank, CohClass2(p.c1.clone()), p.c2).unwrap();
        let s = SpincStructure::new(CohClass2(p.spinc.clone()));
        let b = CurvatureBounds::new(p.c_trace, p.c_plus, p.c_minus, p.g.clone()).unwrap();
        let got = reductions::enumerate_reductions(&m, &e, &s, &b, p.kmax, p.dirac_multiplicity).unwrap();
        let want = oracle::brute_force_reductions(&p);
        let mut rows: Vec<oracle::ReductionRow> = got
            .candidates
            .iter()
            .map(|c| oracle::ReductionRow {
                rank: c.f.rank,
                k: c.stratum_k,
                c1: c.f.c1.0.clone(),
                c2: c.f.c2,
                perp_rank: c.f_perp.rank,
                perp_c1: c.f_perp.c1.0.clone(),
                perp_c2: c.f_perp.c2,
                tau: (*c.tau.numer(), *c.tau.denom()),
                dim_un: c.dim_un_part,
                dim_asd: c.dim_asd_part,
                total: c.total_dim,
            })
            .collect();
        let finite = got.candidates.iter().all(|c| c.c1_norm.is_finite());
        if p.rank == 2 {
            rank_two_violations += got.candidates.iter().filter(|c| c.f.rank != 1).count();
        }
        rows.sort();
        max_points = max_points.max(want.lattice_points);
        if rows != want.rows || got.pruned_inconsistent != want.pruned || got.lattice_points != want.lattice_points || !finite {
            mismatches.push(i);
        }
    }
    (
        mismatches.is_empty() && rank_two_violations == 0 && max_points <= 10_000,
        format!(
            "{instances} instances, mismatching {mismatches:?}, largest lattice {max_points} points, \
             rank-2 candidates for N=2: {rank_two_violations}"
        ),
    )
}

fn strata_drops(big_n: u32, mult: i64) -> Vec<(i64, i64)> {
    let f = oracle::scrambled_form(&mut ChaCha8Rng::seed_from_u64(SEED), 1, 2, 1, 4);
    let m = manifold(&f);
    let e = BundleData::new(big_n, CohClass2(vec![1; f.b2()]), 6).unwrap();
    let s = SpincStructure::new(CohClass2(f.characteristic.clone()));
    let strata = reductions::uhlenbeck_strata(&e, &m, &s, 5, mult).unwrap();
    let top = strata[0].expected_dim_pun;
    strata.iter().map(|st| (i64::from(st.k), top - st.expected_dim_pun)).collect()
}

fn criterion_10() -> (bool, String) {
    let mut bad = Vec::new();
    for big_n in [2u32, 3, 4] {
        for (k, drop) in strata_drops(big_n, cohomology::DEFAULT_DIRAC_MULTIPLICITY) {
            if drop != 4 * i64::from(big_n) * k {
                bad.push(format!("N={big_n} k={k}: drop {drop}, 4Nk = {}", 4 * i64::from(big_n) * k));
            }
        }
    }
    (bad.is_empty(), format!("{} of 18 strata disagree, e.g. {:?}", bad.len(), bad.iter().take(3).collect::<Vec<_>>()))
}

fn criterion_10_corrected() -> (bool, String) {
    let mut bad = Vec::new();
    for big_n in [2u32, 3, 4] {
        for mult in [1i64, 2] {
            for (k, drop) in strata_drops(big_n, mult) {
                if drop != (4 * i64::from(big_n) - mult) * k {
                    bad.push((big_n, mult, k, drop));
                }
            }
        }
        // the instanton part alone drops by 4Nk
        let f = oracle::scrambled_form(&mut ChaCha8Rng::seed_from_u64(SEED), 1, 2, 1, 4);
        let m = manifold(&f);
        let d = |c2: i64| cohomology::expected_dim_asd(&BundleData::new(big_n, CohClass2(vec![1; f.b2()]), c2).unwrap(), &m).unwrap();
        for k in 0..=5 {
            if d(6) - d(6 - k) != 4 * i64::from(big_n) * k {
                bad.push((big_n, 0, k, d(6) - d(6 - k)));
            }
        }
    }
    (bad.is_empty(), format!("monopole drop (4N - mult)k and instanton drop 4Nk; mismatches {bad:?}"))
}

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "cli", "tests", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn full_run() -> String {
    let seed = SEED.to_string();
    let commands: Vec<Vec<String>> = vec![
        vec!["mu", "check", "--suite", "all", "--samples", "300", "--seed", &seed],
        vec!["kaehler", "check", "--suite", "all", "--samples", "300", "--starts", "4", "--seed", &seed],
        vec!["mu", "properness", "--n", "3", "--starts", "8", "--seed", &seed],
        vec!["mu", "zero-divisor", "--n", "2", "--tau", "0.5", "--starts", "8", "--seed", &seed],
        vec!["kaehler", "margin", "--n", "2", "--tau", "0.5", "--lambda", "1+0i", "--starts", "8", "--seed", &seed],
        vec!["reductions", "enumerate", "--input", &data("cp2_rank3.json")],
        vec!["strata", "--input", &data("k3.json"), "--kmax", "3"],
        vec!["dim", "pun", "--input", &data("k3.json")],
    ]
    .into_iter()
    .map(|c| c.into_iter().map(String::from).collect())
    .collect();
    let mut out = String::new();
    for c in commands {
        let o = monopole_cli::run(std::iter::once("monopole".to_string()).chain(c));
        out.push_str(&format!("exit {}\n{}", o.code, o.stdout));
    }
    out
}

fn criterion_11() -> (bool, String) {
    let pool = |t: usize| rayon::ThreadPoolBuilder::new().num_threads(t).build().unwrap();
    let a = pool(1).install(full_run);
    let b = pool(1).install(full_run);
    let c = pool(4).install(full_run);
    let same = a == b && b == c;
    let all_ok = a.matches("exit 0\n").count() == 8;
    (
        same && all_ok,
        format!("{} bytes; identical across runs {}, across 1 and 4 threads {}", a.len(), a == b, b == c),
    )
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    if args.iter().any(|a| a == "--list") {
        return;
    }
    let mut verdicts = vec![
        timed("1", "SW reduction check", Some(1), criterion_1),
        timed("2", "instanton dimension check", Some(1), criterion_2),
        timed("3", "mu identity suite", Some(30), criterion_3),
        timed("4", "zero-divisor identity", Some(10), criterion_4),
        timed("5", "properness at tau = 0", Some(120), criterion_5),
        timed("6", "Kaehler cross-check", Some(60), criterion_6),
    ];
    let start = Instant::now();
    let ms = margins();
    let shared = start.elapsed();
    let mut v7 = timed("7", "impossibility margin vs n sqrt(n-1)|lambda|/(n-1+tau)", Some(60), || criterion_7(&ms));
    v7.elapsed += shared;
    let mut v7c = timed("7'", "impossibility margin vs numeric Schur bound", Some(60), || criterion_7_corrected(&ms));
    v7c.elapsed += shared;
    verdicts.push(v7);
    verdicts.push(v7c);
    verdicts.push(timed("8", "decoupling inequality", Some(30), criterion_8));
    verdicts.push(timed("9", "enumeration oracle", Some(60), criterion_9));
    verdicts.push(timed("10", "strata drop 4Nk", Some(1), criterion_10));
    verdicts.push(timed("10'", "strata drop (4N - mult)k", Some(1), criterion_10_corrected));
    verdicts.push(timed("11", "determinism", None, criterion_11));

    let mut unexpected = Vec::new();
    for v in &verdicts {
        let known = KNOWN_DEVIATIONS.contains(&v.id);
        let tag = match (v.passed, known) {
            (true, false) => "",
            (false, true) => "  [known deviation]",
            (true, true) => "  [known deviation no longer reproduces]",
            (false, false) => "",
        };
        if v.passed == known {
            unexpected.push(v.id);
        }
        let limit = v.limit.map(|l| format!(" / {} s", l.as_secs())).unwrap_or_default();
        println!(
            "{} criterion {:<3} {}: {} ({:.2} s{limit}){tag}",
            if v.passed { "PASS" } else { "FAIL" },
            v.id,
            v.title,
            v.detail,
            v.elapsed.as_secs_f64()
        );
    }
    let failed = verdicts.iter().filter(|v| !v.passed).count();
    println!("{} checks, {} passed, {} failed, {} unexpected", verdicts.len(), verdicts.len() - failed, failed, unexpected.len());
    if !unexpected.is_empty() {
        std::process::exit(1);
    }
}
