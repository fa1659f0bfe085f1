//! Multistart projected gradient descent with Armijo backtracking.
//!
//! The feasible set is either all of `R^d` or a product of unit spheres.
//! Each start draws its initial point from a ChaCha8 stream keyed by
//! `(seed, start index)`, so any start can be reproduced in isolation and
//! parallel execution gives bit-identical results.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

/// A smooth objective on `R^d`.
pub trait Objective: Sync {
    fn dim(&self) -> usize;
    fn value(&self, x: &[f64]) -> f64;
    /// Writes the Euclidean gradient into `grad` and returns the value.
    fn value_and_gradient(&self, x: &[f64], grad: &mut [f64]) -> f64;
}

#[derive(Debug, Clone, PartialEq)]
pub enum Domain {
    Euclidean { start_scale: f64 },
    /// Consecutive coordinate blocks of the given lengths, each normalized.
    Spheres(Vec<usize>),
}

#[derive(Debug, Clone, Serialize)]
pub struct MultistartConfig {
    pub starts: usize,
    pub seed: u64,
    pub max_iterations: usize,
    pub gradient_tolerance: f64,
}

impl Default for MultistartConfig {
    fn default() -> Self {
        MultistartConfig {
            starts: 64,
            seed: 0,
            max_iterations: 20_000,
            gradient_tolerance: 1e-8,
        }
    }
}

#[derive(Debug, Clone)]
pub struct StartOutcome {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub gradient_norm: f64,
    pub converged: bool,
}

const ARMIJO: f64 = 0.25;
const MIN_STEP: f64 = 1e-18;

fn retract(x: &mut [f64], domain: &Domain) {
    if let Domain::Spheres(blocks) = domain {
        let mut off = 0;
        for &len in blocks {
            let block = &mut x[off..off + len];
            let norm = block.iter().map(|v| v * v).sum::<f64>().sqrt();
            if norm > 0.0 {
                block.iter_mut().for_each(|v| *v /= norm);
            }
            off += len;
        }
    }
}

/// Removes the normal component of `grad` at `x`.
fn project_tangent(x: &[f64], grad: &mut [f64], domain: &Domain) {
    if let Domain::Spheres(blocks) = domain {
        let mut off = 0;
        for &len in blocks {
            let r = off..off + len;
            let radial: f64 = x[r.clone()].iter().zip(&grad[r.clone()]).map(|(a, b)| a * b).sum();
            for i in r {
                grad[i] -= radial * x[i];
            }
            off += len;
        }
    }
}

pub fn initial_point(dim: usize, domain: &Domain, seed: u64, start: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(start as u64);
    let mut x: Vec<f64> = (0..dim).map(|_| StandardNormal.sample(&mut rng)).collect();
    match domain {
        Domain::Euclidean { start_scale } => x.iter_mut().for_each(|v| *v *= start_scale),
        Domain::Spheres(_) => retract(&mut x, domain),
    }
    x
}

/// Local descent from one starting point.
pub fn descend<O: Objective + ?Sized>(
    obj: &O,
    domain: &Domain,
    mut x: Vec<f64>,
    max_iterations: usize,
    gradient_tolerance: f64,
) -> StartOutcome {
    let d = obj.dim();
    let mut grad = vec![0.0; d];
    let mut trial = vec![0.0; d];
    let mut value = obj.value_and_gradient(&x, &mut grad);
    project_tangent(&x, &mut grad, domain);
    let mut step: f64 = 1.0;
    let mut iterations = 0;
    let mut trial_grad = vec![0.0; d];
    loop {
        let gnorm2: f64 = grad.iter().map(|g| g * g).sum();
        let gnorm = gnorm2.sqrt();
        if gnorm < gradient_tolerance {
            return StartOutcome { x, value, iterations, gradient_norm: gnorm, converged: true };
        }
        if iterations >= max_iterations {
            return StartOutcome { x, value, iterations, gradient_norm: gnorm, converged: false };
        }
        iterations += 1;
        step = (step * 2.0).min(1e3);
        let accepted = loop {
            for i in 0..d {
                trial[i] = x[i] - step * grad[i];
            }
            retract(&mut trial, domain);
            let required = ARMIJO * step * gnorm2;
            if required > 4.0 * f64::EPSILON * value.abs() {
                let v = obj.value(&trial);
                if v <= value - required {
                    break Some(obj.value_and_gradient(&trial, &mut trial_grad));
                }
            } else {
                // value differences are below roundoff; use the gradient norm as merit
                let v = obj.value_and_gradient(&trial, &mut trial_grad);
                project_tangent(&trial, &mut trial_grad, domain);
                let t2: f64 = trial_grad.iter().map(|g| g * g).sum();
                if t2 < gnorm2 && v <= value + 4.0 * f64::EPSILON * value.abs() {
                    break Some(v);
                }
            }
            step *= 0.5;
            if step < MIN_STEP {
                break None;
            }
        };
        let Some(v) = accepted else {
            return StartOutcome { x, value, iterations, gradient_norm: gnorm, converged: false };
        };
        std::mem::swap(&mut x, &mut trial);
        std::mem::swap(&mut grad, &mut trial_grad);
        value = v;
        project_tangent(&x, &mut grad, domain);
    }
}

/// Runs `anchors` (fixed starting points) followed by random starts until
/// `config.starts` descents have been made. Results are in start order.
pub fn multistart<O: Objective + ?Sized>(
    obj: &O,
    domain: &Domain,
    config: &MultistartConfig,
    anchors: &[Vec<f64>],
) -> Vec<StartOutcome> {
    (0..config.starts)
        .into_par_iter()
        .map(|s| {
            let x0 = match anchors.get(s) {
                Some(a) => a.clone(),
                None => initial_point(obj.dim(), domain, config.seed, s),
            };
            descend(obj, domain, x0, config.max_iterations, config.gradient_tolerance)
        })
        .collect()
}

/// Index of the smallest value, first occurrence wins.
pub fn best_index(outcomes: &[StartOutcome]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (i, o) in outcomes.iter().enumerate() {
        match best {
            Some(b) if outcomes[b].value <= o.value => {}
            _ => best = Some(i),
        }
    }
    best
}

/// Central finite-difference gradient, for cross-checking analytic ones.
pub fn finite_difference_gradient<O: Objective + ?Sized>(obj: &O, x: &[f64], h: f64) -> Vec<f64> {
    let mut y = x.to_vec();
    (0..x.len())
        .map(|i| {
            y[i] = x[i] + h;
            let up = obj.value(&y);
            y[i] = x[i] - h;
            let down = obj.value(&y);
            y[i] = x[i];
            (up - down) / (2.0 * h)
        })
        .collect()
}
