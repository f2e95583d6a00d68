//! Nonlocal skew information: the supremum of `I(ρ, A_1 + ... + A_n)` over
//! local qubit spin observables, searched over per-site Bloch angles
//! `(θ_j, φ_j)` by multi-start Nelder–Mead.
//!
//! Starts are a coarse angle grid followed by `restarts` uniformly random
//! directions drawn from `ChaCha8Rng::seed_from_u64(seed)`. Each start is
//! refined independently; the reported value is the maximum over starts with
//! ties going to the lowest start index, so parallel and sequential runs
//! agree exactly.

use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::nelder_mead::{self, NelderMeadOptions};
use crate::observables::{BlochVector, LocalObservableSet};
use crate::skew::SkewEvaluator;
use crate::states::DensityMatrix;

/// Upper limit on full Cartesian grid seeds. Larger registers fall back to
/// a grid where every site shares the same direction.
pub const GRID_CAP: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OptimizerConfig {
    pub grid_resolution: usize,
    pub restarts: usize,
    pub max_iterations: usize,
    pub convergence_tolerance: f64,
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            grid_resolution: 4,
            restarts: 32,
            max_iterations: 500,
            convergence_tolerance: 1e-8,
            seed: 0,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |detail: &str| Error::OutOfRange {
            what: "optimizer config",
            detail: detail.into(),
        };
        if self.grid_resolution < 2 {
            return Err(bad("grid_resolution must be at least 2"));
        }
        if self.restarts < 1 {
            return Err(bad("restarts must be at least 1"));
        }
        if self.max_iterations < 1 {
            return Err(bad("max_iterations must be positive"));
        }
        if !(self.convergence_tolerance > 0.0) {
            return Err(bad("convergence_tolerance must be positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptimizationResult {
    pub value: f64,
    pub best_observables: Vec<BlochVector>,
    /// `(θ_1, φ_1, ..., θ_n, φ_n)` of the best start.
    pub best_angles: Vec<f64>,
    pub best_start: usize,
    pub starts_evaluated: usize,
    pub converged: bool,
    /// Best value reached from each start, in start order.
    pub trace: Vec<f64>,
}

/// Objective: `I(ρ, Σ_j a_j·σ)` with `a_j` built from `(θ_j, φ_j)`.
pub fn evaluate_at(rho: &DensityMatrix, angles: &[f64]) -> Result<f64> {
    let evaluator = qubit_evaluator(rho)?;
    evaluate_with(&evaluator, angles)
}

fn evaluate_with(evaluator: &SkewEvaluator, angles: &[f64]) -> Result<f64> {
    let n = evaluator.local_dims().len();
    if angles.len() != 2 * n {
        return Err(Error::WrongShape(format!(
            "expected {} angles for {n} sites, got {}",
            2 * n,
            angles.len()
        )));
    }
    let set = LocalObservableSet::from_angles(angles)?;
    Ok(evaluator.evaluate_local_sum(&set)?.value)
}

fn qubit_evaluator(rho: &DensityMatrix) -> Result<SkewEvaluator> {
    if let Some((site, &dim)) = rho.local_dims().iter().enumerate().find(|(_, &d)| d != 2) {
        return Err(Error::NonQubitSite { site, dim });
    }
    SkewEvaluator::new(rho)
}

/// Start points: grid seeds first, then random directions.
pub fn start_points(n: usize, config: &OptimizerConfig) -> Vec<Vec<f64>> {
    let r = config.grid_resolution;
    let thetas: Vec<f64> = (0..r).map(|i| PI * i as f64 / (r - 1) as f64).collect();
    let phis: Vec<f64> = (0..r).map(|j| TAU * j as f64 / r as f64).collect();
    let directions: Vec<(f64, f64)> = thetas
        .iter()
        .flat_map(|&t| phis.iter().map(move |&p| (t, p)))
        .collect();

    let mut starts = Vec::new();
    let full = (r * r)
        .checked_pow(n as u32)
        .filter(|&count| count <= GRID_CAP);
    match full {
        Some(count) => {
            for mut code in 0..count {
                let mut point = Vec::with_capacity(2 * n);
                for _ in 0..n {
                    let (t, p) = directions[code % directions.len()];
                    code /= directions.len();
                    point.push(t);
                    point.push(p);
                }
                starts.push(point);
            }
        }
        None => {
            for &(t, p) in &directions {
                starts.push((0..n).flat_map(|_| [t, p]).collect());
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    for _ in 0..config.restarts {
        let point = (0..n)
            .flat_map(|_| {
                let u: f64 = rng.random();
                let theta = (1.0 - 2.0 * u).clamp(-1.0, 1.0).acos();
                let phi = rng.random_range(0.0..TAU);
                [theta, phi]
            })
            .collect();
        starts.push(point);
    }
    starts
}

pub fn nonlocal_skew_information(
    rho: &DensityMatrix,
    config: &OptimizerConfig,
) -> Result<OptimizationResult> {
    nonlocal_skew_information_with(rho, config, Execution::default())
}

/// Multi-start search; `execution` picks parallel or sequential refinement.
/// Both produce identical results.
pub fn nonlocal_skew_information_with(
    rho: &DensityMatrix,
    config: &OptimizerConfig,
    execution: Execution,
) -> Result<OptimizationResult> {
    config.validate()?;
    let evaluator = qubit_evaluator(rho)?;
    let n = rho.num_sites();
    let starts = start_points(n, config);
    let options = NelderMeadOptions {
        max_iterations: config.max_iterations,
        tolerance: config.convergence_tolerance,
        ..Default::default()
    };
    let outcomes = execution.map(&starts, |x0| {
        nelder_mead::maximize(|x| evaluate_with(&evaluator, x), x0, &options)
    });

    let mut best: Option<(usize, nelder_mead::NelderMeadOutcome)> = None;
    let mut trace = Vec::with_capacity(outcomes.len());
    for (i, outcome) in outcomes.into_iter().enumerate() {
        let outcome = outcome?;
        trace.push(outcome.value);
        let better = match &best {
            None => true,
            Some((_, b)) => outcome.value > b.value,
        };
        if better {
            best = Some((i, outcome));
        }
    }
    let (best_start, outcome) = best.expect("at least one start");

    let angles: Vec<f64> = outcome
        .x
        .chunks_exact(2)
        .flat_map(|p| {
            let (t, ph) = BlochVector::from_angles(p[0], p[1]).to_angles();
            [t, ph]
        })
        .collect();
    let best_observables = outcome
        .x
        .chunks_exact(2)
        .map(|p| BlochVector::from_angles(p[0], p[1]))
        .collect();

    Ok(OptimizationResult {
        value: outcome.value,
        best_observables,
        best_angles: angles,
        best_start,
        starts_evaluated: trace.len(),
        converged: outcome.converged,
        trace,
    })
}
