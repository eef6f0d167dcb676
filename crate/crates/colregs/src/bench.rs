//! Trial campaigns comparing sampling strategies on one scenario.

use std::time::Instant;

use colregs_core::planner::{plan, plan_with_clock, PlanOutcome, PlannerParams, Scenario, Strategy};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Relative band around the reference cost that counts as converged.
pub const CONVERGENCE_BAND: f64 = 0.05;

/// The reference pre-run uses this many times the trial budget.
pub const REFERENCE_BUDGET_FACTOR: usize = 10;

#[derive(Debug, Clone, PartialEq)]
pub struct CampaignConfig {
    pub strategies: Vec<Strategy>,
    pub trials: usize,
    /// Iterations per trial.
    pub budget: usize,
    pub base_seed: u64,
    /// `None` uses rayon's default pool.
    pub workers: Option<usize>,
    /// Trials per strategy in the reference pre-run.
    pub reference_trials: usize,
    /// Skips the pre-run when set.
    pub reference_cost: Option<f64>,
    /// Ends each trial once it reaches the band; the timing metrics are
    /// unchanged but later parts of the cost curves are missing.
    pub stop_at_band: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CostPoint {
    pub iteration: usize,
    /// Seconds since the trial started.
    pub elapsed: f64,
    pub c_best: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialStats {
    pub strategy: Strategy,
    pub trial: usize,
    pub seed: u64,
    /// Draws, rejected ones included, up to and including the one that
    /// produced the first solution.
    pub samples_to_first_solution: Option<usize>,
    /// Every improvement of `c_best`, so strictly decreasing.
    pub cost_curve: Vec<CostPoint>,
    pub final_cost: Option<f64>,
    pub iterations_to_within_5pct: Option<usize>,
    pub time_to_within_5pct: Option<f64>,
    pub wall_time: f64,
    pub iterations: usize,
    pub rejected_samples: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricSummary {
    pub n: usize,
    pub mean: f64,
    /// Unbiased; zero for a single value.
    pub std: f64,
}

impl MetricSummary {
    pub fn of(values: &[f64]) -> Option<MetricSummary> {
        let n = values.len();
        if n == 0 {
            return None;
        }
        let mean = values.iter().sum::<f64>() / n as f64;
        let std = if n < 2 {
            0.0
        } else {
            (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt()
        };
        Some(MetricSummary { n, mean, std })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub iteration: usize,
    /// Mean `c_best / c_min` over the trials solved by this iteration.
    pub mean_relative_cost: Option<f64>,
    pub solved_fraction: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrategySummary {
    pub strategy: Strategy,
    pub trials: usize,
    pub solved: usize,
    pub converged: usize,
    /// Fraction of all trials that reached the band.
    pub convergence_rate: f64,
    pub samples_to_first_solution: Option<MetricSummary>,
    pub final_relative_cost: Option<MetricSummary>,
    pub iterations_to_within_5pct: Option<MetricSummary>,
    pub time_to_within_5pct: Option<MetricSummary>,
    pub wall_time: Option<MetricSummary>,
    /// Rejected draws over all draws.
    pub rejected_fraction: f64,
    pub cost_curve: Vec<CurvePoint>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HardwareFingerprint {
    pub os: String,
    pub arch: String,
    pub logical_cpus: usize,
    pub cpu_model: Option<String>,
    pub workers: usize,
}

impl HardwareFingerprint {
    pub fn detect(workers: usize) -> Self {
        let cpu_model = std::fs::read_to_string("/proc/cpuinfo").ok().and_then(|s| {
            s.lines()
                .find(|l| l.starts_with("model name"))
                .and_then(|l| l.split(':').nth(1))
                .map(|m| m.trim().to_string())
        });
        HardwareFingerprint {
            os: std::env::consts::OS.into(),
            arch: std::env::consts::ARCH.into(),
            logical_cpus: std::thread::available_parallelism().map_or(1, |n| n.get()),
            cpu_model,
            workers,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignSummary {
    pub trials_per_strategy: usize,
    pub budget: usize,
    pub base_seed: u64,
    pub c_min: f64,
    /// Best cost of the pre-run (or the supplied value); the band is relative to it.
    pub reference_cost: Option<f64>,
    pub reference_budget: usize,
    pub hardware: HardwareFingerprint,
    pub strategies: Vec<StrategySummary>,
}

#[derive(Debug, Clone)]
pub struct Campaign {
    pub summary: CampaignSummary,
    /// Ordered by strategy, then trial.
    pub trials: Vec<TrialStats>,
}

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("campaign needs at least one trial and one strategy")]
    Empty,
    #[error("budget must be at least one iteration")]
    ZeroBudget,
    #[error(transparent)]
    Core(#[from] colregs_core::Error),
    #[error("worker pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

/// Seed of trial `trial` of `strategy`: the first eight bytes of
/// SHA-256 over the little-endian base seed, strategy index and trial index.
pub fn trial_seed(base_seed: u64, strategy: Strategy, trial: u64) -> u64 {
    let mut h = Sha256::new();
    h.update(base_seed.to_le_bytes());
    h.update(strategy.index().to_le_bytes());
    h.update(trial.to_le_bytes());
    let digest = h.finalize();
    u64::from_le_bytes(digest[..8].try_into().expect("digest is 32 bytes"))
}

fn reference_seed(base_seed: u64, strategy: Strategy, j: u64) -> u64 {
    trial_seed(base_seed ^ 0x005e_ed0f_2efe_2ece, strategy, j)
}

fn timed_plan(scenario: &Scenario, params: &PlannerParams) -> colregs_core::Result<(PlanOutcome, f64)> {
    let start = Instant::now();
    let out = plan_with_clock(scenario, params, || start.elapsed().as_secs_f64())?;
    Ok((out, start.elapsed().as_secs_f64()))
}

/// Runs one trial and reduces its log to [`TrialStats`].
pub fn run_trial(
    scenario: &Scenario,
    base: &PlannerParams,
    strategy: Strategy,
    trial: usize,
    seed: u64,
    reference_cost: Option<f64>,
    stop_at_band: bool,
) -> colregs_core::Result<TrialStats> {
    let target_cost = reference_cost
        .filter(|_| stop_at_band)
        .map(|r| (1.0 + CONVERGENCE_BAND) * r);
    let params = PlannerParams {
        strategy,
        seed,
        target_cost,
        ..*base
    };
    let (out, wall_time) = timed_plan(scenario, &params)?;
    Ok(trial_stats(&out, strategy, trial, seed, reference_cost, wall_time))
}

/// Reduces a finished run to its campaign record.
pub fn trial_stats(
    out: &PlanOutcome,
    strategy: Strategy,
    trial: usize,
    seed: u64,
    reference_cost: Option<f64>,
    wall_time: f64,
) -> TrialStats {
    let mut cost_curve: Vec<CostPoint> = Vec::new();
    for rec in &out.log {
        if let Some(c) = rec.c_best {
            if cost_curve.last().is_none_or(|p| c < p.c_best) {
                cost_curve.push(CostPoint {
                    iteration: rec.iteration,
                    elapsed: rec.elapsed,
                    c_best: c,
                });
            }
        }
    }
    let hit = reference_cost.and_then(|r| {
        let limit = (1.0 + CONVERGENCE_BAND) * r;
        cost_curve.iter().find(|p| p.c_best <= limit)
    });
    TrialStats {
        strategy,
        trial,
        seed,
        samples_to_first_solution: out.first_solution_iteration.map(|i| i.max(1)),
        final_cost: out.cost,
        iterations_to_within_5pct: hit.map(|p| p.iteration),
        time_to_within_5pct: hit.map(|p| p.elapsed.min(wall_time)),
        wall_time,
        iterations: out.log.len(),
        rejected_samples: out.rejected_samples,
        cost_curve,
    }
}

/// Best cost over `trials` runs per strategy at the reference budget.
pub fn reference_cost(
    scenario: &Scenario,
    base: &PlannerParams,
    strategies: &[Strategy],
    trials: usize,
    budget: usize,
    base_seed: u64,
) -> colregs_core::Result<Option<f64>> {
    let jobs: Vec<(Strategy, u64)> = strategies
        .iter()
        .flat_map(|&s| (0..trials as u64).map(move |j| (s, j)))
        .collect();
    let costs = jobs
        .par_iter()
        .map(|&(strategy, j)| {
            let params = PlannerParams {
                strategy,
                seed: reference_seed(base_seed, strategy, j),
                max_iterations: budget,
                ..*base
            };
            plan(scenario, &params).map(|o| o.cost)
        })
        .collect::<colregs_core::Result<Vec<_>>>()?;
    Ok(costs.into_iter().flatten().min_by(f64::total_cmp))
}

/// Runs every trial of every strategy. Trials run concurrently; results are
/// merged by (strategy, trial) so everything but the timings is reproducible.
pub fn run_campaign(
    scenario: &Scenario,
    base: &PlannerParams,
    config: &CampaignConfig,
) -> Result<Campaign, BenchError> {
    if config.trials == 0 || config.strategies.is_empty() {
        return Err(BenchError::Empty);
    }
    if config.budget == 0 {
        return Err(BenchError::ZeroBudget);
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = config.workers {
        builder = builder.num_threads(w);
    }
    let pool = builder.build()?;
    let base = PlannerParams {
        max_iterations: config.budget,
        target_cost: None,
        ..*base
    };
    let reference_budget = config.budget * REFERENCE_BUDGET_FACTOR;
    pool.install(|| -> Result<Campaign, BenchError> {
        let reference = match config.reference_cost {
            Some(c) => Some(c),
            None => reference_cost(
                scenario,
                &base,
                &config.strategies,
                config.reference_trials.max(1),
                reference_budget,
                config.base_seed,
            )?,
        };
        let jobs: Vec<(Strategy, usize)> = config
            .strategies
            .iter()
            .flat_map(|&s| (0..config.trials).map(move |i| (s, i)))
            .collect();
        let mut trials = jobs
            .par_iter()
            .map(|&(s, i)| {
                let seed = trial_seed(config.base_seed, s, i as u64);
                run_trial(scenario, &base, s, i, seed, reference, config.stop_at_band)
            })
            .collect::<colregs_core::Result<Vec<_>>>()?;
        trials.sort_by_key(|t| (config.strategies.iter().position(|&s| s == t.strategy), t.trial));
        let summary = CampaignSummary {
            trials_per_strategy: config.trials,
            budget: config.budget,
            base_seed: config.base_seed,
            c_min: scenario.c_min(),
            reference_cost: reference,
            reference_budget: if config.reference_cost.is_some() {
                0
            } else {
                reference_budget
            },
            hardware: HardwareFingerprint::detect(pool.current_num_threads()),
            strategies: summarize(&trials, scenario.c_min(), config.budget),
        };
        Ok(Campaign { summary, trials })
    })
}

const CURVE_POINTS: usize = 100;

/// Per-strategy mean and unbiased std of each metric, in order of first
/// appearance. Unsolved trials are left out of the time and cost metrics but
/// still count towards the convergence rate.
pub fn summarize(raw: &[TrialStats], c_min: f64, budget: usize) -> Vec<StrategySummary> {
    let mut order: Vec<Strategy> = Vec::new();
    for t in raw {
        if !order.contains(&t.strategy) {
            order.push(t.strategy);
        }
    }
    order
        .into_iter()
        .map(|strategy| {
            let rows: Vec<&TrialStats> = raw.iter().filter(|t| t.strategy == strategy).collect();
            let collect =
                |f: &dyn Fn(&TrialStats) -> Option<f64>| -> Vec<f64> { rows.iter().filter_map(|t| f(t)).collect() };
            let converged = rows.iter().filter(|t| t.time_to_within_5pct.is_some()).count();
            let draws: u64 = rows.iter().map(|t| t.iterations as u64).sum();
            let rejected: u64 = rows.iter().map(|t| t.rejected_samples).sum();
            StrategySummary {
                strategy,
                trials: rows.len(),
                solved: rows.iter().filter(|t| t.final_cost.is_some()).count(),
                converged,
                convergence_rate: converged as f64 / rows.len() as f64,
                samples_to_first_solution: MetricSummary::of(&collect(&|t| {
                    t.samples_to_first_solution.map(|s| s as f64)
                })),
                final_relative_cost: MetricSummary::of(&collect(&|t| t.final_cost.map(|c| c / c_min))),
                iterations_to_within_5pct: MetricSummary::of(&collect(&|t| {
                    t.iterations_to_within_5pct.map(|s| s as f64)
                })),
                time_to_within_5pct: MetricSummary::of(&collect(&|t| t.time_to_within_5pct)),
                wall_time: MetricSummary::of(&collect(&|t| Some(t.wall_time))),
                rejected_fraction: if draws == 0 {
                    0.0
                } else {
                    rejected as f64 / draws as f64
                },
                cost_curve: mean_curve(&rows, c_min, budget),
            }
        })
        .collect()
}

fn cost_at(curve: &[CostPoint], iteration: usize) -> Option<f64> {
    let k = curve.partition_point(|p| p.iteration <= iteration);
    k.checked_sub(1).map(|k| curve[k].c_best)
}

fn mean_curve(rows: &[&TrialStats], c_min: f64, budget: usize) -> Vec<CurvePoint> {
    let step = budget.div_ceil(CURVE_POINTS).max(1);
    (step..=budget)
        .step_by(step)
        .map(|iteration| {
            let costs: Vec<f64> = rows.iter().filter_map(|t| cost_at(&t.cost_curve, iteration)).collect();
            CurvePoint {
                iteration,
                mean_relative_cost: (!costs.is_empty()).then(|| costs.iter().sum::<f64>() / costs.len() as f64 / c_min),
                solved_fraction: costs.len() as f64 / rows.len() as f64,
            }
        })
        .collect()
}
