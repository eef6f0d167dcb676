//! Structured (JSON) and tabular (CSV) run artifacts.
//!
//! Every CSV starts with `#`-prefixed metadata lines carrying the schema
//! version, the SHA-256 of the input and the seed.

use std::io::Write;
use std::path::Path;

use anyhow::Context;
use colregs_core::encounter::{CompliantRegion, EncounterAssessment};
use colregs_core::planner::{IterationRecord, PlanOutcome, PlannerParams, Waypoint};
use serde::{Deserialize, Serialize};

use crate::bench::{Campaign, TrialStats};
use crate::scenario::{LoadedScenario, SCHEMA_VERSION};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub tool_version: String,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
    pub scenario_sha256: String,
    pub seed: u64,
}

impl Metadata {
    pub fn now(scenario_sha256: &str, seed: u64) -> Self {
        Metadata {
            tool_version: env!("CARGO_PKG_VERSION").into(),
            timestamp: std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map_or(0, |d| d.as_secs()),
            scenario_sha256: scenario_sha256.into(),
            seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunOutput {
    pub schema_version: u32,
    pub metadata: Metadata,
    pub params: PlannerParams,
    /// `None` in open water.
    pub encounter: Option<EncounterAssessment>,
    pub region: CompliantRegion,
    pub c_min: f64,
    pub cost: Option<f64>,
    pub first_solution_iteration: Option<usize>,
    pub rejected_samples: u64,
    pub tree_size: usize,
    /// Start, intermediate waypoints, goal; empty without a solution.
    pub waypoints: Vec<Waypoint>,
    pub log: Vec<IterationRecord>,
}

impl RunOutput {
    pub fn new(loaded: &LoadedScenario, params: &PlannerParams, outcome: &PlanOutcome) -> Self {
        RunOutput {
            schema_version: SCHEMA_VERSION,
            metadata: Metadata::now(&loaded.hash, params.seed),
            params: *params,
            encounter: loaded.assessment,
            region: loaded.scenario.region,
            c_min: loaded.scenario.c_min(),
            cost: outcome.cost,
            first_solution_iteration: outcome.first_solution_iteration,
            rejected_samples: outcome.rejected_samples,
            tree_size: outcome.tree.len(),
            waypoints: outcome.path.clone().unwrap_or_default(),
            log: outcome.log.clone(),
        }
    }
}

fn write_header(w: &mut impl Write, pairs: &[(&str, String)]) -> std::io::Result<()> {
    writeln!(w, "# schema_version={SCHEMA_VERSION}")?;
    for (k, v) in pairs {
        writeln!(w, "# {k}={v}")?;
    }
    Ok(())
}

/// CSV body after the metadata lines; `rows` must serialize to flat records.
fn write_csv<T: Serialize>(path: &Path, header: &[(&str, String)], rows: &[T], columns: &[&str]) -> anyhow::Result<()> {
    let mut buf: Vec<u8> = Vec::new();
    write_header(&mut buf, header)?;
    {
        let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(&mut buf);
        w.write_record(columns)?;
        for r in rows {
            w.serialize(r)?;
        }
        w.flush()?;
    }
    std::fs::write(path, buf).with_context(|| format!("writing {}", path.display()))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> anyhow::Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

#[derive(Serialize)]
struct WaypointRow {
    index: usize,
    north: f64,
    east: f64,
    radius_of_acceptance: f64,
}

pub fn write_path_csv(path: &Path, run: &RunOutput) -> anyhow::Result<()> {
    let rows: Vec<WaypointRow> = run
        .waypoints
        .iter()
        .enumerate()
        .map(|(index, w)| WaypointRow {
            index,
            north: w.north,
            east: w.east,
            radius_of_acceptance: w.radius_of_acceptance,
        })
        .collect();
    let header = [
        ("scenario_sha256", run.metadata.scenario_sha256.clone()),
        ("seed", run.metadata.seed.to_string()),
        ("strategy", run.params.strategy.to_string()),
    ];
    write_csv(
        path,
        &header,
        &rows,
        &["index", "north", "east", "radius_of_acceptance"],
    )
}

/// Deterministic per-trial columns; timings live in a separate file.
#[derive(Serialize)]
struct TrialRow {
    strategy: String,
    trial: usize,
    seed: u64,
    solved: bool,
    samples_to_first_solution: Option<usize>,
    final_cost: Option<f64>,
    iterations_to_within_5pct: Option<usize>,
    rejected_samples: u64,
}

#[derive(Serialize)]
struct TimingRow {
    strategy: String,
    trial: usize,
    seed: u64,
    wall_time: f64,
    time_to_within_5pct: Option<f64>,
}

fn bench_header(hash: &str, campaign: &Campaign) -> Vec<(&'static str, String)> {
    let s = &campaign.summary;
    vec![
        ("scenario_sha256", hash.to_string()),
        ("seed", s.base_seed.to_string()),
        ("budget", s.budget.to_string()),
        (
            "reference_cost",
            s.reference_cost.map_or("none".into(), |c| format!("{c}")),
        ),
    ]
}

pub fn write_trials_csv(path: &Path, hash: &str, campaign: &Campaign) -> anyhow::Result<()> {
    let rows: Vec<TrialRow> = campaign
        .trials
        .iter()
        .map(|t: &TrialStats| TrialRow {
            strategy: t.strategy.to_string(),
            trial: t.trial,
            seed: t.seed,
            solved: t.final_cost.is_some(),
            samples_to_first_solution: t.samples_to_first_solution,
            final_cost: t.final_cost,
            iterations_to_within_5pct: t.iterations_to_within_5pct,
            rejected_samples: t.rejected_samples,
        })
        .collect();
    let columns = [
        "strategy",
        "trial",
        "seed",
        "solved",
        "samples_to_first_solution",
        "final_cost",
        "iterations_to_within_5pct",
        "rejected_samples",
    ];
    write_csv(path, &bench_header(hash, campaign), &rows, &columns)
}

pub fn write_timings_csv(path: &Path, hash: &str, campaign: &Campaign) -> anyhow::Result<()> {
    let rows: Vec<TimingRow> = campaign
        .trials
        .iter()
        .map(|t| TimingRow {
            strategy: t.strategy.to_string(),
            trial: t.trial,
            seed: t.seed,
            wall_time: t.wall_time,
            time_to_within_5pct: t.time_to_within_5pct,
        })
        .collect();
    let columns = ["strategy", "trial", "seed", "wall_time", "time_to_within_5pct"];
    write_csv(path, &bench_header(hash, campaign), &rows, &columns)
}

#[derive(Serialize)]
struct SampleRow {
    index: usize,
    north: f64,
    east: f64,
}

pub fn write_samples_csv(
    path: &Path,
    params_sha256: &str,
    seed: u64,
    space: &str,
    points: &[colregs_core::geom::Point],
) -> anyhow::Result<()> {
    let rows: Vec<SampleRow> = points
        .iter()
        .enumerate()
        .map(|(index, p)| SampleRow {
            index,
            north: p.north,
            east: p.east,
        })
        .collect();
    let header = [
        ("params_sha256", params_sha256.to_string()),
        ("seed", seed.to_string()),
        ("space", space.to_string()),
    ];
    write_csv(path, &header, &rows, &["index", "north", "east"])
}
