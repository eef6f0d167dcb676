//! Command-line front end: `plan`, `bench` and `sample`.
//!
//! Exit codes: 0 success, 1 input error, 2 no solution or no action required.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use colregs_core::encounter::CompliantRegion;
use colregs_core::geom::{Angle, ArcInterval, Point};
use colregs_core::planner::{plan_with_clock, PlannerParams, Strategy};
use colregs_core::sampling::{
    rejection_sample_rect, sample_elliptical_half_annulus, sample_half_annulus, AnnulusSpec, EllipseHalf,
    EllipticalAnnulusSpec, RandomSource, Rect, SamplingMode, DEFAULT_REJECTION_CAP,
};

use crate::bench::{run_campaign, CampaignConfig};
use crate::output::{write_json, write_path_csv, write_samples_csv, write_timings_csv, write_trials_csv, RunOutput};
use crate::scenario::{sha256_hex, ScenarioError, ScenarioFile};
use crate::svg;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_NO_SOLUTION: i32 = 2;

/// Default output directory when `--out` is absent.
pub const OUT_DIR_ENV: &str = "COLREGS_OUT_DIR";

#[derive(Debug, Parser)]
#[command(
    name = "colregs",
    version,
    about = "COLREGs-compliant RRT* planning with half-annulus sampling"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct OutArg {
    /// Output directory [env: COLREGS_OUT_DIR, default: out]
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl OutArg {
    fn resolve(&self) -> PathBuf {
        self.out
            .clone()
            .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from("out"))
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Plan one path and write plan.json, path.csv and plan.svg.
    Plan {
        scenario: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_parser = parse_strategy)]
        strategy: Option<Strategy>,
        #[arg(long)]
        iterations: Option<usize>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Run a trial campaign and write trials.csv, timings.csv, summary.json and comparison.svg.
    Bench {
        scenario: PathBuf,
        #[arg(long)]
        trials: Option<usize>,
        /// `all` or a comma-separated list of strategy names.
        #[arg(long, default_value = "all")]
        strategies: String,
        /// Iterations per trial.
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        workers: Option<usize>,
        /// Skip the high-budget pre-run and use this reference cost.
        #[arg(long)]
        reference_cost: Option<f64>,
        /// End each trial once it is within 5% of the reference cost.
        #[arg(long)]
        stop_at_band: bool,
        #[command(flatten)]
        out: OutArg,
    },
    /// Draw points from one sampling space and write samples.csv and samples.svg.
    Sample {
        /// half-annulus, elliptical-half-annulus, rect-rejection or ellipse-rejection.
        #[arg(long)]
        space: String,
        /// Comma-separated `key=value` pairs, e.g. `r_min=500,r_max=3000`.
        #[arg(long, default_value = "")]
        params: String,
        #[arg(long, default_value_t = 1000)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// exact or paper.
        #[arg(long, default_value = "exact")]
        mode: String,
        #[command(flatten)]
        out: OutArg,
    },
}

fn parse_strategy(s: &str) -> Result<Strategy, String> {
    s.parse::<Strategy>().map_err(|e| e.to_string())
}

pub fn parse_strategies(list: &str) -> anyhow::Result<Vec<Strategy>> {
    if list.trim() == "all" {
        return Ok(Strategy::ALL.to_vec());
    }
    let mut out = Vec::new();
    for name in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let s: Strategy = name.parse().map_err(|e| anyhow::anyhow!("--strategies: {e}"))?;
        if !out.contains(&s) {
            out.push(s);
        }
    }
    if out.is_empty() {
        bail!("--strategies: no strategy given");
    }
    Ok(out)
}

/// Parses the argument list (program name first) and runs; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<ScenarioError>() {
                Some(ScenarioError::NoAction(_)) => EXIT_NO_SOLUTION,
                _ => EXIT_INPUT,
            }
        }
    }
}

fn execute(cli: Cli) -> anyhow::Result<i32> {
    match cli.command {
        Command::Plan {
            scenario,
            seed,
            strategy,
            iterations,
            out,
        } => cmd_plan(&scenario, seed, strategy, iterations, &out.resolve()),
        Command::Bench {
            scenario,
            trials,
            strategies,
            budget,
            seed,
            workers,
            reference_cost,
            stop_at_band,
            out,
        } => {
            let config = BenchOptions {
                trials,
                strategies: parse_strategies(&strategies)?,
                budget,
                seed,
                workers,
                reference_cost,
                stop_at_band,
            };
            cmd_bench(&scenario, config, &out.resolve())
        }
        Command::Sample {
            space,
            params,
            n,
            seed,
            mode,
            out,
        } => cmd_sample(&space, &params, n, seed, &mode, &out.resolve()),
    }
}

fn create_dir(dir: &Path) -> anyhow::Result<()> {
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))
}

pub fn cmd_plan(
    path: &Path,
    seed: Option<u64>,
    strategy: Option<Strategy>,
    iterations: Option<usize>,
    out_dir: &Path,
) -> anyhow::Result<i32> {
    let loaded = ScenarioFile::load(path)?;
    let params = PlannerParams {
        seed: seed.unwrap_or(loaded.params.seed),
        strategy: strategy.unwrap_or(loaded.params.strategy),
        max_iterations: iterations.unwrap_or(loaded.params.max_iterations),
        ..loaded.params
    };
    let start = Instant::now();
    let outcome = plan_with_clock(&loaded.scenario, &params, || start.elapsed().as_secs_f64())?;
    create_dir(out_dir)?;
    let run = RunOutput::new(&loaded, &params, &outcome);
    write_json(&out_dir.join("plan.json"), &run)?;
    write_path_csv(&out_dir.join("path.csv"), &run)?;
    let route: Vec<Point> = loaded
        .file
        .nominal_route
        .iter()
        .map(|&[n, e]| Point::new(n, e))
        .collect();
    let title = match (&loaded.assessment, outcome.cost) {
        (Some(a), Some(c)) => format!("{}: cost {c:.1} m, seed {}", a.kind.describe(), params.seed),
        (None, Some(c)) => format!("open water: cost {c:.1} m, seed {}", params.seed),
        (_, None) => format!("no solution, seed {}", params.seed),
    };
    let plot = svg::plan_svg(&loaded.scenario, &outcome.tree, outcome.path.as_deref(), &route, &title);
    std::fs::write(out_dir.join("plan.svg"), plot)?;
    match outcome.cost {
        Some(c) => {
            println!(
                "{}: cost {c:.1} m ({:.4} × c_min) with {} waypoints; wrote {}",
                params.strategy,
                c / loaded.scenario.c_min(),
                run.waypoints.len(),
                out_dir.display()
            );
            Ok(EXIT_OK)
        }
        None => {
            eprintln!("no solution within {} iterations", params.max_iterations);
            Ok(EXIT_NO_SOLUTION)
        }
    }
}

/// Command-line overrides of a scenario's bench settings.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchOptions {
    pub trials: Option<usize>,
    pub strategies: Vec<Strategy>,
    pub budget: Option<usize>,
    pub seed: Option<u64>,
    pub workers: Option<usize>,
    pub reference_cost: Option<f64>,
    pub stop_at_band: bool,
}

pub fn cmd_bench(path: &Path, options: BenchOptions, out_dir: &Path) -> anyhow::Result<i32> {
    let loaded = ScenarioFile::load(path)?;
    let settings = &loaded.file.bench;
    let config = CampaignConfig {
        strategies: options.strategies,
        trials: options.trials.unwrap_or(settings.trials),
        budget: options.budget.unwrap_or(settings.budget),
        base_seed: options.seed.unwrap_or(settings.seed),
        workers: options.workers,
        reference_trials: settings.reference_trials,
        reference_cost: options.reference_cost,
        stop_at_band: options.stop_at_band,
    };
    if config.trials == 0 {
        bail!("--trials must be at least 1");
    }
    if config.workers == Some(0) {
        bail!("--workers must be at least 1");
    }
    let campaign = run_campaign(&loaded.scenario, &loaded.params, &config)?;
    create_dir(out_dir)?;
    write_trials_csv(&out_dir.join("trials.csv"), &loaded.hash, &campaign)?;
    write_timings_csv(&out_dir.join("timings.csv"), &loaded.hash, &campaign)?;
    let summary = serde_json::json!({
        "schema_version": crate::scenario::SCHEMA_VERSION,
        "scenario_sha256": loaded.hash,
        "summary": campaign.summary,
    });
    write_json(&out_dir.join("summary.json"), &summary)?;
    std::fs::write(out_dir.join("comparison.svg"), svg::comparison_svg(&campaign))?;
    for s in &campaign.summary.strategies {
        let first = s
            .samples_to_first_solution
            .map_or("-".into(), |m| format!("{:.1}", m.mean));
        let t5 = s.time_to_within_5pct.map_or("-".into(), |m| format!("{:.5}", m.mean));
        println!(
            "{:<24} solved {:>4}/{:<4} first {:>8}  to 5% {:>9} s  converged {:.2}",
            s.strategy.as_str(),
            s.solved,
            s.trials,
            first,
            t5,
            s.convergence_rate
        );
    }
    if campaign.summary.strategies.iter().all(|s| s.solved == 0) {
        eprintln!("no trial found a solution");
        return Ok(EXIT_NO_SOLUTION);
    }
    Ok(EXIT_OK)
}

/// `key=value` pairs; every key must be consumed.
struct KeyValues(Vec<(String, String, bool)>);

impl KeyValues {
    fn parse(text: &str) -> anyhow::Result<Self> {
        let mut pairs = Vec::new();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let Some((k, v)) = item.split_once('=') else {
                bail!("--params: expected key=value, found `{item}`");
            };
            pairs.push((k.trim().to_string(), v.trim().to_string(), false));
        }
        Ok(KeyValues(pairs))
    }

    fn raw(&mut self, key: &str) -> Option<String> {
        self.0.iter_mut().find(|p| p.0 == key).map(|p| {
            p.2 = true;
            p.1.clone()
        })
    }

    fn num(&mut self, key: &str, default: Option<f64>) -> anyhow::Result<f64> {
        match self.raw(key) {
            Some(v) => v.parse().with_context(|| format!("--params: `{key}` is not a number")),
            None => default.with_context(|| format!("--params: missing `{key}`")),
        }
    }

    fn finish(self) -> anyhow::Result<()> {
        if let Some(p) = self.0.iter().find(|p| !p.2) {
            bail!("--params: unknown key `{}`", p.0);
        }
        Ok(())
    }
}

fn degrees(v: f64, key: &str) -> anyhow::Result<Angle> {
    Angle::from_degrees(v).map_err(|e| anyhow::anyhow!("--params: `{key}`: {e}"))
}

pub fn cmd_sample(space: &str, params: &str, n: usize, seed: u64, mode: &str, out_dir: &Path) -> anyhow::Result<i32> {
    let mode = match mode {
        "exact" => SamplingMode::ExactAreaUniform,
        "paper" => SamplingMode::PaperFaithful,
        other => bail!("--mode: expected exact or paper, found `{other}`"),
    };
    let mut kv = KeyValues::parse(params)?;
    let center = Point::new(kv.num("center_north", Some(0.0))?, kv.num("center_east", Some(0.0))?);
    let mut rng = RandomSource::seed_from_u64(seed);
    let (points, outline): (Vec<Point>, Option<CompliantRegion>) = match space {
        "half-annulus" | "rect-rejection" => {
            let r_min = kv.num("r_min", None)?;
            let r_max = kv.num("r_max", None)?;
            let start = degrees(kv.num("arc_start_deg", Some(0.0))?, "arc_start_deg")?;
            let span = kv.num("arc_span_deg", Some(180.0))?.to_radians();
            kv.finish()?;
            let arc = ArcInterval::new(start, span)?;
            let spec = AnnulusSpec::new(center, r_min, r_max, arc)?;
            let pts = if space == "half-annulus" {
                (0..n).map(|_| sample_half_annulus(&spec, mode, &mut rng)).collect()
            } else {
                let bounds = Rect::square(center, r_max)?;
                (0..n)
                    .map(|_| rejection_sample_rect(&bounds, |p| spec.contains(p), &mut rng, DEFAULT_REJECTION_CAP).map(|d| d.point))
                    .collect::<colregs_core::Result<Vec<_>>>()?
            };
            let start_pt = center.offset(arc.mid().opposite(), r_max);
            let region = CompliantRegion::new(center, r_min, r_max, arc, start_pt, center.offset(arc.mid(), r_max))?;
            (pts, Some(region))
        }
        "elliptical-half-annulus" | "ellipse-rejection" => {
            let a = kv.num("a", None)?;
            let b = kv.num("b", None)?;
            let r_min = kv.num("r_min", Some(0.0))?;
            let orientation = degrees(kv.num("orientation_deg", Some(0.0))?, "orientation_deg")?;
            let half = match kv.raw("half").as_deref() {
                None | Some("positive") => EllipseHalf::Positive,
                Some("negative") => EllipseHalf::Negative,
                Some("both") => EllipseHalf::Both,
                Some(other) => bail!("--params: `half` must be positive, negative or both, found `{other}`"),
            };
            kv.finish()?;
            let spec = EllipticalAnnulusSpec::new(center, a, b, r_min, orientation, half)?;
            let pts = if space == "elliptical-half-annulus" {
                (0..n).map(|_| sample_elliptical_half_annulus(&spec, mode, &mut rng)).collect()
            } else {
                let bounds = Rect::new(center, a, b, orientation)?;
                (0..n)
                    .map(|_| rejection_sample_rect(&bounds, |p| spec.contains(p), &mut rng, DEFAULT_REJECTION_CAP).map(|d| d.point))
                    .collect::<colregs_core::Result<Vec<_>>>()?
            };
            (pts, None)
        }
        other => bail!(
            "--space: expected half-annulus, elliptical-half-annulus, rect-rejection or ellipse-rejection, found `{other}`"
        ),
    };
    create_dir(out_dir)?;
    let hash = sha256_hex(format!("space={space};mode={mode:?};{params}").as_bytes());
    write_samples_csv(&out_dir.join("samples.csv"), &hash, seed, space, &points)?;
    let title = format!("{space}: n = {n}, seed {seed}");
    std::fs::write(
        out_dir.join("samples.svg"),
        svg::scatter_svg(&points, outline.as_ref(), &title),
    )?;
    println!("wrote {n} samples to {}", out_dir.display());
    Ok(EXIT_OK)
}
