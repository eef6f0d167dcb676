//! Scenario files: vessel states, encounter thresholds and planner overrides.

use colregs_core::encounter::{EncounterAssessment, VesselState};
use colregs_core::geom::{Angle, Point};
use colregs_core::planner::{PlannerParams, Scenario, Strategy};
use colregs_core::sampling::SamplingMode;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u32 = 1;

const KNOT: f64 = 1852.0 / 3600.0;

#[derive(Debug, thiserror::Error)]
pub enum ScenarioError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    /// Carries serde's message, which names the field, line and column.
    #[error("malformed scenario: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("invalid field `{field}`: {message}")]
    Field { field: &'static str, message: String },
    #[error("{0}")]
    NoAction(String),
    #[error(transparent)]
    Core(#[from] colregs_core::Error),
}

impl ScenarioError {
    fn field(field: &'static str, message: impl Into<String>) -> Self {
        ScenarioError::Field {
            field,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpeedUnit {
    #[serde(rename = "knots")]
    Knots,
    #[serde(rename = "m/s")]
    MetersPerSecond,
}

impl SpeedUnit {
    pub fn to_mps(self, speed: f64) -> f64 {
        match self {
            SpeedUnit::Knots => speed * KNOT,
            SpeedUnit::MetersPerSecond => speed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VesselSpec {
    pub north: f64,
    pub east: f64,
    /// Degrees clockwise from North.
    pub heading_deg: f64,
    pub speed: f64,
    pub speed_unit: SpeedUnit,
    /// Meters.
    pub length: f64,
}

impl VesselSpec {
    fn to_state(&self, field: &'static str) -> Result<VesselState, ScenarioError> {
        let heading = Angle::from_degrees(self.heading_deg)
            .map_err(|e| ScenarioError::field(field, format!("heading_deg: {e}")))?;
        let position =
            Point::try_new(self.north, self.east).map_err(|e| ScenarioError::field(field, format!("position: {e}")))?;
        VesselState::new(position, self.speed_unit.to_mps(self.speed), heading, self.length)
            .map_err(|e| ScenarioError::field(field, e.to_string()))
    }
}

/// Planner settings a scenario may override; unset fields keep the defaults.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlannerOverrides {
    pub max_iterations: Option<usize>,
    pub steer_step: Option<f64>,
    pub near_radius_constant: Option<f64>,
    pub goal_radius: Option<f64>,
    pub radius_of_acceptance: Option<f64>,
    pub seed: Option<u64>,
    pub strategy: Option<Strategy>,
    pub sampling_mode: Option<SamplingMode>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchSettings {
    #[serde(default = "BenchSettings::default_trials")]
    pub trials: usize,
    /// Iterations per trial.
    #[serde(default = "BenchSettings::default_budget")]
    pub budget: usize,
    #[serde(default)]
    pub seed: u64,
    /// Trials per strategy in the high-budget reference pre-run.
    #[serde(default = "BenchSettings::default_reference_trials")]
    pub reference_trials: usize,
}

impl BenchSettings {
    fn default_trials() -> usize {
        100
    }
    fn default_budget() -> usize {
        6000
    }
    fn default_reference_trials() -> usize {
        2
    }
}

impl Default for BenchSettings {
    fn default() -> Self {
        BenchSettings {
            trials: Self::default_trials(),
            budget: Self::default_budget(),
            seed: 0,
            reference_trials: Self::default_reference_trials(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub schema_version: u32,
    #[serde(default)]
    pub name: String,
    #[serde(default)]
    pub description: String,
    pub own_ship: VesselSpec,
    /// Absent for open water.
    #[serde(default)]
    pub target_vessel: Option<VesselSpec>,
    /// `[north, east]` pairs in sailing order, starting at own ship.
    pub nominal_route: Vec<[f64; 2]>,
    /// Meters.
    pub d_act: f64,
    /// Seconds.
    pub t_act: f64,
    /// Meters.
    pub min_turning_radius: f64,
    /// Outer radius of the open-water disk over half the start–goal distance.
    #[serde(default = "ScenarioFile::default_open_water_margin")]
    pub open_water_margin: f64,
    #[serde(default)]
    pub planner: PlannerOverrides,
    #[serde(default)]
    pub bench: BenchSettings,
}

/// A scenario file resolved into planner inputs.
#[derive(Debug, Clone)]
pub struct LoadedScenario {
    pub file: ScenarioFile,
    /// Hex SHA-256 of the file bytes.
    pub hash: String,
    pub scenario: Scenario,
    /// `None` in open water.
    pub assessment: Option<EncounterAssessment>,
    pub params: PlannerParams,
}

impl ScenarioFile {
    fn default_open_water_margin() -> f64 {
        1.5
    }

    pub fn from_json(text: &str) -> Result<Self, ScenarioError> {
        let file: ScenarioFile = serde_json::from_str(text)?;
        file.validate()?;
        Ok(file)
    }

    fn validate(&self) -> Result<(), ScenarioError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(ScenarioError::field(
                "schema_version",
                format!("expected {SCHEMA_VERSION}, found {}", self.schema_version),
            ));
        }
        let positive = [
            ("d_act", self.d_act),
            ("t_act", self.t_act),
            ("min_turning_radius", self.min_turning_radius),
        ];
        for (field, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(ScenarioError::field(field, format!("must be positive, found {v}")));
            }
        }
        if !(self.open_water_margin > 1.0 && self.open_water_margin.is_finite()) {
            return Err(ScenarioError::field("open_water_margin", "must exceed 1"));
        }
        if self.nominal_route.len() < 2 {
            return Err(ScenarioError::field("nominal_route", "needs at least two waypoints"));
        }
        if self.nominal_route.iter().flatten().any(|v| !v.is_finite()) {
            return Err(ScenarioError::field("nominal_route", "coordinates must be finite"));
        }
        if self.bench.trials == 0 {
            return Err(ScenarioError::field("bench.trials", "must be at least 1"));
        }
        Ok(())
    }

    pub fn params(&self) -> PlannerParams {
        let o = &self.planner;
        let d = PlannerParams::default();
        PlannerParams {
            max_iterations: o.max_iterations.unwrap_or(d.max_iterations),
            steer_step: o.steer_step.unwrap_or(d.steer_step),
            near_radius_constant: o.near_radius_constant.or(d.near_radius_constant),
            goal_radius: o.goal_radius.unwrap_or(d.goal_radius),
            min_turning_radius: self.min_turning_radius,
            radius_of_acceptance: o.radius_of_acceptance.unwrap_or(d.radius_of_acceptance),
            seed: o.seed.unwrap_or(d.seed),
            strategy: o.strategy.unwrap_or(d.strategy),
            sampling_mode: o.sampling_mode.unwrap_or(d.sampling_mode),
            target_cost: None,
        }
    }

    /// Classifies the encounter and builds the region. Own ship must start
    /// outside the inner circle, and stand-on geometries are refused.
    pub fn resolve(&self) -> Result<(Scenario, Option<EncounterAssessment>), ScenarioError> {
        let os = self.own_ship.to_state("own_ship")?;
        if os.speed.is_nan() || os.speed <= 0.0 {
            return Err(ScenarioError::field("own_ship", "speed must be positive to plan"));
        }
        let Some(tv) = &self.target_vessel else {
            let [n, e] = *self.nominal_route.last().expect("validated");
            let goal = Point::new(n, e);
            if goal == os.position {
                return Err(ScenarioError::field("nominal_route", "final waypoint equals the start"));
            }
            return Ok((Scenario::open_water(os, goal, self.open_water_margin)?, None));
        };
        let tv = tv.to_state("target_vessel")?;
        let (scenario, assessment) = match Scenario::encounter(os, tv, self.d_act, self.t_act) {
            Ok(v) => v,
            Err(e @ colregs_core::Error::NoActionRequired(_)) => return Err(ScenarioError::NoAction(e.to_string())),
            Err(e) => return Err(e.into()),
        };
        let region = &scenario.region;
        let gap = os.position.distance(region.center);
        if gap < region.r_min {
            return Err(ScenarioError::field(
                "own_ship",
                format!(
                    "start lies {gap:.1} m from the predicted target position, inside the \
                     {:.1} m inner circle; move own ship further out or reduce d_act",
                    region.r_min
                ),
            ));
        }
        Ok((scenario, Some(assessment)))
    }

    /// Parses, validates and resolves `bytes`.
    pub fn load_bytes(bytes: &[u8]) -> Result<LoadedScenario, ScenarioError> {
        let text = std::str::from_utf8(bytes).map_err(|e| ScenarioError::field("file", format!("not UTF-8: {e}")))?;
        let file = ScenarioFile::from_json(text)?;
        let (scenario, assessment) = file.resolve()?;
        let params = file.params();
        params
            .validate()
            .map_err(|e| ScenarioError::field("planner", e.to_string()))?;
        Ok(LoadedScenario {
            hash: sha256_hex(bytes),
            params,
            file,
            scenario,
            assessment,
        })
    }

    pub fn load(path: &std::path::Path) -> Result<LoadedScenario, ScenarioError> {
        let bytes = std::fs::read(path).map_err(|source| ScenarioError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::load_bytes(&bytes)
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}
