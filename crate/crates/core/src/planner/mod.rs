//! RRT* over a compliant region with strategy-dependent sampling.
//!
//! Each iteration draws one sample. Strategies that use rejection count a
//! rejected draw as a spent iteration, so iteration counts compare sampling
//! efficiency directly. Once a solution exists, the elliptical strategy
//! switches to the informed elliptical half-annulus whenever `c_best` drops
//! below the switching threshold.

mod feasibility;
mod tree;

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};
use core::fmt;
use core::str::FromStr;

use feasibility::Checker;
pub use feasibility::{feasible_edge, rewire};
pub use tree::{near_nodes, nearest_node, NodeId, PlanTree, TreeNode};

use crate::encounter::{
    classify_encounter, compliant_region, CompliantRegion, EncounterAssessment, ShipDomain, VesselState,
};
use crate::geom::{Angle, Point};
use crate::math::{ln, sqrt};
use crate::sampling::{
    sample_ellipse_uniform, sample_elliptical_half_annulus, sample_half_annulus, select_space, AnnulusSpec,
    EllipseHalf, EllipticalAnnulusSpec, RandomSource, Rect, SamplingMode, SpaceSelection,
};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Waypoint {
    pub north: f64,
    pub east: f64,
    pub radius_of_acceptance: f64,
}

impl Waypoint {
    pub fn position(&self) -> Point {
        Point::new(self.north, self.east)
    }
}

/// Everything the planner needs about the encounter.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Scenario {
    pub own_ship: VesselState,
    /// Absent in open water.
    pub target: Option<VesselState>,
    /// Domain of the target vessel.
    pub domain: ShipDomain,
    pub region: CompliantRegion,
}

impl Scenario {
    /// Classifies the encounter and builds the region. Fails with
    /// [`Error::NoActionRequired`] when own ship should stand on.
    pub fn encounter(
        own_ship: VesselState,
        target: VesselState,
        d_act: f64,
        t_act: f64,
    ) -> Result<(Self, EncounterAssessment)> {
        let assessment = classify_encounter(&own_ship, &target, d_act, t_act)?;
        let region = compliant_region(&own_ship, &target, &assessment, d_act, t_act)?;
        let scenario = Scenario {
            own_ship,
            target: Some(target),
            domain: ShipDomain::from_length(target.length)?,
            region,
        };
        Ok((scenario, assessment))
    }

    /// No target; a disk around the start–goal midpoint with radius `margin`
    /// times half their distance.
    pub fn open_water(own_ship: VesselState, goal: Point, margin: f64) -> Result<Self> {
        Ok(Scenario {
            own_ship,
            target: None,
            domain: ShipDomain::from_length(own_ship.length)?,
            region: CompliantRegion::open_water(own_ship.position, goal, margin)?,
        })
    }

    pub fn c_min(&self) -> f64 {
        self.region.c_min()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Strategy {
    /// Square of side `2 r_max` around the region center, with rejection.
    RectRejection,
    /// The square until a solution exists, then the informed ellipse (or the
    /// square if smaller), with rejection against the region.
    InformedRectRejection,
    HalfAnnulus,
    /// Half-annulus until `c_best` falls below the switching threshold, then
    /// the elliptical half-annulus.
    EllipticalHalfAnnulus,
}

impl Strategy {
    pub const ALL: [Strategy; 4] = [
        Strategy::RectRejection,
        Strategy::InformedRectRejection,
        Strategy::HalfAnnulus,
        Strategy::EllipticalHalfAnnulus,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::RectRejection => "rect-rejection",
            Strategy::InformedRectRejection => "informed-rect-rejection",
            Strategy::HalfAnnulus => "half-annulus",
            Strategy::EllipticalHalfAnnulus => "elliptical-half-annulus",
        }
    }

    pub fn index(self) -> u64 {
        match self {
            Strategy::RectRejection => 0,
            Strategy::InformedRectRejection => 1,
            Strategy::HalfAnnulus => 2,
            Strategy::EllipticalHalfAnnulus => 3,
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Strategy::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::invalid(alloc::format!("unknown strategy `{s}`")))
    }
}

/// The space a sample was drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum SpaceKind {
    Rectangle,
    InformedEllipse,
    InformedRectangle,
    HalfAnnulus,
    EllipticalHalfAnnulus,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default))]
pub struct PlannerParams {
    pub max_iterations: usize,
    pub steer_step: f64,
    /// `γ` of the shrinking near radius `γ·sqrt(ln n / n)`. `None` derives it
    /// from the region area.
    pub near_radius_constant: Option<f64>,
    pub goal_radius: f64,
    pub min_turning_radius: f64,
    pub radius_of_acceptance: f64,
    pub seed: u64,
    pub strategy: Strategy,
    pub sampling_mode: SamplingMode,
    /// Stops early once `c_best` is at most this cost.
    pub target_cost: Option<f64>,
}

impl Default for PlannerParams {
    fn default() -> Self {
        PlannerParams {
            max_iterations: 2000,
            steer_step: 250.0,
            near_radius_constant: None,
            goal_radius: 200.0,
            min_turning_radius: 150.0,
            radius_of_acceptance: 200.0,
            seed: 0,
            strategy: Strategy::EllipticalHalfAnnulus,
            sampling_mode: SamplingMode::ExactAreaUniform,
            target_cost: None,
        }
    }
}

impl PlannerParams {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("steer_step", self.steer_step),
            ("goal_radius", self.goal_radius),
            ("min_turning_radius", self.min_turning_radius),
            ("radius_of_acceptance", self.radius_of_acceptance),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::invalid(alloc::format!("{name} must be positive")));
            }
        }
        if let Some(g) = self.near_radius_constant {
            if !(g > 0.0 && g.is_finite()) {
                return Err(Error::invalid("near_radius_constant must be positive"));
            }
        }
        if self.target_cost.is_some_and(|c| c.is_nan()) {
            return Err(Error::invalid("target_cost must be a number"));
        }
        Ok(())
    }

    /// The configured near-radius constant, or the planar RRT* bound
    /// `2·sqrt(1 + 1/2)·sqrt(area/π)` for the region.
    pub fn near_constant(&self, region: &CompliantRegion) -> f64 {
        self.near_constant_for_area(region.area())
    }

    /// As [`PlannerParams::near_constant`] for a sampling space of measure `area`.
    pub fn near_constant_for_area(&self, area: f64) -> f64 {
        self.near_radius_constant
            .unwrap_or_else(|| 2.0 * sqrt(1.5) * sqrt(area / PI))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct IterationRecord {
    /// 1-based.
    pub iteration: usize,
    /// Best solution cost after this iteration.
    pub c_best: Option<f64>,
    /// Seconds since the start of the run, as reported by the clock.
    pub elapsed: f64,
    pub space: SpaceKind,
    /// Whether the draw landed in the region (always true for direct samplers).
    pub sample_accepted: bool,
    pub node_added: bool,
}

#[derive(Debug, Clone)]
pub struct PlanOutcome {
    /// Start, tree waypoints, goal. `None` when no solution was found.
    pub path: Option<Vec<Waypoint>>,
    pub cost: Option<f64>,
    pub tree: PlanTree,
    /// Tree nodes from which the goal is reachable, in discovery order.
    pub solutions: Vec<NodeId>,
    pub log: Vec<IterationRecord>,
    pub first_solution_iteration: Option<usize>,
    pub rejected_samples: u64,
}

impl PlanOutcome {
    pub fn found(&self) -> bool {
        self.path.is_some()
    }
}

/// `min(γ·sqrt(ln n / n), steer_step)`.
pub fn near_radius(n: usize, constant: f64, steer_step: f64) -> f64 {
    if n < 2 {
        return 0.0;
    }
    let n = n as f64;
    (constant * sqrt(ln(n) / n)).min(steer_step)
}

/// `to`, or the point `steer_step` along the way when it is farther.
pub fn extend_towards(from: Point, to: Point, steer_step: f64) -> Result<Point> {
    let d = from.distance(to);
    if d == 0.0 {
        return Err(Error::invalid("cannot extend towards the same point"));
    }
    if d <= steer_step {
        Ok(to)
    } else {
        Ok(from.lerp(to, steer_step / d))
    }
}

/// Waypoints from the root to `id`, then the goal.
pub fn extract_path(tree: &PlanTree, id: NodeId, goal: Point, radius_of_acceptance: f64) -> Vec<Waypoint> {
    let wp = |p: Point| Waypoint {
        north: p.north,
        east: p.east,
        radius_of_acceptance,
    };
    let mut out: Vec<Waypoint> = tree
        .path_to(id)
        .into_iter()
        .map(|n| wp(tree.node(n).position))
        .collect();
    out.push(wp(goal));
    out
}

struct Sampler {
    strategy: Strategy,
    mode: SamplingMode,
    region: CompliantRegion,
    annulus: AnnulusSpec,
    square: Rect,
    half: EllipseHalf,
    orientation: Angle,
}

impl Sampler {
    fn new(region: &CompliantRegion, params: &PlannerParams) -> Result<Self> {
        let orientation = region.start.bearing_to(region.goal_point);
        let half = if region.allowed_arc.is_full() {
            EllipseHalf::Both
        } else {
            let normal = orientation.rotated(FRAC_PI_2).unit_vector();
            if region.allowed_arc.mid().unit_vector().dot(normal) >= 0.0 {
                EllipseHalf::Positive
            } else {
                EllipseHalf::Negative
            }
        };
        Ok(Sampler {
            strategy: params.strategy,
            mode: params.sampling_mode,
            region: *region,
            annulus: AnnulusSpec::from_region(region),
            square: Rect::square(region.center, region.r_max)?,
            half,
            orientation,
        })
    }

    /// Measure of the feasible part of the space `space` draws from.
    fn measure(&self, space: SpaceKind, c_best: Option<f64>) -> f64 {
        let full = self.region.area();
        let Some(c) = c_best else {
            return full;
        };
        match space {
            SpaceKind::Rectangle | SpaceKind::HalfAnnulus => full,
            SpaceKind::InformedEllipse | SpaceKind::InformedRectangle | SpaceKind::EllipticalHalfAnnulus => {
                let c_min = self.region.c_min();
                let ab = 0.25 * c * sqrt((c * c - c_min * c_min).max(0.0));
                let r2 = self.region.r_min * self.region.r_min;
                let share = if self.region.allowed_arc.is_full() { 1.0 } else { 0.5 };
                (share * PI * (ab - r2)).clamp(0.0, full)
            }
        }
    }

    fn rejecting(&self, space: SpaceKind, p: Point) -> (SpaceKind, Option<Point>) {
        (space, self.region.contains(p).then_some(p))
    }

    fn draw(&self, c_best: Option<f64>, rng: &mut RandomSource) -> (SpaceKind, Option<Point>) {
        match self.strategy {
            Strategy::RectRejection => self.rejecting(SpaceKind::Rectangle, self.square.draw(rng)),
            Strategy::HalfAnnulus => (
                SpaceKind::HalfAnnulus,
                Some(sample_half_annulus(&self.annulus, self.mode, rng)),
            ),
            Strategy::EllipticalHalfAnnulus => {
                let c_min = self.region.c_min();
                let informed = match select_space(c_best, c_min, self.region.r_max) {
                    Ok(SpaceSelection::EllipticalHalfAnnulus) => EllipticalAnnulusSpec::informed(
                        self.region.start,
                        self.region.goal_point,
                        c_best.unwrap_or(f64::INFINITY),
                        self.region.r_min,
                        self.half,
                    )
                    .ok(),
                    _ => None,
                };
                match informed {
                    Some(spec) => (
                        SpaceKind::EllipticalHalfAnnulus,
                        Some(sample_elliptical_half_annulus(&spec, self.mode, rng)),
                    ),
                    None => (
                        SpaceKind::HalfAnnulus,
                        Some(sample_half_annulus(&self.annulus, self.mode, rng)),
                    ),
                }
            }
            Strategy::InformedRectRejection => {
                let Some(c) = c_best else {
                    return self.rejecting(SpaceKind::Rectangle, self.square.draw(rng));
                };
                let c_min = self.region.c_min();
                let a = 0.5 * c;
                let b = 0.5 * sqrt((c * c - c_min * c_min).max(0.0));
                let center = self.region.start.lerp(self.region.goal_point, 0.5);
                if PI * a * b < self.square.area() {
                    let p = sample_ellipse_uniform(center, a, b, self.orientation, rng);
                    self.rejecting(SpaceKind::InformedEllipse, p)
                } else {
                    let p = self.square.draw(rng);
                    let d = p - center;
                    let x = d.dot(self.orientation.unit_vector());
                    let y = d.dot(self.orientation.rotated(FRAC_PI_2).unit_vector());
                    let in_ellipse = b > 0.0 && (x * x) / (a * a) + (y * y) / (b * b) <= 1.0;
                    if in_ellipse {
                        self.rejecting(SpaceKind::InformedRectangle, p)
                    } else {
                        (SpaceKind::InformedRectangle, None)
                    }
                }
            }
        }
    }
}

/// Runs the planner with a clock that always reads zero.
pub fn plan(scenario: &Scenario, params: &PlannerParams) -> Result<PlanOutcome> {
    plan_with_clock(scenario, params, || 0.0)
}

/// Runs the planner; `clock` returns seconds elapsed since the run started.
pub fn plan_with_clock<C>(scenario: &Scenario, params: &PlannerParams, mut clock: C) -> Result<PlanOutcome>
where
    C: FnMut() -> f64,
{
    params.validate()?;
    let os = &scenario.own_ship;
    if !(os.speed > 0.0) {
        return Err(Error::invalid("own ship speed must be positive to plan"));
    }
    let region = &scenario.region;
    if !region.contains(region.start) {
        return Err(Error::invalid("start lies outside the compliant region"));
    }
    let sampler = Sampler::new(region, params)?;
    let checker = Checker::new(scenario, params);
    let goal = region.goal_point;
    let mut rng = RandomSource::seed_from_u64(params.seed);
    let mut tree = PlanTree::new(region.start, os.speed, region.center, region.r_max, params.steer_step)?;

    let mut is_solution = vec![false];
    let mut solutions: Vec<NodeId> = Vec::new();
    let mut log = Vec::with_capacity(params.max_iterations);
    let mut first_solution_iteration = None;
    let mut rejected_samples = 0u64;

    let best = |tree: &PlanTree, solutions: &[NodeId]| -> Option<(f64, NodeId)> {
        solutions
            .iter()
            .map(|&s| (tree.node(s).cost + tree.node(s).position.distance(goal), s))
            .min_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)))
    };

    if region.start.distance(goal) <= params.goal_radius && checker.terminal_ok(&tree, 0) {
        is_solution[0] = true;
        solutions.push(0);
    }

    for iteration in 1..=params.max_iterations {
        let c_best = best(&tree, &solutions).map(|b| b.0);
        let (space, sample) = sampler.draw(c_best, &mut rng);
        let mut node_added = false;
        if let Some(z_rand) = sample {
            let nearest = *nearest_node(&tree, z_rand);
            if let Ok(z_new) = extend_towards(nearest.position, z_rand, params.steer_step) {
                if checker.edge_ok(&nearest, z_new, tree.parent(nearest.id)) {
                    let gamma = params.near_constant_for_area(sampler.measure(space, c_best));
                    let radius = near_radius(tree.len() + 1, gamma, params.steer_step);
                    let near = near_nodes(&tree, z_new, radius);
                    let mut z_min = nearest.id;
                    let mut c_min = nearest.cost + nearest.position.distance(z_new);
                    for &z in &near {
                        let zn = tree.node(z);
                        let c = zn.cost + zn.position.distance(z_new);
                        if c < c_min && checker.edge_ok(zn, z_new, tree.parent(z)) {
                            z_min = z;
                            c_min = c;
                        }
                    }
                    let id = tree.insert(z_new, z_min);
                    is_solution.push(false);
                    checker.rewire(&mut tree, id, &near, &is_solution);
                    if z_new.distance(goal) <= params.goal_radius && checker.terminal_ok(&tree, id) {
                        is_solution[id] = true;
                        solutions.push(id);
                        first_solution_iteration.get_or_insert(iteration);
                    }
                    node_added = true;
                }
            }
        } else {
            rejected_samples += 1;
        }
        let c_best = best(&tree, &solutions).map(|b| b.0);
        log.push(IterationRecord {
            iteration,
            c_best,
            elapsed: clock(),
            space,
            sample_accepted: sample.is_some(),
            node_added,
        });
        if let (Some(target), Some(c)) = (params.target_cost, c_best) {
            if c <= target {
                break;
            }
        }
    }

    let found = best(&tree, &solutions);
    Ok(PlanOutcome {
        path: found.map(|(_, id)| extract_path(&tree, id, goal, params.radius_of_acceptance)),
        cost: found.map(|b| b.0),
        tree,
        solutions,
        log,
        first_solution_iteration: if is_solution[0] {
            Some(0)
        } else {
            first_solution_iteration
        },
        rejected_samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encounter::{domain_violated, EncounterKind};

    fn vessel(n: f64, e: f64, heading_deg: f64, speed: f64) -> VesselState {
        VesselState::new(
            Point::new(n, e),
            speed,
            Angle::from_degrees(heading_deg).unwrap(),
            100.0,
        )
        .unwrap()
    }

    fn crossing() -> Scenario {
        Scenario::encounter(
            vessel(0.0, 0.0, 0.0, 10.0),
            vessel(2000.0, 2000.0, 270.0, 10.0),
            500.0,
            300.0,
        )
        .unwrap()
        .0
    }

    fn params(strategy: Strategy, seed: u64, iterations: usize) -> PlannerParams {
        PlannerParams {
            strategy,
            seed,
            max_iterations: iterations,
            ..PlannerParams::default()
        }
    }

    #[test]
    fn extend_examples() {
        let a = Point::ORIGIN;
        assert_eq!(
            extend_towards(a, Point::new(0.0, 100.0), 250.0).unwrap(),
            Point::new(0.0, 100.0)
        );
        let m = extend_towards(a, Point::new(0.0, 500.0), 250.0).unwrap();
        assert!(m.distance(Point::new(0.0, 250.0)) < 1e-12);
        assert!(extend_towards(a, a, 250.0).is_err());
    }

    #[test]
    fn near_radius_shrinks_and_caps() {
        assert_eq!(near_radius(1, 1000.0, 50.0), 0.0);
        assert_eq!(near_radius(10, 1e6, 50.0), 50.0);
        let r1 = near_radius(1000, 100.0, 1e9);
        let r2 = near_radius(10_000, 100.0, 1e9);
        assert!(r2 < r1);
    }

    #[test]
    fn strategy_names_round_trip() {
        for s in Strategy::ALL {
            assert_eq!(s.as_str().parse::<Strategy>().unwrap(), s);
        }
        assert!("square".parse::<Strategy>().is_err());
    }

    #[test]
    fn stand_on_scenario_refused() {
        let err = Scenario::encounter(
            vessel(0.0, 0.0, 0.0, 10.0),
            vessel(2000.0, -2000.0, 90.0, 10.0),
            500.0,
            300.0,
        )
        .unwrap_err();
        assert_eq!(err, Error::NoActionRequired(EncounterKind::CrossingStandOn));
    }

    #[test]
    fn crossing_plan_is_valid() {
        let scenario = crossing();
        for strategy in Strategy::ALL {
            let out = plan(&scenario, &params(strategy, 3, 1500)).unwrap();
            out.tree.validate(1e-9).unwrap();
            for n in out.tree.nodes() {
                assert!(scenario.region.contains(n.position));
            }
            let path = out.path.as_ref().expect("solution within budget");
            let cost = out.cost.unwrap();
            let sum: f64 = path.windows(2).map(|w| w[0].position().distance(w[1].position())).sum();
            assert!((sum - cost).abs() < 1e-6);
            assert!(cost >= scenario.c_min());
            // c_best never increases
            let mut prev = f64::INFINITY;
            for r in &out.log {
                if let Some(c) = r.c_best {
                    assert!(c <= prev + 1e-9);
                    prev = c;
                }
            }
        }
    }

    #[test]
    fn path_turns_and_domain() {
        let scenario = crossing();
        let p = params(Strategy::HalfAnnulus, 11, 1500);
        let out = plan(&scenario, &p).unwrap();
        let path = out.path.unwrap();
        for w in path.windows(3) {
            let r = crate::geom::required_turning_radius(
                p.radius_of_acceptance,
                w[0].position().bearing_to(w[1].position()),
                w[1].position().bearing_to(w[2].position()),
            )
            .unwrap();
            assert!(r.satisfies(p.min_turning_radius));
        }
        let tv = scenario.target.unwrap();
        let mut t = 0.0;
        for w in path.windows(2) {
            let (a, b) = (w[0].position(), w[1].position());
            let len = a.distance(b);
            let steps = (len / 1.0).ceil() as usize;
            for k in 0..=steps {
                let s = k as f64 / steps as f64;
                let time = t + s * len / scenario.own_ship.speed;
                assert!(!domain_violated(a.lerp(b, s), &tv.propagated(time), &scenario.domain));
            }
            t += len / scenario.own_ship.speed;
        }
    }

    #[test]
    fn deterministic() {
        let scenario = crossing();
        let a = plan(&scenario, &params(Strategy::EllipticalHalfAnnulus, 5, 800)).unwrap();
        let b = plan(&scenario, &params(Strategy::EllipticalHalfAnnulus, 5, 800)).unwrap();
        assert_eq!(a.path, b.path);
        assert_eq!(a.log, b.log);
    }

    #[test]
    fn elliptical_space_only_below_threshold() {
        let scenario = crossing();
        let out = plan(&scenario, &params(Strategy::EllipticalHalfAnnulus, 2, 2000)).unwrap();
        let gamma = crate::sampling::switch_threshold(scenario.c_min(), scenario.region.r_max).unwrap();
        let mut prev: Option<f64> = None;
        let mut used = false;
        for r in &out.log {
            if r.space == SpaceKind::EllipticalHalfAnnulus {
                used = true;
                assert!(prev.unwrap() < gamma);
            }
            prev = r.c_best;
        }
        assert!(used);
    }

    #[test]
    fn open_water_start_in_goal_region() {
        let os = vessel(0.0, 0.0, 0.0, 5.0);
        let scenario = Scenario::open_water(os, Point::new(50.0, 0.0), 2.0).unwrap();
        let out = plan(&scenario, &params(Strategy::HalfAnnulus, 0, 10)).unwrap();
        assert_eq!(out.first_solution_iteration, Some(0));
        let path = out.path.unwrap();
        assert_eq!(path.len(), 2);
        assert!((out.cost.unwrap() - 50.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_invalid_params() {
        let scenario = crossing();
        let p = PlannerParams {
            steer_step: 0.0,
            ..PlannerParams::default()
        };
        assert!(plan(&scenario, &p).is_err());
    }

    #[test]
    fn stops_at_target_cost() {
        let scenario = crossing();
        let mut p = params(Strategy::HalfAnnulus, 3, 5000);
        p.target_cost = Some(1.2 * scenario.c_min());
        let out = plan(&scenario, &p).unwrap();
        let last = out.log.last().unwrap();
        assert!(out.log.len() < 5000);
        assert!(last.c_best.unwrap() <= 1.2 * scenario.c_min());
        assert!(out.log[..out.log.len() - 1]
            .iter()
            .all(|r| r.c_best.is_none_or(|c| c > 1.2 * scenario.c_min())));
    }
}
