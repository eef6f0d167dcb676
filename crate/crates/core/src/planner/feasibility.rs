//! Edge validity: waypoint turns, the target's ship domain over time and
//! the static bounds of the compliant region.

use alloc::vec::Vec;

use super::tree::{NodeId, PlanTree, TreeNode};
use super::{PlannerParams, Scenario};
use crate::encounter::{CompliantRegion, DomainTrack};
use crate::geom::{segment_point_distance, turning_radius_between, Point, TurnRadius};

const REGION_TOLERANCE: f64 = 1e-9;

/// Scenario and parameters prepared once for the many checks of a run.
#[derive(Debug, Clone)]
pub(crate) struct Checker {
    center: Point,
    r_min: f64,
    r_max: f64,
    /// Inward normal of the half-plane bounding a half-circle arc.
    normal: Option<Point>,
    region: CompliantRegion,
    track: Option<DomainTrack>,
    speed: f64,
    goal: Point,
    radius_of_acceptance: f64,
    min_turning_radius: f64,
}

impl Checker {
    pub(crate) fn new(scenario: &Scenario, params: &PlannerParams) -> Self {
        let region = scenario.region;
        let arc = region.allowed_arc;
        let half = (arc.span - core::f64::consts::PI).abs() < 1e-12;
        let normal = half.then(|| arc.mid().unit_vector());
        Checker {
            center: region.center,
            r_min: region.r_min,
            r_max: region.r_max,
            normal,
            goal: region.goal_point,
            region,
            track: scenario
                .target
                .as_ref()
                .map(|tv| DomainTrack::new(tv, &scenario.domain)),
            speed: scenario.own_ship.speed,
            radius_of_acceptance: params.radius_of_acceptance,
            min_turning_radius: params.min_turning_radius,
        }
    }

    pub(crate) fn contains(&self, p: Point) -> bool {
        if !self.region.allowed_arc.is_full() && self.normal.is_none() {
            return self.region.contains(p);
        }
        let d = p - self.center;
        let r2 = d.dot(d);
        let lo = (self.r_min - REGION_TOLERANCE).max(0.0);
        let hi = self.r_max + REGION_TOLERANCE;
        if r2 < lo * lo || r2 > hi * hi {
            return false;
        }
        self.normal.is_none_or(|n| d.dot(n) >= -REGION_TOLERANCE)
    }

    /// Whether the turn `prev → at → next` is executable with the radius of acceptance.
    pub(crate) fn turn_ok(&self, prev: Option<Point>, at: Point, next: Point) -> bool {
        let Some(prev) = prev else {
            return true;
        };
        match turning_radius_between(self.radius_of_acceptance, at - prev, next - at) {
            Ok(TurnRadius::Unbounded) => true,
            Ok(TurnRadius::Finite(r)) => r >= self.min_turning_radius,
            Err(_) => false,
        }
    }

    /// Static bounds: the leg keeps clear of the inner circle and ends inside the region.
    pub(crate) fn leg_in_region(&self, from: Point, to: Point) -> bool {
        if self.r_min > 0.0 && segment_point_distance(from, to, self.center) < self.r_min {
            return false;
        }
        // the outer disk and the half-plane are convex, so endpoints suffice
        self.contains(from) && self.contains(to)
    }

    /// Leg sailed from `from` (reached at `t0`) to `to` at own-ship speed.
    pub(crate) fn leg_ok(&self, from: Point, to: Point, t0: f64) -> bool {
        if !self.leg_in_region(from, to) {
            return false;
        }
        match &self.track {
            None => true,
            Some(track) => {
                let t1 = t0 + from.distance(to) / self.speed;
                track.leg_clear(from, to, t0, t1)
            }
        }
    }

    pub(crate) fn edge_ok(&self, parent: &TreeNode, candidate: Point, grandparent: Option<&TreeNode>) -> bool {
        if parent.position == candidate {
            return false;
        }
        self.turn_ok(grandparent.map(|g| g.position), parent.position, candidate)
            && self.leg_ok(parent.position, candidate, parent.arrival_time)
    }

    /// Terminal leg from a tree node to the goal.
    pub(crate) fn terminal_ok(&self, tree: &PlanTree, id: NodeId) -> bool {
        let node = tree.node(id);
        if node.position == self.goal {
            return true;
        }
        self.turn_ok(tree.parent(id).map(|p| p.position), node.position, self.goal)
            && self.leg_ok(node.position, self.goal, node.arrival_time)
    }

    /// Whether `new_parent` may adopt `id`, re-checking everything the move
    /// changes: the turns at both ends of the new edge, and every leg of the
    /// subtree against the ship domain at the shifted arrival times.
    fn rewire_ok(&self, tree: &PlanTree, new_parent: NodeId, id: NodeId, solutions: &[bool]) -> bool {
        let np = tree.node(new_parent);
        let node = tree.node(id);
        if !self.edge_ok(np, node.position, tree.parent(new_parent)) {
            return false;
        }
        let goal = self.goal;
        for &c in tree.children(id) {
            if !self.turn_ok(Some(np.position), node.position, tree.node(c).position) {
                return false;
            }
        }
        if solutions[id] && node.position != goal && !self.turn_ok(Some(np.position), node.position, goal) {
            return false;
        }
        let Some(track) = &self.track else {
            return true;
        };
        let new_time = (np.cost + np.position.distance(node.position)) / self.speed;
        let shift = new_time - node.arrival_time;
        for n in tree.subtree(id) {
            let t = tree.node(n).arrival_time + shift;
            let p = tree.node(n).position;
            for &c in tree.children(n) {
                let q = tree.node(c).position;
                if !track.leg_clear(p, q, t, t + p.distance(q) / self.speed) {
                    return false;
                }
            }
            if solutions[n] && p != goal && !track.leg_clear(p, goal, t, t + p.distance(goal) / self.speed) {
                return false;
            }
        }
        true
    }

    pub(crate) fn rewire(
        &self,
        tree: &mut PlanTree,
        new_id: NodeId,
        near: &[NodeId],
        solutions: &[bool],
    ) -> Vec<NodeId> {
        let mut changed = Vec::new();
        for &z in near {
            if z == new_id || tree.node(new_id).parent == Some(z) || tree.is_ancestor(z, new_id) {
                continue;
            }
            let c_new = tree.node(new_id).cost + tree.node(new_id).position.distance(tree.node(z).position);
            if c_new >= tree.node(z).cost {
                continue;
            }
            if self.rewire_ok(tree, new_id, z, solutions) {
                tree.reparent(z, new_id).expect("ancestor check done above");
                changed.push(z);
            }
        }
        changed
    }
}

/// Whether `parent → candidate` may be added to the tree: the turn at
/// `parent` (skipped at the root), the ship domain along the leg in time,
/// and the region bounds.
pub fn feasible_edge(
    parent: &TreeNode,
    candidate: Point,
    grandparent: Option<&TreeNode>,
    scenario: &Scenario,
    params: &PlannerParams,
) -> bool {
    Checker::new(scenario, params).edge_ok(parent, candidate, grandparent)
}

/// Rewires every node of `near` that becomes cheaper through `new_id`.
/// Returns the ids that changed parent.
pub fn rewire(
    tree: &mut PlanTree,
    new_id: NodeId,
    near: &[NodeId],
    solutions: &[bool],
    scenario: &Scenario,
    params: &PlannerParams,
) -> Vec<NodeId> {
    Checker::new(scenario, params).rewire(tree, new_id, near, solutions)
}
