//! Vessel kinematics, closest point of approach, the minimal ship domain,
//! COLREGs encounter classification and the compliant sampling region.

use core::f64::consts::PI;

use crate::geom::{Angle, ArcInterval, Point};
use crate::{Error, Result};

/// Relative speeds below this (m/s) make TCPA undefined.
pub const RELATIVE_SPEED_EPSILON: f64 = 1e-6;

/// Half-width of the head-on band around the target's bow.
pub const HEAD_ON_HALF_WIDTH: f64 = 3.5 * PI / 180.0;

/// Bearings from the target's bow beyond this are in the overtaking sector.
pub const OVERTAKING_SECTOR: f64 = 112.5 * PI / 180.0;

/// Outer radius is raised to at least this multiple of
/// `|start − center| + d_act` so the start lies well inside the region.
pub const OUTER_RADIUS_MARGIN: f64 = 1.2;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct VesselState {
    pub position: Point,
    /// m/s
    pub speed: f64,
    pub heading: Angle,
    /// m
    pub length: f64,
}

impl VesselState {
    pub fn new(position: Point, speed: f64, heading: Angle, length: f64) -> Result<Self> {
        if !position.is_finite() {
            return Err(Error::invalid("vessel position must be finite"));
        }
        if !(speed >= 0.0 && speed.is_finite()) {
            return Err(Error::invalid("vessel speed must be finite and non-negative"));
        }
        if !(length > 0.0 && length.is_finite()) {
            return Err(Error::invalid("vessel length must be positive"));
        }
        Ok(VesselState {
            position,
            speed,
            heading,
            length,
        })
    }

    pub fn velocity(&self) -> Point {
        self.heading.unit_vector() * self.speed
    }

    /// Position after `t` seconds at constant course and speed.
    pub fn position_at(&self, t: f64) -> Point {
        self.position + self.velocity() * t
    }

    /// The same vessel `t` seconds later.
    pub fn propagated(&self, t: f64) -> VesselState {
        VesselState {
            position: self.position_at(t),
            ..*self
        }
    }
}

/// Elliptical comfort zone around a vessel; `major_axis` lies along its heading.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ShipDomain {
    pub major_axis: f64,
    pub minor_axis: f64,
}

impl ShipDomain {
    pub fn new(major_axis: f64, minor_axis: f64) -> Result<Self> {
        if !(minor_axis > 0.0 && major_axis >= minor_axis && major_axis.is_finite()) {
            return Err(Error::invalid("ship domain needs major ≥ minor > 0"));
        }
        Ok(ShipDomain { major_axis, minor_axis })
    }

    /// The empirical minimal domain: 8L by 3.2L.
    pub fn from_length(length: f64) -> Result<Self> {
        if !(length > 0.0 && length.is_finite()) {
            return Err(Error::invalid("ship length must be positive"));
        }
        ShipDomain::new(8.0 * length, 3.2 * length)
    }

    /// Value of the domain quadratic form for an offset `delta = p_OS − p_TV`
    /// seen from a target with heading `heading`. Values `≤ 1` violate.
    pub fn quadratic_form(&self, delta: Point, heading: Angle) -> f64 {
        let (s, c) = (heading.unit_vector().east, heading.unit_vector().north);
        let along = delta.east * s + delta.north * c;
        let across = delta.east * c - delta.north * s;
        let ha = 0.5 * self.major_axis;
        let hb = 0.5 * self.minor_axis;
        (along * along) / (ha * ha) + (across * across) / (hb * hb)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum EncounterKind {
    HeadOn,
    CrossingGiveWay,
    CrossingStandOn,
    OvertakingOwn,
    OvertakenByTarget,
    NoRisk,
}

impl EncounterKind {
    /// Whether own ship must manoeuvre.
    pub fn requires_action(self) -> bool {
        matches!(
            self,
            EncounterKind::HeadOn | EncounterKind::CrossingGiveWay | EncounterKind::OvertakingOwn
        )
    }

    pub fn describe(self) -> &'static str {
        match self {
            EncounterKind::HeadOn => "head-on",
            EncounterKind::CrossingGiveWay => "crossing (give-way)",
            EncounterKind::CrossingStandOn => "stand-on",
            EncounterKind::OvertakingOwn => "overtaking",
            EncounterKind::OvertakenByTarget => "stand-on (being overtaken)",
            EncounterKind::NoRisk => "no collision risk",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EncounterAssessment {
    pub kind: EncounterKind,
    pub cpa: f64,
    pub tcpa: f64,
    /// Bearing of own ship from the target's bow, in `(−π, π]`, positive to starboard.
    pub relative_bearing: f64,
}

fn relative_motion(os: &VesselState, tv: &VesselState) -> Result<(Point, Point)> {
    let dp = tv.position - os.position;
    let dv = os.velocity() - tv.velocity();
    if dv.norm() < RELATIVE_SPEED_EPSILON {
        return Err(Error::DegenerateGeometry(
            "identical velocity vectors: separation is constant".into(),
        ));
    }
    Ok((dp, dv))
}

/// Time at which the separation of the two vessels is smallest, assuming
/// constant velocities. Positive when the closest approach lies ahead.
///
/// With `Δp = p_TV − p_OS` and `Δv = v_OS − v_TV` the separation is
/// `Δp − Δv·t`, minimized at `t = Δp·Δv / |Δv|²`.
pub fn tcpa(os: &VesselState, tv: &VesselState) -> Result<f64> {
    let (dp, dv) = relative_motion(os, tv)?;
    Ok(dp.dot(dv) / dv.norm_squared())
}

/// Separation at TCPA. For diverging vessels (TCPA < 0) the current distance.
pub fn cpa(os: &VesselState, tv: &VesselState) -> Result<f64> {
    let (dp, dv) = relative_motion(os, tv)?;
    let t = (dp.dot(dv) / dv.norm_squared()).max(0.0);
    Ok((dp - dv * t).norm())
}

/// Whether own ship at `os_position` is inside (or on) the domain of `tv`.
pub fn domain_violated(os_position: Point, tv: &VesselState, domain: &ShipDomain) -> bool {
    domain.quadratic_form(os_position - tv.position, tv.heading) <= 1.0
}

/// Whether own ship sailing straight from `from` to `to` over `[t0, t1]`
/// stays strictly outside the domain of the target propagated at constant
/// velocity. The domain form is quadratic in time along a leg, so its minimum
/// is found in closed form rather than by time stepping.
pub fn leg_clear_of_domain(from: Point, to: Point, t0: f64, t1: f64, tv: &VesselState, domain: &ShipDomain) -> bool {
    DomainTrack::new(tv, domain).leg_clear(from, to, t0, t1)
}

/// A target's domain moving at constant velocity, prepared for repeated leg checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DomainTrack {
    position: Point,
    velocity: Point,
    /// Heading unit vector over the half-major axis.
    along: Point,
    /// Starboard unit vector over the half-minor axis.
    across: Point,
}

impl DomainTrack {
    pub fn new(tv: &VesselState, domain: &ShipDomain) -> Self {
        let u = tv.heading.unit_vector();
        let ha = 0.5 * domain.major_axis;
        let hb = 0.5 * domain.minor_axis;
        DomainTrack {
            position: tv.position,
            velocity: tv.velocity(),
            along: u * (1.0 / ha),
            across: Point::new(-u.east, u.north) * (1.0 / hb),
        }
    }

    /// Smallest value of the domain form along the leg; the leg is clear when it exceeds 1.
    pub fn min_form(&self, from: Point, to: Point, t0: f64, t1: f64) -> f64 {
        let duration = (t1 - t0).max(0.0);
        let start = from - (self.position + self.velocity * t0);
        let rate = if duration > 0.0 {
            (to - from) * (1.0 / duration) - self.velocity
        } else {
            Point::ORIGIN
        };
        let (a0, a1) = (start.dot(self.along), rate.dot(self.along));
        let (c0, c1) = (start.dot(self.across), rate.dot(self.across));
        // Q(s) = (a0 + a1 s)² + (c0 + c1 s)², s ∈ [0, duration]
        let qa = a1 * a1 + c1 * c1;
        let qb = 2.0 * (a0 * a1 + c0 * c1);
        let q = |s: f64| {
            let a = a0 + a1 * s;
            let c = c0 + c1 * s;
            a * a + c * c
        };
        let mut min_q = q(0.0).min(q(duration));
        if qa > 0.0 {
            let s = -qb / (2.0 * qa);
            if s > 0.0 && s < duration {
                min_q = min_q.min(q(s));
            }
        }
        min_q
    }

    pub fn leg_clear(&self, from: Point, to: Point, t0: f64, t1: f64) -> bool {
        self.min_form(from, to, t0, t1) > 1.0
    }
}

/// Signed bearing in `(−π, π]` of `observed` from `observer`'s bow,
/// positive to starboard.
pub fn relative_bearing(observer: &VesselState, observed: Point) -> Result<f64> {
    if observer.position.distance(observed) == 0.0 {
        return Err(Error::invalid("relative bearing of a coincident position"));
    }
    let los = observer.position.bearing_to(observed);
    Ok(Angle::wrap(los.radians() - observer.heading.radians()).signed())
}

/// Classifies the encounter from the target's point of view.
///
/// A risk exists when `0 < TCPA ≤ t_act` and `CPA < d_act`; otherwise the
/// result is [`EncounterKind::NoRisk`]. The sector is read from the bearing
/// `β` of own ship seen from the target's bow: `|β| ≤ 3.5°` head-on,
/// `|β| > 112.5°` overtaking (own ship overtakes when faster), starboard
/// crossing makes own ship stand on, port crossing makes it give way. A
/// faster target bearing more than 112.5° off own ship's bow is overtaking
/// own ship, whatever `β`.
pub fn classify_encounter(os: &VesselState, tv: &VesselState, d_act: f64, t_act: f64) -> Result<EncounterAssessment> {
    if !(d_act > 0.0 && t_act > 0.0) {
        return Err(Error::invalid("d_act and t_act must be positive"));
    }
    let tcpa = tcpa(os, tv)?;
    let cpa = cpa(os, tv)?;
    let beta = relative_bearing(tv, os.position)?;
    let target_bearing = relative_bearing(os, tv.position)?;
    let at_risk = cpa < d_act && tcpa > 0.0 && tcpa <= t_act;
    let kind = if !at_risk {
        EncounterKind::NoRisk
    } else if target_bearing.abs() > OVERTAKING_SECTOR && tv.speed > os.speed {
        // target comes up from abaft own ship's beam
        EncounterKind::OvertakenByTarget
    } else {
        sector_kind(beta, os.speed > tv.speed)
    };
    Ok(EncounterAssessment {
        kind,
        cpa,
        tcpa,
        relative_bearing: beta,
    })
}

fn sector_kind(beta: f64, own_faster: bool) -> EncounterKind {
    let mag = beta.abs();
    if mag > OVERTAKING_SECTOR {
        if own_faster {
            EncounterKind::OvertakingOwn
        } else {
            EncounterKind::OvertakenByTarget
        }
    } else if mag <= HEAD_ON_HALF_WIDTH {
        EncounterKind::HeadOn
    } else if beta > 0.0 {
        EncounterKind::CrossingStandOn
    } else {
        EncounterKind::CrossingGiveWay
    }
}

/// The search region for a give-way manoeuvre.
///
/// The inner circle (`r_min = d_act`) around the target's position at TCPA is
/// a keep-out; the outer circle bounds where action is taken. The goal is the
/// reflection of the start through the center, so start and goal lie on a
/// diameter and the informed ellipse through them is concentric with the
/// keep-out. `allowed_arc` is the half of the annulus on the compliant side
/// of that diameter, or the full circle for overtaking.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CompliantRegion {
    pub center: Point,
    pub r_min: f64,
    pub r_max: f64,
    pub allowed_arc: ArcInterval,
    pub start: Point,
    pub goal_point: Point,
}

impl CompliantRegion {
    pub fn new(
        center: Point,
        r_min: f64,
        r_max: f64,
        allowed_arc: ArcInterval,
        start: Point,
        goal_point: Point,
    ) -> Result<Self> {
        if !(r_min >= 0.0 && r_max > r_min && r_max.is_finite()) {
            return Err(Error::invalid("compliant region needs 0 ≤ r_min < r_max"));
        }
        if !(center.is_finite() && start.is_finite() && goal_point.is_finite()) {
            return Err(Error::invalid("compliant region points must be finite"));
        }
        Ok(CompliantRegion {
            center,
            r_min,
            r_max,
            allowed_arc,
            start,
            goal_point,
        })
    }

    /// Open water between `start` and `goal`: a full disk without keep-out,
    /// centered on the midpoint, with `margin` times the half-distance as radius.
    pub fn open_water(start: Point, goal: Point, margin: f64) -> Result<Self> {
        let half = 0.5 * start.distance(goal);
        if half == 0.0 || !(margin > 1.0) {
            return Err(Error::invalid(
                "open water needs distinct start/goal and a margin above 1",
            ));
        }
        CompliantRegion::new(
            start.lerp(goal, 0.5),
            0.0,
            margin * half,
            ArcInterval::FULL,
            start,
            goal,
        )
    }

    /// Membership with a slack of `tol` meters.
    pub fn contains_with_tolerance(&self, p: Point, tol: f64) -> bool {
        let r = self.center.distance(p);
        if r < self.r_min - tol || r > self.r_max + tol {
            return false;
        }
        if self.allowed_arc.is_full() || r <= tol {
            return true;
        }
        let angular_tol = (tol / r).min(PI);
        self.allowed_arc
            .contains_with_tolerance(self.center.bearing_to(p), angular_tol)
    }

    pub fn contains(&self, p: Point) -> bool {
        self.contains_with_tolerance(p, 1e-9)
    }

    /// Straight-line distance between start and goal.
    pub fn c_min(&self) -> f64 {
        self.start.distance(self.goal_point)
    }

    /// Area of the annulus sector.
    pub fn area(&self) -> f64 {
        0.5 * self.allowed_arc.span * (self.r_max * self.r_max - self.r_min * self.r_min)
    }
}

/// Builds the compliant region for an encounter that requires own-ship action.
pub fn compliant_region(
    os: &VesselState,
    tv: &VesselState,
    assessment: &EncounterAssessment,
    d_act: f64,
    t_act: f64,
) -> Result<CompliantRegion> {
    if !assessment.kind.requires_action() {
        return Err(Error::NoActionRequired(assessment.kind));
    }
    if !(d_act > 0.0 && t_act > 0.0) {
        return Err(Error::invalid("d_act and t_act must be positive"));
    }
    let center = tv.position_at(assessment.tcpa);
    let start = os.position;
    let dist = start.distance(center);
    if dist <= d_act {
        return Err(Error::invalid(
            "own ship starts inside the inner circle (d_act around the target's CPA position)",
        ));
    }
    let r_max = (os.speed * t_act).max(OUTER_RADIUS_MARGIN * (dist + d_act));
    let goal_point = center + (center - start);
    let diameter = start.bearing_to(center);

    let preferred = match assessment.kind {
        // pass port to port: own ship keeps to the target's port side
        EncounterKind::HeadOn => Some(tv.heading.rotated(-0.5 * PI)),
        // give way by passing astern of the target
        EncounterKind::CrossingGiveWay => Some(tv.heading.opposite()),
        _ => None,
    };
    let allowed_arc = match preferred {
        None => ArcInterval::FULL,
        Some(dir) => {
            let right_normal = diameter.rotated(0.5 * PI).unit_vector();
            if dir.unit_vector().dot(right_normal) >= -1e-9 {
                ArcInterval::right_of(diameter)
            } else {
                ArcInterval::left_of(diameter)
            }
        }
    };
    CompliantRegion::new(center, d_act, r_max, allowed_arc, start, goal_point)
}
