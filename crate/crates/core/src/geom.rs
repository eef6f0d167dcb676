//! Planar geometry in a local flat North-East frame.
//!
//! Bearings and headings are measured clockwise from North, so a unit vector
//! at angle `θ` is `(north, east) = (cos θ, sin θ)`. This is the frame used by
//! the polar sampling formulas (`N = r cos θ`, `E = r sin θ`) as well.

use core::f64::consts::{PI, TAU};
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::math;
use crate::{Error, Result};

/// A position (or displacement) in meters.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Point {
    pub north: f64,
    pub east: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { north: 0.0, east: 0.0 };

    pub const fn new(north: f64, east: f64) -> Self {
        Point { north, east }
    }

    /// Builds a point, rejecting NaN and infinite components.
    pub fn try_new(north: f64, east: f64) -> Result<Self> {
        let p = Point { north, east };
        if p.is_finite() {
            Ok(p)
        } else {
            Err(Error::invalid("point components must be finite"))
        }
    }

    pub fn is_finite(self) -> bool {
        self.north.is_finite() && self.east.is_finite()
    }

    pub fn norm(self) -> f64 {
        math::hypot(self.north, self.east)
    }

    pub fn norm_squared(self) -> f64 {
        self.dot(self)
    }

    pub fn dot(self, other: Point) -> f64 {
        self.north * other.north + self.east * other.east
    }

    pub fn distance(self, other: Point) -> f64 {
        (other - self).norm()
    }

    /// Bearing of `other` as seen from `self`; undefined (returns 0) when the
    /// points coincide.
    pub fn bearing_to(self, other: Point) -> Angle {
        let d = other - self;
        Angle::wrap(math::atan2(d.east, d.north))
    }

    /// The point `distance` meters away along `bearing`.
    pub fn offset(self, bearing: Angle, distance: f64) -> Point {
        self + bearing.unit_vector() * distance
    }

    pub fn lerp(self, other: Point, t: f64) -> Point {
        self + (other - self) * t
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.north + rhs.north, self.east + rhs.east)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.north - rhs.north, self.east - rhs.east)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, k: f64) -> Point {
        Point::new(self.north * k, self.east * k)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.north, -self.east)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(N {:.3}, E {:.3})", self.north, self.east)
    }
}

/// An angle normalized to `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(into = "f64", try_from = "f64"))]
pub struct Angle(f64);

impl Angle {
    pub const ZERO: Angle = Angle(0.0);

    /// Normalizes a finite angle; see [`normalize_angle`].
    pub fn new(radians: f64) -> Result<Self> {
        normalize_angle(radians)
    }

    pub fn from_degrees(degrees: f64) -> Result<Self> {
        normalize_angle(degrees.to_radians())
    }

    /// Normalization for values already known to be finite.
    pub(crate) fn wrap(radians: f64) -> Self {
        debug_assert!(radians.is_finite());
        let mut r = radians % TAU;
        if r < 0.0 {
            r += TAU;
        }
        if r >= TAU {
            r = 0.0;
        }
        Angle(r)
    }

    pub fn radians(self) -> f64 {
        self.0
    }

    pub fn degrees(self) -> f64 {
        self.0.to_degrees()
    }

    /// The same direction expressed in `(-π, π]`.
    pub fn signed(self) -> f64 {
        if self.0 > PI {
            self.0 - TAU
        } else {
            self.0
        }
    }

    pub fn unit_vector(self) -> Point {
        Point::new(math::cos(self.0), math::sin(self.0))
    }

    pub fn rotated(self, radians: f64) -> Angle {
        Angle::wrap(self.0 + radians)
    }

    pub fn opposite(self) -> Angle {
        self.rotated(PI)
    }
}

impl From<Angle> for f64 {
    fn from(a: Angle) -> f64 {
        a.0
    }
}

impl TryFrom<f64> for Angle {
    type Error = Error;
    fn try_from(v: f64) -> Result<Self> {
        normalize_angle(v)
    }
}

/// Maps any finite angle onto `[0, 2π)`.
pub fn normalize_angle(raw: f64) -> Result<Angle> {
    if !raw.is_finite() {
        return Err(Error::invalid("angle must be finite"));
    }
    Ok(Angle::wrap(raw))
}

/// A closed angular interval of bearings, `[start, start + span]`, taken
/// clockwise. A span of `2π` is the full circle.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ArcInterval {
    pub start: Angle,
    pub span: f64,
}

impl ArcInterval {
    pub const FULL: ArcInterval = ArcInterval {
        start: Angle::ZERO,
        span: TAU,
    };

    pub fn new(start: Angle, span: f64) -> Result<Self> {
        if !(span > 0.0 && span <= TAU) {
            return Err(Error::invalid("arc span must lie in (0, 2π]"));
        }
        Ok(ArcInterval { start, span })
    }

    /// Half circle of bearings to the right (clockwise side) of `direction`.
    pub fn right_of(direction: Angle) -> Self {
        ArcInterval {
            start: direction,
            span: PI,
        }
    }

    /// Half circle of bearings to the left (counter-clockwise side) of `direction`.
    pub fn left_of(direction: Angle) -> Self {
        ArcInterval {
            start: direction.opposite(),
            span: PI,
        }
    }

    pub fn is_full(&self) -> bool {
        self.span >= TAU
    }

    /// Membership with an angular slack of `tol` radians on both ends.
    pub fn contains_with_tolerance(&self, bearing: Angle, tol: f64) -> bool {
        if self.is_full() {
            return true;
        }
        let offset = Angle::wrap(bearing.radians() - self.start.radians()).radians();
        offset <= self.span + tol || offset >= TAU - tol
    }

    pub fn contains(&self, bearing: Angle) -> bool {
        self.contains_with_tolerance(bearing, 1e-12)
    }

    /// Bearing at fraction `t ∈ [0, 1]` of the arc.
    pub fn at(&self, t: f64) -> Angle {
        self.start.rotated(t * self.span)
    }

    pub fn mid(&self) -> Angle {
        self.at(0.5)
    }
}

/// Radius of an ellipse with semi-axes `a` (along `θ = 0`) and `b`, as a
/// function of the polar angle measured from the `a` axis.
pub fn polar_ellipse_radius(a: f64, b: f64, theta: Angle) -> Result<f64> {
    if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
        return Err(Error::invalid("ellipse axes must be positive and finite"));
    }
    Ok(ellipse_radius_unchecked(a, b, theta.radians()))
}

#[inline]
pub(crate) fn ellipse_radius_unchecked(a: f64, b: f64, theta: f64) -> f64 {
    let bc = b * math::cos(theta);
    let as_ = a * math::sin(theta);
    a * b / math::sqrt(bc * bc + as_ * as_)
}

/// Turning radius needed to transition between two legs.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum TurnRadius {
    /// The legs are collinear and co-directed: no turn is needed.
    Unbounded,
    Finite(f64),
}

impl TurnRadius {
    /// Whether a vessel with minimum turning radius `r_min` can follow the turn.
    pub fn satisfies(self, r_min: f64) -> bool {
        match self {
            TurnRadius::Unbounded => true,
            TurnRadius::Finite(r) => r >= r_min,
        }
    }

    pub fn value(self) -> f64 {
        match self {
            TurnRadius::Unbounded => f64::INFINITY,
            TurnRadius::Finite(r) => r,
        }
    }
}

const STRAIGHT_EPS: f64 = 1e-12;

/// Turning radius `|R · tan(φ/2)|` with `φ = (α − β + π) mod 2π`, where `α`
/// and `β` are the courses of the incoming and outgoing legs and `R` the
/// radius of acceptance of the waypoint joining them.
///
/// A straight continuation returns [`TurnRadius::Unbounded`]; a full reversal
/// has zero radius and is reported as infeasible geometry.
pub fn required_turning_radius(radius_of_acceptance: f64, leg_in: Angle, leg_out: Angle) -> Result<TurnRadius> {
    if !(radius_of_acceptance > 0.0 && radius_of_acceptance.is_finite()) {
        return Err(Error::invalid("radius of acceptance must be positive"));
    }
    let phi = Angle::wrap(leg_in.radians() - leg_out.radians() + PI).radians();
    let half = 0.5 * phi;
    let (s, c) = (math::sin(half), math::cos(half));
    if c.abs() <= STRAIGHT_EPS {
        return Ok(TurnRadius::Unbounded);
    }
    if s.abs() <= STRAIGHT_EPS {
        return Err(Error::InfeasibleGeometry(
            "legs reverse course; zero turning radius".into(),
        ));
    }
    Ok(TurnRadius::Finite((radius_of_acceptance * s / c).abs()))
}

/// [`required_turning_radius`] from leg direction vectors, without angles.
///
/// With unit vectors `u`, `v` along the legs, `|u − v| = 2|sin(δ/2)|` and
/// `|u + v| = 2|cos(δ/2)|` for the course change `δ`, so the radius is
/// `R·|u + v| / |u − v|`.
pub fn turning_radius_between(radius_of_acceptance: f64, leg_in: Point, leg_out: Point) -> Result<TurnRadius> {
    if !(radius_of_acceptance > 0.0 && radius_of_acceptance.is_finite()) {
        return Err(Error::invalid("radius of acceptance must be positive"));
    }
    let (n_in, n_out) = (leg_in.norm(), leg_out.norm());
    if n_in == 0.0 || n_out == 0.0 {
        return Err(Error::DegenerateGeometry("zero-length leg".into()));
    }
    let u = leg_in * (1.0 / n_in);
    let v = leg_out * (1.0 / n_out);
    let half_sin = 0.5 * (u - v).norm();
    let half_cos = 0.5 * (u + v).norm();
    if half_sin <= STRAIGHT_EPS {
        return Ok(TurnRadius::Unbounded);
    }
    if half_cos <= STRAIGHT_EPS {
        return Err(Error::InfeasibleGeometry(
            "legs reverse course; zero turning radius".into(),
        ));
    }
    Ok(TurnRadius::Finite(radius_of_acceptance * half_cos / half_sin))
}

/// Shortest distance from `p` to the segment `[a, b]`.
pub fn segment_point_distance(a: Point, b: Point, p: Point) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_squared();
    if len2 == 0.0 {
        return a.distance(p);
    }
    let t = ((p - a).dot(ab) / len2).clamp(0.0, 1.0);
    a.lerp(b, t).distance(p)
}
