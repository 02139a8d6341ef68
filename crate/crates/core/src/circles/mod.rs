//! Unions of two circles: concentric pairs `S(c, ρ) ∪ S(c, ρ′)` and their
//! non-concentric analogues.
//!
//! The submodules cover arcs and their combinatorial characterizations,
//! k-covers and the invariants `m` and `M`, isomorphisms between concentric
//! pairs, tangent-chord dynamics between nested circles, and commensurate
//! finite samplings.

mod arcs;
mod cover;
mod poncelet;
mod sample;
mod similarity;

pub use arcs::{
    arc, identify_arc_from_inner, identify_double_arc, Arc, ArcIdentification, ArcKind,
    DoubleArcIdentification, DEFAULT_SWEEP_SAMPLES,
};
pub use cover::{
    construct_cover, cover_lower_bound_ok, m_invariant, m_invariant_of_ratio, M_invariant,
    M_invariant_of_ratio, verify_cover, CoverCertificate,
};
pub use poncelet::{
    generalized_arc, generalized_arc_checked, tangent_chord_step, AngularInterval, NestedCircles,
    Orientation,
};
pub use sample::{sample_configuration, SampleLayout};
pub use similarity::{
    canonical_isomorphism, chord_orbit, decide_isomorphic, extend_to_similarity, Extension,
};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{Point, Tolerance};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Circle {
    pub center: Point,
    pub radius: f64,
}

impl Circle {
    pub fn new(center: Point, radius: f64) -> Self {
        Self { center, radius }
    }

    pub fn point_at(&self, theta: f64) -> Point {
        self.center + self.radius * Point::polar(theta)
    }

    pub fn angle_of(&self, p: Point) -> f64 {
        (p - self.center).angle()
    }

    pub fn contains(&self, p: Point, tol: &Tolerance) -> bool {
        (p.dist(self.center) - self.radius).abs() <= tol.eps_metric
    }

    /// Strictly inside the open disc, by more than `eps_metric`.
    pub fn strictly_inside(&self, p: Point, tol: &Tolerance) -> bool {
        p.dist(self.center) < self.radius - tol.eps_metric
    }

    /// Intersections of the line through `p` and `q` with the circle, as
    /// `(t, point)` with `point = p + t·(q − p)`, in ascending `t`. A
    /// discriminant within `eps_sign·max(1, radius)²` counts as tangency
    /// and yields a single point.
    pub fn line_intersections(&self, p: Point, q: Point, tol: &Tolerance) -> Vec<(f64, Point)> {
        let d = q - p;
        let dd = d.dot(d);
        let t_foot = (self.center - p).dot(d) / dd;
        let foot = p + t_foot * d;
        let h2 = (foot - self.center).dot(foot - self.center);
        let disc = self.radius * self.radius - h2;
        let scale = self.radius.max(1.0);
        if disc.abs() <= tol.eps_sign * scale * scale {
            vec![(t_foot, foot)]
        } else if disc < 0.0 {
            Vec::new()
        } else {
            let dt = (disc / dd).sqrt();
            [t_foot - dt, t_foot + dt]
                .into_iter()
                .map(|t| (t, p + t * d))
                .collect()
        }
    }
}

/// Angular margin around arc endpoints inside which sweeps skip their
/// comparison: the tangency tolerance makes lines within roughly
/// `sqrt(eps_sign)·max(1, r)/r` of a tangent to a circle of radius `r`
/// count as tangent.
pub(crate) fn tangency_guard(radius: f64, tol: &Tolerance) -> f64 {
    10.0 * tol.eps_sign.sqrt() * radius.max(1.0) / radius
}

/// A planar set made of exactly two circles.
pub trait CircleUnion {
    fn circles(&self) -> [Circle; 2];

    fn contains(&self, p: Point, tol: &Tolerance) -> bool {
        self.circles().iter().any(|c| c.contains(p, tol))
    }
}

/// `S(c, ρ) ∪ S(c, ρ′)` with `0 < ρ < ρ′`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ConcentricPairJson", into = "ConcentricPairJson")]
pub struct ConcentricPair {
    center: Point,
    rho: f64,
    rho_prime: f64,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConcentricPairJson {
    center: Point,
    rho: f64,
    rho_prime: f64,
}

impl TryFrom<ConcentricPairJson> for ConcentricPair {
    type Error = Error;
    fn try_from(j: ConcentricPairJson) -> Result<Self> {
        ConcentricPair::new(j.center, j.rho, j.rho_prime)
    }
}

impl From<ConcentricPair> for ConcentricPairJson {
    fn from(p: ConcentricPair) -> Self {
        Self {
            center: p.center,
            rho: p.rho,
            rho_prime: p.rho_prime,
        }
    }
}

impl ConcentricPair {
    pub fn new(center: Point, rho: f64, rho_prime: f64) -> Result<Self> {
        Point::try_new(center.x, center.y)?;
        if !(rho.is_finite() && rho_prime.is_finite() && 0.0 < rho && rho < rho_prime) {
            return Err(Error::InvalidPair(format!(
                "need 0 < rho < rho_prime, got rho={rho}, rho_prime={rho_prime}"
            )));
        }
        Ok(Self {
            center,
            rho,
            rho_prime,
        })
    }

    pub fn center(&self) -> Point {
        self.center
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn rho_prime(&self) -> f64 {
        self.rho_prime
    }

    pub fn inner(&self) -> Circle {
        Circle::new(self.center, self.rho)
    }

    pub fn outer(&self) -> Circle {
        Circle::new(self.center, self.rho_prime)
    }

    /// `r = ρ/ρ′ ∈ (0, 1)`.
    pub fn radius_ratio(&self) -> f64 {
        self.rho / self.rho_prime
    }

    /// Half the angular length of an arc `A_S(α)`: `arccos(ρ/ρ′)`.
    pub fn half_arc(&self) -> f64 {
        self.radius_ratio().acos()
    }

    pub fn outer_point(&self, theta: f64) -> Point {
        self.outer().point_at(theta)
    }

    pub fn inner_point(&self, theta: f64) -> Point {
        self.inner().point_at(theta)
    }
}

impl CircleUnion for ConcentricPair {
    fn circles(&self) -> [Circle; 2] {
        [self.inner(), self.outer()]
    }
}

/// `S(c1, r1) ∪ S(c2, r2)` with `c1 ≠ c2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "NonConcentricPairJson", into = "NonConcentricPairJson")]
pub struct NonConcentricPair {
    c1: Point,
    r1: f64,
    c2: Point,
    r2: f64,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NonConcentricPairJson {
    c1: Point,
    r1: f64,
    c2: Point,
    r2: f64,
}

impl TryFrom<NonConcentricPairJson> for NonConcentricPair {
    type Error = Error;
    fn try_from(j: NonConcentricPairJson) -> Result<Self> {
        NonConcentricPair::new(j.c1, j.r1, j.c2, j.r2, &Tolerance::default())
    }
}

impl From<NonConcentricPair> for NonConcentricPairJson {
    fn from(p: NonConcentricPair) -> Self {
        Self {
            c1: p.c1,
            r1: p.r1,
            c2: p.c2,
            r2: p.r2,
        }
    }
}

impl NonConcentricPair {
    pub fn new(c1: Point, r1: f64, c2: Point, r2: f64, tol: &Tolerance) -> Result<Self> {
        Point::try_new(c1.x, c1.y)?;
        Point::try_new(c2.x, c2.y)?;
        if !(r1.is_finite() && r2.is_finite() && r1 > 0.0 && r2 > 0.0) {
            return Err(Error::InvalidPair(format!(
                "radii must be positive, got {r1} and {r2}"
            )));
        }
        if c1.dist(c2) <= tol.eps_metric {
            return Err(Error::InvalidPair("centers coincide".into()));
        }
        Ok(Self { c1, r1, c2, r2 })
    }

    pub fn first(&self) -> Circle {
        Circle::new(self.c1, self.r1)
    }

    pub fn second(&self) -> Circle {
        Circle::new(self.c2, self.r2)
    }

    pub fn center_distance(&self) -> f64 {
        self.c1.dist(self.c2)
    }
}

impl CircleUnion for NonConcentricPair {
    fn circles(&self) -> [Circle; 2] {
        [self.first(), self.second()]
    }
}

/// Relative position of two circles with distinct centers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseLabel {
    /// One circle strictly inside the other.
    A,
    /// Internally tangent.
    B,
    /// Two intersection points.
    C,
    /// Externally tangent.
    D,
    /// Strictly outside each other.
    E,
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CaseLabel::A => "a",
            CaseLabel::B => "b",
            CaseLabel::C => "c",
            CaseLabel::D => "d",
            CaseLabel::E => "e",
        };
        f.write_str(s)
    }
}

/// Compare `|c1 − c2|` against `|r1 − r2|` and `r1 + r2`; the tangent
/// cases win whenever the distance is within `eps_metric` of the boundary.
pub fn classify(pair: &NonConcentricPair, tol: &Tolerance) -> CaseLabel {
    let d = pair.center_distance();
    let diff = (pair.r1 - pair.r2).abs();
    let sum = pair.r1 + pair.r2;
    if (d - diff).abs() <= tol.eps_metric {
        CaseLabel::B
    } else if d < diff {
        CaseLabel::A
    } else if (d - sum).abs() <= tol.eps_metric {
        CaseLabel::D
    } else if d < sum {
        CaseLabel::C
    } else {
        CaseLabel::E
    }
}

fn check_on_set(set: &impl CircleUnion, p: Point, tol: &Tolerance) -> Result<()> {
    if set.contains(p, tol) {
        Ok(())
    } else {
        Err(Error::OffSet { x: p.x, y: p.y })
    }
}

/// Points of the set on the line through `p` and `q`, ordered along the
/// line from `p` towards `q` and deduplicated within `eps_metric`.
pub fn line_trace_pair(
    set: &impl CircleUnion,
    p: Point,
    q: Point,
    tol: &Tolerance,
) -> Result<Vec<Point>> {
    check_on_set(set, p, tol)?;
    check_on_set(set, q, tol)?;
    if p.dist(q) <= tol.eps_metric {
        return Err(Error::SameIds);
    }
    Ok(line_points(set, p, q, tol)
        .into_iter()
        .map(|(_, pt)| pt)
        .collect())
}

fn line_points(set: &impl CircleUnion, p: Point, q: Point, tol: &Tolerance) -> Vec<(f64, Point)> {
    let mut hits: Vec<(f64, Point)> = set
        .circles()
        .iter()
        .flat_map(|c| c.line_intersections(p, q, tol))
        .collect();
    hits.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut out: Vec<(f64, Point)> = Vec::with_capacity(hits.len());
    for h in hits {
        if out.iter().all(|o| o.1.dist(h.1) > tol.eps_metric) {
            out.push(h);
        }
    }
    out
}

/// Points of the set strictly between `x` and `z`: `(x, z)_S`.
pub fn interval_points(
    set: &impl CircleUnion,
    x: Point,
    z: Point,
    tol: &Tolerance,
) -> Result<Vec<Point>> {
    check_on_set(set, x, tol)?;
    check_on_set(set, z, tol)?;
    if x.dist(z) <= tol.eps_metric {
        return Err(Error::SameIds);
    }
    Ok(line_points(set, x, z, tol)
        .into_iter()
        .filter(|&(t, pt)| {
            t > 0.0 && t < 1.0 && pt.dist(x) > tol.eps_metric && pt.dist(z) > tol.eps_metric
        })
        .map(|(_, pt)| pt)
        .collect())
}

/// `card (x, z)_S`.
pub fn interval_card(set: &impl CircleUnion, x: Point, z: Point, tol: &Tolerance) -> Result<usize> {
    interval_points(set, x, z, tol).map(|v| v.len())
}

/// Whether `p` (a point of the set) is extreme: no line through `p` meets
/// the set on both sides of `p`.
///
/// For `p` on circle `i`, the other points of circle `i` on any line
/// through `p` lie on the inner side of the tangent at `p`. So `p` is not
/// extreme when it lies inside the other disc, when the other disc reaches
/// past that tangent, or when `p` is a transversal (or external tangent)
/// common point.
pub fn is_extreme(set: &impl CircleUnion, p: Point, tol: &Tolerance) -> Result<bool> {
    check_on_set(set, p, tol)?;
    let [c0, c1] = set.circles();
    let on = |c: &Circle| c.contains(p, tol);
    let (own, other) = if on(&c0) { (c0, c1) } else { (c1, c0) };
    if own.center.dist(other.center) <= tol.eps_metric {
        // concentric: only the larger circle is extreme
        return Ok(own.radius > other.radius);
    }
    let normal = (1.0 / own.radius) * (p - own.center);
    if other.contains(p, tol) {
        // common point: extreme only if both circles bend the same way there
        let other_normal = (1.0 / other.radius) * (p - other.center);
        let same_side = normal.dot(other_normal) > 0.0;
        let tangent = normal.cross(other_normal).abs() <= tol.eps_sign.sqrt();
        return Ok(same_side && tangent);
    }
    if other.strictly_inside(p, tol) {
        return Ok(false);
    }
    let reach = normal.dot(other.center - p) + other.radius;
    Ok(reach <= tol.eps_metric)
}

/// Common points of the two circles (0, 1 or 2 points).
pub fn circle_intersections(set: &impl CircleUnion, tol: &Tolerance) -> Vec<Point> {
    let [a, b] = set.circles();
    let d = a.center.dist(b.center);
    if d <= tol.eps_metric {
        return Vec::new();
    }
    let u = (1.0 / d) * (b.center - a.center);
    let along = (d * d + a.radius * a.radius - b.radius * b.radius) / (2.0 * d);
    let h2 = a.radius * a.radius - along * along;
    let base = a.center + along * u;
    let scale = a.radius.max(1.0);
    if h2.abs() <= tol.eps_sign * scale * scale {
        vec![base]
    } else if h2 < 0.0 {
        Vec::new()
    } else {
        let h = h2.sqrt();
        vec![base + h * u.perp(), base - h * u.perp()]
    }
}
