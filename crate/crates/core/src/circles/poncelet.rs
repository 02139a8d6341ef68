//! Tangent-chord dynamics between an outer circle and a circle nested
//! strictly inside it, and the arcs cut off by tangent lines of the inner
//! circle (the non-concentric counterpart of `A_S(α)`).

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use super::{
    classify, interval_card, line_trace_pair, tangency_guard, CaseLabel, Circle, CircleUnion, ConcentricPair,
    NonConcentricPair,
};
use crate::error::{Error, Result};
use crate::geom::{normalize_angle, Point, Tolerance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Ccw,
    Cw,
}

impl Orientation {
    pub fn sign(self) -> f64 {
        match self {
            Orientation::Ccw => 1.0,
            Orientation::Cw => -1.0,
        }
    }

    pub fn reversed(self) -> Self {
        match self {
            Orientation::Ccw => Orientation::Cw,
            Orientation::Cw => Orientation::Ccw,
        }
    }
}

/// An outer circle with a second circle strictly inside it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NestedCircles {
    outer: Circle,
    inner: Circle,
}

impl NestedCircles {
    pub fn new(outer: Circle, inner: Circle, tol: &Tolerance) -> Result<Self> {
        let gap = outer.radius - inner.radius - outer.center.dist(inner.center);
        if !(inner.radius > 0.0 && gap > tol.eps_metric) {
            return Err(Error::InvalidPair(
                "inner circle is not strictly inside the outer circle".into(),
            ));
        }
        Ok(Self { outer, inner })
    }

    pub fn outer(&self) -> Circle {
        self.outer
    }

    pub fn inner(&self) -> Circle {
        self.inner
    }

    /// Nested view of a non-concentric pair in case (a).
    pub fn from_pair(pair: &NonConcentricPair, tol: &Tolerance) -> Result<Self> {
        if classify(pair, tol) != CaseLabel::A {
            return Err(Error::InvalidPair(
                "circles are not strictly nested (case a)".into(),
            ));
        }
        let (a, b) = (pair.first(), pair.second());
        if a.radius > b.radius {
            Self::new(a, b, tol)
        } else {
            Self::new(b, a, tol)
        }
    }
}

impl From<ConcentricPair> for NestedCircles {
    fn from(p: ConcentricPair) -> Self {
        Self {
            outer: p.outer(),
            inner: p.inner(),
        }
    }
}

impl CircleUnion for NestedCircles {
    fn circles(&self) -> [Circle; 2] {
        [self.inner, self.outer]
    }
}

/// From the outer point at angle `theta`, follow the tangent line to the
/// inner circle to its second intersection with the outer circle.
///
/// `Ccw` takes the tangent that keeps the inner circle on the left of the
/// chord, so iterated steps travel counterclockwise (in the concentric case
/// the step is exactly `+2·arccos r`). Returns the new angle and the point
/// of tangency.
pub fn tangent_chord_step(
    nested: &NestedCircles,
    theta: f64,
    orientation: Orientation,
) -> (f64, Point) {
    let (outer, inner) = (nested.outer, nested.inner);
    let p = outer.point_at(theta);
    let to_center = inner.center - p;
    let dist = to_center.norm();
    let half_angle = (inner.radius / dist).asin();
    // rotating the center direction clockwise leaves the center on the left
    let turn = -orientation.sign() * half_angle;
    let dir = rotate(to_center.normalized(), turn);
    let tangency = p + (dist * half_angle.cos()) * dir;
    let t = -2.0 * dir.dot(p - outer.center);
    let q = p + t * dir;
    (outer.angle_of(q), tangency)
}

fn rotate(v: Point, angle: f64) -> Point {
    let (s, c) = angle.sin_cos();
    Point::new(c * v.x - s * v.y, s * v.x + c * v.y)
}

/// Counterclockwise angular interval `(start, start + extent)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AngularInterval {
    pub start: f64,
    pub extent: f64,
}

impl AngularInterval {
    pub fn end(&self) -> f64 {
        normalize_angle(self.start + self.extent)
    }

    /// Open-interval membership, with `margin` shaved off both ends.
    pub fn contains(&self, angle: f64, margin: f64) -> bool {
        let off = normalize_angle(angle - self.start);
        off > margin && off < self.extent - margin
    }
}

/// Outer arc cut off by the tangent to the inner circle at `u`, on the side
/// of the tangent away from the inner circle.
pub fn generalized_arc(nested: &NestedCircles, u: Point, tol: &Tolerance) -> Result<AngularInterval> {
    let (outer, inner) = (nested.outer, nested.inner);
    if !inner.contains(u, tol) {
        return Err(Error::OffSet { x: u.x, y: u.y });
    }
    let normal = (u - inner.center).normalized();
    let hits = outer.line_intersections(u, u + normal.perp(), tol);
    let [(_, q1), (_, q2)] = hits[..] else {
        return Err(Error::InvariantViolation(
            "tangent line does not cross the outer circle twice".into(),
        ));
    };
    let (a1, a2) = (outer.angle_of(q1), outer.angle_of(q2));
    let forward = normalize_angle(a2 - a1);
    let mid = outer.point_at(a1 + 0.5 * forward);
    Ok(if normal.dot(mid - u) > 0.0 {
        AngularInterval {
            start: a1,
            extent: forward,
        }
    } else {
        AngularInterval {
            start: a2,
            extent: TAU - forward,
        }
    })
}

/// [`generalized_arc`] cross-checked against its combinatorial description:
/// outer points `s` whose line through `u` meets the set in four points and
/// with `(s, u)` empty. Disagreement away from the endpoints is an error.
pub fn generalized_arc_checked(
    nested: &NestedCircles,
    u: Point,
    samples: usize,
    tol: &Tolerance,
) -> Result<AngularInterval> {
    let interval = generalized_arc(nested, u, tol)?;
    let guard = tangency_guard(nested.inner.radius, tol);
    for j in 0..samples {
        let theta = TAU * j as f64 / samples as f64;
        let s = nested.outer.point_at(theta);
        let off = normalize_angle(theta - interval.start);
        if off.min(TAU - off) < guard || (off - interval.extent).abs() < guard {
            continue;
        }
        let member = line_trace_pair(nested, s, u, tol)?.len() == 4
            && interval_card(nested, s, u, tol)? == 0;
        if member != interval.contains(theta, 0.0) {
            return Err(Error::InvariantViolation(format!(
                "tangent-arc characterization disagrees at angle {theta}"
            )));
        }
    }
    Ok(interval)
}

trait Normalized {
    fn normalized(self) -> Self;
}

impl Normalized for Point {
    fn normalized(self) -> Self {
        (1.0 / self.norm()) * self
    }
}
