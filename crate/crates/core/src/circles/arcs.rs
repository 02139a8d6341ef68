//! Open arcs of the outer circle: `A_S(α)` of half-width `arccos(ρ/ρ′)`
//! and the double arcs `Ã_S(α)` of twice that half-width.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use super::{interval_card, line_trace_pair, tangency_guard, ConcentricPair};
use crate::error::{Error, Result};
use crate::geom::{angular_distance, normalize_angle, Point, Tolerance};

/// Sweep resolution used by the characterization checks.
pub const DEFAULT_SWEEP_SAMPLES: usize = 3600;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ArcKind {
    Single,
    Double,
}

/// Open arc `(alpha − half_width, alpha + half_width)` of the outer circle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Arc {
    pub pair: ConcentricPair,
    /// Center angle in `[0, 2π)`.
    pub alpha: f64,
    pub half_width: f64,
    pub kind: ArcKind,
}

pub fn arc(pair: &ConcentricPair, alpha: f64, kind: ArcKind) -> Arc {
    let half = pair.half_arc();
    Arc {
        pair: *pair,
        alpha: normalize_angle(alpha),
        half_width: match kind {
            ArcKind::Single => half,
            ArcKind::Double => 2.0 * half,
        },
        kind,
    }
}

impl Arc {
    /// Angles of the endpoints `v` (clockwise end) and `w`.
    pub fn endpoint_angles(&self) -> (f64, f64) {
        (
            normalize_angle(self.alpha - self.half_width),
            normalize_angle(self.alpha + self.half_width),
        )
    }

    pub fn endpoints(&self) -> (Point, Point) {
        let (a, b) = self.endpoint_angles();
        (self.pair.outer_point(a), self.pair.outer_point(b))
    }

    /// Point of tangency of the endpoint chord with the inner circle
    /// (single arcs only).
    pub fn tangency_point(&self) -> Point {
        self.pair.inner_point(self.alpha)
    }

    /// Open-arc membership with wraparound; angles within `eps_metric / ρ′`
    /// of an endpoint count as outside.
    pub fn contains(&self, angle: f64, tol: &Tolerance) -> bool {
        let margin = tol.eps_metric / self.pair.rho_prime();
        angular_distance(angle, self.alpha) < self.half_width - margin
    }

    /// Angular length of the arc.
    pub fn length(&self) -> f64 {
        2.0 * self.half_width
    }
}

/// An arc recovered from an inner point, with its endpoints and the
/// sweep statistics backing the combinatorial characterization.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArcIdentification {
    pub arc: Arc,
    pub v: Point,
    pub w: Point,
    /// Sampled outer points satisfying the four-point/empty-interval test.
    pub sweep_members: usize,
    pub sweep_samples: usize,
}

fn sample_angle(j: usize, samples: usize) -> f64 {
    TAU * j as f64 / samples as f64
}

/// Recover `A_S(α)` from `u = c + ρ·P(α)` in two ways and check that they
/// agree: geometrically from the angle of `u`, and combinatorially as the
/// outer points `s` whose line through `u` meets the set in four points
/// with `(s, u)_S = ∅`. The endpoints are confirmed as the outer points
/// whose line through `u` meets the set in exactly three points.
pub fn identify_arc_from_inner(
    pair: &ConcentricPair,
    u: Point,
    samples: usize,
    tol: &Tolerance,
) -> Result<ArcIdentification> {
    if !pair.inner().contains(u, tol) {
        return Err(Error::OffSet { x: u.x, y: u.y });
    }
    let alpha = pair.inner().angle_of(u);
    let geometric = arc(pair, alpha, ArcKind::Single);
    let guard = tangency_guard(pair.rho(), tol);
    let mut members = 0;
    for j in 0..samples {
        let theta = sample_angle(j, samples);
        let s = pair.outer_point(theta);
        let in_char = line_trace_pair(pair, s, u, tol)?.len() == 4
            && interval_card(pair, s, u, tol)? == 0;
        members += usize::from(in_char);
        let edge = (angular_distance(theta, geometric.alpha) - geometric.half_width).abs();
        if edge > guard && in_char != geometric.contains(theta, tol) {
            return Err(Error::InvariantViolation(format!(
                "arc characterization disagrees at angle {theta} (u = {u})"
            )));
        }
    }
    let (v, w) = geometric.endpoints();
    for end in [v, w] {
        let n = line_trace_pair(pair, end, u, tol)?.len();
        if n != 3 {
            return Err(Error::InvariantViolation(format!(
                "arc endpoint {end} traces {n} points through {u}, expected 3"
            )));
        }
    }
    Ok(ArcIdentification {
        arc: geometric,
        v,
        w,
        sweep_members: members,
        sweep_samples: samples,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DoubleArcIdentification {
    pub arc: Arc,
    pub v: Point,
    pub w: Point,
    pub sweep_members: usize,
    pub sweep_samples: usize,
}

/// Recover `Ã_S(α)` from the outer point `u = c + ρ′·P(α)`: apart from
/// `u`, its points are exactly the points `s` of the set whose line
/// through `u` meets the set only in `{s, u}`. The endpoints `v, w` are
/// the outer points whose line through `u` meets the set in three points.
/// Inner points are swept too and must never qualify.
pub fn identify_double_arc(
    pair: &ConcentricPair,
    u: Point,
    samples: usize,
    tol: &Tolerance,
) -> Result<DoubleArcIdentification> {
    if !pair.outer().contains(u, tol) {
        return Err(Error::OffSet { x: u.x, y: u.y });
    }
    let alpha = pair.outer().angle_of(u);
    let geometric = arc(pair, alpha, ArcKind::Double);
    let guard = tangency_guard(pair.rho(), tol);
    let mut members = 0;
    for j in 0..samples {
        let theta = sample_angle(j, samples);
        let s = pair.outer_point(theta);
        if s.dist(u) <= 1e3 * tol.eps_metric {
            continue;
        }
        let in_char = line_trace_pair(pair, s, u, tol)?.len() == 2;
        members += usize::from(in_char);
        let edge = (angular_distance(theta, geometric.alpha) - geometric.half_width).abs();
        if edge > guard && in_char != geometric.contains(theta, tol) {
            return Err(Error::InvariantViolation(format!(
                "double-arc characterization disagrees at angle {theta}"
            )));
        }
        let inner = pair.inner_point(theta);
        if line_trace_pair(pair, inner, u, tol)?.len() == 2 {
            return Err(Error::InvariantViolation(format!(
                "inner point {inner} spans a two-point line with {u}"
            )));
        }
    }
    let (v, w) = geometric.endpoints();
    for end in [v, w] {
        let n = line_trace_pair(pair, end, u, tol)?.len();
        if n != 3 {
            return Err(Error::InvariantViolation(format!(
                "double-arc endpoint {end} traces {n} points through {u}, expected 3"
            )));
        }
    }
    Ok(DoubleArcIdentification {
        arc: geometric,
        v,
        w,
        sweep_members: members,
        sweep_samples: samples,
    })
}
