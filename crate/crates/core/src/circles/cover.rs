//! k-covers of the outer circle by arcs `A_S(α)`, and the invariants
//! `m(S)` (fewest arcs covering the outer circle) and `M(S)` (infimum of
//! `n/k` over n-arc k-covers).

#![allow(non_snake_case)]

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use super::ConcentricPair;
use crate::error::{Error, Result};
use crate::geom::{angular_distance, normalize_angle, Tolerance};

/// Arc centers `alphas` claimed to form a `k`-cover.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverCertificate {
    pub alphas: Vec<f64>,
    pub k: u64,
}

impl CoverCertificate {
    pub fn n(&self) -> usize {
        self.alphas.len()
    }
}

// relative slack for treating π/arccos r as an integer
const INTEGRALITY_EPS: f64 = 1e-9;

/// `m` for a radius ratio `r ∈ (0, 1)`: the least `n` with
/// `n·arccos r > π`, since open arcs of total length exactly 2π cannot
/// cover the circle.
pub fn m_invariant_of_ratio(r: f64) -> u64 {
    let q = PI / r.acos();
    let nearest = q.round();
    if (q - nearest).abs() <= INTEGRALITY_EPS * q {
        nearest as u64 + 1
    } else {
        q.floor() as u64 + 1
    }
}

pub fn m_invariant(pair: &ConcentricPair) -> u64 {
    m_invariant_of_ratio(pair.radius_ratio())
}

/// `M = π / arccos r`.
pub fn M_invariant_of_ratio(r: f64) -> f64 {
    PI / r.acos()
}

pub fn M_invariant(pair: &ConcentricPair) -> f64 {
    M_invariant_of_ratio(pair.radius_ratio())
}

/// Necessary condition for `n` arcs to form a `k`-cover: their total
/// length `2n·arccos r` must be at least `k` full turns.
pub fn cover_lower_bound_ok(pair: &ConcentricPair, n: u64, k: u64) -> bool {
    let lhs = n as f64 * pair.half_arc();
    let rhs = k as f64 * PI;
    lhs >= rhs * (1.0 - 1e-12)
}

/// Minimum, over the whole outer circle, of the number of open arcs of the
/// certificate containing a point.
///
/// Coverage is piecewise constant between consecutive arc endpoints, so it
/// is evaluated at every endpoint and at the midpoint of every gap between
/// consecutive endpoints. A point within `eps_metric / ρ′` of an arc's
/// endpoint does not count as covered by that arc.
pub fn verify_cover(pair: &ConcentricPair, cert: &CoverCertificate, tol: &Tolerance) -> u64 {
    if cert.alphas.is_empty() {
        return 0;
    }
    let half = pair.half_arc();
    let margin = tol.eps_metric / pair.rho_prime();
    let alphas: Vec<f64> = cert.alphas.iter().map(|&a| normalize_angle(a)).collect();
    let mut ends: Vec<f64> = alphas
        .iter()
        .flat_map(|&a| [normalize_angle(a - half), normalize_angle(a + half)])
        .collect();
    ends.sort_by(f64::total_cmp);
    let coverage = |theta: f64| {
        alphas
            .iter()
            .filter(|&&a| angular_distance(theta, a) < half - margin)
            .count() as u64
    };
    let mut min = u64::MAX;
    for (i, &e) in ends.iter().enumerate() {
        let next = if i + 1 < ends.len() {
            ends[i + 1]
        } else {
            ends[0] + TAU
        };
        min = min.min(coverage(e)).min(coverage(0.5 * (e + next)));
        if min == 0 {
            break;
        }
    }
    min
}

const MAX_K: u64 = 1_000_000;

/// Build a k-cover with `n/k ≤ target` by chaining arcs
/// `α_i = i·(2·arccos r − ε)` so that consecutive arcs overlap by `ε`.
///
/// For each `k` the largest admissible `n = ⌊target·k⌋` is tried; the chain
/// wraps `k` times as soon as `n·arccos r > kπ`, which is possible exactly
/// when `target > M`. The returned certificate is checked with
/// [`verify_cover`] before it is handed out.
pub fn construct_cover(
    pair: &ConcentricPair,
    target: f64,
    tol: &Tolerance,
) -> Result<CoverCertificate> {
    let m = M_invariant(pair);
    if target.is_nan() || target <= m {
        return Err(Error::TargetBelowInvariant { target, m });
    }
    let half = pair.half_arc();
    // the overlap ε must stay well clear of the arc membership margin
    let min_slack = 1e3 * tol.eps_metric / pair.rho_prime();
    for k in 1..=MAX_K {
        let n = (target * k as f64).floor() as u64;
        if n < 2 {
            continue;
        }
        let slack = n as f64 * half - k as f64 * PI;
        if slack <= min_slack * n as f64 {
            continue;
        }
        // (n−1)(2a − ε) + 2a = n·a + kπ > 2kπ
        let eps = slack / (n - 1) as f64;
        let step = 2.0 * half - eps;
        let cert = CoverCertificate {
            alphas: (0..n).map(|i| normalize_angle(i as f64 * step)).collect(),
            k,
        };
        let got = verify_cover(pair, &cert, tol);
        if got < k {
            return Err(Error::InvariantViolation(format!(
                "constructed {n}-arc cover has multiplicity {got} < {k}"
            )));
        }
        return Ok(cert);
    }
    Err(Error::CoverSearchExhausted(MAX_K))
}
