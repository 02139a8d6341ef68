//! Isomorphisms between concentric pairs, orbits of the endpoint-sharing
//! arc chain, and extension of sampled maps to similarities.

use serde::{Deserialize, Serialize};

use super::{cover::M_invariant, ConcentricPair, Orientation};
use crate::error::{Error, Result};
use crate::geom::{fit_from_anchors, normalize_angle, Point, ScaledIsometry, SimilarityFit, Tolerance};

/// Two concentric pairs are betweenness isomorphic iff their radius ratios
/// agree.
pub fn decide_isomorphic(s: &ConcentricPair, r: &ConcentricPair, tol: &Tolerance) -> bool {
    (s.radius_ratio() - r.radius_ratio()).abs() <= tol.eps_metric
}

/// The similarity `T_d ∘ M_{τ′/ρ′} ∘ T_{−c}` taking `s` onto `r`.
pub fn canonical_isomorphism(
    s: &ConcentricPair,
    r: &ConcentricPair,
    tol: &Tolerance,
) -> Result<ScaledIsometry> {
    if !decide_isomorphic(s, r, tol) {
        return Err(Error::RatioMismatch {
            m_left: M_invariant(s),
            m_right: M_invariant(r),
        });
    }
    let scale = ScaledIsometry::rescale(r.rho_prime() / s.rho_prime())?;
    Ok(ScaledIsometry::translate(r.center())
        .compose(&scale)
        .compose(&ScaledIsometry::translate(-s.center())))
}

/// Angles `θ₀ + sign·2k·arccos r (mod 2π)` for `k = 0..=steps`. Consecutive
/// entries are the two endpoints of the arc `A_S(θ₀ + sign·(2k+1)·arccos r)`.
pub fn chord_orbit(
    pair: &ConcentricPair,
    theta0: f64,
    orientation: Orientation,
    steps: usize,
) -> Vec<f64> {
    let step = orientation.sign() * 2.0 * pair.half_arc();
    (0..=steps)
        .map(|k| normalize_angle(theta0 + k as f64 * step))
        .collect()
}

/// Result of extending a sampled map between concentric pairs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Extension {
    pub fit: SimilarityFit,
    /// Largest distance of an image `Φ(s)` from the union of `R`'s circles.
    pub off_target: f64,
    /// Whether `Φ` sends `S`'s center to `R`'s center and scales by
    /// `τ′/ρ′`, i.e. maps the circles of `S` onto those of `R`.
    pub maps_circles: bool,
}

impl Extension {
    /// The sampled map is the restriction of one similarity.
    pub fn is_exact(&self, tol: &Tolerance) -> bool {
        self.fit.residual <= tol.eps_metric
    }
}

fn distance_to_pair(pair: &ConcentricPair, p: Point) -> f64 {
    let d = p.dist(pair.center());
    (d - pair.rho()).abs().min((d - pair.rho_prime()).abs())
}

/// Fit a similarity to a sampled map `S → R` from two well-separated
/// samples (the first one and the one farthest from it), trying both
/// orientations, and report the worst residual over all samples.
pub fn extend_to_similarity(
    s: &ConcentricPair,
    r: &ConcentricPair,
    sampled_map: &[(Point, Point)],
    tol: &Tolerance,
) -> Result<Extension> {
    if !decide_isomorphic(s, r, tol) {
        return Err(Error::RatioMismatch {
            m_left: M_invariant(s),
            m_right: M_invariant(r),
        });
    }
    let first = *sampled_map.first().ok_or(Error::DegenerateCorrespondence)?;
    let second = *sampled_map
        .iter()
        .max_by(|a, b| a.0.dist(first.0).total_cmp(&b.0.dist(first.0)))
        .expect("non-empty");
    if second.0.dist(first.0) <= tol.eps_metric {
        return Err(Error::DegenerateCorrespondence);
    }
    let fit = fit_from_anchors(first, second, sampled_map, true, tol)?;
    let off_target = sampled_map
        .iter()
        .map(|&(p, _)| distance_to_pair(r, fit.map.apply(p)))
        .fold(0.0, f64::max);
    let expected_scale = r.rho_prime() / s.rho_prime();
    let maps_circles = fit.map.apply(s.center()).dist(r.center()) <= tol.eps_metric * expected_scale.max(1.0)
        && (fit.map.scale() - expected_scale).abs() <= tol.eps_metric * expected_scale;
    Ok(Extension {
        fit,
        off_target,
        maps_circles,
    })
}
