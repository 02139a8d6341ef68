//! Finite samplings of a concentric pair that keep its tangent-chord and
//! diameter incidences.

use std::f64::consts::TAU;

use super::ConcentricPair;
use crate::config::{FiniteConfig, PointId};
use crate::error::{Error, Result};
use crate::geom::{signed_area2, Tolerance};

/// Index layout of a sampled configuration: outer point `j` has id `j`,
/// inner point `j` has id `N + j`, both at angle `2πj/N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleLayout {
    pub n: usize,
    pub p: usize,
}

impl SampleLayout {
    pub fn outer(&self, j: usize) -> PointId {
        PointId(j % self.n)
    }

    pub fn inner(&self, j: usize) -> PointId {
        PointId(self.n + j % self.n)
    }

    pub fn angle(&self, j: usize) -> f64 {
        TAU * (j % self.n) as f64 / self.n as f64
    }

    /// The incidences every sampling must carry: tangent-chord triples
    /// `(outer j, inner j+p, outer j+2p)` and, along each diameter, the
    /// four strict-betweenness triples through `outer j, inner j,
    /// inner j+N/2, outer j+N/2`.
    pub fn expected_between(&self) -> Vec<[PointId; 3]> {
        let (n, p, h) = (self.n, self.p, self.n / 2);
        let mut out: Vec<[PointId; 3]> = (0..n)
            .map(|j| [self.outer(j), self.inner(j + p), self.outer(j + 2 * p)])
            .collect();
        for j in 0..h {
            let (o1, i1, i2, o2) = (self.outer(j), self.inner(j), self.inner(j + h), self.outer(j + h));
            out.extend([[o1, i1, o2], [o1, i2, o2], [o1, i1, i2], [i1, i2, o2]]);
        }
        out
    }
}

/// Sample `N` outer and `N` inner points at angles `2πj/N`.
///
/// Requires `N` even, `0 < 2πp/N < π/2` and `r = cos(2πp/N)` within
/// `eps_metric`. Every point triple is checked: a signed area in
/// `(eps_sign, 10·eps_sign]` is an accidental near-incidence and fails.
pub fn sample_configuration(
    pair: &ConcentricPair,
    n: usize,
    p: usize,
    tol: &Tolerance,
) -> Result<(FiniteConfig, SampleLayout)> {
    if n < 4 || !n.is_multiple_of(2) {
        return Err(Error::InvalidSampling(format!("N = {n} must be even and at least 4")));
    }
    if p == 0 || 4 * p >= n {
        return Err(Error::InvalidSampling(format!(
            "p = {p} must satisfy 0 < 2πp/N < π/2 for N = {n}"
        )));
    }
    let expected = (TAU * p as f64 / n as f64).cos();
    let ratio = pair.radius_ratio();
    if (ratio - expected).abs() > tol.eps_metric {
        return Err(Error::Incommensurate { n, p, expected, ratio });
    }
    let layout = SampleLayout { n, p };
    let points: Vec<_> = (0..n)
        .map(|j| pair.outer_point(layout.angle(j)))
        .chain((0..n).map(|j| pair.inner_point(layout.angle(j))))
        .collect();
    let cfg = FiniteConfig::new(points, *tol)?;
    let pts = cfg.points();

    for a in 0..pts.len() {
        for b in a + 1..pts.len() {
            for c in b + 1..pts.len() {
                let area = signed_area2(pts[a], pts[b], pts[c]).abs();
                if area > tol.eps_sign && area <= 10.0 * tol.eps_sign {
                    return Err(Error::AccidentalIncidence([a, b, c]));
                }
            }
        }
    }
    for [x, y, z] in layout.expected_between() {
        if !cfg.is_between(x, y, z) {
            return Err(Error::InvariantViolation(format!(
                "sampled configuration lost the incidence {x} < {y} < {z}"
            )));
        }
    }
    Ok((cfg, layout))
}
