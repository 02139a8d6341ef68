//! Planar primitives: tolerant orientation, collinearity and betweenness
//! predicates, and scaled isometries (similarities) of the plane.
//!
//! All predicates canonicalize the order of their arguments before
//! evaluating the determinant, so the symmetry laws (`between(x, y, z) ==
//! between(z, y, x)`, antisymmetry of `orient`) hold bit-exactly rather than
//! up to rounding.

use std::f64::consts::TAU;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite real coordinate.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Coordinate(f64);

impl Coordinate {
    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() {
            Ok(Self(value))
        } else {
            Err(Error::NonFinite(value))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for Coordinate {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        Self::new(value)
    }
}

/// Thresholds used by the sign and distance predicates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    /// Twice-signed triangle areas with magnitude at most this are zero.
    pub eps_sign: f64,
    /// Points closer than this are considered equal.
    pub eps_metric: f64,
}

impl Tolerance {
    pub fn new(eps_sign: f64, eps_metric: f64) -> Result<Self> {
        let ok = |e: f64| e.is_finite() && e > 0.0;
        if ok(eps_sign) && ok(eps_metric) {
            Ok(Self {
                eps_sign,
                eps_metric,
            })
        } else {
            Err(Error::InvalidTolerance {
                eps_sign,
                eps_metric,
            })
        }
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            eps_sign: 1e-9,
            eps_metric: 1e-9,
        }
    }
}

/// A point (or vector) of the plane.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl From<[f64; 2]> for Point {
    fn from([x, y]: [f64; 2]) -> Self {
        Self { x, y }
    }
}

impl From<Point> for [f64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    /// Checked constructor rejecting NaN and infinities.
    pub fn try_new(x: f64, y: f64) -> Result<Self> {
        Ok(Self {
            x: Coordinate::new(x)?.value(),
            y: Coordinate::new(y)?.value(),
        })
    }

    /// Unit vector at angle `theta`.
    pub fn polar(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self { x: c, y: s }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, other: Point) -> f64 {
        (self - other).norm()
    }

    /// Angle of the vector in `[0, 2π)`.
    pub fn angle(self) -> f64 {
        normalize_angle(self.y.atan2(self.x))
    }

    /// Counterclockwise rotation by a quarter turn.
    pub fn perp(self) -> Point {
        Point::new(-self.y, self.x)
    }

    fn lex_key(self) -> (f64, f64) {
        (self.x, self.y)
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

impl Mul<Point> for f64 {
    type Output = Point;
    fn mul(self, p: Point) -> Point {
        Point::new(self * p.x, self * p.y)
    }
}

/// Reduce an angle to `[0, 2π)`.
pub fn normalize_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs
    if t >= TAU {
        0.0
    } else {
        t
    }
}

/// Unsigned angular distance between two angles, in `[0, π]`.
pub fn angular_distance(a: f64, b: f64) -> f64 {
    let d = normalize_angle(a - b);
    d.min(TAU - d)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

/// Twice the signed area of triangle `pqr`, evaluated on the
/// lexicographically sorted vertices and corrected by the permutation parity.
pub fn signed_area2(p: Point, q: Point, r: Point) -> f64 {
    let mut pts = [p, q, r];
    let mut odd = false;
    // three-element bubble sort, tracking parity
    for (i, j) in [(0, 1), (1, 2), (0, 1)] {
        if pts[j].lex_key() < pts[i].lex_key() {
            pts.swap(i, j);
            odd = !odd;
        }
    }
    let [a, b, c] = pts;
    let det = (b - a).cross(c - a);
    if odd {
        -det
    } else {
        det
    }
}

/// Orientation of the triple; positive means counterclockwise.
pub fn orient(p: Point, q: Point, r: Point, tol: &Tolerance) -> Sign {
    let det = signed_area2(p, q, r);
    if det.abs() <= tol.eps_sign {
        Sign::Zero
    } else if det > 0.0 {
        Sign::Positive
    } else {
        Sign::Negative
    }
}

pub fn collinear(p: Point, q: Point, r: Point, tol: &Tolerance) -> bool {
    orient(p, q, r, tol) == Sign::Zero
}

/// Whether `y` lies on the segment `[x, z]`.
///
/// With `strict`, `y` must also be farther than `eps_metric` from both
/// endpoints.
pub fn between(x: Point, y: Point, z: Point, strict: bool, tol: &Tolerance) -> bool {
    let (x, z) = if z.lex_key() < x.lex_key() { (z, x) } else { (x, z) };
    let dx = y.dist(x);
    let dz = y.dist(z);
    if strict && (dx <= tol.eps_metric || dz <= tol.eps_metric) {
        return false;
    }
    if dx <= tol.eps_metric || dz <= tol.eps_metric {
        return true;
    }
    let d = z - x;
    let len = d.norm();
    if len <= tol.eps_metric {
        return false;
    }
    if !collinear(x, y, z, tol) {
        return false;
    }
    let along = (y - x).dot(d) / len;
    along >= -tol.eps_metric && along <= len + tol.eps_metric
}

/// A similarity `p ↦ scale · R(rotation) · F(p) + translation`, where `F`
/// is the reflection across the x-axis when `reflect` is set and the
/// identity otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScaledIsometry {
    scale: f64,
    rotation: f64,
    reflect: bool,
    translation: Point,
}

impl Default for ScaledIsometry {
    fn default() -> Self {
        Self::identity()
    }
}

impl ScaledIsometry {
    pub fn new(scale: f64, rotation: f64, reflect: bool, translation: Point) -> Result<Self> {
        if !(scale.is_finite() && scale > 0.0) {
            return Err(Error::NonPositiveScale(scale));
        }
        if !rotation.is_finite() {
            return Err(Error::NonFinite(rotation));
        }
        if !translation.is_finite() {
            return Err(Error::NonFinite(if translation.x.is_finite() {
                translation.y
            } else {
                translation.x
            }));
        }
        Ok(Self {
            scale,
            rotation: normalize_angle(rotation),
            reflect,
            translation,
        })
    }

    pub fn identity() -> Self {
        Self {
            scale: 1.0,
            rotation: 0.0,
            reflect: false,
            translation: Point::ORIGIN,
        }
    }

    /// `x ↦ C·x`.
    pub fn rescale(c: f64) -> Result<Self> {
        Self::new(c, 0.0, false, Point::ORIGIN)
    }

    /// `x ↦ x + u`.
    pub fn translate(u: Point) -> Self {
        Self {
            translation: u,
            ..Self::identity()
        }
    }

    /// Rotation by `beta` about the origin.
    pub fn rotate(beta: f64) -> Self {
        Self {
            rotation: normalize_angle(beta),
            ..Self::identity()
        }
    }

    /// Reflection across the x-axis followed by rotation by `beta`, so
    /// that the point at angle `α` goes to angle `β − α`.
    pub fn reflect_rotate(beta: f64) -> Self {
        Self {
            rotation: normalize_angle(beta),
            reflect: true,
            ..Self::identity()
        }
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn rotation(&self) -> f64 {
        self.rotation
    }

    pub fn reflect(&self) -> bool {
        self.reflect
    }

    pub fn translation(&self) -> Point {
        self.translation
    }

    fn apply_linear(&self, p: Point) -> Point {
        let p = if self.reflect { Point::new(p.x, -p.y) } else { p };
        let (s, c) = self.rotation.sin_cos();
        Point::new(
            self.scale * (c * p.x - s * p.y),
            self.scale * (s * p.x + c * p.y),
        )
    }

    pub fn apply(&self, p: Point) -> Point {
        self.apply_linear(p) + self.translation
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn compose(&self, inner: &ScaledIsometry) -> ScaledIsometry {
        // R_a F_a R_b F_b = R_{a ± b} F_a F_b, with "−" when F_a reflects
        let rotation = if self.reflect {
            self.rotation - inner.rotation
        } else {
            self.rotation + inner.rotation
        };
        ScaledIsometry {
            scale: self.scale * inner.scale,
            rotation: normalize_angle(rotation),
            reflect: self.reflect ^ inner.reflect,
            translation: self.apply(inner.translation),
        }
    }

    pub fn invert(&self) -> ScaledIsometry {
        let rotation = if self.reflect {
            self.rotation
        } else {
            -self.rotation
        };
        let linear = ScaledIsometry {
            scale: 1.0 / self.scale,
            rotation: normalize_angle(rotation),
            reflect: self.reflect,
            translation: Point::ORIGIN,
        };
        ScaledIsometry {
            translation: -linear.apply_linear(self.translation),
            ..linear
        }
    }
}

/// A fitted similarity together with its worst residual over the input.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimilarityFit {
    pub map: ScaledIsometry,
    /// Maximum of `|map(source) − target|` over all pairs.
    pub residual: f64,
}

/// Max residual of `map` over a correspondence.
pub fn max_residual(map: &ScaledIsometry, pairs: &[(Point, Point)]) -> f64 {
    pairs
        .iter()
        .map(|&(s, t)| map.apply(s).dist(t))
        .fold(0.0, f64::max)
}

/// Similarity sending `s1 ↦ t1`, `s2 ↦ t2`. In complex notation the map is
/// `z ↦ a·z + b` (or `a·z̄ + b` when reflecting).
fn similarity_from_two(
    (s1, t1): (Point, Point),
    (s2, t2): (Point, Point),
    reflect: bool,
    tol: &Tolerance,
) -> Result<ScaledIsometry> {
    let src = s2 - s1;
    let src = if reflect { Point::new(src.x, -src.y) } else { src };
    let dst = t2 - t1;
    let denom = src.dot(src);
    // a = dst / src as complex numbers
    let a = Point::new(
        (dst.x * src.x + dst.y * src.y) / denom,
        (dst.y * src.x - dst.x * src.y) / denom,
    );
    let scale = a.norm();
    if scale * src.norm() <= tol.eps_metric {
        return Err(Error::DegenerateCorrespondence);
    }
    let linear = ScaledIsometry::new(scale, a.y.atan2(a.x), reflect, Point::ORIGIN)?;
    let translation = t1 - linear.apply(s1);
    ScaledIsometry::new(scale, a.y.atan2(a.x), reflect, translation)
}

/// Fit the similarity determined by the first pair and the next pair whose
/// source point is distinct from it, and report the worst residual over the
/// whole correspondence.
///
/// With `allow_reflection`, both orientations are fitted and the one with
/// the smaller residual wins (ties go to the orientation-preserving map).
pub fn fit_similarity(
    pairs: &[(Point, Point)],
    allow_reflection: bool,
    tol: &Tolerance,
) -> Result<SimilarityFit> {
    let first = *pairs.first().ok_or(Error::DegenerateCorrespondence)?;
    let second = *pairs
        .iter()
        .find(|(s, _)| s.dist(first.0) > tol.eps_metric)
        .ok_or(Error::DegenerateCorrespondence)?;
    fit_from_anchors(first, second, pairs, allow_reflection, tol)
}

pub(crate) fn fit_from_anchors(
    first: (Point, Point),
    second: (Point, Point),
    pairs: &[(Point, Point)],
    allow_reflection: bool,
    tol: &Tolerance,
) -> Result<SimilarityFit> {
    let direct = similarity_from_two(first, second, false, tol)?;
    let mut best = SimilarityFit {
        map: direct,
        residual: max_residual(&direct, pairs),
    };
    if allow_reflection {
        let mirrored = similarity_from_two(first, second, true, tol)?;
        let residual = max_residual(&mirrored, pairs);
        if residual < best.residual {
            best = SimilarityFit {
                map: mirrored,
                residual,
            };
        }
    }
    Ok(best)
}
