//! Reproductions of the worked examples as structured, serializable
//! reports. Closed-form quantities are recomputed by independent geometric
//! constructions and both are reported.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::circles::{
    circle_intersections, classify, interval_card, interval_points, is_extreme, line_trace_pair,
    m_invariant_of_ratio, tangent_chord_step, CaseLabel, Circle, CircleUnion, ConcentricPair,
    M_invariant_of_ratio, NestedCircles, NonConcentricPair, Orientation,
};
use crate::config::{FiniteConfig, PointId};
use crate::error::{Error, Result};
use crate::geom::{angular_distance, normalize_angle, Point, Tolerance};
use crate::iso::{
    find_isomorphism, verify_map, Certificate, IsoKind, Outcome, SearchMode, Violation,
    DEFAULT_NODE_LIMIT,
};

/// A named boolean check carried by a report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

impl Check {
    fn new(name: &str, passed: bool) -> Self {
        Self {
            name: name.to_owned(),
            passed,
        }
    }
}

fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}

/// Round every float in a JSON tree to `digits` significant digits.
/// Integers are left alone.
pub fn round_significant(value: &mut Value, digits: i32) {
    match value {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("f64");
            if let Some(r) = serde_json::Number::from_f64(round_f64(x, digits)) {
                *n = r;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(|v| round_significant(v, digits)),
        Value::Object(map) => map.values_mut().for_each(|v| round_significant(v, digits)),
        _ => {}
    }
}

fn round_f64(x: f64, digits: i32) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let magnitude = x.abs().log10().floor() as i32;
    let shift = digits - 1 - magnitude;
    let rounded = if shift >= 0 {
        let f = 10f64.powi(shift);
        (x * f).round() / f
    } else {
        let f = 10f64.powi(-shift);
        (x / f).round() * f
    };
    // the parse round trip picks the shortest representation
    format!("{rounded:.*e}", (digits - 1) as usize)
        .parse()
        .unwrap_or(rounded)
}

/// Serialize a report with floats rounded to 12 significant digits.
pub fn to_golden_json<T: Serialize>(report: &T) -> Result<Value> {
    let mut v = serde_json::to_value(report)
        .map_err(|e| Error::InvariantViolation(format!("report serialization failed: {e}")))?;
    round_significant(&mut v, 12);
    Ok(v)
}

// ---------------------------------------------------------------------------
// concentric pairs with ratios below 1/2 and at least √½

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Example25Report {
    pub rho: f64,
    pub tau: f64,
    pub m_s: u64,
    pub m_r: u64,
    #[serde(rename = "M_s")]
    pub big_m_s: f64,
    #[serde(rename = "M_r")]
    pub big_m_r: f64,
    pub isomorphic: bool,
    pub checks: Vec<Check>,
}

impl Example25Report {
    pub fn passed(&self) -> bool {
        all_passed(&self.checks)
    }
}

/// `S = S(0, ρ) ∪ S(0, 1)` with `ρ < 1/2` against `R = S(0, τ) ∪ S(0, 1)`
/// with `√½ ≤ τ < 1`: `m(S) = 3`, `m(R) ≥ 4`, so they are not isomorphic.
pub fn example_2_5(rho: f64, tau: f64) -> Result<Example25Report> {
    if !(rho > 0.0 && rho < 0.5) {
        return Err(Error::OutOfRange(format!("rho = {rho} must lie in (0, 1/2)")));
    }
    if !(tau >= 0.5f64.sqrt() && tau < 1.0) {
        return Err(Error::OutOfRange(format!("tau = {tau} must lie in [√½, 1)")));
    }
    let s = ConcentricPair::new(Point::ORIGIN, rho, 1.0)?;
    let r = ConcentricPair::new(Point::ORIGIN, tau, 1.0)?;
    let m_s = m_invariant_of_ratio(s.radius_ratio());
    let m_r = m_invariant_of_ratio(r.radius_ratio());
    let checks = vec![
        Check::new("arc length of S exceeds 2π/3", 2.0 * s.half_arc() > TAU / 3.0),
        Check::new("arc length of R at most π/2", 2.0 * r.half_arc() <= PI / 2.0 + 1e-15),
        Check::new("m(S) = 3", m_s == 3),
        Check::new("m(R) >= 4", m_r >= 4),
    ];
    Ok(Example25Report {
        rho,
        tau,
        m_s,
        m_r,
        big_m_s: M_invariant_of_ratio(s.radius_ratio()),
        big_m_r: M_invariant_of_ratio(r.radius_ratio()),
        isomorphic: m_s == m_r,
        checks,
    })
}

// ---------------------------------------------------------------------------
// five-point sets that are collinearity but not betweenness isomorphic

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExBc1Report {
    pub a: Vec<Point>,
    pub b: Vec<Point>,
    /// The stated map as an image table on ids.
    pub f: Vec<PointId>,
    pub f_collinearity_violation: Option<Violation>,
    pub f_betweenness_violation: Option<Violation>,
    pub collinearity_search: Outcome,
    pub betweenness_search: Outcome,
    pub extreme_count_a: usize,
    pub extreme_count_b: usize,
    pub checks: Vec<Check>,
}

impl ExBc1Report {
    pub fn passed(&self) -> bool {
        all_passed(&self.checks)
    }
}

pub fn exbc1_sets() -> (Vec<Point>, Vec<Point>) {
    let p = Point::new;
    (
        vec![p(-1., 0.), p(0., -1.), p(0., 0.), p(0., 1.), p(1., 0.)],
        vec![p(0., -1.), p(0., 0.), p(0., 1.), p(1., 0.), p(2., 0.)],
    )
}

/// The map sends `(−1, 0)` to `(2, 0)` and fixes the other points.
pub fn exbc1_map(a: &[Point], b: &[Point]) -> Vec<PointId> {
    a.iter()
        .map(|&p| {
            let img = if p == Point::new(-1., 0.) {
                Point::new(2., 0.)
            } else {
                p
            };
            PointId(b.iter().position(|&q| q == img).expect("image in B"))
        })
        .collect()
}

pub fn exbc1() -> Result<ExBc1Report> {
    let (a_pts, b_pts) = exbc1_sets();
    exbc1_with(a_pts, b_pts)
}

/// [`exbc1`] on caller-supplied orderings of the two sets.
pub fn exbc1_with(a_pts: Vec<Point>, b_pts: Vec<Point>) -> Result<ExBc1Report> {
    let tol = Tolerance::default();
    let f = exbc1_map(&a_pts, &b_pts);
    let a = FiniteConfig::new(a_pts.clone(), tol)?;
    let b = FiniteConfig::new(b_pts.clone(), tol)?;
    let col_v = verify_map(&a, &b, &f, IsoKind::Collinearity)?;
    let bet_v = verify_map(&a, &b, &f, IsoKind::Betweenness)?;
    let col = find_isomorphism(&a, &b, IsoKind::Collinearity, SearchMode::First, DEFAULT_NODE_LIMIT);
    let bet = find_isomorphism(&a, &b, IsoKind::Betweenness, SearchMode::First, DEFAULT_NODE_LIMIT);
    let (ea, eb) = (a.extreme_points().len(), b.extreme_points().len());

    let violation_rechecks = bet_v.is_some_and(|v| {
        let [x, y, z] = v.triple;
        let img = [f[x.0], f[y.0], f[z.0]];
        a.is_between(x, y, z) == v.holds_in_source
            && b.is_between(img[0], img[1], img[2]) == v.holds_in_target
            && v.holds_in_source != v.holds_in_target
    });
    let certificate_rechecks = match &bet.outcome {
        Outcome::Refuted { certificate } => {
            matches!(certificate, Certificate::ExtremeCount { left: 4, right: 3 })
                && certificate.recheck(&a, &b, IsoKind::Betweenness)
        }
        _ => false,
    };
    let checks = vec![
        Check::new("f is a collinearity isomorphism", col_v.is_none()),
        Check::new("f is not a betweenness isomorphism", violation_rechecks),
        Check::new(
            "collinearity search finds an isomorphism",
            matches!(col.outcome, Outcome::Found { .. }),
        ),
        Check::new("betweenness search refuted by extreme counts", certificate_rechecks),
        Check::new("extreme counts are 4 and 3", (ea, eb) == (4, 3)),
    ];
    Ok(ExBc1Report {
        a: a_pts,
        b: b_pts,
        f,
        f_collinearity_violation: col_v,
        f_betweenness_violation: bet_v,
        collinearity_search: col.outcome,
        betweenness_search: bet.outcome,
        extreme_count_a: ea,
        extreme_count_b: eb,
        checks,
    })
}

// ---------------------------------------------------------------------------
// tangent triangle between a unit circle and a nested circle

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Example61Verdict {
    NonIsomorphic,
    DegenerateConcentric,
}

/// Closed-form values next to their geometric reconstruction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Example61Report {
    pub y: f64,
    pub y0: f64,
    pub r: f64,
    #[serde(rename = "B")]
    pub b: Point,
    #[serde(rename = "Dy")]
    pub dy: f64,
    #[serde(rename = "My")]
    pub my: f64,
    pub gap_closed_form: f64,
    pub gap_direct: f64,
    pub poncelet_defect: f64,
    #[serde(rename = "card_DDprime")]
    pub card_dd_prime: usize,
    pub card_ddprime: usize,
    pub verdict: Example61Verdict,
    pub direct: Example61Direct,
    /// Largest disagreement between a closed form and its reconstruction.
    pub max_closed_form_error: f64,
}

/// Quantities obtained by construction rather than from closed forms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Example61Direct {
    pub a: Point,
    pub a_prime: Point,
    pub e: Point,
    /// Incenter and inradius of the triangle `A A′ E`.
    pub inner_center: Point,
    pub inner_radius: f64,
    pub b: Point,
    pub b_prime: Point,
    pub d: Point,
    pub d_prime: Point,
    pub m: Point,
}

pub mod closed_form {
    //! The example's closed forms in the parameter `y`.

    use crate::geom::Point;
    use std::f64::consts::SQRT_2;

    fn s(y: f64) -> f64 {
        (2.0 - 2.0 * y).sqrt()
    }

    pub fn y0(y: f64) -> f64 {
        1.0 - s(y)
    }

    pub fn r(y: f64) -> f64 {
        y + s(y) - 1.0
    }

    pub fn b(y: f64) -> Point {
        let x = ((y - 1.0) * (1.0 + y).sqrt() + (2.0 - 2.0 * y * y).sqrt()) / SQRT_2;
        let v = (SQRT_2 * y - (1.0 + y) * (1.0 - y).sqrt()) / SQRT_2;
        Point::new(x, v)
    }

    pub fn dy(y: f64) -> f64 {
        (2.0 * y * y + (2.0 + 4.0 * y) * s(y) - 4.0 * y - 1.0) / (2.0 * s(y) - 5.0)
    }

    pub fn my(y: f64) -> f64 {
        2.0 - y - 2.0 * s(y)
    }

    /// `M_y − D_y` in factored form.
    pub fn gap(y: f64) -> f64 {
        let t = (1.0 - y).sqrt();
        2.0 * (t - SQRT_2).powi(2) * (t - SQRT_2 / 2.0).powi(2) / (5.0 - 2.0 * s(y))
    }
}

fn incircle(a: Point, b: Point, c: Point) -> (Point, f64) {
    let (la, lb, lc) = (b.dist(c), a.dist(c), a.dist(b));
    let p = la + lb + lc;
    let center = (1.0 / p) * (la * a + lb * b + lc * c);
    let area2 = (b - a).cross(c - a).abs();
    (center, area2 / p)
}

fn foot(center: Point, p: Point, q: Point) -> Point {
    let d = q - p;
    p + ((center - p).dot(d) / d.dot(d)) * d
}

/// Second intersection of the line from `p` (on the circle) through `q`.
fn second_hit(circle: &Circle, p: Point, q: Point, tol: &Tolerance) -> Result<Point> {
    circle
        .line_intersections(p, q, tol)
        .into_iter()
        .max_by(|a, b| a.0.total_cmp(&b.0))
        .map(|(_, pt)| pt)
        .ok_or_else(|| Error::InvariantViolation("line misses the outer circle".into()))
}

/// Largest angular defect of three tangent-chord steps over `starts`
/// equally spaced start angles.
pub fn poncelet_defect(nested: &NestedCircles, starts: usize) -> f64 {
    (0..starts)
        .map(|k| {
            let theta0 = TAU * k as f64 / starts as f64;
            let mut theta = theta0;
            for _ in 0..3 {
                theta = tangent_chord_step(nested, theta, Orientation::Ccw).0;
            }
            angular_distance(theta, theta0)
        })
        .fold(0.0, f64::max)
}

/// `card (d, d′)_S` on `S(0, 1/2) ∪ S(0, 1)`, where `a a′ e` is the
/// equilateral tangent triangle at angles 30°, 150°, 270° and `d`, `d′`
/// continue the lines from `a′`, `a` through the tangency points `b`, `b′`.
pub fn concentric_dd_card(tol: &Tolerance) -> Result<usize> {
    let s = ConcentricPair::new(Point::ORIGIN, 0.5, 1.0)?;
    let deg = PI / 180.0;
    let (a, a_prime, e) = (
        s.outer_point(30.0 * deg),
        s.outer_point(150.0 * deg),
        s.outer_point(270.0 * deg),
    );
    let b = foot(s.center(), a, e);
    let b_prime = foot(s.center(), a_prime, e);
    let d = second_hit(&s.outer(), a_prime, b, tol)?;
    let d_prime = second_hit(&s.outer(), a, b_prime, tol)?;
    interval_card(&s, d, d_prime, tol)
}

/// The unit circle with the incircle of `A A′ E`, `A = (√(1−y²), y)`,
/// `A′` its mirror image and `E = (0, −1)`.
pub fn example_6_1_set(y: f64, tol: &Tolerance) -> Result<NestedCircles> {
    check_y(y)?;
    let a = Point::new((1.0 - y * y).sqrt(), y);
    let (center, radius) = incircle(a, Point::new(-a.x, y), Point::new(0.0, -1.0));
    NestedCircles::new(Circle::new(Point::ORIGIN, 1.0), Circle::new(center, radius), tol)
}

fn check_y(y: f64) -> Result<()> {
    if y > -1.0 && y < 1.0 {
        Ok(())
    } else {
        Err(Error::OutOfRange(format!("y = {y} must lie in (−1, 1)")))
    }
}

pub fn example_6_1(y: f64) -> Result<Example61Report> {
    check_y(y)?;
    let tol = Tolerance::default();
    let outer = Circle::new(Point::ORIGIN, 1.0);
    let a = Point::new((1.0 - y * y).sqrt(), y);
    let a_prime = Point::new(-a.x, y);
    let e = Point::new(0.0, -1.0);
    let (center, radius) = incircle(a, a_prime, e);
    let nested = NestedCircles::new(outer, Circle::new(center, radius), &tol)?;
    let b = foot(center, a, e);
    let b_prime = foot(center, a_prime, e);
    let d = second_hit(&outer, a_prime, b, &tol)?;
    let d_prime = second_hit(&outer, a, b_prime, &tol)?;
    let m = Point::new(center.x, center.y - radius);
    let direct = Example61Direct {
        a,
        a_prime,
        e,
        inner_center: center,
        inner_radius: radius,
        b,
        b_prime,
        d,
        d_prime,
        m,
    };

    let (y0, r) = (closed_form::y0(y), closed_form::r(y));
    let (b_cf, dy, my) = (closed_form::b(y), closed_form::dy(y), closed_form::my(y));
    let gap_closed_form = closed_form::gap(y);
    let gap_direct = m.y - d.y;
    let max_closed_form_error = [
        (y0 - center.y).abs(),
        center.x.abs(),
        (r - radius).abs(),
        b_cf.dist(b),
        (b.dist(center) - radius).abs(),
        (dy - d.y).abs(),
        (dy - d_prime.y).abs(),
        (my - m.y).abs(),
        (my - dy - gap_closed_form).abs(),
        (gap_closed_form - gap_direct).abs(),
    ]
    .into_iter()
    .fold(0.0, f64::max);

    let card_dd_prime = interval_card(&nested, d, d_prime, &tol)?;
    let card_ddprime = concentric_dd_card(&tol)?;
    let verdict = if (y - 0.5).abs() <= tol.eps_metric {
        Example61Verdict::DegenerateConcentric
    } else if card_dd_prime != card_ddprime {
        Example61Verdict::NonIsomorphic
    } else {
        return Err(Error::InvariantViolation(format!(
            "card (D, D′) = card (d, d′) = {card_dd_prime} at y = {y}"
        )));
    };
    Ok(Example61Report {
        y,
        y0,
        r,
        b: b_cf,
        dy,
        my,
        gap_closed_form,
        gap_direct,
        poncelet_defect: poncelet_defect(&nested, 32),
        card_dd_prime,
        card_ddprime,
        verdict,
        direct,
        max_closed_form_error,
    })
}

// ---------------------------------------------------------------------------
// the same family seen from the concentric side

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Example62Report {
    pub y: f64,
    pub inner_center: Point,
    pub inner_radius: f64,
    /// `(A, E)_R`, `(A′, E)_R` and `card (A, A′)_R`.
    pub interval_ae: Vec<Point>,
    pub interval_a_prime_e: Vec<Point>,
    pub card_aa_prime: usize,
    /// The only ratio `ρ/ρ′` for which a concentric pair carries a closed
    /// tangent triangle, found by root finding on the tangent-chord map.
    pub forced_ratio: f64,
    #[serde(rename = "forced_M")]
    pub forced_big_m: f64,
    pub verdict: Example61Verdict,
    pub checks: Vec<Check>,
}

impl Example62Report {
    pub fn passed(&self) -> bool {
        all_passed(&self.checks)
    }
}

/// Angle swept by three counterclockwise tangent-chord steps, minus one turn.
fn triangle_excess(ratio: f64) -> Result<f64> {
    let s = ConcentricPair::new(Point::ORIGIN, ratio, 1.0)?;
    let nested = NestedCircles::from(s);
    let mut theta = 0.0;
    let mut swept = 0.0;
    for _ in 0..3 {
        let next = tangent_chord_step(&nested, theta, Orientation::Ccw).0;
        swept += normalize_angle(next - theta);
        theta = next;
    }
    Ok(swept - TAU)
}

/// Bisection for the ratio at which the tangent triangle closes after one
/// turn.
pub fn forced_concentric_ratio() -> Result<f64> {
    let (mut lo, mut hi) = (1e-6, 1.0 - 1e-6);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if triangle_excess(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= f64::EPSILON {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

pub fn example_6_2(y: f64) -> Result<Example62Report> {
    check_y(y)?;
    if (y - 0.5).abs() <= Tolerance::default().eps_metric {
        return Err(Error::OutOfRange("y = 1/2 gives a concentric pair".into()));
    }
    let tol = Tolerance::default();
    let center = Point::new(0.0, closed_form::y0(y));
    let radius = closed_form::r(y);
    let nested = NestedCircles::new(Circle::new(Point::ORIGIN, 1.0), Circle::new(center, radius), &tol)?;
    let a = Point::new((1.0 - y * y).sqrt(), y);
    let a_prime = Point::new(-a.x, y);
    let e = Point::new(0.0, -1.0);
    let interval_ae = interval_points(&nested, a, e, &tol)?;
    let interval_a_prime_e = interval_points(&nested, a_prime, e, &tol)?;
    let card_aa_prime = interval_card(&nested, a, a_prime, &tol)?;
    let touches = |pts: &[Point]| {
        pts.len() == 1 && (pts[0].dist(center) - radius).abs() <= tol.eps_metric
    };
    let forced_ratio = forced_concentric_ratio()?;
    let verdict = example_6_1(y)?.verdict;
    let step_from_a = tangent_chord_step(&nested, nested.outer().angle_of(a), Orientation::Ccw).0;
    let checks = vec![
        Check::new("(A, E) is the single tangency point B", touches(&interval_ae)),
        Check::new("(A′, E) is the single tangency point B′", touches(&interval_a_prime_e)),
        Check::new("card (A, A′) = 1", card_aa_prime == 1),
        Check::new(
            "tangent-chord step maps A to A′",
            angular_distance(step_from_a, nested.outer().angle_of(a_prime)) <= 1e-9,
        ),
        Check::new("forced ratio is 1/2", (forced_ratio - 0.5).abs() <= 1e-12),
        Check::new("non-isomorphic", verdict == Example61Verdict::NonIsomorphic),
    ];
    Ok(Example62Report {
        y,
        inner_center: center,
        inner_radius: radius,
        interval_ae,
        interval_a_prime_e,
        card_aa_prime,
        forced_ratio,
        forced_big_m: M_invariant_of_ratio(forced_ratio),
        verdict,
        checks,
    })
}

// ---------------------------------------------------------------------------
// interval signatures separating the five two-circle cases

pub const SIGNATURE_SAMPLES: usize = 64;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignatureReport {
    pub pair: NonConcentricPair,
    pub classified: CaseLabel,
    /// Case read off from the signatures alone.
    pub signature: CaseLabel,
    pub agrees: bool,
    pub samples_per_circle: usize,
    pub extreme_samples: usize,
    pub non_extreme_samples: usize,
    /// Extreme `x` with `card (x, y) = 1` for every other extreme `y`.
    pub tangency_witness: Option<Point>,
    /// Whether every two non-extreme `u, w` equal `(x, y)` for some
    /// extreme `x, y`.
    pub chords_enclosed: bool,
    /// Points `w` every line through which meets the set in at most three
    /// points: the common points of the two circles.
    pub three_point_witnesses: Vec<Point>,
    /// Non-extreme `w` with `(w, x)` empty for every extreme `x`.
    pub empty_interval_witness: Option<Point>,
    /// Whether `card (w, x) <= 1` for all non-extreme `w` and extreme `x`.
    pub intervals_at_most_one: bool,
}

struct Sampled {
    point: Point,
    extreme: bool,
}

fn signature_samples(pair: &NonConcentricPair, tol: &Tolerance) -> Result<Vec<Sampled>> {
    let mut pts: Vec<Point> = Vec::new();
    let mut push = |p: Point| {
        if pts.iter().all(|q| q.dist(p) > 1e3 * tol.eps_metric) {
            pts.push(p);
        }
    };
    for p in circle_intersections(pair, tol) {
        push(p);
    }
    for c in pair.circles() {
        for k in 0..SIGNATURE_SAMPLES {
            push(c.point_at(TAU * k as f64 / SIGNATURE_SAMPLES as f64));
        }
    }
    pts.into_iter()
        .map(|point| {
            Ok(Sampled {
                point,
                extreme: is_extreme(pair, point, tol)?,
            })
        })
        .collect()
}

/// Some extreme `x` with `card (x, y) = 1` for every other extreme `y`.
fn signature_b(pair: &NonConcentricPair, ext: &[Point], tol: &Tolerance) -> Result<Option<Point>> {
    for &x in ext {
        let mut ok = true;
        for &y in ext {
            if y.dist(x) > 1e3 * tol.eps_metric && interval_card(pair, x, y, tol)? != 1 {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

/// Every two non-extreme `u, w` are exactly `(x, y)` for extreme `x, y`.
fn signature_a(
    pair: &NonConcentricPair,
    samples: &[Sampled],
    inner: &[Point],
    tol: &Tolerance,
) -> Result<bool> {
    let extreme_at = |p: Point| -> Result<bool> {
        match samples.iter().find(|s| s.point.dist(p) <= 1e3 * tol.eps_metric) {
            Some(s) => Ok(s.extreme),
            None => is_extreme(pair, p, tol),
        }
    };
    for (i, &u) in inner.iter().enumerate() {
        for &w in &inner[i + 1..] {
            let trace = line_trace_pair(pair, u, w, tol)?;
            let mut found = false;
            'outer: for (j, &x) in trace.iter().enumerate() {
                for &y in &trace[j + 1..] {
                    if !(extreme_at(x)? && extreme_at(y)?) {
                        continue;
                    }
                    let between = interval_points(pair, x, y, tol)?;
                    let is_uw = between.len() == 2
                        && between.iter().any(|p| p.dist(u) <= 1e3 * tol.eps_metric)
                        && between.iter().any(|p| p.dist(w) <= 1e3 * tol.eps_metric);
                    if is_uw {
                        found = true;
                        break 'outer;
                    }
                }
            }
            if !found {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Some non-extreme `w` with `(w, x)` empty for every extreme `x`.
fn signature_d(
    pair: &NonConcentricPair,
    ext: &[Point],
    inner: &[Point],
    tol: &Tolerance,
) -> Result<Option<Point>> {
    for &w in inner {
        let mut ok = true;
        for &x in ext {
            if interval_card(pair, w, x, tol)? != 0 {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// `card (w, x) ≤ 1` for all non-extreme `w` and extreme `x`.
fn signature_e(pair: &NonConcentricPair, ext: &[Point], inner: &[Point], tol: &Tolerance) -> Result<bool> {
    for &w in inner {
        for &x in ext {
            if interval_card(pair, w, x, tol)? > 1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Points `w` such that no line through `w` and another sample meets the
/// set in four points.
fn three_point_witnesses(
    pair: &NonConcentricPair,
    samples: &[Sampled],
    tol: &Tolerance,
) -> Result<Vec<Point>> {
    let mut out = Vec::new();
    for w in samples {
        let mut ok = true;
        for q in samples {
            if q.point.dist(w.point) > 1e3 * tol.eps_metric
                && line_trace_pair(pair, w.point, q.point, tol)?.len() > 3
            {
                ok = false;
                break;
            }
        }
        if ok {
            out.push(w.point);
        }
    }
    Ok(out)
}

/// Decide the case of a pair from betweenness data on sample points (64 per
/// circle plus the common points) and compare with [`classify`].
///
/// Case (b) has an extreme point `x` with `card (x, y) = 1` for all other
/// extreme `y`; in case (a) any two non-extreme points are exactly the
/// open interval between two extreme ones. The remaining cases are told
/// apart by the number of points all of whose lines carry at most three
/// points of the set: two in case (c), one in (d), none in (e).
pub fn remark_6_1_signatures(pair: &NonConcentricPair) -> Result<SignatureReport> {
    let tol = Tolerance::default();
    let samples = signature_samples(pair, &tol)?;
    let ext: Vec<Point> = samples.iter().filter(|s| s.extreme).map(|s| s.point).collect();
    let inner: Vec<Point> = samples.iter().filter(|s| !s.extreme).map(|s| s.point).collect();

    let tangency_witness = signature_b(pair, &ext, &tol)?;
    let chords_enclosed = signature_a(pair, &samples, &inner, &tol)?;
    let witnesses = three_point_witnesses(pair, &samples, &tol)?;
    let signature = if tangency_witness.is_some() {
        CaseLabel::B
    } else if chords_enclosed {
        CaseLabel::A
    } else {
        match witnesses.len() {
            0 => CaseLabel::E,
            1 => CaseLabel::D,
            _ => CaseLabel::C,
        }
    };
    let classified = classify(pair, &tol);
    Ok(SignatureReport {
        pair: *pair,
        classified,
        signature,
        agrees: classified == signature,
        samples_per_circle: SIGNATURE_SAMPLES,
        extreme_samples: ext.len(),
        non_extreme_samples: inner.len(),
        tangency_witness,
        chords_enclosed,
        three_point_witnesses: witnesses,
        empty_interval_witness: signature_d(pair, &ext, &inner, &tol)?,
        intervals_at_most_one: signature_e(pair, &ext, &inner, &tol)?,
    })
}
