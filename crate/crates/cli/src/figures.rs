//! CSV data behind the figures, recomputed from the library.
//!
//! Every file has the columns `series,label,x,y`.

use std::f64::consts::{PI, TAU};
use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use betweenness_core::circles::{
    circle_intersections, classify, identify_arc_from_inner, is_extreme, CaseLabel, Circle,
    ConcentricPair, NonConcentricPair, DEFAULT_SWEEP_SAMPLES,
};
use betweenness_core::reports::example_6_1;
use betweenness_core::{Error, Point, Tolerance};

use crate::response::format_float;
use crate::FigureName;

const CIRCLE_SAMPLES: usize = 144;

struct Row {
    series: String,
    label: String,
    p: Point,
}

#[derive(Default)]
struct Rows(Vec<Row>);

impl Rows {
    fn point(&mut self, series: &str, label: &str, p: Point) {
        self.0.push(Row {
            series: series.to_owned(),
            label: label.to_owned(),
            p,
        });
    }

    fn circle(&mut self, series: &str, c: Circle) {
        for j in 0..CIRCLE_SAMPLES {
            self.point(series, &j.to_string(), c.point_at(TAU * j as f64 / CIRCLE_SAMPLES as f64));
        }
    }

    /// Samples of the counterclockwise arc of `c` from `start` to `end`.
    fn arc(&mut self, series: &str, c: Circle, start: f64, end: f64) {
        let extent = (end - start).rem_euclid(TAU);
        let steps = 48;
        for j in 0..=steps {
            self.point(series, &j.to_string(), c.point_at(start + extent * j as f64 / steps as f64));
        }
    }
}

pub fn file_stem(name: FigureName) -> &'static str {
    match name {
        FigureName::Fig1Arc => "fig1_arc",
        FigureName::Fig2Density => "fig2_density",
        FigureName::Fig3Cases => "fig3_cases",
        FigureName::Fig4Triangles => "fig4_triangles",
    }
}

/// Write the figure's CSV to `output` (or stdout) and return the row count.
pub fn render(name: FigureName, y: f64, tol: &Tolerance, full: bool, output: Option<&Path>) -> Result<usize> {
    let rows = match name {
        FigureName::Fig1Arc => fig1_arc(tol)?,
        FigureName::Fig2Density => fig2_density(tol)?,
        FigureName::Fig3Cases => fig3_cases(tol)?,
        FigureName::Fig4Triangles => fig4_triangles(y)?,
    };
    let sink: Box<dyn Write> = match output {
        Some(path) => Box::new(
            std::fs::File::create(path).with_context(|| format!("creating {}", path.display()))?,
        ),
        None => Box::new(std::io::stdout().lock()),
    };
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(["series", "label", "x", "y"])?;
    for r in &rows.0 {
        w.write_record([
            r.series.as_str(),
            r.label.as_str(),
            &format_float(r.p.x, full),
            &format_float(r.p.y, full),
        ])?;
    }
    w.flush()?;
    Ok(rows.0.len())
}

/// The arc `A_S(α)` with its endpoints and the inner point that determines
/// it, for the pair drawn with center (−1, 0) and radii 3.210, 5.656.
fn fig1_arc(tol: &Tolerance) -> Result<Rows> {
    let pair = ConcentricPair::new(Point::new(-1.0, 0.0), 3.210, 5.656)?;
    let alpha = 41.08f64.to_radians();
    let id = identify_arc_from_inner(&pair, pair.inner_point(alpha), DEFAULT_SWEEP_SAMPLES, tol)?;
    let (lo, hi) = id.arc.endpoint_angles();
    let mut rows = Rows::default();
    rows.point("center", "c", pair.center());
    rows.circle("inner_circle", pair.inner());
    rows.circle("outer_circle", pair.outer());
    rows.arc("arc", pair.outer(), lo, hi);
    rows.point("points", "u", pair.inner_point(alpha));
    rows.point("points", "v", id.v);
    rows.point("points", "w", id.w);
    Ok(rows)
}

/// The line through `P(α+π)` and `r·P(α+γ)` meets the arc `(α, α+γ)` of the
/// unit circle at `P(α+ω)` with `0 < ω < γ`.
fn fig2_density(tol: &Tolerance) -> Result<Rows> {
    let (r, alpha, gamma) = (0.5, 2.9253, 0.9744);
    let unit = Circle::new(Point::ORIGIN, 1.0);
    let far = Point::polar(alpha + PI);
    let inner = r * Point::polar(alpha + gamma);
    let hit = unit
        .line_intersections(far, inner, tol)
        .into_iter()
        .map(|(_, p)| p)
        .find(|p| p.dist(far) > tol.eps_metric)
        .ok_or_else(|| Error::InvariantViolation("line misses the unit circle".into()))?;
    let omega = (hit.angle() - alpha).rem_euclid(TAU);
    if !(omega > 0.0 && omega < gamma) {
        return Err(Error::InvariantViolation(format!("omega = {omega} outside (0, {gamma})")).into());
    }
    let mut rows = Rows::default();
    rows.circle("outer_circle", unit);
    rows.circle("inner_circle", Circle::new(Point::ORIGIN, r));
    rows.arc("arc", unit, alpha, alpha + gamma);
    rows.point("points", "P(alpha)", Point::polar(alpha));
    rows.point("points", "P(alpha+gamma)", Point::polar(alpha + gamma));
    rows.point("points", "rP(alpha+gamma)", inner);
    rows.point("points", "P(alpha+pi)", far);
    rows.point("points", "P(alpha+omega)", hit);
    Ok(rows)
}

/// One pair per case, with each sampled point labeled extreme or not and
/// the common points of the two circles listed separately.
fn fig3_cases(tol: &Tolerance) -> Result<Rows> {
    let o = Point::ORIGIN;
    let cases = [
        (CaseLabel::A, Point::new(0.2, 0.0), 0.5),
        (CaseLabel::B, Point::new(0.5, 0.0), 0.5),
        (CaseLabel::C, Point::new(1.0, 0.0), 0.8),
        (CaseLabel::D, Point::new(1.5, 0.0), 0.5),
        (CaseLabel::E, Point::new(2.5, 0.0), 0.5),
    ];
    let mut rows = Rows::default();
    for (want, c2, r2) in cases {
        let pair = NonConcentricPair::new(o, 1.0, c2, r2, tol)?;
        let got = classify(&pair, tol);
        if got != want {
            return Err(Error::InvariantViolation(format!("pair for case {want} classified as {got}")).into());
        }
        for (k, circle) in [pair.first(), pair.second()].into_iter().enumerate() {
            let series = format!("case_{want}_circle{}", k + 1);
            for j in 0..CIRCLE_SAMPLES {
                let p = circle.point_at(TAU * j as f64 / CIRCLE_SAMPLES as f64);
                let label = if is_extreme(&pair, p, tol)? { "extreme" } else { "non_extreme" };
                rows.point(&series, label, p);
            }
        }
        for p in circle_intersections(&pair, tol) {
            let label = if is_extreme(&pair, p, tol)? { "extreme" } else { "non_extreme" };
            rows.point(&format!("case_{want}_common"), label, p);
        }
    }
    Ok(rows)
}

/// Triangle construction for the concentric pair (apex ordinate 1/2) and
/// for the non-concentric member of the family at ordinate `y`.
fn fig4_triangles(y: f64) -> Result<Rows> {
    let mut rows = Rows::default();
    for (panel, y) in [("concentric", 0.5), ("non_concentric", y)] {
        let rep = example_6_1(y)?;
        let d = &rep.direct;
        rows.circle(&format!("{panel}_outer"), Circle::new(Point::ORIGIN, 1.0));
        rows.circle(&format!("{panel}_inner"), Circle::new(d.inner_center, d.inner_radius));
        let points = [
            ("A", d.a),
            ("A'", d.a_prime),
            ("E", d.e),
            ("B", d.b),
            ("B'", d.b_prime),
            ("D", d.d),
            ("D'", d.d_prime),
            ("M", d.m),
            ("center", d.inner_center),
        ];
        for (label, p) in points {
            rows.point(&format!("{panel}_points"), label, p);
        }
    }
    Ok(rows)
}
