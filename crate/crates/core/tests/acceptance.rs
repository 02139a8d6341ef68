//! Acceptance criteria 1-9. Each criterion prints one PASS/FAIL line; the
//! test fails if any criterion fails or exceeds its time budget.

use std::collections::BTreeSet;
use std::f64::consts::{FRAC_1_SQRT_2, PI, TAU};
use std::time::{Duration, Instant};

use betweenness_core::circles::{
    canonical_isomorphism, classify, construct_cover, cover_lower_bound_ok, decide_isomorphic,
    m_invariant, sample_configuration, verify_cover, CaseLabel, ConcentricPair, CoverCertificate,
    M_invariant, NonConcentricPair,
};
use betweenness_core::geom::{between, fit_similarity};
use betweenness_core::iso::{enumerate_automorphisms, Certificate, IsoKind, Outcome};
use betweenness_core::reports::{example_6_1, example_6_2, exbc1, remark_6_1_signatures, Example61Verdict};
use betweenness_core::{FiniteConfig, IdSet, Point, PointId, Tolerance};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// tolerances and budgets
const M_REL_TOL: f64 = 1e-12;
const COVER_TARGET_SLACK: f64 = 0.05;
const M_ORACLE_MAX_N: u64 = 40;
const ORACLE_EVAL_POINTS: usize = 10_000;
const ISO_ON_CIRCLE_TOL: f64 = 1e-12;
const RATIO_GAP: f64 = 1e-3;
const M_SEPARATION: f64 = 1e-6;
const FIT_RESIDUAL_TOL: f64 = 1e-9;
const GAP_AGREEMENT_TOL: f64 = 1e-9;
const PONCELET_TOL: f64 = 1e-9;
const GAP_AT_ZERO: f64 = 0.0135557;
const GAP_AT_ZERO_TOL: f64 = 1e-6;
const FORCED_RATIO_TOL: f64 = 1e-12;
const BUDGET_1: Duration = Duration::from_secs(1);
const BUDGET_2: Duration = Duration::from_secs(5);
const BUDGET_4: Duration = Duration::from_secs(30);
const BUDGET_7: Duration = Duration::from_secs(10);

type Verdict = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn tol() -> Tolerance {
    Tolerance::default()
}

fn unit_pair(r: f64) -> ConcentricPair {
    ConcentricPair::new(Point::ORIGIN, r, 1.0).unwrap()
}

// ---------------------------------------------------------------- criterion 1

fn criterion_1() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut rejected = 0;
    for q in 3..=8u64 {
        let pair = unit_pair((PI / q as f64).cos());
        let m = M_invariant(&pair);
        ensure((m - q as f64).abs() <= M_REL_TOL * q as f64, || format!("M = {m} for q = {q}"))?;

        let cert = construct_cover(&pair, q as f64 + COVER_TARGET_SLACK, &tol()).map_err(|e| e.to_string())?;
        let got = verify_cover(&pair, &cert, &tol());
        ensure(got >= cert.k, || format!("q = {q}: constructed cover has {got} < {}", cert.k))?;
        ensure(
            cert.n() as f64 / cert.k as f64 <= q as f64 + COVER_TARGET_SLACK,
            || format!("q = {q}: ratio {}/{} above target", cert.n(), cert.k),
        )?;

        for trial in 0..200 {
            let k = rng.gen_range(1..=6u64);
            let max_n = q * k - 1;
            let n = if trial % 4 == 0 { max_n } else { rng.gen_range(1..=max_n) };
            let alphas: Vec<f64> = if trial % 2 == 0 {
                (0..n).map(|i| i as f64 * TAU * k as f64 / n as f64).collect()
            } else {
                (0..n).map(|_| rng.gen_range(0.0..TAU)).collect()
            };
            let c = CoverCertificate { alphas, k };
            let cov = verify_cover(&pair, &c, &tol());
            ensure(!cover_lower_bound_ok(&pair, n, k), || format!("bound accepts {n}/{k} < {q}"))?;
            ensure(cov < k, || format!("{n} arcs claim a {k}-cover for q = {q}"))?;
            rejected += 1;
        }
    }
    Ok(format!("M exact for q=3..8, covers verified, {rejected} sub-ratio certificates rejected"))
}

// ---------------------------------------------------------------- criterion 2

/// Least `n ≤ max_n` for which `n` equally spaced open arcs of half-width
/// `arccos r` cover the circle, checked at all arc endpoints and gap
/// midpoints (at most `ORACLE_EVAL_POINTS` of them).
fn m_grid_oracle(r: f64, max_n: u64) -> Option<u64> {
    let half = r.acos();
    (1..=max_n).find(|&n| {
        let centers: Vec<f64> = (0..n).map(|i| i as f64 * TAU / n as f64).collect();
        let mut pts: Vec<f64> = centers
            .iter()
            .flat_map(|&c| [(c - half).rem_euclid(TAU), (c + half).rem_euclid(TAU)])
            .collect();
        pts.sort_by(f64::total_cmp);
        let mut evals = pts.clone();
        for i in 0..pts.len() {
            let next = if i + 1 < pts.len() { pts[i + 1] } else { pts[0] + TAU };
            evals.push(0.5 * (pts[i] + next));
        }
        assert!(evals.len() <= ORACLE_EVAL_POINTS);
        evals.iter().all(|&t| {
            centers.iter().any(|&c| {
                let d = (t - c).rem_euclid(TAU);
                d.min(TAU - d) < half - 1e-12
            })
        })
    })
}

fn criterion_2() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..20 {
        let r = rng.gen_range(0.05..0.95);
        let m = m_invariant(&unit_pair(r));
        let oracle = m_grid_oracle(r, M_ORACLE_MAX_N);
        ensure(oracle == Some(m), || format!("r = {r}: m = {m}, oracle {oracle:?}"))?;
    }
    for i in 0..50 {
        let r = 0.01 + 0.4899 * i as f64 / 49.0;
        let m = m_invariant(&unit_pair(r));
        ensure(m == 3, || format!("m = {m} for r = {r} < 1/2"))?;
        let r = FRAC_1_SQRT_2 + (0.999 - FRAC_1_SQRT_2) * i as f64 / 49.0;
        let m = m_invariant(&unit_pair(r));
        ensure(m >= 4, || format!("m = {m} for r = {r} >= √½"))?;
    }
    Ok("20 random ratios match the grid oracle; anchors m=3 (r<1/2), m>=4 (r>=√½)".into())
}

// ---------------------------------------------------------------- criterion 3

fn random_pair(rng: &mut ChaCha8Rng, ratio: f64) -> ConcentricPair {
    let c = Point::new(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
    let rho_prime = rng.gen_range(0.2..5.0);
    ConcentricPair::new(c, ratio * rho_prime, rho_prime).unwrap()
}

/// 16 groups of four points: a tangent chord `(v, u, w)` with its point of
/// tangency, and the outer point diametrically opposite `u`.
fn structured_samples(s: &ConcentricPair, rng: &mut ChaCha8Rng) -> (Vec<Point>, Vec<[usize; 3]>) {
    let a = s.half_arc();
    let mut pts = Vec::new();
    let mut triples = Vec::new();
    for g in 0..16 {
        let alpha = rng.gen_range(0.0..TAU);
        pts.extend([
            s.outer_point(alpha - a),
            s.inner_point(alpha),
            s.outer_point(alpha + a),
            s.outer_point(alpha + PI),
        ]);
        triples.push([4 * g, 4 * g + 1, 4 * g + 2]);
    }
    (pts, triples)
}

fn criterion_3() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let t = tol();
    for _ in 0..100 {
        let ratio = rng.gen_range(0.05..0.95);
        let (s, r) = (random_pair(&mut rng, ratio), random_pair(&mut rng, ratio));
        ensure(decide_isomorphic(&s, &r, &t), || "equal ratios not isomorphic".into())?;
        let f = canonical_isomorphism(&s, &r, &t).map_err(|e| e.to_string())?;
        let (pts, structured) = structured_samples(&s, &mut rng);
        for &p in &pts {
            let d = f.apply(p).dist(r.center());
            let off = (d - r.rho()).abs().min((d - r.rho_prime()).abs());
            ensure(off <= ISO_ON_CIRCLE_TOL, || format!("image {off:e} off R"))?;
        }
        let mut holds = 0;
        for i in 0..1000 {
            let [x, y, z] = if i % 2 == 0 {
                structured[rng.gen_range(0..structured.len())]
            } else {
                [0, 0, 0].map(|_| rng.gen_range(0..pts.len()))
            };
            if x == y || y == z || x == z {
                continue;
            }
            let before = between(pts[x], pts[y], pts[z], true, &t);
            let after = between(f.apply(pts[x]), f.apply(pts[y]), f.apply(pts[z]), true, &t);
            ensure(before == after, || format!("betweenness changed on {x},{y},{z}"))?;
            holds += usize::from(before);
        }
        ensure(holds > 0, || "no betweenness triple was sampled".into())?;
    }
    for _ in 0..100 {
        let r1: f64 = rng.gen_range(0.05..0.95);
        let mut r2 = rng.gen_range(0.05..0.95);
        while (r1 - r2).abs() <= RATIO_GAP {
            r2 = rng.gen_range(0.05..0.95);
        }
        let (s, r) = (random_pair(&mut rng, r1), random_pair(&mut rng, r2));
        ensure(!decide_isomorphic(&s, &r, &t), || "unequal ratios isomorphic".into())?;
        let gap = (M_invariant(&s) - M_invariant(&r)).abs();
        ensure(gap > M_SEPARATION, || format!("M gap {gap:e}"))?;
        ensure(canonical_isomorphism(&s, &r, &t).is_err(), || "map built for unequal ratios".into())?;
    }
    Ok("100 equal-ratio couples mapped and betweenness preserved; 100 unequal couples separated".into())
}

// ---------------------------------------------------------------- criterion 4

/// Independent automorphism count: plain backtracking in id order with the
/// betweenness predicate evaluated on coordinates.
fn brute_force_automorphisms(points: &[Point], t: &Tolerance) -> usize {
    fn rel(p: &[Point], x: usize, y: usize, z: usize, t: &Tolerance) -> bool {
        between(p[x], p[y], p[z], true, t)
    }
    fn go(p: &[Point], map: &mut Vec<usize>, used: &mut [bool], t: &Tolerance) -> usize {
        let k = map.len();
        if k == p.len() {
            return 1;
        }
        let mut count = 0;
        for img in 0..p.len() {
            if used[img] {
                continue;
            }
            map.push(img);
            let ok = (0..k).all(|i| {
                (0..k).all(|j| {
                    if i == j {
                        return true;
                    }
                    let (fi, fj) = (map[i], map[j]);
                    rel(p, i, j, k, t) == rel(p, fi, fj, img, t)
                        && rel(p, i, k, j, t) == rel(p, fi, img, fj, t)
                })
            });
            if ok {
                used[img] = true;
                count += go(p, map, used, t);
                used[img] = false;
            }
            map.pop();
        }
        count
    }
    go(points, &mut Vec::new(), &mut vec![false; points.len()], t)
}

/// Connected components of the betweenness incidence (points linked when
/// they share a strict-betweenness triple).
fn incidence_components(cfg: &FiniteConfig) -> Vec<Vec<usize>> {
    let n = cfg.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while parent[r] != r {
            r = parent[r];
        }
        parent[i] = r;
        r
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if x != y && y != z && x != z && cfg.is_between(PointId(x), PointId(y), PointId(z)) {
                    for (a, b) in [(x, y), (y, z)] {
                        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                        parent[ra] = rb;
                    }
                }
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    groups.into_values().collect()
}

fn fit_residual(cfg: &FiniteConfig, map: &[PointId], ids: &[usize]) -> Result<f64, String> {
    let pts = cfg.points();
    let pairs: Vec<(Point, Point)> = ids.iter().map(|&i| (pts[i], pts[map[i].0])).collect();
    fit_similarity(&pairs, true, &tol())
        .map(|f| f.residual)
        .map_err(|e| e.to_string())
}

struct SampledAuts {
    cfg: FiniteConfig,
    betweenness: Vec<Vec<PointId>>,
    collinearity: Vec<Vec<PointId>>,
}

fn sampled_automorphisms(n: usize, p: usize) -> Result<SampledAuts, String> {
    let pair = unit_pair(0.5);
    let (cfg, _) = sample_configuration(&pair, n, p, &tol()).map_err(|e| e.to_string())?;
    let betweenness = enumerate_automorphisms(&cfg, IsoKind::Betweenness).map_err(|e| e.to_string())?;
    let collinearity = enumerate_automorphisms(&cfg, IsoKind::Collinearity).map_err(|e| e.to_string())?;
    Ok(SampledAuts {
        cfg,
        betweenness,
        collinearity,
    })
}

fn criterion_4(six: &SampledAuts, twelve: &SampledAuts) -> Verdict {
    // 12 points: the dihedral group of the hexagon, every element a similarity
    let oracle = brute_force_automorphisms(six.cfg.points(), &tol());
    ensure(oracle == 12, || format!("brute-force oracle counts {oracle}"))?;
    ensure(six.betweenness.len() == oracle, || {
        format!("search found {} automorphisms, oracle {oracle}", six.betweenness.len())
    })?;
    let all: Vec<usize> = (0..six.cfg.len()).collect();
    for map in &six.betweenness {
        let res = fit_residual(&six.cfg, map, &all)?;
        ensure(res < FIT_RESIDUAL_TOL, || format!("N=6 automorphism residual {res:e}"))?;
    }

    // 24 points: two disconnected copies of a 12-point incidence structure
    let comps = incidence_components(&twelve.cfg);
    ensure(comps.len() == 2 && comps.iter().all(|c| c.len() == 12), || {
        format!("N=12 components {:?}", comps.iter().map(Vec::len).collect::<Vec<_>>())
    })?;
    ensure(twelve.betweenness.len() == 2 * 12 * 12, || {
        format!("N=12 has {} automorphisms, expected 288", twelve.betweenness.len())
    })?;
    let all: Vec<usize> = (0..twelve.cfg.len()).collect();
    let mut global = 0;
    for map in &twelve.betweenness {
        for comp in &comps {
            let res = fit_residual(&twelve.cfg, map, comp)?;
            ensure(res < FIT_RESIDUAL_TOL, || format!("N=12 component residual {res:e}"))?;
        }
        global += usize::from(fit_residual(&twelve.cfg, map, &all)? < FIT_RESIDUAL_TOL);
    }
    ensure(global == 24, || format!("{global} global similarities, expected 24"))?;
    Ok(format!(
        "N=6: 12 automorphisms (oracle 12), all similarities; N=12: 288 automorphisms, \
         realized per component, {global} globally"
    ))
}

// ---------------------------------------------------------------- criterion 5

fn criterion_5(six: &SampledAuts, twelve: &SampledAuts) -> Verdict {
    for (name, s) in [("N=6", six), ("N=12", twelve)] {
        let b: BTreeSet<_> = s.betweenness.iter().collect();
        let c: BTreeSet<_> = s.collinearity.iter().collect();
        ensure(b == c, || format!("{name}: {} betweenness vs {} collinearity", b.len(), c.len()))?;
    }
    let report = exbc1().map_err(|e| e.to_string())?;
    ensure(matches!(report.collinearity_search, Outcome::Found { .. }), || {
        "exBC1 collinearity search did not find the map".into()
    })?;
    ensure(
        matches!(
            report.betweenness_search,
            Outcome::Refuted {
                certificate: Certificate::ExtremeCount { left: 4, right: 3 }
            }
        ),
        || format!("exBC1 betweenness outcome {:?}", report.betweenness_search),
    )?;
    ensure(report.passed(), || "exBC1 report checks failed".into())?;
    Ok("collinearity and betweenness automorphisms coincide on both samples; exBC1 separates them".into())
}

// ---------------------------------------------------------------- criterion 6

fn symmetric_config(rng: &mut ChaCha8Rng) -> FiniteConfig {
    let mut pts: BTreeSet<(i32, i32)> = BTreeSet::new();
    let half = rng.gen_range(2..=4);
    while pts.len() < 2 * half {
        let (x, y) = (rng.gen_range(1..=3), rng.gen_range(-3..=3));
        pts.insert((x, y));
        pts.insert((-x, y));
    }
    for _ in 0..rng.gen_range(1..=3) {
        pts.insert((0, rng.gen_range(-3..=3)));
    }
    // planted collinear triple through two existing points
    let v: Vec<_> = pts.iter().copied().collect();
    let a = v[rng.gen_range(0..v.len())];
    let b = loop {
        let b = v[rng.gen_range(0..v.len())];
        if b != a {
            break b;
        }
    };
    pts.insert((2 * b.0 - a.0, 2 * b.1 - a.1));
    let points = pts.into_iter().map(|(x, y)| Point::new(x as f64, y as f64)).collect();
    FiniteConfig::new(points, tol()).unwrap()
}

fn fixed_sets_closed(cfg: &FiniteConfig, auts: &[Vec<PointId>]) -> Result<usize, String> {
    let mut nontrivial = 0;
    for map in auts {
        let fixed: IdSet = cfg.fixed_point_set(map).map_err(|e| e.to_string())?;
        let closed = cfg.is_collinearly_closed(&fixed).map_err(|e| e.to_string())?;
        ensure(closed, || format!("fixed set {fixed:?} not collinearly closed"))?;
        nontrivial += usize::from(fixed.len() < cfg.len());
    }
    Ok(nontrivial)
}

fn criterion_6(six: &SampledAuts, twelve: &SampledAuts) -> Verdict {
    let mut checked = 0;
    let mut nontrivial = 0;
    for s in [six, twelve] {
        nontrivial += fixed_sets_closed(&s.cfg, &s.betweenness)?;
        checked += s.betweenness.len();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut planted = 0;
    for _ in 0..200 {
        let cfg = symmetric_config(&mut rng);
        planted += usize::from(cfg.collinear_triples() > 0);
        let auts = enumerate_automorphisms(&cfg, IsoKind::Betweenness).map_err(|e| e.to_string())?;
        nontrivial += fixed_sets_closed(&cfg, &auts)?;
        checked += auts.len();
    }
    ensure(planted == 200, || format!("only {planted} configs carry collinear triples"))?;
    ensure(nontrivial > 200, || format!("only {nontrivial} non-identity automorphisms"))?;
    Ok(format!("{checked} automorphisms ({nontrivial} non-identity), all fixed sets closed"))
}

// ---------------------------------------------------------------- criterion 7

fn criterion_7() -> Verdict {
    let mut worst_gap = 0.0f64;
    let mut worst_defect = 0.0f64;
    for k in 0..199 {
        let y = -0.99 + 1.98 * (k as f64 + 0.5) / 199.0;
        ensure((y - 0.5).abs() > 1e-3, || "grid hits y = 1/2".into())?;
        let rep = example_6_1(y).map_err(|e| e.to_string())?;
        let diff = (rep.gap_closed_form - rep.gap_direct).abs();
        worst_gap = worst_gap.max(diff);
        worst_defect = worst_defect.max(rep.poncelet_defect);
        ensure(diff <= GAP_AGREEMENT_TOL, || format!("y = {y}: gap forms differ by {diff:e}"))?;
        ensure(rep.max_closed_form_error <= GAP_AGREEMENT_TOL, || {
            format!("y = {y}: closed form off by {:e}", rep.max_closed_form_error)
        })?;
        ensure(rep.gap_closed_form > 0.0, || format!("y = {y}: gap not positive"))?;
        ensure(rep.card_dd_prime == 0 && rep.card_ddprime == 1, || {
            format!("y = {y}: cards {} / {}", rep.card_dd_prime, rep.card_ddprime)
        })?;
        ensure(rep.poncelet_defect < PONCELET_TOL, || format!("y = {y}: defect {:e}", rep.poncelet_defect))?;
        ensure(rep.verdict == Example61Verdict::NonIsomorphic, || format!("y = {y}: verdict"))?;
    }
    let at_zero = example_6_1(0.0).map_err(|e| e.to_string())?;
    ensure((at_zero.gap_closed_form - GAP_AT_ZERO).abs() <= GAP_AT_ZERO_TOL, || {
        format!("gap at 0 is {}", at_zero.gap_closed_form)
    })?;
    let half = example_6_1(0.5).map_err(|e| e.to_string())?;
    ensure(half.verdict == Example61Verdict::DegenerateConcentric, || "y = 1/2 verdict".into())?;
    Ok(format!(
        "199 values of y: max gap disagreement {worst_gap:.1e}, max Poncelet defect {worst_defect:.1e}"
    ))
}

// ---------------------------------------------------------------- criterion 8

fn criterion_8() -> Verdict {
    for i in 0..10 {
        let y = -0.9 + 1.8 * i as f64 / 9.0 + 0.01;
        let rep = example_6_2(y).map_err(|e| e.to_string())?;
        let off = (rep.forced_ratio - 0.5).abs();
        ensure(off <= FORCED_RATIO_TOL, || format!("y = {y}: ratio off by {off:e}"))?;
        ensure(rep.passed(), || format!("y = {y}: {:?}", rep.checks))?;
    }
    Ok("10 values of y: tangent triangle forces ratio 1/2".into())
}

// ---------------------------------------------------------------- criterion 9

fn hand_pairs() -> Vec<(NonConcentricPair, CaseLabel)> {
    let t = tol();
    let e = t.eps_metric;
    let p = Point::new;
    let mk = |c1: Point, r1: f64, c2: Point, r2: f64| NonConcentricPair::new(c1, r1, c2, r2, &t).unwrap();
    use CaseLabel::*;
    vec![
        (mk(p(0., 0.), 1.0, p(0.2, 0.), 0.5), A),
        (mk(p(0., 0.), 2.0, p(0., -0.5), 1.0), A),
        (mk(p(1., 1.), 0.3, p(1.1, 1.05), 1.5), A),
        (mk(p(0., 0.), 1.0, p(0.5 - 2.0 * e, 0.), 0.5), A),
        (mk(p(-3., 2.), 5.0, p(-1., 1.), 0.7), A),
        (mk(p(0., 0.), 1.0, p(0.5, 0.), 0.5), B),
        (mk(p(0., 0.), 1.0, p(0.5 + 0.5 * e, 0.), 0.5), B),
        (mk(p(0., 0.), 1.0, p(0.5 - 0.5 * e, 0.), 0.5), B),
        (mk(p(2., 0.), 0.25, p(0., 0.), 2.25), B),
        (mk(p(0., 0.), 3.0, p(0., 1.0), 2.0), B),
        (mk(p(0., 0.), 1.0, p(0.8, 0.), 0.5), C),
        (mk(p(0., 0.), 1.0, p(1.0, 0.), 1.0), C),
        (mk(p(0., 0.), 1.0, p(1.5 - 2.0 * e, 0.), 0.5), C),
        (mk(p(0., 0.), 1.0, p(0.5 + 2.0 * e, 0.), 0.5), C),
        (mk(p(1., 2.), 2.0, p(3., 3.), 1.5), C),
        (mk(p(0., 0.), 1.0, p(1.5, 0.), 0.5), D),
        (mk(p(0., 0.), 1.0, p(1.5 + 0.5 * e, 0.), 0.5), D),
        (mk(p(0., 0.), 1.0, p(1.5 - 0.5 * e, 0.), 0.5), D),
        (mk(p(0., 0.), 1.0, p(0., 2.0), 1.0), D),
        (mk(p(1., 1.), 0.6, p(1.6, 1.8), 0.4), D),
        (mk(p(0., 0.), 1.0, p(2., 0.), 0.5), E),
        (mk(p(0., 0.), 1.0, p(1.5 + 2.0 * e, 0.), 0.5), E),
        (mk(p(0., 0.), 1.0, p(5., 5.), 3.0), E),
        (mk(p(-2., 0.), 0.5, p(2., 0.), 0.5), E),
        (mk(p(0., 0.), 0.1, p(0.3, 0.4), 0.3), E),
    ]
}

fn random_case_pair(rng: &mut ChaCha8Rng, case: CaseLabel) -> NonConcentricPair {
    let r1: f64 = rng.gen_range(0.5..2.0);
    let mut r2 = rng.gen_range(0.2..1.8);
    while (r1 - r2).abs() < 0.05 {
        r2 = rng.gen_range(0.2..1.8);
    }
    let (lo, hi) = ((r1 - r2).abs(), r1 + r2);
    let d = match case {
        CaseLabel::A => rng.gen_range(0.05..0.95) * lo,
        CaseLabel::B => lo,
        CaseLabel::C => rng.gen_range(lo + 0.02..hi - 0.02),
        CaseLabel::D => hi,
        CaseLabel::E => hi + rng.gen_range(0.05..2.0),
    };
    let c1 = Point::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
    let c2 = c1 + d * Point::polar(rng.gen_range(0.0..TAU));
    NonConcentricPair::new(c1, r1, c2, r2, &tol()).unwrap()
}

fn criterion_9() -> Verdict {
    let t = tol();
    let hand = hand_pairs();
    for (i, (pair, want)) in hand.iter().enumerate() {
        let got = classify(pair, &t);
        ensure(got == *want, || format!("hand pair {i}: {got} instead of {want}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    use CaseLabel::*;
    let mut tally = [0usize; 5];
    for i in 0..50 {
        let case = [A, B, C, D, E][i % 5];
        let pair = random_case_pair(&mut rng, case);
        let rep = remark_6_1_signatures(&pair).map_err(|e| e.to_string())?;
        ensure(rep.classified == case, || format!("random pair {i} classified {}", rep.classified))?;
        ensure(rep.agrees, || format!("random pair {i}: signature {} vs {}", rep.signature, case))?;
        tally[i % 5] += 1;
    }
    Ok(format!("25 hand pairs classified; 50 random pairs (per case {tally:?}) agree with signatures"))
}

// ---------------------------------------------------------------- driver

fn run(
    results: &mut Vec<bool>,
    label: &str,
    budget: Option<Duration>,
    f: impl FnOnce() -> Verdict,
) {
    let start = Instant::now();
    let outcome = f();
    let elapsed = start.elapsed();
    let over = budget.filter(|b| elapsed > *b);
    let (ok, detail) = match (&outcome, over) {
        (Ok(msg), None) => (true, msg.clone()),
        (Ok(msg), Some(b)) => (false, format!("{msg}; took {elapsed:?} > {b:?}")),
        (Err(e), _) => (false, e.clone()),
    };
    report(&format!(
        "{} {label} ({:.2}s): {detail}",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    ));
    results.push(ok);
}

// bypasses the harness's output capture so verdicts show without --nocapture
fn report(line: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}");
}

#[test]
fn acceptance() {
    let mut results = Vec::new();
    run(&mut results, "criterion 1 (M closed form, covers)", Some(BUDGET_1), criterion_1);
    run(&mut results, "criterion 2 (m grid oracle)", Some(BUDGET_2), criterion_2);
    run(&mut results, "criterion 3 (concentric isomorphisms)", None, criterion_3);

    let start = Instant::now();
    let samples = sampled_automorphisms(6, 1).and_then(|six| Ok((six, sampled_automorphisms(12, 2)?)));
    let search_time = start.elapsed();
    match &samples {
        Ok((six, twelve)) => {
            run(&mut results, "criterion 4 (automorphisms are similarities)", None, || {
                let t = Instant::now();
                let out = criterion_4(six, twelve);
                let total = search_time + t.elapsed();
                match out {
                    Ok(msg) if total > BUDGET_4 => Err(format!("{msg}; took {total:?}")),
                    other => other,
                }
            });
            run(&mut results, "criterion 5 (collinearity vs betweenness)", None, || criterion_5(six, twelve));
            run(&mut results, "criterion 6 (fixed-point sets closed)", None, || criterion_6(six, twelve));
        }
        Err(e) => {
            for label in ["criterion 4", "criterion 5", "criterion 6"] {
                report(&format!("FAIL {label}: sampling failed: {e}"));
                results.push(false);
            }
        }
    }
    run(&mut results, "criterion 7 (tangent triangle family)", Some(BUDGET_7), criterion_7);
    run(&mut results, "criterion 8 (forced concentric ratio)", None, criterion_8);
    run(&mut results, "criterion 9 (classification, signatures)", None, criterion_9);

    let failed = results.iter().filter(|ok| !**ok).count();
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}
