use std::collections::HashSet;
use std::f64::consts::{PI, TAU};

use betweenness_core::circles::{
    arc, chord_orbit, identify_arc_from_inner, m_invariant, verify_cover, construct_cover,
    ArcKind, ConcentricPair, M_invariant, Orientation,
};
use betweenness_core::geom::{between, fit_similarity, orient, Sign};
use betweenness_core::iso::{
    compose_maps, enumerate_automorphisms, find_isomorphism, invert_map, verify_map, IsoKind,
    Outcome, SearchMode, DEFAULT_NODE_LIMIT,
};
use betweenness_core::{FiniteConfig, IdSet, Point, PointId, ScaledIsometry, Tolerance};
use proptest::prelude::*;

fn tol() -> Tolerance {
    Tolerance::default()
}

fn point() -> impl Strategy<Value = Point> {
    (-10.0..10.0f64, -10.0..10.0f64).prop_map(|(x, y)| Point::new(x, y))
}

fn grid_point() -> impl Strategy<Value = (i32, i32)> {
    (-3..=3i32, -3..=3i32)
}

fn similarity() -> impl Strategy<Value = ScaledIsometry> {
    (0.1..5.0f64, 0.0..TAU, any::<bool>(), point())
        .prop_map(|(s, rot, refl, t)| ScaledIsometry::new(s, rot, refl, t).unwrap())
}

/// Small integer-grid configurations carry many exact collinearities.
fn grid_config(max: usize) -> impl Strategy<Value = FiniteConfig> {
    prop::collection::btree_set(grid_point(), 3..=max).prop_map(|pts| {
        let points = pts.into_iter().map(|(x, y)| Point::new(x as f64, y as f64)).collect();
        FiniteConfig::new(points, tol()).unwrap()
    })
}

fn id_subset(n: usize) -> impl Strategy<Value = IdSet> {
    prop::collection::btree_set((0..n).prop_map(PointId), 0..=n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn orient_is_antisymmetric(p in point(), q in point(), r in point()) {
        let t = tol();
        let s = orient(p, q, r, &t);
        prop_assert_eq!(orient(q, p, r, &t), s.flip());
        prop_assert_eq!(orient(p, r, q, &t), s.flip());
        prop_assert_eq!(orient(r, q, p, &t), s.flip());
        prop_assert_eq!(orient(q, r, p, &t), s);
    }

    #[test]
    fn between_is_symmetric(x in point(), y in point(), z in point(), strict in any::<bool>()) {
        let t = tol();
        prop_assert_eq!(between(x, y, z, strict, &t), between(z, y, x, strict, &t));
        prop_assert!(between(x, x, z, false, &t));
        prop_assert!(!between(x, y, y, true, &t));
    }

    #[test]
    fn similarities_preserve_betweenness(x in point(), z in point(), s in 0.0..1.0f64, f in similarity()) {
        let t = tol();
        let y = x + s * (z - x);
        for (a, b, c) in [(x, y, z), (y, x, z), (x, z, y)] {
            prop_assert_eq!(
                between(a, b, c, true, &t),
                between(f.apply(a), f.apply(b), f.apply(c), true, &t)
            );
        }
    }

    #[test]
    fn compose_with_inverse_is_identity(f in similarity(), p in point()) {
        let back = f.compose(&f.invert()).apply(p);
        prop_assert!(back.dist(p) <= tol().eps_metric);
        let back = f.invert().compose(&f).apply(p);
        prop_assert!(back.dist(p) <= tol().eps_metric);
    }

    #[test]
    fn fit_recovers_scale(f in similarity(), pts in prop::collection::vec(point(), 3..8)) {
        prop_assume!(pts[0].dist(pts[1]) > 0.1);
        let pairs: Vec<_> = pts.iter().map(|&p| (p, f.apply(p))).collect();
        let fit = fit_similarity(&pairs, true, &tol()).unwrap();
        prop_assert!((fit.map.scale() - f.scale()).abs() <= 1e-12 * f.scale());
        prop_assert!(fit.residual <= 1e-9);
        prop_assert_eq!(fit.map.reflect(), f.reflect());
    }

    #[test]
    fn hull_is_a_closure(cfg in grid_config(10), seed in any::<u64>()) {
        let n = cfg.len();
        let a: IdSet = (0..n).filter(|i| seed >> (i % 64) & 1 == 1).map(PointId).collect();
        let b: IdSet = a.iter().copied().chain((0..n).filter(|i| i % 3 == 0).map(PointId)).collect();
        let ha = cfg.collinear_hull(&a).unwrap();
        prop_assert!(a.is_subset(&ha));
        prop_assert_eq!(cfg.collinear_hull(&ha).unwrap(), ha.clone());
        prop_assert!(cfg.is_collinearly_closed(&ha).unwrap());
        prop_assert!(ha.is_subset(&cfg.collinear_hull(&b).unwrap()));
    }

    #[test]
    fn extreme_points_are_never_middles(cfg in grid_config(12)) {
        let extreme = cfg.extreme_points();
        for y in cfg.ids() {
            let middle = cfg.ids().any(|x| cfg.ids().any(|z| cfg.is_between(x, y, z)));
            prop_assert_eq!(extreme.contains(&y), !middle);
        }
    }

    #[test]
    fn intervals_nest(cfg in grid_config(10), i in 0usize..10, j in 0usize..10) {
        let n = cfg.len();
        let (x, z) = (PointId(i % n), PointId(j % n));
        prop_assume!(x != z);
        let open = cfg.interval(x, z, true).unwrap();
        let closed = cfg.interval(x, z, false).unwrap();
        prop_assert!(open.is_subset(&closed));
        prop_assert!(closed.contains(&x) && closed.contains(&z));
        prop_assert_eq!(open, cfg.interval(z, x, true).unwrap());
    }

    #[test]
    fn automorphism_groups_are_groups(cfg in grid_config(7)) {
        let auts = enumerate_automorphisms(&cfg, IsoKind::Betweenness).unwrap();
        let group: HashSet<_> = auts.iter().cloned().collect();
        let identity: Vec<_> = cfg.ids().collect();
        prop_assert!(group.contains(&identity));
        // a generic configuration has n! automorphisms; compose a sample
        for f in auts.iter().take(24) {
            prop_assert!(group.contains(&invert_map(f)));
            for g in &auts {
                prop_assert!(group.contains(&compose_maps(f, g)));
            }
            prop_assert_eq!(verify_map(&cfg, &cfg, f, IsoKind::Betweenness).unwrap(), None);
            prop_assert_eq!(verify_map(&cfg, &cfg, f, IsoKind::Collinearity).unwrap(), None);
        }
        for f in &auts {
            let fixed = cfg.fixed_point_set(f).unwrap();
            prop_assert!(cfg.is_collinearly_closed(&fixed).unwrap());
        }
    }

    #[test]
    fn isomorphisms_commute_with_hulls(cfg in grid_config(9), f in similarity(), subset in id_subset(9)) {
        let n = cfg.len();
        let image: Vec<Point> = cfg.points().iter().map(|&p| f.apply(p)).collect();
        let other = FiniteConfig::new(image, tol()).unwrap();
        let res = find_isomorphism(&cfg, &other, IsoKind::Betweenness, SearchMode::First, DEFAULT_NODE_LIMIT);
        let Outcome::Found { bijections } = res.outcome else {
            return Err(TestCaseError::fail("similar image not isomorphic"));
        };
        let a: IdSet = subset.into_iter().filter(|i| i.0 < n).collect();
        for g in bijections {
            prop_assert_eq!(verify_map(&cfg, &other, &g, IsoKind::Betweenness).unwrap(), None);
            let lhs: IdSet = cfg.collinear_hull(&a).unwrap().iter().map(|i| g[i.0]).collect();
            let ga: IdSet = a.iter().map(|i| g[i.0]).collect();
            prop_assert_eq!(lhs, other.collinear_hull(&ga).unwrap());
        }
    }

    #[test]
    fn refutations_recheck(a in grid_config(8), b in grid_config(8)) {
        for kind in [IsoKind::Betweenness, IsoKind::Collinearity] {
            let res = find_isomorphism(&a, &b, kind, SearchMode::First, DEFAULT_NODE_LIMIT);
            match res.outcome {
                Outcome::Refuted { certificate } => prop_assert!(certificate.recheck(&a, &b, kind)),
                Outcome::Found { bijections } => {
                    prop_assert_eq!(verify_map(&a, &b, &bijections[0], kind).unwrap(), None)
                }
                Outcome::Inconclusive => prop_assert!(false, "small search hit the node limit"),
            }
        }
    }
}

fn concentric() -> impl Strategy<Value = ConcentricPair> {
    (point(), 0.05..0.95f64, 0.2..5.0f64)
        .prop_map(|(c, r, outer)| ConcentricPair::new(c, r * outer, outer).unwrap())
}

fn transformed(pair: &ConcentricPair, f: &ScaledIsometry) -> ConcentricPair {
    ConcentricPair::new(f.apply(pair.center()), f.scale() * pair.rho(), f.scale() * pair.rho_prime()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn arc_chords_are_tangent(pair in concentric(), alpha in 0.0..TAU) {
        let (v, w) = arc(&pair, alpha, ArcKind::Single).endpoints();
        let d = w - v;
        let dist = (pair.center() - v).cross(d).abs() / d.norm();
        prop_assert!((dist - pair.rho()).abs() <= 1e-9);
    }

    #[test]
    fn arc_routes_agree(pair in concentric(), alpha in 0.0..TAU) {
        let id = identify_arc_from_inner(&pair, pair.inner_point(alpha), 360, &tol()).unwrap();
        prop_assert!(id.sweep_members > 0);
    }

    #[test]
    fn invariants_are_similarity_invariant(pair in concentric(), f in similarity()) {
        let image = transformed(&pair, &f);
        prop_assert_eq!(m_invariant(&pair), m_invariant(&image));
        prop_assert!((M_invariant(&pair) - M_invariant(&image)).abs() <= 1e-12 * M_invariant(&pair));
    }

    #[test]
    fn constructed_covers_verify(pair in concentric(), slack in 0.01..1.0f64) {
        let target = M_invariant(&pair) + slack;
        let cert = construct_cover(&pair, target, &tol()).unwrap();
        prop_assert!(verify_cover(&pair, &cert, &tol()) >= cert.k);
    }

    #[test]
    fn chord_orbit_steps_span_one_arc(pair in concentric(), theta in 0.0..TAU, ccw in any::<bool>()) {
        let orientation = if ccw { Orientation::Ccw } else { Orientation::Cw };
        let orbit = chord_orbit(&pair, theta, orientation, 6);
        let half = pair.half_arc();
        for (k, w) in orbit.windows(2).enumerate() {
            let mid = theta + orientation.sign() * (2 * k + 1) as f64 * half;
            let a = arc(&pair, mid, ArcKind::Single);
            let (lo, hi) = a.endpoint_angles();
            let (s, e) = if ccw { (w[0], w[1]) } else { (w[1], w[0]) };
            let close = |x: f64, y: f64| {
                let d = (x - y).rem_euclid(TAU);
                d.min(TAU - d) < 1e-9
            };
            prop_assert!(close(s, lo) && close(e, hi));
        }
        prop_assert!(half < PI / 2.0);
    }
}

#[test]
fn orient_zero_has_no_sign() {
    let t = tol();
    let (p, q) = (Point::new(0.0, 0.0), Point::new(1.0, 1.0));
    assert_eq!(orient(p, q, Point::new(2.0, 2.0), &t), Sign::Zero);
}
