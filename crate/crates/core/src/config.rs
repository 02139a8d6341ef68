//! Finite point configurations with a precomputed incidence cache.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{self, Point, Tolerance};

/// Index of a point inside a [`FiniteConfig`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PointId(pub usize);

impl fmt::Display for PointId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Set of point ids, iterated in ascending order.
pub type IdSet = BTreeSet<PointId>;

/// An indexed set of pairwise distinct points.
///
/// All collinear triples and strict-betweenness triples are computed once at
/// construction (`O(n³)` predicate calls), so every later query is a table
/// lookup and all queries agree with each other.
#[derive(Clone)]
pub struct FiniteConfig {
    points: Vec<Point>,
    tol: Tolerance,
    collinear: Vec<bool>,
    // (x, y, z) set iff y lies strictly between x and z
    between: Vec<bool>,
}

impl fmt::Debug for FiniteConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteConfig")
            .field("points", &self.points)
            .field("tol", &self.tol)
            .finish_non_exhaustive()
    }
}

/// JSON form: `{"points": [[x, y], ...], "eps_sign": .., "eps_metric": ..}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigJson {
    pub points: Vec<Point>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps_sign: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps_metric: Option<f64>,
}

impl FiniteConfig {
    pub fn new(points: Vec<Point>, tol: Tolerance) -> Result<Self> {
        for p in &points {
            Point::try_new(p.x, p.y)?;
        }
        let n = points.len();
        for i in 0..n {
            for j in (i + 1)..n {
                if points[i].dist(points[j]) <= tol.eps_metric {
                    return Err(Error::DuplicatePoint {
                        first: i,
                        second: j,
                    });
                }
            }
        }
        let mut cfg = Self {
            collinear: vec![false; n * n * n],
            between: vec![false; n * n * n],
            points,
            tol,
        };
        cfg.build_cache();
        Ok(cfg)
    }

    fn build_cache(&mut self) {
        let n = self.points.len();
        let pts = &self.points;
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    if !geom::collinear(pts[i], pts[j], pts[k], &self.tol) {
                        continue;
                    }
                    for [a, b, c] in permutations([i, j, k]) {
                        self.collinear[(a * n + b) * n + c] = true;
                    }
                    // try each point of the triple as the middle
                    for [x, y, z] in [[j, i, k], [i, j, k], [i, k, j]] {
                        if geom::between(pts[x], pts[y], pts[z], true, &self.tol) {
                            self.between[(x * n + y) * n + z] = true;
                            self.between[(z * n + y) * n + x] = true;
                        }
                    }
                }
            }
        }
    }

    pub fn from_json(json: &ConfigJson) -> Result<Self> {
        let d = Tolerance::default();
        let tol = Tolerance::new(
            json.eps_sign.unwrap_or(d.eps_sign),
            json.eps_metric.unwrap_or(d.eps_metric),
        )?;
        Self::new(json.points.clone(), tol)
    }

    pub fn to_json(&self) -> ConfigJson {
        ConfigJson {
            points: self.points.clone(),
            eps_sign: Some(self.tol.eps_sign),
            eps_metric: Some(self.tol.eps_metric),
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn tolerance(&self) -> &Tolerance {
        &self.tol
    }

    pub fn ids(&self) -> impl Iterator<Item = PointId> {
        (0..self.len()).map(PointId)
    }

    pub fn all(&self) -> IdSet {
        self.ids().collect()
    }

    pub fn point(&self, id: PointId) -> Result<Point> {
        self.check(id)?;
        Ok(self.points[id.0])
    }

    /// Id of the point within `eps_metric` of `p`, if any.
    pub fn find(&self, p: Point) -> Option<PointId> {
        self.points
            .iter()
            .position(|q| q.dist(p) <= self.tol.eps_metric)
            .map(PointId)
    }

    pub fn check(&self, id: PointId) -> Result<()> {
        if id.0 < self.len() {
            Ok(())
        } else {
            Err(Error::InvalidId {
                id: id.0,
                len: self.len(),
            })
        }
    }

    fn check_set(&self, set: &IdSet) -> Result<()> {
        match set.iter().next_back() {
            Some(&id) => self.check(id),
            None => Ok(()),
        }
    }

    fn idx(&self, a: usize, b: usize, c: usize) -> usize {
        (a * self.len() + b) * self.len() + c
    }

    /// Cached collinearity of three distinct ids (false if any repeat).
    pub fn is_collinear(&self, a: PointId, b: PointId, c: PointId) -> bool {
        self.collinear[self.idx(a.0, b.0, c.0)]
    }

    /// Cached strict betweenness: `y` strictly between `x` and `z`.
    pub fn is_between(&self, x: PointId, y: PointId, z: PointId) -> bool {
        self.between[self.idx(x.0, y.0, z.0)]
    }

    /// `[x, z]_S` when `open` is false, `(x, z)_S` otherwise.
    pub fn interval(&self, x: PointId, z: PointId, open: bool) -> Result<IdSet> {
        self.check(x)?;
        self.check(z)?;
        let mut out: IdSet = self.ids().filter(|&y| self.is_between(x, y, z)).collect();
        if !open {
            out.insert(x);
            out.insert(z);
        }
        Ok(out)
    }

    /// Points that are the middle of no strict-betweenness triple.
    pub fn extreme_points(&self) -> IdSet {
        self.ids()
            .filter(|&y| self.middle_count(y) == 0)
            .collect()
    }

    /// Number of unordered pairs `{x, z}` with `y` strictly between them.
    pub fn middle_count(&self, y: PointId) -> usize {
        let n = self.len();
        let mut count = 0;
        for x in 0..n {
            for z in (x + 1)..n {
                if self.between[self.idx(x, y.0, z)] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Number of strict-betweenness triples with `x` as an endpoint.
    pub fn end_count(&self, x: PointId) -> usize {
        let n = self.len();
        let mut count = 0;
        for y in 0..n {
            for z in 0..n {
                if self.between[self.idx(x.0, y, z)] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Number of unordered collinear triples containing `x`.
    pub fn collinear_triple_count(&self, x: PointId) -> usize {
        let n = self.len();
        let mut count = 0;
        for y in 0..n {
            for z in (y + 1)..n {
                if self.collinear[self.idx(x.0, y, z)] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Total number of unordered collinear triples.
    pub fn collinear_triples(&self) -> usize {
        self.ids().map(|x| self.collinear_triple_count(x)).sum::<usize>() / 3
    }

    /// Total number of strict-betweenness triples (unordered endpoints).
    pub fn between_triples(&self) -> usize {
        self.ids().map(|y| self.middle_count(y)).sum()
    }

    pub fn is_collinearly_closed(&self, set: &IdSet) -> Result<bool> {
        self.check_set(set)?;
        for &x in set {
            for &y in set.range(x..).skip(1) {
                for z in self.ids() {
                    if !set.contains(&z) && self.is_collinear(x, y, z) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Smallest collinearly closed superset of `set`.
    pub fn collinear_hull(&self, set: &IdSet) -> Result<IdSet> {
        self.check_set(set)?;
        let mut hull = set.clone();
        loop {
            let mut added = Vec::new();
            for &x in &hull {
                for &y in hull.range(x..).skip(1) {
                    added.extend(
                        self.ids()
                            .filter(|&z| !hull.contains(&z) && self.is_collinear(x, y, z)),
                    );
                }
            }
            if added.is_empty() {
                return Ok(hull);
            }
            hull.extend(added);
        }
    }

    /// All points on the line through `p` and `q`, including both.
    pub fn line_trace(&self, p: PointId, q: PointId) -> Result<IdSet> {
        self.check(p)?;
        self.check(q)?;
        if p == q {
            return Err(Error::SameIds);
        }
        let mut out: IdSet = self.ids().filter(|&z| self.is_collinear(p, q, z)).collect();
        out.insert(p);
        out.insert(q);
        Ok(out)
    }

    /// Fixed points of a self-map given as `map[i] = image of id i`.
    pub fn fixed_point_set(&self, map: &[PointId]) -> Result<IdSet> {
        self.check_bijection(map)?;
        Ok(map
            .iter()
            .enumerate()
            .filter(|&(i, &img)| img.0 == i)
            .map(|(i, _)| PointId(i))
            .collect())
    }

    pub(crate) fn check_bijection(&self, map: &[PointId]) -> Result<()> {
        check_bijection(map, self.len())
    }
}

pub(crate) fn check_bijection(map: &[PointId], len: usize) -> Result<()> {
    if map.len() != len {
        return Err(Error::NotBijection(format!(
            "map has {} entries for {} points",
            map.len(),
            len
        )));
    }
    let mut seen = vec![false; len];
    for (i, &img) in map.iter().enumerate() {
        if img.0 >= len {
            return Err(Error::NotBijection(format!("image of {i} is out of range")));
        }
        if std::mem::replace(&mut seen[img.0], true) {
            return Err(Error::NotBijection(format!("{img} is hit twice")));
        }
    }
    Ok(())
}

fn permutations([a, b, c]: [usize; 3]) -> [[usize; 3]; 6] {
    [
        [a, b, c],
        [a, c, b],
        [b, a, c],
        [b, c, a],
        [c, a, b],
        [c, b, a],
    ]
}
