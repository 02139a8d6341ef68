//! Betweenness- and collinearity-isomorphism search between finite
//! configurations.
//!
//! The search is a plain backtracking over bijections. Candidates for each
//! source point are restricted to target points with an equal
//! [`PointSignature`], and each partial assignment is checked against every
//! triple it completes. Before searching, global invariants (sizes, extreme
//! counts, triple counts, signature multisets) are compared; a mismatch
//! yields a [`Certificate`] that can be rechecked independently.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::config::{check_bijection, FiniteConfig, PointId};
use crate::error::{Error, Result};

pub const DEFAULT_NODE_LIMIT: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IsoKind {
    /// Preserves "y lies on the segment [x, z]" in both directions.
    Betweenness,
    /// Preserves "x, y, z lie on one line" in both directions.
    Collinearity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    #[default]
    First,
    All,
}

/// Per-point invariant used to prune candidates. Only the fields that the
/// given [`IsoKind`] preserves are populated; the rest stay zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PointSignature {
    pub is_extreme: bool,
    pub middle_count: usize,
    pub end_count: usize,
    pub collinear_triple_count: usize,
}

impl PointSignature {
    pub fn of(cfg: &FiniteConfig, id: PointId, kind: IsoKind) -> Self {
        let collinear_triple_count = cfg.collinear_triple_count(id);
        match kind {
            IsoKind::Collinearity => Self {
                is_extreme: false,
                middle_count: 0,
                end_count: 0,
                collinear_triple_count,
            },
            IsoKind::Betweenness => {
                let middle_count = cfg.middle_count(id);
                Self {
                    is_extreme: middle_count == 0,
                    middle_count,
                    end_count: cfg.end_count(id),
                    collinear_triple_count,
                }
            }
        }
    }
}

/// Signature multiset as sorted `(signature, multiplicity)` entries.
pub type SignatureCounts = Vec<(PointSignature, usize)>;

/// A recomputable invariant that differs between two configurations, or the
/// record of an exhausted search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "invariant", rename_all = "snake_case")]
pub enum Certificate {
    Size { left: usize, right: usize },
    ExtremeCount { left: usize, right: usize },
    CollinearTriples { left: usize, right: usize },
    BetweenTriples { left: usize, right: usize },
    SignatureMultiset { left: SignatureCounts, right: SignatureCounts },
    /// Every candidate bijection in the pruned space was rejected.
    Exhausted { nodes: u64 },
}

impl Certificate {
    /// Recompute the named invariant on both inputs and confirm that it
    /// really differs. `Exhausted` has no closed-form invariant and is
    /// confirmed by rerunning the search.
    pub fn recheck(&self, a: &FiniteConfig, b: &FiniteConfig, kind: IsoKind) -> bool {
        match self {
            Certificate::Size { left, right } => {
                (a.len(), b.len()) == (*left, *right) && left != right
            }
            Certificate::ExtremeCount { left, right } => {
                (a.extreme_points().len(), b.extreme_points().len()) == (*left, *right)
                    && left != right
            }
            Certificate::CollinearTriples { left, right } => {
                (a.collinear_triples(), b.collinear_triples()) == (*left, *right) && left != right
            }
            Certificate::BetweenTriples { left, right } => {
                (a.between_triples(), b.between_triples()) == (*left, *right) && left != right
            }
            Certificate::SignatureMultiset { left, right } => {
                signature_counts(a, kind) == *left
                    && signature_counts(b, kind) == *right
                    && left != right
            }
            Certificate::Exhausted { .. } => matches!(
                find_isomorphism(a, b, kind, SearchMode::First, DEFAULT_NODE_LIMIT).outcome,
                Outcome::Refuted {
                    certificate: Certificate::Exhausted { .. }
                }
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Outcome {
    Found { bijections: Vec<Vec<PointId>> },
    Refuted { certificate: Certificate },
    /// The node limit was hit before the search finished.
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    pub outcome: Outcome,
    pub nodes_explored: u64,
}

/// A triple on which a map fails to preserve the relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    /// Source triple `(x, y, z)`; for betweenness the claim is about `y`
    /// lying strictly between `x` and `z`.
    pub triple: [PointId; 3],
    pub holds_in_source: bool,
    pub holds_in_target: bool,
}

fn relation(cfg: &FiniteConfig, kind: IsoKind, [x, y, z]: [PointId; 3]) -> bool {
    match kind {
        IsoKind::Betweenness => cfg.is_between(x, y, z),
        IsoKind::Collinearity => cfg.is_collinear(x, y, z),
    }
}

/// Check that `f` preserves the relation of `kind` in both directions on
/// every ordered triple of distinct points; returns the first violation.
pub fn verify_map(
    a: &FiniteConfig,
    b: &FiniteConfig,
    f: &[PointId],
    kind: IsoKind,
) -> Result<Option<Violation>> {
    if a.len() != b.len() {
        return Err(Error::SizeMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    check_bijection(f, a.len())?;
    let n = a.len();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if x == y || y == z || x == z {
                    continue;
                }
                let triple = [PointId(x), PointId(y), PointId(z)];
                let holds_in_source = relation(a, kind, triple);
                let holds_in_target = relation(b, kind, triple.map(|p| f[p.0]));
                if holds_in_source != holds_in_target {
                    return Ok(Some(Violation {
                        triple,
                        holds_in_source,
                        holds_in_target,
                    }));
                }
            }
        }
    }
    Ok(None)
}

pub fn signature_counts(cfg: &FiniteConfig, kind: IsoKind) -> SignatureCounts {
    let mut counts = BTreeMap::new();
    for id in cfg.ids() {
        *counts.entry(PointSignature::of(cfg, id, kind)).or_insert(0) += 1;
    }
    counts.into_iter().collect()
}

fn invariant_mismatch(a: &FiniteConfig, b: &FiniteConfig, kind: IsoKind) -> Option<Certificate> {
    let differ = |left: usize, right: usize| (left != right).then_some((left, right));
    if let Some((left, right)) = differ(a.len(), b.len()) {
        return Some(Certificate::Size { left, right });
    }
    if kind == IsoKind::Betweenness {
        let (ea, eb) = (a.extreme_points().len(), b.extreme_points().len());
        if let Some((left, right)) = differ(ea, eb) {
            return Some(Certificate::ExtremeCount { left, right });
        }
    }
    if let Some((left, right)) = differ(a.collinear_triples(), b.collinear_triples()) {
        return Some(Certificate::CollinearTriples { left, right });
    }
    if kind == IsoKind::Betweenness {
        if let Some((left, right)) = differ(a.between_triples(), b.between_triples()) {
            return Some(Certificate::BetweenTriples { left, right });
        }
    }
    let (left, right) = (signature_counts(a, kind), signature_counts(b, kind));
    (left != right).then_some(Certificate::SignatureMultiset { left, right })
}

struct Search<'a> {
    a: &'a FiniteConfig,
    b: &'a FiniteConfig,
    kind: IsoKind,
    mode: SearchMode,
    node_limit: u64,
    nodes: u64,
    order: Vec<usize>,
    candidates: Vec<Vec<usize>>,
    map: Vec<Option<usize>>,
    used: Vec<bool>,
    found: Vec<Vec<PointId>>,
    aborted: bool,
}

impl Search<'_> {
    fn consistent(&self, depth: usize, src: usize, dst: usize) -> bool {
        let a = self.a;
        let b = self.b;
        let (s, d) = (PointId(src), PointId(dst));
        for (i, &u) in self.order[..depth].iter().enumerate() {
            let fu = PointId(self.map[u].expect("assigned"));
            let u = PointId(u);
            for &v in &self.order[..i] {
                let fv = PointId(self.map[v].expect("assigned"));
                let v = PointId(v);
                if a.is_collinear(s, u, v) != b.is_collinear(d, fu, fv) {
                    return false;
                }
                if self.kind == IsoKind::Betweenness
                    && (a.is_between(u, s, v) != b.is_between(fu, d, fv)
                        || a.is_between(s, u, v) != b.is_between(d, fu, fv)
                        || a.is_between(s, v, u) != b.is_between(d, fv, fu))
                {
                    return false;
                }
            }
        }
        true
    }

    /// Returns true when the search should stop.
    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            self.found.push(
                self.map
                    .iter()
                    .map(|m| PointId(m.expect("complete")))
                    .collect(),
            );
            return self.mode == SearchMode::First;
        }
        let src = self.order[depth];
        for ci in 0..self.candidates[src].len() {
            let dst = self.candidates[src][ci];
            if self.used[dst] {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.node_limit {
                self.aborted = true;
                return true;
            }
            if !self.consistent(depth, src, dst) {
                continue;
            }
            self.map[src] = Some(dst);
            self.used[dst] = true;
            let stop = self.extend(depth + 1);
            self.map[src] = None;
            self.used[dst] = false;
            if stop {
                return true;
            }
        }
        false
    }
}

/// Source-point order: start from the smallest signature class, then
/// repeatedly take the point completing the most collinear triples with
/// already ordered points (ties: smaller class, then lower id).
fn search_order(a: &FiniteConfig, class_size: &[usize]) -> Vec<usize> {
    let n = a.len();
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    let mut links = vec![0usize; n];
    while order.len() < n {
        let next = (0..n)
            .filter(|&i| !placed[i])
            .min_by_key(|&i| (std::cmp::Reverse(links[i]), class_size[i], i))
            .expect("unplaced point remains");
        for &u in &order {
            for w in 0..n {
                if !placed[w] && w != next && a.is_collinear(PointId(next), PointId(u), PointId(w)) {
                    links[w] += 1;
                }
            }
        }
        placed[next] = true;
        order.push(next);
    }
    order
}

/// Decide whether `a` and `b` are isomorphic under `kind`.
///
/// In `First` mode the search stops at the first bijection; in `All` mode
/// every bijection is returned in depth-first order. Exceeding
/// `node_limit` gives [`Outcome::Inconclusive`], never a refutation.
pub fn find_isomorphism(
    a: &FiniteConfig,
    b: &FiniteConfig,
    kind: IsoKind,
    mode: SearchMode,
    node_limit: u64,
) -> SearchResult {
    if let Some(certificate) = invariant_mismatch(a, b, kind) {
        return SearchResult {
            outcome: Outcome::Refuted { certificate },
            nodes_explored: 0,
        };
    }
    let n = a.len();
    let sig_a: Vec<_> = a.ids().map(|id| PointSignature::of(a, id, kind)).collect();
    let sig_b: Vec<_> = b.ids().map(|id| PointSignature::of(b, id, kind)).collect();
    let candidates: Vec<Vec<usize>> = sig_a
        .iter()
        .map(|s| (0..n).filter(|&j| sig_b[j] == *s).collect())
        .collect();
    let class_size: Vec<usize> = candidates.iter().map(Vec::len).collect();
    let mut search = Search {
        a,
        b,
        kind,
        mode,
        node_limit,
        nodes: 0,
        order: search_order(a, &class_size),
        candidates,
        map: vec![None; n],
        used: vec![false; n],
        found: Vec::new(),
        aborted: false,
    };
    search.extend(0);
    let outcome = if search.aborted {
        Outcome::Inconclusive
    } else if search.found.is_empty() {
        Outcome::Refuted {
            certificate: Certificate::Exhausted {
                nodes: search.nodes,
            },
        }
    } else {
        Outcome::Found {
            bijections: search.found,
        }
    };
    SearchResult {
        outcome,
        nodes_explored: search.nodes,
    }
}

/// All self-isomorphisms of `cfg` under `kind`.
pub fn enumerate_automorphisms(cfg: &FiniteConfig, kind: IsoKind) -> Result<Vec<Vec<PointId>>> {
    enumerate_automorphisms_with_limit(cfg, kind, DEFAULT_NODE_LIMIT)
}

pub fn enumerate_automorphisms_with_limit(
    cfg: &FiniteConfig,
    kind: IsoKind,
    node_limit: u64,
) -> Result<Vec<Vec<PointId>>> {
    let result = find_isomorphism(cfg, cfg, kind, SearchMode::All, node_limit);
    match result.outcome {
        Outcome::Found { bijections } => Ok(bijections),
        Outcome::Inconclusive => Err(Error::SearchInconclusive(result.nodes_explored)),
        Outcome::Refuted { .. } => Err(Error::InvariantViolation(
            "identity was rejected as an automorphism".into(),
        )),
    }
}

/// `outer ∘ inner` for maps given as image tables.
pub fn compose_maps(outer: &[PointId], inner: &[PointId]) -> Vec<PointId> {
    inner.iter().map(|&i| outer[i.0]).collect()
}

pub fn invert_map(map: &[PointId]) -> Vec<PointId> {
    let mut inv = vec![PointId(0); map.len()];
    for (i, &img) in map.iter().enumerate() {
        inv[img.0] = PointId(i);
    }
    inv
}
