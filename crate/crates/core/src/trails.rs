//! Alternating trails, witness search, trail flipping and hostile
//! configurations.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::LabeledGraph;
use crate::sequence::{perturb, Perturbation};

/// Length bound for witness trails in the certify dichotomy.
pub const WITNESS_MAX_LEN: usize = 11;
/// Length bound for the warm-up (very simple region) variant.
pub const WARMUP_MAX_LEN: usize = 7;
/// Length bound for pre-witness trails.
pub const PRE_WITNESS_MAX_LEN: usize = 5;

/// A walk `v_0 .. v_L` that alternates between edges and non-edges of a
/// reference graph and never reuses an unordered pair.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AlternatingTrail {
    pub vertices: Vec<usize>,
    pub starts_with_edge: bool,
}

impl AlternatingTrail {
    pub fn new(vertices: Vec<usize>, starts_with_edge: bool) -> Self {
        AlternatingTrail {
            vertices,
            starts_with_edge,
        }
    }

    /// Number of pairs traversed.
    pub fn len(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn start(&self) -> usize {
        self.vertices[0]
    }

    pub fn end(&self) -> usize {
        *self.vertices.last().expect("trail has vertices")
    }

    /// Whether pair `t` should be an edge of the reference graph.
    pub fn expects_edge(&self, t: usize) -> bool {
        t.is_multiple_of(2) == self.starts_with_edge
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.vertices.windows(2).map(|w| (w[0], w[1]))
    }

    /// Checks alternation and pair-distinctness against `g`, reporting the
    /// first offending pair position.
    pub fn validate(&self, g: &LabeledGraph) -> Result<()> {
        if self.is_empty() {
            return Err(Error::InvalidTrail {
                position: 0,
                reason: "trail has no pairs".into(),
            });
        }
        let n = g.n();
        let mut used = vec![false; n * n];
        for (t, (a, b)) in self.pairs().enumerate() {
            let bad = |reason: &str| Error::InvalidTrail {
                position: t,
                reason: reason.into(),
            };
            if a >= n || b >= n {
                return Err(bad("vertex out of range"));
            }
            if a == b {
                return Err(bad("consecutive vertices coincide"));
            }
            if used[a * n + b] {
                return Err(bad("pair repeated"));
            }
            used[a * n + b] = true;
            used[b * n + a] = true;
            if g.has_edge(a, b) != self.expects_edge(t) {
                return Err(bad(if self.expects_edge(t) {
                    "expected an edge"
                } else {
                    "expected a non-edge"
                }));
            }
        }
        Ok(())
    }

    /// Edge-abundant, odd length at most `k`.
    pub fn is_witness(&self, k: usize) -> bool {
        self.starts_with_edge && self.len() % 2 == 1 && self.len() <= k
    }

    /// Edge-deficient, odd length at most five.
    pub fn is_pre_witness(&self) -> bool {
        !self.starts_with_edge && self.len() % 2 == 1 && self.len() <= PRE_WITNESS_MAX_LEN
    }
}

const INF: usize = usize::MAX / 4;

/// `dist[2u + t]`: least number of steps of an alternating walk from `u`
/// whose first step has type `t` (0 edge, 1 non-edge) and whose last step
/// enters `target` with type `last`. Pair reuse is ignored, so this is a
/// lower bound for trails.
fn alternating_distances(
    g: &LabeledGraph,
    target: usize,
    last_is_edge: bool,
    allowed: &[bool],
) -> Vec<usize> {
    let n = g.n();
    let mut dist = vec![INF; 2 * n];
    let mut queue = VecDeque::new();
    let last_t = usize::from(!last_is_edge);
    for u in 0..n {
        if u != target && allowed[u] && g.has_edge(u, target) == last_is_edge {
            dist[2 * u + last_t] = 1;
            queue.push_back((u, last_t));
        }
    }
    while let Some((w, t)) = queue.pop_front() {
        let d = dist[2 * w + t];
        // Predecessor u steps to w with type 1 - t.
        let pt = 1 - t;
        for u in 0..n {
            if u == w || !allowed[u] || g.has_edge(u, w) != (pt == 0) {
                continue;
            }
            if dist[2 * u + pt] == INF {
                dist[2 * u + pt] = d + 1;
                queue.push_back((u, pt));
            }
        }
    }
    dist
}

struct TrailSearch<'a> {
    g: &'a LabeledGraph,
    target: usize,
    first_is_edge: bool,
    max_len: usize,
    allowed: &'a [bool],
    dist: Vec<usize>,
    used: Vec<bool>,
    path: Vec<usize>,
}

impl TrailSearch<'_> {
    fn step_is_edge(&self, t: usize) -> bool {
        t.is_multiple_of(2) == self.first_is_edge
    }

    fn dfs(&mut self) -> bool {
        let n = self.g.n();
        let v = *self.path.last().expect("path starts non-empty");
        let len = self.path.len() - 1;
        let is_edge = self.step_is_edge(len);
        let t = usize::from(!is_edge);
        for w in 0..n {
            if w == v || !self.allowed[w] || self.used[v * n + w] {
                continue;
            }
            if self.g.has_edge(v, w) != is_edge {
                continue;
            }
            let new_len = len + 1;
            let finishes = w == self.target && new_len % 2 == 1;
            if finishes {
                self.path.push(w);
                return true;
            }
            let remaining = self.dist[2 * w + (1 - t)];
            if new_len + remaining > self.max_len {
                continue;
            }
            self.used[v * n + w] = true;
            self.used[w * n + v] = true;
            self.path.push(w);
            if self.dfs() {
                return true;
            }
            self.path.pop();
            self.used[v * n + w] = false;
            self.used[w * n + v] = false;
        }
        false
    }
}

/// Lexicographically least (by vertex sequence) alternating trail of odd
/// length at most `max_len` from `from` to `to`, whose first and last pairs
/// are edges when `first_is_edge` and non-edges otherwise. Vertices outside
/// `within` (when given) are never visited; the endpoints must be inside.
pub fn find_alternating_trail(
    g: &LabeledGraph,
    from: usize,
    to: usize,
    first_is_edge: bool,
    max_len: usize,
    within: Option<&[bool]>,
) -> Option<AlternatingTrail> {
    let n = g.n();
    if from >= n || to >= n || max_len == 0 {
        return None;
    }
    let all = vec![true; n];
    let allowed = within.unwrap_or(&all);
    if !allowed[from] || !allowed[to] {
        return None;
    }
    let dist = alternating_distances(g, to, first_is_edge, allowed);
    let first_t = usize::from(!first_is_edge);
    if dist[2 * from + first_t] > max_len {
        return None;
    }
    let mut search = TrailSearch {
        g,
        target: to,
        first_is_edge,
        max_len,
        allowed,
        dist,
        used: vec![false; n * n],
        path: vec![from],
    };
    if search.dfs() {
        Some(AlternatingTrail::new(search.path, first_is_edge))
    } else {
        None
    }
}

/// Lexicographically least edge-abundant trail of odd length at most
/// `max_len` from `p` to `q`.
pub fn find_witness_trail(
    g: &LabeledGraph,
    p: usize,
    q: usize,
    max_len: usize,
) -> Option<AlternatingTrail> {
    find_alternating_trail(g, p, q, true, max_len, None)
}

/// Toggles every pair of `t`. For an edge-abundant trail between distinct
/// endpoints both endpoint degrees drop by one.
pub fn flip_along_trail(g: &LabeledGraph, t: &AlternatingTrail) -> Result<LabeledGraph> {
    t.validate(g)?;
    let mut out = g.clone();
    for (a, b) in t.pairs() {
        out.toggle(a, b)?;
    }
    Ok(out)
}

/// Maximal alternating trail in `E(h0) xor E(h1)` starting at `q` with a
/// pair of `E(h1) \ E(h0)`, extended greedily through the lowest-indexed
/// unused pair of the required colour. The result ends at `p` and is
/// edge-abundant with respect to `h1`.
pub fn symmetric_difference_trail(
    h0: &LabeledGraph,
    h1: &LabeledGraph,
    p: usize,
    q: usize,
) -> Result<AlternatingTrail> {
    let n = h0.n();
    if h1.n() != n {
        return Err(Error::PreconditionViolated(
            "graphs have different vertex counts".into(),
        ));
    }
    let expected = perturb(&h0.degrees(), Perturbation::plus(p, q))?;
    if h1.degrees() != expected {
        return Err(Error::PreconditionViolated(
            "degrees of h1 are not those of h0 plus 1 at p and q".into(),
        ));
    }
    let mut used = vec![false; n * n];
    let mut vertices = vec![q];
    let mut want_new = true;
    let mut v = q;
    loop {
        let next = (0..n).find(|&w| {
            w != v
                && !used[v * n + w]
                && h1.has_edge(v, w) == want_new
                && h0.has_edge(v, w) != want_new
        });
        let Some(w) = next else { break };
        used[v * n + w] = true;
        used[w * n + v] = true;
        vertices.push(w);
        v = w;
        want_new = !want_new;
    }
    let trail = AlternatingTrail::new(vertices, true);
    if trail.end() != p || trail.len().is_multiple_of(2) {
        return Err(Error::InternalInvariantFailure(format!(
            "maximal difference trail ended at {} after {} pairs",
            trail.end(),
            trail.len()
        )));
    }
    Ok(trail)
}

/// A partition `S + K' + Y' + R'` of the vertex set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HostileConfiguration {
    pub p: usize,
    pub q: usize,
    #[serde(rename = "S")]
    pub s: Vec<usize>,
    #[serde(rename = "K")]
    pub k: Vec<usize>,
    #[serde(rename = "Y")]
    pub y: Vec<usize>,
    #[serde(rename = "R")]
    pub r: Vec<usize>,
}

impl HostileConfiguration {
    /// Builds a configuration with `S = {p, q}` (a singleton when `p = q`)
    /// and sorted blocks.
    pub fn new(p: usize, q: usize, k: Vec<usize>, y: Vec<usize>, r: Vec<usize>) -> Self {
        let mut s = vec![p, q];
        s.sort_unstable();
        s.dedup();
        let sorted = |mut v: Vec<usize>| {
            v.sort_unstable();
            v
        };
        HostileConfiguration {
            p,
            q,
            s,
            k: sorted(k),
            y: sorted(y),
            r: sorted(r),
        }
    }

    fn check_partition(&self, n: usize) -> Result<()> {
        let mut expected_s = vec![self.p, self.q];
        expected_s.sort_unstable();
        expected_s.dedup();
        let mut sorted_s = self.s.clone();
        sorted_s.sort_unstable();
        if sorted_s != expected_s {
            return Err(Error::NotAPartition("S must equal {p, q}".into()));
        }
        let mut seen = vec![false; n];
        for (name, block) in [("S", &self.s), ("K", &self.k), ("Y", &self.y), ("R", &self.r)] {
            for &v in block {
                if v >= n {
                    return Err(Error::NotAPartition(format!(
                        "vertex {v} in {name} is out of range"
                    )));
                }
                if seen[v] {
                    return Err(Error::NotAPartition(format!("vertex {v} appears twice")));
                }
                seen[v] = true;
            }
        }
        if let Some(v) = seen.iter().position(|&b| !b) {
            return Err(Error::NotAPartition(format!("vertex {v} is not covered")));
        }
        Ok(())
    }
}

/// Condition labels of a hostile configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HostileCondition {
    /// `K'` is a clique.
    A,
    /// `K'` is completely joined to `R'`.
    B,
    /// `Y'` is independent.
    C,
    /// No edge between `Y'` and `R'`.
    D,
    /// The neighbourhoods of `v_p` and `v_q` lie in `K'`.
    E,
}

impl HostileCondition {
    pub fn tag(self) -> &'static str {
        match self {
            HostileCondition::A => "a",
            HostileCondition::B => "b",
            HostileCondition::C => "c",
            HostileCondition::D => "d",
            HostileCondition::E => "e",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HostileVerdict {
    pub ok: bool,
    pub violated: Option<HostileCondition>,
}

/// Checks conditions (a) to (e) in order and reports the first failure.
pub fn verify_hostile(g: &LabeledGraph, h: &HostileConfiguration) -> Result<HostileVerdict> {
    h.check_partition(g.n())?;
    let fail = |c| {
        Ok(HostileVerdict {
            ok: false,
            violated: Some(c),
        })
    };
    if !g.is_clique(&h.k) {
        return fail(HostileCondition::A);
    }
    if !h.r.iter().all(|&r| g.adjacent_to_all(r, &h.k)) {
        return fail(HostileCondition::B);
    }
    if !g.is_independent(&h.y) {
        return fail(HostileCondition::C);
    }
    if h.y.iter().any(|&y| h.r.iter().any(|&r| g.has_edge(y, r))) {
        return fail(HostileCondition::D);
    }
    let mut in_k = vec![false; g.n()];
    for &v in &h.k {
        in_k[v] = true;
    }
    if [h.p, h.q]
        .iter()
        .any(|&s| g.neighbors(s).any(|w| !in_k[w]))
    {
        return fail(HostileCondition::E);
    }
    Ok(HostileVerdict {
        ok: true,
        violated: None,
    })
}
