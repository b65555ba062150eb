//! The `S, X, Y, Z, R, K` partition around two twin vertices, its
//! refinement of `R`, and the structural checks that hold when no short
//! witness trail exists.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::LabeledGraph;

/// Disjoint blocks around `v_p`, `v_q` with `Γ(v_p) = Γ(v_q)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JmsPartition {
    pub p: usize,
    pub q: usize,
    pub s: Vec<usize>,
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub z: Vec<usize>,
    pub r: Vec<usize>,
    /// `X ∪ Z`, sorted.
    pub k: Vec<usize>,
}

/// `X = Γ(v_p)`, `Y` = vertices outside `S ∪ X` missing at least two of
/// `X`, `Z = Γ(Y) \ (S ∪ X ∪ Y)`, `K = X ∪ Z`, `R` = the rest.
pub fn jms_partition(g: &LabeledGraph, p: usize, q: usize) -> Result<JmsPartition> {
    let n = g.n();
    for v in [p, q] {
        if v >= n {
            return Err(Error::VertexOutOfRange { index: v, n });
        }
    }
    let x: Vec<usize> = g.neighbors(p).collect();
    if !g.neighbors(q).eq(x.iter().copied()) {
        return Err(Error::NeighborhoodsDiffer { p, q });
    }
    let mut block = vec![0u8; n];
    const S: u8 = 1;
    const X: u8 = 2;
    const Y: u8 = 3;
    const Z: u8 = 4;
    block[p] = S;
    block[q] = S;
    for &v in &x {
        block[v] = X;
    }
    for (v, b) in block.iter_mut().enumerate() {
        if *b == 0 && x.iter().filter(|&&u| !g.has_edge(v, u)).count() >= 2 {
            *b = Y;
        }
    }
    for v in 0..n {
        if block[v] == 0 && g.neighbors(v).any(|u| block[u] == Y) {
            block[v] = Z;
        }
    }
    let collect = |b: u8| -> Vec<usize> { (0..n).filter(|&v| block[v] == b).collect() };
    let z = collect(Z);
    let mut k: Vec<usize> = x.iter().chain(z.iter()).copied().collect();
    k.sort_unstable();
    Ok(JmsPartition {
        p,
        q,
        s: collect(S),
        x,
        y: collect(Y),
        z,
        r: collect(0),
        k,
    })
}

/// Classification of `R` by how many vertices of `K` each misses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefinedRPartition {
    pub r0: Vec<usize>,
    /// Keyed by the missed `K` vertex.
    pub ri: BTreeMap<usize, Vec<usize>>,
    pub r_inf: Vec<usize>,
    /// Union of every `R_i` and `R_inf`, sorted.
    pub r_n: Vec<usize>,
}

pub fn refine_r(g: &LabeledGraph, part: &JmsPartition) -> RefinedRPartition {
    let mut r0 = Vec::new();
    let mut ri: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut r_inf = Vec::new();
    for &v in &part.r {
        let missing: Vec<usize> = part
            .k
            .iter()
            .copied()
            .filter(|&u| !g.has_edge(v, u))
            .collect();
        match missing.len() {
            0 => r0.push(v),
            1 => ri.entry(missing[0]).or_default().push(v),
            _ => r_inf.push(v),
        }
    }
    let mut r_n: Vec<usize> = ri.values().flatten().chain(r_inf.iter()).copied().collect();
    r_n.sort_unstable();
    RefinedRPartition {
        r0,
        ri,
        r_inf,
        r_n,
    }
}

/// Structural properties checked by [`validate_structure`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StructureCondition {
    /// `v_p v_q` is a non-edge.
    #[serde(rename = "i")]
    TwinsNonAdjacent,
    /// `Y` is independent.
    #[serde(rename = "ii")]
    YIndependent,
    /// `K` is a clique.
    #[serde(rename = "iii")]
    KClique,
    /// No edge between `Y` and `R`.
    #[serde(rename = "iv")]
    YRDetached,
    /// Every `r ∈ R` misses at most one vertex of `X`.
    #[serde(rename = "v")]
    RNearlyJoinedToX,
    /// `R_inf` is independent.
    #[serde(rename = "r_inf_independent")]
    RInfIndependent,
    /// No edge between distinct blocks among the `R_i` and `R_inf`.
    #[serde(rename = "ri_rj_detached")]
    BlocksDetached,
}

impl StructureCondition {
    pub fn tag(self) -> &'static str {
        match self {
            StructureCondition::TwinsNonAdjacent => "i",
            StructureCondition::YIndependent => "ii",
            StructureCondition::KClique => "iii",
            StructureCondition::YRDetached => "iv",
            StructureCondition::RNearlyJoinedToX => "v",
            StructureCondition::RInfIndependent => "r_inf_independent",
            StructureCondition::BlocksDetached => "ri_rj_detached",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureVerdict {
    pub ok: bool,
    pub violated: Option<StructureCondition>,
}

/// Checks (i) to (v) on `part`, then independence of `R_inf` and the
/// absence of edges between different refined blocks. A checker only: the
/// properties are guaranteed when no short witness trail exists.
pub fn validate_structure(g: &LabeledGraph, part: &JmsPartition) -> StructureVerdict {
    let fail = |c| StructureVerdict {
        ok: false,
        violated: Some(c),
    };
    if part.p != part.q && g.has_edge(part.p, part.q) {
        return fail(StructureCondition::TwinsNonAdjacent);
    }
    if !g.is_independent(&part.y) {
        return fail(StructureCondition::YIndependent);
    }
    if !g.is_clique(&part.k) {
        return fail(StructureCondition::KClique);
    }
    if part
        .y
        .iter()
        .any(|&y| part.r.iter().any(|&r| g.has_edge(y, r)))
    {
        return fail(StructureCondition::YRDetached);
    }
    if part
        .r
        .iter()
        .any(|&r| part.x.iter().filter(|&&u| !g.has_edge(r, u)).count() > 1)
    {
        return fail(StructureCondition::RNearlyJoinedToX);
    }
    let refined = refine_r(g, part);
    if !g.is_independent(&refined.r_inf) {
        return fail(StructureCondition::RInfIndependent);
    }
    let mut label: BTreeMap<usize, Option<usize>> = BTreeMap::new();
    for (&i, block) in &refined.ri {
        for &v in block {
            label.insert(v, Some(i));
        }
    }
    for &v in &refined.r_inf {
        label.insert(v, None);
    }
    for (&a, la) in &label {
        for (&b, lb) in label.range(a + 1..) {
            if la != lb && g.has_edge(a, b) {
                return fail(StructureCondition::BlocksDetached);
            }
        }
    }
    StructureVerdict {
        ok: true,
        violated: None,
    }
}
