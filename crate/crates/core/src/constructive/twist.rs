//! Hinge-flips and the two twist schedules that turn a graph without short
//! witness trails into one carrying a hostile configuration.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::partition::{JmsPartition, RefinedRPartition};
use crate::error::{Error, Result};
use crate::graph::LabeledGraph;
use crate::trails::HostileConfiguration;

/// Deletes the edge `{x, y}` and adds the non-edge `{x, z}`.
pub fn hinge_flip(g: &LabeledGraph, x: usize, y: usize, z: usize) -> Result<LabeledGraph> {
    let mut out = g.clone();
    hinge_flip_in_place(&mut out, x, y, z)?;
    Ok(out)
}

fn hinge_flip_in_place(g: &mut LabeledGraph, x: usize, y: usize, z: usize) -> Result<()> {
    if x == y || y == z || x == z {
        return Err(Error::DegenerateVertices(x, y, z));
    }
    if !g.has_edge(x, y) {
        return Err(Error::NotAnEdge(x, y));
    }
    if g.has_edge(x, z) {
        return Err(Error::AlreadyAnEdge(x, z));
    }
    g.remove_edge(x, y)?;
    g.add_edge(x, z)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Phase {
    /// Case I downward twist.
    Down1,
    /// Case II step 1.
    Uplift,
    /// Case II step 2.
    Down2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HingeStep {
    pub x: usize,
    pub y: usize,
    pub z: usize,
    pub phase: Phase,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseTag {
    I,
    II,
}

/// Rooted spanning tree of one component of `G[R_i]`, edges oriented away
/// from the root in breadth-first order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootedTree {
    pub root: usize,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Case1State {
    /// `R_0` vertices still adjacent to `R_N` after the twists.
    pub r0_0: Vec<usize>,
    pub r0_1: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Case2State {
    /// The `K` vertex whose block carries edges.
    pub i: usize,
    pub r_i0: Vec<usize>,
    pub r_i1: Vec<usize>,
    pub r0_star: Vec<usize>,
    pub rn_star: Vec<usize>,
    pub r_k: Vec<usize>,
    pub trees: Vec<RootedTree>,
}

/// Everything needed to replay a twist schedule and read off the final
/// hostile partition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistTrace {
    pub case_tag: CaseTag,
    pub steps: Vec<HingeStep>,
    pub hostile: HostileConfiguration,
    pub case1_state: Option<Case1State>,
    pub case2_state: Option<Case2State>,
}

impl TwistTrace {
    /// Applies the recorded hinge-flips to `g` in order.
    pub fn replay(&self, g: &LabeledGraph) -> Result<LabeledGraph> {
        let mut out = g.clone();
        for s in &self.steps {
            hinge_flip_in_place(&mut out, s.x, s.y, s.z)?;
        }
        Ok(out)
    }
}

/// Applies the lexicographically least downward twist `(x, y) => (x, z)`
/// with `x != z` in `low`, `y` in `high` until none exists. Every twist
/// removes one edge between `low` and `high`, so the loop is bounded by
/// the initial number of such edges.
fn downward_twists(
    g: &mut LabeledGraph,
    low: &[usize],
    high: &[usize],
    phase: Phase,
    steps: &mut Vec<HingeStep>,
) -> Result<()> {
    let budget = g.edge_count();
    let mut done = 0usize;
    'outer: loop {
        for &x in low {
            for &y in high {
                if x == y || !g.has_edge(x, y) {
                    continue;
                }
                if let Some(&z) = low.iter().find(|&&z| z != x && !g.has_edge(x, z)) {
                    hinge_flip_in_place(g, x, y, z)?;
                    steps.push(HingeStep { x, y, z, phase });
                    done += 1;
                    if done > budget {
                        return Err(Error::InternalInvariantFailure(
                            "downward twists exceeded the edge count".into(),
                        ));
                    }
                    continue 'outer;
                }
            }
        }
        return Ok(());
    }
}

fn neighbours_in(g: &LabeledGraph, v: usize, set: &[usize]) -> bool {
    set.iter().any(|&u| u != v && g.has_edge(v, u))
}

fn difference(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().filter(|v| !b.contains(v)).collect()
}

fn union(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = a.iter().chain(b).copied().collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Case I: `R_N` independent. Twists edges from `R_N` into `R_0`, then
/// splits `R_0` by remaining contact with `R_N`.
pub fn run_case1(
    g: &LabeledGraph,
    part: &JmsPartition,
    refined: &RefinedRPartition,
) -> Result<(LabeledGraph, TwistTrace)> {
    if !g.is_independent(&refined.r_n) {
        return Err(Error::CaseMismatch("R_N contains an edge".into()));
    }
    let mut out = g.clone();
    let mut steps = Vec::new();
    downward_twists(&mut out, &refined.r0, &refined.r_n, Phase::Down1, &mut steps)?;
    let (r0_0, r0_1): (Vec<usize>, Vec<usize>) = refined
        .r0
        .iter()
        .partition(|&&r| neighbours_in(&out, r, &refined.r_n));
    let hostile = HostileConfiguration::new(
        part.p,
        part.q,
        union(&part.k, &r0_0),
        union(&part.y, &refined.r_n),
        r0_1.clone(),
    );
    let trace = TwistTrace {
        case_tag: CaseTag::I,
        steps,
        hostile,
        case1_state: Some(Case1State { r0_0, r0_1 }),
        case2_state: None,
    };
    Ok((out, trace))
}

/// Breadth-first spanning forest of `G[block]`, one tree per component,
/// rooted at the least vertex of each component.
fn bfs_forest(g: &LabeledGraph, block: &[usize]) -> Vec<RootedTree> {
    let mut seen: Vec<bool> = vec![false; g.n()];
    let mut inside = vec![false; g.n()];
    for &v in block {
        inside[v] = true;
    }
    let mut trees = Vec::new();
    for &root in block {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut edges = Vec::new();
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for w in g.neighbors(u) {
                if inside[w] && !seen[w] {
                    seen[w] = true;
                    edges.push((u, w));
                    queue.push_back(w);
                }
            }
        }
        trees.push(RootedTree { root, edges });
    }
    trees
}

/// Case II for the `K` vertex `i` whose block `R_i` carries edges. Step 1
/// replaces every spanning-tree edge `x -> y` by `y v_i`; step 2 repeats the
/// downward twists over `R_0* = R_0 ∪ R_i^0` and `R_N* = R_inf ∪ R_i^1`.
/// Other non-empty `R_j` blocks, which cannot occur without a short witness
/// trail, are placed in `R_N*` so that the transform stays total.
pub fn run_case2(
    g: &LabeledGraph,
    part: &JmsPartition,
    refined: &RefinedRPartition,
    i: usize,
) -> Result<(LabeledGraph, TwistTrace)> {
    let empty = Vec::new();
    let r_i = refined.ri.get(&i).unwrap_or(&empty);
    if g.is_independent(r_i) {
        return Err(Error::CaseMismatch(format!("R_{i} has no edge")));
    }
    let trees = bfs_forest(g, r_i);
    let mut out = g.clone();
    let mut steps = Vec::new();
    for t in &trees {
        for &(x, y) in &t.edges {
            hinge_flip_in_place(&mut out, y, x, i)?;
            steps.push(HingeStep {
                x: y,
                y: x,
                z: i,
                phase: Phase::Uplift,
            });
        }
    }
    let r_i1: Vec<usize> = trees.iter().map(|t| t.root).collect();
    let r_i0 = difference(r_i, &r_i1);
    let r0_star = union(&refined.r0, &r_i0);
    let others: Vec<usize> = refined
        .ri
        .iter()
        .filter(|(&j, _)| j != i)
        .flat_map(|(_, b)| b.iter().copied())
        .collect();
    let rn_star = union(&union(&refined.r_inf, &r_i1), &others);
    downward_twists(&mut out, &r0_star, &rn_star, Phase::Down2, &mut steps)?;
    let r_k: Vec<usize> = r0_star
        .iter()
        .copied()
        .filter(|&r| neighbours_in(&out, r, &rn_star))
        .collect();
    let hostile = HostileConfiguration::new(
        part.p,
        part.q,
        union(&part.k, &r_k),
        union(&part.y, &rn_star),
        difference(&r0_star, &r_k),
    );
    let trace = TwistTrace {
        case_tag: CaseTag::II,
        steps,
        hostile,
        case1_state: None,
        case2_state: Some(Case2State {
            i,
            r_i0,
            r_i1,
            r0_star,
            rn_star,
            r_k,
            trees,
        }),
    };
    Ok((out, trace))
}
