//! The switch Markov chain on realizations of a fixed degree sequence.
//!
//! A proposal picks an ordered pair of distinct edges `(a, b)`, `(c, d)`
//! and one of the two rewirings `{ac, bd}` or `{ad, bc}`, uniformly. It is
//! applied when the four endpoints are distinct and neither new pair is
//! already an edge; otherwise the chain holds. The kernel is symmetric, so
//! the uniform distribution on realizations is stationary.
//!
//! Randomness comes from `ChaCha8Rng` seeded with `seed_from_u64`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::counting::enumerate_realizations;
use crate::error::{Error, Result};
use crate::exact::to_f64;
use crate::graph::LabeledGraph;
use crate::sequence::{havel_hakimi, is_graphic, DegreeSequence};

/// Largest `n` for which the exact total-variation distance is computed.
pub const EXACT_TV_LIMIT: usize = 8;

pub struct ChainState {
    graph: LabeledGraph,
    edges: Vec<(usize, usize)>,
    rng: ChaCha8Rng,
    pub steps_taken: u64,
    pub proposals_rejected: u64,
}

impl ChainState {
    pub fn new(graph: LabeledGraph, seed: u64) -> Result<Self> {
        let edges = graph.edges();
        if edges.len() < 2 {
            return Err(Error::TooFewEdges(edges.len()));
        }
        Ok(ChainState {
            graph,
            edges,
            rng: ChaCha8Rng::seed_from_u64(seed),
            steps_taken: 0,
            proposals_rejected: 0,
        })
    }

    pub fn graph(&self) -> &LabeledGraph {
        &self.graph
    }

    pub fn into_graph(self) -> LabeledGraph {
        self.graph
    }
}

fn ordered(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// One proposal. Returns whether it was accepted.
pub fn switch_step(state: &mut ChainState) -> bool {
    let m = state.edges.len();
    let i = state.rng.random_range(0..m);
    let mut j = state.rng.random_range(0..m - 1);
    if j >= i {
        j += 1;
    }
    let flip = state.rng.random_bool(0.5);
    state.steps_taken += 1;

    let (a, b) = state.edges[i];
    let (c, d) = state.edges[j];
    let (u, v) = if flip { (d, c) } else { (c, d) };
    // New pairs: a-u and b-v.
    let distinct = a != u && a != v && b != u && b != v;
    if !distinct || state.graph.has_edge(a, u) || state.graph.has_edge(b, v) {
        state.proposals_rejected += 1;
        return false;
    }
    let g = &mut state.graph;
    g.remove_edge(a, b).expect("tracked edge");
    g.remove_edge(c, d).expect("tracked edge");
    g.add_edge(a, u).expect("checked absent");
    g.add_edge(b, v).expect("checked absent");
    state.edges[i] = ordered(a, u);
    state.edges[j] = ordered(b, v);
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainConfig {
    pub seed: u64,
    pub steps: u64,
    pub thin: u64,
    pub burn_in: u64,
    pub record_trace: bool,
}

impl Default for ChainConfig {
    fn default() -> Self {
        ChainConfig {
            seed: 1,
            steps: 100_000,
            thin: 1,
            burn_in: 1_000,
            record_trace: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MixingReport {
    pub sequence: DegreeSequence,
    pub config: ChainConfig,
    /// Keyed by [`LabeledGraph::canonical_key`].
    pub visit_counts: BTreeMap<String, u64>,
    pub total_samples: u64,
    pub accepted: u64,
    pub rejected: u64,
    /// Size of the realization set, when enumerated.
    pub realizations: Option<usize>,
    #[serde(serialize_with = "crate::exact::opt_ratio_str::serialize")]
    pub tv_distance: Option<BigRational>,
    pub tv_distance_f64: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<(u64, String)>>,
}

/// `(1/2) Σ_g |count(g)/N - 1/K|` over all `K` realizations of `d`.
pub fn tv_distance(d: &DegreeSequence, counts: &BTreeMap<String, u64>) -> Result<(BigRational, usize)> {
    if d.len() > EXACT_TV_LIMIT {
        return Err(Error::TooLargeForExactTv {
            n: d.len(),
            limit: EXACT_TV_LIMIT,
        });
    }
    let all = enumerate_realizations(d, EXACT_TV_LIMIT)?;
    let k = all.len() as u64;
    let total: u64 = counts.values().sum();
    if k == 0 || total == 0 {
        return Err(Error::PreconditionViolated("no samples or no realizations".into()));
    }
    let mut known = 0u64;
    let mut acc = BigInt::from(0);
    for g in &all {
        let c = counts.get(&g.canonical_key()).copied().unwrap_or(0);
        known += c;
        acc += (BigInt::from(k) * BigInt::from(c) - BigInt::from(total)).abs();
    }
    if known != total {
        return Err(Error::InternalInvariantFailure(
            "chain visited a graph outside the realization set".into(),
        ));
    }
    let tv = BigRational::new(acc, BigInt::from(2u64 * k) * total);
    Ok((tv, all.len()))
}

/// Runs `burn_in + steps` proposals from the Havel–Hakimi realization,
/// recording every `thin`-th post-burn-in state.
pub fn run_chain(d: &DegreeSequence, config: &ChainConfig) -> Result<MixingReport> {
    if config.thin == 0 {
        return Err(Error::PreconditionViolated("thin must be positive".into()));
    }
    if !is_graphic(d)?.graphic {
        return Err(Error::NotGraphic);
    }
    let start = havel_hakimi(d).ok_or(Error::NotGraphic)?;
    let target = start.degree_vec();
    let mut state = ChainState::new(start, config.seed)?;
    for _ in 0..config.burn_in {
        switch_step(&mut state);
    }
    let mut counts: BTreeMap<String, u64> = BTreeMap::new();
    let mut trace = config.record_trace.then(Vec::new);
    let mut samples = 0u64;
    for t in 1..=config.steps {
        switch_step(&mut state);
        if t % config.thin == 0 {
            if state.graph.degree_vec() != target {
                return Err(Error::InternalInvariantFailure(
                    "switch step changed the degree sequence".into(),
                ));
            }
            let key = state.graph.canonical_key();
            if let Some(tr) = trace.as_mut() {
                tr.push((samples, key.clone()));
            }
            *counts.entry(key).or_default() += 1;
            samples += 1;
        }
    }
    let (tv, realizations) = match tv_distance(d, &counts) {
        Ok((tv, k)) => (Some(tv), Some(k)),
        Err(Error::TooLargeForExactTv { .. }) => (None, None),
        Err(e) => return Err(e),
    };
    Ok(MixingReport {
        sequence: d.clone(),
        config: *config,
        visit_counts: counts,
        total_samples: samples,
        accepted: state.steps_taken - state.proposals_rejected,
        rejected: state.proposals_rejected,
        realizations,
        tv_distance_f64: tv.as_ref().map(to_f64),
        tv_distance: tv,
        trace,
    })
}

/// Independent chains, one per seed, returned in seed order.
pub fn run_chains(d: &DegreeSequence, config: &ChainConfig, seeds: &[u64]) -> Result<Vec<MixingReport>> {
    let mut seeds = seeds.to_vec();
    seeds.sort_unstable();
    seeds
        .par_iter()
        .map(|&seed| run_chain(d, &ChainConfig { seed, ..*config }))
        .collect()
}
