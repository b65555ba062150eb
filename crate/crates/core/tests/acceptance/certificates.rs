use fullgraphic::constructive::{
    hinge_flip, jms_partition, refine_r, run_case1, run_case2, validate_structure, CaseTag,
    TwistTrace,
};
use fullgraphic::trails::WITNESS_MAX_LEN;
use fullgraphic::{
    certify, find_witness_trail, flip_along_trail, is_fully_graphic, is_graphic, perturb,
    verify_hostile, Certificate, Error, LabeledGraph, Perturbation, SimpleRegion,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::oracle::{graph_from_mask, pairs, rows_from_mask};
use crate::Verdict;

/// Twin pairs `p <= q` whose base sequence `deg - 1_p - 1_q` is
/// non-negative.
fn twin_pairs(n: usize, rows: &[u16], deg: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for p in 0..n {
        for q in p..n {
            let need = if p == q { 2 } else { 1 };
            if rows[p] == rows[q] && deg[p] >= need {
                out.push((p, q));
            }
        }
    }
    out
}

/// Fully-graphic verdicts of every region on `n` vertices, indexed by
/// `(sigma, c1, c2)`.
fn fully_graphic_table(n: usize) -> Vec<bool> {
    let mut t = vec![false; (n * n + 1) * n * n];
    for c1 in 0..n {
        for c2 in 0..=c1 {
            let mut sigma = n * c2 + (n * c2) % 2;
            while sigma <= n * c1 {
                let r = SimpleRegion::new(n, sigma, c1, c2).unwrap();
                t[(sigma * n + c1) * n + c2] = is_fully_graphic(&r).unwrap();
                sigma += 2;
            }
        }
    }
    t
}

fn witness_ok(cert: &Certificate, p: usize, q: usize) -> bool {
    matches!(cert, Certificate::WitnessTrail(t)
        if t.is_witness(WITNESS_MAX_LEN) && t.start() == p && t.end() == q)
}

pub fn c6_witness_sweep() -> Verdict {
    let mut calls = 0u64;
    for n in 1..=7 {
        let prs = pairs(n);
        let fully = fully_graphic_table(n);
        let res: Result<u64, String> = (0u64..1 << prs.len())
            .into_par_iter()
            .map(|mask| {
                let rows = rows_from_mask(n, &prs, mask);
                let deg: Vec<usize> = rows[..n].iter().map(|r| r.count_ones() as usize).collect();
                let mut g: Option<LabeledGraph> = None;
                let mut local = 0u64;
                for (p, q) in twin_pairs(n, &rows, &deg) {
                    let mut d = deg.clone();
                    d[p] -= 1;
                    d[q] -= 1;
                    let sigma: usize = d.iter().sum();
                    let (c1, c2) = (*d.iter().max().unwrap(), *d.iter().min().unwrap());
                    if !fully[(sigma * n + c1) * n + c2] {
                        continue;
                    }
                    // The smallest region holding d; any fully graphic region
                    // holding d contains it.
                    let region = SimpleRegion { n, sigma, c1, c2 };
                    let g = g.get_or_insert_with(|| graph_from_mask(n, &prs, mask));
                    match certify(g, p, q, &region) {
                        Ok(c) if witness_ok(&c, p, q) => local += 1,
                        Ok(c) => {
                            return Err(format!(
                                "n={n} mask={mask:#x} p={p} q={q}: {} certificate",
                                c.kind()
                            ))
                        }
                        Err(e) => return Err(format!("n={n} mask={mask:#x} p={p} q={q}: {e}")),
                    }
                }
                Ok(local)
            })
            .try_reduce(|| 0, |a, b| Ok(a + b));
        calls += res?;
    }
    Ok(format!("{calls} certify calls, all witness trails"))
}

fn add(g: &mut LabeledGraph, a: usize, b: usize) {
    if a != b && !g.has_edge(a, b) {
        g.add_edge(a, b).unwrap();
    }
}

/// Twins over a planted clique/independent-set structure, so that short
/// witness trails are often missing. Labels: `p = 0`, `q = 1` (or `q = 0`).
fn planted(rng: &mut ChaCha8Rng, n: usize, same: bool) -> (LabeledGraph, usize, usize) {
    let s = if same { 1 } else { 2 };
    let x = rng.random_range(1..=(n - s).min(4));
    let mut blocks = Vec::new(); // 0 = Z, 1 = Y, 2 = R
    for _ in s + x..n {
        blocks.push(rng.random_range(0..3u8));
    }
    if x < 2 {
        for b in blocks.iter_mut().filter(|b| **b == 1) {
            *b = 2;
        }
    }
    let xs: Vec<usize> = (s..s + x).collect();
    let ids = |t: u8| -> Vec<usize> {
        blocks
            .iter()
            .enumerate()
            .filter(|(_, &b)| b == t)
            .map(|(k, _)| s + x + k)
            .collect()
    };
    let (mut zs, ys, mut rs) = (ids(0), ids(1), ids(2));
    if ys.is_empty() {
        rs.append(&mut zs);
        rs.sort_unstable();
    }
    let mut g = LabeledGraph::empty(n);
    for v in 0..s {
        for &u in &xs {
            add(&mut g, v, u);
        }
    }
    let k: Vec<usize> = xs.iter().chain(&zs).copied().collect();
    for (a, &u) in k.iter().enumerate() {
        for &w in &k[a + 1..] {
            add(&mut g, u, w);
        }
    }
    for &y in &ys {
        let mut order = xs.clone();
        order.shuffle(rng);
        let keep = rng.random_range(0..=x - 2);
        for &u in &order[..keep] {
            add(&mut g, y, u);
        }
        for &z in &zs {
            if rng.random_bool(0.5) {
                add(&mut g, y, z);
            }
        }
    }
    for &z in &zs {
        if !ys.iter().any(|&y| g.has_edge(y, z)) {
            add(&mut g, z, ys[rng.random_range(0..ys.len())]);
        }
    }
    for &r in &rs {
        let miss = if rng.random_bool(0.3) { Some(xs[rng.random_range(0..x)]) } else { None };
        for &u in &xs {
            if Some(u) != miss {
                add(&mut g, r, u);
            }
        }
        for &z in &zs {
            if rng.random_bool(0.6) {
                add(&mut g, r, z);
            }
        }
    }
    for (a, &u) in rs.iter().enumerate() {
        for &w in &rs[a + 1..] {
            if rng.random_bool(0.2) {
                add(&mut g, u, w);
            }
        }
    }
    (g, 0, if same { 0 } else { 1 })
}

fn random_twins(rng: &mut ChaCha8Rng, n: usize, same: bool) -> (LabeledGraph, usize, usize) {
    let rho: f64 = rng.random_range(0.15..0.85);
    let mut g = LabeledGraph::empty(n);
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(rho) {
                g.add_edge(i, j).unwrap();
            }
        }
    }
    let q = if same { 0 } else { 1 };
    if !same {
        // Copy v0's neighbourhood onto v1.
        for v in 2..n {
            if g.has_edge(0, v) != g.has_edge(1, v) {
                g.toggle(1, v).unwrap();
            }
        }
        if g.has_edge(0, 1) {
            g.remove_edge(0, 1).unwrap();
        }
    }
    (g, 0, q)
}

fn relabel(rng: &mut ChaCha8Rng, g: &LabeledGraph) -> (LabeledGraph, Vec<usize>) {
    let mut perm: Vec<usize> = (0..g.n()).collect();
    perm.shuffle(rng);
    let edges: Vec<(usize, usize)> = g.edges().iter().map(|&(a, b)| (perm[a], perm[b])).collect();
    (LabeledGraph::from_edges(g.n(), &edges).unwrap(), perm)
}

struct Instance {
    g: LabeledGraph,
    p: usize,
    q: usize,
    region: SimpleRegion,
}

fn instance(rng: &mut ChaCha8Rng) -> Instance {
    loop {
        let n = rng.random_range(4..=9);
        let same = rng.random_bool(0.2);
        let (g, p, q) = if rng.random_bool(0.6) {
            planted(rng, n, same)
        } else {
            random_twins(rng, n, same)
        };
        let Ok(base) = perturb(&g.degrees(), Perturbation::minus(p, q)) else {
            continue;
        };
        let (g, perm) = relabel(rng, &g);
        let (p, q) = {
            let (a, b) = (perm[p], perm[q]);
            (a.min(b), a.max(b))
        };
        let d = base.as_slice();
        let max = *d.iter().max().unwrap();
        let min = *d.iter().min().unwrap();
        let c1 = (max + rng.random_range(0..=1)).min(n - 1);
        let c2 = min - rng.random_range(0..=min.min(1));
        let region = SimpleRegion::new(n, base.sum(), c1, c2).unwrap();
        return Instance { g, p, q, region };
    }
}

fn check_certificate(inst: &Instance, cert: &Certificate) -> Result<(), String> {
    let Instance { g, p, q, region } = inst;
    let (p, q) = (*p, *q);
    let base = perturb(&g.degrees(), Perturbation::minus(p, q)).unwrap();
    match cert {
        Certificate::WitnessTrail(t) => {
            t.validate(g).map_err(|e| e.to_string())?;
            if !t.is_witness(WITNESS_MAX_LEN) || t.start() != p || t.end() != q {
                return Err("trail is not an 11-witness between p and q".into());
            }
            let flipped = flip_along_trail(g, t).map_err(|e| e.to_string())?;
            if flipped.degrees() != base {
                return Err("flipped trail does not realize D".into());
            }
        }
        Certificate::Hostile(h) => {
            if h.trace.replay(g).map_err(|e| e.to_string())? != h.final_graph {
                return Err("trace replay differs".into());
            }
            if !verify_hostile(&h.final_graph, &h.config).map_err(|e| e.to_string())?.ok {
                return Err("final graph is not hostile".into());
            }
            let d_pp = perturb(&h.final_graph.degrees(), Perturbation::minus(p, q)).unwrap();
            if d_pp != h.d_pp || !region.contains(&d_pp) {
                return Err("D'' is not in the region".into());
            }
            if is_graphic(&d_pp).map_err(|e| e.to_string())?.graphic {
                return Err("D'' is graphic".into());
            }
        }
    }
    cert.verify(g, p, q, region).map_err(|e| e.to_string())
}

pub fn c7_soundness() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut witness, mut hostile) = (0, 0);
    for call in 0..1000 {
        let inst = instance(&mut rng);
        let cert = certify(&inst.g, inst.p, inst.q, &inst.region)
            .map_err(|e| format!("call {call}: {e}"))?;
        check_certificate(&inst, &cert).map_err(|e| format!("call {call}: {e}"))?;
        if cert.is_witness() {
            witness += 1;
        } else {
            hostile += 1;
        }
    }
    if witness < 100 || hostile < 100 {
        return Err(format!("outcomes not mixed: {witness} witness, {hostile} hostile"));
    }
    Ok(format!("{witness} witness trails, {hostile} hostile certificates"))
}

#[derive(Default)]
struct TwistStats {
    case1: usize,
    case2: usize,
    steps: usize,
}

fn check_run(g: &LabeledGraph, out: &LabeledGraph, trace: &TwistTrace) -> Result<(), String> {
    if out.edge_count() != g.edge_count() || out.degrees().sum() != g.degrees().sum() {
        return Err("edge count or degree sum changed".into());
    }
    if trace.case_tag == CaseTag::I && trace.steps.len() > g.edge_count() {
        return Err(format!("case I took {} steps with {} edges", trace.steps.len(), g.edge_count()));
    }
    let mut cur = g.clone();
    for s in &trace.steps {
        cur = hinge_flip(&cur, s.x, s.y, s.z).map_err(|e| e.to_string())?;
        if cur.edge_count() != g.edge_count() {
            return Err("a hinge flip changed the edge count".into());
        }
    }
    if cur != *out || trace.replay(g).map_err(|e| e.to_string())? != *out {
        return Err("replay differs from the transformed graph".into());
    }
    if !verify_hostile(out, &trace.hostile).map_err(|e| e.to_string())?.ok {
        return Err("transformed graph is not hostile".into());
    }
    Ok(())
}

/// Runs every applicable case on a twin pair without a witness trail.
fn twist_all(g: &LabeledGraph, p: usize, q: usize, stats: &mut TwistStats) -> Result<(), String> {
    let at = |e: String| format!("{:?} p={p} q={q}: {e}", g.edges());
    let part = jms_partition(g, p, q).map_err(|e| at(e.to_string()))?;
    if let Some(c) = validate_structure(g, &part).violated {
        return Err(at(format!("structure condition {} fails", c.tag())));
    }
    let refined = refine_r(g, &part);
    let mut runs = Vec::new();
    if g.is_independent(&refined.r_n) {
        runs.push(run_case1(g, &part, &refined).map_err(|e| at(e.to_string()))?);
        runs.push(run_case1(g, &part, &refined).map_err(|e| at(e.to_string()))?);
    } else {
        if !matches!(run_case1(g, &part, &refined), Err(Error::CaseMismatch(_))) {
            return Err(at("case I accepted an edge in R_N".into()));
        }
        for (&i, block) in &refined.ri {
            if !g.is_independent(block) {
                runs.push(run_case2(g, &part, &refined, i).map_err(|e| at(e.to_string()))?);
                runs.push(run_case2(g, &part, &refined, i).map_err(|e| at(e.to_string()))?);
            }
        }
    }
    for pair in runs.chunks(2) {
        let ((out, trace), (out2, trace2)) = (&pair[0], &pair[1]);
        if out != out2 || serde_json::to_string(trace).unwrap() != serde_json::to_string(trace2).unwrap() {
            return Err(at("two runs differ".into()));
        }
        check_run(g, out, trace).map_err(at)?;
        match trace.case_tag {
            CaseTag::I => stats.case1 += 1,
            CaseTag::II => stats.case2 += 1,
        }
        stats.steps += trace.steps.len();
    }
    Ok(())
}

pub fn c8_twists() -> Verdict {
    let mut stats = TwistStats::default();
    for n in 2..=6 {
        let prs = pairs(n);
        for mask in 0u64..1 << prs.len() {
            let rows = rows_from_mask(n, &prs, mask);
            let deg: Vec<usize> = rows[..n].iter().map(|r| r.count_ones() as usize).collect();
            let twins = twin_pairs(n, &rows, &deg);
            if twins.is_empty() {
                continue;
            }
            let g = graph_from_mask(n, &prs, mask);
            for (p, q) in twins {
                if find_witness_trail(&g, p, q, WITNESS_MAX_LEN).is_none() {
                    twist_all(&g, p, q, &mut stats)?;
                }
            }
        }
    }
    let exhaustive = (stats.case1, stats.case2);
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..3000 {
        let n = rng.random_range(7..=10);
        let same = rng.random_bool(0.2);
        let (g, p, q) = planted(&mut rng, n, same);
        let need = if same { 2 } else { 1 };
        if g.degree(p) >= need && find_witness_trail(&g, p, q, WITNESS_MAX_LEN).is_none() {
            twist_all(&g, p, q, &mut stats)?;
        }
    }
    if stats.case1 == 0 || stats.case2 == 0 {
        return Err(format!("case I runs {}, case II runs {}", stats.case1, stats.case2));
    }
    Ok(format!(
        "n <= 6 exhaustive: {} case I, {} case II; with planted n = 7..10: {} case I, {} case II, {} hinge flips",
        exhaustive.0, exhaustive.1, stats.case1, stats.case2, stats.steps
    ))
}
