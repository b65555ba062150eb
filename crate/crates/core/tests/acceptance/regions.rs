use fullgraphic::counting::{boundary_quotient_with, enumerate_realizations};
use fullgraphic::exact::rational;
use fullgraphic::regions::{lemma15_window, phi_gs_plus, q_value};
use fullgraphic::sequence::graphic;
use fullgraphic::{
    enumerate_region, is_fully_graphic, is_graphic, Convention, DegreeSequence, LabeledGraph,
    RealizationCounter, SimpleRegion,
};
use num_bigint::BigUint;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::oracle::{for_each_vector, table};
use crate::Verdict;

pub fn c1_graphicality() -> Verdict {
    let mut checked = 0usize;
    for n in 1..=7 {
        let t = table(n);
        let mut bad = None;
        for_each_vector(n, n - 1, |v| {
            if bad.is_some() || v.iter().sum::<usize>() % 2 == 1 {
                return;
            }
            let d = DegreeSequence::new(v.to_vec()).unwrap();
            let got = is_graphic(&d).unwrap().graphic;
            if got != (t.count(v) > 0) {
                bad = Some(v.to_vec());
            }
            checked += 1;
        });
        if let Some(v) = bad {
            return Err(format!("is_graphic disagrees with exhaustive search on {v:?}"));
        }
    }
    Ok(format!("{checked} sequences"))
}

fn random_sequence(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    if rng.random_bool(0.5) {
        // Degrees of a random graph, so most draws have realizations.
        let p: f64 = rng.random_range(0.2..0.8);
        let mut g = LabeledGraph::empty(n);
        for i in 0..n {
            for j in i + 1..n {
                if rng.random_bool(p) {
                    g.add_edge(i, j).unwrap();
                }
            }
        }
        g.degree_vec()
    } else {
        let mut v: Vec<usize> = (0..n).map(|_| rng.random_range(0..n)).collect();
        if v.iter().sum::<usize>() % 2 == 1 {
            let k = rng.random_range(0..n);
            v[k] = if v[k] == 0 { 1 } else { v[k] - 1 };
        }
        v
    }
}

pub fn c2_counting() -> Verdict {
    let counter = RealizationCounter::new(16);
    let mut full = 0usize;
    for n in 1..=6 {
        let t = table(n);
        let mut bad = None;
        for_each_vector(n, n - 1, |v| {
            if bad.is_some() || v.iter().sum::<usize>() % 2 == 1 {
                return;
            }
            let d = DegreeSequence::new(v.to_vec()).unwrap();
            let counted = counter.count(&d).unwrap();
            let listed = enumerate_realizations(&d, 8).unwrap().len();
            if counted != BigUint::from(listed) || listed != t.count(v) as usize {
                bad = Some((v.to_vec(), counted.to_string(), listed));
            }
            full += 1;
        });
        if let Some((v, c, l)) = bad {
            return Err(format!("{v:?}: count {c}, enumeration {l}"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut nonzero = 0;
    for k in 0..500 {
        let n = if k % 2 == 0 { 7 } else { 8 };
        let v = random_sequence(&mut rng, n);
        let d = DegreeSequence::new(v.clone()).unwrap();
        let counted = counter.count(&d).unwrap();
        let listed = enumerate_realizations(&d, 8).unwrap().len();
        if counted != BigUint::from(listed) || (n == 7 && listed != table(7).count(&v) as usize) {
            return Err(format!("{v:?}: count {counted}, enumeration {listed}"));
        }
        nonzero += usize::from(listed > 0);
    }
    Ok(format!("{full} sequences with n <= 6, 500 random at n = 7, 8 ({nonzero} realizable)"))
}

/// `sum |G(D + 1_i + 1_j)| / |G(D)|` from the exhaustive tables.
fn brute_quotient(v: &[usize], strict: bool) -> BigRational {
    let t = table(v.len());
    let base = t.count(v);
    let mut total = 0u64;
    for i in 0..v.len() {
        for j in i..v.len() {
            if strict && i == j {
                continue;
            }
            let mut w = v.to_vec();
            w[i] += 1;
            w[j] += 1;
            total += u64::from(t.count(&w));
        }
    }
    rational(total as i128, base as i128)
}

pub fn c3_boundary() -> Verdict {
    let counter = RealizationCounter::new(16);
    let cases: [(&[usize], Convention, BigRational); 6] = [
        (&[1, 1, 1, 1], Convention::ILtJ, rational(4, 1)),
        (&[1, 1, 1, 1], Convention::ILeJ, rational(16, 3)),
        (&[1, 1], Convention::ILtJ, rational(0, 1)),
        (&[1, 1], Convention::ILeJ, rational(0, 1)),
        (&[2, 2, 2], Convention::ILtJ, rational(0, 1)),
        (&[2, 2, 2], Convention::ILeJ, rational(0, 1)),
    ];
    for (v, conv, want) in cases {
        let d = DegreeSequence::new(v.to_vec()).unwrap();
        let got = boundary_quotient_with(&counter, &d, conv).unwrap().quotient;
        let oracle = brute_quotient(v, conv == Convention::ILtJ);
        if got != want || oracle != want {
            return Err(format!(
                "{v:?} {}: got {got}, oracle {oracle}, expected {want}",
                conv.name()
            ));
        }
    }
    Ok("6 exact values".into())
}

/// Every region with `n <= max_n`, with the verdict of the exhaustive
/// member check.
fn region_sweep(max_n: usize) -> Result<Vec<(SimpleRegion, bool)>, String> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for c1 in 0..n {
            for c2 in 0..=c1 {
                let mut sigma = n * c2 + (n * c2) % 2;
                while sigma <= n * c1 {
                    let r = SimpleRegion::new(n, sigma, c1, c2).unwrap();
                    let members = enumerate_region(&r, 12).map_err(|e| e.to_string())?;
                    let all = members.iter().all(|d| graphic(d.as_slice()));
                    if is_fully_graphic(&r).unwrap() != all {
                        return Err(format!("region {r}: LEG test disagrees with members"));
                    }
                    out.push((r, all));
                    sigma += 2;
                }
            }
        }
    }
    Ok(out)
}

pub fn c4_fully_graphic() -> Verdict {
    let sweep = region_sweep(7)?;
    let bad = sweep.iter().filter(|(_, f)| !f).count();
    Ok(format!("{} regions, {bad} not fully graphic", sweep.len()))
}

pub fn c5_window() -> Verdict {
    let sweep = region_sweep(7)?;
    let mut seen = 0;
    for (r, fully) in sweep {
        if fully {
            continue;
        }
        seen += 1;
        let q = q_value(r.n, r.c1, r.c2);
        if q <= 0 || !lemma15_window(r.n, r.c1, r.c2).contains(r.sigma) {
            return Err(format!("region {r} is not fully graphic but Q = {q} or sigma is outside the window"));
        }
    }
    Ok(format!("{seen} non-fully-graphic regions checked"))
}

pub fn c13_gs_plus() -> Verdict {
    let eps = rational(1, 2);
    let mut hits = 0;
    for n in 1..=8 {
        for c1 in 0..n {
            for c2 in 0..=c1 {
                let mut sigma = n * c2 + (n * c2) % 2;
                while sigma <= n * c1 {
                    let r = SimpleRegion::new(n, sigma, c1, c2).unwrap();
                    sigma += 2;
                    if !phi_gs_plus(&r, &eps).unwrap() {
                        continue;
                    }
                    hits += 1;
                    let members = enumerate_region(&r, 12).map_err(|e| e.to_string())?;
                    let all = members.iter().all(|d| graphic(d.as_slice()));
                    if !all || !is_fully_graphic(&r).unwrap() {
                        return Err(format!("region {r} satisfies GS+ but is not fully graphic"));
                    }
                }
            }
        }
    }
    if hits == 0 {
        return Err("no region satisfies GS+".into());
    }
    Ok(format!("{hits} GS+ regions, all fully graphic"))
}
