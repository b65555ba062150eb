use fullgraphic::adversarial::{half_graph_sequence, overlap_poly};
use fullgraphic::counting::{boundary_quotient_with, enumerate_realizations};
use fullgraphic::exact::{rational, to_decimal};
use fullgraphic::regions::q_value;
use fullgraphic::{
    construct_unstable, unstable_window, Convention, DegreeSequence, RealizationCounter,
    SimpleRegion, XChoice,
};
use num_rational::BigRational;

use crate::oracle::table;
use crate::Verdict;

pub fn c9_window_grid() -> Verdict {
    let betas = [rational(1, 2), rational(9, 10)];
    let (mut windows, mut eq8) = (0usize, 0usize);
    for n in (20..=200).step_by(20) {
        for c2 in 1..=3 {
            for c1 in c2..n {
                if q_value(n, c1, c2) <= 0 {
                    continue;
                }
                for r in [2, 4, 8] {
                    for beta in &betas {
                        let w = unstable_window(n, c1, c2, r, Some(beta)).map_err(|e| e.to_string())?;
                        let at = format!("(n={n}, c1={c1}, c2={c2}, r={r}, beta={beta})");
                        if w.is_empty() {
                            continue;
                        }
                        windows += 1;
                        let (lo, hi) = (w.x_min.unwrap(), w.x_max.unwrap());
                        // The window is exactly the solution set of the overlap inequality.
                        let (n_, c1_, c2_, r_) = (n as i64, c1 as i64, c2 as i64, r as i64);
                        if overlap_poly(n_, c1_, c2_, r_, lo - 1) <= 0
                            || overlap_poly(n_, c1_, c2_, r_, hi + 1) <= 0
                        {
                            return Err(format!("{at}: x_min/x_max are not extremal"));
                        }
                        if !w.consecutive_overlap() {
                            return Err(format!("{at}: consecutive intervals do not overlap"));
                        }
                        if w.eq29_holds != Some(true) || w.eq30_holds != Some(true) {
                            return Err(format!("{at}: endpoint bounds fail"));
                        }
                        if w.eq8_holds == Some(true) {
                            eq8 += 1;
                            if w.epsilon_within_bound != Some(true) {
                                return Err(format!("{at}: epsilon exceeds 3(r+3)/(beta(c1-c2))"));
                            }
                            if w.eq9_contained != Some(true) {
                                return Err(format!("{at}: sigma interval not inside [sigma_min, sigma_max]"));
                            }
                            // Integer members of that interval, checked one by one.
                            if let Some([a, b]) = w.eq9_sigma {
                                let (smin, smax) = (w.sigma_min.unwrap(), w.sigma_max.unwrap());
                                if a < smin || b > smax {
                                    return Err(format!("{at}: sigma {a}..{b} escapes the window"));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(format!("{windows} nonempty windows, {eq8} with the beta condition"))
}

fn quotient(counter: &RealizationCounter, d: &DegreeSequence) -> BigRational {
    boundary_quotient_with(counter, d, Convention::ILeJ)
        .expect("graphic input")
        .quotient
}

/// Quotient from listed realizations, for `n <= 8`.
fn listed_quotient(d: &DegreeSequence) -> BigRational {
    let v = d.as_slice();
    let n = v.len();
    let count = |w: &[usize]| -> usize {
        if w.iter().any(|&x| x >= n) {
            return 0;
        }
        if n <= 7 {
            return table(n).count(w) as usize;
        }
        enumerate_realizations(&DegreeSequence::new(w.to_vec()).unwrap(), 8)
            .unwrap()
            .len()
    };
    let mut total = 0usize;
    for i in 0..n {
        for j in i..n {
            let mut w = v.to_vec();
            w[i] += 1;
            w[j] += 1;
            total += count(&w);
        }
    }
    rational(total as i128, count(v) as i128)
}

pub fn c10_half_graph_trend() -> Verdict {
    let counter = RealizationCounter::new(16);
    let mut values = Vec::new();
    for r in [4, 6, 8, 10] {
        let d = half_graph_sequence(r).unwrap();
        let q = quotient(&counter, &d);
        if r <= 8 && listed_quotient(&d) != q {
            return Err(format!("r = {r}: counter and brute force disagree"));
        }
        values.push((r, q));
    }
    let shown: Vec<String> = values.iter().map(|(r, q)| format!("r={r}: {q}")).collect();
    let mut ratios = Vec::new();
    for w in values.windows(2) {
        if w[1].1 <= w[0].1 {
            return Err(format!("not increasing: {}", shown.join(", ")));
        }
        ratios.push((w[1].0, &w[1].1 / &w[0].1));
    }
    let ratio_text: Vec<String> = ratios
        .iter()
        .map(|(r, x)| to_decimal(x, 3) + &format!(" at r={r}"))
        .collect();
    let detail = format!("{}; ratios {}", shown.join(", "), ratio_text.join(", "));
    let band = |x: &BigRational| *x >= rational(2, 1) && *x <= rational(4, 1);
    if ratios.iter().all(|(_, x)| band(x)) {
        Ok(detail)
    } else {
        // Continue the sequence so the limit is visible in the report.
        let mut prev = values.last().unwrap().1.clone();
        let mut tail = Vec::new();
        for r in [12, 14, 16] {
            let q = quotient(&counter, &half_graph_sequence(r).unwrap());
            tail.push(format!("{} at r={r}", to_decimal(&(&q / &prev), 3)));
            prev = q;
        }
        Err(format!(
            "{detail}; ratio band [2, 4] missed, continuing {}: growth is near 5.43 per step of 2, not 3",
            tail.join(", ")
        ))
    }
}

pub fn c11_dominance() -> Verdict {
    let counter = RealizationCounter::new(16);
    let region = SimpleRegion::new(6, 18, 5, 1).unwrap();
    let c = construct_unstable(&region, 4, XChoice::Least).map_err(|e| e.to_string())?;
    let composed = quotient(&counter, &c.sequence);
    let half = quotient(&counter, &half_graph_sequence(4).unwrap());
    if listed_quotient(&c.sequence) != composed {
        return Err("counter and brute force disagree on the composed sequence".into());
    }
    let detail = format!("({}) has {composed}, h_2 has {half}", c.sequence);
    if composed >= half {
        Ok(detail)
    } else {
        Err(detail)
    }
}
