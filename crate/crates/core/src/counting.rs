//! Exact enumeration and counting of labelled realizations, and the
//! boundary quotient `d++(D)`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::to_decimal;
use crate::graph::LabeledGraph;
use crate::sequence::{graphic, perturb, DegreeSequence, Perturbation};

/// Default limit on `n` for [`enumerate_realizations`].
pub const DEFAULT_ENUMERATION_GUARD: usize = 8;
/// Default limit on `n` for the memoized counter.
pub const DEFAULT_COUNT_LIMIT: usize = 16;

/// Calls `f` on every labelled simple graph whose positional degree vector
/// equals `d`, in lexicographic order of sorted edge lists.
pub fn for_each_realization<F>(d: &DegreeSequence, guard: usize, mut f: F) -> Result<()>
where
    F: FnMut(&LabeledGraph),
{
    let n = d.len();
    if n > guard {
        return Err(Error::TooLarge {
            what: "n",
            got: n,
            limit: guard,
        });
    }
    if !graphic(d.as_slice()) {
        return Ok(());
    }
    let mut residual = d.as_slice().to_vec();
    let mut g = LabeledGraph::empty(n);
    realize_from(0, 1, &mut residual, &mut g, &mut f);
    Ok(())
}

/// Decides pairs `(i, j)` in lexicographic order, trying "edge" before
/// "non-edge" so graphs come out sorted by edge list.
fn realize_from<F>(i: usize, j: usize, residual: &mut [usize], g: &mut LabeledGraph, f: &mut F)
where
    F: FnMut(&LabeledGraph),
{
    let n = residual.len();
    if i + 1 >= n {
        if residual.iter().all(|&r| r == 0) {
            f(g);
        }
        return;
    }
    if j == n {
        if residual[i] != 0 {
            return;
        }
        // Vertices i+1.. form an independent subproblem.
        if !graphic(&residual[i + 1..]) {
            return;
        }
        realize_from(i + 1, i + 2, residual, g, f);
        return;
    }
    if residual[i] > 0 && residual[j] > 0 {
        residual[i] -= 1;
        residual[j] -= 1;
        g.add_edge(i, j).expect("pair undecided so far");
        realize_from(i, j + 1, residual, g, f);
        g.remove_edge(i, j).expect("just added");
        residual[i] += 1;
        residual[j] += 1;
    }
    // Non-edge at (i, j): i must still fit its residual into j+1..n.
    if residual[i] < n - j {
        realize_from(i, j + 1, residual, g, f);
    }
}

/// All realizations of `d`, sorted by edge list. Empty iff `d` is not
/// graphic.
pub fn enumerate_realizations(d: &DegreeSequence, guard: usize) -> Result<Vec<LabeledGraph>> {
    let mut out = Vec::new();
    for_each_realization(d, guard, |g| out.push(g.clone()))?;
    Ok(out)
}

/// Memoized exact counter for `|G(D)|`.
///
/// Labelled counts depend only on the multiset of degrees, so the table is
/// keyed by the non-increasing vector of non-zero residual degrees. The
/// table is shared behind a mutex and may be used from many threads.
pub struct RealizationCounter {
    limit: usize,
    memo: Mutex<HashMap<Vec<usize>, BigUint>>,
}

impl Default for RealizationCounter {
    fn default() -> Self {
        RealizationCounter::new(DEFAULT_COUNT_LIMIT)
    }
}

impl RealizationCounter {
    pub fn new(limit: usize) -> Self {
        RealizationCounter {
            limit,
            memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    pub fn cached_entries(&self) -> usize {
        self.memo.lock().expect("memo poisoned").len()
    }

    pub fn count(&self, d: &DegreeSequence) -> Result<BigUint> {
        if d.len() > self.limit {
            return Err(Error::TooLarge {
                what: "n",
                got: d.len(),
                limit: self.limit,
            });
        }
        if d.sum() % 2 == 1 {
            return Ok(BigUint::zero());
        }
        let mut key: Vec<usize> = d.as_slice().iter().copied().filter(|&x| x > 0).collect();
        key.sort_unstable_by(|a, b| b.cmp(a));
        Ok(self.count_sorted(key))
    }

    fn count_sorted(&self, s: Vec<usize>) -> BigUint {
        if s.is_empty() {
            return BigUint::one();
        }
        if !graphic(&s) {
            return BigUint::zero();
        }
        if let Some(v) = self.memo.lock().expect("memo poisoned").get(&s) {
            return v.clone();
        }
        let value = self.expand(&s);
        self.memo
            .lock()
            .expect("memo poisoned")
            .insert(s, value.clone());
        value
    }

    /// Removes the first (maximum-degree) vertex, choosing how many
    /// neighbours to take from each class of equal residual degree.
    fn expand(&self, s: &[usize]) -> BigUint {
        let need = s[0];
        let rest = &s[1..];
        let mut groups: Vec<(usize, usize)> = Vec::new();
        for &x in rest {
            match groups.last_mut() {
                Some((val, mult)) if *val == x => *mult += 1,
                _ => groups.push((x, 1)),
            }
        }
        let mut total = BigUint::zero();
        let mut picks = vec![0usize; groups.len()];
        self.distribute(&groups, 0, need, &mut picks, &mut total);
        total
    }

    fn distribute(
        &self,
        groups: &[(usize, usize)],
        idx: usize,
        need: usize,
        picks: &mut Vec<usize>,
        total: &mut BigUint,
    ) {
        if idx == groups.len() {
            if need != 0 {
                return;
            }
            let mut coeff = BigUint::one();
            let mut residual = Vec::new();
            for (&(val, mult), &c) in groups.iter().zip(picks.iter()) {
                coeff *= binomial(mult, c);
                residual.extend(std::iter::repeat_n(val - 1, c));
                residual.extend(std::iter::repeat_n(val, mult - c));
            }
            residual.retain(|&x| x > 0);
            residual.sort_unstable_by(|a, b| b.cmp(a));
            let sub = self.count_sorted(residual);
            if !sub.is_zero() {
                *total += coeff * sub;
            }
            return;
        }
        let remaining_capacity: usize = groups[idx + 1..].iter().map(|g| g.1).sum();
        let (_, mult) = groups[idx];
        for c in 0..=mult.min(need) {
            if need - c > remaining_capacity {
                continue;
            }
            picks[idx] = c;
            self.distribute(groups, idx + 1, need - c, picks, total);
        }
        picks[idx] = 0;
    }
}

fn binomial(n: usize, k: usize) -> BigUint {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for t in 0..k {
        acc = acc * (n - t) as u128 / (t + 1) as u128;
    }
    BigUint::from(acc)
}

/// `|G(d)|` with a fresh memo table and the default size limit.
pub fn count_realizations(d: &DegreeSequence) -> Result<BigUint> {
    RealizationCounter::default().count(d)
}

/// Which index pairs the boundary quotient sums over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum Convention {
    /// `1 <= i <= j <= n`: diagonal perturbations included.
    #[default]
    #[serde(rename = "i_le_j")]
    ILeJ,
    /// `1 <= i < j <= n`.
    #[serde(rename = "i_lt_j")]
    ILtJ,
}

impl Convention {
    pub fn pairs(self, n: usize) -> Vec<(usize, usize)> {
        let strict = matches!(self, Convention::ILtJ);
        (0..n)
            .flat_map(|i| {
                let start = if strict { i + 1 } else { i };
                (start..n).map(move |j| (i, j))
            })
            .collect()
    }

    pub fn name(self) -> &'static str {
        match self {
            Convention::ILeJ => "i_le_j",
            Convention::ILtJ => "i_lt_j",
        }
    }
}

/// Exact `d++(D)` with its per-pair terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryReport {
    pub sequence: DegreeSequence,
    pub quotient: BigRational,
    pub convention: Convention,
    pub terms: BTreeMap<(usize, usize), BigUint>,
    pub base_count: BigUint,
}

impl BoundaryReport {
    pub fn term_sum(&self) -> BigUint {
        self.terms.values().sum()
    }
}

#[derive(Serialize)]
struct TermJson {
    i: usize,
    j: usize,
    count: String,
}

#[derive(Serialize)]
struct BoundaryJson<'a> {
    sequence: &'a DegreeSequence,
    convention: Convention,
    quotient: String,
    numerator: String,
    denominator: String,
    base_count: String,
    terms: Vec<TermJson>,
}

impl Serialize for BoundaryReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BoundaryJson {
            sequence: &self.sequence,
            convention: self.convention,
            quotient: to_decimal(&self.quotient, 12),
            numerator: self.quotient.numer().to_string(),
            denominator: self.quotient.denom().to_string(),
            base_count: self.base_count.to_string(),
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| TermJson {
                    i,
                    j,
                    count: c.to_string(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

/// `sum over pairs of |G(D + 1^{+i,+j})| / |G(D)|`, exact. Perturbed
/// sequences with an entry above `n - 1` contribute zero. Terms are
/// evaluated in parallel and assembled in `(i, j)` order.
pub fn boundary_quotient_with(
    counter: &RealizationCounter,
    d: &DegreeSequence,
    convention: Convention,
) -> Result<BoundaryReport> {
    let base_count = counter.count(d)?;
    if base_count.is_zero() {
        return Err(Error::NotGraphic);
    }
    let pairs = convention.pairs(d.len());
    let counts: Result<Vec<BigUint>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let up = perturb(d, Perturbation::plus(i, j))?;
            counter.count(&up)
        })
        .collect();
    let terms: BTreeMap<(usize, usize), BigUint> = pairs.into_iter().zip(counts?).collect();
    let sum: BigUint = terms.values().sum();
    let quotient = BigRational::new(BigInt::from(sum), BigInt::from(base_count.clone()));
    Ok(BoundaryReport {
        sequence: d.clone(),
        quotient,
        convention,
        terms,
        base_count,
    })
}

pub fn boundary_quotient(d: &DegreeSequence, convention: Convention) -> Result<BoundaryReport> {
    boundary_quotient_with(&RealizationCounter::default(), d, convention)
}
