//! Degree sequences, perturbations and the Erdős–Gallai graphicality test.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::LabeledGraph;

/// A positional degree vector: vertex `i` has degree `degrees[i]`.
///
/// Zero degrees are allowed. Entries larger than `n - 1` are representable
/// (they simply make the sequence non-graphic). Sorting is never implicit.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct DegreeSequence(Vec<usize>);

impl DegreeSequence {
    pub fn new(degrees: Vec<usize>) -> Result<Self> {
        if degrees.is_empty() {
            return Err(Error::EmptySequence);
        }
        Ok(DegreeSequence(degrees))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false; kept for API symmetry with slices.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    pub fn sum(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn max_degree(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.0.iter().copied().min().unwrap_or(0)
    }

    /// Non-increasing copy.
    pub fn sorted_desc(&self) -> DegreeSequence {
        let mut v = self.0.clone();
        v.sort_unstable_by(|a, b| b.cmp(a));
        DegreeSequence(v)
    }

    /// Stable permutation `order` with `self[order[0]] >= self[order[1]] >= ...`;
    /// ties keep the original index order.
    pub fn sorting_permutation(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.0.len()).collect();
        order.sort_by(|&a, &b| self.0[b].cmp(&self.0[a]).then(a.cmp(&b)));
        order
    }
}

impl TryFrom<Vec<usize>> for DegreeSequence {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        DegreeSequence::new(v)
    }
}

impl From<DegreeSequence> for Vec<usize> {
    fn from(d: DegreeSequence) -> Self {
        d.0
    }
}

impl std::ops::Index<usize> for DegreeSequence {
    type Output = usize;

    fn index(&self, i: usize) -> &usize {
        &self.0[i]
    }
}

impl fmt::Debug for DegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for DegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// Parses the comma-separated form used on the command line, e.g. `3,3,1,1`.
impl FromStr for DegreeSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parsed: std::result::Result<Vec<usize>, _> = s
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect();
        match parsed {
            Ok(v) => DegreeSequence::new(v),
            Err(_) => Err(Error::Parse {
                what: "degree sequence",
                input: s.to_string(),
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

/// `1^{+i,+j}` or `1^{-i,-j}`, stored with `i <= j`. `i == j` changes the
/// single entry by two.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Perturbation {
    sign: Sign,
    i: usize,
    j: usize,
}

impl Perturbation {
    pub fn new(sign: Sign, a: usize, b: usize) -> Self {
        let (i, j) = if a <= b { (a, b) } else { (b, a) };
        Perturbation { sign, i, j }
    }

    pub fn plus(a: usize, b: usize) -> Self {
        Perturbation::new(Sign::Plus, a, b)
    }

    pub fn minus(a: usize, b: usize) -> Self {
        Perturbation::new(Sign::Minus, a, b)
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn indices(&self) -> (usize, usize) {
        (self.i, self.j)
    }

    pub fn inverse(&self) -> Self {
        let sign = match self.sign {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        };
        Perturbation { sign, ..*self }
    }
}

/// Applies a perturbation; minus perturbations that would go negative fail
/// with [`Error::Underflow`].
pub fn perturb(d: &DegreeSequence, p: Perturbation) -> Result<DegreeSequence> {
    let n = d.len();
    let (i, j) = p.indices();
    if j >= n {
        return Err(Error::VertexOutOfRange { index: j, n });
    }
    let mut v = d.0.clone();
    match p.sign {
        Sign::Plus => {
            v[i] += 1;
            v[j] += 1;
        }
        Sign::Minus => {
            let need_i = if i == j { 2 } else { 1 };
            if v[i] < need_i || v[j] < 1 {
                return Err(Error::Underflow { i, j });
            }
            v[i] -= 1;
            v[j] -= 1;
        }
    }
    Ok(DegreeSequence(v))
}

/// Positional degree vector of a graph.
pub fn graph_degrees(g: &LabeledGraph) -> DegreeSequence {
    g.degrees()
}

/// Outcome of the Erdős–Gallai test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphicVerdict {
    pub graphic: bool,
    /// Least 1-based `k` (on the non-increasing order) whose inequality fails.
    pub failing_k: Option<usize>,
    /// Sorting permutation: position `t` of the sorted order is vertex `order[t]`.
    pub order: Vec<usize>,
}

/// Full Erdős–Gallai test in `O(n log n)`.
///
/// For the non-increasing rearrangement `s`, checks for every `k` that
/// `s_1 + ... + s_k <= k(k-1) + sum_{i>k} min(s_i, k)`.
pub fn is_graphic(d: &DegreeSequence) -> Result<GraphicVerdict> {
    let total = d.sum();
    if total % 2 == 1 {
        return Err(Error::OddSum(total));
    }
    let order = d.sorting_permutation();
    let s: Vec<usize> = order.iter().map(|&v| d.0[v]).collect();
    let failing_k = first_failing_k(&s);
    Ok(GraphicVerdict {
        graphic: failing_k.is_none(),
        failing_k,
        order,
    })
}

/// Convenience wrapper: odd sums count as non-graphic.
pub fn graphic(d: &[usize]) -> bool {
    let total: usize = d.iter().sum();
    if total % 2 == 1 || d.is_empty() {
        return false;
    }
    let mut s = d.to_vec();
    s.sort_unstable_by(|a, b| b.cmp(a));
    first_failing_k(&s).is_none()
}

/// `s` must be non-increasing.
fn first_failing_k(s: &[usize]) -> Option<usize> {
    let n = s.len();
    let mut prefix = vec![0usize; n + 1];
    for (t, &x) in s.iter().enumerate() {
        prefix[t + 1] = prefix[t] + x;
    }
    let total = prefix[n];
    // w = number of entries >= k; non-increasing in k.
    let mut w = n;
    for k in 1..=n {
        while w > 0 && s[w - 1] < k {
            w -= 1;
        }
        let split = w.max(k);
        let tail = k * w.saturating_sub(k) + (total - prefix[split]);
        if prefix[k] > k * (k - 1) + tail {
            return Some(k);
        }
    }
    None
}

/// Havel–Hakimi realization: repeatedly connect a vertex of largest residual
/// degree to the next-largest residual vertices (ties broken by lowest
/// index). Returns `None` exactly when the sequence is not graphic.
pub fn havel_hakimi(d: &DegreeSequence) -> Option<LabeledGraph> {
    let n = d.len();
    if d.sum() % 2 == 1 {
        return None;
    }
    let mut residual = d.0.clone();
    let mut g = LabeledGraph::empty(n);
    let mut done = vec![false; n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&u| !done[u])
            .max_by(|&a, &b| residual[a].cmp(&residual[b]).then(b.cmp(&a)))?;
        done[v] = true;
        let need = residual[v];
        residual[v] = 0;
        let mut candidates: Vec<usize> = (0..n).filter(|&u| !done[u]).collect();
        candidates.sort_by(|&a, &b| residual[b].cmp(&residual[a]).then(a.cmp(&b)));
        if candidates.len() < need {
            return None;
        }
        for &u in &candidates[..need] {
            if residual[u] == 0 {
                return None;
            }
            residual[u] -= 1;
            g.add_edge(v, u).ok()?;
        }
    }
    Some(g)
}
