//! Brute-force references shared by the criteria.

use fullgraphic::LabeledGraph;

/// Vertex pairs `(i, j)`, `i < j`, in lexicographic order; bit `k` of an
/// edge mask refers to `pairs(n)[k]`.
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

pub fn graph_from_mask(n: usize, pairs: &[(usize, usize)], mask: u64) -> LabeledGraph {
    let edges: Vec<(usize, usize)> = pairs
        .iter()
        .enumerate()
        .filter(|(k, _)| mask >> k & 1 == 1)
        .map(|(_, &e)| e)
        .collect();
    LabeledGraph::from_edges(n, &edges).expect("mask edges are valid")
}

/// Adjacency rows as bitmasks.
pub fn rows_from_mask(n: usize, pairs: &[(usize, usize)], mask: u64) -> [u16; 16] {
    let mut rows = [0u16; 16];
    for (k, &(i, j)) in pairs.iter().enumerate() {
        if mask >> k & 1 == 1 {
            rows[i] |= 1 << j;
            rows[j] |= 1 << i;
        }
    }
    debug_assert!(n <= 16);
    rows
}

/// Base-`n` code of a vector with entries below `n`.
pub fn code(n: usize, v: &[usize]) -> usize {
    v.iter().fold(0, |acc, &d| acc * n + d)
}

/// Number of labelled graphs on `0..n` with each degree vector, found by
/// listing every edge set.
pub struct DegreeTable {
    pub n: usize,
    counts: Vec<u32>,
}

impl DegreeTable {
    pub fn build(n: usize) -> Self {
        let pairs = pairs(n);
        let mut counts = vec![0u32; n.pow(n as u32).max(1)];
        for mask in 0u64..1 << pairs.len() {
            let mut deg = [0usize; 16];
            for (k, &(i, j)) in pairs.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    deg[i] += 1;
                    deg[j] += 1;
                }
            }
            counts[code(n, &deg[..n])] += 1;
        }
        DegreeTable { n, counts }
    }

    /// Zero for vectors with an entry of `n` or more.
    pub fn count(&self, v: &[usize]) -> u32 {
        if v.iter().any(|&d| d >= self.n) {
            return 0;
        }
        self.counts[code(self.n, v)]
    }
}

/// Calls `f` on every vector in `[0, max]^n`, in lexicographic order.
pub fn for_each_vector(n: usize, max: usize, mut f: impl FnMut(&[usize])) {
    let mut v = vec![0usize; n];
    loop {
        f(&v);
        let mut k = n;
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            if v[k] < max {
                v[k] += 1;
                break;
            }
            v[k] = 0;
        }
    }
}

/// Cached tables for `n <= 7`.
pub fn table(n: usize) -> &'static DegreeTable {
    use std::sync::OnceLock;
    static TABLES: [OnceLock<DegreeTable>; 8] = [const { OnceLock::new() }; 8];
    TABLES[n].get_or_init(|| DegreeTable::build(n))
}
