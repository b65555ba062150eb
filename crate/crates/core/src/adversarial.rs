//! Split compositions around a half-graph, and the Σ-windows in which they
//! produce members with large boundary quotients.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{integer, isqrt, is_perfect_square, sqrt_bracket, Bracket};
use crate::graph::LabeledGraph;
use crate::regions::{q_value, SimpleRegion};
use crate::sequence::{havel_hakimi, DegreeSequence};

fn check_r(r: usize) -> Result<()> {
    if r % 2 == 1 {
        return Err(Error::OddR(r));
    }
    if r < 2 {
        return Err(Error::PreconditionViolated(format!("r must be at least 2, got {r}")));
    }
    Ok(())
}

/// `h_{r/2} = (1, 2, .., r/2, r/2, .., r-1)`.
pub fn half_graph_sequence(r: usize) -> Result<DegreeSequence> {
    check_r(r)?;
    let h = r / 2;
    let v: Vec<usize> = (1..=h).chain(h..r).collect();
    DegreeSequence::new(v)
}

/// The half-graph sequence and its (unique) realization.
pub fn half_graph(r: usize) -> Result<(DegreeSequence, LabeledGraph)> {
    let d = half_graph_sequence(r)?;
    let g = havel_hakimi(&d).ok_or_else(|| {
        Error::InternalInvariantFailure(format!("half-graph sequence for r = {r} not realized"))
    })?;
    Ok((d, g))
}

/// Near-regular degree targets: the first `e mod k` entries get the ceiling.
fn near_regular(e: usize, k: usize) -> Vec<usize> {
    let (q, rem) = e.div_rem(&k);
    (0..k).map(|i| q + usize::from(i < rem)).collect()
}

/// Bipartite graph on `X = 0..x`, `Y = x..x+y` with `e` edges whose side
/// degrees each take two adjacent values (lower-indexed vertices take the
/// larger one). Built greedily: each `X` vertex joins the `Y` vertices of
/// largest remaining demand, which realizes any sequence satisfying the
/// Gale–Ryser condition.
pub fn near_regular_bipartite(x: usize, y: usize, e: usize) -> Result<LabeledGraph> {
    if e > x * y {
        return Err(Error::Infeasible(format!(
            "{e} edges do not fit between sides of size {x} and {y}"
        )));
    }
    let mut g = LabeledGraph::empty(x + y);
    if e == 0 {
        return Ok(g);
    }
    let xd = near_regular(e, x);
    let yd = near_regular(e, y);
    let mut demand = yd.clone();
    for (a, &need) in xd.iter().enumerate() {
        let mut order: Vec<usize> = (0..y).collect();
        order.sort_by(|&s, &t| demand[t].cmp(&demand[s]).then(s.cmp(&t)));
        for &b in order.iter().take(need) {
            if demand[b] == 0 {
                return Err(Error::InternalInvariantFailure(
                    "greedy bipartite fill ran out of demand".into(),
                ));
            }
            demand[b] -= 1;
            g.add_edge(a, x + b)?;
        }
    }
    let got = g.degree_vec();
    if got[..x] != xd[..] || got[x..] != yd[..] {
        return Err(Error::InternalInvariantFailure(
            "greedy bipartite fill missed its targets".into(),
        ));
    }
    Ok(g)
}

/// Clique `X`, half-graph `R`, independent `Y`, `X`–`R` complete, `Y`–`R`
/// empty, and a near-regular bipartite fill with `e` edges between `X` and
/// `Y`. Vertices are laid out as `X`, then `R`, then `Y`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitComposition {
    pub x: usize,
    pub y: usize,
    pub r: usize,
    pub e: usize,
    pub graph: LabeledGraph,
    pub degrees: DegreeSequence,
    pub sigma: usize,
}

impl SplitComposition {
    pub fn x_block(&self) -> Vec<usize> {
        (0..self.x).collect()
    }

    pub fn r_block(&self) -> Vec<usize> {
        (self.x..self.x + self.r).collect()
    }

    pub fn y_block(&self) -> Vec<usize> {
        (self.x + self.r..self.x + self.r + self.y).collect()
    }

    /// Closed form `r^2/2 + 2xr + x(x-1) + 2e`.
    pub fn sigma_formula(x: usize, r: usize, e: usize) -> usize {
        r * r / 2 + 2 * x * r + x * x.saturating_sub(1) + 2 * e
    }

    /// Re-checks the block structure and the degree sum.
    pub fn check_structure(&self) -> Result<()> {
        let g = &self.graph;
        let (xs, rs, ys) = (self.x_block(), self.r_block(), self.y_block());
        let bad = |m: &str| Err(Error::InternalInvariantFailure(m.to_string()));
        if !g.is_clique(&xs) {
            return bad("X is not a clique");
        }
        if !g.is_independent(&ys) {
            return bad("Y is not independent");
        }
        if !rs.iter().all(|&v| g.adjacent_to_all(v, &xs)) {
            return bad("X-R is not complete");
        }
        if rs.iter().any(|&v| ys.iter().any(|&u| g.has_edge(v, u))) {
            return bad("Y-R is not empty");
        }
        let inner: Vec<usize> = rs
            .iter()
            .map(|&v| rs.iter().filter(|&&u| g.has_edge(v, u)).count())
            .collect();
        if inner != half_graph_sequence(self.r)?.into_vec() {
            return bad("G[R] is not the half-graph");
        }
        let cross = xs
            .iter()
            .map(|&v| ys.iter().filter(|&&u| g.has_edge(v, u)).count())
            .sum::<usize>();
        if cross != self.e {
            return bad("X-Y edge count differs from e");
        }
        if self.degrees.sum() != self.sigma
            || self.sigma != Self::sigma_formula(self.x, self.r, self.e)
        {
            return bad("degree sum differs from the closed form");
        }
        Ok(())
    }
}

pub fn compose_split(x: usize, y: usize, r: usize, e: usize) -> Result<SplitComposition> {
    let (_, h) = half_graph(r)?;
    let fill = near_regular_bipartite(x, y, e)?;
    let n = x + r + y;
    let mut g = LabeledGraph::empty(n);
    for a in 0..x {
        for b in a + 1..x + r {
            g.add_edge(a, b)?;
        }
    }
    for (a, b) in h.edges() {
        g.add_edge(x + a, x + b)?;
    }
    for (a, b) in fill.edges() {
        // fill: X = 0..x, Y = x..x+y
        g.add_edge(a, b - x + x + r)?;
    }
    let degrees = g.degrees();
    let sigma = degrees.sum();
    let comp = SplitComposition {
        x,
        y,
        r,
        e,
        graph: g,
        degrees,
        sigma,
    };
    comp.check_structure()?;
    Ok(comp)
}

/// `I^x = [I_0^x, I_1^x]`: the degree sums reachable with `|X| = x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct XInterval {
    pub x: i64,
    pub lo: i64,
    pub hi: i64,
}

pub fn interval(n: i64, c1: i64, c2: i64, r: i64, x: i64) -> XInterval {
    let base = r * r / 2 + x * (x + 2 * r - 1);
    XInterval {
        x,
        lo: base + 2 * c2 * (n - x - r),
        hi: base + 2 * x * (c1 - x - r + 1),
    }
}

/// Left side of the overlap condition `I_0^{x+1} <= I_1^x`:
/// `x^2 - x(c1 + c2 - r) + r + c2(n - 1 - r)`.
pub fn overlap_poly(n: i64, c1: i64, c2: i64, r: i64, x: i64) -> i64 {
    x * x - x * (c1 + c2 - r) + r + c2 * (n - 1 - r)
}

/// `(c1 - c2 - r)^2 - 4 c2 (n - 1 - c1) + 4r`.
pub fn q_of_r(n: i64, c1: i64, c2: i64, r: i64) -> i64 {
    (c1 - c2 - r).pow(2) - 4 * c2 * (n - 1 - c1) + 4 * r
}

/// Discriminant of the overlap quadratic,
/// `(c1 - c2 - r)^2 - 4 c2 (n - 1 - c1) - 4r`.
pub fn overlap_discriminant(n: i64, c1: i64, c2: i64, r: i64) -> i64 {
    (c1 + c2 - r).pow(2) - 4 * (r + c2 * (n - 1 - r))
}

/// Decides `a sqrt(q) + s <= sqrt(t)` exactly, for `q, t >= 0`, `s >= 0`.
fn le_sqrt_combo(a: &BigRational, q: i64, s: i64, t: i64) -> bool {
    let q = integer(q as i128);
    let s = integer(s as i128);
    let t = integer(t as i128);
    let a2q = a * a * &q;
    if a.is_negative() && a2q > &s * &s {
        return true;
    }
    let m = &t - &a2q - &s * &s;
    let lhs_sq = integer(4) * &a2q * &s * &s;
    if a.is_negative() {
        !m.is_negative() || lhs_sq >= &m * &m
    } else {
        !m.is_negative() && lhs_sq <= &m * &m
    }
}

/// `sqrt(v) <= t` for rational `t`.
fn sqrt_le(v: i64, t: &BigRational) -> bool {
    !t.is_negative() && integer(v as i128) <= t * t
}

/// Σ-window of the split construction with `|R| = r`, with the quantities
/// entering the ε-bound of the instability theorem.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnstableWindow {
    pub n: i64,
    pub c1: i64,
    pub c2: i64,
    pub r: i64,
    #[serde(with = "crate::exact::opt_ratio_str")]
    pub beta: Option<BigRational>,
    pub x_min: Option<i64>,
    pub x_max: Option<i64>,
    pub sigma_min: Option<i64>,
    pub sigma_max: Option<i64>,
    pub intervals: Vec<XInterval>,
    pub q: i64,
    pub q_r: i64,
    /// Exact when `Q` and `Q(r)` are perfect squares.
    pub epsilon: Option<Bracket>,
    /// `3(r+3) / (beta (c1 - c2))`.
    #[serde(with = "crate::exact::opt_ratio_str")]
    pub epsilon_bound: Option<BigRational>,
    pub eq8_holds: Option<bool>,
    pub epsilon_within_bound: Option<bool>,
    /// Least and greatest even Σ in `[n c2, n c1]` satisfying the
    /// ε-shrunk window condition.
    pub eq9_sigma: Option<[i64; 2]>,
    /// Whether every real Σ satisfying that condition lies in
    /// `[sigma_min, sigma_max]`.
    pub eq9_contained: Option<bool>,
    pub eq29_holds: Option<bool>,
    pub eq30_holds: Option<bool>,
    pub notes: Vec<String>,
}

impl UnstableWindow {
    pub fn is_empty(&self) -> bool {
        self.x_min.is_none()
    }

    pub fn require_window(&self) -> Result<(i64, i64)> {
        match (self.sigma_min, self.sigma_max) {
            (Some(a), Some(b)) => Ok((a, b)),
            _ => Err(Error::EmptyWindow),
        }
    }

    pub fn require_epsilon(&self) -> Result<&Bracket> {
        self.epsilon
            .as_ref()
            .ok_or(Error::NegativeDiscriminant(self.q_r as i128))
    }

    /// Every consecutive pair on `[x_min, x_max]` overlaps.
    pub fn consecutive_overlap(&self) -> bool {
        self.intervals.windows(2).all(|w| w[1].lo <= w[0].hi)
            && self.intervals.iter().all(|iv| iv.lo <= iv.hi)
    }

    /// `(|u| + D(r+3))^2 <= D^2 Q(r)` with `D = c1 - c2` and
    /// `u = 2(Σ - n c2) - (1 + c1 + c2) D`.
    pub fn eq9_contains(&self, sigma: i64) -> bool {
        let d = (self.c1 - self.c2) as i128;
        if d <= 0 || self.q_r < 0 {
            return false;
        }
        let u = 2 * (sigma as i128 - (self.n * self.c2) as i128) - (1 + self.c1 + self.c2) as i128 * d;
        let lhs = u.abs() + d * (self.r as i128 + 3);
        lhs * lhs <= d * d * self.q_r as i128
    }
}

/// Computes the overlap window, interval table, `Q(r)`, ε and the derived
/// checks. Empty windows and negative discriminants are recorded in
/// `notes` rather than returned as errors.
pub fn unstable_window(
    n: usize,
    c1: usize,
    c2: usize,
    r: usize,
    beta: Option<&BigRational>,
) -> Result<UnstableWindow> {
    check_r(r)?;
    if !(n > c1 && c1 >= c2 && c2 >= 1) {
        return Err(Error::InvalidRegion(format!(
            "need n > c1 >= c2 >= 1, got n={n}, c1={c1}, c2={c2}"
        )));
    }
    if let Some(b) = beta {
        if !b.is_positive() {
            return Err(Error::PreconditionViolated("beta must be positive".into()));
        }
    }
    let (n, c1, c2, r) = (n as i64, c1 as i64, c2 as i64, r as i64);
    let q = q_value(n as usize, c1 as usize, c2 as usize);
    let q_r = q_of_r(n, c1, c2, r);
    let mut notes = Vec::new();

    let disc = overlap_discriminant(n, c1, c2, r);
    let b = c1 + c2 - r;
    let (mut x_min, mut x_max) = (None, None);
    if disc >= 0 {
        let s = isqrt(disc as i128) as i64;
        // Integer roots bracketed, then tightened against the polynomial.
        let mut lo = (b - s - 1).div_euclid(2);
        let mut hi = (b + s + 2).div_euclid(2);
        while overlap_poly(n, c1, c2, r, lo) > 0 && lo <= hi {
            lo += 1;
        }
        while overlap_poly(n, c1, c2, r, hi) > 0 && hi >= lo {
            hi -= 1;
        }
        if lo <= hi {
            x_min = Some(lo);
            x_max = Some(hi);
        }
    }
    if x_min.is_none() {
        notes.push("EmptyWindow".to_string());
    }
    let intervals: Vec<XInterval> = match (x_min, x_max) {
        (Some(a), Some(b)) => (a..=b).map(|x| interval(n, c1, c2, r, x)).collect(),
        _ => Vec::new(),
    };
    let sigma_min = intervals.first().map(|iv| iv.lo);
    let sigma_max = intervals.last().map(|iv| iv.hi);
    let d = c1 - c2;
    let eq29_holds = x_min.zip(sigma_min).map(|(x, s)| s <= (x + r) * d + n * c2);
    let eq30_holds = x_max.zip(sigma_max).map(|(x, s)| s >= x * d + n * c2);

    let eq8_holds = beta.map(|b| {
        let lhs = (integer(1) - b) * integer(((d + 1) * (d + 1)) as i128);
        lhs >= integer((4 * c2 * (n - 1 - c1)) as i128)
    });
    let epsilon_bound = match beta {
        Some(b) if d > 0 => Some(integer((3 * (r + 3)) as i128) / (b * integer(d as i128))),
        _ => None,
    };

    let mut epsilon = None;
    let mut epsilon_within_bound = None;
    let mut eq9_sigma = None;
    let mut eq9_contained = None;
    if q_r < 0 {
        notes.push(format!("NegativeDiscriminant: Q(r) = {q_r}"));
    } else if q <= 0 {
        notes.push(format!("NonPositiveQ: Q = {q}"));
    } else {
        let rr = integer((r + 3) as i128);
        epsilon = Some(if is_perfect_square(q as i128) && is_perfect_square(q_r as i128) {
            let sq = integer(isqrt(q as i128));
            let sqr = integer(isqrt(q_r as i128));
            Bracket::exact(integer(1) - (sqr - &rr) / sq)
        } else {
            let num = sqrt_bracket(q_r as i128, 15).add(&-rr.clone());
            num.div_positive(&sqrt_bracket(q as i128, 15)).sub_from(&integer(1))
        });
        if let Some(bound) = &epsilon_bound {
            // eps <= B  <=>  (1 - B) sqrt(Q) + (r + 3) <= sqrt(Q(r)).
            let a = integer(1) - bound;
            epsilon_within_bound = Some(le_sqrt_combo(&a, q, r + 3, q_r));
        }
        if d > 0 {
            let lo_sigma = (n * c2).max(0);
            let hi_sigma = n * c1;
            let probe = UnstableWindow {
                n,
                c1,
                c2,
                r,
                beta: None,
                x_min,
                x_max,
                sigma_min,
                sigma_max,
                intervals: Vec::new(),
                q,
                q_r,
                epsilon: None,
                epsilon_bound: None,
                eq8_holds: None,
                epsilon_within_bound: None,
                eq9_sigma: None,
                eq9_contained: None,
                eq29_holds: None,
                eq30_holds: None,
                notes: Vec::new(),
            };
            let even = |s: i64| s + s.rem_euclid(2);
            let mut s = even(lo_sigma);
            let mut first = None;
            let mut last = None;
            while s <= hi_sigma {
                if probe.eq9_contains(s) {
                    first.get_or_insert(s);
                    last = Some(s);
                }
                s += 2;
            }
            eq9_sigma = first.zip(last).map(|(a, b)| [a, b]);
            // Real interval: |u|/D <= W with W = sqrt(Q(r)) - (r + 3).
            // Containment in [sigma_min, sigma_max] reduces to two bounds on
            // sqrt(Q(r)); an empty real interval (W < 0) is contained.
            let w_nonneg = q_r >= (r + 3) * (r + 3);
            eq9_contained = Some(if !w_nonneg {
                true
            } else {
                match (sigma_min, sigma_max) {
                    (Some(smin), Some(smax)) => {
                        let dd = integer(d as i128);
                        let mid = integer((1 + c1 + c2) as i128);
                        let t1 = &rr + &mid - integer((2 * (smin - n * c2)) as i128) / &dd;
                        let t2 = &rr + integer((2 * (smax - n * c2)) as i128) / &dd - &mid;
                        sqrt_le(q_r, &t1) && sqrt_le(q_r, &t2)
                    }
                    _ => false,
                }
            });
        }
    }
    Ok(UnstableWindow {
        n,
        c1,
        c2,
        r,
        beta: beta.cloned(),
        x_min,
        x_max,
        sigma_min,
        sigma_max,
        intervals,
        q,
        q_r,
        epsilon,
        epsilon_bound,
        eq8_holds,
        epsilon_within_bound,
        eq9_sigma,
        eq9_contained,
        eq29_holds,
        eq30_holds,
        notes,
    })
}

/// Which feasible `|X|` to use when several intervals contain Σ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum XChoice {
    #[default]
    Least,
    Greatest,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnstableConstruction {
    pub region: SimpleRegion,
    pub sequence: DegreeSequence,
    pub composition: SplitComposition,
}

/// A member of `region` whose realization contains the half-graph on `r`
/// vertices as a split component: picks `x` in `[c2, c1 - r + 1]` with
/// `Σ ∈ I^x`, fills `X`–`Y` with `e` near-regular edges, and checks the
/// result lies in the region.
pub fn construct_unstable(
    region: &SimpleRegion,
    r: usize,
    choice: XChoice,
) -> Result<UnstableConstruction> {
    check_r(r)?;
    region.validate()?;
    let SimpleRegion { n, sigma, c1, c2 } = *region;
    let (ni, si, c1i, c2i, ri) = (n as i64, sigma as i64, c1 as i64, c2 as i64, r as i64);
    let hi_x = (c1i - ri + 1).min(ni - ri);
    let mut candidates: Vec<i64> = (c2i..=hi_x).collect();
    if choice == XChoice::Greatest {
        candidates.reverse();
    }
    let x = candidates
        .into_iter()
        .find(|&x| {
            let iv = interval(ni, c1i, c2i, ri, x);
            iv.lo <= si && si <= iv.hi
        })
        .ok_or(Error::SigmaOutsideWindow { sigma })?;
    let fixed = ri * ri / 2 + 2 * x * ri + x * (x - 1);
    let twice_e = si - fixed;
    if twice_e < 0 || twice_e % 2 != 0 {
        return Err(Error::ParityImpossible(format!(
            "Σ - {fixed} = {twice_e} is not a non-negative even number"
        )));
    }
    let e = twice_e / 2;
    let y = ni - x - ri;
    if !(c2i * y <= e && e <= x * (c1i - x - ri + 1)) {
        return Err(Error::InternalInvariantFailure(format!(
            "edge count {e} violates its bounds for x = {x}"
        )));
    }
    let composition = compose_split(x as usize, y as usize, r, e as usize)?;
    let sequence = composition.degrees.clone();
    if !region.contains(&sequence) {
        return Err(Error::InternalInvariantFailure(format!(
            "constructed sequence ({sequence}) is not in the region"
        )));
    }
    Ok(UnstableConstruction {
        region: *region,
        sequence,
        composition,
    })
}

/// Whether ε is known to be at most `bound`, using the upper end of its
/// bracket.
pub fn epsilon_upper_le(eps: &Bracket, bound: &BigRational) -> bool {
    &eps.upper <= bound
}

/// Upper bound of ε rounded up to `digits` decimals, as a reduced rational.
pub fn epsilon_display(eps: &Bracket, digits: u32) -> BigRational {
    if eps.is_exact() {
        return eps.upper.clone();
    }
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = &eps.upper * BigRational::from_integer(scale.clone());
    BigRational::new(scaled.ceil().to_integer(), scale)
}
