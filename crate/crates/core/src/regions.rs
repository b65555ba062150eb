//! Simple degree-sequence regions `D(n, sigma, c1, c2)`: membership, the
//! extremal LEG member, the fully-graphic test and the classical stability
//! predicates.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sequence::{is_graphic, DegreeSequence};

/// Default limit on `n` for [`enumerate_region`].
pub const DEFAULT_REGION_GUARD: usize = 12;

/// All length-`n` sequences with even sum `sigma` and every entry in
/// `[c2, c1]`. Construction validates `n > c1 >= c2`, `n*c2 <= sigma <= n*c1`
/// and that `sigma` is even.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SimpleRegion {
    pub n: usize,
    pub sigma: usize,
    pub c1: usize,
    pub c2: usize,
}

impl SimpleRegion {
    pub fn new(n: usize, sigma: usize, c1: usize, c2: usize) -> Result<Self> {
        let r = SimpleRegion { n, sigma, c1, c2 };
        r.validate()?;
        Ok(r)
    }

    pub fn validate(&self) -> Result<()> {
        let SimpleRegion { n, sigma, c1, c2 } = *self;
        if n == 0 {
            return Err(Error::InvalidRegion("n must be positive".into()));
        }
        if c1 >= n {
            return Err(Error::InvalidRegion(format!("need n > c1, got n={n}, c1={c1}")));
        }
        if c2 > c1 {
            return Err(Error::InvalidRegion(format!("need c1 >= c2, got c1={c1}, c2={c2}")));
        }
        if sigma % 2 == 1 {
            return Err(Error::InvalidRegion(format!("sigma={sigma} is odd")));
        }
        if sigma < n * c2 || sigma > n * c1 {
            return Err(Error::InvalidRegion(format!(
                "sigma={sigma} outside [{}, {}]",
                n * c2,
                n * c1
            )));
        }
        Ok(())
    }

    /// Whether `d` (in any order) belongs to the region.
    pub fn contains(&self, d: &DegreeSequence) -> bool {
        d.len() == self.n
            && d.sum() == self.sigma
            && d.as_slice().iter().all(|&x| self.c2 <= x && x <= self.c1)
    }

    /// Members of the very simple region `D(n, c1, c2)`, one simple region
    /// per feasible even sum.
    pub fn very_simple(n: usize, c1: usize, c2: usize) -> Result<Vec<SimpleRegion>> {
        let lo = n * c2;
        let lo = lo + lo % 2;
        (lo..=n * c1)
            .step_by(2)
            .map(|sigma| SimpleRegion::new(n, sigma, c1, c2))
            .collect()
    }
}

impl fmt::Display for SimpleRegion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.n, self.sigma, self.c1, self.c2)
    }
}

/// Parses `n,sigma,c1,c2`.
impl FromStr for SimpleRegion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: std::result::Result<Vec<usize>, _> =
            s.split(',').map(|t| t.trim().parse::<usize>()).collect();
        match parts.as_deref() {
            Ok([n, sigma, c1, c2]) => SimpleRegion::new(*n, *sigma, *c1, *c2),
            _ => Err(Error::Parse {
                what: "region (n,sigma,c1,c2)",
                input: s.to_string(),
            }),
        }
    }
}

/// The LEG member together with `floor(alpha)` and the middle value `a`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Leg {
    pub sequence: DegreeSequence,
    pub alpha_floor: usize,
    pub a: usize,
}

/// `floor(alpha)` copies of `c1`, then `a`, then `c2` for the rest, where
/// `alpha = (sigma - n*c2) / (c1 - c2)` and `a = c2 + (c1 - c2) * frac(alpha)`.
///
/// For `c1 == c2` the region has the single member `(c1, ..., c1)`. When
/// `alpha == n` (i.e. `sigma == n*c1`) the sequence is `(c1, ..., c1)`.
pub fn leg(r: &SimpleRegion) -> Result<Leg> {
    r.validate()?;
    let SimpleRegion { n, sigma, c1, c2 } = *r;
    if c1 == c2 {
        return Ok(Leg {
            sequence: DegreeSequence::new(vec![c1; n])?,
            alpha_floor: n,
            a: c1,
        });
    }
    let excess = sigma - n * c2;
    let alpha_floor = excess / (c1 - c2);
    let a = c2 + excess % (c1 - c2);
    let mut v = Vec::with_capacity(n);
    if alpha_floor >= n {
        v.resize(n, c1);
    } else {
        v.resize(alpha_floor, c1);
        v.push(a);
        v.resize(n, c2);
    }
    Ok(Leg {
        sequence: DegreeSequence::new(v)?,
        alpha_floor,
        a,
    })
}

pub fn leg_sequence(r: &SimpleRegion) -> Result<DegreeSequence> {
    Ok(leg(r)?.sequence)
}

/// A region is fully graphic exactly when its LEG member is graphic.
pub fn is_fully_graphic(r: &SimpleRegion) -> Result<bool> {
    let l = leg_sequence(r)?;
    Ok(is_graphic(&l)?.graphic)
}

/// Non-increasing members of the region in lexicographically decreasing
/// order. Fails with [`Error::TooLarge`] when `n > guard`.
pub fn enumerate_region(r: &SimpleRegion, guard: usize) -> Result<Vec<DegreeSequence>> {
    r.validate()?;
    if r.n > guard {
        return Err(Error::TooLarge {
            what: "n",
            got: r.n,
            limit: guard,
        });
    }
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(r.n);
    fill_members(r, r.c1, r.sigma, &mut cur, &mut out);
    Ok(out)
}

fn fill_members(
    r: &SimpleRegion,
    cap: usize,
    remaining: usize,
    cur: &mut Vec<usize>,
    out: &mut Vec<DegreeSequence>,
) {
    let slots = r.n - cur.len();
    if slots == 0 {
        if remaining == 0 {
            out.push(DegreeSequence::new(cur.clone()).expect("n >= 1"));
        }
        return;
    }
    let after = slots - 1;
    for v in (r.c2..=cap.min(remaining)).rev() {
        let rest = remaining - v;
        if rest < after * r.c2 || rest > after * v {
            continue;
        }
        cur.push(v);
        fill_members(r, v, rest, cur, out);
        cur.pop();
    }
}

/// Window of sums for which a region can fail to be fully graphic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum SigmaWindow {
    /// `c1 == c2`: the defining inequality divides by zero.
    Undefined,
    /// `Q <= 0` or no even feasible sum satisfies the inequality.
    Empty,
    /// Closed interval of even sums, intersected with `[n*c2, n*c1]`.
    Interval { lo: usize, hi: usize },
}

impl SigmaWindow {
    pub fn contains(&self, sigma: usize) -> bool {
        matches!(*self, SigmaWindow::Interval { lo, hi } if lo <= sigma && sigma <= hi)
    }

    pub fn bounds(&self) -> Option<[usize; 2]> {
        match *self {
            SigmaWindow::Interval { lo, hi } => Some([lo, hi]),
            _ => None,
        }
    }
}

/// `Q = (c1 - c2 + 1)^2 - 4 c2 (n - 1 - c1)`.
pub fn q_value(n: usize, c1: usize, c2: usize) -> i64 {
    let (n, c1, c2) = (n as i64, c1 as i64, c2 as i64);
    (c1 - c2 + 1).pow(2) - 4 * c2 * (n - 1 - c1)
}

/// Tests `|(sigma - n c2)/((c1 - c2)/2) - (1 + c1 + c2)| <= sqrt(Q) + 2`
/// in exact integer arithmetic. Requires `c1 > c2` and `Q >= 0`.
fn lemma15_inequality(n: usize, sigma: usize, c1: usize, c2: usize, q: i64) -> bool {
    let (n, s, c1, c2) = (n as i128, sigma as i128, c1 as i128, c2 as i128);
    let d = c1 - c2;
    let u = (2 * (s - n * c2) - (1 + c1 + c2) * d).abs();
    let lhs = u - 2 * d;
    lhs <= 0 || lhs * lhs <= d * d * q as i128
}

/// Even sums in `[n*c2, n*c1]` passing the inequality above, for the very
/// simple region `(n, c1, c2)`. Outside it the region is fully graphic.
pub fn lemma15_window(n: usize, c1: usize, c2: usize) -> SigmaWindow {
    if c1 == c2 {
        return SigmaWindow::Undefined;
    }
    let q = q_value(n, c1, c2);
    if q <= 0 {
        return SigmaWindow::Empty;
    }
    let lo = n * c2 + (n * c2) % 2;
    let mut hits = (lo..=n * c1)
        .step_by(2)
        .filter(|&s| lemma15_inequality(n, s, c1, c2, q));
    match hits.next() {
        None => SigmaWindow::Empty,
        Some(first) => {
            let last = hits.last().unwrap_or(first);
            SigmaWindow::Interval { lo: first, hi: last }
        }
    }
}

/// `(c1 - c2 + 1)^2 <= 4 c2 (n - c1 - 1)`.
pub fn phi_jms(n: usize, c1: usize, c2: usize) -> bool {
    q_value(n, c1, c2) <= 0
}

/// `(S - n c2)(n c1 - S) <= (c1 - c2) {(S - n c2)(n - c1 - 1) + (n c1 - S) c2}`.
pub fn phi_jms_star(r: &SimpleRegion) -> bool {
    let (n, s, c1, c2) = (r.n as i128, r.sigma as i128, r.c1 as i128, r.c2 as i128);
    let low = s - n * c2;
    let high = n * c1 - s;
    low * high <= (c1 - c2) * (low * (n - c1 - 1) + high * c2)
}

/// `2 <= c2` and `3 <= c1 <= sqrt(S / 9)`.
pub fn phi_gs(r: &SimpleRegion) -> bool {
    r.c2 >= 2 && r.c1 >= 3 && 9 * r.c1 * r.c1 <= r.sigma
}

/// `n >= 1/(2 eps^2)`, `2 <= c2` and `3 <= c1 <= sqrt((1 - eps) S)`, for
/// `0 < eps < 1`.
pub fn phi_gs_plus(r: &SimpleRegion, eps: &BigRational) -> Result<bool> {
    let zero = BigRational::zero();
    let one = BigRational::one();
    if *eps <= zero || *eps >= one {
        return Err(Error::PreconditionViolated(format!(
            "epsilon must lie in (0, 1), got {eps}"
        )));
    }
    let int = |v: usize| BigRational::from_integer(BigInt::from(v));
    let two = int(2);
    let n_ok = &two * int(r.n) * eps * eps >= one;
    let c1_sq = int(r.c1 * r.c1);
    let deg_ok = c1_sq <= (one - eps) * int(r.sigma);
    Ok(n_ok && r.c2 >= 2 && r.c1 >= 3 && deg_ok)
}

/// `sum_{j <= c1} d_j + 6 c1 + 2 <= sum_{j > c1} d_j` on the non-increasing
/// order, with `c1 = max(d)`. Empty sums are zero.
pub fn p4_holds(d: &DegreeSequence) -> bool {
    let s = d.sorted_desc();
    let c1 = s.max_degree();
    let k = c1.min(s.len());
    let head: usize = s.as_slice()[..k].iter().sum();
    let tail: usize = s.as_slice()[k..].iter().sum();
    head + 6 * c1 + 2 <= tail
}

/// Region-level summary. `p4_applicable` is always false: the Gao–Greenhill
/// predicate depends on the individual sequence, see [`p4_holds`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionClassification {
    pub region: SimpleRegion,
    pub fully_graphic: bool,
    pub q: i64,
    pub window: Option<[usize; 2]>,
    pub window_status: String,
    pub sigma_in_window: bool,
    pub p1: bool,
    pub p2: bool,
    pub p3: bool,
    pub p4_applicable: bool,
    pub gs_plus: Option<bool>,
    pub leg: DegreeSequence,
    pub alpha_floor: usize,
    pub a: usize,
}

pub fn classify(r: &SimpleRegion, epsilon: Option<&BigRational>) -> Result<RegionClassification> {
    let l = leg(r)?;
    let fully_graphic = is_graphic(&l.sequence)?.graphic;
    let window = lemma15_window(r.n, r.c1, r.c2);
    let window_status = match window {
        SigmaWindow::Undefined => "undefined",
        SigmaWindow::Empty => "empty",
        SigmaWindow::Interval { .. } => "interval",
    };
    let gs_plus = epsilon.map(|e| phi_gs_plus(r, e)).transpose()?;
    Ok(RegionClassification {
        region: *r,
        fully_graphic,
        q: q_value(r.n, r.c1, r.c2),
        window: window.bounds(),
        window_status: window_status.to_string(),
        sigma_in_window: window.contains(r.sigma),
        p1: phi_jms(r.n, r.c1, r.c2),
        p2: phi_jms_star(r),
        p3: phi_gs(r),
        p4_applicable: false,
        gs_plus,
        leg: l.sequence,
        alpha_floor: l.alpha_floor,
        a: l.a,
    })
}
