//! The witness-or-hostile dichotomy, and the neighbourhood reduction that
//! feeds the boundary-quotient map.

use serde::{Serialize, Serializer};

use super::partition::{jms_partition, refine_r, validate_structure};
use super::twist::{run_case1, run_case2, HingeStep, TwistTrace};
use crate::error::{Error, Result};
use crate::graph::LabeledGraph;
use crate::regions::SimpleRegion;
use crate::sequence::{graphic, perturb, DegreeSequence, Perturbation};
use crate::trails::{
    find_witness_trail, flip_along_trail, verify_hostile, AlternatingTrail, HostileConfiguration,
    WITNESS_MAX_LEN,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HostileCertificate {
    pub config: HostileConfiguration,
    pub final_graph: LabeledGraph,
    pub d_pp: DegreeSequence,
    pub trace: TwistTrace,
}

/// Outcome of [`certify`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    WitnessTrail(AlternatingTrail),
    Hostile(Box<HostileCertificate>),
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::WitnessTrail(_) => "witness",
            Certificate::Hostile(_) => "hostile",
        }
    }

    pub fn is_witness(&self) -> bool {
        matches!(self, Certificate::WitnessTrail(_))
    }

    pub fn trail(&self) -> Option<&AlternatingTrail> {
        match self {
            Certificate::WitnessTrail(t) => Some(t),
            Certificate::Hostile(_) => None,
        }
    }

    pub fn hostile(&self) -> Option<&HostileCertificate> {
        match self {
            Certificate::WitnessTrail(_) => None,
            Certificate::Hostile(h) => Some(h),
        }
    }

    /// Re-checks the certificate from scratch against its input: a trail
    /// must be an 11-witness trail from `p` to `q` in `g` that flips to a
    /// realization of `D = deg(g) - 1^{+p,+q}`; a hostile certificate must
    /// replay, pass the hostile checks, and carry a non-graphic `D''`
    /// inside `region`.
    pub fn verify(&self, g: &LabeledGraph, p: usize, q: usize, region: &SimpleRegion) -> Result<()> {
        let base = perturb(&g.degrees(), Perturbation::minus(p, q))?;
        let fail = |msg: &str| Err(Error::InternalInvariantFailure(msg.to_string()));
        match self {
            Certificate::WitnessTrail(t) => {
                t.validate(g)?;
                if !t.is_witness(WITNESS_MAX_LEN) || t.start() != p || t.end() != q {
                    return fail("trail is not an 11-witness trail between p and q");
                }
                if flip_along_trail(g, t)?.degrees() != base {
                    return fail("flipped trail does not realize the base sequence");
                }
            }
            Certificate::Hostile(h) => {
                if h.trace.replay(g)? != h.final_graph {
                    return fail("trace replay differs from the final graph");
                }
                if !verify_hostile(&h.final_graph, &h.config)?.ok {
                    return fail("final graph is not hostile");
                }
                let d_pp = perturb(&h.final_graph.degrees(), Perturbation::minus(p, q))?;
                if d_pp != h.d_pp || !region.contains(&d_pp) || graphic(d_pp.as_slice()) {
                    return fail("D'' is not a non-graphic member of the region");
                }
            }
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct CertificateJson<'a> {
    kind: &'static str,
    trail: Option<&'a AlternatingTrail>,
    partition: Option<&'a HostileConfiguration>,
    d_pp: Option<&'a DegreeSequence>,
    trace: &'a [HingeStep],
    #[serde(skip_serializing_if = "Option::is_none")]
    case: Option<super::twist::CaseTag>,
    #[serde(skip_serializing_if = "Option::is_none")]
    final_graph: Option<&'a LabeledGraph>,
}

impl Serialize for Certificate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let json = match self {
            Certificate::WitnessTrail(t) => CertificateJson {
                kind: self.kind(),
                trail: Some(t),
                partition: None,
                d_pp: None,
                trace: &[],
                case: None,
                final_graph: None,
            },
            Certificate::Hostile(h) => CertificateJson {
                kind: self.kind(),
                trail: None,
                partition: Some(&h.config),
                d_pp: Some(&h.d_pp),
                trace: &h.trace.steps,
                case: Some(h.trace.case_tag),
                final_graph: Some(&h.final_graph),
            },
        };
        json.serialize(s)
    }
}

/// Either an 11-witness trail between the twins `v_p`, `v_q`, or a
/// sequence of hinge-flips ending in a hostile configuration whose base
/// sequence `D''` is a non-graphic member of `region`.
///
/// The hostile branch asserts every property that holds when no 11-witness
/// trail exists; a failed assertion is reported as
/// [`Error::InternalInvariantFailure`].
pub fn certify(g: &LabeledGraph, p: usize, q: usize, region: &SimpleRegion) -> Result<Certificate> {
    let n = g.n();
    for v in [p, q] {
        if v >= n {
            return Err(Error::VertexOutOfRange { index: v, n });
        }
    }
    if region.n != n {
        return Err(Error::PreconditionViolated(format!(
            "region has n = {} but the graph has {n} vertices",
            region.n
        )));
    }
    if !g.neighbors(p).eq(g.neighbors(q)) {
        return Err(Error::NeighborhoodsDiffer { p, q });
    }
    let base = perturb(&g.degrees(), Perturbation::minus(p, q)).map_err(|_| {
        Error::PreconditionViolated("degrees at p and q are too small".into())
    })?;
    if !region.contains(&base) {
        return Err(Error::PreconditionViolated(format!(
            "deg(G) - 1^(+{p},+{q}) = ({base}) is not in the region"
        )));
    }
    if let Some(t) = find_witness_trail(g, p, q, WITNESS_MAX_LEN) {
        return Ok(Certificate::WitnessTrail(t));
    }

    let broken = |what: String| Error::InternalInvariantFailure(what);
    let part = jms_partition(g, p, q)?;
    let verdict = validate_structure(g, &part);
    if let Some(c) = verdict.violated {
        return Err(broken(format!(
            "structure condition {} fails without a witness trail",
            c.tag()
        )));
    }
    let refined = refine_r(g, &part);
    let (final_graph, trace) = if g.is_independent(&refined.r_n) {
        run_case1(g, &part, &refined)?
    } else {
        let i = refined
            .ri
            .iter()
            .find(|(_, block)| !g.is_independent(block))
            .map(|(&i, _)| i)
            .ok_or_else(|| broken("R_N has an edge outside every R_i".into()))?;
        run_case2(g, &part, &refined, i)?
    };
    if final_graph.edge_count() != g.edge_count() {
        return Err(broken("twists changed the edge count".into()));
    }
    if !verify_hostile(&final_graph, &trace.hostile)?.ok {
        return Err(broken("twisted graph is not hostile".into()));
    }
    let d_pp = perturb(&final_graph.degrees(), Perturbation::minus(p, q))?;
    if !region.contains(&d_pp) {
        return Err(broken(format!("D'' = ({d_pp}) left the region")));
    }
    if graphic(d_pp.as_slice()) {
        return Err(broken(format!("D'' = ({d_pp}) is graphic")));
    }
    Ok(Certificate::Hostile(Box::new(HostileCertificate {
        config: trace.hostile.clone(),
        final_graph,
        d_pp,
        trace,
    })))
}

/// Which side of the length-2 trail carried the edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReductionSide {
    /// `v_i v_m` edge, `v_m v_j` non-edge; the result has `D + 1^{+j,+j}`.
    TowardJ,
    /// `v_j v_m` edge, `v_m v_i` non-edge; the result has `D + 1^{+i,+i}`.
    TowardI,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NeighborhoodReduction {
    pub graph: LabeledGraph,
    pub i: usize,
    pub j: usize,
    pub m: usize,
    pub side: ReductionSide,
}

impl NeighborhoodReduction {
    /// The vertex whose degree now carries both extra units.
    pub fn doubled(&self) -> usize {
        match self.side {
            ReductionSide::TowardJ => self.j,
            ReductionSide::TowardI => self.i,
        }
    }

    /// Flips the two pairs back, recovering the input graph.
    pub fn undo(&self) -> LabeledGraph {
        let mut g = self.graph.clone();
        g.toggle(self.i, self.m).expect("recorded pair is valid");
        g.toggle(self.m, self.j).expect("recorded pair is valid");
        g
    }
}

/// For `Γ(v_i) != Γ(v_j)`, flips the least alternating trail
/// `v_i - v_m ... v_j` (or its mirror `v_j - v_m ... v_i`), moving one unit
/// of degree from one endpoint to the other.
pub fn reduce_unequal_neighborhoods(
    g: &LabeledGraph,
    i: usize,
    j: usize,
) -> Result<NeighborhoodReduction> {
    let n = g.n();
    for v in [i, j] {
        if v >= n {
            return Err(Error::VertexOutOfRange { index: v, n });
        }
    }
    if i == j || g.neighbors(i).eq(g.neighbors(j)) {
        return Err(Error::NeighborhoodsEqual { i, j });
    }
    let find = |a: usize, b: usize| (0..n).find(|&m| m != a && m != b && g.has_edge(a, m) && !g.has_edge(m, b));
    let (m, side) = match (find(i, j), find(j, i)) {
        (Some(m), _) => (m, ReductionSide::TowardJ),
        (None, Some(m)) => (m, ReductionSide::TowardI),
        (None, None) => return Err(Error::MutualEdgeOnly { i, j }),
    };
    let mut graph = g.clone();
    graph.toggle(i, m)?;
    graph.toggle(m, j)?;
    Ok(NeighborhoodReduction {
        graph,
        i,
        j,
        m,
        side,
    })
}

/// The realization of `D` produced from a realization `g` of
/// `D + 1^{+i,+j}` by the boundary-quotient map, with the pieces needed to
/// invert it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BaseRealization {
    pub graph: LabeledGraph,
    pub reduction: Option<NeighborhoodReduction>,
    pub trail: AlternatingTrail,
}

/// Applies the map `G' -> G†` from realizations of `D + 1^{+i,+j}` to
/// realizations of `D`: either a witness trail between `v_i` and `v_j`, or
/// a length-2 reduction followed by a closed witness trail at the doubled
/// vertex. Fails with `PreconditionViolated` when no 11-witness trail
/// exists (impossible inside a fully graphic region).
pub fn realize_base(g: &LabeledGraph, i: usize, j: usize) -> Result<BaseRealization> {
    let none = || Error::PreconditionViolated("no 11-witness trail exists".into());
    let (work, reduction, p, q) = match reduce_unequal_neighborhoods(g, i, j) {
        Ok(red) => {
            let v = red.doubled();
            (red.graph.clone(), Some(red), v, v)
        }
        Err(Error::NeighborhoodsEqual { .. }) => (g.clone(), None, i, j),
        Err(Error::MutualEdgeOnly { .. }) => {
            let trail = AlternatingTrail::new(vec![i, j], true);
            let graph = flip_along_trail(g, &trail)?;
            return Ok(BaseRealization {
                graph,
                reduction: None,
                trail,
            });
        }
        Err(e) => return Err(e),
    };
    let trail = find_witness_trail(&work, p, q, WITNESS_MAX_LEN).ok_or_else(none)?;
    let graph = flip_along_trail(&work, &trail)?;
    Ok(BaseRealization {
        graph,
        reduction,
        trail,
    })
}
