//! Executable theory of fully graphic degree-sequence regions.
//!
//! The crate covers graphicality of degree sequences, simple regions and
//! their extremal members, exact realization counting and boundary
//! quotients, alternating-trail and hostile-configuration certificates,
//! adversarial split constructions with large boundary quotients, and a
//! seeded switch Markov chain with exact uniformity diagnostics.

pub mod adversarial;
pub mod constructive;
pub mod counting;
pub mod error;
pub mod exact;
pub mod graph;
pub mod regions;
pub mod sequence;
pub mod switch;
pub mod trails;

pub use adversarial::{
    compose_split, construct_unstable, half_graph, near_regular_bipartite, unstable_window,
    SplitComposition, UnstableWindow, XChoice,
};
pub use constructive::{certify, Certificate};
pub use counting::{
    boundary_quotient, count_realizations, enumerate_realizations, BoundaryReport, Convention,
    RealizationCounter,
};
pub use error::{Error, Result};
pub use graph::LabeledGraph;
pub use regions::{
    classify, enumerate_region, is_fully_graphic, leg_sequence, p4_holds, RegionClassification,
    SigmaWindow, SimpleRegion,
};
pub use sequence::{
    graph_degrees, havel_hakimi, is_graphic, perturb, DegreeSequence, GraphicVerdict,
    Perturbation, Sign,
};
pub use switch::{run_chain, run_chains, switch_step, ChainConfig, ChainState, MixingReport};
pub use trails::{
    find_witness_trail, flip_along_trail, symmetric_difference_trail, verify_hostile,
    AlternatingTrail, HostileCondition, HostileConfiguration, HostileVerdict,
};
