//! Constructive side of the dichotomy: partitions around twin vertices,
//! hinge-flip twists, and certificates.

mod certify;
mod partition;
mod twist;

pub use certify::{
    certify, realize_base, reduce_unequal_neighborhoods, BaseRealization, Certificate,
    HostileCertificate, NeighborhoodReduction, ReductionSide,
};
pub use partition::{
    jms_partition, refine_r, validate_structure, JmsPartition, RefinedRPartition,
    StructureCondition, StructureVerdict,
};
pub use twist::{
    hinge_flip, run_case1, run_case2, Case1State, Case2State, CaseTag, HingeStep, Phase,
    RootedTree, TwistTrace,
};
