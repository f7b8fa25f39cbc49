//! The creature calculus: norms, conditions built from them, and the
//! finite core of pure decision.

pub mod condition;
pub mod decision;
pub mod norm;

pub use condition::{
    halving_incompatible_pair, incompat_horizon, pow_sat, ConditionPrefix, GrowthProfile,
    HorizonReport, IncompatiblePair, Verdict,
};
pub use decision::{pure_decision_core, DecisionLevel};
pub use norm::{
    bigness_refine, enumerate_creatures, enumerate_with_val, join, split_decomposition, stronger,
    unhalve, Creature, Violation,
};
