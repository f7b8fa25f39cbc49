//! Finite laboratory for ordinal-absolute models, forcing over them, and
//! creature/tree forcing combinatorics.

pub mod collapse;
pub mod creature;
pub mod dsl;
pub mod error;
pub mod forcing;
pub mod formula;
pub mod model;
pub mod nep;
pub mod report;
pub mod runner;
pub mod suite;
pub mod term;
pub mod tree;
