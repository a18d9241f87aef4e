//! Gassmann triples and their refinements.
//!
//! Decides rational, p-local, locally integral and solvable equivalence of
//! subgroup pairs in finite permutation groups, computes parametric
//! intertwiner determinants over double cosets, and simulates prime
//! splitting from decomposition and inertia data.

pub mod arith;
pub mod catalog;
pub mod cli;
pub mod equivalence;
pub mod error;
pub mod fixtures;
pub mod group;
pub mod homdet;
pub mod linear;
pub mod perm;
pub mod subgroups;
pub mod symmetric;

pub use error::{Error, Result};
pub use group::{CosetAction, ConjugacyClasses, EnumeratedGroup, SubgroupSet};
pub use perm::{GroupSpec, Permutation};
