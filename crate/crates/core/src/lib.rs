//! Finite models of measured equivalence relations.
//!
//! Every object lives on an N-point space `{0, …, N−1}` carrying the uniform
//! probability measure, so measures, costs and distances are exact rationals
//! with denominator N. The crate covers:
//!
//! * [`Permutation`] and [`PartialInjection`], the automorphisms and partial
//!   isomorphisms of the space, with supports and the uniform metric;
//! * [`relations`]: partitions, graphings, generated relations, cost, joins
//!   and full groups;
//! * [`cycles`]: pre-p-cycles and the p-cycles they close up into;
//! * [`group`]: a Schreier–Sims engine certifying orders and membership;
//! * [`pipeline`]: the construction of `n + 1` generators for a full group out
//!   of a cheap graphing, with every step certified;
//! * [`oracle`]: exhaustive searches used as ground truth at tiny N.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]

extern crate alloc;

pub mod cycles;
pub mod group;
pub mod oracle;
pub mod partial;
pub mod perm;
pub mod pipeline;
pub mod relations;
pub mod space;

pub use cycles::PrePCycle;
pub use group::{GenerationCertificate, PermGroup};
pub use partial::PartialInjection;
pub use perm::Permutation;
pub use relations::{Graphing, Partition};
pub use space::{FiniteSpace, Rational};

/// Top-level error, tagging each failure with the module it came from.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("core: {0}")]
    Space(#[from] space::SpaceError),
    #[error("relations: {0}")]
    Relations(#[from] relations::RelationError),
    #[error("cycles: {0}")]
    Cycles(#[from] cycles::PreCycleError),
    #[error("pipeline: {0}")]
    Pipeline(#[from] pipeline::PipelineError),
    #[error("oracle: {0}")]
    Oracle(#[from] oracle::OracleError),
}
