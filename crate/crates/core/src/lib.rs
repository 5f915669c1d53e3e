//! Consensus search for multi-party multi-objective optimization.
//!
//! Two decision makers (parties) evaluate every candidate through their own
//! bi-objective function; the search target is the set of solutions that are
//! Pareto-optimal for both parties simultaneously. This crate implements two
//! benchmark families over that structure, together with the algorithms and
//! the enumeration oracles used to exercise them:
//!
//! - [`mpjcg`]: a pseudo-Boolean benchmark with an explicit gap region, its
//!   flattened four-objective form, and closed-form plus exhaustive Pareto
//!   oracles.
//! - [`pseudoboolean`]: the cross-party-recombination NSGA-II, a payoff-guided
//!   mutation baseline, and a mutation-only NSGA-II on the flattened form,
//!   all with exact fitness-evaluation accounting.
//! - [`graph`] and [`bpbomst`]: spanning-tree search with four edge weights,
//!   exact-uniform tree sampling, edge-union recombination, representative
//!   pools, a joint archive, and approximation-cover tracking.
//! - [`analysis`]: the enumeration-based auxiliary-front machinery (average
//!   projection, lifting loss, convex-hull support points, instance
//!   parameters) in exact rational arithmetic.
//! - [`instance`], [`experiment`], [`plot`]: planted instance generation,
//!   seeded experiment orchestration, and result/plot emission backing the
//!   `mpmoo` command-line harness.

pub mod analysis;
pub mod bpbomst;
pub mod dominance;
pub mod experiment;
pub mod graph;
pub mod instance;
pub mod mpjcg;
pub mod plot;
pub mod pseudoboolean;

pub use dominance::{DominanceOutcome, ObjectiveVector, Sense};
pub use mpjcg::{BitString, MpjcgInstance};
