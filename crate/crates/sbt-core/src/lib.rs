//! Permutation algebra and exact-search workbench for *sorting by
//! transpositions* in its circular, group-theoretic formulation.
//!
//! A permutation `π = [π1 … πn]` of `{1..n}` is modeled as the `(n+1)`-cycle
//! `π̂ = (0 π1 … πn)` over `{0..n}`.  A transposition (block exchange) is a
//! left-multiplication by an *applicable* 3-cycle, and the transposition
//! distance of `π` is the least number of applicable 3-cycles whose product
//! with `π̂` is `ι̂ = (0 1 … n)`.
//!
//! The crate provides:
//!
//! * [`perm`] — the algebra itself: cycles, products, applicability, moves;
//! * [`structure`] — orientation, intersection/interleaving, components,
//!   palisades and 3-permutations;
//! * [`bounds`] — the 3-norm and the lower/upper-bound arithmetic built on it;
//! * [`generators`] — reproducible permutation families and corpora;
//! * [`search`] — exact BFS distance tables, IDA* search, bounded
//!   move-sequence search, and an independent small-size 3-norm oracle;
//! * [`cycle_graph`] — the classical bicolored cycle graph, kept in exact
//!   correspondence with the algebraic view.
//!
//! Heavy scans (table builds, diameter sweeps, exhaustive verification) run
//! on rayon when the default `parallel` feature is enabled; every such entry
//! point also has a sequential implementation that is always compiled, both
//! as a fallback and as a benchmark baseline.

pub mod bounds;
pub mod cycle_graph;
mod error;
pub mod generators;
pub mod perm;
pub mod search;
pub mod structure;

pub use error::Error;
pub use perm::{Cycle, CycleDecomposition, ExtendedPermutation, Permutation};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
