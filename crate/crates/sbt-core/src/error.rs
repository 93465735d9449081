use thiserror::Error;

use crate::perm::{Cycle, CycleDecomposition};

/// Errors shared by every module in the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Input text or an image table that does not describe a permutation of
    /// the expected symbol set.  The message names the offending token.
    #[error("malformed permutation: {0}")]
    Malformed(String),

    /// Two permutations of different sizes were combined.
    #[error("size mismatch: left acts on {left} symbols, right on {right}")]
    SizeMismatch { left: usize, right: usize },

    /// The 3-cycle does not respect the cyclic order of the target, so the
    /// product is not a single cycle.  Carries the product's decomposition,
    /// which shows exactly how the cycle broke apart.
    #[error("{tau} is not applicable: the product decomposes as {product}")]
    NotApplicable { tau: Cycle, product: CycleDecomposition },

    /// An odd permutation reached an operation defined only for even ones
    /// (products of 3-cycles generate exactly the even permutations).
    #[error("{context}: permutation is odd, but only even permutations are products of 3-cycles")]
    OddPermutation { context: &'static str },

    /// A parameter is outside the domain of the requested operation.
    #[error("{0}")]
    Domain(String),

    /// The request is well-formed but too large for the chosen method
    /// (e.g. a full distance table beyond the supported size).
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// A generated object failed its own post-construction validation.
    /// This is a bug guard: constructions are checked, never trusted.
    #[error("construction invalid: {0}")]
    Construction(String),

    /// Underlying I/O failure while reading or writing table files.
    #[error(transparent)]
    Io(#[from] std::io::Error),

    /// A table or sidecar file exists but its contents are not trustworthy.
    #[error("table file rejected: {0}")]
    TableFormat(String),
}
