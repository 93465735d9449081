//! Exact-search workbench: dense distance tables, IDA*, bounded
//! (x,y)-sequence search, a brute-force norm oracle, a diameter scanner,
//! and a replay of the recorded worked example.
//!
//! Everything that is feasible to verify exhaustively lives here.  The
//! table engine answers any question on up to 12 symbols by brute force;
//! IDA* (with the 3-norm as an admissible, consistent heuristic) reaches
//! the mid-size instances the tables cannot hold; the (x,y)-searcher
//! proves *negative* statements — "no such move sequence exists" — which
//! is where the lower-bound results come from.
//!
//! With the `parallel` feature (on by default) the table sweeps, scans and
//! IDA* root branches fan out across a rayon pool; every engine keeps a
//! sequential twin that returns bit-identical answers.

mod example7;
mod ida;
pub(crate) mod kernel;
mod oracle;
pub(crate) mod rank;
mod table;
mod xy;

use serde::Serialize;

use crate::perm::Cycle;

pub use example7::{verify_example7, Example7Report, Example7Step};
#[cfg(feature = "parallel")]
pub use ida::exact_distance_ida_par;
pub use ida::{exact_distance_ida, exact_distance_ida_seq};
pub use oracle::{three_norm_oracle, ThreeNormOracle, MAX_ORACLE_SYMBOLS};
#[cfg(feature = "parallel")]
pub use table::{build_distance_table_par, scan_table_par};
pub use table::{
    build_distance_table, build_distance_table_seq, diameter_scan, distance_via_table, scan_table,
    scan_table_seq, DiameterScan, DistanceFilter, DistanceTable, MAX_TABLE_SYMBOLS,
};
pub use xy::{find_xy_sequence, SequenceQuery, XyOutcome};

/// Which engine produced a [`SearchResult`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Lookup in a full breadth-first table, witness by greedy descent.
    BfsTable,
    /// Iterative-deepening A* on the 3-norm heuristic.
    Ida,
}

/// An exact-distance answer with its optimal move sequence.
///
/// When `complete` is false the engine ran out of budget: `distance` is
/// then a *proven lower bound* (the last exhausted threshold) and the
/// witness is empty.  A `SearchResult` never carries a wrong distance.
#[derive(Clone, Debug, Serialize)]
pub struct SearchResult {
    pub distance: usize,
    /// Moves in application order; applying them to the queried π̂ in
    /// sequence yields ι̂.  Lexicographically smallest among the optimal
    /// sequences (comparing moves as sorted symbol triples).
    pub witness: Vec<Cycle>,
    pub nodes_expanded: u64,
    pub method: Method,
    pub complete: bool,
}
