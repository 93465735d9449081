//! Dense breadth-first distance tables over all (n+1)-cycles.
//!
//! The move relation is symmetric — if τ applies to π̂ then τ⁻¹ applies to
//! τπ̂ and undoes it — so a breadth-first sweep from ι̂ under *forward*
//! moves labels every state with its exact sorting distance.  One byte per
//! state, indexed by the Lehmer rank of the one-line form.

use std::fs;
use std::path::{Path, PathBuf};
#[cfg(feature = "parallel")]
use std::sync::atomic::{AtomicU8, Ordering};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::perm::{Cycle, ExtendedPermutation};
use crate::{Error, Result};

use super::kernel::{self, Seq};
use super::rank::FACT;
use super::{Method, SearchResult};

/// Largest supported m = n+1: the table holds n! bytes, so 12 symbols
/// (11! ≈ 40 MB) is the practical ceiling.
pub const MAX_TABLE_SYMBOLS: usize = 12;

const UNSET: u8 = 0xFF;
const MAGIC: &[u8; 6] = b"SBTDT\0";
const FORMAT_VERSION: u16 = 1;

/// Exact sorting distances for every (n+1)-cycle on a fixed n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceTable {
    n: usize,
    dist: Vec<u8>,
}

fn check_table_size(n: usize) -> Result<usize> {
    let m = n + 1;
    if m > MAX_TABLE_SYMBOLS {
        return Err(Error::Capacity(format!(
            "distance table for n = {n} would hold {n}! bytes; the table builder caps at \
             n + 1 = {MAX_TABLE_SYMBOLS} symbols"
        )));
    }
    Ok(m)
}

/// Builds the full distance table for permutations of `{1..n}`, using the
/// parallel sweep when the `parallel` feature is enabled.
pub fn build_distance_table(n: usize) -> Result<DistanceTable> {
    #[cfg(feature = "parallel")]
    {
        build_distance_table_par(n)
    }
    #[cfg(not(feature = "parallel"))]
    {
        build_distance_table_seq(n)
    }
}

/// Single-threaded table build: level-synchronous sweeps over the rank
/// space, expanding each frontier state through all block exchanges.
pub fn build_distance_table_seq(n: usize) -> Result<DistanceTable> {
    let m = check_table_size(n)?;
    let total = FACT[n] as usize;
    let mut dist = vec![UNSET; total];
    dist[0] = 0; // the identity is the lexicographically first state
    let mut level = 0u8;
    let mut remaining = total - 1;
    while remaining > 0 {
        let mut assigned = 0usize;
        for r in 0..total {
            if dist[r] != level {
                continue;
            }
            let seq = kernel::unrank_state(r as u64, m);
            assigned += expand_frontier_state(&seq, m, level + 1, &mut dist);
        }
        debug_assert!(assigned > 0, "every (n+1)-cycle is reachable from the identity");
        remaining -= assigned;
        level += 1;
    }
    Ok(DistanceTable { n, dist })
}

fn expand_frontier_state(seq: &Seq, m: usize, next: u8, dist: &mut [u8]) -> usize {
    let mut assigned = 0;
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                let c = kernel::child(seq, m, i, j, k);
                let cr = kernel::rank_state(&c, m) as usize;
                if dist[cr] == UNSET {
                    dist[cr] = next;
                    assigned += 1;
                }
            }
        }
    }
    assigned
}

/// Parallel table build.  Each sweep splits the rank space across threads;
/// newly reached states are claimed with a compare-and-swap so the per-level
/// counts stay exact and no state is assigned twice.
#[cfg(feature = "parallel")]
pub fn build_distance_table_par(n: usize) -> Result<DistanceTable> {
    use rayon::prelude::*;

    let m = check_table_size(n)?;
    let total = FACT[n] as usize;
    let dist: Vec<AtomicU8> = (0..total).map(|_| AtomicU8::new(UNSET)).collect();
    dist[0].store(0, Ordering::Relaxed);
    let mut level = 0u8;
    let mut remaining = (total - 1) as u64;
    while remaining > 0 {
        let next = level + 1;
        let assigned: u64 = (0..total)
            .into_par_iter()
            .with_min_len(1 << 13)
            .map(|r| {
                if dist[r].load(Ordering::Relaxed) != level {
                    return 0u64;
                }
                let seq = kernel::unrank_state(r as u64, m);
                let mut claimed = 0u64;
                for i in 0..m {
                    for j in i + 1..m {
                        for k in j + 1..m {
                            let c = kernel::child(&seq, m, i, j, k);
                            let cr = kernel::rank_state(&c, m) as usize;
                            if dist[cr]
                                .compare_exchange(UNSET, next, Ordering::Relaxed, Ordering::Relaxed)
                                .is_ok()
                            {
                                claimed += 1;
                            }
                        }
                    }
                }
                claimed
            })
            .sum();
        debug_assert!(assigned > 0, "every (n+1)-cycle is reachable from the identity");
        remaining -= assigned;
        level = next;
    }
    let dist = dist.into_iter().map(AtomicU8::into_inner).collect();
    Ok(DistanceTable { n, dist })
}

impl DistanceTable {
    /// The n this table was built for (states are permutations of `{1..n}`).
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of states in the table, i.e. n!.
    pub fn states(&self) -> u64 {
        self.dist.len() as u64
    }

    /// Exact distance of π̂, or a size-mismatch error when π̂ lives on a
    /// different symbol set than the table.
    pub fn distance_of(&self, pi: &ExtendedPermutation) -> Result<usize> {
        if pi.n() != self.n {
            return Err(Error::SizeMismatch {
                left: self.n + 1,
                right: pi.size(),
            });
        }
        let (seq, m) = kernel::from_ext(pi);
        Ok(self.dist[kernel::rank_state(&seq, m) as usize] as usize)
    }

    /// Distance of the state with the given Lehmer rank.
    pub fn distance_at_rank(&self, rank: u64) -> usize {
        self.dist[rank as usize] as usize
    }

    /// Largest distance stored anywhere in the table.
    pub fn max_distance(&self) -> usize {
        self.dist.iter().copied().max().unwrap_or(0) as usize
    }

    /// Histogram of distances: `counts[d]` states at distance d.
    pub fn level_counts(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.max_distance() + 1];
        for &d in &self.dist {
            counts[d as usize] += 1;
        }
        counts
    }

    /// Writes the table to `path` (16-byte header followed by the raw
    /// distance bytes) plus a `.json` sidecar carrying a checksum and the
    /// level histogram, so later loads can detect truncation or tampering.
    pub fn save(&self, path: &Path) -> Result<()> {
        let mut bytes = Vec::with_capacity(16 + self.dist.len());
        bytes.extend_from_slice(MAGIC);
        bytes.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
        bytes.extend_from_slice(&(self.n as u64).to_le_bytes());
        bytes.extend_from_slice(&self.dist);
        fs::write(path, &bytes)?;
        let sidecar = TableSidecar {
            format_version: FORMAT_VERSION,
            n: self.n,
            states: self.states(),
            sha256: hex_sha256(&self.dist),
            levels: self.level_counts(),
        };
        let json = serde_json::to_vec_pretty(&sidecar).expect("sidecar metadata always serializes");
        fs::write(sidecar_path(path), json)?;
        Ok(())
    }

    /// Loads a table written by [`DistanceTable::save`], validating the
    /// header and — when the sidecar is present — the payload checksum.
    pub fn load(path: &Path) -> Result<DistanceTable> {
        let bytes = fs::read(path)?;
        if bytes.len() < 16 || &bytes[..6] != MAGIC {
            return Err(Error::TableFormat(format!(
                "{} is not a distance table (bad magic)",
                path.display()
            )));
        }
        let version = u16::from_le_bytes([bytes[6], bytes[7]]);
        if version != FORMAT_VERSION {
            return Err(Error::TableFormat(format!(
                "unsupported table format version {version} (this build reads {FORMAT_VERSION})"
            )));
        }
        let n = u64::from_le_bytes(bytes[8..16].try_into().unwrap()) as usize;
        if n + 1 > MAX_TABLE_SYMBOLS {
            return Err(Error::TableFormat(format!("header claims n = {n}, beyond capacity")));
        }
        if bytes.len() - 16 != FACT[n] as usize {
            return Err(Error::TableFormat(format!(
                "payload holds {} bytes but n = {n} needs {}",
                bytes.len() - 16,
                FACT[n]
            )));
        }
        let dist = bytes[16..].to_vec();
        let sc_path = sidecar_path(path);
        if sc_path.exists() {
            let sc: TableSidecar = serde_json::from_slice(&fs::read(&sc_path)?)
                .map_err(|e| Error::TableFormat(format!("unreadable sidecar {}: {e}", sc_path.display())))?;
            if sc.n != n {
                return Err(Error::TableFormat(format!(
                    "sidecar was written for n = {} but the table header says n = {n}",
                    sc.n
                )));
            }
            if sc.sha256 != hex_sha256(&dist) {
                return Err(Error::TableFormat(format!(
                    "checksum mismatch between {} and its sidecar",
                    path.display()
                )));
            }
        }
        Ok(DistanceTable { n, dist })
    }
}

#[derive(Serialize, Deserialize)]
struct TableSidecar {
    format_version: u16,
    n: usize,
    states: u64,
    sha256: String,
    levels: Vec<u64>,
}

fn sidecar_path(path: &Path) -> PathBuf {
    let mut os = path.as_os_str().to_owned();
    os.push(".json");
    PathBuf::from(os)
}

fn hex_sha256(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Table-backed exact distance with a witness: the distance is a direct
/// lookup and the move sequence is recovered by greedy descent, always
/// taking the lexicographically smallest move (by sorted symbol triple)
/// that steps one level closer to ι̂.
pub fn distance_via_table(table: &DistanceTable, pi: &ExtendedPermutation) -> Result<SearchResult> {
    let distance = table.distance_of(pi)?;
    let (mut seq, m) = kernel::from_ext(pi);
    let mut witness = Vec::with_capacity(distance);
    let mut nodes = 0u64;
    let mut d = distance;
    while d > 0 {
        let pos = kernel::positions(&seq, m);
        let mut stepped = false;
        'moves: for a in 0..m {
            for b in a + 1..m {
                for c in b + 1..m {
                    let (i, j, k) = sorted3(pos[a], pos[b], pos[c]);
                    let child = kernel::child(&seq, m, i, j, k);
                    nodes += 1;
                    if table.dist[kernel::rank_state(&child, m) as usize] as usize == d - 1 {
                        let tau = Cycle::three(seq[i] as usize, seq[j] as usize, seq[k] as usize)
                            .expect("positions are distinct, so the symbols are too");
                        witness.push(tau);
                        seq = child;
                        d -= 1;
                        stepped = true;
                        break 'moves;
                    }
                }
            }
        }
        debug_assert!(stepped, "some move always descends from a positive level");
    }
    Ok(SearchResult {
        distance,
        witness,
        nodes_expanded: nodes,
        method: Method::BfsTable,
        complete: true,
    })
}

fn sorted3(a: u8, b: u8, c: u8) -> (usize, usize, usize) {
    let mut t = [a, b, c];
    t.sort_unstable();
    (t[0] as usize, t[1] as usize, t[2] as usize)
}

/// Which states a diameter scan ranges over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DistanceFilter {
    /// Every (n+1)-cycle.
    All,
    /// Only 3-permutations (all σ̂π̂⁻¹ cycles of length 1 or 3).
    ThreePermutations,
}

/// Result of a diameter scan: the largest distance among the filtered
/// states, with every attaining state kept as a sorted rank list.
#[derive(Clone, Debug)]
pub struct DiameterScan {
    n: usize,
    filter: DistanceFilter,
    max_distance: usize,
    states_scanned: u64,
    argmax_ranks: Vec<u64>,
}

impl DiameterScan {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn filter(&self) -> DistanceFilter {
        self.filter
    }

    /// The diameter of the filtered state set.
    pub fn max_distance(&self) -> usize {
        self.max_distance
    }

    pub fn states_scanned(&self) -> u64 {
        self.states_scanned
    }

    /// How many states attain the maximum.
    pub fn argmax_count(&self) -> usize {
        self.argmax_ranks.len()
    }

    /// The attaining states, in ascending rank (lexicographic) order.
    /// Materialized lazily — argmax sets can run to thousands of states.
    pub fn argmax(&self) -> impl Iterator<Item = ExtendedPermutation> + '_ {
        let m = self.n + 1;
        self.argmax_ranks.iter().map(move |&r| {
            let seq = kernel::unrank_state(r, m);
            kernel::to_ext(&seq, m)
        })
    }

    /// Lexicographically first attaining state.
    pub fn first_argmax(&self) -> Option<ExtendedPermutation> {
        self.argmax().next()
    }

    /// Whether π̂ is one of the attaining states.
    pub fn contains(&self, pi: &ExtendedPermutation) -> bool {
        if pi.n() != self.n {
            return false;
        }
        let (seq, m) = kernel::from_ext(pi);
        self.argmax_ranks.binary_search(&kernel::rank_state(&seq, m)).is_ok()
    }
}

fn passes(filter: DistanceFilter, rank: u64, m: usize) -> bool {
    match filter {
        DistanceFilter::All => true,
        DistanceFilter::ThreePermutations => {
            let seq = kernel::unrank_state(rank, m);
            let pos = kernel::positions(&seq, m);
            kernel::is_three_perm(&seq, m, &pos)
        }
    }
}

/// Builds the table for n and scans it.  See [`scan_table`] to reuse an
/// existing table across several scans.
pub fn diameter_scan(n: usize, filter: DistanceFilter) -> Result<DiameterScan> {
    let table = build_distance_table(n)?;
    Ok(scan_table(&table, filter))
}

/// Scans a prebuilt table for the maximum distance over the filtered
/// states, parallel when the feature is enabled.  Both paths return the
/// same scan: the argmax ranks are sorted ascending either way.
pub fn scan_table(table: &DistanceTable, filter: DistanceFilter) -> DiameterScan {
    #[cfg(feature = "parallel")]
    {
        scan_table_par(table, filter)
    }
    #[cfg(not(feature = "parallel"))]
    {
        scan_table_seq(table, filter)
    }
}

/// Single-threaded scan: one pass, tracking the running maximum and its
/// attaining ranks.
pub fn scan_table_seq(table: &DistanceTable, filter: DistanceFilter) -> DiameterScan {
    let m = table.n + 1;
    let mut max = 0usize;
    let mut ranks: Vec<u64> = Vec::new();
    for (r, &d) in table.dist.iter().enumerate() {
        let d = d as usize;
        if d < max {
            continue; // cheap reject before the (possibly costly) filter
        }
        if !passes(filter, r as u64, m) {
            continue;
        }
        if d > max {
            max = d;
            ranks.clear();
        }
        ranks.push(r as u64);
    }
    DiameterScan {
        n: table.n,
        filter,
        max_distance: max,
        states_scanned: table.states(),
        argmax_ranks: ranks,
    }
}

/// Parallel scan: per-chunk maxima are folded and merged, then the
/// surviving ranks are sorted so the result matches the sequential scan.
#[cfg(feature = "parallel")]
pub fn scan_table_par(table: &DistanceTable, filter: DistanceFilter) -> DiameterScan {
    use rayon::prelude::*;

    let m = table.n + 1;
    let (max, mut ranks) = (0..table.dist.len())
        .into_par_iter()
        .with_min_len(1 << 13)
        .fold(
            || (0usize, Vec::new()),
            |(mut max, mut ranks), r| {
                let d = table.dist[r] as usize;
                if d >= max && passes(filter, r as u64, m) {
                    if d > max {
                        max = d;
                        ranks.clear();
                    }
                    ranks.push(r as u64);
                }
                (max, ranks)
            },
        )
        .reduce(
            || (0usize, Vec::new()),
            |(amax, aranks), (bmax, branks)| {
                use std::cmp::Ordering::*;
                match amax.cmp(&bmax) {
                    Greater => (amax, aranks),
                    Less => (bmax, branks),
                    Equal => {
                        let (mut aranks, branks) = (aranks, branks);
                        aranks.extend(branks);
                        (amax, aranks)
                    }
                }
            },
        );
    ranks.sort_unstable();
    DiameterScan {
        n: table.n,
        filter,
        max_distance: max,
        states_scanned: table.states(),
        argmax_ranks: ranks,
    }
}
