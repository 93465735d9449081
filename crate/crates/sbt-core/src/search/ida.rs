//! Iterative-deepening A* for exact sorting distance beyond table range.
//!
//! The heuristic is the 3-norm of σ̂π̂⁻¹ — a proven lower bound that changes
//! by at most one per move, so the threshold ladder is admissible and each
//! completed threshold certifies "distance > threshold".  Children are
//! explored in lexicographic order of the sorted symbol triple, making the
//! returned witness the lexicographically smallest optimal move sequence.

#[cfg(feature = "parallel")]
use std::sync::atomic::{AtomicBool, AtomicU32, AtomicU64, Ordering};

use crate::perm::{Cycle, ExtendedPermutation};

use super::kernel::{self, Seq};
use super::{Method, SearchResult};

fn witness_cycles(trace: &[[u8; 3]]) -> Vec<Cycle> {
    trace
        .iter()
        .map(|t| {
            Cycle::three(t[0] as usize, t[1] as usize, t[2] as usize)
                .expect("recorded moves come from distinct positions")
        })
        .collect()
}

fn sorted3(a: u8, b: u8, c: u8) -> (usize, usize, usize) {
    let mut t = [a, b, c];
    t.sort_unstable();
    (t[0] as usize, t[1] as usize, t[2] as usize)
}

/// Exact distance via IDA*, parallel across root branches when the
/// `parallel` feature is enabled.
///
/// `budget` caps the number of node expansions.  When the cap is hit the
/// result comes back with `complete == false` and `distance` equal to the
/// deepest threshold proven — a valid lower bound, never a wrong answer.
pub fn exact_distance_ida(pi: &ExtendedPermutation, budget: Option<u64>) -> SearchResult {
    #[cfg(feature = "parallel")]
    {
        exact_distance_ida_par(pi, budget)
    }
    #[cfg(not(feature = "parallel"))]
    {
        exact_distance_ida_seq(pi, budget)
    }
}

struct SeqDfs {
    m: usize,
    threshold: u32,
    budget: u64,
    nodes: u64,
    next_threshold: u32,
    trace: Vec<[u8; 3]>,
    aborted: bool,
}

impl SeqDfs {
    fn run(&mut self, seq: &Seq, g: u32) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.aborted = true;
            return false;
        }
        let pos = kernel::positions(seq, self.m);
        let h = kernel::norm3(seq, self.m, &pos) as u32;
        if g + h > self.threshold {
            self.next_threshold = self.next_threshold.min(g + h);
            return false;
        }
        if h == 0 {
            return true; // zero norm happens exactly at ι̂
        }
        for a in 0..self.m {
            for b in a + 1..self.m {
                for c in b + 1..self.m {
                    let (i, j, k) = sorted3(pos[a], pos[b], pos[c]);
                    let child = kernel::child(seq, self.m, i, j, k);
                    self.trace.push([seq[i], seq[j], seq[k]]);
                    if self.run(&child, g + 1) {
                        return true;
                    }
                    self.trace.pop();
                    if self.aborted {
                        return false;
                    }
                }
            }
        }
        false
    }
}

/// Single-threaded IDA*.  Node counts are exact and reproducible.
pub fn exact_distance_ida_seq(pi: &ExtendedPermutation, budget: Option<u64>) -> SearchResult {
    let (seq, m) = kernel::from_ext(pi);
    let pos = kernel::positions(&seq, m);
    let h0 = kernel::norm3(&seq, m, &pos) as u32;
    if h0 == 0 {
        return SearchResult {
            distance: 0,
            witness: Vec::new(),
            nodes_expanded: 0,
            method: Method::Ida,
            complete: true,
        };
    }
    let mut dfs = SeqDfs {
        m,
        threshold: h0,
        budget: budget.unwrap_or(u64::MAX),
        nodes: 0,
        next_threshold: u32::MAX,
        trace: Vec::new(),
        aborted: false,
    };
    loop {
        dfs.next_threshold = u32::MAX;
        dfs.trace.clear();
        if dfs.run(&seq, 0) {
            return SearchResult {
                distance: dfs.threshold as usize,
                witness: witness_cycles(&dfs.trace),
                nodes_expanded: dfs.nodes,
                method: Method::Ida,
                complete: true,
            };
        }
        if dfs.aborted {
            // Thresholds below the current one are exhausted, so the
            // current threshold is still a sound lower bound.
            return SearchResult {
                distance: dfs.threshold as usize,
                witness: Vec::new(),
                nodes_expanded: dfs.nodes,
                method: Method::Ida,
                complete: false,
            };
        }
        debug_assert!(dfs.next_threshold < u32::MAX, "the move graph is connected");
        dfs.threshold = dfs.next_threshold;
    }
}

#[cfg(feature = "parallel")]
struct ParDfs<'a> {
    m: usize,
    threshold: u32,
    branch_index: u32,
    budget: u64,
    nodes: &'a AtomicU64,
    best_found: &'a AtomicU32,
    aborted: &'a AtomicBool,
    next_threshold: u32,
    trace: Vec<[u8; 3]>,
}

#[cfg(feature = "parallel")]
impl ParDfs<'_> {
    fn run(&mut self, seq: &Seq, g: u32) -> bool {
        if self.nodes.fetch_add(1, Ordering::Relaxed) + 1 > self.budget {
            self.aborted.store(true, Ordering::Relaxed);
            return false;
        }
        // A branch with a smaller index already holds a solution at this
        // threshold; nothing this branch finds can win the tie-break.
        if self.best_found.load(Ordering::Relaxed) < self.branch_index {
            return false;
        }
        let pos = kernel::positions(seq, self.m);
        let h = kernel::norm3(seq, self.m, &pos) as u32;
        if g + h > self.threshold {
            self.next_threshold = self.next_threshold.min(g + h);
            return false;
        }
        if h == 0 {
            return true;
        }
        for a in 0..self.m {
            for b in a + 1..self.m {
                for c in b + 1..self.m {
                    let (i, j, k) = sorted3(pos[a], pos[b], pos[c]);
                    let child = kernel::child(seq, self.m, i, j, k);
                    self.trace.push([seq[i], seq[j], seq[k]]);
                    if self.run(&child, g + 1) {
                        return true;
                    }
                    self.trace.pop();
                    if self.aborted.load(Ordering::Relaxed) {
                        return false;
                    }
                }
            }
        }
        false
    }
}

/// Parallel IDA*: each threshold pass fans the root branches out across
/// the thread pool.  Branches abandon themselves once a lexicographically
/// earlier branch has found a solution, so the witness matches the
/// sequential engine; node counts, however, depend on scheduling.
#[cfg(feature = "parallel")]
pub fn exact_distance_ida_par(pi: &ExtendedPermutation, budget: Option<u64>) -> SearchResult {
    use rayon::prelude::*;

    let (seq, m) = kernel::from_ext(pi);
    let pos = kernel::positions(&seq, m);
    let h0 = kernel::norm3(&seq, m, &pos) as u32;
    if h0 == 0 {
        return SearchResult {
            distance: 0,
            witness: Vec::new(),
            nodes_expanded: 0,
            method: Method::Ida,
            complete: true,
        };
    }

    // Root branches in lexicographic order of the sorted symbol triple;
    // branch index doubles as the tie-break rank.
    let mut roots: Vec<([u8; 3], Seq)> = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            for c in b + 1..m {
                let (i, j, k) = sorted3(pos[a], pos[b], pos[c]);
                roots.push(([seq[i], seq[j], seq[k]], kernel::child(&seq, m, i, j, k)));
            }
        }
    }

    let budget_limit = budget.unwrap_or(u64::MAX);
    let nodes = AtomicU64::new(0);
    let aborted = AtomicBool::new(false);
    let mut threshold = h0;
    loop {
        nodes.fetch_add(1, Ordering::Relaxed); // the root expansion itself
        let best_found = AtomicU32::new(u32::MAX);
        struct Branch {
            found: Option<Vec<[u8; 3]>>,
            exceed: u32,
        }
        let branches: Vec<Branch> = roots
            .par_iter()
            .enumerate()
            .map(|(idx, (tau, child))| {
                if aborted.load(Ordering::Relaxed) {
                    return Branch { found: None, exceed: u32::MAX };
                }
                let mut dfs = ParDfs {
                    m,
                    threshold,
                    branch_index: idx as u32,
                    budget: budget_limit,
                    nodes: &nodes,
                    best_found: &best_found,
                    aborted: &aborted,
                    next_threshold: u32::MAX,
                    trace: vec![*tau],
                };
                if dfs.run(child, 1) {
                    best_found.fetch_min(idx as u32, Ordering::Relaxed);
                    Branch { found: Some(dfs.trace), exceed: u32::MAX }
                } else {
                    Branch { found: None, exceed: dfs.next_threshold }
                }
            })
            .collect();

        if let Some(trace) = branches.iter().find_map(|b| b.found.as_ref()) {
            // `find_map` scans in branch order, so this is the smallest
            // branch index that found a solution.
            return SearchResult {
                distance: threshold as usize,
                witness: witness_cycles(trace),
                nodes_expanded: nodes.load(Ordering::Relaxed),
                method: Method::Ida,
                complete: true,
            };
        }
        if aborted.load(Ordering::Relaxed) {
            return SearchResult {
                distance: threshold as usize,
                witness: Vec::new(),
                nodes_expanded: nodes.load(Ordering::Relaxed),
                method: Method::Ida,
                complete: false,
            };
        }
        let next = branches.iter().map(|b| b.exceed).min().unwrap_or(u32::MAX);
        debug_assert!(next < u32::MAX, "the move graph is connected");
        threshold = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::table::{build_distance_table, distance_via_table};

    #[test]
    fn identity_needs_no_moves() {
        let res = exact_distance_ida(&ExtendedPermutation::identity(6), None);
        assert_eq!(res.distance, 0);
        assert!(res.witness.is_empty());
        assert!(res.complete);
        assert_eq!(res.method, Method::Ida);
    }

    /// IDA* must reproduce the table exactly — distance *and* witness,
    /// since both engines break ties toward the lexicographically smallest
    /// move sequence.
    #[test]
    fn agrees_with_the_table_on_every_small_state() {
        for n in 1..=5usize {
            let table = build_distance_table(n).unwrap();
            for rank in 0..table.states() {
                let seq = crate::search::kernel::unrank_state(rank, n + 1);
                let pi = crate::search::kernel::to_ext(&seq, n + 1);
                let via_table = distance_via_table(&table, &pi).unwrap();
                let via_ida = exact_distance_ida_seq(&pi, None);
                assert_eq!(via_ida.distance, via_table.distance, "n={n} rank={rank}");
                assert_eq!(via_ida.witness, via_table.witness, "n={n} rank={rank}");
                assert!(via_ida.complete);
            }
        }
    }

    #[test]
    fn witness_actually_sorts() {
        let pi = ExtendedPermutation::parse_one_line("[4 5 2 3 7 6 1 8]").unwrap();
        let res = exact_distance_ida(&pi, None);
        assert!(res.complete);
        let mut state = pi;
        for tau in &res.witness {
            state = state.apply(tau).unwrap();
        }
        assert!(state.is_identity());
        assert_eq!(res.witness.len(), res.distance);
        assert!(res.nodes_expanded > 0);
    }

    #[test]
    fn budget_exhaustion_reports_a_lower_bound_not_an_answer() {
        let pi = ExtendedPermutation::parse_one_line("[5 4 3 2 1]").unwrap();
        let starved = exact_distance_ida_seq(&pi, Some(2));
        assert!(!starved.complete);
        assert!(starved.witness.is_empty());
        // The reported value must lower-bound the true distance of 3.
        assert!(starved.distance <= 3);
        assert!(starved.distance >= crate::bounds::bp_lower_bound(&pi));
        let fed = exact_distance_ida_seq(&pi, Some(1_000_000));
        assert!(fed.complete);
        assert_eq!(fed.distance, 3);
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn parallel_and_sequential_agree_including_witnesses() {
        for text in ["[5 4 3 2 1]", "[4 5 2 3 7 6 1 8]", "[3 1 2]", "[2 1 4 3 6 5]"] {
            let pi = ExtendedPermutation::parse_one_line(text).unwrap();
            let s = exact_distance_ida_seq(&pi, None);
            let p = exact_distance_ida_par(&pi, None);
            assert_eq!(s.distance, p.distance, "{text}");
            assert_eq!(s.witness, p.witness, "{text}");
        }
    }
}
