//! Bounded search for (x,y)-sequences: at most x moves, at least y of them
//! 2-moves, reaching a prescribed total norm drop.
//!
//! The pruning leans on the fact that a single move changes the odd-cycle
//! count of σ̂π̂⁻¹ by −2, 0 or +2 — so each move contributes at most one
//! 2-move and at most one unit of norm drop.  Branches that cannot close
//! the remaining gap within the remaining moves are cut immediately, which
//! is what makes negative answers ("no such sequence exists") affordable.

use crate::perm::{Cycle, ExtendedPermutation};

use super::kernel::{self, Seq};

/// What to search for: a sequence of at most `x` applicable moves with at
/// least `y` 2-moves whose net effect lowers the 3-norm by at least
/// `target_norm_drop`.
#[derive(Clone, Copy, Debug)]
pub struct SequenceQuery {
    /// Maximum number of moves in the sequence.
    pub x: usize,
    /// Minimum number of 2-moves among them.
    pub y: usize,
    /// Minimum total decrease of ‖σ̂π̂⁻¹‖₃ over the whole sequence.
    pub target_norm_drop: usize,
    /// Optional cap on node expansions; exceeding it yields
    /// [`XyOutcome::Indeterminate`].
    pub budget: Option<u64>,
}

/// Three-valued answer: a witness, a verified absence, or an aborted
/// search that proves nothing either way.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum XyOutcome {
    Found { witness: Vec<Cycle>, nodes_expanded: u64 },
    NotFound { nodes_expanded: u64 },
    Indeterminate { nodes_expanded: u64 },
}

impl XyOutcome {
    pub fn nodes_expanded(&self) -> u64 {
        match self {
            XyOutcome::Found { nodes_expanded, .. }
            | XyOutcome::NotFound { nodes_expanded }
            | XyOutcome::Indeterminate { nodes_expanded } => *nodes_expanded,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, XyOutcome::Found { .. })
    }
}

struct XyDfs {
    m: usize,
    x: usize,
    y: usize,
    target: i64,
    budget: u64,
    nodes: u64,
    aborted: bool,
    trace: Vec<[u8; 3]>,
}

impl XyDfs {
    fn run(&mut self, seq: &Seq, depth: usize, twos: usize, drop: i64) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.aborted = true;
            return false;
        }
        if twos >= self.y && drop >= self.target {
            return true;
        }
        let remaining = self.x - depth;
        // One move buys at most one 2-move and one unit of drop (and a
        // −2-move actually *raises* the norm), so an unclosable gap is
        // unclosable for good.
        if self.y.saturating_sub(twos) > remaining || self.target - drop > remaining as i64 {
            return false;
        }
        let pos = kernel::positions(seq, self.m);
        let odd = kernel::sigma_odd_count(seq, self.m, &pos) as i64;
        for a in 0..self.m {
            for b in a + 1..self.m {
                for c in b + 1..self.m {
                    let (i, j, k) = sorted3(pos[a], pos[b], pos[c]);
                    let child = kernel::child(seq, self.m, i, j, k);
                    let child_pos = kernel::positions(&child, self.m);
                    let mu = kernel::sigma_odd_count(&child, self.m, &child_pos) as i64 - odd;
                    debug_assert!(mu == -2 || mu == 0 || mu == 2);
                    self.trace.push([seq[i], seq[j], seq[k]]);
                    let found = self.run(
                        &child,
                        depth + 1,
                        twos + usize::from(mu == 2),
                        drop + mu / 2,
                    );
                    if found {
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

fn sorted3(a: u8, b: u8, c: u8) -> (usize, usize, usize) {
    let mut t = [a, b, c];
    t.sort_unstable();
    (t[0] as usize, t[1] as usize, t[2] as usize)
}

/// Searches for a sequence matching `query`, depth-first with children in
/// lexicographic order, so a `Found` witness is reproducible.
///
/// The query must be internally consistent: `y <= x` and
/// `target_norm_drop <= x`, since no longer gain fits in x moves.
pub fn find_xy_sequence(pi: &ExtendedPermutation, query: &SequenceQuery) -> XyOutcome {
    assert!(query.y <= query.x, "cannot fit {} 2-moves into {} moves", query.y, query.x);
    assert!(
        query.target_norm_drop <= query.x,
        "cannot drop the norm by {} in {} moves",
        query.target_norm_drop,
        query.x
    );
    let (seq, m) = kernel::from_ext(pi);
    let mut dfs = XyDfs {
        m,
        x: query.x,
        y: query.y,
        target: query.target_norm_drop as i64,
        budget: query.budget.unwrap_or(u64::MAX),
        nodes: 0,
        aborted: false,
        trace: Vec::new(),
    };
    if dfs.run(&seq, 0, 0, 0) {
        let witness = dfs
            .trace
            .iter()
            .map(|t| {
                Cycle::three(t[0] as usize, t[1] as usize, t[2] as usize)
                    .expect("recorded moves come from distinct positions")
            })
            .collect();
        XyOutcome::Found { witness, nodes_expanded: dfs.nodes }
    } else if dfs.aborted {
        XyOutcome::Indeterminate { nodes_expanded: dfs.nodes }
    } else {
        XyOutcome::NotFound { nodes_expanded: dfs.nodes }
    }
}
