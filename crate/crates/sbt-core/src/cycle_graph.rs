//! The classical bicolored cycle graph `G(π)` — the standard pictorial
//! model of sorting by transpositions — kept in exact correspondence with
//! the algebraic view used everywhere else in this crate.
//!
//! For `π = [π1 … πn]`, pad with `π0 = 0` and `πn+1 = n+1`.  The graph has
//! vertices `{+0, −1, +1, −2, +2, …, −n, +n, −(n+1)}`, a *black* edge
//! `−πi → +πi−1` for every `i ∈ [1, n+1]` (the adjacencies the permutation
//! currently has) and a *gray* edge `+v → −(v+1)` for every `v ∈ [0, n]`
//! (the adjacencies the identity wants).  Every vertex has exactly one
//! incoming and one outgoing edge of alternating colors, so the edges split
//! into disjoint alternating cycles; a cycle with `κ` black edges is a
//! `κ`-cycle, and `c_odd` counts those with odd `κ`.
//!
//! The multiset of `κ` values is exactly the multiset of cycle lengths of
//! `σ̂π̂⁻¹`, so the classical lower bound `(n+1 − c_odd)/2` coincides with
//! [`bp_lower_bound`](crate::bounds::bp_lower_bound) — we test this
//! exhaustively rather than assume it.  The module also houses the
//! positional form of a transposition (the literal block exchange
//! `τ(i, j, k)` on one-line text) and its translation to the symbol
//! 3-cycle the algebraic side multiplies by; the two act identically, which
//! is again tested, not assumed.

use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};
use std::fmt;

use crate::{Cycle, Error, ExtendedPermutation, Result};

/// A vertex of the cycle graph: the positive or negative copy of an
/// element of `{0, …, n+1}`.  `Plus(v)` exists for `v ∈ [0, n]`,
/// `Minus(v)` for `v ∈ [1, n+1]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Vertex {
    Plus(usize),
    Minus(usize),
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::Plus(v) => write!(f, "+{v}"),
            Vertex::Minus(v) => write!(f, "-{v}"),
        }
    }
}

impl Serialize for Vertex {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// One alternating cycle, recorded by the padded positions `i ∈ [1, n+1]`
/// of its black edges, in traversal order starting from the smallest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphCycle {
    black_positions: Vec<usize>,
}

impl GraphCycle {
    /// Number of black edges — the `κ` of a `κ`-cycle.
    pub fn kappa(&self) -> usize {
        self.black_positions.len()
    }

    pub fn is_odd(&self) -> bool {
        self.kappa() % 2 == 1
    }

    /// Padded positions of the member black edges; the first entry is the
    /// smallest (the canonical starting point), the rest follow the walk.
    pub fn black_positions(&self) -> &[usize] {
        &self.black_positions
    }
}

impl Serialize for GraphCycle {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut state = serializer.serialize_struct("GraphCycle", 3)?;
        state.serialize_field("kappa", &self.kappa())?;
        state.serialize_field("odd", &self.is_odd())?;
        state.serialize_field("black_positions", &self.black_positions)?;
        state.end()
    }
}

/// The cycle graph `G(π)` together with its alternating-cycle
/// decomposition.
///
/// Construction walks each alternating cycle once: the black edge at
/// padded position `i` runs `−πi → +πi−1`, the gray edge out of `+πi−1`
/// runs to `−(πi−1 + 1)`, and the black edge out of that vertex sits at
/// the position holding symbol `πi−1 + 1`.  Cycles are canonicalized by
/// their minimum black-edge position and listed in increasing order of it.
#[derive(Clone, Debug)]
pub struct CycleGraph {
    n: usize,
    /// `[0, π1, …, πn, n+1]` — one-line form with both sentinels.
    padded: Vec<usize>,
    cycles: Vec<GraphCycle>,
    /// `cycle_of_black[i]` = index into `cycles` owning the black edge at
    /// padded position `i` (entry 0 is unused padding).
    cycle_of_black: Vec<usize>,
}

impl CycleGraph {
    pub fn of(pi: &ExtendedPermutation) -> CycleGraph {
        let n = pi.n();
        let mut padded = Vec::with_capacity(n + 2);
        padded.push(0);
        padded.extend_from_slice(pi.one_line());
        padded.push(n + 1);

        // Where each symbol sits in the padded line; after the black edge
        // at position i, the walk re-enters black at the position holding
        // padded[i-1] + 1.
        let mut position_of = vec![0; n + 2];
        for (i, &x) in padded.iter().enumerate() {
            position_of[x] = i;
        }

        let mut cycle_of_black = vec![usize::MAX; n + 2];
        let mut cycles = Vec::new();
        for start in 1..=n + 1 {
            if cycle_of_black[start] != usize::MAX {
                continue;
            }
            let index = cycles.len();
            let mut black_positions = Vec::new();
            let mut i = start;
            loop {
                cycle_of_black[i] = index;
                black_positions.push(i);
                i = position_of[padded[i - 1] + 1];
                if i == start {
                    break;
                }
            }
            cycles.push(GraphCycle { black_positions });
        }
        debug_assert_eq!(cycles.iter().map(GraphCycle::kappa).sum::<usize>(), n + 1);

        CycleGraph { n, padded, cycles, cycle_of_black }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// All `2(n+1)` vertices in the interleaved reading order
    /// `+0, −1, +1, −2, +2, …, −n, +n, −(n+1)`.
    pub fn vertices(&self) -> Vec<Vertex> {
        let mut out = Vec::with_capacity(2 * (self.n + 1));
        out.push(Vertex::Plus(0));
        for v in 1..=self.n {
            out.push(Vertex::Minus(v));
            out.push(Vertex::Plus(v));
        }
        out.push(Vertex::Minus(self.n + 1));
        out
    }

    /// Black edges `−πi → +πi−1` in padded-position order `i = 1..=n+1`.
    pub fn black_edges(&self) -> Vec<(Vertex, Vertex)> {
        (1..=self.n + 1)
            .map(|i| (Vertex::Minus(self.padded[i]), Vertex::Plus(self.padded[i - 1])))
            .collect()
    }

    /// Gray edges `+v → −(v+1)` in order `v = 0..=n`.
    pub fn gray_edges(&self) -> Vec<(Vertex, Vertex)> {
        (0..=self.n).map(|v| (Vertex::Plus(v), Vertex::Minus(v + 1))).collect()
    }

    /// The alternating cycles, ordered by minimum black-edge position.
    pub fn cycles(&self) -> &[GraphCycle] {
        &self.cycles
    }

    /// The `κ` of every cycle, sorted ascending — the graph-side multiset
    /// that must match the cycle-length multiset of `σ̂π̂⁻¹`.
    pub fn kappa_multiset(&self) -> Vec<usize> {
        let mut kappas: Vec<usize> = self.cycles.iter().map(GraphCycle::kappa).collect();
        kappas.sort_unstable();
        kappas
    }

    /// Number of alternating cycles with odd `κ`.
    pub fn odd_cycle_count(&self) -> usize {
        self.cycles.iter().filter(|c| c.is_odd()).count()
    }

    /// The classical lower bound `(n+1 − c_odd)/2` read off this graph.
    pub fn bp_bound(&self) -> usize {
        // n+1 and c_odd always share parity: every even-length cycle of an
        // even permutation comes in pairs, and the graph mirrors σ̂π̂⁻¹.
        (self.n + 1 - self.odd_cycle_count()) / 2
    }

    /// Index of the alternating cycle owning the black edge at padded
    /// position `i ∈ [1, n+1]`.
    pub fn cycle_of_black_edge(&self, i: usize) -> usize {
        assert!(
            (1..=self.n + 1).contains(&i),
            "black edges sit at padded positions 1..={}, got {i}",
            self.n + 1
        );
        self.cycle_of_black[i]
    }

    /// Index of the alternating cycle owning the gray edge out of `+v`,
    /// `v ∈ [0, n]`: the walk takes that gray edge right after the black
    /// edge whose tail position follows `v` in the padded line.
    pub fn cycle_of_gray_edge(&self, v: usize) -> usize {
        assert!(v <= self.n, "gray edges leave +0..=+{}, got +{v}", self.n);
        let position = self
            .padded
            .iter()
            .position(|&x| x == v)
            .expect("padded line contains every symbol once");
        self.cycle_of_black[position + 1]
    }

    /// Deterministic DOT text: vertices pinned to the interleaved reading
    /// order by an invisible chain, black edges solid, gray edges dashed,
    /// both colored by the alternating cycle that owns them.
    pub fn to_dot(&self) -> String {
        const PALETTE: [&str; 8] = [
            "#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02", "#a6761d",
            "#666666",
        ];
        let color = |cycle: usize| PALETTE[cycle % PALETTE.len()];

        let vertices = self.vertices();
        let mut out = String::new();
        out.push_str("digraph cycle_graph {\n");
        out.push_str("    rankdir=LR;\n");
        out.push_str("    node [shape=circle, fontsize=11, fixedsize=true, width=0.5];\n");
        out.push_str("    edge [arrowsize=0.5];\n");
        for v in &vertices {
            out.push_str(&format!("    \"{v}\";\n"));
        }
        for pair in vertices.windows(2) {
            out.push_str(&format!(
                "    \"{}\" -> \"{}\" [style=invis, weight=100];\n",
                pair[0], pair[1]
            ));
        }
        out.push_str("    // black edges: -pi[i] -> +pi[i-1], one alternating cycle per color\n");
        for (i, (from, to)) in self.black_edges().into_iter().enumerate() {
            out.push_str(&format!(
                "    \"{from}\" -> \"{to}\" [color=\"{}\", style=solid, penwidth=1.5];\n",
                color(self.cycle_of_black[i + 1])
            ));
        }
        out.push_str("    // gray edges: +v -> -(v+1), dashed, same cycle colors\n");
        for (v, (from, to)) in self.gray_edges().into_iter().enumerate() {
            out.push_str(&format!(
                "    \"{from}\" -> \"{to}\" [color=\"{}\", style=dashed];\n",
                color(self.cycle_of_gray_edge(v))
            ));
        }
        out.push_str("}\n");
        out
    }
}

impl Serialize for CycleGraph {
    /// JSON dump of everything a renderer or external checker needs:
    /// vertices in reading order, both edge lists, the decomposition, and
    /// the two numbers derived from it.
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        struct Edges(Vec<(Vertex, Vertex)>);
        impl Serialize for Edges {
            fn serialize<S: Serializer>(
                &self,
                serializer: S,
            ) -> std::result::Result<S::Ok, S::Error> {
                let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
                for (from, to) in &self.0 {
                    seq.serialize_element(&[from, to])?;
                }
                seq.end()
            }
        }

        let mut state = serializer.serialize_struct("CycleGraph", 7)?;
        state.serialize_field("n", &self.n)?;
        state.serialize_field("vertices", &self.vertices())?;
        state.serialize_field("black_edges", &Edges(self.black_edges()))?;
        state.serialize_field("gray_edges", &Edges(self.gray_edges()))?;
        state.serialize_field("cycles", &self.cycles)?;
        state.serialize_field("odd_cycles", &self.odd_cycle_count())?;
        state.serialize_field("lower_bound", &self.bp_bound())?;
        state.end()
    }
}

/// Builds `G(π)` from one-line form, validating the input.
pub fn build_graph(one_line: &[usize]) -> Result<CycleGraph> {
    let pi = ExtendedPermutation::from_one_line(one_line.to_vec())?;
    Ok(CycleGraph::of(&pi))
}

/// Number of odd alternating cycles of `g`.
pub fn odd_cycle_count(g: &CycleGraph) -> usize {
    g.odd_cycle_count()
}

/// The classical lower bound `(n+1 − c_odd)/2` read off `g`.
pub fn bp_bound_graph(g: &CycleGraph) -> usize {
    g.bp_bound()
}

/// Deterministic DOT rendering of `g`; see [`CycleGraph::to_dot`].
pub fn to_dot(g: &CycleGraph) -> String {
    g.to_dot()
}

fn check_positions(pi: &ExtendedPermutation, i: usize, j: usize, k: usize) -> Result<()> {
    let n = pi.n();
    if !(1 <= i && i < j && j < k && k <= n + 1) {
        return Err(Error::Domain(format!(
            "transposition positions must satisfy 1 <= i < j < k <= {}, got ({i}, {j}, {k})",
            n + 1
        )));
    }
    Ok(())
}

/// The positional transposition `τ(i, j, k)` applied literally: exchanges
/// the one-line blocks `[πi, πj−1]` and `[πj, πk−1]`, with
/// `1 ≤ i < j < k ≤ n+1`.
///
/// This is pure text surgery on the one-line form — no algebra — so it can
/// sit on the other side of correspondence tests from
/// [`ExtendedPermutation::apply`].
pub fn block_exchange(
    pi: &ExtendedPermutation,
    i: usize,
    j: usize,
    k: usize,
) -> Result<ExtendedPermutation> {
    check_positions(pi, i, j, k)?;
    let line = pi.one_line();
    let mut out = Vec::with_capacity(line.len());
    out.extend_from_slice(&line[..i - 1]);
    out.extend_from_slice(&line[j - 1..k - 1]);
    out.extend_from_slice(&line[i - 1..j - 1]);
    out.extend_from_slice(&line[k - 1..]);
    ExtendedPermutation::from_one_line(out)
}

/// The symbol 3-cycle whose left product performs exactly the block
/// exchange `τ(i, j, k)` on `π`.
///
/// In cycle-sequence coordinates (`s = [0, π1, …, πn]`) the exchange moves
/// straight blocks when `k ≤ n`, giving `(πi πj πk)`; when `k = n+1` the
/// second block wraps past the anchor and the same exchange is
/// `(0 πi πj)`.  Together these hit every cyclic position triple exactly
/// once, so the map `(i, j, k) ↦ τ` is a bijection onto the applicable
/// moves of `π`.
pub fn transposition_cycle(
    pi: &ExtendedPermutation,
    i: usize,
    j: usize,
    k: usize,
) -> Result<Cycle> {
    check_positions(pi, i, j, k)?;
    let line = pi.one_line();
    let tau = if k <= pi.n() {
        Cycle::three(line[i - 1], line[j - 1], line[k - 1])
    } else {
        Cycle::three(0, line[i - 1], line[j - 1])
    }
    .expect("one-line symbols at distinct positions are distinct");
    Ok(tau)
}

/// `Δc_odd(π, τ(i, j, k)) = c_odd(τ·π) − c_odd(π)`: how the positional
/// transposition changes the odd-cycle count of the graph.  Equals the
/// `μ` of [`classify_move`](crate::structure::classify_move) on the
/// corresponding 3-cycle.
pub fn delta_c_odd(pi: &ExtendedPermutation, i: usize, j: usize, k: usize) -> Result<i32> {
    let after = block_exchange(pi, i, j, k)?;
    let before = CycleGraph::of(pi).odd_cycle_count() as i32;
    Ok(CycleGraph::of(&after).odd_cycle_count() as i32 - before)
}
