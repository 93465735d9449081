//! Brute-force oracle for the 3-norm: breadth-first distance from the
//! identity in the Cayley graph of all 3-cycles.
//!
//! The closed-form norm (half of "moved symbols minus odd cycles") is the
//! backbone of every bound in this crate, so it gets an independent check
//! that shares no code with it — plain BFS over the whole group, one byte
//! per permutation.  Capped at 8 symbols (8! states) because that is all
//! the exhaustive tests need.

use crate::perm::Permutation;
use crate::{Error, Result};

use super::rank::{rank_zero_based, unrank_zero_based, FACT};

/// Hard cap on the oracle's symbol count.
pub const MAX_ORACLE_SYMBOLS: usize = 8;

const UNSET: u8 = 0xFF;

/// A fully materialized norm table for the symmetric group on m symbols.
/// Build once, query many — the per-call convenience wrapper is
/// [`three_norm_oracle`].
pub struct ThreeNormOracle {
    m: usize,
    dist: Vec<u8>,
}

impl ThreeNormOracle {
    /// Runs the BFS for all permutations of `{0..m-1}`.
    pub fn new(m: usize) -> Result<Self> {
        if m > MAX_ORACLE_SYMBOLS {
            return Err(Error::Capacity(format!(
                "the norm oracle tables all {m}! permutations; it caps at \
                 {MAX_ORACLE_SYMBOLS} symbols"
            )));
        }

        // Every 3-cycle on m symbols, as an image map for left-composition.
        let mut moves: Vec<[u8; MAX_ORACLE_SYMBOLS]> = Vec::new();
        let mut id = [0u8; MAX_ORACLE_SYMBOLS];
        for (i, slot) in id.iter_mut().enumerate().take(m) {
            *slot = i as u8;
        }
        for a in 0..m {
            for b in a + 1..m {
                for c in b + 1..m {
                    let mut fwd = id;
                    fwd[a] = b as u8;
                    fwd[b] = c as u8;
                    fwd[c] = a as u8;
                    moves.push(fwd);
                    let mut rev = id;
                    rev[a] = c as u8;
                    rev[c] = b as u8;
                    rev[b] = a as u8;
                    moves.push(rev);
                }
            }
        }

        let total = FACT[m] as usize;
        let mut dist = vec![UNSET; total];
        dist[0] = 0;
        let mut frontier: Vec<u32> = vec![0];
        let mut level = 0u8;
        let mut cur = [0u8; 16];
        while !frontier.is_empty() {
            let mut next_frontier = Vec::new();
            for &r in &frontier {
                unrank_zero_based(r as u64, m, &mut cur);
                for mv in &moves {
                    // Left-composition: (β∘α)(i) = β(α(i)).
                    let mut next = [0u8; 16];
                    for i in 0..m {
                        next[i] = mv[cur[i] as usize];
                    }
                    let nr = rank_zero_based(&next[..m]) as usize;
                    if dist[nr] == UNSET {
                        dist[nr] = level + 1;
                        next_frontier.push(nr as u32);
                    }
                }
            }
            frontier = next_frontier;
            level += 1;
        }
        Ok(ThreeNormOracle { m, dist })
    }

    /// Symbol count this oracle was built for.
    pub fn size(&self) -> usize {
        self.m
    }

    /// BFS distance of `alpha` from the identity, i.e. the fewest 3-cycles
    /// whose product is `alpha`.  Odd permutations are out of reach of any
    /// product of 3-cycles and are rejected up front.
    pub fn norm_of(&self, alpha: &Permutation) -> Result<usize> {
        if alpha.size() != self.m {
            return Err(Error::SizeMismatch {
                left: self.m,
                right: alpha.size(),
            });
        }
        if !alpha.is_even() {
            return Err(Error::OddPermutation {
                context: "the 3-norm oracle",
            });
        }
        let mut buf = [0u8; 16];
        for (i, &img) in alpha.images().iter().enumerate() {
            buf[i] = img as u8;
        }
        let d = self.dist[rank_zero_based(&buf[..self.m]) as usize];
        debug_assert_ne!(d, UNSET, "3-cycles generate the whole alternating group");
        Ok(d as usize)
    }
}

/// One-shot oracle query; builds the table for `alpha`'s symbol count and
/// throws it away.  Prefer [`ThreeNormOracle`] in loops.
pub fn three_norm_oracle(alpha: &Permutation) -> Result<usize> {
    ThreeNormOracle::new(alpha.size())?.norm_of(alpha)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::three_norm;

    #[test]
    fn golden_values() {
        assert_eq!(three_norm_oracle(&Permutation::identity(4)).unwrap(), 0);
        let one = Permutation::parse_cycles("(0 1 2)", 3).unwrap();
        assert_eq!(three_norm_oracle(&one).unwrap(), 1);
        let two = Permutation::parse_cycles("(0 2 4)(1 3 5)", 6).unwrap();
        assert_eq!(three_norm_oracle(&two).unwrap(), 2);
        // A pair of transpositions is even but not a single 3-cycle.
        let double = Permutation::parse_cycles("(0 1)(2 3)", 4).unwrap();
        assert_eq!(three_norm_oracle(&double).unwrap(), 2);
    }

    #[test]
    fn rejects_odd_permutations_and_oversized_domains() {
        let swap = Permutation::parse_cycles("(0 1)", 4).unwrap();
        assert!(matches!(
            three_norm_oracle(&swap),
            Err(Error::OddPermutation { .. })
        ));
        assert!(matches!(ThreeNormOracle::new(9), Err(Error::Capacity(_))));
        let oracle = ThreeNormOracle::new(5).unwrap();
        let wrong = Permutation::identity(4);
        assert!(matches!(oracle.norm_of(&wrong), Err(Error::SizeMismatch { .. })));
    }

    /// The closed-form norm must equal the BFS distance for every even
    /// permutation on up to six symbols (the full sweep up to seven runs
    /// in the acceptance suite).
    #[test]
    fn matches_the_closed_form_exhaustively_on_six_symbols() {
        for m in 1..=6usize {
            let oracle = ThreeNormOracle::new(m).unwrap();
            let mut buf = [0u8; 16];
            for r in 0..FACT[m] {
                unrank_zero_based(r, m, &mut buf);
                let alpha =
                    Permutation::from_images(buf[..m].iter().map(|&b| b as usize).collect())
                        .unwrap();
                if !alpha.is_even() {
                    continue;
                }
                assert_eq!(
                    oracle.norm_of(&alpha).unwrap(),
                    three_norm(&alpha).unwrap(),
                    "m={m} rank={r}"
                );
            }
        }
    }
}
