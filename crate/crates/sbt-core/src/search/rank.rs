//! Lehmer-code ranking: a bijection between permutations and `0..len!`,
//! ordered lexicographically.  This is the state encoding for every dense
//! table in the crate — one byte of distance per rank.

/// `FACT[k] = k!`; 16! still fits comfortably in a `u64`.
pub(crate) const FACT: [u64; 17] = {
    let mut f = [1u64; 17];
    let mut i = 1;
    while i < 17 {
        f[i] = f[i - 1] * i as u64;
        i += 1;
    }
    f
};

/// Rank of a permutation of `{0..len-1}` given as its image sequence.
/// Lexicographic: the identity ranks 0, the full reversal `len! − 1`.
pub(crate) fn rank_zero_based(seq: &[u8]) -> u64 {
    let n = seq.len();
    debug_assert!(n <= 16);
    let mut used: u32 = 0;
    let mut rank = 0u64;
    for (i, &sym) in seq.iter().enumerate() {
        let d = sym as u32;
        // How many smaller symbols are already placed: popcount of the
        // used-mask below d.  Lehmer digit = d minus that.
        let smaller_used = (used & ((1u32 << d) - 1)).count_ones() as u64;
        rank += (d as u64 - smaller_used) * FACT[n - 1 - i];
        used |= 1 << d;
    }
    rank
}

/// Inverse of [`rank_zero_based`]: writes the permutation of `{0..n-1}`
/// with the given rank into `out[..n]`.
pub(crate) fn unrank_zero_based(mut rank: u64, n: usize, out: &mut [u8]) {
    debug_assert!(n <= 16 && rank < FACT[n]);
    let mut avail = [0u8; 16];
    for (i, slot) in avail.iter_mut().enumerate().take(n) {
        *slot = i as u8;
    }
    let mut left = n;
    for i in 0..n {
        let f = FACT[n - 1 - i];
        let digit = (rank / f) as usize;
        rank %= f;
        out[i] = avail[digit];
        avail.copy_within(digit + 1..left, digit);
        left -= 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_ranks_zero_and_reversal_ranks_last() {
        assert_eq!(rank_zero_based(&[0, 1, 2, 3, 4]), 0);
        assert_eq!(rank_zero_based(&[4, 3, 2, 1, 0]), FACT[5] - 1);
    }

    #[test]
    fn rank_and_unrank_are_inverse_bijections() {
        let n = 6;
        let mut seen = vec![false; FACT[n] as usize];
        let mut buf = [0u8; 16];
        for r in 0..FACT[n] {
            unrank_zero_based(r, n, &mut buf);
            let back = rank_zero_based(&buf[..n]);
            assert_eq!(back, r);
            assert!(!seen[r as usize]);
            seen[r as usize] = true;
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn rank_order_is_lexicographic_order() {
        let n = 4;
        let mut prev: Option<[u8; 16]> = None;
        let mut buf = [0u8; 16];
        for r in 0..FACT[n] {
            unrank_zero_based(r, n, &mut buf);
            if let Some(p) = prev {
                assert!(p[..n] < buf[..n], "rank {r} out of lex order");
            }
            prev = Some(buf);
        }
    }
}
