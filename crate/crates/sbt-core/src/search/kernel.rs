//! Flat-buffer state kernel shared by the search engines.
//!
//! A state is the cycle sequence of an (n+1)-cycle π̂ — the orbit of 0
//! written out as `[0, π̂(0), π̂²(0), …]` — stored in a fixed `[u8; 16]` so
//! states are `Copy` and never touch the heap in the hot loops.  Entry 0 is
//! always the symbol 0; entries `1..m` are exactly the one-line form of the
//! circular permutation, which is what the Lehmer rank is taken over.
//!
//! Everything here is `pub(crate)`: the public API deals in
//! [`ExtendedPermutation`](crate::ExtendedPermutation) and converts at the
//! boundary.

use crate::perm::ExtendedPermutation;

use super::rank;

/// Hard cap on m = n+1 for the flat kernel (u16 visited masks, u8 symbols).
pub(crate) const MAX_M: usize = 16;

/// Cycle sequence of π̂; only `seq[..m]` is meaningful and `seq[0] == 0`.
pub(crate) type Seq = [u8; MAX_M];

/// Converts an extended permutation into a kernel state.
pub(crate) fn from_ext(pi: &ExtendedPermutation) -> (Seq, usize) {
    let m = pi.size();
    debug_assert!(m <= MAX_M, "kernel states cap at {MAX_M} symbols");
    let mut seq = [0u8; MAX_M];
    for (t, &sym) in pi.one_line().iter().enumerate() {
        seq[t + 1] = sym as u8;
    }
    (seq, m)
}

/// Converts a kernel state back to the public representation.
pub(crate) fn to_ext(seq: &Seq, m: usize) -> ExtendedPermutation {
    let one_line: Vec<usize> = seq[1..m].iter().map(|&s| s as usize).collect();
    ExtendedPermutation::from_one_line(one_line).expect("kernel states are valid cycle sequences")
}

/// Lehmer rank of the state's one-line form (symbols 1..=n, shifted down).
pub(crate) fn rank_state(seq: &Seq, m: usize) -> u64 {
    let n = m - 1;
    let mut shifted = [0u8; MAX_M];
    for t in 0..n {
        shifted[t] = seq[t + 1] - 1;
    }
    rank::rank_zero_based(&shifted[..n])
}

/// Inverse of [`rank_state`].
pub(crate) fn unrank_state(r: u64, m: usize) -> Seq {
    let n = m - 1;
    let mut shifted = [0u8; MAX_M];
    rank::unrank_zero_based(r, n, &mut shifted);
    let mut seq = [0u8; MAX_M];
    for t in 0..n {
        seq[t + 1] = shifted[t] + 1;
    }
    seq
}

/// `pos[x] = t` such that `seq[t] == x`.
pub(crate) fn positions(seq: &Seq, m: usize) -> [u8; MAX_M] {
    let mut pos = [0u8; MAX_M];
    for (t, &sym) in seq.iter().enumerate().take(m) {
        pos[sym as usize] = t as u8;
    }
    pos
}

/// Applies the 3-cycle `(seq[i] seq[j] seq[k])` to π̂ for positions
/// `0 <= i < j < k < m`.  Every such position triple is an applicable move
/// (the symbols appear in the same cyclic order in the move as in π̂), and
/// on the cycle sequence the product is a block exchange: the segments
/// `[i..j)` and `[j..k)` swap places.  When `i == 0` the exchanged blocks
/// wrap around the anchor, so the sequence is rotated back to start at 0.
pub(crate) fn child(seq: &Seq, m: usize, i: usize, j: usize, k: usize) -> Seq {
    debug_assert!(i < j && j < k && k < m);
    // (0 s[j] s[k]) sends the orbit through 0 into [0, s[1..j], s[k..m],
    // s[j..k]] once re-anchored at 0; the general case swaps [i..j) with
    // [j..k) in place.
    let segments: [std::ops::Range<usize>; 4] = if i == 0 {
        [0..j, k..m, j..k, 0..0]
    } else {
        [0..i, j..k, i..j, k..m]
    };
    let mut out = [0u8; MAX_M];
    let mut t = 0;
    for segment in segments {
        let len = segment.len();
        out[t..t + len].copy_from_slice(&seq[segment]);
        t += len;
    }
    debug_assert_eq!(t, m);
    out
}

/// Number of odd-length cycles of σ̂π̂⁻¹ (fixed points included).
///
/// σ̂π̂⁻¹ maps the symbol at sequence position t to the successor of the
/// symbol at position t−1, so its orbits can be walked directly on the
/// sequence without forming the product.
pub(crate) fn sigma_odd_count(seq: &Seq, m: usize, pos: &[u8; MAX_M]) -> usize {
    let mut visited: u16 = 0;
    let mut odd = 0;
    for start in 0..m {
        if visited & (1 << start) != 0 {
            continue;
        }
        let mut len = 0usize;
        let mut x = start;
        loop {
            visited |= 1 << x;
            len += 1;
            let t = pos[x] as usize;
            let prev = seq[(t + m - 1) % m] as usize;
            x = (prev + 1) % m;
            if x == start {
                break;
            }
        }
        odd += len & 1;
    }
    odd
}

/// The 3-norm of σ̂π̂⁻¹, i.e. the breakpoint lower bound for this state.
pub(crate) fn norm3(seq: &Seq, m: usize, pos: &[u8; MAX_M]) -> usize {
    (m - sigma_odd_count(seq, m, pos)) / 2
}

/// Whether every σ̂π̂⁻¹ cycle has length 1 or 3 and, when a 3-cycle is
/// present, m is divisible by 3 — the kernel-side 3-permutation test.
pub(crate) fn is_three_perm(seq: &Seq, m: usize, pos: &[u8; MAX_M]) -> bool {
    let mut visited: u16 = 0;
    let mut has_three = false;
    for start in 0..m {
        if visited & (1 << start) != 0 {
            continue;
        }
        let mut len = 0usize;
        let mut x = start;
        loop {
            visited |= 1 << x;
            len += 1;
            if len > 3 {
                return false;
            }
            let t = pos[x] as usize;
            let prev = seq[(t + m - 1) % m] as usize;
            x = (prev + 1) % m;
            if x == start {
                break;
            }
        }
        match len {
            1 => {}
            3 => has_three = true,
            _ => return false,
        }
    }
    !has_three || m.is_multiple_of(3)
}

/// Whether the state is ι̂ (the sequence `[0, 1, …, m−1]`).
#[cfg(test)]
pub(crate) fn is_identity(seq: &Seq, m: usize) -> bool {
    seq[..m].iter().enumerate().all(|(t, &sym)| sym as usize == t)
}

/// The identity state for m symbols.
#[cfg(test)]
pub(crate) fn identity(m: usize) -> Seq {
    let mut seq = [0u8; MAX_M];
    for (t, slot) in seq.iter_mut().enumerate().take(m) {
        *slot = t as u8;
    }
    seq
}
