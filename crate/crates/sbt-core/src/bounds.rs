//! Closed-form distance arithmetic: the 3-norm, lower and upper bounds,
//! the exact palisade distance, the 3-permutation diameter, and the
//! approximation-ratio barrier.
//!
//! Everything here is O(n) or O(1); the search module exists to certify
//! these formulas against exhaustive computation.

use num_rational::Ratio;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::structure::StructureReport;
use crate::{Error, ExtendedPermutation, Permutation, Result};

/// Minimum number of 3-cycles whose product is `alpha`:
/// `‖α‖₃ = (m − c°odd(α)) / 2` over `m` symbols, defined for even
/// permutations only (3-cycles generate exactly the even ones).
pub fn three_norm(alpha: &Permutation) -> Result<usize> {
    let decomposition = alpha.cycle_decomposition();
    // Parity from the same decomposition: a κ-cycle is κ−1 transpositions.
    if !(alpha.size() - decomposition.cycle_count()).is_multiple_of(2) {
        return Err(Error::OddPermutation { context: "3-norm" });
    }
    Ok((alpha.size() - decomposition.odd_count()) / 2)
}

/// The baseline lower bound `d_t(π̂) ≥ ‖σ̂π̂⁻¹‖₃ = (n+1 − c°odd(σ̂π̂⁻¹))/2`.
pub fn bp_lower_bound(pi: &ExtendedPermutation) -> usize {
    let sigma = pi.sigma_pi_inv();
    three_norm(&sigma).expect("σ̂π̂⁻¹ is a product of two (n+1)-cycles, hence even")
}

/// Hurdle-based lower bound for a φ-palisade: `2φ + ⌈φ/2⌉` (the 3-norm
/// plus one 0-move per pair of unoriented interleaving pairs).
pub fn hurdle_lower_bound(phi: usize) -> usize {
    2 * phi + phi.div_ceil(2)
}

/// Exact transposition distance of a φ-palisade: `⌈11φ/4⌉`, equivalently
/// `2φ + 3⌊φ/4⌋ + (φ mod 4)` — the form produced by raising the hurdle
/// bound past the missing (4,3)- and (8,6)-sequences.
pub fn palisade_distance(phi: usize) -> usize {
    let ceil_form = (11 * phi).div_ceil(4);
    debug_assert_eq!(ceil_form, 2 * phi + 3 * (phi / 4) + phi % 4);
    ceil_form
}

/// Distance upper bound from the 3-norm:
/// `11⌊norm3/8⌋ + ⌊3(norm3 mod 8)/2⌋`.
pub fn upper_bound(norm3: usize) -> usize {
    11 * (norm3 / 8) + 3 * (norm3 % 8) / 2
}

/// Exact transposition diameter of the 3-permutations on `n+1` symbols:
///
/// * `⌈11(n+1)/24⌉`      when `n+1 ≡ 0 (mod 6)` (palisades are diametral);
/// * `⌈11(n−2)/24⌉ + 1`  when `n+1 ≡ 3 (mod 6)` (pairs plus one oriented
///   3-cycle are diametral).
///
/// The two cases always coincide with the single closed form
/// `11⌊(n+1)/24⌋ + ⌊((n+1) mod 24)/2⌋`; the function checks that identity
/// on every call and panics on mismatch, so an arithmetic regression can
/// never return quietly.
pub fn td3(n: usize) -> Result<usize> {
    let m = n + 1;
    if !m.is_multiple_of(3) {
        return Err(Error::Domain(format!(
            "diameter of 3-permutations needs n+1 ≡ 0 (mod 3), got n+1 = {m}"
        )));
    }
    let by_case = if m.is_multiple_of(6) {
        (11 * m).div_ceil(24)
    } else {
        (11 * (n - 2)).div_ceil(24) + 1
    };
    let closed_form = 11 * (m / 24) + (m % 24) / 2;
    assert_eq!(
        by_case, closed_form,
        "diameter case analysis and closed form disagree at n = {n}"
    );
    Ok(by_case)
}

/// Best approximation ratio reachable on a φ-palisade when the 3-norm is
/// the lower bound: the exact rational `⌈11φ/4⌉ / 2φ`.  Always ≥ 11/8,
/// with equality exactly when `φ ≡ 0 (mod 4)` — hence the 1.375 barrier.
pub fn min_ratio(phi: usize) -> Ratio<u64> {
    assert!(phi >= 1, "ratio needs a nonempty palisade");
    let phi = phi as u64;
    Ratio::new((11 * phi).div_ceil(4), 2 * phi)
}

/// Every bound the crate knows how to state for one permutation.
/// Optional fields apply only where the underlying notion does
/// (`hurdle_lower`/`palisade_distance`/`min_ratio` to palisades, `td3` to
/// 3-permutations of valid size).
#[derive(Clone, Debug)]
pub struct BoundsReport {
    pub n: usize,
    pub norm3: usize,
    pub bp_lower: usize,
    pub hurdle_lower: Option<usize>,
    pub palisade_distance: Option<usize>,
    pub upper: usize,
    pub td3: Option<usize>,
    pub min_ratio: Option<Ratio<u64>>,
}

impl BoundsReport {
    pub fn of(pi: &ExtendedPermutation) -> BoundsReport {
        BoundsReport::from_structure(pi, &StructureReport::of(pi))
    }

    /// Builds the report from an already-computed structure classification.
    pub fn from_structure(pi: &ExtendedPermutation, report: &StructureReport) -> BoundsReport {
        let m = pi.size();
        let norm3 = (m - report.cycles().odd_count()) / 2;
        let phi = report.phi();
        let palisade = report.is_palisade();
        BoundsReport {
            n: pi.n(),
            norm3,
            bp_lower: norm3,
            hurdle_lower: palisade.then(|| hurdle_lower_bound(phi)),
            palisade_distance: palisade.then(|| palisade_distance(phi)),
            upper: upper_bound(norm3),
            td3: if report.is_3perm() { td3(pi.n()).ok() } else { None },
            min_ratio: palisade.then(|| min_ratio(phi)),
        }
    }
}

impl Serialize for BoundsReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Rational {
            num: u64,
            den: u64,
        }
        let ratio = self.min_ratio.map(|r| Rational { num: *r.numer(), den: *r.denom() });
        let mut s = serializer.serialize_struct("BoundsReport", 8)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("norm3", &self.norm3)?;
        s.serialize_field("bp_lower", &self.bp_lower)?;
        s.serialize_field("hurdle_lower", &self.hurdle_lower)?;
        s.serialize_field("palisade_distance", &self.palisade_distance)?;
        s.serialize_field("upper", &self.upper)?;
        s.serialize_field("td3", &self.td3)?;
        s.serialize_field("min_ratio", &ratio)?;
        s.end()
    }
}
