//! Constructions of the named permutation families plus enumeration and
//! sampling of whole search universes.
//!
//! The two hand-built families are the load-bearing ones: φ-palisades
//! (whose distance pins the lower-bound results) and the "diametral"
//! 3-permutations on n + 1 ≡ 3 (mod 6) symbols that attain the diameter
//! upper bound.  Both generators re-validate their output through the
//! structural predicates before handing it out, so a buggy construction
//! can never masquerade as a family member.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::perm::ExtendedPermutation;
use crate::search::kernel;
use crate::search::rank::FACT;
use crate::search::MAX_TABLE_SYMBOLS;
use crate::structure::{ComponentKind, StructureReport};
use crate::{Error, Result};

/// The generator families the CLI can ask for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Palisade,
    DiametralMod3,
    AllCycles,
    All3Perms,
    RandomCycles,
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            Family::Palisade => "palisade",
            Family::DiametralMod3 => "diametral-mod3",
            Family::AllCycles => "all-cycles",
            Family::All3Perms => "all-3perms",
            Family::RandomCycles => "random-cycles",
        };
        f.write_str(name)
    }
}

/// A validated request for a corpus of permutations.
#[derive(Clone, Copy, Debug)]
pub struct CorpusSpec {
    pub family: Family,
    /// Required for every family except `Palisade`.
    pub n: Option<usize>,
    /// Required for `Palisade`.
    pub phi: Option<usize>,
    /// Required for `RandomCycles` — sampling is always reproducible.
    pub seed: Option<u64>,
    /// Sample size for `RandomCycles` (default 1); truncates the
    /// enumeration families; ignored by the singleton families.
    pub count: Option<usize>,
}

impl CorpusSpec {
    /// Checks the family-specific parameter constraints.
    pub fn validate(&self) -> Result<()> {
        match self.family {
            Family::Palisade => {
                let phi = self
                    .phi
                    .ok_or_else(|| Error::Domain("palisade generation needs φ".into()))?;
                if phi == 0 {
                    return Err(Error::Domain("a palisade needs φ ≥ 1".into()));
                }
            }
            Family::DiametralMod3 => {
                let n = self.require_n()?;
                if n < 8 || (n + 1) % 6 != 3 {
                    return Err(Error::Domain(format!(
                        "the diametral family needs n ≥ 8 with n + 1 ≡ 3 (mod 6), not n = {n}"
                    )));
                }
            }
            Family::AllCycles => {
                check_enumerable(self.require_n()?)?;
            }
            Family::All3Perms => {
                let n = self.require_n()?;
                if (n + 1) % 3 != 0 {
                    return Err(Error::Domain(format!(
                        "3-permutations with 3-cycles need 3 | n + 1; n = {n} gives a \
                         single-member universe"
                    )));
                }
                check_enumerable(n)?;
            }
            Family::RandomCycles => {
                self.require_n()?;
                if self.seed.is_none() {
                    return Err(Error::Domain(
                        "random sampling needs an explicit seed; results must be reproducible"
                            .into(),
                    ));
                }
            }
        }
        Ok(())
    }

    fn require_n(&self) -> Result<usize> {
        self.n
            .ok_or_else(|| Error::Domain(format!("family {} needs n", self.family)))
    }

    /// Validates and produces the corpus as a lazy stream (enumerations of
    /// large n would not fit in memory if collected).
    pub fn generate(&self) -> Result<Box<dyn Iterator<Item = ExtendedPermutation>>> {
        self.validate()?;
        let take = self.count.unwrap_or(usize::MAX);
        Ok(match self.family {
            Family::Palisade => Box::new(std::iter::once(make_palisade(self.phi.unwrap()))),
            Family::DiametralMod3 => {
                Box::new(std::iter::once(make_diametral_mod3(self.n.unwrap())?))
            }
            Family::AllCycles => Box::new(enumerate_cycles(self.n.unwrap())?.take(take)),
            Family::All3Perms => Box::new(enumerate_3_permutations(self.n.unwrap())?.take(take)),
            Family::RandomCycles => Box::new(
                random_cycles(self.n.unwrap(), self.seed.unwrap(), self.count.unwrap_or(1))
                    .into_iter(),
            ),
        })
    }
}

fn check_enumerable(n: usize) -> Result<()> {
    if n + 1 > MAX_TABLE_SYMBOLS {
        return Err(Error::Capacity(format!(
            "enumerating n = {n} means n! = many billions of states; the cap is \
             n + 1 = {MAX_TABLE_SYMBOLS} symbols"
        )));
    }
    Ok(())
}

/// Builds the canonical φ-palisade: φ descending 5-blocks joined by
/// separator symbols, n = 6φ − 1.  For φ = 3 this is the classic
/// `[5 4 3 2 1 6 11 10 9 8 7 12 17 16 15 14 13]`.
///
/// # Panics
/// When `phi == 0`; a palisade has at least one interleaving pair.
pub fn make_palisade(phi: usize) -> ExtendedPermutation {
    assert!(phi >= 1, "a palisade needs at least one interleaving pair");
    let n = 6 * phi - 1;
    let mut one_line = Vec::with_capacity(n);
    for i in 0..phi {
        let base = 6 * i;
        for s in (base + 1..=base + 5).rev() {
            one_line.push(s);
        }
        if i + 1 < phi {
            one_line.push(base + 6);
        }
    }
    debug_assert_eq!(one_line.len(), n);
    ExtendedPermutation::from_one_line(one_line)
        .expect("the block pattern is a permutation of 1..n")
}

/// Builds the diametral 3-permutation for n + 1 ≡ 3 (mod 6), n ≥ 8: a
/// leading 8, then (n − 8)/6 shifted palisade-style blocks, then the fixed
/// seven-symbol tail `7 6 5 1 3 2 4`.  For n = 14 this reproduces
/// `[8 13 12 11 10 9 14 7 6 5 1 3 2 4]`.
///
/// σ̂π̂⁻¹ of the result decomposes into (n − 2)/6 unoriented interleaving
/// pairs plus one isolated *oriented* 3-cycle; that structure is what makes
/// the family diametral, so it is re-checked at build time and a violation
/// is a construction error, never a silent wrong answer.
pub fn make_diametral_mod3(n: usize) -> Result<ExtendedPermutation> {
    if n < 8 || (n + 1) % 6 != 3 {
        return Err(Error::Domain(format!(
            "the diametral family needs n ≥ 8 with n + 1 ≡ 3 (mod 6), not n = {n}"
        )));
    }
    let phi_pairs = (n - 2) / 6;
    let mut one_line = Vec::with_capacity(n);
    one_line.push(8);
    for j in 0..phi_pairs - 1 {
        let b = 6 * j;
        one_line.extend([b + 13, b + 12, b + 11, b + 10, b + 9, b + 14]);
    }
    one_line.extend([7, 6, 5, 1, 3, 2, 4]);
    debug_assert_eq!(one_line.len(), n);
    let pi = ExtendedPermutation::from_one_line(one_line)
        .map_err(|e| Error::Construction(format!("diametral splice is not a permutation: {e}")))?;
    validate_diametral(&pi, phi_pairs)?;
    Ok(pi)
}

fn validate_diametral(pi: &ExtendedPermutation, phi_pairs: usize) -> Result<()> {
    let report = StructureReport::of(pi);
    let mut problems: Vec<String> = Vec::new();
    if !report.is_3perm() {
        problems.push("σ̂π̂⁻¹ is not built from 1- and 3-cycles".into());
    }
    if report.components().len() != phi_pairs + 1 {
        problems.push(format!(
            "expected {} components, found {}",
            phi_pairs + 1,
            report.components().len()
        ));
    }
    let uips = report.uip().iter().filter(|&&u| u).count();
    if uips != phi_pairs {
        problems.push(format!(
            "expected {phi_pairs} unoriented interleaving pairs, found {uips}"
        ));
    }
    let oriented_singletons = report
        .component_kind()
        .iter()
        .enumerate()
        .filter(|(_, k)| **k == ComponentKind::SingleOrientedCycle)
        .filter(|(ci, _)| {
            let members = &report.components()[*ci];
            report.cycles().cycles()[members[0]].len() == 3
        })
        .count();
    if oriented_singletons != 1 {
        problems.push(format!(
            "expected exactly one isolated oriented 3-cycle, found {oriented_singletons}"
        ));
    }
    if problems.is_empty() {
        Ok(())
    } else {
        Err(Error::Construction(format!(
            "diametral construction for {} failed validation: {}",
            pi.one_line_string(),
            problems.join("; ")
        )))
    }
}

/// All n! (n+1)-cycles in Lehmer-rank (lexicographic one-line) order.
pub fn enumerate_cycles(n: usize) -> Result<impl Iterator<Item = ExtendedPermutation>> {
    check_enumerable(n)?;
    let m = n + 1;
    Ok((0..FACT[n]).map(move |r| {
        let seq = kernel::unrank_state(r, m);
        kernel::to_ext(&seq, m)
    }))
}

/// The 3-permutations among [`enumerate_cycles`], same order.  Requires
/// 3 | n + 1 — otherwise no (n+1)-cycle other than ι̂ can qualify and the
/// universe is degenerate.
pub fn enumerate_3_permutations(n: usize) -> Result<impl Iterator<Item = ExtendedPermutation>> {
    if !(n + 1).is_multiple_of(3) {
        return Err(Error::Domain(format!(
            "3-permutations with 3-cycles need 3 | n + 1; n = {n} gives a single-member universe"
        )));
    }
    check_enumerable(n)?;
    let m = n + 1;
    Ok((0..FACT[n]).filter_map(move |r| {
        let seq = kernel::unrank_state(r, m);
        let pos = kernel::positions(&seq, m);
        kernel::is_three_perm(&seq, m, &pos).then(|| kernel::to_ext(&seq, m))
    }))
}

/// One uniform (n+1)-cycle; deterministic in `seed`.
pub fn random_cycle(n: usize, seed: u64) -> ExtendedPermutation {
    draw(n, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// A reproducible sample of `count` cycles from a single seeded stream.
pub fn random_cycles(n: usize, seed: u64, count: usize) -> Vec<ExtendedPermutation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| draw(n, &mut rng)).collect()
}

fn draw(n: usize, rng: &mut ChaCha8Rng) -> ExtendedPermutation {
    // A uniform one-line form is a uniform (n+1)-cycle: the two are in
    // bijection through the orbit-of-0 reading.
    let mut one_line: Vec<usize> = (1..=n).collect();
    one_line.shuffle(rng);
    ExtendedPermutation::from_one_line(one_line).expect("a shuffle of 1..n stays a permutation")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::three_norm;
    use crate::structure::{is_3_permutation, is_palisade};

    #[test]
    fn palisade_fixtures() {
        assert_eq!(make_palisade(1).one_line_string(), "[5 4 3 2 1]");
        assert_eq!(
            make_palisade(2).one_line_string(),
            "[5 4 3 2 1 6 11 10 9 8 7]"
        );
        assert_eq!(
            make_palisade(3).one_line_string(),
            "[5 4 3 2 1 6 11 10 9 8 7 12 17 16 15 14 13]"
        );
    }

    #[test]
    fn palisades_satisfy_their_own_predicate() {
        for phi in 1..=6 {
            let pi = make_palisade(phi);
            assert_eq!(pi.n(), 6 * phi - 1);
            assert_eq!(is_palisade(&pi), (true, phi), "φ = {phi}");
            let sigma = pi.sigma_pi_inv();
            assert_eq!(sigma.cycle_decomposition().odd_count(), 2 * phi);
            assert_eq!(three_norm(&sigma).unwrap(), 2 * phi);
        }
    }

    #[test]
    #[should_panic(expected = "at least one interleaving pair")]
    fn zero_palisade_is_a_caller_bug() {
        let _ = make_palisade(0);
    }

    #[test]
    fn diametral_fixtures() {
        assert_eq!(
            make_diametral_mod3(8).unwrap().one_line_string(),
            "[8 7 6 5 1 3 2 4]"
        );
        assert_eq!(
            make_diametral_mod3(14).unwrap().one_line_string(),
            "[8 13 12 11 10 9 14 7 6 5 1 3 2 4]"
        );
    }

    #[test]
    fn diametral_structure_holds_across_the_family() {
        for n in [8usize, 14, 20, 26] {
            let pi = make_diametral_mod3(n).unwrap();
            assert!(is_3_permutation(&pi), "n = {n}");
            // All symbols sit in 3-cycles: the norm counts them directly.
            assert_eq!(three_norm(&pi.sigma_pi_inv()).unwrap(), (n + 1) / 3);
            let report = StructureReport::of(&pi);
            let pairs = (n - 2) / 6;
            assert_eq!(report.components().len(), pairs + 1);
            assert_eq!(report.uip().iter().filter(|&&u| u).count(), pairs);
            assert_eq!(
                report
                    .component_kind()
                    .iter()
                    .filter(|k| **k == ComponentKind::SingleOrientedCycle)
                    .count(),
                1
            );
            assert!(!report.is_palisade());
        }
    }

    #[test]
    fn diametral_rejects_wrong_sizes() {
        for n in [0usize, 2, 5, 7, 9, 11, 13, 15] {
            assert!(
                matches!(make_diametral_mod3(n), Err(Error::Domain(_))),
                "n = {n} should be out of domain"
            );
        }
    }

    #[test]
    fn enumeration_counts_and_order() {
        assert_eq!(enumerate_cycles(3).unwrap().count(), 6);
        assert_eq!(enumerate_cycles(5).unwrap().count(), 120);
        let mut stream = enumerate_cycles(4).unwrap();
        assert!(stream.next().unwrap().is_identity());
        // Rank order is lexicographic order of the one-line forms.
        let lines: Vec<Vec<usize>> =
            enumerate_cycles(4).unwrap().map(|pi| pi.one_line().to_vec()).collect();
        assert!(lines.windows(2).all(|w| w[0] < w[1]));
        assert!(matches!(enumerate_cycles(12), Err(Error::Capacity(_))));
    }

    #[test]
    fn three_perm_stream_is_the_predicate_filter() {
        let filtered: Vec<ExtendedPermutation> = enumerate_cycles(5)
            .unwrap()
            .filter(is_3_permutation)
            .collect();
        let streamed: Vec<ExtendedPermutation> =
            enumerate_3_permutations(5).unwrap().collect();
        assert_eq!(streamed, filtered);
        assert!(streamed.iter().any(|pi| pi.one_line_string() == "[5 4 3 2 1]"));

        // On 3 symbols both cycles qualify: ι̂ trivially (no 3-cycles at
        // all) and [2 1], whose σ̂π̂⁻¹ is the full 3-cycle (0 1 2).
        let tiny: Vec<String> = enumerate_3_permutations(2)
            .unwrap()
            .map(|pi| pi.cycle_string())
            .collect();
        assert_eq!(tiny, vec!["(0 1 2)".to_string(), "(0 2 1)".to_string()]);

        assert!(matches!(enumerate_3_permutations(3), Err(Error::Domain(_))));
        assert!(matches!(enumerate_3_permutations(14), Err(Error::Capacity(_))));
    }

    #[test]
    fn random_cycles_are_deterministic_per_seed() {
        let a = random_cycle(9, 42);
        let b = random_cycle(9, 42);
        let c = random_cycle(9, 43);
        assert_eq!(a, b);
        assert_ne!(a, c);
        // A fresh one-shot draw matches the first element of the stream.
        assert_eq!(random_cycles(9, 42, 3)[0], a);
        // Tiny domains still work.
        assert!(random_cycle(0, 7).is_identity());
        assert!(random_cycle(1, 7).is_identity());
    }

    /// Frequency check against the uniform distribution: 10⁵ draws on
    /// n = 6 (720 states), every state within 5σ of the expected count.
    /// Deterministic because the seed is fixed.
    #[test]
    fn random_cycles_look_uniform() {
        let n = 6;
        let draws = 100_000usize;
        let mut counts = vec![0u32; 720];
        for pi in random_cycles(n, 20_260_815, draws) {
            let (seq, m) = kernel::from_ext(&pi);
            counts[kernel::rank_state(&seq, m) as usize] += 1;
        }
        let expected = draws as f64 / 720.0;
        let sigma = (draws as f64 * (1.0 / 720.0) * (719.0 / 720.0)).sqrt();
        for (rank, &c) in counts.iter().enumerate() {
            let deviation = (f64::from(c) - expected).abs();
            assert!(
                deviation <= 5.0 * sigma,
                "rank {rank} drawn {c} times, expected {expected:.1} ± {:.1}",
                5.0 * sigma
            );
        }
    }

    #[test]
    fn corpus_spec_validation() {
        let ok = CorpusSpec {
            family: Family::Palisade,
            n: None,
            phi: Some(2),
            seed: None,
            count: None,
        };
        assert!(ok.validate().is_ok());
        let produced: Vec<_> = ok.generate().unwrap().collect();
        assert_eq!(produced.len(), 1);
        assert_eq!(produced[0], make_palisade(2));

        let missing_phi = CorpusSpec { phi: None, ..ok };
        assert!(matches!(missing_phi.validate(), Err(Error::Domain(_))));

        let unseeded = CorpusSpec {
            family: Family::RandomCycles,
            n: Some(6),
            phi: None,
            seed: None,
            count: Some(5),
        };
        assert!(matches!(unseeded.validate(), Err(Error::Domain(_))));
        let seeded = CorpusSpec { seed: Some(1), ..unseeded };
        assert_eq!(seeded.generate().unwrap().count(), 5);

        let capped = CorpusSpec {
            family: Family::AllCycles,
            n: Some(4),
            phi: None,
            seed: None,
            count: Some(10),
        };
        assert_eq!(capped.generate().unwrap().count(), 10);
    }
}
