//! Replay of the worked three-2-move example: a 24-symbol cycle is pushed
//! through τ₁ = (1 20 10), τ₂ = (2 17 7), τ₃ = (4 18 11), each verified to
//! be an applicable 2-move, and the result must be a specific 4-palisade.
//!
//! Instead of panicking on the first mismatch, the replay produces a
//! report listing every violated expectation, which the CLI prints
//! verbatim — that keeps a broken invariant diagnosable from the artifact
//! alone.

use serde::Serialize;

use crate::bounds::three_norm;
use crate::perm::{Cycle, ExtendedPermutation};
use crate::structure::{classify_move, is_palisade};

const START: &str = "[23 22 21 1 6 5 11 20 10 9 8 13 4 3 7 12 18 2 17 16 15 14 19]";
const FINAL: &str = "[23 22 21 20 1 6 5 4 3 2 7 12 11 10 9 8 13 18 17 16 15 14 19]";
const START_NORM: usize = 11;
const FINAL_NORM: usize = 8;
const FINAL_PHI: usize = 4;

/// One applied move and what the checks saw.
#[derive(Clone, Debug, Serialize)]
pub struct Example7Step {
    pub tau: String,
    pub applicable: bool,
    pub mu: i32,
    pub norm_after: usize,
}

/// Outcome of the replay; `pass` is true exactly when `failures` is empty.
#[derive(Clone, Debug, Serialize)]
pub struct Example7Report {
    pub start: String,
    pub start_norm: usize,
    pub steps: Vec<Example7Step>,
    pub final_one_line: String,
    pub final_norm: usize,
    pub final_is_palisade: bool,
    pub final_phi: usize,
    pub pass: bool,
    pub failures: Vec<String>,
}

/// Runs the replay and reports every mismatch against the recorded data.
pub fn verify_example7() -> Example7Report {
    let start = ExtendedPermutation::parse_one_line(START).expect("recorded fixture parses");
    let taus = [(1, 20, 10), (2, 17, 7), (4, 18, 11)]
        .map(|(a, b, c)| Cycle::three(a, b, c).expect("recorded fixture is a valid 3-cycle"));
    let expected_final =
        ExtendedPermutation::parse_one_line(FINAL).expect("recorded fixture parses");
    replay(&start, &taus, &expected_final)
}

fn norm_of(pi: &ExtendedPermutation) -> usize {
    three_norm(&pi.sigma_pi_inv()).expect("σ̂π̂⁻¹ of an (n+1)-cycle is even")
}

fn replay(
    start: &ExtendedPermutation,
    taus: &[Cycle],
    expected_final: &ExtendedPermutation,
) -> Example7Report {
    let mut failures = Vec::new();
    let start_norm = norm_of(start);
    if start_norm != START_NORM {
        failures.push(format!("starting norm is {start_norm}, expected {START_NORM}"));
    }

    let mut pi = start.clone();
    let mut norm = start_norm;
    let mut steps = Vec::with_capacity(taus.len());
    for tau in taus {
        let applicable = pi.is_applicable(tau);
        if !applicable {
            failures.push(format!("{tau} is not applicable to {}", pi.one_line_string()));
            steps.push(Example7Step {
                tau: tau.to_string(),
                applicable: false,
                mu: 0,
                norm_after: norm,
            });
            break;
        }
        let mu = classify_move(tau, &pi).expect("applicability was just checked");
        if mu != 2 {
            failures.push(format!("{tau} is a {mu:+}-move, expected a 2-move"));
        }
        pi = pi.apply(tau).expect("applicability was just checked");
        let norm_after = norm_of(&pi);
        // A μ-move shifts the odd-cycle count by μ, hence the norm by −μ/2.
        if norm_after as i64 != norm as i64 - i64::from(mu) / 2 {
            failures.push(format!(
                "norm went {norm} → {norm_after} across {tau}, inconsistent with μ = {mu:+}"
            ));
        }
        steps.push(Example7Step {
            tau: tau.to_string(),
            applicable: true,
            mu,
            norm_after,
        });
        norm = norm_after;
    }

    if &pi != expected_final {
        failures.push(format!(
            "landed on {}, expected {}",
            pi.one_line_string(),
            expected_final.one_line_string()
        ));
    }
    let (palisade, phi) = is_palisade(&pi);
    if !palisade || phi != FINAL_PHI {
        failures.push(format!(
            "final state should be a {FINAL_PHI}-palisade; got palisade = {palisade}, φ = {phi}"
        ));
    }
    let final_norm = norm_of(&pi);
    if final_norm != FINAL_NORM {
        failures.push(format!("final norm is {final_norm}, expected {FINAL_NORM}"));
    }

    Example7Report {
        start: start.one_line_string(),
        start_norm,
        steps,
        final_one_line: pi.one_line_string(),
        final_norm,
        final_is_palisade: palisade,
        final_phi: phi,
        pass: failures.is_empty(),
        failures,
    }
}
