//! The acceptance gate: eleven numbered criteria, each one test, each
//! printing a single verdict line.  Everything here is an *end-to-end*
//! check of a headline claim — exact distances, exhaustive sweeps with
//! zero tolerated violations, refutation searches, and closed-form
//! identities — so a green run of this file is the statement "the library
//! reproduces the results it is built around".
//!
//! Three genuinely long runs (the 39.9M-state table scan, the n+1 = 18
//! IDA* proof, and the (8,6)-sequence refutation) are `#[ignore]`d;
//! everything else is minutes at worst.  Run the long set explicitly with
//! `cargo test -p sbt-core --test acceptance -- --ignored`.

use num_rational::Ratio;

use sbt_core::bounds::{bp_lower_bound, min_ratio, palisade_distance, td3, upper_bound};
use sbt_core::cycle_graph::CycleGraph;
use sbt_core::generators::{enumerate_cycles, make_diametral_mod3, make_palisade, random_cycle};
use sbt_core::search::{
    build_distance_table, diameter_scan, distance_via_table, exact_distance_ida,
    find_xy_sequence, three_norm_oracle, verify_example7, DistanceFilter, SequenceQuery,
    XyOutcome,
};
use sbt_core::structure::classify_move;
use sbt_core::{Cycle, ExtendedPermutation, Permutation};

fn verdict(number: usize, ok: bool, detail: &str) {
    // One line per criterion; visible under --nocapture and in failures.
    println!("criterion {number:2}: {} — {detail}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {number} failed: {detail}");
}

/// Calls `f` on every permutation of `{1..n}` (Heap's algorithm).
fn each_permutation(n: usize, f: &mut dyn FnMut(&[usize])) {
    fn heap(line: &mut [usize], k: usize, f: &mut dyn FnMut(&[usize])) {
        if k <= 1 {
            f(line);
            return;
        }
        for i in 0..k {
            heap(line, k - 1, f);
            if k.is_multiple_of(2) {
                line.swap(i, k - 1);
            } else {
                line.swap(0, k - 1);
            }
        }
    }
    let mut line: Vec<usize> = (1..=n).collect();
    heap(&mut line, n, f);
}

fn splitmix(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[test]
fn criterion_01_palisade_distances_match_the_formula() {
    let table = build_distance_table(5).unwrap();
    let one = distance_via_table(&table, &make_palisade(1)).unwrap();
    let two = exact_distance_ida(&make_palisade(2), None);
    let ok = one.distance == 3
        && one.distance == palisade_distance(1)
        && two.complete
        && two.distance == 6
        && two.distance == palisade_distance(2);
    verdict(
        1,
        ok,
        &format!(
            "1-palisade table distance {} (want 3), 2-palisade IDA* distance {} (want 6, {} nodes)",
            one.distance, two.distance, two.nodes_expanded
        ),
    );
}

#[test]
fn criterion_02_three_permutation_diameter_exhaustive() {
    let six = diameter_scan(5, DistanceFilter::ThreePermutations).unwrap();
    let nine = diameter_scan(8, DistanceFilter::ThreePermutations).unwrap();
    let diametral = make_diametral_mod3(8).unwrap();
    let ok = six.max_distance() == 3
        && six.max_distance() == td3(5).unwrap()
        && six.contains(&make_palisade(1))
        && nine.max_distance() == 4
        && nine.max_distance() == td3(8).unwrap()
        && nine.contains(&diametral);
    verdict(
        2,
        ok,
        &format!(
            "diameter over 3-permutations: {} at n+1=6 ({} attaining), {} at n+1=9 ({} attaining, constructed family attains)",
            six.max_distance(),
            six.argmax_count(),
            nine.max_distance(),
            nine.argmax_count()
        ),
    );
}

#[test]
fn criterion_03_diametral_family_distance_at_fifteen_symbols() {
    let pi = make_diametral_mod3(14).unwrap();
    let result = exact_distance_ida(&pi, Some(1_000_000_000));
    assert!(
        result.complete,
        "criterion 3 failed: IDA* hit its node budget after {} nodes — indeterminate",
        result.nodes_expanded
    );
    let ok = result.distance == 7 && result.distance == td3(14).unwrap();
    verdict(
        3,
        ok,
        &format!(
            "IDA* distance {} for the n+1=15 family member (want 7; {} nodes)",
            result.distance, result.nodes_expanded
        ),
    );
}

#[test]
fn criterion_04_no_five_four_sequence_on_the_two_palisade() {
    let query = SequenceQuery { x: 5, y: 4, target_norm_drop: 4, budget: None };
    let outcome = find_xy_sequence(&make_palisade(2), &query);
    let ok = matches!(outcome, XyOutcome::NotFound { .. });
    verdict(
        4,
        ok,
        &format!(
            "(5,4)-search with full norm drop on the 2-palisade: {:?} after {} nodes (want verified NotFound)",
            match &outcome {
                XyOutcome::Found { .. } => "Found",
                XyOutcome::NotFound { .. } => "NotFound",
                XyOutcome::Indeterminate { .. } => "Indeterminate",
            },
            outcome.nodes_expanded()
        ),
    );
}

#[test]
fn criterion_05_norm_formula_equals_oracle_on_even_permutations() {
    let mut checked = 0u64;
    let mut violations = 0u64;
    for m in 1..=7 {
        for pi in enumerate_all_on(m) {
            if !pi.is_even() {
                continue;
            }
            checked += 1;
            let formula = sbt_core::bounds::three_norm(&pi).unwrap();
            let oracle = three_norm_oracle(&pi).unwrap();
            if formula != oracle {
                violations += 1;
            }
        }
    }
    let ok = violations == 0 && checked >= 2520;
    verdict(
        5,
        ok,
        &format!("norm formula vs BFS oracle on {checked} even permutations: {violations} mismatches"),
    );
}

fn enumerate_all_on(m: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    each_permutation(m, &mut |line| {
        let images: Vec<usize> = line.iter().map(|&x| x - 1).collect();
        out.push(Permutation::from_images(images).unwrap());
    });
    out
}

#[test]
fn criterion_06_bound_chain_is_exhaustive_through_nine_symbols() {
    let mut checked = 0u64;
    let mut violations = 0u64;
    for n in 1..=8 {
        let table = build_distance_table(n).unwrap();
        for pi in enumerate_cycles(n).unwrap() {
            checked += 1;
            let lower = bp_lower_bound(&pi);
            let d = table.distance_of(&pi).unwrap();
            let upper = upper_bound(lower);
            if !(lower <= d && d <= upper) {
                violations += 1;
            }
        }
    }
    let ok = violations == 0 && checked == (1..=8u64).map(factorial).sum::<u64>();
    verdict(
        6,
        ok,
        &format!("lower ≤ distance ≤ upper on {checked} states through n+1=9: {violations} violations"),
    );
}

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

#[test]
fn criterion_07_every_move_shifts_odd_cycles_by_zero_or_two() {
    // Exhaustive through n+1 = 7, every state and every move; the extreme
    // count n+1 is reached exactly at the identity.
    let mut checked = 0u64;
    let mut violations = 0u64;
    for n in 1..=6 {
        for pi in enumerate_cycles(n).unwrap() {
            let odd = pi.sigma_pi_inv().cycle_decomposition().odd_count();
            if (odd == n + 1) != pi.is_identity() {
                violations += 1;
            }
            for tau in pi.applicable_moves() {
                checked += 1;
                let mu = classify_move(&tau, &pi).unwrap();
                if !matches!(mu, -2 | 0 | 2) {
                    violations += 1;
                }
            }
        }
    }
    // ...plus 10⁴ random larger instances, one random move each.
    let mut state = 20_260_815u64;
    for _ in 0..10_000 {
        let n = 8 + (splitmix(&mut state) % 23) as usize; // 8..=30
        let pi = random_cycle(n, splitmix(&mut state));
        let moves = pi.applicable_moves();
        let tau = &moves[(splitmix(&mut state) % moves.len() as u64) as usize];
        checked += 1;
        if !matches!(classify_move(tau, &pi).unwrap(), -2 | 0 | 2) {
            violations += 1;
        }
    }
    verdict(7, violations == 0, &format!("μ ∈ {{−2, 0, 2}} on {checked} moves: {violations} violations"));
}

#[test]
fn criterion_08_graph_and_algebra_tell_one_story() {
    let mut checked = 0u64;
    let mut violations = 0u64;
    let mut check = |pi: &ExtendedPermutation| {
        checked += 1;
        let g = CycleGraph::of(pi);
        let decomposition = pi.sigma_pi_inv().cycle_decomposition();
        let mut lengths: Vec<usize> = decomposition.cycles().iter().map(Cycle::len).collect();
        lengths.sort_unstable();
        let agree = g.kappa_multiset() == lengths
            && g.odd_cycle_count() == decomposition.odd_count()
            && g.bp_bound() == bp_lower_bound(pi);
        if !agree {
            violations += 1;
        }
    };
    for n in 1..=8 {
        each_permutation(n, &mut |line| {
            check(&ExtendedPermutation::from_one_line(line.to_vec()).unwrap())
        });
    }
    let mut state = 815u64;
    for _ in 0..10_000 {
        let n = 1 + (splitmix(&mut state) % 30) as usize; // 1..=30
        check(&random_cycle(n, splitmix(&mut state)));
    }
    verdict(
        8,
        violations == 0,
        &format!("κ multisets, odd counts and bounds agree on {checked} permutations: {violations} violations"),
    );
}

#[test]
fn criterion_09_recorded_two_move_chain_replays_exactly() {
    let report = verify_example7();
    verdict(
        9,
        report.pass,
        &format!(
            "three recorded 2-moves drive norm {} → {} and land on a 4-palisade: {}",
            report.start_norm,
            report.final_norm,
            if report.pass { "byte-exact".to_string() } else { report.failures.join("; ") }
        ),
    );
}

#[test]
fn criterion_10_ratio_barrier_is_eleven_eighths() {
    let floor = Ratio::new(11u64, 8);
    let mut min_seen = min_ratio(1);
    let mut violations = 0u64;
    for phi in 1..=1000 {
        let r = min_ratio(phi);
        min_seen = min_seen.min(r);
        if (r == floor) != (phi % 4 == 0) || r < floor {
            violations += 1;
        }
    }
    let ok = min_seen == floor && violations == 0;
    verdict(
        10,
        ok,
        &format!(
            "min over φ ≤ 1000 of ⌈11φ/4⌉/2φ = {}/{} (want 11/8, attained exactly at φ ≡ 0 mod 4)",
            min_seen.numer(),
            min_seen.denom()
        ),
    );
}

#[test]
fn criterion_11_closed_form_identities_hold_everywhere() {
    let mut violations = 0u64;

    // Staircase form of the palisade distance, φ up to 10⁶.
    for phi in 1..=1_000_000usize {
        if (11 * phi).div_ceil(4) != 2 * phi + 3 * (phi / 4) + phi % 4 {
            violations += 1;
        }
    }

    // Diameter arithmetic for every valid size n+1 ≤ 10⁴: the two case
    // formulas, the single closed form, and the norm upper bound evaluated
    // at the maximum 3-permutation norm (n+1)/3 must all coincide.
    for m in (3..=10_000usize).step_by(3) {
        let n = m - 1;
        let diameter = td3(n).unwrap();
        let closed = 11 * (m / 24) + (m % 24) / 2;
        if diameter != closed || upper_bound(m / 3) != closed {
            violations += 1;
        }
        if m % 6 == 0 {
            let q = m / 6;
            if (11 * m).div_ceil(24) != closed
                || 3 * q - q / 4 != (11 * q).div_ceil(4)
                || diameter != palisade_distance(q)
            {
                violations += 1;
            }
        } else {
            let q = (m - 3) / 6;
            if (11 * (n - 2)).div_ceil(24) + 1 != closed
                || 3 * q - (2 * q + 1) / 8 + 1 != (11 * q).div_ceil(4) + 1
            {
                violations += 1;
            }
        }
    }
    verdict(11, violations == 0, &format!("identity sweep: {violations} mismatches"));
}

#[test]
#[ignore = "builds and sweeps the 39.9M-state table; about six minutes on one core"]
fn long_three_permutation_diameter_at_twelve_symbols() {
    let scan = diameter_scan(11, DistanceFilter::ThreePermutations).unwrap();
    assert_eq!(scan.max_distance(), 6);
    assert_eq!(scan.max_distance(), td3(11).unwrap());
    assert!(scan.contains(&make_palisade(2)));
    println!(
        "n+1=12 diameter {} over {} states, {} attaining",
        scan.max_distance(),
        scan.states_scanned(),
        scan.argmax_count()
    );
}

#[test]
#[ignore = "IDA* proof of the 3-palisade distance at n+1 = 18; hours-scale"]
fn long_three_palisade_distance_is_nine() {
    let result = exact_distance_ida(&make_palisade(3), None);
    assert!(result.complete);
    assert_eq!(result.distance, 9);
    assert_eq!(result.distance, palisade_distance(3));
}

#[test]
#[ignore = "the (8,6)-sequence refutation at n+1 = 18 under a mandatory node budget; hours-scale"]
fn long_no_eight_six_sequence_clears_a_three_palisade() {
    let query = SequenceQuery { x: 8, y: 6, target_norm_drop: 6, budget: Some(40_000_000_000) };
    let outcome = find_xy_sequence(&make_palisade(3), &query);
    match outcome {
        XyOutcome::Found { ref witness, .. } => {
            panic!("an (8,6)-sequence allegedly sorts the 3-palisade: {witness:?}")
        }
        XyOutcome::NotFound { nodes_expanded } => {
            println!("refuted after {nodes_expanded} nodes");
        }
        XyOutcome::Indeterminate { nodes_expanded } => {
            println!("budget exhausted after {nodes_expanded} nodes — refutation still open here");
        }
    }
}
