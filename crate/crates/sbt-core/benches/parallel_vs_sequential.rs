//! Head-to-head timings of the rayon engines against their sequential
//! twins, on the three workloads that dominate real use: building a full
//! distance table, sweeping a built table for the diameter, and an IDA*
//! distance proof.  Both sides compute identical answers (the test suite
//! checks that); this harness only asks what the fan-out buys.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use sbt_core::generators::make_palisade;
use sbt_core::search::{
    build_distance_table, build_distance_table_seq, exact_distance_ida_seq, scan_table_seq,
    DistanceFilter,
};

#[cfg(feature = "parallel")]
use sbt_core::search::{build_distance_table_par, exact_distance_ida_par, scan_table_par};

fn bench_table_build(c: &mut Criterion) {
    let mut group = c.benchmark_group("table_build");
    group.sample_size(10);
    // n = 9 (362 880 states) is where the fan-out starts to amortize; the
    // smaller sizes mostly measure the parallel scaffolding itself.
    for n in [7usize, 8, 9] {
        group.bench_with_input(BenchmarkId::new("seq", n), &n, |b, &n| {
            b.iter(|| build_distance_table_seq(n).unwrap())
        });
        #[cfg(feature = "parallel")]
        group.bench_with_input(BenchmarkId::new("par", n), &n, |b, &n| {
            b.iter(|| build_distance_table_par(n).unwrap())
        });
    }
    group.finish();
}

fn bench_table_scan(c: &mut Criterion) {
    let n = 8;
    let table = build_distance_table(n).unwrap();
    let mut group = c.benchmark_group("table_scan");
    group.sample_size(10);
    group.bench_function(BenchmarkId::new("seq", n), |b| {
        b.iter(|| scan_table_seq(&table, DistanceFilter::ThreePermutations))
    });
    #[cfg(feature = "parallel")]
    group.bench_function(BenchmarkId::new("par", n), |b| {
        b.iter(|| scan_table_par(&table, DistanceFilter::ThreePermutations))
    });
    group.finish();
}

fn bench_ida(c: &mut Criterion) {
    // A 2-palisade: distance 6 against a 3-norm of 4, so IDA* must walk
    // thresholds 4, 5 and 6 — enough work to be worth splitting.
    let pi = make_palisade(2);
    let mut group = c.benchmark_group("ida_distance");
    group.sample_size(10);
    group.bench_function("seq/2-palisade", |b| {
        b.iter(|| {
            let r = exact_distance_ida_seq(&pi, None);
            assert_eq!(r.distance, 6);
            r
        })
    });
    #[cfg(feature = "parallel")]
    group.bench_function("par/2-palisade", |b| {
        b.iter(|| {
            let r = exact_distance_ida_par(&pi, None);
            assert_eq!(r.distance, 6);
            r
        })
    });
    group.finish();
}

criterion_group!(benches, bench_table_build, bench_table_scan, bench_ida);
criterion_main!(benches);
