//! Benchmarks the conjecture scan: single-threaded walk vs. the rayon
//! partition fan-out at several grid sizes.
//!
//! Build with `--no-default-features` to measure the sequential-only
//! build; the parallel benches then drop out.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use logpair::{scan_conjecture, scan_sequential, ScanConfig};

fn bench_scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("scan_conjecture");
    group.sample_size(10);

    for (max_denominator, max_points) in [(5u32, 4u32), (6, 5), (8, 5)] {
        let label = format!("den{max_denominator}_pts{max_points}");
        let config = ScanConfig::new(max_denominator, max_points);

        group.bench_with_input(
            BenchmarkId::new("sequential", &label),
            &config,
            |b, config| {
                b.iter(|| {
                    let report = scan_sequential(black_box(config));
                    assert!(report.violations.is_empty());
                    report.tuples_checked
                })
            },
        );

        #[cfg(feature = "parallel")]
        for workers in [2usize, 4] {
            let parallel = config.clone().with_workers(workers);
            group.bench_with_input(
                BenchmarkId::new(format!("parallel_w{workers}"), &label),
                &parallel,
                |b, config| {
                    b.iter(|| {
                        let report = scan_conjecture(black_box(config));
                        assert!(report.violations.is_empty());
                        report.tuples_checked
                    })
                },
            );
        }
    }

    group.finish();
}

criterion_group!(benches, bench_scan);
criterion_main!(benches);
