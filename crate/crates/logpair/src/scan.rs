//! Exhaustive grid scan of the Euler-number / normalized-volume identity.
//!
//! The scan enumerates every arrangement germ whose weights are nonzero
//! rationals in `(0, 1]` with denominator at most `max_denominator`, up to
//! `max_points` lines, as non-decreasing tuples in canonical rational order
//! (prefix-first lexicographic). Permutations of a tuple change nothing, so
//! sorted multisets lose no coverage.
//!
//! For each germ it computes the local Euler number by the direct formula
//! and the normalized volume by the matching route: the closed cone formula
//! when the weights are K-semistable, the destabilizing degeneration
//! otherwise. A klt germ must satisfy `4 e_orb = vol_hat` exactly; a
//! non-klt germ must have `e_orb = 0`. Mismatches are reported as
//! violations, not errors.
//!
//! Work is partitioned by leading weight. Partitions share nothing mutable
//! and their partial reports are merged in canonical order, so the report
//! is identical for any worker count. With the `parallel` feature (default)
//! partitions fan out over a rayon pool sized by `parallel_workers`;
//! without it, or with one worker, the scan runs on the calling thread.

use std::time::{Duration, Instant};

use num_integer::Integer;
use num_traits::One;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::cones::{destabilizing_degeneration, LineArrangement, PolarizedCone};
use crate::euler::euler_line_arrangement;
use crate::rat::{rat, rat_int, Rat};

/// Identity tag for a klt germ whose Euler number disagrees with a quarter
/// of its normalized volume.
pub const KLT_IDENTITY: &str = "klt_euler_equals_quarter_volume";
/// Identity tag for a non-klt germ with a nonzero Euler number.
pub const NON_KLT_IDENTITY: &str = "non_klt_euler_vanishes";

/// Bounds of a scan and the number of workers to fan out over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanConfig {
    /// Largest denominator of a weight, at least 1.
    pub max_denominator: u32,
    /// Largest number of lines per germ.
    pub max_points: u32,
    /// Worker count; 1 runs on the calling thread.
    pub parallel_workers: usize,
}

impl ScanConfig {
    pub fn new(max_denominator: u32, max_points: u32) -> Self {
        assert!(max_denominator >= 1, "max_denominator must be at least 1");
        Self {
            max_denominator,
            max_points,
            parallel_workers: 1,
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        assert!(workers >= 1, "worker count must be at least 1");
        self.parallel_workers = workers;
        self
    }
}

/// One failed identity: the weight tuple, both sides, and which identity
/// broke.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub weights: Vec<Rat>,
    pub expected: Rat,
    pub actual: Rat,
    pub identity: &'static str,
}

/// Outcome of a scan. `violations` is empty unless an identity fails.
#[derive(Debug, Clone)]
pub struct ScanReport {
    pub tuples_checked: u64,
    pub violations: Vec<Violation>,
    pub elapsed: Duration,
}

impl ScanReport {
    /// Equality of everything except the timing.
    pub fn same_outcome(&self, other: &Self) -> bool {
        self.tuples_checked == other.tuples_checked && self.violations == other.violations
    }
}

/// All weights available to the scan: nonzero rationals in `(0, 1]` with
/// denominator at most `max_denominator`, ascending.
pub fn weight_alphabet(max_denominator: u32) -> Vec<Rat> {
    let mut alphabet = Vec::new();
    for q in 1..=max_denominator as i64 {
        for p in 1..=q {
            if p.gcd(&q) == 1 {
                alphabet.push(rat(p, q));
            }
        }
    }
    alphabet.sort();
    alphabet
}

/// Runs the scan, fanning out per [`ScanConfig::parallel_workers`].
pub fn scan_conjecture(config: &ScanConfig) -> ScanReport {
    let started = Instant::now();
    let alphabet = weight_alphabet(config.max_denominator);

    let mut tuples_checked = 0u64;
    let mut violations = Vec::new();

    // The empty germ (a smooth point) precedes every partition.
    check_tuple(&[], &mut tuples_checked, &mut violations);

    let partials = run_partitions(&alphabet, config);
    for (count, mut partial) in partials {
        tuples_checked += count;
        violations.append(&mut partial);
    }

    ScanReport {
        tuples_checked,
        violations,
        elapsed: started.elapsed(),
    }
}

/// Single-threaded scan, independent of the `parallel` feature.
pub fn scan_sequential(config: &ScanConfig) -> ScanReport {
    let sequential = ScanConfig {
        parallel_workers: 1,
        ..config.clone()
    };
    scan_conjecture(&sequential)
}

#[cfg(feature = "parallel")]
fn run_partitions(alphabet: &[Rat], config: &ScanConfig) -> Vec<(u64, Vec<Violation>)> {
    if config.parallel_workers <= 1 {
        return run_partitions_sequential(alphabet, config);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.parallel_workers)
        .build()
        .expect("failed to build scan thread pool");
    pool.install(|| {
        (0..alphabet.len())
            .into_par_iter()
            .map(|lead| scan_partition_parallel(alphabet, lead, config.max_points))
            .collect()
    })
}

/// Parallel variant of [`scan_partition`]: small leading weights own most of
/// the grid, so each partition fans out once more over the second weight.
/// Sub-results are collected in index order, which reproduces the
/// sequential walk exactly.
#[cfg(feature = "parallel")]
fn scan_partition_parallel(
    alphabet: &[Rat],
    lead: usize,
    max_points: u32,
) -> (u64, Vec<Violation>) {
    let mut count = 0u64;
    let mut violations = Vec::new();
    if max_points == 0 {
        return (count, violations);
    }
    check_tuple(&[alphabet[lead].clone()], &mut count, &mut violations);
    if max_points >= 2 {
        let partials: Vec<(u64, Vec<Violation>)> = (lead..alphabet.len())
            .into_par_iter()
            .map(|second| {
                let mut sub_count = 0u64;
                let mut sub_violations = Vec::new();
                let mut stack = vec![alphabet[lead].clone(), alphabet[second].clone()];
                extend_tuple(
                    alphabet,
                    second,
                    max_points,
                    &mut stack,
                    &mut sub_count,
                    &mut sub_violations,
                );
                (sub_count, sub_violations)
            })
            .collect();
        for (sub_count, mut sub_violations) in partials {
            count += sub_count;
            violations.append(&mut sub_violations);
        }
    }
    (count, violations)
}

#[cfg(not(feature = "parallel"))]
fn run_partitions(alphabet: &[Rat], config: &ScanConfig) -> Vec<(u64, Vec<Violation>)> {
    run_partitions_sequential(alphabet, config)
}

fn run_partitions_sequential(alphabet: &[Rat], config: &ScanConfig) -> Vec<(u64, Vec<Violation>)> {
    (0..alphabet.len())
        .map(|lead| scan_partition(alphabet, lead, config.max_points))
        .collect()
}

/// Checks every tuple whose leading weight is `alphabet[lead]`, in
/// prefix-first lexicographic order.
fn scan_partition(alphabet: &[Rat], lead: usize, max_points: u32) -> (u64, Vec<Violation>) {
    let mut count = 0u64;
    let mut violations = Vec::new();
    if max_points == 0 {
        return (count, violations);
    }
    let mut stack = vec![alphabet[lead].clone()];
    extend_tuple(
        alphabet,
        lead,
        max_points,
        &mut stack,
        &mut count,
        &mut violations,
    );
    (count, violations)
}

fn extend_tuple(
    alphabet: &[Rat],
    min_index: usize,
    max_points: u32,
    stack: &mut Vec<Rat>,
    count: &mut u64,
    violations: &mut Vec<Violation>,
) {
    check_tuple(stack, count, violations);
    if stack.len() as u32 == max_points {
        return;
    }
    for next in min_index..alphabet.len() {
        stack.push(alphabet[next].clone());
        extend_tuple(alphabet, next, max_points, stack, count, violations);
        stack.pop();
    }
}

/// One germ: compute both sides of the matching identity and record any
/// mismatch.
fn check_tuple(weights: &[Rat], count: &mut u64, violations: &mut Vec<Violation>) {
    *count += 1;

    let arrangement = LineArrangement::from_weights(weights).expect("scan weights lie in (0, 1]");
    let euler = euler_line_arrangement(&arrangement).value;

    if arrangement.is_klt_germ() {
        let delta_m = arrangement.delta_max();
        let delta_rest = arrangement.delta_rest();
        // Matching volume route: closed cone formula when K-semistable,
        // destabilizing degeneration otherwise.
        let vol_hat = if delta_m <= delta_rest {
            PolarizedCone::new(arrangement.to_marked_sphere(), Rat::one())
                .expect("unit polarization degree is positive")
                .normalized_volume()
                .expect("klt semistable germs have a closed-form volume")
        } else {
            destabilizing_degeneration(&arrangement)
                .expect("unstable klt germs satisfy the degeneration regime")
                .vol_hat
        };
        let expected = vol_hat / rat_int(4);
        if euler != expected {
            violations.push(Violation {
                weights: weights.to_vec(),
                expected,
                actual: euler,
                identity: KLT_IDENTITY,
            });
        }
    } else if euler != rat_int(0) {
        violations.push(Violation {
            weights: weights.to_vec(),
            expected: rat_int(0),
            actual: euler,
            identity: NON_KLT_IDENTITY,
        });
    }
}
