//! Exact solvers for the minimum total tardy processing time objective.
//!
//! [`lawler_moore`] and [`sumset_scheduler`] are the baselines. The headline
//! solver is [`solve_bundled`]: due dates are colored red (heavy) or blue
//! (light) against the threshold `⌊P^(1-δ)⌋`; red dates fold their group's
//! subset sums into the running on-time load set one date at a time, while
//! runs of blue dates are bundled and handled as a unit through the
//! interval's level vector and two convolution steps. With a backend whose
//! convolution runs in time `n^α`, the parameter `δ = 1 - 1/α` from
//! [`choose_delta`] balances the red and blue work.

mod baseline;
mod bundling;
mod level_vector;

pub use baseline::{lawler_moore, sumset_scheduler};
pub use bundling::{color_and_bundle, Color, Coloring};
pub use level_vector::level_vector;

use std::time::{Duration, Instant};

use thiserror::Error;

use crate::instance::Instance;
use crate::level::{accumulate_window, ConvolutionError, ExtInt, MmsBackend};
use crate::rational::Rational;
use crate::sumset::{prefix, SumSet};

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("delta must lie strictly between 0 and 1, got {0}")]
    InvalidDelta(Rational),
    #[error("alpha must be at least 1, got {0}")]
    InvalidAlpha(Rational),
    #[error("threshold {0}^(1-{1}) does not fit in 128-bit arithmetic")]
    ThresholdOverflow(usize, Rational),
    #[error("group interval {lo}..{hi} out of range for {count} groups")]
    IntervalOutOfRange { lo: usize, hi: usize, count: usize },
    #[error(transparent)]
    Convolution(#[from] ConvolutionError),
}

/// The bundling parameter matched to a backend exponent: `δ = 1 - 1/α`.
pub fn choose_delta(alpha: Rational) -> Result<Rational, SolveError> {
    if alpha.num() < alpha.den() {
        return Err(SolveError::InvalidAlpha(alpha));
    }
    Ok(Rational::new(alpha.num() - alpha.den(), alpha.num()).expect("nonzero denominator"))
}

/// Wall-clock time spent in each phase of [`solve_bundled`].
#[derive(Clone, Copy, Debug, Default)]
pub struct PhaseTimings {
    pub coloring: Duration,
    pub red_dates: Duration,
    pub level_vectors: Duration,
    pub bundle_combine: Duration,
    pub total: Duration,
}

/// Outcome of a bundled solve.
#[derive(Clone, Debug)]
pub struct SolveReport {
    pub tardy_total: usize,
    pub ontime_total: usize,
    pub red_count: usize,
    pub bundle_count: usize,
    pub timings: PhaseTimings,
}

/// Exact minimum total tardy processing time via due-date bundling.
pub fn solve_bundled(
    instance: &Instance,
    delta: Rational,
    backend: &dyn MmsBackend,
) -> Result<SolveReport, SolveError> {
    solve_bundled_inner(instance, delta, backend, &mut |_, _| {})
}

/// Runs one bundled solve, reporting the on-time load set after every
/// processed due date (red date or bundle end) to `observe`.
fn solve_bundled_inner(
    instance: &Instance,
    delta: Rational,
    backend: &dyn MmsBackend,
    observe: &mut dyn FnMut(usize, &SumSet),
) -> Result<SolveReport, SolveError> {
    let solve_start = Instant::now();
    let mut timings = PhaseTimings::default();

    let phase = Instant::now();
    let coloring = color_and_bundle(instance, delta)?;
    timings.coloring = phase.elapsed();

    let total = instance.total_load();
    let mut on_time = SumSet::zero(total);

    for (i, group) in instance.groups().iter().enumerate() {
        if coloring.is_red(i) {
            let phase = Instant::now();
            // Folding {0, p} for every group job is the sumset with the
            // group's full subset-sum set, done in place.
            for &j in &group.job_indices {
                on_time.or_shift(instance.jobs()[j].p);
            }
            on_time.trim(group.due);
            timings.red_dates += phase.elapsed();
        } else if let Some(k) = coloring.bundle_starting_at_end(i) {
            let phase = Instant::now();
            let levels = level_vector(instance, k..i + 1, backend)?;
            timings.level_vectors += phase.elapsed();

            let phase = Instant::now();
            let interval_load = levels.len() - 1;
            let first_due = instance.groups()[k].due;

            // Split point: prior loads at most `first_due - interval_load`
            // leave room for any feasible bundle schedule after them.
            let split = first_due as i64 - interval_load as i64;

            // The starts needing the convolution treatment are the on-time
            // loads past the split, snapshotted before the sumset below
            // enlarges the set. Combined load y is achievable from such a
            // start x iff levels[y - x] ≥ x; that is one windowed
            // convolution of the 0/-∞ start vector against the level
            // vector, with zeros of the output marking achievable loads.
            let max_before = on_time.max_member().expect("0 is always present");
            let start_range = ((max_before as i64) > split).then(|| {
                let start_dim = first_due.max(1);
                assert!(
                    max_before < start_dim,
                    "on-time loads must stay below the bundle's first due date"
                );
                let lo = if split >= 0 { (split + 1) as usize } else { 0 };
                let hi = max_before + 1;
                let window: Vec<ExtInt> = (lo..hi)
                    .map(|x| {
                        if on_time.contains(x) {
                            ExtInt::ZERO
                        } else {
                            ExtInt::NEG_INF
                        }
                    })
                    .collect();
                (lo, window)
            });

            if split >= 0 {
                // Every bundle subset finishes by `first_due` from these
                // early starts, so the feasible bundle loads here are the
                // plain subset sums of its jobs (no feasibility filtering),
                // and the sumset with them folds as one in-place {0, p}
                // shift per job.
                let mut extended = SumSet::empty(total.min(first_due));
                extended.union_with(&prefix(&on_time, split));
                for g in &instance.groups()[k..=i] {
                    for &j in &g.job_indices {
                        extended.or_shift(instance.jobs()[j].p);
                    }
                }
                on_time.union_with(&extended);
            }

            if let Some((lo, window)) = start_range {
                let combined = accumulate_window(
                    &window,
                    lo,
                    levels.as_slice(),
                    lo,
                    window.len() + interval_load,
                );
                for (offset, &v) in combined.iter().enumerate() {
                    if v == ExtInt::ZERO {
                        let load = lo + offset;
                        debug_assert!(load <= total);
                        on_time.insert(load);
                    }
                }
            }

            on_time.trim(group.due);
            timings.bundle_combine += phase.elapsed();
        } else {
            // Blue but not a bundle end: handled when its bundle's end is.
            continue;
        }
        debug_assert!(on_time.contains(0));
        debug_assert!(on_time.max_member().unwrap() <= group.due);
        observe(i, &on_time);
    }

    let best = on_time.max_member().expect("0 is always achievable");
    timings.total = solve_start.elapsed();
    Ok(SolveReport {
        tardy_total: total - best,
        ontime_total: best,
        red_count: coloring.red_count(),
        bundle_count: coloring.bundle_count(),
        timings,
    })
}
