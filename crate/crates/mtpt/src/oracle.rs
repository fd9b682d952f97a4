//! Exhaustive reference implementations used to validate the solvers.
//!
//! Everything here favors directness over speed: subsets are enumerated
//! explicitly and feasibility is simulated. Inputs are guarded so a stray
//! call cannot blow up.

use std::ops::Range;

use thiserror::Error;

use crate::instance::{Instance, Job};
use crate::level::{ExtInt, LevelVector};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("instance with {n} jobs is too large for exhaustive search (limit {limit})")]
    TooLarge { n: usize, limit: usize },
    #[error("group interval {lo}..{hi} out of range for {count} groups")]
    IntervalOutOfRange { lo: usize, hi: usize, count: usize },
}

const OPT_JOB_LIMIT: usize = 24;
const LEVEL_JOB_LIMIT: usize = 20;

/// True when the jobs, run back to back from `start` in nondecreasing
/// due-date order, all finish by their due dates.
pub fn edd_feasible(jobs: &[Job], start: usize) -> bool {
    let mut order: Vec<Job> = jobs.to_vec();
    order.sort_by_key(|j| j.d);
    let mut time = start;
    for job in order {
        time += job.p;
        if time > job.d {
            return false;
        }
    }
    true
}

/// Exact minimum total tardy processing time by enumerating every candidate
/// on-time set. A set is schedulable on time exactly when its due-date order
/// is, and tardy jobs can always be appended afterwards.
pub fn brute_force_opt(instance: &Instance) -> Result<usize, OracleError> {
    let n = instance.n();
    if n > OPT_JOB_LIMIT {
        return Err(OracleError::TooLarge {
            n,
            limit: OPT_JOB_LIMIT,
        });
    }
    let mut jobs: Vec<Job> = instance.jobs().to_vec();
    jobs.sort_by_key(|j| j.d);
    let mut best_on_time = 0usize;
    for mask in 0u32..1 << n {
        let mut completion = 0usize;
        let mut feasible = true;
        for (i, job) in jobs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                completion += job.p;
                if completion > job.d {
                    feasible = false;
                    break;
                }
            }
        }
        if feasible {
            best_on_time = best_on_time.max(completion);
        }
    }
    Ok(instance.total_load() - best_on_time)
}

/// Latest feasible start of a fixed job set, or `None` when even start 0
/// fails. Computed as the minimum over due-date-order prefixes of
/// `due - prefix completion`.
fn latest_start(sorted: &[Job]) -> Option<usize> {
    let mut completion = 0i64;
    let mut latest = i64::MAX;
    for job in sorted {
        completion += job.p as i64;
        latest = latest.min(job.d as i64 - completion);
    }
    (latest >= 0).then_some(latest as usize)
}

/// Exhaustive level vector for a consecutive group interval: entry `x` is
/// the latest start from which some load-`x` subset of the interval's jobs
/// is feasible (`+∞` for the empty load, `-∞` when no subset works).
pub fn brute_force_level_vector(
    instance: &Instance,
    interval: Range<usize>,
) -> Result<LevelVector, OracleError> {
    let count = instance.groups().len();
    if interval.start >= interval.end || interval.end > count {
        return Err(OracleError::IntervalOutOfRange {
            lo: interval.start,
            hi: interval.end,
            count,
        });
    }
    let mut jobs: Vec<Job> = instance.groups()[interval]
        .iter()
        .flat_map(|g| g.job_indices.iter().map(|&i| instance.jobs()[i]))
        .collect();
    if jobs.len() > LEVEL_JOB_LIMIT {
        return Err(OracleError::TooLarge {
            n: jobs.len(),
            limit: LEVEL_JOB_LIMIT,
        });
    }
    jobs.sort_by_key(|j| j.d);
    let interval_load: usize = jobs.iter().map(|j| j.p).sum();
    let mut entries = vec![ExtInt::NEG_INF; interval_load + 1];
    entries[0] = ExtInt::POS_INF;
    let mut subset = Vec::with_capacity(jobs.len());
    for mask in 1u32..1 << jobs.len() {
        subset.clear();
        subset.extend(
            jobs.iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &j)| j),
        );
        let load: usize = subset.iter().map(|j| j.p).sum();
        if let Some(t) = latest_start(&subset) {
            entries[load] = entries[load].max(ExtInt::finite(t as i64));
        }
    }
    Ok(LevelVector::new(entries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::generate_instance;
    use crate::instance::Family;
    use proptest::prelude::*;

    fn jobs(pairs: &[(usize, usize)]) -> Vec<Job> {
        pairs.iter().map(|&(p, d)| Job::new(p, d)).collect()
    }

    fn instance(pairs: &[(usize, usize)]) -> Instance {
        Instance::new(jobs(pairs))
    }

    #[test]
    fn edd_simulation() {
        assert!(edd_feasible(&[], 17));
        assert!(edd_feasible(&jobs(&[(2, 3), (2, 5)]), 1));
        assert!(!edd_feasible(&jobs(&[(2, 3), (2, 5)]), 2));
    }

    #[test]
    fn brute_force_small_cases() {
        assert_eq!(brute_force_opt(&instance(&[(2, 2), (3, 5)])).unwrap(), 0);
        assert_eq!(brute_force_opt(&instance(&[(3, 4), (3, 4)])).unwrap(), 3);
        assert_eq!(
            brute_force_opt(&instance(&[(3, 8), (5, 8), (7, 8)])).unwrap(),
            7
        );
        assert_eq!(brute_force_opt(&instance(&[])).unwrap(), 0);
    }

    #[test]
    fn brute_force_guards_size() {
        let big = generate_instance(25, 3, Family::ManyDues, 1);
        assert!(matches!(
            brute_force_opt(&big),
            Err(OracleError::TooLarge { .. })
        ));
    }

    #[test]
    fn level_vector_single_group() {
        let inst = instance(&[(2, 5), (3, 5)]);
        let m = brute_force_level_vector(&inst, 0..1).unwrap();
        let expected = [
            ExtInt::POS_INF,
            ExtInt::NEG_INF,
            ExtInt::finite(3),
            ExtInt::finite(2),
            ExtInt::NEG_INF,
            ExtInt::finite(0),
        ];
        assert_eq!(m.as_slice(), &expected);
    }

    #[test]
    fn level_vector_two_groups() {
        let inst = instance(&[(2, 3), (3, 5)]);
        let m = brute_force_level_vector(&inst, 0..2).unwrap();
        assert_eq!(m[0], ExtInt::POS_INF);
        assert_eq!(m[1], ExtInt::NEG_INF);
        assert_eq!(m[2], ExtInt::finite(1));
        assert_eq!(m[3], ExtInt::finite(2));
        assert_eq!(m[4], ExtInt::NEG_INF);
        assert_eq!(m[5], ExtInt::finite(0));
    }

    #[test]
    fn level_vector_rejects_bad_intervals() {
        let inst = instance(&[(2, 3), (3, 5)]);
        assert!(brute_force_level_vector(&inst, 0..3).is_err());
        assert!(brute_force_level_vector(&inst, 1..1).is_err());
    }

    fn small_instance_strategy() -> impl Strategy<Value = Instance> {
        prop::collection::vec((1usize..10, 0usize..25), 1..9)
            .prop_map(|pairs| Instance::new(jobs(&pairs)))
    }

    proptest! {
        #[test]
        fn edd_is_downward_monotone_in_start(
            pairs in prop::collection::vec((1usize..8, 0usize..20), 0..7),
            t in 0usize..20,
        ) {
            let js = jobs(&pairs);
            if edd_feasible(&js, t) {
                for earlier in 0..t {
                    prop_assert!(edd_feasible(&js, earlier));
                }
            }
        }

        #[test]
        fn removing_a_job_never_increases_tardiness(inst in small_instance_strategy(), pick in 0usize..8) {
            let base = brute_force_opt(&inst).unwrap();
            let idx = pick % inst.n();
            let mut fewer = inst.jobs().to_vec();
            fewer.remove(idx);
            let reduced = brute_force_opt(&Instance::new(fewer)).unwrap();
            prop_assert!(reduced <= base);
        }

        #[test]
        fn raising_a_due_date_never_increases_tardiness(
            inst in small_instance_strategy(),
            pick in 0usize..8,
            bump in 1usize..10,
        ) {
            let base = brute_force_opt(&inst).unwrap();
            let idx = pick % inst.n();
            let mut raised = inst.jobs().to_vec();
            raised[idx].d += bump;
            let relaxed = brute_force_opt(&Instance::new(raised)).unwrap();
            prop_assert!(relaxed <= base);
        }

        #[test]
        fn finite_levels_respect_the_last_due_date(inst in small_instance_strategy()) {
            let count = inst.groups().len();
            for lo in 0..count {
                for hi in lo + 1..=count {
                    let m = brute_force_level_vector(&inst, lo..hi).unwrap();
                    let last_due = inst.groups()[hi - 1].due as i64;
                    for x in 1..m.len() {
                        if let Some(t) = m[x].value() {
                            prop_assert!(t + x as i64 <= last_due);
                        }
                    }
                }
            }
        }
    }
}
