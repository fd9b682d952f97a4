//! Divide-and-conquer construction of the level vector of a group interval.
//!
//! The level vector of an interval maps each load `x` to the latest start
//! time from which some load-`x` subset of the interval's jobs can run
//! entirely on time (`+∞` for the empty load, `-∞` when impossible). A
//! single group is solved directly from its subset sums; larger intervals
//! are split at the index midpoint and combined with one max-min-skewed
//! convolution: serving a load-`i` left part first pushes the right part's
//! start to `t + i`, hence `t ≤ min(left[i], right[x-i] - i)`.

use std::ops::Range;

use crate::instance::{DueDateGroup, Instance};
use crate::level::{ExtInt, LevelVector, MmsBackend};
use crate::sumset::subset_sums;

use super::SolveError;

/// Exact level vector of the consecutive group interval, of length
/// `P_I + 1`.
pub fn level_vector(
    instance: &Instance,
    interval: Range<usize>,
    backend: &dyn MmsBackend,
) -> Result<LevelVector, SolveError> {
    let count = instance.groups().len();
    if interval.start >= interval.end || interval.end > count {
        return Err(SolveError::IntervalOutOfRange {
            lo: interval.start,
            hi: interval.end,
            count,
        });
    }
    Ok(build(instance, &instance.groups()[interval], backend))
}

fn build(instance: &Instance, groups: &[DueDateGroup], backend: &dyn MmsBackend) -> LevelVector {
    if groups.len() == 1 {
        return single_group(instance, &groups[0]);
    }
    let mid = groups.len() / 2;
    let left = build(instance, &groups[..mid], backend);
    let right = build(instance, &groups[mid..], backend);
    clamp_negative(backend.convolve(&left, &right))
}

fn single_group(instance: &Instance, group: &DueDateGroup) -> LevelVector {
    let mut entries = vec![ExtInt::NEG_INF; group.group_load + 1];
    entries[0] = ExtInt::POS_INF;
    if let [only] = group.job_indices[..] {
        let p = instance.jobs()[only].p;
        if p <= group.due {
            entries[p] = ExtInt::finite((group.due - p) as i64);
        }
        return LevelVector::new(entries);
    }
    let values: Vec<usize> = group
        .job_indices
        .iter()
        .map(|&i| instance.jobs()[i].p)
        .collect();
    let sums = subset_sums(&values, group.group_load);
    for x in sums.members().skip(1) {
        if x <= group.due {
            entries[x] = ExtInt::finite((group.due - x) as i64);
        }
    }
    LevelVector::new(entries)
}

/// A negative combined level means the schedule would have to start before
/// time 0, which is no schedule at all.
fn clamp_negative(v: LevelVector) -> LevelVector {
    let mut v = v;
    for i in 0..v.len() {
        if let Some(t) = v[i].value() {
            if t < 0 {
                v.set(i, ExtInt::NEG_INF);
            }
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{generate_instance, Family, Instance, Job};
    use crate::level::backends;
    use crate::level::default_backend;
    use crate::oracle::brute_force_level_vector;

    fn instance(pairs: &[(usize, usize)]) -> Instance {
        Instance::new(pairs.iter().map(|&(p, d)| Job::new(p, d)).collect())
    }

    #[test]
    fn single_group_matches_direct_construction() {
        let inst = instance(&[(2, 5), (3, 5)]);
        let m = level_vector(&inst, 0..1, default_backend()).unwrap();
        assert_eq!(
            m.as_slice(),
            &[
                ExtInt::POS_INF,
                ExtInt::NEG_INF,
                ExtInt::finite(3),
                ExtInt::finite(2),
                ExtInt::NEG_INF,
                ExtInt::finite(0),
            ]
        );
    }

    #[test]
    fn two_group_combine_matches_oracle() {
        let inst = instance(&[(2, 3), (3, 5)]);
        let m = level_vector(&inst, 0..2, default_backend()).unwrap();
        let expected = brute_force_level_vector(&inst, 0..2).unwrap();
        assert_eq!(m, expected);
        assert_eq!(m[2], ExtInt::finite(1));
        assert_eq!(m[3], ExtInt::finite(2));
        assert_eq!(m[5], ExtInt::finite(0));
    }

    #[test]
    fn empty_load_entry_is_pos_inf() {
        let inst = instance(&[(4, 1)]);
        let m = level_vector(&inst, 0..1, default_backend()).unwrap();
        assert_eq!(m[0], ExtInt::POS_INF);
        assert_eq!(m[4], ExtInt::NEG_INF); // cannot finish a length-4 job by time 1
    }

    #[test]
    fn rejects_bad_intervals() {
        let inst = instance(&[(1, 1), (1, 2)]);
        assert!(level_vector(&inst, 0..0, default_backend()).is_err());
        assert!(level_vector(&inst, 1..3, default_backend()).is_err());
    }

    #[test]
    fn matches_oracle_on_random_instances_and_all_intervals() {
        for seed in 0..60 {
            for family in Family::ALL {
                let inst = generate_instance(6, 7, family, 1000 + seed);
                let count = inst.groups().len();
                for lo in 0..count {
                    for hi in lo + 1..=count {
                        let expected = brute_force_level_vector(&inst, lo..hi).unwrap();
                        for backend in backends() {
                            let got = level_vector(&inst, lo..hi, *backend).unwrap();
                            assert_eq!(
                                got,
                                expected,
                                "seed {seed} family {:?} interval {lo}..{hi} backend {}",
                                family,
                                backend.name()
                            );
                        }
                    }
                }
            }
        }
    }
}
