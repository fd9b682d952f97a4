//! Baseline exact solvers: the per-job dynamic program and the per-due-date
//! sumset scheduler.

use crate::instance::Instance;
use crate::sumset::{subset_sums, sumset, SumSet};

/// Lawler–Moore dynamic program: walk jobs in due-date order, keep the set
/// of achievable on-time loads, and cut everything past each due date.
pub fn lawler_moore(instance: &Instance) -> usize {
    let total = instance.total_load();
    let mut on_time = SumSet::zero(total);
    let mut order: Vec<usize> = (0..instance.n()).collect();
    order.sort_by_key(|&i| instance.jobs()[i].d);
    for i in order {
        let job = instance.jobs()[i];
        on_time.or_shift(job.p);
        on_time.trim(job.d);
    }
    total - on_time.max_member().expect("0 is always achievable")
}

/// Per-due-date scheduler: for each distinct due date, fold in the subset
/// sums of its whole group with one sumset, then cut past the date.
pub fn sumset_scheduler(instance: &Instance) -> usize {
    let total = instance.total_load();
    let mut on_time = SumSet::zero(total);
    for group in instance.groups() {
        let values: Vec<usize> = group
            .job_indices
            .iter()
            .map(|&i| instance.jobs()[i].p)
            .collect();
        let group_sums = subset_sums(&values, group.group_load);
        on_time = sumset(&on_time, &group_sums, total);
        on_time.trim(group.due);
    }
    total - on_time.max_member().expect("0 is always achievable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{generate_instance, Family, Instance, Job};
    use crate::oracle::brute_force_opt;

    fn instance(pairs: &[(usize, usize)]) -> Instance {
        Instance::new(pairs.iter().map(|&(p, d)| Job::new(p, d)).collect())
    }

    #[test]
    fn small_cases() {
        for solver in [lawler_moore, sumset_scheduler] {
            assert_eq!(solver(&instance(&[(2, 2), (3, 5)])), 0);
            assert_eq!(solver(&instance(&[(3, 4), (3, 4)])), 3);
            assert_eq!(solver(&instance(&[(3, 8), (5, 8), (7, 8)])), 7);
            assert_eq!(solver(&instance(&[(5, 3)])), 5);
            assert_eq!(solver(&instance(&[])), 0);
        }
    }

    #[test]
    fn everything_fits_when_due_dates_are_late() {
        let inst = instance(&[(4, 100), (9, 100), (2, 50)]);
        assert_eq!(lawler_moore(&inst), 0);
        assert_eq!(sumset_scheduler(&inst), 0);
    }

    #[test]
    fn agree_with_brute_force_on_random_instances() {
        for seed in 0..150 {
            for family in Family::ALL {
                let inst = generate_instance((seed % 9) as usize + 1, 10, family, seed);
                let expected = brute_force_opt(&inst).unwrap();
                assert_eq!(lawler_moore(&inst), expected, "lm seed {seed}");
                assert_eq!(sumset_scheduler(&inst), expected, "sumset seed {seed}");
            }
        }
    }
}
