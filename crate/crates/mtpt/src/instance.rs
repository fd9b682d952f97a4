//! Job and instance model: due-date grouping, JSON persistence, and seeded
//! random instance generation.
//!
//! An instance document is a UTF-8 JSON object `{"jobs": [{"p": .., "d": ..}, ..]}`.
//! `p` must be a positive integer, `d` a nonnegative integer; unknown keys are
//! rejected. Jobs are stored in input order; due-date grouping is derived on
//! construction and never persisted.

use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("instance document must be an object with a \"jobs\" array")]
    Document,
    #[error("unknown key {0:?} in instance document")]
    UnknownKey(String),
    #[error("job {index}: {reason}")]
    Job { index: usize, reason: String },
    #[error("unknown due-date family {0:?} (expected single-due, many-dues or few-heavy)")]
    UnknownFamily(String),
}

/// A job with processing time `p ≥ 1` and due date `d ≥ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Job {
    pub p: usize,
    pub d: usize,
}

impl Job {
    pub fn new(p: usize, d: usize) -> Job {
        assert!(p >= 1, "processing time must be positive");
        Job { p, d }
    }
}

/// The jobs sharing one distinct due date.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DueDateGroup {
    pub due: usize,
    pub job_indices: Vec<usize>,
    pub group_load: usize,
}

/// A validated problem instance with derived totals and grouping.
#[derive(Clone, Debug)]
pub struct Instance {
    jobs: Vec<Job>,
    total_load: usize,
    due_dates: Vec<usize>,
    groups: Vec<DueDateGroup>,
}

impl Instance {
    pub fn new(jobs: Vec<Job>) -> Instance {
        let (due_dates, groups) = group_by_due(&jobs);
        let total_load: usize = jobs.iter().map(|j| j.p).sum();
        let grouped: usize = groups.iter().map(|g| g.group_load).sum();
        assert_eq!(total_load, grouped, "group loads must add up to the total");
        assert!(
            due_dates.windows(2).all(|w| w[0] < w[1]),
            "due dates must be strictly increasing"
        );
        Instance {
            jobs,
            total_load,
            due_dates,
            groups,
        }
    }

    pub fn jobs(&self) -> &[Job] {
        &self.jobs
    }

    pub fn n(&self) -> usize {
        self.jobs.len()
    }

    /// Sum of all processing times.
    pub fn total_load(&self) -> usize {
        self.total_load
    }

    /// Distinct due dates, ascending.
    pub fn due_dates(&self) -> &[usize] {
        &self.due_dates
    }

    pub fn groups(&self) -> &[DueDateGroup] {
        &self.groups
    }

    /// Number of distinct due dates.
    pub fn distinct_due_count(&self) -> usize {
        self.due_dates.len()
    }

    /// Parses and validates an instance document.
    pub fn from_json(bytes: &[u8]) -> Result<Instance, InstanceError> {
        let value: Value = serde_json::from_slice(bytes)?;
        let obj = value.as_object().ok_or(InstanceError::Document)?;
        for key in obj.keys() {
            if key != "jobs" {
                return Err(InstanceError::UnknownKey(key.clone()));
            }
        }
        let jobs_value = obj.get("jobs").ok_or(InstanceError::Document)?;
        let entries = jobs_value.as_array().ok_or(InstanceError::Document)?;
        let mut jobs = Vec::with_capacity(entries.len());
        for (index, entry) in entries.iter().enumerate() {
            jobs.push(parse_job(index, entry)?);
        }
        Ok(Instance::new(jobs))
    }

    /// Serializes to the instance document format.
    pub fn to_json(&self) -> String {
        let jobs: Vec<Value> = self
            .jobs
            .iter()
            .map(|j| serde_json::json!({"p": j.p, "d": j.d}))
            .collect();
        serde_json::json!({ "jobs": jobs }).to_string()
    }
}

fn parse_job(index: usize, entry: &Value) -> Result<Job, InstanceError> {
    let err = |reason: &str| InstanceError::Job {
        index,
        reason: reason.to_string(),
    };
    let obj = entry.as_object().ok_or_else(|| err("not an object"))?;
    for key in obj.keys() {
        if key != "p" && key != "d" {
            return Err(err(&format!("unknown key {key:?}")));
        }
    }
    let field = |name: &str| -> Result<usize, InstanceError> {
        let v = obj
            .get(name)
            .ok_or_else(|| err(&format!("missing {name:?}")))?;
        let n = v
            .as_u64()
            .ok_or_else(|| err(&format!("{name:?} must be a nonnegative integer")))?;
        usize::try_from(n).map_err(|_| err(&format!("{name:?} too large")))
    };
    let p = field("p")?;
    let d = field("d")?;
    if p == 0 {
        return Err(err("\"p\" must be at least 1"));
    }
    Ok(Job { p, d })
}

/// Splits jobs into groups by due date; due dates come back strictly
/// ascending with groups aligned to them.
pub fn group_by_due(jobs: &[Job]) -> (Vec<usize>, Vec<DueDateGroup>) {
    let mut order: Vec<usize> = (0..jobs.len()).collect();
    order.sort_by_key(|&i| jobs[i].d);
    let mut due_dates = Vec::new();
    let mut groups: Vec<DueDateGroup> = Vec::new();
    for i in order {
        let job = jobs[i];
        match groups.last_mut() {
            Some(g) if g.due == job.d => {
                g.job_indices.push(i);
                g.group_load += job.p;
            }
            _ => {
                due_dates.push(job.d);
                groups.push(DueDateGroup {
                    due: job.d,
                    job_indices: vec![i],
                    group_load: job.p,
                });
            }
        }
    }
    (due_dates, groups)
}

/// Shape of the random due dates produced by [`generate_instance`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// Every job shares one due date strictly below the total load.
    SingleDue,
    /// Due dates drawn uniformly from `[0, P]`, so most jobs get their own.
    ManyDues,
    /// Due dates drawn from a small pool, concentrating load on few dates.
    FewHeavy,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::SingleDue, Family::ManyDues, Family::FewHeavy];

    pub fn name(&self) -> &'static str {
        match self {
            Family::SingleDue => "single-due",
            Family::ManyDues => "many-dues",
            Family::FewHeavy => "few-heavy",
        }
    }
}

impl FromStr for Family {
    type Err = InstanceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "single-due" => Ok(Family::SingleDue),
            "many-dues" => Ok(Family::ManyDues),
            "few-heavy" => Ok(Family::FewHeavy),
            other => Err(InstanceError::UnknownFamily(other.to_string())),
        }
    }
}

/// Generates a random instance with `n` jobs, processing times in
/// `[1, p_max]`, and due dates shaped by the family. Deterministic for a
/// fixed `(n, p_max, family, seed)`.
pub fn generate_instance(n: usize, p_max: usize, family: Family, seed: u64) -> Instance {
    assert!(p_max >= 1, "p_max must be at least 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ps: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=p_max)).collect();
    let total: usize = ps.iter().sum();
    let jobs = match family {
        Family::SingleDue => {
            let due = if n == 0 {
                0
            } else {
                rng.gen_range(total / 4..=total * 3 / 4)
            };
            ps.into_iter().map(|p| Job { p, d: due }).collect()
        }
        Family::ManyDues => ps
            .into_iter()
            .map(|p| Job {
                p,
                d: rng.gen_range(0..=total),
            })
            .collect(),
        Family::FewHeavy => {
            let pool_size = (n / 16).max(1);
            let pool: Vec<usize> = (0..pool_size).map(|_| rng.gen_range(0..=total)).collect();
            ps.into_iter()
                .map(|p| Job {
                    p,
                    d: pool[rng.gen_range(0..pool.len())],
                })
                .collect()
        }
    };
    Instance::new(jobs)
}
