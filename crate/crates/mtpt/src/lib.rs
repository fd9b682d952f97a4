//! Exact solvers for minimum tardy processing time scheduling
//! (`1||Σp_jU_j`): schedule jobs on one machine so that the total
//! processing time of jobs finishing after their due dates is smallest.
//!
//! The crate provides:
//!
//! - [`instance`]: the job/instance model, JSON persistence, and seeded
//!   random instance families;
//! - [`sumset`]: dense integer sets with bit-parallel sumsets and subset
//!   sums;
//! - [`level`]: integer vectors with infinities and max-min-skewed
//!   convolution behind a pluggable backend interface;
//! - [`solver`]: the Lawler–Moore baseline, the per-due-date sumset
//!   scheduler, and the bundling solver that groups light due dates and
//!   processes each bundle with two convolutions;
//! - [`oracle`]: exhaustive reference implementations used for
//!   verification;
//! - [`bench`]: a benchmark harness with CSV output and log-log slope
//!   fitting.
//!
//! All solvers are exact and deterministic; they differ only in running
//! time. See the `mtpt` binary for the command-line interface.

pub mod bench;
pub mod instance;
pub mod level;
pub mod oracle;
pub mod rational;
pub mod solver;
pub mod sumset;

pub use instance::{generate_instance, Family, Instance, Job};
pub use level::{backend, backends, default_backend, ExtInt, LevelVector, MmsBackend};
pub use rational::Rational;
pub use solver::{
    choose_delta, lawler_moore, solve_bundled, sumset_scheduler, SolveError, SolveReport,
};
