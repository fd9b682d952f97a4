//! Benchmark and verification harness: algorithm selection, family
//! parameter maps, wall-clock measurement, CSV rows, and log-log slope fits.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use thiserror::Error;

use crate::instance::{generate_instance, Family, Instance, InstanceError};
use crate::level::MmsBackend;
use crate::oracle::{brute_force_opt, OracleError};
use crate::rational::Rational;
use crate::solver::{lawler_moore, solve_bundled, sumset_scheduler, SolveError};

#[derive(Debug, Error)]
pub enum BenchError {
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error("unknown algorithm {0:?} (expected brute, lm, sumset or bundled)")]
    UnknownAlgorithm(String),
    #[error("size list must not be empty")]
    NoSizes,
}

/// Selectable solving algorithms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algorithm {
    Brute,
    LawlerMoore,
    Sumset,
    Bundled,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [
        Algorithm::Brute,
        Algorithm::LawlerMoore,
        Algorithm::Sumset,
        Algorithm::Bundled,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::Brute => "brute",
            Algorithm::LawlerMoore => "lm",
            Algorithm::Sumset => "sumset",
            Algorithm::Bundled => "bundled",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "brute" => Ok(Algorithm::Brute),
            "lm" => Ok(Algorithm::LawlerMoore),
            "sumset" => Ok(Algorithm::Sumset),
            "bundled" => Ok(Algorithm::Bundled),
            other => Err(BenchError::UnknownAlgorithm(other.to_string())),
        }
    }
}

/// Runs the chosen algorithm to its exact tardy total.
pub fn run_algorithm(
    algorithm: Algorithm,
    instance: &Instance,
    delta: Rational,
    backend: &dyn MmsBackend,
) -> Result<usize, BenchError> {
    Ok(match algorithm {
        Algorithm::Brute => brute_force_opt(instance)?,
        Algorithm::LawlerMoore => lawler_moore(instance),
        Algorithm::Sumset => sumset_scheduler(instance),
        Algorithm::Bundled => solve_bundled(instance, delta, backend)?.tardy_total,
    })
}

/// Reference optimum for verification: exhaustive search below its guard,
/// the per-job dynamic program otherwise.
pub fn reference_tardy(instance: &Instance) -> usize {
    if instance.n() <= 24 {
        brute_force_opt(instance).expect("within the exhaustive guard")
    } else {
        lawler_moore(instance)
    }
}

/// A disagreement between an algorithm and the reference.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyMismatch {
    pub index: usize,
    pub got: usize,
    pub want: usize,
}

/// Checks `solve` against [`reference_tardy`] on every instance, reporting
/// the first mismatch.
pub fn verify_against_reference<F>(
    solve: F,
    instances: &[Instance],
) -> Result<(), Box<VerifyMismatch>>
where
    F: Fn(&Instance) -> usize,
{
    for (index, instance) in instances.iter().enumerate() {
        let got = solve(instance);
        let want = reference_tardy(instance);
        if got != want {
            return Err(Box::new(VerifyMismatch { index, got, want }));
        }
    }
    Ok(())
}

/// `(n, p_max)` such that a generated instance's total load lands near
/// `target_p` with the distinct due-date count scaling like its square
/// root.
pub fn family_params(target_p: usize) -> (usize, usize) {
    let root = target_p.isqrt().max(1);
    (2 * root, root)
}

/// `(n, p_max)` for a due-date-dense variant targeting `target_p^0.9`
/// distinct due dates. Due dates are drawn with replacement from
/// `[0, P]`, so the job count is solved from the expected-distinct-count
/// curve rather than set to the target directly.
pub fn dense_family_params(target_p: usize) -> (usize, usize) {
    let pool = (target_p + 1) as f64;
    let want_dues = (target_p as f64).powf(0.9).min(pool - 1.0);
    let n = (-pool * (1.0 - want_dues / pool).ln()).round().max(1.0) as usize;
    let p_max = ((2 * target_p) as f64 / n as f64).round().max(2.0) as usize - 1;
    (n, p_max.max(1))
}

/// One timed solve after one untimed warm-up solve.
pub fn measure<F: FnMut() -> usize>(mut solve: F) -> (u128, usize) {
    let _ = solve();
    let start = Instant::now();
    let result = solve();
    (start.elapsed().as_nanos(), result)
}

pub const CSV_HEADER: &str = "family,n,P,Ddistinct,algorithm,delta,backend,wall_ns,tardy_total";

/// One benchmark measurement.
#[derive(Clone, Debug)]
pub struct BenchRow {
    pub family: Family,
    pub n: usize,
    pub total_load: usize,
    pub distinct_dues: usize,
    pub algorithm: Algorithm,
    pub delta: Rational,
    pub backend: &'static str,
    pub wall_ns: u128,
    pub tardy_total: usize,
}

impl BenchRow {
    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.family.name(),
            self.n,
            self.total_load,
            self.distinct_dues,
            self.algorithm,
            self.delta,
            self.backend,
            self.wall_ns,
            self.tardy_total
        )
    }
}

/// Ordinary least squares slope of `ln(y)` against `ln(x)`.
pub fn fit_log_log_slope(points: &[(f64, f64)]) -> f64 {
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let n = logs.len() as f64;
    let mean_x = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for (x, y) in logs {
        num += (x - mean_x) * (y - mean_y);
        den += (x - mean_x) * (x - mean_x);
    }
    num / den
}

/// Configuration for one benchmark sweep over a single family.
#[derive(Clone)]
pub struct BenchConfig {
    pub family: Family,
    pub sizes: Vec<usize>,
    pub algorithms: Vec<Algorithm>,
    pub seed: u64,
    pub delta: Rational,
    pub backend: &'static dyn MmsBackend,
}

/// Benchmark output: rows in `(size, algorithm)` order plus one fitted
/// slope per algorithm.
#[derive(Clone, Debug)]
pub struct BenchOutput {
    pub rows: Vec<BenchRow>,
    pub slopes: Vec<(Algorithm, f64)>,
}

impl BenchOutput {
    /// Full CSV document: header, rows, then slope comment lines.
    pub fn to_csv(&self, family: Family) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.csv_line());
            out.push('\n');
        }
        for (alg, slope) in &self.slopes {
            out.push_str(&format!(
                "# slope family={} algorithm={} value={:.2}\n",
                family.name(),
                alg,
                slope
            ));
        }
        out
    }
}

/// Times every `(size, algorithm)` pair on seeded instances of the family.
///
/// All algorithms see the identical instance per size, and their tardy
/// totals are required to agree.
pub fn run_bench(config: &BenchConfig) -> Result<BenchOutput, BenchError> {
    if config.sizes.is_empty() {
        return Err(BenchError::NoSizes);
    }
    let mut rows = Vec::new();
    for (size_index, &target) in config.sizes.iter().enumerate() {
        let (n, p_max) = family_params(target);
        let instance = generate_instance(
            n,
            p_max,
            config.family,
            config.seed.wrapping_add(size_index as u64),
        );
        let mut seen: Option<usize> = None;
        for &algorithm in &config.algorithms {
            let (wall_ns, tardy_total) = match algorithm {
                Algorithm::Brute => {
                    brute_force_opt(&instance)?; // guard before timing
                    measure(|| brute_force_opt(&instance).unwrap())
                }
                Algorithm::LawlerMoore => measure(|| lawler_moore(&instance)),
                Algorithm::Sumset => measure(|| sumset_scheduler(&instance)),
                Algorithm::Bundled => {
                    solve_bundled(&instance, config.delta, config.backend)?;
                    measure(|| {
                        solve_bundled(&instance, config.delta, config.backend)
                            .unwrap()
                            .tardy_total
                    })
                }
            };
            match seen {
                None => seen = Some(tardy_total),
                Some(prev) => assert_eq!(
                    prev, tardy_total,
                    "algorithms disagree on the same instance"
                ),
            }
            rows.push(BenchRow {
                family: config.family,
                n: instance.n(),
                total_load: instance.total_load(),
                distinct_dues: instance.distinct_due_count(),
                algorithm,
                delta: config.delta,
                backend: config.backend.name(),
                wall_ns,
                tardy_total,
            });
        }
    }
    let mut slopes = Vec::new();
    for &algorithm in &config.algorithms {
        let points: Vec<(f64, f64)> = rows
            .iter()
            .filter(|r| r.algorithm == algorithm)
            .map(|r| (r.total_load as f64, r.wall_ns.max(1) as f64))
            .collect();
        if points.len() >= 2 {
            slopes.push((algorithm, fit_log_log_slope(&points)));
        }
    }
    Ok(BenchOutput { rows, slopes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Job;
    use crate::level::default_backend;

    fn half() -> Rational {
        Rational::new(1, 2).unwrap()
    }

    #[test]
    fn algorithm_names_round_trip() {
        for alg in Algorithm::ALL {
            assert_eq!(alg.name().parse::<Algorithm>().unwrap(), alg);
        }
        assert!("bogus".parse::<Algorithm>().is_err());
    }

    #[test]
    fn slope_fit_recovers_exact_power_laws() {
        let quadratic: Vec<(f64, f64)> = (1..6)
            .map(|i| {
                let x = (1 << i) as f64;
                (x, 3.0 * x * x)
            })
            .collect();
        assert!((fit_log_log_slope(&quadratic) - 2.0).abs() < 1e-9);
        let linear: Vec<(f64, f64)> = (1..6)
            .map(|i| {
                let x = (10 * i) as f64;
                (x, 0.5 * x)
            })
            .collect();
        assert!((fit_log_log_slope(&linear) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn family_params_land_near_target() {
        for target in [1 << 10, 1 << 14, 100_000] {
            let (n, p_max) = family_params(target);
            let expected = n * (p_max + 1) / 2;
            assert!(
                (expected as f64 - target as f64).abs() < 0.15 * target as f64,
                "target {target}: n={n} p_max={p_max} expected {expected}"
            );
            let (dn, dp) = dense_family_params(target);
            assert!(dn > n);
            let dense_expected = dn * (dp + 1) / 2;
            assert!(
                (dense_expected as f64 - target as f64).abs() < 0.25 * target as f64,
                "dense target {target}: n={dn} p_max={dp} expected {dense_expected}"
            );
        }
    }

    #[test]
    fn bench_rows_are_deterministic_and_consistent() {
        let config = BenchConfig {
            family: Family::ManyDues,
            sizes: vec![256, 512],
            algorithms: vec![
                Algorithm::LawlerMoore,
                Algorithm::Sumset,
                Algorithm::Bundled,
            ],
            seed: 11,
            delta: half(),
            backend: default_backend(),
        };
        let a = run_bench(&config).unwrap();
        let b = run_bench(&config).unwrap();
        assert_eq!(a.rows.len(), 6);
        assert_eq!(a.slopes.len(), 3);
        let tardy = |o: &BenchOutput| o.rows.iter().map(|r| r.tardy_total).collect::<Vec<_>>();
        assert_eq!(tardy(&a), tardy(&b));
        let csv = a.to_csv(Family::ManyDues);
        assert!(csv.starts_with(CSV_HEADER));
        assert_eq!(csv.lines().count(), 1 + 6 + 3);
    }

    #[test]
    fn verification_flags_a_corrupted_solver() {
        let instances: Vec<Instance> = (0..5)
            .map(|seed| generate_instance(6, 8, Family::ManyDues, seed))
            .collect();
        assert!(verify_against_reference(lawler_moore, &instances).is_ok());
        let corrupted = |inst: &Instance| lawler_moore(inst) + 1;
        let mismatch = verify_against_reference(corrupted, &instances).unwrap_err();
        assert_eq!(mismatch.index, 0);
        assert_eq!(mismatch.got, mismatch.want + 1);
    }

    #[test]
    fn reference_switches_to_the_baseline_for_large_instances() {
        let small = Instance::new(vec![Job::new(3, 4), Job::new(3, 4)]);
        assert_eq!(reference_tardy(&small), 3);
        let large = generate_instance(40, 5, Family::ManyDues, 2);
        assert_eq!(reference_tardy(&large), lawler_moore(&large));
    }
}
