//! Command-line interface: solve instance files, verify solvers against a
//! reference, generate random instances, and benchmark scaling behavior.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use mtpt::bench::reference_tardy;
use mtpt::bench::{run_algorithm, run_bench, Algorithm, BenchConfig};
use mtpt::solver::lawler_moore;
use mtpt::{
    backend, choose_delta, default_backend, generate_instance, Family, Instance, MmsBackend,
    Rational,
};

#[derive(Parser)]
#[command(
    name = "mtpt",
    version,
    about = "Exact solvers for single-machine minimum tardy processing time"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance file and print the minimum tardy total.
    Solve {
        /// Algorithm: brute, lm, sumset or bundled.
        #[arg(long)]
        alg: String,
        /// Path to an instance JSON document.
        #[arg(long)]
        input: PathBuf,
        /// Bundling parameter as a rational p/q (default: matched to the backend).
        #[arg(long)]
        delta: Option<String>,
        /// Convolution backend name (default: naive).
        #[arg(long)]
        backend: Option<String>,
    },
    /// Run an algorithm and a reference solver; exit 0 iff they agree.
    Verify {
        #[arg(long)]
        alg: String,
        /// Verify this instance file...
        #[arg(long)]
        input: Option<PathBuf>,
        /// ...or this many seeded random instances.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Jobs per random instance.
        #[arg(long, default_value_t = 8)]
        n: usize,
        /// Maximum processing time for random instances.
        #[arg(long, default_value_t = 10)]
        pmax: usize,
        #[arg(long)]
        delta: Option<String>,
        #[arg(long)]
        backend: Option<String>,
    },
    /// Generate a random instance file.
    Gen {
        /// Family: single-due, many-dues or few-heavy.
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        pmax: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Time solvers over target instance sizes and emit CSV.
    Bench {
        #[arg(long)]
        family: String,
        /// Comma-separated list of target total loads, e.g. 4096,16384.
        #[arg(long)]
        sizes: String,
        /// Comma-separated algorithms, e.g. lm,sumset,bundled.
        #[arg(long)]
        algs: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        delta: Option<String>,
        #[arg(long)]
        backend: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match std::panic::catch_unwind(|| run(cli)) {
        Ok(Ok(code)) => code,
        Ok(Err(err)) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
        Err(_) => {
            eprintln!("error: internal invariant violation");
            ExitCode::from(1)
        }
    }
}

fn resolve_backend(
    name: &Option<String>,
) -> Result<&'static dyn MmsBackend, Box<dyn std::error::Error>> {
    Ok(match name {
        Some(name) => backend(name)?,
        None => default_backend(),
    })
}

fn resolve_delta(
    delta: &Option<String>,
    be: &dyn MmsBackend,
) -> Result<Rational, Box<dyn std::error::Error>> {
    Ok(match delta {
        Some(text) => text.parse::<Rational>()?,
        None => choose_delta(be.alpha())?,
    })
}

fn load_instance(path: &PathBuf) -> Result<Instance, Box<dyn std::error::Error>> {
    let bytes = fs::read(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    Ok(Instance::from_json(&bytes)?)
}

fn run(cli: Cli) -> Result<ExitCode, Box<dyn std::error::Error>> {
    match cli.command {
        Command::Solve {
            alg,
            input,
            delta,
            backend,
        } => {
            let algorithm: Algorithm = alg.parse()?;
            let be = resolve_backend(&backend)?;
            let delta = resolve_delta(&delta, be)?;
            let instance = load_instance(&input)?;
            let tardy = run_algorithm(algorithm, &instance, delta, be)?;
            println!("{tardy}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            alg,
            input,
            random,
            seed,
            n,
            pmax,
            delta,
            backend,
        } => {
            let algorithm: Algorithm = alg.parse()?;
            let be = resolve_backend(&backend)?;
            let delta = resolve_delta(&delta, be)?;
            let instances: Vec<Instance> = match (&input, random) {
                (Some(path), None) => vec![load_instance(path)?],
                (None, Some(count)) => (0..count)
                    .map(|i| {
                        let family = Family::ALL[i % Family::ALL.len()];
                        generate_instance(n, pmax, family, seed.wrapping_add(i as u64))
                    })
                    .collect(),
                _ => return Err("verify needs exactly one of --input or --random".into()),
            };
            for (i, instance) in instances.iter().enumerate() {
                let got = run_algorithm(algorithm, instance, delta, be)?;
                let want = if algorithm == Algorithm::Brute {
                    lawler_moore(instance)
                } else {
                    reference_tardy(instance)
                };
                if got != want {
                    println!("mismatch on instance {i}: {algorithm}={got} reference={want}");
                    return Ok(ExitCode::from(1));
                }
            }
            println!("ok: {} instance(s) verified", instances.len());
            Ok(ExitCode::SUCCESS)
        }
        Command::Gen {
            family,
            n,
            pmax,
            seed,
            out,
        } => {
            let family: Family = family.parse()?;
            let instance = generate_instance(n, pmax, family, seed);
            fs::write(&out, instance.to_json())
                .map_err(|e| format!("cannot write {}: {e}", out.display()))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Bench {
            family,
            sizes,
            algs,
            seed,
            csv,
            delta,
            backend,
        } => {
            let family: Family = family.parse()?;
            let be = resolve_backend(&backend)?;
            let delta = resolve_delta(&delta, be)?;
            let sizes: Vec<usize> = sizes
                .split(',')
                .filter(|s| !s.is_empty())
                .map(|s| s.trim().parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|e| format!("bad --sizes list: {e}"))?;
            let algorithms: Vec<Algorithm> = algs
                .split(',')
                .filter(|s| !s.is_empty())
                .map(|s| s.trim().parse::<Algorithm>())
                .collect::<Result<_, _>>()?;
            let config = BenchConfig {
                family,
                sizes,
                algorithms,
                seed,
                delta,
                backend: be,
            };
            let output = run_bench(&config)?;
            let text = output.to_csv(family);
            match csv {
                Some(path) => fs::write(&path, text)
                    .map_err(|e| format!("cannot write {}: {e}", path.display()))?,
                None => print!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
