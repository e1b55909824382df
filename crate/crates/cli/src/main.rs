//! `orbitforge` command line.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use orbitforge::error::Error;
use orbitforge::orbits::InductionDatum;
use orbitforge::partitions::{Epsilon, Partition};
use orbitforge::report::{self, envelope};
use orbitforge::verify::{run_verify, Suite, VerifyConfig};
use serde_json::Value;

#[derive(Parser)]
#[command(
    name = "orbitforge",
    version,
    about = "Nilpotent orbits, centralisers, slices and W-algebra generators in classical Lie algebras"
)]
struct Cli {
    /// Worker threads (overrides ORBITFORGE_THREADS)
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Root data and the trace form of g_N
    #[command(allow_negative_numbers = true)]
    Algebra { n: usize, epsilon: String },
    /// Orbit dimension and Dynkin grading
    #[command(allow_negative_numbers = true)]
    Orbit { partition: String, epsilon: String },
    /// Graded centraliser and its generation by low degrees
    #[command(allow_negative_numbers = true)]
    Centralizer { partition: String, epsilon: String },
    /// Slice data and the integral lattice check
    #[command(allow_negative_numbers = true)]
    Slice { partition: String, epsilon: String },
    /// W-algebra generators Θ with their augmentation character
    #[command(allow_negative_numbers = true)]
    Wgen {
        partition: String,
        epsilon: String,
        #[arg(long, default_value_t = 4)]
        degree_bound: i32,
    },
    /// Induced module from the zero orbit of a Levi, reduced mod p
    #[command(allow_negative_numbers = true)]
    Verma {
        partition: String,
        epsilon: String,
        /// gl block sizes, e.g. "1,1"
        #[arg(long)]
        levi: String,
        #[arg(long, short = 'p', default_value_t = 3)]
        prime: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Induce an orbit from a Levi: blocks "2,1", orbit "2|1|1,1" (one
    /// partition per block, then the residual one)
    #[command(allow_negative_numbers = true)]
    Induce {
        levi: String,
        orbit: String,
        epsilon: String,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// Combinatorial rigidity rule checked against the induction oracle
    #[command(allow_negative_numbers = true)]
    Rigidity { partition: String, epsilon: String },
    /// Run the invariant suites and write a JSON report
    Verify {
        #[arg(long, default_value_t = 10)]
        max_n: usize,
        /// Comma-separated subset of 1,-1
        #[arg(long, default_value = "1,-1", allow_hyphen_values = true)]
        epsilons: String,
        #[arg(long, default_value = "3,5,7")]
        primes: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Comma-separated suite names (default: all)
        #[arg(long)]
        suites: Option<String>,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Record per-suite wall-clock time (breaks byte reproducibility)
        #[arg(long)]
        timing: bool,
    },
    /// Human-readable summary of an orbit
    #[command(allow_negative_numbers = true)]
    Explain { partition: String, epsilon: String },
}

enum Failure {
    Usage(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Verification(_) | Error::Io { .. } => Failure::Verification(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn list<T>(s: &str, f: impl Fn(&str) -> Result<T, Error>) -> Result<Vec<T>, Error> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(f)
        .collect()
}

fn parse_induction(levi: &str, orbit: &str, eps: Epsilon) -> Result<InductionDatum, Error> {
    let blocks = report::parse_blocks(levi)?;
    let pieces: Vec<&str> = orbit.split('|').collect();
    if pieces.len() != blocks.len() + 1 {
        return Err(Error::Levi(format!(
            "expected {} '|'-separated partitions, got {}",
            blocks.len() + 1,
            pieces.len()
        )));
    }
    let parse = |s: &str| {
        if s.trim().is_empty() {
            Partition::new(Vec::new())
        } else {
            Partition::parse(s)
        }
    };
    let block_orbits = pieces[..blocks.len()]
        .iter()
        .map(|s| parse(s))
        .collect::<Result<Vec<_>, _>>()?;
    let residual_orbit = parse(pieces[blocks.len()])?;
    let n = 2 * blocks.iter().sum::<usize>() + residual_orbit.total();
    let d = InductionDatum {
        n,
        eps,
        blocks,
        block_orbits,
        residual_orbit,
    };
    d.validate()?;
    Ok(d)
}

/// Writes to stdout, treating a closed pipe as a normal end of output.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn print_json(kind: &str, body: Value) {
    let v = envelope(kind, body);
    emit(&format!(
        "{}\n",
        serde_json::to_string_pretty(&v).expect("json serialises")
    ));
}

fn orbit_args(partition: &str, epsilon: &str) -> Result<(Partition, Epsilon), Error> {
    Ok((Partition::parse(partition)?, Epsilon::parse(epsilon)?))
}

fn run(cli: Cli) -> Result<(), Failure> {
    let threads = cli.threads.or_else(|| {
        std::env::var("ORBITFORGE_THREADS")
            .ok()
            .and_then(|s| s.trim().parse().ok())
    });
    if let Some(t) = threads {
        // the global pool serves the single-orbit commands
        let _ = orbitforge::set_global_threads(t);
    }
    match cli.cmd {
        Cmd::Algebra { n, epsilon } => {
            print_json(
                "algebra",
                report::algebra_summary(n, Epsilon::parse(&epsilon)?)?,
            );
        }
        Cmd::Orbit { partition, epsilon } => {
            let (l, e) = orbit_args(&partition, &epsilon)?;
            print_json("orbit", report::orbit_summary(&l, e)?);
        }
        Cmd::Centralizer { partition, epsilon } => {
            let (l, e) = orbit_args(&partition, &epsilon)?;
            print_json("centralizer", report::centralizer_summary(&l, e)?);
        }
        Cmd::Slice { partition, epsilon } => {
            let (l, e) = orbit_args(&partition, &epsilon)?;
            print_json("slice", report::slice_report(&l, e)?);
        }
        Cmd::Wgen {
            partition,
            epsilon,
            degree_bound,
        } => {
            let (l, e) = orbit_args(&partition, &epsilon)?;
            print_json("wgen", report::wgen_summary(&l, e, degree_bound)?);
        }
        Cmd::Verma {
            partition,
            epsilon,
            levi,
            prime,
            seed,
        } => {
            let (l, e) = orbit_args(&partition, &epsilon)?;
            let v = report::verma_summary(&l, e, report::parse_blocks(&levi)?, prime, seed)?;
            let ok = [&v["dim_is_small"], &v["p_character_ok"], &v["bracket_ok"]]
                .iter()
                .all(|b| b.as_bool() == Some(true));
            print_json("verma", v);
            if !ok {
                return Err(Failure::Verification("induced module check failed".into()));
            }
        }
        Cmd::Induce {
            levi,
            orbit,
            epsilon,
            seed,
        } => {
            let d = parse_induction(&levi, &orbit, Epsilon::parse(&epsilon)?)?;
            print_json("induce", report::induce_summary(&d, seed)?);
        }
        Cmd::Rigidity { partition, epsilon } => {
            let (l, e) = orbit_args(&partition, &epsilon)?;
            let v = report::rigidity_summary(&l, e)?;
            let disagree = v["agrees"].as_bool() == Some(false);
            print_json("rigidity", v);
            if disagree {
                return Err(Failure::Verification("rule and oracle disagree".into()));
            }
        }
        Cmd::Explain { partition, epsilon } => {
            let (l, e) = orbit_args(&partition, &epsilon)?;
            emit(&report::explain(&l, e)?);
        }
        Cmd::Verify {
            max_n,
            epsilons,
            primes,
            seed,
            suites,
            output,
            timing,
        } => {
            let cfg = VerifyConfig {
                max_n,
                epsilons: list(&epsilons, Epsilon::parse)?,
                primes: list(&primes, |t| {
                    t.trim()
                        .parse()
                        .map_err(|_| Error::Config(format!("bad prime {t:?}")))
                })?,
                seed,
                suites: match suites {
                    Some(s) => list(&s, Suite::parse)?,
                    None => Suite::ALL.to_vec(),
                },
                timing,
            };
            let rep = run_verify(&cfg, threads)?;
            let text = rep.to_json();
            match output {
                Some(path) => {
                    std::fs::write(&path, format!("{text}\n")).map_err(|source| Error::Io {
                        path: path.display().to_string(),
                        source,
                    })?
                }
                None => emit(&format!("{text}\n")),
            }
            for s in &rep.suites {
                eprintln!(
                    "{:<16} {} passed, {} failed",
                    s.suite.name(),
                    s.passed,
                    s.failed
                );
            }
            if !rep.ok {
                return Err(Failure::Verification(
                    "some verification cases failed".into(),
                ));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(m)) => {
            eprintln!("orbitforge: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("orbitforge: {m}");
            ExitCode::from(2)
        }
    }
}
