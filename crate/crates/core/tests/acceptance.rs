//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::time::{Duration, Instant};

use orbitforge::partitions::Epsilon;
use orbitforge::verify::{run_verify, Report, Suite, VerifyConfig};

struct Criterion {
    id: u32,
    title: &'static str,
    budget: Duration,
    run: fn() -> Result<String, String>,
}

/// Partitions of n as decreasing part lists, enumerated directly.
fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=max.min(n)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Orbits with 2 <= N <= max_n: ε = 1 needs even parts with even
/// multiplicity, ε = -1 odd parts with even multiplicity.
fn orbit_count(max_n: usize, filter: impl Fn(&[usize]) -> bool) -> usize {
    let mut total = 0;
    for n in 2..=max_n {
        for l in partitions(n, n) {
            let mult = |m: usize| l.iter().filter(|&&x| x == m).count();
            let ok = |parity: usize| l.iter().all(|&m| m % 2 != parity || mult(m) % 2 == 0);
            for (parity, allowed) in [(0, true), (1, n % 2 == 0)] {
                if allowed && ok(parity) && filter(&l) {
                    total += 1;
                }
            }
        }
    }
    total
}

fn steps_at_most_one(l: &[usize]) -> bool {
    l.windows(2).all(|w| w[0] - w[1] <= 1) && l.last().is_none_or(|&x| x <= 1)
}

fn suite_run(
    suite: Suite,
    max_n: usize,
    primes: Vec<u64>,
    expected: usize,
) -> Result<String, String> {
    let cfg = VerifyConfig {
        max_n,
        primes,
        suites: vec![suite],
        ..VerifyConfig::default()
    };
    let rep = run_verify(&cfg, None).map_err(|e| e.to_string())?;
    summarize(&rep, expected)
}

fn summarize(rep: &Report, expected: usize) -> Result<String, String> {
    let passed: usize = rep.suites.iter().map(|s| s.passed).sum();
    let failed: Vec<String> = rep
        .suites
        .iter()
        .flat_map(|s| s.cases.iter())
        .filter(|c| !c.ok)
        .map(|c| format!("{}: {}", c.case, c.witness.as_deref().unwrap_or("")))
        .collect();
    if !failed.is_empty() {
        return Err(format!("{} failing: {}", failed.len(), failed.join("; ")));
    }
    if passed != expected {
        return Err(format!("{passed} cases ran, expected {expected}"));
    }
    Ok(format!("{passed} cases"))
}

fn determinism() -> Result<String, String> {
    let cfg = VerifyConfig::default();
    let a = run_verify(&cfg, Some(1)).map_err(|e| e.to_string())?;
    let b = run_verify(&cfg, None).map_err(|e| e.to_string())?;
    let (ja, jb) = (a.to_json(), b.to_json());
    if ja != jb {
        return Err("reports differ".into());
    }
    if !a.ok {
        return Err("default run has failures".into());
    }
    Ok(format!("{} bytes identical", ja.len()))
}

fn criteria() -> Vec<Criterion> {
    vec![
        Criterion {
            id: 1,
            title: "golden pyramids and representative",
            budget: Duration::from_secs(1),
            run: || suite_run(Suite::Golden, 10, vec![3], 5),
        },
        Criterion {
            id: 2,
            title: "representative sweep, N <= 12",
            budget: Duration::from_secs(300),
            run: || {
                suite_run(
                    Suite::Representatives,
                    12,
                    vec![3],
                    orbit_count(12, |_| true),
                )
            },
        },
        Criterion {
            id: 3,
            title: "zeta spanning system, N <= 8",
            budget: Duration::from_secs(600),
            run: || suite_run(Suite::Zeta, 8, vec![3], orbit_count(8, |_| true)),
        },
        Criterion {
            id: 4,
            title: "generation in degrees 0 and 1, almost rigid, N <= 12",
            budget: Duration::from_secs(600),
            run: || {
                suite_run(
                    Suite::Generation,
                    12,
                    vec![3],
                    orbit_count(12, steps_at_most_one),
                )
            },
        },
        Criterion {
            id: 5,
            title: "rigidity rule against the induction oracle, N <= 8",
            budget: Duration::from_secs(900),
            // so_2 is a torus and is left out
            run: || suite_run(Suite::Rigidity, 8, vec![3], orbit_count(8, |_| true) - 1),
        },
        Criterion {
            id: 6,
            title: "integral saturation of ad e, N <= 8",
            budget: Duration::from_secs(600),
            run: || suite_run(Suite::Saturation, 8, vec![3], orbit_count(8, |_| true)),
        },
        Criterion {
            id: 7,
            title: "W-algebra generators on sp_4 (2,1,1) and sp_6 (2,1,1,1,1)",
            budget: Duration::from_secs(1200),
            run: || suite_run(Suite::Walgebra, 6, vec![3], 2),
        },
        Criterion {
            id: 8,
            title: "Casimir centrality and shape on sp_4 and so_5",
            budget: Duration::from_secs(120),
            run: || suite_run(Suite::Casimir, 6, vec![3], 2),
        },
        Criterion {
            id: 9,
            title: "modular suite, p in {3, 5}",
            budget: Duration::from_secs(2400),
            run: || {
                let cfg = VerifyConfig {
                    max_n: 8,
                    primes: vec![3, 5],
                    epsilons: vec![Epsilon::Plus, Epsilon::Minus],
                    suites: vec![Suite::Modular],
                    ..VerifyConfig::default()
                };
                let rep = run_verify(&cfg, None).map_err(|e| e.to_string())?;
                let modules = rep
                    .suites
                    .iter()
                    .flat_map(|s| s.cases.iter())
                    .filter(|c| c.case.starts_with("induced"))
                    .count();
                if modules != 4 {
                    return Err(format!("{modules} induced-module cases, expected 4"));
                }
                // per prime: restrictedness for so_2..so_8 and sp_2..sp_8,
                // stability for every orbit, two induced modules
                let per_prime = 7 + 4 + orbit_count(8, |_| true) + 2;
                summarize(&rep, 2 * per_prime)
            },
        },
        Criterion {
            id: 10,
            title: "byte-identical verify reports",
            budget: Duration::from_secs(1200),
            run: determinism,
        },
    ]
}

fn main() {
    let mut failures = 0;
    for c in criteria() {
        let start = Instant::now();
        let r = (c.run)();
        let t = start.elapsed();
        let r = match r {
            Ok(m) if t > c.budget => Err(format!("{m}, but took {t:.2?} > {:?}", c.budget)),
            other => other,
        };
        match r {
            Ok(m) => println!("criterion {:>2} PASS  {} ({m}, {t:.2?})", c.id, c.title),
            Err(m) => {
                failures += 1;
                println!("criterion {:>2} FAIL  {} ({m})", c.id, c.title);
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
