//! Batch verification. Each suite is a list of independent cases fanned out
//! to a worker pool; the report is assembled in case order.

use std::collections::BTreeSet;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::centralizer::{
    almost_rigid_generation, build_zeta_system, compute_centralizer, derived_subalgebra,
};
use crate::enveloping::{
    augmentation_character, casimir, commutator_defect, pbw_basis_check, poly_in_r, CasimirForm,
    PbwContext, WAlgebra,
};
use crate::error::{Error, Result};
use crate::matrix::jordan_type;
use crate::modular::{
    build_induced_module, check_prime, dimension_stability, kw_bookkeeping, reduce_mod_p,
};
use crate::orbits::{
    build_nilpotent, complete_sl2, dynkin_grading, orbit_dimension, rigidity_oracle, InductionDatum,
};
use crate::partitions::{
    admissible_partitions, build_pyramid, is_almost_rigid, is_rigid, Epsilon, Partition,
};
use crate::report::SCHEMA;
use crate::slice::integral_saturation;

/// Largest N for the ζ, rigidity, saturation and modular-stability suites.
pub const HEAVY_MAX_N: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Golden,
    Representatives,
    Zeta,
    Generation,
    Rigidity,
    Saturation,
    Walgebra,
    Casimir,
    Modular,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Golden,
        Suite::Representatives,
        Suite::Zeta,
        Suite::Generation,
        Suite::Rigidity,
        Suite::Saturation,
        Suite::Walgebra,
        Suite::Casimir,
        Suite::Modular,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Golden => "golden",
            Suite::Representatives => "representatives",
            Suite::Zeta => "zeta",
            Suite::Generation => "generation",
            Suite::Rigidity => "rigidity",
            Suite::Saturation => "saturation",
            Suite::Walgebra => "walgebra",
            Suite::Casimir => "casimir",
            Suite::Modular => "modular",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s.trim())
            .ok_or_else(|| Error::Config(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyConfig {
    pub max_n: usize,
    pub epsilons: Vec<Epsilon>,
    pub primes: Vec<u64>,
    pub seed: u64,
    pub suites: Vec<Suite>,
    /// Adds per-suite wall-clock sums; the report is then no longer reproducible.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub timing: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_n: 10,
            epsilons: vec![Epsilon::Plus, Epsilon::Minus],
            primes: vec![3, 5, 7],
            seed: 1,
            suites: Suite::ALL.to_vec(),
            timing: false,
        }
    }
}

impl VerifyConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_n < 2 {
            return Err(Error::Config("max_n must be at least 2".into()));
        }
        for p in &self.primes {
            check_prime(*p)?;
        }
        if self.epsilons.is_empty() {
            return Err(Error::Config("no epsilon selected".into()));
        }
        Ok(())
    }

    fn orbits(&self, max_n: usize) -> Vec<(Partition, Epsilon)> {
        let mut out = Vec::new();
        for n in 2..=max_n {
            for &eps in &self.epsilons {
                if eps == Epsilon::Minus && n % 2 == 1 {
                    continue;
                }
                out.extend(admissible_partitions(n, eps).into_iter().map(|l| (l, eps)));
            }
        }
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseStatus {
    pub case: String,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub passed: usize,
    pub failed: usize,
    pub cases: Vec<CaseStatus>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub version: &'static str,
    pub config: VerifyConfig,
    pub suites: Vec<SuiteReport>,
    pub ok: bool,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}

#[derive(Clone, Debug)]
enum Case {
    Golden(usize),
    Orbit(Suite, Partition, Epsilon),
    Walgebra(&'static str),
    Casimir(&'static str, Epsilon),
    Restricted(usize, Epsilon, u64),
    Stability(Partition, Epsilon, u64),
    Module(Vec<usize>, u64),
}

impl Case {
    fn suite(&self) -> Suite {
        match self {
            Case::Golden(_) => Suite::Golden,
            Case::Orbit(s, ..) => *s,
            Case::Walgebra(_) => Suite::Walgebra,
            Case::Casimir(..) => Suite::Casimir,
            Case::Restricted(..) | Case::Stability(..) | Case::Module(..) => Suite::Modular,
        }
    }

    fn label(&self) -> String {
        match self {
            Case::Golden(i) => format!(
                "pyramid {}",
                GOLDEN_PYRAMIDS
                    .get(*i)
                    .map_or("representative 5,2,2,1", |g| g.0)
            ),
            Case::Orbit(_, l, e) => format!("{l} eps={e}"),
            Case::Walgebra(l) => format!("{l} eps=-1"),
            Case::Casimir(l, e) => format!("{l} eps={e}"),
            Case::Restricted(n, e, p) => format!("restricted N={n} eps={e} p={p}"),
            Case::Stability(l, e, p) => format!("stability {l} eps={e} p={p}"),
            Case::Module(b, p) => format!("induced sp_4 levi={b:?} p={p}"),
        }
    }
}

/// (partition, ε, [(label, row, col)], [(row, col) crossed]) as printed.
type Golden = (
    &'static str,
    Epsilon,
    &'static [(i32, i32, i32)],
    &'static [(i32, i32)],
);

pub const GOLDEN_PYRAMIDS: [Golden; 4] = [
    (
        "5,5,4",
        Epsilon::Minus,
        &[
            (1, 1, -4),
            (2, 1, -2),
            (3, 1, 0),
            (4, 1, 2),
            (5, 1, 4),
            (6, 3, 1),
            (7, 3, 3),
            (-1, -1, 4),
            (-2, -1, 2),
            (-3, -1, 0),
            (-4, -1, -2),
            (-5, -1, -4),
            (-6, -3, -1),
            (-7, -3, -3),
        ],
        &[(3, -3), (3, -1), (-3, 1), (-3, 3)],
    ),
    (
        "4,3,3,2",
        Epsilon::Minus,
        &[
            (1, 0, 1),
            (2, 0, 3),
            (3, 2, -2),
            (4, 2, 0),
            (5, 2, 2),
            (6, 4, 1),
            (-1, 0, -1),
            (-2, 0, -3),
            (-3, -2, 2),
            (-4, -2, 0),
            (-5, -2, -2),
            (-6, -4, -1),
        ],
        &[(4, -1), (-4, 1)],
    ),
    (
        "4,4,3,1,1",
        Epsilon::Plus,
        &[
            (0, 0, 0),
            (1, 0, 2),
            (2, 2, -3),
            (3, 2, -1),
            (4, 2, 1),
            (5, 2, 3),
            (6, 4, 0),
            (-1, 0, -2),
            (-2, -2, 3),
            (-3, -2, 1),
            (-4, -2, -1),
            (-5, -2, -3),
            (-6, -4, 0),
        ],
        &[],
    ),
    (
        "5,2,2,1",
        Epsilon::Plus,
        &[
            (1, 1, 0),
            (2, 1, 2),
            (3, 1, 4),
            (4, 3, -1),
            (5, 3, 1),
            (-1, -1, 0),
            (-2, -1, -2),
            (-3, -1, -4),
            (-4, -3, 1),
            (-5, -3, -1),
        ],
        &[(1, -4), (1, -2), (-1, 2), (-1, 4)],
    ),
];

/// The printed representative of (5,2,2,1), ε = 1, as matrix units.
pub const GOLDEN_REPRESENTATIVE: [(i32, i32, i64); 8] = [
    (5, 4, 1),
    (-4, -5, -1),
    (3, 2, 1),
    (-2, -3, -1),
    (2, 1, 1),
    (-1, -2, -1),
    (1, -2, 1),
    (2, -1, -1),
];

fn fail(msg: impl Into<String>) -> Result<()> {
    Err(Error::Verification(msg.into()))
}

fn check_golden(i: usize) -> Result<()> {
    if let Some((s, eps, boxes, crossed)) = GOLDEN_PYRAMIDS.get(i) {
        let pyr = build_pyramid(&Partition::parse(s)?, *eps)?;
        if pyr.boxes.len() != boxes.len() {
            return fail(format!(
                "{} boxes, expected {}",
                pyr.boxes.len(),
                boxes.len()
            ));
        }
        for &(label, row, col) in boxes.iter() {
            match pyr.get(label) {
                Some(b) if (b.row, b.col) == (row, col) => {}
                other => {
                    return fail(format!(
                        "box {label}: got {other:?}, expected ({row}, {col})"
                    ))
                }
            }
        }
        let mut got = pyr.crossed.clone();
        got.sort();
        let mut want = crossed.to_vec();
        want.sort();
        if got != want {
            return fail(format!("crossed boxes {got:?}, expected {want:?}"));
        }
        return Ok(());
    }
    let rep = build_nilpotent(&Partition::parse("5,2,2,1")?, Epsilon::Plus)?;
    let mut got = rep.terms.clone();
    got.sort();
    let mut want = GOLDEN_REPRESENTATIVE.to_vec();
    want.sort();
    if got != want {
        return fail(format!("representative {got:?}"));
    }
    Ok(())
}

fn check_representative(l: &Partition, eps: Epsilon) -> Result<()> {
    let rep = build_nilpotent(l, eps)?;
    if !rep.g.contains(&rep.e) {
        return fail("e is not in g");
    }
    if jordan_type(&rep.e, &()).as_deref() != Some(l.parts()) {
        return fail("Jordan type differs from λ");
    }
    if rep.e_coords.iter().any(|(b, _)| rep.degrees[*b] != 2) {
        return fail("e is not in g(2)");
    }
    dynkin_grading(&rep)?;
    // certifies dim [e, g(0)] = dim g(2) as well
    complete_sl2(&rep)?;
    Ok(())
}

fn check_zeta(l: &Partition, eps: Epsilon) -> Result<()> {
    let rep = build_nilpotent(l, eps)?;
    let z = build_zeta_system(&rep)?;
    let r = z.verify(&rep)?;
    if r.rank != r.dim_ge {
        return fail(format!(
            "ζ span has rank {} but dim g^e = {}",
            r.rank, r.dim_ge
        ));
    }
    Ok(())
}

fn check_generation(l: &Partition, eps: Epsilon) -> Result<()> {
    let rep = build_nilpotent(l, eps)?;
    let Some(g) = almost_rigid_generation(&rep)? else {
        return fail("not almost rigid");
    };
    if !g.generated_by_01 {
        return fail(format!(
            "degrees 0, 1 generate only {} dimensions",
            g.generated_dim
        ));
    }
    if let Some(bad) = g.per_degree.iter().find(|(_, a, b)| a != b) {
        return fail(format!(
            "[g^e(1), g^e(r-1)] falls short in degree {}",
            bad.0
        ));
    }
    Ok(())
}

fn check_rigidity(l: &Partition, eps: Epsilon) -> Result<()> {
    let rule = is_rigid(l, eps)?;
    let oracle = rigidity_oracle(l, eps)?;
    if rule != oracle {
        return fail(format!("rule says {rule}, induction oracle says {oracle}"));
    }
    if rule && !is_almost_rigid(l) {
        return fail("rigid but not almost rigid");
    }
    if rule {
        let rep = build_nilpotent(l, eps)?;
        if !rep.g.is_type_a_like() {
            let b = compute_centralizer(&rep)?;
            let d = derived_subalgebra(&rep.g, &b, &());
            if d.codim != 0 {
                return fail(format!("g^e not perfect, codim {}", d.codim));
            }
        }
    }
    Ok(())
}

fn check_saturation(l: &Partition, eps: Epsilon) -> Result<()> {
    let rep = build_nilpotent(l, eps)?;
    let s = integral_saturation(&rep)?;
    if !s.ok() {
        return fail(format!("{s:?}"));
    }
    Ok(())
}

/// The full W-algebra checklist for a rigid sp orbit.
pub fn check_walgebra(lambda: &str, eps: Epsilon) -> Result<()> {
    let rep = build_nilpotent(&Partition::parse(lambda)?, eps)?;
    let mut w = WAlgebra::new(PbwContext::new(&rep)?)?;
    for (k, t) in &w.theta {
        if !w.ctx.is_m_invariant(&t.value) || !w.shape_ok(*k, &t.value) {
            return fail(format!("Θ(x{}) not invariant or not canonical", k + 1));
        }
    }
    let r = w.ctx.r;
    for u in (0..r).filter(|u| w.ctx.degrees[*u] == 0) {
        for v in (0..r).filter(|v| w.ctx.degrees[*v] <= 1) {
            if !commutator_defect(&w, u, v)?.is_empty() {
                return fail(format!("commutator law fails for x{}, x{}", u + 1, v + 1));
            }
        }
    }
    w.complete()?;
    for (k, t) in &w.theta {
        if !w.ctx.is_m_invariant(&t.value) || !w.shape_ok(*k, &t.value) || !poly_in_r(&t.value) {
            return fail(format!(
                "lifted Θ(x{}) fails invariance, shape or integrality",
                k + 1
            ));
        }
    }
    for b in 0..=4 {
        let p = pbw_basis_check(&w, b)?;
        if !p.ok() {
            return fail(format!("PBW check at bound {b}: {p:?}"));
        }
    }
    let a = augmentation_character(&w)?;
    if !a.ok() {
        return fail(format!("augmentation: {a:?}"));
    }
    if (0..r).any(|k| w.ctx.degrees[k] <= 1 && a.normalized[&(k + 1)] != "0") {
        return fail("augmentation nonzero in degree 0 or 1");
    }
    Ok(())
}

pub fn check_casimir(lambda: &str, eps: Epsilon) -> Result<()> {
    let rep = build_nilpotent(&Partition::parse(lambda)?, eps)?;
    let ctx = PbwContext::new(&rep)?;
    let c = casimir(&ctx, CasimirForm::Corrected)?;
    if !c.central() {
        return fail(format!("[C, x] ≠ 0 for basis indices {:?}", c.noncentral));
    }
    if !c.shape_ok {
        return fail("Q-image is not 2e + Σ y z + C'");
    }
    let d = casimir(&ctx, CasimirForm::DualBasis)?;
    if d.u != c.u {
        return fail("root-vector and dual-basis Casimirs differ");
    }
    Ok(())
}

/// Induced sp_4 module from the zero orbit of a Levi. Its dimension must be
/// p^{dim n} = p^{d(χ)}, and the action must respect p-th powers and brackets.
pub fn check_module(blocks: &[usize], p: u64, seed: u64) -> Result<()> {
    let datum = InductionDatum::zero_orbit(4, Epsilon::Minus, blocks.to_vec())?;
    let m = build_induced_module(&datum, p, None, seed)?;
    let (_, dchi) = orbit_dimension(&m.partition, Epsilon::Minus)?;
    let kw = kw_bookkeeping(&m.partition, Epsilon::Minus, p)?;
    let dim_n = datum.nilradical_dim()?;
    if m.dim() as u128 != (p as u128).pow(dim_n as u32)
        || dim_n != dchi
        || m.dim().to_string() != kw.small_dim
    {
        return fail(format!(
            "dim {} vs p^dim n with dim n = {dim_n}, d(χ) = {dchi}",
            m.dim()
        ));
    }
    let pc = m.p_character_failures();
    if !pc.is_empty() {
        return fail(format!("p-character identity fails on {pc:?}"));
    }
    let br = m.bracket_failures();
    if !br.is_empty() {
        return fail(format!("bracket compatibility fails on {br:?}"));
    }
    if p == 3 {
        let probe = m.submodule_probe(10, seed);
        if !probe.all_generate {
            return fail(format!("proper submodule found: spans {:?}", probe.spans));
        }
    }
    Ok(())
}

fn run_case(case: &Case, seed: u64) -> Result<()> {
    match case {
        Case::Golden(i) => check_golden(*i),
        Case::Orbit(Suite::Representatives, l, e) => check_representative(l, *e),
        Case::Orbit(Suite::Zeta, l, e) => check_zeta(l, *e),
        Case::Orbit(Suite::Generation, l, e) => check_generation(l, *e),
        Case::Orbit(Suite::Rigidity, l, e) => check_rigidity(l, *e),
        Case::Orbit(Suite::Saturation, l, e) => check_saturation(l, *e),
        Case::Orbit(s, ..) => fail(format!("suite {} has no orbit cases", s.name())),
        Case::Walgebra(l) => check_walgebra(l, Epsilon::Minus),
        Case::Casimir(l, e) => check_casimir(l, *e),
        Case::Restricted(n, e, p) => {
            let r = reduce_mod_p(*n, *e, *p)?.check_restricted();
            if r.ok() {
                Ok(())
            } else {
                fail(format!("ad(x^[p]) ≠ (ad x)^p on {:?}", r.failures))
            }
        }
        Case::Stability(l, e, p) => {
            let r = dimension_stability(&build_nilpotent(l, *e)?, *p)?;
            if r.ok() {
                Ok(())
            } else {
                fail(format!("{r:?}"))
            }
        }
        Case::Module(b, p) => check_module(b, *p, seed),
    }
}

fn cases(cfg: &VerifyConfig) -> Vec<Case> {
    let suites: BTreeSet<Suite> = cfg.suites.iter().copied().collect();
    let heavy = cfg.max_n.min(HEAVY_MAX_N);
    let has_sp = cfg.epsilons.contains(&Epsilon::Minus);
    let mut out = Vec::new();
    for s in suites {
        match s {
            Suite::Golden => out.extend((0..=GOLDEN_PYRAMIDS.len()).map(Case::Golden)),
            Suite::Representatives => out.extend(
                cfg.orbits(cfg.max_n)
                    .into_iter()
                    .map(|(l, e)| Case::Orbit(s, l, e)),
            ),
            Suite::Generation => out.extend(
                cfg.orbits(cfg.max_n)
                    .into_iter()
                    .filter(|(l, _)| is_almost_rigid(l))
                    .map(|(l, e)| Case::Orbit(s, l, e)),
            ),
            Suite::Rigidity => out.extend(
                cfg.orbits(heavy)
                    .into_iter()
                    .filter(|(l, e)| (l.total(), *e) != (2, Epsilon::Plus))
                    .map(|(l, e)| Case::Orbit(s, l, e)),
            ),
            Suite::Zeta | Suite::Saturation => out.extend(
                cfg.orbits(heavy)
                    .into_iter()
                    .map(|(l, e)| Case::Orbit(s, l, e)),
            ),
            Suite::Walgebra => {
                if has_sp && cfg.max_n >= 4 {
                    out.push(Case::Walgebra("2,1,1"));
                }
                if has_sp && cfg.max_n >= 6 {
                    out.push(Case::Walgebra("2,1,1,1,1"));
                }
            }
            Suite::Casimir => {
                if has_sp && cfg.max_n >= 4 {
                    out.push(Case::Casimir("2,1,1", Epsilon::Minus));
                }
                if cfg.epsilons.contains(&Epsilon::Plus) && cfg.max_n >= 5 {
                    out.push(Case::Casimir("2,2,1", Epsilon::Plus));
                }
            }
            Suite::Modular => {
                for &p in &cfg.primes {
                    for n in 2..=heavy {
                        for &e in &cfg.epsilons {
                            if !(e == Epsilon::Minus && n % 2 == 1) {
                                out.push(Case::Restricted(n, e, p));
                            }
                        }
                    }
                    out.extend(
                        cfg.orbits(heavy)
                            .into_iter()
                            .map(|(l, e)| Case::Stability(l, e, p)),
                    );
                    if has_sp && cfg.max_n >= 4 && p <= 5 {
                        out.push(Case::Module(vec![1, 1], p));
                        out.push(Case::Module(vec![2], p));
                    }
                }
            }
        }
    }
    out
}

/// Runs the selected suites. `threads` caps the worker pool; the report
/// does not depend on it.
pub fn run_verify(cfg: &VerifyConfig, threads: Option<usize>) -> Result<Report> {
    cfg.validate()?;
    let all = cases(cfg);
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        builder = builder.num_threads(t.max(1));
    }
    let pool = builder
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    let results: Vec<(CaseStatus, u128)> = pool.install(|| {
        all.par_iter()
            .map(|c| {
                let start = Instant::now();
                let r = run_case(c, cfg.seed);
                let st = CaseStatus {
                    case: c.label(),
                    ok: r.is_ok(),
                    witness: r.err().map(|e| e.to_string()),
                };
                (st, start.elapsed().as_millis())
            })
            .collect()
    });
    let mut suites: Vec<SuiteReport> = Vec::new();
    for (c, (st, ms)) in all.iter().zip(results) {
        let s = c.suite();
        if suites.last().map(|r| r.suite) != Some(s) {
            suites.push(SuiteReport {
                suite: s,
                passed: 0,
                failed: 0,
                cases: Vec::new(),
                elapsed_ms: cfg.timing.then_some(0),
            });
        }
        let r = suites.last_mut().expect("just pushed");
        if let Some(t) = r.elapsed_ms.as_mut() {
            *t += ms;
        }
        if st.ok {
            r.passed += 1;
        } else {
            r.failed += 1;
        }
        r.cases.push(st);
    }
    let ok = suites.iter().all(|s| s.failed == 0);
    Ok(Report {
        schema: SCHEMA,
        version: env!("CARGO_PKG_VERSION"),
        config: cfg.clone(),
        suites,
        ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation() {
        assert!(VerifyConfig::default().validate().is_ok());
        let bad = VerifyConfig {
            primes: vec![2, 3],
            ..VerifyConfig::default()
        };
        assert!(bad.validate().is_err());
        let small = VerifyConfig {
            max_n: 1,
            ..VerifyConfig::default()
        };
        assert!(small.validate().is_err());
        assert_eq!(Suite::parse("zeta").unwrap(), Suite::Zeta);
        assert!(Suite::parse("nope").is_err());
    }

    #[test]
    fn mini_run_is_deterministic() {
        let cfg = VerifyConfig {
            max_n: 2,
            ..VerifyConfig::default()
        };
        let a = run_verify(&cfg, Some(1)).unwrap();
        let b = run_verify(&cfg, Some(3)).unwrap();
        assert!(a.ok, "{}", a.to_json());
        assert_eq!(a.to_json(), b.to_json());
    }

    #[test]
    fn golden_cases_pass() {
        for i in 0..=GOLDEN_PYRAMIDS.len() {
            check_golden(i).unwrap();
        }
    }
}
