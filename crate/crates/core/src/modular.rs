//! Reduction modulo odd primes. Induced modules over F_p are built as
//! explicit matrices and checked against the Kac–Weisfeiler bound.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{algebra, normalized_killing, BasisKind, ClassicalAlgebra};
use crate::centralizer::{ad_e_block_over, graded_centralizer};
use crate::error::{Error, Result};
use crate::exact::field::q_to_fp;
use crate::exact::linalg::{rank, Echelon, SVec};
use crate::exact::{Field, Fp, Q};
use crate::matrix::{jordan_type, Mat};
use crate::orbits::{
    induce_orbit, orbit_dimension, rigidity_witness, InductionDatum, NilpotentRep,
    RIGIDITY_ORACLE_MAX_N,
};
use crate::partitions::{is_rigid, Epsilon, Partition};
use crate::slice::{build_m, split_lagrangian};

/// Odd primes only; R = ℤ[1/2] makes every odd prime good for B, C, D.
pub fn check_prime(p: u64) -> Result<()> {
    if p == 2 {
        return Err(Error::Config("p = 2 is not a good prime here".into()));
    }
    if p < 2
        || (2..)
            .take_while(|d| d * d <= p)
            .any(|d| p.is_multiple_of(d))
    {
        return Err(Error::Config(format!("{p} is not prime")));
    }
    Ok(())
}

fn unit(b: usize, p: u64) -> SVec<Fp> {
    vec![(b, Fp::new(1, p))]
}

fn reduce_vec(v: &SVec<Q>, p: u64) -> Result<SVec<Fp>> {
    let mut out = Vec::new();
    for (i, c) in v {
        let x = q_to_fp(c, p)
            .ok_or_else(|| Error::RingMismatch(format!("denominator divisible by {p}")))?;
        if !x.vanishes() {
            out.push((*i, x));
        }
    }
    Ok(out)
}

/// g over F_p with the p-th power map x ↦ x^[p] on the Chevalley basis.
#[derive(Clone, Debug)]
pub struct ModularAlgebra {
    pub p: u64,
    pub g: Arc<ClassicalAlgebra>,
    /// Coordinates of x_b^[p], the p-th matrix power in the defining representation.
    pub ppower: Vec<SVec<Fp>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RestrictednessReport {
    pub p: u64,
    pub checked: usize,
    /// Basis indices b with ad(x_b^[p]) ≠ (ad x_b)^p.
    pub failures: Vec<usize>,
}

impl RestrictednessReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

impl ModularAlgebra {
    pub fn dim(&self) -> usize {
        self.g.dim()
    }

    pub fn bracket(&self, x: &SVec<Fp>, y: &SVec<Fp>) -> SVec<Fp> {
        self.g.bracket(x, y, &self.p)
    }

    pub fn ad(&self, x: &SVec<Fp>) -> Mat<Fp> {
        Mat {
            n: self.dim(),
            rows: self.g.ad_rows(x, &self.p),
        }
    }

    pub fn check_restricted(&self) -> RestrictednessReport {
        let failures = (0..self.dim())
            .filter(|&b| {
                let lhs = self.ad(&self.ppower[b]);
                let rhs = self.ad(&unit(b, self.p)).pow(self.p, &self.p);
                !lhs.sub(&rhs).is_zero()
            })
            .collect();
        RestrictednessReport {
            p: self.p,
            checked: self.dim(),
            failures,
        }
    }
}

pub fn reduce_mod_p(n: usize, eps: Epsilon, p: u64) -> Result<ModularAlgebra> {
    check_prime(p)?;
    let g = algebra(n, eps)?;
    let mut ppower = Vec::with_capacity(g.dim());
    for b in 0..g.dim() {
        let m = g.basis_mat::<Fp>(b, &p).pow(p, &p);
        ppower.push(g.coords_checked(&m)?);
    }
    Ok(ModularAlgebra { p, g, ppower })
}

/// Dimensions over Q and over F_p of the pieces entering the reduction.
#[derive(Clone, Debug, Serialize)]
pub struct StabilityReport {
    pub lambda: String,
    pub eps: i64,
    pub p: u64,
    pub centralizer_q: usize,
    pub centralizer_p: usize,
    /// (i, rank of ad e: g(i) → g(i+2) over Q, same over F_p)
    pub ad_e_ranks: Vec<(i32, usize, usize)>,
}

impl StabilityReport {
    pub fn ok(&self) -> bool {
        self.centralizer_q == self.centralizer_p && self.ad_e_ranks.iter().all(|(_, a, b)| a == b)
    }
}

pub fn dimension_stability(rep: &NilpotentRep, p: u64) -> Result<StabilityReport> {
    check_prime(p)?;
    let mut degs: Vec<i32> = rep.degrees.clone();
    degs.sort_unstable();
    degs.dedup();
    let mut ranks = Vec::new();
    for &i in &degs {
        let (_, _, rq) = ad_e_block_over::<Q>(rep, i, &());
        let (_, _, rp) = ad_e_block_over::<Fp>(rep, i, &p);
        ranks.push((i, rank(&rq, &()), rank(&rp, &p)));
    }
    Ok(StabilityReport {
        lambda: rep.lambda.to_string(),
        eps: rep.eps.sign(),
        p,
        centralizer_q: graded_centralizer::<Q>(rep, &()).dim(),
        centralizer_p: graded_centralizer::<Fp>(rep, &p).dim(),
        ad_e_ranks: ranks,
    })
}

/// χ = κ(e, ·) over F_p.
#[derive(Clone, Debug)]
pub struct PCharacter {
    pub p: u64,
    pub lambda: Partition,
    pub values: SVec<Fp>,
}

fn chi_values(g: &ClassicalAlgebra, e: &SVec<Q>, p: u64) -> Result<SVec<Fp>> {
    let kappa = normalized_killing(g)?;
    let v: SVec<Q> = (0..g.dim())
        .map(|b| (b, kappa.eval(e, &vec![(b, crate::exact::q(1))])))
        .filter(|(_, x)| !x.vanishes())
        .collect();
    reduce_vec(&v, p)
}

impl PCharacter {
    pub fn eval(&self, x: &SVec<Fp>) -> Fp {
        crate::exact::linalg::sv_dot(&self.values, x, &self.p)
    }

    /// Whether χ vanishes outside g(−2).
    pub fn support_ok(&self, rep: &NilpotentRep) -> bool {
        self.values.iter().all(|(b, _)| rep.degrees[*b] == -2)
    }

    /// χ([m, m]) = 0 for the reduction of the subalgebra m.
    pub fn kills_m_brackets(&self, rep: &NilpotentRep) -> Result<bool> {
        let pair = split_lagrangian(rep)?;
        let m = build_m(rep, &pair)?;
        let basis: Vec<SVec<Fp>> = m
            .basis
            .iter()
            .map(|v| reduce_vec(v, self.p))
            .collect::<Result<_>>()?;
        for a in &basis {
            for b in &basis {
                if !self.eval(&rep.g.bracket(a, b, &self.p)).vanishes() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

pub fn p_character(rep: &NilpotentRep, p: u64) -> Result<PCharacter> {
    check_prime(p)?;
    Ok(PCharacter {
        p,
        lambda: rep.lambda.clone(),
        values: chi_values(&rep.g, &rep.e_coords, p)?,
    })
}

/// U_χ(g) ⊗_{U_χ(p)} k_{λ₀} for a parabolic p = l ⊕ n with χ(p) = 0,
/// written on the basis of ordered monomials in n⁻ with exponents < p.
#[derive(Clone, Debug)]
pub struct InducedModule {
    pub p: u64,
    pub datum: InductionDatum,
    /// Values of λ₀ on the Cartan basis h_1..h_r.
    pub lambda0: Vec<i64>,
    /// Richardson element of n defining χ = κ(e, ·).
    pub e: SVec<Q>,
    pub partition: Partition,
    pub chi: SVec<Fp>,
    /// Chevalley indices of the generators y_1..y_k of n⁻.
    pub generators: Vec<usize>,
    pub monomials: Vec<Vec<u8>>,
    /// ρ(x_b) for every basis element, acting on columns.
    pub rho: Vec<Mat<Fp>>,
    pub alg: ModularAlgebra,
}

type MVec = BTreeMap<Vec<u8>, Fp>;

fn mv_axpy(acc: &mut MVec, c: Fp, v: &MVec) {
    if c.vanishes() {
        return;
    }
    for (m, x) in v {
        let e = acc.entry(m.clone()).or_insert(Fp::new(0, c.p));
        *e = e.add(&x.mul(&c));
        if e.vanishes() {
            acc.remove(m);
        }
    }
}

struct Straightener<'a> {
    alg: &'a ModularAlgebra,
    p: u64,
    gens: Vec<usize>,
    slot: HashMap<usize, usize>,
    chi: Vec<Fp>,
    lam: Vec<Fp>,
    memo: HashMap<(usize, Vec<u8>), MVec>,
}

impl Straightener<'_> {
    fn act_elem(&mut self, x: &SVec<Fp>, a: &[u8]) -> MVec {
        let mut out = MVec::new();
        for (b, c) in x {
            let v = self.act(*b, a);
            mv_axpy(&mut out, *c, &v);
        }
        out
    }

    /// x_b · y^a ⊗ 1, reduced to ordered monomials with exponents < p.
    fn act(&mut self, b: usize, a: &[u8]) -> MVec {
        if let Some(v) = self.memo.get(&(b, a.to_vec())) {
            return v.clone();
        }
        let one = Fp::new(1, self.p);
        let first = a.iter().position(|x| *x > 0);
        let mut out = MVec::new();
        let ordered = match (self.slot.get(&b), first) {
            (Some(&j), None) => Some(j),
            (Some(&j), Some(i)) if j <= i => Some(j),
            _ => None,
        };
        if let Some(j) = ordered {
            let mut next = a.to_vec();
            next[j] += 1;
            if (next[j] as u64) < self.p {
                out.insert(next, one);
            } else {
                // y^p = y^[p] + χ(y)^p inside U_χ(g)
                next[j] = 0;
                let c = self.chi[b].pow(self.p);
                if !c.vanishes() {
                    out.insert(next.clone(), c);
                }
                let yp = self.alg.ppower[b].clone();
                let v = self.act_elem(&yp, &next);
                mv_axpy(&mut out, one, &v);
            }
        } else if let Some(i) = first {
            // x y_i m' = y_i (x m') + [x, y_i] m'
            let mut rest = a.to_vec();
            rest[i] -= 1;
            let yi = self.gens[i];
            let inner = self.act(b, &rest);
            for (m, c) in inner {
                let v = self.act(yi, &m);
                mv_axpy(&mut out, c, &v);
            }
            let br = self.alg.bracket(&unit(b, self.p), &unit(yi, self.p));
            let v = self.act_elem(&br, &rest);
            mv_axpy(&mut out, one, &v);
        } else if !self.lam[b].vanishes() {
            out.insert(a.to_vec(), self.lam[b]);
        }
        self.memo.insert((b, a.to_vec()), out.clone());
        out
    }
}

/// Samples a generic element of the nilradical whose Jordan type over Q
/// and over F_p is the induced partition.
fn richardson_element(
    g: &ClassicalAlgebra,
    nil: &[usize],
    target: &Partition,
    p: u64,
    seed: u64,
) -> Result<SVec<Q>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..32 {
        let e: SVec<Q> = nil
            .iter()
            .map(|b| (*b, crate::exact::q(rng.gen_range(1..=7))))
            .collect();
        let m = g.element::<Q>(&e, &());
        let jq = jordan_type(&m, &());
        let mp = m.map(|x| q_to_fp(x, p).unwrap_or(Fp::new(0, p)));
        let jp = jordan_type(&mp, &p);
        if jq.as_deref() == Some(target.parts()) && jp.as_deref() == Some(target.parts()) {
            return Ok(e);
        }
    }
    Err(Error::Verification(format!(
        "no Richardson element of type {target} found mod {p}"
    )))
}

pub fn build_induced_module(
    datum: &InductionDatum,
    p: u64,
    lambda0: Option<Vec<i64>>,
    seed: u64,
) -> Result<InducedModule> {
    check_prime(p)?;
    datum.validate()?;
    if !datum.block_orbits.iter().all(|o| o.is_zero_orbit())
        || !datum.residual_orbit.is_zero_orbit()
    {
        return Err(Error::Levi(
            "only the zero orbit of the Levi is supported".into(),
        ));
    }
    let alg = reduce_mod_p(datum.n, datum.eps, p)?;
    let g = alg.g.clone();
    let degs = datum.degrees(&g);
    let nil: Vec<usize> = (0..g.dim()).filter(|b| degs[*b] > 0).collect();
    let gens: Vec<usize> = (0..g.dim()).filter(|b| degs[*b] < 0).collect();
    let partition = induce_orbit(datum, seed)?.partition;
    let e = richardson_element(&g, &nil, &partition, p, seed)?;
    let chi_sv = chi_values(&g, &e, p)?;
    if chi_sv.iter().any(|(b, _)| degs[*b] >= 0) {
        return Err(Error::Verification(
            "χ does not vanish on the parabolic".into(),
        ));
    }
    let mut chi = vec![Fp::new(0, p); g.dim()];
    for (b, v) in &chi_sv {
        chi[*b] = *v;
    }

    // λ₀ on p: given on the Cartan, zero on root vectors
    let lambda0 = lambda0.unwrap_or_else(|| vec![0; g.rank]);
    if lambda0.len() != g.rank {
        return Err(Error::Levi(format!("λ₀ needs {} values", g.rank)));
    }
    let mut lam = vec![Fp::new(0, p); g.dim()];
    for (b, el) in g.basis.iter().enumerate() {
        if let BasisKind::Cartan(k) = el.kind {
            lam[b] = Fp::from_i64(lambda0[k - 1], p);
        }
    }
    let lam_of = |x: &SVec<Fp>| -> Fp {
        x.iter()
            .fold(Fp::new(0, p), |acc, (b, c)| acc.add(&lam[*b].mul(c)))
    };
    for b in (0..g.dim()).filter(|b| degs[*b] == 0) {
        if let Some(nb) = g.negative_of(b) {
            let h = alg.bracket(&unit(b, p), &unit(nb, p));
            if !lam_of(&h).vanishes() {
                return Err(Error::Levi("λ₀ does not vanish on [l, l]".into()));
            }
        }
        if g.basis[b].is_cartan() {
            let lhs = lam[b].pow(p).sub(&lam_of(&alg.ppower[b]));
            if lhs != chi[b].pow(p) {
                return Err(Error::Levi(
                    "λ₀ is not compatible with the p-character".into(),
                ));
            }
        }
    }

    let k = gens.len();
    let mut monomials: Vec<Vec<u8>> = vec![Vec::new()];
    for _ in 0..k {
        monomials = monomials
            .into_iter()
            .flat_map(|m| {
                (0..p as u8).map(move |x| {
                    let mut m2 = m.clone();
                    m2.push(x);
                    m2
                })
            })
            .collect();
    }
    let index: HashMap<Vec<u8>, usize> = monomials
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();
    let mut st = Straightener {
        alg: &alg,
        p,
        slot: gens.iter().enumerate().map(|(i, b)| (*b, i)).collect(),
        gens: gens.clone(),
        chi,
        lam,
        memo: HashMap::new(),
    };
    let dim = monomials.len();
    let mut rho = Vec::with_capacity(g.dim());
    for b in 0..g.dim() {
        let mut rows: Vec<SVec<Fp>> = vec![Vec::new(); dim];
        for (col, m) in monomials.iter().enumerate() {
            for (out, c) in st.act(b, m) {
                rows[index[&out]].push((col, c));
            }
        }
        rho.push(Mat { n: dim, rows });
    }
    drop(st);
    Ok(InducedModule {
        p,
        datum: datum.clone(),
        lambda0,
        e,
        partition,
        chi: chi_sv,
        generators: gens,
        monomials,
        rho,
        alg,
    })
}

/// Outcome of the closure test on seeded random vectors.
#[derive(Clone, Debug, Serialize)]
pub struct ProbeReport {
    pub vectors: usize,
    pub seed: u64,
    /// Dimension of the submodule generated by each vector.
    pub spans: Vec<usize>,
    pub all_generate: bool,
}

impl InducedModule {
    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn rho_of(&self, x: &SVec<Fp>) -> Mat<Fp> {
        let mut acc = Mat::zero(self.dim());
        for (b, c) in x {
            acc = acc.axpy(&self.rho[*b], Some(*c));
        }
        acc
    }

    fn chi_at(&self, b: usize) -> Fp {
        crate::exact::linalg::sv_get(&self.chi, b)
            .copied()
            .unwrap_or(Fp::new(0, self.p))
    }

    /// Basis indices where ρ(x)^p − ρ(x^[p]) ≠ χ(x)^p · Id.
    pub fn p_character_failures(&self) -> Vec<usize> {
        let p = self.p;
        (0..self.rho.len())
            .filter(|&b| {
                let lhs = self.rho[b]
                    .pow(p, &p)
                    .sub(&self.rho_of(&self.alg.ppower[b]));
                let rhs = Mat::identity(self.dim(), &p).scale(&self.chi_at(b).pow(p));
                !lhs.sub(&rhs).is_zero()
            })
            .collect()
    }

    /// Pairs (a, b) where ρ([x_a, x_b]) ≠ [ρ(x_a), ρ(x_b)].
    pub fn bracket_failures(&self) -> Vec<(usize, usize)> {
        let d = self.rho.len();
        let mut bad = Vec::new();
        for a in 0..d {
            for b in a + 1..d {
                let lhs = self.rho[a].bracket(&self.rho[b]);
                let rhs = self.rho_of(&self.alg.bracket(&unit(a, self.p), &unit(b, self.p)));
                if !lhs.sub(&rhs).is_zero() {
                    bad.push((a, b));
                }
            }
        }
        bad
    }

    /// Spans the submodule generated by each of `count` seeded vectors.
    pub fn submodule_probe(&self, count: usize, seed: u64) -> ProbeReport {
        let p = self.p;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut spans = Vec::new();
        for _ in 0..count {
            let v: SVec<Fp> = (0..self.dim())
                .map(|i| (i, Fp::new(rng.gen_range(0..p), p)))
                .filter(|(_, x)| !x.vanishes())
                .collect();
            let mut ech: Echelon<Fp> = Echelon::new(p);
            let mut queue = vec![v];
            while let Some(w) = queue.pop() {
                if w.is_empty() || !ech.add(&w) {
                    continue;
                }
                if ech.rank() == self.dim() {
                    break;
                }
                for r in &self.rho {
                    queue.push(r.apply(&w, &p));
                }
            }
            spans.push(ech.rank());
        }
        ProbeReport {
            vectors: count,
            seed,
            all_generate: spans.iter().all(|s| *s == self.dim()),
            spans,
        }
    }
}

/// Bookkeeping for an induction datum: dim n + d(χ̄) against d(χ).
#[derive(Clone, Debug, Serialize)]
pub struct InductionBookkeeping {
    pub blocks: Vec<usize>,
    pub block_orbits: Vec<String>,
    pub residual_orbit: String,
    pub dim_n: usize,
    pub d_chi_levi: usize,
    pub identity_holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct KwReport {
    pub lambda: String,
    pub eps: i64,
    pub p: u64,
    pub orbit_dim: usize,
    pub d_chi: usize,
    /// p^{d(χ)}, the dimension every small module must have.
    pub small_dim: String,
    pub rigid: bool,
    /// Present when λ is induced and N is within the oracle's range.
    pub induction: Option<InductionBookkeeping>,
}

pub fn induction_bookkeeping(datum: &InductionDatum, d_chi: usize) -> Result<InductionBookkeeping> {
    let dim_n = datum.nilradical_dim()?;
    let lo = datum.levi_orbit_dim();
    Ok(InductionBookkeeping {
        blocks: datum.blocks.clone(),
        block_orbits: datum.block_orbits.iter().map(|o| o.to_string()).collect(),
        residual_orbit: datum.residual_orbit.to_string(),
        dim_n,
        d_chi_levi: lo / 2,
        identity_holds: lo.is_multiple_of(2) && dim_n + lo / 2 == d_chi,
    })
}

pub fn kw_bookkeeping(lambda: &Partition, eps: Epsilon, p: u64) -> Result<KwReport> {
    check_prime(p)?;
    let (orbit_dim, d_chi) = orbit_dimension(lambda, eps)?;
    let rigid = is_rigid(lambda, eps)?;
    let induction = if lambda.total() <= RIGIDITY_ORACLE_MAX_N {
        rigidity_witness(lambda, eps)?
            .map(|d| induction_bookkeeping(&d, d_chi))
            .transpose()?
    } else {
        None
    };
    Ok(KwReport {
        lambda: lambda.to_string(),
        eps: eps.sign(),
        p,
        orbit_dim,
        d_chi,
        small_dim: BigUint::from(p).pow(d_chi as u32).to_string(),
        rigid,
        induction,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbits::build_nilpotent;
    use crate::partitions::admissible_partitions;

    fn rep(s: &str, e: Epsilon) -> NilpotentRep {
        build_nilpotent(&Partition::parse(s).unwrap(), e).unwrap()
    }

    #[test]
    fn primes() {
        assert!(check_prime(2).is_err());
        assert!(check_prime(9).is_err());
        assert!(check_prime(1).is_err());
        assert!(check_prime(7).is_ok());
        assert!(reduce_mod_p(4, Epsilon::Minus, 2).is_err());
    }

    #[test]
    fn restricted_structure() {
        for (n, e) in [(4, Epsilon::Minus), (5, Epsilon::Plus), (6, Epsilon::Plus)] {
            for p in [3, 5, 7] {
                let a = reduce_mod_p(n, e, p).unwrap();
                assert!(a.check_restricted().ok(), "{n} {p}");
                // the Cartan basis is fixed by the p-th power
                for b in 0..a.g.rank {
                    assert_eq!(a.ppower[b], unit(b, p));
                }
            }
        }
    }

    #[test]
    fn stability_small_n() {
        for n in 2..=6 {
            for eps in [Epsilon::Plus, Epsilon::Minus] {
                if eps == Epsilon::Minus && n % 2 == 1 {
                    continue;
                }
                for l in admissible_partitions(n, eps) {
                    let r = build_nilpotent(&l, eps).unwrap();
                    for p in [3, 5, 7] {
                        assert!(dimension_stability(&r, p).unwrap().ok(), "{l} {eps} {p}");
                    }
                }
            }
        }
        assert_eq!(
            dimension_stability(&rep("2,1,1", Epsilon::Minus), 3)
                .unwrap()
                .centralizer_p,
            6
        );
    }

    #[test]
    fn characters() {
        let z = p_character(&rep("1,1,1,1", Epsilon::Minus), 3).unwrap();
        assert!(z.values.is_empty());
        for s in ["4", "2,2", "2,1,1"] {
            let r = rep(s, Epsilon::Minus);
            let c = p_character(&r, 3).unwrap();
            assert!(!c.values.is_empty());
            assert!(c.support_ok(&r));
            assert!(c.kills_m_brackets(&r).unwrap());
        }
    }

    #[test]
    fn borel_module_p3() {
        let d = InductionDatum::zero_orbit(4, Epsilon::Minus, vec![1, 1]).unwrap();
        let m = build_induced_module(&d, 3, None, 1).unwrap();
        assert_eq!(m.partition, Partition::parse("4").unwrap());
        assert_eq!(m.dim(), 81);
        assert!(m.p_character_failures().is_empty());
        assert!(m.bracket_failures().is_empty());
        assert!(m.submodule_probe(10, 5).all_generate);
    }

    #[test]
    fn siegel_module_p3() {
        let d = InductionDatum::zero_orbit(4, Epsilon::Minus, vec![2]).unwrap();
        let m = build_induced_module(&d, 3, None, 1).unwrap();
        assert_eq!(m.partition, Partition::parse("2,2").unwrap());
        assert_eq!(m.dim(), 27);
        let (_, dchi) = orbit_dimension(&m.partition, Epsilon::Minus).unwrap();
        assert_eq!(3usize.pow(dchi as u32), 27);
        assert!(m.p_character_failures().is_empty());
        assert!(m.bracket_failures().is_empty());
        assert!(m.submodule_probe(10, 5).all_generate);
    }

    #[test]
    fn modules_p5() {
        for (blocks, dim) in [(vec![1, 1], 625), (vec![2], 125)] {
            let d = InductionDatum::zero_orbit(4, Epsilon::Minus, blocks).unwrap();
            let m = build_induced_module(&d, 5, None, 3).unwrap();
            assert_eq!(m.dim(), dim);
            assert!(m.p_character_failures().is_empty());
            assert!(m.bracket_failures().is_empty());
        }
    }

    #[test]
    fn incompatible_weight_rejected() {
        let d = InductionDatum::zero_orbit(4, Epsilon::Minus, vec![2]).unwrap();
        // λ₀(h_1 − h_2) ≠ 0 does not kill [l, l] for the gl_2 Levi
        assert!(build_induced_module(&d, 3, Some(vec![1, 0]), 1).is_err());
        assert!(build_induced_module(&d, 3, Some(vec![1, 1]), 1).is_ok());
        let nz = InductionDatum {
            block_orbits: vec![Partition::parse("2").unwrap()],
            ..d
        };
        assert!(build_induced_module(&nz, 3, None, 1).is_err());
    }

    #[test]
    fn bookkeeping() {
        let k = kw_bookkeeping(&Partition::parse("4").unwrap(), Epsilon::Minus, 3).unwrap();
        assert_eq!((k.d_chi, k.small_dim.as_str()), (4, "81"));
        assert!(k.induction.unwrap().identity_holds);
        let k = kw_bookkeeping(&Partition::parse("2,2").unwrap(), Epsilon::Minus, 3).unwrap();
        assert_eq!((k.d_chi, k.small_dim.as_str()), (3, "27"));
        let k = kw_bookkeeping(&Partition::parse("1,1,1,1").unwrap(), Epsilon::Minus, 3).unwrap();
        assert_eq!(k.small_dim, "1");
        let k = kw_bookkeeping(&Partition::parse("2,1,1").unwrap(), Epsilon::Minus, 3).unwrap();
        assert!(k.rigid && k.induction.is_none());
    }
}
