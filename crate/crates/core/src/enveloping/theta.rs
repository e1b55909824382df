//! Θ-generators of U(g, e) = Q^{ad m}: closed formulas in degrees 0 and 1,
//! the clearing loop for higher degrees, the PBW basis check and the
//! augmentation character.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use super::{poly_axpy, poly_in_r, poly_one, poly_sub, Mono, PbwContext, Poly};
use crate::error::{Error, Result};
use crate::exact::linalg::{rank, Echelon, SVec};
use crate::exact::{fmt_q, in_r, q, qr, Q};

#[derive(Clone, Debug)]
pub struct ThetaGenerator {
    /// Index k of x_k in the adapted basis (k < r).
    pub k: usize,
    pub n_k: i32,
    pub value: Poly,
}

impl ThetaGenerator {
    pub fn kazhdan(&self) -> i32 {
        self.n_k + 2
    }
}

fn unit(a: usize) -> SVec<Q> {
    vec![(a, q(1))]
}

fn z(ctx: &PbwContext, i: usize) -> SVec<Q> {
    unit(ctx.m + i)
}

/// The z'_i of the closed formulas. They are written for the duality
/// Ψ(z_i, z'_j) = δ_ij, so they are the negatives of the stored z'_i,
/// which satisfy Ψ(z'_i, z_j) = δ_ij.
fn zp(ctx: &PbwContext, i: usize) -> SVec<Q> {
    vec![(ctx.m + ctx.s + i, q(-1))]
}

fn degree_of(ctx: &PbwContext, x: &SVec<Q>) -> Option<i32> {
    let mut d = None;
    for (a, _) in x {
        let k = ctx.degrees[*a];
        if d.is_some_and(|v| v != k) {
            return None;
        }
        d = Some(k);
    }
    d
}

fn in_centralizer(ctx: &PbwContext, x: &SVec<Q>) -> bool {
    x.iter().all(|(a, _)| *a < ctx.r)
}

/// Θ(x) = x − ½ Σ z_i [x, z'_i] for x ∈ g^e(0).
pub fn theta_zero(ctx: &PbwContext, x: &SVec<Q>) -> Result<Poly> {
    if x.is_empty() {
        return Ok(Poly::new());
    }
    if !in_centralizer(ctx, x) || degree_of(ctx, x) != Some(0) {
        return Err(Error::Verification("theta_zero needs x ∈ g^e(0)".into()));
    }
    let mut out = ctx.q_word(std::slice::from_ref(x));
    for i in 0..ctx.s {
        let b = ctx.bracket_y(x, &zp(ctx, i));
        let t = ctx.q_word(&[z(ctx, i), b]);
        poly_axpy(&mut out, &qr(-1, 2), &t);
    }
    Ok(out)
}

/// Constant separating the canonical Θ(x) from the bracket-first ordering
/// x − ½ Σ [x, z'_i] z_i on g^e(0). Only the latter turns x ↦ Θ(x) into a
/// Lie homomorphism on g^e(0); the canonical one misses by a coboundary.
pub fn low_degree_shift(ctx: &PbwContext, x: &SVec<Q>) -> Q {
    if degree_of(ctx, x) != Some(0) || !in_centralizer(ctx, x) {
        return Q::zero();
    }
    let mut acc = Q::zero();
    for i in 0..ctx.s {
        let b = ctx.bracket_y(&ctx.bracket_y(x, &zp(ctx, i)), &z(ctx, i));
        acc += ctx.chi_of(&b);
    }
    acc * qr(-1, 2)
}

/// Readings of the closed degree-one formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ThetaOneForm {
    /// First sum Σ_i [x, z'_i] z_i, linear term as printed.
    Printed,
    /// First sum taken over both indices, linear term as printed.
    PrintedFreeIndex,
    /// First sum Σ_i [x, z'_i] z_i with the linear z-term replaced by
    /// ⅓Σ_j χ([[[x, z'_i], z'_j], z_j]) + ⅔Σ_j χ([[x, [z'_j, z'_i]], z_j]),
    /// which is what ad z'-invariance forces on the constant level.
    Corrected,
}

fn theta_one_impl(ctx: &PbwContext, x: &SVec<Q>, form: ThetaOneForm) -> Result<Poly> {
    if x.is_empty() {
        return Ok(Poly::new());
    }
    if !in_centralizer(ctx, x) || degree_of(ctx, x) != Some(1) {
        return Err(Error::Verification("theta_one needs x ∈ g^e(1)".into()));
    }
    let s = ctx.s;
    let mut out = ctx.q_word(std::slice::from_ref(x));
    for i in 0..s {
        let b = ctx.bracket_y(x, &zp(ctx, i));
        if form == ThetaOneForm::PrintedFreeIndex {
            for j in 0..s {
                let t = ctx.q_word(&[b.clone(), z(ctx, j)]);
                poly_axpy(&mut out, &q(-1), &t);
            }
        } else {
            let t = ctx.q_word(&[b, z(ctx, i)]);
            poly_axpy(&mut out, &q(-1), &t);
        }
    }
    for i in 0..s {
        let xi = ctx.bracket_y(x, &zp(ctx, i));
        for j in 0..s {
            let b = ctx.bracket_y(&xi, &zp(ctx, j));
            let t = ctx.q_word(&[b, z(ctx, j), z(ctx, i)]);
            poly_axpy(&mut out, &qr(1, 3), &t);
        }
    }
    let br = |a: &SVec<Q>, b: &SVec<Q>| ctx.bracket_y(a, b);
    for i in 0..s {
        let mut coef = Q::zero();
        for j in 0..s {
            let (zj, zpj, zpi) = (z(ctx, j), zp(ctx, j), zp(ctx, i));
            coef += match form {
                ThetaOneForm::Corrected => {
                    let a = br(&br(&br(x, &zpi), &zpj), &zj);
                    let b = br(&br(x, &br(&zpj, &zpi)), &zj);
                    ctx.chi_of(&a) + q(2) * ctx.chi_of(&b)
                }
                _ => {
                    let a = br(&zpj, &br(x, &br(&zj, &zpi)));
                    let b = br(&zj, &br(x, &br(&zpj, &zpi)));
                    -(ctx.chi_of(&a) - ctx.chi_of(&b))
                }
            };
        }
        let t = ctx.q_word(&[z(ctx, i)]);
        poly_axpy(&mut out, &(coef * qr(1, 3)), &t);
    }
    Ok(out)
}

/// Θ(x) for x ∈ g^e(1).
pub fn theta_one(ctx: &PbwContext, x: &SVec<Q>) -> Result<Poly> {
    theta_one_impl(ctx, x, ThetaOneForm::Corrected)
}

pub fn theta_one_variant(ctx: &PbwContext, x: &SVec<Q>, form: ThetaOneForm) -> Result<Poly> {
    theta_one_impl(ctx, x, form)
}

/// One way of writing x_k as Σ c [x_a, x_b] with n_a, n_b ≥ 1.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub terms: Vec<(Q, usize, usize)>,
}

/// Two presentations of x_k: pivots chosen in forward and reverse order.
pub fn commutator_presentations(ctx: &PbwContext, k: usize) -> Result<Vec<Presentation>> {
    let nk = ctx.degrees[k];
    let mut pairs = Vec::new();
    for a in 0..ctx.r {
        for b in a + 1..ctx.r {
            let (na, nb) = (ctx.degrees[a], ctx.degrees[b]);
            if na >= 1 && nb >= 1 && na + nb == nk {
                let br = ctx.bracket_y(&unit(a), &unit(b));
                if !br.is_empty() {
                    pairs.push((a, b, br));
                }
            }
        }
    }
    let mut out = Vec::new();
    for rev in [false, true] {
        let order: Vec<usize> = if rev {
            (0..pairs.len()).rev().collect()
        } else {
            (0..pairs.len()).collect()
        };
        let mut e = Echelon::tracked(());
        for &i in &order {
            e.insert(&pairs[i].2);
        }
        let sol = e.express(&unit(k)).ok_or_else(|| {
            Error::Verification(format!(
                "x{} is not a sum of commutators of positive degree",
                k + 1
            ))
        })?;
        let terms = sol
            .into_iter()
            .map(|(i, c)| {
                let (a, b, _) = &pairs[order[i]];
                (c, *a, *b)
            })
            .collect();
        out.push(Presentation { terms });
    }
    Ok(out)
}

/// Θ-generators built so far, indexed by k.
pub struct WAlgebra {
    pub ctx: PbwContext,
    pub theta: BTreeMap<usize, ThetaGenerator>,
}

impl WAlgebra {
    /// Θ at degrees 0 and 1 from the closed formulas.
    pub fn new(ctx: PbwContext) -> Result<Self> {
        let mut theta = BTreeMap::new();
        for k in 0..ctx.r {
            let n_k = ctx.degrees[k];
            let value = match n_k {
                0 => theta_zero(&ctx, &unit(k))?,
                1 => theta_one(&ctx, &unit(k))?,
                _ => continue,
            };
            theta.insert(k, ThetaGenerator { k, n_k, value });
        }
        Ok(WAlgebra { ctx, theta })
    }

    /// Lift every higher-degree generator in order of increasing degree.
    pub fn complete(&mut self) -> Result<()> {
        let mut ks: Vec<usize> = (0..self.ctx.r)
            .filter(|k| !self.theta.contains_key(k))
            .collect();
        ks.sort_by_key(|k| (self.ctx.degrees[*k], *k));
        for k in ks {
            let p = commutator_presentations(&self.ctx, k)?;
            let t = lift_theta(self, k, &p[0])?;
            self.theta.insert(k, t);
        }
        Ok(())
    }

    pub fn get(&self, k: usize) -> Result<&Poly> {
        self.theta
            .get(&k)
            .map(|t| &t.value)
            .ok_or_else(|| Error::Verification(format!("Θ(x{}) not built", k + 1)))
    }

    /// Θ(v) for v ∈ g^e in adapted coordinates.
    pub fn theta_of(&self, v: &SVec<Q>) -> Result<Poly> {
        let mut out = Poly::new();
        for (a, c) in v {
            if *a >= self.ctx.r {
                return Err(Error::Verification("element not in g^e".into()));
            }
            poly_axpy(&mut out, c, self.get(*a)?);
        }
        Ok(out)
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        self.ctx.mul(a, b, true)
    }

    pub fn commutator(&self, a: &Poly, b: &Poly) -> Poly {
        poly_sub(&self.mul(a, b), &self.mul(b, a))
    }

    /// Θ^i for an ordered Λ⁰ monomial.
    pub fn theta_power(&self, m: &[u16]) -> Result<Poly> {
        let mut cur = poly_one();
        for a in m.iter().rev() {
            cur = self.mul(self.get(*a as usize)?, &cur);
        }
        Ok(cur)
    }

    /// Expansion h = Σ μ_i Θ^i by repeatedly clearing the Λ⁰ monomial of
    /// largest Kazhdan degree and smallest length.
    pub fn theta_expand(&self, h: &Poly) -> Result<BTreeMap<Mono, Q>> {
        let mut rest = h.clone();
        let mut out = BTreeMap::new();
        let mut guard = 0;
        while let Some(m) = self.pick_lambda0(&rest, None) {
            let c = rest[&m].clone();
            let t = self.theta_power(&m)?;
            poly_axpy(&mut rest, &-c.clone(), &t);
            *out.entry(m).or_insert_with(Q::zero) += c;
            guard += 1;
            if guard > 100_000 {
                return Err(Error::SizeGuard(
                    "theta expansion does not terminate".into(),
                ));
            }
        }
        if !rest.is_empty() {
            return Err(Error::Verification(format!(
                "element is not in the span of Θ-monomials; leftover {:?}",
                self.ctx
                    .poly_strings(&rest)
                    .into_iter()
                    .take(4)
                    .collect::<Vec<_>>()
            )));
        }
        out.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    fn pick_lambda0(&self, h: &Poly, skip: Option<&[u16]>) -> Option<Mono> {
        h.keys()
            .filter(|m| self.ctx.is_lambda0(m) && (skip != Some(m.as_slice())))
            .max_by(|a, b| {
                let ka = self.ctx.kazhdan_mono(a);
                let kb = self.ctx.kazhdan_mono(b);
                ka.cmp(&kb).then(b.len().cmp(&a.len())).then(b.cmp(a))
            })
            .cloned()
    }

    /// Canonical shape: leading x_k, no other Λ⁰ monomial, Kazhdan degree
    /// ≤ n_k + 2, and length ≥ 2 for the other monomials of top degree.
    pub fn shape_ok(&self, k: usize, h: &Poly) -> bool {
        let lead = vec![k as u16];
        let bound = self.ctx.degrees[k] + 2;
        PbwContext::is_unit(h, &lead)
            && h.keys().all(|m| {
                if m == &lead {
                    return true;
                }
                let kd = self.ctx.kazhdan_mono(m);
                !self.ctx.is_lambda0(m) && kd <= bound && (m.len() >= 2 || kd < bound)
            })
    }
}

/// Build Θ(x_k), n_k ≥ 2, from Σ c[Θ(x_a), Θ(x_b)] by clearing Λ⁰ terms
/// layer by layer with products of lower generators.
pub fn lift_theta(w: &WAlgebra, k: usize, pres: &Presentation) -> Result<ThetaGenerator> {
    let ctx = &w.ctx;
    let mut h = Poly::new();
    for (c, a, b) in &pres.terms {
        let t = w.commutator(w.get(*a)?, w.get(*b)?);
        poly_axpy(&mut h, c, &t);
    }
    let lead: Mono = vec![k as u16];
    let mut guard = 0;
    while let Some(m) = w.pick_lambda0(&h, Some(&lead)) {
        if m.iter()
            .any(|a| !w.theta.contains_key(&(*a as usize)) || *a as usize == k)
        {
            return Err(Error::Verification(format!(
                "clearing Θ(x{}) needs the unknown monomial {}",
                k + 1,
                ctx.mono_name(&m)
            )));
        }
        let c = h[&m].clone();
        let t = w.theta_power(&m)?;
        poly_axpy(&mut h, &-c, &t);
        guard += 1;
        if guard > 100_000 {
            return Err(Error::SizeGuard("clearing loop does not terminate".into()));
        }
    }
    if !w.shape_ok(k, &h) {
        return Err(Error::Verification(format!(
            "lifted Θ(x{}) does not have canonical shape",
            k + 1
        )));
    }
    if !ctx.is_m_invariant(&h) {
        return Err(Error::Verification(format!(
            "lifted Θ(x{}) is not ad m-invariant",
            k + 1
        )));
    }
    Ok(ThetaGenerator {
        k,
        n_k: ctx.degrees[k],
        value: h,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PbwReport {
    pub bound: i32,
    pub count: usize,
    pub rank: usize,
    pub integral: bool,
}

impl PbwReport {
    pub fn ok(&self) -> bool {
        self.rank == self.count && self.integral
    }
}

/// Ordered Θ-monomials of Kazhdan degree ≤ bound are independent in Q.
pub fn pbw_basis_check(w: &WAlgebra, bound: i32) -> Result<PbwReport> {
    let r = w.ctx.r;
    let weights: Vec<i32> = (0..r).map(|k| w.ctx.degrees[k] + 2).collect();
    let mut monos: Vec<Mono> = Vec::new();
    fn rec(start: usize, left: i32, cur: &mut Mono, w: &[i32], out: &mut Vec<Mono>) {
        out.push(cur.clone());
        for k in start..w.len() {
            if w[k] <= left {
                cur.push(k as u16);
                rec(k, left - w[k], cur, w, out);
                cur.pop();
            }
        }
    }
    rec(0, bound, &mut Vec::new(), &weights, &mut monos);
    let mut index: BTreeMap<Mono, usize> = BTreeMap::new();
    let mut vecs = Vec::new();
    let mut integral = true;
    for m in &monos {
        let p = w.theta_power(m)?;
        integral &= poly_in_r(&p);
        let mut v: SVec<Q> = Vec::new();
        for (mm, c) in p {
            let n = index.len();
            let i = *index.entry(mm).or_insert(n);
            v.push((i, c));
        }
        v.sort_by_key(|x| x.0);
        vecs.push(v);
    }
    Ok(PbwReport {
        bound,
        count: monos.len(),
        rank: rank(&vecs, &()),
        integral,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Augmentation {
    /// c_k on the canonical generators, keyed by k + 1.
    pub values: BTreeMap<usize, String>,
    /// c_k on the bracket-first generators Θ(x_k) + shift(x_k), n_k = 0.
    pub normalized: BTreeMap<usize, String>,
    pub in_r: bool,
    /// g^e(0) and g^e(1) lie in [g^e(0), g^e(≤1)], which forces the
    /// normalised values in degrees 0 and 1 to vanish.
    pub low_degree_zero: bool,
    pub presentations_agree: bool,
    /// Number of nonzero commutators [Θ(x_a), Θ(x_b)] that were evaluated.
    pub commutators_checked: usize,
    pub kills_commutators: bool,
    #[serde(skip)]
    pub c: BTreeMap<usize, Q>,
}

impl Augmentation {
    pub fn ok(&self) -> bool {
        self.in_r && self.low_degree_zero && self.presentations_agree && self.kills_commutators
    }
}

fn char_value(c: &BTreeMap<usize, Q>, m: &[u16]) -> Option<Q> {
    let mut v = q(1);
    for a in m {
        v *= c.get(&(*a as usize))?;
    }
    Some(v)
}

/// Solve Σ μ_i c^i = 0 for c_k given the expansion of an element of the
/// commutator ideal in which Θ(x_k) appears linearly.
fn solve_ck(exp: &BTreeMap<Mono, Q>, c: &BTreeMap<usize, Q>, k: usize) -> Result<Q> {
    let lead: Mono = vec![k as u16];
    let mu = exp
        .get(&lead)
        .cloned()
        .ok_or_else(|| Error::Verification("leading term missing".into()))?;
    let mut acc = Q::zero();
    for (m, v) in exp {
        if m == &lead {
            continue;
        }
        let cv = char_value(c, m)
            .ok_or_else(|| Error::Verification("character needed before it is known".into()))?;
        acc += v * cv;
    }
    Ok(-acc / mu)
}

/// Whether g^e(j) ⊆ [g^e(0), g^e(j)] + [g^e(1), g^e(j-1)] for j = 0, 1.
fn low_degrees_perfect(ctx: &PbwContext) -> bool {
    for j in 0..=1 {
        let target: Vec<usize> = (0..ctx.r).filter(|k| ctx.degrees[*k] == j).collect();
        if target.is_empty() {
            continue;
        }
        let mut ech = Echelon::new(());
        for a in 0..ctx.r {
            for b in 0..ctx.r {
                let (da, db) = (ctx.degrees[a], ctx.degrees[b]);
                if da >= 0 && db >= 0 && da + db == j && a < b {
                    ech.insert(&ctx.bracket_y(&unit(a), &unit(b)));
                }
            }
        }
        if ech.rank() < target.len() {
            return false;
        }
    }
    true
}

/// The one-dimensional representation of U(g, e) for rigid e, written on
/// the canonical generators and on the normalised low-degree generators.
pub fn augmentation_character(w: &WAlgebra) -> Result<Augmentation> {
    let ctx = &w.ctx;
    let mut c: BTreeMap<usize, Q> = BTreeMap::new();
    let mut ks: Vec<usize> = (0..ctx.r).collect();
    ks.sort_by_key(|k| (ctx.degrees[*k], *k));
    let mut agree = true;
    for &k in &ks {
        if ctx.degrees[k] <= 1 {
            c.insert(k, -low_degree_shift(ctx, &unit(k)));
            continue;
        }
        let mut vals = Vec::new();
        for p in commutator_presentations(ctx, k)? {
            let mut h = Poly::new();
            for (co, a, b) in &p.terms {
                poly_axpy(&mut h, co, &w.commutator(w.get(*a)?, w.get(*b)?));
            }
            let exp = w.theta_expand(&h)?;
            vals.push(solve_ck(&exp, &c, k)?);
        }
        agree &= vals.windows(2).all(|v| v[0] == v[1]);
        c.insert(k, vals[0].clone());
    }
    let mut checked = 0;
    let mut kills = true;
    for a in 0..ctx.r {
        for b in a + 1..ctx.r {
            let h = w.commutator(w.get(a)?, w.get(b)?);
            if h.is_empty() {
                continue;
            }
            let exp = w.theta_expand(&h)?;
            let mut v = Q::zero();
            for (m, mu) in &exp {
                v += mu * char_value(&c, m).unwrap_or_else(Q::zero);
            }
            kills &= v.is_zero();
            checked += 1;
        }
    }
    let normalized: BTreeMap<usize, Q> = c
        .iter()
        .map(|(k, v)| (*k, v + low_degree_shift(ctx, &unit(*k))))
        .collect();
    Ok(Augmentation {
        values: c.iter().map(|(k, v)| (k + 1, fmt_q(v))).collect(),
        normalized: normalized.iter().map(|(k, v)| (k + 1, fmt_q(v))).collect(),
        in_r: c.values().all(in_r),
        low_degree_zero: low_degrees_perfect(ctx),
        presentations_agree: agree,
        commutators_checked: checked,
        kills_commutators: kills,
        c,
    })
}

/// [Θ(u), Θ(v)] − Θ([u, v]) for the normalised generators of basis
/// elements u ∈ g^e(0), v ∈ g^e(0) ∪ g^e(1); zero when the law holds.
pub fn commutator_defect(w: &WAlgebra, u: usize, v: usize) -> Result<Poly> {
    let ctx = &w.ctx;
    let norm = |k: usize| -> Result<Poly> {
        let mut p = w.get(k)?.clone();
        poly_axpy(&mut p, &low_degree_shift(ctx, &unit(k)), &poly_one());
        Ok(p)
    };
    let h = w.commutator(&norm(u)?, &norm(v)?);
    let br = ctx.bracket_y(&unit(u), &unit(v));
    let mut t = w.theta_of(&br)?;
    poly_axpy(&mut t, &low_degree_shift(ctx, &br), &poly_one());
    Ok(poly_sub(&h, &t))
}

/// Θ(x_k) − Θ(x_k)' for the two presentations; zero when unique.
pub fn presentations_agree(w: &WAlgebra, k: usize) -> Result<bool> {
    let p = commutator_presentations(&w.ctx, k)?;
    let a = lift_theta(w, k, &p[0])?;
    let b = lift_theta(w, k, &p[1])?;
    Ok(a.value == b.value)
}
