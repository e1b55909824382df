//! The centraliser g^e: kernels of ad e by degree, the ζ spanning system
//! with its relation and bracket tables, derived subalgebras and the
//! generation test for almost rigid elements.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::algebra::ClassicalAlgebra;
use crate::error::{Error, Result};
use crate::exact::field::q_to_fp;
use crate::exact::linalg::{inverse, kernel, rank, relations, sv_axpy, sv_from_map, Echelon, SVec};
use crate::exact::{q, sqrt_in_cyc8, Cyc8, Field, Fp, FromQ, Q};
use crate::matrix::Mat;
use crate::orbits::{centralizer_dim_formula, NilpotentRep};
use crate::partitions::{is_almost_rigid, pairing_involution, Epsilon, Involution, Partition};

/// Homogeneous basis of g^e in Chevalley coordinates.
#[derive(Clone, Debug)]
pub struct CentralizerBasis<F: Field = Q> {
    pub vectors: Vec<SVec<F>>,
    pub degrees: Vec<i32>,
}

impl<F: Field> CentralizerBasis<F> {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }
    pub fn in_degree(&self, d: i32) -> Vec<SVec<F>> {
        self.vectors
            .iter()
            .zip(&self.degrees)
            .filter(|(_, k)| **k == d)
            .map(|(v, _)| v.clone())
            .collect()
    }
    pub fn graded_dims(&self) -> BTreeMap<i32, usize> {
        let mut m = BTreeMap::new();
        for d in &self.degrees {
            *m.entry(*d).or_insert(0) += 1;
        }
        m
    }
}

/// ad e : g(i) → g(i+2) over F, as rows indexed by g(i+2).
pub fn ad_e_block_over<F: FromQ>(
    rep: &NilpotentRep,
    i: i32,
    ctx: &F::Ctx,
) -> (Vec<usize>, Vec<usize>, Vec<SVec<F>>) {
    let g = &rep.g;
    let e: SVec<F> = rep
        .e_coords
        .iter()
        .map(|(b, v)| (*b, F::from_q(v, ctx)))
        .collect();
    let src = rep.piece(i);
    let dst = rep.piece(i + 2);
    let idx: BTreeMap<usize, usize> = dst.iter().enumerate().map(|(k, b)| (*b, k)).collect();
    let mut rows: Vec<SVec<F>> = vec![Vec::new(); dst.len()];
    for (col, &b) in src.iter().enumerate() {
        for (c, v) in g.bracket(&e, &vec![(b, F::one_of(ctx))], ctx) {
            rows[idx[&c]].push((col, v));
        }
    }
    (src, dst, rows)
}

/// Kernel of ad e degree by degree over F.
pub fn graded_centralizer<F: FromQ>(rep: &NilpotentRep, ctx: &F::Ctx) -> CentralizerBasis<F> {
    let degs: BTreeSet<i32> = rep.degrees.iter().copied().collect();
    let mut vectors = Vec::new();
    let mut degrees = Vec::new();
    for d in degs {
        let (src, _, rows) = ad_e_block_over::<F>(rep, d, ctx);
        for v in kernel(&rows, src.len(), ctx) {
            vectors.push(v.into_iter().map(|(k, x)| (src[k], x)).collect());
            degrees.push(d);
        }
    }
    CentralizerBasis { vectors, degrees }
}

/// g^e over ℚ, checked against the closed dimension formula and goodness
/// of the grading.
pub fn compute_centralizer(rep: &NilpotentRep) -> Result<CentralizerBasis> {
    let c = graded_centralizer::<Q>(rep, &());
    let want = centralizer_dim_formula(&rep.lambda, rep.eps);
    if c.dim() != want {
        return Err(Error::Verification(format!(
            "dim g^e = {} but the partition formula gives {want} for {}",
            c.dim(),
            rep.lambda
        )));
    }
    if c.degrees.iter().any(|d| *d < 0) {
        return Err(Error::Verification(format!(
            "grading is not good for {}",
            rep.lambda
        )));
    }
    for v in &c.vectors {
        if !rep.ad_e(v).is_empty() {
            return Err(Error::Verification(
                "kernel vector does not commute with e".into(),
            ));
        }
    }
    Ok(c)
}

/// Per-degree bases of a graded subspace of g^e.
#[derive(Clone, Debug)]
pub struct GradedSubspace<F: Field = Q> {
    pub pieces: BTreeMap<i32, Vec<SVec<F>>>,
    pub codim: usize,
}

impl<F: Field> GradedSubspace<F> {
    pub fn dim(&self) -> usize {
        self.pieces.values().map(|v| v.len()).sum()
    }
    pub fn codim_by_degree(&self, basis: &CentralizerBasis<F>) -> BTreeMap<i32, usize> {
        basis
            .graded_dims()
            .into_iter()
            .map(|(d, n)| (d, n - self.pieces.get(&d).map_or(0, |v| v.len())))
            .filter(|(_, c)| *c > 0)
            .collect()
    }
}

fn bracket_span<F: Field>(
    g: &ClassicalAlgebra,
    xs: &[SVec<F>],
    ys: &[SVec<F>],
    ctx: &F::Ctx,
) -> Echelon<F> {
    let mut ech = Echelon::new(ctx.clone());
    for x in xs {
        for y in ys {
            let b = g.bracket(x, y, ctx);
            if !b.is_empty() {
                ech.add(&b);
            }
        }
    }
    ech
}

/// [g^e, g^e], graded.
pub fn derived_subalgebra<F: Field>(
    g: &ClassicalAlgebra,
    basis: &CentralizerBasis<F>,
    ctx: &F::Ctx,
) -> GradedSubspace<F> {
    let degs: BTreeSet<i32> = basis.degrees.iter().copied().collect();
    let mut pieces = BTreeMap::new();
    for &r in &degs {
        let mut ech = Echelon::new(ctx.clone());
        for &a in &degs {
            let b = r - a;
            if b < a || !degs.contains(&b) {
                continue;
            }
            let e2 = bracket_span(g, &basis.in_degree(a), &basis.in_degree(b), ctx);
            for row in e2.rows() {
                ech.add(row);
            }
        }
        if ech.rank() > 0 {
            pieces.insert(r, ech.rows().to_vec());
        }
    }
    let dim: usize = pieces.values().map(|v: &Vec<SVec<F>>| v.len()).sum();
    GradedSubspace {
        codim: basis.dim() - dim,
        pieces,
    }
}

/// Rank witnesses for [g^e(1), g^e(r-1)] = g^e(r).
#[derive(Clone, Debug, Serialize)]
pub struct GenerationReport {
    pub generated_by_01: bool,
    /// (r, dim g^e(r), rank of [g^e(1), g^e(r-1)]) for r > 1.
    pub per_degree: Vec<(i32, usize, usize)>,
    /// Dimension of the subalgebra generated by g^e(0) + g^e(1).
    pub generated_dim: usize,
}

/// Whether g^e is generated by its degree 0 and 1 parts, with the stronger
/// per-degree identity recorded separately.
pub fn check_generation<F: Field>(
    g: &ClassicalAlgebra,
    basis: &CentralizerBasis<F>,
    ctx: &F::Ctx,
) -> GenerationReport {
    let dims = basis.graded_dims();
    let top = dims.keys().copied().max().unwrap_or(0);
    let mut per_degree = Vec::new();
    let g1 = basis.in_degree(1);
    for r in 2..=top {
        let want = dims.get(&r).copied().unwrap_or(0);
        let got = bracket_span(g, &g1, &basis.in_degree(r - 1), ctx).rank();
        per_degree.push((r, want, got));
    }
    // closure of degrees 0 and 1 under brackets, graded
    let mut span: BTreeMap<i32, Echelon<F>> = BTreeMap::new();
    let mut frontier: Vec<(i32, SVec<F>)> = Vec::new();
    for d in [0, 1] {
        for v in basis.in_degree(d) {
            if span
                .entry(d)
                .or_insert_with(|| Echelon::new(ctx.clone()))
                .add(&v)
            {
                frontier.push((d, v));
            }
        }
    }
    let gens: Vec<(i32, SVec<F>)> = frontier.clone();
    while let Some((d, v)) = frontier.pop() {
        for (dg, x) in &gens {
            let b = g.bracket(x, &v, ctx);
            if b.is_empty() {
                continue;
            }
            let nd = d + dg;
            if span
                .entry(nd)
                .or_insert_with(|| Echelon::new(ctx.clone()))
                .add(&b)
            {
                frontier.push((nd, b));
            }
        }
    }
    let generated_dim: usize = span.values().map(|e| e.rank()).sum();
    GenerationReport {
        generated_by_01: generated_dim == basis.dim(),
        per_degree,
        generated_dim,
    }
}

type K = Cyc8<Q>;

fn kq(x: &Q) -> K {
    K::from_q(x, &())
}

/// ε_{i,j,s} = ϖ_{i≤i'} ϖ_{j≤j'} (-1)^{λ_j - s}, indices 0-based.
pub fn zeta_sign(lambda: &Partition, inv: &Involution, i: usize, j: usize, s: usize) -> i64 {
    let w = |a: usize| if a <= inv.partner(a) { 1 } else { -1 };
    let par = if (lambda.parts()[j] + s).is_multiple_of(2) {
        1
    } else {
        -1
    };
    w(i) * w(j) * par
}

/// Index triples (i, j, s) with 0 ≤ s < min(λ_i, λ_j), 0-based.
pub fn zeta_indices(lambda: &Partition) -> Vec<(usize, usize, usize)> {
    let p = lambda.parts();
    let mut out = Vec::new();
    for i in 0..p.len() {
        for j in 0..p.len() {
            for s in 0..p[i].min(p[j]) {
                out.push((i, j, s));
            }
        }
    }
    out
}

/// Dynkin degree λ_i + λ_j - 2s - 2.
pub fn zeta_degree(lambda: &Partition, i: usize, j: usize, s: usize) -> i32 {
    let p = lambda.parts();
    (p[i] + p[j]) as i32 - 2 * s as i32 - 2
}

/// The spanning family ζ_i^{j,s} of g^e, realised over ℚ(ζ_8).
#[derive(Clone, Debug)]
pub struct ZetaSystem {
    pub lambda: Partition,
    pub eps: Epsilon,
    pub inv: Involution,
    /// Generators w_i of the Jordan strings, as vectors in K^N.
    pub generators: Vec<Vec<K>>,
    pub zeta: BTreeMap<(usize, usize, usize), Mat<K>>,
    /// Whether any normalisation left ℚ.
    pub uses_extension: bool,
}

/// Constant with β(w_k, w_{k'}) = C·ϖ_{k≤k'}.
const NORMALISATION: i64 = 1;

fn apply_q(m: &Mat<Q>, v: &SVec<Q>) -> SVec<Q> {
    m.apply(v, &())
}

/// Lowest-weight generators of the Jordan strings of e, normalised so that
/// (w_k, e^{λ-1} w_l) = C ϖ_{k≤k'} δ_{l,k'}.
fn string_generators(rep: &NilpotentRep, inv: &Involution) -> Result<(Vec<Vec<K>>, bool)> {
    let n = rep.n();
    let parts = rep.lambda.parts().to_vec();
    let cols = rep.cols();
    let form = &rep.g.form;
    let mut gens: Vec<Option<Vec<K>>> = vec![None; parts.len()];
    let mut ext = false;
    let mut start = 0;
    while start < parts.len() {
        let lam = parts[start];
        let end = start + parts[start..].iter().take_while(|&&x| x == lam).count();
        let mult = end - start;
        let low: Vec<usize> = (0..n).filter(|&p| cols[p] == 1 - lam as i32).collect();
        let e_pow = rep.e.pow(lam as u64, &());
        let e_top = rep.e.pow(lam as u64 - 1, &());
        let images: Vec<SVec<Q>> = low
            .iter()
            .map(|&p| apply_q(&e_pow, &vec![(p, q(1))]))
            .collect();
        let ker = relations(&images, &());
        if ker.len() != mult {
            return Err(Error::Verification(format!(
                "string space for part {lam} has dim {} not {mult}",
                ker.len()
            )));
        }
        let mut basis: Vec<SVec<Q>> = ker
            .iter()
            .map(|c| sv_from_map(c.iter().map(|(k, x)| (low[*k], x.clone())).collect()))
            .collect();
        let beta = |u: &SVec<Q>, v: &SVec<Q>| form.eval(u, &apply_q(&e_top, v), &());
        let symmetric = rep.eps.twist(lam) == -1;
        let c = q(NORMALISATION);
        let mut k = start;
        while k < end {
            if symmetric && end - k >= 2 {
                // split off a hyperbolic plane without square roots
                if let Some((a, b)) = isotropic_pair(&basis, &beta) {
                    let bb = beta(&b, &b);
                    let ab = beta(&a, &b);
                    let b2 = sv_axpy(&b, &(-bb / (q(2) * &ab)), &a);
                    let t = &c / (q(2) * beta(&a, &b2));
                    let u1 = sv_axpy(&a, &t, &b2);
                    let u2 = sv_axpy(&a, &(-t), &b2);
                    let (d1, d2) = (beta(&u1, &u1), beta(&u2, &u2));
                    let mut rest = Vec::new();
                    for x in &basis {
                        let y = sv_axpy(x, &(-beta(x, &u1) / &d1), &u1);
                        let y = sv_axpy(&y, &(-beta(x, &u2) / &d2), &u2);
                        if !y.is_empty() {
                            rest.push(y);
                        }
                    }
                    basis = crate::exact::linalg::basis_of(&rest, &());
                    gens[k] = Some(dense(&u1, n, &K::one_of(&())));
                    gens[k + 1] = Some(dense(&u2, n, &K::zeta_pow(2, &())));
                    ext = true;
                    k += 2;
                    continue;
                }
            }
            if symmetric {
                // find u with β(u,u) ≠ 0, allowing sums of two basis vectors
                let mut pick = None;
                'outer: for a in 0..basis.len() {
                    if !num_traits::Zero::is_zero(&beta(&basis[a], &basis[a])) {
                        pick = Some(basis[a].clone());
                        break;
                    }
                    for b in a + 1..basis.len() {
                        let s = crate::exact::linalg::sv_add(&basis[a], &basis[b]);
                        if !num_traits::Zero::is_zero(&beta(&s, &s)) {
                            pick = Some(s);
                            break 'outer;
                        }
                    }
                }
                let u = pick.ok_or_else(|| Error::Verification("degenerate string form".into()))?;
                let d = beta(&u, &u);
                let mut rest = Vec::new();
                for v in basis {
                    let t = crate::exact::linalg::sv_axpy(&v, &(-beta(&v, &u) / &d), &u);
                    if !t.is_empty() {
                        rest.push(t);
                    }
                }
                basis = crate::exact::linalg::basis_of(&rest, &());
                let scale = sqrt_in_cyc8(&(&c / &d)).ok_or_else(|| {
                    Error::Verification(format!("no square root of {} in Q(zeta8)", &c / &d))
                })?;
                if !scale.is_base() {
                    ext = true;
                }
                gens[k] = Some(dense(&u, n, &scale));
                k += 1;
            } else {
                if inv.partner(k) != k + 1 {
                    return Err(Error::Verification("unexpected involution".into()));
                }
                let u = basis[0].clone();
                let v = basis[1..]
                    .iter()
                    .find(|v| !num_traits::Zero::is_zero(&beta(&u, v)))
                    .cloned()
                    .ok_or_else(|| Error::Verification("degenerate string form".into()))?;
                let v = crate::exact::linalg::sv_scale(&v, &(&c / beta(&u, &v)));
                let buv = beta(&u, &v);
                let bvu = beta(&v, &u);
                let mut rest = Vec::new();
                for x in &basis {
                    let t = crate::exact::linalg::sv_axpy(x, &(-beta(x, &v) / &buv), &u);
                    let t = crate::exact::linalg::sv_axpy(&t, &(-beta(x, &u) / &bvu), &v);
                    if !t.is_empty() {
                        rest.push(t);
                    }
                }
                basis = crate::exact::linalg::basis_of(&rest, &());
                gens[k] = Some(dense(&u, n, &K::one_of(&())));
                gens[k + 1] = Some(dense(&v, n, &K::one_of(&())));
                k += 2;
            }
        }
        start = end;
    }
    Ok((gens.into_iter().map(|g| g.unwrap()).collect(), ext))
}

/// Vectors a, b of the basis span with β(a,a) = 0 and β(a,b) ≠ 0.
fn isotropic_pair(
    basis: &[SVec<Q>],
    beta: &impl Fn(&SVec<Q>, &SVec<Q>) -> Q,
) -> Option<(SVec<Q>, SVec<Q>)> {
    use num_traits::Zero;
    for a in basis {
        if !beta(a, a).is_zero() {
            continue;
        }
        for b in basis {
            if !beta(a, b).is_zero() {
                return Some((a.clone(), b.clone()));
            }
        }
    }
    None
}

fn dense(v: &SVec<Q>, n: usize, scale: &K) -> Vec<K> {
    let mut out = vec![K::zero_of(&()); n];
    for (i, x) in v {
        out[*i] = kq(x).mul(scale);
    }
    out
}

fn mat_k(m: &Mat<Q>) -> Mat<K> {
    m.map(kq)
}

/// Build the ζ family as ξ + σ(ξ), where ξ_i^{j,s} shifts the string of w_i
/// into the string of w_j by λ_j - 1 - s steps.
pub fn build_zeta_system(rep: &NilpotentRep) -> Result<ZetaSystem> {
    let inv = pairing_involution(&rep.lambda, rep.eps)?;
    let (gens, ext) = string_generators(rep, &inv)?;
    let n = rep.n();
    let parts = rep.lambda.parts().to_vec();
    let ek = mat_k(&rep.e);
    // Jordan basis columns e^t w_i
    let mut col_index = BTreeMap::new();
    let mut columns: Vec<Vec<K>> = Vec::new();
    for (i, w) in gens.iter().enumerate() {
        let mut v: SVec<K> = sv_from_map(w.iter().cloned().enumerate().collect());
        for t in 0..parts[i] {
            col_index.insert((i, t), columns.len());
            let mut d = vec![K::zero_of(&()); n];
            for (a, x) in &v {
                d[*a] = x.clone();
            }
            columns.push(d);
            v = ek.apply(&v, &());
        }
    }
    let wmat: Vec<Vec<K>> = (0..n)
        .map(|r| columns.iter().map(|c| c[r].clone()).collect())
        .collect();
    let winv = inverse(&wmat, &())
        .ok_or_else(|| Error::Verification("Jordan basis is singular".into()))?;
    let mut zeta = BTreeMap::new();
    for (i, j, s) in zeta_indices(&rep.lambda) {
        let a = parts[j] - 1 - s;
        let mut xi = Mat::zero(n);
        for t in 0..parts[i] {
            if t + a >= parts[j] {
                continue;
            }
            let c = col_index[&(j, t + a)];
            let r = col_index[&(i, t)];
            for x in 0..n {
                if wmat[x][c].vanishes() {
                    continue;
                }
                for y in 0..n {
                    if winv[r][y].vanishes() {
                        continue;
                    }
                    xi.add_entry(x, y, &wmat[x][c].mul(&winv[r][y]));
                }
            }
        }
        let z = xi.add(&rep.g.sigma(&xi));
        zeta.insert((i, j, s), z);
    }
    Ok(ZetaSystem {
        lambda: rep.lambda.clone(),
        eps: rep.eps,
        inv,
        generators: gens,
        zeta,
        uses_extension: ext,
    })
}

/// Outcome of verifying the ζ identities.
#[derive(Clone, Debug, Serialize)]
pub struct ZetaReport {
    pub indices: usize,
    pub classes: usize,
    pub forced_zero: usize,
    pub rank: usize,
    pub dim_ge: usize,
    pub relations_checked: usize,
    pub brackets_checked: usize,
    pub uses_extension: bool,
}

impl ZetaSystem {
    pub fn get(&self, i: usize, j: usize, s: i64) -> Option<&Mat<K>> {
        if s < 0 {
            return None;
        }
        self.zeta.get(&(i, j, s as usize))
    }

    pub fn sign(&self, i: usize, j: usize, s: usize) -> i64 {
        zeta_sign(&self.lambda, &self.inv, i, j, s)
    }

    /// Right-hand side of the bracket law for [ζ_i^{j,s}, ζ_k^{l,r}].
    fn bracket_rhs<F: Field>(
        &self,
        z: &BTreeMap<(usize, usize, usize), Mat<F>>,
        n: usize,
        (i, j, s): (usize, usize, usize),
        (k, l, r): (usize, usize, usize),
    ) -> Mat<F> {
        let p = self.lambda.parts();
        let ip = |a: usize| self.inv.partner(a);
        let get = |a: usize, b: usize, t: i64| -> Option<&Mat<F>> {
            if t < 0 {
                None
            } else {
                z.get(&(a, b, t as usize))
            }
        };
        let si = (r + s) as i64 - (p[i] as i64 - 1);
        let sj = (r + s) as i64 - (p[j] as i64 - 1);
        let mut out: Mat<F> = Mat::zero(n);
        let mut acc = |m: Option<&Mat<F>>, c: i64| {
            if let Some(m) = m {
                if c == 1 {
                    out = out.add(m);
                } else {
                    out = out.sub(m);
                }
            }
        };
        if i == l {
            acc(get(k, j, si), 1);
        }
        if j == k {
            acc(get(i, l, sj), -1);
        }
        let e = self.sign(k, l, r);
        if k == ip(i) {
            acc(get(ip(l), j, si), e);
        }
        if j == ip(l) {
            acc(get(i, ip(k), sj), -e);
        }
        out
    }

    fn check_identities<F: Field>(
        &self,
        z: &BTreeMap<(usize, usize, usize), Mat<F>>,
        e: &Mat<F>,
        n: usize,
    ) -> Result<(usize, usize)> {
        let mut rel = 0;
        for (&(i, j, s), m) in z {
            if !e.bracket(m).is_zero() {
                return Err(Error::Verification(format!(
                    "zeta_{}^{{{},{}}} does not commute with e",
                    i + 1,
                    j + 1,
                    s
                )));
            }
            let other = &z[&(self.inv.partner(j), self.inv.partner(i), s)];
            let sg = self.sign(i, j, s);
            let want = if sg == 1 {
                other.clone()
            } else {
                Mat::zero(n).sub(other)
            };
            if *m != want {
                return Err(Error::Verification(format!(
                    "relation fails at (i,j,s) = ({},{},{})",
                    i + 1,
                    j + 1,
                    s
                )));
            }
            rel += 1;
        }
        let mut br = 0;
        for (&a, ma) in z {
            for (&b, mb) in z {
                let lhs = ma.bracket(mb);
                let rhs = self.bracket_rhs(z, n, a, b);
                if lhs != rhs {
                    return Err(Error::Verification(format!(
                        "bracket law fails for ({},{},{}) and ({},{},{}): lhs {:?} rhs {:?}",
                        a.0 + 1,
                        a.1 + 1,
                        a.2,
                        b.0 + 1,
                        b.1 + 1,
                        b.2,
                        lhs.nonzeros().collect::<Vec<_>>(),
                        rhs.nonzeros().collect::<Vec<_>>()
                    )));
                }
                br += 1;
            }
        }
        Ok((rel, br))
    }

    /// Verify relations, the bracket law, degrees, and that the family spans
    /// g^e with exactly the predicted number of independent elements.
    pub fn verify(&self, rep: &NilpotentRep) -> Result<ZetaReport> {
        let n = rep.n();
        let ek = mat_k(&rep.e);
        let hk = mat_k(&rep.h());
        let (rel, br) = self.check_identities(&self.zeta, &ek, n)?;
        for (&(i, j, s), m) in &self.zeta {
            let d = zeta_degree(&self.lambda, i, j, s);
            if hk.bracket(m) != m.scale(&K::from_int(d as i64, &())) {
                return Err(Error::Verification(format!(
                    "zeta ({},{},{}) is not of degree {d}",
                    i + 1,
                    j + 1,
                    s
                )));
            }
            if rep.g.sigma(m) != *m {
                return Err(Error::Verification("zeta is not in g".into()));
            }
        }
        // classes under (i,j,s) ~ (j',i',s)
        let mut seen = BTreeSet::new();
        let mut reps = Vec::new();
        let mut forced = 0;
        for &(i, j, s) in self.zeta.keys() {
            let o = (self.inv.partner(j), self.inv.partner(i), s);
            if seen.contains(&o) {
                continue;
            }
            seen.insert((i, j, s));
            if o == (i, j, s) && self.sign(i, j, s) == -1 {
                forced += 1;
                if !self.zeta[&(i, j, s)].is_zero() {
                    return Err(Error::Verification("forced zero is nonzero".into()));
                }
                continue;
            }
            reps.push((i, j, s));
        }
        let flat: Vec<SVec<K>> = reps.iter().map(|k| self.zeta[k].flatten()).collect();
        let rk = rank(&flat, &());
        let dim_ge = centralizer_dim_formula(&self.lambda, self.eps);
        let kernel_dim = graded_centralizer::<Q>(rep, &()).dim();
        if rk != reps.len() || rk != dim_ge || kernel_dim != dim_ge {
            return Err(Error::Verification(format!(
                "zeta count {} rank {rk} dim g^e {dim_ge} kernel {kernel_dim}",
                reps.len()
            )));
        }
        Ok(ZetaReport {
            indices: self.zeta.len(),
            classes: seen.len(),
            forced_zero: forced,
            rank: rk,
            dim_ge,
            relations_checked: rel,
            brackets_checked: br,
            uses_extension: self.uses_extension,
        })
    }

    /// Reduce the family mod p into F_p[ζ]/(ζ⁴+1) and re-check the
    /// relations and bracket law.
    pub fn verify_mod_p(&self, rep: &NilpotentRep, p: u64) -> Result<()> {
        let red = |m: &Mat<K>| -> Result<Mat<Cyc8<Fp>>> {
            let mut out = Mat::zero(m.n);
            for (i, j, v) in m.nonzeros() {
                let c: Option<Vec<Fp>> = v.c.iter().map(|x| q_to_fp(x, p)).collect();
                let c =
                    c.ok_or_else(|| Error::Verification(format!("denominator divisible by {p}")))?;
                let x = Cyc8 {
                    c: [c[0], c[1], c[2], c[3]],
                };
                if !x.vanishes() {
                    out.add_entry(i, j, &x);
                }
            }
            Ok(out)
        };
        let mut z = BTreeMap::new();
        for (k, m) in &self.zeta {
            z.insert(*k, red(m)?);
        }
        let e = rep.e.map(|x| Cyc8::<Fp>::from_q(x, &p));
        self.check_identities(&z, &e, rep.n())?;
        Ok(())
    }

    /// The elements ζ_i^{i+1, λ_{i+1}-1} with i = i', i+1 = (i+1)' and
    /// λ_{i-1} ≠ λ_i ≥ λ_{i+1} ≠ λ_{i+2}, as 0-based triples.
    pub fn abelianisation_complement(&self) -> Vec<(usize, usize, usize)> {
        complement_indices(&self.lambda, &self.inv)
    }
}

pub fn complement_indices(lambda: &Partition, inv: &Involution) -> Vec<(usize, usize, usize)> {
    let p = lambda.parts();
    let n = p.len();
    let at = |k: isize| -> usize {
        if k < 0 {
            usize::MAX
        } else {
            p.get(k as usize).copied().unwrap_or(0)
        }
    };
    let mut out = Vec::new();
    for i in 0..n.saturating_sub(1) {
        let ii = i as isize;
        if inv.is_fixed(i)
            && inv.is_fixed(i + 1)
            && at(ii - 1) != at(ii)
            && at(ii + 1) != at(ii + 2)
        {
            out.push((i, i + 1, p[i + 1] - 1));
        }
    }
    out
}

/// Check that the displayed complement spans g^e modulo [g^e, g^e].
pub fn check_complement(rep: &NilpotentRep, zs: &ZetaSystem) -> Result<usize> {
    let basis = compute_centralizer(rep)?;
    let der = derived_subalgebra(&rep.g, &basis, &());
    let comp = zs.abelianisation_complement();
    if comp.len() != der.codim {
        return Err(Error::Verification(format!(
            "complement has {} elements but codim [g^e,g^e] = {}",
            comp.len(),
            der.codim
        )));
    }
    let mut flat: Vec<SVec<K>> = Vec::new();
    for vs in der.pieces.values() {
        for v in vs {
            flat.push(mat_k(&rep.g.element(v, &())).flatten());
        }
    }
    for c in &comp {
        flat.push(zs.zeta[c].flatten());
    }
    if rank(&flat, &()) != basis.dim() {
        return Err(Error::Verification(
            "complement does not span g^e mod [g^e,g^e]".into(),
        ));
    }
    Ok(comp.len())
}

/// Whether λ is almost rigid and the per-degree identity holds.
pub fn almost_rigid_generation(rep: &NilpotentRep) -> Result<Option<GenerationReport>> {
    if !is_almost_rigid(&rep.lambda) {
        return Ok(None);
    }
    let basis = compute_centralizer(rep)?;
    Ok(Some(check_generation(&rep.g, &basis, &())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbits::build_nilpotent;

    fn rep(s: &str, e: Epsilon) -> NilpotentRep {
        build_nilpotent(&Partition::parse(s).unwrap(), e).unwrap()
    }

    #[test]
    fn centraliser_dims() {
        assert_eq!(
            compute_centralizer(&rep("2,1,1", Epsilon::Minus))
                .unwrap()
                .dim(),
            6
        );
        assert_eq!(
            compute_centralizer(&rep("3,3,1,1", Epsilon::Plus))
                .unwrap()
                .dim(),
            10
        );
        assert_eq!(
            compute_centralizer(&rep("1,1,1,1", Epsilon::Minus))
                .unwrap()
                .dim(),
            10
        );
    }

    #[test]
    fn derived_codims() {
        let r = rep("2,1,1", Epsilon::Minus);
        let b = compute_centralizer(&r).unwrap();
        assert_eq!(derived_subalgebra(&r.g, &b, &()).codim, 0);
        let r = rep("2,2", Epsilon::Minus);
        let b = compute_centralizer(&r).unwrap();
        let d = derived_subalgebra(&r.g, &b, &());
        // g^e = so_2 ⊕ Sym²: the rotation and e both survive in the abelianisation
        assert_eq!(d.codim, 2);
        let by = d.codim_by_degree(&b);
        assert_eq!(by.get(&0), Some(&1));
        assert_eq!(by.get(&2), Some(&1));
    }

    #[test]
    fn regular_not_generated() {
        let r = rep("4", Epsilon::Minus);
        let b = compute_centralizer(&r).unwrap();
        assert!(!check_generation(&r.g, &b, &()).generated_by_01);
    }

    #[test]
    fn sign_example() {
        let l = Partition::parse("2,1,1").unwrap();
        let inv = pairing_involution(&l, Epsilon::Minus).unwrap();
        assert_eq!(zeta_sign(&l, &inv, 0, 0, 1), -1);
    }

    #[test]
    fn zeta_small() {
        for (s, e) in [
            ("2,1,1", Epsilon::Minus),
            ("3,1", Epsilon::Plus),
            ("2,2", Epsilon::Minus),
        ] {
            let r = rep(s, e);
            let z = build_zeta_system(&r).unwrap();
            z.verify(&r).unwrap_or_else(|err| panic!("{s}: {err}"));
        }
    }
}

#[cfg(test)]
mod sweep {
    use super::*;
    use crate::orbits::build_nilpotent;
    use crate::partitions::{admissible_partitions, is_rigid};

    fn each(max_n: usize, mut f: impl FnMut(&Partition, Epsilon)) {
        for n in 2..=max_n {
            for eps in [Epsilon::Plus, Epsilon::Minus] {
                if eps == Epsilon::Minus && n % 2 == 1 {
                    continue;
                }
                for l in admissible_partitions(n, eps) {
                    f(&l, eps);
                }
            }
        }
    }

    #[test]
    fn zeta_system_small_n() {
        each(6, |l, eps| {
            let r = build_nilpotent(l, eps).unwrap();
            let z = build_zeta_system(&r).unwrap_or_else(|e| panic!("{l} {eps}: {e}"));
            z.verify(&r).unwrap_or_else(|e| panic!("{l} {eps}: {e}"));
            z.verify_mod_p(&r, 3)
                .unwrap_or_else(|e| panic!("{l} {eps}: {e}"));
            if is_almost_rigid(l) {
                check_complement(&r, &z).unwrap_or_else(|e| panic!("{l} {eps}: {e}"));
            }
        });
    }

    #[test]
    fn generation_and_perfectness_small_n() {
        each(8, |l, eps| {
            let r = build_nilpotent(l, eps).unwrap();
            if let Some(g) = almost_rigid_generation(&r).unwrap() {
                assert!(g.generated_by_01, "{l} {eps}");
                assert!(g.per_degree.iter().all(|(_, a, b)| a == b), "{l} {eps}");
            }
            if is_rigid(l, eps).unwrap() && !r.g.is_type_a_like() {
                let b = compute_centralizer(&r).unwrap();
                assert_eq!(derived_subalgebra(&r.g, &b, &()).codim, 0, "{l} {eps}");
                let bp = graded_centralizer::<Fp>(&r, &3);
                assert_eq!(bp.dim(), b.dim());
                assert_eq!(derived_subalgebra(&r.g, &bp, &3).codim, 0, "{l} {eps}");
            }
        });
    }
}
