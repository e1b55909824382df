//! Nilpotent representatives read off Dynkin pyramids, their gradings and
//! sl2-triples, orbit dimensions, and a sampling oracle for
//! Lusztig–Spaltenstein induction.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{algebra, label_at, pos, ClassicalAlgebra};
use crate::error::{Error, Result};
use crate::exact::linalg::{kernel, rank, solve, SVec};
use crate::exact::{q, Q};
use crate::matrix::{jordan_type, Mat};
use crate::partitions::{
    admissible_partitions, all_partitions, build_pyramid, is_very_even, validate_partition,
    DynkinPyramid, Epsilon, Partition,
};

/// A nilpotent e ∈ g built from the pyramid of λ.
#[derive(Clone, Debug)]
pub struct NilpotentRep {
    pub lambda: Partition,
    pub eps: Epsilon,
    pub g: Arc<ClassicalAlgebra>,
    pub pyramid: DynkinPyramid,
    pub e: Mat<Q>,
    /// e in Chevalley coordinates.
    pub e_coords: SVec<Q>,
    /// Matrix units (row label, col label, coefficient) making up e.
    pub terms: Vec<(i32, i32, i64)>,
    /// Only the first of the two orbits is represented.
    pub very_even: bool,
    /// Dynkin degree of each Chevalley basis element.
    pub degrees: Vec<i32>,
}

impl NilpotentRep {
    pub fn n(&self) -> usize {
        self.g.n
    }

    /// col(label) for every position 0..N.
    pub fn cols(&self) -> Vec<i32> {
        (0..self.n())
            .map(|p| self.pyramid.col(label_at(self.n(), p)))
            .collect()
    }

    /// The cocharacter differential h = diag(col).
    pub fn h(&self) -> Mat<Q> {
        let mut m = Mat::zero(self.n());
        for (p, c) in self.cols().into_iter().enumerate() {
            if c != 0 {
                m.add_entry(p, p, &q(c as i64));
            }
        }
        m
    }

    pub fn h_coords(&self) -> SVec<Q> {
        self.g.coords(&self.h())
    }

    pub fn degree(&self, b: usize) -> i32 {
        self.degrees[b]
    }

    /// Basis indices of g(i).
    pub fn piece(&self, i: i32) -> Vec<usize> {
        (0..self.g.dim())
            .filter(|&b| self.degrees[b] == i)
            .collect()
    }

    pub fn ad_e(&self, x: &SVec<Q>) -> SVec<Q> {
        self.g.bracket(&self.e_coords, x, &())
    }
}

/// Dynkin degree col(i) - col(j) of every Chevalley element with key E_ij.
fn basis_degrees(g: &ClassicalAlgebra, pyr: &DynkinPyramid) -> Vec<i32> {
    g.basis
        .iter()
        .map(|b| {
            let (i, j, _) = b.terms[0];
            pyr.col(i) - pyr.col(j)
        })
        .collect()
}

/// The matrix units entering e for a given pyramid, with Chevalley signs.
pub fn pyramid_terms(
    g: &ClassicalAlgebra,
    pyr: &DynkinPyramid,
    eps: Epsilon,
) -> Result<Vec<(i32, i32, i64)>> {
    let n = g.n;
    let ls: Vec<i32> = (0..n).map(|p| label_at(n, p)).collect();
    let upper_skew = |r: i32| r >= 0 && pyr.is_skew(r);
    let mut out = Vec::new();
    for &i in &ls {
        for &j in &ls {
            let (ci, cj, ri, rj) = (pyr.col(i), pyr.col(j), pyr.row(i), pyr.row(j));
            let hit = (ci == cj + 2 && ri == rj)
                || match eps {
                    Epsilon::Plus => {
                        ri == -rj
                            && upper_skew(ri)
                            && ri != 0
                            && ((ci == 2 && cj == 0) || (ci == 0 && cj == -2))
                    }
                    Epsilon::Minus => ri == -rj && upper_skew(ri) && ci == 1 && cj == -1,
                };
            if !hit {
                continue;
            }
            let key = (pos(n, i), pos(n, j));
            let coef = g
                .basis
                .iter()
                .filter(|b| !b.is_cartan())
                .find_map(|b| {
                    b.terms
                        .iter()
                        .find(|t| (pos(n, t.0), pos(n, t.1)) == key)
                        .map(|t| t.2)
                })
                .ok_or_else(|| {
                    Error::Verification(format!("e_({i},{j}) is not a root-vector entry"))
                })?;
            out.push((i, j, coef));
        }
    }
    Ok(out)
}

/// Build the pyramid representative and verify it: e ∈ g, Jordan type λ,
/// Dynkin degree 2.
pub fn build_nilpotent(lambda: &Partition, eps: Epsilon) -> Result<NilpotentRep> {
    let n = lambda.total();
    if !validate_partition(lambda, eps) {
        return Err(Error::NotAdmissible {
            partition: lambda.to_string(),
            eps: eps.sign() as i8,
        });
    }
    let g = algebra(n, eps)?;
    let pyramid = build_pyramid(lambda, eps)?;
    let terms = pyramid_terms(&g, &pyramid, eps)?;
    let mut e = Mat::zero(n);
    for &(i, j, c) in &terms {
        e.add_entry(pos(n, i), pos(n, j), &q(c));
    }
    if !g.contains(&e) {
        return Err(Error::Verification(format!("e for {lambda} is not in g")));
    }
    let e_coords = g.coords_checked(&e)?;
    let jt = jordan_type(&e, &()).ok_or_else(|| Error::Verification("e not nilpotent".into()))?;
    if jt != lambda.parts() {
        return Err(Error::Verification(format!(
            "e for {lambda} has Jordan type {jt:?}"
        )));
    }
    let degrees = basis_degrees(&g, &pyramid);
    if e_coords.iter().any(|(b, _)| degrees[*b] != 2) {
        return Err(Error::Verification(format!(
            "e for {lambda} is not in g(2)"
        )));
    }
    Ok(NilpotentRep {
        lambda: lambda.clone(),
        eps,
        very_even: is_very_even(lambda, eps),
        g,
        pyramid,
        e,
        e_coords,
        terms,
        degrees,
    })
}

/// Graded pieces of g for the Dynkin cocharacter.
#[derive(Clone, Debug, Serialize)]
pub struct DynkinGrading {
    pub pieces: BTreeMap<i32, Vec<usize>>,
}

impl DynkinGrading {
    pub fn dims(&self) -> BTreeMap<i32, usize> {
        self.pieces.iter().map(|(k, v)| (*k, v.len())).collect()
    }
    pub fn dim(&self, i: i32) -> usize {
        self.pieces.get(&i).map_or(0, |v| v.len())
    }
}

/// Grading with checks: [h, x] = deg·x on the basis, dim g(i) = dim g(-i),
/// and [g(i), g(j)] ⊆ g(i+j) on basis pairs.
pub fn dynkin_grading(rep: &NilpotentRep) -> Result<DynkinGrading> {
    let g = &rep.g;
    let h = rep.h_coords();
    let mut pieces: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
    for b in 0..g.dim() {
        let d = rep.degrees[b];
        let hx = g.bracket(&h, &vec![(b, q(1))], &());
        let want: SVec<Q> = if d == 0 {
            Vec::new()
        } else {
            vec![(b, q(d as i64))]
        };
        if hx != want {
            return Err(Error::Verification(format!(
                "{} is not an h-eigenvector of weight {d}",
                g.basis[b].name
            )));
        }
        pieces.entry(d).or_default().push(b);
    }
    for (k, v) in &pieces {
        let other = pieces.get(&-k).map_or(0, |w| w.len());
        if other != v.len() {
            return Err(Error::Verification(format!("dim g({k}) != dim g({})", -k)));
        }
    }
    for a in 0..g.dim() {
        for b in 0..g.dim() {
            let da = rep.degrees[a] + rep.degrees[b];
            if g.structure(a, b).iter().any(|(c, _)| rep.degrees[*c] != da) {
                return Err(Error::Verification(
                    "bracket does not respect grading".into(),
                ));
            }
        }
    }
    Ok(DynkinGrading { pieces })
}

/// Matrix of ad e restricted to g(i) → g(i+2), as rows indexed by g(i+2).
pub fn ad_e_block(rep: &NilpotentRep, i: i32) -> (Vec<usize>, Vec<usize>, Vec<SVec<Q>>) {
    let src = rep.piece(i);
    let dst = rep.piece(i + 2);
    let idx: BTreeMap<usize, usize> = dst.iter().enumerate().map(|(k, b)| (*b, k)).collect();
    let mut rows: Vec<SVec<Q>> = vec![Vec::new(); dst.len()];
    for (col, &b) in src.iter().enumerate() {
        for (c, v) in rep.ad_e(&vec![(b, q(1))]) {
            rows[idx[&c]].push((col, v));
        }
    }
    (src, dst, rows)
}

#[derive(Clone, Debug)]
pub struct Sl2Triple {
    pub e: Mat<Q>,
    pub h: Mat<Q>,
    pub f: Mat<Q>,
}

/// Solve [e, f] = h with f ∈ g(-2) and certify [e, g(0)] = g(2).
pub fn complete_sl2(rep: &NilpotentRep) -> Result<Sl2Triple> {
    let g = &rep.g;
    let h = rep.h_coords();
    let (src, _dst, _) = ad_e_block(rep, -2);
    // columns: ad e applied to g(-2) basis, in g(0) coordinates
    let cols: Vec<SVec<Q>> = src.iter().map(|&b| rep.ad_e(&vec![(b, q(1))])).collect();
    let f = if h.is_empty() {
        Vec::new()
    } else {
        let rows = crate::exact::linalg::transpose(&cols, g.dim());
        let sol = solve(&rows, src.len(), &h, &())
            .ok_or_else(|| Error::Verification(format!("no f for {}", rep.lambda)))?;
        sol.into_iter()
            .map(|(k, v)| (src[k], v))
            .collect::<SVec<Q>>()
    };
    let fm = g.element(&f, &());
    let hm = rep.h();
    let ef = rep.e.bracket(&fm);
    if ef != hm || hm.bracket(&rep.e) != rep.e.scale(&q(2)) || hm.bracket(&fm) != fm.scale(&q(-2)) {
        return Err(Error::Verification(format!(
            "sl2 relations fail for {}",
            rep.lambda
        )));
    }
    let (_, dst, rows) = ad_e_block(rep, 0);
    if rank(&rows, &()) != dst.len() {
        return Err(Error::Verification(format!(
            "[e, g(0)] != g(2) for {}",
            rep.lambda
        )));
    }
    Ok(Sl2Triple {
        e: rep.e.clone(),
        h: hm,
        f: fm,
    })
}

/// Kernel of ad e, computed degree by degree.
pub fn centralizer_by_degree(rep: &NilpotentRep) -> BTreeMap<i32, Vec<SVec<Q>>> {
    let degs: std::collections::BTreeSet<i32> = rep.degrees.iter().copied().collect();
    let mut out = BTreeMap::new();
    for d in degs {
        let (src, _, rows) = ad_e_block(rep, d);
        let ker = kernel(&rows, src.len(), &());
        let ker: Vec<SVec<Q>> = ker
            .into_iter()
            .map(|v| v.into_iter().map(|(k, x)| (src[k], x)).collect())
            .collect();
        if !ker.is_empty() {
            out.insert(d, ker);
        }
    }
    out
}

/// ½(Σ λ'_i² ± #odd parts), + for sp and - for so.
pub fn centralizer_dim_formula(lambda: &Partition, eps: Epsilon) -> usize {
    let s: usize = lambda.conjugate().iter().map(|c| c * c).sum();
    let o = lambda.odd_parts();
    match eps {
        Epsilon::Minus => (s + o) / 2,
        Epsilon::Plus => (s - o) / 2,
    }
}

pub fn algebra_dim(n: usize, eps: Epsilon) -> usize {
    match eps {
        Epsilon::Plus => n * n.saturating_sub(1) / 2,
        Epsilon::Minus => n * (n + 1) / 2,
    }
}

/// (dim O, d(χ)) with dim g^e from the kernel of ad e.
pub fn orbit_dimension(lambda: &Partition, eps: Epsilon) -> Result<(usize, usize)> {
    let rep = build_nilpotent(lambda, eps)?;
    let c: usize = centralizer_by_degree(&rep).values().map(|v| v.len()).sum();
    let dim = rep.g.dim() - c;
    if !dim.is_multiple_of(2) {
        return Err(Error::Verification(format!("odd orbit dimension {dim}")));
    }
    Ok((dim, dim / 2))
}

/// Levi subalgebra gl_{a_1} × … × gl_{a_k} × g_m together with an orbit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InductionDatum {
    pub n: usize,
    pub eps: Epsilon,
    pub blocks: Vec<usize>,
    pub block_orbits: Vec<Partition>,
    /// Orbit in the residual classical factor of rank-defining size m.
    pub residual_orbit: Partition,
}

impl InductionDatum {
    pub fn residual(&self) -> usize {
        self.n - 2 * self.blocks.iter().sum::<usize>()
    }

    /// The zero orbit in the Levi with the given gl blocks.
    pub fn zero_orbit(n: usize, eps: Epsilon, blocks: Vec<usize>) -> Result<Self> {
        let m = n
            .checked_sub(2 * blocks.iter().sum::<usize>())
            .ok_or_else(|| Error::Levi(format!("blocks {blocks:?} too large for N = {n}")))?;
        let block_orbits = blocks
            .iter()
            .map(|&a| Partition::new(vec![1; a]))
            .collect::<Result<Vec<_>>>()?;
        Ok(InductionDatum {
            n,
            eps,
            blocks,
            block_orbits,
            residual_orbit: Partition::new(vec![1; m])?,
        })
    }

    pub fn validate(&self) -> Result<()> {
        if self.blocks.contains(&0) {
            return Err(Error::Levi("empty gl block".into()));
        }
        if 2 * self.blocks.iter().sum::<usize>() > self.n {
            return Err(Error::Levi(format!(
                "blocks {:?} exceed N = {}",
                self.blocks, self.n
            )));
        }
        if self.eps == Epsilon::Minus && self.n % 2 == 1 {
            return Err(Error::Levi("sp_N needs N even".into()));
        }
        if self.block_orbits.len() != self.blocks.len()
            || self
                .blocks
                .iter()
                .zip(&self.block_orbits)
                .any(|(a, o)| o.total() != *a)
        {
            return Err(Error::Levi("gl orbit sizes do not match the blocks".into()));
        }
        let m = self.residual();
        if self.residual_orbit.total() != m || !validate_partition(&self.residual_orbit, self.eps) {
            return Err(Error::Levi(format!(
                "residual orbit {} invalid for size {m}",
                self.residual_orbit
            )));
        }
        Ok(())
    }

    /// Parabolic degree of each label: blocks get decreasing positive
    /// weights, the residual labels weight 0.
    fn label_weight(&self) -> impl Fn(i32) -> i64 + '_ {
        let k = self.blocks.len() as i64;
        let mut owner = Vec::new();
        for (t, &a) in self.blocks.iter().enumerate() {
            owner.extend(std::iter::repeat_n(t as i64, a));
        }
        move |l: i32| {
            let a = l.unsigned_abs() as usize;
            let w = if a == 0 || a > owner.len() {
                0
            } else {
                k - owner[a - 1]
            };
            if l < 0 {
                -w
            } else {
                w
            }
        }
    }

    /// Parabolic degree of each Chevalley basis element.
    pub fn degrees(&self, g: &ClassicalAlgebra) -> Vec<i64> {
        let w = self.label_weight();
        g.basis
            .iter()
            .map(|b| w(b.terms[0].0) - w(b.terms[0].1))
            .collect()
    }

    /// dim n of the nilradical.
    pub fn nilradical_dim(&self) -> Result<usize> {
        let g = algebra(self.n, self.eps)?;
        Ok(self.degrees(&g).iter().filter(|d| **d > 0).count())
    }

    /// Representative of O̲ in the Levi, as matrix units (row, col, coef).
    pub fn levi_terms(&self) -> Result<Vec<(i32, i32, i64)>> {
        self.validate()?;
        let mut terms = Vec::new();
        let mut start = 0i32;
        for (a, o) in self.blocks.iter().zip(&self.block_orbits) {
            let mut s = start;
            for &part in o.parts() {
                for t in 1..part as i32 {
                    let (i, j) = (s + t, s + t + 1);
                    terms.push((i, j, 1));
                    terms.push((-j, -i, -1));
                }
                s += part as i32;
            }
            start += *a as i32;
        }
        let m = self.residual();
        if m >= 2 && !self.residual_orbit.is_zero_orbit() {
            let rep = build_nilpotent(&self.residual_orbit, self.eps)?;
            let shift = |l: i32| {
                if l > 0 {
                    l + start
                } else if l < 0 {
                    l - start
                } else {
                    0
                }
            };
            for &(i, j, c) in &rep.terms {
                terms.push((shift(i), shift(j), c));
            }
        }
        Ok(terms)
    }

    /// dim of O̲ inside the Levi.
    pub fn levi_orbit_dim(&self) -> usize {
        let mut d = 0;
        for (a, o) in self.blocks.iter().zip(&self.block_orbits) {
            let c: usize = o.conjugate().iter().map(|x| x * x).sum();
            d += a * a - c;
        }
        let m = self.residual();
        if m > 0 {
            d += algebra_dim(m, self.eps) - centralizer_dim_formula(&self.residual_orbit, self.eps);
        }
        d
    }
}

/// Outcome of sampling O̲ + n.
#[derive(Clone, Debug, Serialize)]
pub struct InductionResult {
    pub partition: Partition,
    pub samples: usize,
    pub levi_orbit_dim: usize,
    pub nilradical_dim: usize,
    pub induced_dim: usize,
}

/// Jordan type of a generic element of O̲ + n. Coefficients on n are drawn
/// from {1..7} with a seeded generator; at least five samples are taken and
/// the answer must satisfy dim = dim O̲ + 2 dim n.
pub fn induce_orbit(datum: &InductionDatum, seed: u64) -> Result<InductionResult> {
    datum.validate()?;
    let n = datum.n;
    let g = algebra(n, datum.eps)?;
    let degs = datum.degrees(&g);
    let nil: Vec<usize> = (0..g.dim()).filter(|&b| degs[b] > 0).collect();
    let mut base = Mat::zero(n);
    for (i, j, c) in datum.levi_terms()? {
        base.add_entry(pos(n, i), pos(n, j), &q(c));
    }
    let levi_dim = datum.levi_orbit_dim();
    let want = levi_dim + 2 * nil.len();
    let mut best: Option<Vec<usize>> = None;
    let mut certified = 0usize;
    let mut samples = 0usize;
    for s in 0..40u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(1_000_003).wrapping_add(s));
        let coeffs: SVec<Q> = nil.iter().map(|&b| (b, q(rng.gen_range(1..=7)))).collect();
        let x = base.add(&g.element(&coeffs, &()));
        let jt = jordan_type(&x, &()).ok_or_else(|| Error::Verification("not nilpotent".into()))?;
        samples += 1;
        let p = Partition::new(jt)?;
        let better = match &best {
            None => true,
            Some(b) => dominates(p.parts(), b) && p.parts() != b.as_slice(),
        };
        if better {
            best = Some(p.parts().to_vec());
            certified = 0;
        }
        if best.as_deref() == Some(p.parts()) {
            certified += 1;
        }
        if samples >= 5 && certified >= 3 {
            let bp = Partition::new(best.clone().unwrap())?;
            let dim = algebra_dim(n, datum.eps) - centralizer_dim_formula(&bp, datum.eps);
            if dim == want {
                return Ok(InductionResult {
                    partition: bp,
                    samples,
                    levi_orbit_dim: levi_dim,
                    nilradical_dim: nil.len(),
                    induced_dim: dim,
                });
            }
        }
    }
    Err(Error::Verification(format!(
        "sampling did not reach the induced dimension {want} for {:?}",
        datum
    )))
}

/// Dominance order on partitions of the same size.
pub fn dominates(a: &[usize], b: &[usize]) -> bool {
    let (mut sa, mut sb) = (0usize, 0usize);
    for k in 0..a.len().max(b.len()) {
        sa += a.get(k).copied().unwrap_or(0);
        sb += b.get(k).copied().unwrap_or(0);
        if sa < sb {
            return false;
        }
    }
    true
}

/// All proper Levi data: multisets of gl blocks (non-increasing) with at least
/// one block, and every orbit choice in each factor.
pub fn levi_data(n: usize, eps: Epsilon) -> Vec<InductionDatum> {
    fn shapes(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        for a in (1..=max.min(rem)).rev() {
            cur.push(a);
            shapes(rem - a, a, cur, out);
            cur.pop();
        }
    }
    let mut sh = Vec::new();
    shapes(n / 2, n / 2, &mut Vec::new(), &mut sh);
    let mut out = Vec::new();
    for blocks in sh {
        let m = n - 2 * blocks.iter().sum::<usize>();
        let gl_choices: Vec<Vec<Partition>> = blocks.iter().map(|&a| all_partitions(a)).collect();
        let res_choices = if m == 0 {
            vec![Partition::new(vec![]).unwrap()]
        } else {
            admissible_partitions(m, eps)
        };
        let mut combos: Vec<Vec<Partition>> = vec![Vec::new()];
        for ch in &gl_choices {
            let mut next = Vec::new();
            for c in &combos {
                for p in ch {
                    let mut c2 = c.clone();
                    c2.push(p.clone());
                    next.push(c2);
                }
            }
            combos = next;
        }
        for c in &combos {
            for r in &res_choices {
                out.push(InductionDatum {
                    n,
                    eps,
                    blocks: blocks.clone(),
                    block_orbits: c.clone(),
                    residual_orbit: r.clone(),
                });
            }
        }
    }
    out
}

/// Largest N for which the exhaustive rigidity oracle runs.
pub const RIGIDITY_ORACLE_MAX_N: usize = 8;

/// Whether λ cannot be induced from any proper Levi. Data whose induced
/// dimension cannot match are skipped by the dimension identity before
/// sampling. Returns the inducing datum when one exists.
pub fn rigidity_witness(lambda: &Partition, eps: Epsilon) -> Result<Option<InductionDatum>> {
    let n = lambda.total();
    if n > RIGIDITY_ORACLE_MAX_N {
        return Err(Error::SizeGuard(format!(
            "rigidity oracle limited to N <= {RIGIDITY_ORACLE_MAX_N}"
        )));
    }
    if !validate_partition(lambda, eps) {
        return Err(Error::NotAdmissible {
            partition: lambda.to_string(),
            eps: eps.sign() as i8,
        });
    }
    let target = algebra_dim(n, eps) - centralizer_dim_formula(lambda, eps);
    let g = algebra(n, eps)?;
    let data = levi_data(n, eps);
    let hits: Vec<Result<Option<InductionDatum>>> = data
        .par_iter()
        .map(|d| {
            let nd = d.degrees(&g).iter().filter(|x| **x > 0).count();
            // gl_1 = so_2 has an empty nilradical: not a proper parabolic
            if nd == 0 {
                return Ok(None);
            }
            if d.levi_orbit_dim() + 2 * nd != target {
                return Ok(None);
            }
            let r = induce_orbit(d, 7)?;
            Ok((r.partition == *lambda).then(|| d.clone()))
        })
        .collect();
    for h in hits {
        if let Some(d) = h? {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

pub fn rigidity_oracle(lambda: &Partition, eps: Epsilon) -> Result<bool> {
    Ok(rigidity_witness(lambda, eps)?.is_none())
}

/// Basis of g^e as a flat list with degrees.
pub fn centralizer_flat(rep: &NilpotentRep) -> (Vec<SVec<Q>>, Vec<i32>) {
    let mut v = Vec::new();
    let mut d = Vec::new();
    for (k, vs) in centralizer_by_degree(rep) {
        for x in vs {
            v.push(x);
            d.push(k);
        }
    }
    (v, d)
}

/// Check that a vector is zero.
pub fn is_zero_vec(v: &SVec<Q>) -> bool {
    v.iter().all(|(_, x)| x.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        Partition::parse(s).unwrap()
    }

    #[test]
    fn printed_representative() {
        let rep = build_nilpotent(&p("5,2,2,1"), Epsilon::Plus).unwrap();
        let mut t = rep.terms.clone();
        t.sort();
        let mut want = vec![
            (5, 4, 1),
            (-4, -5, -1),
            (3, 2, 1),
            (-2, -3, -1),
            (2, 1, 1),
            (-1, -2, -1),
            (1, -2, 1),
            (2, -1, -1),
        ];
        want.sort();
        assert_eq!(t, want);
    }

    #[test]
    fn sp4_grading_dims() {
        let rep = build_nilpotent(&p("2,1,1"), Epsilon::Minus).unwrap();
        let gr = dynkin_grading(&rep).unwrap();
        let dims: Vec<usize> = (-2..=2).map(|i| gr.dim(i)).collect();
        assert_eq!(dims, vec![1, 2, 4, 2, 1]);
        complete_sl2(&rep).unwrap();
    }

    #[test]
    fn sp4_orbit_dims() {
        assert_eq!(
            orbit_dimension(&p("2,1,1"), Epsilon::Minus).unwrap(),
            (4, 2)
        );
        assert_eq!(orbit_dimension(&p("4"), Epsilon::Minus).unwrap(), (8, 4));
        assert_eq!(
            orbit_dimension(&p("1,1,1,1"), Epsilon::Minus).unwrap(),
            (0, 0)
        );
    }

    #[test]
    fn sp4_induction() {
        let borel = InductionDatum::zero_orbit(4, Epsilon::Minus, vec![1, 1]).unwrap();
        let r = induce_orbit(&borel, 1).unwrap();
        assert_eq!(r.partition, p("4"));
        assert_eq!(r.induced_dim, 8);
        let siegel = InductionDatum::zero_orbit(4, Epsilon::Minus, vec![2]).unwrap();
        let r = induce_orbit(&siegel, 1).unwrap();
        assert_eq!(r.partition, p("2,2"));
        assert_eq!(r.nilradical_dim, 3);
    }
}

#[cfg(test)]
mod sweep {
    use super::*;
    use crate::partitions::is_rigid;

    fn cases(max_n: usize) -> Vec<(Partition, Epsilon)> {
        let mut out = Vec::new();
        for n in 2..=max_n {
            for eps in [Epsilon::Plus, Epsilon::Minus] {
                if eps == Epsilon::Minus && n % 2 == 1 {
                    continue;
                }
                out.extend(admissible_partitions(n, eps).into_iter().map(|l| (l, eps)));
            }
        }
        out
    }

    #[test]
    fn representatives_small_n() {
        for (l, eps) in cases(7) {
            let rep = build_nilpotent(&l, eps).unwrap_or_else(|e| panic!("{l} {eps}: {e}"));
            dynkin_grading(&rep).unwrap();
            complete_sl2(&rep).unwrap_or_else(|e| panic!("{l} {eps}: {e}"));
            let (v, d) = centralizer_flat(&rep);
            assert_eq!(v.len(), centralizer_dim_formula(&l, eps), "{l} {eps}");
            assert!(d.iter().all(|x| *x >= 0));
        }
    }

    #[test]
    fn rigidity_rule_matches_oracle_small_n() {
        // so_2 is a torus: its zero orbit is rigid for want of a proper parabolic
        for (l, eps) in cases(6)
            .into_iter()
            .filter(|(l, e)| (l.total(), *e) != (2, Epsilon::Plus))
        {
            assert_eq!(
                rigidity_oracle(&l, eps).unwrap(),
                is_rigid(&l, eps).unwrap(),
                "{l} {eps}"
            );
        }
    }
}
