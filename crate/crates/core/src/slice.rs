//! The skew form Ψ on g(-1), its Lagrangian splitting, the subalgebra m, a
//! graded transverse slice and the integral saturation checks over
//! R = ℤ[1/2].

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebra::{is_two_power_q, normalized_killing, BasisKind, NormalizedKilling};
use crate::centralizer::{graded_centralizer, CentralizerBasis};
use crate::error::{Error, Result};
use crate::exact::linalg::{det, inverse, rank, sv_axpy, Echelon, SVec};
use crate::exact::{fmt_q, in_r, is_two_power, q, smith_normal_form, SparseMatrix, Q};
use crate::orbits::{ad_e_block, NilpotentRep};

/// χ = κ(e, -) as a functional on Chevalley coordinates.
pub fn chi(rep: &NilpotentRep, kappa: &NormalizedKilling, x: &SVec<Q>) -> Q {
    kappa.eval(&rep.e_coords, x)
}

/// Ψ(x, y) = χ([x, y]) on g(-1).
#[derive(Clone, Debug, Serialize)]
pub struct SkewForm {
    pub basis: Vec<usize>,
    pub gram: Vec<Vec<String>>,
    pub det: String,
    #[serde(skip)]
    gram_q: Vec<Vec<Q>>,
}

impl SkewForm {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn gram(&self) -> &[Vec<Q>] {
        &self.gram_q
    }
}

pub fn psi(rep: &NilpotentRep, kappa: &NormalizedKilling, x: &SVec<Q>, y: &SVec<Q>) -> Q {
    chi(rep, kappa, &rep.g.bracket(x, y, &()))
}

pub fn build_psi(rep: &NilpotentRep) -> Result<SkewForm> {
    let kappa = normalized_killing(&rep.g)?;
    let basis = rep.piece(-1);
    let gram_q: Vec<Vec<Q>> = basis
        .iter()
        .map(|&a| {
            basis
                .iter()
                .map(|&b| psi(rep, &kappa, &vec![(a, q(1))], &vec![(b, q(1))]))
                .collect()
        })
        .collect();
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            if gram_q[i][j] != -gram_q[j][i].clone() {
                return Err(Error::Verification("Ψ is not skew".into()));
            }
        }
    }
    let d = if basis.is_empty() {
        q(1)
    } else {
        det(&gram_q, &())
    };
    if d.is_zero() {
        return Err(Error::Verification(format!(
            "Ψ degenerate for {}",
            rep.lambda
        )));
    }
    if !is_two_power_q(&d) {
        return Err(Error::Verification(format!(
            "det Ψ = {} is not a unit of R for {}",
            fmt_q(&d),
            rep.lambda
        )));
    }
    Ok(SkewForm {
        gram: gram_q
            .iter()
            .map(|r| r.iter().map(fmt_q).collect())
            .collect(),
        det: fmt_q(&d),
        basis,
        gram_q,
    })
}

/// Dual bases of the two isotropic halves of g(-1).
#[derive(Clone, Debug)]
pub struct LagrangianPair {
    /// z'_1..z'_s, spanning the positive-weight half.
    pub z_prime: Vec<SVec<Q>>,
    /// z_1..z_s, root vectors spanning the negative-weight half.
    pub z: Vec<SVec<Q>>,
    /// Generic element of the torus t_e used for the split.
    pub torus: SVec<Q>,
}

impl LagrangianPair {
    pub fn s(&self) -> usize {
        self.z.len()
    }
}

/// Cartan elements commuting with e.
pub fn torus_of_centralizer(rep: &NilpotentRep) -> Vec<SVec<Q>> {
    let g = &rep.g;
    let cartan: Vec<usize> = (0..g.rank).collect();
    let imgs: Vec<SVec<Q>> = cartan.iter().map(|&b| rep.ad_e(&vec![(b, q(1))])).collect();
    crate::exact::linalg::relations(&imgs, &())
}

fn root_weight(rep: &NilpotentRep, b: usize, t: &SVec<Q>) -> Q {
    match &rep.g.basis[b].kind {
        BasisKind::Cartan(_) => Q::zero(),
        BasisKind::Root(w) => t.iter().fold(Q::zero(), |acc, (k, c)| acc + c * q(w[*k])),
    }
}

pub fn split_lagrangian(rep: &NilpotentRep) -> Result<LagrangianPair> {
    let kappa = normalized_killing(&rep.g)?;
    let tor = torus_of_centralizer(rep);
    let mut t: SVec<Q> = Vec::new();
    let mut w = q(1);
    for v in &tor {
        t = sv_axpy(&t, &w, v);
        w *= q(3);
    }
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for b in rep.piece(-1) {
        let x = root_weight(rep, b, &t);
        if x.is_zero() {
            return Err(Error::Verification(format!(
                "g(-1) has a torus-weight-zero root vector for {}",
                rep.lambda
            )));
        }
        if x.is_positive() {
            plus.push(b);
        } else {
            minus.push(b);
        }
    }
    if plus.len() != minus.len() {
        return Err(Error::Verification("unbalanced split of g(-1)".into()));
    }
    let s = plus.len();
    let m: Vec<Vec<Q>> = plus
        .iter()
        .map(|&a| {
            minus
                .iter()
                .map(|&b| psi(rep, &kappa, &vec![(a, q(1))], &vec![(b, q(1))]))
                .collect()
        })
        .collect();
    let minv = if s == 0 {
        Vec::new()
    } else {
        inverse(&m, &()).ok_or_else(|| Error::Verification("Ψ pairing singular".into()))?
    };
    let mut z_prime = Vec::new();
    for i in 0..s {
        let v: SVec<Q> = (0..s)
            .filter(|&k| !minv[i][k].is_zero())
            .map(|k| (plus[k], minv[i][k].clone()))
            .collect();
        if v.iter().any(|(_, c)| !in_r(c)) {
            return Err(Error::Verification(format!(
                "normalising Ψ needs a non-R denominator for {}",
                rep.lambda
            )));
        }
        z_prime.push(v);
    }
    let z: Vec<SVec<Q>> = minus.iter().map(|&b| vec![(b, q(1))]).collect();
    let pair = LagrangianPair {
        z_prime,
        z,
        torus: t,
    };
    for i in 0..s {
        for j in 0..s {
            let want = if i == j { q(1) } else { q(0) };
            if psi(rep, &kappa, &pair.z_prime[i], &pair.z[j]) != want
                || !psi(rep, &kappa, &pair.z[i], &pair.z[j]).is_zero()
                || !psi(rep, &kappa, &pair.z_prime[i], &pair.z_prime[j]).is_zero()
            {
                return Err(Error::Verification("Lagrangian duality fails".into()));
            }
        }
    }
    Ok(pair)
}

/// m = span(z') ⊕ g(≤ -2) together with χ on its basis.
#[derive(Clone, Debug)]
pub struct MSubalgebra {
    pub basis: Vec<SVec<Q>>,
    pub chi: Vec<Q>,
}

impl MSubalgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

pub fn build_m(rep: &NilpotentRep, pair: &LagrangianPair) -> Result<MSubalgebra> {
    let kappa = normalized_killing(&rep.g)?;
    let mut basis = pair.z_prime.clone();
    for b in 0..rep.g.dim() {
        if rep.degree(b) <= -2 {
            basis.push(vec![(b, q(1))]);
        }
    }
    let chi_v: Vec<Q> = basis.iter().map(|x| chi(rep, &kappa, x)).collect();
    for (x, c) in basis.iter().zip(&chi_v) {
        let deg = x.first().map(|(b, _)| rep.degree(*b)).unwrap_or(0);
        if deg <= -3 && !c.is_zero() {
            return Err(Error::Verification("χ nonzero below degree -2".into()));
        }
    }
    let mut span = Echelon::new(());
    for x in &basis {
        span.add(x);
    }
    for x in &basis {
        for y in &basis {
            let br = rep.g.bracket(x, y, &());
            if !span.contains(&br) {
                return Err(Error::Verification("m is not a subalgebra".into()));
            }
            if !chi(rep, &kappa, &br).is_zero() {
                return Err(Error::Verification("χ([m, m]) ≠ 0".into()));
            }
        }
    }
    Ok(MSubalgebra { basis, chi: chi_v })
}

/// A graded complement v to [g, e] inside ⊕_{i≤0} g(i).
#[derive(Clone, Debug, Serialize)]
pub struct SliceData {
    /// Chevalley basis indices spanning v.
    pub basis: Vec<usize>,
    pub degrees: Vec<i32>,
    /// Contracting weight 2 - i for each basis element.
    pub weights: Vec<i32>,
}

pub fn slice_complement(rep: &NilpotentRep) -> Result<SliceData> {
    let mut basis = Vec::new();
    let mut degrees = Vec::new();
    let degs: std::collections::BTreeSet<i32> = rep.degrees.iter().copied().collect();
    for &i in &degs {
        let (_, dst, rows) = ad_e_block(rep, i - 2);
        let piece = rep.piece(i);
        // image of ad e in g(i), in piece-local coordinates
        let cols = crate::exact::linalg::transpose(&rows, rep.piece(i - 2).len());
        let mut ech = Echelon::new(());
        for c in &cols {
            ech.add(c);
        }
        debug_assert_eq!(dst, piece);
        for (k, &b) in piece.iter().enumerate() {
            if ech.add(&vec![(k, q(1))]) {
                basis.push(b);
                degrees.push(i);
            }
        }
    }
    if degrees.iter().any(|d| *d > 0) {
        return Err(Error::Verification("slice needs positive degrees".into()));
    }
    let dim_ge: usize = graded_centralizer::<Q>(rep, &()).dim();
    if basis.len() != dim_ge {
        return Err(Error::Verification(format!(
            "dim v = {} but dim g^e = {dim_ge}",
            basis.len()
        )));
    }
    let weights = degrees.iter().map(|d| 2 - d).collect();
    Ok(SliceData {
        basis,
        degrees,
        weights,
    })
}

/// Results of the lattice checks for ad e on the Chevalley lattice.
#[derive(Clone, Debug, Serialize)]
pub struct SaturationReport {
    pub divisors: Vec<String>,
    pub two_power: bool,
    /// (i, rank, all divisors 2-powers) for g(i) → g(i+2), i ≥ 0.
    pub per_degree: Vec<(i32, usize, bool)>,
    pub surjective_nonneg: bool,
    pub kappa_orthogonal: bool,
}

impl SaturationReport {
    pub fn ok(&self) -> bool {
        self.two_power && self.surjective_nonneg && self.kappa_orthogonal
    }
}

fn int_matrix(rows: &[SVec<Q>], nrows: usize, ncols: usize) -> Result<SparseMatrix> {
    let mut out = vec![vec![BigInt::zero(); ncols]; nrows];
    for (i, r) in rows.iter().enumerate() {
        for (j, v) in r {
            if !v.denom().is_one() {
                return Err(Error::Verification("non-integral ad e".into()));
            }
            out[i][*j] = v.numer().clone();
        }
    }
    Ok(SparseMatrix::from_bigint_rows(&out, ncols))
}

pub fn integral_saturation(rep: &NilpotentRep) -> Result<SaturationReport> {
    let g = &rep.g;
    let d = g.dim();
    let ad = g.ad_rows(&rep.e_coords, &());
    let m = int_matrix(&ad, d, d)?;
    let snf = smith_normal_form(&m)?;
    if !snf.verify(&m) {
        return Err(Error::Verification("SNF certificate fails".into()));
    }
    let nz: Vec<&BigInt> = snf.divisors.iter().filter(|x| !x.is_zero()).collect();
    let two_power = nz.iter().all(|x| is_two_power(x));
    let mut per_degree = Vec::new();
    let mut surj = true;
    let top = rep.degrees.iter().copied().max().unwrap_or(0);
    for i in 0..=top {
        let (src, dst, rows) = ad_e_block(rep, i);
        if dst.is_empty() {
            continue;
        }
        let bm = int_matrix(&rows, dst.len(), src.len())?;
        let s = smith_normal_form(&bm)?;
        let ok2 = s.divisors.iter().filter(|x| !x.is_zero()).all(is_two_power);
        let full = s.rank() == dst.len();
        surj &= ok2 && full;
        per_degree.push((i, s.rank(), ok2));
    }
    // [e, g] = (g^e)^⊥ for κ: containment plus dimension
    let kappa = normalized_killing(g)?;
    let ge: CentralizerBasis = graded_centralizer::<Q>(rep, &());
    let cols = crate::exact::linalg::transpose(&ad, d);
    let mut orth = true;
    for c in &cols {
        for y in &ge.vectors {
            if !kappa.eval(c, y).is_zero() {
                orth = false;
            }
        }
    }
    orth &= rank(&cols, &()) + ge.dim() == d;
    Ok(SaturationReport {
        divisors: snf.divisors.iter().map(|x| x.to_string()).collect(),
        two_power,
        per_degree,
        surjective_nonneg: surj,
        kappa_orthogonal: orth,
    })
}

/// A ℤ-basis of g^e (saturated in the Chevalley lattice) and a lattice
/// complement of g^e(i) in g(i) for each i ≥ 0, both from SNF certificates.
#[derive(Clone, Debug)]
pub struct IntegralCentralizer {
    pub basis: CentralizerBasis,
    pub complement: Vec<SVec<Q>>,
    pub complement_degrees: Vec<i32>,
}

pub fn integral_centralizer(rep: &NilpotentRep) -> Result<IntegralCentralizer> {
    let top = rep.degrees.iter().copied().max().unwrap_or(0);
    let mut vectors = Vec::new();
    let mut degrees = Vec::new();
    let mut complement = Vec::new();
    let mut complement_degrees = Vec::new();
    let lift = |src: &[usize], v: &[BigInt]| -> SVec<Q> {
        v.iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(k, x)| (src[k], Q::from_integer(x.clone())))
            .collect()
    };
    for i in 0..=top {
        let (src, dst, rows) = ad_e_block(rep, i);
        if src.is_empty() {
            continue;
        }
        if dst.is_empty() {
            for &b in &src {
                vectors.push(vec![(b, q(1))]);
                degrees.push(i);
            }
            continue;
        }
        let m = int_matrix(&rows, dst.len(), src.len())?;
        let s = smith_normal_form(&m)?;
        for v in s.kernel_basis() {
            vectors.push(lift(&src, &v));
            degrees.push(i);
        }
        for v in s.kernel_complement() {
            complement.push(lift(&src, &v));
            complement_degrees.push(i);
        }
    }
    let _ = BigInt::one();
    Ok(IntegralCentralizer {
        basis: CentralizerBasis { vectors, degrees },
        complement,
        complement_degrees,
    })
}

/// Summary used by the CLI.
pub fn slice_summary(rep: &NilpotentRep) -> Result<serde_json::Value> {
    let psi = build_psi(rep)?;
    let pair = split_lagrangian(rep)?;
    let m = build_m(rep, &pair)?;
    let v = slice_complement(rep)?;
    let sat = integral_saturation(rep)?;
    let mut vdeg: BTreeMap<i32, usize> = BTreeMap::new();
    for d in &v.degrees {
        *vdeg.entry(*d).or_insert(0) += 1;
    }
    Ok(serde_json::json!({
        "s": pair.s(),
        "gram": psi.gram,
        "gram_det": psi.det,
        "m_dim": m.dim(),
        "v_degrees": vdeg.iter().map(|(k, v)| (k.to_string(), *v)).collect::<BTreeMap<_, _>>(),
        "v_weights": v.weights,
        "snf_divisors": sat.divisors,
        "saturated": sat.ok(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbits::{build_nilpotent, orbit_dimension};
    use crate::partitions::{Epsilon, Partition};

    fn rep(s: &str, e: Epsilon) -> NilpotentRep {
        build_nilpotent(&Partition::parse(s).unwrap(), e).unwrap()
    }

    #[test]
    fn sp4_minimal() {
        let r = rep("2,1,1", Epsilon::Minus);
        let p = build_psi(&r).unwrap();
        assert_eq!(p.dim(), 2);
        let c = p.gram()[0][1].clone();
        assert!([q(1), q(-1), q(2), q(-2)].contains(&c));
        let pair = split_lagrangian(&r).unwrap();
        assert_eq!(pair.s(), 1);
        let m = build_m(&r, &pair).unwrap();
        let (_, dchi) = orbit_dimension(&r.lambda, Epsilon::Minus).unwrap();
        assert_eq!(m.dim(), dchi);
        let v = slice_complement(&r).unwrap();
        let mut w = v.weights.clone();
        w.sort();
        w.dedup();
        assert_eq!(w, vec![2, 3, 4]);
    }

    #[test]
    fn even_orbit_has_empty_form() {
        let r = rep("2,2", Epsilon::Minus);
        assert_eq!(build_psi(&r).unwrap().dim(), 0);
        assert_eq!(split_lagrangian(&r).unwrap().s(), 0);
    }

    #[test]
    fn zero_orbit_slice() {
        let r = rep("1,1,1,1", Epsilon::Minus);
        let v = slice_complement(&r).unwrap();
        assert_eq!(v.basis.len(), 10);
        assert!(v.weights.iter().all(|w| *w == 2));
        assert!(integral_saturation(&r).unwrap().ok());
    }
}

#[cfg(test)]
mod sweep {
    use super::*;
    use crate::orbits::{build_nilpotent, orbit_dimension};
    use crate::partitions::{admissible_partitions, Epsilon};

    #[test]
    fn slice_data_small_n() {
        for n in 2..=6 {
            for eps in [Epsilon::Plus, Epsilon::Minus] {
                if (n == 2 && eps == Epsilon::Plus) || (eps == Epsilon::Minus && n % 2 == 1) {
                    continue;
                }
                for l in admissible_partitions(n, eps) {
                    let r = build_nilpotent(&l, eps).unwrap();
                    build_psi(&r).unwrap();
                    let p = split_lagrangian(&r).unwrap();
                    let m = build_m(&r, &p).unwrap();
                    assert_eq!(m.dim(), orbit_dimension(&l, eps).unwrap().1, "{l} {eps}");
                    slice_complement(&r).unwrap();
                    assert!(integral_saturation(&r).unwrap().ok(), "{l} {eps}");
                    integral_centralizer(&r).unwrap();
                }
            }
        }
    }
}
