//! Public sparse matrix type with a coefficient-ring tag, plus the
//! `rank_kernel` entry point.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::field::{fmt_q, q_to_fp, Fp, Q};
use super::linalg::{kernel, SVec};
use crate::error::{Error, Result};

/// Coefficient ring of a [`SparseMatrix`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Ring {
    Z,
    Q,
    Fp(u64),
}

/// A single exact scalar.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scalar {
    Int(BigInt),
    Rat(Q),
    Mod(Fp),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Int(x) => x.is_zero(),
            Scalar::Rat(x) => x.is_zero(),
            Scalar::Mod(x) => x.v == 0,
        }
    }

    pub fn to_q(&self) -> Option<Q> {
        match self {
            Scalar::Int(x) => Some(Q::from_integer(x.clone())),
            Scalar::Rat(x) => Some(x.clone()),
            Scalar::Mod(_) => None,
        }
    }

    pub fn render(&self) -> String {
        match self {
            Scalar::Int(x) => x.to_string(),
            Scalar::Rat(x) => fmt_q(x),
            Scalar::Mod(x) => x.v.to_string(),
        }
    }
}

/// Sparse matrix with fixed dimensions; stored entries are never zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub ring: Ring,
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: usize, ring: Ring) -> Self {
        SparseMatrix {
            rows,
            cols,
            ring,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize, ring: Ring) -> Self {
        let mut m = Self::new(n, n, ring);
        for i in 0..n {
            let one = match ring {
                Ring::Z => Scalar::Int(BigInt::from(1)),
                Ring::Q => Scalar::Rat(Q::from_integer(BigInt::from(1))),
                Ring::Fp(p) => Scalar::Mod(Fp::new(1, p)),
            };
            m.set(i, i, one).expect("identity entry");
        }
        m
    }

    /// Integer matrix from dense rows.
    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        let nc = rows.first().map_or(0, |r| r.len());
        let mut m = Self::new(rows.len(), nc, Ring::Z);
        for (i, r) in rows.iter().enumerate() {
            for (j, x) in r.iter().enumerate() {
                if *x != 0 {
                    m.entries.insert((i, j), Scalar::Int(BigInt::from(*x)));
                }
            }
        }
        m
    }

    pub fn from_bigint_rows(rows: &[Vec<BigInt>], cols: usize) -> Self {
        let mut m = Self::new(rows.len(), cols, Ring::Z);
        for (i, r) in rows.iter().enumerate() {
            for (j, x) in r.iter().enumerate() {
                if !x.is_zero() {
                    m.entries.insert((i, j), Scalar::Int(x.clone()));
                }
            }
        }
        m
    }

    pub fn from_q_rows(rows: &[SVec<Q>], cols: usize) -> Self {
        let mut m = Self::new(rows.len(), cols, Ring::Q);
        for (i, r) in rows.iter().enumerate() {
            for (j, x) in r {
                m.entries.insert((i, *j), Scalar::Rat(x.clone()));
            }
        }
        m
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) -> Result<()> {
        if r >= self.rows || c >= self.cols {
            return Err(Error::Dimension(format!(
                "entry ({r},{c}) outside {}x{}",
                self.rows, self.cols
            )));
        }
        let ok = matches!(
            (&v, self.ring),
            (Scalar::Int(_), Ring::Z) | (Scalar::Rat(_), Ring::Q) | (Scalar::Mod(_), Ring::Fp(_))
        );
        if !ok {
            return Err(Error::RingMismatch(format!(
                "scalar {} does not belong to {:?}",
                v.render(),
                self.ring
            )));
        }
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
        Ok(())
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&Scalar> {
        self.entries.get(&(r, c))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Scalar)> {
        self.entries.iter()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Dense integer rows (ℤ matrices only).
    pub fn int_rows(&self) -> Result<Vec<Vec<BigInt>>> {
        if self.ring != Ring::Z {
            return Err(Error::RingMismatch("expected an integer matrix".into()));
        }
        let mut d = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for ((r, c), v) in &self.entries {
            if let Scalar::Int(x) = v {
                d[*r][*c] = x.clone();
            }
        }
        Ok(d)
    }

    fn q_rows(&self) -> Vec<SVec<Q>> {
        let mut rows: Vec<SVec<Q>> = vec![Vec::new(); self.rows];
        for ((r, c), v) in &self.entries {
            rows[*r].push((*c, v.to_q().expect("rational entry")));
        }
        rows
    }

    fn fp_rows(&self) -> Vec<SVec<Fp>> {
        let mut rows: Vec<SVec<Fp>> = vec![Vec::new(); self.rows];
        for ((r, c), v) in &self.entries {
            if let Scalar::Mod(x) = v {
                rows[*r].push((*c, *x));
            }
        }
        rows
    }

    /// Reduce a ℤ or ℚ matrix into F_p; fails if a denominator vanishes.
    pub fn reduce_mod(&self, p: u64) -> Result<SparseMatrix> {
        let mut m = SparseMatrix::new(self.rows, self.cols, Ring::Fp(p));
        for ((r, c), v) in &self.entries {
            let x = match v {
                Scalar::Mod(x) => *x,
                other => {
                    let qv = other.to_q().expect("rational");
                    q_to_fp(&qv, p).ok_or_else(|| {
                        Error::RingMismatch(format!("denominator divisible by {p}"))
                    })?
                }
            };
            m.set(*r, *c, Scalar::Mod(x))?;
        }
        Ok(m)
    }

    /// JSON form {rows, cols, ring, entries: [[r, c, "a/b"], ...]}.
    pub fn to_json(&self) -> serde_json::Value {
        let ring = match self.ring {
            Ring::Z => "Z".to_string(),
            Ring::Q => "Q".to_string(),
            Ring::Fp(p) => format!("F{p}"),
        };
        let entries: Vec<serde_json::Value> = self
            .entries
            .iter()
            .map(|((r, c), v)| serde_json::json!([r, c, v.render()]))
            .collect();
        serde_json::json!({
            "rows": self.rows,
            "cols": self.cols,
            "ring": ring,
            "entries": entries,
        })
    }
}

/// Kernel vectors in the matrix's field.
#[derive(Clone, Debug, PartialEq)]
pub enum KernelBasis {
    Q(Vec<SVec<Q>>),
    Fp(Vec<SVec<Fp>>),
}

impl KernelBasis {
    pub fn len(&self) -> usize {
        match self {
            KernelBasis::Q(v) => v.len(),
            KernelBasis::Fp(v) => v.len(),
        }
    }
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Rank and right-kernel basis of a matrix over ℚ or F_p.
pub fn rank_kernel(m: &SparseMatrix) -> Result<(usize, KernelBasis)> {
    match m.ring {
        Ring::Z => Err(Error::RingMismatch(
            "rank_kernel needs a field; convert the integer matrix first".into(),
        )),
        Ring::Q => {
            let k = kernel(&m.q_rows(), m.cols, &());
            Ok((m.cols - k.len(), KernelBasis::Q(k)))
        }
        Ring::Fp(p) => {
            let k = kernel(&m.fp_rows(), m.cols, &p);
            Ok((m.cols - k.len(), KernelBasis::Fp(k)))
        }
    }
}

/// Check A·x = 0 for every kernel vector.
pub fn verify_kernel(m: &SparseMatrix, k: &KernelBasis) -> bool {
    match k {
        KernelBasis::Q(vs) => {
            let rows = m.q_rows();
            vs.iter()
                .all(|x| super::linalg::mat_vec(&rows, x, &()).is_empty())
        }
        KernelBasis::Fp(vs) => {
            let Ring::Fp(p) = m.ring else { return false };
            let rows = m.fp_rows();
            vs.iter()
                .all(|x| super::linalg::mat_vec(&rows, x, &p).is_empty())
        }
    }
}

pub fn to_q_matrix(m: &SparseMatrix) -> Result<SparseMatrix> {
    match m.ring {
        Ring::Fp(_) => Err(Error::RingMismatch("cannot lift F_p to Q".into())),
        _ => Ok(SparseMatrix::from_q_rows(&m.q_rows(), m.cols)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_rank() {
        let (r, k) = rank_kernel(&SparseMatrix::identity(3, Ring::Q)).unwrap();
        assert_eq!(r, 3);
        assert!(k.is_empty());
    }

    #[test]
    fn zero_kernel() {
        let (r, k) = rank_kernel(&SparseMatrix::new(2, 5, Ring::Q)).unwrap();
        assert_eq!(r, 0);
        assert_eq!(k.len(), 5);
    }

    #[test]
    fn integer_rejected() {
        assert!(rank_kernel(&SparseMatrix::from_int_rows(&[vec![1, 2]])).is_err());
    }
}
