//! Smith normal form over ℤ with transformation certificates.
//!
//! Pivots are chosen by minimal absolute value. The result satisfies
//! `U · A · V = D` with `U`, `V` unimodular, and `u_inv` is `U⁻¹`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::sparse::SparseMatrix;
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    /// Diagonal entries d_1 | d_2 | ..., length min(rows, cols).
    pub divisors: Vec<BigInt>,
    pub u: Vec<Vec<BigInt>>,
    pub u_inv: Vec<Vec<BigInt>>,
    pub v: Vec<Vec<BigInt>>,
    rows: usize,
    cols: usize,
}

fn ident(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

fn matmul(a: &[Vec<BigInt>], b: &[Vec<BigInt>], inner: usize, cols: usize) -> Vec<Vec<BigInt>> {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut s = BigInt::zero();
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            s += &row[k] * &b[k][j];
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

struct Work {
    a: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
    ui: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
    m: usize,
    n: usize,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        self.u.swap(i, j);
        for r in 0..self.m {
            self.ui[r].swap(i, j);
        }
    }
    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.m {
            self.a[r].swap(i, j);
        }
        for r in 0..self.n {
            self.v[r].swap(i, j);
        }
    }
    /// row_i += q·row_t
    fn add_row(&mut self, i: usize, t: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.n {
            let x = &self.a[t][c] * q;
            self.a[i][c] += x;
        }
        for c in 0..self.m {
            let x = &self.u[t][c] * q;
            self.u[i][c] += x;
        }
        // U⁻¹ ← U⁻¹ · (I - q e_i e_tᵀ): column t -= q · column i
        for r in 0..self.m {
            let x = &self.ui[r][i] * q;
            self.ui[r][t] -= x;
        }
    }
    /// col_j += q·col_t
    fn add_col(&mut self, j: usize, t: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.m {
            let x = &self.a[r][t] * q;
            self.a[r][j] += x;
        }
        for r in 0..self.n {
            let x = &self.v[r][t] * q;
            self.v[r][j] += x;
        }
    }
    fn negate_row(&mut self, i: usize) {
        for c in 0..self.n {
            self.a[i][c] = -&self.a[i][c];
        }
        for c in 0..self.m {
            self.u[i][c] = -&self.u[i][c];
        }
        for r in 0..self.m {
            self.ui[r][i] = -&self.ui[r][i];
        }
    }

    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for i in t..self.m {
            for j in t..self.n {
                if self.a[i][j].is_zero() {
                    continue;
                }
                let v = self.a[i][j].abs();
                if best.as_ref().is_none_or(|b| v < b.2) {
                    best = Some((i, j, v));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }
}

/// Smith normal form of an integer matrix.
pub fn smith_normal_form(m: &SparseMatrix) -> Result<SnfResult> {
    let a = m.int_rows()?;
    Ok(snf_dense(a, m.rows, m.cols))
}

pub fn snf_dense(a: Vec<Vec<BigInt>>, m: usize, n: usize) -> SnfResult {
    let mut w = Work {
        a,
        u: ident(m),
        ui: ident(m),
        v: ident(n),
        m,
        n,
    };
    let k = m.min(n);
    for t in 0..k {
        let Some((pi, pj)) = w.min_entry(t) else {
            break;
        };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if w.a[i][t].is_zero() {
                    continue;
                }
                let q = w.a[i][t].div_floor(&w.a[t][t]);
                w.add_row(i, t, &-q);
                if !w.a[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..n {
                if w.a[t][j].is_zero() {
                    continue;
                }
                let q = w.a[t][j].div_floor(&w.a[t][t]);
                w.add_col(j, t, &-q);
                if !w.a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // move the smallest entry of row/column t to the pivot
                let mut best = (t, t, w.a[t][t].abs());
                for i in t + 1..m {
                    if !w.a[i][t].is_zero() && w.a[i][t].abs() < best.2 {
                        best = (i, t, w.a[i][t].abs());
                    }
                }
                for j in t + 1..n {
                    if !w.a[t][j].is_zero() && w.a[t][j].abs() < best.2 {
                        best = (t, j, w.a[t][j].abs());
                    }
                }
                w.swap_rows(t, best.0);
                w.swap_cols(t, best.1);
                continue;
            }
            // divisibility of the remaining block
            let piv = w.a[t][t].clone();
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !w.a[i][j].is_multiple_of(&piv)));
            match bad {
                Some(i) => w.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if w.a[t][t].is_negative() {
            w.negate_row(t);
        }
    }
    let divisors = (0..k).map(|i| w.a[i][i].clone()).collect();
    SnfResult {
        divisors,
        u: w.u,
        u_inv: w.ui,
        v: w.v,
        rows: m,
        cols: n,
    }
}

impl SnfResult {
    /// Check U·A·V = D, U·U⁻¹ = I and the divisibility chain.
    pub fn verify(&self, a: &SparseMatrix) -> bool {
        let Ok(ad) = a.int_rows() else { return false };
        let uav = matmul(
            &matmul(&self.u, &ad, self.rows, self.cols),
            &self.v,
            self.cols,
            self.cols,
        );
        for (i, row) in uav.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                let want = if i == j && i < self.divisors.len() {
                    self.divisors[i].clone()
                } else {
                    BigInt::zero()
                };
                if *x != want {
                    return false;
                }
            }
        }
        if matmul(&self.u, &self.u_inv, self.rows, self.rows) != ident(self.rows) {
            return false;
        }
        self.divisors.windows(2).all(|w| {
            if w[0].is_zero() {
                w[1].is_zero()
            } else {
                w[1].is_multiple_of(&w[0])
            }
        }) && self.divisors.iter().all(|d| !d.is_negative())
    }

    pub fn rank(&self) -> usize {
        self.divisors.iter().filter(|d| !d.is_zero()).count()
    }

    /// Columns of V at zero diagonal positions: a ℤ-basis of the integer kernel.
    pub fn kernel_basis(&self) -> Vec<Vec<BigInt>> {
        let r = self.rank();
        (r..self.cols)
            .map(|j| (0..self.cols).map(|i| self.v[i][j].clone()).collect())
            .collect()
    }

    /// Columns of V at nonzero diagonal positions: together with the kernel
    /// basis they form a ℤ-basis of ℤ^cols.
    pub fn kernel_complement(&self) -> Vec<Vec<BigInt>> {
        (0..self.rank())
            .map(|j| (0..self.cols).map(|i| self.v[i][j].clone()).collect())
            .collect()
    }

    /// Columns r.. of U⁻¹: when the column space is saturated these complete
    /// it to a basis of ℤ^rows.
    pub fn cokernel_complement(&self) -> Vec<Vec<BigInt>> {
        let r = self.rank();
        (r..self.rows)
            .map(|j| (0..self.rows).map(|i| self.u_inv[i][j].clone()).collect())
            .collect()
    }
}

/// True when `d` is ±2^k (a unit of ℤ[1/2]).
pub fn is_two_power(d: &BigInt) -> bool {
    if d.is_zero() {
        return false;
    }
    let mut x = d.abs();
    let two = BigInt::from(2);
    while x.is_even() {
        x /= &two;
    }
    x.is_one()
}

/// Every nonzero elementary divisor is a unit of R = ℤ[1/2].
pub fn r_saturated(m: &SparseMatrix) -> Result<bool> {
    let s = smith_normal_form(m)?;
    Ok(s.divisors.iter().filter(|d| !d.is_zero()).all(is_two_power))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diag_2_3() {
        let m = SparseMatrix::from_int_rows(&[vec![2, 0], vec![0, 3]]);
        let s = smith_normal_form(&m).unwrap();
        assert_eq!(s.divisors, vec![BigInt::from(1), BigInt::from(6)]);
        assert!(s.verify(&m));
    }

    #[test]
    fn zero_matrix() {
        let m = SparseMatrix::from_int_rows(&[vec![0, 0, 0], vec![0, 0, 0]]);
        let s = smith_normal_form(&m).unwrap();
        assert!(s.divisors.iter().all(|d| d.is_zero()));
        assert!(s.verify(&m));
    }

    #[test]
    fn saturation_examples() {
        let a = SparseMatrix::from_int_rows(&[vec![1, 0, 0], vec![0, 2, 0], vec![0, 0, 4]]);
        assert!(r_saturated(&a).unwrap());
        let b = SparseMatrix::from_int_rows(&[vec![1, 0], vec![0, 3]]);
        assert!(!r_saturated(&b).unwrap());
    }

    #[test]
    fn kernel_is_integral() {
        let m = SparseMatrix::from_int_rows(&[vec![2, 4, 6], vec![1, 2, 3]]);
        let s = smith_normal_form(&m).unwrap();
        assert!(s.verify(&m));
        assert_eq!(s.kernel_basis().len(), 2);
    }
}
