//! Row-sparse square matrices over a field, used for elements of gl_N.

use super::exact::linalg::{sv_axpy, sv_get, sv_map, sv_scale, SVec};
use super::exact::Field;

#[derive(Clone, Debug, PartialEq)]
pub struct Mat<F: Field> {
    pub n: usize,
    pub rows: Vec<SVec<F>>,
}

impl<F: Field> Mat<F> {
    pub fn zero(n: usize) -> Self {
        Mat {
            n,
            rows: vec![Vec::new(); n],
        }
    }

    pub fn identity(n: usize, ctx: &F::Ctx) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.rows[i] = vec![(i, F::one_of(ctx))];
        }
        m
    }

    pub fn unit(n: usize, i: usize, j: usize, v: F) -> Self {
        let mut m = Self::zero(n);
        if !v.vanishes() {
            m.rows[i] = vec![(j, v)];
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&F> {
        sv_get(&self.rows[i], j)
    }

    pub fn add_entry(&mut self, i: usize, j: usize, v: &F) {
        let one = F::one_of(&v.ctx());
        self.rows[i] = sv_axpy(&self.rows[i], &one, &vec![(j, v.clone())]);
    }

    pub fn add(&self, o: &Self) -> Self {
        self.axpy(o, None)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let Some(c) = o.any_ctx() else {
            return self.clone();
        };
        self.axpy(o, Some(F::one_of(&c).neg()))
    }

    fn any_ctx(&self) -> Option<F::Ctx> {
        self.rows
            .iter()
            .flat_map(|r| r.iter())
            .next()
            .map(|(_, v)| v.ctx())
    }

    /// self + a·o (a = 1 when None)
    pub fn axpy(&self, o: &Self, a: Option<F>) -> Self {
        let Some(c) = o.any_ctx() else {
            return self.clone();
        };
        let a = a.unwrap_or_else(|| F::one_of(&c));
        Mat {
            n: self.n,
            rows: self
                .rows
                .iter()
                .zip(&o.rows)
                .map(|(x, y)| sv_axpy(x, &a, y))
                .collect(),
        }
    }

    pub fn scale(&self, a: &F) -> Self {
        Mat {
            n: self.n,
            rows: self.rows.iter().map(|r| sv_scale(r, a)).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut rows = Vec::with_capacity(self.n);
        for r in &self.rows {
            let mut acc: SVec<F> = Vec::new();
            for (k, a) in r {
                acc = sv_axpy(&acc, a, &o.rows[*k]);
            }
            rows.push(acc);
        }
        Mat { n: self.n, rows }
    }

    pub fn bracket(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn transpose(&self) -> Self {
        let mut rows: Vec<SVec<F>> = vec![Vec::new(); self.n];
        for (i, r) in self.rows.iter().enumerate() {
            for (j, v) in r {
                rows[*j].push((i, v.clone()));
            }
        }
        Mat { n: self.n, rows }
    }

    pub fn trace(&self, ctx: &F::Ctx) -> F {
        let mut t = F::zero_of(ctx);
        for i in 0..self.n {
            if let Some(v) = self.get(i, i) {
                t = t.add(v);
            }
        }
        t
    }

    pub fn pow(&self, e: u64, ctx: &F::Ctx) -> Self {
        let mut acc = Self::identity(self.n, ctx);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Mat<G> {
        Mat {
            n: self.n,
            rows: self.rows.iter().map(|r| sv_map(r, &f)).collect(),
        }
    }

    /// Flatten to a sparse vector of length n².
    pub fn flatten(&self) -> SVec<F> {
        let mut out = Vec::new();
        for (i, r) in self.rows.iter().enumerate() {
            for (j, v) in r {
                out.push((i * self.n + j, v.clone()));
            }
        }
        out
    }

    pub fn nonzeros(&self) -> impl Iterator<Item = (usize, usize, &F)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |(j, v)| (i, *j, v)))
    }

    /// Apply to a column vector.
    pub fn apply(&self, v: &SVec<F>, ctx: &F::Ctx) -> SVec<F> {
        crate::exact::linalg::mat_vec(&self.rows, v, ctx)
    }
}

/// Rank of a matrix (rows as vectors).
pub fn mat_rank<F: Field>(m: &Mat<F>, ctx: &F::Ctx) -> usize {
    crate::exact::linalg::rank(&m.rows, ctx)
}

/// Jordan type of a nilpotent matrix from the ranks of its powers.
pub fn jordan_type<F: Field>(m: &Mat<F>, ctx: &F::Ctx) -> Option<Vec<usize>> {
    let n = m.n;
    let mut ranks = vec![n];
    let mut p = m.clone();
    loop {
        let r = mat_rank(&p, ctx);
        ranks.push(r);
        if r == 0 {
            break;
        }
        if ranks.len() > n + 1 {
            return None; // not nilpotent
        }
        p = p.mul(m);
    }
    // number of blocks of size >= k is rank(m^{k-1}) - rank(m^k)
    let ge: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut parts = Vec::new();
    for k in 0..ge.len() {
        let next = ge.get(k + 1).copied().unwrap_or(0);
        for _ in 0..(ge[k] - next) {
            parts.push(k + 1);
        }
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    Some(parts)
}
