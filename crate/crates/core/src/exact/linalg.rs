//! Sparse vectors and incremental Gaussian elimination over any [`Field`].
//!
//! Vectors are sorted `(index, value)` lists with no stored zeros. The
//! [`Echelon`] structure keeps a semi-echelon basis and, optionally, the
//! combination of inserted vectors that produced each row, which is enough
//! to answer rank, membership, kernel and solve queries.

use std::collections::BTreeMap;

use super::field::Field;

pub type SVec<F> = Vec<(usize, F)>;

pub fn sv_from_map<F: Field>(m: BTreeMap<usize, F>) -> SVec<F> {
    m.into_iter().filter(|(_, v)| !v.vanishes()).collect()
}

/// Build a sparse vector from a dense slice.
pub fn sv_from_dense<F: Field>(d: &[F]) -> SVec<F> {
    d.iter()
        .enumerate()
        .filter(|(_, v)| !v.vanishes())
        .map(|(i, v)| (i, v.clone()))
        .collect()
}

pub fn sv_to_dense<F: Field>(v: &SVec<F>, n: usize, ctx: &F::Ctx) -> Vec<F> {
    let mut d = vec![F::zero_of(ctx); n];
    for (i, x) in v {
        d[*i] = x.clone();
    }
    d
}

/// y + a·x
pub fn sv_axpy<F: Field>(y: &SVec<F>, a: &F, x: &SVec<F>) -> SVec<F> {
    if a.vanishes() {
        return y.clone();
    }
    let mut out = Vec::with_capacity(y.len() + x.len());
    let (mut i, mut j) = (0, 0);
    while i < y.len() || j < x.len() {
        if j >= x.len() || (i < y.len() && y[i].0 < x[j].0) {
            out.push(y[i].clone());
            i += 1;
        } else if i >= y.len() || x[j].0 < y[i].0 {
            out.push((x[j].0, a.mul(&x[j].1)));
            j += 1;
        } else {
            let v = y[i].1.add(&a.mul(&x[j].1));
            if !v.vanishes() {
                out.push((y[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn sv_add<F: Field>(x: &SVec<F>, y: &SVec<F>) -> SVec<F> {
    match x.first() {
        Some((_, v)) => sv_axpy(x, &F::one_of(&v.ctx()), y),
        None => y.clone(),
    }
}

pub fn sv_sub<F: Field>(x: &SVec<F>, y: &SVec<F>) -> SVec<F> {
    match y.first() {
        Some((_, v)) => sv_axpy(x, &F::one_of(&v.ctx()).neg(), y),
        None => x.clone(),
    }
}

pub fn sv_scale<F: Field>(x: &SVec<F>, a: &F) -> SVec<F> {
    if a.vanishes() {
        return Vec::new();
    }
    x.iter().map(|(i, v)| (*i, v.mul(a))).collect()
}

pub fn sv_dot<F: Field>(x: &SVec<F>, y: &SVec<F>, ctx: &F::Ctx) -> F {
    let mut acc = F::zero_of(ctx);
    let (mut i, mut j) = (0, 0);
    while i < x.len() && j < y.len() {
        if x[i].0 < y[j].0 {
            i += 1;
        } else if y[j].0 < x[i].0 {
            j += 1;
        } else {
            acc = acc.add(&x[i].1.mul(&y[j].1));
            i += 1;
            j += 1;
        }
    }
    acc
}

pub fn sv_get<F: Field>(x: &SVec<F>, idx: usize) -> Option<&F> {
    x.binary_search_by_key(&idx, |e| e.0).ok().map(|k| &x[k].1)
}

pub fn sv_map<F: Field, G: Field>(x: &SVec<F>, f: impl Fn(&F) -> G) -> SVec<G> {
    x.iter()
        .map(|(i, v)| (*i, f(v)))
        .filter(|(_, v)| !v.vanishes())
        .collect()
}

/// Semi-echelon basis with optional tracking of how each row was formed
/// from the inserted vectors.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    ctx: F::Ctx,
    rows: Vec<SVec<F>>,
    combos: Vec<SVec<F>>,
    pivots: BTreeMap<usize, usize>,
    track: bool,
    inserted: usize,
}

/// Outcome of inserting a vector into an [`Echelon`].
pub enum Inserted<F: Field> {
    /// The vector was independent and became row `usize`.
    New(usize),
    /// The vector was dependent; the payload is the relation among inserted
    /// vectors (including the new one) that sums to zero. Empty when tracking
    /// is off.
    Dependent(SVec<F>),
}

impl<F: Field> Echelon<F> {
    pub fn new(ctx: F::Ctx) -> Self {
        Echelon {
            ctx,
            rows: Vec::new(),
            combos: Vec::new(),
            pivots: BTreeMap::new(),
            track: false,
            inserted: 0,
        }
    }

    pub fn tracked(ctx: F::Ctx) -> Self {
        let mut e = Self::new(ctx);
        e.track = true;
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SVec<F>] {
        &self.rows
    }

    pub fn pivot_cols(&self) -> Vec<usize> {
        self.pivots.keys().copied().collect()
    }

    /// Reduce `v` against the basis; returns the remainder and the
    /// multipliers (row index, coefficient) so that v = Σ c·row + rem.
    pub fn reduce_full(&self, v: &SVec<F>) -> (SVec<F>, Vec<(usize, F)>) {
        let mut acc: BTreeMap<usize, F> = v.iter().cloned().collect();
        let mut mult = Vec::new();
        let mut cursor = 0usize;
        loop {
            let next = acc
                .range(cursor..)
                .find(|(k, _)| self.pivots.contains_key(k))
                .map(|(k, x)| (*k, x.clone()));
            let Some((col, val)) = next else { break };
            let r = self.pivots[&col];
            for (c, x) in &self.rows[r] {
                let t = val.mul(x);
                let e = acc.entry(*c).or_insert_with(|| F::zero_of(&self.ctx));
                *e = e.sub(&t);
                if e.vanishes() {
                    acc.remove(c);
                }
            }
            mult.push((r, val));
            cursor = col + 1;
        }
        (sv_from_map(acc), mult)
    }

    pub fn reduce(&self, v: &SVec<F>) -> SVec<F> {
        self.reduce_full(v).0
    }

    pub fn contains(&self, v: &SVec<F>) -> bool {
        self.reduce(v).is_empty()
    }

    fn combo_of(&self, mult: &[(usize, F)]) -> SVec<F> {
        let mut c: SVec<F> = Vec::new();
        for (r, m) in mult {
            c = sv_axpy(&c, m, &self.combos[*r]);
        }
        c
    }

    pub fn insert(&mut self, v: &SVec<F>) -> Inserted<F> {
        let idx = self.inserted;
        self.inserted += 1;
        let (rem, mult) = self.reduce_full(v);
        if rem.is_empty() {
            if !self.track {
                return Inserted::Dependent(Vec::new());
            }
            // v - Σ m·combo = 0
            let c = self.combo_of(&mult);
            let rel = sv_sub(&vec![(idx, F::one_of(&self.ctx))], &c);
            return Inserted::Dependent(rel);
        }
        let lead = rem[0].1.inv();
        let row = sv_scale(&rem, &lead);
        if self.track {
            let c = self.combo_of(&mult);
            let combo = sv_scale(&sv_sub(&vec![(idx, F::one_of(&self.ctx))], &c), &lead);
            self.combos.push(combo);
        }
        self.pivots.insert(row[0].0, self.rows.len());
        self.rows.push(row);
        Inserted::New(self.rows.len() - 1)
    }

    /// Insert and report whether the vector was independent.
    pub fn add(&mut self, v: &SVec<F>) -> bool {
        matches!(self.insert(v), Inserted::New(_))
    }

    /// Express `v` as a combination of the inserted vectors (tracking only).
    pub fn express(&self, v: &SVec<F>) -> Option<SVec<F>> {
        assert!(self.track, "express needs a tracked echelon");
        let (rem, mult) = self.reduce_full(v);
        if !rem.is_empty() {
            return None;
        }
        Some(self.combo_of(&mult))
    }

    /// Fully reduced rows (reduced row echelon form), sorted by pivot.
    pub fn rref(&self) -> Vec<SVec<F>> {
        let mut out: Vec<SVec<F>> = Vec::new();
        let order: Vec<(usize, usize)> = self.pivots.iter().map(|(c, r)| (*c, *r)).collect();
        // back substitution from the last pivot
        let mut reduced: BTreeMap<usize, SVec<F>> = BTreeMap::new();
        for (col, r) in order.iter().rev() {
            let mut row = self.rows[*r].clone();
            loop {
                let hit = row
                    .iter()
                    .find(|(c, _)| *c != *col && reduced.contains_key(c))
                    .map(|(c, x)| (*c, x.clone()));
                let Some((c, x)) = hit else { break };
                row = sv_axpy(&row, &x.neg(), &reduced[&c]);
            }
            reduced.insert(*col, row);
        }
        for (_, r) in reduced {
            out.push(r);
        }
        out
    }
}

/// Columns of a row-sparse matrix.
pub fn transpose<F: Field>(rows: &[SVec<F>], ncols: usize) -> Vec<SVec<F>> {
    let mut cols: Vec<SVec<F>> = vec![Vec::new(); ncols];
    for (i, r) in rows.iter().enumerate() {
        for (j, x) in r {
            cols[*j].push((i, x.clone()));
        }
    }
    cols
}

pub fn rank<F: Field>(vectors: &[SVec<F>], ctx: &F::Ctx) -> usize {
    let mut e = Echelon::new(ctx.clone());
    for v in vectors {
        e.add(v);
    }
    e.rank()
}

/// Basis of the right kernel {x : A x = 0} where A is given by its rows.
pub fn kernel<F: Field>(rows: &[SVec<F>], ncols: usize, ctx: &F::Ctx) -> Vec<SVec<F>> {
    let cols = transpose(rows, ncols);
    relations(&cols, ctx)
}

/// Basis of the linear relations among a list of vectors:
/// all c with Σ c_i v_i = 0.
pub fn relations<F: Field>(vectors: &[SVec<F>], ctx: &F::Ctx) -> Vec<SVec<F>> {
    let mut e = Echelon::tracked(ctx.clone());
    let mut out = Vec::new();
    for v in vectors {
        if let Inserted::Dependent(rel) = e.insert(v) {
            out.push(rel);
        }
    }
    out
}

/// Solve A x = b with A given by rows; returns one solution if consistent.
pub fn solve<F: Field>(
    rows: &[SVec<F>],
    ncols: usize,
    b: &SVec<F>,
    ctx: &F::Ctx,
) -> Option<SVec<F>> {
    solve_cols(&transpose(rows, ncols), b, ctx)
}

/// Solve Σ x_j col_j = b.
pub fn solve_cols<F: Field>(cols: &[SVec<F>], b: &SVec<F>, ctx: &F::Ctx) -> Option<SVec<F>> {
    let mut e = Echelon::tracked(ctx.clone());
    for c in cols {
        e.insert(c);
    }
    e.express(b)
}

/// Apply A (rows) to x.
pub fn mat_vec<F: Field>(rows: &[SVec<F>], x: &SVec<F>, ctx: &F::Ctx) -> SVec<F> {
    rows.iter()
        .enumerate()
        .map(|(i, r)| (i, sv_dot(r, x, ctx)))
        .filter(|(_, v)| !v.vanishes())
        .collect()
}

/// Linear combination Σ c_i v_i.
pub fn combine<F: Field>(coeffs: &SVec<F>, vectors: &[SVec<F>]) -> SVec<F> {
    let mut acc = Vec::new();
    for (i, c) in coeffs {
        acc = sv_axpy(&acc, c, &vectors[*i]);
    }
    acc
}

/// A basis of span(U) ∩ span(W).
pub fn intersect<F: Field>(u: &[SVec<F>], w: &[SVec<F>], ctx: &F::Ctx) -> Vec<SVec<F>> {
    let mut all: Vec<SVec<F>> = u.to_vec();
    all.extend(w.iter().cloned());
    let rels = relations(&all, ctx);
    let mut e = Echelon::new(ctx.clone());
    let mut out = Vec::new();
    for r in rels {
        let part: SVec<F> = r.iter().filter(|(i, _)| *i < u.len()).cloned().collect();
        let v = combine(&part, u);
        if !v.is_empty() && e.add(&v) {
            out.push(v);
        }
    }
    out
}

/// Extract an independent subset spanning the same space.
pub fn basis_of<F: Field>(vectors: &[SVec<F>], ctx: &F::Ctx) -> Vec<SVec<F>> {
    let mut e = Echelon::new(ctx.clone());
    vectors.iter().filter(|v| e.add(v)).cloned().collect()
}

/// Does span(a) equal span(b)?
pub fn same_span<F: Field>(a: &[SVec<F>], b: &[SVec<F>], ctx: &F::Ctx) -> bool {
    let mut ea = Echelon::new(ctx.clone());
    for v in a {
        ea.add(v);
    }
    let mut eb = Echelon::new(ctx.clone());
    for v in b {
        eb.add(v);
    }
    ea.rank() == eb.rank() && b.iter().all(|v| ea.contains(v))
}

/// Determinant of a dense square matrix by elimination.
pub fn det<F: Field>(m: &[Vec<F>], ctx: &F::Ctx) -> F {
    let n = m.len();
    let mut a: Vec<Vec<F>> = m.to_vec();
    let mut d = F::one_of(ctx);
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].vanishes()) else {
            return F::zero_of(ctx);
        };
        if p != c {
            a.swap(p, c);
            d = d.neg();
        }
        let piv = a[c][c].clone();
        d = d.mul(&piv);
        let inv = piv.inv();
        for r in c + 1..n {
            if a[r][c].vanishes() {
                continue;
            }
            let f = a[r][c].mul(&inv);
            for k in c..n {
                let t = f.mul(&a[c][k]);
                a[r][k] = a[r][k].sub(&t);
            }
        }
    }
    d
}

/// Inverse of a dense square matrix, or None if singular.
pub fn inverse<F: Field>(m: &[Vec<F>], ctx: &F::Ctx) -> Option<Vec<Vec<F>>> {
    let n = m.len();
    let mut a: Vec<Vec<F>> = m.to_vec();
    let mut inv: Vec<Vec<F>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        F::one_of(ctx)
                    } else {
                        F::zero_of(ctx)
                    }
                })
                .collect()
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].vanishes())?;
        a.swap(p, c);
        inv.swap(p, c);
        let pi = a[c][c].inv();
        for k in 0..n {
            a[c][k] = a[c][k].mul(&pi);
            inv[c][k] = inv[c][k].mul(&pi);
        }
        for r in 0..n {
            if r == c || a[r][c].vanishes() {
                continue;
            }
            let f = a[r][c].clone();
            for k in 0..n {
                let t = f.mul(&a[c][k]);
                a[r][k] = a[r][k].sub(&t);
                let t = f.mul(&inv[c][k]);
                inv[r][k] = inv[r][k].sub(&t);
            }
        }
    }
    Some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::field::{q, Q};

    fn v(d: &[i64]) -> SVec<Q> {
        sv_from_dense(&d.iter().map(|x| q(*x)).collect::<Vec<_>>())
    }

    #[test]
    fn kernel_annihilates() {
        let rows = vec![v(&[1, 2, 3, 4]), v(&[2, 4, 6, 8]), v(&[0, 1, 1, 0])];
        let k = kernel(&rows, 4, &());
        assert_eq!(k.len(), 2);
        for x in &k {
            assert!(mat_vec(&rows, x, &()).is_empty());
        }
    }

    #[test]
    fn solve_roundtrip() {
        let rows = vec![v(&[1, 1, 0]), v(&[0, 1, 1]), v(&[1, 0, 1])];
        let b = v(&[2, 3, 5]);
        let x = solve(&rows, 3, &b, &()).unwrap();
        assert_eq!(mat_vec(&rows, &x, &()), b);
    }

    #[test]
    fn intersection_dim() {
        let u = vec![v(&[1, 0, 0]), v(&[0, 1, 0])];
        let w = vec![v(&[0, 1, 0]), v(&[0, 0, 1])];
        assert_eq!(intersect(&u, &w, &()).len(), 1);
    }

    #[test]
    fn rref_is_reduced() {
        let mut e = Echelon::new(());
        for r in [v(&[1, 2, 3]), v(&[0, 1, 4]), v(&[1, 0, 0])] {
            e.add(&r);
        }
        let rr = e.rref();
        assert_eq!(rr, vec![v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])]);
    }
}
