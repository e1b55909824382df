//! Matrix realisations of so_N and sp_N: the bilinear form, the involution
//! σ(X) = -J⁻¹XᵀJ, a Chevalley basis, root data for the diagonal torus and
//! the normalised Killing form.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::field::FromQ;
use crate::exact::linalg::{det, inverse, sv_axpy, SVec};
use crate::exact::{q, qr, Field, Q};
use crate::matrix::Mat;
use crate::partitions::Epsilon;

/// Matrix unit E_{ab} with a coefficient, in labels.
type UnitTerm = (i32, i32, i64);

/// Position in 0..N of the basis vector v_label, with labels 1..r, 0 (N odd),
/// -r..-1.
pub fn pos(n: usize, label: i32) -> usize {
    let r = (n / 2) as i32;
    if label > 0 {
        (label - 1) as usize
    } else if label == 0 {
        debug_assert!(n % 2 == 1);
        r as usize
    } else {
        (n as i32 + label) as usize
    }
}

/// Inverse of [`pos`].
pub fn label_at(n: usize, p: usize) -> i32 {
    let r = n / 2;
    if p < r {
        p as i32 + 1
    } else if n % 2 == 1 && p == r {
        0
    } else {
        p as i32 - n as i32
    }
}

pub fn labels(n: usize) -> Vec<i32> {
    (0..n).map(|p| label_at(n, p)).collect()
}

/// The form (v_i, v_{-i}) = 1, (v_{-i}, v_i) = ε, (v_0, v_0) = 2.
#[derive(Clone, Debug)]
pub struct BilinearForm {
    pub n: usize,
    pub eps: Epsilon,
}

impl BilinearForm {
    /// (v_a, v_{-a}) for the label a.
    fn f(&self, a: i32) -> i64 {
        if a > 0 {
            1
        } else if a == 0 {
            2
        } else {
            self.eps.sign()
        }
    }

    pub fn pair(&self, a: i32, b: i32) -> i64 {
        if a == -b {
            self.f(a)
        } else {
            0
        }
    }

    pub fn gram(&self) -> Vec<Vec<i64>> {
        let ls = labels(self.n);
        ls.iter()
            .map(|&a| ls.iter().map(|&b| self.pair(a, b)).collect())
            .collect()
    }

    pub fn gram_mat<F: Field>(&self, ctx: &F::Ctx) -> Mat<F> {
        let mut m = Mat::zero(self.n);
        for a in labels(self.n) {
            m.add_entry(
                pos(self.n, a),
                pos(self.n, -a),
                &F::from_int(self.f(a), ctx),
            );
        }
        m
    }

    /// (u, v) for coordinate vectors.
    pub fn eval<F: Field>(&self, u: &SVec<F>, v: &SVec<F>, ctx: &F::Ctx) -> F {
        let mut acc = F::zero_of(ctx);
        for (i, x) in u {
            let a = label_at(self.n, *i);
            let j = pos(self.n, -a);
            if let Ok(k) = v.binary_search_by_key(&j, |e| e.0) {
                let t = x.mul(&v[k].1).mul(&F::from_int(self.f(a), ctx));
                acc = acc.add(&t);
            }
        }
        acc
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasisKind {
    /// h_k = E_kk - E_{-k,-k}, k = 1..r
    Cartan(usize),
    /// Root vector with weight given in ε-coordinates.
    Root(Vec<i64>),
}

#[derive(Clone, Debug)]
pub struct BasisElement {
    pub name: String,
    pub kind: BasisKind,
    /// Integer entries as (row label, col label, coefficient).
    pub terms: Vec<(i32, i32, i64)>,
    pub mat: Mat<Q>,
    pub key: (usize, usize),
    pub key_coef: i64,
}

impl BasisElement {
    pub fn weight(&self, rank: usize) -> Vec<i64> {
        match &self.kind {
            BasisKind::Cartan(_) => vec![0; rank],
            BasisKind::Root(w) => w.clone(),
        }
    }
    pub fn is_cartan(&self) -> bool {
        matches!(self.kind, BasisKind::Cartan(_))
    }
}

/// Lie type of the realised algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CartanType {
    B,
    C,
    D,
}

#[derive(Debug)]
pub struct ClassicalAlgebra {
    pub n: usize,
    pub eps: Epsilon,
    pub rank: usize,
    pub form: BilinearForm,
    pub basis: Vec<BasisElement>,
    /// Number of positive roots; basis = Cartan, positives, negatives.
    pub n_pos: usize,
    structure: Vec<Vec<Vec<(usize, i64)>>>,
    key_map: HashMap<(usize, usize), usize>,
}

fn ew(rank: usize, i: i32, j: i32) -> Vec<i64> {
    // weight of E_{i,j}: wt(i) - wt(j)
    let mut w = vec![0i64; rank];
    let mut put = |l: i32, s: i64| {
        if l > 0 {
            w[(l - 1) as usize] += s;
        } else if l < 0 {
            w[(-l - 1) as usize] -= s;
        }
    };
    put(i, 1);
    put(j, -1);
    w
}

impl ClassicalAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn cartan_type(&self) -> CartanType {
        match (self.eps, self.n % 2) {
            (Epsilon::Minus, _) => CartanType::C,
            (Epsilon::Plus, 1) => CartanType::B,
            _ => CartanType::D,
        }
    }

    /// so_N with N ≤ 4, so_6 and sp_2 coincide with (sums of) type A algebras.
    pub fn is_type_a_like(&self) -> bool {
        match self.eps {
            Epsilon::Plus => self.n <= 4 || self.n == 6,
            Epsilon::Minus => self.n == 2,
        }
    }

    pub fn name(&self) -> String {
        match self.eps {
            Epsilon::Plus => format!("so_{}", self.n),
            Epsilon::Minus => format!("sp_{}", self.n),
        }
    }

    /// σ(X) = -J⁻¹XᵀJ.
    pub fn sigma<F: Field>(&self, x: &Mat<F>) -> Mat<F> {
        let n = self.n;
        let mut out = Mat::zero(n);
        for (i, j, v) in x.nonzeros() {
            let (c, d) = (label_at(n, i), label_at(n, j));
            let ctx = v.ctx();
            let coef = F::from_int(self.form.f(c), &ctx)
                .mul(&F::from_int(self.form.f(d), &ctx).inv())
                .neg();
            out.add_entry(pos(n, -d), pos(n, -c), &v.mul(&coef));
        }
        out
    }

    pub fn contains<F: Field>(&self, x: &Mat<F>) -> bool {
        self.sigma(x) == *x
    }

    /// Coordinates of an element of g in the Chevalley basis (no check).
    pub fn coords<F: Field>(&self, x: &Mat<F>) -> SVec<F> {
        let mut out: Vec<(usize, F)> = Vec::new();
        for (i, j, v) in x.nonzeros() {
            if let Some(&b) = self.key_map.get(&(i, j)) {
                let c = self.basis[b].key_coef;
                let val = if c == 1 {
                    v.clone()
                } else {
                    v.mul(&F::from_int(c, &v.ctx()).inv())
                };
                out.push((b, val));
            }
        }
        out.sort_by_key(|e| e.0);
        out
    }

    /// Coordinates, verified by reconstruction.
    pub fn coords_checked<F: FromQ>(&self, x: &Mat<F>) -> Result<SVec<F>> {
        let c = self.coords(x);
        let ctx = match x.nonzeros().next() {
            Some((_, _, v)) => v.ctx(),
            None => return Ok(Vec::new()),
        };
        if self.element(&c, &ctx) != *x {
            return Err(Error::Verification(format!(
                "matrix is not in {}",
                self.name()
            )));
        }
        Ok(c)
    }

    pub fn basis_mat<F: FromQ>(&self, b: usize, ctx: &F::Ctx) -> Mat<F> {
        self.basis[b].mat.map(|v| F::from_q(v, ctx))
    }

    pub fn element<F: FromQ>(&self, c: &SVec<F>, ctx: &F::Ctx) -> Mat<F> {
        let mut m = Mat::zero(self.n);
        for (b, v) in c {
            for &(i, j, k) in &self.basis[*b].terms {
                let t = v.mul(&F::from_int(k, ctx));
                m.add_entry(pos(self.n, i), pos(self.n, j), &t);
            }
        }
        m
    }

    /// Integer structure constants: [x_a, x_b] = Σ c x_c.
    pub fn structure(&self, a: usize, b: usize) -> &[(usize, i64)] {
        &self.structure[a][b]
    }

    pub fn bracket<F: Field>(&self, x: &SVec<F>, y: &SVec<F>, ctx: &F::Ctx) -> SVec<F> {
        let mut acc: SVec<F> = Vec::new();
        for (a, u) in x {
            for (b, v) in y {
                let s = &self.structure[*a][*b];
                if s.is_empty() {
                    continue;
                }
                let uv = u.mul(v);
                let sv: SVec<F> = s.iter().map(|(c, k)| (*c, F::from_int(*k, ctx))).collect();
                acc = sv_axpy(&acc, &uv, &sv);
            }
        }
        acc
    }

    /// Matrix of ad x: rows index the output basis, columns the input basis.
    pub fn ad_rows<F: Field>(&self, x: &SVec<F>, ctx: &F::Ctx) -> Vec<SVec<F>> {
        let d = self.dim();
        let mut rows: Vec<SVec<F>> = vec![Vec::new(); d];
        for b in 0..d {
            let img = self.bracket(x, &vec![(b, F::one_of(ctx))], ctx);
            for (r, v) in img {
                rows[r].push((b, v));
            }
        }
        rows
    }

    /// Cartan element Σ a_k h_k as a diagonal weight functional value on a root.
    pub fn root_value(&self, root: &[i64], cartan: &[Q]) -> Q {
        root.iter()
            .zip(cartan)
            .fold(Q::zero(), |acc, (r, c)| acc + c * q(*r))
    }

    pub fn weight_of(&self, b: usize) -> Vec<i64> {
        self.basis[b].weight(self.rank)
    }

    pub fn negative_of(&self, b: usize) -> Option<usize> {
        let BasisKind::Root(w) = &self.basis[b].kind else {
            return None;
        };
        let neg: Vec<i64> = w.iter().map(|x| -x).collect();
        self.basis
            .iter()
            .position(|e| e.kind == BasisKind::Root(neg.clone()))
    }
}

fn cache() -> &'static Mutex<HashMap<(usize, Epsilon), Arc<ClassicalAlgebra>>> {
    type Cache = Mutex<HashMap<(usize, Epsilon), Arc<ClassicalAlgebra>>>;
    static C: OnceLock<Cache> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Shared, cached construction of so_N / sp_N.
pub fn algebra(n: usize, eps: Epsilon) -> Result<Arc<ClassicalAlgebra>> {
    if let Some(a) = cache().lock().unwrap().get(&(n, eps)) {
        return Ok(a.clone());
    }
    let a = Arc::new(build_algebra(n, eps)?);
    cache().lock().unwrap().insert((n, eps), a.clone());
    Ok(a)
}

/// Build the algebra with its Chevalley basis and structure constants.
pub fn build_algebra(n: usize, eps: Epsilon) -> Result<ClassicalAlgebra> {
    if n < 2 {
        return Err(Error::InvalidAlgebra(format!("N = {n} is too small")));
    }
    if eps == Epsilon::Minus && n % 2 == 1 {
        return Err(Error::InvalidAlgebra(format!("sp_N needs N even, got {n}")));
    }
    let rank = n / 2;
    let r = rank as i32;
    let mut cartan = Vec::new();
    let mut roots: Vec<(Vec<UnitTerm>, Vec<i64>)> = Vec::new();
    for k in 1..=r {
        cartan.push(vec![(k, k, 1), (-k, -k, -1)]);
    }
    for i in 1..=r {
        for j in 1..=r {
            if i != j {
                roots.push((vec![(i, j, 1), (-j, -i, -1)], ew(rank, i, j)));
            }
        }
    }
    match eps {
        Epsilon::Plus => {
            for i in 1..=r {
                for j in i + 1..=r {
                    roots.push((vec![(i, -j, 1), (j, -i, -1)], ew(rank, i, -j)));
                    roots.push((vec![(-j, i, 1), (-i, j, -1)], ew(rank, -j, i)));
                }
            }
            if n % 2 == 1 {
                for k in 1..=r {
                    roots.push((vec![(k, 0, 2), (0, -k, -1)], ew(rank, k, 0)));
                    roots.push((vec![(0, k, 1), (-k, 0, -2)], ew(rank, 0, k)));
                }
            }
        }
        Epsilon::Minus => {
            for i in 1..=r {
                for j in i + 1..=r {
                    roots.push((vec![(i, -j, 1), (j, -i, 1)], ew(rank, i, -j)));
                    roots.push((vec![(-i, j, 1), (-j, i, 1)], ew(rank, -i, j)));
                }
            }
            for k in 1..=r {
                roots.push((vec![(k, -k, 1)], ew(rank, k, -k)));
                roots.push((vec![(-k, k, 1)], ew(rank, -k, k)));
            }
        }
    }
    let simple = simple_roots(n, eps);
    let height = |w: &[i64]| -> i64 { simple_coefficients(&simple, w).iter().sum() };
    let is_pos = |w: &[i64]| w.iter().find(|x| **x != 0).is_some_and(|x| *x > 0);
    let mut pos_roots: Vec<_> = roots.iter().filter(|(_, w)| is_pos(w)).cloned().collect();
    pos_roots.sort_by(|a, b| height(&a.1).cmp(&height(&b.1)).then(b.1.cmp(&a.1)));
    let mut ordered: Vec<(Vec<UnitTerm>, BasisKind, String)> = Vec::new();
    for (k, t) in cartan.into_iter().enumerate() {
        ordered.push((t, BasisKind::Cartan(k + 1), format!("h{}", k + 1)));
    }
    let name = |t: &Vec<(i32, i32, i64)>| format!("e({},{})", t[0].0, t[0].1);
    for (t, w) in &pos_roots {
        ordered.push((t.clone(), BasisKind::Root(w.clone()), name(t)));
    }
    for (_, w) in &pos_roots {
        let neg: Vec<i64> = w.iter().map(|x| -x).collect();
        let (t, _) = roots
            .iter()
            .find(|(_, w2)| *w2 == neg)
            .expect("negative root");
        ordered.push((t.clone(), BasisKind::Root(neg), name(t)));
    }
    let form = BilinearForm { n, eps };
    let mut basis = Vec::new();
    let mut key_map = HashMap::new();
    for (idx, (terms, kind, nm)) in ordered.into_iter().enumerate() {
        let mut mat = Mat::zero(n);
        for &(i, j, c) in &terms {
            mat.add_entry(pos(n, i), pos(n, j), &q(c));
        }
        let key = (pos(n, terms[0].0), pos(n, terms[0].1));
        key_map.insert(key, idx);
        basis.push(BasisElement {
            name: nm,
            kind,
            terms: terms.clone(),
            mat,
            key,
            key_coef: terms[0].2,
        });
    }
    let mut alg = ClassicalAlgebra {
        n,
        eps,
        rank,
        form,
        n_pos: pos_roots.len(),
        basis,
        structure: Vec::new(),
        key_map,
    };
    let d = alg.dim();
    let want = match eps {
        Epsilon::Plus => n * (n - 1) / 2,
        Epsilon::Minus => n * (n + 1) / 2,
    };
    if d != want {
        return Err(Error::Verification(format!("dimension {d} != {want}")));
    }
    for b in &alg.basis {
        if !alg.contains(&b.mat) {
            return Err(Error::Verification(format!("{} is not σ-fixed", b.name)));
        }
    }
    let mut st = vec![vec![Vec::new(); d]; d];
    for a in 0..d {
        for b in a + 1..d {
            let br = alg.basis[a].mat.bracket(&alg.basis[b].mat);
            let c = alg.coords_checked(&br)?;
            let mut ints = Vec::new();
            for (i, v) in c {
                if !v.denom().is_one_int() {
                    return Err(Error::Verification(format!(
                        "non-integral structure constant [{}, {}]",
                        alg.basis[a].name, alg.basis[b].name
                    )));
                }
                ints.push((i, v.numer().to_i64().expect("small constant")));
            }
            st[b][a] = ints.iter().map(|(i, v)| (*i, -v)).collect();
            st[a][b] = ints;
        }
    }
    alg.structure = st;
    Ok(alg)
}

trait OneInt {
    fn is_one_int(&self) -> bool;
}
impl OneInt for num_bigint::BigInt {
    fn is_one_int(&self) -> bool {
        *self == num_bigint::BigInt::from(1)
    }
}

/// Simple roots in ε-coordinates.
pub fn simple_roots(n: usize, eps: Epsilon) -> Vec<Vec<i64>> {
    let r = n / 2;
    let mut out = Vec::new();
    for i in 0..r.saturating_sub(1) {
        let mut w = vec![0; r];
        w[i] = 1;
        w[i + 1] = -1;
        out.push(w);
    }
    if r == 0 {
        return out;
    }
    let mut last = vec![0; r];
    match (eps, n % 2) {
        (Epsilon::Minus, _) => last[r - 1] = 2,
        (Epsilon::Plus, 1) => last[r - 1] = 1,
        _ => {
            if r < 2 {
                return out;
            }
            last[r - 2] = 1;
            last[r - 1] = 1;
        }
    }
    out.push(last);
    out
}

/// Coefficients of a weight in the simple-root basis (exact; integral for roots).
pub fn simple_coefficients(simple: &[Vec<i64>], w: &[i64]) -> Vec<i64> {
    if simple.is_empty() {
        return Vec::new();
    }
    let k = simple.len();
    let r = w.len();
    // least squares is unnecessary: the simple roots span the root lattice,
    // so solve Sᵀ c = w on the rows where S has full rank.
    let cols: Vec<SVec<Q>> = simple
        .iter()
        .map(|s| {
            s.iter()
                .enumerate()
                .filter(|(_, v)| **v != 0)
                .map(|(i, v)| (i, q(*v)))
                .collect()
        })
        .collect();
    let b: SVec<Q> = w
        .iter()
        .enumerate()
        .filter(|(_, v)| **v != 0)
        .map(|(i, v)| (i, q(*v)))
        .collect();
    let _ = r;
    let sol = crate::exact::linalg::solve_cols(&cols, &b, &()).expect("weight in root span");
    let mut out = vec![0i64; k];
    for (i, v) in sol {
        assert!(
            v.denom() == &num_bigint::BigInt::from(1),
            "non-integral root coefficient"
        );
        out[i] = v.numer().to_i64().unwrap();
    }
    out
}

/// Root system data for the diagonal torus.
#[derive(Clone, Debug)]
pub struct RootData {
    pub rank: usize,
    /// Basis indices of the positive root vectors.
    pub positive: Vec<usize>,
    /// Basis indices of the negative root vectors, aligned with `positive`.
    pub negative: Vec<usize>,
    pub simple: Vec<Vec<i64>>,
    /// Basis index of e_{α_i} for each simple root.
    pub simple_idx: Vec<usize>,
    /// (ε_i | ε_j) = c0 δ_ij in the normalisation with short roots of length² 2.
    pub c0: i64,
    /// Ratio of long to short squared lengths.
    pub d: i64,
}

impl RootData {
    pub fn inner(&self, a: &[i64], b: &[i64]) -> i64 {
        self.c0 * a.iter().zip(b).map(|(x, y)| x * y).sum::<i64>()
    }
    pub fn n_roots(&self) -> usize {
        2 * self.positive.len()
    }
}

pub fn root_data(g: &ClassicalAlgebra) -> RootData {
    let r = g.rank;
    let positive: Vec<usize> = (r..r + g.n_pos).collect();
    let negative: Vec<usize> = positive
        .iter()
        .map(|&b| g.negative_of(b).expect("negative root"))
        .collect();
    let simple = simple_roots(g.n, g.eps);
    let simple_idx = simple
        .iter()
        .map(|s| {
            g.basis
                .iter()
                .position(|e| e.kind == BasisKind::Root(s.clone()))
                .expect("simple root vector")
        })
        .collect();
    let (c0, d) = match g.cartan_type() {
        CartanType::B => (2, 2),
        CartanType::C => (1, 2),
        CartanType::D => (1, 1),
    };
    RootData {
        rank: r,
        positive,
        negative,
        simple,
        simple_idx,
        c0,
        d,
    }
}

/// κ(X, Y) = c·tr(XY) with c fixed by the root-length normalisation.
#[derive(Clone, Debug)]
pub struct NormalizedKilling {
    pub c: Q,
    pub d: i64,
    /// Gram matrix on the Chevalley basis.
    pub gram: Vec<Vec<Q>>,
}

impl NormalizedKilling {
    pub fn eval(&self, x: &SVec<Q>, y: &SVec<Q>) -> Q {
        let mut acc = Q::zero();
        for (a, u) in x {
            for (b, v) in y {
                let g = &self.gram[*a][*b];
                if !g.is_zero() {
                    acc += u * v * g;
                }
            }
        }
        acc
    }

    pub fn eval_f<F: FromQ>(&self, x: &SVec<F>, y: &SVec<F>, ctx: &F::Ctx) -> F {
        let mut acc = F::zero_of(ctx);
        for (a, u) in x {
            for (b, v) in y {
                let g = &self.gram[*a][*b];
                if !g.is_zero() {
                    acc = acc.add(&u.mul(v).mul(&F::from_q(g, ctx)));
                }
            }
        }
        acc
    }

    pub fn gram_det(&self) -> Q {
        det(&self.gram, &())
    }
}

pub fn trace_constant(eps: Epsilon) -> Q {
    match eps {
        Epsilon::Plus => qr(1, 2),
        Epsilon::Minus => q(1),
    }
}

/// Build κ from the trace form and cross-check it against the root-data
/// formulas κ(e_α, e_{-β}) = δ 2d/(α|α) and κ(h_α, h_β) = 4d(α|β)/((α|α)(β|β)).
pub fn normalized_killing(g: &ClassicalAlgebra) -> Result<NormalizedKilling> {
    let rd = root_data(g);
    let c = trace_constant(g.eps);
    let d = g.dim();
    let mut gram = vec![vec![Q::zero(); d]; d];
    for a in 0..d {
        for b in a..d {
            let t = g.basis[a].mat.mul(&g.basis[b].mat).trace(&()) * &c;
            gram[a][b] = t.clone();
            gram[b][a] = t;
        }
    }
    // root vectors
    for (&p, &m) in rd.positive.iter().zip(&rd.negative) {
        let w = g.weight_of(p);
        let want = qr(2 * rd.d, rd.inner(&w, &w));
        if gram[p][m] != want {
            return Err(Error::Verification(format!(
                "κ(e_α, e_-α) = {} but the root formula gives {}",
                gram[p][m], want
            )));
        }
    }
    // coroots of simple roots
    let mut coroots = Vec::new();
    for (i, &si) in rd.simple_idx.iter().enumerate() {
        let ni = g.negative_of(si).unwrap();
        let h = g.bracket(&vec![(si, q(1))], &vec![(ni, q(1))], &());
        coroots.push((h, rd.simple[i].clone()));
    }
    let kn = NormalizedKilling {
        c: c.clone(),
        d: rd.d,
        gram,
    };
    for (ha, a) in &coroots {
        for (hb, b) in &coroots {
            let want = qr(4 * rd.d * rd.inner(a, b), rd.inner(a, a) * rd.inner(b, b));
            if kn.eval(ha, hb) != want {
                return Err(Error::Verification("κ(h_α, h_β) mismatch".into()));
            }
        }
    }
    Ok(kn)
}

/// Fundamental coweights t_j (α_i(t_j) = δ_ij) as Cartan coordinate vectors.
pub fn fundamental_coweights(g: &ClassicalAlgebra) -> Option<Vec<Vec<Q>>> {
    let rd = root_data(g);
    let r = g.rank;
    if rd.simple.len() != r {
        return None;
    }
    // matrix A[i][k] = α_i(h_k) = coefficient k of α_i
    let a: Vec<Vec<Q>> = rd
        .simple
        .iter()
        .map(|s| s.iter().map(|x| q(*x)).collect())
        .collect();
    let inv = inverse(&a, &())?;
    // t_j = Σ_k inv[k][j] h_k
    Some(
        (0..r)
            .map(|j| (0..r).map(|k| inv[k][j].clone()).collect())
            .collect(),
    )
}

/// |det| is a power of two.
pub fn is_two_power_q(x: &Q) -> bool {
    if x.is_zero() {
        return false;
    }
    let n = x.numer().abs();
    let d = x.denom().abs();
    crate::exact::is_two_power(&n) && crate::exact::is_two_power(&d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_roundtrip() {
        for n in 2..9 {
            for p in 0..n {
                assert_eq!(pos(n, label_at(n, p)), p);
            }
        }
    }

    #[test]
    fn dimensions() {
        assert_eq!(build_algebra(4, Epsilon::Minus).unwrap().dim(), 10);
        assert_eq!(build_algebra(5, Epsilon::Plus).unwrap().dim(), 10);
        assert!(build_algebra(5, Epsilon::Minus).is_err());
    }
}
