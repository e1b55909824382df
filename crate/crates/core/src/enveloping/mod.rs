//! PBW arithmetic in U(g), the quotient Q = U(g)/U(g)m_χ with its x^i z^j
//! normal form, Kazhdan degrees, the W-algebra generators Θ and the
//! Casimir element.
//!
//! Everything is expressed in a basis y_0..y_{D-1} of g adapted to the
//! nilpotent: first a ℤ-basis x_1..x_r of g^e, then a lattice complement
//! x_{r+1}..x_m inside ⊕_{i≥0} g(i), then z_1..z_s, then a basis of m.
//! Monomials are non-decreasing index sequences in that order, so the
//! m-part of a PBW monomial is always a suffix and projecting to Q is a
//! substitution y ↦ χ(y).

mod casimir;
mod theta;

pub use casimir::{casimir, describe, CasimirElement, CasimirForm};
pub use theta::{
    augmentation_character, commutator_defect, commutator_presentations, lift_theta,
    low_degree_shift, pbw_basis_check, presentations_agree, theta_one, theta_one_variant,
    theta_zero, Augmentation, PbwReport, Presentation, ThetaGenerator, ThetaOneForm, WAlgebra,
};

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::algebra::normalized_killing;
use crate::error::{Error, Result};
use crate::exact::linalg::{inverse, SVec};
use crate::exact::{fmt_q, in_r, q, Q};
use crate::orbits::NilpotentRep;
use crate::slice::{integral_centralizer, split_lagrangian, LagrangianPair};

/// Non-decreasing sequence of basis indices.
pub type Mono = Vec<u16>;
/// Finitely supported combination of ordered monomials.
pub type Poly = BTreeMap<Mono, Q>;

pub fn poly_one() -> Poly {
    let mut p = Poly::new();
    p.insert(Vec::new(), q(1));
    p
}

pub fn poly_axpy(acc: &mut Poly, c: &Q, x: &Poly) {
    if c.is_zero() {
        return;
    }
    for (m, v) in x {
        let e = acc.entry(m.clone()).or_insert_with(Q::zero);
        *e += v * c;
        if e.is_zero() {
            acc.remove(m);
        }
    }
}

pub fn poly_sub(a: &Poly, b: &Poly) -> Poly {
    let mut out = a.clone();
    poly_axpy(&mut out, &q(-1), b);
    out
}

pub fn poly_scale(a: &Poly, c: &Q) -> Poly {
    let mut out = Poly::new();
    poly_axpy(&mut out, c, a);
    out
}

/// Every coefficient has a 2-power denominator.
pub fn poly_in_r(p: &Poly) -> bool {
    p.values().all(in_r)
}

/// Where a basis index sits in the ordered basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Part {
    /// x_k with k < r lies in g^e.
    Centralizer,
    Complement,
    Z,
    M,
}

/// The adapted basis with its structure constants and χ.
pub struct PbwContext {
    pub rep: NilpotentRep,
    pub pair: LagrangianPair,
    pub r: usize,
    pub m: usize,
    pub s: usize,
    /// y_a in Chevalley coordinates.
    pub basis: Vec<SVec<Q>>,
    pub degrees: Vec<i32>,
    pub chi: Vec<Q>,
    to_y: Vec<Vec<Q>>,
    brackets: Vec<Vec<SVec<Q>>>,
    memo: RefCell<HashMap<(u16, Mono, bool), Poly>>,
}

impl PbwContext {
    pub fn new(rep: &NilpotentRep) -> Result<Self> {
        let g = rep.g.clone();
        let ic = integral_centralizer(rep)?;
        let pair = split_lagrangian(rep)?;
        let kappa = normalized_killing(&g)?;
        let r = ic.basis.dim();
        let mut basis: Vec<SVec<Q>> = ic.basis.vectors.clone();
        basis.extend(ic.complement.iter().cloned());
        let m = basis.len();
        let s = pair.s();
        basis.extend(pair.z.iter().cloned());
        basis.extend(pair.z_prime.iter().cloned());
        for b in 0..g.dim() {
            if rep.degree(b) <= -2 {
                basis.push(vec![(b, q(1))]);
            }
        }
        let d = g.dim();
        if basis.len() != d || d > u16::MAX as usize {
            return Err(Error::Dimension(format!(
                "adapted basis has {} elements, expected {d}",
                basis.len()
            )));
        }
        let mut pmat = vec![vec![Q::zero(); d]; d];
        for (a, v) in basis.iter().enumerate() {
            for (i, c) in v {
                pmat[*i][a] = c.clone();
            }
        }
        let to_y = inverse(&pmat, &())
            .ok_or_else(|| Error::Verification("adapted vectors are not a basis".into()))?;
        let degrees: Vec<i32> = basis.iter().map(|v| rep.degree(v[0].0)).collect();
        let chi = basis.iter().map(|v| kappa.eval(&rep.e_coords, v)).collect();
        let mut ctx = PbwContext {
            rep: rep.clone(),
            pair,
            r,
            m,
            s,
            basis,
            degrees,
            chi,
            to_y,
            brackets: Vec::new(),
            memo: RefCell::new(HashMap::new()),
        };
        let mut br = vec![vec![Vec::new(); d]; d];
        for a in 0..d {
            for b in 0..d {
                let c = g.bracket(&ctx.basis[a], &ctx.basis[b], &());
                br[a][b] = ctx.to_y(&c);
            }
        }
        ctx.brackets = br;
        Ok(ctx)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn part(&self, a: usize) -> Part {
        if a < self.r {
            Part::Centralizer
        } else if a < self.m {
            Part::Complement
        } else if a < self.m + self.s {
            Part::Z
        } else {
            Part::M
        }
    }

    /// Chevalley coordinates to y-coordinates.
    pub fn to_y(&self, v: &SVec<Q>) -> SVec<Q> {
        let d = self.dim();
        let mut out = Vec::new();
        for a in 0..d {
            let mut acc = Q::zero();
            for (i, c) in v {
                let t = &self.to_y[a][*i];
                if !t.is_zero() {
                    acc += t * c;
                }
            }
            if !acc.is_zero() {
                out.push((a, acc));
            }
        }
        out
    }

    pub fn from_y(&self, v: &SVec<Q>) -> SVec<Q> {
        let mut acc: BTreeMap<usize, Q> = BTreeMap::new();
        for (a, c) in v {
            for (i, x) in &self.basis[*a] {
                *acc.entry(*i).or_insert_with(Q::zero) += c * x;
            }
        }
        acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
    }

    pub fn bracket_y(&self, x: &SVec<Q>, y: &SVec<Q>) -> SVec<Q> {
        let mut acc: BTreeMap<usize, Q> = BTreeMap::new();
        for (a, u) in x {
            for (b, v) in y {
                for (c, w) in &self.brackets[*a][*b] {
                    *acc.entry(*c).or_insert_with(Q::zero) += u * v * w;
                }
            }
        }
        acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
    }

    pub fn chi_of(&self, x: &SVec<Q>) -> Q {
        x.iter()
            .fold(Q::zero(), |acc, (a, c)| acc + c * &self.chi[*a])
    }

    /// Kazhdan weight of a generator: degree + 2.
    pub fn weight(&self, a: usize) -> i32 {
        self.degrees[a] + 2
    }

    pub fn kazhdan_mono(&self, m: &[u16]) -> i32 {
        m.iter().map(|a| self.weight(*a as usize)).sum()
    }

    /// Kazhdan degree Σ i_k(n_k + 2) + Σ j_k, or -1 for zero.
    pub fn kazhdan_degree(&self, p: &Poly) -> i32 {
        p.keys().map(|m| self.kazhdan_mono(m)).max().unwrap_or(-1)
    }

    /// Λ⁰ monomials: no z-factor and support inside x_1..x_r.
    pub fn is_lambda0(&self, m: &[u16]) -> bool {
        m.iter().all(|a| (*a as usize) < self.r)
    }

    /// y · (ordered monomial), straightened; in Q-mode elements of m reaching
    /// the right end are replaced by χ.
    pub fn act(&self, y: usize, mono: &[u16], qmode: bool) -> Poly {
        let key = (y as u16, mono.to_vec(), qmode);
        if let Some(p) = self.memo.borrow().get(&key) {
            return p.clone();
        }
        let out = self.act_raw(y, mono, qmode);
        self.memo.borrow_mut().insert(key, out.clone());
        out
    }

    fn act_raw(&self, y: usize, mono: &[u16], qmode: bool) -> Poly {
        let mut out = Poly::new();
        let in_m = qmode && self.part(y) == Part::M;
        if mono.is_empty() {
            if in_m {
                if !self.chi[y].is_zero() {
                    out.insert(Vec::new(), self.chi[y].clone());
                }
            } else {
                out.insert(vec![y as u16], q(1));
            }
            return out;
        }
        let w1 = mono[0] as usize;
        if !in_m && y <= w1 {
            let mut m = Vec::with_capacity(mono.len() + 1);
            m.push(y as u16);
            m.extend_from_slice(mono);
            out.insert(m, q(1));
            return out;
        }
        let rest = &mono[1..];
        let inner = self.act(y, rest, qmode);
        let moved = self.act_poly(w1, &inner, qmode);
        poly_axpy(&mut out, &q(1), &moved);
        for (c, coef) in &self.brackets[y][w1] {
            let t = self.act(*c, rest, qmode);
            poly_axpy(&mut out, coef, &t);
        }
        out
    }

    pub fn act_poly(&self, y: usize, p: &Poly, qmode: bool) -> Poly {
        let mut out = Poly::new();
        for (m, c) in p {
            let t = self.act(y, m, qmode);
            poly_axpy(&mut out, c, &t);
        }
        out
    }

    /// Left action of a g-element (y-coordinates).
    pub fn act_elem(&self, x: &SVec<Q>, p: &Poly, qmode: bool) -> Poly {
        let mut out = Poly::new();
        for (a, c) in x {
            let t = self.act_poly(*a, p, qmode);
            poly_axpy(&mut out, c, &t);
        }
        out
    }

    /// Product a·b of two PBW elements; in Q-mode `b` is an element of Q
    /// and `a` acts through its canonical lift.
    pub fn mul(&self, a: &Poly, b: &Poly, qmode: bool) -> Poly {
        let mut out = Poly::new();
        for (m, c) in a {
            let mut cur = b.clone();
            for y in m.iter().rev() {
                cur = self.act_poly(*y as usize, &cur, qmode);
            }
            poly_axpy(&mut out, c, &cur);
        }
        out
    }

    /// The U(g) element of a word of g-elements, straightened.
    pub fn u_word(&self, word: &[SVec<Q>]) -> Poly {
        self.word(word, false)
    }

    /// Image in Q of a word of g-elements.
    pub fn q_word(&self, word: &[SVec<Q>]) -> Poly {
        self.word(word, true)
    }

    fn word(&self, word: &[SVec<Q>], qmode: bool) -> Poly {
        let mut cur = poly_one();
        for x in word.iter().rev() {
            cur = self.act_elem(x, &cur, qmode);
        }
        cur
    }

    pub fn u_multiply(&self, a: &Poly, b: &Poly) -> Poly {
        self.mul(a, b, false)
    }

    pub fn q_project(&self, u: &Poly) -> Poly {
        self.mul(u, &poly_one(), true)
    }

    /// a·h − χ(a)h for a ∈ m; zero exactly when h is ad-a-invariant in Q.
    pub fn m_defect(&self, a: usize, h: &Poly) -> Poly {
        let lhs = self.act_poly(a, h, true);
        poly_sub(&lhs, &poly_scale(h, &self.chi[a]))
    }

    pub fn m_indices(&self) -> std::ops::Range<usize> {
        self.m + self.s..self.dim()
    }

    pub fn is_m_invariant(&self, h: &Poly) -> bool {
        self.m_indices().all(|a| self.m_defect(a, h).is_empty())
    }

    pub fn gen_name(&self, a: usize) -> String {
        match self.part(a) {
            Part::Centralizer | Part::Complement => format!("x{}", a + 1),
            Part::Z => format!("z{}", a - self.m + 1),
            Part::M => format!("m{}", a - self.m - self.s + 1),
        }
    }

    pub fn mono_name(&self, m: &[u16]) -> String {
        if m.is_empty() {
            return "1".into();
        }
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < m.len() {
            let mut j = i;
            while j < m.len() && m[j] == m[i] {
                j += 1;
            }
            let n = self.gen_name(m[i] as usize);
            parts.push(if j - i > 1 {
                format!("{n}^{}", j - i)
            } else {
                n
            });
            i = j;
        }
        parts.join("*")
    }

    pub fn poly_strings(&self, p: &Poly) -> Vec<(String, String)> {
        p.iter()
            .map(|(m, c)| (self.mono_name(m), fmt_q(c)))
            .collect()
    }

    /// e written in the adapted basis; it lies in g^e(2).
    pub fn e_y(&self) -> SVec<Q> {
        self.to_y(&self.rep.e_coords)
    }

    pub fn is_unit(p: &Poly, m: &[u16]) -> bool {
        p.get(m).is_some_and(|c| c.is_one())
    }
}

#[cfg(test)]
mod tests;
