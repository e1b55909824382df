//! The quadratic Casimir element, in the printed root-vector shape and in
//! the dual-basis form, with its centrality check and Q-image.

use num_traits::Zero;
use serde::Serialize;

use super::{poly_axpy, poly_sub, Part, PbwContext, Poly};
use crate::algebra::{fundamental_coweights, normalized_killing, root_data};
use crate::error::{Error, Result};
use crate::exact::linalg::{inverse, SVec};
use crate::exact::{fmt_q, q, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CasimirForm {
    /// 2Σ e_α e_{-α}/κ_α + Σ t_i h_{α_i} + Σ h_α/κ_α, h_α = [e_α, e_{-α}].
    Literal,
    /// 2Σ e_α e_{-α}/κ_α − Σ h_α/κ_α + Σ t_i h_{α_i}/κ_{α_i}.
    Corrected,
    /// Σ X_a X^a over κ-dual bases.
    DualBasis,
}

#[derive(Clone, Debug)]
pub struct CasimirElement {
    pub form: CasimirForm,
    pub u: Poly,
    pub q_image: Poly,
    /// Basis elements y_a with [C, y_a] ≠ 0.
    pub noncentral: Vec<usize>,
    pub shape_ok: bool,
}

impl CasimirElement {
    pub fn central(&self) -> bool {
        self.noncentral.is_empty()
    }

    pub fn summary(&self, ctx: &PbwContext) -> serde_json::Value {
        let mut lin = 0;
        let mut mixed = 0;
        let mut zero = 0;
        for m in self.q_image.keys() {
            match classify(ctx, m) {
                Some(Term::E) => lin += 1,
                Some(Term::Mixed) => mixed += 1,
                Some(Term::Degree0) => zero += 1,
                None => {}
            }
        }
        serde_json::json!({
            "form": format!("{:?}", self.form),
            "central": self.central(),
            "shape_ok": self.shape_ok,
            "two_e_terms": lin,
            "mixed_terms": mixed,
            "degree_zero_terms": zero,
        })
    }
}

enum Term {
    E,
    Mixed,
    Degree0,
}

fn classify(ctx: &PbwContext, m: &[u16]) -> Option<Term> {
    let deg = |a: u16| ctx.degrees[a as usize];
    let is_x = |a: u16| matches!(ctx.part(a as usize), Part::Centralizer | Part::Complement);
    if m.iter().all(|a| is_x(*a) && deg(*a) == 0) {
        return Some(Term::Degree0);
    }
    if m.len() == 1 && deg(m[0]) == 2 {
        return Some(Term::E);
    }
    if m.len() == 2 && is_x(m[0]) && deg(m[0]) == 1 && ctx.part(m[1] as usize) == Part::Z {
        return Some(Term::Mixed);
    }
    None
}

pub fn casimir(ctx: &PbwContext, form: CasimirForm) -> Result<CasimirElement> {
    let g = &ctx.rep.g;
    let kappa = normalized_killing(g)?;
    let rd = root_data(g);
    let y = |v: &SVec<Q>| ctx.to_y(v);
    let unit = |b: usize| vec![(b, q(1))];
    let mut c = Poly::new();
    match form {
        CasimirForm::DualBasis => {
            let d = g.dim();
            let ginv = inverse(&kappa.gram, &())
                .ok_or_else(|| Error::Verification("κ is degenerate".into()))?;
            for a in 0..d {
                for b in 0..d {
                    if ginv[a][b].is_zero() {
                        continue;
                    }
                    let t = ctx.u_word(&[y(&unit(a)), y(&unit(b))]);
                    poly_axpy(&mut c, &ginv[a][b], &t);
                }
            }
        }
        CasimirForm::Literal | CasimirForm::Corrected => {
            let lit = form == CasimirForm::Literal;
            for (&p, &n) in rd.positive.iter().zip(&rd.negative) {
                let k = kappa.eval(&unit(p), &unit(n));
                let t = ctx.u_word(&[y(&unit(p)), y(&unit(n))]);
                poly_axpy(&mut c, &(q(2) / &k), &t);
                let h = g.bracket(&unit(p), &unit(n), &());
                let th = ctx.u_word(&[y(&h)]);
                let sign = if lit { q(1) } else { q(-1) };
                poly_axpy(&mut c, &(sign / &k), &th);
            }
            let tw = fundamental_coweights(g)
                .ok_or_else(|| Error::Verification("no fundamental coweights".into()))?;
            for (i, &si) in rd.simple_idx.iter().enumerate() {
                let ni = g.negative_of(si).unwrap();
                let h = g.bracket(&unit(si), &unit(ni), &());
                let t: SVec<Q> = tw[i]
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(k, x)| (k, x.clone()))
                    .collect();
                let k = kappa.eval(&unit(si), &unit(ni));
                let coef = if lit { q(1) } else { q(1) / &k };
                poly_axpy(&mut c, &coef, &ctx.u_word(&[y(&t), y(&h)]));
            }
        }
    }
    let mut noncentral = Vec::new();
    for a in 0..ctx.dim() {
        let x = ctx.u_word(&[unit(a)]);
        let comm = poly_sub(&ctx.u_multiply(&c, &x), &ctx.u_multiply(&x, &c));
        if !comm.is_empty() {
            noncentral.push(a);
        }
    }
    let q_image = ctx.q_project(&c);
    let shape_ok = shape(ctx, &q_image);
    Ok(CasimirElement {
        form,
        u: c,
        q_image,
        noncentral,
        shape_ok,
    })
}

/// Q-image = 2e + Σ y_i z_i + C' with y_i ∈ g(1) and C' ∈ U(g(0)).
fn shape(ctx: &PbwContext, img: &Poly) -> bool {
    let e = ctx.e_y();
    let mut lin: SVec<Q> = Vec::new();
    for (m, v) in img {
        match classify(ctx, m) {
            Some(Term::E) => lin.push((m[0] as usize, v.clone())),
            Some(_) => {}
            None => return false,
        }
    }
    lin.sort_by_key(|x| x.0);
    let want: SVec<Q> = e.iter().map(|(a, c)| (*a, c * q(2))).collect();
    lin == want
}

pub fn describe(p: &Poly, ctx: &PbwContext) -> Vec<(String, String)> {
    p.iter()
        .map(|(m, c)| (ctx.mono_name(m), fmt_q(c)))
        .collect()
}
