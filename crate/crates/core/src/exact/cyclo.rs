//! The ring F[ζ]/(ζ⁴ + 1) over a base field F. Over ℚ this is the
//! cyclotomic field ℚ(ζ_8), which contains i = ζ² and √2 = ζ - ζ³. Over
//! F_p it is only a ring, used for identity checks after reduction.

use std::fmt;

use super::field::{Field, FromQ, Q};
use super::linalg::inverse;

#[derive(Clone, PartialEq)]
pub struct Cyc8<F: Field> {
    pub c: [F; 4],
}

impl<F: Field> fmt::Debug for Cyc8<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({:?}, {:?}, {:?}, {:?})",
            self.c[0], self.c[1], self.c[2], self.c[3]
        )
    }
}

impl<F: Field> Cyc8<F> {
    pub fn base(x: F) -> Self {
        let z = F::zero_of(&x.ctx());
        Cyc8 {
            c: [x, z.clone(), z.clone(), z],
        }
    }

    /// ζ^k for k = 0..8.
    pub fn zeta_pow(k: usize, ctx: &F::Ctx) -> Self {
        let mut c = [
            F::zero_of(ctx),
            F::zero_of(ctx),
            F::zero_of(ctx),
            F::zero_of(ctx),
        ];
        let k = k % 8;
        c[k % 4] = if k < 4 {
            F::one_of(ctx)
        } else {
            F::one_of(ctx).neg()
        };
        Cyc8 { c }
    }

    pub fn is_base(&self) -> bool {
        self.c[1..].iter().all(|x| x.vanishes())
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Cyc8<G> {
        Cyc8 {
            c: [f(&self.c[0]), f(&self.c[1]), f(&self.c[2]), f(&self.c[3])],
        }
    }
}

impl<F: Field> Field for Cyc8<F> {
    type Ctx = F::Ctx;

    fn zero_of(ctx: &F::Ctx) -> Self {
        Cyc8::base(F::zero_of(ctx))
    }
    fn one_of(ctx: &F::Ctx) -> Self {
        Cyc8::base(F::one_of(ctx))
    }
    fn from_int(v: i64, ctx: &F::Ctx) -> Self {
        Cyc8::base(F::from_int(v, ctx))
    }
    fn vanishes(&self) -> bool {
        self.c.iter().all(|x| x.vanishes())
    }
    fn add(&self, o: &Self) -> Self {
        Cyc8 {
            c: std::array::from_fn(|k| self.c[k].add(&o.c[k])),
        }
    }
    fn sub(&self, o: &Self) -> Self {
        Cyc8 {
            c: std::array::from_fn(|k| self.c[k].sub(&o.c[k])),
        }
    }
    fn mul(&self, o: &Self) -> Self {
        let ctx = self.ctx();
        let mut c = [
            F::zero_of(&ctx),
            F::zero_of(&ctx),
            F::zero_of(&ctx),
            F::zero_of(&ctx),
        ];
        for i in 0..4 {
            if self.c[i].vanishes() {
                continue;
            }
            for j in 0..4 {
                if o.c[j].vanishes() {
                    continue;
                }
                let t = self.c[i].mul(&o.c[j]);
                let k = i + j;
                if k < 4 {
                    c[k] = c[k].add(&t);
                } else {
                    c[k - 4] = c[k - 4].sub(&t);
                }
            }
        }
        Cyc8 { c }
    }
    fn neg(&self) -> Self {
        Cyc8 {
            c: std::array::from_fn(|k| self.c[k].neg()),
        }
    }
    /// Inverse through the 4×4 multiplication matrix. Panics on zero
    /// divisors.
    fn inv(&self) -> Self {
        let ctx = self.ctx();
        if self.is_base() {
            return Cyc8::base(self.c[0].inv());
        }
        // column j of M is self·ζ^j
        let cols: Vec<Cyc8<F>> = (0..4).map(|j| self.mul(&Cyc8::zeta_pow(j, &ctx))).collect();
        let m: Vec<Vec<F>> = (0..4)
            .map(|r| (0..4).map(|j| cols[j].c[r].clone()).collect())
            .collect();
        let mi = inverse(&m, &ctx).expect("zero divisor in F[ζ8]");
        Cyc8 {
            c: std::array::from_fn(|r| mi[r][0].clone()),
        }
    }
    fn ctx(&self) -> F::Ctx {
        self.c[0].ctx()
    }
}

impl<F: FromQ> FromQ for Cyc8<F> {
    fn from_q(x: &Q, ctx: &F::Ctx) -> Self {
        Cyc8::base(F::from_q(x, ctx))
    }
}

/// √r in ℚ(ζ_8) when r = ±2^a·q² for rational q.
pub fn sqrt_in_cyc8(r: &Q) -> Option<Cyc8<Q>> {
    use num_traits::{Signed, Zero};
    if r.is_zero() {
        return Some(Cyc8::zero_of(&()));
    }
    let neg = r.is_negative();
    let a = r.abs();
    let unit = |k| Cyc8::<Q>::zeta_pow(k, &());
    let (root, class) = if let Some(s) = super::field::q_sqrt(&a) {
        (s, Cyc8::one_of(&()))
    } else {
        let half = &a / Q::from_integer(2.into());
        let s = super::field::q_sqrt(&half)?;
        // √2 = ζ - ζ³
        (s, unit(1).sub(&unit(3)))
    };
    let mut out = class.mul(&Cyc8::base(root));
    if neg {
        out = out.mul(&unit(2));
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::field::{q, qr, Fp};

    #[test]
    fn zeta_has_order_eight() {
        let z = Cyc8::<Q>::zeta_pow(1, &());
        let mut p = Cyc8::one_of(&());
        for _ in 0..8 {
            p = p.mul(&z);
        }
        assert!(p.is_one());
    }

    #[test]
    fn square_roots() {
        for r in [q(2), q(-2), q(-1), qr(9, 8), q(-18)] {
            let s = sqrt_in_cyc8(&r).unwrap();
            assert_eq!(s.mul(&s), Cyc8::base(r));
        }
        assert!(sqrt_in_cyc8(&q(3)).is_none());
    }

    #[test]
    fn inverse_roundtrip() {
        let x = Cyc8 {
            c: [q(1), q(2), qr(-1, 3), q(5)],
        };
        assert!(x.mul(&x.inv()).is_one());
        let y = x.map(|v| Fp::from_q(v, &11));
        let _ = y.mul(&y);
    }
}
