//! Scalar fields used throughout: the rationals, prime fields, Gaussian
//! rationals and the ring F_p[i].

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational numbers.
pub type Q = BigRational;

/// Minimal field interface. Elements carry enough context (e.g. a modulus)
/// to build constants of the same field.
pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    type Ctx: Clone + fmt::Debug + Send + Sync;

    fn zero_of(ctx: &Self::Ctx) -> Self;
    fn one_of(ctx: &Self::Ctx) -> Self;
    fn from_int(v: i64, ctx: &Self::Ctx) -> Self;
    fn vanishes(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;
    fn ctx(&self) -> Self::Ctx;

    fn is_one(&self) -> bool {
        self.sub(&Self::one_of(&self.ctx())).vanishes()
    }
}

impl Field for BigRational {
    type Ctx = ();

    fn zero_of(_: &()) -> Self {
        BigRational::zero()
    }
    fn one_of(_: &()) -> Self {
        BigRational::one()
    }
    fn from_int(v: i64, _: &()) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        assert!(!Zero::is_zero(self), "inverse of zero");
        self.recip()
    }
    fn ctx(&self) {}
}

pub fn q(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

pub fn qr(a: i64, b: i64) -> Q {
    Q::new(BigInt::from(a), BigInt::from(b))
}

/// True when the denominator of `x` is a power of two, i.e. `x` lies in Z[1/2].
pub fn in_r(x: &Q) -> bool {
    let d = x.denom().clone();
    let mut d = d;
    let two = BigInt::from(2);
    while d.is_even() && !d.is_zero() {
        d /= &two;
    }
    d.is_one()
}

/// Formats a rational as "a/b" (or "a" when b = 1).
pub fn fmt_q(x: &Q) -> String {
    if x.denom().is_one() {
        format!("{}", x.numer())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let a: BigInt = a.trim().parse().ok()?;
        let b: BigInt = b.trim().parse().ok()?;
        if b.is_zero() {
            return None;
        }
        Some(Q::new(a, b))
    } else {
        Some(Q::from_integer(s.parse().ok()?))
    }
}

/// Reduce a rational whose denominator is prime to `p` into F_p.
pub fn q_to_fp(x: &Q, p: u64) -> Option<Fp> {
    let pb = BigInt::from(p);
    let n = x.numer().mod_floor(&pb).to_u64()?;
    let d = x.denom().mod_floor(&pb).to_u64()?;
    if d == 0 {
        return None;
    }
    Some(Fp::new(n, p).mul(&Fp::new(d, p).inv()))
}

/// Element of the prime field F_p.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp {
    pub v: u64,
    pub p: u64,
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl Fp {
    pub fn new(v: u64, p: u64) -> Self {
        Fp { v: v % p, p }
    }
    pub fn from_i64(v: i64, p: u64) -> Self {
        Fp {
            v: v.rem_euclid(p as i64) as u64,
            p,
        }
    }
    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = *self;
        let mut acc = Fp::new(1, self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
    /// Signed representative in (-p/2, p/2].
    pub fn signed(&self) -> i64 {
        if self.v > self.p / 2 {
            self.v as i64 - self.p as i64
        } else {
            self.v as i64
        }
    }
}

impl Field for Fp {
    type Ctx = u64;

    fn zero_of(p: &u64) -> Self {
        Fp { v: 0, p: *p }
    }
    fn one_of(p: &u64) -> Self {
        Fp { v: 1 % *p, p: *p }
    }
    fn from_int(v: i64, p: &u64) -> Self {
        Fp::from_i64(v, *p)
    }
    fn vanishes(&self) -> bool {
        self.v == 0
    }
    fn add(&self, o: &Self) -> Self {
        Fp {
            v: (self.v + o.v) % self.p,
            p: self.p,
        }
    }
    fn sub(&self, o: &Self) -> Self {
        Fp {
            v: (self.v + self.p - o.v) % self.p,
            p: self.p,
        }
    }
    fn mul(&self, o: &Self) -> Self {
        Fp {
            v: ((self.v as u128 * o.v as u128) % self.p as u128) as u64,
            p: self.p,
        }
    }
    fn neg(&self) -> Self {
        Fp {
            v: (self.p - self.v) % self.p,
            p: self.p,
        }
    }
    fn inv(&self) -> Self {
        assert!(self.v != 0, "inverse of zero in F_{}", self.p);
        self.pow(self.p - 2)
    }
    fn ctx(&self) -> u64 {
        self.p
    }
}

/// Gaussian rational a + b·i.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussQ {
    pub re: Q,
    pub im: Q,
}

impl fmt::Debug for GaussQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if Zero::is_zero(&self.im) {
            write!(f, "{}", fmt_q(&self.re))
        } else {
            write!(f, "{}+{}i", fmt_q(&self.re), fmt_q(&self.im))
        }
    }
}

impl GaussQ {
    pub fn real(re: Q) -> Self {
        GaussQ { re, im: Q::zero() }
    }
    pub fn i() -> Self {
        GaussQ {
            re: Q::zero(),
            im: Q::one(),
        }
    }
    pub fn is_real(&self) -> bool {
        Zero::is_zero(&self.im)
    }
}

impl Field for GaussQ {
    type Ctx = ();

    fn zero_of(_: &()) -> Self {
        GaussQ::real(Q::zero())
    }
    fn one_of(_: &()) -> Self {
        GaussQ::real(Q::one())
    }
    fn from_int(v: i64, _: &()) -> Self {
        GaussQ::real(q(v))
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.im)
    }
    fn add(&self, o: &Self) -> Self {
        GaussQ {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }
    fn sub(&self, o: &Self) -> Self {
        GaussQ {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }
    fn mul(&self, o: &Self) -> Self {
        GaussQ {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
    fn neg(&self) -> Self {
        GaussQ {
            re: -&self.re,
            im: -&self.im,
        }
    }
    fn inv(&self) -> Self {
        let n = &self.re * &self.re + &self.im * &self.im;
        assert!(!Zero::is_zero(&n), "inverse of zero");
        GaussQ {
            re: &self.re / &n,
            im: -&self.im / &n,
        }
    }
    fn ctx(&self) {}
}

/// Element a + b·i of F_p[i] = F_p[x]/(x² + 1). This is a field when
/// p ≡ 3 mod 4; otherwise it is only a ring and `inv` may panic.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FpI {
    pub a: Fp,
    pub b: Fp,
}

impl fmt::Debug for FpI {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}i", self.a.v, self.b.v)
    }
}

impl FpI {
    pub fn from_gauss(x: &GaussQ, p: u64) -> Option<Self> {
        Some(FpI {
            a: q_to_fp(&x.re, p)?,
            b: q_to_fp(&x.im, p)?,
        })
    }
}

impl Field for FpI {
    type Ctx = u64;

    fn zero_of(p: &u64) -> Self {
        FpI {
            a: Fp::zero_of(p),
            b: Fp::zero_of(p),
        }
    }
    fn one_of(p: &u64) -> Self {
        FpI {
            a: Fp::one_of(p),
            b: Fp::zero_of(p),
        }
    }
    fn from_int(v: i64, p: &u64) -> Self {
        FpI {
            a: Fp::from_i64(v, *p),
            b: Fp::zero_of(p),
        }
    }
    fn vanishes(&self) -> bool {
        self.a.vanishes() && self.b.vanishes()
    }
    fn add(&self, o: &Self) -> Self {
        FpI {
            a: self.a.add(&o.a),
            b: self.b.add(&o.b),
        }
    }
    fn sub(&self, o: &Self) -> Self {
        FpI {
            a: self.a.sub(&o.a),
            b: self.b.sub(&o.b),
        }
    }
    fn mul(&self, o: &Self) -> Self {
        FpI {
            a: self.a.mul(&o.a).sub(&self.b.mul(&o.b)),
            b: self.a.mul(&o.b).add(&self.b.mul(&o.a)),
        }
    }
    fn neg(&self) -> Self {
        FpI {
            a: self.a.neg(),
            b: self.b.neg(),
        }
    }
    fn inv(&self) -> Self {
        let n = self.a.mul(&self.a).add(&self.b.mul(&self.b));
        let ni = n.inv();
        FpI {
            a: self.a.mul(&ni),
            b: self.b.neg().mul(&ni),
        }
    }
    fn ctx(&self) -> u64 {
        self.a.p
    }
}

/// Fields that receive rationals with denominators prime to the
/// characteristic.
pub trait FromQ: Field {
    fn from_q(x: &Q, ctx: &Self::Ctx) -> Self;
}

impl FromQ for BigRational {
    fn from_q(x: &Q, _: &()) -> Self {
        x.clone()
    }
}

impl FromQ for Fp {
    fn from_q(x: &Q, p: &u64) -> Self {
        q_to_fp(x, *p).unwrap_or_else(|| panic!("{} has denominator divisible by {p}", fmt_q(x)))
    }
}

impl FromQ for GaussQ {
    fn from_q(x: &Q, _: &()) -> Self {
        GaussQ::real(x.clone())
    }
}

impl FromQ for FpI {
    fn from_q(x: &Q, p: &u64) -> Self {
        FpI {
            a: Fp::from_q(x, p),
            b: Fp::zero_of(p),
        }
    }
}

/// Integer square root of a non-negative BigInt when it is a perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

/// Square root of a non-negative rational when it is a rational square.
pub fn q_sqrt(x: &Q) -> Option<Q> {
    Some(Q::new(exact_sqrt(x.numer())?, exact_sqrt(x.denom())?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_inverse() {
        for p in [3u64, 5, 7, 11] {
            for v in 1..p {
                let x = Fp::new(v, p);
                assert!(x.mul(&x.inv()).is_one());
            }
        }
    }

    #[test]
    fn r_membership() {
        assert!(in_r(&qr(3, 8)));
        assert!(!in_r(&qr(1, 6)));
        assert!(in_r(&q(-7)));
    }

    #[test]
    fn rational_strings() {
        assert_eq!(fmt_q(&qr(-6, 4)), "-3/2");
        assert_eq!(fmt_q(&q(5)), "5");
        assert_eq!(parse_q("-3/2"), Some(qr(-3, 2)));
    }

    #[test]
    fn gauss_inverse() {
        let z = GaussQ {
            re: q(2),
            im: q(-3),
        };
        assert!(z.mul(&z.inv()).is_one());
    }
}
