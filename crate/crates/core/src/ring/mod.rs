//! Exact coefficient ring.
//!
//! Elements are `a + b·r` where `a`, `b` are Laurent polynomials in
//! `s = q^{1/2}` and `r` is the positive square root of `q^2 + 1 + q^{-2}`,
//! so `r·r = s^4 + 1 + s^{-4}`. `t = q^2 = s^4` is a display convention.

mod int;
mod laurent;
mod text;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;

pub use int::Int;
pub use laurent::LaurentPoly;
pub use text::{parse, Rendering, Variable};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct RingElem {
    rational: LaurentPoly,
    radical: LaurentPoly,
}

/// `r^2 = s^4 + 1 + s^{-4}`.
pub fn radical_square() -> LaurentPoly {
    LaurentPoly::from_terms([(4, Int::ONE), (0, Int::ONE), (-4, Int::ONE)])
}

impl RingElem {
    pub fn new(rational: LaurentPoly, radical: LaurentPoly) -> Self {
        RingElem { rational, radical }
    }

    pub fn zero() -> Self {
        RingElem::default()
    }

    pub fn one() -> Self {
        RingElem::int(1)
    }

    pub fn int(c: i64) -> Self {
        RingElem::from(LaurentPoly::constant(c))
    }

    /// `c·s^k`.
    pub fn mono(c: i64, s_exp: i64) -> Self {
        RingElem::from(LaurentPoly::monomial(Int::Small(c), s_exp))
    }

    /// `s^k`.
    pub fn s_pow(k: i64) -> Self {
        RingElem::mono(1, k)
    }

    /// `q^k = s^{2k}`.
    pub fn q_pow(k: i64) -> Self {
        RingElem::mono(1, 2 * k)
    }

    /// The radical generator `r`.
    pub fn rad() -> Self {
        RingElem::new(LaurentPoly::zero(), LaurentPoly::one())
    }

    /// Build from `(coefficient, exponent of q)` pairs.
    pub fn from_q_terms(terms: &[(i64, i64)]) -> Self {
        RingElem::from(LaurentPoly::from_terms(
            terms.iter().map(|&(c, e)| (2 * e, Int::Small(c))),
        ))
    }

    pub fn rational_part(&self) -> &LaurentPoly {
        &self.rational
    }

    pub fn radical_part(&self) -> &LaurentPoly {
        &self.radical
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.radical.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.radical.is_zero() && self.rational.is_one()
    }

    pub fn has_radical(&self) -> bool {
        !self.radical.is_zero()
    }

    /// Units of the ring used here: `±s^k` with no radical part.
    pub fn is_unit(&self) -> bool {
        self.radical.is_zero() && self.rational.is_unit()
    }

    /// `Some((±1, k))` when `self = ±s^k`.
    pub fn as_unit(&self) -> Option<(i64, i64)> {
        if !self.is_unit() {
            return None;
        }
        let (c, e) = self.rational.as_monomial()?;
        Some((if c.is_negative() { -1 } else { 1 }, e))
    }

    /// Inverse of a unit `±s^k`.
    pub fn unit_inverse(&self) -> Option<RingElem> {
        self.as_unit().map(|(c, e)| RingElem::mono(c, -e))
    }

    pub fn term_count(&self) -> usize {
        self.rational.term_count() + self.radical.term_count()
    }

    pub fn pow(&self, n: u32) -> RingElem {
        let mut result = RingElem::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        result
    }

    /// Multiply by `s^k`.
    pub fn shift(&self, k: i64) -> RingElem {
        RingElem::new(self.rational.shift(k), self.radical.shift(k))
    }

    /// `a - b·r`.
    pub fn conjugate(&self) -> RingElem {
        RingElem::new(self.rational.clone(), self.radical.neg())
    }

    /// `(a + b r)(a - b r) = a^2 - b^2 r^2`, a radical-free element.
    pub fn norm(&self) -> LaurentPoly {
        let a2 = self.rational.mul(&self.rational);
        let b2 = self.radical.mul(&self.radical).mul(&radical_square());
        a2.sub(&b2)
    }

    /// Exact quotient `self / divisor`.
    ///
    /// Division by a radical-bearing element goes through the conjugate; all
    /// remaining work is univariate Laurent division on each component. Any
    /// nonzero remainder is reported as [`Error::InexactDivision`].
    pub fn exact_div(&self, divisor: &RingElem) -> Result<RingElem> {
        if divisor.is_zero() {
            return Err(Error::DomainError("division by zero".into()));
        }
        let (num, den) = if divisor.has_radical() {
            (self * &divisor.conjugate(), divisor.norm())
        } else {
            (self.clone(), divisor.rational.clone())
        };
        let inexact = || Error::InexactDivision(format!("({self}) / ({divisor})"));
        let rational = num.rational.div_exact(&den).ok_or_else(inexact)?;
        let radical = num.radical.div_exact(&den).ok_or_else(inexact)?;
        Ok(RingElem::new(rational, radical))
    }

    /// Value at real `s` (so `q = s^2`), with `r` the positive root of
    /// `s^4 + 1 + s^{-4}`.
    pub fn eval_at_s(&self, s: f64) -> f64 {
        let rational = self.rational.eval_f64(s);
        if self.radical.is_zero() {
            return rational;
        }
        let r = (s.powi(4) + 1.0 + s.powi(-4)).sqrt();
        rational + r * self.radical.eval_f64(s)
    }

    /// Value at real `q`. For `q > 0` the positive root `s = √q` is used; for
    /// `q < 0` every power of `s` must be even.
    pub fn eval_numeric(&self, q: f64) -> Result<f64> {
        if q == 0.0 || !q.is_finite() {
            return Err(Error::DomainError(format!("cannot evaluate at q = {q}")));
        }
        if q > 0.0 {
            return Ok(self.eval_at_s(q.sqrt()));
        }
        if !self.rational.exponents_divisible_by(2) || !self.radical.exponents_divisible_by(2) {
            return Err(Error::DomainError(format!(
                "odd power of s has no real value at q = {q}"
            )));
        }
        let q_poly = |p: &LaurentPoly| -> f64 { p.terms().map(|(e, c)| c.to_f64() * q.powi((e / 2) as i32)).sum() };
        let r = (q * q + 1.0 + 1.0 / (q * q)).sqrt();
        Ok(q_poly(&self.rational) + r * q_poly(&self.radical))
    }

    /// Exact value at rational `q`; requires no radical part and only even
    /// powers of `s`.
    pub fn eval_rational(&self, q: &BigRational) -> Result<BigRational> {
        if self.has_radical() {
            return Err(Error::DomainError("radical has no rational value".into()));
        }
        self.rational
            .eval_rational_q(q)
            .ok_or_else(|| Error::DomainError("odd power of s at rational q".into()))
    }
}

impl From<LaurentPoly> for RingElem {
    fn from(p: LaurentPoly) -> Self {
        RingElem::new(p, LaurentPoly::zero())
    }
}

impl From<i64> for RingElem {
    fn from(c: i64) -> Self {
        RingElem::int(c)
    }
}

impl Add for &RingElem {
    type Output = RingElem;
    fn add(self, rhs: &RingElem) -> RingElem {
        RingElem::new(self.rational.add(&rhs.rational), self.radical.add(&rhs.radical))
    }
}

impl Sub for &RingElem {
    type Output = RingElem;
    fn sub(self, rhs: &RingElem) -> RingElem {
        RingElem::new(self.rational.sub(&rhs.rational), self.radical.sub(&rhs.radical))
    }
}

impl Mul for &RingElem {
    type Output = RingElem;
    fn mul(self, rhs: &RingElem) -> RingElem {
        let (a, b, c, d) = (&self.rational, &self.radical, &rhs.rational, &rhs.radical);
        if b.is_zero() && d.is_zero() {
            return RingElem::from(a.mul(c));
        }
        let rational = a.mul(c).add(&b.mul(d).mul(&radical_square()));
        let radical = a.mul(d).add(&b.mul(c));
        RingElem::new(rational, radical)
    }
}

impl Neg for &RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        RingElem::new(self.rational.neg(), self.radical.neg())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RingElem {
            type Output = RingElem;
            fn $m(self, rhs: RingElem) -> RingElem {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RingElem> for RingElem {
            type Output = RingElem;
            fn $m(self, rhs: &RingElem) -> RingElem {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        -&self
    }
}

impl std::iter::Sum for RingElem {
    fn sum<I: Iterator<Item = RingElem>>(iter: I) -> RingElem {
        iter.fold(RingElem::zero(), |acc, x| &acc + &x)
    }
}

impl<'a> std::iter::Sum<&'a RingElem> for RingElem {
    fn sum<I: Iterator<Item = &'a RingElem>>(iter: I) -> RingElem {
        iter.fold(RingElem::zero(), |acc, x| &acc + x)
    }
}

/// Serialized as its text form in `s`, which [`parse`] reads back.
impl serde::Serialize for RingElem {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Variable::S).text)
    }
}
