use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::int::Int;

/// Laurent polynomial in `s` with arbitrary-precision integer coefficients.
///
/// Stored densely from the lowest exponent `low`. Canonical form: the
/// coefficient vector is either empty (the zero polynomial, with `low == 0`)
/// or starts and ends with a nonzero coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    low: i64,
    coeffs: Vec<Int>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(Int::ONE, 0)
    }

    pub fn monomial(coeff: Int, exp: i64) -> Self {
        if coeff.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly { low: exp, coeffs: vec![coeff] }
    }

    pub fn constant(c: i64) -> Self {
        LaurentPoly::monomial(Int::Small(c), 0)
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Int)>>(terms: I) -> Self {
        let terms: Vec<(i64, Int)> = terms.into_iter().collect();
        if terms.is_empty() {
            return LaurentPoly::zero();
        }
        let low = terms.iter().map(|t| t.0).min().unwrap();
        let high = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![Int::ZERO; (high - low + 1) as usize];
        for (e, c) in terms {
            let slot = &mut coeffs[(e - low) as usize];
            *slot = &*slot + &c;
        }
        LaurentPoly::normalize(low, coeffs)
    }

    fn normalize(mut low: i64, mut coeffs: Vec<Int>) -> Self {
        while coeffs.last().is_some_and(Int::is_zero) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == coeffs.len() {
            return LaurentPoly::zero();
        }
        if lead > 0 {
            coeffs.drain(..lead);
            low += lead as i64;
        }
        LaurentPoly { low, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Number of nonzero terms.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn min_exp(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn max_exp(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    /// Nonzero terms as `(exponent, coefficient)` in ascending order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &Int)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i64, c))
    }

    pub fn coeff(&self, exp: i64) -> Int {
        if self.is_zero() || exp < self.low {
            return Int::ZERO;
        }
        self.coeffs.get((exp - self.low) as usize).cloned().unwrap_or(Int::ZERO)
    }

    /// `Some((c, e))` when the polynomial is the single term `c s^e`.
    pub fn as_monomial(&self) -> Option<(&Int, i64)> {
        (self.coeffs.len() == 1).then(|| (&self.coeffs[0], self.low))
    }

    /// `±s^k`.
    pub fn is_unit(&self) -> bool {
        self.as_monomial().is_some_and(|(c, _)| c.abs().is_one())
    }

    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: &Int) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly::normalize(self.low, self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn neg(&self) -> Self {
        LaurentPoly { low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let low = self.low.min(other.low);
        let high = self.max_exp().unwrap().max(other.max_exp().unwrap());
        let mut coeffs = vec![Int::ZERO; (high - low + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.low - low) as usize + i] = c.clone();
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            let slot = &mut coeffs[(other.low - low) as usize + i];
            *slot = &*slot + c;
        }
        LaurentPoly::normalize(low, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return LaurentPoly::zero();
        }
        let low = self.low + other.low;
        let len = self.coeffs.len() + other.coeffs.len() - 1;
        if let Some(out) = mul_small(&self.coeffs, &other.coeffs, len) {
            return LaurentPoly::normalize(low, out);
        }
        let mut acc = vec![BigInt::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let a = a.to_big();
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    acc[i + j] += &a * b.to_big();
                }
            }
        }
        LaurentPoly::normalize(low, acc.into_iter().map(Int::from_big).collect())
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = LaurentPoly::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        result
    }

    /// Exact quotient `self / d`, or `None` when the remainder is nonzero or
    /// an integer coefficient division is inexact.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        if let Some((c, e)) = d.as_monomial() {
            let coeffs: Option<Vec<Int>> = self.coeffs.iter().map(|x| x.div_exact(c)).collect();
            return Some(LaurentPoly { low: self.low - e, coeffs: coeffs? });
        }
        // Both are s^low times an ordinary polynomial with a nonzero constant
        // term, so Laurent divisibility reduces to polynomial divisibility.
        let mut rem: Vec<Int> = self.coeffs.clone();
        let dc = &d.coeffs;
        if rem.len() < dc.len() {
            return None;
        }
        let lead = dc.last().unwrap();
        let qlen = rem.len() - dc.len() + 1;
        let mut quot = vec![Int::ZERO; qlen];
        for k in (0..qlen).rev() {
            let top = &rem[k + dc.len() - 1];
            if top.is_zero() {
                continue;
            }
            let qk = top.div_exact(lead)?;
            for (j, c) in dc.iter().enumerate() {
                if !c.is_zero() {
                    let slot = &mut rem[k + j];
                    *slot = &*slot - &(&qk * c);
                }
            }
            quot[k] = qk;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(LaurentPoly::normalize(self.low - d.low, quot))
    }

    pub fn eval_f64(&self, s: f64) -> f64 {
        self.terms().map(|(e, c)| c.to_f64() * s.powi(e as i32)).sum()
    }

    /// Exact value at rational `q = s^2`; `None` if an odd power of `s` occurs.
    pub fn eval_rational_q(&self, q: &BigRational) -> Option<BigRational> {
        let mut acc = BigRational::zero();
        for (e, c) in self.terms() {
            if e % 2 != 0 {
                return None;
            }
            let k = e / 2;
            let base = if k >= 0 { q.clone() } else { q.recip() };
            let mut term = BigRational::one();
            for _ in 0..k.unsigned_abs() {
                term *= &base;
            }
            acc += term * BigRational::from_integer(c.to_big());
        }
        Some(acc)
    }

    /// True when every exponent is a multiple of `m`.
    pub fn exponents_divisible_by(&self, m: i64) -> bool {
        self.terms().all(|(e, _)| e.rem_euclid(m) == 0)
    }
}

/// Convolution in `i128` when all inputs are inline integers and no partial
/// sum overflows.
fn mul_small(a: &[Int], b: &[Int], len: usize) -> Option<Vec<Int>> {
    let a64: Option<Vec<i64>> = a.iter().map(Int::as_i64).collect();
    let b64: Option<Vec<i64>> = b.iter().map(Int::as_i64).collect();
    let (a64, b64) = (a64?, b64?);
    let mut acc = vec![0i128; len];
    for (i, &x) in a64.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b64.iter().enumerate() {
            if y != 0 {
                acc[i + j] = acc[i + j].checked_add(x as i128 * y as i128)?;
            }
        }
    }
    Some(acc.into_iter().map(Int::from_i128).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(e, c)| (e, Int::Small(c))))
    }

    #[test]
    fn canonical_form_drops_zeros() {
        let a = p(&[(-2, 0), (0, 3), (5, 0)]);
        assert_eq!(a, LaurentPoly::constant(3));
        assert!(p(&[(1, 1), (1, -1)]).is_zero());
        assert_eq!(LaurentPoly::zero().min_exp(), None);
    }

    #[test]
    fn factorization_division() {
        // (s^4 - 1) / (s^2 - 1) = s^2 + 1
        let num = p(&[(4, 1), (0, -1)]);
        let den = p(&[(2, 1), (0, -1)]);
        assert_eq!(num.div_exact(&den), Some(p(&[(2, 1), (0, 1)])));
        // (q^3 + q) / q = q^2 + 1 in s
        assert_eq!(p(&[(6, 1), (2, 1)]).div_exact(&p(&[(2, 1)])), Some(p(&[(4, 1), (0, 1)])));
        assert_eq!(p(&[(4, 1), (0, 1)]).div_exact(&den), None);
        assert_eq!(p(&[(0, 3)]).div_exact(&p(&[(0, 2)])), None);
    }

    #[test]
    fn large_coefficients_survive() {
        let x = p(&[(0, 1), (1, -3_000_000_000)]);
        let y = x.pow(5);
        assert!(y.coeffs.iter().any(|c| matches!(c, Int::Big(_))));
        assert_eq!(y.div_exact(&x).unwrap(), x.pow(4));
    }
}
