//! Truncated Laurent series in `q^(1/8)` with exact rational coefficients.
//!
//! Coefficients are held as integer numerators over one shared positive
//! denominator, which keeps products and quotients in integer arithmetic.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use rug::{Integer, Rational};

use crate::error::{Error, Result};

/// Exponents are `n / GRID` for integer `n`.
pub const GRID: i64 = 8;

/// `sum_{start <= n < trunc} (num[n - start] / den) q^(n/8) + O(q^(trunc/8))`.
///
/// Canonical form: `num[0]` is nonzero (so `start` is the lowest exponent with
/// a nonzero coefficient), `den > 0`, and `gcd(den, num...) = 1`. A series with
/// no known nonzero coefficient has `start == trunc` and empty `num`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FracQSeries {
    start: i64,
    num: Vec<Integer>,
    den: Integer,
    trunc: i64,
}

impl FracQSeries {
    fn from_parts(start: i64, num: Vec<Integer>, den: Integer, trunc: i64) -> Self {
        debug_assert_eq!(num.len() as i64, trunc - start);
        let mut s = Self {
            start,
            num,
            den,
            trunc,
        };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        let lead = self.num.iter().position(|c| *c != 0);
        match lead {
            None => {
                self.num.clear();
                self.start = self.trunc;
                self.den = Integer::from(1);
                return;
            }
            Some(0) => {}
            Some(i) => {
                self.num.drain(..i);
                self.start += i as i64;
            }
        }
        if self.den.cmp0() == Ordering::Less {
            self.den = -std::mem::take(&mut self.den);
            for c in &mut self.num {
                *c = -std::mem::take(c);
            }
        }
        if self.den != 1 {
            let mut g = self.den.clone();
            for c in &self.num {
                if g == 1 {
                    break;
                }
                if *c != 0 {
                    g.gcd_mut(c);
                }
            }
            if g != 1 {
                self.den.div_exact_mut(&g);
                for c in &mut self.num {
                    c.div_exact_mut(&g);
                }
            }
        }
    }

    /// Build from sparse `(n, coefficient)` terms; terms at `n >= trunc` are dropped.
    pub fn from_terms<I>(terms: I, trunc: i64) -> Self
    where
        I: IntoIterator<Item = (i64, Rational)>,
    {
        let mut map: BTreeMap<i64, Rational> = BTreeMap::new();
        for (n, c) in terms {
            if n < trunc && c != 0 {
                *map.entry(n).or_default() += c;
            }
        }
        map.retain(|_, c| *c != 0);
        let start = match map.keys().next() {
            Some(&n) => n,
            None => return Self::zero(trunc),
        };
        let mut den = Integer::from(1);
        for c in map.values() {
            den.lcm_mut(c.denom());
        }
        let mut num = vec![Integer::new(); (trunc - start) as usize];
        for (n, c) in map {
            let (cn, cd) = c.into_numer_denom();
            num[(n - start) as usize] = cn * Integer::from(&den / &cd);
        }
        Self::from_parts(start, num, den, trunc)
    }

    /// Integer coefficients: `(n, c)` pairs.
    pub fn from_integer_terms<I>(terms: I, trunc: i64) -> Self
    where
        I: IntoIterator<Item = (i64, Integer)>,
    {
        let mut map: BTreeMap<i64, Integer> = BTreeMap::new();
        for (n, c) in terms {
            if n < trunc && c != 0 {
                *map.entry(n).or_default() += c;
            }
        }
        map.retain(|_, c| *c != 0);
        let start = match map.keys().next() {
            Some(&n) => n,
            None => return Self::zero(trunc),
        };
        let mut num = vec![Integer::new(); (trunc - start) as usize];
        for (n, c) in map {
            num[(n - start) as usize] = c;
        }
        Self::from_parts(start, num, Integer::from(1), trunc)
    }

    /// `O(q^(trunc/8))`.
    pub fn zero(trunc: i64) -> Self {
        Self {
            start: trunc,
            num: Vec::new(),
            den: Integer::from(1),
            trunc,
        }
    }

    pub fn constant(c: Rational, trunc: i64) -> Self {
        Self::from_terms([(0, c)], trunc)
    }

    pub fn one(trunc: i64) -> Self {
        Self::constant(Rational::from(1), trunc)
    }

    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    /// Lowest exponent numerator with a nonzero coefficient, if any is known.
    pub fn min_exp(&self) -> Option<i64> {
        (!self.num.is_empty()).then_some(self.start)
    }

    /// True when no known coefficient is nonzero.
    pub fn is_zero_known(&self) -> bool {
        self.num.is_empty()
    }

    /// Number of known coefficients starting at the leading one.
    pub fn precision(&self) -> i64 {
        self.trunc - self.start
    }

    pub fn denominator(&self) -> &Integer {
        &self.den
    }

    /// Coefficient of `q^(n/8)`. Reading at or past the truncation is an error.
    pub fn coeff(&self, n: i64) -> Result<Rational> {
        if n >= self.trunc {
            return Err(Error::PastTruncation {
                index: n,
                trunc: self.trunc,
            });
        }
        if n < self.start {
            return Ok(Rational::new());
        }
        let c = &self.num[(n - self.start) as usize];
        Ok(Rational::from((c.clone(), self.den.clone())))
    }

    pub fn leading(&self) -> Option<(i64, Rational)> {
        self.num
            .first()
            .map(|c| (self.start, Rational::from((c.clone(), self.den.clone()))))
    }

    /// Nonzero known terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, Rational)> + '_ {
        self.num
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(move |(i, c)| {
                (
                    self.start + i as i64,
                    Rational::from((c.clone(), self.den.clone())),
                )
            })
    }

    /// True when all known coefficients are integers.
    pub fn is_integral(&self) -> bool {
        self.den == 1
    }

    /// Lower the truncation to `t` (no-op if already lower).
    pub fn truncate(&self, t: i64) -> Self {
        if t >= self.trunc {
            return self.clone();
        }
        if t <= self.start {
            return Self::zero(t);
        }
        let num = self.num[..(t - self.start) as usize].to_vec();
        Self::from_parts(self.start, num, self.den.clone(), t)
    }

    /// Multiply by `q^(s/8)`.
    pub fn shift(&self, s: i64) -> Self {
        Self {
            start: self.start + s,
            num: self.num.clone(),
            den: self.den.clone(),
            trunc: self.trunc + s,
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            start: self.start,
            num: self.num.iter().map(|c| Integer::from(-c)).collect(),
            den: self.den.clone(),
            trunc: self.trunc,
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if *s == 0 {
            return Self::zero(self.trunc);
        }
        let num = self.num.iter().map(|c| Integer::from(c * s.numer())).collect();
        let den = Integer::from(&self.den * s.denom());
        Self::from_parts(self.start, num, den, self.trunc)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    fn combine(&self, other: &Self, subtract: bool) -> Self {
        let trunc = self.trunc.min(other.trunc);
        let start = self.start.min(other.start).min(trunc);
        let den = self.den.clone().lcm(&other.den);
        let fa = Integer::from(&den / &self.den);
        let fb = Integer::from(&den / &other.den);
        let mut num = vec![Integer::new(); (trunc - start) as usize];
        for (i, c) in self.num.iter().enumerate() {
            let n = self.start + i as i64;
            if n >= trunc {
                break;
            }
            if *c != 0 {
                num[(n - start) as usize] += Integer::from(c * &fa);
            }
        }
        for (i, c) in other.num.iter().enumerate() {
            let n = other.start + i as i64;
            if n >= trunc {
                break;
            }
            if *c != 0 {
                let t = Integer::from(c * &fb);
                let slot = &mut num[(n - start) as usize];
                if subtract {
                    *slot -= t;
                } else {
                    *slot += t;
                }
            }
        }
        Self::from_parts(start, num, den, trunc)
    }

    /// Product, with truncation `min(trunc_a + start_b, trunc_b + start_a)`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.is_zero_known() || other.is_zero_known() {
            return Err(Error::EmptyPrecisionWindow);
        }
        let start = self.start + other.start;
        let trunc = (self.trunc + other.start).min(other.trunc + self.start);
        let len = (trunc - start) as usize;
        let mut num = vec![Integer::new(); len];
        let bnz: Vec<(usize, &Integer)> = other
            .num
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .collect();
        for (i, a) in self.num.iter().enumerate().take(len) {
            if *a == 0 {
                continue;
            }
            for &(j, b) in &bnz {
                if i + j >= len {
                    break;
                }
                num[i + j] += a * b;
            }
        }
        let den = Integer::from(&self.den * &other.den);
        Ok(Self::from_parts(start, num, den, trunc))
    }

    /// Multiplicative inverse: leading exponent `-start`, truncation `trunc - 2*start`.
    pub fn invert(&self) -> Result<Self> {
        let len = self.num.len();
        if len == 0 {
            return Err(Error::ZeroLeadingCoefficient);
        }
        let a0 = &self.num[0];
        // 1/A = sum N_n / a0^(n+1) q^n with N_n = -sum_{j>=1} A_j a0^(j-1) N_{n-j}
        let mut weighted: Vec<(usize, Integer)> = Vec::new();
        let mut a0_pow = Integer::from(1);
        for j in 1..len {
            if self.num[j] != 0 {
                weighted.push((j, Integer::from(&self.num[j] * &a0_pow)));
            }
            a0_pow *= a0;
        }
        let mut n_coeffs: Vec<Integer> = Vec::with_capacity(len);
        n_coeffs.push(Integer::from(1));
        for n in 1..len {
            let mut acc = Integer::new();
            for (j, w) in &weighted {
                if *j > n {
                    break;
                }
                acc += w * &n_coeffs[n - j];
            }
            n_coeffs.push(-acc);
        }
        // common denominator a0^len; coefficient n is N_n a0^(len-1-n) / a0^len
        let mut num = vec![Integer::new(); len];
        let mut pow = Integer::from(1);
        for n in (0..len).rev() {
            num[n] = Integer::from(&n_coeffs[n] * &pow) * &self.den;
            pow *= a0;
        }
        let den = pow;
        Ok(Self::from_parts(
            -self.start,
            num,
            den,
            self.trunc - 2 * self.start,
        ))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.mul(&other.invert()?)
    }

    /// Integer power; negative exponents go through `invert`.
    pub fn pow(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return self.invert()?.pow(-e);
        }
        if e == 0 {
            if self.is_zero_known() {
                return Err(Error::EmptyPrecisionWindow);
            }
            return Ok(Self::one(self.precision()));
        }
        let mut base = self.clone();
        let mut acc: Option<Self> = None;
        let mut e = e as u64;
        loop {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base)?,
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = base.mul(&base)?;
        }
        Ok(acc.expect("e >= 1"))
    }

    /// Substitute `q -> q^m`, i.e. every exponent numerator is multiplied by `m`.
    pub fn substitute_q_power(&self, m: i64) -> Result<Self> {
        if m < 1 {
            return Err(Error::BadSubstitution(m));
        }
        if m == 1 {
            return Ok(self.clone());
        }
        let start = self.start * m;
        let trunc = self.trunc * m;
        let mut num = vec![Integer::new(); (trunc - start) as usize];
        for (i, c) in self.num.iter().enumerate() {
            num[i * m as usize] = c.clone();
        }
        Ok(Self::from_parts(start, num, self.den.clone(), trunc))
    }

    /// True when both series agree on every coefficient known to both.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let t = self.trunc.min(other.trunc);
        self.truncate(t) == other.truncate(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(terms: &[(i64, i64)], trunc: i64) -> FracQSeries {
        FracQSeries::from_terms(terms.iter().map(|&(n, c)| (n, Rational::from(c))), trunc)
    }

    #[test]
    fn reading_past_truncation_is_an_error() {
        let s = series(&[(0, 1), (4, 2)], 16);
        assert_eq!(s.coeff(4).unwrap(), 2);
        assert_eq!(s.coeff(3).unwrap(), 0);
        assert!(matches!(s.coeff(16), Err(Error::PastTruncation { .. })));
    }

    #[test]
    fn canonical_form_strips_leading_zeros_and_common_factors() {
        let s = FracQSeries::from_terms(
            [(3, Rational::from((2, 6))), (5, Rational::from((4, 6)))],
            20,
        );
        assert_eq!(s.min_exp(), Some(3));
        assert_eq!(s.denominator(), &3);
        assert_eq!(s.coeff(5).unwrap(), Rational::from((2, 3)));
    }

    #[test]
    fn inverse_of_one_minus_q() {
        // 1/(1 - q) = sum q^n, grid index 8n
        let s = series(&[(0, 1), (8, -1)], 64);
        let inv = s.invert().unwrap();
        for n in 0..8 {
            assert_eq!(inv.coeff(8 * n).unwrap(), 1);
        }
        assert_eq!(inv.trunc(), 64);
    }

    #[test]
    fn laurent_inverse_truncation() {
        // 16 q^(1/2) (1 + q) -> leading 1/16 q^(-1/2)
        let s = series(&[(4, 16), (12, 16)], 40);
        let inv = s.invert().unwrap();
        assert_eq!(inv.min_exp(), Some(-4));
        assert_eq!(inv.trunc(), 40 - 8);
        assert_eq!(inv.coeff(-4).unwrap(), Rational::from((1, 16)));
        assert_eq!(inv.coeff(4).unwrap(), Rational::from((-1, 16)));
        let prod = s.mul(&inv).unwrap();
        assert_eq!(prod, FracQSeries::one(prod.trunc()));
    }

    #[test]
    fn invert_zero_fails() {
        assert_eq!(FracQSeries::zero(10).invert(), Err(Error::ZeroLeadingCoefficient));
    }

    #[test]
    fn empty_window_product_fails() {
        let a = FracQSeries::zero(10);
        let b = series(&[(0, 1)], 10);
        let err = a.mul(&b).unwrap_err();
        assert_eq!(err.to_string(), "empty precision window");
    }

    #[test]
    fn product_truncation_is_tight() {
        let a = series(&[(2, 1)], 20);
        let b = series(&[(-4, 3), (0, 1)], 10);
        let p = a.mul(&b).unwrap();
        assert_eq!(p.min_exp(), Some(-2));
        assert_eq!(p.trunc(), (20 - 4).min(10 + 2));
    }

    #[test]
    fn substitution_scales_exponents() {
        let s = series(&[(1, 2), (9, 2)], 17);
        let t = s.substitute_q_power(2).unwrap();
        assert_eq!(t.trunc(), 34);
        assert_eq!(t.coeff(2).unwrap(), 2);
        assert_eq!(t.coeff(18).unwrap(), 2);
        assert_eq!(t.coeff(3).unwrap(), 0);
        assert_eq!(s.substitute_q_power(1).unwrap(), s);
        assert_eq!(s.substitute_q_power(0), Err(Error::BadSubstitution(0)));
    }

    #[test]
    fn pow_and_negative_pow() {
        let s = series(&[(0, 1), (4, 1)], 40);
        let p3 = s.pow(3).unwrap();
        assert_eq!(p3.coeff(8).unwrap(), 3);
        let back = p3.mul(&s.pow(-3).unwrap()).unwrap();
        assert_eq!(back, FracQSeries::one(back.trunc()));
    }

    #[test]
    fn subtraction_to_zero() {
        let s = series(&[(0, 1), (4, 5)], 40);
        let z = s.sub(&s);
        assert!(z.is_zero_known());
        assert_eq!(z.trunc(), 40);
    }
}
