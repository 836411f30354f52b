//! Dense univariate polynomials over the rationals.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::{Integer, Rational};

use crate::error::{Error, Result};

/// Dense polynomial with exact rational coefficients.
///
/// `coeffs[i]` is the coefficient of `x^i`. The highest stored coefficient is
/// always nonzero; the zero polynomial is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct RationalPolynomial {
    coeffs: Vec<Rational>,
}

impl RationalPolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| *c == 0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::from(1))
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::new(vec![Rational::new(), Rational::from(1)])
    }

    pub fn monomial(c: Rational, degree: usize) -> Self {
        let mut coeffs = vec![Rational::new(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    pub fn from_integers<I: IntoIterator<Item = i64>>(coeffs: I) -> Self {
        Self::new(coeffs.into_iter().map(Rational::from).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| *c == 1)
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| *c.denom() == 1)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::new();
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    /// Positive multiple with coprime integer coefficients.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut den = Integer::from(1);
        for c in &self.coeffs {
            den.lcm_mut(c.denom());
        }
        let mut g = Integer::new();
        let ints: Vec<Integer> = self
            .coeffs
            .iter()
            .map(|c| Integer::from(c.numer() * Integer::from(&den / c.denom())))
            .collect();
        for v in &ints {
            g.gcd_mut(v);
        }
        Self::new(ints.into_iter().map(|v| Rational::from(v / &g)).collect())
    }

    /// Sign of `p(x)` as -1, 0 or 1.
    pub fn sign_at(&self, x: &Rational) -> i32 {
        if self.is_integral() && !self.is_zero() {
            // b^n p(a/b) = sum c_i a^i b^(n-i), b > 0
            let (a, b) = (x.numer(), x.denom());
            let n = self.coeffs.len() - 1;
            let mut acc = Integer::from(self.coeffs[n].numer());
            let mut bp = Integer::from(1);
            for c in self.coeffs[..n].iter().rev() {
                bp *= b;
                acc *= a;
                acc += Integer::from(c.numer() * &bp);
            }
            return acc.cmp0() as i32;
        }
        match self.eval(x).cmp0() {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        }
    }

    /// Sign of `p(x)` as `x -> +inf`.
    pub fn sign_at_pos_inf(&self) -> i32 {
        self.leading().map_or(0, |c| c.cmp0() as i32)
    }

    /// Sign of `p(x)` as `x -> -inf`.
    pub fn sign_at_neg_inf(&self) -> i32 {
        match self.degree() {
            None => 0,
            Some(d) => {
                let s = self.sign_at_pos_inf();
                if d % 2 == 0 {
                    s
                } else {
                    -s
                }
            }
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| Rational::from(c * Integer::from(i)))
                .collect(),
        )
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| Rational::from(c * s)).collect())
    }

    /// Divide by the leading coefficient. The zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => {
                let inv = Rational::from(lc.recip_ref());
                self.scale(&inv)
            }
        }
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZeroPolynomial)?;
        let lc_inv = Rational::from(divisor.coeffs[dd].recip_ref());
        let mut rem = self.coeffs.clone();
        let n = rem.len();
        if n <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![Rational::new(); n - dd];
        for i in (0..n - dd).rev() {
            let c = Rational::from(&rem[i + dd] * &lc_inv);
            if c != 0 {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= Rational::from(&c * dc);
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Exact quotient; errors only on division by zero.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(divisor)?;
        debug_assert!(r.is_zero(), "exact_div with nonzero remainder");
        Ok(q)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Yun square-free decomposition: pairs `(f_i, i)` with `self = c * prod f_i^i`,
    /// each `f_i` monic, square-free and pairwise coprime. Constant factors are skipped.
    pub fn square_free_decomposition(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.exact_div(&a0).expect("gcd nonzero");
        let c = df.exact_div(&a0).expect("gcd nonzero");
        let mut d = &c - &b.derivative();
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d);
            let nb = b.exact_div(&a).expect("gcd nonzero");
            let nc = d.exact_div(&a).expect("gcd nonzero");
            d = &nc - &nb.derivative();
            if a.degree().unwrap_or(0) > 0 {
                out.push((a, i));
            }
            b = nb;
            i += 1;
        }
        out
    }

    /// `p(x) / gcd(p, p')`, monic.
    pub fn square_free_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).expect("gcd nonzero").monic()
    }

    /// Substitute `x -> a*x + b`.
    pub fn compose_linear(&self, a: &Rational, b: &Rational) -> Self {
        let lin = Self::new(vec![b.clone(), a.clone()]);
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &Self::constant(c.clone());
        }
        acc
    }

    /// Render with the given variable name, lowest degree first: `1 + 44λ + 16λ^2`.
    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            let neg = c.cmp0() == Ordering::Less;
            let abs = Rational::from(c.abs_ref());
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let show_coeff = i == 0 || abs != 1;
            if show_coeff {
                out.push_str(&abs.to_string());
            }
            match i {
                0 => {}
                1 => out.push_str(var),
                _ => {
                    out.push_str(var);
                    out.push('^');
                    out.push_str(&i.to_string());
                }
            }
        }
        out
    }
}

impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("x"))
    }
}

impl Add for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn add(self, rhs: &RationalPolynomial) -> RationalPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPolynomial::new(
            (0..n)
                .map(|i| {
                    let mut c = self.coeff(i);
                    if let Some(r) = rhs.coeffs.get(i) {
                        c += r;
                    }
                    c
                })
                .collect(),
        )
    }
}

impl Sub for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn sub(self, rhs: &RationalPolynomial) -> RationalPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn neg(self) -> RationalPolynomial {
        RationalPolynomial {
            coeffs: self.coeffs.iter().map(|c| Rational::from(-c)).collect(),
        }
    }
}

impl Mul for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn mul(self, rhs: &RationalPolynomial) -> RationalPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return RationalPolynomial::zero();
        }
        let mut out = vec![Rational::new(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += Rational::from(a * b);
            }
        }
        RationalPolynomial::new(out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RationalPolynomial {
            type Output = RationalPolynomial;
            fn $m(self, rhs: RationalPolynomial) -> RationalPolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RationalPolynomial {
    type Output = RationalPolynomial;
    fn neg(self) -> RationalPolynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> RationalPolynomial {
        RationalPolynomial::from_integers(c.iter().copied())
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(&p(&[1, 1]) * &p(&[-1, 1]), p(&[-1, 0, 1]));
    }

    #[test]
    fn derivative_of_p7() {
        assert_eq!(p(&[1, 44, 16]).derivative(), p(&[44, 32]));
    }

    #[test]
    fn p5_vanishes_at_minus_quarter() {
        assert_eq!(p(&[1, 4]).eval(&Rational::from((-1, 4))), 0);
    }

    #[test]
    fn trailing_zeros_are_stripped() {
        let q = p(&[1, 2, 0, 0]);
        assert_eq!(q.degree(), Some(1));
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[]).degree(), None);
    }

    #[test]
    fn division_round_trips() {
        let a = p(&[3, -2, 0, 5, 1]);
        let b = p(&[1, 0, 2]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree() < b.degree());
        assert_eq!(a.div_rem(&RationalPolynomial::zero()), Err(Error::DivisionByZeroPolynomial));
    }

    #[test]
    fn gcd_is_monic() {
        let a = &p(&[1, 1]) * &p(&[2, 3]);
        let b = &p(&[1, 1]) * &p(&[5, 0, 1]);
        assert_eq!(a.gcd(&b), p(&[1, 1]));
    }

    #[test]
    fn yun_recovers_multiplicities() {
        // (x-1)^3 (x+2)^2 (x^2+1)
        let f = &(&(&p(&[-1, 1]) * &p(&[-1, 1])) * &p(&[-1, 1]))
            * &(&(&p(&[2, 1]) * &p(&[2, 1])) * &p(&[1, 0, 1]));
        let dec = f.square_free_decomposition();
        assert_eq!(dec, vec![(p(&[1, 0, 1]), 1), (p(&[2, 1]), 2), (p(&[-1, 1]), 3)]);
        assert_eq!(f.square_free_part(), &(&p(&[-1, 1]) * &p(&[2, 1])) * &p(&[1, 0, 1]));
    }

    #[test]
    fn display_matches_table_style() {
        assert_eq!(p(&[1, 44, 16]).display_with("λ"), "1 + 44λ + 16λ^2");
        assert_eq!(p(&[0, -1, 0, 1]).to_string(), "-x + x^3");
    }

    #[test]
    fn linear_composition() {
        // p(x) = x^2, p(2x + 1) = 4x^2 + 4x + 1
        let q = p(&[0, 0, 1]).compose_linear(&Rational::from(2), &Rational::from(1));
        assert_eq!(q, p(&[1, 4, 4]));
    }
}
