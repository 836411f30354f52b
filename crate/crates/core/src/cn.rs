//! Euler and Bernoulli numbers, and the polynomials `p_{2k+1}(λ)` read off the
//! Taylor expansion of the Jacobi elliptic function `cn(u)`.
//!
//! With `cn(u) = sum_k a_k u^{2k}` the equation
//! `(cn')^2 = (1 - cn^2)(1 - λ + λ cn^2)` differentiates to
//! `cn'' = (2λ - 1) cn - 2λ cn^3`, which gives
//!
//! ```text
//! a_{k+1} (2k+2)(2k+1) = (2λ - 1) a_k - 2λ sum_{i+j+l=k} a_i a_j a_l
//! ```
//!
//! and `p_{2k+1}(λ) = (-1)^k (2k)! a_k`.

use rug::{Integer, Rational};

use crate::exact::RationalPolynomial;

/// `values[j] = e_{2j}`, the Euler numbers `sec(t) = sum e_n t^n / n!`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerNumberTable {
    pub values: Vec<Integer>,
}

impl EulerNumberTable {
    pub fn e(&self, j: usize) -> &Integer {
        &self.values[j]
    }
}

/// `polys[k] = p_{2k+1}(λ)` for `k = 0..=k_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnCoefficientTable {
    pub k_max: usize,
    pub polys: Vec<RationalPolynomial>,
}

impl CnCoefficientTable {
    pub fn p(&self, k: usize) -> &RationalPolynomial {
        &self.polys[k]
    }
}

fn factorial(n: u32) -> Integer {
    Integer::from(Integer::factorial(n))
}

/// `e_0, e_2, ..., e_{2 j_max}` by exact inversion of the cosine series.
pub fn euler_numbers(j_max: usize) -> EulerNumberTable {
    // cos t = sum c_j t^{2j}, c_j = (-1)^j / (2j)!; sec = 1 / cos
    let cos: Vec<Rational> = (0..=j_max)
        .map(|j| {
            let s = if j % 2 == 0 { 1 } else { -1 };
            Rational::from((Integer::from(s), factorial(2 * j as u32)))
        })
        .collect();
    let mut sec: Vec<Rational> = Vec::with_capacity(j_max + 1);
    sec.push(Rational::from(1));
    for n in 1..=j_max {
        let mut acc = Rational::new();
        for j in 1..=n {
            acc += Rational::from(&cos[j] * &sec[n - j]);
        }
        sec.push(-acc);
    }
    let values = sec
        .into_iter()
        .enumerate()
        .map(|(j, s)| {
            let v = s * factorial(2 * j as u32);
            debug_assert_eq!(*v.denom(), 1);
            v.into_numer_denom().0
        })
        .collect();
    EulerNumberTable { values }
}

/// `p_1, p_3, ..., p_{2 k_max + 1}` from the second-order cn recursion.
pub fn cn_polynomials(k_max: usize) -> CnCoefficientTable {
    let lam = RationalPolynomial::x();
    let two_lam_minus_one = RationalPolynomial::from_integers([-1, 2]);
    let two_lam = lam.scale(&Rational::from(2));

    // a[k] is the u^{2k} coefficient; sq[k] and cube[k] those of cn^2 and cn^3
    let mut a: Vec<RationalPolynomial> = vec![RationalPolynomial::one()];
    let mut sq: Vec<RationalPolynomial> = vec![RationalPolynomial::one()];
    let mut cube: Vec<RationalPolynomial> = vec![RationalPolynomial::one()];
    for k in 0..k_max {
        let rhs = &(&two_lam_minus_one * &a[k]) - &(&two_lam * &cube[k]);
        let denom = Rational::from(((2 * k + 2) * (2 * k + 1)) as u64);
        a.push(rhs.scale(&denom.recip()));
        let n = k + 1;
        let mut s = RationalPolynomial::zero();
        for i in 0..=n {
            s = &s + &(&a[i] * &a[n - i]);
        }
        sq.push(s);
        let mut c = RationalPolynomial::zero();
        for i in 0..=n {
            c = &c + &(&sq[i] * &a[n - i]);
        }
        cube.push(c);
    }
    let polys = a
        .into_iter()
        .enumerate()
        .map(|(k, ak)| {
            let mut f = Rational::from(factorial(2 * k as u32));
            if k % 2 == 1 {
                f = -f;
            }
            ak.scale(&f)
        })
        .collect();
    CnCoefficientTable { k_max, polys }
}

/// `B_0, ..., B_{n_max}` from `sum_{j=0}^{n} C(n+1, j) B_j = 0`.
pub fn bernoulli_numbers(n_max: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(n_max + 1);
    b.push(Rational::from(1));
    for n in 1..=n_max {
        let mut acc = Rational::new();
        for (j, bj) in b.iter().enumerate() {
            let binom = Integer::from(Integer::binomial_u(n as u32 + 1, j as u32));
            acc += Rational::from(bj * binom);
        }
        let lead = Integer::from(n + 1);
        b.push(-acc / lead);
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_numbers_small() {
        let e = euler_numbers(6);
        let want = [1, 1, 5, 61, 1385, 50521, 2702765];
        for (j, w) in want.iter().enumerate() {
            assert_eq!(*e.e(j), *w, "e_{}", 2 * j);
        }
    }

    #[test]
    fn bernoulli_small() {
        let b = bernoulli_numbers(8);
        assert_eq!(b[0], 1);
        assert_eq!(b[1], Rational::from((-1, 2)));
        assert_eq!(b[2], Rational::from((1, 6)));
        assert_eq!(b[3], 0);
        assert_eq!(b[4], Rational::from((-1, 30)));
        assert_eq!(b[6], Rational::from((1, 42)));
        assert_eq!(b[8], Rational::from((-1, 30)));
    }

    #[test]
    fn cn_table_head() {
        let t = cn_polynomials(5);
        let p = |c: &[i64]| RationalPolynomial::from_integers(c.iter().copied());
        assert_eq!(t.p(0), &p(&[1]));
        assert_eq!(t.p(1), &p(&[1]));
        assert_eq!(t.p(2), &p(&[1, 4]));
        assert_eq!(t.p(3), &p(&[1, 44, 16]));
        assert_eq!(t.p(4), &p(&[1, 408, 912, 64]));
        assert_eq!(t.p(5), &p(&[1, 3688, 30768, 15808, 256]));
    }

    #[test]
    fn value_at_one_is_euler_number() {
        // cn(u | 1) = sech u
        let t = cn_polynomials(12);
        let e = euler_numbers(12);
        for k in 0..=12 {
            assert_eq!(t.p(k).eval(&Rational::from(1)), *e.e(k));
        }
    }

    #[test]
    fn degree_and_constant_term() {
        let t = cn_polynomials(20);
        for k in 1..=20 {
            let p = t.p(k);
            assert_eq!(p.degree(), Some(k - 1));
            assert_eq!(p.coeff(0), 1);
            assert!(p.is_integral());
        }
    }
}
