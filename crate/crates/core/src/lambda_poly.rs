//! Rewriting modular functions as polynomials in `λ` or `1/λ` by greedy
//! elimination of the lowest q-power.

use rug::{Integer, Rational};

use crate::error::{Error, Result};
use crate::exact::{FracQSeries, RationalPolynomial};
use crate::qforms::{
    eisenstein_even_with_reading, eisenstein_odd, g_normalized, lambda_series, theta_bundle,
    EvenReading, LambdaSeries, Sign,
};

/// Grid units per power of `λ` (`λ = 16 q^{1/2} + ...`).
const LAMBDA_STEP: i64 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    Lambda,
    InvLambda,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaPolynomialResult {
    pub basis: Basis,
    /// Coefficient `i` multiplies `basis^i`.
    pub poly: RationalPolynomial,
    pub residual_ok: bool,
    pub trunc_used: i64,
}

/// Grid units of known coefficients needed past the leading exponent of `f`.
pub fn elimination_headroom(max_deg: usize) -> i64 {
    LAMBDA_STEP * max_deg as i64 + 8
}

fn sixteen_pow(j: usize) -> Integer {
    Integer::from(Integer::u_pow_u(16, j as u32))
}

/// Write `f` as `Σ c_i b^i` with `b = λ` or `b = 1/λ` and `i ≤ max_deg`.
///
/// An off-grid lowest term, or a remainder left below the constant term in
/// the `1/λ` basis, stops the elimination with `residual_ok = false`.
pub fn to_lambda_polynomial(
    f: &FracQSeries,
    basis: Basis,
    max_deg: usize,
    lam: &LambdaSeries,
) -> Result<LambdaPolynomialResult> {
    let start = f.min_exp().unwrap_or(0);
    let need = start + elimination_headroom(max_deg);
    if f.trunc() < need {
        return Err(Error::InsufficientTruncation {
            required: need,
            available: f.trunc(),
        });
    }
    let b = match basis {
        Basis::Lambda => lam.series.clone(),
        Basis::InvLambda => lam.series.invert()?,
    };
    let mut coeffs = vec![Rational::new(); max_deg + 1];
    let mut powers: Vec<FracQSeries> = vec![FracQSeries::one(f.trunc().max(lam.series.trunc()))];
    let mut rem = f.clone();
    let mut residual_ok = true;
    while let Some((n, c)) = rem.leading() {
        if n % LAMBDA_STEP != 0 {
            residual_ok = false;
            break;
        }
        let i = match basis {
            Basis::Lambda if n >= 0 => (n / LAMBDA_STEP) as usize,
            Basis::InvLambda if n <= 0 => (-n / LAMBDA_STEP) as usize,
            _ => {
                residual_ok = false;
                break;
            }
        };
        if i > max_deg {
            return Err(Error::NotPolynomial { max_deg });
        }
        while powers.len() <= i {
            let next = powers.last().expect("nonempty").mul(&b)?;
            powers.push(next);
        }
        // leading coefficient of b^i is 16^{±i}
        let ci = match basis {
            Basis::Lambda => Rational::from(&c / sixteen_pow(i)),
            Basis::InvLambda => Rational::from(&c * sixteen_pow(i)),
        };
        rem = rem.sub(&powers[i].scale(&ci));
        if rem.trunc() < need {
            return Err(Error::InsufficientTruncation {
                required: f.trunc() + need - rem.trunc(),
                available: f.trunc(),
            });
        }
        coeffs[i] += ci;
    }
    Ok(LambdaPolynomialResult {
        basis,
        poly: RationalPolynomial::new(coeffs),
        residual_ok: residual_ok && rem.is_zero_known(),
        trunc_used: rem.trunc(),
    })
}

fn require_closed(r: LambdaPolynomialResult, what: &str) -> Result<RationalPolynomial> {
    if r.residual_ok {
        Ok(r.poly)
    } else {
        Err(Error::InvalidArgument(format!(
            "{what}: nonzero residual after elimination"
        )))
    }
}

/// `4 ĝ_{2k+1} / (Θ₃^{4k} Θ₂²)` as a series in `q^{1/8}`.
pub fn p_oracle_series(k: usize, trunc: i64) -> Result<FracQSeries> {
    let th = theta_bundle(trunc)?;
    let g = g_normalized(k, trunc)?;
    let den = th.theta3.pow(4 * k as i64)?.mul(&th.theta2.pow(2)?)?;
    g.series().scale(&Rational::from(4)).div(&den)
}

/// `p_{2k+1}(λ)` read off the q-series quotient.
pub fn p_poly_oracle(k: usize, trunc: i64) -> Result<RationalPolynomial> {
    if k == 0 {
        return Err(Error::InvalidArgument("p_poly_oracle requires k >= 1".into()));
    }
    let f = p_oracle_series(k, trunc)?;
    let lam = lambda_series(trunc)?;
    let r = to_lambda_polynomial(&f, Basis::Lambda, k - 1, &lam)?;
    require_closed(r, "p oracle")
}

/// Smallest truncation that leaves room to extract a degree `k` polynomial in
/// `1/λ` from a quotient by `Θ₂^{4k}`.
pub fn inv_lambda_trunc(k: usize, trunc: i64) -> i64 {
    trunc.max(2 * elimination_headroom(k) + 8)
}

fn theta2_power_quotient(
    e: &FracQSeries,
    k: usize,
    extra: Option<&FracQSeries>,
    trunc: i64,
) -> Result<FracQSeries> {
    let mut den = theta_bundle(trunc)?.theta2.pow(4 * k as i64)?;
    if let Some(x) = extra {
        den = den.mul(x)?;
    }
    e.div(&den)
}

/// `Ẽ_{2k+1,χ} = E_{2k+1,χ} / (Θ₂^{4k} Θ₃²)` in `x = 1/λ`, with the residual flag.
pub fn e_tilde_odd_result(k: usize, trunc: i64) -> Result<LambdaPolynomialResult> {
    let t = inv_lambda_trunc(k, trunc);
    let e = eisenstein_odd(k, t)?;
    let th3sq = theta_bundle(t)?.theta3.pow(2)?;
    let f = theta2_power_quotient(e.series(), k, Some(&th3sq), t)?;
    let lam = lambda_series(t + elimination_headroom(k))?;
    to_lambda_polynomial(&f, Basis::InvLambda, k, &lam)
}

/// Monic degree-`k` polynomial `P` with `E_{2k+1,χ} / (Θ₂^{4k} Θ₃²) = P(1/λ)`.
pub fn e_tilde_odd(k: usize, trunc: i64) -> Result<RationalPolynomial> {
    require_closed(e_tilde_odd_result(k, trunc)?, "odd extraction")
}

/// `E_{2k}^± / Θ₂^{4k}` in `x = 1/λ` for one reading of the expansion.
pub fn e_tilde_even_with_reading(
    k: usize,
    sign: Sign,
    reading: EvenReading,
    trunc: i64,
) -> Result<LambdaPolynomialResult> {
    let t = inv_lambda_trunc(k, trunc);
    let e = eisenstein_even_with_reading(k, sign, reading, t)?;
    let f = theta2_power_quotient(e.series(), k, None, t)?;
    let lam = lambda_series(t + elimination_headroom(k))?;
    to_lambda_polynomial(&f, Basis::InvLambda, k, &lam)
}

fn closes_monic(r: &LambdaPolynomialResult, k: usize) -> bool {
    r.residual_ok && r.poly.degree() == Some(k) && r.poly.is_monic()
}

/// First reading in [`EvenReading::ALL`] whose extraction closes with a monic
/// degree-`k` polynomial.
pub fn select_even_reading(
    k: usize,
    sign: Sign,
    trunc: i64,
) -> Result<(EvenReading, LambdaPolynomialResult)> {
    for reading in EvenReading::ALL {
        match e_tilde_even_with_reading(k, sign, reading, trunc) {
            Ok(r) if closes_monic(&r, k) => return Ok((reading, r)),
            Ok(_) | Err(Error::NotPolynomial { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::InvalidArgument(format!(
        "no reading of the weight {} expansion closes",
        2 * k
    )))
}

/// Monic degree-`k` polynomial in `1/λ` for `E_{2k}^± / Θ₂^{4k}`.
pub fn e_tilde_even(k: usize, sign: Sign, trunc: i64) -> Result<RationalPolynomial> {
    if k == 0 {
        return Err(Error::WeightZeroExcluded);
    }
    Ok(select_even_reading(k, sign, trunc)?.1.poly)
}

/// `(x - 1)^{k-1} p(x / (x - 1))`, whose roots are `ρ / (ρ - 1)` for the roots
/// `ρ` of `p` (degree `k - 1`).
pub fn transported_p(p: &RationalPolynomial, k: usize) -> RationalPolynomial {
    let x = RationalPolynomial::x();
    let xm1 = RationalPolynomial::from_integers([-1, 1]);
    let mut out = RationalPolynomial::zero();
    let mut xm1_pows = vec![RationalPolynomial::one()];
    for _ in 0..k {
        let next = xm1_pows.last().expect("nonempty") * &xm1;
        xm1_pows.push(next);
    }
    let mut x_pow = RationalPolynomial::one();
    for (i, c) in p.coeffs().iter().enumerate() {
        // c x^i (x-1)^{k-1-i}
        let term = (&x_pow * &xm1_pows[k - 1 - i]).scale(c);
        out = &out + &term;
        x_pow = &x_pow * &x;
    }
    out
}
