//! The weight identities tying zero data in `1/λ` to L-values.

use rug::{Float, Integer, Rational};

use crate::cn::{cn_polynomials, euler_numbers};
use crate::error::{Error, Result};
use crate::exact::roots::dyadic_tolerance;
use crate::exact::{rational_string, sturm_isolate, RationalPolynomial};
use crate::lambda_poly::{e_tilde_odd, select_even_reading, transported_p};
use crate::numeric::pi;
use crate::qforms::{even_multiplier, odd_leading_constant, Sign};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IdentityKind {
    ThmZeros,
    Cor32,
    ThmEvenPlus,
    ThmEvenMinus,
    CorEvenSum,
    CConsistency,
}

impl IdentityKind {
    pub fn name(self) -> &'static str {
        match self {
            IdentityKind::ThmZeros => "thm_zeros",
            IdentityKind::Cor32 => "cor_32",
            IdentityKind::ThmEvenPlus => "thm_even_plus",
            IdentityKind::ThmEvenMinus => "thm_even_minus",
            IdentityKind::CorEvenSum => "cor_even_sum",
            IdentityKind::CConsistency => "c_consistency",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Mode {
    Exact,
    Numeric { tolerance: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Exact(Rational),
    Real(Float),
}

impl Value {
    /// `num/den` for rationals, a decimal string for reals.
    pub fn render(&self) -> String {
        match self {
            Value::Exact(r) => rational_string(r),
            Value::Real(f) => {
                let digits = (f.prec() as f64 * std::f64::consts::LOG10_2).floor() as usize;
                f.to_string_radix(10, Some(digits.max(1)))
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Exact(r) => r.to_f64(),
            Value::Real(f) => f.to_f64(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdentityReport {
    pub identity: IdentityKind,
    pub k: usize,
    pub lhs: Value,
    pub rhs: Value,
    pub pass: bool,
    pub mode: Mode,
    /// Named side quantities, e.g. the reading used or partial sums.
    pub details: Vec<(String, String)>,
}

fn exact_report(
    identity: IdentityKind,
    k: usize,
    lhs: Rational,
    rhs: Rational,
    details: Vec<(String, String)>,
) -> IdentityReport {
    IdentityReport {
        identity,
        k,
        pass: lhs == rhs,
        lhs: Value::Exact(lhs),
        rhs: Value::Exact(rhs),
        mode: Mode::Exact,
        details,
    }
}

/// `-(coefficient of x^{k-1})` of a monic degree-`k` polynomial: the root sum.
fn root_sum(p: &RationalPolynomial, k: usize) -> Result<Rational> {
    if p.degree() != Some(k) || !p.is_monic() {
        return Err(Error::InvalidArgument(format!(
            "expected a monic polynomial of degree {k}, got {}",
            p.display_with("x")
        )));
    }
    Ok(if k == 0 { Rational::new() } else { -p.coeff(k - 1) })
}

/// `Σ` over the zeros of `E_{2k+1,χ}` of `1/λ`, read off `Ẽ_{2k+1,χ}`.
pub fn odd_root_sum(k: usize, trunc: i64) -> Result<Rational> {
    root_sum(&e_tilde_odd(k, trunc)?, k)
}

/// `4(-1)^k/e_{2k} = 4(2k+1) - 16 Σ`.
pub fn verify_thm_zeros(k: usize, trunc: i64) -> Result<IdentityReport> {
    let lhs = odd_leading_constant(k);
    let sigma = odd_root_sum(k, trunc)?;
    let rhs = Rational::from(4 * (2 * k as i64 + 1)) - Rational::from(&sigma * 16u32);
    Ok(exact_report(
        IdentityKind::ThmZeros,
        k,
        lhs,
        rhs,
        vec![("sigma".into(), rational_string(&sigma))],
    ))
}

/// Transport the roots `ρ` of `p_{2k+1}` to `1/λ(γ₀τ) = ρ/(ρ-1)`, add the cusp
/// term found in the factorisation of `Ẽ_{2k+1,χ}`, and compare with `Σ`.
pub fn verify_cor_32(
    k: usize,
    trunc: i64,
    precision_bits: u32,
    tolerance: f64,
) -> Result<IdentityReport> {
    if k == 0 {
        return Err(Error::InvalidArgument("corollary needs k >= 1".into()));
    }
    let wp = precision_bits + 32;
    let e = e_tilde_odd(k, trunc)?;
    let sigma = root_sum(&e, k)?;
    let p = cn_polynomials(k).p(k).clone();
    let xm1 = RationalPolynomial::from_integers([-1, 1]);
    let factorised = (&xm1 * &transported_p(&p, k)).monic();
    let transport_ok = factorised == e;

    let tol = dyadic_tolerance(wp);
    let mut h_sum = Float::with_val(wp, 0);
    let mut n_roots = 0usize;
    for r in sturm_isolate(&p)? {
        let rho = Float::with_val(wp, &r.refine(&tol)?);
        let d = Float::with_val(wp, &rho - 1u32);
        let inv_mu = Float::with_val(wp, &rho / &d);
        for _ in 0..r.multiplicity {
            h_sum += &inv_mu;
        }
        n_roots += r.multiplicity;
    }
    let cusp = if transport_ok { 1 } else { 0 };
    let completed = Float::with_val(wp, &h_sum + cusp);
    let sigma_f = Float::with_val(wp, &sigma);
    let diff = Float::with_val(wp, &completed - &sigma_f).abs().to_f64();
    let details = vec![
        ("sigma".into(), rational_string(&sigma)),
        ("upper_half_plane_sum".into(), Value::Real(Float::with_val(precision_bits, &h_sum)).render()),
        ("cusp_terms".into(), cusp.to_string()),
        ("real_roots".into(), n_roots.to_string()),
        ("transport_factorisation".into(), transport_ok.to_string()),
    ];
    Ok(IdentityReport {
        identity: IdentityKind::Cor32,
        k,
        lhs: Value::Real(Float::with_val(precision_bits, &completed)),
        rhs: Value::Real(Float::with_val(precision_bits, &sigma_f)),
        pass: transport_ok && n_roots + 1 == k && diff < tolerance,
        mode: Mode::Numeric { tolerance },
        details,
    })
}

/// `Σ^±` for `E_{2k}^±`, with the reading that closed the extraction.
pub fn even_root_sum(k: usize, sign: Sign, trunc: i64) -> Result<(Rational, &'static str)> {
    if k == 0 {
        return Err(Error::WeightZeroExcluded);
    }
    let (reading, r) = select_even_reading(k, sign, trunc)?;
    Ok((root_sum(&r.poly, k)?, reading.name()))
}

/// `M = ±8k ∓ 16 Σ^±` with `M = (2πi)^{2k}/(4^k Γ(2k) L(2k, χ₀))`.
pub fn verify_thm_even(k: usize, sign: Sign, trunc: i64) -> Result<IdentityReport> {
    let lhs = even_multiplier(k)?;
    let (sigma, reading) = even_root_sum(k, sign, trunc)?;
    let s = sign.as_i64();
    let rhs = Rational::from(s * 8 * k as i64) - Rational::from(&sigma * (16 * s));
    let kind = match sign {
        Sign::Plus => IdentityKind::ThmEvenPlus,
        Sign::Minus => IdentityKind::ThmEvenMinus,
    };
    Ok(exact_report(
        kind,
        k,
        lhs,
        rhs,
        vec![
            ("sigma".into(), rational_string(&sigma)),
            ("reading".into(), reading.into()),
        ],
    ))
}

/// `k = Σ^+ + Σ^-`.
pub fn verify_cor_even_sum(k: usize, trunc: i64) -> Result<IdentityReport> {
    let (plus, _) = even_root_sum(k, Sign::Plus, trunc)?;
    let (minus, _) = even_root_sum(k, Sign::Minus, trunc)?;
    let rhs = Rational::from(&plus + &minus);
    Ok(exact_report(
        IdentityKind::CorEvenSum,
        k,
        Rational::from(k as u64),
        rhs,
        vec![
            ("sigma_plus".into(), rational_string(&plus)),
            ("sigma_minus".into(), rational_string(&minus)),
        ],
    ))
}

/// Terms allowed in the plain alternating sum before giving up.
pub const DIRECT_ITERATION_CAP: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BetaMethod {
    Direct,
    Accelerated,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BetaValue {
    pub value: Float,
    /// Rigorous bound on `|value - L(2k+1, χ)|`, rounding excluded.
    pub error_bound: Float,
    pub method: BetaMethod,
    pub terms: u64,
}

fn odd_power_recip(n: u64, s: u32, wp: u32) -> Float {
    let b = Float::with_val(wp, 2 * n + 1);
    let p = Float::with_val(wp, rug::ops::Pow::pow(&b, s));
    p.recip()
}

/// `Σ_{n<N} (-1)^n/(2n+1)^{2k+1}`, stopping once the first omitted term is below
/// `2^{-precision_bits}`; the result is the average of the last two partial sums.
pub fn beta_l_direct(k: usize, precision_bits: u32, cap: u64) -> Result<BetaValue> {
    let s = 2 * k as u32 + 1;
    // first omitted term (2N+1)^{-s} ≤ 2^{-p} when 2N+1 ≥ 2^{p/s}
    let needed = (2f64.powf(precision_bits as f64 / s as f64) - 1.0) / 2.0;
    if needed > cap as f64 {
        return Err(Error::IterationCap { cap, needed });
    }
    let n_terms = needed.ceil() as u64 + 1;
    let wp = precision_bits + 32;
    let mut sum = Float::with_val(wp, 0);
    let mut prev = Float::with_val(wp, 0);
    for n in 0..n_terms {
        prev.clone_from(&sum);
        let t = odd_power_recip(n, s, wp);
        if n % 2 == 0 {
            sum += t;
        } else {
            sum -= t;
        }
    }
    let avg = Float::with_val(wp, &sum + &prev) / 2u32;
    let omitted = odd_power_recip(n_terms, s, wp);
    Ok(BetaValue {
        value: Float::with_val(precision_bits, avg),
        error_bound: Float::with_val(64, omitted),
        method: BetaMethod::Direct,
        terms: n_terms,
    })
}

/// Alternating-series acceleration for `a_n = (2n+1)^{-s}`, a Hausdorff moment
/// sequence, so the error is at most `2 a_0 / (3+√8)^n`.
pub fn beta_l_accelerated(k: usize, precision_bits: u32) -> Result<BetaValue> {
    let s = 2 * k as u32 + 1;
    let wp = precision_bits + 64;
    let rate = (3.0 + 8f64.sqrt()).log2();
    let n = ((precision_bits as f64 + 2.0) / rate).ceil() as u64 + 1;
    let three_root8 = Float::with_val(wp, 8).sqrt() + 3u32;
    let d0 = Float::with_val(wp, rug::ops::Pow::pow(&three_root8, n as u32));
    let d = Float::with_val(wp, &d0 + Float::with_val(wp, d0.recip_ref())) / 2u32;
    let mut b = Float::with_val(wp, -1);
    let mut c = Float::with_val(wp, -&d);
    let mut sum = Float::with_val(wp, 0);
    for j in 0..n {
        c = Float::with_val(wp, &b - &c);
        sum += Float::with_val(wp, &c * odd_power_recip(j, s, wp));
        let num = Integer::from((n + j) as i64 * (j as i64 - n as i64) * 2);
        let den = Integer::from((2 * j + 1) as i64 * (j as i64 + 1));
        b = Float::with_val(wp, &b * Float::with_val(wp, &num)) / Float::with_val(wp, &den);
    }
    let value = Float::with_val(wp, &sum / &d);
    let err = Float::with_val(64, 2) / Float::with_val(64, rug::ops::Pow::pow(Float::with_val(64, 3.0 + 8f64.sqrt()), n as u32));
    Ok(BetaValue {
        value: Float::with_val(precision_bits, value),
        error_bound: err,
        method: BetaMethod::Accelerated,
        terms: n,
    })
}

/// `L(2k+1, χ) = Σ (-1)^n/(2n+1)^{2k+1}`: the plain sum when it fits under
/// [`DIRECT_ITERATION_CAP`], otherwise the accelerated sum.
pub fn beta_l(k: usize, precision_bits: u32) -> Result<BetaValue> {
    match beta_l_direct(k, precision_bits, DIRECT_ITERATION_CAP) {
        Err(Error::IterationCap { .. }) => beta_l_accelerated(k, precision_bits),
        other => other,
    }
}

/// `e_{2k} (π/2)^{2k+1} / (2 (2k)!)`.
pub fn beta_closed_form(k: usize, precision_bits: u32) -> Float {
    let wp = precision_bits + 32;
    let e = euler_numbers(k);
    let half_pi = Float::with_val(wp, pi(wp) / 2u32);
    let pw = Float::with_val(wp, rug::ops::Pow::pow(&half_pi, 2 * k as u32 + 1));
    let fact = Integer::from(Integer::factorial(2 * k as u32)) * 2u32;
    let v = pw * Float::with_val(wp, e.e(k)) / Float::with_val(wp, &fact);
    Float::with_val(precision_bits, v)
}

/// Numeric check of `L(2k+1, χ) = e_{2k}(π/2)^{2k+1}/(2(2k)!)`, equivalently
/// `C = 4(-1)^k/e_{2k}`. `tolerance` defaults to `2^{-p/2}` when `None`.
pub fn verify_c_consistency(
    k: usize,
    precision_bits: u32,
    tolerance: Option<f64>,
) -> Result<IdentityReport> {
    let tol = tolerance.unwrap_or_else(|| 2f64.powf(-(precision_bits as f64) / 2.0));
    let lhs = beta_l(k, precision_bits)?;
    let rhs = beta_closed_form(k, precision_bits);
    let diff = Float::with_val(precision_bits, &lhs.value - &rhs).abs().to_f64();
    let method = match lhs.method {
        BetaMethod::Direct => "direct",
        BetaMethod::Accelerated => "accelerated",
    };
    Ok(IdentityReport {
        identity: IdentityKind::CConsistency,
        k,
        lhs: Value::Real(lhs.value),
        rhs: Value::Real(rhs),
        pass: diff < tol,
        mode: Mode::Numeric { tolerance: tol },
        details: vec![
            ("method".into(), method.into()),
            ("terms".into(), lhs.terms.to_string()),
            ("difference".into(), format!("{diff:e}")),
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact(r: &IdentityReport) -> (Rational, Rational) {
        match (&r.lhs, &r.rhs) {
            (Value::Exact(a), Value::Exact(b)) => (a.clone(), b.clone()),
            _ => panic!("not exact"),
        }
    }

    #[test]
    fn thm_zeros_small() {
        let r0 = verify_thm_zeros(0, 64).unwrap();
        assert!(r0.pass);
        assert_eq!(exact(&r0).0, 4);
        let r1 = verify_thm_zeros(1, 64).unwrap();
        assert!(r1.pass);
        assert_eq!(exact(&r1).0, -4);
        let r2 = verify_thm_zeros(2, 64).unwrap();
        assert!(r2.pass);
        assert_eq!(exact(&r2).0, Rational::from((4, 5)));
    }

    #[test]
    fn cor_32_small() {
        for k in 1..=4 {
            let r = verify_cor_32(k, 96, 128, 1e-20).unwrap();
            assert!(r.pass, "k = {k}: {:?}", r.details);
        }
    }

    #[test]
    fn thm_even_weight_two() {
        let p = verify_thm_even(1, Sign::Plus, 64).unwrap();
        let m = verify_thm_even(1, Sign::Minus, 64).unwrap();
        assert!(p.pass && m.pass);
        assert_eq!(exact(&p).0, -8);
        assert_eq!(exact(&m).0, -8);
        assert!(verify_cor_even_sum(1, 64).unwrap().pass);
        assert!(verify_cor_even_sum(2, 64).unwrap().pass);
    }

    #[test]
    fn beta_small_values() {
        let b1 = beta_l(1, 128).unwrap();
        let p = pi(160);
        let want = Float::with_val(160, rug::ops::Pow::pow(&p, 3u32)) / 32u32;
        assert!(Float::with_val(128, &b1.value - &want).abs() < 1e-30);
        let b0 = beta_l_direct(0, 20, DIRECT_ITERATION_CAP).unwrap();
        let quarter = Float::with_val(64, pi(64) / 4u32);
        assert!(Float::with_val(64, &b0.value - &quarter).abs() < 2e-6);
    }

    #[test]
    fn direct_sum_hits_cap() {
        match beta_l_direct(0, 128, DIRECT_ITERATION_CAP) {
            Err(Error::IterationCap { cap, .. }) => assert_eq!(cap, DIRECT_ITERATION_CAP),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn direct_and_accelerated_agree() {
        for k in 3..=6 {
            let a = beta_l_direct(k, 100, DIRECT_ITERATION_CAP).unwrap();
            let b = beta_l_accelerated(k, 100).unwrap();
            assert!(Float::with_val(100, &a.value - &b.value).abs() < 1e-28, "k = {k}");
        }
    }

    #[test]
    fn consistency_default_tolerance() {
        for k in 1..=3 {
            assert!(verify_c_consistency(k, 128, None).unwrap().pass);
        }
    }
}
