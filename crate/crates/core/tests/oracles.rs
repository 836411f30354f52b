use rug::{Complex, Float, Rational};

use gamma2_core::cn::{cn_polynomials, euler_numbers};
use gamma2_core::exact::roots::dyadic_tolerance;
use gamma2_core::exact::sturm_isolate;
use gamma2_core::lambda_poly::{e_tilde_odd, p_poly_oracle, transported_p};
use gamma2_core::numeric::{lambda_at, lambda_transport, numeric_eval};
use gamma2_core::qforms::lambda_series;
use gamma2_core::RationalPolynomial;

fn cauchy(a: &[RationalPolynomial], b: &[RationalPolynomial], n: usize) -> RationalPolynomial {
    (0..=n).fold(RationalPolynomial::zero(), |acc, i| &acc + &(&a[i] * &b[n - i]))
}

/// Taylor coefficients of `cn(u | m)` from `sn' = cn dn`, `cn' = -sn dn`,
/// `dn' = -m sn cn`, as polynomials in `m`.
fn cn_taylor(order: usize) -> Vec<RationalPolynomial> {
    let m = RationalPolynomial::x();
    let mut s = vec![RationalPolynomial::zero()];
    let mut c = vec![RationalPolynomial::one()];
    let mut d = vec![RationalPolynomial::one()];
    for n in 0..order {
        let inv = Rational::from((1, n as u64 + 1));
        let cd = cauchy(&c, &d, n);
        let sd = cauchy(&s, &d, n);
        let sc = cauchy(&s, &c, n);
        s.push(cd.scale(&inv));
        c.push((-&sd).scale(&inv));
        d.push((&(-&m) * &sc).scale(&inv));
    }
    c
}

#[test]
fn first_order_system_reproduces_polynomials() {
    let k_max = 12;
    let c = cn_taylor(2 * k_max);
    let t = cn_polynomials(k_max);
    let mut fact = Rational::from(1);
    for n in 0..=2 * k_max {
        if n > 0 {
            fact *= n as u32;
        }
        if n % 2 == 1 {
            assert!(c[n].is_zero());
            continue;
        }
        let k = n / 2;
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let p = c[n].scale(&Rational::from(&fact * sign));
        assert_eq!(&p, t.p(k), "k = {k}");
    }
}

#[test]
fn value_at_one_is_euler_and_constant_term_is_one() {
    let t = cn_polynomials(15);
    let e = euler_numbers(15);
    for k in 0..=15 {
        assert_eq!(t.p(k).eval(&Rational::from(1)), *e.e(k));
        assert_eq!(t.p(k).coeff(0), 1);
    }
}

fn durand_kerner(coeffs: &[f64]) -> Vec<(f64, f64)> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    let monic: Vec<f64> = coeffs.iter().map(|c| c / lead).collect();
    let eval = |x: (f64, f64)| {
        let mut acc = (0.0, 0.0);
        for &c in monic.iter().rev() {
            acc = (acc.0 * x.0 - acc.1 * x.1 + c, acc.0 * x.1 + acc.1 * x.0);
        }
        acc
    };
    let mut z: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let a = 0.4 + 0.9 * i as f64;
            (100.0 * a.cos(), 100.0 * a.sin())
        })
        .collect();
    for _ in 0..2000 {
        for i in 0..n {
            let num = eval(z[i]);
            let mut den = (1.0, 0.0);
            for j in 0..n {
                if i != j {
                    let d = (z[i].0 - z[j].0, z[i].1 - z[j].1);
                    den = (den.0 * d.0 - den.1 * d.1, den.0 * d.1 + den.1 * d.0);
                }
            }
            let norm = den.0 * den.0 + den.1 * den.1;
            let q = ((num.0 * den.0 + num.1 * den.1) / norm, (num.1 * den.0 - num.0 * den.1) / norm);
            z[i] = (z[i].0 - q.0, z[i].1 - q.1);
        }
    }
    z
}

#[test]
fn eleventh_polynomial_roots_match_simultaneous_iteration() {
    let p = cn_polynomials(5).p(5).clone();
    let coeffs: Vec<f64> = p.coeffs().iter().map(|c| c.to_f64()).collect();
    let mut dk: Vec<f64> = durand_kerner(&coeffs)
        .into_iter()
        .map(|(re, im)| {
            assert!(im.abs() < 1e-9);
            re
        })
        .collect();
    dk.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let tol = dyadic_tolerance(60);
    let sturm: Vec<f64> = sturm_isolate(&p)
        .unwrap()
        .iter()
        .map(|r| r.refine(&tol).unwrap().to_f64())
        .collect();
    assert_eq!(sturm.len(), 4);
    for (a, b) in sturm.iter().zip(&dk) {
        assert!((a - b).abs() <= 1e-9 * b.abs().max(1.0), "{a} vs {b}");
    }
}

#[test]
fn oracle_and_recursion_agree_beyond_table() {
    let t = cn_polynomials(8);
    for k in 1..=8 {
        assert_eq!(&p_poly_oracle(k, 192).unwrap(), t.p(k));
    }
}

#[test]
fn inverse_lambda_polynomial_factors_through_transport() {
    let t = cn_polynomials(8);
    let xm1 = RationalPolynomial::from_integers([-1, 1]);
    for k in 1..=8 {
        let e = e_tilde_odd(k, 192).unwrap();
        assert_eq!((&xm1 * &transported_p(t.p(k), k)).monic(), e, "k = {k}");
    }
}

#[test]
fn transport_agrees_with_direct_theta_quotient() {
    for th in [0.4f64, 0.9, 1.3] {
        let theta = Float::with_val(128, th);
        let via_axis = lambda_transport(&theta, 128).unwrap();
        let half = Float::with_val(160, &theta / 2u32);
        let cot = Float::with_val(160, half.tan_ref()).recip();
        let z = Complex::with_val(160, (1, cot));
        let direct = lambda_at(&z, 128).unwrap();
        assert!(direct.imag().to_f64().abs() < 1e-25, "θ = {th}");
        let d = Float::with_val(128, direct.real() - &via_axis).abs().to_f64();
        assert!(d < 1e-25, "θ = {th}: {d}");
        assert!(via_axis < 0);
    }
}

#[test]
fn lambda_series_matches_theta_quotient() {
    let l = lambda_series(512).unwrap().series;
    for (x, y) in [(0.1, 0.9), (-0.3, 1.4), (0.0, 2.0)] {
        let z = Complex::with_val(128, (x, y));
        let from_series = numeric_eval(&l, &z, 128).unwrap();
        let direct = lambda_at(&z, 128).unwrap();
        let d = Complex::with_val(128, &from_series.value - &direct).abs().real().to_f64();
        assert!(d <= from_series.error_bound.to_f64() + 1e-30, "z = ({x}, {y}): {d}");
    }
}
