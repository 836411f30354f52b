//! Floating evaluation at configurable precision: q-series at a point, theta
//! constants by direct summation, and `λ` on the vertical lines `Re τ = 0, 1`.

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Complex, Float, Rational};

use crate::error::{Error, Result};
use crate::exact::{FracQSeries, GRID};

pub fn rational_to_float(r: &Rational, prec: u32) -> Float {
    Float::with_val(prec, r)
}

pub fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

/// A value together with a bound on its truncation error.
#[derive(Clone, Debug)]
pub struct NumericValue {
    pub value: Complex,
    pub error_bound: Float,
}

/// `Σ c_n q^{n/8}` at `z`, `q = e^{2πiz}`, with a geometric estimate of the
/// omitted tail.
pub fn numeric_eval(series: &FracQSeries, z: &Complex, precision_bits: u32) -> Result<NumericValue> {
    if z.imag().cmp0() != Some(std::cmp::Ordering::Greater) {
        return Err(Error::InvalidArgument("Im z must be positive".into()));
    }
    let prec = precision_bits + 32;
    // y = q^{1/8} = exp(2πi z / 8)
    let two_pi_i = Complex::with_val(prec, (0, 2 * pi(prec)));
    let y = (Complex::with_val(prec, &two_pi_i * z) / GRID).exp();
    let ay = Float::with_val(prec, y.abs_ref()).to_f64();
    let terms: Vec<(i64, Rational)> = series.terms().collect();
    let mut sum = Complex::with_val(prec, 0);
    for (n, c) in &terms {
        let yn = y.clone().pow(*n as i32);
        sum += yn * rational_to_float(c, prec);
    }
    let start = series.min_exp().unwrap_or(0);
    let trunc = series.trunc();
    let window = (trunc - start).max(1);
    // growth of |c_n| estimated from the top half of the known window
    let half = start + window / 2;
    let mag = |lo: i64, hi: i64| {
        terms
            .iter()
            .filter(|(n, _)| *n >= lo && *n < hi)
            .map(|(_, c)| c.to_f64().abs())
            .fold(0.0f64, f64::max)
    };
    let lower = mag(start, half).max(1.0);
    let upper = mag(half, trunc).max(1.0);
    let growth = (upper / lower).powf(1.0 / (trunc - half).max(1) as f64).max(1.0);
    let rho = ay * growth;
    let target = 2f64.powi(-(precision_bits as i32)) * Float::with_val(53, sum.abs_ref()).to_f64().max(1.0);
    let lead = upper * ay.powf(trunc as f64);
    let tail = if rho < 1.0 { lead / (1.0 - rho) } else { f64::INFINITY };
    if !(tail <= target) {
        let required = if rho < 1.0 {
            let extra = ((target * (1.0 - rho)) / lead).ln() / rho.ln();
            trunc + extra.ceil().max(1.0) as i64
        } else {
            i64::MAX
        };
        return Err(Error::PrecisionUnattainable {
            reason: format!("tail estimate {tail:e} exceeds 2^-{precision_bits}"),
            required_trunc: required,
        });
    }
    Ok(NumericValue {
        value: Complex::with_val(precision_bits, sum),
        error_bound: Float::with_val(53, tail),
    })
}

/// `(Θ₂, Θ₃, Θ₄)(z)` by direct summation of the lattice sums.
pub fn theta_values(z: &Complex, prec: u32) -> Result<(Complex, Complex, Complex)> {
    if z.imag().cmp0() != Some(std::cmp::Ordering::Greater) {
        return Err(Error::InvalidArgument("Im z must be positive".into()));
    }
    let wp = prec + 32;
    let pi_i = Complex::with_val(wp, (0, pi(wp)));
    // nome x = e^{πiz}
    let x = Complex::with_val(wp, &pi_i * z).exp();
    let ax = Float::with_val(wp, x.abs_ref());
    let eps = Float::with_val(wp, Float::i_exp(1, -(wp as i32)));
    let mut t2 = Complex::with_val(wp, 0);
    let mut t3 = Complex::with_val(wp, 1);
    let mut t4 = Complex::with_val(wp, 1);
    let mut n: u32 = 0;
    loop {
        // x^{n(n+1)} for Θ₂, x^{(n+1)^2} for Θ₃ and Θ₄
        let e2 = n * (n + 1);
        let e3 = (n + 1) * (n + 1);
        let m2 = Float::with_val(wp, ax.clone().pow(e2));
        if m2 < eps && n > 0 {
            break;
        }
        t2 += x.clone().pow(e2);
        let x3 = x.clone().pow(e3);
        if (n + 1) % 2 == 0 {
            t4 += Complex::with_val(wp, &x3 * 2u32);
        } else {
            t4 -= Complex::with_val(wp, &x3 * 2u32);
        }
        t3 += x3 * 2u32;
        n += 1;
    }
    // Θ₂ = 2 e^{πiz/4} Σ x^{n(n+1)}
    let quarter = (Complex::with_val(wp, &pi_i * z) / 4u32).exp();
    t2 *= quarter * 2u32;
    Ok((
        Complex::with_val(prec, t2),
        Complex::with_val(prec, t3),
        Complex::with_val(prec, t4),
    ))
}

/// `λ(z) = Θ₂⁴ / Θ₃⁴` by direct theta summation.
pub fn lambda_at(z: &Complex, prec: u32) -> Result<Complex> {
    let (t2, t3, _) = theta_values(z, prec + 16)?;
    let r = Complex::with_val(prec + 16, t2 / t3);
    Ok(Complex::with_val(prec, r.pow(4u32)))
}

/// `λ(it)` for `t > 0`, using `λ(i/t) = 1 - λ(it)` so the theta sums always
/// run with nome at most `e^{-π}`.
pub fn lambda_imaginary_axis(t: &Float, prec: u32) -> Result<Float> {
    if t.cmp0() != Some(std::cmp::Ordering::Greater) {
        return Err(Error::InvalidArgument("t must be positive".into()));
    }
    let wp = prec + 16;
    let (s, flip) = if *t >= 1 {
        (Float::with_val(wp, t), false)
    } else {
        (Float::with_val(wp, t.recip_ref()), true)
    };
    let z = Complex::with_val(wp, (0, s));
    let l = lambda_at(&z, wp)?.real().clone();
    Ok(if flip {
        Float::with_val(prec, 1 - l)
    } else {
        Float::with_val(prec, l)
    })
}

/// `λ(1 + it) = λ(it) / (λ(it) - 1)`, a negative real number.
pub fn lambda_shifted_axis(t: &Float, prec: u32) -> Result<Float> {
    let wp = prec + 16;
    let l = lambda_imaginary_axis(t, wp)?;
    let d = Float::with_val(wp, &l - 1u32);
    Ok(Float::with_val(prec, l / d))
}

/// `λ(-1/z_θ)` for the arc point `z_θ = (e^{iθ} - 1)/2`; `-1/z_θ = 1 + i cot(θ/2)`.
pub fn lambda_transport(theta: &Float, prec: u32) -> Result<Float> {
    let wp = prec + 16;
    let half = Float::with_val(wp, theta / 2u32);
    let t = Float::with_val(wp, half.tan()).recip();
    lambda_shifted_axis(&t, prec)
}
