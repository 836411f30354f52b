//! Exact q-expansions of the theta constants, `λ`, and the level-2
//! Eisenstein series. All exponents live on the `q^(1/8)` grid.

use rug::{Integer, Rational};

use crate::cn::{bernoulli_numbers, euler_numbers};
use crate::error::{Error, Result};
use crate::exact::{FracQSeries, ScaledSeries};

/// `Θ₂, Θ₃, Θ₄` to a common truncation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaBundle {
    pub theta2: FracQSeries,
    pub theta3: FracQSeries,
    pub theta4: FracQSeries,
}

/// `λ = Θ₂⁴ / Θ₃⁴`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaSeries {
    pub series: FracQSeries,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EisensteinKind {
    /// `E_{2k+1,χ}`
    OddChi,
    /// `ĝ_{2k+1}`, wrapped so that the value is `G_{2k+1}`
    GNormalized,
    EvenPlus,
    EvenMinus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// Candidate readings of the printed `E_{2k}^±` expansion
/// `1 ± M Σ r^{2k} q^{r/2} / (1 ∓ (-1)^r q^{r/2})`.
///
/// The printed weight `r^{2k}` does not match weight `2k`, and the denominator
/// sign is ambiguous, so the expansion is pinned down by requiring the series
/// to be a polynomial in `1/λ` (see `lambda_poly::select_even_reading`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EvenReading {
    /// `r^{2k-1}`, `E^+` over `1 - (-1)^r q^{r/2}`, `E^-` over `1 + (-1)^r q^{r/2}`.
    WeightCorrected,
    /// `r^{2k-1}` with the two denominators exchanged.
    WeightCorrectedSwapped,
    /// `r^{2k}` with the denominators exactly as printed.
    Printed,
    /// `r^{2k}` with the denominators exchanged.
    PrintedSwapped,
    /// The opposite-sign `WeightCorrected` series at `z + 1` (`q^{1/2} -> -q^{1/2}`).
    /// It shares the constant and `q^{1/2}` coefficients; weight 2 needs it
    /// because the `+` Lambert series there is not modular.
    Translated,
}

impl EvenReading {
    pub const ALL: [EvenReading; 5] = [
        EvenReading::WeightCorrected,
        EvenReading::WeightCorrectedSwapped,
        EvenReading::Printed,
        EvenReading::PrintedSwapped,
        EvenReading::Translated,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EvenReading::WeightCorrected => "weight-corrected",
            EvenReading::WeightCorrectedSwapped => "weight-corrected-swapped",
            EvenReading::Printed => "printed",
            EvenReading::PrintedSwapped => "printed-swapped",
            EvenReading::Translated => "translated",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EisensteinSeries {
    pub kind: EisensteinKind,
    pub k: usize,
    pub data: ScaledSeries,
}

impl EisensteinSeries {
    pub fn series(&self) -> &FracQSeries {
        self.data.series()
    }
}

/// Lattice sums: `Θ₂ = q^{1/8} Σ q^{n(n+1)/2}`, `Θ₃ = Σ q^{n²/2}`, `Θ₄ = Σ (-1)^n q^{n²/2}`.
pub fn theta_bundle(trunc: i64) -> Result<ThetaBundle> {
    if trunc <= 0 {
        return Err(Error::InvalidArgument(format!("trunc must be positive, got {trunc}")));
    }
    let mut t2 = Vec::new();
    let mut t3 = Vec::new();
    let mut t4 = Vec::new();
    // n(n+1)/2 pairs n with -n-1, so sum over n >= 0 twice
    let mut n: i64 = 0;
    while 1 + 4 * n * (n + 1) < trunc {
        t2.push((1 + 4 * n * (n + 1), Integer::from(2)));
        n += 1;
    }
    t3.push((0, Integer::from(1)));
    t4.push((0, Integer::from(1)));
    let mut n: i64 = 1;
    while 4 * n * n < trunc {
        t3.push((4 * n * n, Integer::from(2)));
        t4.push((4 * n * n, Integer::from(if n % 2 == 0 { 2 } else { -2 })));
        n += 1;
    }
    Ok(ThetaBundle {
        theta2: FracQSeries::from_integer_terms(t2, trunc),
        theta3: FracQSeries::from_integer_terms(t3, trunc),
        theta4: FracQSeries::from_integer_terms(t4, trunc),
    })
}

impl ThetaBundle {
    pub fn lambda(&self) -> Result<LambdaSeries> {
        let num = self.theta2.pow(4)?;
        let den = self.theta3.pow(4)?;
        Ok(LambdaSeries {
            series: num.div(&den)?,
        })
    }
}

pub fn lambda_series(trunc: i64) -> Result<LambdaSeries> {
    theta_bundle(trunc)?.lambda()
}

/// Mod-4 character `χ(r) = (-1/r)`.
pub fn chi4(r: i64) -> i64 {
    match r.rem_euclid(4) {
        1 => 1,
        3 => -1,
        _ => 0,
    }
}

/// `Σ_{r ≥ 1} weight(r) Σ_{m ≥ 1} sign(r, m) q^{r m / 2}` as an integer series.
fn lambert_half(
    trunc: i64,
    weight: impl Fn(i64) -> Integer,
    sign: impl Fn(i64, i64) -> i64,
) -> FracQSeries {
    let mut terms = Vec::new();
    let mut r = 1;
    while 4 * r < trunc {
        let w = weight(r);
        if w != 0 {
            let mut m = 1;
            while 4 * r * m < trunc {
                let s = sign(r, m);
                if s != 0 {
                    terms.push((4 * r * m, Integer::from(&w * s)));
                }
                m += 1;
            }
        }
        r += 1;
    }
    FracQSeries::from_integer_terms(terms, trunc)
}

fn pow_u(base: i64, e: usize) -> Integer {
    Integer::from(Integer::i_pow_u(base as i32, e as u32))
}

/// `4 (-1)^k / e_{2k}`.
pub fn odd_leading_constant(k: usize) -> Rational {
    let e = euler_numbers(k);
    let s = if k % 2 == 0 { 4 } else { -4 };
    Rational::from((Integer::from(s), e.e(k).clone()))
}

/// `E_{2k+1,χ} = 1 + (4(-1)^k / e_{2k}) Σ χ(r) r^{2k} q^{r/2} / (1 - q^{r/2})`.
pub fn eisenstein_odd(k: usize, trunc: i64) -> Result<EisensteinSeries> {
    let lam = lambert_half(trunc, |r| Integer::from(chi4(r)) * pow_u(r, 2 * k), |_, _| 1);
    let c = odd_leading_constant(k);
    let series = FracQSeries::one(trunc).add(&lam.scale(&c));
    Ok(EisensteinSeries {
        kind: EisensteinKind::OddChi,
        k,
        data: ScaledSeries::real(series),
    })
}

/// `ĝ_{2k+1} = Σ_{r ≥ 1} (2r-1)^{2k} q^{(2r-1)/4} / (1 + q^{(2r-1)/2})`, wrapped as
/// `G_{2k+1} = i^{-(2k+1)} (4 / e_{2k}) ĝ_{2k+1}`.
pub fn g_normalized(k: usize, trunc: i64) -> Result<EisensteinSeries> {
    let mut terms = Vec::new();
    let mut r = 1;
    // exponent (2r-1)(2m+1)/4 -> grid index 2(2r-1)(2m+1)
    while 2 * (2 * r - 1) < trunc {
        let w = pow_u(2 * r - 1, 2 * k);
        let mut m = 0;
        while 2 * (2 * r - 1) * (2 * m + 1) < trunc {
            let s = if m % 2 == 0 { 1 } else { -1 };
            terms.push((2 * (2 * r - 1) * (2 * m + 1), Integer::from(&w * s)));
            m += 1;
        }
        r += 1;
    }
    let series = FracQSeries::from_integer_terms(terms, trunc);
    let e = euler_numbers(k);
    let scalar = Rational::from((Integer::from(4), e.e(k).clone()));
    Ok(EisensteinSeries {
        kind: EisensteinKind::GNormalized,
        k,
        data: ScaledSeries::new(-(2 * k as i64 + 1), scalar, series),
    })
}

/// `(2πi)^{2k} / (4^k Γ(2k) L(2k, χ₀))` with `L(2k, χ₀) = (1 - 2^{-2k}) ζ(2k)` and
/// `ζ(2k) = (-1)^{k+1} B_{2k} (2π)^{2k} / (2 (2k)!)`. The powers of π cancel,
/// leaving `-4k / ((4^k - 1) B_{2k})`.
pub fn even_multiplier(k: usize) -> Result<Rational> {
    if k == 0 {
        return Err(Error::WeightZeroExcluded);
    }
    let b = bernoulli_numbers(2 * k);
    let four_k_minus_one = Integer::from(Integer::u_pow_u(4, k as u32)) - 1u32;
    let den = Rational::from(&b[2 * k] * four_k_minus_one);
    Ok(Rational::from(-4 * k as i64) / den)
}

/// `E_{2k}^±` under one of the candidate readings.
pub fn eisenstein_even_with_reading(
    k: usize,
    sign: Sign,
    reading: EvenReading,
    trunc: i64,
) -> Result<EisensteinSeries> {
    let mult = even_multiplier(k)?;
    let kind = match sign {
        Sign::Plus => EisensteinKind::EvenPlus,
        Sign::Minus => EisensteinKind::EvenMinus,
    };
    if reading == EvenReading::Translated {
        let other = match sign {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        };
        let base = eisenstein_even_with_reading(k, other, EvenReading::WeightCorrected, trunc)?;
        // q^{n/8} with n = 4j picks up (-1)^j
        let flipped = FracQSeries::from_terms(
            base.series().terms().map(|(n, c)| {
                if (n / 4) % 2 == 0 {
                    (n, c)
                } else {
                    (n, -c)
                }
            }),
            trunc,
        );
        return Ok(EisensteinSeries {
            kind,
            k,
            data: ScaledSeries::real(flipped),
        });
    }
    let (weight_exp, swapped) = match reading {
        EvenReading::WeightCorrected => (2 * k - 1, false),
        EvenReading::WeightCorrectedSwapped => (2 * k - 1, true),
        EvenReading::Printed => (2 * k, false),
        EvenReading::PrintedSwapped => (2 * k, true),
        EvenReading::Translated => unreachable!(),
    };
    // 1/(1 - ε q^{r/2}) = Σ_{m ≥ 0} ε^m q^{rm/2} with ε = s (-1)^r
    let s = match (sign, swapped) {
        (Sign::Plus, false) | (Sign::Minus, true) => 1,
        _ => -1,
    };
    let lam = lambert_half(
        trunc,
        |r| pow_u(r, weight_exp),
        |r, m| {
            let eps = if r % 2 == 0 { s } else { -s };
            if eps == 1 || (m - 1) % 2 == 0 {
                1
            } else {
                -1
            }
        },
    );
    let c = Rational::from(&mult * sign.as_i64());
    let series = FracQSeries::one(trunc).add(&lam.scale(&c));
    Ok(EisensteinSeries {
        kind,
        k,
        data: ScaledSeries::real(series),
    })
}

/// `E_{2k}^±` with weight `r^{2k-1}` and the printed denominators.
pub fn eisenstein_even(k: usize, sign: Sign, trunc: i64) -> Result<EisensteinSeries> {
    eisenstein_even_with_reading(k, sign, EvenReading::WeightCorrected, trunc)
}
