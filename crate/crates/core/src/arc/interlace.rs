//! Zero intervals of `F_{2k-1}` and `F_{2k+1}` around the main-term zeros.
//!
//! Endpoints are rational multiples of π, so disjointness and separation are
//! decided exactly; the signs at the endpoints come from certified lattice sums.

use rayon::prelude::*;
use rug::{Float, Rational};

use super::{LatticeSumSpec, PreparedLattice};
use crate::error::{Error, Result};
use crate::numeric::pi;

#[derive(Clone, Debug, PartialEq)]
pub struct InterlaceInterval {
    /// Weight of the series whose zero the interval holds: `2k-1` or `2k+1`.
    pub weight: usize,
    pub j: usize,
    /// Endpoints in units of π, after clipping to `[1/10, 9/10]`.
    pub lo_pi: Rational,
    pub hi_pi: Rational,
    pub lo: f64,
    pub hi: f64,
    /// True when the clipping range cut the interval.
    pub clipped: bool,
    /// Computed signs of `Im F` at `(lo, hi)`.
    pub signs: (i8, i8),
    pub certified: bool,
    /// `(+, -)` for even `j`, `(-, +)` for odd `j`.
    pub pattern_ok: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct InterlaceReport {
    pub k: usize,
    /// `2/((2k+1)(2k-1))`, in units of π.
    pub half_width_pi: Rational,
    /// `α_{j,k} = 2πj/(2k-1)`, `j = 0..k-1`.
    pub alphas: Vec<f64>,
    pub intervals_2k_minus_1: Vec<InterlaceInterval>,
    pub intervals_2k_plus_1: Vec<InterlaceInterval>,
    pub disjoint: bool,
    pub separated: bool,
    pub all_certified: bool,
    pub pattern_ok: bool,
}

impl InterlaceReport {
    pub fn passed(&self) -> bool {
        self.disjoint && self.separated && self.all_certified && self.pattern_ok
    }
}

fn clip_lo() -> Rational {
    Rational::from((1, 10))
}

fn clip_hi() -> Rational {
    Rational::from((9, 10))
}

/// Open intervals of half-width `w` around `2j/m`, `j = 0..=j_max`, clipped.
fn family(m: usize, j_max: usize, w: &Rational) -> Vec<(usize, Rational, Rational, bool)> {
    let mut out = Vec::new();
    for j in 0..=j_max {
        let c = Rational::from((2 * j as u64, m as u64));
        let a = Rational::from(&c - w);
        let b = Rational::from(&c + w);
        let lo = if a < clip_lo() { clip_lo() } else { a.clone() };
        let hi = if b > clip_hi() { clip_hi() } else { b.clone() };
        if lo < hi {
            let clipped = lo != a || hi != b;
            out.push((j, lo, hi, clipped));
        }
    }
    out
}

fn certify(
    lattice: &PreparedLattice,
    weight: usize,
    raw: Vec<(usize, Rational, Rational, bool)>,
) -> Result<Vec<InterlaceInterval>> {
    let prec = lattice.spec.precision_bits;
    let wp = prec + 16;
    let pi = pi(wp);
    raw.into_par_iter()
        .map(|(j, lo_pi, hi_pi, clipped)| {
            let lo_t = Float::with_val(wp, &lo_pi) * &pi;
            let hi_t = Float::with_val(wp, &hi_pi) * &pi;
            let a = lattice.evaluate(&lo_t)?;
            let b = lattice.evaluate(&hi_t)?;
            let signs = (a.raw_sign(), b.raw_sign());
            let want = if j % 2 == 0 { (1, -1) } else { (-1, 1) };
            Ok(InterlaceInterval {
                weight,
                j,
                lo: lo_t.to_f64(),
                hi: hi_t.to_f64(),
                lo_pi,
                hi_pi,
                clipped,
                signs,
                certified: a.certified() && b.certified(),
                pattern_ok: signs == want,
            })
        })
        .collect()
}

fn disjoint(a: &InterlaceInterval, b: &InterlaceInterval) -> bool {
    a.hi_pi <= b.lo_pi || b.hi_pi <= a.lo_pi
}

/// Build, clip and certify `I_{j,2k-1}` and `I_{j,2k+1}` on `[π/10, 9π/10]`.
pub fn interlace_check(k: usize, n_max: u64, precision_bits: u32) -> Result<InterlaceReport> {
    if k <= 15 {
        return Err(Error::InterlaceRange);
    }
    let w = Rational::from((2u64, ((2 * k + 1) * (2 * k - 1)) as u64));
    let low = PreparedLattice::new(LatticeSumSpec::new(k - 1, n_max, precision_bits)?)?;
    let high = PreparedLattice::new(LatticeSumSpec::new(k, n_max, precision_bits)?)?;
    let minus = certify(&low, 2 * k - 1, family(2 * k - 1, k - 1, &w))?;
    let plus = certify(&high, 2 * k + 1, family(2 * k + 1, k, &w))?;

    let all: Vec<&InterlaceInterval> = minus.iter().chain(plus.iter()).collect();
    let mut is_disjoint = true;
    for (i, a) in all.iter().enumerate() {
        for b in &all[i + 1..] {
            if !disjoint(a, b) {
                is_disjoint = false;
            }
        }
    }
    let separated = minus.windows(2).all(|ab| {
        plus.iter()
            .any(|c| ab[0].hi_pi <= c.lo_pi && c.hi_pi <= ab[1].lo_pi)
    });
    let all_certified = all.iter().all(|i| i.certified);
    let pattern_ok = all.iter().all(|i| i.pattern_ok);
    let alphas = (0..k)
        .map(|j| 2.0 * std::f64::consts::PI * j as f64 / (2 * k - 1) as f64)
        .collect();
    Ok(InterlaceReport {
        k,
        half_width_pi: w,
        alphas,
        intervals_2k_minus_1: minus,
        intervals_2k_plus_1: plus,
        disjoint: is_disjoint,
        separated,
        all_certified,
        pattern_ok,
    })
}
