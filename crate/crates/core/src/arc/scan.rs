//! Certified sign changes of `Im F` on a θ-grid.

use rayon::prelude::*;
use rug::{Float, Rational};

use super::{ArcEvaluation, LatticeSumSpec, PreparedLattice};
use crate::cn::cn_polynomials;
use crate::error::{Error, Result};
use crate::exact::roots::dyadic_tolerance;
use crate::exact::sturm_isolate;
use crate::numeric::lambda_transport;

/// Alternative points tried around an uncertified grid point.
pub const RETRY_LIMIT: usize = 4;
/// Iteration cap for `θ*`.
pub const REFINE_ITERATIONS: usize = 60;
/// Bracket width at which refinement stops.
pub const REFINE_WIDTH: f64 = 1e-15;

#[derive(Clone, Debug, PartialEq)]
pub struct ScanPoint {
    pub theta: f64,
    pub im_f: f64,
    /// Sign of the computed `Im F`.
    pub sign: i8,
    pub certified: bool,
    pub tail_bound: f64,
    pub margin: f64,
}

impl ScanPoint {
    fn from_eval(ev: &ArcEvaluation) -> Self {
        Self {
            theta: ev.theta.to_f64(),
            im_f: ev.value_im.to_f64(),
            sign: ev.raw_sign(),
            certified: ev.certified(),
            tail_bound: ev.tail_bound,
            margin: ev.margin(),
        }
    }
}

/// Consecutive certified points with opposite signs; `F` vanishes in between.
#[derive(Clone, Debug, PartialEq)]
pub struct SignChange {
    pub lo: f64,
    pub hi: f64,
    pub sign_lo: i8,
    pub sign_hi: i8,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanResult {
    pub k: usize,
    pub points: Vec<ScanPoint>,
    pub intervals: Vec<SignChange>,
    /// Grid angles left uncertified after retries.
    pub uncertified: Vec<f64>,
}

fn grid_angles(theta_lo: f64, theta_hi: f64, grid: usize) -> Vec<f64> {
    let step = (theta_hi - theta_lo) / (grid - 1) as f64;
    (0..grid).map(|i| theta_lo + step * i as f64).collect()
}

fn evaluate_with_retries(
    lattice: &PreparedLattice,
    theta: f64,
    step: f64,
    lo: f64,
    hi: f64,
) -> Result<(ScanPoint, bool)> {
    let prec = lattice.spec.precision_bits;
    let ev = lattice.evaluate(&Float::with_val(prec, theta))?;
    if ev.certified() {
        return Ok((ScanPoint::from_eval(&ev), true));
    }
    let mut first = ScanPoint::from_eval(&ev);
    for j in 0..RETRY_LIMIT {
        let off = step / 2f64.powi(j as i32 / 2 + 1);
        let t = if j % 2 == 0 { theta + off } else { theta - off };
        if t <= lo || t >= hi {
            continue;
        }
        let ev = lattice.evaluate(&Float::with_val(prec, t))?;
        if ev.certified() {
            return Ok((ScanPoint::from_eval(&ev), true));
        }
    }
    first.certified = false;
    Ok((first, false))
}

/// Scan `[theta_lo, theta_hi]` on `grid` equally spaced points.
pub fn scan_arc(
    lattice: &PreparedLattice,
    theta_lo: f64,
    theta_hi: f64,
    grid: usize,
) -> Result<ScanResult> {
    let k = lattice.spec.k;
    let pi = std::f64::consts::PI;
    if theta_lo == theta_hi {
        return Ok(ScanResult {
            k,
            points: Vec::new(),
            intervals: Vec::new(),
            uncertified: Vec::new(),
        });
    }
    if !(theta_lo > 0.0 && theta_hi < pi && theta_lo < theta_hi) {
        return Err(Error::InvalidArgument(format!(
            "scan range [{theta_lo}, {theta_hi}] must lie in (0, π)"
        )));
    }
    if grid < 2 {
        return Err(Error::InvalidArgument("grid must be at least 2".into()));
    }
    let angles = grid_angles(theta_lo, theta_hi, grid);
    let step = angles[1] - angles[0];
    let results: Vec<(ScanPoint, bool)> = angles
        .par_iter()
        .enumerate()
        .map(|(i, &t)| {
            let lo = if i == 0 { 0.0 } else { angles[i - 1] };
            let hi = if i + 1 == angles.len() { pi } else { angles[i + 1] };
            evaluate_with_retries(lattice, t, step, lo, hi)
        })
        .collect::<Result<_>>()?;
    let mut points = Vec::with_capacity(results.len());
    let mut uncertified = Vec::new();
    for (i, (p, ok)) in results.into_iter().enumerate() {
        if !ok {
            uncertified.push(angles[i]);
        }
        points.push(p);
    }
    let mut intervals = Vec::new();
    let mut last: Option<&ScanPoint> = None;
    for p in points.iter().filter(|p| p.certified) {
        if let Some(prev) = last {
            if prev.sign != p.sign {
                intervals.push(SignChange {
                    lo: prev.theta,
                    hi: p.theta,
                    sign_lo: prev.sign,
                    sign_hi: p.sign,
                });
            }
        }
        last = Some(p);
    }
    Ok(ScanResult {
        k,
        points,
        intervals,
        uncertified,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct RsdReport {
    pub k: usize,
    pub count: usize,
    /// `k - 1`, the number of nontrivial zeros.
    pub total: usize,
    pub fraction: Rational,
    pub scan: ScanResult,
}

/// Grid points per main-term zero spacing `2π/(2k+1)` in [`rsd_fraction`].
pub const RSD_POINTS_PER_SPACING: usize = 8;

/// Certified sign changes over `(0.05π, 0.95π)` divided by `k - 1`.
pub fn rsd_fraction(k: usize, n_max: u64, precision_bits: u32) -> Result<RsdReport> {
    if 2 * k + 1 <= 51 {
        return Err(Error::InvalidArgument(format!(
            "rsd_fraction needs 2k+1 > 51, got {}",
            2 * k + 1
        )));
    }
    let pi = std::f64::consts::PI;
    let lattice = PreparedLattice::new(LatticeSumSpec::new(k, n_max, precision_bits)?)?;
    // main-term zeros are 2π/(2k+1) apart
    let spacings = 0.45 * (2 * k + 1) as f64;
    let grid = (spacings * RSD_POINTS_PER_SPACING as f64).ceil() as usize + 1;
    let scan = scan_arc(&lattice, 0.05 * pi, 0.95 * pi, grid)?;
    let count = scan.intervals.len();
    let total = k - 1;
    Ok(RsdReport {
        k,
        count,
        total,
        fraction: Rational::from((count as u64, total as u64)),
        scan,
    })
}

/// Illinois regula falsi on `Im F` inside a sign change. Stops when the
/// bracket is narrower than [`REFINE_WIDTH`] or the value drops below the
/// rounding bound.
pub fn refine_zero(lattice: &PreparedLattice, lo: f64, hi: f64) -> Result<Float> {
    let prec = lattice.spec.precision_bits;
    let mut a = Float::with_val(prec, lo);
    let mut b = Float::with_val(prec, hi);
    let mut fa = lattice.evaluate(&a)?.value_im;
    let mut fb = lattice.evaluate(&b)?.value_im;
    let (sa, sb) = (fa.cmp0(), fb.cmp0());
    if sa == sb || fa.is_zero() || fb.is_zero() {
        return Err(Error::InvalidArgument("no sign change to refine".into()));
    }
    let mut side = 0i8;
    for _ in 0..REFINE_ITERATIONS {
        let width = Float::with_val(prec, &b - &a).to_f64();
        if width < REFINE_WIDTH {
            break;
        }
        // a - fa (b - a) / (fb - fa)
        let num = Float::with_val(prec, &fa * Float::with_val(prec, &b - &a));
        let den = Float::with_val(prec, &fb - &fa);
        let mut m = Float::with_val(prec, &a - Float::with_val(prec, &num / &den));
        if !(m > a && m < b) {
            m = Float::with_val(prec, &a + &b) / 2u32;
        }
        let ev = lattice.evaluate(&m)?;
        let fm = ev.value_im.clone();
        if fm.is_zero() || fm.clone().abs().to_f64() <= ev.rounding_bound() {
            return Ok(m);
        }
        if fm.cmp0() == fa.cmp0() {
            a = m;
            fa = fm;
            if side == 1 {
                fb /= 2u32;
            }
            side = 1;
        } else {
            b = m;
            fb = fm;
            if side == -1 {
                fa /= 2u32;
            }
            side = -1;
        }
    }
    Ok(Float::with_val(prec, &a + &b) / 2u32)
}

#[derive(Clone, Debug, PartialEq)]
pub struct TransportMatch {
    pub theta_star: f64,
    /// `λ(-1/z_θ*)`.
    pub lambda: f64,
    pub nearest_root: f64,
    pub distance: f64,
}

/// Scan `(0.05π, 0.95π)`, refine every certified sign change to `θ*`, and
/// compare `λ(-1/z_θ*)` with the real roots of `p_{2k+1}`.
pub fn transport_check(
    k: usize,
    n_max: u64,
    precision_bits: u32,
    grid: usize,
) -> Result<(ScanResult, Vec<TransportMatch>)> {
    let pi_f = std::f64::consts::PI;
    let lattice = PreparedLattice::new(LatticeSumSpec::new(k, n_max, precision_bits)?)?;
    let scan = scan_arc(&lattice, 0.05 * pi_f, 0.95 * pi_f, grid)?;
    let p = cn_polynomials(k).p(k).clone();
    let tol = dyadic_tolerance(80);
    let roots: Vec<Float> = sturm_isolate(&p)?
        .iter()
        .map(|r| r.refine(&tol).map(|x| Float::with_val(precision_bits, &x)))
        .collect::<Result<_>>()?;
    let matches = scan
        .intervals
        .par_iter()
        .map(|iv| {
            let th = refine_zero(&lattice, iv.lo, iv.hi)?;
            let lam = lambda_transport(&th, precision_bits)?;
            let (nearest, dist) = roots
                .iter()
                .map(|r| (r.clone(), Float::with_val(precision_bits, r - &lam).abs()))
                .min_by(|a, b| a.1.partial_cmp(&b.1).expect("finite"))
                .map(|(r, d)| (r.to_f64(), d.to_f64()))
                .unwrap_or((f64::NAN, f64::INFINITY));
            Ok(TransportMatch {
                theta_star: th.to_f64(),
                lambda: lam.to_f64(),
                nearest_root: nearest,
                distance: dist,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((scan, matches))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_range() {
        let l = PreparedLattice::new(LatticeSumSpec::new(3, 100, 128).unwrap()).unwrap();
        let r = scan_arc(&l, 1.0, 1.0, 10).unwrap();
        assert!(r.points.is_empty() && r.intervals.is_empty());
    }

    #[test]
    fn two_point_grid_has_at_most_one_interval() {
        let l = PreparedLattice::new(LatticeSumSpec::new(30, 400, 128).unwrap()).unwrap();
        let r = scan_arc(&l, 0.5, 2.5, 2).unwrap();
        assert!(r.intervals.len() <= 1);
        assert_eq!(r.points.len(), 2);
    }

    #[test]
    fn rejects_small_weight() {
        assert!(rsd_fraction(25, 10_000, 128).is_err());
    }
}
