//! Truncated lattice sums along the arc `z_θ = (e^{iθ} - 1)/2`.
//!
//! `F_{2k+1}(θ) = Σ (c e^{iθ/2} + d e^{-iθ/2})^{-(2k+1)}` over coprime `(c, d)`
//! in the residue classes `(0,3), (1,0), (2,1), (3,2)` mod 4. The sum is
//! purely imaginary and its two smallest terms give `-2i sin((2k+1)θ/2)`.

pub mod budget;
pub mod interlace;
pub mod scan;

use rayon::prelude::*;
use rug::{Complex, Float};

use crate::error::{Error, Result};

pub use budget::{error_budget, ErrorBudget};
pub use interlace::{interlace_check, InterlaceInterval, InterlaceReport};
pub use scan::{
    refine_zero, rsd_fraction, scan_arc, transport_check, RsdReport, ScanPoint, ScanResult,
    SignChange, TransportMatch,
};

pub const DEFAULT_CLASSES: [(u8, u8); 4] = [(0, 3), (1, 0), (2, 1), (3, 2)];

/// Row vector `(α, β)` times `gamma`, reduced mod 4.
pub fn slash_class(pair: (i64, i64), gamma: [[i64; 2]; 2]) -> Result<(u8, u8)> {
    let det = gamma[0][0] * gamma[1][1] - gamma[0][1] * gamma[1][0];
    if det != 1 {
        return Err(Error::BadDeterminant(det));
    }
    let a = pair.0 * gamma[0][0] + pair.1 * gamma[1][0];
    let b = pair.0 * gamma[0][1] + pair.1 * gamma[1][1];
    Ok((a.rem_euclid(4) as u8, b.rem_euclid(4) as u8))
}

pub(crate) fn gcd(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn in_classes(classes: &[(u8, u8)], c: i64, d: i64) -> bool {
    let key = (c.rem_euclid(4) as u8, d.rem_euclid(4) as u8);
    classes.contains(&key)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeSumSpec {
    /// Weight `2k + 1`.
    pub k: usize,
    pub classes: Vec<(u8, u8)>,
    /// Pairs with `c² + d² ≤ n_max` are summed.
    pub n_max: u64,
    pub precision_bits: u32,
}

impl LatticeSumSpec {
    pub fn new(k: usize, n_max: u64, precision_bits: u32) -> Result<Self> {
        let spec = Self {
            k,
            classes: DEFAULT_CLASSES.to_vec(),
            n_max,
            precision_bits,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_max < 1 {
            return Err(Error::InvalidArgument("n_max must be at least 1".into()));
        }
        if self.precision_bits < 16 {
            return Err(Error::InvalidArgument("precision_bits must be at least 16".into()));
        }
        Ok(())
    }

    pub fn weight(&self) -> u32 {
        2 * self.k as u32 + 1
    }

    /// Coprime pairs in the residue classes, in a fixed order.
    pub fn pairs(&self) -> Vec<(i64, i64)> {
        let r = (self.n_max as f64).sqrt().ceil() as i64 + 1;
        let n = self.n_max as i64;
        let mut out = Vec::new();
        for c in -r..=r {
            for d in -r..=r {
                if c * c + d * d <= n && in_classes(&self.classes, c, d) && gcd(c, d) == 1 {
                    out.push((c, d));
                }
            }
        }
        out
    }

    /// `n_max` above which [`tail_bound`] is below `target` for `|cos θ| ≤ alpha`,
    /// never below `floor`.
    pub fn n_max_for_tail(k: usize, alpha: f64, target: f64, floor: u64) -> Result<u64> {
        let mut n = floor.max(100);
        while tail_bound(k, n, alpha)? >= target {
            n = n.checked_mul(2).ok_or_else(|| {
                Error::InvalidArgument("tail target unreachable".into())
            })?;
        }
        Ok(n)
    }
}

/// `5 (1-α)^{-k-1/2} n_max^{-k+1} / (k-1)`: bound on the terms with
/// `c² + d² > n_max` when `|cos θ| ≤ α`.
pub fn tail_bound(k: usize, n_max: u64, alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    if k < 2 || n_max < 100 {
        return Err(Error::InvalidArgument(format!(
            "tail bound needs k >= 2 and n_max >= 100, got k = {k}, n_max = {n_max}"
        )));
    }
    let kf = k as f64;
    let log = (5.0f64).ln() - (kf + 0.5) * (1.0 - alpha).ln() - (kf - 1.0) * (n_max as f64).ln()
        - (kf - 1.0).ln();
    Ok(log.exp())
}

/// `α` for the tail bound at `θ`: `|cos θ|`, nudged up to absorb rounding.
fn pointwise_alpha(theta: &Float) -> f64 {
    let c = Float::with_val(64, theta.cos_ref()).to_f64().abs();
    (c + 1e-12).clamp(1e-9, 1.0 - 1e-12)
}

#[derive(Clone, Debug)]
pub struct ArcEvaluation {
    pub theta: Float,
    pub k: usize,
    pub n_max: u64,
    pub precision_bits: u32,
    /// `Im F`.
    pub value_im: Float,
    /// `Re F`, zero up to rounding.
    pub value_re_residual: Float,
    /// Bound on the omitted `c² + d² > n_max` terms; infinite when unavailable.
    pub tail_bound: f64,
    /// `2 sin((2k+1)θ/2)`; `Im F ≈ -main_term`.
    pub main_term: f64,
    pub max_summand: Float,
    pub n_terms: usize,
}

impl ArcEvaluation {
    /// `n_terms · 2^{-p+4} · max summand`.
    pub fn rounding_bound(&self) -> f64 {
        let m = self.max_summand.to_f64();
        self.n_terms as f64 * 2f64.powi(-(self.precision_bits as i32) + 4) * m
    }

    pub fn margin(&self) -> f64 {
        self.tail_bound + self.rounding_bound()
    }

    pub fn certified(&self) -> bool {
        self.value_im.clone().abs().to_f64() > self.margin()
    }

    /// Sign of `Im F` if certified, else 0.
    pub fn certified_sign(&self) -> i8 {
        if self.certified() {
            self.raw_sign()
        } else {
            0
        }
    }

    /// Sign of the computed value without certification.
    pub fn raw_sign(&self) -> i8 {
        match self.value_im.cmp0() {
            Some(std::cmp::Ordering::Greater) => 1,
            Some(std::cmp::Ordering::Less) => -1,
            _ => 0,
        }
    }

    /// `iF = -Im F`.
    pub fn i_f(&self) -> Float {
        Float::with_val(self.precision_bits, -&self.value_im)
    }

    /// `|Re F| / max summand < 2^{-p/2}`.
    pub fn purely_imaginary(&self) -> bool {
        if self.max_summand.is_zero() {
            return true;
        }
        let r = Float::with_val(64, self.value_re_residual.abs_ref()) / &self.max_summand;
        r.to_f64() < 2f64.powf(-(self.precision_bits as f64) / 2.0)
    }
}

/// `z^{-w}` as `(z̄/|z|²)^w` by binary powering.
pub(crate) fn inv_pow(z: &Complex, w: u32) -> Complex {
    let p = z.prec().0;
    let nz = Float::with_val(p, z.norm_ref());
    let mut base = Complex::with_val(p, z.conj_ref());
    base /= &nz;
    let mut out = Complex::with_val(p, 1);
    let mut e = w;
    while e > 0 {
        if e & 1 == 1 {
            out *= &base;
        }
        e >>= 1;
        if e > 0 {
            base.square_mut();
        }
    }
    out
}

/// Pairs grouped so one `evaluate_F` call can sum them in parallel and
/// recombine in a fixed order.
///
/// `(c, d) ↦ (-d, -c)` sends `z` to `-z̄`, so for odd weight the two terms add
/// up to `2i Im(z^{-w})`; `mirrored` holds one representative of each such
/// orbit inside the class set, `single` the rest.
#[derive(Clone, Debug)]
pub struct PreparedLattice {
    pub spec: LatticeSumSpec,
    pairs: Vec<(i64, i64)>,
    mirrored: Vec<(i64, i64)>,
    single: Vec<(i64, i64)>,
}

const CHUNK: usize = 1024;

impl PreparedLattice {
    pub fn new(spec: LatticeSumSpec) -> Result<Self> {
        spec.validate()?;
        let pairs = spec.pairs();
        let mut mirrored = Vec::new();
        let mut single = Vec::new();
        for &(c, d) in &pairs {
            let image = (-d, -c);
            if image != (c, d) && in_classes(&spec.classes, image.0, image.1) {
                if (c, d) < image {
                    mirrored.push((c, d));
                }
            } else {
                single.push((c, d));
            }
        }
        Ok(Self {
            spec,
            pairs,
            mirrored,
            single,
        })
    }

    pub fn pairs(&self) -> &[(i64, i64)] {
        &self.pairs
    }

    pub fn evaluate(&self, theta: &Float) -> Result<ArcEvaluation> {
        let pi = crate::numeric::pi(64).to_f64();
        let th = theta.to_f64();
        if !(th > 0.0 && th < pi) {
            return Err(Error::AngleOutOfRange(th));
        }
        let p = self.spec.precision_bits;
        let wp = p + 16;
        let half = Float::with_val(wp, theta / 2u32);
        let s = Float::with_val(wp, half.sin_ref());
        let c = Float::with_val(wp, half.cos_ref());
        let w = self.spec.weight();
        let term = |cc: i64, dd: i64| {
            let re = Float::with_val(wp, &c * (cc + dd));
            let im = Float::with_val(wp, &s * (cc - dd));
            inv_pow(&Complex::with_val(wp, (re, im)), w)
        };
        let mirrored: Vec<(Float, Float)> = self
            .mirrored
            .par_chunks(CHUNK)
            .map(|chunk| {
                let mut acc = Float::with_val(wp, 0);
                let mut big = Float::with_val(wp, 0);
                for &(cc, dd) in chunk {
                    let t = term(cc, dd);
                    let m = Float::with_val(wp, t.abs_ref());
                    if m > big {
                        big = m;
                    }
                    acc += t.imag();
                }
                (acc, big)
            })
            .collect();
        let single: Vec<(Complex, Float)> = self
            .single
            .par_chunks(CHUNK)
            .map(|chunk| {
                let mut acc = Complex::with_val(wp, 0);
                let mut big = Float::with_val(wp, 0);
                for &(cc, dd) in chunk {
                    let t = term(cc, dd);
                    let m = Float::with_val(wp, t.abs_ref());
                    if m > big {
                        big = m;
                    }
                    acc += t;
                }
                (acc, big)
            })
            .collect();
        let mut im_sum = Float::with_val(wp, 0);
        let mut sum = Complex::with_val(wp, 0);
        let mut max_summand = Float::with_val(wp, 0);
        for (a, b) in mirrored {
            im_sum += a;
            if b > max_summand {
                max_summand = b;
            }
        }
        im_sum *= 2u32;
        for (a, b) in single {
            sum += a;
            if b > max_summand {
                max_summand = b;
            }
        }
        sum += Complex::with_val(wp, (Float::new(wp), im_sum));
        let n_terms = self.pairs.len();
        if n_terms as f64 * 2f64.powi(-(p as i32) + 4) >= 1.0 {
            return Err(Error::PrecisionExhausted(format!(
                "{n_terms} terms at {p} bits"
            )));
        }
        let tail = if self.spec.n_max >= 100 && self.spec.k >= 2 {
            tail_bound(self.spec.k, self.spec.n_max, pointwise_alpha(theta))?
        } else {
            f64::INFINITY
        };
        let w = w as f64;
        let ev = ArcEvaluation {
            theta: Float::with_val(wp, theta),
            k: self.spec.k,
            n_max: self.spec.n_max,
            precision_bits: p,
            value_im: Float::with_val(p, sum.imag()),
            value_re_residual: Float::with_val(p, sum.real()),
            tail_bound: tail,
            main_term: 2.0 * (w * th / 2.0).sin(),
            max_summand: Float::with_val(p, max_summand),
            n_terms,
        };
        if !ev.purely_imaginary() {
            return Err(Error::PrecisionExhausted(format!(
                "real part {} not resolved against the largest summand",
                ev.value_re_residual.to_f64()
            )));
        }
        Ok(ev)
    }
}

/// One evaluation of the truncated sum at `θ ∈ (0, π)`.
#[allow(non_snake_case)]
pub fn evaluate_F(spec: &LatticeSumSpec, theta: &Float) -> Result<ArcEvaluation> {
    PreparedLattice::new(spec.clone())?.evaluate(theta)
}

/// Sum over the class members with `{|c|, |d|} = {a, b}`; `coprime` toggles the
/// gcd filter so that non-primitive pairs such as `(3, 0)` can be inspected.
pub fn pair_partial_sum(
    spec: &LatticeSumSpec,
    a: i64,
    b: i64,
    theta: &Float,
    coprime: bool,
) -> Complex {
    let wp = spec.precision_bits + 16;
    let half = Float::with_val(wp, theta / 2u32);
    let s = Float::with_val(wp, half.sin_ref());
    let c = Float::with_val(wp, half.cos_ref());
    let mut cand = Vec::new();
    for (x, y) in [(a, b), (b, a)] {
        for sx in [1, -1] {
            for sy in [1, -1] {
                let p = (sx * x, sy * y);
                if !cand.contains(&p) {
                    cand.push(p);
                }
            }
        }
    }
    let w = spec.weight();
    let mut acc = Complex::with_val(wp, 0);
    for (cc, dd) in cand {
        if !in_classes(&spec.classes, cc, dd) || (coprime && gcd(cc, dd) != 1) {
            continue;
        }
        let re = Float::with_val(wp, &c * (cc + dd));
        let im = Float::with_val(wp, &s * (cc - dd));
        acc += inv_pow(&Complex::with_val(wp, (re, im)), w);
    }
    acc
}
