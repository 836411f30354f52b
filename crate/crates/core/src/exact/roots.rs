//! Real-root isolation with Sturm sequences, and exact bisection refinement.

use rug::{Integer, Rational};

use super::poly::RationalPolynomial;
use crate::error::{Error, Result};

/// Sturm chain `p, p', -rem(p, p'), ...`, each element scaled by a positive
/// constant so that sign-variation counts are unchanged.
#[derive(Clone, Debug)]
pub struct SturmChain {
    seq: Vec<RationalPolynomial>,
}

fn normalize_positive(p: RationalPolynomial) -> RationalPolynomial {
    p.primitive_part()
}

fn variations<I: IntoIterator<Item = i32>>(signs: I) -> usize {
    let mut last = 0;
    let mut count = 0;
    for s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

impl SturmChain {
    pub fn new(p: &RationalPolynomial) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut seq = vec![normalize_positive(p.clone())];
        let d = p.derivative();
        if !d.is_zero() {
            seq.push(normalize_positive(d));
        }
        while seq.len() >= 2 {
            let n = seq.len();
            let (_, r) = seq[n - 2].div_rem(&seq[n - 1])?;
            if r.is_zero() {
                break;
            }
            seq.push(normalize_positive(-r));
        }
        Ok(Self { seq })
    }

    pub fn polys(&self) -> &[RationalPolynomial] {
        &self.seq
    }

    pub fn variations_at(&self, x: &Rational) -> usize {
        variations(self.seq.iter().map(|p| p.sign_at(x)))
    }

    pub fn variations_at_pos_inf(&self) -> usize {
        variations(self.seq.iter().map(|p| p.sign_at_pos_inf()))
    }

    pub fn variations_at_neg_inf(&self) -> usize {
        variations(self.seq.iter().map(|p| p.sign_at_neg_inf()))
    }

    /// Number of distinct real roots in the half-open interval `(lo, hi]`.
    pub fn count_in(&self, lo: &Rational, hi: &Rational) -> usize {
        self.variations_at(lo).saturating_sub(self.variations_at(hi))
    }

    /// Number of distinct real roots.
    pub fn count_real(&self) -> usize {
        self.variations_at_neg_inf()
            .saturating_sub(self.variations_at_pos_inf())
    }
}

/// A real root of `poly` pinned to `[lo, hi]`.
///
/// `factor` is the square-free factor of `poly` that vanishes at the root, so
/// `factor` changes sign across the interval even when `multiplicity` is even.
/// `lo == hi` means the root is exactly that rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsolatedRoot {
    pub poly: RationalPolynomial,
    pub factor: RationalPolynomial,
    pub lo: Rational,
    pub hi: Rational,
    pub multiplicity: usize,
}

impl IsolatedRoot {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rational {
        Rational::from(&self.hi - &self.lo)
    }

    pub fn midpoint(&self) -> Rational {
        Rational::from(&self.lo + &self.hi) / 2u32
    }

    /// Halve the interval once, keeping the sign change.
    pub fn bisect(&mut self) {
        if self.is_exact() {
            return;
        }
        let mid = self.midpoint();
        let s_mid = self.factor.sign_at(&mid);
        if s_mid == 0 {
            self.lo = mid.clone();
            self.hi = mid;
        } else if s_mid == self.factor.sign_at(&self.lo) {
            self.lo = mid;
        } else {
            self.hi = mid;
        }
    }

    /// Bisect until the interval is no wider than `width`.
    pub fn narrow_to(&mut self, width: &Rational) {
        while !self.is_exact() && self.width() > *width {
            self.bisect();
        }
    }

    /// A rational within `tol` of the root.
    pub fn refine(&self, tol: &Rational) -> Result<Rational> {
        if tol.cmp0() != std::cmp::Ordering::Greater {
            return Err(Error::NonPositiveTolerance);
        }
        let mut r = self.clone();
        let w = Rational::from(tol * 2u32);
        r.narrow_to(&w);
        Ok(r.midpoint())
    }

    pub fn approx_f64(&self) -> f64 {
        self.midpoint().to_f64()
    }

    /// Strictly left of `other` (intervals do not touch).
    pub fn is_left_of(&self, other: &IsolatedRoot) -> bool {
        self.hi < other.lo
    }
}

/// `refine_root` from the operation list.
pub fn refine_root(r: &IsolatedRoot, tol: &Rational) -> Result<Rational> {
    r.refine(tol)
}

/// Smallest power of two strictly above the Cauchy bound `1 + max |a_i / a_n|`.
pub fn root_bound(p: &RationalPolynomial) -> Rational {
    let lc = p.leading().expect("nonzero").clone();
    let mut m = Rational::new();
    for c in &p.coeffs()[..p.coeffs().len() - 1] {
        let r = Rational::from(c / &lc).abs();
        if r > m {
            m = r;
        }
    }
    m += 1;
    let mut b = Rational::from(1);
    while b <= m {
        b *= 2u32;
    }
    b
}

/// Isolate the real roots of a square-free polynomial; intervals are ordered
/// left to right and their endpoints are never roots.
fn isolate_square_free(f: &RationalPolynomial) -> Result<Vec<(Rational, Rational)>> {
    let chain = SturmChain::new(f)?;
    if f.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let b = root_bound(f);
    let lo = Rational::from(-&b);
    let n = chain.count_in(&lo, &b);
    let mut stack = vec![(lo, b, n)];
    let mut out = Vec::new();
    let splits: Vec<Rational> = [(1, 2), (1, 3), (2, 3), (1, 4), (3, 4), (2, 5), (3, 5)]
        .iter()
        .map(|&(a, b)| Rational::from((a, b)))
        .collect();
    while let Some((lo, hi, n)) = stack.pop() {
        match n {
            0 => continue,
            1 => {
                out.push((lo, hi));
                continue;
            }
            _ => {}
        }
        let width = Rational::from(&hi - &lo);
        let mid = splits
            .iter()
            .map(|t| Rational::from(&lo + Rational::from(&width * t)))
            .find(|m| f.sign_at(m) != 0)
            .expect("a square-free polynomial cannot vanish at all split candidates");
        let left = chain.count_in(&lo, &mid);
        // right half first so the left half is popped first
        stack.push((mid.clone(), hi, n - left));
        stack.push((lo, mid, left));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// Isolate every real root of `p`, with multiplicities from the square-free
/// decomposition. Output is sorted left to right and pairwise disjoint.
pub fn sturm_isolate(p: &RationalPolynomial) -> Result<Vec<IsolatedRoot>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let factors = p.square_free_decomposition();
    let sqf = p.square_free_part();
    let intervals = isolate_square_free(&sqf)?;
    let mut out = Vec::with_capacity(intervals.len());
    for (lo, hi) in intervals {
        let (factor, multiplicity) = factors
            .iter()
            .find(|(f, _)| SturmChain::new(f).map(|c| c.count_in(&lo, &hi)) == Ok(1))
            .cloned()
            .expect("every root of the square-free part belongs to one Yun factor");
        let mut root = IsolatedRoot {
            poly: p.clone(),
            factor,
            lo,
            hi,
            multiplicity,
        };
        if root.factor.degree() == Some(1) {
            let c = root.factor.coeffs();
            let x = Rational::from(-&c[0]) / &c[1];
            root.lo = x.clone();
            root.hi = x;
        }
        out.push(root);
    }
    Ok(out)
}

/// Total real roots of `p` counted with multiplicity.
pub fn real_root_count_with_multiplicity(p: &RationalPolynomial) -> Result<usize> {
    Ok(sturm_isolate(p)?.iter().map(|r| r.multiplicity).sum())
}

/// Bisections allowed per root when separating two root sets.
pub const SEPARATION_BISECTIONS: usize = 4096;

/// True when `outer` has `n` simple real roots and `inner` has `n - 1` simple
/// real roots, exactly one strictly between each consecutive pair of `outer`.
pub fn strictly_interlace(inner: &RationalPolynomial, outer: &RationalPolynomial) -> Result<bool> {
    let outer_roots = sturm_isolate(outer)?;
    let inner_roots = sturm_isolate(inner)?;
    let n = outer_roots.len();
    if outer_roots.iter().chain(&inner_roots).any(|r| r.multiplicity != 1)
        || inner_roots.len() + 1 != n.max(1)
    {
        return Ok(false);
    }
    let chain = SturmChain::new(inner)?;
    let mut narrowed = Vec::with_capacity(n);
    for mut r in outer_roots {
        let mut steps = 0;
        loop {
            let clear = if r.is_exact() {
                inner.sign_at(&r.lo) != 0
            } else {
                inner.sign_at(&r.lo) != 0 && chain.count_in(&r.lo, &r.hi) == 0
            };
            if clear {
                break;
            }
            if r.is_exact() || steps == SEPARATION_BISECTIONS {
                return Ok(false);
            }
            r.bisect();
            steps += 1;
        }
        narrowed.push(r);
    }
    Ok(narrowed
        .windows(2)
        .all(|w| chain.count_in(&w[0].hi, &w[1].lo) == 1))
}

/// Dyadic rational `2^-bits`.
pub fn dyadic_tolerance(bits: u32) -> Rational {
    Rational::from((Integer::from(1), Integer::from(1) << bits))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> RationalPolynomial {
        RationalPolynomial::from_integers(c.iter().copied())
    }

    #[test]
    fn no_real_roots() {
        assert!(sturm_isolate(&p(&[1, 0, 1])).unwrap().is_empty());
        assert!(sturm_isolate(&p(&[7])).unwrap().is_empty());
    }

    #[test]
    fn zero_polynomial_rejected() {
        let err = sturm_isolate(&RationalPolynomial::zero()).unwrap_err();
        assert_eq!(err.to_string(), "zero polynomial has no root set");
    }

    #[test]
    fn linear_root_is_exact() {
        let roots = sturm_isolate(&p(&[1, 4])).unwrap();
        assert_eq!(roots.len(), 1);
        assert!(roots[0].is_exact());
        assert_eq!(roots[0].lo, Rational::from((-1, 4)));
    }

    #[test]
    fn p7_roots_round_to_table() {
        let roots = sturm_isolate(&p(&[1, 44, 16])).unwrap();
        assert_eq!(roots.len(), 2);
        let tol = Rational::from((1, 1_000_000));
        let v: Vec<f64> = roots.iter().map(|r| r.refine(&tol).unwrap().to_f64()).collect();
        assert_eq!(format!("{:.4}", v[0]), "-2.7271");
        assert_eq!(format!("{:.4}", v[1]), "-0.0229");
    }

    #[test]
    fn refine_rejects_bad_tolerance() {
        let roots = sturm_isolate(&p(&[1, 4])).unwrap();
        assert_eq!(roots[0].refine(&Rational::new()), Err(Error::NonPositiveTolerance));
        assert_eq!(roots[0].refine(&Rational::from(-1)), Err(Error::NonPositiveTolerance));
    }

    #[test]
    fn refine_within_tolerance_of_exact_root() {
        let roots = sturm_isolate(&p(&[1, 4])).unwrap();
        let x = roots[0].refine(&Rational::from((1, 1_000_000))).unwrap();
        assert_eq!(x, Rational::from((-1, 4)));
    }

    #[test]
    fn multiple_roots_are_counted() {
        // (x-1)^2 (x+3)
        let f = &(&p(&[-1, 1]) * &p(&[-1, 1])) * &p(&[3, 1]);
        let roots = sturm_isolate(&f).unwrap();
        assert_eq!(roots.len(), 2);
        assert_eq!(roots[0].multiplicity, 1);
        assert_eq!(roots[1].multiplicity, 2);
        assert_eq!(real_root_count_with_multiplicity(&f).unwrap(), 3);
    }

    #[test]
    fn sturm_count_matches_isolation() {
        let f = p(&[-6, 11, -6, 1]); // (x-1)(x-2)(x-3)
        let chain = SturmChain::new(&f).unwrap();
        assert_eq!(chain.count_real(), 3);
        assert_eq!(chain.count_in(&Rational::from(1), &Rational::from(3)), 2);
        let roots = sturm_isolate(&f).unwrap();
        for w in roots.windows(2) {
            assert!(w[0].is_left_of(&w[1]) || w[0].hi <= w[1].lo);
        }
    }

    #[test]
    fn interlacing_of_cubic_and_quadratic() {
        let outer = p(&[-6, 11, -6, 1]); // roots 1, 2, 3
        assert!(strictly_interlace(&p(&[15, -16, 4]), &outer).unwrap());
        // shares the root 3
        assert!(!strictly_interlace(&p(&[15, -8, 1]), &outer).unwrap());
        // 1/2 lies outside
        assert!(!strictly_interlace(&p(&[5, -12, 4]), &outer).unwrap());
    }

    #[test]
    fn close_roots_are_separated() {
        // (1000x - 1)(1001x - 1)(x^2 - 2)
        let f = &(&p(&[-1, 1000]) * &p(&[-1, 1001])) * &p(&[-2, 0, 1]);
        let roots = sturm_isolate(&f).unwrap();
        assert_eq!(roots.len(), 4);
        let s2 = roots[3].refine(&dyadic_tolerance(40)).unwrap().to_f64();
        assert!((s2 - 2f64.sqrt()).abs() < 1e-11);
    }
}
