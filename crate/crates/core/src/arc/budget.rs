//! Closed-form error constants for the arc argument.

use std::f64::consts::PI;

/// `2 / ((a-b)² + 4ab s²)^k + 2 / ((a-b)² + 2ab)^k`, the bound on `P(a, b)`
/// when `min(cos²(θ/2), sin²(θ/2)) ≥ s²`.
pub fn pair_bound(a: f64, b: f64, s: f64, k: usize) -> f64 {
    let d2 = (a - b) * (a - b);
    let k = k as i32;
    2.0 / (d2 + 4.0 * a * b * s * s).powi(k) + 2.0 / (d2 + 2.0 * a * b).powi(k)
}

/// The `|a - b| = 1` pairs with `a² + b² ≤ 100`.
pub const NEIGHBOUR_PAIRS: [(f64, f64); 6] =
    [(1.0, 2.0), (3.0, 2.0), (3.0, 4.0), (5.0, 4.0), (5.0, 6.0), (7.0, 6.0)];

/// Smallest weight index covered by the `(0.05π, 0.95π)` estimate (`2k+1 = 51`).
pub const E2_REFERENCE_K: usize = 25;

#[allow(non_snake_case)]
#[derive(Clone, Debug, PartialEq)]
pub struct ErrorBudget {
    pub k: usize,
    pub E1: f64,
    pub E2: f64,
    /// `E2` with the true minimum `sin(π/40)` in place of `0.079`.
    pub e2_exact_min: f64,
    pub E3: f64,
    pub e1: f64,
    pub e2: f64,
    /// `e2` with `1.58^k` in place of `1.585^k`.
    pub e2_alt: f64,
    pub e3: f64,
    pub e4: f64,
    pub g_k: f64,
    pub h_k: f64,
    pub gamma: f64,
    pub alpha: f64,
    pub c_cos: f64,
}

/// `g(k) = e1 + e2 + e3 + e4`; infinite for `k ≤ 1`.
pub fn g(k: usize) -> f64 {
    if k <= 1 {
        return f64::INFINITY;
    }
    let (e1, e2, _, e3, e4) = small_terms(k);
    e1 + e2 + e3 + e4
}

fn small_terms(k: usize) -> (f64, f64, f64, f64, f64) {
    let kf = k as f64;
    let e1 = 8.0 / 3f64.powf(2.0 * kf + 1.0);
    let common = 2.0 / 1.195f64.powf(kf) + 2.0 / 5f64.powf(kf) + 10.0 / 13f64.powf(kf);
    let e2 = common + 10.0 / 1.585f64.powf(kf);
    let e2_alt = common + 10.0 / 1.58f64.powf(kf);
    let e3 = 44.0 / 9f64.powf(kf);
    let e4 = 2283.0 / ((kf - 1.0) * 4.8f64.powf(kf));
    (e1, e2, e2_alt, e3, e4)
}

/// `h(k) = 2π/(2k+1) - 2π³/(6(2k+1)³) - g(k-1)`.
pub fn h(k: usize) -> f64 {
    let w = 2.0 * k as f64 + 1.0;
    2.0 * PI / w - 2.0 * PI.powi(3) / (6.0 * w.powi(3)) - g(k.saturating_sub(1))
}

pub fn error_budget(k: usize) -> ErrorBudget {
    let e_1: f64 = (1..=4).map(|n| 2.0 / ((2 * n + 1) as f64).powi(51)).sum();
    let e_2: f64 = NEIGHBOUR_PAIRS
        .iter()
        .map(|&(a, b)| pair_bound(a, b, 0.079, E2_REFERENCE_K))
        .sum();
    let s_min = (PI / 40.0).sin();
    let e_2_exact: f64 = NEIGHBOUR_PAIRS
        .iter()
        .map(|&(a, b)| pair_bound(a, b, s_min, E2_REFERENCE_K))
        .sum();
    let (e1, e2, e2_alt, e3, e4) = small_terms(k);
    ErrorBudget {
        k,
        E1: e_1,
        E2: e_2,
        e2_exact_min: e_2_exact,
        E3: 44.0 / 9f64.powf(k as f64),
        e1,
        e2,
        e2_alt,
        e3,
        e4,
        g_k: e1 + e2 + e3 + e4,
        h_k: h(k),
        gamma: 0.1562,
        alpha: 0.9877,
        c_cos: 0.952,
    }
}

impl ErrorBudget {
    /// `|cos θ| ≤ α` on `(0.05π, 0.95π)`.
    pub fn alpha_covers_range(&self) -> bool {
        (0.05 * PI).cos() <= self.alpha
    }

    /// `|cos θ| < C` on `[π/10, 9π/10]`.
    pub fn c_covers_range(&self) -> bool {
        (PI / 10.0).cos() < self.c_cos
    }

    /// `sin(θ/2), cos(θ/2) ≥ γ` on `[π/10, 9π/10]` and `1 + 8γ² > 1.195`.
    pub fn gamma_ok(&self) -> bool {
        (PI / 20.0).sin() >= self.gamma && 1.0 + 8.0 * self.gamma * self.gamma > 1.195
    }

    /// `min(cos²(θ/2), sin²(θ/2)) > 0.079²` on `(0.05π, 0.95π)`.
    pub fn min_half_angle_ok(&self) -> bool {
        (PI / 40.0).sin() > 0.079
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arc_constants() {
        let b = error_budget(26);
        assert!(b.E1 < 1e-24);
        assert!(b.E3 < 1e-10);
        assert!(b.E1 + b.E2 + b.E3 < 0.657);
        assert!((b.E2 - 0.656).abs() < 5e-4, "{}", b.E2);
    }

    #[test]
    fn h_turns_positive_at_fifteen() {
        assert!(h(14) < 0.0);
        assert!(h(15) > 0.0);
        assert!(h(16) > 0.0);
        for k in 15..=100 {
            assert!(h(k) > 0.0, "k = {k}");
        }
    }

    #[test]
    fn range_constants() {
        let b = error_budget(20);
        assert!(b.alpha_covers_range());
        assert!(b.c_covers_range());
        assert!(b.gamma_ok());
        // sin(π/40) = 0.07846 sits just below 0.079
        assert!(!b.min_half_angle_ok());
        assert!(b.e2_exact_min > b.E2);
    }

    #[test]
    fn alternative_base_is_larger() {
        let b = error_budget(30);
        assert!(b.e2_alt > b.e2);
    }
}
