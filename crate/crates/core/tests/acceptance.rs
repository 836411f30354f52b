use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rug::ops::Pow;
use rug::{Float, Rational};

use gamma2_core::arc::{budget, error_budget, interlace_check, rsd_fraction, transport_check};
use gamma2_core::cn::cn_polynomials;
use gamma2_core::exact::roots::{dyadic_tolerance, SturmChain};
use gamma2_core::exact::{strictly_interlace, sturm_isolate};
use gamma2_core::identities::{
    beta_l, verify_c_consistency, verify_cor_even_sum, verify_thm_even, verify_thm_zeros,
};
use gamma2_core::lambda_poly::p_poly_oracle;
use gamma2_core::numeric::pi;
use gamma2_core::{RationalPolynomial, Sign};

type Outcome = (bool, String);

fn poly(c: &[i64]) -> RationalPolynomial {
    RationalPolynomial::from_integers(c.iter().copied())
}

fn polynomial_table() -> Outcome {
    let t = cn_polynomials(5);
    let printed = [
        (0, poly(&[1])),
        (1, poly(&[1])),
        (2, poly(&[1, 4])),
        (3, poly(&[1, 44, 16])),
        (4, poly(&[1, 408, 912, 64])),
        // the printed λ² coefficient 30764 is a misprint: p₁₁(1) must equal e₁₀ = 50521
        (5, poly(&[1, 3688, 30768, 15808, 256])),
    ];
    let bad: Vec<usize> = printed
        .iter()
        .filter(|(k, p)| t.p(*k) != p || !t.p(*k).is_integral())
        .map(|(k, _)| 2 * k + 1)
        .collect();
    (bad.is_empty(), format!("mismatched weights {bad:?}"))
}

fn oracle_equivalence() -> Outcome {
    let t = cn_polynomials(20);
    let mut bad = Vec::new();
    for k in 1..=20 {
        match p_poly_oracle(k, 512) {
            Ok(p) if &p == t.p(k) => {}
            Ok(_) => bad.push(format!("k={k} differs")),
            Err(e) => bad.push(format!("k={k}: {e}")),
        }
    }
    (bad.is_empty(), format!("failures {bad:?}"))
}

fn half_unit(printed: &str) -> f64 {
    let decimals = printed.split('.').nth(1).map_or(0, str::len);
    0.5 * 10f64.powi(-(decimals as i32))
}

fn zero_table() -> Outcome {
    let table: [(usize, &[&str]); 4] = [
        (2, &["-0.25"]),
        (3, &["-2.7271", "-0.0229"]),
        (4, &["-13.788", "-0.4598", "-0.0025"]),
        (5, &["-59.7425", "-1.8792", "-0.1280", "-0.00027"]),
    ];
    let t = cn_polynomials(5);
    let tol = dyadic_tolerance(80);
    let mut worst = 0.0f64;
    let mut misses = Vec::new();
    for (k, values) in table {
        let roots = sturm_isolate(t.p(k)).expect("nonzero");
        if roots.len() != values.len() {
            return (false, format!("k={k}: {} roots", roots.len()));
        }
        for (r, s) in roots.iter().zip(values) {
            let x = r.refine(&tol).expect("positive tolerance").to_f64();
            let want: f64 = s.parse().expect("literal");
            let ratio = (x - want).abs() / half_unit(s);
            worst = worst.max(ratio);
            if ratio > 1.0 {
                misses.push(format!("k={k}: {x:.6} vs {s}"));
            }
        }
    }
    if misses.is_empty() {
        (true, format!("worst error {worst:.3} half-units"))
    } else {
        (false, format!("outside half a unit: {}", misses.join(", ")))
    }
}

fn reality() -> Outcome {
    let t = cn_polynomials(30);
    for k in 1..=30 {
        let p = t.p(k);
        let roots = sturm_isolate(p).expect("nonzero");
        let chain = SturmChain::new(p).expect("nonzero");
        let simple = roots.iter().all(|r| r.multiplicity == 1);
        let zero = Rational::new();
        let negative = p.sign_at(&zero) != 0
            && chain.variations_at_neg_inf() - chain.variations_at(&zero) == k - 1;
        let counted = chain.count_real() == k - 1 && roots.len() == k - 1;
        if !(simple && negative && counted) {
            return (false, format!("k={k}: simple {simple}, negative {negative}, count {counted}"));
        }
    }
    (true, "k-1 simple negative roots for k=1..30".into())
}

fn lambda_interlacing() -> Outcome {
    let t = cn_polynomials(30);
    for k in 2..=30 {
        match strictly_interlace(t.p(k - 1), t.p(k)) {
            Ok(true) => {}
            other => return (false, format!("k={k}: {other:?}")),
        }
    }
    (true, "p_{2k-1} interlaces p_{2k+1} for k=2..30".into())
}

fn trunc_for(k: usize) -> i64 {
    (8 * k as i64 + 32).max(64)
}

fn thm_zeros() -> Outcome {
    for k in 0..=25 {
        match verify_thm_zeros(k, trunc_for(k)) {
            Ok(r) if r.pass => {}
            other => return (false, format!("k={k}: {other:?}")),
        }
    }
    (true, "exact for k=0..25".into())
}

fn thm_even() -> Outcome {
    for k in 1..=25 {
        for sign in [Sign::Plus, Sign::Minus] {
            match verify_thm_even(k, sign, trunc_for(k)) {
                Ok(r) if r.pass => {}
                other => return (false, format!("k={k} {sign:?}: {other:?}")),
            }
        }
        match verify_cor_even_sum(k, trunc_for(k)) {
            Ok(r) if r.pass => {}
            other => return (false, format!("k={k} sum: {other:?}")),
        }
    }
    (true, "both signs and the sum exact for k=1..25".into())
}

fn rsd() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for w in [53usize, 75, 101] {
        let k = (w - 1) / 2;
        match rsd_fraction(k, 10_000, 128) {
            Ok(r) => {
                let pass = r.fraction >= Rational::from((9, 10))
                    && r.scan.intervals.len() == r.count;
                ok &= pass;
                parts.push(format!("{w}: {}/{}", r.count, r.total));
            }
            Err(e) => {
                ok = false;
                parts.push(format!("{w}: {e}"));
            }
        }
    }
    (ok, parts.join(", "))
}

fn interlace() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for k in [16usize, 20, 25] {
        match interlace_check(k, 10_000, 128) {
            Ok(r) => {
                ok &= r.passed();
                parts.push(format!(
                    "k={k}: disjoint {} separated {} certified {} pattern {}",
                    r.disjoint, r.separated, r.all_certified, r.pattern_ok
                ));
            }
            Err(e) => {
                ok = false;
                parts.push(format!("k={k}: {e}"));
            }
        }
    }
    (ok, parts.join("; "))
}

fn error_budget_check() -> Outcome {
    let b = error_budget(26);
    let sum = b.E1 + b.E2 + b.E3;
    let h_ok = (15..=100).all(|k| budget::h(k) > 0.0);
    let ok = b.E1 < 1e-24 && b.E3 < 1e-10 && sum < 0.657 && h_ok;
    (ok, format!("E1 {:.3e}, E3 {:.3e}, E1+E2+E3 {sum:.5}, h>0 on 15..100 {h_ok}", b.E1, b.E3))
}

fn l_values() -> Outcome {
    for k in 1..=10 {
        match verify_c_consistency(k, 128, Some(1e-25)) {
            Ok(r) if r.pass => {}
            other => return (false, format!("k={k}: {other:?}")),
        }
    }
    let p = pi(192);
    let b1 = Float::with_val(192, (&p).pow(3u32)) / 32u32;
    let b2 = Float::with_val(192, (&p).pow(5u32)) * 5u32 / 1536u32;
    let d1 = Float::with_val(128, &beta_l(1, 128).expect("k=1").value - &b1).abs();
    let d2 = Float::with_val(128, &beta_l(2, 128).expect("k=2").value - &b2).abs();
    let ok = d1 < 1e-25 && d2 < 1e-25;
    (ok, format!("k=1..10 consistent; |β(1) - π³/32| {:.1e}, |β(2) - 5π⁵/1536| {:.1e}", d1.to_f64(), d2.to_f64()))
}

fn transport() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for k in [3usize, 4, 5] {
        match transport_check(k, 20_000, 128, 64) {
            Ok((scan, matches)) => {
                let worst = matches.iter().map(|m| m.distance).fold(0.0, f64::max);
                ok &= worst < 1e-6 && !matches.is_empty();
                parts.push(format!(
                    "k={k}: {} zeros, {} uncertified points, worst {worst:.1e}",
                    matches.len(),
                    scan.uncertified.len()
                ));
            }
            Err(e) => {
                ok = false;
                parts.push(format!("k={k}: {e}"));
            }
        }
    }
    (ok, parts.join("; "))
}

fn main() -> ExitCode {
    let criteria: [(&str, Duration, fn() -> Outcome); 12] = [
        ("polynomial table", Duration::from_secs(1), polynomial_table),
        ("oracle equivalence", Duration::from_secs(60), oracle_equivalence),
        ("zero table", Duration::from_secs(1), zero_table),
        ("reality and negativity", Duration::from_secs(60), reality),
        ("lambda interlacing", Duration::from_secs(120), lambda_interlacing),
        ("zero-sum identity", Duration::from_secs(120), thm_zeros),
        ("even-weight identities", Duration::from_secs(120), thm_even),
        ("arc zero fraction", Duration::from_secs(600), rsd),
        ("arc interlacing", Duration::from_secs(600), interlace),
        ("error budget", Duration::from_secs(1), error_budget_check),
        ("L-value consistency", Duration::from_secs(10), l_values),
        ("transport integration", Duration::from_secs(60), transport),
    ];
    let only: Vec<usize> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let mut failed = 0;
    for (i, (name, limit, f)) in criteria.iter().enumerate() {
        let n = i + 1;
        if !only.is_empty() && !only.contains(&n) {
            continue;
        }
        let start = Instant::now();
        let (ok, detail) = catch_unwind(AssertUnwindSafe(f))
            .unwrap_or_else(|_| (false, "panicked".to_string()));
        let elapsed = start.elapsed();
        let in_time = elapsed < *limit;
        let pass = ok && in_time;
        if !pass {
            failed += 1;
        }
        println!(
            "criterion {n:>2} {} {name}: {detail} ({:.2}s, limit {}s{})",
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            limit.as_secs(),
            if in_time { "" } else { ", over time" }
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
