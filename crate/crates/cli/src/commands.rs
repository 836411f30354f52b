use std::f64::consts::PI;
use std::fmt::Write as _;

use gamma2_core::arc::{interlace_check, scan_arc, InterlaceInterval, LatticeSumSpec, PreparedLattice};
use gamma2_core::cn::cn_polynomials;
use gamma2_core::exact::{rational_string, sturm_isolate, FracQSeries, GRID};
use gamma2_core::identities::{
    verify_c_consistency, verify_cor_32, verify_cor_even_sum, verify_thm_even, verify_thm_zeros,
    IdentityReport,
};
use gamma2_core::lambda_poly::p_poly_oracle;
use gamma2_core::qforms::{eisenstein_even, eisenstein_odd, g_normalized, theta_bundle};
use gamma2_core::{Error, Sign};
use rug::Rational;
use serde_json::{json, Value as Json};

use crate::render::{
    coeffs, csv_field, decimal, identity_value, identity_value_text, mode, mode_text, rat, Output,
};
use crate::{RunConfig, Which};

type Result<T> = std::result::Result<T, Error>;

pub fn polys(cfg: &RunConfig, k_max: usize) -> Result<Output> {
    let table = cn_polynomials(k_max);
    let mut rows = Vec::new();
    let mut csv = String::from("k,weight,recursion,oracle,equal\n");
    let mut text = String::new();
    let mut ok = true;
    for k in 0..=k_max {
        let p = table.p(k);
        // p_1 = 1 by definition; the oracle starts at weight 3
        let oracle = if k == 0 { Ok(p.clone()) } else { p_poly_oracle(k, cfg.trunc) };
        let (oracle_json, oracle_text, equal) = match &oracle {
            Ok(q) => (json!(coeffs(q)), coeffs(q).join(" "), q == p),
            Err(e) => (json!({ "error": e.to_string() }), format!("error: {e}"), false),
        };
        ok &= equal;
        rows.push(json!({
            "k": k,
            "weight": 2 * k + 1,
            "recursion": coeffs(p),
            "oracle": oracle_json,
            "equal": equal,
        }));
        let _ = writeln!(
            csv,
            "{k},{},{},{},{equal}",
            2 * k + 1,
            csv_field(&coeffs(p).join(" ")),
            csv_field(&oracle_text)
        );
        let _ = writeln!(
            text,
            "p_{}(λ) = {}{}",
            2 * k + 1,
            p.display_with("λ"),
            if equal { "" } else { "   [oracle mismatch]" }
        );
    }
    Ok(Output {
        json: json!({ "trunc": cfg.trunc, "rows": rows, "all_equal": ok }),
        csv,
        text,
        summary: None,
        ok,
    })
}

pub fn roots(_cfg: &RunConfig, k: usize, tol: f64) -> Result<Output> {
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(Error::NonPositiveTolerance);
    }
    let tol_r = Rational::from_f64(tol).ok_or(Error::NonPositiveTolerance)?;
    let decimals = (-tol.log10()).ceil().max(0.0) as usize;
    let p = cn_polynomials(k).p(k).clone();
    let mut rows = Vec::new();
    let mut csv = String::from("index,value,lo,hi,multiplicity\n");
    let mut text = format!("p_{}(λ) = {}\n", 2 * k + 1, p.display_with("λ"));
    for (i, r) in sturm_isolate(&p)?.iter().enumerate() {
        let mut iso = r.clone();
        iso.narrow_to(&Rational::from(&tol_r / 1024u32));
        let x = iso.midpoint();
        let v = decimal(&x, decimals);
        rows.push(json!({
            "value": v,
            "lo": rat(&iso.lo),
            "hi": rat(&iso.hi),
            "multiplicity": r.multiplicity,
        }));
        let _ = writeln!(
            csv,
            "{i},{v},{},{},{}",
            rational_string(&iso.lo),
            rational_string(&iso.hi),
            r.multiplicity
        );
        let _ = writeln!(text, "  {v}");
    }
    Ok(Output {
        json: json!({ "k": k, "weight": 2 * k + 1, "tolerance": tol, "roots": rows }),
        csv,
        text,
        summary: None,
        ok: true,
    })
}

/// Eight grid points per zero spacing `2π/(2k+1)`.
fn default_grid(k: usize, lo: f64, hi: f64) -> usize {
    let spacing = 2.0 * PI / (2 * k + 1) as f64;
    (((hi - lo) / spacing) * 8.0).ceil() as usize + 1
}

pub fn scan(
    cfg: &RunConfig,
    k: usize,
    theta_lo: Option<f64>,
    theta_hi: Option<f64>,
    grid: Option<usize>,
) -> Result<Output> {
    let lo = theta_lo.unwrap_or(0.05 * PI);
    let hi = theta_hi.unwrap_or(0.95 * PI);
    let grid = grid.unwrap_or_else(|| default_grid(k, lo, hi).max(2));
    let lattice = PreparedLattice::new(LatticeSumSpec::new(k, cfg.n_max, cfg.precision_bits)?)?;
    let res = scan_arc(&lattice, lo, hi, grid)?;
    let zeros = res.intervals.len();
    let fraction = (k >= 2).then(|| Rational::from((zeros as u64, (k - 1) as u64)));
    let mut csv = String::from("theta_rad,imF,sign,certified,tail_bound\n");
    let mut points = Vec::new();
    for p in &res.points {
        let _ = writeln!(
            csv,
            "{:.17e},{:.17e},{},{},{:e}",
            p.theta, p.im_f, p.sign, p.certified, p.tail_bound
        );
        points.push(json!({
            "theta": p.theta,
            "im_f": p.im_f,
            "sign": p.sign,
            "certified": p.certified,
            "tail_bound": json_f64(p.tail_bound),
            "margin": json_f64(p.margin),
        }));
    }
    let intervals: Vec<Json> = res
        .intervals
        .iter()
        .map(|s| json!({ "lo": s.lo, "hi": s.hi, "sign_lo": s.sign_lo, "sign_hi": s.sign_hi }))
        .collect();
    let fraction_s = fraction.as_ref().map(rational_string);
    let summary = format!(
        "weight {}: {zeros} certified sign changes{}, {} uncertified points{}",
        2 * k + 1,
        fraction_s
            .as_ref()
            .map(|f| format!(" (fraction {f} of k-1 = {})", k - 1))
            .unwrap_or_default(),
        res.uncertified.len(),
        if res.uncertified.is_empty() {
            String::new()
        } else {
            format!(" at {:?}", res.uncertified)
        }
    );
    let mut text = String::new();
    for p in &res.points {
        let _ = writeln!(
            text,
            "{:>10.6}  {:>+.6e}  {}{}",
            p.theta,
            p.im_f,
            if p.sign > 0 { '+' } else if p.sign < 0 { '-' } else { '0' },
            if p.certified { "" } else { "  uncertified" }
        );
    }
    let _ = writeln!(text, "{summary}");
    Ok(Output {
        json: json!({
            "k": k,
            "weight": 2 * k + 1,
            "n_max": cfg.n_max,
            "precision_bits": cfg.precision_bits,
            "theta_lo": lo,
            "theta_hi": hi,
            "grid": grid,
            "points": points,
            "intervals": intervals,
            "uncertified": res.uncertified,
            "zeros_found": zeros,
            "fraction": fraction_s,
        }),
        csv,
        text,
        ok: res.uncertified.is_empty(),
        summary: Some(summary),
    })
}

fn json_f64(x: f64) -> Json {
    if x.is_finite() {
        json!(x)
    } else {
        json!("inf")
    }
}

fn interval_json(i: &InterlaceInterval) -> Json {
    json!({
        "weight": i.weight,
        "j": i.j,
        "lo_pi": rat(&i.lo_pi),
        "hi_pi": rat(&i.hi_pi),
        "lo": i.lo,
        "hi": i.hi,
        "clipped": i.clipped,
        "signs": [i.signs.0, i.signs.1],
        "certified": i.certified,
        "pattern_ok": i.pattern_ok,
    })
}

pub fn interlace(cfg: &RunConfig, k: usize) -> Result<Output> {
    let r = interlace_check(k, cfg.n_max, cfg.precision_bits)?;
    let mut csv = String::from("weight,j,lo_pi,hi_pi,lo,hi,clipped,sign_lo,sign_hi,certified,pattern_ok\n");
    let mut text = String::new();
    for i in r.intervals_2k_minus_1.iter().chain(&r.intervals_2k_plus_1) {
        let _ = writeln!(
            csv,
            "{},{},{},{},{:.17e},{:.17e},{},{},{},{},{}",
            i.weight,
            i.j,
            rational_string(&i.lo_pi),
            rational_string(&i.hi_pi),
            i.lo,
            i.hi,
            i.clipped,
            i.signs.0,
            i.signs.1,
            i.certified,
            i.pattern_ok
        );
        let _ = writeln!(
            text,
            "weight {:>3} j={:>2}  [{}π, {}π]{}  signs ({:+}, {:+}){}",
            i.weight,
            i.j,
            rational_string(&i.lo_pi),
            rational_string(&i.hi_pi),
            if i.clipped { " clipped" } else { "" },
            i.signs.0,
            i.signs.1,
            if i.certified && i.pattern_ok { "" } else { "  FAILED" }
        );
    }
    let _ = writeln!(
        text,
        "disjoint {}  separated {}  certified {}  pattern {}",
        r.disjoint, r.separated, r.all_certified, r.pattern_ok
    );
    Ok(Output {
        json: json!({
            "k": r.k,
            "half_width_pi": rat(&r.half_width_pi),
            "alphas": r.alphas,
            "intervals_2k_minus_1": r.intervals_2k_minus_1.iter().map(interval_json).collect::<Vec<_>>(),
            "intervals_2k_plus_1": r.intervals_2k_plus_1.iter().map(interval_json).collect::<Vec<_>>(),
            "disjoint": r.disjoint,
            "separated": r.separated,
            "all_certified": r.all_certified,
            "pattern_ok": r.pattern_ok,
        }),
        csv,
        text,
        summary: None,
        ok: r.passed(),
    })
}

fn report_json(r: &IdentityReport) -> Json {
    let details: serde_json::Map<String, Json> = r
        .details
        .iter()
        .map(|(k, v)| (k.clone(), Json::String(v.clone())))
        .collect();
    json!({
        "identity": r.identity.name(),
        "k": r.k,
        "lhs": identity_value(&r.lhs),
        "rhs": identity_value(&r.rhs),
        "pass": r.pass,
        "mode": mode(&r.mode),
        "details": details,
    })
}

pub fn identities(cfg: &RunConfig, k_max: usize) -> Result<Output> {
    let tol = 2f64.powf(-(cfg.precision_bits as f64) / 2.0);
    let mut rows = Vec::new();
    let mut csv = String::from("identity,k,lhs,rhs,pass,mode\n");
    let mut text = String::new();
    let mut ok = true;
    for k in 0..=k_max {
        let mut reports: Vec<std::result::Result<IdentityReport, (String, Error)>> = Vec::new();
        reports.push(verify_thm_zeros(k, cfg.trunc).map_err(|e| ("thm_zeros".into(), e)));
        if k >= 1 {
            reports.push(
                verify_cor_32(k, cfg.trunc, cfg.precision_bits, tol).map_err(|e| ("cor_32".into(), e)),
            );
            reports.push(
                verify_thm_even(k, Sign::Plus, cfg.trunc).map_err(|e| ("thm_even_plus".into(), e)),
            );
            reports.push(
                verify_thm_even(k, Sign::Minus, cfg.trunc).map_err(|e| ("thm_even_minus".into(), e)),
            );
            reports.push(verify_cor_even_sum(k, cfg.trunc).map_err(|e| ("cor_even_sum".into(), e)));
        }
        reports.push(
            verify_c_consistency(k, cfg.precision_bits, None).map_err(|e| ("c_consistency".into(), e)),
        );
        for r in reports {
            match r {
                Ok(r) => {
                    ok &= r.pass;
                    let (l, rr) = (identity_value_text(&r.lhs), identity_value_text(&r.rhs));
                    let _ = writeln!(
                        csv,
                        "{},{k},{},{},{},{}",
                        r.identity.name(),
                        csv_field(&l),
                        csv_field(&rr),
                        r.pass,
                        mode_text(&r.mode)
                    );
                    let _ = writeln!(
                        text,
                        "{:<15} k={k:<3} {}  lhs {l}  rhs {rr}",
                        r.identity.name(),
                        if r.pass { "pass" } else { "FAIL" }
                    );
                    rows.push(report_json(&r));
                }
                Err((name, e)) => {
                    ok = false;
                    let _ = writeln!(csv, "{name},{k},,,false,{}", csv_field(&format!("error: {e}")));
                    let _ = writeln!(text, "{name:<15} k={k:<3} ERROR {e}");
                    rows.push(json!({ "identity": name, "k": k, "pass": false, "error": e.to_string() }));
                }
            }
        }
    }
    Ok(Output {
        json: json!({
            "trunc": cfg.trunc,
            "precision_bits": cfg.precision_bits,
            "reports": rows,
            "all_pass": ok,
        }),
        csv,
        text,
        summary: None,
        ok,
    })
}

fn which_name(w: Which) -> &'static str {
    match w {
        Which::Theta2 => "theta2",
        Which::Theta3 => "theta3",
        Which::Theta4 => "theta4",
        Which::Lambda => "lambda",
        Which::Odd => "odd",
        Which::G => "g",
        Which::EvenPlus => "even-plus",
        Which::EvenMinus => "even-minus",
    }
}

pub fn series(cfg: &RunConfig, which: Which, k: usize) -> Result<Output> {
    let t = cfg.trunc;
    let mut unit_power = 0i64;
    let s: FracQSeries = match which {
        Which::Theta2 => theta_bundle(t)?.theta2,
        Which::Theta3 => theta_bundle(t)?.theta3,
        Which::Theta4 => theta_bundle(t)?.theta4,
        Which::Lambda => theta_bundle(t)?.lambda()?.series,
        Which::Odd => eisenstein_odd(k, t)?.series().clone(),
        Which::G => {
            let g = g_normalized(k, t)?;
            unit_power = g.data.unit_power() as i64;
            g.data.unscaled()
        }
        Which::EvenPlus => eisenstein_even(k, Sign::Plus, t)?.series().clone(),
        Which::EvenMinus => eisenstein_even(k, Sign::Minus, t)?.series().clone(),
    };
    let mut csv = String::from("exponent_over_8,coefficient\n");
    let mut text = format!(
        "{} k={k} trunc={t} (exponents n mean q^(n/{GRID}){})\n",
        which_name(which),
        if unit_power != 0 { format!(", times i^{unit_power}") } else { String::new() }
    );
    let mut terms = Vec::new();
    for (n, c) in s.terms() {
        let cs = rational_string(&c);
        let _ = writeln!(csv, "{n},{cs}");
        let _ = writeln!(text, "{n:>6}  {cs}");
        terms.push(json!([n, cs]));
    }
    Ok(Output {
        json: json!({
            "which": which_name(which),
            "k": k,
            "trunc": t,
            "grid": GRID,
            "unit_power": unit_power,
            "terms": terms,
        }),
        csv,
        text,
        summary: None,
        ok: true,
    })
}
