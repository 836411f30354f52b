use gamma2_core::exact::rational_string;
use gamma2_core::identities::{Mode, Value};
use gamma2_core::RationalPolynomial;
use rug::{Float, Integer, Rational};
use serde_json::{json, Value as Json};

/// One command result in all three formats.
pub struct Output {
    pub json: Json,
    pub csv: String,
    pub text: String,
    /// Printed to stderr alongside CSV.
    pub summary: Option<String>,
    pub ok: bool,
}

pub fn rat(r: &Rational) -> Json {
    Json::String(rational_string(r))
}

pub fn real(f: &Float) -> Json {
    json!({ "value": real_string(f), "precision_bits": f.prec() })
}

pub fn real_string(f: &Float) -> String {
    let digits = (f.prec() as f64 * std::f64::consts::LOG10_2).floor() as usize;
    f.to_string_radix(10, Some(digits.max(1)))
}

pub fn coeffs(p: &RationalPolynomial) -> Vec<String> {
    p.coeffs().iter().map(rational_string).collect()
}

/// `r` rounded to `decimals` places, written out exactly.
pub fn decimal(r: &Rational, decimals: usize) -> String {
    let scale = Integer::from(Integer::u_pow_u(10, decimals as u32));
    let scaled = Rational::from(r * &scale);
    let a = Rational::from(scaled.abs_ref());
    let mut n = Integer::from(a.numer() / a.denom());
    if Rational::from(&a - &n) >= Rational::from((1, 2)) {
        n += 1;
    }
    let mut digits = n.to_string();
    if digits.len() <= decimals {
        digits = format!("{}{digits}", "0".repeat(decimals + 1 - digits.len()));
    }
    let split = digits.len() - decimals;
    let sign = if r.cmp0() == std::cmp::Ordering::Less && n != 0 { "-" } else { "" };
    if decimals == 0 {
        format!("{sign}{digits}")
    } else {
        format!("{sign}{}.{}", &digits[..split], &digits[split..])
    }
}

pub fn identity_value(v: &Value) -> Json {
    match v {
        Value::Exact(r) => rat(r),
        Value::Real(f) => real(f),
    }
}

pub fn identity_value_text(v: &Value) -> String {
    match v {
        Value::Exact(r) => rational_string(r),
        Value::Real(f) => real_string(f),
    }
}

pub fn mode(m: &Mode) -> Json {
    match m {
        Mode::Exact => json!("exact"),
        Mode::Numeric { tolerance } => json!({ "numeric": tolerance }),
    }
}

pub fn mode_text(m: &Mode) -> String {
    match m {
        Mode::Exact => "exact".into(),
        Mode::Numeric { tolerance } => format!("numeric({tolerance:e})"),
    }
}

pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_rounding() {
        assert_eq!(decimal(&Rational::from((-1, 4)), 3), "-0.250");
        assert_eq!(decimal(&Rational::from((2, 3)), 2), "0.67");
        assert_eq!(decimal(&Rational::from((-1, 1000)), 2), "0.00");
        assert_eq!(decimal(&Rational::from(7), 0), "7");
        assert_eq!(decimal(&Rational::from((-1373, 100)), 1), "-13.7");
    }

    #[test]
    fn csv_quoting() {
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("plain"), "plain");
    }
}
