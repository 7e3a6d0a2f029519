//! Exact polynomial commands: inputs are parsed as rationals and every
//! result is computed without rounding.

use finfree_core::families::{hermite_coefficients, laguerre_coefficients};
use finfree_core::transforms::{finite_free_convolve, finite_free_cumulants};
use finfree_core::{Polynomial, Rational, Scalar};
use serde_json::Value;

use crate::CliError;

/// Integers, decimals with an optional exponent, or `num/den`.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let s = text.trim();
    if s.contains('/') {
        let (n, d) = s.split_once('/')?;
        if d.trim().trim_start_matches('+').chars().all(|c| c == '0') {
            return None;
        }
        return format!("{}/{}", n.trim(), d.trim()).parse().ok();
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let unsigned = int_part.trim_start_matches(['-', '+']);
    if unsigned.is_empty() && frac_part.is_empty()
        || !unsigned
            .chars()
            .chain(frac_part.chars())
            .all(|c| c.is_ascii_digit())
    {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let scale = exp - frac_part.len() as i32;
    let zeros = "0".repeat(scale.unsigned_abs() as usize);
    let text = if scale >= 0 {
        format!("{digits}{zeros}")
    } else {
        format!("{digits}/1{zeros}")
    };
    text.parse().ok()
}

/// Parses a JSON-style list such as `[1,-2,1]`; entries may be quoted
/// fractions like `"1/3"`.
pub fn parse_list(flag: &str, text: &str) -> Result<Vec<Rational>, CliError> {
    let inner = text
        .trim()
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| {
            CliError::usage(format!(
                "{flag}: expected a list like [1,-2,1], got {text:?}"
            ))
        })?;
    if inner.trim().is_empty() {
        return Err(CliError::usage(format!("{flag}: the list is empty")));
    }
    inner
        .split(',')
        .map(|item| {
            let item = item.trim().trim_matches('"');
            parse_rational(item)
                .ok_or_else(|| CliError::usage(format!("{flag}: {item:?} is not a number")))
        })
        .collect()
}

/// Monic coefficient list, leading 1 first.
pub fn polynomial(flag: &str, coeffs: &[Rational]) -> Result<Polynomial<Rational>, CliError> {
    if coeffs.len() < 2 {
        return Err(CliError::usage(format!(
            "{flag}: need degree >= 1, i.e. at least two coefficients"
        )));
    }
    Polynomial::from_coefficients(coeffs).map_err(|e| CliError::usage(format!("{flag}: {e}")))
}

pub fn hermite(degree: usize) -> Result<Vec<Rational>, CliError> {
    if degree == 0 {
        return Err(CliError::usage("--degree: must be >= 1"));
    }
    Ok(hermite_coefficients(degree))
}

/// `n! (-1)^n L_n^(alpha)`, monic.
pub fn laguerre(degree: usize, alpha: &Rational) -> Result<Vec<Rational>, CliError> {
    if degree == 0 {
        return Err(CliError::usage("--degree: must be >= 1"));
    }
    Ok(laguerre_coefficients(degree, alpha))
}

pub fn convolve(p: &[Rational], q: &[Rational]) -> Result<Vec<Rational>, CliError> {
    if p.len() != q.len() {
        return Err(CliError::usage(format!(
            "--q: degrees differ ({} vs {}); both polynomials need the same degree",
            p.len().saturating_sub(1),
            q.len().saturating_sub(1)
        )));
    }
    let r = finite_free_convolve(&polynomial("--p", p)?, &polynomial("--q", q)?)?;
    Ok(r.coefficients()?)
}

/// `kappa_1..kappa_order`, `order` defaulting to the degree.
pub fn cumulants(p: &[Rational], order: Option<usize>) -> Result<Vec<Rational>, CliError> {
    let poly = polynomial("--p", p)?;
    let order = order.unwrap_or(poly.degree());
    if order == 0 || order > poly.degree() {
        return Err(CliError::usage(format!(
            "--order: must be in 1..={}",
            poly.degree()
        )));
    }
    Ok(finite_free_cumulants(&poly, order)?.values)
}

/// The monic degree-`k` normalized derivative.
pub fn derive(p: &[Rational], k: usize) -> Result<Vec<Rational>, CliError> {
    let poly = polynomial("--p", p)?;
    if k == 0 || k > poly.degree() {
        return Err(CliError::usage(format!(
            "--k: must be in 1..={}",
            poly.degree()
        )));
    }
    Ok(poly.normalized_derivative(k)?.coefficients()?)
}

fn json_value(r: &Rational, exact: bool) -> Value {
    if r.is_integer() {
        if let Ok(v) = r.numer().to_string().parse::<i64>() {
            return Value::from(v);
        }
        return Value::String(r.numer().to_string());
    }
    if exact {
        Value::String(r.to_string())
    } else {
        serde_json::Number::from_f64(r.to_f64()).map_or(Value::Null, Value::Number)
    }
}

/// Compact JSON array: integers stay integers; other values are decimals,
/// or `"num/den"` strings with `exact`.
pub fn format_json(values: &[Rational], exact: bool) -> String {
    Value::Array(values.iter().map(|r| json_value(r, exact)).collect()).to_string()
}

/// One value per line.
pub fn format_text(values: &[Rational], exact: bool) -> String {
    values
        .iter()
        .map(|r| {
            if exact || r.is_integer() {
                r.to_string()
            } else {
                r.to_f64().to_string()
            }
        })
        .collect::<Vec<_>>()
        .join("\n")
}
