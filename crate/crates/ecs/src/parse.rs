//! Parsing of command-line values: numbers, curves, points, prime sets and
//! parameter ranges. Every error names the field it came from.

use ecs_core::arith::PrimeSet;
use ecs_core::curve::{CurvePoint, WeierstrassModel};
use ecs_core::twist::ShortCubic;
use ecs_core::{BigInt, BigRational};
use num_traits::Zero;
use serde_json::Value;

use crate::error::{CliError, Result};

pub fn parse_int(field: &str, s: &str) -> Result<BigInt> {
    s.trim()
        .parse::<BigInt>()
        .map_err(|_| CliError::usage(format!("{field}: invalid integer {s:?}")))
}

/// `"n"` or `"p/q"` with `q ≠ 0`.
pub fn parse_rational(field: &str, s: &str) -> Result<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(parse_int(field, s)?)),
        Some((n, d)) => {
            let n = parse_int(field, n)?;
            let d = parse_int(field, d)?;
            if d.is_zero() {
                return Err(CliError::usage(format!("{field}: zero denominator in {s:?}")));
            }
            Ok(BigRational::new(n, d))
        }
    }
}

fn json_number_text(field: &str, v: &Value) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) if n.is_i64() || n.is_u64() => Ok(n.to_string()),
        _ => Err(CliError::usage(format!("{field}: expected a decimal string"))),
    }
}

/// A curve given as `{"a": [a1, a2, a3, a4, a6]}` or as an equation such as
/// `y^2 + xy = x^3 - x^2 + 7`.
pub fn parse_curve(s: &str) -> Result<WeierstrassModel> {
    let s = s.trim();
    if s.starts_with('{') {
        let v: Value = serde_json::from_str(s).map_err(|e| CliError::usage(format!("curve: invalid JSON: {e}")))?;
        curve_from_json(&v)
    } else {
        parse_equation(s)
    }
}

pub fn curve_from_json(v: &Value) -> Result<WeierstrassModel> {
    let a = v
        .get("a")
        .ok_or_else(|| CliError::usage("curve: missing field `a`"))?
        .as_array()
        .ok_or_else(|| CliError::usage("curve.a: expected an array of five coefficients"))?;
    if a.len() != 5 {
        return Err(CliError::usage(format!("curve.a: expected five coefficients, got {}", a.len())));
    }
    let mut coeffs: [BigInt; 5] = Default::default();
    for (i, c) in a.iter().enumerate() {
        let field = format!("curve.a[{i}]");
        coeffs[i] = parse_int(&field, &json_number_text(&field, c)?)?;
    }
    Ok(WeierstrassModel::new(coeffs)?)
}

fn normalize(s: &str) -> String {
    s.chars()
        .filter(|c| !c.is_whitespace() && *c != '*')
        .map(|c| match c {
            '²' => "^2".to_string(),
            '³' => "^3".to_string(),
            '−' => "-".to_string(),
            c => c.to_string(),
        })
        .collect()
}

/// Splits `+3x^2-y+7` into signed `(coefficient, monomial)` pairs.
fn terms(field: &str, side: &str) -> Result<Vec<(BigInt, String)>> {
    let mut out = Vec::new();
    let mut rest = side;
    while !rest.is_empty() {
        let (negative, body) = match rest.as_bytes()[0] {
            b'+' => (false, &rest[1..]),
            b'-' => (true, &rest[1..]),
            _ if out.is_empty() => (false, rest),
            _ => return Err(CliError::usage(format!("{field}: cannot parse {side:?}"))),
        };
        if body.is_empty() {
            return Err(CliError::usage(format!("{field}: dangling sign in {side:?}")));
        }
        let end = body[1..].find(['+', '-']).map_or(body.len(), |i| i + 1);
        let term = &body[..end];
        rest = &body[end..];
        let digits = term.find(|c: char| !c.is_ascii_digit()).unwrap_or(term.len());
        let coeff = if digits == 0 {
            BigInt::from(1)
        } else {
            parse_int(field, &term[..digits])?
        };
        let coeff = if negative { -coeff } else { coeff };
        out.push((coeff, term[digits..].to_string()));
    }
    Ok(out)
}

/// `y^2 + a1·xy + a3·y = x^3 + a2·x^2 + a4·x + a6` with integer coefficients.
pub fn parse_equation(s: &str) -> Result<WeierstrassModel> {
    let n = normalize(s);
    let (lhs, rhs) = n
        .split_once('=')
        .ok_or_else(|| CliError::usage(format!("curve: expected an equation with `=`, got {s:?}")))?;
    let mut a: [BigInt; 5] = Default::default();
    let mut y2 = BigInt::zero();
    for (c, m) in terms("curve", lhs)? {
        match m.as_str() {
            "y^2" => y2 += c,
            "xy" | "yx" => a[0] += c,
            "y" => a[2] += c,
            _ => return Err(CliError::usage(format!("curve: unexpected term {m:?} on the left of {s:?}"))),
        }
    }
    let mut x3 = BigInt::zero();
    for (c, m) in terms("curve", rhs)? {
        match m.as_str() {
            "x^3" => x3 += c,
            "x^2" => a[1] += c,
            "x" => a[3] += c,
            "" => a[4] += c,
            _ => return Err(CliError::usage(format!("curve: unexpected term {m:?} on the right of {s:?}"))),
        }
    }
    if y2 != BigInt::from(1) || x3 != BigInt::from(1) {
        return Err(CliError::usage(format!("curve: {s:?} is not in Weierstrass form")));
    }
    Ok(WeierstrassModel::new(a)?)
}

/// `"O"` or `{"x": "p/q", "y": "p/q"}`.
pub fn parse_point(s: &str) -> Result<CurvePoint> {
    let s = s.trim();
    if s == "O" || s == "\"O\"" {
        return Ok(CurvePoint::Infinity);
    }
    let v: Value = serde_json::from_str(s).map_err(|e| CliError::usage(format!("point: invalid JSON: {e}")))?;
    point_from_json(&v)
}

pub fn point_from_json(v: &Value) -> Result<CurvePoint> {
    if v.as_str() == Some("O") {
        return Ok(CurvePoint::Infinity);
    }
    let coord = |name: &str| -> Result<BigRational> {
        let field = format!("point.{name}");
        let c = v
            .get(name)
            .ok_or_else(|| CliError::usage(format!("point: missing field `{name}`")))?;
        parse_rational(&field, &json_number_text(&field, c)?)
    };
    Ok(CurvePoint::affine(coord("x")?, coord("y")?))
}

/// A comma-separated list of primes, e.g. `2,3,5`.
pub fn parse_primes(s: &str) -> Result<PrimeSet> {
    let mut primes = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        primes.push(parse_int("S", part)?);
    }
    PrimeSet::new(primes).map_err(|e| CliError::usage(format!("S: {e}")))
}

/// `lo..hi` or `lo:hi` (both inclusive), or a comma-separated list.
pub fn parse_range(field: &str, s: &str) -> Result<Vec<i64>> {
    let bound = |x: &str| -> Result<i64> {
        x.trim()
            .parse::<i64>()
            .map_err(|_| CliError::usage(format!("{field}: invalid bound {x:?}")))
    };
    let split = s.split_once("..").or_else(|| s.split_once(':'));
    match split {
        Some((lo, hi)) => {
            let (lo, hi) = (bound(lo)?, bound(hi.trim_start_matches('='))?);
            if lo > hi {
                return Err(CliError::usage(format!("{field}: empty range {s:?}")));
            }
            Ok((lo..=hi).collect())
        }
        None => s.split(',').map(bound).collect(),
    }
}

/// A cubic `x^3 + Ax + B`, given as an expression or as `A,B`.
pub fn parse_cubic(s: &str) -> Result<ShortCubic> {
    let n = normalize(s);
    if let Some((a, b)) = n.split_once(',') {
        return Ok(ShortCubic::new(parse_int("f", a)?, parse_int("f", b)?)?);
    }
    let body = n.strip_prefix("f(x)=").or_else(|| n.strip_prefix("y^2=")).unwrap_or(&n);
    let (mut a, mut b, mut x3) = (BigInt::zero(), BigInt::zero(), BigInt::zero());
    for (c, m) in terms("f", body)? {
        match m.as_str() {
            "x^3" => x3 += c,
            "x" => a += c,
            "" => b += c,
            _ => return Err(CliError::usage(format!("f: unexpected term {m:?} in {s:?}"))),
        }
    }
    if x3 != BigInt::from(1) {
        return Err(CliError::usage(format!("f: {s:?} is not of the form x^3 + Ax + B")));
    }
    Ok(ShortCubic::new(a, b)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ecs_core::arith::rat;

    #[test]
    fn equations() {
        let e = parse_curve("y^2=x^3+x^2+7").unwrap();
        assert_eq!(e, WeierstrassModel::from_i64([0, 1, 0, 0, 7]).unwrap());
        let e = parse_curve("y² + xy + y = x³ − x² − 10x − 20").unwrap();
        assert_eq!(e, WeierstrassModel::from_i64([1, -1, 1, -10, -20]).unwrap());
        let e = parse_curve(r#"{"a":["0","0","0","0","50"]}"#).unwrap();
        assert_eq!(e, WeierstrassModel::from_i64([0, 0, 0, 0, 50]).unwrap());
        assert!(parse_curve("y^2=x^3").is_err());
        assert!(parse_curve("y^2=x^4+1").is_err());
        let err = parse_curve(r#"{"a":["0","0","q","0","50"]}"#).unwrap_err();
        assert!(err.to_string().contains("curve.a[2]"), "{err}");
        let err = parse_curve(r#"{"b":[]}"#).unwrap_err();
        assert!(err.to_string().contains("`a`"));
    }

    #[test]
    fn points_and_sets() {
        assert_eq!(parse_point("O").unwrap(), CurvePoint::Infinity);
        assert_eq!(
            parse_point(r#"{"x":"-1/4","y":"7"}"#).unwrap(),
            CurvePoint::affine(rat(-1, 4), rat(7, 1))
        );
        let err = parse_point(r#"{"x":"1"}"#).unwrap_err();
        assert!(err.to_string().contains("`y`"));
        let err = parse_point(r#"{"x":"1/0","y":"2"}"#).unwrap_err();
        assert!(err.to_string().contains("point.x"));
        assert_eq!(parse_primes("2, 3").unwrap(), PrimeSet::from_u64(&[2, 3]).unwrap());
        assert!(parse_primes("2,4").is_err());
        assert_eq!(parse_range("t", "1..4").unwrap(), [1, 2, 3, 4]);
        assert_eq!(parse_range("t", "-2:1").unwrap(), [-2, -1, 0, 1]);
        assert_eq!(parse_range("t", "5,7").unwrap(), [5, 7]);
        assert!(parse_range("t", "4..1").is_err());
        assert_eq!(parse_cubic("x^3+1").unwrap(), ShortCubic::from_i64(0, 1).unwrap());
        assert_eq!(parse_cubic("x^3 - 2x + 5").unwrap(), ShortCubic::from_i64(-2, 5).unwrap());
        assert_eq!(parse_cubic("-1,1").unwrap(), ShortCubic::from_i64(-1, 1).unwrap());
    }
}
