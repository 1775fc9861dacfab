//! Exact rational helpers shared by every module.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Result, SprError};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `12`, `-3.25`, `1/3`, `2.5e-3` exactly. Decimal fractions never pass
/// through floating point.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    if s.is_empty() {
        return Err(SprError::Parse("empty number".into()));
    }
    if let Some((n, d)) = s.split_once('/') {
        let n = parse_rational(n)?;
        let d = parse_rational(d)?;
        if d.is_zero() {
            return Err(SprError::Parse(format!("zero denominator in '{s}'")));
        }
        return Ok(n / d);
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => {
            let exp: i32 = s[i + 1..]
                .parse()
                .map_err(|_| SprError::Parse(format!("bad exponent in '{s}'")))?;
            (&s[..i], exp)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.as_bytes().first() {
        Some(b'-') => (true, &mantissa[1..]),
        Some(b'+') => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(SprError::Parse(format!("no digits in '{s}'")));
    }
    if !whole
        .bytes()
        .chain(frac.bytes())
        .all(|b| b.is_ascii_digit())
    {
        return Err(SprError::Parse(format!("not a number: '{s}'")));
    }
    let all: BigInt = format!("0{whole}{frac}")
        .parse()
        .map_err(|_| SprError::Parse(format!("not a number: '{s}'")))?;
    let scale = exponent - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut value = Rational::from_integer(all);
    if scale >= 0 {
        value *= Rational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        value /= Rational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Ok(if negative { -value } else { value })
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Exact value of a finite float.
pub fn from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

/// Rounds `x` to a rational with at most `digits` significant decimal digits.
pub fn from_f64_rounded(x: f64, digits: usize) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    if x == 0.0 {
        return Some(Rational::zero());
    }
    parse_rational(&format!("{:.*e}", digits.saturating_sub(1), x)).ok()
}

/// `p/q` for non-integers, `p` otherwise.
pub fn fraction_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Plain decimal rendering; exact when the expansion terminates within
/// `max_frac` digits, otherwise rounded half away from zero.
pub fn decimal_string(r: &Rational, max_frac: usize) -> String {
    let negative = r.is_negative();
    let a = r.abs();
    let scale = num_traits::pow(BigInt::from(10), max_frac);
    let scaled = &a * Rational::from_integer(scale.clone());
    let mut n = scaled.round().to_integer();
    if n.is_zero() && !a.is_zero() {
        // keep tiny values visible
        return format!("{}{:e}", if negative { "-" } else { "" }, to_f64(&a));
    }
    let whole = &n / &scale;
    n -= &whole * &scale;
    let mut frac = format!("{:0>width$}", n.to_string(), width = max_frac);
    while frac.ends_with('0') {
        frac.pop();
    }
    let sign = if negative && !(whole.is_zero() && frac.is_empty()) {
        "-"
    } else {
        ""
    };
    if frac.is_empty() {
        format!("{sign}{whole}")
    } else {
        format!("{sign}{whole}.{frac}")
    }
}

/// Exact decimal rendering when the denominator has only factors 2 and 5.
pub fn decimal_exact(r: &Rational) -> Option<String> {
    let mut d = r.denom().clone();
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    let mut twos = 0usize;
    let mut fives = 0usize;
    while (&d % &two).is_zero() {
        d /= &two;
        twos += 1;
    }
    while (&d % &five).is_zero() {
        d /= &five;
        fives += 1;
    }
    if !d.is_one() {
        return None;
    }
    Some(decimal_string(r, twos.max(fives)))
}
