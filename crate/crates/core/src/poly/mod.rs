//! Exact univariate polynomials over the rationals.
//!
//! Coefficients are stored in ascending order (`coeffs[k]` multiplies `s^k`).
//! Human-facing text uses the conventional descending form
//! `s^4+89s^3+56s^2+88s+1`.

mod even;
mod stability;
mod sturm;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Result, SprError};
use crate::rational::{self, Rational};

pub(crate) use even::imaginary_axis_parts;
pub use even::{real_part_numerator, EvenFormInT};
pub use stability::{hurwitz_stable, routh_first_column};
pub use sturm::{
    count_roots_in, nonneg_positivity_witness, positive_on_nonneg, root_upper_bound, SturmChain,
};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    /// Builds a polynomial from ascending coefficients, trimming trailing zeros.
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::new(vec![c])
    }

    /// `c * s^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Polynomial::new(coeffs)
    }

    pub fn from_ints(ascending: &[i64]) -> Self {
        Polynomial::new(ascending.iter().map(|&c| rational::int(c)).collect())
    }

    /// Builds from descending coefficients, the order polynomials are usually
    /// written in.
    pub fn from_descending(descending: Vec<Rational>) -> Self {
        let mut coeffs = descending;
        coeffs.reverse();
        Polynomial::new(coeffs)
    }

    /// Parses each entry with [`rational::parse_rational`]; ascending order.
    pub fn from_decimal_strs(ascending: &[&str]) -> Result<Self> {
        ascending
            .iter()
            .map(|s| rational::parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map(Polynomial::new)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `s^k`, zero past the degree.
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + rational::to_f64(c))
    }

    pub fn to_f64_vec(&self) -> Vec<f64> {
        self.coeffs.iter().map(rational::to_f64).collect()
    }

    pub fn derivative(&self) -> Polynomial {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * rational::int(k as i64))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Divides by the absolute value of the leading coefficient. Signs at every
    /// point are preserved.
    pub fn normalize_abs(&self) -> Polynomial {
        match self.leading() {
            Some(lc) => self.scale(&(Rational::one() / lc.abs())),
            None => Polynomial::zero(),
        }
    }

    /// Positive multiple with coprime integer coefficients.
    pub fn primitive_part(&self) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * &den).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        Polynomial {
            coeffs: ints
                .into_iter()
                .map(|c| Rational::from_integer(c / &g))
                .collect(),
        }
    }

    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            Some(lc) => self.scale(&(Rational::one() / lc)),
            None => Polynomial::zero(),
        }
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Polynomial) -> (Polynomial, Polynomial) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lc = divisor.leading().unwrap();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return (Polynomial::zero(), Polynomial::zero());
        };
        if nd < dd {
            return (Polynomial::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &rem[k + dd] / lc;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * d;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Polynomial::new(quot), Polynomial::new(rem))
    }

    pub fn rem(&self, divisor: &Polynomial) -> Polynomial {
        self.div_rem(divisor).1
    }

    /// Monic greatest common divisor; zero only when both inputs are zero.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.normalize_abs();
        }
        a.monic()
    }

    /// Part with every root of multiplicity one.
    pub fn square_free(&self) -> Polynomial {
        if self.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0
    }

    /// Substitutes `s -> c*s`.
    pub fn compose_scale(&self, c: &Rational) -> Polynomial {
        let mut pow = Rational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &pow);
            pow *= c;
        }
        Polynomial::new(out)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

/// Descending human syntax: `s^4+89s^3+56s^2+88s+1`, `-s+1/2`, `0`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            if negative {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            first = false;
            let mag = c.abs();
            let text = if mag.denom().is_one() {
                mag.numer().to_string()
            } else {
                rational::decimal_exact(&mag).unwrap_or_else(|| rational::fraction_string(&mag))
            };
            let needs_coeff = k == 0 || !mag.is_one();
            if needs_coeff {
                // a fraction multiplying s is written with a '*' so it re-parses
                if k > 0 && text.contains('/') {
                    write!(f, "{text}*")?;
                } else {
                    f.write_str(&text)?;
                }
            }
            match k {
                0 => {}
                1 => f.write_str("s")?,
                _ => write!(f, "s^{k}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for Polynomial {
    type Err = SprError;

    /// Accepts descending or mixed-order sums of terms `c`, `c s`, `c*s^k`,
    /// `s^k`, `-s`. The variable may be written `s`, `x` or `t`. Whitespace is
    /// ignored and decimal coefficients are read exactly.
    fn from_str(text: &str) -> Result<Self> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(SprError::Parse("empty polynomial".into()));
        }
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut current = String::new();
        let mut negative = false;
        let bytes: Vec<char> = compact.chars().collect();
        for (i, &ch) in bytes.iter().enumerate() {
            let after_exponent_marker = i > 0
                && matches!(bytes[i - 1], 'e' | 'E')
                && current.chars().any(|c| c.is_ascii_digit());
            if (ch == '+' || ch == '-') && !after_exponent_marker && !current.ends_with('^') {
                if !current.is_empty() {
                    terms.push((negative, std::mem::take(&mut current)));
                } else if i > 0 {
                    return Err(SprError::Parse(format!("dangling sign in '{text}'")));
                }
                negative = ch == '-';
            } else {
                current.push(ch);
            }
        }
        if current.is_empty() {
            return Err(SprError::Parse(format!("trailing sign in '{text}'")));
        }
        terms.push((negative, current));

        let mut coeffs: Vec<Rational> = Vec::new();
        for (neg, term) in terms {
            let (c, k) = parse_term(&term)?;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, Rational::zero());
            }
            if neg {
                coeffs[k] -= c;
            } else {
                coeffs[k] += c;
            }
        }
        Ok(Polynomial::new(coeffs))
    }
}

fn parse_term(term: &str) -> Result<(Rational, usize)> {
    let var_pos = term.find(['s', 'x', 't']);
    let Some(pos) = var_pos else {
        return Ok((rational::parse_rational(term)?, 0));
    };
    let coeff_text = term[..pos].trim_end_matches('*');
    let coeff = if coeff_text.is_empty() {
        Rational::one()
    } else {
        rational::parse_rational(coeff_text)?
    };
    let rest = &term[pos + 1..];
    let power = if rest.is_empty() {
        1
    } else if let Some(p) = rest.strip_prefix('^') {
        p.parse::<usize>()
            .map_err(|_| SprError::Parse(format!("bad exponent in term '{term}'")))?
    } else {
        return Err(SprError::Parse(format!("unexpected text in term '{term}'")));
    };
    if power > 64 {
        return Err(SprError::Parse(format!("exponent too large in '{term}'")));
    }
    Ok((coeff, power))
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn parses_descending_text() {
        let p: Polynomial = "s^4+89s^3+56s^2+88s+1".parse().unwrap();
        assert_eq!(p, Polynomial::from_ints(&[1, 88, 56, 89, 1]));
        let q: Polynomial = "s^3 + 11 s^2 + 7.6657 s + 2".parse().unwrap();
        assert_eq!(q.coeff(1), ratio(76657, 10000));
        let r: Polynomial = "-s^2 - 1/2*s + 3".parse().unwrap();
        assert_eq!(r, Polynomial::new(vec![int(3), ratio(-1, 2), int(-1)]));
        let e: Polynomial = "1e-3s + 2".parse().unwrap();
        assert_eq!(e.coeff(1), ratio(1, 1000));
    }

    #[test]
    fn parse_errors() {
        for bad in ["", "s^", "2s^x", "3+", "s^2++1", "4q"] {
            assert!(bad.parse::<Polynomial>().is_err(), "{bad}");
        }
    }

    #[test]
    fn display_round_trips() {
        for text in [
            "s^4+89s^3+56s^2+88s+1",
            "-s+1",
            "s^3+2.56s+0.5",
            "1/3*s^2-7/9",
            "0",
        ] {
            let p: Polynomial = text.parse().unwrap();
            assert_eq!(p.to_string().parse::<Polynomial>().unwrap(), p, "{text}");
        }
        assert_eq!(
            Polynomial::from_ints(&[1, 88, 56, 89, 1]).to_string(),
            "s^4+89s^3+56s^2+88s+1"
        );
    }

    #[test]
    fn zero_has_no_degree() {
        assert_eq!(Polynomial::zero().degree(), None);
        assert_eq!(Polynomial::from_ints(&[0, 0]).degree(), None);
        assert_eq!(Polynomial::from_ints(&[5]).degree(), Some(0));
    }

    #[test]
    fn division_identity() {
        let a = Polynomial::from_ints(&[-1, 0, 0, 2, 3]);
        let b = Polynomial::from_ints(&[1, 1, 2]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree().unwrap() < 2);
    }

    #[test]
    fn gcd_and_square_free() {
        // (t-1)^2 (t+2)
        let p = Polynomial::from_ints(&[2, -3, 0, 1]);
        assert_eq!(p.gcd(&p.derivative()), Polynomial::from_ints(&[-1, 1]));
        assert_eq!(p.square_free(), Polynomial::from_ints(&[-2, 1, 1]));
    }
}
