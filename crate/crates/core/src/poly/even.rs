use num_traits::One;

use super::Polynomial;
use crate::error::{Result, SprError};
use crate::rational::Rational;

/// `Re[p(jw) * conj(q(jw))]` written as a polynomial in `t = w^2`.
///
/// Since `|q(jw)|^2 > 0` away from roots of `q`, its sign on `t >= 0` is the
/// sign of `Re[p(jw) / q(jw)]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvenFormInT {
    poly: Polynomial,
    numerator: Polynomial,
    denominator: Polynomial,
}

impl EvenFormInT {
    /// The polynomial in `t`.
    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn into_poly(self) -> Polynomial {
        self.poly
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.denominator
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.poly.eval(t)
    }
}

/// Splits `p(jw) = E(t) + j w O(t)` with `t = w^2`.
fn even_odd_in_t(p: &Polynomial) -> (Polynomial, Polynomial) {
    let mut even = Vec::new();
    let mut odd = Vec::new();
    for (k, c) in p.coeffs().iter().enumerate() {
        // j^k = (-1)^(k/2) for even k, j * (-1)^((k-1)/2) for odd k
        let half = k / 2;
        let signed = if half % 2 == 0 { c.clone() } else { -c };
        if k % 2 == 0 {
            even.push(signed);
        } else {
            odd.push(signed);
        }
    }
    (Polynomial::new(even), Polynomial::new(odd))
}

/// Even and odd parts in `t`, exposed for the segment crossing test.
pub(crate) fn imaginary_axis_parts(p: &Polynomial) -> (Polynomial, Polynomial) {
    even_odd_in_t(p)
}

/// `N(t)` with `N(w^2) = Re[p(jw) * conj(q(jw))]`, i.e. `Ep*Eq + t*Op*Oq`.
pub fn real_part_numerator(p: &Polynomial, q: &Polynomial) -> Result<EvenFormInT> {
    if p.is_zero() || q.is_zero() {
        return Err(SprError::InvalidInput(
            "real-part numerator needs nonzero polynomials".into(),
        ));
    }
    let (pe, po) = even_odd_in_t(p);
    let (qe, qo) = even_odd_in_t(q);
    let t = Polynomial::monomial(Rational::one(), 1);
    let poly = &(&pe * &qe) + &(&t * &(&po * &qo));
    Ok(EvenFormInT {
        poly,
        numerator: p.clone(),
        denominator: q.clone(),
    })
}
