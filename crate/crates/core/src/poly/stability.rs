use num_traits::{Signed, Zero};

use super::Polynomial;
use crate::error::{Result, SprError};
use crate::rational::Rational;

/// First column of the Routh array, or `None` if an exact zero shows up in
/// it before the array is complete (the degenerate case).
pub fn routh_first_column(p: &Polynomial) -> Result<Option<Vec<Rational>>> {
    let n = match p.degree() {
        None => {
            return Err(SprError::InvalidInput(
                "zero polynomial has no stability verdict".into(),
            ))
        }
        Some(0) => {
            return Err(SprError::InvalidInput(
                "constant polynomial has no stability verdict".into(),
            ))
        }
        Some(n) => n,
    };
    let width = n / 2 + 1;
    let row_from = |start: usize| -> Vec<Rational> {
        (0..width)
            .map(|j| {
                n.checked_sub(start + 2 * j)
                    .map(|k| p.coeff(k))
                    .unwrap_or_else(Rational::zero)
            })
            .collect()
    };
    let mut upper = row_from(0);
    let mut lower = row_from(1);
    let mut column = vec![upper[0].clone()];
    for _ in 0..n {
        if lower[0].is_zero() {
            return Ok(None);
        }
        column.push(lower[0].clone());
        let pivot = lower[0].clone();
        let next: Vec<Rational> = (0..width)
            .map(|j| {
                let a = upper.get(j + 1).cloned().unwrap_or_else(Rational::zero);
                let b = lower.get(j + 1).cloned().unwrap_or_else(Rational::zero);
                (&pivot * a - &upper[0] * b) / &pivot
            })
            .collect();
        upper = std::mem::replace(&mut lower, next);
    }
    Ok(Some(column))
}

/// Every root strictly in the open left half-plane.
///
/// Decided exactly by the Routh array. A zero in the first column means a root
/// on or to the right of the imaginary axis, so it is reported as unstable.
pub fn hurwitz_stable(p: &Polynomial) -> Result<bool> {
    let Some(column) = routh_first_column(p)? else {
        return Ok(false);
    };
    let positive = p.leading().is_some_and(|c| c.is_positive());
    Ok(column
        .iter()
        .all(|c| !c.is_zero() && c.is_positive() == positive))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(text: &str) -> Polynomial {
        text.parse().unwrap()
    }

    #[test]
    fn known_verdicts() {
        assert!(hurwitz_stable(&poly("s^4+89s^3+56s^2+88s+1")).unwrap());
        assert!(hurwitz_stable(&poly("s+1")).unwrap());
        assert!(!hurwitz_stable(&poly("s^2+1")).unwrap());
        assert!(!hurwitz_stable(&poly("s-1")).unwrap());
        assert!(hurwitz_stable(&poly("-s^2-3s-2")).unwrap());
        assert!(!hurwitz_stable(&poly("s^3+s^2+s+1")).unwrap());
        // missing constant term: root at the origin
        assert!(!hurwitz_stable(&poly("s^2+s")).unwrap());
    }

    #[test]
    fn routh_column_by_hand() {
        // s^4+2s^3+6s^2+6s+1: rows [1 6 1] [2 6] [3 1] [16/3] [1]
        let col = routh_first_column(&poly("s^4+2s^3+6s^2+6s+1"))
            .unwrap()
            .unwrap();
        let expect = ["1", "2", "3", "16/3", "1"];
        let expect: Vec<Rational> = expect
            .iter()
            .map(|t| crate::rational::parse_rational(t).unwrap())
            .collect();
        assert_eq!(col, expect);
    }

    #[test]
    fn rejects_constants() {
        assert!(hurwitz_stable(&Polynomial::zero()).is_err());
        assert!(hurwitz_stable(&poly("3")).is_err());
    }
}
