//! Interval quartic families, polynomial segments and their robust stability.

use num_traits::{One, Signed, Zero};

use crate::error::{Result, SprError};
use crate::poly::{self, hurwitz_stable, Polynomial};
use crate::rational::{self, Rational};

/// Names of the Kharitonov vertices in the order [`kharitonov_vertices`]
/// returns them.
pub const VERTEX_NAMES: [&str; 4] = ["a1", "a2", "a3", "a4"];

/// `s^4 + c[0] s^3 + c[1] s^2 + c[2] s + c[3]`.
pub fn monic_quartic(c: &[Rational; 4]) -> Polynomial {
    Polynomial::new(vec![
        c[3].clone(),
        c[2].clone(),
        c[1].clone(),
        c[0].clone(),
        Rational::one(),
    ])
}

/// `[a1, a2, a3, a4]` of a monic quartic `s^4 + a1 s^3 + a2 s^2 + a3 s + a4`.
pub fn quartic_coeffs(p: &Polynomial) -> Result<[Rational; 4]> {
    if p.degree() != Some(4) || !p.is_monic() {
        return Err(SprError::InvalidInput(format!(
            "expected a monic quartic, got {p}"
        )));
    }
    Ok([p.coeff(3), p.coeff(2), p.coeff(1), p.coeff(0)])
}

/// Monic quartics `s^4 + a1 s^3 + a2 s^2 + a3 s + a4` with every `ai` in its own
/// closed interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalQuartic {
    lower: [Rational; 4],
    upper: [Rational; 4],
}

impl IntervalQuartic {
    pub fn new(lower: [Rational; 4], upper: [Rational; 4]) -> Result<Self> {
        for i in 0..4 {
            if !lower[i].is_positive() {
                return Err(SprError::NonPositiveBound {
                    index: i + 1,
                    value: rational::fraction_string(&lower[i]),
                });
            }
            if lower[i] > upper[i] {
                return Err(SprError::InvalidInput(format!(
                    "a{} has lower bound {} above upper bound {}",
                    i + 1,
                    rational::fraction_string(&lower[i]),
                    rational::fraction_string(&upper[i])
                )));
            }
        }
        Ok(IntervalQuartic { lower, upper })
    }

    /// Convenience constructor from decimal text, e.g. `["11","56","88","1"]`.
    pub fn from_strs(lower: [&str; 4], upper: [&str; 4]) -> Result<Self> {
        let parse = |xs: [&str; 4]| -> Result<[Rational; 4]> {
            let v = xs
                .iter()
                .map(|s| rational::parse_rational(s))
                .collect::<Result<Vec<_>>>()?;
            Ok(v.try_into().expect("four entries"))
        };
        IntervalQuartic::new(parse(lower)?, parse(upper)?)
    }

    /// The degenerate family containing only `p`.
    pub fn point(p: &Polynomial) -> Result<Self> {
        let c = quartic_coeffs(p)?;
        IntervalQuartic::new(c.clone(), c)
    }

    pub fn lower(&self) -> &[Rational; 4] {
        &self.lower
    }

    pub fn upper(&self) -> &[Rational; 4] {
        &self.upper
    }

    /// Member whose `ai` sits at fraction `f[i]` of the way from lower to upper.
    pub fn member_at(&self, f: &[Rational; 4]) -> Polynomial {
        let c: [Rational; 4] =
            std::array::from_fn(|i| &self.lower[i] + &f[i] * (&self.upper[i] - &self.lower[i]));
        monic_quartic(&c)
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        quartic_coeffs(p)
            .is_ok_and(|c| (0..4).all(|i| self.lower[i] <= c[i] && c[i] <= self.upper[i]))
    }
}

/// The four Kharitonov vertices in the fixed order
/// `(+,+,-,-)`, `(-,-,+,+)`, `(+,-,-,+)`, `(-,+,+,-)` on `(a1, a2, a3, a4)`.
pub fn kharitonov_vertices(k: &IntervalQuartic) -> [Polynomial; 4] {
    const PATTERNS: [[bool; 4]; 4] = [
        [true, true, false, false],
        [false, false, true, true],
        [true, false, false, true],
        [false, true, true, false],
    ];
    PATTERNS.map(|pattern| {
        let c: [Rational; 4] = std::array::from_fn(|i| {
            if pattern[i] {
                k.upper[i].clone()
            } else {
                k.lower[i].clone()
            }
        });
        monic_quartic(&c)
    })
}

/// Every member of `k` is Hurwitz, decided on the four vertices.
pub fn interval_robustly_stable(k: &IntervalQuartic) -> bool {
    kharitonov_vertices(k)
        .iter()
        .all(|v| hurwitz_stable(v).unwrap_or(false))
}

/// Like [`interval_robustly_stable`] but names the first failing vertex.
pub fn require_robustly_stable(k: &IntervalQuartic) -> Result<[Polynomial; 4]> {
    let vertices = kharitonov_vertices(k);
    for (name, v) in VERTEX_NAMES.iter().zip(&vertices) {
        if !hurwitz_stable(v)? {
            return Err(SprError::NotRobustlyStable {
                vertex: (*name).to_string(),
                polynomial: v.to_string(),
            });
        }
    }
    Ok(vertices)
}

/// Convex combinations `lambda * end_a + (1 - lambda) * end_b`, `lambda` in `[0, 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    end_a: Polynomial,
    end_b: Polynomial,
}

impl Segment {
    pub fn new(end_a: Polynomial, end_b: Polynomial) -> Result<Self> {
        if !end_a.is_monic() || !end_b.is_monic() {
            return Err(SprError::InvalidInput(
                "segment endpoints must be monic".into(),
            ));
        }
        if end_a.degree() != end_b.degree() {
            return Err(SprError::InvalidInput(format!(
                "segment endpoints have different degrees: {end_a} vs {end_b}"
            )));
        }
        if end_a.degree() == Some(0) {
            return Err(SprError::InvalidInput(
                "segment endpoints must have degree at least one".into(),
            ));
        }
        Ok(Segment { end_a, end_b })
    }

    pub fn end_a(&self) -> &Polynomial {
        &self.end_a
    }

    pub fn end_b(&self) -> &Polynomial {
        &self.end_b
    }

    pub fn degree(&self) -> usize {
        self.end_a.degree().unwrap()
    }

    pub fn at(&self, lambda: &Rational) -> Polynomial {
        &self.end_a.scale(lambda) + &self.end_b.scale(&(Rational::one() - lambda))
    }
}

/// Exact determinant by fraction Gaussian elimination.
fn determinant(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &p;
            let (top, bottom) = m.split_at_mut(r);
            for (target, source) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                *target -= &f * source;
            }
        }
    }
    det
}

/// Sylvester resultant with the given formal degrees.
fn resultant(f: &Polynomial, df: usize, g: &Polynomial, dg: usize) -> Rational {
    let size = df + dg;
    let mut m = vec![vec![Rational::zero(); size]; size];
    for row in 0..dg {
        for k in 0..=df {
            m[row][row + k] = f.coeff(df - k);
        }
    }
    for row in 0..df {
        for k in 0..=dg {
            m[dg + row][row + k] = g.coeff(dg - k);
        }
    }
    determinant(m)
}

/// Exact interpolation through `(x_i, y_i)` in Newton form.
fn interpolate(xs: &[Rational], ys: &[Rational]) -> Polynomial {
    let n = xs.len();
    let mut coef = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            coef[i] = (&coef[i] - &coef[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let mut p = Polynomial::constant(coef[n - 1].clone());
    for i in (0..n - 1).rev() {
        let factor = Polynomial::new(vec![-&xs[i], Rational::one()]);
        p = &(&p * &factor) + &Polynomial::constant(coef[i].clone());
    }
    p
}

/// `R(lambda) = Res_t(E_lambda, O_lambda)` where `p_lambda(jw) = E(w^2) + jw O(w^2)`.
///
/// `R(lambda) = 0` exactly when `p_lambda` has two roots summing to zero, which
/// includes every imaginary-axis pair.
pub fn crossing_polynomial(seg: &Segment) -> Polynomial {
    let (ea, oa) = poly::imaginary_axis_parts(&seg.end_a);
    let (eb, ob) = poly::imaginary_axis_parts(&seg.end_b);
    let formal = |x: &Polynomial, y: &Polynomial| x.degree().max(y.degree()).unwrap_or(0);
    let de = formal(&ea, &eb);
    let dodd = formal(&oa, &ob);
    let nodes: Vec<Rational> = (0..=(de + dodd) as i64).map(rational::int).collect();
    let values: Vec<Rational> = nodes
        .iter()
        .map(|l| {
            let one_minus = Rational::one() - l;
            let e = &ea.scale(l) + &eb.scale(&one_minus);
            let o = &oa.scale(l) + &ob.scale(&one_minus);
            resultant(&e, de, &o, dodd)
        })
        .collect();
    interpolate(&nodes, &values)
}

/// Every polynomial on the segment is Hurwitz.
///
/// Both endpoints must pass the Routh test and the crossing polynomial must have
/// no root in `[0, 1]`: stability can only be lost through an imaginary-axis
/// root, and a stable polynomial never has a pair of roots summing to zero.
pub fn segment_stable(seg: &Segment) -> Result<bool> {
    if !hurwitz_stable(&seg.end_a)? || !hurwitz_stable(&seg.end_b)? {
        return Ok(false);
    }
    let r = crossing_polynomial(seg);
    if r.is_zero() {
        return Ok(false);
    }
    let zero = Rational::zero();
    if r.eval(&zero).is_zero() {
        return Ok(false);
    }
    Ok(poly::count_roots_in(&r, Some(&zero), Some(&Rational::one())) == 0)
}
