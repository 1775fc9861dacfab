//! Feasibility regions in the `(x, y)` plane for the cubic
//! `c(s) = s^3 + x s^2 + y s + eps` against a Hurwitz quartic
//! `a(s) = s^4 + a1 s^3 + a2 s^2 + a3 s + a4`.
//!
//! * `Omega_e`: open interior of the ellipse
//!   `(a2^2-4a4)x^2 + 2(2a3-a1a2)xy + a1^2 y^2 - 2(a2a3-2a1a4)x - 2a1a3 y + a3^2 = 0`.
//! * `Omega_t`: `a1-x >= 0`, `a2x-a1y-a3 >= 0`, `a3y-a4x > 0`.
//! * `Omega = Omega_e ∪ Omega_t`, the set where the quadratic
//!   `(a1-x)t^2 + (a2x-a1y-a3)t + (a3y-a4x)` is positive for all `t >= 0`.
//!
//! All membership tests are exact; boundary points are classified exactly as
//! the strict and non-strict inequalities above say.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Result, SprError};
use crate::families::quartic_coeffs;
use crate::poly::{hurwitz_stable, positive_on_nonneg, Polynomial};
use crate::rational::{self, Rational};

/// Candidate `(x, y)` for `s^3 + x s^2 + y s + eps`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Point2 {
    #[serde(with = "crate::json::exact")]
    pub x: Rational,
    #[serde(with = "crate::json::exact")]
    pub y: Rational,
}

impl Point2 {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point2 { x, y }
    }

    pub fn from_strs(x: &str, y: &str) -> Result<Self> {
        Ok(Point2::new(
            rational::parse_rational(x)?,
            rational::parse_rational(y)?,
        ))
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (rational::to_f64(&self.x), rational::to_f64(&self.y))
    }

    /// `self + t * (other - self)`.
    pub fn lerp(&self, other: &Point2, t: &Rational) -> Point2 {
        Point2::new(
            &self.x + t * (&other.x - &self.x),
            &self.y + t * (&other.y - &self.y),
        )
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (x, y) = self.to_f64();
        write!(f, "({x}, {y})")
    }
}

/// `A x^2 + B xy + C y^2 + D x + E y + F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conic {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
    pub e: Rational,
    pub f: Rational,
}

impl Conic {
    pub fn eval(&self, p: &Point2) -> Rational {
        let (x, y) = (&p.x, &p.y);
        &self.a * x * x + &self.b * x * y + &self.c * y * y + &self.d * x + &self.e * y + &self.f
    }

    pub fn eval_f64(&self, x: f64, y: f64) -> f64 {
        let g = |r: &Rational| rational::to_f64(r);
        g(&self.a) * x * x
            + g(&self.b) * x * y
            + g(&self.c) * y * y
            + g(&self.d) * x
            + g(&self.e) * y
            + g(&self.f)
    }

    /// `B^2 - 4AC`; negative for an ellipse.
    pub fn discriminant(&self) -> Rational {
        &self.b * &self.b - rational::int(4) * &self.a * &self.c
    }

    pub fn gradient(&self, p: &Point2) -> (Rational, Rational) {
        let two = rational::int(2);
        (
            &two * &self.a * &p.x + &self.b * &p.y + &self.d,
            &self.b * &p.x + &two * &self.c * &p.y + &self.e,
        )
    }

    /// Value of the quadratic part at a direction `(dx, dy)`.
    pub fn quadratic_part(&self, dx: &Rational, dy: &Rational) -> Rational {
        &self.a * dx * dx + &self.b * dx * dy + &self.c * dy * dy
    }

    /// Stationary point of the form; the ellipse center.
    pub fn center(&self) -> Option<Point2> {
        // [2A B; B 2C] p = -(D, E)
        let two = rational::int(2);
        let det = rational::int(4) * &self.a * &self.c - &self.b * &self.b;
        if det.is_zero() {
            return None;
        }
        let x = (-&two * &self.c * &self.d + &self.b * &self.e) / &det;
        let y = (&self.b * &self.d - &two * &self.a * &self.e) / &det;
        Some(Point2::new(x, y))
    }
}

/// Ellipse and triangle data for one quartic, validated once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionBundle {
    source: Polynomial,
    coeffs: [Rational; 4],
    conic: Conic,
}

impl RegionBundle {
    /// `a` must be a monic Hurwitz quartic.
    pub fn new(a: &Polynomial) -> Result<Self> {
        let coeffs = quartic_coeffs(a)?;
        if !hurwitz_stable(a)? {
            return Err(SprError::InvalidInput(format!(
                "feasibility regions need a Hurwitz quartic, {a} is not"
            )));
        }
        let [a1, a2, a3, a4] = &coeffs;
        let two = rational::int(2);
        let four = rational::int(4);
        let conic = Conic {
            a: a2 * a2 - &four * a4,
            b: &two * (&two * a3 - a1 * a2),
            c: a1 * a1,
            d: -&two * (a2 * a3 - &two * a1 * a4),
            e: -&two * a1 * a3,
            f: a3 * a3,
        };
        if !conic.discriminant().is_negative() {
            return Err(SprError::InternalContradiction(format!(
                "conic of Hurwitz quartic {a} is not an ellipse"
            )));
        }
        Ok(RegionBundle {
            source: a.clone(),
            coeffs,
            conic,
        })
    }

    pub fn source(&self) -> &Polynomial {
        &self.source
    }

    /// `[a1, a2, a3, a4]`.
    pub fn coeffs(&self) -> &[Rational; 4] {
        &self.coeffs
    }

    pub fn conic(&self) -> &Conic {
        &self.conic
    }

    /// `[a1 - x, a2 x - a1 y - a3, a3 y - a4 x]`.
    pub fn triangle_forms(&self, p: &Point2) -> [Rational; 3] {
        let [a1, a2, a3, a4] = &self.coeffs;
        [a1 - &p.x, a2 * &p.x - a1 * &p.y - a3, a3 * &p.y - a4 * &p.x]
    }

    pub fn in_omega_e(&self, p: &Point2) -> bool {
        self.conic.eval(p).is_negative()
    }

    pub fn in_omega_t(&self, p: &Point2) -> bool {
        let [f1, f2, f3] = self.triangle_forms(p);
        !f1.is_negative() && !f2.is_negative() && f3.is_positive()
    }

    pub fn in_omega(&self, p: &Point2) -> bool {
        self.in_omega_t(p) || self.in_omega_e(p)
    }

    /// `(a1-x)t^2 + (a2x-a1y-a3)t + (a3y-a4x)` as a polynomial in `t`.
    pub fn omega_quadratic(&self, p: &Point2) -> Polynomial {
        let [f1, f2, f3] = self.triangle_forms(p);
        Polynomial::new(vec![f3, f2, f1])
    }

    /// Membership decided through positivity of [`Self::omega_quadratic`] on
    /// `[0, inf)`, independently of the ellipse/triangle split.
    pub fn in_omega_quadratic(&self, p: &Point2) -> bool {
        let q = self.omega_quadratic(p);
        !q.is_zero() && positive_on_nonneg(&q).unwrap_or(false)
    }

    /// Tangency points with `x = 0`, `x = a1` and `a3 y - a4 x = 0`.
    pub fn tangent_points(&self) -> [Point2; 3] {
        let [a1, a2, a3, a4] = &self.coeffs;
        let k = a2 * a3 - a1 * a4;
        [
            Point2::new(Rational::zero(), a3 / a1),
            Point2::new(a1.clone(), a2 - a3 / a1),
            Point2::new(a3 * a3 / &k, a3 * a4 / &k),
        ]
    }

    /// Corners of the closure of `Omega_t`: the two tangent points on
    /// `x = a1` and `a3 y = a4 x`, plus the corner where those lines meet.
    pub fn triangle_vertices(&self) -> [Point2; 3] {
        let [a1, _, a3, a4] = &self.coeffs;
        let [_, on_right, on_ray] = self.tangent_points();
        [on_right, Point2::new(a1.clone(), a1 * a4 / a3), on_ray]
    }

    /// Points on the ellipse from the pencil of lines through the tangent point
    /// `(0, a3/a1)`. Directions walk half the boundary of the square
    /// `[-1, 1]^2`, so every point is rational and the ellipse is traversed once.
    pub fn boundary_samples(&self, count: usize) -> Vec<Point2> {
        let count = count.max(4);
        let base = self.tangent_points()[0].clone();
        let (gx, gy) = self.conic.gradient(&base);
        let one = Rational::one();
        (0..count)
            .map(|k| {
                // u in [0, 4): right edge upward, then top edge leftward
                let u = rational::int(4 * k as i64) / rational::int(count as i64);
                let (dx, dy) = if u < rational::int(2) {
                    (one.clone(), &u - &one)
                } else {
                    (rational::int(3) - &u, one.clone())
                };
                let tau = -(&gx * &dx + &gy * &dy) / self.conic.quadratic_part(&dx, &dy);
                Point2::new(&base.x + &tau * &dx, &base.y + &tau * &dy)
            })
            .collect()
    }
}

pub fn conic_of(a: &Polynomial) -> Result<Conic> {
    Ok(RegionBundle::new(a)?.conic)
}

pub fn tangent_points(a: &Polynomial) -> Result<[Point2; 3]> {
    Ok(RegionBundle::new(a)?.tangent_points())
}

pub fn in_omega_e(a: &Polynomial, p: &Point2) -> Result<bool> {
    Ok(RegionBundle::new(a)?.in_omega_e(p))
}

pub fn in_omega_t(a: &Polynomial, p: &Point2) -> Result<bool> {
    Ok(RegionBundle::new(a)?.in_omega_t(p))
}

pub fn in_omega(a: &Polynomial, p: &Point2) -> Result<bool> {
    Ok(RegionBundle::new(a)?.in_omega(p))
}

pub fn in_omega_quadratic(a: &Polynomial, p: &Point2) -> Result<bool> {
    Ok(RegionBundle::new(a)?.in_omega_quadratic(p))
}

/// Split of the tangency residual as `u * slope + intercept` for fixed `v`:
/// `slope = v^2 - a2 v + a4`, `intercept = a3 v - a1 v^2`.
pub fn tangent_residual_affine(coeffs: &[Rational; 4], v: &Rational) -> (Rational, Rational) {
    let [a1, a2, a3, a4] = coeffs;
    (v * v - a2 * v + a4, a3 * v - a1 * v * v)
}

/// `u v^2 - a1 v^2 - a2 u v + a3 v + a4 u`, zero exactly when the line
/// `x/u + y/v = 1` touches the ellipse of `a`.
///
/// The residual is affine in the coefficients of `a`, so a line tangent to
/// the ellipses of two quartics is tangent to the ellipse of every convex
/// combination of them.
pub fn tangent_residual(a: &Polynomial, u: &Rational, v: &Rational) -> Result<Rational> {
    if u.is_zero() {
        return Err(SprError::InvalidInput(
            "tangent line intercept u must be nonzero".into(),
        ));
    }
    let coeffs = quartic_coeffs(a)?;
    let (slope, intercept) = tangent_residual_affine(&coeffs, v);
    Ok(u * slope + intercept)
}
