//! Constructive synthesis of a fixed numerator `b~(s) = r s^4 + s^3 + x s^2 + y s + eps`
//! that is strictly positive real against every member of a fourth-order
//! interval family or polynomial segment.
//!
//! Pipeline: a point `(x, y)` in every vertex region `Omega^a`, then the
//! largest admissible `eps` for the cubic `s^3 + x s^2 + y s + eps`, then the
//! largest admissible weight `r` of `s^4`. Each admissible set is an interval
//! starting at zero because the real-part numerator is affine in `eps` and in
//! `r`, so both maxima are found by bisection with exact verdicts per probe.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Result, SprError};
use crate::families::{
    quartic_coeffs, require_robustly_stable, segment_stable, IntervalQuartic, Segment,
};
use crate::par::{self, ExecMode};
use crate::poly::{hurwitz_stable, positive_on_nonneg, real_part_numerator, Polynomial};
use crate::rational::{self, Rational};
use crate::regions::{Conic, Point2, RegionBundle};
use crate::sprcheck::{re_positive, vertex_certificate, SprVerdict};

/// Relative bisection tolerance `2^-20` for the `eps` and `r` maxima.
pub fn bisection_tolerance() -> Rational {
    Rational::new(1.into(), (1u64 << 20).into())
}

const MAX_BISECTION_STEPS: usize = 400;
const MAX_BRACKET_DOUBLINGS: usize = 200;
const MAX_DELTA_HALVINGS: usize = 64;
const SEGMENT_LINE_SAMPLES: i64 = 32;
const SWEEP_SAMPLES: i64 = 512;

/// Fractions of the computed maxima actually used for `eps` and `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SynthesisOptions {
    pub epsilon_fraction: Rational,
    pub r_fraction: Rational,
}

impl Default for SynthesisOptions {
    fn default() -> Self {
        SynthesisOptions {
            epsilon_fraction: rational::ratio(1, 2),
            r_fraction: rational::ratio(1, 2),
        }
    }
}

impl SynthesisOptions {
    pub fn validate(&self) -> Result<()> {
        for (name, f) in [
            ("epsilon fraction", &self.epsilon_fraction),
            ("r fraction", &self.r_fraction),
        ] {
            if !f.is_positive() || f > &Rational::one() {
                return Err(SprError::InvalidInput(format!(
                    "{name} must lie in (0, 1], got {}",
                    rational::fraction_string(f)
                )));
            }
        }
        Ok(())
    }
}

/// Which rule produced the feasible point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Construction {
    /// Equal left tangent points: `(delta, a3/a1)` for a small `delta`.
    DegenerateDelta,
    /// Crossing of the open segments `(A13, B3)` and `(A24, B2)`.
    SegmentIntersection,
    /// The point `A3*` on `x = a1-`.
    VertexCandidate,
    /// Scan along `(A13, B3)` at golden-ratio spaced fractions.
    GoldenSweep,
    /// On the line joining the two ellipse centres.
    CenterLine,
    /// Minimax point of the two normalised ellipse forms.
    Minimax,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    Interval,
    Segment,
}

/// A complete certificate: the numerator, how it was built and the exact
/// per-denominator verdicts that back it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SynthesisResult {
    pub family: FamilyKind,
    pub construction: Construction,
    pub point: Point2,
    #[serde(with = "crate::json::exact")]
    pub epsilon: Rational,
    #[serde(with = "crate::json::exact")]
    pub epsilon_max: Rational,
    #[serde(with = "crate::json::exact")]
    pub r: Rational,
    #[serde(with = "crate::json::exact")]
    pub r_max: Rational,
    /// `s^3 + x s^2 + y s + eps`.
    #[serde(with = "crate::json::poly")]
    pub cubic: Polynomial,
    /// `r s^4 + s^3 + x s^2 + y s + eps`.
    #[serde(with = "crate::json::poly")]
    pub numerator: Polynomial,
    #[serde(with = "crate::json::poly_vec")]
    pub vertices: Vec<Polynomial>,
    pub verdicts: Vec<SprVerdict>,
}

impl SynthesisResult {
    /// Re-runs the SPR test on every stored denominator and checks the
    /// structural invariants of the certificate.
    pub fn reverify(&self) -> Result<bool> {
        let structure = self.epsilon.is_positive()
            && self.epsilon <= self.epsilon_max
            && self.r.is_positive()
            && self.r <= self.r_max
            && self.numerator.degree() == Some(4)
            && self.numerator.coeff(4) == self.r
            && self.numerator.coeff(3).is_one()
            && self.verdicts.len() == self.vertices.len()
            && self.verdicts.iter().all(|v| v.is_spr);
        Ok(structure && vertex_certificate(&self.numerator, &self.vertices)?.family_spr)
    }
}

/// `s^3 + x s^2 + y s + eps`.
pub fn cubic_for(point: &Point2, epsilon: &Rational) -> Polynomial {
    Polynomial::new(vec![
        epsilon.clone(),
        point.y.clone(),
        point.x.clone(),
        Rational::one(),
    ])
}

fn bundles(denominators: &[Polynomial]) -> Result<Vec<RegionBundle>> {
    if denominators.is_empty() {
        return Err(SprError::InvalidInput("no denominators given".into()));
    }
    denominators.iter().map(RegionBundle::new).collect()
}

fn in_all(bundles: &[RegionBundle], p: &Point2) -> bool {
    bundles.iter().all(|b| b.in_omega(p))
}

/// Bounds `(a1-, a1+, a2-, a2+, a3-, a3+, a4-, a4+)` read back from vertices
/// in canonical order.
fn bounds_from_vertices(vertices: &[Polynomial; 4]) -> Result<[[Rational; 2]; 4]> {
    let c: Vec<[Rational; 4]> = vertices.iter().map(quartic_coeffs).collect::<Result<_>>()?;
    let bounds = [
        [c[1][0].clone(), c[0][0].clone()],
        [c[1][1].clone(), c[0][1].clone()],
        [c[0][2].clone(), c[1][2].clone()],
        [c[0][3].clone(), c[1][3].clone()],
    ];
    let k = IntervalQuartic::new(
        std::array::from_fn(|i| bounds[i][0].clone()),
        std::array::from_fn(|i| bounds[i][1].clone()),
    )
    .map_err(|e| {
        SprError::Precondition(format!("vertices do not describe an interval family: {e}"))
    })?;
    if crate::families::kharitonov_vertices(&k) != *vertices {
        return Err(SprError::Precondition(
            "vertices are not the Kharitonov vertices of one interval family in canonical order"
                .into(),
        ));
    }
    Ok(bounds)
}

/// A point in `Omega^{a_i}` for all four Kharitonov vertices.
///
/// Tries, in order: the degenerate `(delta, a3/a1)` rule when both left
/// tangent points coincide, the crossing of `(A13, B3)` and `(A24, B2)`, the
/// point `A3*`, and finally a golden-ratio sweep along `(A13, B3)`. Every
/// candidate is checked for membership before it is returned.
pub fn feasible_point_interval(vertices: &[Polynomial; 4]) -> Result<(Point2, Construction)> {
    let bounds = bounds_from_vertices(vertices)?;
    let stable = vertices
        .iter()
        .map(hurwitz_stable)
        .collect::<Result<Vec<_>>>()?;
    if let Some(i) = stable.iter().position(|ok| !ok) {
        return Err(SprError::NotRobustlyStable {
            vertex: crate::families::VERTEX_NAMES[i].to_string(),
            polynomial: vertices[i].to_string(),
        });
    }
    let regions = bundles(vertices)?;
    let [[a1m, a1p], [a2m, _], [a3m, a3p], _] = &bounds;

    let upper_tangent = a3p / a1m;
    let lower_tangent = a3m / a1p;
    if upper_tangent == lower_tangent {
        let two = rational::int(2);
        let mut delta = a1m / &two;
        for _ in 0..MAX_DELTA_HALVINGS {
            let p = Point2::new(delta.clone(), upper_tangent.clone());
            if in_all(&regions, &p) {
                return Ok((p, Construction::DegenerateDelta));
            }
            delta /= &two;
        }
        return Err(SprError::InternalContradiction(
            "no small delta put (delta, a3/a1) inside every region".into(),
        ));
    }

    let [(a13, b3), (a24, b2)] = construction_segments(vertices)?;
    if let Some(p) = open_segment_crossing(&a13, &b3, &a24, &b2) {
        if in_all(&regions, &p) {
            return Ok((p, Construction::SegmentIntersection));
        }
    }

    let star = Point2::new(
        a1m.clone(),
        (a2m / a1p - rational::int(2) * a3m / (a1p * a1p)) * a1m + a3m / a1p,
    );
    if in_all(&regions, &star) {
        return Ok((star, Construction::VertexCandidate));
    }

    // frac(k * 987/1597): a rational stand-in for the golden ratio sequence
    let step = rational::ratio(987, 1597);
    for k in 1..=SWEEP_SAMPLES {
        let f = &step * rational::int(k);
        let f = &f - f.floor();
        if f.is_zero() {
            continue;
        }
        let p = a13.lerp(&b3, &f);
        if in_all(&regions, &p) {
            return Ok((p, Construction::GoldenSweep));
        }
    }
    Err(SprError::InternalContradiction(
        "no candidate point lies in all four regions".into(),
    ))
}

/// The segments `(A13, B3)` and `(A24, B2)` whose crossing is the preferred
/// feasible point, with `A13 = (0, a3-/a1+)`, `B3 = (a1+, a1+ a4+/a3-)`,
/// `A24 = (0, a3+/a1-)` and `B2 = (a1-, a1- a4+/a3+)`.
pub fn construction_segments(vertices: &[Polynomial; 4]) -> Result<[(Point2, Point2); 2]> {
    let [[a1m, a1p], _, [a3m, a3p], [_, a4p]] = bounds_from_vertices(vertices)?;
    let zero = Rational::zero();
    Ok([
        (
            Point2::new(zero.clone(), &a3m / &a1p),
            Point2::new(a1p.clone(), &a1p * &a4p / &a3m),
        ),
        (
            Point2::new(zero, &a3p / &a1m),
            Point2::new(a1m.clone(), &a1m * &a4p / &a3p),
        ),
    ])
}

/// Crossing point of the open segments `(p0, p1)` and `(q0, q1)`.
fn open_segment_crossing(p0: &Point2, p1: &Point2, q0: &Point2, q1: &Point2) -> Option<Point2> {
    let (dx1, dy1) = (&p1.x - &p0.x, &p1.y - &p0.y);
    let (dx2, dy2) = (&q1.x - &q0.x, &q1.y - &q0.y);
    let det = &dx2 * &dy1 - &dx1 * &dy2;
    if det.is_zero() {
        return None;
    }
    let (rx, ry) = (&q0.x - &p0.x, &q0.y - &p0.y);
    let s = (&dx2 * &ry - &rx * &dy2) / &det;
    let u = (&dx1 * &ry - &rx * &dy1) / &det;
    let inside = |v: &Rational| v.is_positive() && v < &Rational::one();
    (inside(&s) && inside(&u)).then(|| p0.lerp(p1, &s))
}

fn scaled(conic: &Conic, k: &Rational) -> Conic {
    Conic {
        a: &conic.a * k,
        b: &conic.b * k,
        c: &conic.c * k,
        d: &conic.d * k,
        e: &conic.e * k,
        f: &conic.f * k,
    }
}

fn combine(f: &Conic, g: &Conic, mu: &Rational) -> Conic {
    let nu = Rational::one() - mu;
    let mix = |x: &Rational, y: &Rational| mu * x + &nu * y;
    Conic {
        a: mix(&f.a, &g.a),
        b: mix(&f.b, &g.b),
        c: mix(&f.c, &g.c),
        d: mix(&f.d, &g.d),
        e: mix(&f.e, &g.e),
        f: mix(&f.f, &g.f),
    }
}

/// A point inside both ellipses `Omega_e^a` and `Omega_e^b` of a stable segment.
///
/// Checks the midpoint of the two ellipse centres, 32 further points on the
/// line joining them and the centres themselves. Failing that, it bisects
/// exactly on the weight `mu` of `mu*f + (1-mu)*g`, where `f` and `g` are the
/// two conic forms normalised to `-1` at their centres; the minimiser of the
/// mixture moves monotonically towards the minimax point of `max(f, g)`.
pub fn feasible_point_segment(a: &Polynomial, b: &Polynomial) -> Result<(Point2, Construction)> {
    let seg = Segment::new(a.clone(), b.clone())?;
    if seg.degree() != 4 {
        return Err(SprError::InvalidInput(
            "segment synthesis needs fourth-order endpoints".into(),
        ));
    }
    if !segment_stable(&seg)? {
        return Err(SprError::Precondition(format!(
            "segment from {a} to {b} is not Hurwitz stable"
        )));
    }
    let ra = RegionBundle::new(a)?;
    let rb = RegionBundle::new(b)?;
    let inside = |p: &Point2| ra.in_omega_e(p) && rb.in_omega_e(p);
    let ca = ra.conic().center().expect("ellipse has a center");
    let cb = rb.conic().center().expect("ellipse has a center");

    let n = SEGMENT_LINE_SAMPLES + 1;
    let mut candidates = vec![ca.lerp(&cb, &rational::ratio(1, 2))];
    candidates.extend((1..n).map(|k| ca.lerp(&cb, &rational::ratio(k, n))));
    candidates.push(ca.clone());
    candidates.push(cb.clone());
    if let Some(p) = candidates.into_iter().find(|p| inside(p)) {
        return Ok((p, Construction::CenterLine));
    }

    let f = scaled(ra.conic(), &(Rational::one() / -ra.conic().eval(&ca)));
    let g = scaled(rb.conic(), &(Rational::one() / -rb.conic().eval(&cb)));
    // derivative of the concave dual f(p_mu) - g(p_mu) decreases in mu
    let minimiser = |mu: &Rational| combine(&f, &g, mu).center().expect("positive definite mix");
    let (mut lo, mut hi) = (Rational::zero(), Rational::one());
    for _ in 0..MAX_BISECTION_STEPS {
        let mu = (&lo + &hi) / rational::int(2);
        let p = minimiser(&mu);
        if inside(&p) {
            return Ok((p, Construction::Minimax));
        }
        let slope = f.eval(&p) - g.eval(&p);
        if slope.is_zero() {
            break;
        }
        if slope.is_positive() {
            lo = mu;
        } else {
            hi = mu;
        }
    }
    Err(SprError::InternalContradiction(format!(
        "ellipse interiors of {a} and {b} appear disjoint"
    )))
}

/// Bisection for the supremum of `{v > 0 : accept(v)}`, known to be an
/// interval `(0, v*)`. Starts from `start`, doubles until rejection, then
/// halves the bracket until it is within the relative tolerance.
fn interval_supremum(
    start: Rational,
    what: &str,
    accept: impl Fn(&Rational) -> Result<bool>,
) -> Result<Rational> {
    let two = rational::int(2);
    let mut hi = start;
    let mut lo = Rational::zero();
    let mut doublings = 0;
    while accept(&hi)? {
        lo = hi.clone();
        hi *= &two;
        doublings += 1;
        if doublings > MAX_BRACKET_DOUBLINGS {
            return Err(SprError::InternalContradiction(format!(
                "{what} admissible set appears unbounded"
            )));
        }
    }
    let tol = bisection_tolerance();
    for _ in 0..MAX_BISECTION_STEPS {
        if lo.is_positive() && &hi - &lo <= &lo * &tol {
            return Ok(lo);
        }
        let mid = (&lo + &hi) / &two;
        if accept(&mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(SprError::InternalContradiction(format!(
        "{what} bisection found no admissible positive value"
    )))
}

/// Largest `eps*` (relative tolerance `2^-20`) such that
/// `s^3 + x s^2 + y s + eps` has positive real part against every denominator
/// for all `eps` in `(0, eps*]`.
pub fn epsilon_max(point: &Point2, denominators: &[Polynomial]) -> Result<Rational> {
    let regions = bundles(denominators)?;
    if let Some(r) = regions.iter().find(|r| !r.in_omega(point)) {
        return Err(SprError::Precondition(format!(
            "point {point} is outside the feasibility region of {}",
            r.source()
        )));
    }
    let a4_max = regions
        .iter()
        .map(|r| r.coeffs()[3].clone())
        .max()
        .expect("nonempty");
    // N(t; eps) = N_0(t) + eps * N_1(t)
    let parts = denominators
        .iter()
        .map(|a| {
            let base = real_part_numerator(&cubic_for(point, &Rational::zero()), a)?.into_poly();
            let slope = real_part_numerator(&Polynomial::one(), a)?.into_poly();
            Ok((base, slope))
        })
        .collect::<Result<Vec<_>>>()?;
    interval_supremum(Rational::one() + a4_max, "epsilon", |eps| {
        affine_positive(&parts, eps)
    })
}

/// `base + v * slope > 0` on `t >= 0` for every pair.
fn affine_positive(parts: &[(Polynomial, Polynomial)], v: &Rational) -> Result<bool> {
    let verdicts = par::map(parts, |(base, slope)| {
        positive_on_nonneg(&(base + &slope.scale(v)))
    });
    Ok(verdicts
        .into_iter()
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .all(|ok| ok))
}

/// `b(s) + r s^4`.
pub fn with_quartic_term(b: &Polynomial, r: &Rational) -> Polynomial {
    b + &Polynomial::monomial(r.clone(), 4)
}

/// Largest `r*` (relative tolerance `2^-20`) such that `b + r s^4` is SPR
/// against every denominator for all `r` in `(0, r*]`.
pub fn r_max(b: &Polynomial, denominators: &[Polynomial]) -> Result<Rational> {
    if denominators.is_empty() {
        return Err(SprError::InvalidInput("no denominators given".into()));
    }
    if denominators.iter().any(|a| a.degree() != Some(4)) {
        return Err(SprError::InvalidInput(
            "denominators must be quartics".into(),
        ));
    }
    if b.is_zero() || b.degree() >= Some(4) {
        return Err(SprError::Precondition(format!(
            "{b} must have degree below four"
        )));
    }
    for a in denominators {
        if !re_positive(b, a)? {
            return Err(SprError::Precondition(format!(
                "Re[b/a] is not positive for b = {b}, a = {a}"
            )));
        }
    }
    // denominators are Hurwitz and b~ is biproper, so SPR reduces to
    // N(t; r) = N_b(t) + r * N_{s^4}(t) > 0
    let parts = denominators
        .iter()
        .map(|a| {
            let base = real_part_numerator(b, a)?.into_poly();
            let slope =
                real_part_numerator(&Polynomial::monomial(Rational::one(), 4), a)?.into_poly();
            Ok((base, slope))
        })
        .collect::<Result<Vec<_>>>()?;
    interval_supremum(Rational::one(), "r", |r| affine_positive(&parts, r))
}

fn finish(
    family: FamilyKind,
    construction: Construction,
    point: Point2,
    vertices: Vec<Polynomial>,
    options: &SynthesisOptions,
) -> Result<SynthesisResult> {
    let eps_max = epsilon_max(&point, &vertices)?;
    let epsilon = &eps_max * &options.epsilon_fraction;
    let cubic = cubic_for(&point, &epsilon);
    let r_sup = r_max(&cubic, &vertices)?;
    let r = &r_sup * &options.r_fraction;
    let numerator = with_quartic_term(&cubic, &r);
    let cert = vertex_certificate(&numerator, &vertices)?;
    if !cert.family_spr {
        return Err(SprError::InternalContradiction(format!(
            "synthesized numerator {numerator} failed its own verification"
        )));
    }
    Ok(SynthesisResult {
        family,
        construction,
        point,
        epsilon,
        epsilon_max: eps_max,
        r,
        r_max: r_sup,
        cubic,
        numerator,
        vertices,
        verdicts: cert.verdicts,
    })
}

/// Fixed numerator that is SPR against every member of the interval family.
pub fn synthesize_interval(
    k: &IntervalQuartic,
    options: &SynthesisOptions,
) -> Result<SynthesisResult> {
    options.validate()?;
    let vertices = require_robustly_stable(k)?;
    let (point, construction) = feasible_point_interval(&vertices)?;
    finish(
        FamilyKind::Interval,
        construction,
        point,
        vertices.to_vec(),
        options,
    )
}

/// Fixed numerator that is SPR against every polynomial on the segment.
pub fn synthesize_segment(seg: &Segment, options: &SynthesisOptions) -> Result<SynthesisResult> {
    options.validate()?;
    let (point, construction) = feasible_point_segment(seg.end_a(), seg.end_b())?;
    finish(
        FamilyKind::Segment,
        construction,
        point,
        vec![seg.end_a().clone(), seg.end_b().clone()],
        options,
    )
}

/// Runs [`synthesize_interval`] over many families.
pub fn synthesize_batch(
    families: &[IntervalQuartic],
    options: &SynthesisOptions,
    mode: ExecMode,
) -> Vec<Result<SynthesisResult>> {
    par::map_with(mode, families, |k| synthesize_interval(k, options))
}
