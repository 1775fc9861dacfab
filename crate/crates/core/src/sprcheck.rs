//! Strict positive realness verdicts, vertex certificates and the
//! frequency-sampled LP probe for polytopic families.

use std::fmt;

use minilp::{ComparisonOp, OptimizationDirection, Problem};
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Result, SprError};
use crate::par;
use crate::poly::{
    hurwitz_stable, nonneg_positivity_witness, positive_on_nonneg, real_part_numerator, Polynomial,
};
use crate::rational::{self, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SprReason {
    Ok,
    NotBiproper,
    DenominatorNotHurwitz,
    RealPartNonpositive,
}

impl fmt::Display for SprReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SprReason::Ok => "ok",
            SprReason::NotBiproper => "not-biproper",
            SprReason::DenominatorNotHurwitz => "denominator-not-hurwitz",
            SprReason::RealPartNonpositive => "real-part-nonpositive",
        })
    }
}

/// Outcome of [`is_spr`]. `witness_t` is a `t = w^2 >= 0` where the real part
/// numerator is not positive; it is set exactly when the reason is
/// [`SprReason::RealPartNonpositive`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SprVerdict {
    pub is_spr: bool,
    pub reason: SprReason,
    pub witness_t: Option<Rational>,
}

impl SprVerdict {
    fn fail(reason: SprReason) -> Self {
        SprVerdict {
            is_spr: false,
            reason,
            witness_t: None,
        }
    }

    fn ok() -> Self {
        SprVerdict {
            is_spr: true,
            reason: SprReason::Ok,
            witness_t: None,
        }
    }
}

impl Serialize for SprVerdict {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SprVerdict", 3)?;
        st.serialize_field("is_spr", &self.is_spr)?;
        st.serialize_field("reason", &self.reason)?;
        st.serialize_field(
            "witness_t",
            &self.witness_t.as_ref().map(rational::fraction_string),
        )?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for SprVerdict {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            is_spr: bool,
            reason: SprReason,
            witness_t: Option<String>,
        }
        let raw = Raw::deserialize(d)?;
        let witness_t = raw
            .witness_t
            .map(|w| rational::parse_rational(&w))
            .transpose()
            .map_err(serde::de::Error::custom)?;
        Ok(SprVerdict {
            is_spr: raw.is_spr,
            reason: raw.reason,
            witness_t,
        })
    }
}

/// `p/q` is biproper, `q` is Hurwitz and `Re[p(jw)/q(jw)] > 0` for every real
/// `w`. The first violated clause is reported.
pub fn is_spr(p: &Polynomial, q: &Polynomial) -> Result<SprVerdict> {
    if p.is_zero() || q.is_zero() {
        return Err(SprError::InvalidInput(
            "SPR test needs nonzero polynomials".into(),
        ));
    }
    if p.degree() != q.degree() {
        return Ok(SprVerdict::fail(SprReason::NotBiproper));
    }
    // a constant denominator has no poles at all
    if q.degree() != Some(0) && !hurwitz_stable(q)? {
        return Ok(SprVerdict::fail(SprReason::DenominatorNotHurwitz));
    }
    let n = real_part_numerator(p, q)?;
    match nonneg_positivity_witness(n.poly())? {
        None => Ok(SprVerdict::ok()),
        Some(t) => Ok(SprVerdict {
            is_spr: false,
            reason: SprReason::RealPartNonpositive,
            witness_t: Some(t),
        }),
    }
}

/// `Re[p(jw)/q(jw)] > 0` for every real `w`, for proper `p/q` with `q` Hurwitz.
pub fn re_positive(p: &Polynomial, q: &Polynomial) -> Result<bool> {
    if p.is_zero() || q.is_zero() {
        return Err(SprError::InvalidInput(
            "real-part test needs nonzero polynomials".into(),
        ));
    }
    if p.degree() > q.degree() {
        return Err(SprError::Precondition(format!("{p} / {q} is not proper")));
    }
    if q.degree() != Some(0) && !hurwitz_stable(q)? {
        return Err(SprError::Precondition(format!(
            "denominator {q} is not Hurwitz"
        )));
    }
    positive_on_nonneg(real_part_numerator(p, q)?.poly())
}

/// Per-vertex verdicts for a fixed numerator. The family verdict covers the
/// convex hull of the vertices because the real-part numerator is affine in
/// the denominator coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyCertificate {
    pub verdicts: Vec<SprVerdict>,
    pub family_spr: bool,
}

pub fn vertex_certificate(b: &Polynomial, vertices: &[Polynomial]) -> Result<FamilyCertificate> {
    let Some(first) = vertices.first() else {
        return Err(SprError::InvalidInput("vertex list is empty".into()));
    };
    if vertices.iter().any(|v| v.degree() != first.degree()) {
        return Err(SprError::InvalidInput(
            "vertices must share one degree".into(),
        ));
    }
    let verdicts = par::map(vertices, |v| is_spr(b, v))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let family_spr = verdicts.iter().all(|v| v.is_spr);
    Ok(FamilyCertificate {
        verdicts,
        family_spr,
    })
}

/// Margin on each normalised LP row below which the sampled system counts as
/// infeasible.
pub const LP_MARGIN: f64 = 1e-6;

/// Result of [`lp_probe`].
#[derive(Clone, Debug, PartialEq)]
pub enum ProbeOutcome {
    /// The LP found a numerator and it passed exact verification.
    Feasible { candidate: Polynomial, margin: f64 },
    /// The LP found a numerator but exact verification rejected it.
    InconclusiveFeasible { candidate: Polynomial, margin: f64 },
    /// Even the sampled constraints admit no numerator, so none exists.
    Infeasible { margin: f64, samples: usize },
}

impl ProbeOutcome {
    pub fn is_infeasible(&self) -> bool {
        matches!(self, ProbeOutcome::Infeasible { .. })
    }

    pub fn is_feasible(&self) -> bool {
        matches!(self, ProbeOutcome::Feasible { .. })
    }
}

/// `n` frequencies `10^(-3 + 6k/n)`, `k = 0..n`. Doubling `n` keeps every
/// earlier frequency, so refinement only adds constraints.
pub fn frequency_grid(samples: usize) -> Vec<f64> {
    (0..samples)
        .map(|k| 10f64.powf(-3.0 + 6.0 * k as f64 / samples as f64))
        .collect()
}

/// Looks for a numerator `c` of the given degree with
/// `Re[c(jw_k) conj(a_i(jw_k))] > 0` at sampled frequencies for every vertex.
///
/// Solves `max m` subject to `row_k . c >= m` for unit-norm rows and
/// `|c_j| <= 1`. An optimum below [`LP_MARGIN`] means the sampled relaxation
/// (hence the exact problem) is infeasible. Otherwise the candidate is
/// rounded to rationals and checked exactly.
pub fn lp_probe(
    vertices: &[Polynomial],
    numerator_degree: usize,
    frequency_samples: usize,
) -> Result<ProbeOutcome> {
    let Some(first) = vertices.first() else {
        return Err(SprError::InvalidInput("vertex list is empty".into()));
    };
    let degree = first.degree().unwrap_or(0);
    if vertices.iter().any(|v| v.degree() != Some(degree)) || degree == 0 {
        return Err(SprError::InvalidInput(
            "vertices must share one positive degree".into(),
        ));
    }
    if numerator_degree > degree {
        return Err(SprError::InvalidInput(format!(
            "numerator degree {numerator_degree} exceeds denominator degree {degree}"
        )));
    }
    if frequency_samples < numerator_degree + 1 {
        return Err(SprError::InvalidInput(format!(
            "{frequency_samples} frequency samples cannot constrain {} coefficients",
            numerator_degree + 1
        )));
    }
    for v in vertices {
        if !hurwitz_stable(v)? {
            return Err(SprError::Precondition(format!("vertex {v} is not Hurwitz")));
        }
    }

    // rows[m] for each (vertex, w): Re[(jw)^m conj(a(jw))] as a polynomial in t
    let basis: Vec<Vec<Polynomial>> = vertices
        .iter()
        .map(|v| {
            (0..=numerator_degree)
                .map(|m| {
                    real_part_numerator(&Polynomial::monomial(Rational::one(), m), v)
                        .map(|n| n.into_poly())
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let grid = frequency_grid(frequency_samples);
    let rows: Vec<Vec<f64>> = basis
        .iter()
        .flat_map(|per_vertex| {
            grid.iter().map(move |w| {
                let t = w * w;
                per_vertex
                    .iter()
                    .map(|p| p.eval_f64(t))
                    .collect::<Vec<f64>>()
            })
        })
        .filter_map(|row| {
            let norm = row.iter().map(|x| x * x).sum::<f64>().sqrt();
            (norm > 0.0 && norm.is_finite()).then(|| row.iter().map(|x| x / norm).collect())
        })
        .collect();

    let mut problem = Problem::new(OptimizationDirection::Maximize);
    let coeffs: Vec<_> = (0..=numerator_degree)
        .map(|_| problem.add_var(0.0, (-1.0, 1.0)))
        .collect();
    let margin_var = problem.add_var(1.0, (f64::NEG_INFINITY, 1.0));
    for row in &rows {
        let mut terms: Vec<(minilp::Variable, f64)> =
            coeffs.iter().copied().zip(row.iter().copied()).collect();
        terms.push((margin_var, -1.0));
        problem.add_constraint(terms.as_slice(), ComparisonOp::Ge, 0.0);
    }
    let solution = problem
        .solve()
        .map_err(|e| SprError::InternalContradiction(format!("LP solver failed: {e}")))?;
    let margin = solution.objective();
    if margin < LP_MARGIN {
        return Ok(ProbeOutcome::Infeasible {
            margin,
            samples: frequency_samples,
        });
    }

    let raw: Vec<f64> = coeffs.iter().map(|v| solution[*v]).collect();
    let scale = raw.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let candidate = Polynomial::new(
        raw.iter()
            .map(|x| rational::from_f64_rounded(x / scale, 12).unwrap_or_else(Rational::zero))
            .collect(),
    );
    let verified = !candidate.is_zero()
        && if candidate.degree() == Some(degree) {
            vertex_certificate(&candidate, vertices)?.family_spr
        } else {
            vertices
                .iter()
                .map(|v| re_positive(&candidate, v))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .all(|ok| ok)
        };
    Ok(if verified {
        ProbeOutcome::Feasible { candidate, margin }
    } else {
        ProbeOutcome::InconclusiveFeasible { candidate, margin }
    })
}

/// Convenience: verdict numerator `N(t)` of a failing verdict, for diagnostics.
pub fn witness_value(p: &Polynomial, q: &Polynomial, t: &Rational) -> Result<Rational> {
    Ok(real_part_numerator(p, q)?.eval(t))
}
