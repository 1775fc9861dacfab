//! Counted property checks. Each returns a [`Tally`] so the acceptance runner
//! can print one line per criterion and the property tests can assert on it.

use nalgebra::{Complex, DMatrix};
use num_traits::{Signed, Zero};
use rand::Rng;
use sprsynth::families::{kharitonov_vertices, segment_stable, IntervalQuartic, Segment};
use sprsynth::poly::{hurwitz_stable, positive_on_nonneg, real_part_numerator};
use sprsynth::rational::{int, ratio};
use sprsynth::regions::{in_omega, in_omega_quadratic, Point2};
use sprsynth::sprcheck::is_spr;
use sprsynth::synth::{
    cubic_for, epsilon_max, feasible_point_interval, r_max, synthesize_interval, with_quartic_term,
    SynthesisOptions, SynthesisResult,
};
use sprsynth::{Polynomial, Rational, SprError};

use super::{decimal, fraction, point_near_regions, robust_family, stable_quartic};

#[derive(Clone, Debug, Default)]
pub struct Tally {
    pub cases: usize,
    pub violations: usize,
    pub notes: Vec<String>,
}

impl Tally {
    pub fn ok(&self) -> bool {
        self.violations == 0 && self.cases > 0
    }

    fn fail(&mut self, what: String) {
        self.violations += 1;
        if self.notes.len() < 5 {
            self.notes.push(what);
        }
    }
}

/// Random polynomial of degree 1..=6 with coefficients in `[1, 100]`.
pub fn random_positive_poly(rng: &mut impl Rng) -> Polynomial {
    let degree = rng.gen_range(1..=6);
    Polynomial::new((0..=degree).map(|_| decimal(rng, 1, 100)).collect())
}

/// Largest real part over the companion-matrix eigenvalues.
pub fn max_real_part(p: &Polynomial) -> f64 {
    let c = p.to_f64_vec();
    let n = c.len() - 1;
    let lead = c[n];
    let m = DMatrix::from_fn(n, n, |i, j| {
        if j == n - 1 {
            -c[i] / lead
        } else if i == j + 1 {
            1.0
        } else {
            0.0
        }
    });
    m.complex_eigenvalues()
        .iter()
        .map(|z: &Complex<f64>| z.re)
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Routh verdict against eigenvalues of the companion matrix.
pub fn routh_vs_eigen(seed: u64, cases: usize) -> Tally {
    let mut rng = super::rng(seed);
    let mut tally = Tally::default();
    let mut near_margin = 0;
    for _ in 0..cases {
        let p = random_positive_poly(&mut rng);
        let exact = hurwitz_stable(&p).unwrap();
        let re = max_real_part(&p);
        tally.cases += 1;
        if re.abs() < 1e-6 {
            near_margin += 1;
            continue;
        }
        if exact != (re < -1e-9) {
            tally.fail(format!("{p}: routh {exact}, max Re {re:e}"));
        }
    }
    tally
        .notes
        .push(format!("{near_margin} cases inside the 1e-6 margin"));
    tally
}

/// Input for the positivity oracle: a real-part numerator or a random
/// polynomial with positive constant term.
fn positivity_input(rng: &mut impl Rng, k: usize) -> Polynomial {
    if k.is_multiple_of(2) {
        let p = Polynomial::new(vec![
            decimal(rng, 0, 20),
            decimal(rng, 0, 100),
            decimal(rng, 0, 100),
            int(1),
        ]);
        let p = if p.coeff(0).is_zero() {
            &p + &Polynomial::one()
        } else {
            p
        };
        real_part_numerator(&p, &stable_quartic(rng))
            .unwrap()
            .into_poly()
    } else {
        let degree = rng.gen_range(1..=6);
        let mut c: Vec<Rational> = (0..=degree).map(|_| decimal(rng, -100, 100)).collect();
        c[0] = decimal(rng, 1, 100);
        c[degree] = c[degree].abs() + int(1);
        Polynomial::new(c)
    }
}

/// Sturm positivity on `[0, inf)` against a 10^5-point grid over `[0, 1e6]`.
/// Sturm-true must imply grid-true; grid-true with Sturm-false is allowed.
pub fn sturm_vs_grid(seed: u64, cases: usize) -> Tally {
    let mut rng = super::rng(seed);
    let mut tally = Tally::default();
    let mut grid_missed = 0;
    for k in 0..cases {
        let n = positivity_input(&mut rng, k);
        let exact = positive_on_nonneg(&n).unwrap();
        let c = n.to_f64_vec();
        let grid_negative = (0..100_000).find_map(|i| {
            let t = 10.0 * i as f64;
            let v = c.iter().rev().fold(0.0, |acc, a| acc * t + a);
            // confirm float alarms exactly before counting them
            (v <= 0.0 && !n.eval(&int(10 * i as i64)).is_positive()).then_some(t)
        });
        tally.cases += 1;
        match (exact, grid_negative) {
            (true, Some(t)) => tally.fail(format!("{n}: Sturm positive but N({t}) <= 0")),
            (false, None) => grid_missed += 1,
            _ => {}
        }
    }
    tally.notes.push(format!(
        "{grid_missed} Sturm-negative inputs the grid could not see"
    ));
    tally
}

/// `in_omega` against the quadratic positivity characterisation.
pub fn region_equivalence(seed: u64, cases: usize) -> Tally {
    let mut rng = super::rng(seed);
    let mut tally = Tally::default();
    let mut inside = 0;
    for _ in 0..cases {
        let a = stable_quartic(&mut rng);
        let c = sprsynth::families::quartic_coeffs(&a).unwrap();
        let p = Point2::new(&c[0] * fraction(&mut rng), &c[1] * fraction(&mut rng));
        let lhs = in_omega(&a, &p).unwrap();
        let rhs = in_omega_quadratic(&a, &p).unwrap();
        tally.cases += 1;
        inside += usize::from(lhs);
        if lhs != rhs {
            tally.fail(format!("{a} at {p}: in_omega {lhs}, quadratic {rhs}"));
        }
    }
    tally
        .notes
        .push(format!("{inside} of {cases} points inside"));
    tally
}

/// `Omega^{a2} ⊂ Omega^{a4}` and `Omega^{a3} ⊂ Omega^{a1}` on sampled points.
pub fn vertex_region_inclusions(seed: u64, families: usize, points: usize) -> Tally {
    let mut rng = super::rng(seed);
    let mut tally = Tally::default();
    let mut premises = 0;
    for _ in 0..families {
        let k = robust_family(&mut rng);
        let v = kharitonov_vertices(&k);
        for i in 0..points {
            let p = point_near_regions(&mut rng, &v[i % 4]);
            for (sub, sup) in [(1, 3), (2, 0)] {
                if in_omega(&v[sub], &p).unwrap() {
                    premises += 1;
                    if !in_omega(&v[sup], &p).unwrap() {
                        tally.fail(format!(
                            "{p} in region of a{} but not of a{}",
                            sub + 1,
                            sup + 1
                        ));
                    }
                }
            }
            tally.cases += 1;
        }
    }
    tally
        .notes
        .push(format!("{premises} inclusion premises held"));
    tally
}

/// Half and quarter of each computed maximum must still verify.
pub fn downward_closure(res: &SynthesisResult) -> std::result::Result<(), String> {
    let v = &res.vertices;
    for k in [2, 4] {
        let eps = &res.epsilon_max / int(k);
        let cubic = cubic_for(&res.point, &eps);
        for a in v {
            let n = real_part_numerator(&cubic, a).unwrap();
            if !positive_on_nonneg(n.poly()).unwrap() {
                return Err(format!("eps*/{k} fails against {a}"));
            }
        }
        let r = &res.r_max / int(k);
        let num = with_quartic_term(&res.cubic, &r);
        for a in v {
            if !is_spr(&num, a).unwrap().is_spr {
                return Err(format!("r*/{k} fails against {a}"));
            }
        }
    }
    Ok(())
}

/// End-to-end synthesis over random families. Returns the synthesis tally
/// and the downward-closure tally over the same results.
pub fn random_synthesis(seed: u64, families: usize) -> (Tally, Tally, Vec<SynthesisResult>) {
    let mut rng = super::rng(seed);
    let ks: Vec<IntervalQuartic> = (0..families).map(|_| robust_family(&mut rng)).collect();
    let outcomes = sprsynth::par::map(&ks, |k| {
        synthesize_interval(k, &SynthesisOptions::default())
    });
    let mut synth = Tally::default();
    let mut closure = Tally::default();
    let mut results = Vec::new();
    let mut internal = 0;
    for (k, out) in ks.iter().zip(outcomes) {
        synth.cases += 1;
        match out {
            Ok(res) => {
                if !res.reverify().unwrap() {
                    synth.fail(format!("{k:?}: certificate does not re-verify"));
                }
                closure.cases += 1;
                if let Err(e) = downward_closure(&res) {
                    closure.fail(e);
                }
                results.push(res);
            }
            Err(e) => {
                if matches!(e, SprError::InternalContradiction(_)) {
                    internal += 1;
                }
                synth.fail(format!("{k:?}: {e}"));
            }
        }
    }
    synth
        .notes
        .push(format!("{internal} internal-contradiction errors"));
    (synth, closure, results)
}

/// Maxima recomputed from the stored point agree with the result.
pub fn maxima_consistent(res: &SynthesisResult) -> bool {
    epsilon_max(&res.point, &res.vertices).ok() == Some(res.epsilon_max.clone())
        && r_max(&res.cubic, &res.vertices).ok() == Some(res.r_max.clone())
}

/// Segment verdict against an exact Routh scan at 1000 grid values of lambda.
pub fn segment_vs_grid(seed: u64, cases: usize) -> Tally {
    let mut rng = super::rng(seed);
    let mut tally = Tally::default();
    let mut stable = 0;
    let mut grid_missed = 0;
    for _ in 0..cases {
        let seg = Segment::new(stable_quartic(&mut rng), stable_quartic(&mut rng)).unwrap();
        let verdict = segment_stable(&seg).unwrap();
        let grid = (0..1000).all(|k| hurwitz_stable(&seg.at(&ratio(k, 999))).unwrap());
        tally.cases += 1;
        stable += usize::from(verdict);
        match (verdict, grid) {
            (true, false) => tally.fail(format!("{seg:?}: verdict stable, grid unstable")),
            (false, true) => grid_missed += 1,
            _ => {}
        }
    }
    tally.notes.push(format!(
        "{stable} stable segments, {grid_missed} instabilities between grid points"
    ));
    tally
}

/// Float check of `N(w^2) = Re[p(jw) conj(q(jw))]` at random frequencies.
pub fn real_part_vs_complex(seed: u64, pairs: usize, freqs: usize) -> Tally {
    let mut rng = super::rng(seed);
    let mut tally = Tally::default();
    let eval = |p: &Polynomial, w: f64| {
        let z = Complex::new(0.0, w);
        p.to_f64_vec()
            .iter()
            .rev()
            .fold(Complex::new(0.0, 0.0), |acc, c| acc * z + c)
    };
    for _ in 0..pairs {
        let p = random_positive_poly(&mut rng);
        let q = random_positive_poly(&mut rng);
        let n = real_part_numerator(&p, &q).unwrap();
        for _ in 0..freqs {
            let w: f64 = 10f64.powf(rng.gen_range(-2.0..2.0));
            let (pv, qv) = (eval(&p, w), eval(&q, w));
            let expected = (pv / qv).re * qv.norm_sqr();
            let direct = (pv * qv.conj()).re;
            let got = n.poly().eval_f64(w * w);
            let scale = pv.norm() * qv.norm();
            tally.cases += 1;
            if (got - expected).abs() > 1e-9 * scale.max(1.0)
                || (got - direct).abs() > 1e-9 * scale.max(1.0)
            {
                tally.fail(format!("{p} / {q} at w = {w}: {got} vs {expected}"));
            }
        }
    }
    tally
}

pub fn feasible_points(seed: u64, families: usize) -> Tally {
    let mut rng = super::rng(seed);
    let mut tally = Tally::default();
    for _ in 0..families {
        let v = kharitonov_vertices(&robust_family(&mut rng));
        tally.cases += 1;
        match feasible_point_interval(&v) {
            Ok((p, _)) if v.iter().all(|a| in_omega(a, &p).unwrap()) => {}
            Ok((p, _)) => tally.fail(format!("{p} outside some region")),
            Err(e) => tally.fail(e.to_string()),
        }
    }
    tally
}
