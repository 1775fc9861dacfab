//! Seeded generators shared by the property and acceptance suites.
#![allow(dead_code)]

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sprsynth::families::{interval_robustly_stable, segment_stable, IntervalQuartic, Segment};
use sprsynth::poly::hurwitz_stable;
use sprsynth::rational::ratio;
use sprsynth::regions::Point2;
use sprsynth::{Polynomial, Rational};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform on `[lo, hi]` with two decimal places.
pub fn decimal(rng: &mut impl Rng, lo: i64, hi: i64) -> Rational {
    ratio(rng.gen_range(lo * 100..=hi * 100), 100)
}

/// Fraction in `[0, 1]` with denominator 1000.
pub fn fraction(rng: &mut impl Rng) -> Rational {
    ratio(rng.gen_range(0..=1000), 1000)
}

pub fn monic(coeffs: [Rational; 4]) -> Polynomial {
    sprsynth::families::monic_quartic(&coeffs)
}

/// Monic Hurwitz quartic with coefficients in `[1, 100]`.
pub fn stable_quartic(rng: &mut impl Rng) -> Polynomial {
    loop {
        let p = monic(std::array::from_fn(|_| decimal(rng, 1, 100)));
        if hurwitz_stable(&p).unwrap() {
            return p;
        }
    }
}

/// Robustly stable interval family with bounds in `[1, 100]`.
pub fn robust_family(rng: &mut impl Rng) -> IntervalQuartic {
    loop {
        let centre = stable_quartic(rng);
        let c = sprsynth::families::quartic_coeffs(&centre).unwrap();
        let spread = ratio(rng.gen_range(0..=40), 100);
        let one = Rational::from_integer(1.into());
        let hundred = Rational::from_integer(100.into());
        let lower: [Rational; 4] = std::array::from_fn(|i| {
            let w = &c[i] * &spread * fraction(rng);
            (&c[i] - w).max(one.clone())
        });
        let upper: [Rational; 4] = std::array::from_fn(|i| {
            let w = &c[i] * &spread * fraction(rng);
            (&c[i] + w).min(hundred.clone())
        });
        let k = IntervalQuartic::new(lower, upper).unwrap();
        if interval_robustly_stable(&k) {
            return k;
        }
    }
}

/// Segment between two stable quartics that is stable throughout.
pub fn stable_segment(rng: &mut impl Rng) -> Segment {
    loop {
        let seg = Segment::new(stable_quartic(rng), stable_quartic(rng)).unwrap();
        if segment_stable(&seg).unwrap() {
            return seg;
        }
    }
}

/// Point in the box `[0, 2 a1] x [0, 2 a3/a1 + a1 a4/a3]` around the regions of `a`.
pub fn point_near_regions(rng: &mut impl Rng, a: &Polynomial) -> Point2 {
    let c = sprsynth::families::quartic_coeffs(a).unwrap();
    let xmax = &c[0] * Rational::from_integer(2.into());
    let ymax = &c[2] / &c[0] * Rational::from_integer(2.into()) + &c[0] * &c[3] / &c[2];
    Point2::new(&xmax * fraction(rng), &ymax * fraction(rng))
}

pub mod checks;
