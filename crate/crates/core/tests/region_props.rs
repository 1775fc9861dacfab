mod common;

use common::checks;
use num_traits::{Signed, Zero};
use sprsynth::families::quartic_coeffs;
use sprsynth::rational::ratio;
use sprsynth::regions::{tangent_residual, tangent_residual_affine, RegionBundle};

#[test]
fn equivalence_on_another_seed() {
    let t = checks::region_equivalence(31, 500);
    assert!(t.ok(), "{t:?}");
}

#[test]
fn inclusions_on_another_seed() {
    let t = checks::vertex_region_inclusions(32, 20, 100);
    assert!(t.ok(), "{t:?}");
}

#[test]
fn tangent_points_are_exact() {
    let mut rng = common::rng(33);
    for _ in 0..100 {
        let a = common::stable_quartic(&mut rng);
        let r = RegionBundle::new(&a).unwrap();
        let [a1, _, a3, a4] = r.coeffs().clone();
        let [left, right, ray] = r.tangent_points();
        for p in [&left, &right, &ray] {
            assert!(r.conic().eval(p).is_zero(), "{a}: {p} off the conic");
        }
        assert!(left.x.is_zero());
        assert_eq!(right.x, a1);
        assert!((&a3 * &ray.y - &a4 * &ray.x).is_zero());
        // tangency: the gradient is normal to each line
        let (gx, gy) = r.conic().gradient(&left);
        assert!(gy.is_zero() && !gx.is_zero());
        let (gx, gy) = r.conic().gradient(&right);
        assert!(gy.is_zero() && !gx.is_zero());
        let (gx, gy) = r.conic().gradient(&ray);
        assert!((&gx * &a3 + &gy * &a4).is_zero());
        if !right.x.is_zero() {
            assert!(tangent_residual(&a, &right.x, &right.y).is_ok());
        }
    }
}

#[test]
fn ellipses_lie_in_the_first_quadrant() {
    let mut rng = common::rng(34);
    for _ in 0..100 {
        let a = common::stable_quartic(&mut rng);
        let r = RegionBundle::new(&a).unwrap();
        assert!(r.conic().discriminant().is_negative());
        for p in r.boundary_samples(64) {
            assert!(!p.x.is_negative() && p.y.is_positive(), "{a}: {p}");
            assert!(r.conic().eval(&p).is_zero());
        }
    }
}

#[test]
fn regions_are_midpoint_convex() {
    let mut rng = common::rng(35);
    let mut pairs = 0;
    while pairs < 100 {
        let a = common::stable_quartic(&mut rng);
        let r = RegionBundle::new(&a).unwrap();
        let p = common::point_near_regions(&mut rng, &a);
        let q = common::point_near_regions(&mut rng, &a);
        if r.in_omega(&p) && r.in_omega(&q) {
            pairs += 1;
            let m = p.lerp(&q, &ratio(1, 2));
            assert!(r.in_omega(&m), "{a}: midpoint of {p} and {q}");
        }
    }
}

#[test]
fn tangent_residual_is_affine_in_coefficients() {
    let mut rng = common::rng(36);
    for _ in 0..100 {
        let ca = quartic_coeffs(&common::stable_quartic(&mut rng)).unwrap();
        let cb = quartic_coeffs(&common::stable_quartic(&mut rng)).unwrap();
        let l = common::fraction(&mut rng);
        let mix: [_; 4] = std::array::from_fn(|i| &l * &ca[i] + (ratio(1, 1) - &l) * &cb[i]);
        let v = common::decimal(&mut rng, 0, 20);
        let (m0, m1) = tangent_residual_affine(&mix, &v);
        let (a0, a1) = tangent_residual_affine(&ca, &v);
        let (b0, b1) = tangent_residual_affine(&cb, &v);
        let one_minus = ratio(1, 1) - &l;
        assert_eq!(m0, &l * a0 + &one_minus * b0);
        assert_eq!(m1, &l * a1 + &one_minus * b1);
    }
}
