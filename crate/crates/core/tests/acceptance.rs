//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines are printed even when output capture is on.

mod common;

use std::time::{Duration, Instant};

use common::checks::{self, Tally};
use sprsynth::families::{
    interval_robustly_stable, kharitonov_vertices, segment_stable, IntervalQuartic, Segment,
};
use sprsynth::poly::hurwitz_stable;
use sprsynth::rational::{int, ratio};
use sprsynth::regions::{in_omega, Point2};
use sprsynth::sprcheck::{is_spr, lp_probe, re_positive, vertex_certificate};
use sprsynth::synth::{cubic_for, epsilon_max, r_max, with_quartic_term};
use sprsynth::{Polynomial, Result};

struct Outcome {
    passed: bool,
    detail: String,
}

fn poly(text: &str) -> Polynomial {
    text.parse().unwrap()
}

fn verdict(checks: &[(&str, bool)]) -> Outcome {
    let failed: Vec<&str> = checks
        .iter()
        .filter(|(_, ok)| !ok)
        .map(|(n, _)| *n)
        .collect();
    Outcome {
        passed: failed.is_empty(),
        detail: if failed.is_empty() {
            format!("{} checks hold", checks.len())
        } else {
            format!("failed: {}", failed.join(", "))
        },
    }
}

fn from_tally(t: &Tally) -> Outcome {
    let mut detail = format!("{} cases, {} violations", t.cases, t.violations);
    for n in &t.notes {
        detail.push_str("; ");
        detail.push_str(n);
    }
    Outcome {
        passed: t.ok(),
        detail,
    }
}

fn all_in(v: &[Polynomial], p: &Point2) -> bool {
    v.iter().all(|a| in_omega(a, p).unwrap())
}

fn spr_all(b: &Polynomial, v: &[Polynomial]) -> bool {
    v.iter().all(|a| is_spr(b, a).unwrap().is_spr)
}

fn re_all(b: &Polynomial, v: &[Polynomial]) -> bool {
    v.iter().all(|a| re_positive(b, a).unwrap())
}

fn example1() -> Result<Outcome> {
    let k = IntervalQuartic::from_strs(["11", "56", "88", "1"], ["89", "56", "88", "50"])?;
    let v = kharitonov_vertices(&k);
    let p = Point2::from_strs("11", "7.6657")?;
    let b = cubic_for(&p, &int(2));
    let eps = epsilon_max(&p, &v)?;
    let r = r_max(&b, &v)?;
    Ok(verdict(&[
        ("robustly stable", interval_robustly_stable(&k)),
        ("(11, 7.6657) in all regions", all_in(&v, &p)),
        (
            "(11, 7.76657) in all regions",
            all_in(&v, &Point2::from_strs("11", "7.76657")?),
        ),
        ("eps = 2 real part positive", re_all(&b, &v)),
        (
            "r = 0.5 SPR",
            spr_all(&with_quartic_term(&b, &ratio(1, 2)), &v),
        ),
        ("eps* >= 2", eps >= int(2)),
        ("r* >= 0.5", r >= ratio(1, 2)),
    ]))
}

fn example2() -> Result<Outcome> {
    let k = IntervalQuartic::from_strs(["2", "6", "4", "0.5"], ["5", "6", "6", "1"])?;
    let v = kharitonov_vertices(&k);
    let p = Point2::from_strs("2", "2.56")?;
    let b = cubic_for(&p, &ratio(1, 2));
    Ok(verdict(&[
        ("robustly stable", interval_robustly_stable(&k)),
        ("(2, 2.56) in all regions", all_in(&v, &p)),
        ("eps = 0.5 real part positive", re_all(&b, &v)),
        (
            "r = 0.5 SPR",
            spr_all(&with_quartic_term(&b, &ratio(1, 2)), &v),
        ),
        ("eps* >= 1", epsilon_max(&p, &v)? >= int(1)),
    ]))
}

fn example3() -> Result<Outcome> {
    let k = IntervalQuartic::from_strs(["2", "5", "4", "0.5"], ["2.5", "6", "6", "5"])?;
    let v = kharitonov_vertices(&k);
    let p = Point2::from_strs("1.1475", "2.4262")?;
    let b = cubic_for(&p, &ratio(1, 2));
    Ok(verdict(&[
        ("robustly stable", interval_robustly_stable(&k)),
        ("(1.1475, 2.4262) in all regions", all_in(&v, &p)),
        ("eps = 0.5 real part positive", re_all(&b, &v)),
        (
            "r = 0.2 SPR",
            spr_all(&with_quartic_term(&b, &ratio(1, 5)), &v),
        ),
        ("r* >= 0.2", r_max(&b, &v)? >= ratio(1, 5)),
    ]))
}

fn example4() -> Result<Outcome> {
    let v = vec![
        poly("s^3+2.6s^2+37s+64"),
        poly("s^3+17s^2+83s+978"),
        poly("s^3+15s^2+28s+415"),
    ];
    let hurwitz = v.iter().map(hurwitz_stable).collect::<Result<Vec<_>>>()?;
    let mut edges = true;
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        edges &= segment_stable(&Segment::new(v[i].clone(), v[j].clone())?)?;
    }
    let probe = lp_probe(&v, 2, 512)?;
    let cert = vertex_certificate(&poly("s^3+6s^2+73s+68"), &v)?;
    Ok(verdict(&[
        ("vertices Hurwitz", hurwitz.iter().all(|h| *h)),
        ("edges stable", edges),
        (
            "degree-2 probe infeasible at 512 samples",
            probe.is_infeasible(),
        ),
        ("s^3+6s^2+73s+68 certificate", cert.family_spr),
    ]))
}

fn timed(name: &str, limit: Option<Duration>, f: impl FnOnce() -> Result<Outcome>) -> bool {
    let start = Instant::now();
    let outcome = f();
    let elapsed = start.elapsed();
    let (mut passed, mut detail) = match outcome {
        Ok(o) => (o.passed, o.detail),
        Err(e) => (false, format!("error: {e}")),
    };
    if let Some(limit) = limit {
        if elapsed > limit {
            passed = false;
            detail.push_str(&format!("; over the {:?} limit", limit));
        }
    }
    println!(
        "[{}] {name} ({:.2} s): {detail}",
        if passed { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
    passed
}

fn main() {
    let secs = Duration::from_secs;
    println!(
        "acceptance suite ({} backend)",
        if sprsynth::par::is_parallel() {
            "rayon"
        } else {
            "sequential"
        }
    );
    let mut results = vec![
        timed("Example 1 reproduction", Some(secs(5)), example1),
        timed("Example 2 reproduction", Some(secs(5)), example2),
        timed("Example 3 reproduction", Some(secs(5)), example3),
        timed("Example 4 reproduction", Some(secs(30)), example4),
    ];
    let mut closure = Tally::default();
    results.push(timed(
        "End-to-end synthesis on 100 random families",
        Some(secs(300)),
        || {
            let (synth, down, _) = checks::random_synthesis(0xACCE, 100);
            closure = down;
            Ok(from_tally(&synth))
        },
    ));
    results.push(timed("Region equivalence (500 pairs)", None, || {
        Ok(from_tally(&checks::region_equivalence(0x0E9A, 500)))
    }));
    results.push(timed(
        "Inclusion property (100 families x 100 points)",
        None,
        || {
            Ok(from_tally(&checks::vertex_region_inclusions(
                0x1A8, 100, 100,
            )))
        },
    ));
    results.push(timed(
        "Routh vs eigenvalue oracle (200 cases)",
        None,
        || Ok(from_tally(&checks::routh_vs_eigen(0x0247, 200))),
    ));
    results.push(timed("Sturm vs grid oracle (200 cases)", None, || {
        Ok(from_tally(&checks::sturm_vs_grid(0x5707, 200)))
    }));
    results.push(timed("Downward closure of eps and r", None, || {
        let mut o = from_tally(&closure);
        o.detail
            .push_str("; checked on the synthesis results above");
        Ok(o)
    }));
    let passed = results.iter().filter(|p| **p).count();
    println!("{passed}/{} acceptance criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
