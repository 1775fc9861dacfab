use num_traits::{One, Signed, Zero};

use super::Polynomial;
use crate::error::{Result, SprError};
use crate::rational::{self, Rational};

/// Signed remainder sequence `p, p', -rem(p, p'), ...`, each member rescaled
/// by a positive constant to a primitive integer polynomial so coefficients
/// stay small.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<Polynomial>,
}

impl SturmChain {
    pub fn new(p: &Polynomial) -> Self {
        let mut chain = Vec::new();
        if p.is_zero() {
            return SturmChain { chain };
        }
        chain.push(p.primitive_part());
        let d = p.derivative();
        if !d.is_zero() {
            chain.push(d.primitive_part());
            loop {
                let n = chain.len();
                let r = chain[n - 2].rem(&chain[n - 1]);
                if r.is_zero() {
                    break;
                }
                chain.push((-r).primitive_part());
            }
        }
        SturmChain { chain }
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    fn changes(signs: impl Iterator<Item = i8>) -> usize {
        let mut last = 0i8;
        let mut count = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    pub fn sign_changes_at(&self, x: &Rational) -> usize {
        Self::changes(self.chain.iter().map(|p| sign(&p.eval(x))))
    }

    pub fn sign_changes_at_pos_inf(&self) -> usize {
        Self::changes(self.chain.iter().map(|p| sign(p.leading().unwrap())))
    }

    pub fn sign_changes_at_neg_inf(&self) -> usize {
        Self::changes(self.chain.iter().map(|p| {
            let s = sign(p.leading().unwrap());
            if p.degree().unwrap() % 2 == 1 {
                -s
            } else {
                s
            }
        }))
    }

    /// Distinct real roots in `(lo, hi]`; `None` bounds mean infinity.
    pub fn count(&self, lo: Option<&Rational>, hi: Option<&Rational>) -> usize {
        if self.chain.is_empty() {
            return 0;
        }
        let a = lo.map_or_else(
            || self.sign_changes_at_neg_inf(),
            |x| self.sign_changes_at(x),
        );
        let b = hi.map_or_else(
            || self.sign_changes_at_pos_inf(),
            |x| self.sign_changes_at(x),
        );
        a.saturating_sub(b)
    }
}

fn sign(x: &Rational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Distinct real roots of `p` in `(lo, hi]`.
pub fn count_roots_in(p: &Polynomial, lo: Option<&Rational>, hi: Option<&Rational>) -> usize {
    SturmChain::new(p).count(lo, hi)
}

/// Cauchy bound: every real root is strictly below it in magnitude.
pub fn root_upper_bound(p: &Polynomial) -> Rational {
    let Some(lc) = p.leading() else {
        return Rational::one();
    };
    let n = p.degree().unwrap();
    let max = p.coeffs()[..n]
        .iter()
        .map(|c| (c / lc).abs())
        .max()
        .unwrap_or_else(Rational::zero);
    Rational::one() + max
}

/// `N(t) > 0` for every `t >= 0`.
pub fn positive_on_nonneg(p: &Polynomial) -> Result<bool> {
    if p.is_zero() {
        return Err(SprError::InvalidInput(
            "positivity of the zero polynomial is undefined".into(),
        ));
    }
    if !p.eval(&Rational::zero()).is_positive() || p.leading().unwrap().is_negative() {
        return Ok(false);
    }
    // Descartes: no sign change means no positive root
    if p.coeffs().iter().all(|c| !c.is_negative()) {
        return Ok(true);
    }
    Ok(SturmChain::new(p).count(Some(&Rational::zero()), None) == 0)
}

/// `None` when `p` is strictly positive on `[0, inf)`; otherwise a point
/// `t >= 0` with `p(t) <= 0`.
///
/// The only inexact case is a tangential root of even multiplicity at an
/// irrational point: the returned value is then a close rational
/// approximation of that root.
pub fn nonneg_positivity_witness(p: &Polynomial) -> Result<Option<Rational>> {
    if p.is_zero() {
        return Err(SprError::InvalidInput(
            "positivity of the zero polynomial is undefined".into(),
        ));
    }
    let zero = Rational::zero();
    if !p.eval(&zero).is_positive() {
        return Ok(Some(zero));
    }
    if p.leading().unwrap().is_negative() {
        return Ok(Some(root_upper_bound(p)));
    }
    if p.degree() == Some(0) {
        return Ok(None);
    }
    let chain = SturmChain::new(p);
    let roots = chain.count(Some(&zero), None);
    if roots == 0 {
        return Ok(None);
    }
    let bound = root_upper_bound(p);
    let mut intervals = Vec::new();
    isolate(&chain, zero, bound, roots, &mut intervals);
    // the first interval holds the smallest positive root
    if let Some((lo, hi)) = intervals.into_iter().next() {
        if !p.eval(&hi).is_positive() {
            return Ok(Some(hi));
        }
        // Positive at both ends of an isolating interval: the root has even
        // multiplicity and p only touches zero there.
        return Ok(Some(tangential_root(p, lo, hi)));
    }
    Err(SprError::InternalContradiction(
        "Sturm count reported roots but isolation found none".into(),
    ))
}

fn isolate(
    chain: &SturmChain,
    lo: Rational,
    hi: Rational,
    count: usize,
    out: &mut Vec<(Rational, Rational)>,
) {
    if count == 0 {
        return;
    }
    if count == 1 {
        out.push((lo, hi));
        return;
    }
    let mid = (&lo + &hi) / rational::int(2);
    let left = chain.count(Some(&lo), Some(&mid));
    isolate(chain, lo, mid.clone(), left, out);
    isolate(chain, mid, hi, count - left, out);
}

fn tangential_root(p: &Polynomial, mut lo: Rational, mut hi: Rational) -> Rational {
    let repeated = p.gcd(&p.derivative()).square_free();
    if repeated.degree() == Some(1) {
        let c = repeated.coeffs();
        return -&c[0] / &c[1];
    }
    let chain = SturmChain::new(&repeated);
    let two = rational::int(2);
    for _ in 0..256 {
        let mid = (&lo + &hi) / &two;
        if !p.eval(&mid).is_positive() {
            return mid;
        }
        if chain.count(Some(&lo), Some(&mid)) > 0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (lo + hi) / two
}
