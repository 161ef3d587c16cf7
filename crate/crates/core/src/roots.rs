//! Real root isolation by Sturm sequences, with exact recovery of roots that
//! lie in ℚ or in a real quadratic field.
//!
//! Rational and quadratic roots are found by guess-and-verify: an isolating
//! interval is shrunk until it pins down the only admissible candidate
//! (denominators are bounded by the leading coefficient of the primitive
//! integer polynomial), and the candidate is accepted only after an exact
//! divisibility check.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::field::{QuadExt, Rational};
use crate::poly::ExactPolynomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("cannot isolate the roots of the zero polynomial")]
    ZeroPolynomial,
}

/// An open interval `(lo, hi)` with rational endpoints that contains exactly
/// one root of `poly`, a squarefree rational polynomial nonzero at both ends.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsolatingInterval {
    pub lo: Rational,
    pub hi: Rational,
    poly: ExactPolynomial,
}

impl IsolatingInterval {
    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    /// Bisects until the width is at most `width`.
    pub fn refine(&mut self, width: &Rational) {
        let lo_sign = self.poly.eval_rational(&self.lo).signum();
        while &self.width() > width {
            let mid = (&self.lo + &self.hi) / Rational::from_integer(BigInt::from(2));
            match self.poly.eval_rational(&mid).signum() {
                Ordering::Equal => {
                    // land exactly on the root: collapse to a tiny interval around it
                    let eps = width / Rational::from_integer(BigInt::from(4));
                    self.lo = &mid - &eps;
                    self.hi = &mid + &eps;
                    return;
                }
                s if s == lo_sign => self.lo = mid,
                _ => self.hi = mid,
            }
        }
    }

    pub fn contains(&self, x: &QuadExt) -> bool {
        let lo = QuadExt::rational(self.lo.clone());
        let hi = QuadExt::rational(self.hi.clone());
        &lo < x && x < &hi
    }

    pub fn midpoint_f64(&self) -> f64 {
        QuadExt::rational((&self.lo + &self.hi) / Rational::from_integer(BigInt::from(2))).to_f64()
    }
}

/// A real root: exact when it lies in ℚ or ℚ(√d), otherwise an interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RealRoot {
    Exact(QuadExt),
    Isolated(IsolatingInterval),
}

impl RealRoot {
    pub fn exact(&self) -> Option<&QuadExt> {
        match self {
            RealRoot::Exact(x) => Some(x),
            RealRoot::Isolated(_) => None,
        }
    }

    pub fn approx(&self) -> f64 {
        match self {
            RealRoot::Exact(x) => x.to_f64(),
            RealRoot::Isolated(iv) => iv.midpoint_f64(),
        }
    }
}

struct Located {
    lo: Rational,
    hi: Rational,
    exact: Option<QuadExt>,
}

fn two() -> Rational {
    Rational::from_integer(BigInt::from(2))
}

fn sturm_sequence(p: &ExactPolynomial) -> Vec<ExactPolynomial> {
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        if seq[n - 1].degree() == Some(0) {
            break;
        }
        let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
        seq.push(r.scale(&QuadExt::from_int(-1)));
    }
    seq
}

fn sign_changes(seq: &[ExactPolynomial], x: &Rational) -> usize {
    let mut last = Ordering::Equal;
    let mut changes = 0;
    for p in seq {
        let s = p.eval_rational(x).signum();
        if s == Ordering::Equal {
            continue;
        }
        if last != Ordering::Equal && s != last {
            changes += 1;
        }
        last = s;
    }
    changes
}

/// Roots in `(a, b]` by Sturm's theorem.
fn count_roots(seq: &[ExactPolynomial], a: &Rational, b: &Rational) -> usize {
    sign_changes(seq, a) - sign_changes(seq, b)
}

/// Scales a rational polynomial to a primitive integer one.
fn primitive_integer(p: &ExactPolynomial) -> Vec<BigInt> {
    let coeffs = p.rational_coeffs().expect("rational polynomial");
    let lcm = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    ints.into_iter().map(|c| c / &g).collect()
}

fn cauchy_bound(p: &ExactPolynomial) -> Rational {
    let coeffs = p.rational_coeffs().expect("rational polynomial");
    let lc = coeffs.last().unwrap().abs();
    let m = coeffs[..coeffs.len() - 1]
        .iter()
        .map(|c| c.abs() / &lc)
        .max()
        .unwrap_or_else(Rational::zero);
    Rational::one() + m
}

/// Isolates the roots of a squarefree rational polynomial into disjoint
/// intervals and recovers linear and quadratic roots exactly.
fn locate_rational(p: &ExactPolynomial) -> Vec<Located> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let seq = sturm_sequence(p);
    let bound = cauchy_bound(p);
    let mut stack = vec![(-bound.clone(), bound.clone())];
    let mut found: Vec<(Rational, Rational)> = Vec::new();
    while let Some((a, b)) = stack.pop() {
        match count_roots(&seq, &a, &b) {
            0 => {}
            1 => found.push((a, b)),
            _ => {
                let m = (&a + &b) / two();
                stack.push((a, m.clone()));
                stack.push((m, b));
            }
        }
    }
    found.sort_by(|x, y| x.0.cmp(&y.0));

    let ints = primitive_integer(p);
    let lead = ints.last().unwrap().abs();
    let lead_q = Rational::from_integer(lead.clone());

    let mut located: Vec<Located> = Vec::new();
    for (a, b) in found {
        if p.eval_rational(&b).is_zero() {
            located.push(window(p, &seq, b, &bound, &lead_q));
            continue;
        }
        // the root lies in (a, b); a may be the root of the neighbouring interval
        let (mut lo, mut hi) = (a, b);
        let mut exact = None;
        while p.eval_rational(&lo).is_zero() {
            let m = (&lo + &hi) / two();
            if p.eval_rational(&m).is_zero() {
                exact = Some(m);
                break;
            }
            if count_roots(&seq, &m, &hi) == 1 {
                lo = m;
            } else {
                hi = m;
            }
        }
        match exact {
            Some(m) => located.push(window(p, &seq, m, &bound, &lead_q)),
            None => located.push(Located {
                lo,
                hi,
                exact: None,
            }),
        }
    }

    // rational roots have the form k / lead
    let unit = Rational::one() / &lead_q;
    for loc in located.iter_mut().filter(|l| l.exact.is_none()) {
        let mut iv = IsolatingInterval {
            lo: loc.lo.clone(),
            hi: loc.hi.clone(),
            poly: p.clone(),
        };
        iv.refine(&(&unit / two()));
        loc.lo = iv.lo;
        loc.hi = iv.hi;
        let k_lo = (&loc.lo * &lead_q).ceil().to_integer();
        let k_hi = (&loc.hi * &lead_q).floor().to_integer();
        let mut k = k_lo;
        while k <= k_hi {
            let cand = Rational::new(k.clone(), lead.clone());
            if p.eval_rational(&cand).is_zero() {
                loc.exact = Some(QuadExt::rational(cand));
                break;
            }
            k += 1;
        }
    }

    // quadratic factors: sum and product of a conjugate pair lie in (1/lead)ℤ
    let open: Vec<usize> = (0..located.len())
        .filter(|&i| located[i].exact.is_none())
        .collect();
    if open.len() >= 2 {
        let target = &unit / (two() * two() * (two() * &bound + Rational::one()));
        for &i in &open {
            let mut iv = IsolatingInterval {
                lo: located[i].lo.clone(),
                hi: located[i].hi.clone(),
                poly: p.clone(),
            };
            iv.refine(&target);
            located[i].lo = iv.lo;
            located[i].hi = iv.hi;
        }
        for (x, &i) in open.iter().enumerate() {
            if located[i].exact.is_some() {
                continue;
            }
            for &j in &open[x + 1..] {
                if located[j].exact.is_some() {
                    continue;
                }
                if let Some((r_lo, r_hi)) = quadratic_pair(p, &located[i], &located[j], &lead) {
                    located[i].exact = Some(r_lo);
                    located[j].exact = Some(r_hi);
                    break;
                }
            }
        }
    }
    located
}

/// A small open window around the rational root `x` holding no other root.
fn window(
    p: &ExactPolynomial,
    seq: &[ExactPolynomial],
    x: Rational,
    bound: &Rational,
    lead: &Rational,
) -> Located {
    let mut eps = Rational::one()
        / (Rational::from_integer(BigInt::from(4)) * lead * (bound + Rational::one()));
    while count_roots(seq, &(&x - &eps), &(&x + &eps)) != 1
        || p.eval_rational(&(&x - &eps)).is_zero()
        || p.eval_rational(&(&x + &eps)).is_zero()
    {
        eps /= two();
    }
    Located {
        lo: &x - &eps,
        hi: &x + &eps,
        exact: Some(QuadExt::rational(x)),
    }
}

fn integer_candidates(lo: &Rational, hi: &Rational, lead: &BigInt) -> Vec<Rational> {
    let l = Rational::from_integer(lead.clone());
    let mut k = (lo * &l).ceil().to_integer();
    let k_hi = (hi * &l).floor().to_integer();
    let mut out = Vec::new();
    while k <= k_hi {
        out.push(Rational::new(k.clone(), lead.clone()));
        k += 1;
    }
    out
}

/// Tries to certify that the roots in `a` and `b` (a below b) are the two
/// roots of one rational quadratic factor of `p`.
fn quadratic_pair(
    p: &ExactPolynomial,
    a: &Located,
    b: &Located,
    lead: &BigInt,
) -> Option<(QuadExt, QuadExt)> {
    let sums = integer_candidates(&(&a.lo + &b.lo), &(&a.hi + &b.hi), lead);
    let prods = [&a.lo * &b.lo, &a.lo * &b.hi, &a.hi * &b.lo, &a.hi * &b.hi];
    let pmin = prods.iter().min().unwrap();
    let pmax = prods.iter().max().unwrap();
    let products = integer_candidates(pmin, pmax, lead);
    for s in &sums {
        for q in &products {
            let disc = s * s - Rational::from_integer(BigInt::from(4)) * q;
            if !disc.is_positive() {
                continue;
            }
            let factor = ExactPolynomial::from_rationals([q.clone(), -s.clone(), Rational::one()]);
            let (_, rem) = p.div_rem(&factor);
            if !rem.is_zero() {
                continue;
            }
            let root = QuadExt::sqrt_rational(&disc).ok()?;
            let half = Rational::new(BigInt::one(), BigInt::from(2));
            let centre = QuadExt::rational(s * &half);
            let r_lo = &centre - &root.scale(&half);
            let r_hi = &centre + &root.scale(&half);
            let in_a =
                QuadExt::rational(a.lo.clone()) < r_lo && r_lo < QuadExt::rational(a.hi.clone());
            let in_b =
                QuadExt::rational(b.lo.clone()) < r_hi && r_hi < QuadExt::rational(b.hi.clone());
            if in_a && in_b {
                return Some((r_lo, r_hi));
            }
        }
    }
    None
}

/// All distinct real roots of `p`, ascending. Roots in ℚ or in a real
/// quadratic field are returned exactly; the rest as isolating intervals.
///
/// Polynomials with irrational coefficients are handled through the norm
/// `p · p̄`, keeping only the roots at which `p` itself changes sign.
pub fn isolate_roots(p: &ExactPolynomial) -> Result<Vec<RealRoot>, RootError> {
    if p.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    let sf = p.squarefree_part();
    let rational_sf = if sf.is_rational() {
        sf.clone()
    } else {
        sf.norm_poly().squarefree_part()
    };
    let located = locate_rational(&rational_sf);
    let mut roots = Vec::with_capacity(located.len());
    for loc in located {
        if !sf.is_rational() {
            let is_root = match &loc.exact {
                Some(x) if x.is_rational() || x.radicand() == sf.radicand() => sf.eval(x).is_zero(),
                _ => {
                    let lo = sf.eval_rational(&loc.lo).signum();
                    let hi = sf.eval_rational(&loc.hi).signum();
                    lo != hi
                }
            };
            if !is_root {
                continue;
            }
        }
        roots.push(match loc.exact {
            Some(x) => RealRoot::Exact(x),
            None => RealRoot::Isolated(IsolatingInterval {
                lo: loc.lo,
                hi: loc.hi,
                poly: rational_sf.clone(),
            }),
        });
    }
    Ok(roots)
}

/// Exact roots only; `None` if some root is not expressible in ℚ or ℚ(√d).
pub fn exact_roots(p: &ExactPolynomial) -> Result<Option<Vec<QuadExt>>, RootError> {
    Ok(isolate_roots(p)?
        .into_iter()
        .map(|r| r.exact().cloned())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{int, rat};
    use crate::literal::parse_literal;
    use crate::poly::from_roots;

    fn lit(s: &str) -> QuadExt {
        parse_literal(s).unwrap()
    }

    #[test]
    fn rational_roots() {
        let p = from_roots(&[lit("-1"), lit("1/2")]);
        assert_eq!(
            exact_roots(&p).unwrap().unwrap(),
            vec![lit("-1"), lit("1/2")]
        );
    }

    #[test]
    fn repeated_roots_reported_once() {
        let p = from_roots(&[lit("1/3"), lit("1/3"), lit("-2/7")]);
        assert_eq!(
            exact_roots(&p).unwrap().unwrap(),
            vec![lit("-2/7"), lit("1/3")]
        );
    }

    #[test]
    fn quadratic_roots_exact() {
        // u(5u² − 3)/2, the degree-3 Gegenbauer polynomial for n = 3
        let p = ExactPolynomial::from_rationals([int(0), rat(-3, 2), int(0), rat(5, 2)]);
        let r = exact_roots(&p).unwrap().unwrap();
        assert_eq!(r, vec![lit("-1/5*sqrt(15)"), lit("0"), lit("1/5*sqrt(15)")]);
    }

    #[test]
    fn irrational_coefficients() {
        // (u − 1/√5)(u + 1)
        let p = from_roots(&[lit("1/5*sqrt(5)"), lit("-1")]);
        let r = exact_roots(&p).unwrap().unwrap();
        assert_eq!(r, vec![lit("-1"), lit("1/5*sqrt(5)")]);
    }

    #[test]
    fn cubic_irrational_roots_are_intervals() {
        // u³ − 2 has one real root 2^(1/3)
        let p = ExactPolynomial::from_rationals([int(-2), int(0), int(0), int(1)]);
        let r = isolate_roots(&p).unwrap();
        assert_eq!(r.len(), 1);
        let RealRoot::Isolated(mut iv) = r[0].clone() else {
            panic!("expected interval")
        };
        iv.refine(&rat(1, 1_000_000));
        assert!(iv.width() <= rat(1, 1_000_000));
        assert!((iv.midpoint_f64() - 2f64.powf(1.0 / 3.0)).abs() < 1e-6);
    }

    #[test]
    fn conjugate_pairs_in_different_fields() {
        // (u² − 2)(u² − 3)
        let p = ExactPolynomial::from_rationals([int(6), int(0), int(-5), int(0), int(1)]);
        let r = exact_roots(&p).unwrap().unwrap();
        assert_eq!(
            r,
            vec![
                lit("-1*sqrt(3)"),
                lit("-1*sqrt(2)"),
                lit("1*sqrt(2)"),
                lit("1*sqrt(3)")
            ]
        );
    }

    #[test]
    fn zero_polynomial_errors() {
        assert_eq!(
            isolate_roots(&ExactPolynomial::zero()),
            Err(RootError::ZeroPolynomial)
        );
    }
}
