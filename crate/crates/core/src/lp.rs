//! Levenshtein polynomials, the pair-sum lemma, Delsarte LP certificates
//! and the multiplicity inequality for a second Q-polynomial ordering.

use std::fmt;

use num_traits::One;
use thiserror::Error;

use crate::code::SphericalCode;
use crate::design::{classify, DesignProfile};
use crate::field::{QuadExt, Rational};
use crate::orthopoly::{
    gegenbauer_expand, harmonic_dim, jacobi_adjacent_family, GegenbauerExpansion,
};
use crate::poly::{from_roots, ExactPolynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LpError {
    #[error("r = {0} is a root of P_(s-1), so the polynomial drops degree")]
    Degenerate(QuadExt),
    #[error("r = {0} is outside (-1, 1)")]
    OutOfRange(QuadExt),
    #[error("strength {t} is below 2s - 1 = {need}")]
    Gate { t: usize, need: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevenshteinPolynomial {
    pub n: u32,
    pub s: usize,
    pub r: QuadExt,
    pub poly: ExactPolynomial,
}

/// `P_s(u) P_{s−1}(r) − P_s(r) P_{s−1}(u)`.
pub fn levenshtein_polynomial(
    n: u32,
    s: usize,
    r: &QuadExt,
) -> Result<LevenshteinPolynomial, LpError> {
    if *r <= QuadExt::from_int(-1) || *r >= QuadExt::one() {
        return Err(LpError::OutOfRange(r.clone()));
    }
    let fam = jacobi_adjacent_family(n, s);
    let ps_r = fam[s].eval(r);
    let ps1_r = fam[s - 1].eval(r);
    if ps1_r.is_zero() {
        return Err(LpError::Degenerate(r.clone()));
    }
    let poly = fam[s].scale(&ps1_r).sub(&fam[s - 1].scale(&ps_r));
    Ok(LevenshteinPolynomial {
        n,
        s,
        r: r.clone(),
        poly,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootMatch {
    pub lev: LevenshteinPolynomial,
    /// `f(a_i)` in spectrum order.
    pub residuals: Vec<QuadExt>,
}

impl RootMatch {
    pub fn matched(&self) -> bool {
        self.residuals.iter().all(QuadExt::is_zero)
    }
}

/// Evaluates the Levenshtein polynomial with `r = max A(C)` on the spectrum
/// of an `s`-distance `(2s − 1)`-design.
pub fn verify_root_match(code: &SphericalCode) -> Result<RootMatch, LpError> {
    verify_root_match_with(code, &classify(code))
}

pub fn verify_root_match_with(
    code: &SphericalCode,
    profile: &DesignProfile,
) -> Result<RootMatch, LpError> {
    let s = code.s();
    if !profile.sharp() {
        return Err(LpError::Gate {
            t: profile.t(),
            need: 2 * s - 1,
        });
    }
    let lev = levenshtein_polynomial(code.dim() as u32, s, code.spectrum().max())?;
    let residuals = code
        .spectrum()
        .values
        .iter()
        .map(|a| lev.poly.eval(a))
        .collect();
    Ok(RootMatch { lev, residuals })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PairSum {
    Holds,
    /// `roots[i] + roots[j] = 0`.
    Fails(usize, usize),
    NotApplicable,
}

impl fmt::Display for PairSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairSum::Holds => f.write_str("holds"),
            PairSum::Fails(i, j) => write!(f, "fails at ({i}, {j})"),
            PairSum::NotApplicable => f.write_str("not applicable (tight)"),
        }
    }
}

/// No two roots, a root with itself included, sum to zero. Only asserted
/// for non-tight designs.
pub fn pair_sum_lemma(roots: &[QuadExt], tight: bool) -> PairSum {
    if tight {
        return PairSum::NotApplicable;
    }
    for i in 0..roots.len() {
        for j in i..roots.len() {
            if (&roots[i] + &roots[j]).is_zero() {
                return PairSum::Fails(i, j);
            }
        }
    }
    PairSum::Holds
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpCertificate {
    pub poly: ExactPolynomial,
    pub g: GegenbauerExpansion,
    /// `g(1) / g_0` when `g_0 > 0`.
    pub bound: Option<QuadExt>,
    /// First `k ≥ 1` with `g_k < 0`.
    pub negative_at: Option<usize>,
    pub attained: bool,
}

/// `g(u) = (u − a_1) Π_{i≥2} (u − a_i)²`, which is at most 0 on `[−1, a_1]`
/// and vanishes on `A(C)`.
pub fn certificate_polynomial(spectrum: &[QuadExt]) -> ExactPolynomial {
    let mut roots = vec![spectrum[0].clone()];
    for a in &spectrum[1..] {
        roots.push(a.clone());
        roots.push(a.clone());
    }
    from_roots(&roots)
}

pub fn lp_certificate(code: &SphericalCode) -> LpCertificate {
    let poly = certificate_polynomial(&code.spectrum().values);
    let g = gegenbauer_expand(&poly, code.dim() as u32);
    let g0 = g.g[0].clone();
    let bound = g0.is_positive().then(|| &poly.eval(&QuadExt::one()) / &g0);
    let negative_at = (1..g.g.len()).find(|&k| g.g[k].is_negative());
    let attained = negative_at.is_none()
        && bound.as_ref() == Some(&QuadExt::from_int(code.size() as i64))
        && code
            .spectrum()
            .values
            .iter()
            .all(|a| poly.eval(a).is_zero());
    LpCertificate {
        poly,
        g,
        bound,
        negative_at,
        attained,
    }
}

/// Both sides of `n ≥ h_{n,s−1} (1 − (s−1)/(n + 2(s−1) − 2))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bannai {
    pub n: u64,
    pub s: u64,
    pub rhs: Rational,
    pub holds: bool,
}

pub fn bannai_inequality(n: u64, s: u64) -> Bannai {
    let h = Rational::from_integer(harmonic_dim(n, s - 1).into());
    let frac = Rational::new((s - 1).into(), (n + 2 * (s - 1) - 2).into());
    let rhs = h * (Rational::one() - frac);
    let holds = Rational::from_integer(n.into()) >= rhs;
    Bannai { n, s, rhs, holds }
}

/// `true` when `g(u) ≤ 0` at every sample of `[−1, a_1]` on the grid of step
/// `1/steps`, a coarse sanity check of the certificate shape.
pub fn nonpositive_on_grid(poly: &ExactPolynomial, a1: &QuadExt, steps: i64) -> bool {
    (-steps..=steps)
        .map(|k| QuadExt::from_frac(k, steps))
        .filter(|u| u <= a1)
        .all(|u| !poly.eval(&u).is_positive())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::construct;
    use crate::roots::exact_roots;

    #[test]
    fn clebsch_polynomial_and_roots() {
        let lev = levenshtein_polynomial(5, 2, &QuadExt::from_frac(1, 5)).unwrap();
        let roots = exact_roots(&lev.poly).unwrap().unwrap();
        assert_eq!(
            roots,
            vec![QuadExt::from_frac(-3, 5), QuadExt::from_frac(1, 5)]
        );
        assert_eq!(pair_sum_lemma(&roots, false), PairSum::Holds);
    }

    #[test]
    fn r_zero_has_root_minus_one() {
        for n in 3..12 {
            let lev = levenshtein_polynomial(n, 2, &QuadExt::zero()).unwrap();
            assert!(lev.poly.eval(&QuadExt::from_int(-1)).is_zero());
            assert_eq!(lev.poly.degree(), Some(2));
        }
    }

    #[test]
    fn pair_sum_on_tight_codes() {
        let roots = [QuadExt::zero(), QuadExt::from_int(-1)];
        assert_eq!(pair_sum_lemma(&roots, true), PairSum::NotApplicable);
        assert_eq!(pair_sum_lemma(&roots, false), PairSum::Fails(0, 0));
    }

    #[test]
    fn clebsch_certificate() {
        let c = construct("clebsch16").unwrap();
        let cert = lp_certificate(&c);
        let expect: Vec<QuadExt> = [(16, 125), (96, 175), (4, 5), (4, 7)]
            .iter()
            .map(|&(a, b)| QuadExt::from_frac(a, b))
            .collect();
        assert_eq!(cert.g.g, expect);
        assert_eq!(cert.bound, Some(QuadExt::from_int(16)));
        assert!(cert.attained);
        assert!(nonpositive_on_grid(
            &cert.poly,
            &QuadExt::from_frac(1, 5),
            50
        ));
    }

    #[test]
    fn bannai_values() {
        let b = bannai_inequality(3, 3);
        assert!(b.holds);
        assert_eq!(b.rhs, Rational::from_integer(3.into()));
        assert!(!bannai_inequality(4, 3).holds);
        assert_eq!(
            bannai_inequality(4, 3).rhs,
            Rational::from_integer(6.into())
        );
        assert_eq!(
            bannai_inequality(3, 4).rhs,
            Rational::from_integer(4.into())
        );
    }
}
