//! Gegenbauer polynomials `Q_k` of the sphere `S^{n−1}` and the adjacent
//! Jacobi polynomials `P_i^{((n−1)/2, (n−3)/2)}`, both normalized to 1 at 1
//! and generated by exact three-term recurrences.

use num_bigint::BigInt;

use crate::field::{int, rat, QuadExt, Rational};
use crate::poly::ExactPolynomial;

fn q(r: Rational) -> QuadExt {
    QuadExt::rational(r)
}

/// `Q_0, …, Q_kmax` for dimension `n ≥ 2`.
///
/// `(k+n−2)·Q_{k+1} = (2k+n−2)·u·Q_k − k·Q_{k−1}`.
pub fn gegenbauer_family(n: u32, kmax: usize) -> Vec<ExactPolynomial> {
    assert!(n >= 2, "sphere dimension must be at least 2");
    let n = n as i64;
    let mut out = vec![ExactPolynomial::one().with_dim(n as u32)];
    if kmax >= 1 {
        out.push(ExactPolynomial::x().with_dim(n as u32));
    }
    let x = ExactPolynomial::x();
    for k in 1..kmax {
        let ki = k as i64;
        let a = q(rat(2 * ki + n - 2, ki + n - 2));
        let b = q(rat(ki, ki + n - 2));
        let next = x.mul(&out[k]).scale(&a).sub(&out[k - 1].scale(&b));
        out.push(next.with_dim(n as u32));
    }
    out
}

pub fn gegenbauer(n: u32, k: usize) -> ExactPolynomial {
    gegenbauer_family(n, k).pop().unwrap()
}

/// `P_0, …, P_imax` with parameters `α = (n−1)/2`, `β = (n−3)/2`, each
/// scaled so that `P_i(1) = 1`.
pub fn jacobi_adjacent_family(n: u32, imax: usize) -> Vec<ExactPolynomial> {
    assert!(n >= 2, "sphere dimension must be at least 2");
    let alpha = rat(n as i64 - 1, 2);
    let beta = rat(n as i64 - 3, 2);
    let ab = &alpha + &beta;
    let x = ExactPolynomial::x();
    let one = int(1);
    let two = int(2);
    // unnormalized classical family
    let mut raw = vec![ExactPolynomial::one()];
    if imax >= 1 {
        // (α+1) + (α+β+2)(x−1)/2
        let c1 = (&ab + &two) / &two;
        let c0 = &alpha + &one - &c1;
        raw.push(ExactPolynomial::from_rationals([c0, c1]));
    }
    for k in 1..imax {
        let k_q = Rational::from_integer(BigInt::from(k));
        let s = &two * &k_q + &ab; // 2k+α+β
        let lead = &two * (&k_q + &one) * (&k_q + &ab + &one) * &s;
        let a1 = (&s + &one) * (&s + &two) * &s;
        let a0 = (&s + &one) * (&alpha * &alpha - &beta * &beta);
        let c = &two * (&k_q + &alpha) * (&k_q + &beta) * (&s + &two);
        let term = x
            .scale(&q(a1))
            .add(&ExactPolynomial::constant(q(a0)))
            .mul(&raw[k]);
        let next = term
            .sub(&raw[k - 1].scale(&q(c)))
            .scale(&q(Rational::from_integer(BigInt::from(1)) / lead));
        raw.push(next);
    }
    raw.into_iter()
        .map(|p| {
            let at_one = p.eval(&QuadExt::one());
            p.scale(&(QuadExt::one() / &at_one)).with_dim(n)
        })
        .collect()
}

pub fn jacobi_adjacent(n: u32, i: usize) -> ExactPolynomial {
    jacobi_adjacent_family(n, i).pop().unwrap()
}

/// Dimension of the space of degree-`k` harmonic polynomials in `n` variables:
/// `C(n+k−1, k) − C(n+k−3, k−2)`.
pub fn harmonic_dim(n: u64, k: u64) -> u64 {
    let head = binomial(n + k - 1, k);
    let tail = if k >= 2 {
        binomial(n + k - 3, k - 2)
    } else {
        0
    };
    head - tail
}

/// Binomial coefficient with `C(a, b) = 0` for `b > a`.
pub fn binomial(a: u64, b: u64) -> u64 {
    if b > a {
        return 0;
    }
    let b = b.min(a - b);
    let mut acc: u128 = 1;
    for i in 0..b {
        acc = acc * (a - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).expect("binomial overflows u64")
}

/// Coefficients of a polynomial in the basis `Q_0, …, Q_deg` of one dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GegenbauerExpansion {
    pub dim: u32,
    pub g: Vec<QuadExt>,
}

impl GegenbauerExpansion {
    /// `Σ g_k Q_k` as an ordinary polynomial.
    pub fn reconstruct(&self) -> ExactPolynomial {
        let family = gegenbauer_family(self.dim, self.g.len().saturating_sub(1));
        self.g
            .iter()
            .zip(&family)
            .fold(ExactPolynomial::zero(), |acc, (g, qk)| {
                acc.add(&qk.scale(g))
            })
    }

    /// Value at `u = 1`, which is `Σ g_k` since every `Q_k(1) = 1`.
    pub fn value_at_one(&self) -> QuadExt {
        self.g.iter().fold(QuadExt::zero(), |acc, g| &acc + g)
    }
}

/// Rewrites `p` in the Gegenbauer basis of dimension `n` by back-substitution
/// from the top degree.
pub fn gegenbauer_expand(p: &ExactPolynomial, n: u32) -> GegenbauerExpansion {
    let Some(deg) = p.degree() else {
        return GegenbauerExpansion {
            dim: n,
            g: Vec::new(),
        };
    };
    let family = gegenbauer_family(n, deg);
    let mut rest = p.clone();
    let mut g = vec![QuadExt::zero(); deg + 1];
    for k in (0..=deg).rev() {
        let c = rest.coeff(k);
        if c.is_zero() {
            continue;
        }
        let gk = &c / family[k].leading().unwrap();
        rest = rest.sub(&family[k].scale(&gk));
        g[k] = gk;
    }
    debug_assert!(rest.is_zero());
    GegenbauerExpansion { dim: n, g }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::literal::parse_literal;

    fn poly(c: &[Rational]) -> ExactPolynomial {
        ExactPolynomial::from_rationals(c.iter().cloned())
    }

    #[test]
    fn gegenbauer_low_degrees() {
        for n in 3..12u32 {
            let ni = n as i64;
            // Q_2 = (n u² − 1)/(n − 1)
            assert_eq!(
                gegenbauer(n, 2),
                poly(&[rat(-1, ni - 1), int(0), rat(ni, ni - 1)])
            );
            // Q_3 = u((n+2)u² − 3)/(n − 1)
            assert_eq!(
                gegenbauer(n, 3),
                poly(&[int(0), rat(-3, ni - 1), int(0), rat(ni + 2, ni - 1)])
            );
        }
    }

    #[test]
    fn q2_at_inverse_sqrt5() {
        let x = parse_literal("1/5*sqrt(5)").unwrap();
        assert_eq!(gegenbauer(3, 2).eval(&x), QuadExt::from_frac(-1, 5));
    }

    #[test]
    fn q4_dimension_three() {
        // (35u⁴ − 30u² + 3)/8
        assert_eq!(
            gegenbauer(3, 4),
            poly(&[rat(3, 8), int(0), rat(-30, 8), int(0), rat(35, 8)])
        );
    }

    #[test]
    fn jacobi_low_degrees() {
        assert_eq!(jacobi_adjacent(7, 0), ExactPolynomial::one());
        for n in 3..12i64 {
            assert_eq!(
                jacobi_adjacent(n as u32, 1),
                poly(&[rat(1, n + 1), rat(n, n + 1)])
            );
        }
        // n = 5: (7(u−1)² + 16(u−1) + 8)/8 = (7u² + 2u − 1)/8
        let p2 = jacobi_adjacent(5, 2);
        assert_eq!(p2, poly(&[rat(-1, 8), rat(2, 8), rat(7, 8)]));
        assert_eq!(
            p2.eval(&QuadExt::from_frac(1, 5)),
            QuadExt::from_frac(-1, 25)
        );
        assert_eq!(
            p2.eval(&QuadExt::from_frac(-3, 5)),
            QuadExt::from_frac(1, 25)
        );
    }

    #[test]
    fn harmonic_dimensions() {
        assert_eq!(
            (0..4).map(|k| harmonic_dim(3, k)).collect::<Vec<_>>(),
            vec![1, 3, 5, 7]
        );
        assert_eq!(
            (0..4).map(|k| harmonic_dim(8, k)).collect::<Vec<_>>(),
            vec![1, 8, 35, 112]
        );
        assert_eq!(binomial(10, 7), 120);
    }

    #[test]
    fn expansions() {
        // u² in n = 5 is (4 Q_2 + 1)/5
        let e = gegenbauer_expand(&poly(&[int(0), int(0), int(1)]), 5);
        assert_eq!(
            e.g,
            vec![
                QuadExt::from_frac(1, 5),
                QuadExt::zero(),
                QuadExt::from_frac(4, 5)
            ]
        );
        let e = gegenbauer_expand(&gegenbauer(8, 7), 8);
        assert_eq!(e.g.iter().filter(|g| !g.is_zero()).count(), 1);
        assert!(e.g[7].is_one());
        // (u − 1/5)(u + 3/5)² in n = 5
        let f = crate::poly::from_roots(&[
            QuadExt::from_frac(1, 5),
            QuadExt::from_frac(-3, 5),
            QuadExt::from_frac(-3, 5),
        ]);
        let e = gegenbauer_expand(&f, 5);
        assert_eq!(
            e.g,
            vec![
                QuadExt::from_frac(16, 125),
                QuadExt::from_frac(96, 175),
                QuadExt::from_frac(4, 5),
                QuadExt::from_frac(4, 7)
            ]
        );
        assert_eq!(e.reconstruct(), f);
    }
}
