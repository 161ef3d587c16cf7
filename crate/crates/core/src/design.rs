//! Design strength, moment identities and the DGS cardinality bound.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::code::SphericalCode;
use crate::field::{QuadExt, Rational};
use crate::orthopoly::{binomial, gegenbauer_family};

/// `f_j`: the average of `u^j` over the sphere, seen from one pole.
///
/// `f_0 = 1`, zero for odd `j`, and `f_{2i} = (2i−1)!! / (n(n+2)⋯(n+2i−2))`.
pub fn moment_f(n: u32, j: u32) -> Rational {
    if j % 2 == 1 {
        return Rational::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for k in 0..j / 2 {
        num *= 2 * k + 1;
        den *= n + 2 * k;
    }
    Rational::new(num, den)
}

/// `S_k = Σ_{x,y} Q_k(⟨x,y⟩)` for `k = 0..=kmax`.
pub fn moment_sums(code: &SphericalCode, kmax: usize) -> Vec<QuadExt> {
    let n = code.dim() as u32;
    let totals = code.distance_distribution().pair_totals();
    let size = QuadExt::from_int(code.size() as i64);
    gegenbauer_family(n, kmax)
        .iter()
        .map(|qk| {
            code.spectrum()
                .values
                .iter()
                .zip(&totals)
                .fold(size.clone(), |acc, (a, &count)| {
                    &acc + &(&qk.eval(a) * &QuadExt::from_int(count as i64))
                })
        })
        .collect()
}

/// Exact strength together with the moment that stops it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Strength {
    pub t: usize,
    /// `(k, S_k)` for the first nonzero moment sum, `None` if every sum up to
    /// the cap vanished.
    pub first_nonzero: Option<(usize, QuadExt)>,
    pub cap: usize,
}

impl Strength {
    /// All moments up to `2s + 1` vanished, which no finite code allows.
    pub fn cap_reached(&self) -> bool {
        self.first_nonzero.is_none()
    }
}

/// Largest `t ≤ 2s + 1` with `S_1 = … = S_t = 0`.
pub fn design_strength(code: &SphericalCode) -> Strength {
    let cap = 2 * code.s() + 1;
    let sums = moment_sums(code, cap);
    match sums.iter().enumerate().skip(1).find(|(_, v)| !v.is_zero()) {
        Some((k, v)) => Strength {
            t: k - 1,
            first_nonzero: Some((k, v.clone())),
            cap,
        },
        None => Strength {
            t: cap,
            first_nonzero: None,
            cap,
        },
    }
}

/// `Σ_i a_i^j A_{a_i}(x) − (f_j |C| − 1)` at every point `x`.
pub fn check_syst1(code: &SphericalCode, j: u32) -> Vec<QuadExt> {
    let rhs = QuadExt::rational(
        moment_f(code.dim() as u32, j) * Rational::from_integer(code.size().into()),
    ) - QuadExt::one();
    let powers: Vec<QuadExt> = code.spectrum().values.iter().map(|a| a.pow(j)).collect();
    code.distance_distribution()
        .counts
        .iter()
        .map(|counts| {
            let lhs = powers
                .iter()
                .zip(counts)
                .fold(QuadExt::zero(), |acc, (p, &c)| {
                    &acc + &(p * &QuadExt::from_int(c as i64))
                });
            &lhs - &rhs
        })
        .collect()
}

/// `Σ_i a_i^j A_{a_i}` for a code with a uniform distance distribution.
pub fn power_sum(code: &SphericalCode, j: u32) -> Option<QuadExt> {
    let dist = code.distance_distribution();
    let counts = dist.uniform_counts()?;
    Some(
        code.spectrum()
            .values
            .iter()
            .zip(counts)
            .fold(QuadExt::zero(), |acc, (a, &c)| {
                &acc + &(&a.pow(j) * &QuadExt::from_int(c as i64))
            }),
    )
}

/// Lower bound on the size of a `t`-design in dimension `n`: with
/// `t = 2m − ε`, `C(n+m−1−ε, n−1) + C(n+m−2, n−1)`.
pub fn dgs_bound(n: u64, t: u64) -> u64 {
    let m = t.div_ceil(2);
    let eps = 2 * m - t;
    if m == 0 {
        return 1;
    }
    binomial(n + m - 1 - eps, n - 1) + binomial(n + m - 2, n - 1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DesignProfile {
    pub n: usize,
    pub size: usize,
    pub s: usize,
    pub strength: Strength,
    pub uniform: bool,
    pub antipodal: bool,
    /// `A(C) ∪ {1}` is symmetric about 0, which caps the strength at `2s − 1`.
    pub symmetric: bool,
    pub delsarte: bool,
    pub dgs_bound: u64,
    pub tight: bool,
}

impl DesignProfile {
    pub fn t(&self) -> usize {
        self.strength.t
    }

    /// `s`-distance `(2s − 1)`-design.
    pub fn sharp(&self) -> bool {
        self.t() + 1 >= 2 * self.s
    }
}

pub fn classify(code: &SphericalCode) -> DesignProfile {
    let strength = design_strength(code);
    let s = code.s();
    let t = strength.t;
    let dgs = dgs_bound(code.dim() as u64, t as u64);
    DesignProfile {
        n: code.dim(),
        size: code.size(),
        s,
        uniform: code.distance_distribution().uniform,
        antipodal: code.is_antipodal(),
        symmetric: code.symmetric_spectrum(),
        delsarte: t + 2 >= 2 * s,
        dgs_bound: dgs,
        tight: code.size() as u64 == dgs,
        strength,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::construct;
    use crate::field::rat;

    #[test]
    fn moment_constants() {
        assert_eq!(moment_f(7, 2), rat(1, 7));
        assert_eq!(moment_f(8, 6), rat(1, 64));
        assert_eq!(moment_f(5, 3), rat(0, 1));
        assert_eq!(moment_f(5, 0), rat(1, 1));
    }

    #[test]
    fn dgs_values() {
        assert_eq!(dgs_bound(3, 5), 12);
        assert_eq!(dgs_bound(8, 7), 240);
        assert_eq!(dgs_bound(5, 3), 10);
        assert_eq!(dgs_bound(6, 2), 7);
        for n in 3..12 {
            assert_eq!(dgs_bound(n, 3), 2 * n);
        }
    }

    #[test]
    fn cross_polytope_moment_four() {
        let c = construct("cross_polytope(3)").unwrap();
        let st = design_strength(&c);
        assert_eq!(st.t, 3);
        assert_eq!(st.first_nonzero, Some((4, QuadExt::from_int(21))));
    }

    #[test]
    fn icosahedron_profile() {
        let c = construct("icosahedron").unwrap();
        let p = classify(&c);
        assert_eq!((p.s, p.t(), p.dgs_bound), (3, 5, 12));
        assert!(p.tight && p.delsarte && p.antipodal && p.symmetric && p.sharp());
        for j in 0..=5 {
            assert!(check_syst1(&c, j).iter().all(QuadExt::is_zero), "j = {j}");
        }
        assert!(check_syst1(&c, 6).iter().all(|r| !r.is_zero()));
    }
}
