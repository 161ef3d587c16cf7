//! Rationality of inner products, the icosahedron exception, and exact
//! replays of the parametric case analyses for `s = 3, 4, 5`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::code::SphericalCode;
use crate::design::{classify, DesignProfile};
use crate::field::{fmt_rational, QuadExt, Rational};
use crate::literal::parse_literal;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exception {
    None,
    Icosahedron,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalityVerdict {
    pub all_rational: bool,
    pub irrational_values: Vec<QuadExt>,
    pub exception: Exception,
    /// `n ≥ 3`, `s ≥ 3` and `t ≥ 2s − 2`.
    pub theorem_applicable: bool,
}

impl RationalityVerdict {
    /// Rational inner products, or the icosahedron, whenever the theorem applies.
    pub fn theorem_holds(&self) -> bool {
        !self.theorem_applicable || self.all_rational || self.exception == Exception::Icosahedron
    }
}

pub fn rationality_verdict(code: &SphericalCode) -> RationalityVerdict {
    rationality_verdict_with(code, &classify(code))
}

pub fn rationality_verdict_with(
    code: &SphericalCode,
    profile: &DesignProfile,
) -> RationalityVerdict {
    let irrational_values: Vec<QuadExt> = code
        .spectrum()
        .values
        .iter()
        .filter(|a| !a.is_rational())
        .cloned()
        .collect();
    let exception = if icosahedron_isometry_check(code) {
        Exception::Icosahedron
    } else {
        Exception::None
    };
    RationalityVerdict {
        all_rational: irrational_values.is_empty(),
        irrational_values,
        exception,
        theorem_applicable: profile.n >= 3 && profile.s >= 3 && profile.delsarte,
    }
}

/// Same dimension, size, spectrum `{1/√5, −1/√5, −1}` and uniform
/// distance distribution `(5, 5, 1)` as the icosahedron.
pub fn icosahedron_isometry_check(code: &SphericalCode) -> bool {
    if code.dim() != 3 || code.size() != 12 {
        return false;
    }
    let expected: Vec<QuadExt> = ["1/5*sqrt(5)", "-1/5*sqrt(5)", "-1"]
        .iter()
        .map(|s| parse_literal(s).unwrap())
        .collect();
    if code.spectrum().values != expected {
        return false;
    }
    code.distance_distribution().uniform_counts() == Some(&[5, 5, 1][..])
}

fn q(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

fn perfect_square_root(v: u64) -> Option<u64> {
    let r = v.sqrt();
    (r * r == v).then_some(r)
}

/// What a tight 5-design in dimension `n` would look like.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TightFive {
    /// `n = m² − 2`: inner products `−1, ±1/m`, rational.
    Rational { m: u64 },
    /// `n = 3`: inner products `−1, ±1/√5`.
    Icosahedron,
    /// No tight 5-design can exist.
    Excluded,
}

impl fmt::Display for TightFive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TightFive::Rational { m } => write!(f, "rational (-1, +-1/{m})"),
            TightFive::Icosahedron => f.write_str("icosahedron (-1, +-1/sqrt(5))"),
            TightFive::Excluded => f.write_str("excluded"),
        }
    }
}

/// `b` and `b²` as forced by the 2- and 4-design conditions for an
/// antipodal 3-distance code with products `±√b, −1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct S3Point {
    pub n: u64,
    pub size: u64,
    pub b: Rational,
    pub b2: Rational,
}

impl S3Point {
    pub fn consistent(&self) -> bool {
        &self.b * &self.b == self.b2
    }

    /// `(n − 1)(|C| − n² − n)`, zero exactly at consistency.
    pub fn defect(&self) -> Rational {
        q(self.n as i64 - 1) * q(self.size as i64 - (self.n * self.n + self.n) as i64)
    }
}

pub fn scan_s3_point(n: u64, size: u64) -> S3Point {
    let (nq, cq) = (q(n as i64), q(size as i64));
    let b = (&cq - q(2) * &nq) / (&nq * (&cq - q(2)));
    let b2 = (q(3) * &cq - q(2) * &nq * (&nq + q(2))) / (&nq * (&nq + q(2)) * (&cq - q(2)));
    S3Point { n, size, b, b2 }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct S3Certificate {
    pub n: u64,
    pub sizes: (u64, u64),
    pub consistent_sizes: Vec<u64>,
    /// `b` at `|C| = n² + n`.
    pub tight_b: Rational,
    pub tight: TightFive,
}

impl S3Certificate {
    /// Consistency occurs only at `|C| = n² + n`.
    pub fn only_tight(&self) -> bool {
        self.consistent_sizes == [self.n * self.n + self.n]
    }
}

impl fmt::Display for S3Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sizes: Vec<String> = self.consistent_sizes.iter().map(u64::to_string).collect();
        write!(
            f,
            "s=3 n={} |C| in [{}, {}]: consistent at |C| = {{{}}}; b = {}; tight 5-design: {}",
            self.n,
            self.sizes.0,
            self.sizes.1,
            sizes.join(", "),
            fmt_rational(&self.tight_b),
            self.tight
        )
    }
}

/// For every `n` and `|C|` in `[n + 2, 4n²]`, compares the two closed forms
/// for `b`.
pub fn scan_s3(n_min: u64, n_max: u64) -> Vec<S3Certificate> {
    (n_min.max(3)..=n_max)
        .into_par_iter()
        .map(|n| {
            let sizes = (n + 2, 4 * n * n);
            let consistent_sizes = (sizes.0..=sizes.1)
                .filter(|&c| scan_s3_point(n, c).consistent())
                .collect();
            let tight = match perfect_square_root(n + 2) {
                _ if n == 3 => TightFive::Icosahedron,
                Some(m) => TightFive::Rational { m },
                None => TightFive::Excluded,
            };
            S3Certificate {
                n,
                sizes,
                consistent_sizes,
                tight_b: scan_s3_point(n, n * n + n).b,
                tight,
            }
        })
        .collect()
}

/// Exact check of a rational identity on a grid of candidate inner products.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridCheck {
    pub points: usize,
    pub identity_holds: bool,
    /// No grid point satisfies the equation the identity must meet.
    pub contradiction: bool,
}

fn grid(den: i64) -> Vec<Rational> {
    let mut v: Vec<Rational> = (1..=den)
        .flat_map(|d| (-d + 1..d).map(move |k| Rational::new(k.into(), d.into())))
        .filter(|x| !x.is_zero())
        .collect();
    v.sort();
    v.dedup();
    v
}

/// `s = 4`, two rational products `a < b` with `a² ≠ b²`, `ab ≠ 0`: the
/// solved `X, Y` give `Xa⁵ + Yb⁵ = a²b² − a² − b²`, which never equals −1
/// inside `(−1, 1)`.
pub fn grid_check_two(den: i64) -> GridCheck {
    let g = grid(den);
    let one = Rational::one();
    let mut points = 0;
    let mut identity_holds = true;
    let mut contradiction = true;
    for (i, a) in g.iter().enumerate() {
        for b in &g[i + 1..] {
            let (a2, b2) = (a * a, b * b);
            if a2 == b2 {
                continue;
            }
            points += 1;
            let x = -(&one - &b2) / (a * (&a2 - &b2));
            let y = -(&one - &a2) / (b * (&b2 - &a2));
            let lin = &x * a + &y * b;
            let cube = &x * a * &a2 + &y * b * &b2;
            let fifth = &x * a * &a2 * &a2 + &y * b * &b2 * &b2;
            let closed = &a2 * &b2 - &a2 - &b2;
            identity_holds &= lin == -&one && cube == -&one && fifth == closed;
            contradiction &= closed != -&one;
        }
    }
    GridCheck {
        points,
        identity_holds,
        contradiction,
    }
}

/// `s = 5`, three rational products with distinct squares and nonzero
/// product: `Xa⁷ + Yb⁷ + Zc⁷ = −a² − b² − c² + a²b² + a²c² + b²c² − a²b²c²`.
pub fn grid_check_three(den: i64) -> GridCheck {
    let g = grid(den);
    let one = Rational::one();
    let mut points = 0;
    let mut identity_holds = true;
    let mut contradiction = true;
    for (i, a) in g.iter().enumerate() {
        for (j, b) in g.iter().enumerate().skip(i + 1) {
            for c in &g[j + 1..] {
                let (a2, b2, c2) = (a * a, b * b, c * c);
                if a2 == b2 || a2 == c2 || b2 == c2 {
                    continue;
                }
                points += 1;
                let x = -((&one - &b2) * (&one - &c2)) / (a * (&a2 - &b2) * (&a2 - &c2));
                let y = -((&one - &a2) * (&one - &c2)) / (b * (&b2 - &a2) * (&b2 - &c2));
                let z = -((&one - &a2) * (&one - &b2)) / (c * (&c2 - &b2) * (&c2 - &a2));
                let moment = |p: u32| -> Rational {
                    &x * num_traits::pow(a.clone(), p as usize)
                        + &y * num_traits::pow(b.clone(), p as usize)
                        + &z * num_traits::pow(c.clone(), p as usize)
                };
                let closed = -&a2 - &b2 - &c2 + &a2 * &b2 + &a2 * &c2 + &b2 * &c2 - &a2 * &b2 * &c2;
                identity_holds &= moment(1) == -&one
                    && moment(3) == -&one
                    && moment(5) == -&one
                    && moment(7) == closed;
                contradiction &= closed != -&one;
            }
        }
    }
    GridCheck {
        points,
        identity_holds,
        contradiction,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScanCertificate {
    /// Products `−1, 0, ±√(3/(n+2))`: the moment equations force `6/(n+2) = 2`.
    S4 {
        n: u64,
        value: Rational,
        contradiction: bool,
    },
    /// Products `−1, ±b, ±√(3/(n+2))`: `3|C| = 2n(n+1)(n+2)(n+4)/(n+6)` and
    /// `b² = (4−n)/(n+6)`.
    S5 {
        n: u64,
        three_size: Rational,
        b2: Rational,
        /// Both closed forms for `b²` agree at this `|C|`.
        forms_agree: bool,
        contradiction: bool,
    },
}

impl ScanCertificate {
    pub fn contradiction(&self) -> bool {
        match self {
            ScanCertificate::S4 { contradiction, .. }
            | ScanCertificate::S5 { contradiction, .. } => *contradiction,
        }
    }
}

impl fmt::Display for ScanCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScanCertificate::S4 {
                n,
                value,
                contradiction,
            } => write!(
                f,
                "s=4 n={n}: 6/(n+2) = {} {} 2; {}",
                fmt_rational(value),
                if *contradiction { "!=" } else { "=" },
                if *contradiction {
                    "contradiction"
                } else {
                    "consistent"
                }
            ),
            ScanCertificate::S5 {
                n,
                three_size,
                b2,
                forms_agree,
                contradiction,
            } => write!(
                f,
                "s=5 n={n}: 3|C| = {}; b^2 = {}; forms agree: {forms_agree}; {}",
                fmt_rational(three_size),
                fmt_rational(b2),
                if *contradiction {
                    "contradiction"
                } else {
                    "outside n >= 3"
                }
            ),
        }
    }
}

pub fn scan_s4_point(n: u64) -> ScanCertificate {
    let value = Rational::new(6.into(), (n + 2).into());
    // (3/(n+2))(|C|/n − 2) − (3|C|/(n(n+2)) − 2) is 2 − 6/(n+2) for every |C|
    let residual = |size: i64| -> Rational {
        let (nq, cq) = (q(n as i64), q(size));
        let lhs = Rational::new(3.into(), (n + 2).into()) * (&cq / &nq - q(2));
        let rhs = q(3) * &cq / (&nq * (&nq + q(2))) - q(2);
        lhs - rhs
    };
    let contradiction = value != q(2) && residual(n as i64 * 7) == q(2) - &value;
    ScanCertificate::S4 {
        n,
        value,
        contradiction,
    }
}

pub fn scan_s5_point(n: u64) -> ScanCertificate {
    let nq = q(n as i64);
    let three_size = q(2) * &nq * (&nq + q(1)) * (&nq + q(2)) * (&nq + q(4)) / (&nq + q(6));
    let b2 = (q(4) - &nq) / (&nq + q(6));
    let p3 = &nq * (&nq + q(2)) * (&nq + q(4));
    let first = (&p3 - &three_size) / &p3;
    // the second form, cleared of its denominator (which vanishes with b)
    let num = &p3 * (&nq + q(6)) - q(10) * &three_size;
    let den = (&nq + q(6)) * (&p3 - &three_size);
    let forms_agree = first == b2 && num == &b2 * &den;
    let size = &three_size / q(3);
    let contradiction = n >= 3 && (!b2.is_positive() || !size.is_integer());
    ScanCertificate::S5 {
        n,
        three_size,
        b2,
        forms_agree,
        contradiction,
    }
}

/// Per-`n` certificates for `s ∈ {4, 5}`.
pub fn scan_s45(s: u32, n_min: u64, n_max: u64) -> Vec<ScanCertificate> {
    (n_min..=n_max)
        .map(|n| {
            if s == 4 {
                scan_s4_point(n)
            } else {
                scan_s5_point(n)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::construct;
    use crate::field::rat;

    #[test]
    fn s3_points() {
        let p = scan_s3_point(3, 12);
        assert_eq!((p.b.clone(), p.b2.clone()), (rat(1, 5), rat(1, 25)));
        assert!(p.consistent());
        assert!(!scan_s3_point(3, 13).consistent());
        let p = scan_s3_point(7, 56);
        assert!(p.consistent());
        assert_eq!(p.b, rat(1, 9));
    }

    #[test]
    fn s3_scan_small() {
        let certs = scan_s3(3, 8);
        assert!(certs.iter().all(S3Certificate::only_tight));
        assert_eq!(certs[0].tight, TightFive::Icosahedron);
        assert_eq!(certs[4].tight, TightFive::Rational { m: 3 });
        assert_eq!(certs[1].tight, TightFive::Excluded);
    }

    #[test]
    fn s45_points() {
        match scan_s4_point(5) {
            ScanCertificate::S4 {
                value,
                contradiction,
                ..
            } => {
                assert_eq!(value, rat(6, 7));
                assert!(contradiction);
            }
            _ => unreachable!(),
        }
        match scan_s5_point(3) {
            ScanCertificate::S5 {
                three_size,
                forms_agree,
                contradiction,
                ..
            } => {
                assert_eq!(three_size, rat(280, 3));
                assert!(forms_agree && contradiction);
            }
            _ => unreachable!(),
        }
        match scan_s5_point(2) {
            ScanCertificate::S5 {
                three_size,
                b2,
                contradiction,
                ..
            } => {
                assert_eq!(three_size, rat(36, 1));
                assert_eq!(b2, rat(1, 4));
                assert!(!contradiction);
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn grid_identities() {
        let two = grid_check_two(6);
        assert!(two.points > 0 && two.identity_holds && two.contradiction);
        let three = grid_check_three(4);
        assert!(three.points > 0 && three.identity_holds && three.contradiction);
    }

    #[test]
    fn verdicts() {
        let ico = construct("icosahedron").unwrap();
        let v = rationality_verdict(&ico);
        assert_eq!(v.exception, Exception::Icosahedron);
        assert_eq!(v.irrational_values.len(), 2);
        assert!(v.theorem_applicable && v.theorem_holds());
        assert!(!icosahedron_isometry_check(
            &construct("cross_polytope(3)").unwrap()
        ));
    }
}
