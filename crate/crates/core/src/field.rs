//! Exact arithmetic in ℚ and in real quadratic fields ℚ(√d).
//!
//! A [`QuadExt`] is kept in canonical form at all times: the irrational
//! coefficient is zero exactly when the radicand is zero, and a nonzero
//! radicand is squarefree and at least 2. Two values are equal iff their
//! canonical fields are equal, so `#[derive(PartialEq, Hash)]` is sound.
//!
//! Arithmetic between two irrational values requires a shared radicand. The
//! `checked_*` methods report a mismatch as [`FieldError::IncompatibleRadicands`];
//! the operator impls panic on it, and are meant for code that has already
//! established a single field for the whole computation.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary-precision rational, always reduced with a positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("nonreal radicand {0}")]
    NonrealRadicand(i64),
    #[error("incompatible radicands: sqrt({0}) and sqrt({1})")]
    IncompatibleRadicands(u64, u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("radicand does not fit in 64 bits")]
    RadicandOverflow,
}

/// Builds the rational `num/den`. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Splits `d > 0` as `square² · core` with `core` squarefree.
///
/// Trial division runs up to the cube root of `d`; whatever cofactor remains
/// has at most two prime factors, so it is either squarefree or a perfect
/// square of a prime.
pub fn squarefree_split(d: u64) -> (u64, u64) {
    debug_assert!(d > 0);
    let mut rest = d;
    let mut square = 1u64;
    let mut core = 1u64;
    let mut p = 2u64;
    while p.saturating_mul(p).saturating_mul(p) <= rest {
        if rest.is_multiple_of(p) {
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            for _ in 0..e / 2 {
                square *= p;
            }
            if e % 2 == 1 {
                core *= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        let r = rest.sqrt();
        if r * r == rest {
            square *= r;
        } else {
            core *= rest;
        }
    }
    (square, core)
}

/// Exact element `rat + coef·√radicand` of ℚ or of a real quadratic field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadExt {
    rat: Rational,
    coef: Rational,
    radicand: u64,
}

impl QuadExt {
    /// Canonical form of `p + q·√d`. Square factors of `d` move into `q`.
    pub fn normalize(p: Rational, q: Rational, d: i64) -> Result<Self, FieldError> {
        if d < 0 {
            return Err(FieldError::NonrealRadicand(d));
        }
        Ok(Self::from_parts(p, q, d as u64))
    }

    fn from_parts(p: Rational, q: Rational, d: u64) -> Self {
        if q.is_zero() || d == 0 {
            return Self::rational(p);
        }
        let (square, core) = squarefree_split(d);
        let q = q * Rational::from_integer(BigInt::from(square));
        if core == 1 {
            Self::rational(p + q)
        } else {
            QuadExt {
                rat: p,
                coef: q,
                radicand: core,
            }
        }
    }

    pub fn rational(p: Rational) -> Self {
        QuadExt {
            rat: p,
            coef: Rational::zero(),
            radicand: 0,
        }
    }

    pub fn from_int(v: i64) -> Self {
        Self::rational(int(v))
    }

    pub fn from_frac(num: i64, den: i64) -> Self {
        Self::rational(rat(num, den))
    }

    /// `q·√d` for a positive integer `d`.
    pub fn sqrt_times(q: Rational, d: u64) -> Self {
        Self::from_parts(Rational::zero(), q, d)
    }

    /// Exact square root of a nonnegative rational, if it lies in some ℚ(√d).
    pub fn sqrt_rational(x: &Rational) -> Result<Self, FieldError> {
        if x.is_negative() {
            return Err(FieldError::NonrealRadicand(-1));
        }
        // √(a/b) = √(ab)/b
        let prod = x.numer() * x.denom();
        let d = prod.to_u64().ok_or(FieldError::RadicandOverflow)?;
        Ok(Self::from_parts(
            Rational::zero(),
            Rational::new(BigInt::one(), x.denom().clone()),
            d,
        ))
    }

    pub fn zero() -> Self {
        Self::rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::rational(Rational::one())
    }

    pub fn rat_part(&self) -> &Rational {
        &self.rat
    }

    pub fn coef(&self) -> &Rational {
        &self.coef
    }

    /// Squarefree radicand, or 0 for a rational value.
    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn is_rational(&self) -> bool {
        self.radicand == 0
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.rat)
    }

    pub fn is_zero(&self) -> bool {
        self.is_rational() && self.rat.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.is_rational() && self.rat.is_one()
    }

    fn shared_radicand(&self, other: &Self) -> Result<u64, FieldError> {
        match (self.radicand, other.radicand) {
            (0, d) | (d, 0) => Ok(d),
            (a, b) if a == b => Ok(a),
            (a, b) => Err(FieldError::IncompatibleRadicands(a, b)),
        }
    }

    /// True if `self` and `other` live in one common field.
    pub fn compatible(&self, other: &Self) -> bool {
        self.shared_radicand(other).is_ok()
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, FieldError> {
        let d = self.shared_radicand(other)?;
        Ok(Self::from_parts(
            &self.rat + &other.rat,
            &self.coef + &other.coef,
            d,
        ))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, FieldError> {
        let d = self.shared_radicand(other)?;
        Ok(Self::from_parts(
            &self.rat - &other.rat,
            &self.coef - &other.coef,
            d,
        ))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, FieldError> {
        let d = self.shared_radicand(other)?;
        if d == 0 {
            return Ok(Self::rational(&self.rat * &other.rat));
        }
        let dq = Rational::from_integer(BigInt::from(d));
        let p = &self.rat * &other.rat + &self.coef * &other.coef * dq;
        let q = &self.rat * &other.coef + &self.coef * &other.rat;
        Ok(Self::from_parts(p, q, d))
    }

    /// `p² − q²d`, the field norm down to ℚ.
    pub fn norm(&self) -> Rational {
        if self.is_rational() {
            return &self.rat * &self.rat;
        }
        let dq = Rational::from_integer(BigInt::from(self.radicand));
        &self.rat * &self.rat - &self.coef * &self.coef * dq
    }

    pub fn checked_inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let n = self.norm();
        Ok(Self::from_parts(
            &self.rat / &n,
            -(&self.coef / &n),
            self.radicand,
        ))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, FieldError> {
        self.shared_radicand(other)?;
        self.checked_mul(&other.checked_inv()?)
    }

    /// Galois conjugate `p − q√d`.
    pub fn conj(&self) -> Self {
        QuadExt {
            rat: self.rat.clone(),
            coef: -self.coef.clone(),
            radicand: self.radicand,
        }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::from_parts(&self.rat * k, &self.coef * k, self.radicand)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact sign, decided by comparing `p²` with `q²d` when the parts disagree.
    pub fn signum(&self) -> Ordering {
        let sp = sign_of(&self.rat);
        let sq = sign_of(&self.coef);
        if sq == Ordering::Equal {
            return sp;
        }
        if sp == Ordering::Equal || sp == sq {
            return sq;
        }
        let dq = Rational::from_integer(BigInt::from(self.radicand));
        match (&self.rat * &self.rat).cmp(&(&self.coef * &self.coef * dq)) {
            Ordering::Greater => sp,
            Ordering::Less => sq,
            // d squarefree ≥ 2 makes p² = q²d impossible for q ≠ 0
            Ordering::Equal => unreachable!("p^2 = q^2 d with squarefree d"),
        }
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Lower and upper rational bounds on the value, `|upper − lower| ≤ 2^-bits`.
    pub fn bounds(&self, bits: u32) -> (Rational, Rational) {
        if self.is_rational() {
            return (self.rat.clone(), self.rat.clone());
        }
        // floor(√(d·4^bits)) / 2^bits ≤ √d < (floor + 1) / 2^bits
        let scale = BigInt::one() << bits;
        let root = (BigInt::from(self.radicand) * &scale * &scale).sqrt();
        let lo = Rational::new(root.clone(), scale.clone());
        let hi = Rational::new(root + 1, scale);
        let (a, b) = (&self.rat + &self.coef * &lo, &self.rat + &self.coef * &hi);
        if a <= b {
            (a, b)
        } else {
            (b, a)
        }
    }

    pub fn to_f64(&self) -> f64 {
        let r = self.rat.to_f64().unwrap_or(f64::NAN);
        if self.is_rational() {
            return r;
        }
        r + self.coef.to_f64().unwrap_or(f64::NAN) * (self.radicand as f64).sqrt()
    }
}

fn sign_of(r: &Rational) -> Ordering {
    match r.numer().sign() {
        Sign::Minus => Ordering::Less,
        Sign::NoSign => Ordering::Equal,
        Sign::Plus => Ordering::Greater,
    }
}

/// Sign of `x + y·√d1 + z·√d2` where `x + y√d1` and `z√d2` are given.
fn sign_mixed(u: &QuadExt, z: &Rational, d2: u64) -> Ordering {
    // compare u against v = −z√d2
    let su = u.signum();
    let sv = sign_of(z).reverse();
    if su != sv {
        return if su == Ordering::Equal {
            sv.reverse()
        } else {
            su
        };
    }
    if su == Ordering::Equal {
        return Ordering::Equal;
    }
    // same strict sign: sign(u − v) = sign(u) · sign(u² − v²)
    let v2 = QuadExt::rational(z * z * Rational::from_integer(BigInt::from(d2)));
    let diff = &(u * u) - &v2;
    match su {
        Ordering::Greater => diff.signum(),
        _ => diff.signum().reverse(),
    }
}

impl PartialOrd for QuadExt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order by real value; works across different radicands.
impl Ord for QuadExt {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.checked_sub(other) {
            Ok(d) => d.signum(),
            Err(_) => {
                let u = QuadExt {
                    rat: &self.rat - &other.rat,
                    coef: self.coef.clone(),
                    radicand: self.radicand,
                };
                sign_mixed(&u, &-other.coef.clone(), other.radicand)
            }
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'a> $trait<&'a QuadExt> for &'a QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: &'a QuadExt) -> QuadExt {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: QuadExt) -> QuadExt {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: &'a QuadExt) -> QuadExt {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt {
            rat: -self.rat.clone(),
            coef: -self.coef.clone(),
            radicand: self.radicand,
        }
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        -&self
    }
}

impl From<Rational> for QuadExt {
    fn from(r: Rational) -> Self {
        QuadExt::rational(r)
    }
}

impl From<i64> for QuadExt {
    fn from(v: i64) -> Self {
        QuadExt::from_int(v)
    }
}

pub(crate) fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Canonical literal: `p`, `q*sqrt(d)`, `p+q*sqrt(d)` or `p-q*sqrt(d)`.
impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return f.write_str(&fmt_rational(&self.rat));
        }
        if self.rat.is_zero() {
            return write!(f, "{}*sqrt({})", fmt_rational(&self.coef), self.radicand);
        }
        let op = if self.coef.is_negative() { '-' } else { '+' };
        write!(
            f,
            "{}{}{}*sqrt({})",
            fmt_rational(&self.rat),
            op,
            fmt_rational(&self.coef.abs()),
            self.radicand
        )
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadExt({self})")
    }
}

/// Outcome of grouping `Σ bᵢ√nᵢ` by squarefree radicand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Besicovitch {
    /// Every radicand group has a nonzero coefficient sum, so the sum is nonzero.
    Independent,
    /// Some group cancels. `pairings` lists index pairs `(i, j)`, `i < j`, with
    /// equal radicands and opposite normalized coefficients.
    Cancelling {
        pairings: Vec<(usize, usize)>,
        total_zero: bool,
    },
}

/// Linear independence of square roots over ℚ: a sum of `bᵢ√nᵢ` over distinct
/// squarefree `nᵢ` vanishes only when all `bᵢ` do. Terms with equal radicands
/// are grouped, and cancelling pairs inside a vanishing group are reported.
pub fn besicovitch_pairing(terms: &[(Rational, u64)]) -> Besicovitch {
    let normalized: Vec<(Rational, u64)> = terms
        .iter()
        .map(|(b, n)| {
            let (square, core) = squarefree_split(*n);
            (b * Rational::from_integer(BigInt::from(square)), core)
        })
        .collect();
    let mut groups: Vec<(u64, Rational)> = Vec::new();
    for (b, core) in &normalized {
        match groups.iter_mut().find(|(c, _)| c == core) {
            Some((_, sum)) => *sum += b,
            None => groups.push((*core, b.clone())),
        }
    }
    let zero_groups: Vec<u64> = groups
        .iter()
        .filter(|(_, s)| s.is_zero())
        .map(|(c, _)| *c)
        .collect();
    if zero_groups.is_empty() || normalized.iter().all(|(b, _)| b.is_zero()) {
        return Besicovitch::Independent;
    }
    let mut used = vec![false; normalized.len()];
    let mut pairings = Vec::new();
    for i in 0..normalized.len() {
        let (bi, ci) = &normalized[i];
        if used[i] || bi.is_zero() || !zero_groups.contains(ci) {
            continue;
        }
        for j in i + 1..normalized.len() {
            let (bj, cj) = &normalized[j];
            if !used[j] && cj == ci && (bi + bj).is_zero() {
                used[i] = true;
                used[j] = true;
                pairings.push((i, j));
                break;
            }
        }
    }
    Besicovitch::Cancelling {
        pairings,
        total_zero: zero_groups.len() == groups.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: Rational, c: Rational, d: i64) -> QuadExt {
        QuadExt::normalize(p, c, d).unwrap()
    }

    #[test]
    fn normalize_absorbs_squares() {
        let x = q(int(0), int(1), 8);
        assert_eq!(x.coef(), &int(2));
        assert_eq!(x.radicand(), 2);
        assert_eq!(x.to_string(), "2*sqrt(2)");
    }

    #[test]
    fn zero_coefficient_is_rational() {
        let x = q(rat(1, 5), int(0), 7);
        assert!(x.is_rational());
        assert_eq!(x.radicand(), 0);
        assert_eq!(x, QuadExt::from_frac(1, 5));
    }

    #[test]
    fn perfect_square_radicand_is_rational() {
        assert_eq!(q(int(1), rat(1, 3), 9), QuadExt::from_int(2));
    }

    #[test]
    fn inverse_sqrt5_canonical() {
        let x = q(int(0), rat(1, 5), 5);
        assert_eq!((x.coef(), x.radicand()), (&rat(1, 5), 5));
        // (1/5)√5 squared is 1/5
        assert_eq!(&x * &x, QuadExt::from_frac(1, 5));
    }

    #[test]
    fn negative_radicand_rejected() {
        assert_eq!(
            QuadExt::normalize(int(0), int(1), -3),
            Err(FieldError::NonrealRadicand(-3))
        );
    }

    #[test]
    fn add_and_conj() {
        let a = QuadExt::from_frac(1, 5);
        let b = q(int(0), rat(1, 5), 5);
        let s = &a + &b;
        assert_eq!(s.to_string(), "1/5+1/5*sqrt(5)");
        assert_eq!(b.conj().to_string(), "-1/5*sqrt(5)");
    }

    #[test]
    fn sign_by_norm_comparison() {
        let x = q(rat(-3, 5), rat(1, 5), 5);
        assert!(x.is_negative());
        assert!(q(rat(-1, 2), rat(1, 5), 5).is_negative());
        assert!(q(rat(-2, 5), rat(1, 5), 5).is_positive());
        assert!(q(rat(-1, 5), rat(1, 5), 5).is_positive());
    }

    #[test]
    fn mixed_radicands_error() {
        let a = q(int(0), int(1), 2);
        let b = q(int(0), int(1), 3);
        assert_eq!(
            a.checked_add(&b),
            Err(FieldError::IncompatibleRadicands(2, 3))
        );
        assert_eq!(
            b.checked_div(&QuadExt::zero()),
            Err(FieldError::DivisionByZero)
        );
        // ordering still works: √2 < √3, 1+√2 > √3 + 0.6
        assert_eq!(a.cmp(&b), Ordering::Less);
        let c = q(int(1), int(1), 2);
        let e = q(rat(3, 5), int(1), 3);
        assert_eq!(c.cmp(&e), Ordering::Greater);
    }

    #[test]
    fn sqrt_of_rational() {
        assert_eq!(
            QuadExt::sqrt_rational(&rat(3, 15)).unwrap(),
            q(int(0), rat(1, 5), 5)
        );
        assert_eq!(
            QuadExt::sqrt_rational(&rat(1, 9)).unwrap(),
            QuadExt::from_frac(1, 3)
        );
    }

    #[test]
    fn squarefree_split_cases() {
        assert_eq!(squarefree_split(1), (1, 1));
        assert_eq!(squarefree_split(72), (6, 2));
        assert_eq!(squarefree_split(49), (7, 1));
        // large prime square above the cube-root trial bound
        let p = 1_000_003u64;
        assert_eq!(squarefree_split(p * p * 3), (p, 3));
        assert_eq!(squarefree_split(p * 1_000_033), (1, p * 1_000_033));
    }

    #[test]
    fn besicovitch_examples() {
        assert_eq!(
            besicovitch_pairing(&[(int(1), 2), (int(-1), 2)]),
            Besicovitch::Cancelling {
                pairings: vec![(0, 1)],
                total_zero: true
            }
        );
        assert_eq!(
            besicovitch_pairing(&[(int(1), 2), (int(1), 3)]),
            Besicovitch::Independent
        );
        assert_eq!(
            besicovitch_pairing(&[(int(5), 5), (int(-5), 5)]),
            Besicovitch::Cancelling {
                pairings: vec![(0, 1)],
                total_zero: true
            }
        );
        // √8 and 2√2 cancel after normalization
        assert_eq!(
            besicovitch_pairing(&[(int(1), 8), (int(-2), 2), (int(1), 3)]),
            Besicovitch::Cancelling {
                pairings: vec![(0, 1)],
                total_zero: false
            }
        );
    }
}
