//! Dense univariate polynomials with [`QuadExt`] coefficients.

use std::fmt;

use crate::field::{QuadExt, Rational};

/// Coefficients in ascending degree, with no trailing zeros.
///
/// `dim` tags polynomials that belong to the Gegenbauer or Jacobi family of
/// a fixed sphere dimension; arithmetic drops the tag.
#[derive(Clone)]
pub struct ExactPolynomial {
    coeffs: Vec<QuadExt>,
    dim: Option<u32>,
}

impl ExactPolynomial {
    pub fn new(mut coeffs: Vec<QuadExt>) -> Self {
        while coeffs.last().is_some_and(QuadExt::is_zero) {
            coeffs.pop();
        }
        ExactPolynomial { coeffs, dim: None }
    }

    pub fn from_rationals(coeffs: impl IntoIterator<Item = Rational>) -> Self {
        Self::new(coeffs.into_iter().map(QuadExt::rational).collect())
    }

    pub fn zero() -> Self {
        Self::new(Vec::new())
    }

    pub fn constant(c: QuadExt) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(QuadExt::one())
    }

    /// The monomial `u`.
    pub fn x() -> Self {
        Self::new(vec![QuadExt::zero(), QuadExt::one()])
    }

    /// `u − root`.
    pub fn linear_root(root: &QuadExt) -> Self {
        Self::new(vec![-root, QuadExt::one()])
    }

    pub fn with_dim(mut self, n: u32) -> Self {
        self.dim = Some(n);
        self
    }

    pub fn dim(&self) -> Option<u32> {
        self.dim
    }

    pub fn coeffs(&self) -> &[QuadExt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> QuadExt {
        self.coeffs.get(k).cloned().unwrap_or_else(QuadExt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&QuadExt> {
        self.coeffs.last()
    }

    /// The common radicand of the coefficients (0 if all rational).
    pub fn radicand(&self) -> u64 {
        self.coeffs
            .iter()
            .map(QuadExt::radicand)
            .find(|&d| d != 0)
            .unwrap_or(0)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().all(QuadExt::is_rational)
    }

    /// Rational coefficients, if every coefficient is rational.
    pub fn rational_coeffs(&self) -> Option<Vec<Rational>> {
        self.coeffs
            .iter()
            .map(|c| c.as_rational().cloned())
            .collect()
    }

    /// Horner evaluation.
    pub fn eval(&self, u: &QuadExt) -> QuadExt {
        self.coeffs
            .iter()
            .rev()
            .fold(QuadExt::zero(), |acc, c| &(&acc * u) + c)
    }

    pub fn eval_rational(&self, u: &Rational) -> QuadExt {
        self.eval(&QuadExt::rational(u.clone()))
    }

    pub fn scale(&self, k: &QuadExt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn conj(&self) -> Self {
        Self::new(self.coeffs.iter().map(QuadExt::conj).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &QuadExt::from_int(k as i64))
                .collect(),
        )
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) => {
                let inv = QuadExt::one() / lc;
                self.scale(&inv)
            }
            None => Self::zero(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![QuadExt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Euclidean division over the coefficient field. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lc_inv = QuadExt::one() / divisor.leading().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![QuadExt::zero(); rem.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let c = &rem[rem.len() - 1] * &lc_inv;
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = &rem[k + j] - &(&c * dc);
            }
            quot[k] = c;
            rem.pop();
            while rem.last().is_some_and(QuadExt::is_zero) {
                rem.pop();
            }
        }
        (Self::new(quot), Self::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `p / gcd(p, p')`, monic.
    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Product with the conjugate polynomial; rational when the coefficients
    /// share one radicand.
    pub fn norm_poly(&self) -> Self {
        if self.is_rational() {
            self.clone()
        } else {
            self.mul(&self.conj())
        }
    }
}

/// Equality compares coefficients only, ignoring the dimension tag.
impl PartialEq for ExactPolynomial {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Eq for ExactPolynomial {}

impl fmt::Debug for ExactPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactPolynomial[{self}]")
    }
}

/// Ascending list of coefficients, `[c0, c1, …]`.
impl fmt::Display for ExactPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

/// `Π (u − rᵢ)`.
pub fn from_roots<'a>(roots: impl IntoIterator<Item = &'a QuadExt>) -> ExactPolynomial {
    roots.into_iter().fold(ExactPolynomial::one(), |acc, r| {
        acc.mul(&ExactPolynomial::linear_root(r))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;

    fn p(c: &[(i64, i64)]) -> ExactPolynomial {
        ExactPolynomial::from_rationals(c.iter().map(|&(a, b)| rat(a, b)))
    }

    #[test]
    fn trims_and_degrees() {
        let a = p(&[(1, 1), (0, 1), (0, 1)]);
        assert_eq!(a.degree(), Some(0));
        assert_eq!(ExactPolynomial::zero().degree(), None);
    }

    #[test]
    fn division_and_gcd() {
        // (u+1)^2 (u - 1/2)
        let f = from_roots(&[
            QuadExt::from_int(-1),
            QuadExt::from_int(-1),
            QuadExt::from_frac(1, 2),
        ]);
        let (q, r) = f.div_rem(&p(&[(1, 1), (1, 1)]));
        assert!(r.is_zero());
        assert_eq!(q.degree(), Some(2));
        let sf = f.squarefree_part();
        assert_eq!(
            sf,
            from_roots(&[QuadExt::from_int(-1), QuadExt::from_frac(1, 2)])
        );
    }

    #[test]
    fn conj_norm_is_rational() {
        let r = crate::literal::parse_literal("1/5*sqrt(5)").unwrap();
        let f = ExactPolynomial::linear_root(&r);
        let n = f.norm_poly();
        assert!(n.is_rational());
        assert_eq!(n, p(&[(-1, 5), (0, 1), (1, 1)]));
    }
}
