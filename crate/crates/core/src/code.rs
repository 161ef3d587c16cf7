//! Spherical codes represented by their exact Gram matrices.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::field::{QuadExt, Rational};
use crate::linalg::{psd_rank, PsdFailure};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("a code needs at least 2 points, got {0}")]
    TooSmall(usize),
    #[error("dimension must be at least 2, got {0}")]
    BadDimension(usize),
    #[error("gram matrix is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("diagonal must be 1 (entry {0},{0})")]
    Diagonal(usize),
    #[error("gram matrix not symmetric at ({0},{1})")]
    Asymmetric(usize, usize),
    #[error("duplicate points: entry ({0},{1}) equals 1")]
    Duplicate(usize, usize),
    #[error("inner product out of [-1, 1] at ({0},{1})")]
    OutOfRange(usize, usize),
    #[error("entries mix incompatible radicands (at ({0},{1}))")]
    MixedRadicands(usize, usize),
    #[error("gram matrix is not positive semidefinite ({0:?})")]
    NotPsd(PsdFailure),
    #[error("rank exceeds dimension: rank > {dim}")]
    RankExceedsDimension { dim: usize },
    #[error("point {index} has {len} coordinates, expected {dim}")]
    CoordinateLength {
        index: usize,
        len: usize,
        dim: usize,
    },
    #[error("point {0} does not have the declared squared norm")]
    UnequalNorms(usize),
    #[error("squared norm must be positive")]
    NonPositiveNorm,
}

/// Exact coordinates with a common squared norm; kept only for emission.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coordinates {
    pub points: Vec<Vec<QuadExt>>,
    pub norm2: Rational,
}

/// Distinct nontrivial inner products `a_1 > a_2 > … > a_s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectrum {
    pub values: Vec<QuadExt>,
}

impl Spectrum {
    pub fn s(&self) -> usize {
        self.values.len()
    }

    pub fn max(&self) -> &QuadExt {
        &self.values[0]
    }

    pub fn contains(&self, a: &QuadExt) -> bool {
        self.values.contains(a)
    }

    pub fn is_rational(&self) -> bool {
        self.values.iter().all(QuadExt::is_rational)
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, a) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("}")
    }
}

/// Per-point counts `A_{a_i}(x)` in spectrum order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceDistribution {
    pub counts: Vec<Vec<usize>>,
    pub uniform: bool,
}

impl DistanceDistribution {
    /// The common count vector when the distribution does not depend on the point.
    pub fn uniform_counts(&self) -> Option<&[usize]> {
        self.uniform.then(|| self.counts[0].as_slice())
    }

    /// Ordered pairs `(x, y)`, `x ≠ y`, per inner product.
    pub fn pair_totals(&self) -> Vec<usize> {
        let s = self.counts[0].len();
        (0..s)
            .map(|i| self.counts.iter().map(|row| row[i]).sum())
            .collect()
    }
}

/// A finite set on `S^{n−1}` given by its Gram matrix.
#[derive(Debug, Clone)]
pub struct SphericalCode {
    label: String,
    dim: usize,
    gram: Vec<Vec<QuadExt>>,
    radicand: u64,
    spectrum: Spectrum,
    relation: Vec<u16>,
    coords: Option<Coordinates>,
}

impl PartialEq for SphericalCode {
    fn eq(&self, other: &Self) -> bool {
        self.label == other.label && self.dim == other.dim && self.gram == other.gram
    }
}

impl SphericalCode {
    /// Validates a Gram matrix and builds the code.
    pub fn from_gram(
        label: impl Into<String>,
        dim: usize,
        gram: Vec<Vec<QuadExt>>,
    ) -> Result<Self, CodeError> {
        let size = gram.len();
        if dim < 2 {
            return Err(CodeError::BadDimension(dim));
        }
        if size < 2 {
            return Err(CodeError::TooSmall(size));
        }
        for (i, row) in gram.iter().enumerate() {
            if row.len() != size {
                return Err(CodeError::NotSquare {
                    row: i,
                    len: row.len(),
                    expected: size,
                });
            }
        }
        let one = QuadExt::one();
        let minus_one = QuadExt::from_int(-1);
        let mut radicand = 0u64;
        for i in 0..size {
            if !gram[i][i].is_one() {
                return Err(CodeError::Diagonal(i));
            }
            for j in 0..size {
                let v = &gram[i][j];
                if v.radicand() != 0 {
                    if radicand == 0 {
                        radicand = v.radicand();
                    } else if radicand != v.radicand() {
                        return Err(CodeError::MixedRadicands(i, j));
                    }
                }
                if j <= i {
                    continue;
                }
                if gram[j][i] != *v {
                    return Err(CodeError::Asymmetric(i, j));
                }
                if *v == one {
                    return Err(CodeError::Duplicate(i, j));
                }
                if *v > one || *v < minus_one {
                    return Err(CodeError::OutOfRange(i, j));
                }
            }
        }
        match psd_rank(&gram, Some(dim)) {
            Ok(r) if r > dim => return Err(CodeError::RankExceedsDimension { dim }),
            Ok(_) => {}
            Err(f) => return Err(CodeError::NotPsd(f)),
        }
        let (spectrum, relation) = index_relations(&gram);
        Ok(SphericalCode {
            label: label.into(),
            dim,
            gram,
            radicand,
            spectrum,
            relation,
            coords: None,
        })
    }

    /// Gram matrix `(x·y)/norm2` of points with the common squared norm `norm2`.
    pub fn from_coords(
        label: impl Into<String>,
        dim: usize,
        points: Vec<Vec<QuadExt>>,
        norm2: Rational,
    ) -> Result<Self, CodeError> {
        if norm2 <= Rational::zero() {
            return Err(CodeError::NonPositiveNorm);
        }
        for (i, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(CodeError::CoordinateLength {
                    index: i,
                    len: p.len(),
                    dim,
                });
            }
        }
        let inv = QuadExt::rational(Rational::one() / &norm2);
        let dot = |a: &[QuadExt], b: &[QuadExt]| {
            a.iter()
                .zip(b)
                .fold(QuadExt::zero(), |acc, (x, y)| &acc + &(x * y))
        };
        for (i, p) in points.iter().enumerate() {
            if dot(p, p) != QuadExt::rational(norm2.clone()) {
                return Err(CodeError::UnequalNorms(i));
            }
        }
        let gram: Vec<Vec<QuadExt>> = points
            .par_iter()
            .map(|x| points.iter().map(|y| &dot(x, y) * &inv).collect())
            .collect();
        let mut code = Self::from_gram(label, dim, gram)?;
        code.coords = Some(Coordinates { points, norm2 });
        Ok(code)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn size(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<QuadExt>] {
        &self.gram
    }

    pub fn coords(&self) -> Option<&Coordinates> {
        self.coords.as_ref()
    }

    /// Common radicand of the Gram entries (0 when all rational).
    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    pub fn s(&self) -> usize {
        self.spectrum.s()
    }

    /// Relation index of the pair: 0 on the diagonal, `i` when `⟨x,y⟩ = a_i`.
    pub fn relation(&self, x: usize, y: usize) -> usize {
        self.relation[x * self.size() + y] as usize
    }

    pub(crate) fn relation_row(&self, x: usize) -> &[u16] {
        let n = self.size();
        &self.relation[x * n..(x + 1) * n]
    }

    /// Inner product attached to relation `l` (`a_0 = 1`).
    pub fn relation_value(&self, l: usize) -> QuadExt {
        if l == 0 {
            QuadExt::one()
        } else {
            self.spectrum.values[l - 1].clone()
        }
    }

    /// Exact rank of the Gram matrix.
    pub fn rank(&self) -> usize {
        psd_rank(&self.gram, None).expect("validated gram matrix is PSD")
    }

    pub fn distance_distribution(&self) -> DistanceDistribution {
        let s = self.s();
        let counts: Vec<Vec<usize>> = (0..self.size())
            .into_par_iter()
            .map(|x| {
                let mut c = vec![0usize; s];
                for &r in self.relation_row(x) {
                    if r > 0 {
                        c[r as usize - 1] += 1;
                    }
                }
                c
            })
            .collect();
        let uniform = counts.iter().all(|c| c == &counts[0]);
        DistanceDistribution { counts, uniform }
    }

    /// Every point has exactly one antipode and `A(C) ∪ {1}` is symmetric about 0.
    pub fn is_antipodal(&self) -> bool {
        let minus_one = QuadExt::from_int(-1);
        let Some(pos) = self.spectrum.values.iter().position(|a| *a == minus_one) else {
            return false;
        };
        let dist = self.distance_distribution();
        dist.counts.iter().all(|c| c[pos] == 1) && self.symmetric_spectrum()
    }

    /// `A(C) ∪ {1}` is closed under `a ↦ −a`.
    pub fn symmetric_spectrum(&self) -> bool {
        let one = QuadExt::one();
        let vals = &self.spectrum.values;
        vals.iter().chain(std::iter::once(&one)).all(|a| {
            let neg = -a;
            neg == one || vals.contains(&neg)
        })
    }

    /// The code formed by the listed points.
    pub fn subcode(&self, indices: &[usize]) -> Result<Self, CodeError> {
        let gram = indices
            .iter()
            .map(|&i| indices.iter().map(|&j| self.gram[i][j].clone()).collect())
            .collect();
        Self::from_gram(
            format!("{} ({} points)", self.label, indices.len()),
            self.dim,
            gram,
        )
    }

    /// A copy with point `index` replaced by its negative.
    pub fn with_point_negated(&self, index: usize) -> Result<Self, CodeError> {
        let mut gram = self.gram.clone();
        for j in 0..self.size() {
            if j != index {
                let v = -&gram[index][j];
                gram[index][j] = v.clone();
                gram[j][index] = v;
            }
        }
        Self::from_gram(
            format!("{} (point {index} negated)", self.label),
            self.dim,
            gram,
        )
    }
}

/// Sorted spectrum and the relation index matrix.
fn index_relations(gram: &[Vec<QuadExt>]) -> (Spectrum, Vec<u16>) {
    let n = gram.len();
    let mut distinct: Vec<QuadExt> = Vec::new();
    for (i, row) in gram.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if i != j && !distinct.contains(v) {
                distinct.push(v.clone());
            }
        }
    }
    distinct.sort_by(|a, b| b.cmp(a));
    let index: HashMap<&QuadExt, u16> = distinct
        .iter()
        .enumerate()
        .map(|(i, a)| (a, i as u16 + 1))
        .collect();
    let relation: Vec<u16> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let index = &index;
            gram[i]
                .iter()
                .enumerate()
                .map(move |(j, v)| if i == j { 0 } else { index[v] })
        })
        .collect();
    (Spectrum { values: distinct }, relation)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::int;

    fn simplex_gram(n: usize) -> Vec<Vec<QuadExt>> {
        let off = QuadExt::from_frac(-1, n as i64);
        (0..=n)
            .map(|i| {
                (0..=n)
                    .map(|j| if i == j { QuadExt::one() } else { off.clone() })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn simplex_spectrum() {
        let c = SphericalCode::from_gram("simplex", 4, simplex_gram(4)).unwrap();
        assert_eq!(c.spectrum().values, vec![QuadExt::from_frac(-1, 4)]);
        let d = c.distance_distribution();
        assert_eq!(d.uniform_counts(), Some(&[4usize][..]));
        assert_eq!(c.rank(), 4);
        assert!(!c.is_antipodal());
    }

    #[test]
    fn rejects_bad_diagonal() {
        let mut g = simplex_gram(3);
        g[2][2] = QuadExt::from_int(2);
        assert_eq!(
            SphericalCode::from_gram("x", 3, g),
            Err(CodeError::Diagonal(2))
        );
    }

    #[test]
    fn rejects_rank_overflow() {
        assert_eq!(
            SphericalCode::from_gram("x", 3, simplex_gram(4)),
            Err(CodeError::RankExceedsDimension { dim: 3 })
        );
    }

    #[test]
    fn rejects_duplicates_and_asymmetry() {
        let mut g = simplex_gram(3);
        g[0][1] = QuadExt::one();
        g[1][0] = QuadExt::one();
        assert_eq!(
            SphericalCode::from_gram("x", 3, g),
            Err(CodeError::Duplicate(0, 1))
        );
        let mut g = simplex_gram(3);
        g[0][1] = QuadExt::zero();
        assert_eq!(
            SphericalCode::from_gram("x", 3, g),
            Err(CodeError::Asymmetric(0, 1))
        );
    }

    #[test]
    fn cross_polytope_from_coords() {
        let n = 3;
        let mut pts = Vec::new();
        for i in 0..n {
            for s in [1, -1] {
                let mut p = vec![QuadExt::zero(); n];
                p[i] = QuadExt::from_int(s);
                pts.push(p);
            }
        }
        let c = SphericalCode::from_coords("cross", n, pts, int(1)).unwrap();
        assert_eq!(
            c.spectrum().values,
            vec![QuadExt::zero(), QuadExt::from_int(-1)]
        );
        assert!(c.is_antipodal());
        assert_eq!(
            c.distance_distribution().uniform_counts(),
            Some(&[4usize, 1][..])
        );
    }

    #[test]
    fn unequal_norms_rejected() {
        let pts = vec![
            vec![QuadExt::one(), QuadExt::zero()],
            vec![QuadExt::from_int(2), QuadExt::zero()],
        ];
        assert_eq!(
            SphericalCode::from_coords("x", 2, pts, int(1)),
            Err(CodeError::UnequalNorms(1))
        );
    }
}
