//! Exact dense linear algebra over a single quadratic field.

use std::cmp::Ordering;

use crate::field::QuadExt;
use crate::poly::ExactPolynomial;

pub type Matrix = Vec<Vec<QuadExt>>;

/// Why a symmetric matrix failed the semidefiniteness test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PsdFailure {
    /// A Schur-complement diagonal entry at `index` is negative.
    NegativePivot { index: usize, step: usize },
    /// A zero diagonal with a nonzero entry in its row.
    ZeroDiagonalRow { row: usize, col: usize },
}

/// Rank of a symmetric matrix, or the reason it is not positive semidefinite.
///
/// Fraction-free (Bareiss) symmetric elimination with diagonal pivoting.
/// After `k` steps every remaining entry equals the last pivot (a principal
/// minor, positive so far) times the matching Schur-complement entry, so the
/// sign of each remaining diagonal is the sign of the Schur diagonal. The
/// Schur complement of a PSD matrix is PSD, which gives the test.
///
/// `stop_after` ends the elimination once that many pivots are found, and
/// then returns `stop_after + 1` when anything nonzero remains.
pub fn psd_rank(m: &[Vec<QuadExt>], stop_after: Option<usize>) -> Result<usize, PsdFailure> {
    let n = m.len();
    let mut a: Matrix = m.to_vec();
    let mut order: Vec<usize> = (0..n).collect();
    let mut prev = QuadExt::one();
    for k in 0..n {
        let mut pivot = None;
        for i in k..n {
            match a[i][i].signum() {
                Ordering::Less => {
                    return Err(PsdFailure::NegativePivot {
                        index: order[i],
                        step: k,
                    })
                }
                Ordering::Greater if pivot.is_none() => pivot = Some(i),
                _ => {}
            }
        }
        let Some(p) = pivot else {
            for i in k..n {
                for j in k..n {
                    if !a[i][j].is_zero() {
                        return Err(PsdFailure::ZeroDiagonalRow {
                            row: order[i],
                            col: order[j],
                        });
                    }
                }
            }
            return Ok(k);
        };
        if stop_after == Some(k) {
            return Ok(k + 1);
        }
        a.swap(k, p);
        for row in a.iter_mut() {
            row.swap(k, p);
        }
        order.swap(k, p);
        let pk = a[k][k].clone();
        for i in k + 1..n {
            if a[i][k].is_zero() {
                for j in i..n {
                    let v = &(&pk * &a[i][j]) / &prev;
                    a[i][j] = v.clone();
                    a[j][i] = v;
                }
                continue;
            }
            for j in i..n {
                let v = &(&(&pk * &a[i][j]) - &(&a[i][k] * &a[k][j])) / &prev;
                a[j][i] = v.clone();
                a[i][j] = v;
            }
        }
        prev = pk;
    }
    Ok(n)
}

/// Solves `a·x = b` by Gaussian elimination; `None` if `a` is singular.
pub fn solve(a: &[Vec<QuadExt>], b: &[QuadExt]) -> Option<Vec<QuadExt>> {
    let cols: Vec<Vec<QuadExt>> = b.iter().map(|v| vec![v.clone()]).collect();
    solve_many(a, &cols).map(|x| x.into_iter().map(|mut r| r.remove(0)).collect())
}

/// Solves `a·X = B` for a matrix right-hand side (rows of `B`).
pub fn solve_many(a: &[Vec<QuadExt>], b: &[Vec<QuadExt>]) -> Option<Matrix> {
    let n = a.len();
    let mut m: Matrix = a
        .iter()
        .zip(b)
        .map(|(r, rb)| r.iter().chain(rb.iter()).cloned().collect())
        .collect();
    let width = m.first().map_or(0, Vec::len);
    for k in 0..n {
        let p = (k..n).find(|&i| !m[i][k].is_zero())?;
        m.swap(k, p);
        let inv = QuadExt::one() / &m[k][k];
        for j in k..width {
            m[k][j] = &m[k][j] * &inv;
        }
        for i in 0..n {
            if i == k || m[i][k].is_zero() {
                continue;
            }
            let f = m[i][k].clone();
            for j in k..width {
                let v = &m[i][j] - &(&f * &m[k][j]);
                m[i][j] = v;
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_mul(a: &[Vec<QuadExt>], b: &[Vec<QuadExt>]) -> Matrix {
    let n = a.len();
    let p = b.first().map_or(0, Vec::len);
    let mut out = vec![vec![QuadExt::zero(); p]; n];
    for i in 0..n {
        for (k, aik) in a[i].iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for j in 0..p {
                out[i][j] = &out[i][j] + &(aik * &b[k][j]);
            }
        }
    }
    out
}

/// Characteristic polynomial `det(x·I − a)` by the Faddeev–LeVerrier recursion.
pub fn char_poly(a: &[Vec<QuadExt>]) -> ExactPolynomial {
    let n = a.len();
    let mut coeffs = vec![QuadExt::zero(); n + 1];
    coeffs[n] = QuadExt::one();
    // M_1 = I, c_{n−k} = −tr(A·M_k)/k, M_{k+1} = A·M_k + c_{n−k} I
    let mut mk: Matrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        QuadExt::one()
                    } else {
                        QuadExt::zero()
                    }
                })
                .collect()
        })
        .collect();
    for k in 1..=n {
        let am = mat_mul(a, &mk);
        let trace = (0..n).fold(QuadExt::zero(), |acc, i| &acc + &am[i][i]);
        let c = -(&trace / &QuadExt::from_int(k as i64));
        coeffs[n - k] = c.clone();
        mk = am;
        for (i, row) in mk.iter_mut().enumerate() {
            row[i] = &row[i] + &c;
        }
    }
    ExactPolynomial::new(coeffs)
}
