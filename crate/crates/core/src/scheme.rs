//! The association scheme carried by a code: intersection numbers,
//! primitive idempotents in the relation-value representation, Krein
//! parameters, Q-polynomial orderings and the Galois action.

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::code::SphericalCode;
use crate::design::design_strength;
use crate::field::QuadExt;
use crate::linalg::{char_poly, mat_mul, solve_many, Matrix};
use crate::orthopoly::{gegenbauer_family, harmonic_dim};
use crate::roots::exact_roots;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemeError {
    #[error("not an association scheme: p_{i}{j}^{k} is {found} at ({x}, {y}) but {expected} at the first pair of relation {k}")]
    NotConstant {
        x: usize,
        y: usize,
        k: usize,
        i: usize,
        j: usize,
        expected: usize,
        found: usize,
    },
    #[error("relation {0} does not occur")]
    EmptyRelation(usize),
    #[error("spectral decomposition failed: {0}")]
    Spectral(&'static str),
    #[error("change of basis to the idempotents is singular")]
    Singular,
}

/// How the idempotent values were obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdempotentSource {
    /// `e_k(l) = h_k Q_k(a_l) / |C|` for `k < s`, the last one by complement.
    Gegenbauer,
    /// Eigenprojections of a generic element of the Bose–Mesner algebra.
    Spectral,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemeTables {
    pub size: usize,
    pub s: usize,
    /// `a_0 = 1, a_1, …, a_s`.
    pub values: Vec<QuadExt>,
    /// `p[i][j][k]`.
    pub p: Vec<Vec<Vec<usize>>>,
    /// `evalues[k][l]`: the entry of `E_k` on relation `l`.
    pub evalues: Matrix,
    pub mult: Vec<QuadExt>,
    /// `krein[i][j][k] = q_ij^k` with `E_i ∘ E_j = (1/|C|) Σ_k q_ij^k E_k`.
    pub krein: Vec<Vec<Vec<QuadExt>>>,
    pub source: IdempotentSource,
}

impl SchemeTables {
    pub fn valency(&self, i: usize) -> usize {
        self.p[i][i][0]
    }

    /// Multiplicities as integers, when they are.
    pub fn integer_mult(&self) -> Option<Vec<usize>> {
        self.mult
            .iter()
            .map(|m| {
                let r = m.as_rational()?;
                r.is_integer().then(|| r.to_integer().try_into().ok())?
            })
            .collect()
    }

    /// Coefficients on `A_k` of the product `X·Y`, both given on the relation basis.
    fn product(&self, x: &[QuadExt], y: &[QuadExt]) -> Vec<QuadExt> {
        let d = self.s + 1;
        let mut out = vec![QuadExt::zero(); d];
        for l in 0..d {
            if x[l].is_zero() {
                continue;
            }
            for m in 0..d {
                if y[m].is_zero() {
                    continue;
                }
                let xy = &x[l] * &y[m];
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.p[l][m][k];
                    if c != 0 {
                        *o = &*o + &(&xy * &QuadExt::from_int(c as i64));
                    }
                }
            }
        }
        out
    }

    /// `E_i E_j = δ_ij E_i` for every pair, checked on the relation basis.
    pub fn verify_idempotency(&self) -> Result<(), (usize, usize)> {
        let d = self.s + 1;
        for i in 0..d {
            for j in i..d {
                let prod = self.product(&self.evalues[i], &self.evalues[j]);
                let expected = if i == j {
                    self.evalues[i].clone()
                } else {
                    vec![QuadExt::zero(); d]
                };
                if prod != expected {
                    return Err((i, j));
                }
            }
        }
        Ok(())
    }

    /// `Σ_k e_k(l) = δ_{l0}`.
    pub fn resolution_of_identity(&self) -> bool {
        (0..=self.s).all(|l| {
            let sum = self
                .evalues
                .iter()
                .fold(QuadExt::zero(), |acc, e| &acc + &e[l]);
            if l == 0 {
                sum.is_one()
            } else {
                sum.is_zero()
            }
        })
    }

    /// Every Krein parameter is nonnegative.
    pub fn krein_nonnegative(&self) -> bool {
        self.krein
            .iter()
            .flatten()
            .flatten()
            .all(|q| !q.is_negative())
    }

    /// `q_{0j}^k = δ_jk`.
    pub fn krein_identity_row(&self) -> bool {
        let d = self.s + 1;
        (0..d).all(|j| (0..d).all(|k| self.krein[0][j][k] == QuadExt::from_int((j == k) as i64)))
    }

    /// Every idempotent value is rational.
    pub fn is_rational(&self) -> bool {
        self.evalues.iter().flatten().all(QuadExt::is_rational)
    }
}

/// Relation indices with relation 0 on the diagonal.
fn relation_matrix(code: &SphericalCode) -> Vec<Vec<u16>> {
    (0..code.size())
        .map(|x| code.relation_row(x).to_vec())
        .collect()
}

/// `p_ij^k` counted at `(x, y)`.
fn count_at(rel: &[Vec<u16>], d: usize, x: usize, y: usize) -> Vec<usize> {
    let mut h = vec![0usize; d * d];
    let rx = &rel[x];
    let ry = &rel[y];
    for z in 0..rel.len() {
        h[rx[z] as usize * d + ry[z] as usize] += 1;
    }
    h
}

/// Intersection numbers, verified constant over every pair.
pub fn intersection_numbers(code: &SphericalCode) -> Result<Vec<Vec<Vec<usize>>>, SchemeError> {
    let d = code.s() + 1;
    let rel = relation_matrix(code);
    let size = code.size();
    let mut reps: Vec<Option<(usize, usize)>> = vec![None; d];
    for (x, row) in rel.iter().enumerate() {
        for (y, &r) in row.iter().enumerate() {
            reps[r as usize].get_or_insert((x, y));
        }
    }
    let mut tables = Vec::with_capacity(d);
    for (k, rep) in reps.iter().enumerate() {
        let (x, y) = rep.ok_or(SchemeError::EmptyRelation(k))?;
        tables.push(count_at(&rel, d, x, y));
    }
    let witness = (0..size)
        .into_par_iter()
        .map(|x| {
            for y in 0..size {
                let k = rel[x][y] as usize;
                let h = count_at(&rel, d, x, y);
                if let Some(pos) = (0..d * d).find(|&c| h[c] != tables[k][c]) {
                    return Some(SchemeError::NotConstant {
                        x,
                        y,
                        k,
                        i: pos / d,
                        j: pos % d,
                        expected: tables[k][pos],
                        found: h[pos],
                    });
                }
            }
            None
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .next();
    if let Some(err) = witness {
        return Err(err);
    }
    Ok((0..d)
        .map(|i| {
            (0..d)
                .map(|j| (0..d).map(|k| tables[k][i * d + j]).collect())
                .collect()
        })
        .collect())
}

/// Builds the scheme tables. Delsarte codes (`t ≥ 2s − 2`) take their
/// idempotents from the Gegenbauer formula; any other code that still closes
/// into a scheme goes through the spectral decomposition.
pub fn build_scheme(code: &SphericalCode) -> Result<SchemeTables, SchemeError> {
    let p = intersection_numbers(code)?;
    let s = code.s();
    let values: Vec<QuadExt> = (0..=s).map(|l| code.relation_value(l)).collect();
    let delsarte = design_strength(code).t + 2 >= 2 * s;
    let (evalues, source) = if delsarte {
        (
            gegenbauer_idempotents(code, &values),
            IdempotentSource::Gegenbauer,
        )
    } else {
        (
            spectral_idempotents(&p, &values, code.size())?,
            IdempotentSource::Spectral,
        )
    };
    let size = QuadExt::from_int(code.size() as i64);
    let mult = evalues.iter().map(|e| &e[0] * &size).collect();
    let mut tables = SchemeTables {
        size: code.size(),
        s,
        values,
        p,
        evalues,
        mult,
        krein: Vec::new(),
        source,
    };
    tables.krein = krein_parameters(&tables)?;
    Ok(tables)
}

fn gegenbauer_idempotents(code: &SphericalCode, values: &[QuadExt]) -> Matrix {
    let s = values.len() - 1;
    let n = code.dim() as u32;
    let size = QuadExt::from_int(code.size() as i64);
    let family = gegenbauer_family(n, s.saturating_sub(1));
    let mut ev: Matrix = family
        .iter()
        .take(s)
        .enumerate()
        .map(|(k, qk)| {
            let hk = QuadExt::from_int(harmonic_dim(n as u64, k as u64) as i64);
            let scale = &hk / &size;
            values.iter().map(|a| &qk.eval(a) * &scale).collect()
        })
        .collect();
    let last = (0..=s)
        .map(|l| {
            let used = ev.iter().fold(QuadExt::zero(), |acc, e| &acc + &e[l]);
            &QuadExt::from_int((l == 0) as i64) - &used
        })
        .collect();
    ev.push(last);
    ev
}

/// Primitive idempotents as eigenprojections of `M = Σ c_l A_l`, ordered
/// `E_0` (constant), `E_1` (proportional to the inner products), then by
/// multiplicity and value table.
fn spectral_idempotents(
    p: &[Vec<Vec<usize>>],
    values: &[QuadExt],
    size: usize,
) -> Result<Matrix, SchemeError> {
    let d = values.len();
    let as_q = |v: usize| QuadExt::from_int(v as i64);
    let mul = |x: &[QuadExt], y: &[QuadExt]| -> Vec<QuadExt> {
        let mut out = vec![QuadExt::zero(); d];
        for l in 0..d {
            for m in 0..d {
                if x[l].is_zero() || y[m].is_zero() {
                    continue;
                }
                let xy = &x[l] * &y[m];
                for (k, o) in out.iter_mut().enumerate() {
                    if p[l][m][k] != 0 {
                        *o = &*o + &(&xy * &as_q(p[l][m][k]));
                    }
                }
            }
        }
        out
    };
    for base in [3i64, 5, 7, 11, 13, 17] {
        let c: Vec<QuadExt> = (0..d as u32)
            .map(|l| QuadExt::from_int(base.pow(l)))
            .collect();
        // left-regular representation: (M·A_j) = Σ_k (Σ_l c_l p_lj^k) A_k
        let lm: Matrix = (0..d)
            .map(|k| {
                (0..d)
                    .map(|j| {
                        (0..d).fold(QuadExt::zero(), |acc, l| {
                            &acc + &(&c[l] * &as_q(p[l][j][k]))
                        })
                    })
                    .collect()
            })
            .collect();
        let Ok(Some(thetas)) = exact_roots(&char_poly(&lm)) else {
            continue;
        };
        if thetas.len() != d {
            continue;
        }
        let mut idem: Matrix = Vec::with_capacity(d);
        for (r, th) in thetas.iter().enumerate() {
            let mut e = vec![QuadExt::zero(); d];
            e[0] = QuadExt::one();
            for (r2, th2) in thetas.iter().enumerate() {
                if r2 == r {
                    continue;
                }
                let denom = th - th2;
                let mut factor = c.clone();
                factor[0] = &factor[0] - th2;
                let factor: Vec<QuadExt> = factor.iter().map(|v| v / &denom).collect();
                e = mul(&e, &factor);
            }
            idem.push(e);
        }
        let inv_size = QuadExt::from_frac(1, size as i64);
        let e0 = idem
            .iter()
            .position(|e| e.iter().all(|v| *v == inv_size))
            .ok_or(SchemeError::Spectral("no constant idempotent"))?;
        let e1 = idem
            .iter()
            .position(|e| !e[0].is_zero() && values.iter().zip(e).all(|(a, v)| *v == a * &e[0]))
            .ok_or(SchemeError::Spectral(
                "no idempotent proportional to the inner products",
            ))?;
        let mut first = vec![idem[e0].clone(), idem[e1].clone()];
        let mut rest: Vec<Vec<QuadExt>> = idem
            .into_iter()
            .enumerate()
            .filter(|(i, _)| *i != e0 && *i != e1)
            .map(|(_, e)| e)
            .collect();
        rest.sort_by(|x, y| x[0].cmp(&y[0]).then_with(|| x.cmp(y)));
        first.extend(rest);
        return Ok(first);
    }
    Err(SchemeError::Spectral(
        "no generic element with distinct exact eigenvalues",
    ))
}

/// Solves `Σ_k c_k e_k(l) = e_i(l) e_j(l)` over all relations `l`; `q = |C| c`.
pub fn krein_parameters(tables: &SchemeTables) -> Result<Vec<Vec<Vec<QuadExt>>>, SchemeError> {
    let d = tables.s + 1;
    // rows indexed by relation l, columns by idempotent k
    let a: Matrix = (0..d)
        .map(|l| (0..d).map(|k| tables.evalues[k][l].clone()).collect())
        .collect();
    let b: Matrix = (0..d)
        .map(|l| {
            (0..d * d)
                .map(|ij| &tables.evalues[ij / d][l] * &tables.evalues[ij % d][l])
                .collect()
        })
        .collect();
    let x = solve_many(&a, &b).ok_or(SchemeError::Singular)?;
    let size = QuadExt::from_int(tables.size as i64);
    Ok((0..d)
        .map(|i| {
            (0..d)
                .map(|j| (0..d).map(|k| &x[k][i * d + j] * &size).collect())
                .collect()
        })
        .collect())
}

/// Suzuki's list of possible second Q-polynomial orderings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SuzukiClass {
    I,
    II,
    III,
    IV,
    V,
}

impl fmt::Display for SuzukiClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SuzukiClass::I => "I",
            SuzukiClass::II => "II",
            SuzukiClass::III => "III",
            SuzukiClass::IV => "IV",
            SuzukiClass::V => "V",
        })
    }
}

/// Values of an alternating progression `a, b, a + da, b + db, …` while
/// they stay in `1..=d`.
fn progression(d: i64, a: i64, da: i64, b: i64, db: i64) -> Vec<usize> {
    let mut out = Vec::new();
    for k in 0.. {
        let v = if k % 2 == 0 {
            a + da * (k / 2)
        } else {
            b + db * (k / 2)
        };
        if v < 1 || v > d || out.contains(&(v as usize)) {
            break;
        }
        out.push(v as usize);
    }
    out
}

/// The ordering reads `front` forward and then `back` backward.
fn split_match(order: &[usize], front: &[usize], back: &[usize]) -> bool {
    let d = order.len();
    (0..=d).any(|k| {
        k <= front.len()
            && d - k <= back.len()
            && order[..k] == front[..k]
            && order[k..].iter().rev().eq(back[..d - k].iter())
    })
}

/// Suzuki classes matching a reordering `order` of `1..=d` (index 0 fixed).
pub fn suzuki_classes(order: &[usize]) -> Vec<SuzukiClass> {
    let d = order.len() as i64;
    let mut out = Vec::new();
    if split_match(
        order,
        &progression(d, 2, 4, 4, 4),
        &progression(d, 1, 4, 3, 4),
    ) {
        out.push(SuzukiClass::I);
    }
    if split_match(order, &progression(d, d, -1, 1, 1), &[]) {
        out.push(SuzukiClass::II);
    }
    if split_match(
        order,
        &progression(d, d, -2, 2, 2),
        &progression(d, 1, 2, d - 1, -2),
    ) {
        out.push(SuzukiClass::III);
    }
    if split_match(
        order,
        &progression(d, d - 1, -2, 2, 2),
        &progression(d, d, -2, 1, 2),
    ) {
        out.push(SuzukiClass::IV);
    }
    if order == [5, 3, 2, 4, 1] {
        out.push(SuzukiClass::V);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QOrdering {
    /// `order[j − 1]` is the old index of the new `E_j`.
    pub order: Vec<usize>,
    pub classes: Vec<SuzukiClass>,
}

impl QOrdering {
    pub fn ambiguous(&self) -> bool {
        self.classes.len() > 1
    }
}

impl fmt::Display for QOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("E_0")?;
        for k in &self.order {
            write!(f, ",E_{k}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderingReport {
    pub natural_ordering_qpoly: bool,
    pub alternates: Vec<QOrdering>,
}

impl OrderingReport {
    /// Alternates that fit no class in Suzuki's list.
    pub fn unlisted(&self) -> Vec<&QOrdering> {
        self.alternates
            .iter()
            .filter(|o| o.classes.is_empty())
            .collect()
    }

    pub fn structures(&self) -> usize {
        self.natural_ordering_qpoly as usize + self.alternates.len()
    }
}

/// Krein tridiagonality of `q_{1j}^k` in the ordering `E_0, E_{order[0]}, …`.
pub fn is_q_polynomial(tables: &SchemeTables, order: &[usize]) -> bool {
    let idx: Vec<usize> = std::iter::once(0).chain(order.iter().copied()).collect();
    let one = idx[1];
    let d = idx.len();
    for j in 0..d {
        for k in 0..d {
            let q = &tables.krein[one][idx[j]][idx[k]];
            if j.abs_diff(k) > 1 && !q.is_zero() {
                return false;
            }
            if k == j + 1 && q.is_zero() {
                return false;
            }
        }
    }
    true
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// Every Q-polynomial ordering of the idempotents, tested exhaustively.
pub fn qpoly_orderings(tables: &SchemeTables) -> OrderingReport {
    let natural: Vec<usize> = (1..=tables.s).collect();
    let alternates = permutations(&natural)
        .into_par_iter()
        .filter(|o| *o != natural && is_q_polynomial(tables, o))
        .map(|order| QOrdering {
            classes: suzuki_classes(&order),
            order,
        })
        .collect();
    OrderingReport {
        natural_ordering_qpoly: is_q_polynomial(tables, &natural),
        alternates,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GaloisError {
    #[error("the conjugate of E_{0} is not a primitive idempotent")]
    NotAnIdempotent(usize),
    #[error("conjugation sends two idempotents to E_{0}")]
    NotInjective(usize),
}

/// The permutation `π` with `E_k^σ = E_{π(k)}` for `σ: √d ↦ −√d`.
pub fn galois_action(tables: &SchemeTables) -> Result<Vec<usize>, GaloisError> {
    let mut pi = Vec::with_capacity(tables.s + 1);
    for (k, e) in tables.evalues.iter().enumerate() {
        let conj: Vec<QuadExt> = e.iter().map(QuadExt::conj).collect();
        let target = tables
            .evalues
            .iter()
            .position(|f| *f == conj)
            .ok_or(GaloisError::NotAnIdempotent(k))?;
        if pi.contains(&target) {
            return Err(GaloisError::NotInjective(target));
        }
        pi.push(target);
    }
    Ok(pi)
}

/// Cycle notation for a permutation of `0..=s`, omitting fixed points.
pub fn cycle_notation(pi: &[usize]) -> String {
    let mut seen = vec![false; pi.len()];
    let mut out = String::new();
    for start in 0..pi.len() {
        if seen[start] || pi[start] == start {
            continue;
        }
        let mut cycle = Vec::new();
        let mut k = start;
        while !seen[k] {
            seen[k] = true;
            cycle.push(k.to_string());
            k = pi[k];
        }
        out.push_str(&format!("({})", cycle.join(" ")));
    }
    if out.is_empty() {
        out.push_str("identity");
    }
    out
}

/// Dense `|C|×|C|` check of idempotency, orthogonality and the Krein
/// expansion, for small codes.
pub fn dense_cross_check(code: &SphericalCode, tables: &SchemeTables) -> Result<(), String> {
    let n = code.size();
    let d = tables.s + 1;
    let dense: Vec<Matrix> = tables
        .evalues
        .iter()
        .map(|e| {
            (0..n)
                .map(|x| (0..n).map(|y| e[code.relation(x, y)].clone()).collect())
                .collect()
        })
        .collect();
    for i in 0..d {
        for j in i..d {
            let prod = mat_mul(&dense[i], &dense[j]);
            let ok = if i == j {
                prod == dense[i]
            } else {
                prod.iter().flatten().all(QuadExt::is_zero)
            };
            if !ok {
                return Err(format!("E_{i} E_{j} fails the dense product check"));
            }
            let inv = QuadExt::from_frac(1, n as i64);
            for x in 0..n {
                for y in 0..n {
                    let lhs = &dense[i][x][y] * &dense[j][x][y];
                    let rhs = (0..d).fold(QuadExt::zero(), |acc, k| {
                        &acc + &(&tables.krein[i][j][k] * &dense[k][x][y])
                    });
                    if lhs != &rhs * &inv {
                        return Err(format!(
                            "E_{i} ∘ E_{j} differs from its Krein expansion at ({x}, {y})"
                        ));
                    }
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::construct;

    #[test]
    fn icosahedron_tables() {
        let c = construct("icosahedron").unwrap();
        let t = build_scheme(&c).unwrap();
        assert_eq!(t.p[1][1][1], 2);
        assert_eq!(t.integer_mult(), Some(vec![1, 3, 5, 3]));
        assert!(t.verify_idempotency().is_ok());
        assert!(t.resolution_of_identity());
        assert!(t.krein_nonnegative() && t.krein_identity_row());
        assert_eq!(galois_action(&t).unwrap(), vec![0, 3, 2, 1]);
        let r = qpoly_orderings(&t);
        assert!(r.natural_ordering_qpoly);
        assert_eq!(r.alternates.len(), 1);
        assert_eq!(r.alternates[0].order, vec![3, 2, 1]);
        assert_eq!(r.alternates[0].classes, vec![SuzukiClass::III]);
        dense_cross_check(&c, &t).unwrap();
    }

    #[test]
    fn suzuki_patterns() {
        assert_eq!(suzuki_classes(&[2, 4, 6, 5, 3, 1]), vec![SuzukiClass::I]);
        assert_eq!(suzuki_classes(&[6, 1, 5, 2, 4, 3]), vec![SuzukiClass::II]);
        assert_eq!(suzuki_classes(&[6, 2, 4, 3, 5, 1]), vec![SuzukiClass::III]);
        assert_eq!(suzuki_classes(&[5, 2, 3, 4, 1, 6]), vec![SuzukiClass::IV]);
        assert!(suzuki_classes(&[5, 3, 2, 4, 1]).contains(&SuzukiClass::V));
        assert!(suzuki_classes(&[1, 2, 3]).is_empty());
        assert_eq!(cycle_notation(&[0, 3, 2, 1]), "(1 3)");
        assert_eq!(cycle_notation(&[0, 1]), "identity");
    }

    #[test]
    fn broken_scheme_has_witness() {
        let c = construct("icosahedron")
            .unwrap()
            .subcode(&(0..11).collect::<Vec<_>>())
            .unwrap();
        assert!(matches!(
            build_scheme(&c),
            Err(SchemeError::NotConstant { .. })
        ));
    }
}
