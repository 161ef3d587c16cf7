//! Exact constructions of the reference codes.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::code::{CodeError, SphericalCode};
use crate::field::{int, rat, QuadExt};
use crate::literal::parse_literal;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown catalog entry `{0}`")]
    UnknownName(String),
    #[error("bad parameters for `{name}`: {reason}")]
    BadParams { name: String, reason: String },
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// A catalog name together with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CatalogName {
    Simplex(usize),
    CrossPolytope(usize),
    Icosahedron,
    Clebsch16,
    E8Kissing,
    Cell24,
    Cell600,
}

impl CatalogName {
    /// Entries included in the default corpus.
    pub fn corpus() -> Vec<CatalogName> {
        let mut v: Vec<CatalogName> = (3..=10).map(CatalogName::Simplex).collect();
        v.extend((3..=10).map(CatalogName::CrossPolytope));
        v.extend([
            CatalogName::Icosahedron,
            CatalogName::Clebsch16,
            CatalogName::E8Kissing,
            CatalogName::Cell24,
            CatalogName::Cell600,
        ]);
        v
    }

    /// Codes outside the default analysis budget (enabled with `--deep`).
    pub fn is_extended(&self) -> bool {
        matches!(self, CatalogName::Cell600)
    }

    pub fn expected(&self) -> ExpectedProfile {
        use CatalogName::*;
        let lits = |v: &[&str]| v.iter().map(|s| parse_literal(s).unwrap()).collect();
        match *self {
            Simplex(n) => ExpectedProfile {
                n,
                size: n + 1,
                s: 1,
                t: 2,
                tight: true,
                delsarte: true,
                spectrum: vec![QuadExt::from_frac(-1, n as i64)],
            },
            CrossPolytope(n) => ExpectedProfile {
                n,
                size: 2 * n,
                s: 2,
                t: 3,
                tight: true,
                delsarte: true,
                spectrum: lits(&["0", "-1"]),
            },
            Icosahedron => ExpectedProfile {
                n: 3,
                size: 12,
                s: 3,
                t: 5,
                tight: true,
                delsarte: true,
                spectrum: lits(&["1/5*sqrt(5)", "-1/5*sqrt(5)", "-1"]),
            },
            Clebsch16 => ExpectedProfile {
                n: 5,
                size: 16,
                s: 2,
                t: 3,
                tight: false,
                delsarte: true,
                spectrum: lits(&["1/5", "-3/5"]),
            },
            E8Kissing => ExpectedProfile {
                n: 8,
                size: 240,
                s: 4,
                t: 7,
                tight: true,
                delsarte: true,
                spectrum: lits(&["1/2", "0", "-1/2", "-1"]),
            },
            Cell24 => ExpectedProfile {
                n: 4,
                size: 24,
                s: 4,
                t: 5,
                tight: false,
                delsarte: false,
                spectrum: lits(&["1/2", "0", "-1/2", "-1"]),
            },
            Cell600 => ExpectedProfile {
                n: 4,
                size: 120,
                s: 8,
                t: 11,
                tight: false,
                delsarte: false,
                spectrum: lits(&[
                    "1/4+1/4*sqrt(5)",
                    "1/2",
                    "-1/4+1/4*sqrt(5)",
                    "0",
                    "1/4-1/4*sqrt(5)",
                    "-1/2",
                    "-1/4-1/4*sqrt(5)",
                    "-1",
                ]),
            },
        }
    }

    pub fn construct(&self) -> Result<SphericalCode, CatalogError> {
        let label = self.to_string();
        let code = match *self {
            CatalogName::Simplex(n) => simplex(&label, n)?,
            CatalogName::CrossPolytope(n) => cross_polytope(&label, n)?,
            CatalogName::Icosahedron => icosahedron(&label)?,
            CatalogName::Clebsch16 => clebsch16(&label)?,
            CatalogName::E8Kissing => e8_kissing(&label)?,
            CatalogName::Cell24 => cell24(&label)?,
            CatalogName::Cell600 => cell600(&label)?,
        };
        Ok(code)
    }
}

impl fmt::Display for CatalogName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogName::Simplex(n) => write!(f, "simplex({n})"),
            CatalogName::CrossPolytope(n) => write!(f, "cross_polytope({n})"),
            CatalogName::Icosahedron => f.write_str("icosahedron"),
            CatalogName::Clebsch16 => f.write_str("clebsch16"),
            CatalogName::E8Kissing => f.write_str("e8_kissing"),
            CatalogName::Cell24 => f.write_str("cell24"),
            CatalogName::Cell600 => f.write_str("cell600"),
        }
    }
}

/// Accepts `simplex(5)`, `simplex:5` and the fixed names.
impl FromStr for CatalogName {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (name, param) = if let Some(open) = s.find('(') {
            let inner = s[open + 1..]
                .strip_suffix(')')
                .ok_or_else(|| CatalogError::UnknownName(s.to_string()))?;
            (&s[..open], Some(inner.trim()))
        } else if let Some((a, b)) = s.split_once(':') {
            (a, Some(b.trim()))
        } else {
            (s, None)
        };
        let param_n = |min: usize| -> Result<usize, CatalogError> {
            let p = param.ok_or_else(|| CatalogError::BadParams {
                name: name.to_string(),
                reason: "missing dimension".into(),
            })?;
            let n: usize = p.parse().map_err(|_| CatalogError::BadParams {
                name: name.to_string(),
                reason: format!("`{p}` is not a dimension"),
            })?;
            if n < min {
                return Err(CatalogError::BadParams {
                    name: name.to_string(),
                    reason: format!("dimension must be at least {min}"),
                });
            }
            Ok(n)
        };
        let fixed = |v: CatalogName| -> Result<CatalogName, CatalogError> {
            match param {
                None => Ok(v),
                Some(_) => Err(CatalogError::BadParams {
                    name: name.to_string(),
                    reason: "takes no parameters".into(),
                }),
            }
        };
        match name {
            "simplex" => Ok(CatalogName::Simplex(param_n(2)?)),
            "cross_polytope" => Ok(CatalogName::CrossPolytope(param_n(2)?)),
            "icosahedron" => fixed(CatalogName::Icosahedron),
            "clebsch16" => fixed(CatalogName::Clebsch16),
            "e8_kissing" => fixed(CatalogName::E8Kissing),
            "cell24" => fixed(CatalogName::Cell24),
            "cell600" => fixed(CatalogName::Cell600),
            _ => Err(CatalogError::UnknownName(s.to_string())),
        }
    }
}

/// Parameters every correct construction must reproduce.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpectedProfile {
    pub n: usize,
    pub size: usize,
    pub s: usize,
    pub t: usize,
    pub tight: bool,
    pub delsarte: bool,
    pub spectrum: Vec<QuadExt>,
}

pub fn construct(name: &str) -> Result<SphericalCode, CatalogError> {
    name.parse::<CatalogName>()?.construct()
}

fn simplex(label: &str, n: usize) -> Result<SphericalCode, CodeError> {
    let off = QuadExt::from_frac(-1, n as i64);
    let gram = (0..=n)
        .map(|i| {
            (0..=n)
                .map(|j| if i == j { QuadExt::one() } else { off.clone() })
                .collect()
        })
        .collect();
    SphericalCode::from_gram(label, n, gram)
}

fn cross_polytope(label: &str, n: usize) -> Result<SphericalCode, CodeError> {
    let mut pts = Vec::with_capacity(2 * n);
    for i in 0..n {
        for s in [1, -1] {
            let mut p = vec![QuadExt::zero(); n];
            p[i] = QuadExt::from_int(s);
            pts.push(p);
        }
    }
    SphericalCode::from_coords(label, n, pts, int(1))
}

/// Gram matrix of the 12 vertices `(0, ±1, ±φ)` and cyclic shifts, computed
/// in ℚ(√5) and divided by the squared norm `1 + φ²`.
fn icosahedron(label: &str) -> Result<SphericalCode, CodeError> {
    let phi = parse_literal("1/2+1/2*sqrt(5)").unwrap();
    let mut pts: Vec<[QuadExt; 3]> = Vec::new();
    for s1 in [1i64, -1] {
        for s2 in [1i64, -1] {
            let a = QuadExt::from_int(s1);
            let b = &phi * &QuadExt::from_int(s2);
            pts.push([QuadExt::zero(), a.clone(), b.clone()]);
            pts.push([a.clone(), b.clone(), QuadExt::zero()]);
            pts.push([b, QuadExt::zero(), a]);
        }
    }
    let norm2 = &QuadExt::one() + &(&phi * &phi);
    let gram = pts
        .iter()
        .map(|x| {
            pts.iter()
                .map(|y| {
                    let dot = x
                        .iter()
                        .zip(y)
                        .fold(QuadExt::zero(), |acc, (a, b)| &acc + &(a * b));
                    &dot / &norm2
                })
                .collect()
        })
        .collect();
    SphericalCode::from_gram(label, 3, gram)
}

/// The 16 vectors of `{±1}^5` with an even number of minus signs, norm² 5.
fn clebsch16(label: &str) -> Result<SphericalCode, CodeError> {
    let pts = (0u32..32)
        .filter(|m| m.count_ones() % 2 == 0)
        .map(|m| {
            (0..5)
                .map(|i| QuadExt::from_int(if m >> i & 1 == 1 { -1 } else { 1 }))
                .collect()
        })
        .collect();
    SphericalCode::from_coords(label, 5, pts, int(5))
}

fn signed_pairs(n: usize) -> Vec<Vec<QuadExt>> {
    let mut pts = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let mut p = vec![QuadExt::zero(); n];
                p[i] = QuadExt::from_int(si);
                p[j] = QuadExt::from_int(sj);
                pts.push(p);
            }
        }
    }
    pts
}

/// The 240 roots of E8: `±e_i ± e_j` and `(±1/2)^8` with an even number of
/// minus signs, norm² 2.
fn e8_kissing(label: &str) -> Result<SphericalCode, CodeError> {
    let mut pts = signed_pairs(8);
    for m in 0u32..256 {
        if m.count_ones() % 2 == 0 {
            pts.push(
                (0..8)
                    .map(|i| QuadExt::from_frac(if m >> i & 1 == 1 { -1 } else { 1 }, 2))
                    .collect(),
            );
        }
    }
    SphericalCode::from_coords(label, 8, pts, int(2))
}

/// The 24 roots `±e_i ± e_j` of D4, norm² 2.
fn cell24(label: &str) -> Result<SphericalCode, CodeError> {
    SphericalCode::from_coords(label, 4, signed_pairs(4), int(2))
}

fn is_even_permutation(p: &[usize]) -> bool {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    inv % 2 == 0
}

/// The 120 unit quaternions of the binary icosahedral group: `±e_i`,
/// `(±1/2)^4`, and even permutations of `(±φ, ±1, ±φ⁻¹, 0)/2`.
fn cell600(label: &str) -> Result<SphericalCode, CodeError> {
    let mut pts: Vec<Vec<QuadExt>> = Vec::new();
    for i in 0..4 {
        for s in [1, -1] {
            let mut p = vec![QuadExt::zero(); 4];
            p[i] = QuadExt::from_int(s);
            pts.push(p);
        }
    }
    for m in 0u32..16 {
        pts.push(
            (0..4)
                .map(|i| QuadExt::from_frac(if m >> i & 1 == 1 { -1 } else { 1 }, 2))
                .collect(),
        );
    }
    let base = [
        parse_literal("1/4+1/4*sqrt(5)").unwrap(),
        QuadExt::from_frac(1, 2),
        parse_literal("-1/4+1/4*sqrt(5)").unwrap(),
        QuadExt::zero(),
    ];
    let mut perm = [0usize, 1, 2, 3];
    let mut perms = Vec::new();
    permutations(&mut perm, 0, &mut perms);
    for p in perms.iter().filter(|p| is_even_permutation(&p[..])) {
        for m in 0u32..8 {
            let signed: Vec<QuadExt> = (0..4)
                .map(|k| {
                    if k < 3 && m >> k & 1 == 1 {
                        -&base[k]
                    } else {
                        base[k].clone()
                    }
                })
                .collect();
            let mut v = vec![QuadExt::zero(); 4];
            for (k, &slot) in p.iter().enumerate() {
                v[slot] = signed[k].clone();
            }
            pts.push(v);
        }
    }
    SphericalCode::from_coords(label, 4, pts, rat(1, 1))
}

fn permutations(p: &mut [usize; 4], k: usize, out: &mut Vec<[usize; 4]>) {
    if k == p.len() {
        out.push(*p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, out);
        p.swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_parse_and_print() {
        for s in ["simplex(5)", "cross_polytope(4)", "icosahedron", "cell600"] {
            assert_eq!(s.parse::<CatalogName>().unwrap().to_string(), s);
        }
        assert_eq!(
            "simplex:7".parse::<CatalogName>().unwrap(),
            CatalogName::Simplex(7)
        );
        assert!(matches!(
            "leech".parse::<CatalogName>(),
            Err(CatalogError::UnknownName(_))
        ));
        assert!(matches!(
            "simplex".parse::<CatalogName>(),
            Err(CatalogError::BadParams { .. })
        ));
        assert!(matches!(
            "icosahedron(3)".parse::<CatalogName>(),
            Err(CatalogError::BadParams { .. })
        ));
    }

    #[test]
    fn sizes_and_spectra() {
        for name in CatalogName::corpus() {
            let code = name.construct().unwrap();
            let exp = name.expected();
            assert_eq!(code.size(), exp.size, "{name}");
            assert_eq!(code.dim(), exp.n, "{name}");
            assert_eq!(code.spectrum().values, exp.spectrum, "{name}");
            assert_eq!(code.rank(), exp.n, "{name} is full-dimensional");
        }
    }
}
