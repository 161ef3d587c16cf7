//! The `scdt-code v1` text format.
//!
//! ```text
//! scdt-code v1
//! label <text>
//! dim <n>
//! size <N>
//! kind gram | coords <norm2>
//! <N rows of N (gram) or n (coords) literals>
//! ```
//!
//! Lines starting with `#` and blank lines are ignored.

use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use crate::code::{CodeError, SphericalCode};
use crate::field::fmt_rational;
use crate::literal::{parse_literal, parse_rational, split_row};

const MAGIC: &str = "scdt-code v1";

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Invalid(#[from] CodeError),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

fn perr(line: usize, msg: impl Into<String>) -> LoadError {
    LoadError::Parse {
        line,
        msg: msg.into(),
    }
}

pub fn load_code(path: impl AsRef<Path>) -> Result<SphericalCode, LoadError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_code(&text)
}

pub fn parse_code(text: &str) -> Result<SphericalCode, LoadError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let mut next = |what: &str| {
        lines
            .next()
            .ok_or_else(|| perr(0, format!("unexpected end of file, expected {what}")))
    };

    let (ln, magic) = next("header")?;
    if magic != MAGIC {
        return Err(perr(ln, format!("expected `{MAGIC}`")));
    }
    let field = |(ln, line): (usize, &str), key: &str| -> Result<String, LoadError> {
        match line.split_once(char::is_whitespace) {
            Some((k, v)) if k == key => Ok(v.trim().to_string()),
            _ if line == key => Ok(String::new()),
            _ => Err(perr(ln, format!("expected `{key} …`"))),
        }
    };
    let label = field(next("label")?, "label")?;
    let dim_line = next("dim")?;
    let dim: usize = field(dim_line, "dim")?
        .parse()
        .map_err(|_| perr(dim_line.0, "dim must be a positive integer"))?;
    let size_line = next("size")?;
    let size: usize = field(size_line, "size")?
        .parse()
        .map_err(|_| perr(size_line.0, "size must be a positive integer"))?;
    let kind_line = next("kind")?;
    let kind = field(kind_line, "kind")?;
    let mut kind_parts = kind.split_whitespace();
    let coords_norm = match kind_parts.next() {
        Some("gram") if kind_parts.next().is_none() => None,
        Some("coords") => {
            let lit = kind_parts.collect::<Vec<_>>().join("");
            let norm =
                parse_rational(&lit).map_err(|e| perr(kind_line.0, format!("norm2: {e}")))?;
            Some(norm)
        }
        _ => return Err(perr(kind_line.0, "kind must be `gram` or `coords <norm2>`")),
    };
    let width = if coords_norm.is_some() { dim } else { size };

    let mut rows = Vec::with_capacity(size);
    for r in 0..size {
        let (ln, line) = next(&format!("row {}", r + 1))?;
        let tokens = split_row(line);
        if tokens.len() != width {
            return Err(perr(
                ln,
                format!("expected {width} entries, found {}", tokens.len()),
            ));
        }
        let row = tokens
            .iter()
            .enumerate()
            .map(|(c, t)| parse_literal(t).map_err(|e| perr(ln, format!("entry {}: {e}", c + 1))))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    if let Some((ln, _)) = lines.next() {
        return Err(perr(ln, "trailing content after the last row"));
    }
    let code = match coords_norm {
        Some(norm2) => SphericalCode::from_coords(label, dim, rows, norm2)?,
        None => SphericalCode::from_gram(label, dim, rows)?,
    };
    Ok(code)
}

/// Coordinates when the code has them, the Gram matrix otherwise.
pub fn emit_code(code: &SphericalCode) -> String {
    let mut out = String::new();
    writeln!(out, "{MAGIC}").unwrap();
    writeln!(out, "label {}", code.label()).unwrap();
    writeln!(out, "dim {}", code.dim()).unwrap();
    writeln!(out, "size {}", code.size()).unwrap();
    let rows: &[Vec<_>] = match code.coords() {
        Some(c) => {
            writeln!(out, "kind coords {}", fmt_rational(&c.norm2)).unwrap();
            &c.points
        }
        None => {
            writeln!(out, "kind gram").unwrap();
            code.gram()
        }
    };
    for row in rows {
        let line: Vec<String> = row.iter().map(ToString::to_string).collect();
        writeln!(out, "{}", line.join(" ")).unwrap();
    }
    out
}

pub fn write_code(code: &SphericalCode, path: impl AsRef<Path>) -> std::io::Result<()> {
    std::fs::write(path, emit_code(code))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_comments_and_spacing() {
        let text = "# a triangle\nscdt-code v1\nlabel triangle\ndim 2\nsize 3\nkind gram\n\
                    1 -1/2 -1/2\n  -1/2 1   -1/2\n# middle comment\n-1/2 -1/2 1\n";
        let c = parse_code(text).unwrap();
        assert_eq!((c.dim(), c.size(), c.label()), (2, 3, "triangle"));
    }

    #[test]
    fn reports_positions() {
        let text = "scdt-code v1\nlabel x\ndim 2\nsize 2\nkind gram\n1 -1\n-1 abc\n";
        match parse_code(text) {
            Err(LoadError::Parse { line, .. }) => assert_eq!(line, 7),
            other => panic!("{other:?}"),
        }
        let text = "scdt-code v1\nlabel x\ndim 2\nsize 2\nkind gram\n2 -1\n-1 1\n";
        let err = parse_code(text).unwrap_err();
        assert!(err.to_string().contains("diagonal must be 1"), "{err}");
        assert!(matches!(
            parse_code("scdt-code v2\n"),
            Err(LoadError::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn coords_kind() {
        let text = "scdt-code v1\nlabel sq\ndim 2\nsize 4\nkind coords 2\n1 1\n1 -1\n-1 1\n-1 -1\n";
        let c = parse_code(text).unwrap();
        assert_eq!(c.spectrum().to_string(), "{0, -1}");
        assert_eq!(parse_code(&emit_code(&c)).unwrap(), c);
    }
}
