//! Plain-text code files.
//!
//! ```text
//! # optional comments
//! n 4
//! k 1
//! delta 2
//! G 0
//! 1111
//! G 1
//! 1010
//! G 2
//! 1100
//! ```
//!
//! Each block holds `k` rows of `n` characters; the leftmost character is
//! coordinate 0. The degree is re-derived on load and must equal `delta`.

use std::fmt::Write as _;
use std::path::Path;

use optcol::{BitMatrix, BitVec, ConvCode};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CodeFileError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing header field `{0}`")]
    MissingHeader(&'static str),
    #[error("invalid code: {0}")]
    Code(#[from] optcol::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

fn syntax(line: usize, msg: impl Into<String>) -> CodeFileError {
    CodeFileError::Syntax {
        line,
        msg: msg.into(),
    }
}

pub fn parse(text: &str) -> Result<ConvCode, CodeFileError> {
    let (mut n, mut k, mut delta) = (None, None, None);
    let mut blocks: Vec<Vec<BitVec>> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut words = line.split_whitespace();
        let head = words.next().expect("non-empty line");
        let value = |words: &mut std::str::SplitWhitespace| -> Result<usize, CodeFileError> {
            let v = words
                .next()
                .ok_or_else(|| syntax(lineno, format!("`{head}` needs a value")))?;
            if words.next().is_some() {
                return Err(syntax(lineno, "trailing tokens"));
            }
            v.parse()
                .map_err(|_| syntax(lineno, format!("`{v}` is not a non-negative integer")))
        };
        match head {
            "n" => n = Some(value(&mut words)?),
            "k" => k = Some(value(&mut words)?),
            "delta" => delta = Some(value(&mut words)?),
            "G" => {
                let idx = value(&mut words)?;
                if idx != blocks.len() {
                    return Err(syntax(
                        lineno,
                        format!("expected block G {}, found G {idx}", blocks.len()),
                    ));
                }
                blocks.push(Vec::new());
            }
            bits => {
                let n = n.ok_or(CodeFileError::MissingHeader("n"))?;
                let k = k.ok_or(CodeFileError::MissingHeader("k"))?;
                let block = blocks
                    .last_mut()
                    .ok_or_else(|| syntax(lineno, "row outside a `G i` block"))?;
                if block.len() == k {
                    return Err(syntax(lineno, format!("block has more than k = {k} rows")));
                }
                if bits.len() != n || words.next().is_some() {
                    return Err(syntax(lineno, format!("row must be {n} characters of 0/1")));
                }
                let row: BitVec = bits
                    .parse()
                    .map_err(|_| syntax(lineno, format!("`{bits}` is not a 0/1 string")))?;
                block.push(row);
            }
        }
    }
    let n = n.ok_or(CodeFileError::MissingHeader("n"))?;
    let k = k.ok_or(CodeFileError::MissingHeader("k"))?;
    let delta = delta.ok_or(CodeFileError::MissingHeader("delta"))?;
    if blocks.is_empty() {
        return Err(CodeFileError::MissingHeader("G 0"));
    }
    let coeffs = blocks
        .into_iter()
        .enumerate()
        .map(|(i, rows)| {
            if rows.len() != k {
                return Err(syntax(
                    0,
                    format!("block G {i} has {} rows, expected {k}", rows.len()),
                ));
            }
            Ok(BitMatrix::from_rows(n, rows)?)
        })
        .collect::<Result<Vec<_>, CodeFileError>>()?;
    Ok(ConvCode::new(n, k, coeffs, delta)?)
}

/// Text form of `code`, each comment written as a `# ` line before the header.
pub fn render(code: &ConvCode, comments: &[String]) -> String {
    let mut s = String::new();
    for c in comments {
        let _ = writeln!(s, "# {c}");
    }
    let _ = writeln!(s, "n {}\nk {}\ndelta {}", code.n(), code.k(), code.degree());
    for (i, g) in code.coeffs().iter().enumerate() {
        let _ = writeln!(s, "G {i}");
        for row in g.rows() {
            let _ = writeln!(s, "{row}");
        }
    }
    s
}

pub fn read(path: &Path) -> Result<ConvCode, CodeFileError> {
    let text = std::fs::read_to_string(path).map_err(|source| CodeFileError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse(&text)
}

pub fn write(path: &Path, code: &ConvCode, comments: &[String]) -> Result<(), CodeFileError> {
    std::fs::write(path, render(code, comments)).map_err(|source| CodeFileError::Io {
        path: path.display().to_string(),
        source,
    })
}
