//! LIBSVM text ingestion and emission.

use polya_core::learn::Dataset;
use polya_core::{Error, Result};
use std::fmt::Write as _;
use std::path::Path;

/// Parse `label idx:val ...` lines. Indices are 1-based; points are
/// densified to the largest index seen. Blank lines and `#` comments are
/// skipped.
pub fn parse_libsvm_str(text: &str) -> Result<Dataset> {
    let mut points = Vec::new();
    let mut labels = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let content = line.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let mut tokens = tokens_with_columns(content);
        let (col, label_tok) = tokens.next().expect("nonempty line has a token");
        let label: f64 = label_tok.parse().map_err(|_| Error::Parse {
            line: line_no,
            column: col,
            msg: format!("bad label '{label_tok}'"),
        })?;
        if !label.is_finite() {
            return Err(Error::Parse {
                line: line_no,
                column: col,
                msg: format!("label '{label_tok}' is not finite"),
            });
        }
        let mut point: Vec<f64> = Vec::new();
        let mut seen = Vec::new();
        for (col, tok) in tokens {
            let err = |msg: String| Error::Parse {
                line: line_no,
                column: col,
                msg,
            };
            let (idx, val) = tok
                .split_once(':')
                .ok_or_else(|| err(format!("expected index:value, got '{tok}'")))?;
            let idx: usize = idx.parse().map_err(|_| err(format!("bad index '{idx}'")))?;
            if idx == 0 {
                return Err(err("indices are 1-based".into()));
            }
            let val: f64 = val.parse().map_err(|_| err(format!("bad value '{val}'")))?;
            if !val.is_finite() {
                return Err(err(format!("value '{val}' is not finite")));
            }
            if seen.contains(&idx) {
                return Err(err(format!("index {idx} repeated")));
            }
            seen.push(idx);
            if point.len() < idx {
                point.resize(idx, 0.0);
            }
            point[idx - 1] = val;
        }
        points.push(point);
        labels.push(label);
    }
    if points.is_empty() {
        return Err(Error::EmptyInput("no data lines".into()));
    }
    Dataset::new(points, labels)
}

/// Whitespace-separated tokens with their 1-based column.
fn tokens_with_columns(line: &str) -> impl Iterator<Item = (usize, &str)> {
    line.split_whitespace()
        .map(move |tok| (tok.as_ptr() as usize - line.as_ptr() as usize + 1, tok))
}

pub fn read_libsvm(path: &Path) -> Result<Dataset> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_libsvm_str(&text)
}

/// Emit nonzero attributes only. Values use the shortest representation
/// that reads back to the same f64.
pub fn write_libsvm_string(ds: &Dataset) -> String {
    let mut out = String::new();
    for (p, y) in ds.points.iter().zip(&ds.targets) {
        write!(out, "{y}").unwrap();
        for (j, v) in p.iter().enumerate().filter(|(_, v)| **v != 0.0) {
            write!(out, " {}:{v}", j + 1).unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn write_libsvm(path: &Path, ds: &Dataset) -> Result<()> {
    std::fs::write(path, write_libsvm_string(ds)).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}
