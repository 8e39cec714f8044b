//! Text formats for Hamiltonians and graphs.
//!
//! Pauli files hold one term per line, `coefficient WS pauli_string`, e.g.
//! `-0.5 XZI`. Graph files start with `n m` followed by `m` lines `u v w`.
//! In both, `#` starts a comment and blank lines are ignored.

use std::fs;
use std::path::Path;

use super::maxcut::Graph;
use super::pauli::{PauliString, PauliSum, PauliTerm};
use crate::error::{Error, Result};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

/// Parses the Pauli text format. `path` is only used for messages.
pub fn parse_pauli_text(text: &str, path: &Path) -> Result<PauliSum> {
    let bad = |line: usize, message: String| Error::FileParse {
        path: path.to_path_buf(),
        line,
        message,
    };
    let mut sum: Option<PauliSum> = None;
    for (line, content) in content_lines(text) {
        let mut fields = content.split_whitespace();
        let (Some(coef), Some(ops), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(bad(line, format!("expected `coefficient pauli_string`, got {content:?}")));
        };
        let coefficient: f64 = coef
            .parse()
            .map_err(|_| bad(line, format!("invalid coefficient {coef:?}")))?;
        if !coefficient.is_finite() {
            return Err(bad(line, format!("non-finite coefficient {coef:?}")));
        }
        let pauli: PauliString = ops.parse().map_err(|e| bad(line, format!("{e}")))?;
        let sum = sum.get_or_insert_with(|| PauliSum::zero(pauli.len()));
        if pauli.len() != sum.n_qubits() {
            return Err(Error::LengthMismatch {
                line,
                expected: sum.n_qubits(),
                found: pauli.len(),
            });
        }
        sum.add_term(PauliTerm::new(coefficient, pauli))?;
    }
    sum.ok_or_else(|| bad(0, "file contains no terms".into()))
}

pub fn load_pauli_file(path: impl AsRef<Path>) -> Result<PauliSum> {
    let path = path.as_ref();
    parse_pauli_text(&read(path)?, path)
}

pub fn parse_graph_text(text: &str, path: &Path) -> Result<Graph> {
    let bad = |line: usize, message: String| Error::FileParse {
        path: path.to_path_buf(),
        line,
        message,
    };
    let mut lines = content_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| bad(0, "missing `n m` header".into()))?;
    let nums: Vec<&str> = header.split_whitespace().collect();
    let [n, m] = nums.as_slice() else {
        return Err(bad(hline, format!("expected `n m`, got {header:?}")));
    };
    let n: usize = n.parse().map_err(|_| bad(hline, format!("invalid vertex count {n:?}")))?;
    let m: usize = m.parse().map_err(|_| bad(hline, format!("invalid edge count {m:?}")))?;
    let mut edges = Vec::with_capacity(m);
    let mut last_line = hline;
    for (line, content) in lines {
        last_line = line;
        let f: Vec<&str> = content.split_whitespace().collect();
        let [u, v, w] = f.as_slice() else {
            return Err(bad(line, format!("expected `u v w`, got {content:?}")));
        };
        let u: usize = u.parse().map_err(|_| bad(line, format!("invalid vertex {u:?}")))?;
        let v: usize = v.parse().map_err(|_| bad(line, format!("invalid vertex {v:?}")))?;
        let w: f64 = w.parse().map_err(|_| bad(line, format!("invalid weight {w:?}")))?;
        edges.push((u, v, w));
    }
    if edges.len() != m {
        return Err(bad(
            last_line,
            format!("header declares {m} edges, found {}", edges.len()),
        ));
    }
    Graph::new(n, edges)
}

pub fn load_graph_file(path: impl AsRef<Path>) -> Result<Graph> {
    let path = path.as_ref();
    parse_graph_text(&read(path)?, path)
}
