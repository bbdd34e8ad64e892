//! QUBO file formats: a JSON schema and a plain-text COO form where
//! diagonal entries carry the linear terms.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qubo::QuboProblem;

#[derive(Serialize, Deserialize)]
struct QuboFile {
    n: usize,
    linear: Vec<f64>,
    quadratic: Vec<(usize, usize, f64)>,
    offset: f64,
    labels: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    k: Option<usize>,
    #[serde(default, skip_serializing_if = "is_zero")]
    penalty_strength: f64,
}

fn is_zero(v: &f64) -> bool {
    *v == 0.0
}

/// Serializes a problem to the JSON schema
/// `{n, linear, quadratic: [[i, j, value], …], offset, labels}`.
pub fn write_json(q: &QuboProblem) -> Result<String> {
    let file = QuboFile {
        n: q.n,
        linear: q.linear.clone(),
        quadratic: q.quadratic.iter().map(|(&(i, j), &w)| (i, j, w)).collect(),
        offset: q.offset,
        labels: q.labels.clone(),
        k: q.k,
        penalty_strength: q.penalty_strength,
    };
    Ok(serde_json::to_string_pretty(&file)?)
}

/// Parses the JSON schema produced by [`write_json`].
pub fn read_json(text: &str) -> Result<QuboProblem> {
    let file: QuboFile = serde_json::from_str(text)?;
    if file.linear.len() != file.n {
        return Err(Error::Config(format!(
            "linear has {} entries for n = {}",
            file.linear.len(),
            file.n
        )));
    }
    let mut quadratic = BTreeMap::new();
    for (i, j, w) in file.quadratic {
        if i >= file.n || j >= file.n || i == j {
            return Err(Error::Config(format!("invalid coupler ({i}, {j})")));
        }
        quadratic.insert((i.min(j), i.max(j)), w);
    }
    let labels = if file.labels.len() == file.n {
        file.labels
    } else {
        (0..file.n).map(|i| format!("x{i}")).collect()
    };
    Ok(QuboProblem {
        n: file.n,
        linear: file.linear,
        quadratic,
        offset: file.offset,
        penalty_strength: file.penalty_strength,
        k: file.k,
        labels,
    })
}

/// Writes the COO text form: one `i j value` line per nonzero, with
/// diagonal entries representing linear terms.
pub fn write_coo(q: &QuboProblem) -> String {
    let mut out = String::new();
    for (i, &v) in q.linear.iter().enumerate() {
        if v != 0.0 {
            out.push_str(&format!("{i} {i} {v}\n"));
        }
    }
    for (&(i, j), &w) in &q.quadratic {
        out.push_str(&format!("{i} {j} {w}\n"));
    }
    out
}

/// Parses the COO text form; `n` is taken as 1 + the largest index seen.
pub fn read_coo(text: &str) -> Result<QuboProblem> {
    let mut entries = Vec::new();
    let mut max_index = 0usize;
    for (line_no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let parse = |s: Option<&str>, what: &str| -> Result<String> {
            s.map(|v| v.to_string()).ok_or_else(|| {
                Error::Config(format!("coo line {}: missing {what}", line_no + 1))
            })
        };
        let i: usize = parse(parts.next(), "row")?.parse().map_err(|_| {
            Error::Config(format!("coo line {}: bad row index", line_no + 1))
        })?;
        let j: usize = parse(parts.next(), "column")?.parse().map_err(|_| {
            Error::Config(format!("coo line {}: bad column index", line_no + 1))
        })?;
        let v: f64 = parse(parts.next(), "value")?.parse().map_err(|_| {
            Error::Config(format!("coo line {}: bad value", line_no + 1))
        })?;
        max_index = max_index.max(i).max(j);
        entries.push((i, j, v));
    }
    if entries.is_empty() {
        return Err(Error::Config("empty coo input".into()));
    }
    let n = max_index + 1;
    let mut q = QuboProblem::zero(n);
    q.linear = vec![0.0; n];
    for (i, j, v) in entries {
        if i == j {
            q.linear[i] += v;
        } else {
            *q.quadratic.entry((i.min(j), i.max(j))).or_insert(0.0) += v;
        }
    }
    Ok(q)
}

/// Reads a problem from a `.json` or `.coo` file by extension.
pub fn read_file(path: impl AsRef<Path>) -> Result<QuboProblem> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.to_path_buf(),
        source: e,
    })?;
    match path.extension().and_then(|e| e.to_str()) {
        Some("json") => read_json(&text),
        _ => read_coo(&text),
    }
}
