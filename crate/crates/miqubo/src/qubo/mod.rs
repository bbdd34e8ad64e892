//! QUBO construction from the CMI tensor, cardinality penalties, and
//! energy evaluation.
//!
//! Minimizing the MIQUBO energy over weight-k bitstrings is equivalent to
//! maximizing the combined MI + CMI objective over size-k feature subsets:
//! diagonal terms map to −MI(X_i;Y) and couplers fold both ordered CMI
//! terms into −(MI(X_j;Y|X_i) + MI(X_i;Y|X_j)).

mod io;

pub use io::{read_coo, read_file, read_json, write_coo, write_json};

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::infotheory::CmiTensor;

/// A binary assignment, one entry in {0, 1} per variable.
///
/// Ordering is lexicographic on the bit vector, which is how all solver
/// tie-breaks are defined.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bitstring(pub Vec<u8>);

impl Bitstring {
    pub fn zeros(n: usize) -> Self {
        Bitstring(vec![0; n])
    }

    pub fn from_mask(mask: u64, n: usize) -> Self {
        Bitstring((0..n).map(|i| ((mask >> i) & 1) as u8).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.0.iter().filter(|&&b| b == 1).count()
    }

    /// Indices of the set bits.
    pub fn ones(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| (b == 1).then_some(i))
            .collect()
    }

    /// Compact `0101…` form used in JSON output.
    pub fn to_compact(&self) -> String {
        self.0.iter().map(|&b| if b == 1 { '1' } else { '0' }).collect()
    }

    pub fn from_compact(s: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => bits.push(0),
                '1' => bits.push(1),
                other => {
                    return Err(Error::Config(format!(
                        "invalid bit character '{other}' in bitstring"
                    )))
                }
            }
        }
        Ok(Bitstring(bits))
    }
}

impl serde::Serialize for Bitstring {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_compact())
    }
}

impl<'de> serde::Deserialize<'de> for Bitstring {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Bitstring::from_compact(&s).map_err(serde::de::Error::custom)
    }
}

/// A quadratic unconstrained binary optimization problem.
///
/// `quadratic` stores only upper-triangular couplers (i < j). `offset` is
/// the constant term introduced by penalties; it is excluded from
/// [`energy`] so solver comparisons stay offset-independent.
#[derive(Debug, Clone, PartialEq)]
pub struct QuboProblem {
    pub n: usize,
    pub linear: Vec<f64>,
    pub quadratic: BTreeMap<(usize, usize), f64>,
    pub offset: f64,
    pub penalty_strength: f64,
    pub k: Option<usize>,
    pub labels: Vec<String>,
}

impl QuboProblem {
    /// An all-zero problem over `n` variables.
    pub fn zero(n: usize) -> Self {
        QuboProblem {
            n,
            linear: vec![0.0; n],
            quadratic: BTreeMap::new(),
            offset: 0.0,
            penalty_strength: 0.0,
            k: None,
            labels: (0..n).map(|i| format!("x{i}")).collect(),
        }
    }

    /// Sets a coupler, normalizing index order; `i == j` adds to linear.
    pub fn set_quadratic(&mut self, i: usize, j: usize, value: f64) {
        if i == j {
            self.linear[i] += value;
            return;
        }
        let key = (i.min(j), i.max(j));
        if value == 0.0 {
            self.quadratic.remove(&key);
        } else {
            self.quadratic.insert(key, value);
        }
    }

    /// Symmetric adjacency view for incremental solvers:
    /// `adjacency()[i]` lists `(j, weight)` for every coupler touching i.
    pub fn adjacency(&self) -> Vec<Vec<(usize, f64)>> {
        let mut adj = vec![Vec::new(); self.n];
        for (&(i, j), &w) in &self.quadratic {
            adj[i].push((j, w));
            adj[j].push((i, w));
        }
        adj
    }

    /// Largest absolute coefficient among linear terms and couplers.
    pub fn max_abs_coefficient(&self) -> f64 {
        let lin = self.linear.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        self.quadratic.values().fold(lin, |a, v| a.max(v.abs()))
    }

    /// Adds the quadratic penalty P·(Σ x_i − k)², forcing minimum-energy
    /// states to Hamming weight k. With `penalty = None` the strength
    /// defaults to 2·max|coefficient| + 1e-9.
    pub fn with_cardinality(mut self, k: usize, penalty: Option<f64>) -> Result<Self> {
        if k < 1 || k > self.n {
            return Err(Error::CardinalityOutOfRange { k, n: self.n });
        }
        let p = penalty.unwrap_or_else(|| 2.0 * self.max_abs_coefficient() + 1e-9);
        for i in 0..self.n {
            self.linear[i] += p * (1.0 - 2.0 * k as f64);
        }
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                let entry = self.quadratic.entry((i, j)).or_insert(0.0);
                *entry += 2.0 * p;
            }
        }
        self.offset += p * (k * k) as f64;
        self.penalty_strength = p;
        self.k = Some(k);
        Ok(self)
    }
}

/// Maps a CMI tensor onto a QUBO: linear terms are −MI(X_i;Y) and each
/// unordered coupler folds both ordered CMI terms as
/// −(MI(X_j;Y|X_i) + MI(X_i;Y|X_j)).
pub fn build_miqubo(c: &CmiTensor) -> Result<QuboProblem> {
    if c.values.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("cmi tensor"));
    }
    let n = c.n;
    let mut q = QuboProblem::zero(n);
    q.labels = c.feature_names.clone();
    for i in 0..n {
        q.linear[i] = -c.diagonal(i);
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let folded = c.get(i, j) + c.get(j, i);
            if folded != 0.0 {
                q.quadratic.insert((i, j), -folded);
            }
        }
    }
    Ok(q)
}

/// QUBO energy Σ q_i x_i + Σ_{i<j} q_ij x_i x_j (offset excluded).
pub fn energy(q: &QuboProblem, x: &Bitstring) -> Result<f64> {
    if x.len() != q.n {
        return Err(Error::BitstringLength {
            expected: q.n,
            found: x.len(),
        });
    }
    let mut e = 0.0;
    for (i, &qi) in q.linear.iter().enumerate() {
        if x.0[i] == 1 {
            e += qi;
        }
    }
    for (&(i, j), &w) in &q.quadratic {
        if x.0[i] == 1 && x.0[j] == 1 {
            e += w;
        }
    }
    Ok(e)
}

/// Upper-triangular sparsity summary at a given magnitude threshold.
#[derive(Debug, Clone, serde::Serialize)]
pub struct SparsityReport {
    pub nnz: usize,
    pub density: f64,
    /// For each row i, the columns j > i with |q_ij| above threshold.
    pub pattern: Vec<Vec<usize>>,
}

/// Counts couplers with |value| > threshold among the n(n−1)/2 upper-
/// triangular entries.
pub fn sparsity_report(q: &QuboProblem, threshold: f64) -> SparsityReport {
    let mut pattern = vec![Vec::new(); q.n];
    let mut nnz = 0;
    for (&(i, j), &w) in &q.quadratic {
        if w.abs() > threshold {
            pattern[i].push(j);
            nnz += 1;
        }
    }
    let pairs = q.n * q.n.saturating_sub(1) / 2;
    let density = if pairs > 0 { nnz as f64 / pairs as f64 } else { 0.0 };
    SparsityReport {
        nnz,
        density,
        pattern,
    }
}
