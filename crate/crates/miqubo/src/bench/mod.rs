//! Experiment protocols: MI-ranked vs CMI-optimized selections compared
//! by ε-SVR R² over paired random train/test splits.

use ndarray::Axis;
use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::data::{ColumnStats, EncodedDataset};
use crate::error::{Error, Result};
use crate::infotheory::MiReport;
use crate::seeding::rng_for;
use crate::svr::{self, KernelParams};

/// Which ranking produced a selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum MethodLabel {
    Mi,
    Cmi,
}

impl std::fmt::Display for MethodLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MethodLabel::Mi => write!(f, "MI"),
            MethodLabel::Cmi => write!(f, "CMI"),
        }
    }
}

/// Selected feature indices per cardinality k.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SelectionMatrix {
    pub method: MethodLabel,
    pub k_values: Vec<usize>,
    /// `rows[r]` holds exactly `k_values[r]` distinct indices, ascending.
    pub rows: Vec<Vec<usize>>,
}

impl SelectionMatrix {
    pub fn new(method: MethodLabel, k_values: Vec<usize>, rows: Vec<Vec<usize>>) -> Result<Self> {
        if k_values.len() != rows.len() {
            return Err(Error::Config("selection matrix rows do not match k range".into()));
        }
        for (k, row) in k_values.iter().zip(&rows) {
            let mut sorted = row.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != *k || &sorted != row {
                return Err(Error::Config(format!(
                    "selection row for k={k} must hold exactly {k} distinct ascending indices"
                )));
            }
        }
        Ok(SelectionMatrix {
            method,
            k_values,
            rows,
        })
    }

    pub fn row_for(&self, k: usize) -> Option<&[usize]> {
        self.k_values
            .iter()
            .position(|&kv| kv == k)
            .map(|i| self.rows[i].as_slice())
    }

    /// CSV with one row per k: `method,k,indices` (indices space-separated).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("method,k,selected\n");
        for (k, row) in self.k_values.iter().zip(&self.rows) {
            let idx: Vec<String> = row.iter().map(|i| i.to_string()).collect();
            out.push_str(&format!("{},{},{}\n", self.method, k, idx.join(" ")));
        }
        out
    }
}

/// Top-k features by MI, ties broken by lowest index; returned ascending.
pub fn mi_selection(report: &MiReport, k: usize) -> Result<Vec<usize>> {
    if k > report.mi.len() {
        return Err(Error::CardinalityOutOfRange {
            k,
            n: report.mi.len(),
        });
    }
    let mut top: Vec<usize> = report.ranked().into_iter().take(k).collect();
    top.sort_unstable();
    Ok(top)
}

/// MI selections for every k in `k_values` (nested by construction).
pub fn mi_selection_matrix(report: &MiReport, k_values: &[usize]) -> Result<SelectionMatrix> {
    let rows = k_values
        .iter()
        .map(|&k| mi_selection(report, k))
        .collect::<Result<Vec<_>>>()?;
    SelectionMatrix::new(MethodLabel::Mi, k_values.to_vec(), rows)
}

/// Per-k size of the symmetric difference between two selection matrices.
pub fn selection_divergence(a: &SelectionMatrix, b: &SelectionMatrix) -> Result<Vec<usize>> {
    if a.k_values != b.k_values {
        return Err(Error::Config(
            "selection matrices cover different k ranges".into(),
        ));
    }
    Ok(a.rows
        .iter()
        .zip(&b.rows)
        .map(|(ra, rb)| {
            let in_a = ra.iter().filter(|i| !rb.contains(i)).count();
            let in_b = rb.iter().filter(|i| !ra.contains(i)).count();
            in_a + in_b
        })
        .collect())
}

/// Random train/test split specification.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SplitSpec {
    pub count: usize,
    pub test_ratio: f64,
    pub seed: u64,
}

impl Default for SplitSpec {
    fn default() -> Self {
        SplitSpec {
            count: 15,
            test_ratio: 0.2,
            seed: 0,
        }
    }
}

/// The split sequence depends only on (seed, count, test_ratio, n_samples),
/// never on method or k, so comparisons stay paired.
pub fn split_indices(spec: &SplitSpec, n_samples: usize) -> Result<Vec<(Vec<usize>, Vec<usize>)>> {
    if spec.count < 1 {
        return Err(Error::Config("split count must be at least 1".into()));
    }
    if !(spec.test_ratio > 0.0 && spec.test_ratio < 1.0) {
        return Err(Error::Config(format!(
            "test_ratio must be in (0, 1), got {}",
            spec.test_ratio
        )));
    }
    let n_test = ((n_samples as f64 * spec.test_ratio).round() as usize).max(1);
    if n_samples.saturating_sub(n_test) < 2 {
        return Err(Error::Config(format!(
            "{n_samples} samples leave fewer than 2 training rows at test_ratio {}",
            spec.test_ratio
        )));
    }
    let mut splits = Vec::with_capacity(spec.count);
    for s in 0..spec.count {
        let mut rng = rng_for(spec.seed, s as u64);
        let mut perm: Vec<usize> = (0..n_samples).collect();
        perm.shuffle(&mut rng);
        let mut test: Vec<usize> = perm[..n_test].to_vec();
        let mut train: Vec<usize> = perm[n_test..].to_vec();
        test.sort_unstable();
        train.sort_unstable();
        splits.push((train, test));
    }
    Ok(splits)
}

/// SVR hyperparameters for the sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SvrSettings {
    pub gamma: f64,
    pub c: f64,
    pub epsilon: f64,
    pub tol: f64,
}

impl Default for SvrSettings {
    fn default() -> Self {
        SvrSettings {
            gamma: 1.0,
            c: 1.0,
            epsilon: 1e-3,
            tol: 1e-3,
        }
    }
}

/// Per-(method, k) split scores.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KCell {
    pub k: usize,
    /// R² per successful split, in split order.
    pub r2: Vec<f64>,
    /// Indices of splits skipped because training failed.
    pub skipped_splits: Vec<usize>,
    pub mean: f64,
    pub std: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MethodSweep {
    pub method: MethodLabel,
    pub per_k: Vec<KCell>,
}

/// Full sweep result with the configuration that produced it.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct R2Sweep {
    pub methods: Vec<MethodSweep>,
    pub splits: SplitSpec,
    pub svr: SvrSettings,
}

impl R2Sweep {
    /// CSV with one row per (method, k, split); skipped splits leave the
    /// r2 field empty.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("method,k,split,r2\n");
        for m in &self.methods {
            for cell in &m.per_k {
                let mut scores = cell.r2.iter();
                for split in 0..self.splits.count {
                    if cell.skipped_splits.contains(&split) {
                        out.push_str(&format!("{},{},{},\n", m.method, cell.k, split));
                    } else if let Some(r2) = scores.next() {
                        out.push_str(&format!("{},{},{},{}\n", m.method, cell.k, split, r2));
                    }
                }
            }
        }
        out
    }

    pub fn method(&self, label: MethodLabel) -> Option<&MethodSweep> {
        self.methods.iter().find(|m| m.method == label)
    }
}

/// Per-k CMI-vs-MI gap with the significance rule used throughout: the
/// mean difference must exceed the larger of the two standard errors.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GapRow {
    pub k: usize,
    pub mean_mi: f64,
    pub mean_cmi: f64,
    pub gap: f64,
    pub se_mi: f64,
    pub se_cmi: f64,
    pub pooled_std: f64,
    pub significant: bool,
}

/// Aligns the MI and CMI sweeps per k.
pub fn gap_rows(sweep: &R2Sweep) -> Result<Vec<GapRow>> {
    let mi = sweep
        .method(MethodLabel::Mi)
        .ok_or_else(|| Error::Config("sweep lacks an MI method".into()))?;
    let cmi = sweep
        .method(MethodLabel::Cmi)
        .ok_or_else(|| Error::Config("sweep lacks a CMI method".into()))?;
    let mut rows = Vec::new();
    for cell_mi in &mi.per_k {
        let Some(cell_cmi) = cmi.per_k.iter().find(|c| c.k == cell_mi.k) else {
            continue;
        };
        let se = |cell: &KCell| {
            if cell.r2.is_empty() {
                0.0
            } else {
                cell.std / (cell.r2.len() as f64).sqrt()
            }
        };
        let gap = cell_cmi.mean - cell_mi.mean;
        let se_mi = se(cell_mi);
        let se_cmi = se(cell_cmi);
        let pooled_std = (0.5 * (cell_mi.std.powi(2) + cell_cmi.std.powi(2))).sqrt();
        rows.push(GapRow {
            k: cell_mi.k,
            mean_mi: cell_mi.mean,
            mean_cmi: cell_cmi.mean,
            gap,
            se_mi,
            se_cmi,
            pooled_std,
            significant: gap > se_mi.max(se_cmi),
        });
    }
    Ok(rows)
}

fn mean_std(values: &[f64]) -> (f64, f64) {
    if values.is_empty() {
        return (0.0, 0.0);
    }
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>()
        / (values.len() - 1) as f64;
    (mean, var.sqrt())
}

/// Scores every (method, k) selection with ε-SVR over paired splits.
///
/// Standardization statistics (features and target) come from the training
/// split only. R² is computed on the test split; it is invariant under the
/// affine target scaling, so scores are comparable across splits.
pub fn r2_sweep(
    e: &EncodedDataset,
    selections: &[SelectionMatrix],
    splits: &SplitSpec,
    svr_settings: &SvrSettings,
) -> Result<R2Sweep> {
    if selections.is_empty() {
        return Err(Error::Config("r2_sweep needs at least one selection".into()));
    }
    let split_sets = split_indices(splits, e.n_samples())?;
    let kernel = KernelParams::Rbf {
        gamma: svr_settings.gamma,
    };
    kernel.validate()?;

    let mut methods = Vec::new();
    for matrix in selections {
        let mut per_k = Vec::new();
        for (row_idx, k) in matrix.k_values.iter().enumerate() {
            let columns = &matrix.rows[row_idx];
            let sub = e.matrix.select(Axis(1), columns);
            let mut r2 = Vec::new();
            let mut skipped = Vec::new();
            for (split_idx, (train_rows, test_rows)) in split_sets.iter().enumerate() {
                let stats = ColumnStats::fit_rows(&sub, train_rows);
                let scaled = stats.apply(&sub);
                let x_train = scaled.select(Axis(0), train_rows);
                let x_test = scaled.select(Axis(0), test_rows);

                let t_mean = train_rows.iter().map(|&i| e.target[i]).sum::<f64>()
                    / train_rows.len() as f64;
                let t_var = train_rows
                    .iter()
                    .map(|&i| (e.target[i] - t_mean).powi(2))
                    .sum::<f64>()
                    / train_rows.len() as f64;
                let t_std = t_var.sqrt();
                if t_std == 0.0 {
                    skipped.push(split_idx);
                    continue;
                }
                let z_train: Vec<f64> = train_rows
                    .iter()
                    .map(|&i| (e.target[i] - t_mean) / t_std)
                    .collect();
                let z_test: Vec<f64> = test_rows
                    .iter()
                    .map(|&i| (e.target[i] - t_mean) / t_std)
                    .collect();

                let score = svr::train(
                    &x_train,
                    &z_train,
                    svr_settings.c,
                    svr_settings.epsilon,
                    &kernel,
                    svr_settings.tol,
                )
                .and_then(|model| svr::predict(&model, &x_test))
                .and_then(|preds| svr::r2_score(&z_test, &preds));
                match score {
                    Ok(v) => r2.push(v),
                    Err(_) => skipped.push(split_idx),
                }
            }
            let (mean, std) = mean_std(&r2);
            per_k.push(KCell {
                k: *k,
                r2,
                skipped_splits: skipped,
                mean,
                std,
            });
        }
        methods.push(MethodSweep {
            method: matrix.method,
            per_k,
        });
    }
    Ok(R2Sweep {
        methods,
        splits: *splits,
        svr: *svr_settings,
    })
}
