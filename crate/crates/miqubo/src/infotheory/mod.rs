//! Empirical probability tables, Shannon entropy, mutual information,
//! conditional mutual information, and the PCA explained-variance
//! baseline. All information quantities are in nats.

mod jacobi;

use ndarray::{ArrayD, Axis, Ix2, Ix3, IxDyn};
use serde::{Deserialize, Serialize};

use crate::data::{DiscretizedTable, EncodedDataset};
use crate::error::{Error, Result};

/// Default cap on joint-distribution cells.
pub const DEFAULT_CELL_BUDGET: usize = 10_000_000;

/// Values no more negative than this are treated as floating-point zeros.
const NEG_FLOOR: f64 = -1e-12;

/// A dense empirical joint distribution over discretized variables.
#[derive(Debug, Clone)]
pub struct JointDistribution {
    pub dims: Vec<usize>,
    pub probabilities: ArrayD<f64>,
    /// Number of nonzero cells.
    pub support: usize,
}

/// Builds the empirical joint of the given feature columns, optionally
/// with the target as the trailing axis. Cell values are count / n.
pub fn joint_distribution(
    t: &DiscretizedTable,
    column_indices: &[usize],
    include_target: bool,
) -> Result<JointDistribution> {
    joint_distribution_with_budget(t, column_indices, include_target, DEFAULT_CELL_BUDGET)
}

/// As [`joint_distribution`] with an explicit cell budget.
pub fn joint_distribution_with_budget(
    t: &DiscretizedTable,
    column_indices: &[usize],
    include_target: bool,
    budget: usize,
) -> Result<JointDistribution> {
    let mut dims: Vec<usize> = column_indices.iter().map(|&i| t.bin_counts[i]).collect();
    if include_target {
        dims.push(t.target_bin_count);
    }
    let cells: usize = dims.iter().try_fold(1usize, |acc, &d| {
        acc.checked_mul(d).filter(|&c| c <= budget)
    })
    .ok_or(Error::CellBudgetExceeded {
        cells: dims.iter().map(|&d| d as f64).product::<f64>() as usize,
        budget,
    })?;
    let _ = cells;

    let n = t.n_samples();
    let mut counts = ArrayD::<f64>::zeros(IxDyn(&dims));
    let mut idx = vec![0usize; dims.len()];
    for s in 0..n {
        for (a, &col) in column_indices.iter().enumerate() {
            idx[a] = t.codes[col][s] as usize;
        }
        if include_target {
            idx[column_indices.len()] = t.target_codes[s] as usize;
        }
        counts[IxDyn(&idx)] += 1.0;
    }
    let inv = 1.0 / n as f64;
    counts.mapv_inplace(|c| c * inv);
    let support = counts.iter().filter(|&&p| p > 0.0).count();
    Ok(JointDistribution {
        dims,
        probabilities: counts,
        support,
    })
}

/// Shannon entropy −Σ p ln p in nats, with 0·ln 0 = 0.
pub fn entropy(p: &JointDistribution) -> f64 {
    shannon(p.probabilities.iter().copied())
}

fn shannon(probs: impl Iterator<Item = f64>) -> f64 {
    let s: f64 = probs.filter(|&p| p > 0.0).map(|p| p * p.ln()).sum();
    -s
}

fn clamp_nonneg(value: f64, what: &'static str) -> Result<f64> {
    if value >= 0.0 {
        Ok(value)
    } else if value >= NEG_FLOOR {
        Ok(0.0)
    } else {
        Err(Error::Internal(format!(
            "{what} is negative beyond the floating-point floor: {value:e}"
        )))
    }
}

/// Mutual information MI(X_i; Y) between feature `i` and the target,
/// from the empirical pair joint.
pub fn mutual_information(t: &DiscretizedTable, i: usize) -> Result<f64> {
    let joint = joint_distribution(t, &[i], true)?;
    let p = joint
        .probabilities
        .into_dimensionality::<Ix2>()
        .expect("pair joint is 2-d");
    let px = p.sum_axis(Axis(1));
    let py = p.sum_axis(Axis(0));
    let mut mi = 0.0;
    for ((x, y), &pxy) in p.indexed_iter() {
        if pxy > 0.0 {
            mi += pxy * (pxy / (px[x] * py[y])).ln();
        }
    }
    clamp_nonneg(mi, "mutual information")
}

/// Conditional mutual information MI(X_j; Y | X_i): the information
/// feature `j` adds about the target once feature `i` is known. Cells
/// with zero conditioning mass contribute 0.
pub fn conditional_mutual_information(t: &DiscretizedTable, j: usize, i: usize) -> Result<f64> {
    if i == j {
        return Err(Error::DimensionMismatch(format!(
            "cmi requires distinct features, got j = i = {i}"
        )));
    }
    let joint = joint_distribution(t, &[j, i], true)?;
    let p = joint
        .probabilities
        .into_dimensionality::<Ix3>()
        .expect("triple joint is 3-d");
    // axes: (a = X_j, c = X_i, y = target)
    let p_ac = p.sum_axis(Axis(2));
    let p_cy = p.sum_axis(Axis(0));
    let p_c = p_ac.sum_axis(Axis(0));
    let mut cmi = 0.0;
    for ((a, c, y), &pacy) in p.indexed_iter() {
        if pacy > 0.0 {
            cmi += pacy * (pacy * p_c[c] / (p_ac[[a, c]] * p_cy[[c, y]])).ln();
        }
    }
    clamp_nonneg(cmi, "conditional mutual information")
}

/// Per-feature MI(X_i; Y) with summary statistics.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MiReport {
    pub feature_names: Vec<String>,
    /// MI per feature, in nats.
    pub mi: Vec<f64>,
    pub total_mi: f64,
    /// Share of total MI held by the top-2 features; 1 when total is 0.
    pub concentration: f64,
}

impl MiReport {
    /// Feature indices sorted by MI descending, ties by lowest index.
    pub fn ranked(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.mi.len()).collect();
        order.sort_by(|&a, &b| self.mi[b].total_cmp(&self.mi[a]).then(a.cmp(&b)));
        order
    }

    /// CSV with one `feature,mi` row per feature, in rank order.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("feature,mi\n");
        for &i in &self.ranked() {
            out.push_str(&format!("{},{}\n", self.feature_names[i], self.mi[i]));
        }
        out
    }
}

/// Computes MI(X_i; Y) for every feature.
pub fn mi_report(t: &DiscretizedTable) -> Result<MiReport> {
    if t.n_features() == 0 {
        return Err(Error::Config("mi_report requires at least one feature".into()));
    }
    let mut mi = Vec::with_capacity(t.n_features());
    for i in 0..t.n_features() {
        mi.push(mutual_information(t, i)?);
    }
    let total: f64 = mi.iter().sum();
    let mut sorted = mi.clone();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let top2: f64 = sorted.iter().take(2).sum();
    let concentration = if total > 0.0 { top2 / total } else { 1.0 };
    Ok(MiReport {
        feature_names: t.feature_names.clone(),
        mi,
        total_mi: total,
        concentration,
    })
}

/// Pairwise conditional-mutual-information matrix.
///
/// Entry `(i, j)` with `i != j` holds MI(X_j; Y | X_i) — row index is the
/// conditioning feature. The diagonal holds MI(X_i; Y) from the same code
/// path as [`mi_report`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CmiTensor {
    pub feature_names: Vec<String>,
    pub n: usize,
    /// Row-major n×n values in nats.
    pub values: Vec<f64>,
}

impl CmiTensor {
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.n + j]
    }

    pub fn diagonal(&self, i: usize) -> f64 {
        self.values[i * self.n + i]
    }

    /// The combined MI + CMI objective of a feature subset:
    /// Σ_{i∈F} [ MI(X_i;Y) + Σ_{j∈F, j≠i} MI(X_j;Y|X_i) ].
    pub fn objective(&self, selected: &[usize]) -> f64 {
        let mut total = 0.0;
        for &i in selected {
            total += self.diagonal(i);
            for &j in selected {
                if j != i {
                    total += self.get(i, j);
                }
            }
        }
        total
    }

    /// CSV matrix with feature names as header row and column.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("feature");
        for name in &self.feature_names {
            out.push(',');
            out.push_str(name);
        }
        out.push('\n');
        for i in 0..self.n {
            out.push_str(&self.feature_names[i]);
            for j in 0..self.n {
                out.push_str(&format!(",{}", self.get(i, j)));
            }
            out.push('\n');
        }
        out
    }
}

/// Fills the full CMI tensor; O(n²) joint builds.
pub fn cmi_tensor(t: &DiscretizedTable) -> Result<CmiTensor> {
    let n = t.n_features();
    if n == 0 {
        return Err(Error::Config("cmi_tensor requires at least one feature".into()));
    }
    let mut values = vec![0.0; n * n];
    for i in 0..n {
        values[i * n + i] = mutual_information(t, i)?;
        for j in 0..n {
            if j != i {
                values[i * n + j] = conditional_mutual_information(t, j, i)?;
            }
        }
    }
    Ok(CmiTensor {
        feature_names: t.feature_names.clone(),
        n,
        values,
    })
}

/// Explained variance ratio of the feature covariance spectrum, sorted
/// descending. Eigenvalues come from a cyclic Jacobi solve at 1e-12
/// relative off-diagonal tolerance.
pub fn explained_variance_ratio(e: &EncodedDataset) -> Result<Vec<f64>> {
    let (n, d) = (e.n_samples(), e.n_features());
    if d == 0 || n < 2 {
        return Err(Error::Config(
            "explained_variance_ratio needs at least 1 feature and 2 samples".into(),
        ));
    }
    let mut cov = ndarray::Array2::<f64>::zeros((d, d));
    let means: Vec<f64> = (0..d)
        .map(|j| e.matrix.column(j).sum() / n as f64)
        .collect();
    for a in 0..d {
        for b in a..d {
            let mut s = 0.0;
            for r in 0..n {
                s += (e.matrix[[r, a]] - means[a]) * (e.matrix[[r, b]] - means[b]);
            }
            let v = s / n as f64;
            cov[[a, b]] = v;
            cov[[b, a]] = v;
        }
    }
    let mut eigenvalues = jacobi::symmetric_eigenvalues(&cov, 1e-12);
    for ev in eigenvalues.iter_mut() {
        if *ev < 0.0 && *ev > NEG_FLOOR * cov.nrows() as f64 {
            *ev = 0.0;
        }
    }
    let total: f64 = eigenvalues.iter().sum();
    if total <= 0.0 {
        return Err(Error::ZeroVariance);
    }
    eigenvalues.sort_by(|a, b| b.total_cmp(a));
    Ok(eigenvalues.into_iter().map(|ev| ev / total).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::{one_hot_encode, standardize, Column, Dataset};
    use crate::seeding::rng_for;
    use rand::Rng;

    fn table(codes: Vec<Vec<u32>>, target: Vec<u32>) -> DiscretizedTable {
        DiscretizedTable::from_codes(codes, target)
    }

    fn random_table(seed: u64, n_features: usize, bins: u32, samples: usize) -> DiscretizedTable {
        let mut rng = rng_for(seed, 0);
        let codes = (0..n_features)
            .map(|_| (0..samples).map(|_| rng.random_range(0..bins)).collect())
            .collect();
        let target = (0..samples).map(|_| rng.random_range(0..bins)).collect();
        table(codes, target)
    }

    // Direct-summation MI oracle over raw counts, independent of the
    // JointDistribution path.
    fn mi_oracle(x: &[u32], y: &[u32]) -> f64 {
        let kx = *x.iter().max().unwrap() as usize + 1;
        let ky = *y.iter().max().unwrap() as usize + 1;
        let n = x.len() as f64;
        let mut joint = vec![vec![0.0; ky]; kx];
        for (&a, &b) in x.iter().zip(y) {
            joint[a as usize][b as usize] += 1.0 / n;
        }
        let px: Vec<f64> = joint.iter().map(|row| row.iter().sum()).collect();
        let py: Vec<f64> = (0..ky).map(|b| joint.iter().map(|r| r[b]).sum()).collect();
        let mut mi = 0.0;
        for a in 0..kx {
            for b in 0..ky {
                let p = joint[a][b];
                if p > 0.0 {
                    mi += p * (p / (px[a] * py[b])).ln();
                }
            }
        }
        mi
    }

    // Joint code of two variables, for the chain-rule oracle.
    fn paired(a: &[u32], b: &[u32]) -> Vec<u32> {
        let kb = *b.iter().max().unwrap() + 1;
        a.iter().zip(b).map(|(&x, &y)| x * kb + y).collect()
    }

    #[test]
    fn joint_counts_single_binary_column() {
        let t = table(vec![vec![1, 0, 1, 1]], vec![0, 0, 0, 0]);
        let p = joint_distribution(&t, &[0], false).unwrap();
        assert_eq!(p.dims, vec![2]);
        let v: Vec<f64> = p.probabilities.iter().copied().collect();
        assert_eq!(v, vec![0.25, 0.75]);
        assert_eq!(p.support, 2);
    }

    #[test]
    fn joint_of_identical_columns_is_diagonal() {
        let t = table(vec![vec![0, 1, 1, 0], vec![0, 1, 1, 0]], vec![0; 4]);
        let p = joint_distribution(&t, &[0, 1], false).unwrap();
        assert_eq!(p.support, 2);
        let arr = p.probabilities.into_dimensionality::<Ix2>().unwrap();
        assert_eq!(arr[[0, 0]], 0.5);
        assert_eq!(arr[[1, 1]], 0.5);
        assert_eq!(arr[[0, 1]], 0.0);
        assert_eq!(arr[[1, 0]], 0.0);
    }

    #[test]
    fn marginalization_matches_single_column_joints() {
        let t = random_table(3, 3, 4, 50);
        let p3 = joint_distribution(&t, &[0, 1, 2], false).unwrap();
        let arr = p3.probabilities.into_dimensionality::<Ix3>().unwrap();
        for axis_kept in 0..3 {
            let single = joint_distribution(&t, &[axis_kept], false).unwrap();
            let direct: Vec<f64> = single.probabilities.iter().copied().collect();
            let mut marginal = vec![0.0; t.bin_counts[axis_kept]];
            for ((a, b, c), &v) in arr.indexed_iter() {
                let idx = [a, b, c][axis_kept];
                marginal[idx] += v;
            }
            for (m, d) in marginal.iter().zip(&direct) {
                assert!((m - d).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn cell_budget_is_enforced() {
        let t = random_table(4, 3, 300, 40);
        let err = joint_distribution_with_budget(&t, &[0, 1, 2], false, 1000).unwrap_err();
        assert!(matches!(err, Error::CellBudgetExceeded { .. }));
    }

    #[test]
    fn entropy_analytic_values() {
        let t = table(vec![vec![0, 1]], vec![0, 0]);
        let p = joint_distribution(&t, &[0], false).unwrap();
        assert!((entropy(&p) - std::f64::consts::LN_2).abs() < 1e-15);

        let point = table(vec![vec![0, 0]], vec![0, 0]);
        let p = joint_distribution(&point, &[0], false).unwrap();
        assert_eq!(entropy(&p), 0.0);

        let quarter = table(vec![vec![0, 1, 1, 1]], vec![0; 4]);
        let p = joint_distribution(&quarter, &[0], false).unwrap();
        assert!((entropy(&p) - 0.5623351446188083).abs() < 1e-15);
    }

    #[test]
    fn mi_of_independent_feature_is_zero() {
        // product structure: every (x, y) combination equally often
        let mut x = Vec::new();
        let mut y = Vec::new();
        for a in 0..2 {
            for b in 0..3 {
                x.push(a);
                y.push(b);
            }
        }
        let t = table(vec![x], y);
        assert!(mutual_information(&t, 0).unwrap() < 1e-12);
    }

    #[test]
    fn mi_of_identical_feature_is_target_entropy() {
        let y = vec![0, 1, 2, 0, 1, 0];
        let t = table(vec![y.clone()], y);
        let target_entropy = entropy(&joint_distribution(&t, &[0], false).unwrap());
        assert!((mutual_information(&t, 0).unwrap() - target_entropy).abs() < 1e-12);
    }

    #[test]
    fn mi_matches_direct_oracle_on_flipped_row() {
        let y = vec![0, 0, 0, 0, 1, 1, 1, 1];
        let mut x = y.clone();
        x[7] = 0;
        let t = table(vec![x.clone()], y.clone());
        let mi = mutual_information(&t, 0).unwrap();
        assert!((mi - mi_oracle(&x, &y)).abs() < 1e-12);
    }

    #[test]
    fn mi_is_symmetric_in_roles() {
        let t = random_table(9, 1, 5, 64);
        let swapped = table(vec![t.target_codes.clone()], t.codes[0].clone());
        let a = mutual_information(&t, 0).unwrap();
        let b = mutual_information(&swapped, 0).unwrap();
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn entropy_identity_on_random_tables() {
        for seed in 0..20 {
            let t = random_table(seed, 1, 4, 48);
            let pxy = joint_distribution(&t, &[0], true).unwrap();
            let px = joint_distribution(&t, &[0], false).unwrap();
            let py = joint_distribution(&t, &[], true).unwrap();
            let identity = entropy(&py) + entropy(&px) - entropy(&pxy);
            let mi = mutual_information(&t, 0).unwrap();
            assert!((mi - identity).abs() < 1e-10);
        }
    }

    #[test]
    fn cmi_conditioned_on_constant_equals_mi() {
        let t = random_table(5, 1, 4, 40);
        let with_const = table(
            vec![t.codes[0].clone(), vec![0; 40]],
            t.target_codes.clone(),
        );
        let cmi = conditional_mutual_information(&with_const, 0, 1).unwrap();
        let mi = mutual_information(&t, 0).unwrap();
        assert!((cmi - mi).abs() < 1e-12);
    }

    #[test]
    fn cmi_of_duplicate_feature_is_zero() {
        let t = random_table(6, 1, 4, 40);
        let dup = table(
            vec![t.codes[0].clone(), t.codes[0].clone()],
            t.target_codes.clone(),
        );
        assert!(conditional_mutual_information(&dup, 1, 0).unwrap() < 1e-12);
    }

    #[test]
    fn cmi_matches_chain_rule_oracle() {
        for seed in 0..30 {
            let t = random_table(100 + seed, 2, 2, 16);
            let cmi = conditional_mutual_information(&t, 0, 1).unwrap();
            // MI(X_j; (Y, X_i)) - MI(X_j; X_i)
            let yz = paired(&t.target_codes, &t.codes[1]);
            let oracle = mi_oracle(&t.codes[0], &yz) - mi_oracle(&t.codes[0], &t.codes[1]);
            assert!(
                (cmi - oracle).abs() < 1e-10,
                "seed {seed}: cmi {cmi} vs oracle {oracle}"
            );
        }
    }

    #[test]
    fn cmi_rejects_equal_indices() {
        let t = random_table(1, 2, 3, 20);
        assert!(conditional_mutual_information(&t, 1, 1).is_err());
    }

    #[test]
    fn merging_target_bins_never_increases_mi() {
        for seed in 0..20 {
            let t = random_table(200 + seed, 1, 5, 60);
            let mi = mutual_information(&t, 0).unwrap();
            // merge the two highest target codes
            let k = t.target_bin_count as u32;
            let merged: Vec<u32> = t
                .target_codes
                .iter()
                .map(|&c| if c == k - 1 { k - 2 } else { c })
                .collect();
            let tm = table(vec![t.codes[0].clone()], merged);
            let mi_merged = mutual_information(&tm, 0).unwrap();
            assert!(mi_merged <= mi + 1e-10);
        }
    }

    #[test]
    fn report_ranks_and_concentration() {
        // feature 0 = target (max MI), feature 1 = constant (0 MI)
        let y = vec![0, 1, 0, 1, 0, 1];
        let t = table(vec![y.clone(), vec![0; 6]], y);
        let r = mi_report(&t).unwrap();
        assert_eq!(r.ranked(), vec![0, 1]);
        assert!((r.concentration - 1.0).abs() < 1e-12);
        assert_eq!(r.mi[1], 0.0);
    }

    #[test]
    fn report_on_independent_features_defines_concentration_one() {
        let mut x = Vec::new();
        let mut y = Vec::new();
        for a in 0..2 {
            for b in 0..2 {
                x.push(a);
                y.push(b);
            }
        }
        let t = table(vec![x], y);
        let r = mi_report(&t).unwrap();
        assert_eq!(r.concentration, 1.0);
        assert!(r.total_mi < 1e-12);
    }

    #[test]
    fn duplicated_top_feature_gets_equal_mi() {
        let t = random_table(7, 1, 3, 30);
        let dup = table(
            vec![t.codes[0].clone(), t.codes[0].clone()],
            t.target_codes.clone(),
        );
        let r = mi_report(&dup).unwrap();
        assert!((r.mi[0] - r.mi[1]).abs() < 1e-12);
    }

    #[test]
    fn tensor_diagonal_matches_report_exactly() {
        let t = random_table(8, 4, 3, 32);
        let tensor = cmi_tensor(&t).unwrap();
        let report = mi_report(&t).unwrap();
        for i in 0..4 {
            assert_eq!(tensor.diagonal(i), report.mi[i]);
        }
    }

    #[test]
    fn tensor_entries_match_pairwise_recomputation() {
        let t = random_table(12, 4, 3, 32);
        let tensor = cmi_tensor(&t).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    let direct = conditional_mutual_information(&t, j, i).unwrap();
                    assert!((tensor.get(i, j) - direct).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn tensor_of_independent_variables_is_small() {
        // all 8 combinations of 3 binary variables, exactly once
        let mut f0 = Vec::new();
        let mut f1 = Vec::new();
        let mut y = Vec::new();
        for a in 0..2u32 {
            for b in 0..2u32 {
                for c in 0..2u32 {
                    f0.push(a);
                    f1.push(b);
                    y.push(c);
                }
            }
        }
        let t = table(vec![f0, f1], y);
        let tensor = cmi_tensor(&t).unwrap();
        for v in &tensor.values {
            assert!(*v < 1e-12);
        }
    }

    fn encoded_from_cols(cols: Vec<Vec<f64>>) -> EncodedDataset {
        let n = cols[0].len();
        let names = (0..cols.len()).map(|i| format!("x{i}")).collect();
        let columns = cols.into_iter().map(Column::Numeric).collect();
        let d = Dataset::new(names, columns, vec![0.0; n], "y".into()).unwrap();
        one_hot_encode(&d)
    }

    #[test]
    fn evr_rank_one_covariance() {
        let base: Vec<f64> = (0..40).map(|i| (i as f64 * 0.7).sin()).collect();
        let e = standardize(&encoded_from_cols(vec![base.clone(), base]));
        let evr = explained_variance_ratio(&e).unwrap();
        assert!((evr[0] - 1.0).abs() < 1e-10);
        assert!(evr[1].abs() < 1e-10);
    }

    #[test]
    fn evr_isotropic_three_features() {
        // orthogonal design: each column an orthogonal basis vector pattern
        let n = 12;
        let cols: Vec<Vec<f64>> = (0..3)
            .map(|j| {
                (0..n)
                    .map(|i| {
                        ((2.0 * std::f64::consts::PI * (j as f64 + 1.0) * i as f64) / n as f64)
                            .cos()
                    })
                    .collect()
            })
            .collect();
        let e = standardize(&encoded_from_cols(cols));
        let evr = explained_variance_ratio(&e).unwrap();
        for v in &evr {
            assert!((v - 1.0 / 3.0).abs() < 1e-10, "evr {evr:?}");
        }
    }

    #[test]
    fn evr_sums_to_one_and_ignores_row_order() {
        let mut rng = rng_for(21, 0);
        let cols: Vec<Vec<f64>> = (0..5)
            .map(|_| (0..50).map(|_| rng.random_range(-1.0..1.0)).collect())
            .collect();
        let e = encoded_from_cols(cols.clone());
        let evr = explained_variance_ratio(&e).unwrap();
        assert!((evr.iter().sum::<f64>() - 1.0).abs() < 1e-10);

        let perm: Vec<usize> = (0..50).rev().collect();
        let permuted: Vec<Vec<f64>> = cols
            .iter()
            .map(|c| perm.iter().map(|&i| c[i]).collect())
            .collect();
        let evr2 = explained_variance_ratio(&encoded_from_cols(permuted)).unwrap();
        for (a, b) in evr.iter().zip(&evr2) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn evr_zero_variance_errors() {
        let e = encoded_from_cols(vec![vec![2.0; 10]]);
        assert!(matches!(
            explained_variance_ratio(&e),
            Err(Error::ZeroVariance)
        ));
    }

    // Independent eigenvalue oracle: bisection on the inertia of A - λI
    // computed by pivot signs of Gaussian elimination.
    fn eigen_bisect(a: &ndarray::Array2<f64>) -> Vec<f64> {
        let n = a.nrows();
        let count_below = |lambda: f64| -> usize {
            let mut m = a.clone();
            for i in 0..n {
                m[[i, i]] -= lambda;
            }
            let mut negatives = 0;
            for k in 0..n {
                let pivot = m[[k, k]];
                let pivot = if pivot == 0.0 { 1e-300 } else { pivot };
                if pivot < 0.0 {
                    negatives += 1;
                }
                for r in (k + 1)..n {
                    let f = m[[r, k]] / pivot;
                    for c in k..n {
                        m[[r, c]] -= f * m[[k, c]];
                    }
                }
            }
            negatives
        };
        let radius: f64 = (0..n)
            .map(|i| (0..n).map(|j| a[[i, j]].abs()).sum::<f64>())
            .fold(0.0, f64::max)
            + 1.0;
        (0..n)
            .map(|k| {
                let (mut lo, mut hi) = (-radius, radius);
                for _ in 0..80 {
                    let mid = 0.5 * (lo + hi);
                    if count_below(mid) > k {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                }
                0.5 * (lo + hi)
            })
            .collect()
    }

    #[test]
    fn evr_matches_bisection_oracle() {
        let mut rng = rng_for(33, 0);
        let n = 50;
        let cols: Vec<Vec<f64>> = (0..5)
            .map(|_| (0..n).map(|_| rng.random_range(-2.0..2.0)).collect())
            .collect();
        let e = encoded_from_cols(cols);
        let evr = explained_variance_ratio(&e).unwrap();

        let d = 5;
        let means: Vec<f64> = (0..d)
            .map(|j| e.matrix.column(j).sum() / n as f64)
            .collect();
        let mut cov = ndarray::Array2::<f64>::zeros((d, d));
        for p in 0..d {
            for q in 0..d {
                let mut s = 0.0;
                for r in 0..n {
                    s += (e.matrix[[r, p]] - means[p]) * (e.matrix[[r, q]] - means[q]);
                }
                cov[[p, q]] = s / n as f64;
            }
        }
        let mut oracle = eigen_bisect(&cov);
        oracle.sort_by(|a, b| b.total_cmp(a));
        let total: f64 = oracle.iter().sum();
        for (got, want) in evr.iter().zip(oracle.iter().map(|v| v / total)) {
            assert!((got - want).abs() < 1e-8, "evr {got} vs oracle {want}");
        }
    }
}
