//! Tabular datasets: CSV ingestion, one-hot encoding, discretization,
//! standardization, and a synthetic generator with controllable MI
//! concentration.

mod discretize;
mod synthetic;

pub use discretize::{discretize, DiscretizedTable};
pub use synthetic::{generate_synthetic, Concentration, SyntheticProfile};

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use ndarray::Array2;

use crate::error::{Error, Result};

/// A raw feature column.
#[derive(Debug, Clone, PartialEq)]
pub enum Column {
    Numeric(Vec<f64>),
    Categorical(Vec<String>),
}

impl Column {
    pub fn len(&self) -> usize {
        match self {
            Column::Numeric(v) => v.len(),
            Column::Categorical(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Per-column type hint for CSV ingestion; overrides inference.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColumnKind {
    Numeric,
    Categorical,
}

/// A named tabular dataset with a numeric regression target.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub feature_names: Vec<String>,
    pub columns: Vec<Column>,
    pub target: Vec<f64>,
    pub target_name: String,
}

impl Dataset {
    /// Builds a dataset, validating that all columns share the target's
    /// length (≥ 1) and that feature names are unique and non-empty.
    pub fn new(
        feature_names: Vec<String>,
        columns: Vec<Column>,
        target: Vec<f64>,
        target_name: String,
    ) -> Result<Self> {
        if feature_names.len() != columns.len() {
            return Err(Error::InvalidDataset(format!(
                "{} names for {} columns",
                feature_names.len(),
                columns.len()
            )));
        }
        if target.is_empty() {
            return Err(Error::InvalidDataset("no data rows".into()));
        }
        let n = target.len();
        for (name, col) in feature_names.iter().zip(&columns) {
            if col.len() != n {
                return Err(Error::InvalidDataset(format!(
                    "column '{}' has {} rows, target has {}",
                    name,
                    col.len(),
                    n
                )));
            }
        }
        let mut seen = BTreeSet::new();
        for name in &feature_names {
            if name.is_empty() {
                return Err(Error::InvalidDataset("empty feature name".into()));
            }
            if !seen.insert(name) {
                return Err(Error::InvalidDataset(format!(
                    "duplicate feature name '{name}'"
                )));
            }
        }
        Ok(Dataset {
            feature_names,
            columns,
            target,
            target_name,
        })
    }

    pub fn n_samples(&self) -> usize {
        self.target.len()
    }

    pub fn n_features(&self) -> usize {
        self.columns.len()
    }
}

/// A dataset after one-hot encoding: a dense numeric matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct EncodedDataset {
    pub feature_names: Vec<String>,
    /// n_samples × n_features.
    pub matrix: Array2<f64>,
    pub target: Vec<f64>,
    pub target_name: String,
    /// For each encoded column, the index of its source raw feature.
    pub origin_map: Vec<usize>,
}

impl EncodedDataset {
    pub fn n_samples(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn n_features(&self) -> usize {
        self.matrix.ncols()
    }
}

/// Loads a comma-delimited, header-row CSV into a [`Dataset`].
///
/// Column types are inferred (numeric iff every cell parses as a finite
/// real) unless overridden by `schema`. The target column must be numeric
/// and is removed from the feature set. Row order is preserved.
pub fn load_csv(
    path: impl AsRef<Path>,
    target_name: &str,
    schema: Option<&BTreeMap<String, ColumnKind>>,
) -> Result<Dataset> {
    let path = path.as_ref();
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| map_csv_open_error(e, path))?;

    let headers: Vec<String> = reader
        .headers()
        .map_err(map_csv_error)?
        .iter()
        .map(|h| h.to_string())
        .collect();
    let target_idx = headers
        .iter()
        .position(|h| h == target_name)
        .ok_or_else(|| Error::MissingTarget(target_name.to_string()))?;

    let mut records = Vec::new();
    for rec in reader.records() {
        records.push(rec.map_err(map_csv_error)?);
    }

    let mut target = Vec::with_capacity(records.len());
    for (row, rec) in records.iter().enumerate() {
        let cell = &rec[target_idx];
        target.push(parse_real(cell).ok_or_else(|| Error::BadNumericCell {
            row: row + 1,
            column: target_name.to_string(),
            value: cell.to_string(),
        })?);
    }

    let mut feature_names = Vec::new();
    let mut columns = Vec::new();
    for (col_idx, name) in headers.iter().enumerate() {
        if col_idx == target_idx {
            continue;
        }
        let cells: Vec<&str> = records.iter().map(|r| &r[col_idx]).collect();
        let hinted = schema.and_then(|s| s.get(name).copied());
        let numeric = match hinted {
            Some(ColumnKind::Numeric) => true,
            Some(ColumnKind::Categorical) => false,
            None => cells.iter().all(|c| parse_real(c).is_some()),
        };
        let column = if numeric {
            let mut values = Vec::with_capacity(cells.len());
            for (row, cell) in cells.iter().enumerate() {
                values.push(parse_real(cell).ok_or_else(|| Error::BadNumericCell {
                    row: row + 1,
                    column: name.clone(),
                    value: cell.to_string(),
                })?);
            }
            Column::Numeric(values)
        } else {
            Column::Categorical(cells.iter().map(|c| c.to_string()).collect())
        };
        feature_names.push(name.clone());
        columns.push(column);
    }

    Dataset::new(feature_names, columns, target, target_name.to_string())
}

fn parse_real(cell: &str) -> Option<f64> {
    cell.trim().parse::<f64>().ok().filter(|v| v.is_finite())
}

fn map_csv_open_error(e: csv::Error, path: &Path) -> Error {
    if let csv::ErrorKind::Io(_) = e.kind() {
        if let csv::ErrorKind::Io(io) = e.into_kind() {
            return Error::Io {
                path: path.to_path_buf(),
                source: io,
            };
        }
        unreachable!()
    } else {
        Error::Csv(e)
    }
}

fn map_csv_error(e: csv::Error) -> Error {
    if let csv::ErrorKind::UnequalLengths { pos, expected_len, len } = e.kind() {
        // the header is record 0, so record() is the 1-based data row
        Error::RaggedRow {
            row: pos.as_ref().map(|p| p.record() as usize).unwrap_or(0),
            expected: *expected_len as usize,
            found: *len as usize,
        }
    } else {
        Error::Csv(e)
    }
}

/// Expands every categorical column into one indicator column per distinct
/// value (named `<feature>_<value>`, values in sorted order); numeric
/// columns pass through unchanged.
pub fn one_hot_encode(d: &Dataset) -> EncodedDataset {
    let n = d.n_samples();
    let mut feature_names = Vec::new();
    let mut origin_map = Vec::new();
    let mut cols: Vec<Vec<f64>> = Vec::new();

    for (raw_idx, (name, column)) in d.feature_names.iter().zip(&d.columns).enumerate() {
        match column {
            Column::Numeric(values) => {
                feature_names.push(name.clone());
                origin_map.push(raw_idx);
                cols.push(values.clone());
            }
            Column::Categorical(values) => {
                let distinct: BTreeSet<&String> = values.iter().collect();
                for value in distinct {
                    feature_names.push(format!("{name}_{value}"));
                    origin_map.push(raw_idx);
                    cols.push(
                        values
                            .iter()
                            .map(|v| if v == value { 1.0 } else { 0.0 })
                            .collect(),
                    );
                }
            }
        }
    }

    let mut matrix = Array2::zeros((n, cols.len()));
    for (j, col) in cols.iter().enumerate() {
        for (i, &v) in col.iter().enumerate() {
            matrix[[i, j]] = v;
        }
    }

    EncodedDataset {
        feature_names,
        matrix,
        target: d.target.clone(),
        target_name: d.target_name.clone(),
        origin_map,
    }
}

/// Per-column mean and population (divisor-n) standard deviation.
///
/// Fitting on a row subset and applying to the full matrix keeps test
/// splits free of training-statistics leakage.
#[derive(Debug, Clone)]
pub struct ColumnStats {
    pub means: Vec<f64>,
    pub stds: Vec<f64>,
}

impl ColumnStats {
    pub fn fit(matrix: &Array2<f64>) -> Self {
        let rows: Vec<usize> = (0..matrix.nrows()).collect();
        Self::fit_rows(matrix, &rows)
    }

    pub fn fit_rows(matrix: &Array2<f64>, rows: &[usize]) -> Self {
        let n = rows.len().max(1) as f64;
        let mut means = Vec::with_capacity(matrix.ncols());
        let mut stds = Vec::with_capacity(matrix.ncols());
        for j in 0..matrix.ncols() {
            let mean = rows.iter().map(|&i| matrix[[i, j]]).sum::<f64>() / n;
            let var = rows
                .iter()
                .map(|&i| {
                    let d = matrix[[i, j]] - mean;
                    d * d
                })
                .sum::<f64>()
                / n;
            means.push(mean);
            stds.push(var.sqrt());
        }
        ColumnStats { means, stds }
    }

    /// Centers and scales every column; zero-variance columns map to 0.
    pub fn apply(&self, matrix: &Array2<f64>) -> Array2<f64> {
        let mut out = matrix.clone();
        for j in 0..out.ncols() {
            let (m, s) = (self.means[j], self.stds[j]);
            for i in 0..out.nrows() {
                out[[i, j]] = if s > 0.0 { (out[[i, j]] - m) / s } else { 0.0 };
            }
        }
        out
    }
}

/// Standardizes every column to mean 0 and (population) standard deviation
/// 1; constant columns become all-zero.
pub fn standardize(e: &EncodedDataset) -> EncodedDataset {
    let stats = ColumnStats::fit(&e.matrix);
    EncodedDataset {
        feature_names: e.feature_names.clone(),
        matrix: stats.apply(&e.matrix),
        target: e.target.clone(),
        target_name: e.target_name.clone(),
        origin_map: e.origin_map.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_csv(contents: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(contents.as_bytes()).unwrap();
        f
    }

    const EXCERPT: &str = "\
CR,year,hours,location,price
0,2011,8973,FI,44900
1,2016,4183,PL,49040
1,2017,4655,PL,57943
1,2015,3175,GB,45335
";

    #[test]
    fn load_excerpt_csv() {
        let f = write_csv(EXCERPT);
        let d = load_csv(f.path(), "price", None).unwrap();
        assert_eq!(d.n_features(), 4);
        assert_eq!(d.n_samples(), 4);
        assert_eq!(d.target, vec![44900.0, 49040.0, 57943.0, 45335.0]);
        assert!(matches!(d.columns[0], Column::Numeric(_)));
        assert!(matches!(d.columns[3], Column::Categorical(_)));
    }

    #[test]
    fn load_target_only_csv() {
        let f = write_csv("y\n1.0\n2.0\n");
        let d = load_csv(f.path(), "y", None).unwrap();
        assert_eq!(d.n_features(), 0);
        assert_eq!(d.n_samples(), 2);
    }

    #[test]
    fn bad_numeric_cell_is_named() {
        let f = write_csv("x,y\n1.0,2.0\nabc,3.0\n");
        let mut schema = BTreeMap::new();
        schema.insert("x".to_string(), ColumnKind::Numeric);
        let err = load_csv(f.path(), "y", Some(&schema)).unwrap_err();
        match err {
            Error::BadNumericCell { row, column, value } => {
                assert_eq!(row, 2);
                assert_eq!(column, "x");
                assert_eq!(value, "abc");
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn missing_target_is_reported() {
        let f = write_csv("x\n1\n");
        let err = load_csv(f.path(), "price", None).unwrap_err();
        assert!(matches!(err, Error::MissingTarget(name) if name == "price"));
    }

    #[test]
    fn ragged_row_is_reported() {
        let f = write_csv("x,y\n1,2\n3\n");
        let err = load_csv(f.path(), "y", None).unwrap_err();
        assert!(matches!(err, Error::RaggedRow { row: 2, .. }));
    }

    #[test]
    fn one_hot_expands_categories() {
        let f = write_csv(EXCERPT);
        let d = load_csv(f.path(), "price", None).unwrap();
        let e = one_hot_encode(&d);
        // 3 numeric + 3 distinct locations
        assert_eq!(e.n_features(), 6);
        assert_eq!(
            e.feature_names[3..],
            ["location_FI", "location_GB", "location_PL"]
        );
        // every one-hot group sums to 1 per row
        for i in 0..e.n_samples() {
            let s: f64 = (3..6).map(|j| e.matrix[[i, j]]).sum();
            assert_eq!(s, 1.0);
        }
        assert_eq!(e.origin_map, vec![0, 1, 2, 3, 3, 3]);
    }

    #[test]
    fn one_hot_counts_match_catalog_schemas() {
        // 5 raw features, one categorical with 23 values -> 27 encoded
        let n = 23;
        let mut names: Vec<String> = (0..4).map(|i| format!("num{i}")).collect();
        names.push("location".into());
        let mut columns: Vec<Column> = (0..4)
            .map(|i| Column::Numeric((0..n).map(|s| (s + i) as f64).collect()))
            .collect();
        columns.push(Column::Categorical(
            (0..n).map(|s| format!("L{s:02}")).collect(),
        ));
        let d = Dataset::new(names, columns, vec![1.0; n], "price".into()).unwrap();
        assert_eq!(one_hot_encode(&d).n_features(), 27);
    }

    #[test]
    fn one_hot_identity_without_categories() {
        let d = Dataset::new(
            vec!["a".into(), "b".into()],
            vec![
                Column::Numeric(vec![1.0, 2.0]),
                Column::Numeric(vec![3.0, 4.0]),
            ],
            vec![0.0, 1.0],
            "y".into(),
        )
        .unwrap();
        let e = one_hot_encode(&d);
        assert_eq!(e.matrix, ndarray::arr2(&[[1.0, 3.0], [2.0, 4.0]]));
    }

    #[test]
    fn one_hot_argmax_recovers_category() {
        let d = Dataset::new(
            vec!["c".into()],
            vec![Column::Categorical(
                ["b", "a", "c", "a"].iter().map(|s| s.to_string()).collect(),
            )],
            vec![0.0; 4],
            "y".into(),
        )
        .unwrap();
        let e = one_hot_encode(&d);
        let Column::Categorical(raw) = &d.columns[0] else {
            unreachable!()
        };
        for i in 0..4 {
            let j = (0..3).max_by(|&a, &b| e.matrix[[i, a]].total_cmp(&e.matrix[[i, b]])).unwrap();
            let name = &e.feature_names[j];
            assert_eq!(name, &format!("c_{}", raw[i]));
        }
    }

    #[test]
    fn standardize_hand_values() {
        let d = Dataset::new(
            vec!["x".into()],
            vec![Column::Numeric(vec![1.0, 2.0, 3.0])],
            vec![0.0; 3],
            "y".into(),
        )
        .unwrap();
        let z = standardize(&one_hot_encode(&d));
        let expect = 1.224744871391589; // 1 / sqrt(2/3)
        assert!((z.matrix[[0, 0]] + expect).abs() < 1e-12);
        assert!(z.matrix[[1, 0]].abs() < 1e-12);
        assert!((z.matrix[[2, 0]] - expect).abs() < 1e-12);
    }

    #[test]
    fn standardize_constant_column_is_zero() {
        let d = Dataset::new(
            vec!["x".into()],
            vec![Column::Numeric(vec![5.0, 5.0, 5.0])],
            vec![0.0; 3],
            "y".into(),
        )
        .unwrap();
        let z = standardize(&one_hot_encode(&d));
        assert!(z.matrix.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn standardize_is_idempotent() {
        let d = Dataset::new(
            vec!["x".into(), "c".into()],
            vec![
                Column::Numeric(vec![3.0, -1.0, 4.0, 1.5, -0.5]),
                Column::Numeric(vec![7.0; 5]),
            ],
            vec![0.0; 5],
            "y".into(),
        )
        .unwrap();
        let once = standardize(&one_hot_encode(&d));
        let twice = standardize(&once);
        for (a, b) in once.matrix.iter().zip(twice.matrix.iter()) {
            assert!((a - b).abs() < 1e-12);
            assert!(b.is_finite());
        }
    }

    #[test]
    fn dataset_invariants_enforced() {
        assert!(Dataset::new(vec![], vec![], vec![], "y".into()).is_err());
        assert!(Dataset::new(
            vec!["a".into(), "a".into()],
            vec![
                Column::Numeric(vec![1.0]),
                Column::Numeric(vec![1.0]),
            ],
            vec![0.0],
            "y".into()
        )
        .is_err());
        assert!(Dataset::new(
            vec!["a".into()],
            vec![Column::Numeric(vec![1.0, 2.0])],
            vec![0.0],
            "y".into()
        )
        .is_err());
    }
}
