//! Integer binning of encoded columns, the substrate for empirical
//! probability estimation.

use crate::data::EncodedDataset;
use crate::error::{Error, Result};

/// Integer-coded view of an [`EncodedDataset`].
///
/// Codes are column-major: `codes[feature][sample]`. Every code `c` for
/// feature `j` satisfies `0 <= c < bin_counts[j]`, with no empty codes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscretizedTable {
    pub codes: Vec<Vec<u32>>,
    pub bin_counts: Vec<usize>,
    pub target_codes: Vec<u32>,
    pub target_bin_count: usize,
    pub feature_names: Vec<String>,
}

impl DiscretizedTable {
    /// Wraps pre-binned codes; bin counts are taken as `max code + 1`.
    pub fn from_codes(codes: Vec<Vec<u32>>, target_codes: Vec<u32>) -> Self {
        let bin_counts = codes
            .iter()
            .map(|c| c.iter().max().map_or(1, |&m| m as usize + 1))
            .collect();
        let target_bin_count = target_codes.iter().max().map_or(1, |&m| m as usize + 1);
        let feature_names = (0..codes.len()).map(|i| format!("f{i}")).collect();
        DiscretizedTable {
            codes,
            bin_counts,
            target_codes,
            target_bin_count,
            feature_names,
        }
    }

    pub fn n_samples(&self) -> usize {
        self.target_codes.len()
    }

    pub fn n_features(&self) -> usize {
        self.codes.len()
    }
}

/// Bins every column (and the target) into at most `bins` integer codes.
///
/// Columns with more than `bins` distinct values get equal-width bins over
/// `[min, max]` with a right-closed top edge (each interior edge belongs to
/// the bin below it); columns with at most `bins` distinct values keep one
/// code per value in rank order, so one-hot indicators are never merged.
/// Empty bins are compacted away.
pub fn discretize(e: &EncodedDataset, bins: usize) -> Result<DiscretizedTable> {
    if bins < 2 {
        return Err(Error::BadBinCount(bins));
    }
    let mut codes = Vec::with_capacity(e.n_features());
    let mut bin_counts = Vec::with_capacity(e.n_features());
    for j in 0..e.n_features() {
        let column: Vec<f64> = e.matrix.column(j).to_vec();
        let (c, k) = discretize_column(&column, bins)?;
        codes.push(c);
        bin_counts.push(k);
    }
    let (target_codes, target_bin_count) = discretize_column(&e.target, bins)?;
    Ok(DiscretizedTable {
        codes,
        bin_counts,
        target_codes,
        target_bin_count,
        feature_names: e.feature_names.clone(),
    })
}

fn discretize_column(values: &[f64], bins: usize) -> Result<(Vec<u32>, usize)> {
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("column passed to discretize"));
    }
    let mut distinct = values.to_vec();
    distinct.sort_by(f64::total_cmp);
    distinct.dedup();

    if distinct.len() == 1 {
        return Ok((vec![0; values.len()], 1));
    }

    if distinct.len() <= bins {
        // one code per distinct value, in rank order
        let codes = values
            .iter()
            .map(|v| distinct.partition_point(|d| d < v) as u32)
            .collect();
        return Ok((codes, distinct.len()));
    }

    let min = distinct[0];
    let max = *distinct.last().unwrap();
    let width = (max - min) / bins as f64;
    let raw: Vec<u32> = values
        .iter()
        .map(|&v| {
            let c = ((v - min) / width).ceil() - 1.0;
            (c.max(0.0) as usize).min(bins - 1) as u32
        })
        .collect();

    // compact empty bins so codes stay dense
    let mut used: Vec<u32> = raw.clone();
    used.sort_unstable();
    used.dedup();
    let codes = raw
        .iter()
        .map(|c| used.binary_search(c).unwrap() as u32)
        .collect();
    Ok((codes, used.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::{one_hot_encode, Column, Dataset};
    use proptest::prelude::*;

    fn encoded(columns: Vec<Vec<f64>>, target: Vec<f64>) -> EncodedDataset {
        let names = (0..columns.len()).map(|i| format!("x{i}")).collect();
        let cols = columns.into_iter().map(Column::Numeric).collect();
        let d = Dataset::new(names, cols, target, "y".into()).unwrap();
        one_hot_encode(&d)
    }

    #[test]
    fn binary_indicator_keeps_two_codes() {
        let e = encoded(vec![vec![0.0, 1.0, 0.0, 1.0]], vec![0.0, 1.0, 2.0, 3.0]);
        let t = discretize(&e, 10).unwrap();
        assert_eq!(t.bin_counts[0], 2);
        assert_eq!(t.codes[0], vec![0, 1, 0, 1]);
    }

    #[test]
    fn right_closed_top_edge() {
        let e = encoded(vec![vec![0.0, 0.5, 1.0]], vec![0.0, 1.0, 2.0]);
        let t = discretize(&e, 2).unwrap();
        assert_eq!(t.codes[0], vec![0, 0, 1]);
        assert_eq!(t.bin_counts[0], 2);
    }

    #[test]
    fn constant_column_has_one_bin() {
        let e = encoded(vec![vec![4.0, 4.0, 4.0]], vec![0.0, 1.0, 2.0]);
        let t = discretize(&e, 5).unwrap();
        assert_eq!(t.codes[0], vec![0, 0, 0]);
        assert_eq!(t.bin_counts[0], 1);
    }

    #[test]
    fn bins_below_two_rejected() {
        let e = encoded(vec![vec![1.0, 2.0]], vec![0.0, 1.0]);
        assert!(matches!(discretize(&e, 1), Err(Error::BadBinCount(1))));
    }

    proptest! {
        #[test]
        fn codes_are_monotone_and_in_range(
            values in proptest::collection::vec(-1e3..1e3f64, 2..60),
            bins in 2usize..12,
        ) {
            let (codes, count) = discretize_column(&values, bins).unwrap();
            for (i, &c) in codes.iter().enumerate() {
                prop_assert!((c as usize) < count);
                for (k, &c2) in codes.iter().enumerate() {
                    if values[i] <= values[k] {
                        prop_assert!(c <= c2);
                    }
                }
            }
        }
    }
}
