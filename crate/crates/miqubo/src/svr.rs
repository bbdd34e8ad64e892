//! Epsilon-insensitive support vector regression trained on the dual
//! problem by pairwise coordinate descent.
//!
//! The solver works on the net coefficients β_i = α*_i − α_i ∈ [−C, C]
//! with Σβ = 0. Each step picks the maximally KKT-violating pair of
//! coordinates and minimizes the (piecewise quadratic) dual restricted
//! to that pair exactly, so the dual objective never increases. The
//! approximator is f(x) = Σ β_i K(x_i, x) + b.

use ndarray::Array2;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on pair updates during training.
pub const DEFAULT_MAX_PAIR_UPDATES: usize = 100_000;

/// Kernel selection.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum KernelParams {
    Rbf { gamma: f64 },
    Linear,
}

impl KernelParams {
    pub fn validate(&self) -> Result<()> {
        if let KernelParams::Rbf { gamma } = self {
            if !(*gamma > 0.0) {
                return Err(Error::Config(format!("rbf gamma must be positive, got {gamma}")));
            }
        }
        Ok(())
    }

    fn apply(&self, x: &[f64], y: &[f64]) -> f64 {
        match self {
            KernelParams::Rbf { gamma } => {
                let dist2: f64 = x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum();
                (-gamma * dist2).exp()
            }
            KernelParams::Linear => x.iter().zip(y).map(|(a, b)| a * b).sum(),
        }
    }
}

/// Kernel matrix K[i][j] = K(x_i, z_j); symmetric PSD when X = Z.
pub fn kernel_matrix(x: &Array2<f64>, z: &Array2<f64>, params: &KernelParams) -> Result<Array2<f64>> {
    params.validate()?;
    if x.ncols() != z.ncols() {
        return Err(Error::DimensionMismatch(format!(
            "kernel inputs have {} and {} columns",
            x.ncols(),
            z.ncols()
        )));
    }
    let mut k = Array2::zeros((x.nrows(), z.nrows()));
    for i in 0..x.nrows() {
        let xi = x.row(i);
        for j in 0..z.nrows() {
            k[[i, j]] = params.apply(xi.as_slice().unwrap(), z.row(j).as_slice().unwrap());
        }
    }
    Ok(k)
}

/// Convergence diagnostics from training.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct TrainingInfo {
    pub pair_updates: usize,
    pub final_violation: f64,
    /// Dual objective after every pair update; non-increasing.
    #[serde(skip)]
    pub objective_trace: Vec<f64>,
}

/// A trained model: support inputs, net dual coefficients (α*_i − α_i),
/// and the bias.
#[derive(Debug, Clone)]
pub struct SvrModel {
    pub support_inputs: Array2<f64>,
    pub dual_coefs: Vec<f64>,
    pub bias: f64,
    pub params: KernelParams,
    pub c: f64,
    pub epsilon: f64,
    pub info: TrainingInfo,
}

#[derive(Serialize, Deserialize)]
struct SvrModelFile {
    support_inputs: Vec<Vec<f64>>,
    dual_coefs: Vec<f64>,
    bias: f64,
    params: KernelParams,
    c: f64,
    epsilon: f64,
    info: TrainingInfo,
}

impl SvrModel {
    pub fn to_json(&self) -> Result<String> {
        let file = SvrModelFile {
            support_inputs: self
                .support_inputs
                .rows()
                .into_iter()
                .map(|r| r.to_vec())
                .collect(),
            dual_coefs: self.dual_coefs.clone(),
            bias: self.bias,
            params: self.params,
            c: self.c,
            epsilon: self.epsilon,
            info: self.info.clone(),
        };
        Ok(serde_json::to_string_pretty(&file)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: SvrModelFile = serde_json::from_str(text)?;
        let rows = file.support_inputs.len();
        let cols = file.support_inputs.first().map_or(0, |r| r.len());
        let mut support_inputs = Array2::zeros((rows, cols));
        for (i, row) in file.support_inputs.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Config("ragged support_inputs in model json".into()));
            }
            for (j, &v) in row.iter().enumerate() {
                support_inputs[[i, j]] = v;
            }
        }
        Ok(SvrModel {
            support_inputs,
            dual_coefs: file.dual_coefs,
            bias: file.bias,
            params: file.params,
            c: file.c,
            epsilon: file.epsilon,
            info: file.info,
        })
    }
}

/// Trains an ε-SVR by solving the dual to KKT violation below `tol`.
pub fn train(
    x: &Array2<f64>,
    z: &[f64],
    c: f64,
    epsilon: f64,
    params: &KernelParams,
    tol: f64,
) -> Result<SvrModel> {
    params.validate()?;
    let l = x.nrows();
    if z.len() != l {
        return Err(Error::DimensionMismatch(format!(
            "{l} rows with {} targets",
            z.len()
        )));
    }
    if l < 2 {
        return Err(Error::Config("svr needs at least 2 samples".into()));
    }
    if !(c > 0.0) {
        return Err(Error::Config(format!("svr C must be positive, got {c}")));
    }
    if epsilon < 0.0 {
        return Err(Error::Config(format!(
            "svr epsilon must be non-negative, got {epsilon}"
        )));
    }

    let gram = kernel_matrix(x, x, params)?;
    let mut beta = vec![0.0f64; l];
    // gradient of the smooth part: (K beta)_i - z_i
    let mut grad: Vec<f64> = z.iter().map(|&zi| -zi).collect();
    let mut objective = 0.0f64;
    let mut trace = Vec::new();
    let mut updates = 0usize;

    // directional derivatives across the |beta| kink
    let up = |beta_i: f64, g_i: f64| {
        if beta_i >= 0.0 {
            g_i + epsilon
        } else {
            g_i - epsilon
        }
    };
    let down = |beta_i: f64, g_i: f64| {
        if beta_i > 0.0 {
            g_i + epsilon
        } else {
            g_i - epsilon
        }
    };

    let violation = loop {
        // maximal violating pair: i can move up, j can move down
        let mut min_up = f64::INFINITY;
        let mut max_down = f64::NEG_INFINITY;
        let mut i_up = usize::MAX;
        let mut j_down = usize::MAX;
        for p in 0..l {
            if beta[p] < c {
                let d = up(beta[p], grad[p]);
                if d < min_up {
                    min_up = d;
                    i_up = p;
                }
            }
            if beta[p] > -c {
                let d = down(beta[p], grad[p]);
                if d > max_down {
                    max_down = d;
                    j_down = p;
                }
            }
        }
        let violation = max_down - min_up;
        if violation < tol {
            break violation;
        }
        if updates >= DEFAULT_MAX_PAIR_UPDATES {
            return Err(Error::SvrNonConvergence {
                iterations: updates,
                violation,
            });
        }
        let (i, j) = (i_up, j_down);

        // exact minimization of the piecewise quadratic along
        // beta_i += t, beta_j -= t for t in [0, hi]
        let hi = (c - beta[i]).min(beta[j] + c);
        let eta = gram[[i, i]] + gram[[j, j]] - 2.0 * gram[[i, j]];
        let slope0 = grad[i] - grad[j];
        let delta_obj = |t: f64| -> f64 {
            t * slope0 + 0.5 * eta * t * t
                + epsilon * ((beta[i] + t).abs() - beta[i].abs())
                + epsilon * ((beta[j] - t).abs() - beta[j].abs())
        };

        let mut breaks = vec![0.0, hi];
        let kink_i = -beta[i];
        if kink_i > 0.0 && kink_i < hi {
            breaks.push(kink_i);
        }
        let kink_j = beta[j];
        if kink_j > 0.0 && kink_j < hi {
            breaks.push(kink_j);
        }
        breaks.sort_by(f64::total_cmp);

        let mut best_t = 0.0;
        let mut best_delta = 0.0;
        for w in breaks.windows(2) {
            let (a, b) = (w[0], w[1]);
            for cand in [a, b] {
                let d = delta_obj(cand);
                if d < best_delta {
                    best_delta = d;
                    best_t = cand;
                }
            }
            if eta > 1e-12 {
                let mid = 0.5 * (a + b);
                let s_i = if beta[i] + mid >= 0.0 { 1.0 } else { -1.0 };
                let s_j = if beta[j] - mid > 0.0 { 1.0 } else { -1.0 };
                let t_star = (-(slope0 + epsilon * (s_i - s_j))) / eta;
                if t_star > a && t_star < b {
                    let d = delta_obj(t_star);
                    if d < best_delta {
                        best_delta = d;
                        best_t = t_star;
                    }
                }
            }
        }

        if best_t <= 0.0 || best_delta >= 0.0 {
            // violation > tol guarantees a descent direction; a stall here
            // is a numerical dead end
            return Err(Error::SvrNonConvergence {
                iterations: updates,
                violation,
            });
        }

        beta[i] += best_t;
        beta[j] -= best_t;
        for p in 0..l {
            grad[p] += best_t * (gram[[p, i]] - gram[[p, j]]);
        }
        objective += best_delta;
        trace.push(objective);
        updates += 1;
    };

    // bias from KKT-interior support vectors, falling back to the midpoint
    // of the feasible interval
    let interior_eps = 1e-9 * c.max(1.0);
    let mut interior = Vec::new();
    for p in 0..l {
        if beta[p] > interior_eps && beta[p] < c - interior_eps {
            interior.push(-(grad[p] + epsilon));
        } else if beta[p] < -interior_eps && beta[p] > -c + interior_eps {
            interior.push(-(grad[p] - epsilon));
        }
    }
    let bias = if interior.is_empty() {
        let mut min_up = f64::INFINITY;
        let mut max_down = f64::NEG_INFINITY;
        for p in 0..l {
            if beta[p] < c {
                min_up = min_up.min(up(beta[p], grad[p]));
            }
            if beta[p] > -c {
                max_down = max_down.max(down(beta[p], grad[p]));
            }
        }
        -0.5 * (min_up + max_down)
    } else {
        interior.iter().sum::<f64>() / interior.len() as f64
    };

    // keep only support vectors
    let keep: Vec<usize> = (0..l).filter(|&p| beta[p] != 0.0).collect();
    let mut support_inputs = Array2::zeros((keep.len(), x.ncols()));
    let mut dual_coefs = Vec::with_capacity(keep.len());
    for (row, &p) in keep.iter().enumerate() {
        for col in 0..x.ncols() {
            support_inputs[[row, col]] = x[[p, col]];
        }
        dual_coefs.push(beta[p]);
    }

    Ok(SvrModel {
        support_inputs,
        dual_coefs,
        bias,
        params: *params,
        c,
        epsilon,
        info: TrainingInfo {
            pair_updates: updates,
            final_violation: violation,
            objective_trace: trace,
        },
    })
}

/// Evaluates f(x) = Σ β_i K(x_i, x) + b for every row of `x`.
pub fn predict(model: &SvrModel, x: &Array2<f64>) -> Result<Vec<f64>> {
    if x.ncols() != model.support_inputs.ncols() && model.support_inputs.nrows() > 0 {
        return Err(Error::DimensionMismatch(format!(
            "model expects {} columns, got {}",
            model.support_inputs.ncols(),
            x.ncols()
        )));
    }
    let k = kernel_matrix(x, &model.support_inputs, &model.params)?;
    Ok((0..x.nrows())
        .map(|i| {
            model
                .dual_coefs
                .iter()
                .enumerate()
                .map(|(s, &coef)| coef * k[[i, s]])
                .sum::<f64>()
                + model.bias
        })
        .collect())
}

/// Coefficient of determination R² = 1 − SSE / SST.
pub fn r2_score(z_true: &[f64], z_pred: &[f64]) -> Result<f64> {
    if z_true.len() != z_pred.len() {
        return Err(Error::DimensionMismatch(format!(
            "r2_score lengths {} vs {}",
            z_true.len(),
            z_pred.len()
        )));
    }
    if z_true.len() < 2 {
        return Err(Error::Config("r2_score needs at least 2 values".into()));
    }
    let mean = z_true.iter().sum::<f64>() / z_true.len() as f64;
    let sst: f64 = z_true.iter().map(|&z| (z - mean) * (z - mean)).sum();
    if sst == 0.0 {
        return Err(Error::ConstantTarget);
    }
    let sse: f64 = z_true
        .iter()
        .zip(z_pred)
        .map(|(&t, &p)| (t - p) * (t - p))
        .sum();
    Ok(1.0 - sse / sst)
}
