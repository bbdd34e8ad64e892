//! Cyclic Jacobi eigensolver for small symmetric matrices.

use ndarray::Array2;

const MAX_SWEEPS: usize = 100;

/// Eigenvalues of a symmetric matrix via cyclic Jacobi rotations.
///
/// Sweeps until the off-diagonal Frobenius norm drops below `rel_tol`
/// times the matrix Frobenius norm. Returned unsorted.
pub fn symmetric_eigenvalues(matrix: &Array2<f64>, rel_tol: f64) -> Vec<f64> {
    let n = matrix.nrows();
    assert_eq!(n, matrix.ncols(), "matrix must be square");
    let mut a = matrix.clone();
    let scale = frobenius(&a).max(f64::MIN_POSITIVE);

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= rel_tol * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, p, q);
            }
        }
    }
    (0..n).map(|i| a[[i, i]]).collect()
}

fn rotate(a: &mut Array2<f64>, p: usize, q: usize) {
    let apq = a[[p, q]];
    if apq == 0.0 {
        return;
    }
    let theta = (a[[q, q]] - a[[p, p]]) / (2.0 * apq);
    let t = if theta.abs() > 1e12 {
        1.0 / (2.0 * theta)
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let tau = s / (1.0 + c);

    let n = a.nrows();
    a[[p, p]] -= t * apq;
    a[[q, q]] += t * apq;
    a[[p, q]] = 0.0;
    a[[q, p]] = 0.0;
    for r in 0..n {
        if r == p || r == q {
            continue;
        }
        let arp = a[[r, p]];
        let arq = a[[r, q]];
        a[[r, p]] = arp - s * (arq + tau * arp);
        a[[p, r]] = a[[r, p]];
        a[[r, q]] = arq + s * (arp - tau * arq);
        a[[q, r]] = a[[r, q]];
    }
}

fn frobenius(a: &Array2<f64>) -> f64 {
    a.iter().map(|v| v * v).sum::<f64>().sqrt()
}

fn off_diagonal_norm(a: &Array2<f64>) -> f64 {
    let n = a.nrows();
    let mut s = 0.0;
    for p in 0..n {
        for q in (p + 1)..n {
            s += 2.0 * a[[p, q]] * a[[p, q]];
        }
    }
    s.sqrt()
}
