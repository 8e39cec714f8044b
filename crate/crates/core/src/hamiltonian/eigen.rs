//! Cyclic Jacobi eigenvalue iteration.
//!
//! A complex Hermitian `H = A + iB` is embedded as the real symmetric
//! `[[A, -B], [B, A]]`, whose spectrum is that of `H` with every eigenvalue
//! doubled.

use super::dense::{DenseHermitian, HERMITIAN_TOL};
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;

/// Eigenvalues of a real symmetric `m x m` matrix (row-major), ascending.
///
/// Iterates until the off-diagonal Frobenius norm drops below
/// `1e-12 * max(1, ‖A‖_F)`.
pub fn symmetric_eigenvalues(mut a: Vec<f64>, m: usize) -> Vec<f64> {
    assert_eq!(a.len(), m * m, "matrix is not m x m");
    let frob = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let target = 1e-12 * frob.max(1.0);

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a, m) < target {
            break;
        }
        for p in 0..m {
            for q in p + 1..m {
                let apq = a[p * m + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * m + p];
                let aqq = a[q * m + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                rotate(&mut a, m, p, q, c, s);
            }
        }
    }

    let mut eig: Vec<f64> = (0..m).map(|i| a[i * m + i]).collect();
    eig.sort_by(f64::total_cmp);
    eig
}

fn off_diagonal_norm(a: &[f64], m: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..m {
        for j in 0..m {
            if i != j {
                s += a[i * m + j] * a[i * m + j];
            }
        }
    }
    s.sqrt()
}

/// `A <- Jᵀ A J` for the rotation in the (p, q) plane.
fn rotate(a: &mut [f64], m: usize, p: usize, q: usize, c: f64, s: f64) {
    for k in 0..m {
        let akp = a[k * m + p];
        let akq = a[k * m + q];
        a[k * m + p] = c * akp - s * akq;
        a[k * m + q] = s * akp + c * akq;
    }
    for k in 0..m {
        let apk = a[p * m + k];
        let aqk = a[q * m + k];
        a[p * m + k] = c * apk - s * aqk;
        a[q * m + k] = s * apk + c * aqk;
    }
}

/// All eigenvalues of `h`, ascending.
pub fn hermitian_eigenvalues(h: &DenseHermitian) -> Result<Vec<f64>> {
    let asym = h.max_asymmetry();
    if asym > HERMITIAN_TOL {
        return Err(Error::NotHermitian(asym));
    }
    let n = h.dim();
    if h.is_diagonal() {
        let mut d: Vec<f64> = (0..n).map(|i| h.get(i, i).re).collect();
        d.sort_by(f64::total_cmp);
        return Ok(d);
    }
    let m = 2 * n;
    let mut a = vec![0.0; m * m];
    for i in 0..n {
        for j in 0..n {
            let z = h.get(i, j);
            a[i * m + j] = z.re;
            a[(i + n) * m + (j + n)] = z.re;
            a[i * m + (j + n)] = -z.im;
            a[(i + n) * m + j] = z.im;
        }
    }
    let doubled = symmetric_eigenvalues(a, m);
    Ok(doubled.chunks_exact(2).map(|p| 0.5 * (p[0] + p[1])).collect())
}

/// Smallest eigenvalue of `h`.
pub fn exact_ground_energy(h: &DenseHermitian) -> Result<f64> {
    Ok(hermitian_eigenvalues(h)?[0])
}
