//! Cyclic Jacobi diagonalization of dense real symmetric matrices.
//!
//! Each rotation annihilates one off-diagonal entry; sweeps repeat over all
//! pairs until the off-diagonal Frobenius norm is negligible relative to the
//! whole matrix. Slow compared to tridiagonal QR for large orders, but every
//! matrix here has order at most a few dozen and the full spectrum plus
//! orthonormal eigenvectors come out to near machine precision.

use super::{SpectralError, SymmetricMatrix};

const MAX_SWEEPS: usize = 100;

/// Full eigendecomposition, eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: Vec<f64>,
    /// Column-major: column `k` is the unit eigenvector for `values[k]`.
    vectors: Vec<f64>,
    order: usize,
}

impl Eigen {
    pub fn vector(&self, k: usize) -> &[f64] {
        &self.vectors[k * self.order..(k + 1) * self.order]
    }

    pub fn largest(&self) -> (f64, &[f64]) {
        let k = self.order - 1;
        (self.values[k], self.vector(k))
    }
}

pub fn symmetric_eigen(m: &SymmetricMatrix) -> Result<Eigen, SpectralError> {
    let n = m.order();
    if n == 0 {
        return Err(SpectralError::Empty);
    }
    // row-major working copy; v is column-major accumulation of rotations
    let mut a = m.entries().to_vec();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let frob: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let target = f64::EPSILON * frob.max(f64::MIN_POSITIVE);

    let mut converged = n == 1;
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i * n + j] * a[i * n + j])
            .sum::<f64>()
            .sqrt();
        if off <= target {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq.abs() <= f64::MIN_POSITIVE {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                rotate(&mut a, n, p, q, c, s);
                for k in 0..n {
                    let vkp = v[p * n + k];
                    let vkq = v[q * n + k];
                    v[p * n + k] = c * vkp - s * vkq;
                    v[q * n + k] = s * vkp + c * vkq;
                }
            }
        }
    }
    if !converged {
        return Err(SpectralError::NoConvergence { sweeps: MAX_SWEEPS });
    }

    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&i, &j| a[i * n + i].total_cmp(&a[j * n + j]));
    let values = idx.iter().map(|&i| a[i * n + i]).collect();
    let mut vectors = Vec::with_capacity(n * n);
    for &i in &idx {
        vectors.extend_from_slice(&v[i * n..(i + 1) * n]);
    }
    Ok(Eigen { values, vectors, order: n })
}

/// A <- Jᵀ A J for the plane rotation in (p, q).
fn rotate(a: &mut [f64], n: usize, p: usize, q: usize, c: f64, s: f64) {
    for k in 0..n {
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        a[k * n + p] = c * akp - s * akq;
        a[k * n + q] = s * akp + c * akq;
    }
    for k in 0..n {
        let apk = a[p * n + k];
        let aqk = a[q * n + k];
        a[p * n + k] = c * apk - s * aqk;
        a[q * n + k] = s * apk + c * aqk;
    }
    // exact symmetry after the update
    a[p * n + q] = 0.0;
    a[q * n + p] = 0.0;
}
