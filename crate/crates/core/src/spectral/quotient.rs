//! Partitions, quotient matrices, and Perron roots of small nonnegative matrices.

use serde::Serialize;

use super::{symmetric_eigen, SpectralError, SymmetricMatrix};

/// Ordered partition of `0..order` into nonempty disjoint classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Partition {
    classes: Vec<Vec<usize>>,
    order: usize,
}

impl Partition {
    pub fn new(classes: Vec<Vec<usize>>, order: usize) -> Result<Self, SpectralError> {
        let mut seen = vec![false; order];
        for (k, class) in classes.iter().enumerate() {
            if class.is_empty() {
                return Err(SpectralError::InvalidPartition(format!("class {k} is empty")));
            }
            for &v in class {
                if v >= order {
                    return Err(SpectralError::InvalidPartition(format!(
                        "index {v} out of range for order {order}"
                    )));
                }
                if std::mem::replace(&mut seen[v], true) {
                    return Err(SpectralError::InvalidPartition(format!("index {v} appears twice")));
                }
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(SpectralError::InvalidPartition(format!("index {v} not covered")));
        }
        Ok(Partition { classes, order })
    }

    /// Consecutive blocks of the given sizes, in order. Zero sizes are rejected.
    pub fn from_sizes(sizes: &[usize]) -> Result<Self, SpectralError> {
        let mut classes = Vec::with_capacity(sizes.len());
        let mut start = 0;
        for &size in sizes {
            classes.push((start..start + size).collect());
            start += size;
        }
        Partition::new(classes, start)
    }

    pub fn singletons(order: usize) -> Self {
        Partition { classes: (0..order).map(|v| vec![v]).collect(), order }
    }

    pub fn whole(order: usize) -> Self {
        Partition { classes: vec![(0..order).collect()], order }
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }
}

/// Matrix of average block row sums, `entries[i][j] = sum(M_ij) / |class i|`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuotientMatrix {
    order: usize,
    entries: Vec<f64>,
    class_sizes: Vec<usize>,
}

impl QuotientMatrix {
    /// `rows` is row-major `order × order`.
    pub fn new(rows: Vec<Vec<f64>>, class_sizes: Vec<usize>) -> Result<Self, SpectralError> {
        let order = rows.len();
        if class_sizes.len() != order || rows.iter().any(|r| r.len() != order) {
            return Err(SpectralError::BadShape {
                expected: order * order,
                got: rows.iter().map(Vec::len).sum(),
            });
        }
        Ok(QuotientMatrix { order, entries: rows.into_iter().flatten().collect(), class_sizes })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.order + j]
    }

    pub fn class_sizes(&self) -> &[usize] {
        &self.class_sizes
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.entries.chunks(self.order.max(1)).map(<[f64]>::to_vec).take(self.order).collect()
    }

    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.order).map(|i| (0..self.order).map(|j| self.get(i, j)).sum()).collect()
    }

    pub fn check_nonnegative(&self) -> Result<(), SpectralError> {
        for i in 0..self.order {
            for j in 0..self.order {
                if self.get(i, j) < 0.0 {
                    return Err(SpectralError::Negative(i, j));
                }
            }
        }
        Ok(())
    }

    /// Strong connectivity of the digraph with an arc i→j for every positive entry.
    pub fn is_irreducible(&self) -> bool {
        let n = self.order;
        if n == 0 {
            return false;
        }
        let reach = |forward: bool| {
            let mut seen = vec![false; n];
            let mut stack = vec![0];
            seen[0] = true;
            while let Some(u) = stack.pop() {
                for (v, mark) in seen.iter_mut().enumerate() {
                    let w = if forward { self.get(u, v) } else { self.get(v, u) };
                    if w > 0.0 && !*mark {
                        *mark = true;
                        stack.push(v);
                    }
                }
            }
            seen.into_iter().all(|s| s)
        };
        reach(true) && reach(false)
    }

    /// det(xI − B) by Gaussian elimination with partial pivoting.
    pub fn char_poly_at(&self, x: f64) -> f64 {
        let n = self.order;
        let mut m: Vec<f64> = (0..n * n)
            .map(|k| {
                let (i, j) = (k / n, k % n);
                (if i == j { x } else { 0.0 }) - self.entries[k]
            })
            .collect();
        let mut det = 1.0;
        for col in 0..n {
            let piv = (col..n)
                .max_by(|&a, &b| m[a * n + col].abs().total_cmp(&m[b * n + col].abs()))
                .expect("nonempty range");
            if m[piv * n + col] == 0.0 {
                return 0.0;
            }
            if piv != col {
                for k in 0..n {
                    m.swap(piv * n + k, col * n + k);
                }
                det = -det;
            }
            let p = m[col * n + col];
            det *= p;
            for r in col + 1..n {
                let f = m[r * n + col] / p;
                if f != 0.0 {
                    for k in col..n {
                        m[r * n + k] -= f * m[col * n + k];
                    }
                }
            }
        }
        det
    }

    /// True iff x exceeds the spectral radius of this nonnegative matrix.
    ///
    /// xI − B is a Z-matrix, and for x > ρ(B) it is a nonsingular M-matrix,
    /// which holds exactly when all leading principal minors are positive. The
    /// last of those minors is the characteristic polynomial det(xI − B), so
    /// this is a sign test on it hardened against other real roots in the bracket.
    fn exceeds_spectral_radius(&self, x: f64) -> bool {
        let n = self.order;
        let mut m: Vec<f64> =
            (0..n * n).map(|k| (if k / n == k % n { x } else { 0.0 }) - self.entries[k]).collect();
        for col in 0..n {
            let p = m[col * n + col];
            if p <= 0.0 {
                return false;
            }
            for r in col + 1..n {
                let f = m[r * n + col] / p;
                for k in col..n {
                    m[r * n + k] -= f * m[col * n + k];
                }
            }
        }
        true
    }

    /// Similar symmetric matrix D^{1/2} B D^{-1/2}, D = diag(class sizes).
    ///
    /// Exists whenever B is the quotient of a symmetric matrix under a
    /// partition, since |C_i|·B_ij and |C_j|·B_ji are both the block sum.
    pub fn symmetrized(&self, tol: f64) -> Result<SymmetricMatrix, SpectralError> {
        let n = self.order;
        let sizes: Vec<f64> = self.class_sizes.iter().map(|&s| s as f64).collect();
        let mut entries = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                let lhs = sizes[i] * self.get(i, j);
                let rhs = sizes[j] * self.get(j, i);
                if (lhs - rhs).abs() > tol * lhs.abs().max(rhs.abs()).max(1.0) {
                    return Err(SpectralError::NotSymmetrizable);
                }
                entries[i * n + j] = (sizes[i] / sizes[j]).sqrt() * self.get(i, j);
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                let avg = 0.5 * (entries[i * n + j] + entries[j * n + i]);
                entries[i * n + j] = avg;
                entries[j * n + i] = avg;
            }
        }
        SymmetricMatrix::new(n, entries)
    }

    /// All eigenvalues, ascending. Requires a symmetrizable quotient.
    pub fn eigenvalues(&self) -> Result<Vec<f64>, SpectralError> {
        symmetric_eigen(&self.symmetrized(1e-12)?).map(|e| e.values)
    }
}

/// M_π for a partition of the index set of `m`.
pub fn quotient_matrix(m: &SymmetricMatrix, p: &Partition) -> Result<QuotientMatrix, SpectralError> {
    if p.order() != m.order() {
        return Err(SpectralError::PartitionMismatch { partition: p.order(), matrix: m.order() });
    }
    let r = p.len();
    let mut rows = vec![vec![0.0; r]; r];
    for (i, ci) in p.classes().iter().enumerate() {
        for (j, cj) in p.classes().iter().enumerate() {
            let total: f64 =
                ci.iter().flat_map(|&u| cj.iter().map(move |&v| (u, v))).map(|(u, v)| m.get(u, v)).sum();
            rows[i][j] = total / ci.len() as f64;
        }
    }
    QuotientMatrix::new(rows, p.class_sizes())
}

/// Whether every block of `m` has row sums within `tol` of the block's average
/// row sum. A partition that does not match the matrix order is not equitable.
pub fn is_equitable(m: &SymmetricMatrix, p: &Partition, tol: f64) -> bool {
    if p.order() != m.order() {
        return false;
    }
    p.classes().iter().all(|ci| {
        p.classes().iter().all(|cj| {
            let sums: Vec<f64> = ci.iter().map(|&u| cj.iter().map(|&v| m.get(u, v)).sum()).collect();
            let avg = sums.iter().sum::<f64>() / sums.len() as f64;
            sums.iter().all(|s| (s - avg).abs() <= tol)
        })
    })
}

/// Spectral radius of a nonnegative irreducible matrix, by bisection on
/// [min row sum, max row sum] to absolute precision `tol`.
pub fn perron_root(qm: &QuotientMatrix, tol: f64) -> Result<f64, SpectralError> {
    if qm.order() == 0 {
        return Err(SpectralError::Empty);
    }
    qm.check_nonnegative()?;
    if !qm.is_irreducible() {
        return Err(SpectralError::Reducible);
    }
    let sums = qm.row_sums();
    let mut lo = sums.iter().copied().fold(f64::INFINITY, f64::min);
    let mut hi = sums.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if lo == hi {
        return Ok(lo);
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if qm.exceeds_spectral_radius(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
