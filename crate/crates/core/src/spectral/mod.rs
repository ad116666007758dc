//! Adjacency and signless Laplacian matrices and their largest eigenvalues.

mod jacobi;
mod quotient;

use serde::ser::{Serialize, SerializeSeq, Serializer};
use thiserror::Error;

use crate::graph::Graph;

pub use jacobi::{symmetric_eigen, Eigen};
pub use quotient::{is_equitable, perron_root, quotient_matrix, Partition, QuotientMatrix};

/// Default eigen-residual tolerance.
pub const DEFAULT_TOL: f64 = 1e-10;
/// Default slack for comparisons between computed spectral quantities.
pub const DEFAULT_MARGIN: f64 = 1e-8;
/// Default absolute precision of Perron-root bisection.
pub const PERRON_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error("matrix of order 0 has no eigenvalues")]
    Empty,
    #[error("entries ({i},{j}) and ({j},{i}) differ")]
    NotSymmetric { i: usize, j: usize },
    #[error("expected {expected} entries, got {got}")]
    BadShape { expected: usize, got: usize },
    #[error("Jacobi iteration did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("eigen residual {residual:e} exceeds bound {bound:e}")]
    ResidualTooLarge { residual: f64, bound: f64 },
    #[error("partition covers {partition} indices but the matrix has order {matrix}")]
    PartitionMismatch { partition: usize, matrix: usize },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("matrix has a negative entry at ({0},{1})")]
    Negative(usize, usize),
    #[error("matrix is reducible")]
    Reducible,
    #[error("quotient is not similar to a symmetric matrix (partition not equitable?)")]
    NotSymmetrizable,
    #[error("need at least {needed} vertices, got {got}")]
    TooFewVertices { needed: usize, got: usize },
}

/// Dense real symmetric matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix {
    order: usize,
    entries: Vec<f64>,
}

impl SymmetricMatrix {
    pub fn new(order: usize, entries: Vec<f64>) -> Result<Self, SpectralError> {
        if entries.len() != order * order {
            return Err(SpectralError::BadShape { expected: order * order, got: entries.len() });
        }
        for i in 0..order {
            for j in i + 1..order {
                if entries[i * order + j] != entries[j * order + i] {
                    return Err(SpectralError::NotSymmetric { i, j });
                }
            }
        }
        Ok(SymmetricMatrix { order, entries })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.order + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.order..(i + 1) * self.order]
    }

    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.order).map(|i| self.row(i).iter().sum()).collect()
    }

    /// Max absolute row sum.
    pub fn inf_norm(&self) -> f64 {
        (0..self.order).map(|i| self.row(i).iter().map(|x| x.abs()).sum::<f64>()).fold(0.0, f64::max)
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        (0..self.order).map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }
}

impl Serialize for SymmetricMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.order))?;
        for i in 0..self.order {
            seq.serialize_element(self.row(i))?;
        }
        seq.end()
    }
}

/// A(G).
pub fn adjacency_matrix(g: &Graph) -> SymmetricMatrix {
    let n = g.order();
    let mut entries = vec![0.0; n * n];
    for (u, v) in g.edges() {
        entries[u * n + v] = 1.0;
        entries[v * n + u] = 1.0;
    }
    SymmetricMatrix { order: n, entries }
}

/// Q(G) = D(G) + A(G).
pub fn signless_laplacian(g: &Graph) -> SymmetricMatrix {
    let mut m = adjacency_matrix(g);
    let n = g.order();
    for v in 0..n {
        m.entries[v * n + v] = g.degree(v) as f64;
    }
    m
}

/// Largest eigenvalue with a unit eigenvector and its residual ‖Mv − λv‖∞.
#[derive(Debug, Clone)]
pub struct EigenPair {
    pub value: f64,
    pub vector: Vec<f64>,
    pub residual: f64,
}

/// Largest eigenvalue of `m`; fails rather than return a value whose
/// residual exceeds `tol · max(1, ‖M‖∞)`.
pub fn largest_eigenvalue(m: &SymmetricMatrix, tol: f64) -> Result<EigenPair, SpectralError> {
    let eig = symmetric_eigen(m)?;
    let (value, v) = eig.largest();
    let mut vector = v.to_vec();
    // fix the sign so the result is reproducible and Perron vectors are nonnegative
    if vector.iter().sum::<f64>() < 0.0 {
        vector.iter_mut().for_each(|x| *x = -*x);
    }
    let mv = m.mul_vec(&vector);
    let residual = mv.iter().zip(&vector).map(|(a, b)| (a - value * b).abs()).fold(0.0, f64::max);
    let bound = tol * m.inf_norm().max(1.0);
    if residual > bound {
        return Err(SpectralError::ResidualTooLarge { residual, bound });
    }
    Ok(EigenPair { value, vector, residual })
}

/// q(G), the signless Laplacian spectral radius.
pub fn q_index(g: &Graph, tol: f64) -> Result<f64, SpectralError> {
    if g.order() == 0 {
        return Err(SpectralError::Empty);
    }
    largest_eigenvalue(&signless_laplacian(g), tol).map(|p| p.value)
}

/// ρ(G), the adjacency spectral radius.
pub fn adjacency_spectral_radius(g: &Graph, tol: f64) -> Result<f64, SpectralError> {
    if g.order() == 0 {
        return Err(SpectralError::Empty);
    }
    largest_eigenvalue(&adjacency_matrix(g), tol).map(|p| p.value)
}

/// Upper bound q(G) ≤ 2e(G)/(n−1) + n − 2.
pub fn das_feng_yu_bound(g: &Graph) -> Result<f64, SpectralError> {
    let n = g.order();
    if n < 2 {
        return Err(SpectralError::TooFewVertices { needed: 2, got: n });
    }
    Ok(2.0 * g.edge_count() as f64 / (n - 1) as f64 + n as f64 - 2.0)
}

/// Full spectrum of Q(G), ascending.
pub fn q_spectrum(g: &Graph) -> Result<Vec<f64>, SpectralError> {
    symmetric_eigen(&signless_laplacian(g)).map(|e| e.values)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = DEFAULT_TOL;

    #[test]
    fn matrices_of_small_graphs() {
        let k2 = Graph::complete(2).unwrap();
        assert_eq!(adjacency_matrix(&k2).entries(), &[0.0, 1.0, 1.0, 0.0]);
        assert_eq!(signless_laplacian(&k2).entries(), &[1.0, 1.0, 1.0, 1.0]);
        assert_eq!(adjacency_matrix(&Graph::empty(2).unwrap()).entries(), &[0.0; 4]);
        assert_eq!(signless_laplacian(&Graph::complete(1).unwrap()).entries(), &[0.0]);
        let a3 = adjacency_matrix(&Graph::cycle(3).unwrap());
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(a3.get(i, j), if i == j { 0.0 } else { 1.0 });
            }
        }
        let q4 = signless_laplacian(&Graph::cycle(4).unwrap());
        assert_eq!(q4.row(0), &[2.0, 1.0, 0.0, 1.0]);
        assert_eq!(q4.row_sums(), vec![4.0; 4]);
    }

    #[test]
    fn row_sums_are_twice_degrees() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        let q = signless_laplacian(&g);
        for (v, s) in q.row_sums().into_iter().enumerate() {
            assert_eq!(s, 2.0 * g.degree(v) as f64);
        }
    }

    #[test]
    fn q_index_of_regular_graphs() {
        assert!((q_index(&Graph::complete(5).unwrap(), TOL).unwrap() - 8.0).abs() < 1e-12);
        assert!((q_index(&Graph::complete(10).unwrap(), TOL).unwrap() - 18.0).abs() < 1e-12);
        for n in 3..12 {
            assert!((q_index(&Graph::cycle(n).unwrap(), TOL).unwrap() - 4.0).abs() < 1e-12);
        }
    }

    #[test]
    fn star_matches_two_class_quotient() {
        // (center, leaves) quotient is [[4, 4], [1, 1]], det(xI − B) = x² − 5x
        let star = Graph::complete(1).unwrap().join(&Graph::empty(4).unwrap()).unwrap();
        let q = q_index(&star, TOL).unwrap();
        assert!((q - 5.0).abs() < 1e-12);
    }

    #[test]
    fn adjacency_radius() {
        assert!((adjacency_spectral_radius(&Graph::complete(6).unwrap(), TOL).unwrap() - 5.0).abs() < 1e-12);
        assert!((adjacency_spectral_radius(&Graph::cycle(7).unwrap(), TOL).unwrap() - 2.0).abs() < 1e-12);
        let k14 = Graph::complete(1).unwrap().join(&Graph::empty(4).unwrap()).unwrap();
        assert!((adjacency_spectral_radius(&k14, TOL).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn feng_yu_bound_values() {
        for n in 2..10 {
            let b = das_feng_yu_bound(&Graph::complete(n).unwrap()).unwrap();
            assert!((b - (2 * n - 2) as f64).abs() < 1e-12);
        }
        assert!((das_feng_yu_bound(&Graph::cycle(5).unwrap()).unwrap() - 5.5).abs() < 1e-12);
        assert_eq!(das_feng_yu_bound(&Graph::empty(5).unwrap()).unwrap(), 3.0);
        assert!(das_feng_yu_bound(&Graph::complete(1).unwrap()).is_err());
    }

    #[test]
    fn residual_contract_reported() {
        let g = Graph::path(7).unwrap();
        let m = signless_laplacian(&g);
        let p = largest_eigenvalue(&m, TOL).unwrap();
        assert!(p.residual <= TOL * m.inf_norm().max(1.0));
        assert!(p.vector.iter().all(|&x| x > 0.0));
        // an absurd tolerance must surface as an error, not a silent value
        assert!(matches!(largest_eigenvalue(&m, 1e-30), Err(SpectralError::ResidualTooLarge { .. })));
    }

    #[test]
    fn rejects_bad_matrices() {
        assert!(SymmetricMatrix::new(2, vec![0.0, 1.0, 2.0, 0.0]).is_err());
        assert!(SymmetricMatrix::new(2, vec![0.0; 3]).is_err());
        assert!(q_index(&Graph::empty(0).unwrap(), TOL).is_err());
    }

    #[test]
    fn serializes_as_nested_arrays() {
        let m = signless_laplacian(&Graph::complete(2).unwrap());
        assert_eq!(serde_json::to_string(&m).unwrap(), "[[1.0,1.0],[1.0,1.0]]");
    }
}
