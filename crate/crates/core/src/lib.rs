//! Signless Laplacian spectral radius, exact l-toughness, and a harness that
//! checks spectral sufficient conditions for (t, l)-toughness on small graphs.

pub mod extremal;
pub mod graph;
pub mod io;
pub mod random;
pub mod rational;
pub mod spectral;
pub mod toughness;
pub mod verify;

pub use extremal::{CubicPolynomial, ExtremalError, JoinParts, Theorem};
pub use graph::{Graph, GraphError, VertexSet, MAX_VERTICES};
pub use io::{FormatError, GraphFormat};
pub use random::SampleModel;
pub use rational::ExtendedRational;
pub use spectral::{Partition, QuotientMatrix, SpectralError, SymmetricMatrix};
pub use toughness::{ToughnessError, ToughnessResult};
pub use verify::{Outcome, VerificationReport, VerifyError};
