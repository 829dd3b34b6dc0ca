//! Exact computation of the binomial-determinant sums `c(lambda, mu)`, a
//! brute-force non-intersecting lattice path oracle, the path surgery that
//! pairs negative tuples with positive ones, and an exhaustive scanner.

pub mod combinatorics;
pub mod determinant;
pub mod error;
pub mod lattice;
pub mod oracle;
pub mod scanner;
pub mod surgery;

pub use combinatorics::{enumerate_triangular_sequences, Partition, SequenceIndex3, TriangularSequence};
pub use determinant::{coefficient, partial_sum, BinomialMatrix, CoefficientReport};
pub use error::{Error, Result};
pub use lattice::{LatticePath, LatticePoint, PointConfiguration};
