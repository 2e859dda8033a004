//! Toric-ideal invariants of vertex-weighted oriented graphs.
//!
//! A weighted oriented graph assigns every vertex a positive integer weight;
//! an edge `x_i -> x_j` contributes the monomial `x_i * x_j^{w_j}`, and the
//! toric ideal of the graph is the kernel of the induced monomial map. This
//! crate computes the classical invariants of that ideal — Graver basis,
//! reduced and universal Groebner bases, universal Markov basis, circuits,
//! indispensable binomials — and classifies the four robustness properties
//! (strongly robust, robust, generalized robust, weakly robust).
//!
//! All arithmetic is exact: arbitrary-precision integers and rationals,
//! no floating point anywhere.

pub mod basis;
pub mod binomial;
pub mod error;
pub mod fiber;
pub mod graph;
pub mod graver;
pub mod groebner;
pub mod instances;
pub mod linalg;
pub mod markov;
pub mod order;
pub mod robustness;
pub mod shared_path;

pub use basis::{BasisKind, BasisSet};
pub use binomial::SignedExponentVector;
pub use error::{Error, Result};
pub use graph::{OrientedCycle, Path, SharedPathDecomposition, WeightedOrientedGraph};
pub use linalg::IntegerMatrix;
pub use order::TermOrder;

/// Resource caps for the potentially expensive enumerations.
///
/// Every cap violation surfaces as a dedicated [`Error`] variant so callers
/// can tell "instance too large for desk scale" apart from invalid input.
#[derive(Debug, Clone)]
pub struct Limits {
    /// Upper bound on the number of simple cycles enumerated per graph.
    pub max_cycles: usize,
    /// Upper bound on lattice points visited while enumerating one fiber.
    pub max_fiber_candidates: u64,
    /// Upper bound on the size of a single fiber.
    pub max_fiber_points: u64,
    /// Upper bound on reduction steps in completion-style loops
    /// (Graver completion, Buchberger).
    pub max_completion_steps: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_cycles: 10_000,
            max_fiber_candidates: 10_000_000,
            max_fiber_points: 1_000_000,
            max_completion_steps: 10_000_000,
        }
    }
}
