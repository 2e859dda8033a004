//! Degree-lexicographic term orders with an explicit variable priority and
//! optional variable weights.
//!
//! For toric ideals of weighted oriented graphs the natural grading gives
//! the variable of edge `e_j` the degree of its edge monomial, i.e. the
//! column sum of the incidence matrix. Every binomial of the ideal is
//! homogeneous in that grading, so degree-lex with a priority list behaves
//! like the lexicographic tie-break on kernel binomials — which is exactly
//! what the reduced-basis statements about shared-path graphs need.

use crate::linalg::IntegerMatrix;
use num_bigint::BigInt;
use num_traits::One;
use std::cmp::Ordering;

/// Global term order on monomials in the edge variables: weighted total
/// degree first, ties broken lexicographically along `priority` (earlier
/// entries are the larger variables). `priority` is a permutation of the
/// edge indices; weights default to one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermOrder {
    priority: Vec<usize>,
    weights: Vec<BigInt>,
}

impl TermOrder {
    /// Standard degree-lex with variables ranked in declaration order.
    pub fn deglex(num_edges: usize) -> Self {
        TermOrder {
            priority: (0..num_edges).collect(),
            weights: vec![BigInt::one(); num_edges],
        }
    }

    /// Standard degree-lex with the given edges ranked highest (in the
    /// given order); the remaining variables follow in declaration order.
    pub fn deglex_with_top(num_edges: usize, top: &[usize]) -> Self {
        let mut priority: Vec<usize> = top.to_vec();
        priority.extend((0..num_edges).filter(|i| !top.contains(i)));
        debug_assert_eq!(priority.len(), num_edges);
        TermOrder {
            priority,
            weights: vec![BigInt::one(); num_edges],
        }
    }

    pub fn from_priority(priority: Vec<usize>) -> Self {
        let n = priority.len();
        TermOrder {
            priority,
            weights: vec![BigInt::one(); n],
        }
    }

    /// Replaces the variable weights (degrees) used for the degree part.
    pub fn with_weights(mut self, weights: Vec<BigInt>) -> Self {
        assert_eq!(weights.len(), self.priority.len());
        self.weights = weights;
        self
    }

    /// Degree-lex graded so the toric ideal of the matrix is homogeneous:
    /// each variable weighs its column sum.
    pub fn graded_for(matrix: &IntegerMatrix, top: &[usize]) -> Self {
        let weights: Vec<BigInt> = (0..matrix.cols())
            .map(|j| (0..matrix.rows()).map(|i| matrix.get(i, j)).sum())
            .collect();
        TermOrder::deglex_with_top(matrix.cols(), top).with_weights(weights)
    }

    /// Graded order with an explicit full priority permutation.
    pub fn graded_with_priority(matrix: &IntegerMatrix, priority: Vec<usize>) -> Self {
        TermOrder::graded_for(matrix, &[]).with_priority(priority)
    }

    fn with_priority(mut self, priority: Vec<usize>) -> Self {
        assert_eq!(priority.len(), self.weights.len());
        self.priority = priority;
        self
    }

    pub fn num_edges(&self) -> usize {
        self.priority.len()
    }

    pub fn priority(&self) -> &[usize] {
        &self.priority
    }

    pub fn weights(&self) -> &[BigInt] {
        &self.weights
    }

    fn degree(&self, m: &[BigInt]) -> BigInt {
        m.iter().zip(self.weights.iter()).map(|(e, w)| e * w).sum()
    }

    /// Compares two exponent vectors as monomials.
    pub fn cmp_monomials(&self, a: &[BigInt], b: &[BigInt]) -> Ordering {
        match self.degree(a).cmp(&self.degree(b)) {
            Ordering::Equal => {}
            other => return other,
        }
        for &v in &self.priority {
            match a[v].cmp(&b[v]) {
                Ordering::Equal => {}
                other => return other,
            }
        }
        Ordering::Equal
    }
}
