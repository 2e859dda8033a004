//! Canonically ordered, sign-normalized sets of binomials with provenance.

use crate::binomial::SignedExponentVector;
use crate::linalg::IntegerMatrix;
use serde::Serialize;
use std::collections::BTreeSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisKind {
    Graver,
    Circuit,
    Markov,
    Indispensable,
    Groebner,
}

/// Duplicate-free list of sign-normalized binomials in canonical order:
/// ascending total degree, then lexicographic on the exponent vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisSet {
    kind: BasisKind,
    matrix_hash: u64,
    elements: Vec<SignedExponentVector>,
}

impl BasisSet {
    pub fn new(
        kind: BasisKind,
        matrix: &IntegerMatrix,
        elements: Vec<SignedExponentVector>,
    ) -> Self {
        let mut normalized: Vec<SignedExponentVector> = elements
            .iter()
            .map(SignedExponentVector::sign_normalized)
            .collect();
        normalized
            .sort_by(|a, b| (a.total_degree(), a.entries()).cmp(&(b.total_degree(), b.entries())));
        normalized.dedup();
        BasisSet {
            kind,
            matrix_hash: matrix_hash(matrix),
            elements: normalized,
        }
    }

    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    /// Re-stamps the matrix hash; used when a basis is computed away from
    /// the matrix it belongs to (e.g. Buchberger output).
    pub fn with_matrix(mut self, matrix: &IntegerMatrix) -> Self {
        self.matrix_hash = matrix_hash(matrix);
        self
    }

    pub fn matrix_hash(&self) -> u64 {
        self.matrix_hash
    }

    pub fn elements(&self) -> &[SignedExponentVector] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, b: &SignedExponentVector) -> bool {
        let n = b.sign_normalized();
        self.elements
            .binary_search_by(|e| {
                (e.total_degree(), e.entries()).cmp(&(n.total_degree(), n.entries()))
            })
            .is_ok()
    }

    /// Set equality modulo sign (both sides are stored normalized).
    pub fn same_elements(&self, other: &BasisSet) -> bool {
        self.elements == other.elements
    }

    pub fn is_subset_of(&self, other: &BasisSet) -> bool {
        self.elements.iter().all(|e| other.contains(e))
    }

    pub fn difference(&self, other: &BasisSet) -> Vec<&SignedExponentVector> {
        self.elements
            .iter()
            .filter(|e| !other.contains(e))
            .collect()
    }

    pub fn render(&self, labels: &[String]) -> Vec<String> {
        self.elements.iter().map(|e| e.render(labels)).collect()
    }

    pub fn to_json(&self, labels: &[String]) -> BasisJson {
        BasisJson {
            matrix_hash: format!("{:016x}", self.matrix_hash),
            kind: self.kind,
            elements: self.render(labels),
        }
    }

    /// A-degrees of the elements, deduplicated by exact vector equality.
    pub fn degrees(&self, matrix: &IntegerMatrix) -> Vec<Vec<num_bigint::BigInt>> {
        let mut set = BTreeSet::new();
        for e in &self.elements {
            let deg = matrix
                .mul_vector(&e.positive_part())
                .expect("basis element length matches matrix");
            set.insert(deg);
        }
        set.into_iter().collect()
    }
}

/// Serializable export shape: `{"matrix_hash":..,"kind":..,"elements":[..]}`.
#[derive(Debug, Serialize)]
pub struct BasisJson {
    pub matrix_hash: String,
    pub kind: BasisKind,
    pub elements: Vec<String>,
}

/// FNV-1a over the canonical serialization of the matrix; stable across runs
/// and releases, unlike the std hasher.
pub fn matrix_hash(m: &IntegerMatrix) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    let mut eat = |bytes: &[u8]| {
        for &b in bytes {
            h ^= u64::from(b);
            h = h.wrapping_mul(0x100000001b3);
        }
    };
    eat(m.rows().to_string().as_bytes());
    eat(b"x");
    eat(m.cols().to_string().as_bytes());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            eat(b",");
            eat(m.get(i, j).to_string().as_bytes());
        }
    }
    for label in m.row_labels().iter().chain(m.col_labels()) {
        eat(b";");
        eat(label.as_bytes());
    }
    h
}
