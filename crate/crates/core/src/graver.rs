//! Graver bases by lattice completion, the bounded-enumeration oracle used
//! to validate them, circuit binomials, and the closed-form generators of
//! balanced cycles and of theta graphs with unbalanced outer cycle.

use crate::basis::{BasisKind, BasisSet};
use crate::binomial::{conformal_leq, SignedExponentVector};
use crate::error::{Error, Result};
use crate::graph::{OrientedCycle, Path, WeightedOrientedGraph};
use crate::linalg::{self, IntegerMatrix};
use crate::Limits;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use std::collections::BTreeSet;

/// Graver basis: the conformal-minimal nonzero elements of the integer
/// kernel, computed by completion over a kernel lattice basis.
///
/// Seeds with the lattice basis and both signs, closes the set under
/// pairwise sums followed by conformal reduction until a fixpoint, then
/// keeps the conformal-minimal survivors. Exactness at desk scale is
/// cross-checked against [`graver_oracle`] in the test suites.
pub fn graver_basis(matrix: &IntegerMatrix, limits: &Limits) -> Result<BasisSet> {
    if !matrix.is_positively_graded() {
        return Err(Error::NotPositivelyGraded);
    }
    let lattice = matrix.integer_kernel_basis();
    let vectors = completion(&lattice, limits)?;
    let elements = vectors
        .into_iter()
        .map(SignedExponentVector::from_vector)
        .collect::<Result<Vec<_>>>()?;
    Ok(BasisSet::new(BasisKind::Graver, matrix, elements))
}

/// Conformal reduction: repeatedly subtracts set elements that are
/// conformally below the vector; returns the irreducible remainder.
fn conformal_normal_form(
    mut v: Vec<BigInt>,
    set: &[Vec<BigInt>],
    steps: &mut u64,
    limits: &Limits,
) -> Result<Vec<BigInt>> {
    'outer: loop {
        if v.iter().all(BigInt::is_zero) {
            return Ok(v);
        }
        *steps += 1;
        if *steps > limits.max_completion_steps {
            return Err(Error::CompletionCap(limits.max_completion_steps));
        }
        for g in set {
            if conformal_leq(g, &v) {
                for (vi, gi) in v.iter_mut().zip(g.iter()) {
                    *vi -= gi;
                }
                continue 'outer;
            }
        }
        return Ok(v);
    }
}

fn completion(lattice: &[Vec<BigInt>], limits: &Limits) -> Result<Vec<Vec<BigInt>>> {
    let mut set: Vec<Vec<BigInt>> = Vec::new();
    let mut steps: u64 = 0;
    for b in lattice {
        if !set.iter().any(|g| g == b) {
            set.push(b.clone());
            set.push(b.iter().map(|x| -x).collect());
        }
    }
    // unordered index pairs still to be combined, processed oldest first so
    // small elements combine before the set fills with large ones
    let mut queue: std::collections::VecDeque<(usize, usize)> =
        std::collections::VecDeque::new();
    for i in 0..set.len() {
        for j in i..set.len() {
            queue.push_back((i, j));
        }
    }
    while let Some((i, j)) = queue.pop_front() {
        if sign_compatible(&set[i], &set[j]) {
            // the sum of conformal vectors reduces to zero through them
            continue;
        }
        let sum: Vec<BigInt> = set[i]
            .iter()
            .zip(set[j].iter())
            .map(|(a, b)| a + b)
            .collect();
        if sum.iter().all(BigInt::is_zero) {
            continue;
        }
        let reduced = conformal_normal_form(sum, &set, &mut steps, limits)?;
        if reduced.iter().all(BigInt::is_zero) {
            continue;
        }
        let neg: Vec<BigInt> = reduced.iter().map(|x| -x).collect();
        let k = set.len();
        set.push(reduced);
        set.push(neg);
        for idx in 0..set.len() {
            queue.push_back((idx, k));
            queue.push_back((idx, k + 1));
        }
        steps += 1;
        if steps > limits.max_completion_steps {
            return Err(Error::CompletionCap(limits.max_completion_steps));
        }
    }
    Ok(minimal_elements(set))
}

/// No coordinate where the two vectors have strictly opposite signs.
fn sign_compatible(u: &[BigInt], v: &[BigInt]) -> bool {
    u.iter().zip(v.iter()).all(|(a, b)| {
        !(a.is_positive() && b.is_negative()) && !(a.is_negative() && b.is_positive())
    })
}

/// Keeps the conformal-minimal vectors, one representative per sign pair.
fn minimal_elements(mut set: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    for v in set.iter_mut() {
        linalg::sign_normalize(v);
    }
    set.sort_by_key(|v| {
        let degree: BigInt = v.iter().map(|x| x.abs()).sum();
        (degree, v.clone())
    });
    set.dedup();
    let mut minimal: Vec<Vec<BigInt>> = Vec::new();
    'candidates: for v in set {
        let neg: Vec<BigInt> = v.iter().map(|x| -x).collect();
        for g in &minimal {
            if conformal_leq(g, &v) || conformal_leq(g, &neg) {
                continue 'candidates;
            }
        }
        minimal.push(v);
    }
    minimal
}

/// Independent test oracle: enumerates every lattice point with basis
/// coefficients in `[-bound, bound]` and keeps the conformal-minimal ones.
/// Exact whenever the bound covers all Graver elements. Only usable for
/// kernel dimension at most 3.
pub fn graver_oracle(matrix: &IntegerMatrix, bound: u64, limits: &Limits) -> Result<BasisSet> {
    if !matrix.is_positively_graded() {
        return Err(Error::NotPositivelyGraded);
    }
    let lattice = matrix.integer_kernel_basis();
    let d = lattice.len();
    if d > 3 {
        return Err(Error::KernelTooLarge(d, 3));
    }
    let m = matrix.cols();
    let width = 2 * bound + 1;
    let mut total: u64 = 1;
    for _ in 0..d {
        total = total.saturating_mul(width);
        if total > limits.max_fiber_candidates {
            return Err(Error::FiberCandidateCap(limits.max_fiber_candidates));
        }
    }
    let mut points: Vec<Vec<BigInt>> = Vec::new();
    let b = bound as i64;
    let mut coeffs = vec![-b; d];
    'grid: loop {
        let mut v = vec![BigInt::zero(); m];
        for (j, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                for i in 0..m {
                    v[i] += &lattice[j][i] * c;
                }
            }
        }
        if !v.iter().all(BigInt::is_zero) {
            linalg::sign_normalize(&mut v);
            points.push(v);
        }
        // odometer over [-b, b]^d
        let mut k = 0;
        loop {
            if k == d {
                break 'grid;
            }
            if coeffs[k] < b {
                coeffs[k] += 1;
                break;
            }
            coeffs[k] = -b;
            k += 1;
        }
    }
    let elements = minimal_elements(points)
        .into_iter()
        .map(SignedExponentVector::from_vector)
        .collect::<Result<Vec<_>>>()?;
    Ok(BasisSet::new(BasisKind::Graver, matrix, elements))
}

/// Circuit binomials: Graver elements with support-minimal support. Every
/// nonzero kernel vector's support contains a circuit support and every
/// circuit is primitive, so support-minimality inside the Graver basis is
/// support-minimality among all kernel vectors.
pub fn circuits(matrix: &IntegerMatrix, limits: &Limits) -> Result<BasisSet> {
    let graver = graver_basis(matrix, limits)?;
    let supports: Vec<BTreeSet<usize>> = graver
        .elements()
        .iter()
        .map(|e| e.support().into_iter().collect())
        .collect();
    let elements: Vec<SignedExponentVector> = graver
        .elements()
        .iter()
        .enumerate()
        .filter(|(i, _)| {
            !supports
                .iter()
                .enumerate()
                .any(|(j, s)| j != *i && s.is_subset(&supports[*i]) && *s != supports[*i])
        })
        .map(|(_, e)| e.clone())
        .collect();
    Ok(BasisSet::new(BasisKind::Circuit, matrix, elements))
}

/// True iff the vector is a primitive element of the kernel, i.e. belongs
/// to the Graver basis up to sign.
pub fn is_primitive(
    matrix: &IntegerMatrix,
    vector: &SignedExponentVector,
    limits: &Limits,
) -> Result<bool> {
    if !matrix.annihilates(vector.entries()) {
        return Err(Error::NotInKernel);
    }
    let graver = graver_basis(matrix, limits)?;
    Ok(graver.contains(vector))
}

/// Primitive generator of the toric ideal of a balanced cycle, by the
/// first-row minor formula on the cycle's own incidence matrix: entry `i`
/// is `(-1)^{i+1} M(A[1|i]) / d` with `d` the gcd of all the minors.
///
/// Returns the vector over the whole edge space of the ambient graph,
/// sign-normalized. The minor route is cross-checked against the rational
/// kernel on every call.
pub fn balanced_cycle_generator(
    graph: &WeightedOrientedGraph,
    cycle: &OrientedCycle,
) -> Result<SignedExponentVector> {
    let local = cycle_generator_local(graph, cycle)?;
    let mut global = vec![BigInt::zero(); graph.edge_count()];
    for (pos, &edge) in cycle.edges.iter().enumerate() {
        global[edge] = local[pos].clone();
    }
    SignedExponentVector::from_vector(global)
}

/// Generator in the cycle's own column order (traversal order).
pub(crate) fn cycle_generator_local(
    graph: &WeightedOrientedGraph,
    cycle: &OrientedCycle,
) -> Result<Vec<BigInt>> {
    let a = graph.cycle_matrix(cycle);
    let n = cycle.len();
    if !a.det()?.is_zero() {
        return Err(Error::UnbalancedCycle);
    }
    let minors = first_row_minors(&a)?;
    let d = minors.iter().fold(BigInt::zero(), |acc, m| acc.gcd(m));
    if d.is_zero() {
        return Err(Error::KernelDimension(0));
    }
    let mut v: Vec<BigInt> = (0..n)
        .map(|i| {
            let signed = if i % 2 == 0 {
                minors[i].clone()
            } else {
                -&minors[i]
            };
            signed / &d
        })
        .collect();
    if !a.annihilates(&v) {
        return Err(Error::NotInKernel);
    }
    // cross-check against the kernel route
    let kernel = a.kernel_basis();
    if kernel.len() != 1 {
        return Err(Error::KernelDimension(kernel.len()));
    }
    let from_kernel = linalg::primitive_integer_vector(&kernel[0])?;
    let mut normalized = v.clone();
    linalg::sign_normalize(&mut normalized);
    if normalized != from_kernel {
        return Err(Error::NotInKernel);
    }
    linalg::sign_normalize(&mut v);
    Ok(v)
}

/// The `n` first-row minors `M(A[1|i])` of a square matrix, as signed
/// determinants.
pub(crate) fn first_row_minors(a: &IntegerMatrix) -> Result<Vec<BigInt>> {
    (0..a.cols()).map(|i| a.minor(&[0], &[i])).collect()
}

/// Primitive generator of the principal toric ideal of two unbalanced
/// cycles sharing a path whose outer cycle is also unbalanced.
pub fn theta_unbalanced_generator(
    graph: &WeightedOrientedGraph,
    first: &OrientedCycle,
    second: &OrientedCycle,
    shared: &Path,
) -> Result<SignedExponentVector> {
    if graph.is_balanced(first) || graph.is_balanced(second) {
        return Err(Error::BalancedCycle);
    }
    let outer = graph.outer_cycle(first, second, shared)?;
    if graph.is_balanced(&outer) {
        return Err(Error::BalancedCycle);
    }
    let columns: Vec<usize> = first
        .edge_set()
        .union(&second.edge_set())
        .copied()
        .collect();
    let rows: Vec<usize> = (0..graph.vertex_count()).collect();
    let sub = graph.incidence_matrix().submatrix(&rows, &columns);
    let kernel = sub.kernel_basis();
    if kernel.len() != 1 {
        return Err(Error::KernelDimension(kernel.len()));
    }
    let local = linalg::primitive_integer_vector(&kernel[0])?;
    let mut global = vec![BigInt::zero(); graph.edge_count()];
    for (pos, &edge) in columns.iter().enumerate() {
        global[edge] = local[pos].clone();
    }
    SignedExponentVector::from_vector(global)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::WeightedOrientedGraph;

    fn vecb(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn square() -> WeightedOrientedGraph {
        WeightedOrientedGraph::build(
            (1..=4).map(|i| (format!("v{i}"), 1)).collect(),
            vec![
                ("e1".into(), "v1".into(), "v2".into()),
                ("e2".into(), "v3".into(), "v2".into()),
                ("e3".into(), "v3".into(), "v4".into()),
                ("e4".into(), "v1".into(), "v4".into()),
            ],
        )
        .unwrap()
    }

    #[test]
    fn graver_of_balanced_square_is_principal() {
        let g = square();
        let basis = graver_basis(&g.incidence_matrix(), &Limits::default()).unwrap();
        assert_eq!(basis.len(), 1);
        assert_eq!(basis.elements()[0].entries(), &vecb(&[1, -1, 1, -1])[..]);
    }

    #[test]
    fn oracle_agrees_on_square() {
        let g = square();
        let a = g.incidence_matrix();
        let basis = graver_basis(&a, &Limits::default()).unwrap();
        let oracle = graver_oracle(&a, 3, &Limits::default()).unwrap();
        assert!(basis.same_elements(&oracle));
    }

    #[test]
    fn multiple_of_generator_is_not_primitive() {
        let g = square();
        let a = g.incidence_matrix();
        let doubled = SignedExponentVector::from_vector(vecb(&[2, -2, 2, -2])).unwrap();
        assert!(!is_primitive(&a, &doubled, &Limits::default()).unwrap());
        let gen = SignedExponentVector::from_vector(vecb(&[1, -1, 1, -1])).unwrap();
        assert!(is_primitive(&a, &gen, &Limits::default()).unwrap());
    }

    #[test]
    fn non_kernel_vector_rejected_by_is_primitive() {
        let g = square();
        let a = g.incidence_matrix();
        let off = SignedExponentVector::from_vector(vecb(&[1, 0, 0, 0])).unwrap();
        assert!(matches!(
            is_primitive(&a, &off, &Limits::default()),
            Err(Error::NotInKernel)
        ));
    }

    #[test]
    fn balanced_square_generator_any_weights() {
        for weights in [[1u64, 1, 1, 1], [3, 7, 2, 5]] {
            let g = WeightedOrientedGraph::build(
                (1..=4).map(|i| (format!("v{i}"), weights[i - 1])).collect(),
                vec![
                    ("e1".into(), "v1".into(), "v2".into()),
                    ("e2".into(), "v3".into(), "v2".into()),
                    ("e3".into(), "v3".into(), "v4".into()),
                    ("e4".into(), "v1".into(), "v4".into()),
                ],
            )
            .unwrap();
            let cycles = g.enumerate_cycles(&Limits::default()).unwrap();
            let gen = balanced_cycle_generator(&g, &cycles[0]).unwrap();
            assert_eq!(gen.entries(), &vecb(&[1, -1, 1, -1])[..]);
        }
    }

    #[test]
    fn generator_of_unbalanced_cycle_errors() {
        let g = WeightedOrientedGraph::build(
            vec![("v1".into(), 1), ("v2".into(), 2), ("v3".into(), 3)],
            vec![
                ("e1".into(), "v1".into(), "v2".into()),
                ("e2".into(), "v2".into(), "v3".into()),
                ("e3".into(), "v3".into(), "v1".into()),
            ],
        )
        .unwrap();
        let cycles = g.enumerate_cycles(&Limits::default()).unwrap();
        assert!(matches!(
            balanced_cycle_generator(&g, &cycles[0]),
            Err(Error::UnbalancedCycle)
        ));
    }

    #[test]
    fn circuits_of_single_balanced_cycle() {
        let g = square();
        let c = circuits(&g.incidence_matrix(), &Limits::default()).unwrap();
        assert_eq!(c.len(), 1);
    }

    #[test]
    fn completion_cap_trips() {
        // a one-dimensional kernel completes without any reduction, so use
        // two balanced squares sharing an edge (kernel dimension two)
        let g = WeightedOrientedGraph::build(
            (1..=6).map(|i| (format!("v{i}"), 1)).collect(),
            vec![
                ("e1".into(), "v1".into(), "v2".into()),
                ("e2".into(), "v3".into(), "v2".into()),
                ("e3".into(), "v3".into(), "v4".into()),
                ("e4".into(), "v1".into(), "v4".into()),
                ("e5".into(), "v5".into(), "v2".into()),
                ("e6".into(), "v5".into(), "v6".into()),
                ("e7".into(), "v1".into(), "v6".into()),
            ],
        )
        .unwrap();
        let limits = Limits {
            max_completion_steps: 0,
            ..Limits::default()
        };
        let err = graver_basis(&g.incidence_matrix(), &limits).unwrap_err();
        assert!(matches!(err, Error::CompletionCap(0)));
    }
}
