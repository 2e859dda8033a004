//! Universal Markov basis and indispensable binomials via the
//! fiber-connectivity criterion: in each relevant A-degree, minimal
//! generating sets pick binomials bridging the connected components of the
//! fiber graph whose edges join monomials sharing a variable.

use crate::basis::{BasisKind, BasisSet};
use crate::binomial::{ADegree, SignedExponentVector};
use crate::error::{Error, Result};
use crate::fiber::{fiber, Fiber};
use crate::graph::{OrientedCycle, WeightedOrientedGraph};
use crate::graver::{balanced_cycle_generator, graver_basis};
use crate::linalg::IntegerMatrix;
use crate::Limits;
use num_bigint::BigInt;
use num_traits::Zero;

/// Fiber together with its connected-component partition.
#[derive(Debug, Clone)]
pub struct FiberGraph {
    pub fiber: Fiber,
    /// Component index per fiber point.
    pub component: Vec<usize>,
    pub component_count: usize,
}

impl FiberGraph {
    pub fn new(fiber: Fiber) -> Self {
        let n = fiber.points.len();
        let mut component: Vec<usize> = (0..n).collect();
        // union-find over points sharing a support index
        fn find(parent: &mut Vec<usize>, i: usize) -> usize {
            if parent[i] != i {
                let root = find(parent, parent[i]);
                parent[i] = root;
            }
            parent[i]
        }
        for i in 0..n {
            for j in i + 1..n {
                let shares = fiber.points[i]
                    .iter()
                    .zip(fiber.points[j].iter())
                    .any(|(a, b)| !a.is_zero() && !b.is_zero());
                if shares {
                    let ri = find(&mut component, i);
                    let rj = find(&mut component, j);
                    if ri != rj {
                        component[ri] = rj;
                    }
                }
            }
        }
        let mut roots: Vec<usize> = (0..n).map(|i| find(&mut component, i)).collect();
        let mut distinct: Vec<usize> = roots.clone();
        distinct.sort_unstable();
        distinct.dedup();
        for r in roots.iter_mut() {
            *r = distinct.binary_search(r).unwrap();
        }
        FiberGraph {
            fiber,
            component: roots,
            component_count: distinct.len(),
        }
    }

    pub fn is_disconnected(&self) -> bool {
        self.component_count >= 2
    }
}

/// Shared computation: the fiber graphs of all Graver-element degrees.
/// Markov degrees can only occur there since the universal Markov basis is
/// contained in the Graver basis.
fn graver_degree_fibers(
    matrix: &IntegerMatrix,
    limits: &Limits,
) -> Result<Vec<(ADegree, FiberGraph)>> {
    let graver = graver_basis(matrix, limits)?;
    let mut out: Vec<(ADegree, FiberGraph)> = Vec::new();
    for element in graver.elements() {
        let witness = element.positive_part();
        let degree = ADegree(matrix.mul_vector(&witness)?);
        if out.iter().any(|(d, _)| *d == degree) {
            continue;
        }
        let fg = FiberGraph::new(fiber(matrix, &witness, limits)?);
        out.push((degree, fg));
    }
    out.sort_by(|(a, _), (b, _)| a.cmp(b));
    Ok(out)
}

/// A-degrees in which minimal generating sets have elements: fibers of
/// Graver degrees whose graph is disconnected.
pub fn markov_degrees(matrix: &IntegerMatrix, limits: &Limits) -> Result<Vec<ADegree>> {
    Ok(graver_degree_fibers(matrix, limits)?
        .into_iter()
        .filter(|(_, fg)| fg.is_disconnected())
        .map(|(d, _)| d)
        .collect())
}

/// Union of all minimal binomial generating sets: in every Markov degree,
/// all differences of fiber points lying in distinct components.
pub fn universal_markov(matrix: &IntegerMatrix, limits: &Limits) -> Result<BasisSet> {
    let mut elements = Vec::new();
    for (_, fg) in graver_degree_fibers(matrix, limits)? {
        if !fg.is_disconnected() {
            continue;
        }
        let points = &fg.fiber.points;
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if fg.component[i] == fg.component[j] {
                    continue;
                }
                let diff: Vec<BigInt> = points[i]
                    .iter()
                    .zip(points[j].iter())
                    .map(|(a, b)| a - b)
                    .collect();
                elements.push(SignedExponentVector::from_vector(diff)?);
            }
        }
    }
    Ok(BasisSet::new(BasisKind::Markov, matrix, elements))
}

/// Binomials belonging to every minimal generating set: fibers with exactly
/// two points, no shared variable.
pub fn indispensables(matrix: &IntegerMatrix, limits: &Limits) -> Result<BasisSet> {
    let mut elements = Vec::new();
    for (_, fg) in graver_degree_fibers(matrix, limits)? {
        if fg.component_count == 2 && fg.fiber.points.len() == 2 {
            let diff: Vec<BigInt> = fg.fiber.points[0]
                .iter()
                .zip(fg.fiber.points[1].iter())
                .map(|(a, b)| a - b)
                .collect();
            elements.push(SignedExponentVector::from_vector(diff)?);
        }
    }
    Ok(BasisSet::new(BasisKind::Indispensable, matrix, elements))
}

/// How an indispensability verdict for a balanced-cycle generator was
/// reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndispensabilityMethod {
    /// The cycle has no chord; its generator is always indispensable.
    NoChord,
    /// Exactly one chord: indispensable iff the chord does not split the
    /// cycle into two balanced cycles.
    OneChord,
    /// Structural criteria are silent; decided by the fiber criterion.
    FiberFallback,
}

/// Indispensability of the generator of a balanced cycle inside its
/// ambient graph, using the structural chord criteria when they apply.
pub fn cycle_generator_indispensable(
    graph: &WeightedOrientedGraph,
    cycle: &OrientedCycle,
    limits: &Limits,
) -> Result<(bool, IndispensabilityMethod)> {
    let chords = graph.chords(cycle);
    match chords.len() {
        0 => Ok((true, IndispensabilityMethod::NoChord)),
        1 => {
            let (c1, c2) = split_by_chord(graph, cycle, chords[0])?;
            let both_balanced = graph.is_balanced(&c1) && graph.is_balanced(&c2);
            Ok((!both_balanced, IndispensabilityMethod::OneChord))
        }
        _ => {
            let generator = balanced_cycle_generator(graph, cycle)?;
            let ind = indispensables(&graph.incidence_matrix(), limits)?;
            Ok((
                ind.contains(&generator),
                IndispensabilityMethod::FiberFallback,
            ))
        }
    }
}

/// The two cycles a chord cuts a cycle into.
fn split_by_chord(
    graph: &WeightedOrientedGraph,
    cycle: &OrientedCycle,
    chord: usize,
) -> Result<(OrientedCycle, OrientedCycle)> {
    let a = graph.edges()[chord].tail;
    let b = graph.edges()[chord].head;
    let n = cycle.len();
    let pa = cycle
        .vertices
        .iter()
        .position(|&v| v == a)
        .ok_or(Error::NotACycle)?;
    let pb = cycle
        .vertices
        .iter()
        .position(|&v| v == b)
        .ok_or(Error::NotACycle)?;
    let (lo, hi) = (pa.min(pb), pa.max(pb));
    let arc1: Vec<usize> = (lo..hi).map(|i| cycle.edges[i]).collect();
    let arc2: Vec<usize> = (hi..n + lo).map(|i| cycle.edges[i % n]).collect();
    let mut e1 = arc1;
    e1.push(chord);
    let mut e2 = arc2;
    e2.push(chord);
    Ok((
        OrientedCycle::from_edge_set(graph, &e1)?,
        OrientedCycle::from_edge_set(graph, &e2)?,
    ))
}

/// Brute-force reference for the fiber criterion, usable when the Graver
/// basis is tiny: enumerates all subsets of the Graver basis, keeps the
/// inclusion-minimal generating ones, and returns (union, intersection).
/// Lives here so integration tests and the acceptance suite can share it.
pub fn markov_by_subset_enumeration(
    matrix: &IntegerMatrix,
    limits: &Limits,
) -> Result<(BasisSet, BasisSet)> {
    use crate::groebner::ideal_membership;
    use crate::order::TermOrder;

    let graver = graver_basis(matrix, limits)?;
    let n = graver.len();
    assert!(n <= 16, "subset enumeration needs a tiny Graver basis");
    let order = TermOrder::deglex(matrix.cols());
    let elements = graver.elements();
    let generates = |mask: u32| -> Result<bool> {
        let subset: Vec<SignedExponentVector> = (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| elements[i].clone())
            .collect();
        for e in elements {
            if !ideal_membership(e, &subset, &order, limits)? {
                return Ok(false);
            }
        }
        Ok(true)
    };
    let mut generating: Vec<u32> = Vec::new();
    for mask in 0..(1u32 << n) {
        if generates(mask)? {
            generating.push(mask);
        }
    }
    let minimal: Vec<u32> = generating
        .iter()
        .copied()
        .filter(|&m| {
            !generating
                .iter()
                .any(|&other| other != m && other & m == other)
        })
        .collect();
    let mut union_mask = 0u32;
    let mut inter_mask = !0u32;
    for &m in &minimal {
        union_mask |= m;
        inter_mask &= m;
    }
    let pick = |mask: u32| -> Vec<SignedExponentVector> {
        (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| elements[i].clone())
            .collect()
    };
    Ok((
        BasisSet::new(BasisKind::Markov, matrix, pick(union_mask)),
        BasisSet::new(BasisKind::Indispensable, matrix, pick(inter_mask)),
    ))
}
