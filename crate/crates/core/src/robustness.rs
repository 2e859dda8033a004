//! The four robustness predicates of a toric ideal and the structural
//! shortcuts available for graphs made of cycles sharing a path.
//!
//! Strongly robust: the Graver basis is a minimal generating set (tested as
//! equality with the indispensable set). Robust: the universal Groebner
//! basis is a minimal generating set. Generalized robust: universal
//! Groebner = universal Markov. Weakly robust: Graver = universal Markov.

use crate::binomial::SignedExponentVector;
use crate::error::Result;
use crate::graph::{OrientedCycle, WeightedOrientedGraph};
use crate::graver::graver_basis;
use crate::groebner::universal_gb;
use crate::markov::{indispensables, universal_markov};
use crate::Limits;
use serde::Serialize;

/// Three-valued verdict: predicates that depend on the universal Groebner
/// basis are undetermined when only bounds on it are available.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    True,
    False,
    Undetermined,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::True
        } else {
            Verdict::False
        }
    }

    pub fn is_true(self) -> bool {
        self == Verdict::True
    }

    pub fn is_false(self) -> bool {
        self == Verdict::False
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Computational,
    Structural,
}

/// Classification outcome. The implication chain strongly => robust =>
/// generalized holds in every report, and weakly is the set equality
/// Graver = universal Markov by definition.
#[derive(Debug, Clone)]
pub struct RobustnessReport {
    pub strongly_robust: Verdict,
    pub robust: Verdict,
    pub generalized_robust: Verdict,
    pub weakly_robust: Verdict,
    pub method: Method,
    /// Whether the universal Groebner basis entering the verdicts was known
    /// exactly rather than through bounds.
    pub universal_certified: bool,
    /// A Graver element outside the universal Markov basis, when one exists.
    pub witness: Option<SignedExponentVector>,
    /// Edge sets of forbidden-pattern witnesses found by the structural path.
    pub pattern_witness: Option<Vec<usize>>,
}

impl RobustnessReport {
    fn check_chain(&self) {
        if self.strongly_robust.is_true() {
            debug_assert!(self.robust.is_true() && self.generalized_robust.is_true());
        }
        if self.generalized_robust.is_false() {
            debug_assert!(!self.robust.is_true());
        }
    }
}

/// Strongly robust iff the Graver basis equals the indispensable set; any
/// Graver element that is dispensable witnesses failure.
pub fn is_strongly_robust(
    matrix: &crate::linalg::IntegerMatrix,
    limits: &Limits,
) -> Result<(bool, Option<SignedExponentVector>)> {
    let graver = graver_basis(matrix, limits)?;
    let ind = indispensables(matrix, limits)?;
    let witness = graver.difference(&ind).first().map(|&e| e.clone());
    Ok((witness.is_none(), witness))
}

/// Weakly robust iff the Graver basis equals the universal Markov basis.
pub fn is_weakly_robust(matrix: &crate::linalg::IntegerMatrix, limits: &Limits) -> Result<bool> {
    let graver = graver_basis(matrix, limits)?;
    let markov = universal_markov(matrix, limits)?;
    Ok(graver.same_elements(&markov))
}

/// Robust iff the universal Groebner basis is a minimal generating set.
/// With a certified universal basis (equal to the Graver basis) this is the
/// strongly robust test; otherwise the verdict may be forced false by a
/// certain universal element outside the Markov basis, and is undetermined
/// when the bounds leave room.
pub fn is_robust(
    matrix: &crate::linalg::IntegerMatrix,
    graph: Option<&WeightedOrientedGraph>,
    limits: &Limits,
) -> Result<(Verdict, bool)> {
    let u = universal_gb(matrix, graph, limits)?;
    if u.exact().is_some() {
        // universal = Graver: minimal generation is the strongly robust test
        let (strong, _) = is_strongly_robust(matrix, limits)?;
        return Ok((Verdict::from_bool(strong), true));
    }
    let markov = universal_markov(matrix, limits)?;
    if !u.lower.is_subset_of(&markov) {
        // a binomial certainly in the universal basis misses every minimal
        // generating set
        return Ok((Verdict::False, false));
    }
    let (strong, _) = is_strongly_robust(matrix, limits)?;
    if strong {
        return Ok((Verdict::True, false));
    }
    Ok((Verdict::Undetermined, false))
}

/// Generalized robust iff universal Groebner = universal Markov; same
/// certification rules as [`is_robust`].
pub fn is_generalized_robust(
    matrix: &crate::linalg::IntegerMatrix,
    graph: Option<&WeightedOrientedGraph>,
    limits: &Limits,
) -> Result<(Verdict, bool)> {
    let u = universal_gb(matrix, graph, limits)?;
    let markov = universal_markov(matrix, limits)?;
    if let Some(exact) = u.exact() {
        return Ok((Verdict::from_bool(exact.same_elements(&markov)), true));
    }
    if !u.lower.is_subset_of(&markov) {
        return Ok((Verdict::False, false));
    }
    let (strong, _) = is_strongly_robust(matrix, limits)?;
    if strong {
        return Ok((Verdict::True, false));
    }
    Ok((Verdict::Undetermined, false))
}

/// Full computational classification.
pub fn computational_report(
    graph: &WeightedOrientedGraph,
    limits: &Limits,
) -> Result<RobustnessReport> {
    let matrix = graph.incidence_matrix();
    let (strong, strong_witness) = is_strongly_robust(&matrix, limits)?;
    let weak = is_weakly_robust(&matrix, limits)?;
    let (robust, certified) = is_robust(&matrix, Some(graph), limits)?;
    let (generalized, _) = is_generalized_robust(&matrix, Some(graph), limits)?;
    let graver = graver_basis(&matrix, limits)?;
    let markov = universal_markov(&matrix, limits)?;
    let witness = strong_witness.or_else(|| graver.difference(&markov).first().map(|&e| e.clone()));
    let report = RobustnessReport {
        strongly_robust: Verdict::from_bool(strong),
        robust,
        generalized_robust: generalized,
        weakly_robust: Verdict::from_bool(weak),
        method: Method::Computational,
        universal_certified: certified,
        witness,
        pattern_witness: None,
    };
    report.check_chain();
    Ok(report)
}

/// Structural classification for graphs of cycles sharing a path.
///
/// When some presentation of the decomposition has at most two unbalanced
/// cycles, all four properties are equivalent to the absence of the two
/// forbidden patterns: a pair of balanced cycles sharing exactly one edge,
/// and a balanced cycle plus two unbalanced ones sharing an edge with an
/// unbalanced outer cycle. With path and arc lengths all at least two the
/// degree-two criterion certifies strong robustness outright. With three or
/// more unbalanced cycles in every presentation the equivalence can fail,
/// so the structural path refuses and computes instead.
pub fn structural_classification(
    graph: &WeightedOrientedGraph,
    limits: &Limits,
) -> Result<RobustnessReport> {
    let Some(decomposition) = graph.shared_path_decomposition()? else {
        return Err(crate::error::Error::NoSharedPathDecomposition);
    };
    // examine every choice of shared path among the chains
    let mut chains = vec![decomposition.path.clone()];
    chains.extend(decomposition.arcs.iter().cloned());
    let mut best_unbalanced = usize::MAX;
    let mut degree_two_shortcut = false;
    if chains.len() == 1 {
        best_unbalanced = decomposition.unbalanced_count();
    } else {
        for p in 0..chains.len() {
            let mut unbalanced = 0usize;
            for q in 0..chains.len() {
                if p == q {
                    continue;
                }
                let mut edges = chains[p].edges.clone();
                edges.extend_from_slice(&chains[q].edges);
                let cycle = OrientedCycle::from_edge_set(graph, &edges)?;
                if !graph.is_balanced(&cycle) {
                    unbalanced += 1;
                }
            }
            best_unbalanced = best_unbalanced.min(unbalanced);
            let arcs_long = (0..chains.len())
                .filter(|&q| q != p)
                .all(|q| chains[q].len() >= 2);
            if chains[p].len() >= 2 && arcs_long {
                degree_two_shortcut = true;
            }
        }
    }
    if degree_two_shortcut {
        // every edge monomial has a degree-two vertex: strongly robust
        let report = RobustnessReport {
            strongly_robust: Verdict::True,
            robust: Verdict::True,
            generalized_robust: Verdict::True,
            weakly_robust: Verdict::True,
            method: Method::Structural,
            universal_certified: true,
            witness: None,
            pattern_witness: None,
        };
        report.check_chain();
        return Ok(report);
    }
    if best_unbalanced > 2 {
        // the forbidden-pattern equivalence needs at most two unbalanced
        // cycles; fall back to the computational predicates
        return computational_report(graph, limits);
    }
    let d1 = graph.detect_d1(limits)?;
    let d2 = graph.detect_d2(limits)?;
    let clean = d1.is_empty() && d2.is_empty();
    let verdict = Verdict::from_bool(clean);
    let pattern_witness = d1
        .first()
        .map(|occ| {
            let mut edges: Vec<usize> = occ.first.edges.clone();
            edges.extend_from_slice(&occ.second.edges);
            edges
        })
        .or_else(|| {
            d2.first().map(|occ| {
                let mut edges: Vec<usize> = occ.balanced.edges.clone();
                edges.extend_from_slice(&occ.first_unbalanced.edges);
                edges.extend_from_slice(&occ.second_unbalanced.edges);
                edges
            })
        });
    let report = RobustnessReport {
        strongly_robust: verdict,
        robust: verdict,
        generalized_robust: verdict,
        weakly_robust: verdict,
        method: Method::Structural,
        universal_certified: true,
        witness: None,
        pattern_witness,
    };
    report.check_chain();
    Ok(report)
}

/// Preferred entry point: structural when the graph shape allows it,
/// computational otherwise.
pub fn classify(graph: &WeightedOrientedGraph, limits: &Limits) -> Result<RobustnessReport> {
    match structural_classification(graph, limits) {
        Ok(report) => Ok(report),
        Err(crate::error::Error::NoSharedPathDecomposition) => computational_report(graph, limits),
        Err(e) => Err(e),
    }
}

/// JSON shape for reports.
#[derive(Debug, Serialize)]
pub struct RobustnessJson {
    pub strongly_robust: Verdict,
    pub robust: Verdict,
    pub generalized_robust: Verdict,
    pub weakly_robust: Verdict,
    pub method: Method,
    pub universal_certified: bool,
    pub witness: Option<String>,
    pub pattern_witness_edges: Option<Vec<String>>,
}

impl RobustnessReport {
    pub fn to_json(&self, graph: &WeightedOrientedGraph) -> RobustnessJson {
        let labels = graph.edge_labels();
        RobustnessJson {
            strongly_robust: self.strongly_robust,
            robust: self.robust,
            generalized_robust: self.generalized_robust,
            weakly_robust: self.weakly_robust,
            method: self.method,
            universal_certified: self.universal_certified,
            witness: self.witness.as_ref().map(|w| w.render(&labels)),
            pattern_witness_edges: self.pattern_witness.as_ref().map(|edges| {
                edges
                    .iter()
                    .map(|&e| graph.edge_id(e).to_string())
                    .collect()
            }),
        }
    }
}
