//! Vertex-weighted oriented graphs: construction and validation, incidence
//! matrices, simple-cycle enumeration, balance tests, shared-path
//! decomposition, and the two forbidden subgraph patterns used by the
//! robustness classification.

use crate::error::{Error, Result};
use crate::linalg::IntegerMatrix;
use crate::Limits;
use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone)]
pub struct Vertex {
    pub id: String,
    pub weight: u64,
}

#[derive(Debug, Clone)]
pub struct Edge {
    pub id: String,
    pub tail: usize,
    pub head: usize,
}

/// Directed simple graph with a positive integer weight on every vertex.
///
/// Edge declaration order fixes the column order `e_1..e_m` of the incidence
/// matrix and of every exponent vector; vertex declaration order fixes the
/// row order. Immutable after construction.
#[derive(Debug, Clone)]
pub struct WeightedOrientedGraph {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: Vec<VertexJson>,
    edges: Vec<EdgeJson>,
}

#[derive(Serialize, Deserialize)]
struct VertexJson {
    id: String,
    w: u64,
}

#[derive(Serialize, Deserialize)]
struct EdgeJson {
    id: String,
    tail: String,
    head: String,
}

impl WeightedOrientedGraph {
    /// Validates and builds a graph from `(id, weight)` vertices and
    /// `(id, tail, head)` edges.
    pub fn build(
        vertices: Vec<(String, u64)>,
        edges: Vec<(String, String, String)>,
    ) -> Result<Self> {
        let mut index = BTreeMap::new();
        let mut vs = Vec::with_capacity(vertices.len());
        for (id, weight) in vertices {
            if index.insert(id.clone(), vs.len()).is_some() {
                return Err(Error::DuplicateVertex(id));
            }
            if weight < 1 {
                return Err(Error::InvalidWeight(id, weight));
            }
            vs.push(Vertex { id, weight });
        }
        let mut edge_ids = BTreeSet::new();
        let mut seen_pairs: BTreeMap<(usize, usize), String> = BTreeMap::new();
        let mut es = Vec::with_capacity(edges.len());
        for (id, tail, head) in edges {
            if !edge_ids.insert(id.clone()) {
                return Err(Error::DuplicateEdge(id));
            }
            let &t = index
                .get(&tail)
                .ok_or_else(|| Error::UnknownVertex(tail.clone()))?;
            let &h = index
                .get(&head)
                .ok_or_else(|| Error::UnknownVertex(head.clone()))?;
            if t == h {
                return Err(Error::SelfLoop(id));
            }
            let key = (t.min(h), t.max(h));
            if let Some(other) = seen_pairs.insert(key, id.clone()) {
                return Err(Error::ParallelEdges(other, id));
            }
            es.push(Edge {
                id,
                tail: t,
                head: h,
            });
        }
        Ok(WeightedOrientedGraph {
            vertices: vs,
            edges: es,
        })
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: GraphJson =
            serde_json::from_str(s).map_err(|e| Error::GraphJson(e.to_string()))?;
        Self::build(
            raw.vertices.into_iter().map(|v| (v.id, v.w)).collect(),
            raw.edges
                .into_iter()
                .map(|e| (e.id, e.tail, e.head))
                .collect(),
        )
    }

    pub fn to_json_string(&self) -> String {
        let raw = GraphJson {
            vertices: self
                .vertices
                .iter()
                .map(|v| VertexJson {
                    id: v.id.clone(),
                    w: v.weight,
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeJson {
                    id: e.id.clone(),
                    tail: self.vertices[e.tail].id.clone(),
                    head: self.vertices[e.head].id.clone(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&raw).expect("graph serialization cannot fail")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_labels(&self) -> Vec<String> {
        self.edges.iter().map(|e| e.id.clone()).collect()
    }

    pub fn edge_index(&self, id: &str) -> Result<usize> {
        self.edges
            .iter()
            .position(|e| e.id == id)
            .ok_or_else(|| Error::UnknownEdge(id.to_string()))
    }

    /// Incidence matrix: vertex rows in declaration order, edge columns in
    /// declaration order. The column of an edge `x_i -> x_j` has a 1 in the
    /// tail row and the head weight `w_j` in the head row.
    pub fn incidence_matrix(&self) -> IntegerMatrix {
        let mut m = IntegerMatrix::zero(self.vertices.len(), self.edges.len());
        for (j, e) in self.edges.iter().enumerate() {
            m.set(e.tail, j, BigInt::from(1));
            m.set(e.head, j, BigInt::from(self.vertices[e.head].weight));
        }
        m.with_labels(
            self.vertices.iter().map(|v| v.id.clone()).collect(),
            self.edges.iter().map(|e| e.id.clone()).collect(),
        )
    }

    fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for (j, e) in self.edges.iter().enumerate() {
            adj[e.tail].push((e.head, j));
            adj[e.head].push((e.tail, j));
        }
        for list in adj.iter_mut() {
            list.sort();
        }
        adj
    }

    /// All simple cycles of the underlying undirected graph, each exactly
    /// once in canonical form, sorted. Empty for forests.
    pub fn enumerate_cycles(&self, limits: &Limits) -> Result<Vec<OrientedCycle>> {
        let adj = self.adjacency();
        let n = self.vertices.len();
        let mut cycles = Vec::new();
        let mut on_path = vec![false; n];
        for start in 0..n {
            // path as (vertex, edge used to reach it); edge is usize::MAX at start
            let mut path: Vec<(usize, usize)> = vec![(start, usize::MAX)];
            let mut iters: Vec<usize> = vec![0];
            on_path[start] = true;
            while !iters.is_empty() {
                let depth = iters.len() - 1;
                let (v, _) = *path.last().unwrap();
                if iters[depth] < adj[v].len() {
                    let (w, e) = adj[v][iters[depth]];
                    iters[depth] += 1;
                    if w == start && path.len() >= 3 {
                        // close the cycle once per direction class
                        if path[1].0 < path.last().unwrap().0 {
                            let vs: Vec<usize> = path.iter().map(|&(x, _)| x).collect();
                            let mut es: Vec<usize> = path.iter().skip(1).map(|&(_, e)| e).collect();
                            es.push(e);
                            cycles.push(OrientedCycle::from_walk(self, vs, es));
                            if cycles.len() > limits.max_cycles {
                                return Err(Error::CycleCap(limits.max_cycles));
                            }
                        }
                    } else if w > start && !on_path[w] {
                        on_path[w] = true;
                        path.push((w, e));
                        iters.push(0);
                    }
                } else {
                    let (v, _) = path.pop().unwrap();
                    on_path[v] = false;
                    iters.pop();
                }
            }
        }
        cycles.sort_by_key(|a| a.sort_key());
        cycles.dedup_by(|a, b| a.edge_set() == b.edge_set());
        Ok(cycles)
    }

    /// Sub-incidence matrix on the cycle's vertices and edges, both in
    /// traversal order; this is the square matrix whose singularity defines
    /// balance and whose first-row minors give the cycle generator.
    pub fn cycle_matrix(&self, cycle: &OrientedCycle) -> IntegerMatrix {
        let full = self.incidence_matrix();
        full.submatrix(&cycle.vertices, &cycle.edges)
    }

    /// A cycle is balanced when its own incidence matrix is singular.
    pub fn is_balanced(&self, cycle: &OrientedCycle) -> bool {
        self.cycle_matrix(cycle)
            .det()
            .expect("cycle matrix is square")
            .is_zero()
    }

    /// Sources and sinks of the orientation restricted to the cycle.
    pub fn cycle_sources_sinks(&self, cycle: &OrientedCycle) -> (Vec<usize>, Vec<usize>) {
        let n = cycle.vertices.len();
        let mut sources = Vec::new();
        let mut sinks = Vec::new();
        for i in 0..n {
            let v = cycle.vertices[i];
            let e_in = cycle.edges[(i + n - 1) % n];
            let e_out = cycle.edges[i];
            let tail_of_both = self.edges[e_in].tail == v && self.edges[e_out].tail == v;
            let head_of_both = self.edges[e_in].head == v && self.edges[e_out].head == v;
            if tail_of_both {
                sources.push(v);
            } else if head_of_both {
                sinks.push(v);
            }
        }
        (sources, sinks)
    }

    /// Chords of a cycle: edges of the graph joining two cycle vertices
    /// without belonging to the cycle.
    pub fn chords(&self, cycle: &OrientedCycle) -> Vec<usize> {
        let vset: BTreeSet<usize> = cycle.vertices.iter().copied().collect();
        let eset = cycle.edge_set();
        (0..self.edges.len())
            .filter(|&j| {
                !eset.contains(&j)
                    && vset.contains(&self.edges[j].tail)
                    && vset.contains(&self.edges[j].head)
            })
            .collect()
    }

    /// The cycle on `(E(c1) ∪ E(c2)) \ E(p)`, after checking the two cycles
    /// intersect exactly in `p`.
    pub fn outer_cycle(
        &self,
        c1: &OrientedCycle,
        c2: &OrientedCycle,
        p: &Path,
    ) -> Result<OrientedCycle> {
        let e1 = c1.edge_set();
        let e2 = c2.edge_set();
        let ep: BTreeSet<usize> = p.edges.iter().copied().collect();
        let shared: BTreeSet<usize> = e1.intersection(&e2).copied().collect();
        if shared != ep {
            return Err(Error::NotSharingPath);
        }
        let v1: BTreeSet<usize> = c1.vertices.iter().copied().collect();
        let v2: BTreeSet<usize> = c2.vertices.iter().copied().collect();
        let vp: BTreeSet<usize> = p.vertices.iter().copied().collect();
        if v1.intersection(&v2).copied().collect::<BTreeSet<_>>() != vp {
            return Err(Error::NotSharingPath);
        }
        let outer: Vec<usize> = e1.union(&e2).copied().filter(|e| !ep.contains(e)).collect();
        OrientedCycle::from_edge_set(self, &outer)
    }

    /// All pairs of balanced cycles sharing exactly one edge (and nothing
    /// else), the first forbidden pattern.
    pub fn detect_d1(&self, limits: &Limits) -> Result<Vec<D1Occurrence>> {
        let cycles = self.enumerate_cycles(limits)?;
        let balanced: Vec<&OrientedCycle> = cycles.iter().filter(|c| self.is_balanced(c)).collect();
        let mut found = Vec::new();
        for i in 0..balanced.len() {
            for j in i + 1..balanced.len() {
                if let Some(edge) = share_exactly_one_edge(self, balanced[i], balanced[j]) {
                    found.push(D1Occurrence {
                        first: balanced[i].clone(),
                        second: balanced[j].clone(),
                        shared_edge: edge,
                    });
                }
            }
        }
        Ok(found)
    }

    /// All triples (balanced, unbalanced, unbalanced) of cycles pairwise
    /// sharing exactly one common edge whose outer cycle of the two
    /// unbalanced members is unbalanced, the second forbidden pattern.
    pub fn detect_d2(&self, limits: &Limits) -> Result<Vec<D2Occurrence>> {
        let cycles = self.enumerate_cycles(limits)?;
        let balance: Vec<bool> = cycles.iter().map(|c| self.is_balanced(c)).collect();
        let mut found = Vec::new();
        for e in 0..self.edges.len() {
            let through: Vec<usize> = (0..cycles.len())
                .filter(|&i| cycles[i].edge_set().contains(&e))
                .collect();
            for &b in through.iter().filter(|&&i| balance[i]) {
                for (ui, &u1) in through.iter().enumerate() {
                    if balance[u1] {
                        continue;
                    }
                    for &u2 in through.iter().skip(ui + 1) {
                        if balance[u2] {
                            continue;
                        }
                        let trio = [b, u1, u2];
                        let pairwise_ok = trio.iter().enumerate().all(|(x, &cx)| {
                            trio.iter().skip(x + 1).all(|&cy| {
                                share_exactly_one_edge(self, &cycles[cx], &cycles[cy]) == Some(e)
                            })
                        });
                        if !pairwise_ok {
                            continue;
                        }
                        let p = self.edge_path(e);
                        let Ok(outer) = self.outer_cycle(&cycles[u1], &cycles[u2], &p) else {
                            continue;
                        };
                        if !self.is_balanced(&outer) {
                            found.push(D2Occurrence {
                                balanced: cycles[b].clone(),
                                first_unbalanced: cycles[u1].clone(),
                                second_unbalanced: cycles[u2].clone(),
                                shared_edge: e,
                                outer,
                            });
                        }
                    }
                }
            }
        }
        Ok(found)
    }

    fn edge_path(&self, e: usize) -> Path {
        let edge = &self.edges[e];
        Path {
            vertices: vec![edge.tail, edge.head],
            edges: vec![e],
        }
    }

    /// Recognizes graphs of the form `C_1 ∪_P ... ∪_P C_n`: cycles that
    /// pairwise intersect in exactly one common path `P` and jointly cover
    /// the graph. Returns `None` when the graph is not of this shape.
    ///
    /// A graph that is a single cycle decomposes with `n = 1` and the least
    /// edge as the path. For `n >= 2` the graph must consist of `n + 1`
    /// internally disjoint chains between its only two branch vertices; the
    /// lexicographically least chain (by sorted edge indices) is chosen as
    /// the shared path, which makes the decomposition deterministic.
    pub fn shared_path_decomposition(&self) -> Result<Option<SharedPathDecomposition>> {
        if self.edges.is_empty() {
            return Ok(None);
        }
        let mut degree = vec![0usize; self.vertices.len()];
        for e in &self.edges {
            degree[e.tail] += 1;
            degree[e.head] += 1;
        }
        if degree.contains(&0) {
            return Ok(None); // isolated vertices are not part of the form
        }
        if !self.is_connected() {
            return Ok(None);
        }
        let branch: Vec<usize> = (0..self.vertices.len())
            .filter(|&v| degree[v] >= 3)
            .collect();
        if branch.is_empty() {
            // every vertex has degree 2 and the graph is connected: one cycle
            if degree.iter().any(|&d| d != 2) {
                return Ok(None);
            }
            let all: Vec<usize> = (0..self.edges.len()).collect();
            let cycle = OrientedCycle::from_edge_set(self, &all)?;
            // the least edge serves as the path; the arc walks the rest of
            // the cycle from the far end of that edge back around
            let n = cycle.len();
            let pos = (0..n).min_by_key(|&i| cycle.edges[i]).unwrap();
            let path = Path {
                vertices: vec![cycle.vertices[pos], cycle.vertices[(pos + 1) % n]],
                edges: vec![cycle.edges[pos]],
            };
            let arc = Path {
                vertices: (1..=n).map(|k| cycle.vertices[(pos + k) % n]).collect(),
                edges: (1..n).map(|k| cycle.edges[(pos + k) % n]).collect(),
            };
            let balanced = vec![self.is_balanced(&cycle)];
            return Ok(Some(SharedPathDecomposition {
                path,
                cycles: vec![cycle],
                arcs: vec![arc],
                balanced,
            }));
        }
        if branch.len() != 2 {
            return Ok(None);
        }
        let (s, t) = (branch[0], branch[1]);
        if degree[s] != degree[t] {
            return Ok(None);
        }
        // walk the chains leaving s; each must reach t through degree-2 vertices
        let adj = self.adjacency();
        let mut chains: Vec<Path> = Vec::new();
        for &(mut v, mut e) in &adj[s] {
            let mut vertices = vec![s];
            let mut edges = Vec::new();
            loop {
                vertices.push(v);
                edges.push(e);
                if v == t {
                    break;
                }
                if degree[v] != 2 {
                    return Ok(None);
                }
                let &(w, f) = adj[v].iter().find(|&&(_, f)| f != e).expect("degree 2");
                if w == s {
                    return Ok(None); // chain loops back without hitting t
                }
                v = w;
                e = f;
            }
            chains.push(Path { vertices, edges });
        }
        if chains.len() != degree[s]
            || chains.iter().map(|c| c.edges.len()).sum::<usize>() != self.edges.len()
        {
            return Ok(None);
        }
        // deterministic choice of the shared path
        chains.sort_by(|a, b| {
            let ka: Vec<usize> = a.sorted_edges();
            let kb: Vec<usize> = b.sorted_edges();
            ka.cmp(&kb)
        });
        let path = chains.remove(0);
        let mut cycles = Vec::new();
        let mut balanced = Vec::new();
        for arc in &chains {
            let mut edges: Vec<usize> = path.edges.clone();
            edges.extend_from_slice(&arc.edges);
            let cycle = OrientedCycle::from_edge_set(self, &edges)?;
            balanced.push(self.is_balanced(&cycle));
            cycles.push(cycle);
        }
        Ok(Some(SharedPathDecomposition {
            path,
            cycles,
            arcs: chains,
            balanced,
        }))
    }

    fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return true;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; self.vertices.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(w, _) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        &self.vertices[v].id
    }

    pub fn edge_id(&self, e: usize) -> &str {
        &self.edges[e].id
    }
}

fn share_exactly_one_edge(
    g: &WeightedOrientedGraph,
    a: &OrientedCycle,
    b: &OrientedCycle,
) -> Option<usize> {
    let ea = a.edge_set();
    let eb = b.edge_set();
    let shared: Vec<usize> = ea.intersection(&eb).copied().collect();
    if shared.len() != 1 {
        return None;
    }
    let e = shared[0];
    let va: BTreeSet<usize> = a.vertices.iter().copied().collect();
    let vb: BTreeSet<usize> = b.vertices.iter().copied().collect();
    let vshared: BTreeSet<usize> = va.intersection(&vb).copied().collect();
    let endpoints: BTreeSet<usize> = [g.edges()[e].tail, g.edges()[e].head].into();
    (vshared == endpoints).then_some(e)
}

/// Simple cycle in canonical form: vertex `vertices[i]` is joined to
/// `vertices[i+1]` (cyclically) by `edges[i]`. The canonical form starts at
/// the least vertex index and takes the lexicographically smaller of the two
/// traversal directions, so equal cycles compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedCycle {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
    /// Per edge, whether the edge orientation agrees with the traversal.
    pub forward: Vec<bool>,
}

impl OrientedCycle {
    fn from_walk(g: &WeightedOrientedGraph, vertices: Vec<usize>, edges: Vec<usize>) -> Self {
        let n = vertices.len();
        debug_assert_eq!(edges.len(), n);
        // rotate to least vertex
        let start = (0..n).min_by_key(|&i| vertices[i]).unwrap();
        let rot_v: Vec<usize> = (0..n).map(|i| vertices[(start + i) % n]).collect();
        let rot_e: Vec<usize> = (0..n).map(|i| edges[(start + i) % n]).collect();
        // the reversed direction visits the same least vertex first
        let mut rev_v = rot_v.clone();
        rev_v[1..].reverse();
        let mut rev_e = rot_e.clone();
        rev_e.reverse();
        let (vs, es) = if rev_v < rot_v {
            (rev_v, rev_e)
        } else {
            (rot_v, rot_e)
        };
        let forward = (0..n).map(|i| g.edges[es[i]].tail == vs[i]).collect();
        OrientedCycle {
            vertices: vs,
            edges: es,
            forward,
        }
    }

    /// Builds the unique simple cycle on the given edge set, failing if the
    /// edges do not form one.
    pub fn from_edge_set(g: &WeightedOrientedGraph, edges: &[usize]) -> Result<Self> {
        if edges.len() < 3 {
            return Err(Error::NotACycle);
        }
        let mut incident: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &e in edges {
            incident.entry(g.edges[e].tail).or_default().push(e);
            incident.entry(g.edges[e].head).or_default().push(e);
        }
        if incident.values().any(|es| es.len() != 2) || incident.len() != edges.len() {
            return Err(Error::NotACycle);
        }
        let start = *incident.keys().next().unwrap();
        let mut vs = vec![start];
        let mut es = Vec::new();
        let mut v = start;
        let mut prev_e = usize::MAX;
        loop {
            let &e = incident[&v].iter().find(|&&e| e != prev_e).unwrap();
            let edge = &g.edges[e];
            let w = if edge.tail == v { edge.head } else { edge.tail };
            es.push(e);
            if w == start {
                break;
            }
            vs.push(w);
            v = w;
            prev_e = e;
        }
        if vs.len() != edges.len() {
            return Err(Error::NotACycle); // disconnected union of cycles
        }
        Ok(Self::from_walk(g, vs, es))
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edge_set(&self) -> BTreeSet<usize> {
        self.edges.iter().copied().collect()
    }

    fn sort_key(&self) -> (usize, Vec<usize>) {
        (self.len(), self.vertices.clone())
    }

    /// Human-readable edge list like `e1 e2 e7`.
    pub fn describe(&self, g: &WeightedOrientedGraph) -> String {
        self.edges
            .iter()
            .map(|&e| g.edge_id(e).to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Simple path given by its vertex and edge sequences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Path {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

impl Path {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn sorted_edges(&self) -> Vec<usize> {
        let mut e = self.edges.clone();
        e.sort_unstable();
        e
    }

    pub fn describe(&self, g: &WeightedOrientedGraph) -> String {
        self.edges
            .iter()
            .map(|&e| g.edge_id(e).to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Decomposition of a graph into cycles `C_1..C_n` sharing a path `P`:
/// pairwise edge intersections equal `E(P)`, the arcs `C_i \ P` are
/// internally disjoint, and together path and arcs cover every edge.
#[derive(Debug, Clone)]
pub struct SharedPathDecomposition {
    pub path: Path,
    pub cycles: Vec<OrientedCycle>,
    pub arcs: Vec<Path>,
    pub balanced: Vec<bool>,
}

impl SharedPathDecomposition {
    pub fn cycle_count(&self) -> usize {
        self.cycles.len()
    }

    pub fn unbalanced_count(&self) -> usize {
        self.balanced.iter().filter(|&&b| !b).count()
    }

    pub fn path_len(&self) -> usize {
        self.path.len()
    }

    pub fn min_arc_len(&self) -> usize {
        self.arcs.iter().map(Path::len).min().unwrap_or(0)
    }
}

#[derive(Debug, Clone)]
pub struct D1Occurrence {
    pub first: OrientedCycle,
    pub second: OrientedCycle,
    pub shared_edge: usize,
}

#[derive(Debug, Clone)]
pub struct D2Occurrence {
    pub balanced: OrientedCycle,
    pub first_unbalanced: OrientedCycle,
    pub second_unbalanced: OrientedCycle,
    pub shared_edge: usize,
    pub outer: OrientedCycle,
}
