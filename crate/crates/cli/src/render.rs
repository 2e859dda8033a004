//! Canonical text and JSON rendering. Everything here is deterministic:
//! element order comes from the canonical basis order, vector entries from
//! edge-declaration order, and JSON keys from fixed struct layouts.

use num_bigint::BigInt;
use wog_toric_core::robustness::{Method, RobustnessReport, Verdict};
use wog_toric_core::shared_path::SharedPathGraverReport;
use wog_toric_core::{BasisSet, WeightedOrientedGraph};

pub fn json(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub fn basis(graph: &WeightedOrientedGraph, basis: &BasisSet, as_json: bool) -> String {
    let labels = graph.edge_labels();
    if as_json {
        let value = serde_json::to_value(basis.to_json(&labels)).expect("serializable");
        return json(&value);
    }
    let mut out = String::new();
    for s in basis.render(&labels) {
        out.push_str(&s);
        out.push('\n');
    }
    out
}

fn verdict(v: Verdict) -> &'static str {
    match v {
        Verdict::True => "true",
        Verdict::False => "false",
        Verdict::Undetermined => "undetermined",
    }
}

fn robustness(report: &RobustnessReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "strongly robust:    {}\n",
        verdict(report.strongly_robust)
    ));
    out.push_str(&format!("robust:             {}\n", verdict(report.robust)));
    out.push_str(&format!(
        "generalized robust: {}\n",
        verdict(report.generalized_robust)
    ));
    out.push_str(&format!(
        "weakly robust:      {}\n",
        verdict(report.weakly_robust)
    ));
    let method = match report.method {
        Method::Structural => "structural",
        Method::Computational => "computational",
    };
    out.push_str(&format!("method: {method}\n"));
    out.push_str(&format!(
        "universal basis: {}\n",
        if report.universal_certified {
            "exact"
        } else {
            "bounded"
        }
    ));
    out
}

/// Robustness text with witnesses resolved to edge labels; split from
/// [`robustness`] so the plain form stays reusable in tests.
pub fn robustness_with_witness(graph: &WeightedOrientedGraph, report: &RobustnessReport) -> String {
    let mut out = robustness(report);
    if let Some(w) = &report.witness {
        out.push_str(&format!("witness: {}\n", w.render(&graph.edge_labels())));
    }
    if let Some(edges) = &report.pattern_witness {
        let ids: Vec<&str> = edges.iter().map(|&e| graph.edge_id(e)).collect();
        out.push_str(&format!("pattern witness edges: {}\n", ids.join(" ")));
    }
    out
}

fn vector(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(BigInt::to_string).collect();
    format!("({})", parts.join(", "))
}

fn pairs(p: &[(u64, u64)]) -> String {
    if p.is_empty() {
        return "{}".to_string();
    }
    let parts: Vec<String> = p.iter().map(|(a, b)| format!("({a},{b})")).collect();
    format!("{{{}}}", parts.join(", "))
}

fn edge_names(graph: &WeightedOrientedGraph, edges: &[usize]) -> String {
    edges
        .iter()
        .map(|&e| graph.edge_id(e).to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn shared_path_text(graph: &WeightedOrientedGraph, r: &SharedPathGraverReport) -> String {
    let labels = graph.edge_labels();
    let mut out = String::new();
    out.push_str(&format!(
        "shared path P ({} edges): {}\n",
        r.path_edges.len(),
        edge_names(graph, &r.path_edges)
    ));
    out.push_str(&format!(
        "first cycle arc:  {}\n",
        edge_names(graph, &r.first_arc_edges)
    ));
    out.push_str(&format!(
        "second cycle arc: {}\n",
        edge_names(graph, &r.second_arc_edges)
    ));
    out.push_str(&format!(
        "first cycle minors:  {}\n",
        vector(&r.first_cycle_minors)
    ));
    out.push_str(&format!(
        "second cycle minors: {}\n",
        vector(&r.second_cycle_minors)
    ));
    out.push_str(&format!(
        "outer cycle minors:  {}\n",
        vector(&r.outer_cycle_minors)
    ));
    out.push_str(&format!(
        "d_a = {}, d_b = {}, d_c = {}\n",
        r.d_a, r.d_b, r.d_c
    ));
    out.push_str(&format!("a = {}\n", vector(&r.a)));
    out.push_str(&format!("b = {}\n", vector(&r.b)));
    out.push_str(&format!("c = {}\n", vector(&r.c)));
    for (i, d) in r.d.iter().enumerate() {
        out.push_str(&format!("d_{} = {}\n", i + 1, d));
    }
    out.push_str(&format!(
        "E_1 = {}; minimal {}\n",
        pairs(&r.e1),
        pairs(&r.e1_minimal)
    ));
    out.push_str(&format!(
        "E_2 = {}; minimal {}\n",
        pairs(&r.e2),
        pairs(&r.e2_minimal)
    ));
    out.push_str(&format!(
        "E_3 = {}; minimal {}\n",
        pairs(&r.e3),
        pairs(&r.e3_minimal)
    ));
    for (name, set) in [("S_1", &r.s1), ("S_2", &r.s2), ("S_3", &r.s3)] {
        if set.is_empty() {
            out.push_str(&format!("{name} = {{}}\n"));
        } else {
            out.push_str(&format!("{name}:\n"));
            for v in set.iter() {
                out.push_str(&format!("  {}\n", vector(v)));
            }
        }
    }
    out.push_str(&format!("basis ({} binomials):\n", r.basis.len()));
    for s in r.basis.render(&labels) {
        out.push_str(&format!("  {s}\n"));
    }
    out
}

pub fn shared_path_json(
    graph: &WeightedOrientedGraph,
    r: &SharedPathGraverReport,
) -> serde_json::Value {
    let labels = graph.edge_labels();
    let ints = |v: &[BigInt]| -> Vec<String> { v.iter().map(BigInt::to_string).collect() };
    let vecs = |vs: &[Vec<BigInt>]| -> Vec<Vec<String>> { vs.iter().map(|v| ints(v)).collect() };
    let pair_list =
        |p: &[(u64, u64)]| -> Vec<Vec<u64>> { p.iter().map(|&(a, b)| vec![a, b]).collect() };
    serde_json::json!({
        "path_edges": r.path_edges.iter().map(|&e| graph.edge_id(e)).collect::<Vec<_>>(),
        "first_arc_edges": r.first_arc_edges.iter().map(|&e| graph.edge_id(e)).collect::<Vec<_>>(),
        "second_arc_edges": r.second_arc_edges.iter().map(|&e| graph.edge_id(e)).collect::<Vec<_>>(),
        "first_cycle_minors": ints(&r.first_cycle_minors),
        "second_cycle_minors": ints(&r.second_cycle_minors),
        "outer_cycle_minors": ints(&r.outer_cycle_minors),
        "d_a": r.d_a.to_string(),
        "d_b": r.d_b.to_string(),
        "d_c": r.d_c.to_string(),
        "a": ints(&r.a),
        "b": ints(&r.b),
        "c": ints(&r.c),
        "d_1": r.d[0].to_string(),
        "d_2": r.d[1].to_string(),
        "d_3": r.d[2].to_string(),
        "d_4": r.d[3].to_string(),
        "d_5": r.d[4].to_string(),
        "d_6": r.d[5].to_string(),
        "E_1": pair_list(&r.e1),
        "E_2": pair_list(&r.e2),
        "E_3": pair_list(&r.e3),
        "E_1_minimal": pair_list(&r.e1_minimal),
        "E_2_minimal": pair_list(&r.e2_minimal),
        "E_3_minimal": pair_list(&r.e3_minimal),
        "S_1": vecs(&r.s1),
        "S_2": vecs(&r.s2),
        "S_3": vecs(&r.s3),
        "basis": serde_json::to_value(r.basis.to_json(&labels)).expect("serializable"),
    })
}
