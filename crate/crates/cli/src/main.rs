//! Command-line front end for toric-ideal analysis of vertex-weighted
//! oriented graphs. All output is canonical and byte-identical across runs
//! on identical input. Exit codes: 0 success, 1 invalid input, 2 resource
//! cap exceeded.

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use wog_toric_core::graver::{balanced_cycle_generator, circuits, graver_basis};
use wog_toric_core::groebner::reduced_groebner_basis;
use wog_toric_core::markov::{indispensables, universal_markov};
use wog_toric_core::robustness::classify;
use wog_toric_core::shared_path::{shared_path_two_balanced_graver, SharedPathGraverReport};
use wog_toric_core::{Error, Limits, TermOrder, WeightedOrientedGraph};

mod render;

#[derive(Parser)]
#[command(
    name = "wog-toric",
    about = "Toric-ideal invariants of vertex-weighted oriented graphs",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List all simple cycles in canonical order
    Cycles(CommonArgs),
    /// Report balanced/unbalanced for every cycle, with the cycle generator
    /// where one exists
    Balance(CommonArgs),
    /// Graver basis (all primitive binomials)
    Graver(CommonArgs),
    /// Circuit binomials (support-minimal primitive binomials)
    Circuits(CommonArgs),
    /// Reduced Groebner basis under degree-lex with the chosen priority
    Groebner(CommonArgs),
    /// Universal Markov basis (union of all minimal generating sets)
    Markov(CommonArgs),
    /// Indispensable binomials (intersection of all minimal generating sets)
    Indispensable(CommonArgs),
    /// Classify the four robustness properties
    Robustness(CommonArgs),
    /// Closed-form Graver report for two balanced cycles sharing a path
    SharedPathReport(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Input graph JSON file
    input: PathBuf,
    /// Term-order priority: comma-separated edge ids ranked highest first;
    /// unlisted edges follow in declaration order
    #[arg(long, value_name = "e1,e7,...")]
    order: Option<String>,
    /// Cap on fiber enumeration candidates
    #[arg(long, value_name = "N")]
    cap_fiber: Option<u64>,
    /// Cap on completion reduction steps (Graver and Groebner loops)
    #[arg(long, value_name = "N")]
    cap_graver: Option<u64>,
    /// Emit JSON instead of text
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (args, runner): (&CommonArgs, Runner) = match &cli.command {
        Command::Cycles(a) => (a, run_cycles),
        Command::Balance(a) => (a, run_balance),
        Command::Graver(a) => (a, run_graver),
        Command::Circuits(a) => (a, run_circuits),
        Command::Groebner(a) => (a, run_groebner),
        Command::Markov(a) => (a, run_markov),
        Command::Indispensable(a) => (a, run_indispensable),
        Command::Robustness(a) => (a, run_robustness),
        Command::SharedPathReport(a) => (a, run_shared_path_report),
    };
    match execute(args, runner) {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(failure) => {
            eprintln!("error: {}", failure.text);
            ExitCode::from(failure.exit_code)
        }
    }
}

struct Failure {
    text: String,
    exit_code: u8,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let exit_code = if e.is_resource_cap() { 2 } else { 1 };
        Failure {
            text: e.to_string(),
            exit_code,
        }
    }
}

type Runner = fn(&WeightedOrientedGraph, &Request) -> Result<String, Failure>;

struct Request {
    order: TermOrder,
    limits: Limits,
    json: bool,
}

fn execute(args: &CommonArgs, runner: Runner) -> Result<String, Failure> {
    let text = std::fs::read_to_string(&args.input).map_err(|e| Failure {
        text: format!("cannot read `{}`: {e}", args.input.display()),
        exit_code: 1,
    })?;
    let graph = WeightedOrientedGraph::from_json_str(&text)?;
    let mut limits = Limits::default();
    if let Some(cap) = args.cap_fiber {
        limits.max_fiber_candidates = cap;
        limits.max_fiber_points = cap;
    }
    if let Some(cap) = args.cap_graver {
        limits.max_completion_steps = cap;
    }
    let order = parse_order(&graph, args.order.as_deref())?;
    let request = Request {
        order,
        limits,
        json: args.json,
    };
    runner(&graph, &request)
}

// Degree-lex graded so the toric ideal is homogeneous; the priority flag
// only chooses the tie-breaking permutation.
fn parse_order(graph: &WeightedOrientedGraph, spec: Option<&str>) -> Result<TermOrder, Failure> {
    let matrix = graph.incidence_matrix();
    let Some(spec) = spec else {
        return Ok(TermOrder::graded_for(&matrix, &[]));
    };
    let mut top = Vec::new();
    for name in spec.split(',').filter(|s| !s.is_empty()) {
        let idx = graph.edge_index(name.trim())?;
        if !top.contains(&idx) {
            top.push(idx);
        }
    }
    Ok(TermOrder::graded_for(&matrix, &top))
}

fn run_cycles(graph: &WeightedOrientedGraph, req: &Request) -> Result<String, Failure> {
    let cycles = graph.enumerate_cycles(&req.limits)?;
    if req.json {
        let list: Vec<serde_json::Value> = cycles
            .iter()
            .map(|c| {
                serde_json::json!({
                    "length": c.len(),
                    "edges": c.edges.iter().map(|&e| graph.edge_id(e)).collect::<Vec<_>>(),
                    "vertices": c.vertices.iter().map(|&v| graph.vertex_id(v)).collect::<Vec<_>>(),
                })
            })
            .collect();
        return Ok(render::json(&serde_json::json!({ "cycles": list })));
    }
    let mut out = format!("{} cycles\n", cycles.len());
    for c in &cycles {
        out.push_str(&format!("({}) {}\n", c.len(), c.describe(graph)));
    }
    Ok(out)
}

fn run_balance(graph: &WeightedOrientedGraph, req: &Request) -> Result<String, Failure> {
    let cycles = graph.enumerate_cycles(&req.limits)?;
    let labels = graph.edge_labels();
    let mut rows = Vec::new();
    for c in &cycles {
        let balanced = graph.is_balanced(c);
        let generator = if balanced {
            Some(balanced_cycle_generator(graph, c)?.render(&labels))
        } else {
            None
        };
        rows.push((c.describe(graph), balanced, generator));
    }
    if req.json {
        let list: Vec<serde_json::Value> = rows
            .iter()
            .map(|(edges, balanced, generator)| {
                serde_json::json!({
                    "edges": edges,
                    "balanced": balanced,
                    "generator": generator,
                })
            })
            .collect();
        return Ok(render::json(&serde_json::json!({ "cycles": list })));
    }
    let mut out = String::new();
    for (edges, balanced, generator) in &rows {
        let tag = if *balanced { "balanced" } else { "unbalanced" };
        match generator {
            Some(g) => out.push_str(&format!("{edges}: {tag}, generator {g}\n")),
            None => out.push_str(&format!("{edges}: {tag}\n")),
        }
    }
    Ok(out)
}

fn run_graver(graph: &WeightedOrientedGraph, req: &Request) -> Result<String, Failure> {
    let basis = graver_basis(&graph.incidence_matrix(), &req.limits)?;
    Ok(render::basis(graph, &basis, req.json))
}

fn run_circuits(graph: &WeightedOrientedGraph, req: &Request) -> Result<String, Failure> {
    let basis = circuits(&graph.incidence_matrix(), &req.limits)?;
    Ok(render::basis(graph, &basis, req.json))
}

fn run_groebner(graph: &WeightedOrientedGraph, req: &Request) -> Result<String, Failure> {
    let basis = reduced_groebner_basis(&graph.incidence_matrix(), &req.order, &req.limits)?;
    let labels = graph.edge_labels();
    let priority: Vec<String> = req
        .order
        .priority()
        .iter()
        .map(|&i| labels[i].clone())
        .collect();
    if req.json {
        let order_json = serde_json::json!({ "kind": "deglex", "priority": priority });
        let basis_json = serde_json::to_value(basis.to_json(&labels)).expect("serializable");
        return Ok(render::json(
            &serde_json::json!({ "order": order_json, "basis": basis_json }),
        ));
    }
    let mut out = format!("order: deglex {}\n", priority.join(" > "));
    for s in basis.render(&labels) {
        out.push_str(&s);
        out.push('\n');
    }
    Ok(out)
}

fn run_markov(graph: &WeightedOrientedGraph, req: &Request) -> Result<String, Failure> {
    let basis = universal_markov(&graph.incidence_matrix(), &req.limits)?;
    Ok(render::basis(graph, &basis, req.json))
}

fn run_indispensable(graph: &WeightedOrientedGraph, req: &Request) -> Result<String, Failure> {
    let basis = indispensables(&graph.incidence_matrix(), &req.limits)?;
    Ok(render::basis(graph, &basis, req.json))
}

fn run_robustness(graph: &WeightedOrientedGraph, req: &Request) -> Result<String, Failure> {
    let report = classify(graph, &req.limits)?;
    if req.json {
        let value = serde_json::to_value(report.to_json(graph)).expect("serializable");
        return Ok(render::json(&value));
    }
    Ok(render::robustness_with_witness(graph, &report))
}

fn run_shared_path_report(graph: &WeightedOrientedGraph, req: &Request) -> Result<String, Failure> {
    let decomposition = graph
        .shared_path_decomposition()?
        .ok_or(Error::NoSharedPathDecomposition)?;
    let report: SharedPathGraverReport =
        shared_path_two_balanced_graver(graph, &decomposition, &req.limits)?;
    if req.json {
        return Ok(render::json(&render::shared_path_json(graph, &report)));
    }
    Ok(render::shared_path_text(graph, &report))
}
