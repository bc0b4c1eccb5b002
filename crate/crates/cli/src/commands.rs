use std::str::FromStr;

use flowpart::analysis::{
    circuit_idealness, detect_flow_split_k5, detect_odd_flow_circuit, detect_odd_flow_star, fat_core_pipeline,
    terminal_path_clutter, tree_idealness,
};
use flowpart::cluster::{cc_exact, cycle_lp, is_flow_partitionable, WeightedInstance};
use flowpart::clutter::{blocker, flow_clutter, known_family, KnownFamily};
use flowpart::exactlp::{is_ideal, is_mni, is_weakly_mni, lehman_verify};
use flowpart::graph::{apply_ops, enumerate_flows, generate, Family, MinorOp};
use flowpart::io::{parse_clutter, parse_graph, parse_weighted_graph, write_clutter, write_graph};
use flowpart::{Clutter, Limits, Sign, SignedGraph};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use serde::Serialize;
use serde_json::json;

use crate::{ClutterInput, CliError, Command, DetectTarget, Experiment, GlobalOpts, GraphInput, Inputs, Output};

fn payload(v: impl Serialize) -> Result<Output, CliError> {
    Ok(Output::Payload(serde_json::to_value(v).expect("payload serializes")))
}

fn read_graph(input: &GraphInput, inputs: &mut Inputs) -> Result<SignedGraph, CliError> {
    Ok(parse_graph(&inputs.read_path(input.file.as_ref())?)?)
}

fn read_weighted(input: &GraphInput, inputs: &mut Inputs) -> Result<WeightedInstance, CliError> {
    Ok(parse_weighted_graph(&inputs.read_path(input.file.as_ref())?)?)
}

fn read_clutter(input: &ClutterInput, inputs: &mut Inputs) -> Result<Clutter, CliError> {
    match &input.known {
        Some(name) => {
            inputs.note(name.as_bytes());
            Ok(known_family(KnownFamily::from_str(name)?)?)
        }
        None => Ok(parse_clutter(&inputs.read_path(input.clutter.as_ref())?)?),
    }
}

/// The given clutter, or the flow clutter of the graph input.
fn clutter_or_flows(
    graph: &GraphInput,
    clutter: &ClutterInput,
    caps: &Limits,
    inputs: &mut Inputs,
) -> Result<Clutter, CliError> {
    if clutter.clutter.is_some() || clutter.known.is_some() {
        read_clutter(clutter, inputs)
    } else {
        Ok(flow_clutter(&read_graph(graph, inputs)?, caps.max_flows)?)
    }
}

fn parse_op(token: &str) -> Result<MinorOp, CliError> {
    let bad = || CliError::Usage(format!("bad minor operation {token:?}; use d<edge> or c<edge>"));
    let t = token.trim();
    let (kind, id) = t.split_at(t.find(|c: char| c.is_ascii_digit()).ok_or_else(bad)?);
    let id: u32 = id.parse().map_err(|_| bad())?;
    match kind.trim_end_matches([':', '=']) {
        "d" | "del" | "delete" => Ok(MinorOp::Delete(id)),
        "c" | "con" | "contract" => Ok(MinorOp::Contract(id)),
        _ => Err(bad()),
    }
}

pub(crate) fn run(cmd: &Command, opts: &GlobalOpts, caps: &Limits, inputs: &mut Inputs) -> Result<Output, CliError> {
    match cmd {
        Command::Flows(g) => {
            let g = read_graph(g, inputs)?;
            let flows = enumerate_flows(&g, caps.max_flows)?;
            payload(json!({ "count": flows.len(), "flows": flows }))
        }
        Command::Balance(g) => {
            let g = read_graph(g, inputs)?;
            payload(json!({
                "balanced": g.is_balanced(),
                "weakly_balanced": g.is_weakly_balanced(),
                "positive_components": g.positive_components(),
            }))
        }
        Command::Solve(g) => {
            let inst = read_weighted(g, inputs)?;
            let exact = cc_exact(&inst, caps)?;
            let lp = cycle_lp(&inst, caps)?;
            payload(json!({
                "value": exact.value,
                "partition": exact.partition,
                "multicut": exact.multicut,
                "lp_value": exact.lp_value,
                "active_flows": lp.active_flows,
                "gap": exact.gap,
                "nodes": exact.nodes,
            }))
        }
        Command::Lp(g) => payload(cycle_lp(&read_weighted(g, inputs)?, caps)?),
        Command::Partitionable(g) => {
            let v = is_flow_partitionable(&read_graph(g, inputs)?, caps)?;
            payload(json!({ "partitionable": v.ideal, "fractional_vertex": v.fractional_vertex }))
        }
        Command::Ideal { graph, clutter } => payload(is_ideal(&clutter_or_flows(graph, clutter, caps, inputs)?, caps)?),
        Command::Mni { graph, clutter } => {
            let c = clutter_or_flows(graph, clutter, caps, inputs)?;
            payload(json!({ "mni": is_mni(&c, caps)? }))
        }
        Command::WeaklyMni(g) => payload(is_weakly_mni(&read_graph(g, inputs)?, caps)?),
        Command::Lehman(c) => payload(lehman_verify(&read_clutter(c, inputs)?, caps)?),
        Command::Blocker(c) => {
            let b = blocker(&read_clutter(c, inputs)?, caps.max_blocker_ground)?;
            payload(json!({ "blocker": b, "text": write_clutter(&b) }))
        }
        Command::Minor { graph, ops } => {
            let g = read_graph(graph, inputs)?;
            let ops: Vec<MinorOp> = ops.iter().map(|t| parse_op(t)).collect::<Result<_, _>>()?;
            let h = apply_ops(&g, &ops)?;
            payload(json!({ "operations": ops, "graph": h, "text": write_graph(&h) }))
        }
        Command::Detect { target, graph } => {
            let g = read_graph(graph, inputs)?;
            let w = match target {
                DetectTarget::Star => detect_odd_flow_star(&g, caps)?,
                DetectTarget::Circuit => detect_odd_flow_circuit(&g, caps)?,
                DetectTarget::SplitK5 => detect_flow_split_k5(&g, caps)?,
            };
            payload(json!({ "found": w.is_some(), "witness": w }))
        }
        Command::Gen { family } => {
            let name = family.join("-");
            if let Ok(f) = Family::from_str(&name) {
                return Ok(Output::Text(write_graph(&generate(f)?)));
            }
            let k = KnownFamily::from_str(&name)
                .map_err(|_| CliError::Usage(format!("unknown graph or clutter family {name:?}")))?;
            Ok(Output::Text(write_clutter(&known_family(k)?)))
        }
        Command::TerminalPaths(g) => {
            let p = terminal_path_clutter(&read_graph(g, inputs)?, caps)?;
            let core = if p.is_degenerate() { None } else { Some(p.core()?) };
            payload(json!({ "clutter": p, "core": core, "text": write_clutter(&p) }))
        }
        Command::Fatcore(g) => payload(fat_core_pipeline(&read_graph(g, inputs)?, caps)?),
        Command::Tree(g) => payload(tree_idealness(&read_graph(g, inputs)?, caps)?),
        Command::Circuit(g) => payload(circuit_idealness(&read_graph(g, inputs)?, caps)?),
        Command::Experiment { which: Experiment::Planar, count } => {
            inputs.note(format!("planar {count} {}", opts.seed).as_bytes());
            planar_experiment(*count, opts.seed, caps)
        }
    }
}

/// Random signed subgraphs of a triangulated 3x3 grid (all planar). Reports
/// non-partitionable ones without an odd flow-star strong minor, which would
/// answer the planar question negatively.
fn planar_experiment(count: usize, seed: u64, caps: &Limits) -> Result<Output, CliError> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut grid = Vec::new();
    for r in 0..3 {
        for c in 0..3 {
            let v = 3 * r + c;
            if c < 2 {
                grid.push((v, v + 1));
            }
            if r < 2 {
                grid.push((v, v + 3));
            }
            if c < 2 && r < 2 {
                grid.push((v, v + 4));
            }
        }
    }
    let (mut non_partitionable, mut with_star) = (0, 0);
    let mut open = Vec::new();
    for _ in 0..count {
        let mut edges = grid.clone();
        edges.shuffle(&mut rng);
        edges.truncate(rng.gen_range(6..=14));
        let signed: Vec<(usize, usize, Sign)> = edges
            .into_iter()
            .map(|(u, v)| (u, v, if rng.gen_bool(0.5) { Sign::Positive } else { Sign::Negative }))
            .collect();
        let g = SignedGraph::from_edges(9, &signed)?;
        if is_flow_partitionable(&g, caps)?.ideal {
            continue;
        }
        non_partitionable += 1;
        if detect_odd_flow_star(&g, caps)?.is_some() {
            with_star += 1;
        } else {
            open.push(write_graph(&g));
        }
    }
    payload(json!({
        "count": count,
        "seed": seed,
        "non_partitionable": non_partitionable,
        "with_odd_flow_star": with_star,
        "without_odd_flow_star": open,
    }))
}
