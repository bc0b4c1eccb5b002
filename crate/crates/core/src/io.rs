//! Plain-text graph and clutter formats.
//!
//! Graph lines are `u v s [w]` with `s` one of `+`/`-` and an optional
//! weight `p/q`; edge ids follow line order. A `# vertices N` comment keeps
//! trailing isolated vertices; any other `#` text is ignored. Clutter files
//! start with `ground: e1 e2 ...` followed by one member per line; `{}` is
//! the empty member.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::cluster::WeightedInstance;
use crate::clutter::{Clutter, Elem};
use crate::error::{Error, Result};
use crate::exactlp::Rat;
use crate::graph::{Sign, SignedGraph};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn vertices_directive(comment: &str) -> Option<&str> {
    comment.trim().strip_prefix("vertices").map(str::trim)
}

pub fn parse_weighted_graph(text: &str) -> Result<WeightedInstance> {
    let mut declared: Option<usize> = None;
    let mut edges = Vec::new();
    let mut weights = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let (body, comment) = match raw.split_once('#') {
            Some((b, c)) => (b, Some(c)),
            None => (raw, None),
        };
        if let Some(n) = comment.and_then(vertices_directive) {
            declared = Some(n.parse().map_err(|_| parse_err(line_no, format!("bad vertex count {n:?}")))?);
        }
        let tokens: Vec<&str> = body.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        if !(3..=4).contains(&tokens.len()) {
            return Err(parse_err(line_no, "expected `u v s` or `u v s w`"));
        }
        let endpoint = |t: &str| -> Result<usize> {
            t.parse().map_err(|_| parse_err(line_no, format!("bad vertex {t:?}")))
        };
        let (u, v) = (endpoint(tokens[0])?, endpoint(tokens[1])?);
        let sign = match tokens[2] {
            "+" => Sign::Positive,
            "-" => Sign::Negative,
            s => return Err(parse_err(line_no, format!("bad sign {s:?}"))),
        };
        if u == v {
            return Err(parse_err(line_no, format!("self-loop at vertex {u}")));
        }
        let w = match tokens.get(3) {
            Some(t) => t
                .parse::<Rat>()
                .map_err(|_| parse_err(line_no, format!("bad weight {t:?}")))?,
            None => Rat::one(),
        };
        if w.is_negative() {
            return Err(parse_err(line_no, "weights must be nonnegative"));
        }
        edges.push((u, v, sign));
        weights.push(w);
    }
    let needed = edges.iter().map(|&(u, v, _)| u.max(v) + 1).max().unwrap_or(0);
    let n = match declared {
        Some(d) if d < needed => {
            return Err(parse_err(0, format!("declared {d} vertices but an edge uses vertex {}", needed - 1)))
        }
        Some(d) => d,
        None => needed,
    };
    let graph = SignedGraph::from_edges(n, &edges)?;
    let w: BTreeMap<_, _> = graph.edge_ids().into_iter().zip(weights).collect();
    WeightedInstance::new(graph, w)
}

pub fn parse_graph(text: &str) -> Result<SignedGraph> {
    Ok(parse_weighted_graph(text)?.graph().clone())
}

/// Writes edges in id order. Ids must be `0..|E|` for the text to parse
/// back to the same graph.
pub fn write_graph(g: &SignedGraph) -> String {
    write_edges(g, |_| None)
}

/// Like [`write_graph`], adding the weight column when some weight is not 1.
pub fn write_weighted_graph(inst: &WeightedInstance) -> String {
    let unit = inst.weights().values().all(Rat::is_one);
    write_edges(inst.graph(), |e| (!unit).then(|| inst.weight(e).to_string()))
}

fn write_edges(g: &SignedGraph, weight: impl Fn(u32) -> Option<String>) -> String {
    let mut out = format!("# vertices {}\n", g.vertex_count());
    for e in g.edges() {
        write!(out, "{} {} {}", e.u, e.v, e.sign.symbol()).unwrap();
        if let Some(w) = weight(e.id) {
            write!(out, " {w}").unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn parse_clutter(text: &str) -> Result<Clutter> {
    let mut ground: Option<Vec<Elem>> = None;
    let mut members = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let elems = |s: &str| -> Result<Vec<Elem>> {
            s.split_whitespace()
                .map(|t| t.parse().map_err(|_| parse_err(line_no, format!("bad element {t:?}"))))
                .collect()
        };
        match &ground {
            None => {
                let rest = body
                    .strip_prefix("ground:")
                    .ok_or_else(|| parse_err(line_no, "first line must be `ground: ...`"))?;
                ground = Some(elems(rest)?);
            }
            Some(_) if body == "{}" => members.push(Vec::new()),
            Some(_) => members.push(elems(body)?),
        }
    }
    let ground = ground.ok_or_else(|| parse_err(0, "missing `ground:` line"))?;
    if members == [Vec::<Elem>::new()] {
        // validate the ground through the strict constructor first
        Clutter::new(ground.iter().copied(), Vec::new())?;
        return Ok(Clutter::with_empty_member(ground));
    }
    Clutter::new(ground, members)
}

pub fn write_clutter(c: &Clutter) -> String {
    let join = |v: &[Elem]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
    let mut out = format!("ground: {}\n", join(c.ground()));
    for m in c.members() {
        out.push_str(if m.is_empty() { "{}" } else { "" });
        out.push_str(&join(m));
        out.push('\n');
    }
    out
}
