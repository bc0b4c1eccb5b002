use serde::Serialize;

use super::{EdgeId, SignedGraph};
use crate::error::{Error, Result};

/// A circuit with exactly one negative edge.
///
/// Ordering is canonical: by negative edge id, then lexicographically by the
/// sorted positive edge ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Flow {
    pub negative_edge: EdgeId,
    /// Sorted ids of the positive path closing the circuit.
    pub positive_edges: Vec<EdgeId>,
}

impl Flow {
    /// All member edge ids, sorted.
    pub fn edge_ids(&self) -> Vec<EdgeId> {
        let mut ids = self.positive_edges.clone();
        ids.push(self.negative_edge);
        ids.sort_unstable();
        ids
    }

    pub fn len(&self) -> usize {
        self.positive_edges.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Every flow of `g`, each once, in canonical order.
///
/// A flow is a negative edge `uv` plus a simple positive `u`-`v` path, so the
/// enumeration runs one depth-first path search per negative edge.
pub fn enumerate_flows(g: &SignedGraph, max_flows: usize) -> Result<Vec<Flow>> {
    let adj = g.adjacency(|e| e.is_positive());
    let mut out = Vec::new();
    let mut on_path = vec![false; g.vertex_count()];
    let mut path: Vec<EdgeId> = Vec::new();
    for neg in g.negative_edges() {
        let start = out.len();
        on_path[neg.u] = true;
        dfs_paths(
            g,
            &adj,
            neg.u,
            neg.v,
            &mut on_path,
            &mut path,
            &mut |p: &[EdgeId]| {
                let mut positive_edges = p.to_vec();
                positive_edges.sort_unstable();
                out.push(Flow {
                    negative_edge: neg.id,
                    positive_edges,
                });
                if out.len() > max_flows {
                    Err(Error::size_limit("flow count", out.len(), max_flows))
                } else {
                    Ok(())
                }
            },
        )?;
        on_path[neg.u] = false;
        out[start..].sort();
    }
    Ok(out)
}

fn dfs_paths(
    g: &SignedGraph,
    adj: &[Vec<(usize, usize)>],
    at: usize,
    target: usize,
    on_path: &mut [bool],
    path: &mut Vec<EdgeId>,
    emit: &mut impl FnMut(&[EdgeId]) -> Result<()>,
) -> Result<()> {
    for &(next, ei) in &adj[at] {
        if next == target {
            path.push(g.edges()[ei].id);
            emit(path)?;
            path.pop();
            continue;
        }
        if on_path[next] {
            continue;
        }
        on_path[next] = true;
        path.push(g.edges()[ei].id);
        dfs_paths(g, adj, next, target, on_path, path, emit)?;
        path.pop();
        on_path[next] = false;
    }
    Ok(())
}
