use std::collections::{BTreeMap, HashSet, VecDeque};

use serde::Serialize;

use super::{EdgeId, Sign, SignedGraph, UnionFind};
use crate::error::{Error, Result};
use crate::limits::Limits;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "op", content = "edge", rename_all = "lowercase")]
pub enum MinorOp {
    Delete(EdgeId),
    Contract(EdgeId),
}

/// A replayable strong-minor certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinorWitness {
    /// Deletions first, then contractions.
    pub operations: Vec<MinorOp>,
    /// Surviving input edge id -> target edge id.
    pub mapping: BTreeMap<EdgeId, EdgeId>,
    /// For every non-isolated target vertex, the input vertices merged into it.
    pub branch_sets: BTreeMap<usize, Vec<usize>>,
}

pub fn apply_ops(g: &SignedGraph, ops: &[MinorOp]) -> Result<SignedGraph> {
    let mut cur = g.clone();
    for op in ops {
        cur = match *op {
            MinorOp::Delete(e) => cur.delete_edge(e)?,
            MinorOp::Contract(e) => cur.contract_positive(e)?,
        };
    }
    Ok(cur)
}

/// Searches for a sequence of deletions and positive contractions turning
/// `g` into a graph sign-isomorphic to `h` (isolated vertices ignored).
///
/// Deletion and contraction commute, so it suffices to pick a partition of
/// the vertices into parts connected by positive edges (the contracted
/// forest), delete every other edge inside parts, and look for `h` as a
/// subgraph of the quotient. Partitions are explored breadth-first by number
/// of merges and memoized in canonical form; no intermediate state ever has a
/// negative self-loop. `Ok(None)` is a definitive "not a strong minor".
pub fn strong_minor_reachable(
    g: &SignedGraph,
    h: &SignedGraph,
    limits: &Limits,
) -> Result<Option<MinorWitness>> {
    let hv = h.non_isolated_vertices();
    if h.edge_count() == 0 {
        return Ok(Some(MinorWitness {
            operations: g.edge_ids().into_iter().map(MinorOp::Delete).collect(),
            mapping: BTreeMap::new(),
            branch_sets: BTreeMap::new(),
        }));
    }
    if g.positive_count() < h.positive_count()
        || g.negative_count() < h.negative_count()
        || g.non_isolated_vertices().len() < hv.len()
    {
        return Ok(None);
    }
    let target = Target::new(h, &hv);
    let n = g.vertex_count();
    let start: Vec<u16> = (0..n as u16).collect();
    let mut seen: HashSet<Vec<u16>> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([(start, n)]);
    let mut explored = 0usize;
    while let Some((labels, parts)) = queue.pop_front() {
        explored += 1;
        if explored > limits.max_minor_states {
            return Err(Error::size_limit(
                "strong-minor search states",
                explored,
                limits.max_minor_states,
            ));
        }
        if explored.is_multiple_of(256) {
            limits.check_deadline()?;
        }
        if let Some(phi) = target.embed(g, &labels, parts) {
            return Ok(Some(build_witness(g, h, &hv, &labels, &phi)));
        }
        if parts == hv.len() {
            continue;
        }
        for e in g.positive_edges() {
            let (a, b) = (labels[e.u], labels[e.v]);
            if a == b {
                continue;
            }
            let merged = canonical_merge(&labels, a, b);
            if seen.insert(merged.clone()) {
                queue.push_back((merged, parts - 1));
            }
        }
    }
    Ok(None)
}

fn canonical_merge(labels: &[u16], a: u16, b: u16) -> Vec<u16> {
    let (lo, hi) = (a.min(b), a.max(b));
    let mut remap: Vec<Option<u16>> = vec![None; labels.len()];
    let mut next = 0u16;
    labels
        .iter()
        .map(|&l| {
            let l = if l == hi { lo } else { l } as usize;
            *remap[l].get_or_insert_with(|| {
                next += 1;
                next - 1
            })
        })
        .collect()
}

/// Pair multiplicities of the target graph over its non-isolated vertices.
struct Target {
    /// (positive, negative) multiplicity between target vertex indices.
    counts: Vec<Vec<(u16, u16)>>,
    degrees: Vec<(u16, u16)>,
}

impl Target {
    fn new(h: &SignedGraph, hv: &[usize]) -> Self {
        let mut index = vec![usize::MAX; h.vertex_count()];
        for (i, &v) in hv.iter().enumerate() {
            index[v] = i;
        }
        let p = hv.len();
        let mut counts = vec![vec![(0u16, 0u16); p]; p];
        let mut degrees = vec![(0u16, 0u16); p];
        for e in h.edges() {
            let (a, b) = (index[e.u], index[e.v]);
            for (x, y) in [(a, b), (b, a)] {
                bump(&mut counts[x][y], e.sign);
            }
            bump(&mut degrees[a], e.sign);
            bump(&mut degrees[b], e.sign);
        }
        Target { counts, degrees }
    }

    /// Injective map target vertex -> quotient part such that every target
    /// edge class fits into the quotient's multiplicities.
    fn embed(&self, g: &SignedGraph, labels: &[u16], parts: usize) -> Option<Vec<usize>> {
        let p = self.degrees.len();
        if parts < p {
            return None;
        }
        let mut q = vec![vec![(0u16, 0u16); parts]; parts];
        let mut qdeg = vec![(0u16, 0u16); parts];
        for e in g.edges() {
            let (a, b) = (labels[e.u] as usize, labels[e.v] as usize);
            if a == b {
                continue;
            }
            bump(&mut q[a][b], e.sign);
            bump(&mut q[b][a], e.sign);
            bump(&mut qdeg[a], e.sign);
            bump(&mut qdeg[b], e.sign);
        }
        let mut phi = Vec::with_capacity(p);
        let mut used = vec![false; parts];
        if self.extend(&q, &qdeg, &mut phi, &mut used) {
            Some(phi)
        } else {
            None
        }
    }

    fn extend(
        &self,
        q: &[Vec<(u16, u16)>],
        qdeg: &[(u16, u16)],
        phi: &mut Vec<usize>,
        used: &mut [bool],
    ) -> bool {
        let a = phi.len();
        if a == self.degrees.len() {
            return true;
        }
        let need = self.degrees[a];
        for x in 0..q.len() {
            if used[x] || qdeg[x].0 < need.0 || qdeg[x].1 < need.1 {
                continue;
            }
            let fits = phi.iter().enumerate().all(|(b, &y)| {
                let (hp, hn) = self.counts[a][b];
                let (gp, gn) = q[x][y];
                gp >= hp && gn >= hn
            });
            if !fits {
                continue;
            }
            phi.push(x);
            used[x] = true;
            if self.extend(q, qdeg, phi, used) {
                return true;
            }
            phi.pop();
            used[x] = false;
        }
        false
    }
}

fn bump(c: &mut (u16, u16), s: Sign) {
    match s {
        Sign::Positive => c.0 += 1,
        Sign::Negative => c.1 += 1,
    }
}

fn build_witness(
    g: &SignedGraph,
    h: &SignedGraph,
    hv: &[usize],
    labels: &[u16],
    phi: &[usize],
) -> MinorWitness {
    let part_of_target: BTreeMap<usize, usize> = hv.iter().copied().zip(phi.iter().copied()).collect();
    let used_parts: HashSet<usize> = phi.iter().copied().collect();

    // spanning forest of every used part, smallest edge ids first
    let mut uf = UnionFind::new(g.vertex_count());
    let mut contract = Vec::new();
    for e in g.positive_edges() {
        let part = labels[e.u] as usize;
        if part == labels[e.v] as usize && used_parts.contains(&part) && uf.union(e.u, e.v) {
            contract.push(e.id);
        }
    }

    let mut taken: HashSet<EdgeId> = HashSet::new();
    let mut mapping = BTreeMap::new();
    for he in h.edges() {
        let (pa, pb) = (part_of_target[&he.u], part_of_target[&he.v]);
        let ge = g
            .edges()
            .iter()
            .find(|e| {
                e.sign == he.sign && !taken.contains(&e.id) && {
                    let (a, b) = (labels[e.u] as usize, labels[e.v] as usize);
                    (a, b) == (pa, pb) || (a, b) == (pb, pa)
                }
            })
            .expect("embedding guarantees a free edge");
        taken.insert(ge.id);
        mapping.insert(ge.id, he.id);
    }

    let contract_set: HashSet<EdgeId> = contract.iter().copied().collect();
    let mut operations: Vec<MinorOp> = g
        .edges()
        .iter()
        .filter(|e| !taken.contains(&e.id) && !contract_set.contains(&e.id))
        .map(|e| MinorOp::Delete(e.id))
        .collect();
    operations.extend(contract.iter().map(|&e| MinorOp::Contract(e)));

    let branch_sets = hv
        .iter()
        .map(|&t| {
            let part = part_of_target[&t];
            let members = (0..g.vertex_count()).filter(|&v| labels[v] as usize == part).collect();
            (t, members)
        })
        .collect();
    MinorWitness {
        operations,
        mapping,
        branch_sets,
    }
}
