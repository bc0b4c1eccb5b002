//! Signed multigraphs, their flows (circuits with exactly one negative
//! edge) and the positive-contraction / deletion minor operations.

mod flows;
mod generate;
mod iso;
mod minor;

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use flows::{enumerate_flows, Flow};
pub use generate::{generate, Family, SPLIT_K5_F};
pub use iso::{is_sign_isomorphic, sign_isomorphism, verify_edge_mapping};
pub use minor::{apply_ops, strong_minor_reachable, MinorOp, MinorWitness};

/// Stable edge identifier. Edge ids double as clutter element ids.
pub type EdgeId = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn symbol(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub id: EdgeId,
    pub u: usize,
    pub v: usize,
    pub sign: Sign,
}

impl Edge {
    pub fn is_positive(&self) -> bool {
        self.sign == Sign::Positive
    }

    pub fn is_negative(&self) -> bool {
        self.sign == Sign::Negative
    }

    /// The endpoint opposite to `w`.
    pub fn other(&self, w: usize) -> usize {
        if self.u == w {
            self.v
        } else {
            self.u
        }
    }
}

/// A signed multigraph `G = (V, E+, E-)` on vertices `0..vertex_count`.
///
/// Edges are kept sorted by id. Self-loops are rejected; parallel edges of
/// any sign combination are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct SignedGraph {
    vertex_count: usize,
    edges: Vec<Edge>,
}

impl SignedGraph {
    pub fn new(vertex_count: usize) -> Self {
        SignedGraph {
            vertex_count,
            edges: Vec::new(),
        }
    }

    /// Builds a graph whose edge ids follow the order of `edges`.
    pub fn from_edges(vertex_count: usize, edges: &[(usize, usize, Sign)]) -> Result<Self> {
        let mut g = SignedGraph::new(vertex_count);
        for &(u, v, s) in edges {
            g.add_edge(u, v, s)?;
        }
        Ok(g)
    }

    /// Builds a graph from edges carrying explicit ids.
    pub fn from_edge_list(vertex_count: usize, mut edges: Vec<Edge>) -> Result<Self> {
        edges.sort_by_key(|e| e.id);
        for w in edges.windows(2) {
            if w[0].id == w[1].id {
                return Err(Error::InvalidParameter(format!(
                    "duplicate edge id {}",
                    w[0].id
                )));
            }
        }
        for e in &edges {
            check_endpoints(vertex_count, e.u, e.v)?;
        }
        Ok(SignedGraph {
            vertex_count,
            edges,
        })
    }

    /// Appends an edge with id one larger than the current maximum.
    pub fn add_edge(&mut self, u: usize, v: usize, sign: Sign) -> Result<EdgeId> {
        check_endpoints(self.vertex_count, u, v)?;
        let id = self.edges.last().map_or(0, |e| e.id + 1);
        self.edges.push(Edge { id, u, v, sign });
        Ok(id)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_ids(&self) -> Vec<EdgeId> {
        self.edges.iter().map(|e| e.id).collect()
    }

    pub fn edge(&self, id: EdgeId) -> Option<&Edge> {
        self.edges
            .binary_search_by_key(&id, |e| e.id)
            .ok()
            .map(|i| &self.edges[i])
    }

    pub fn positive_edges(&self) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(|e| e.is_positive())
    }

    pub fn negative_edges(&self) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(|e| e.is_negative())
    }

    pub fn positive_count(&self) -> usize {
        self.positive_edges().count()
    }

    pub fn negative_count(&self) -> usize {
        self.negative_edges().count()
    }

    pub fn degree(&self, w: usize) -> usize {
        self.edges.iter().filter(|e| e.u == w || e.v == w).count()
    }

    /// Adjacency lists `(neighbour, edge index)` restricted to edges matching
    /// `keep`, in increasing edge id order.
    pub(crate) fn adjacency(&self, keep: impl Fn(&Edge) -> bool) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for (i, e) in self.edges.iter().enumerate() {
            if keep(e) {
                adj[e.u].push((e.v, i));
                adj[e.v].push((e.u, i));
            }
        }
        adj
    }

    /// Connected component label of every vertex in `G+`.
    pub fn positive_components(&self) -> Vec<usize> {
        let mut uf = UnionFind::new(self.vertex_count);
        for e in self.positive_edges() {
            uf.union(e.u, e.v);
        }
        (0..self.vertex_count).map(|v| uf.find(v)).collect()
    }

    /// True iff no circuit has an odd number of negative edges.
    pub fn is_balanced(&self) -> bool {
        // Two-colouring where negative edges flip the colour.
        let adj = self.adjacency(|_| true);
        let mut color: Vec<Option<bool>> = vec![None; self.vertex_count];
        for root in 0..self.vertex_count {
            if color[root].is_some() {
                continue;
            }
            color[root] = Some(false);
            let mut queue = VecDeque::from([root]);
            while let Some(w) = queue.pop_front() {
                let cw = color[w].unwrap();
                for &(x, ei) in &adj[w] {
                    let want = cw ^ self.edges[ei].is_negative();
                    match color[x] {
                        None => {
                            color[x] = Some(want);
                            queue.push_back(x);
                        }
                        Some(cx) if cx != want => return false,
                        Some(_) => {}
                    }
                }
            }
        }
        true
    }

    /// True iff no circuit has exactly one negative edge.
    pub fn is_weakly_balanced(&self) -> bool {
        let comp = self.positive_components();
        self.negative_edges().all(|e| comp[e.u] != comp[e.v])
    }

    pub fn delete_edge(&self, id: EdgeId) -> Result<SignedGraph> {
        let idx = self
            .edges
            .binary_search_by_key(&id, |e| e.id)
            .map_err(|_| Error::UnknownEdge(id))?;
        let mut g = self.clone();
        g.edges.remove(idx);
        Ok(g)
    }

    /// Contracts positive edge `id`, merging its endpoints into the smaller
    /// vertex index and shifting higher indices down by one. Positive edges
    /// that become self-loops are dropped; negative ones are an error.
    pub fn contract_positive(&self, id: EdgeId) -> Result<SignedGraph> {
        let e = *self.edge(id).ok_or(Error::UnknownEdge(id))?;
        if e.is_negative() {
            return Err(Error::NegativeContraction(id));
        }
        let keep = e.u.min(e.v);
        let gone = e.u.max(e.v);
        let relabel = |w: usize| {
            let w = if w == gone { keep } else { w };
            if w > gone {
                w - 1
            } else {
                w
            }
        };
        let mut edges = Vec::with_capacity(self.edges.len());
        let mut bad = Vec::new();
        for f in &self.edges {
            if f.id == id {
                continue;
            }
            let (u, v) = (relabel(f.u), relabel(f.v));
            if u == v {
                if f.is_negative() {
                    bad.push(f.id);
                }
                continue;
            }
            edges.push(Edge { u, v, ..*f });
        }
        if !bad.is_empty() {
            return Err(Error::NegativeSelfLoop(bad));
        }
        Ok(SignedGraph {
            vertex_count: self.vertex_count - 1,
            edges,
        })
    }

    /// Vertices incident to at least one edge.
    pub fn non_isolated_vertices(&self) -> Vec<usize> {
        let mut seen = vec![false; self.vertex_count];
        for e in &self.edges {
            seen[e.u] = true;
            seen[e.v] = true;
        }
        (0..self.vertex_count).filter(|&v| seen[v]).collect()
    }

    /// True iff `G+` is a spanning tree on all vertices.
    pub fn positive_is_tree(&self) -> bool {
        if self.vertex_count == 0 || self.positive_count() + 1 != self.vertex_count {
            return false;
        }
        let comp = self.positive_components();
        comp.iter().all(|&c| c == comp[0])
    }

    /// True iff the positive edges form one simple circuit (vertices with no
    /// positive edge are ignored).
    pub fn positive_is_circuit(&self) -> bool {
        let pos: Vec<&Edge> = self.positive_edges().collect();
        if pos.len() < 2 {
            return false;
        }
        let mut deg = vec![0usize; self.vertex_count];
        for e in &pos {
            deg[e.u] += 1;
            deg[e.v] += 1;
        }
        if deg.iter().any(|&d| d != 0 && d != 2) {
            return false;
        }
        let comp = self.positive_components();
        let first = pos[0].u;
        (0..self.vertex_count).all(|v| deg[v] == 0 || comp[v] == comp[first])
    }

    pub fn to_multicut_instance(&self) -> MulticutInstance {
        let mut inst = MulticutInstance::default();
        for e in &self.edges {
            match e.sign {
                Sign::Positive => inst.supply_edges.push((e.u, e.v, e.id)),
                Sign::Negative => inst.terminal_pairs.push((e.u, e.v, e.id)),
            }
        }
        inst
    }
}

fn check_endpoints(vertex_count: usize, u: usize, v: usize) -> Result<()> {
    for w in [u, v] {
        if w >= vertex_count {
            return Err(Error::VertexOutOfRange {
                vertex: w,
                vertex_count,
            });
        }
    }
    if u == v {
        return Err(Error::SelfLoop(u));
    }
    Ok(())
}

/// Minimum multicut view of a signed graph: positive edges are supply edges
/// and every negative edge becomes a terminal pair.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct MulticutInstance {
    pub supply_edges: Vec<(usize, usize, EdgeId)>,
    pub terminal_pairs: Vec<(usize, usize, EdgeId)>,
}

#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.parent[hi] = lo;
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Sign::*;

    fn triangle(signs: [Sign; 3]) -> SignedGraph {
        SignedGraph::from_edges(3, &[(0, 1, signs[0]), (1, 2, signs[1]), (0, 2, signs[2])]).unwrap()
    }

    #[test]
    fn balance_on_triangles() {
        assert!(!triangle([Positive, Positive, Negative]).is_balanced());
        assert!(triangle([Positive, Negative, Negative]).is_balanced());
        assert!(triangle([Positive; 3]).is_balanced());
    }

    #[test]
    fn weak_balance_on_triangles() {
        assert!(!triangle([Positive, Positive, Negative]).is_weakly_balanced());
        assert!(triangle([Positive, Negative, Negative]).is_weakly_balanced());
        let g = SignedGraph::from_edges(
            4,
            &[(0, 1, Positive), (2, 3, Positive), (0, 2, Negative), (1, 3, Negative)],
        )
        .unwrap();
        assert!(g.is_weakly_balanced());
    }

    #[test]
    fn rejects_self_loops() {
        assert_eq!(
            SignedGraph::from_edges(2, &[(1, 1, Positive)]),
            Err(Error::SelfLoop(1))
        );
    }

    #[test]
    fn contract_path() {
        let g = SignedGraph::from_edges(3, &[(0, 1, Positive), (1, 2, Positive)]).unwrap();
        let h = g.contract_positive(0).unwrap();
        assert_eq!(h.vertex_count(), 2);
        assert_eq!(h.edges(), &[Edge { id: 1, u: 0, v: 1, sign: Positive }]);
    }

    #[test]
    fn contract_reports_negative_loop() {
        let g = SignedGraph::from_edges(
            3,
            &[(0, 1, Positive), (0, 1, Negative), (1, 2, Positive), (0, 2, Positive)],
        )
        .unwrap();
        assert_eq!(g.contract_positive(0), Err(Error::NegativeSelfLoop(vec![1])));
        assert_eq!(g.contract_positive(1), Err(Error::NegativeContraction(1)));
        assert_eq!(g.contract_positive(9), Err(Error::UnknownEdge(9)));
    }

    #[test]
    fn contract_flow_star_leaf_edge() {
        let s3 = generate(Family::FlowStar(3)).unwrap();
        let h = s3.contract_positive(0).unwrap();
        assert_eq!(h.vertex_count(), 3);
        assert_eq!(h.positive_count(), 2);
        assert_eq!(h.negative_count(), 3);
        // ids survive
        assert_eq!(h.edge_ids(), vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn delete_edges() {
        let k2 = SignedGraph::from_edges(2, &[(0, 1, Positive)]).unwrap();
        let h = k2.delete_edge(0).unwrap();
        assert_eq!(h.vertex_count(), 2);
        assert_eq!(h.edge_count(), 0);
        assert_eq!(k2.delete_edge(3), Err(Error::UnknownEdge(3)));
    }

    #[test]
    fn multicut_instance_split() {
        let s3 = generate(Family::FlowStar(3)).unwrap();
        let inst = s3.to_multicut_instance();
        assert_eq!(inst.supply_edges.len(), 3);
        assert_eq!(inst.terminal_pairs.len(), 3);
        let pos = triangle([Positive; 3]).to_multicut_instance();
        assert!(pos.terminal_pairs.is_empty());
        let octagon = generate(Family::ChordedOctagon).unwrap().to_multicut_instance();
        assert_eq!((octagon.supply_edges.len(), octagon.terminal_pairs.len()), (8, 8));
    }

    #[test]
    fn positive_shape_predicates() {
        assert!(generate(Family::FlowStar(5)).unwrap().positive_is_tree());
        assert!(generate(Family::FlowCircuit(5)).unwrap().positive_is_circuit());
        assert!(!generate(Family::FlowSplitK5).unwrap().positive_is_circuit());
    }
}
