//! Correlation clustering on signed graphs: partitions and multicuts, an
//! exhaustive oracle, the cycle relaxation solved by cutting planes, an
//! exact branch-and-bound and the flow-partitionability test.

mod exact;
mod lp;
mod simplex;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::clutter::flow_clutter;
use crate::error::{Error, Result};
use crate::exactlp::{is_ideal, IdealVerdict, Rat};
use crate::graph::{EdgeId, SignedGraph, UnionFind};
use crate::limits::Limits;

pub use exact::{cc_exact, ExactSolution};
pub use lp::{cycle_lp, separate, CycleLpSolution};

/// Vertex -> block assignment with block ids numbered by first occurrence
/// (a restricted growth string).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Relabels arbitrary block labels to first-occurrence order.
    pub fn from_labels(labels: &[usize]) -> Partition {
        let mut map = BTreeMap::new();
        Partition(
            labels
                .iter()
                .map(|l| {
                    let next = map.len();
                    *map.entry(*l).or_insert(next)
                })
                .collect(),
        )
    }

    pub fn single_block(n: usize) -> Partition {
        Partition(vec![0; n])
    }

    pub fn singletons(n: usize) -> Partition {
        Partition((0..n).collect())
    }

    pub fn block_of(&self, v: usize) -> usize {
        self.0[v]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.0
    }

    pub fn vertex_count(&self) -> usize {
        self.0.len()
    }

    pub fn block_count(&self) -> usize {
        self.0.iter().max().map_or(0, |m| m + 1)
    }

    /// Blocks as sorted vertex lists, in block id order.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.block_count()];
        for (v, &b) in self.0.iter().enumerate() {
            out[b].push(v);
        }
        out
    }
}

/// Edges running between different blocks of some partition.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct Multicut(Vec<EdgeId>);

impl Multicut {
    pub fn new(edges: impl IntoIterator<Item = EdgeId>) -> Multicut {
        let mut v: Vec<EdgeId> = edges.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Multicut(v)
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.0
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.0.binary_search(&e).is_ok()
    }
}

/// A signed graph with a nonnegative weight per edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightedInstance {
    graph: SignedGraph,
    weights: BTreeMap<EdgeId, Rat>,
}

impl WeightedInstance {
    pub fn new(graph: SignedGraph, weights: BTreeMap<EdgeId, Rat>) -> Result<Self> {
        let keys: Vec<EdgeId> = weights.keys().copied().collect();
        if keys != graph.edge_ids() {
            return Err(Error::IndexMismatch(format!(
                "weights given for {keys:?}, graph edges {:?}",
                graph.edge_ids()
            )));
        }
        if let Some((e, w)) = weights.iter().find(|(_, w)| w.is_negative()) {
            return Err(Error::InvalidParameter(format!("edge {e} has negative weight {w}")));
        }
        Ok(WeightedInstance { graph, weights })
    }

    pub fn unit(graph: SignedGraph) -> Self {
        let weights = graph.edge_ids().into_iter().map(|e| (e, Rat::one())).collect();
        WeightedInstance { graph, weights }
    }

    pub fn graph(&self) -> &SignedGraph {
        &self.graph
    }

    pub fn weights(&self) -> &BTreeMap<EdgeId, Rat> {
        &self.weights
    }

    pub fn weight(&self, e: EdgeId) -> &Rat {
        &self.weights[&e]
    }
}

fn check_partition(p: &Partition, g: &SignedGraph) -> Result<()> {
    if p.vertex_count() != g.vertex_count() {
        return Err(Error::IndexMismatch(format!(
            "partition covers {} vertices, graph has {}",
            p.vertex_count(),
            g.vertex_count()
        )));
    }
    Ok(())
}

pub fn multicut_of(p: &Partition, g: &SignedGraph) -> Result<Multicut> {
    check_partition(p, g)?;
    Ok(Multicut::new(
        g.edges().iter().filter(|e| p.block_of(e.u) != p.block_of(e.v)).map(|e| e.id),
    ))
}

/// Components of `(V, E \ M)`; fails if some edge of `M` lies inside one.
pub fn partition_of(m: &Multicut, g: &SignedGraph) -> Result<Partition> {
    if let Some(&e) = m.edges().iter().find(|&&e| g.edge(e).is_none()) {
        return Err(Error::UnknownEdge(e));
    }
    let mut uf = UnionFind::new(g.vertex_count());
    for e in g.edges().iter().filter(|e| !m.contains(e.id)) {
        uf.union(e.u, e.v);
    }
    for &id in m.edges() {
        let e = g.edge(id).expect("checked above");
        if uf.find(e.u) == uf.find(e.v) {
            return Err(Error::InvalidMulticut(format!(
                "edge {id} has both endpoints in one component of the uncut edges"
            )));
        }
    }
    let labels: Vec<usize> = (0..g.vertex_count()).map(|v| uf.find(v)).collect();
    Ok(Partition::from_labels(&labels))
}

/// Weight of the positive edges between blocks plus the negative edges
/// inside blocks.
pub fn cc_errors(p: &Partition, inst: &WeightedInstance) -> Result<Rat> {
    check_partition(p, &inst.graph)?;
    Ok(inst
        .graph
        .edges()
        .iter()
        .filter(|e| e.is_positive() != (p.block_of(e.u) == p.block_of(e.v)))
        .map(|e| inst.weight(e.id))
        .sum())
}

/// Exhaustive minimum over all partitions. Ties go to the lexicographically
/// least restricted growth string.
pub fn cc_brute_force(inst: &WeightedInstance, limits: &Limits) -> Result<(Partition, Rat)> {
    let g = &inst.graph;
    let n = g.vertex_count();
    if n > limits.max_brute_force_vertices {
        return Err(Error::size_limit("brute-force vertices", n, limits.max_brute_force_vertices));
    }
    // edges grouped by their later endpoint so a prefix assignment can be scored
    let mut by_last: Vec<Vec<(usize, bool, EdgeId)>> = vec![Vec::new(); n];
    for e in g.edges() {
        let (a, b) = if e.u < e.v { (e.u, e.v) } else { (e.v, e.u) };
        by_last[b].push((a, e.is_positive(), e.id));
    }
    let best = match integer_weights(inst) {
        Some(w) => {
            let w: BTreeMap<EdgeId, i128> = w;
            let (p, v) = Search::new(&by_last, |e| w[&e], 0i128, limits).run()?;
            (p, Rat::from_bigints(v.into(), 1.into()) * scale_inverse(inst))
        }
        None => Search::new(&by_last, |e| inst.weight(e).clone(), Rat::zero(), limits).run()?,
    };
    Ok(best)
}

/// Weights times the lcm of their denominators, when that fits in `i128`
/// with room for summing every edge.
fn integer_weights(inst: &WeightedInstance) -> Option<BTreeMap<EdgeId, i128>> {
    let lcm = denominator_lcm(inst);
    let bound = i128::MAX / (inst.weights.len() as i128 + 1);
    inst.weights
        .iter()
        .map(|(&e, w)| {
            let scaled = w.numer() * (&lcm / w.denom());
            let v: i128 = scaled.try_into().ok()?;
            (v <= bound).then_some((e, v))
        })
        .collect()
}

fn denominator_lcm(inst: &WeightedInstance) -> num_bigint::BigInt {
    use num_integer::Integer;
    inst.weights
        .values()
        .fold(num_bigint::BigInt::from(1), |acc, w| acc.lcm(w.denom()))
}

fn scale_inverse(inst: &WeightedInstance) -> Rat {
    Rat::from_bigints(1.into(), denominator_lcm(inst))
}

struct Search<'a, T, W> {
    by_last: &'a [Vec<(usize, bool, EdgeId)>],
    weight: W,
    zero: T,
    limits: &'a Limits,
    labels: Vec<usize>,
    best: Option<(Vec<usize>, T)>,
    visited: u64,
}

impl<'a, T, W> Search<'a, T, W>
where
    T: Clone + PartialOrd + for<'b> std::ops::AddAssign<&'b T>,
    W: Fn(EdgeId) -> T,
{
    fn new(by_last: &'a [Vec<(usize, bool, EdgeId)>], weight: W, zero: T, limits: &'a Limits) -> Self {
        Search {
            by_last,
            weight,
            zero,
            limits,
            labels: Vec::with_capacity(by_last.len()),
            best: None,
            visited: 0,
        }
    }

    fn run(mut self) -> Result<(Partition, T)> {
        let zero = self.zero.clone();
        self.extend(0, &zero)?;
        let (labels, v) = self.best.expect("at least one partition exists");
        Ok((Partition(labels), v))
    }

    fn extend(&mut self, blocks: usize, cost: &T) -> Result<()> {
        self.visited += 1;
        if self.visited.is_multiple_of(4096) {
            self.limits.check_deadline()?;
        }
        let v = self.labels.len();
        if v == self.by_last.len() {
            if self.best.as_ref().is_none_or(|(_, b)| cost < b) {
                self.best = Some((self.labels.clone(), cost.clone()));
            }
            return Ok(());
        }
        for b in 0..=blocks {
            let mut c = cost.clone();
            for &(a, positive, id) in &self.by_last[v] {
                if positive != (self.labels[a] == b) {
                    c += &(self.weight)(id);
                }
            }
            // nonnegative weights: a prefix that already ties the best cannot win
            if self.best.as_ref().is_some_and(|(_, best)| c >= *best) {
                continue;
            }
            self.labels.push(b);
            self.extend(blocks.max(b + 1), &c)?;
            self.labels.pop();
        }
        Ok(())
    }
}

/// Whether the flow covering polyhedron is integral, with a fractional
/// vertex otherwise. A graph without flows is trivially partitionable.
pub fn is_flow_partitionable(g: &SignedGraph, limits: &Limits) -> Result<IdealVerdict> {
    is_ideal(&flow_clutter(g, limits.max_flows)?, limits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family, Sign};

    fn triangle() -> SignedGraph {
        SignedGraph::from_edges(
            3,
            &[(0, 1, Sign::Positive), (1, 2, Sign::Positive), (0, 2, Sign::Positive)],
        )
        .unwrap()
    }

    #[test]
    fn multicut_examples() {
        let g = triangle();
        assert!(multicut_of(&Partition::single_block(3), &g).unwrap().edges().is_empty());
        assert_eq!(multicut_of(&Partition::singletons(3), &g).unwrap().edges(), &[0, 1, 2]);
        assert!(matches!(partition_of(&Multicut::new([1]), &g), Err(Error::InvalidMulticut(_))));
        let m = Multicut::new([1, 2]);
        let p = partition_of(&m, &g).unwrap();
        assert_eq!(p.assignment(), &[0, 0, 1]);
        assert_eq!(multicut_of(&p, &g).unwrap(), m);
    }

    #[test]
    fn errors_examples() {
        let inst = WeightedInstance::unit(generate(Family::FlowStar(3)).unwrap());
        let p = Partition::from_labels(&[0, 0, 1, 2]);
        assert_eq!(cc_errors(&p, &inst).unwrap(), Rat::from_int(2));
        assert_eq!(cc_errors(&Partition::single_block(4), &inst).unwrap(), Rat::from_int(3));
        let bal = WeightedInstance::unit(triangle());
        assert_eq!(cc_errors(&Partition::single_block(3), &bal).unwrap(), Rat::zero());
    }

    #[test]
    fn brute_force_examples() {
        let l = Limits::default();
        let s3 = WeightedInstance::unit(generate(Family::FlowStar(3)).unwrap());
        let (p, v) = cc_brute_force(&s3, &l).unwrap();
        assert_eq!(v, Rat::from_int(2));
        assert_eq!(cc_errors(&p, &s3).unwrap(), v);
        // lexicographically least optimum: keep v0 with v1, split the rest
        assert_eq!(p.assignment(), &[0, 0, 0, 1]);
        let c5 = WeightedInstance::unit(generate(Family::FlowCircuit(5)).unwrap());
        assert_eq!(cc_brute_force(&c5, &l).unwrap().1, Rat::from_int(3));
        let bal = WeightedInstance::unit(triangle());
        assert_eq!(cc_brute_force(&bal, &l).unwrap().1, Rat::zero());
    }

    #[test]
    fn brute_force_fractional_weights() {
        let g = generate(Family::FlowStar(3)).unwrap();
        let w = g.edge_ids().into_iter().map(|e| (e, Rat::new(1, 3 + e as i64))).collect();
        let inst = WeightedInstance::new(g, w).unwrap();
        let (p, v) = cc_brute_force(&inst, &Limits::default()).unwrap();
        assert_eq!(cc_errors(&p, &inst).unwrap(), v);
    }

    #[test]
    fn brute_force_cap() {
        let inst = WeightedInstance::unit(SignedGraph::new(13));
        assert!(matches!(cc_brute_force(&inst, &Limits::default()), Err(Error::SizeLimit { .. })));
    }

    #[test]
    fn negative_weight_rejected() {
        let g = triangle();
        let w = g.edge_ids().into_iter().map(|e| (e, Rat::from_int(-(e as i64)))).collect();
        assert!(WeightedInstance::new(g, w).is_err());
    }

    #[test]
    fn partitionable_examples() {
        let l = Limits::default();
        assert!(!is_flow_partitionable(&generate(Family::FlowStar(3)).unwrap(), &l).unwrap().ideal);
        assert!(is_flow_partitionable(&generate(Family::FlowCircuit(3)).unwrap(), &l).unwrap().ideal);
        assert!(is_flow_partitionable(&triangle(), &l).unwrap().ideal);
    }
}
