use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::simplex::solve_cover;
use super::WeightedInstance;
use crate::error::{Error, Result};
use crate::exactlp::{Rat, RatVec};
use crate::graph::{EdgeId, Flow, SignedGraph};
use crate::limits::Limits;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleLpSolution {
    /// Optimal error-indicator vector, one entry per edge.
    pub x: RatVec,
    pub value: Rat,
    /// Working-set flows that are tight at `x`.
    pub active_flows: Vec<Flow>,
}

/// A flow whose inequality `x(C) >= 1` is violated the most, if any.
pub fn separate(g: &SignedGraph, x: &RatVec) -> Result<Option<Flow>> {
    if x.keys() != g.edge_ids() {
        return Err(Error::IndexMismatch(format!(
            "vector indexed by {:?}, graph edges {:?}",
            x.keys(),
            g.edge_ids()
        )));
    }
    let xs: BTreeMap<EdgeId, BigRational> = x.0.iter().map(|(&e, v)| (e, v.0.clone())).collect();
    Ok(violated_flows(g, &xs)
        .into_iter()
        .min_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)))
        .map(|(f, _)| f))
}

/// For every negative edge, its cheapest flow when that flow is violated,
/// with the flow's total.
pub(crate) fn violated_flows(g: &SignedGraph, x: &BTreeMap<EdgeId, BigRational>) -> Vec<(Flow, BigRational)> {
    let adj = g.adjacency(|e| e.is_positive());
    let mut trees: BTreeMap<usize, ShortestPaths> = BTreeMap::new();
    let mut out = Vec::new();
    let one = BigRational::one();
    for f in g.negative_edges() {
        let sp = trees.entry(f.u).or_insert_with(|| ShortestPaths::from(g, &adj, x, f.u));
        let Some(d) = &sp.dist[f.v] else { continue };
        let total = d + &x[&f.id];
        if total < one {
            let mut positive_edges = sp.path_to(g, f.v);
            positive_edges.sort_unstable();
            out.push((
                Flow {
                    negative_edge: f.id,
                    positive_edges,
                },
                total,
            ));
        }
    }
    out
}

/// Dijkstra over positive edges; weights are nonnegative so the tree paths
/// are simple shortest paths.
struct ShortestPaths {
    dist: Vec<Option<BigRational>>,
    pred: Vec<Option<usize>>,
}

impl ShortestPaths {
    fn from(
        g: &SignedGraph,
        adj: &[Vec<(usize, usize)>],
        x: &BTreeMap<EdgeId, BigRational>,
        source: usize,
    ) -> Self {
        let n = g.vertex_count();
        let mut dist: Vec<Option<BigRational>> = vec![None; n];
        let mut pred = vec![None; n];
        let mut done = vec![false; n];
        dist[source] = Some(BigRational::zero());
        loop {
            let next = (0..n)
                .filter(|&v| !done[v])
                .filter_map(|v| dist[v].as_ref().map(|d| (d, v)))
                .min();
            let Some((_, u)) = next else { break };
            done[u] = true;
            let du = dist[u].clone().expect("selected vertex has a distance");
            for &(w, ei) in &adj[u] {
                if done[w] {
                    continue;
                }
                let cand = &du + &x[&g.edges()[ei].id];
                if dist[w].as_ref().is_none_or(|d| cand < *d) {
                    dist[w] = Some(cand);
                    pred[w] = Some(ei);
                }
            }
        }
        ShortestPaths { dist, pred }
    }

    fn path_to(&self, g: &SignedGraph, mut v: usize) -> Vec<EdgeId> {
        let mut path = Vec::new();
        while let Some(ei) = self.pred[v] {
            let e = &g.edges()[ei];
            path.push(e.id);
            v = e.other(v);
        }
        path
    }
}

pub(crate) struct LpPoint {
    pub x: BTreeMap<EdgeId, BigRational>,
    /// Objective including the weight of edges fixed to 1.
    pub value: BigRational,
}

/// Cutting-plane solver for the cycle relaxation with some coordinates
/// fixed. The flow pool is shared between calls so branch-and-bound nodes
/// reuse earlier cuts.
pub(crate) struct Relaxation<'a> {
    inst: &'a WeightedInstance,
    limits: &'a Limits,
    pool: BTreeSet<Flow>,
}

impl<'a> Relaxation<'a> {
    pub(crate) fn new(inst: &'a WeightedInstance, limits: &'a Limits) -> Self {
        Relaxation {
            inst,
            limits,
            pool: BTreeSet::new(),
        }
    }

    pub(crate) fn pool(&self) -> &BTreeSet<Flow> {
        &self.pool
    }

    /// `None` when the fixings leave some flow with every edge at 0.
    pub(crate) fn solve(&mut self, fixed: &BTreeMap<EdgeId, bool>) -> Result<Option<LpPoint>> {
        let g = self.inst.graph();
        let free: Vec<EdgeId> = g.edge_ids().into_iter().filter(|e| !fixed.contains_key(e)).collect();
        let index: BTreeMap<EdgeId, usize> = free.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let w: Vec<BigRational> = free.iter().map(|&e| self.inst.weight(e).0.clone()).collect();
        let base: BigRational = fixed
            .iter()
            .filter(|(_, &one)| one)
            .map(|(e, _)| self.inst.weight(*e).0.clone())
            .sum();
        loop {
            self.limits.check_deadline()?;
            let mut rows = Vec::new();
            for flow in &self.pool {
                let ids = flow.edge_ids();
                if ids.iter().any(|e| fixed.get(e) == Some(&true)) {
                    continue;
                }
                let row: Vec<usize> = ids.iter().filter_map(|e| index.get(e).copied()).collect();
                if row.is_empty() {
                    return Ok(None);
                }
                rows.push(row);
            }
            let sol = solve_cover(&rows, &w);
            let mut x: BTreeMap<EdgeId, BigRational> = fixed
                .iter()
                .map(|(&e, &one)| (e, if one { BigRational::one() } else { BigRational::zero() }))
                .collect();
            x.extend(free.iter().copied().zip(sol.x));
            let cuts = violated_flows(g, &x);
            if cuts.is_empty() {
                return Ok(Some(LpPoint {
                    x,
                    value: &base + &sol.value,
                }));
            }
            for (flow, _) in cuts {
                self.pool.insert(flow);
            }
            if self.pool.len() > self.limits.max_working_set {
                return Err(Error::size_limit("cycle LP working set", self.pool.len(), self.limits.max_working_set));
            }
        }
    }
}

pub(crate) fn to_ratvec(x: &BTreeMap<EdgeId, BigRational>) -> RatVec {
    RatVec(x.iter().map(|(&e, v)| (e, Rat(v.clone()))).collect())
}

/// Exact optimum of the cycle relaxation `min w·x` over the flow covering
/// polyhedron.
pub fn cycle_lp(inst: &WeightedInstance, limits: &Limits) -> Result<CycleLpSolution> {
    let mut relax = Relaxation::new(inst, limits);
    let point = relax
        .solve(&BTreeMap::new())?
        .expect("with nothing fixed every flow has a free edge");
    let one = BigRational::one();
    let active_flows = relax
        .pool()
        .iter()
        .filter(|f| f.edge_ids().iter().map(|e| &point.x[e]).sum::<BigRational>() == one)
        .cloned()
        .collect();
    Ok(CycleLpSolution {
        x: to_ratvec(&point.x),
        value: Rat(point.value),
        active_flows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};

    fn filled(g: &SignedGraph, f: impl Fn(bool) -> Rat) -> RatVec {
        RatVec(g.edges().iter().map(|e| (e.id, f(e.is_positive()))).collect())
    }

    #[test]
    fn separation_examples() {
        let g = generate(Family::FlowStar(3)).unwrap();
        let v = separate(&g, &filled(&g, |_| Rat::zero())).unwrap().unwrap();
        assert_eq!(v.negative_edge, 3);
        assert!(separate(&g, &filled(&g, |_| Rat::one())).unwrap().is_none());
        let half = filled(&g, |p| if p { Rat::new(1, 2) } else { Rat::zero() });
        assert!(separate(&g, &half).unwrap().is_none());
    }

    #[test]
    fn lp_examples() {
        let l = Limits::default();
        let s3 = cycle_lp(&WeightedInstance::unit(generate(Family::FlowStar(3)).unwrap()), &l).unwrap();
        assert_eq!(s3.value, Rat::new(3, 2));
        assert!(!s3.active_flows.is_empty());
        let c5 = cycle_lp(&WeightedInstance::unit(generate(Family::FlowCircuit(5)).unwrap()), &l).unwrap();
        assert_eq!(c5.value, Rat::new(5, 2));
        let k5 = cycle_lp(&WeightedInstance::unit(generate(Family::FlowSplitK5).unwrap()), &l).unwrap();
        // all-ones on the three negative edges covers every flow, so the
        // optimum is at most 3; the 1/3 vertex (value 10/3) is not optimal
        assert_eq!(k5.value, Rat::from_int(3));
        let fc3 = cycle_lp(&WeightedInstance::unit(generate(Family::FlowCircuit(3)).unwrap()), &l).unwrap();
        assert!(fc3.x.is_integral());
    }

    #[test]
    fn weakly_balanced_is_zero() {
        let g = SignedGraph::from_edges(
            4,
            &[
                (0, 1, crate::graph::Sign::Positive),
                (2, 3, crate::graph::Sign::Positive),
                (1, 2, crate::graph::Sign::Negative),
            ],
        )
        .unwrap();
        let s = cycle_lp(&WeightedInstance::unit(g), &Limits::default()).unwrap();
        assert_eq!(s.value, Rat::zero());
        assert!(s.active_flows.is_empty());
    }
}
