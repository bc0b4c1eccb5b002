use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::lp::Relaxation;
use super::{cc_errors, multicut_of, partition_of, Multicut, Partition, WeightedInstance};
use crate::error::{Error, Result};
use crate::exactlp::Rat;
use crate::graph::{EdgeId, UnionFind};
use crate::limits::Limits;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactSolution {
    pub partition: Partition,
    pub multicut: Multicut,
    pub value: Rat,
    /// Root cycle-relaxation bound.
    pub lp_value: Rat,
    /// Optimality gap at termination; always zero.
    pub gap: Rat,
    pub nodes: usize,
}

/// Exact correlation clustering by branch-and-bound on the cycle relaxation.
///
/// Fixing `x_e = 1` (an error on `e`) drops every flow through `e`; fixing
/// `x_e = 0` removes `e` from the remaining flow inequalities.
pub fn cc_exact(inst: &WeightedInstance, limits: &Limits) -> Result<ExactSolution> {
    let g = inst.graph();
    if g.edge_count() > limits.max_exact_edges {
        return Err(Error::size_limit("exact solver edges", g.edge_count(), limits.max_exact_edges));
    }
    let n = g.vertex_count();
    let mut best = [Partition::single_block(n), Partition::singletons(n)]
        .into_iter()
        .map(|p| {
            let v = cc_errors(&p, inst)?.0;
            Ok((p, v))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .reduce(|a, b| if b.1 < a.1 { b } else { a })
        .expect("two candidates");
    let mut bb = BranchAndBound {
        inst,
        relax: Relaxation::new(inst, limits),
        limits,
        nodes: 0,
        root: None,
    };
    bb.explore(&mut BTreeMap::new(), &mut best)?;
    let (partition, value) = best;
    Ok(ExactSolution {
        multicut: multicut_of(&partition, g)?,
        partition,
        value: Rat(value),
        lp_value: Rat(bb.root.expect("root relaxation is always feasible")),
        gap: Rat::zero(),
        nodes: bb.nodes,
    })
}

struct BranchAndBound<'a> {
    inst: &'a WeightedInstance,
    relax: Relaxation<'a>,
    limits: &'a Limits,
    nodes: usize,
    root: Option<BigRational>,
}

impl BranchAndBound<'_> {
    fn explore(&mut self, fixed: &mut BTreeMap<EdgeId, bool>, best: &mut (Partition, BigRational)) -> Result<()> {
        self.nodes += 1;
        self.limits.check_deadline()?;
        let Some(point) = self.relax.solve(fixed)? else {
            return Ok(());
        };
        if self.root.is_none() {
            self.root = Some(point.value.clone());
        }
        if point.value >= best.1 {
            return Ok(());
        }
        let half = BigRational::new(1.into(), 2.into());
        let branch = point
            .x
            .iter()
            .filter(|(_, v)| !v.is_integer())
            .min_by(|a, b| (a.1 - &half).abs().cmp(&(b.1 - &half).abs()).then(a.0.cmp(b.0)))
            .map(|(&e, _)| e);
        match branch {
            None => {
                let p = self.integral_partition(&point.x)?;
                let v = cc_errors(&p, self.inst)?.0;
                if v < best.1 {
                    *best = (p, v);
                }
            }
            Some(e) => {
                for one in [false, true] {
                    fixed.insert(e, one);
                    self.explore(fixed, best)?;
                    fixed.remove(&e);
                }
            }
        }
        Ok(())
    }

    /// Blocks are the components of the error-free positive edges. Every
    /// negative edge inside a block closes a flow of zero-valued positives,
    /// so it carries an error already; the partition costs at most `w·x`.
    fn integral_partition(&self, x: &BTreeMap<EdgeId, BigRational>) -> Result<Partition> {
        let g = self.inst.graph();
        let mut uf = UnionFind::new(g.vertex_count());
        for e in g.positive_edges().filter(|e| x[&e.id].is_zero()) {
            uf.union(e.u, e.v);
        }
        let labels: Vec<usize> = (0..g.vertex_count()).map(|v| uf.find(v)).collect();
        let p = Partition::from_labels(&labels);
        // the boundary of a partition is always a valid multicut
        partition_of(&multicut_of(&p, g)?, g)?;
        debug_assert!(x.values().all(|v| v.is_zero() || v.is_one()));
        Ok(p)
    }
}
