use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Sign, SignedGraph};
use crate::error::{Error, Result};

/// Named signed-graph families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// Positive star `v0 v_i` with a negative cycle through the leaves.
    FlowStar(usize),
    /// Positive `k`-cycle with negative chords `v_i v_{i+2}`.
    FlowCircuit(usize),
    /// `K5` with one vertex split in two, joined by the negative edge `f`.
    FlowSplitK5,
    /// Positive 8-cycle with negative chords `v_i v_{i+3}`.
    ChordedOctagon,
    /// One positive and one negative edge between the same two vertices.
    ParallelPair,
    /// Triangle with a single negative edge.
    BadTriangle,
}

impl Family {
    pub fn name(&self) -> String {
        match self {
            Family::FlowStar(k) => format!("flow-star-{k}"),
            Family::FlowCircuit(k) => format!("flow-circuit-{k}"),
            Family::FlowSplitK5 => "flow-split-k5".into(),
            Family::ChordedOctagon => "chorded-octagon".into(),
            Family::ParallelPair => "parallel-pair".into(),
            Family::BadTriangle => "bad-triangle".into(),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    /// Accepts `flow-star-5`, `flow-star 5`, `flow_circuit:7`, `flow-split-k5`, ...
    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_lowercase().replace(['_', ' ', ':'], "-");
        let param = |prefix: &str| -> Option<Result<usize>> {
            norm.strip_prefix(prefix).map(|rest| {
                rest.parse::<usize>()
                    .map_err(|_| Error::InvalidParameter(format!("bad family parameter in {s:?}")))
            })
        };
        if let Some(k) = param("flow-star-") {
            return Ok(Family::FlowStar(k?));
        }
        if let Some(k) = param("flow-circuit-") {
            return Ok(Family::FlowCircuit(k?));
        }
        match norm.as_str() {
            "flow-split-k5" | "split-k5" => Ok(Family::FlowSplitK5),
            "chorded-octagon" | "octagon" => Ok(Family::ChordedOctagon),
            "parallel-pair" => Ok(Family::ParallelPair),
            "bad-triangle" => Ok(Family::BadTriangle),
            _ => Err(Error::InvalidParameter(format!("unknown family {s:?}"))),
        }
    }
}

/// Builds a family member. Positive edges come first, so edge ids `0..|E+|`
/// are positive and the rest negative.
pub fn generate(family: Family) -> Result<SignedGraph> {
    use Sign::*;
    match family {
        Family::FlowStar(k) => {
            check_k(k)?;
            let mut edges = Vec::with_capacity(2 * k);
            for i in 1..=k {
                edges.push((0, i, Positive));
            }
            for i in 1..=k {
                edges.push((i, if i == k { 1 } else { i + 1 }, Negative));
            }
            SignedGraph::from_edges(k + 1, &edges)
        }
        Family::FlowCircuit(k) => {
            check_k(k)?;
            let mut edges = Vec::with_capacity(2 * k);
            for i in 0..k {
                edges.push((i, (i + 1) % k, Positive));
            }
            for i in 0..k {
                edges.push((i, (i + 2) % k, Negative));
            }
            SignedGraph::from_edges(k, &edges)
        }
        Family::FlowSplitK5 => SignedGraph::from_edges(
            6,
            &[
                (0, 1, Positive),
                (1, 2, Positive),
                (2, 3, Positive),
                (0, 3, Positive),
                (0, 4, Positive),
                (1, 5, Positive),
                (2, 4, Positive),
                (3, 5, Positive),
                (0, 2, Negative),
                (1, 3, Negative),
                (4, 5, Negative),
            ],
        ),
        Family::ChordedOctagon => {
            let mut edges = Vec::with_capacity(16);
            for i in 0..8 {
                edges.push((i, (i + 1) % 8, Positive));
            }
            for i in 0..8 {
                edges.push((i, (i + 3) % 8, Negative));
            }
            SignedGraph::from_edges(8, &edges)
        }
        Family::ParallelPair => SignedGraph::from_edges(2, &[(0, 1, Positive), (0, 1, Negative)]),
        Family::BadTriangle => {
            SignedGraph::from_edges(3, &[(0, 1, Positive), (1, 2, Positive), (0, 2, Negative)])
        }
    }
}

/// Id of the edge `f` in [`Family::FlowSplitK5`].
pub const SPLIT_K5_F: u32 = 10;

fn check_k(k: usize) -> Result<()> {
    if k < 3 {
        return Err(Error::InvalidParameter(format!("family parameter k = {k} must be >= 3")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_counts() {
        for k in [3, 5, 7, 9] {
            let s = generate(Family::FlowStar(k)).unwrap();
            assert_eq!((s.positive_count(), s.negative_count()), (k, k));
            let c = generate(Family::FlowCircuit(k)).unwrap();
            assert_eq!((c.positive_count(), c.negative_count()), (k, k));
        }
        let s = generate(Family::FlowSplitK5).unwrap();
        assert_eq!((s.vertex_count(), s.positive_count(), s.negative_count()), (6, 8, 3));
        let f = generate(Family::ChordedOctagon).unwrap();
        assert_eq!((f.positive_count(), f.negative_count()), (8, 8));
    }

    #[test]
    fn flow_circuit_three_has_parallel_pairs() {
        let c = generate(Family::FlowCircuit(3)).unwrap();
        for neg in c.negative_edges() {
            assert!(c
                .positive_edges()
                .any(|p| (p.u.min(p.v), p.u.max(p.v)) == (neg.u.min(neg.v), neg.u.max(neg.v))));
        }
    }

    #[test]
    fn rejects_small_k() {
        assert!(generate(Family::FlowStar(2)).is_err());
        assert!(generate(Family::FlowCircuit(1)).is_err());
    }

    #[test]
    fn parses_names() {
        assert_eq!("flow-star 5".parse::<Family>().unwrap(), Family::FlowStar(5));
        assert_eq!("flow_circuit-7".parse::<Family>().unwrap(), Family::FlowCircuit(7));
        assert_eq!("flow-split-k5".parse::<Family>().unwrap(), Family::FlowSplitK5);
        for f in [Family::FlowStar(3), Family::ChordedOctagon, Family::BadTriangle] {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert!("flow-star-x".parse::<Family>().is_err());
    }
}
