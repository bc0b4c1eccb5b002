use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{blocker, Clutter, Elem};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum KnownFamily {
    /// Lines of the Fano plane over 7 points.
    FanoF7,
    /// Triangles of `K5` over its 10 edges.
    TrianglesK5,
    BlockerTrianglesK5,
    /// `Circulant(n, k)`: the `n` cyclic intervals of length `k` over `Z_n`.
    Circulant(usize, usize),
    DegenerateProjectivePlane(usize),
}

impl fmt::Display for KnownFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KnownFamily::FanoF7 => write!(f, "fano-f7"),
            KnownFamily::TrianglesK5 => write!(f, "triangles-k5"),
            KnownFamily::BlockerTrianglesK5 => write!(f, "blocker-triangles-k5"),
            KnownFamily::Circulant(n, k) => write!(f, "circulant-{n}-{k}"),
            KnownFamily::DegenerateProjectivePlane(k) => write!(f, "dpp-{k}"),
        }
    }
}

impl FromStr for KnownFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_lowercase().replace(['_', ' ', ':'], "-");
        let bad = || Error::InvalidParameter(format!("unknown clutter family {s:?}"));
        let nums = |rest: &str| -> Result<Vec<usize>> {
            rest.split('-').map(|t| t.parse::<usize>().map_err(|_| bad())).collect()
        };
        match norm.as_str() {
            "fano-f7" | "fano" | "f7" => return Ok(KnownFamily::FanoF7),
            "triangles-k5" | "tau-k5" => return Ok(KnownFamily::TrianglesK5),
            "blocker-triangles-k5" | "blocker-tau-k5" => return Ok(KnownFamily::BlockerTrianglesK5),
            _ => {}
        }
        if let Some(rest) = norm.strip_prefix("circulant-") {
            if let [n, k] = nums(rest)?[..] {
                return Ok(KnownFamily::Circulant(n, k));
            }
        }
        for prefix in ["dpp-", "degenerate-projective-plane-"] {
            if let Some(rest) = norm.strip_prefix(prefix) {
                if let [k] = nums(rest)?[..] {
                    return Ok(KnownFamily::DegenerateProjectivePlane(k));
                }
            }
        }
        Err(bad())
    }
}

/// Edges of `K5` in lexicographic order; element `i` is `K5_EDGES[i]`.
pub const K5_EDGES: [(u32, u32); 10] = [
    (0, 1),
    (0, 2),
    (0, 3),
    (0, 4),
    (1, 2),
    (1, 3),
    (1, 4),
    (2, 3),
    (2, 4),
    (3, 4),
];

pub fn known_family(family: KnownFamily) -> Result<Clutter> {
    match family {
        KnownFamily::FanoF7 => {
            // difference set {0, 1, 3} mod 7
            let lines = (0..7u32).map(|i| vec![i, (i + 1) % 7, (i + 3) % 7]).collect();
            Clutter::new(0..7, lines)
        }
        KnownFamily::TrianglesK5 => {
            let edge = |a: u32, b: u32| K5_EDGES.iter().position(|&e| e == (a, b)).unwrap() as Elem;
            let mut tri = Vec::new();
            for a in 0..5 {
                for b in a + 1..5 {
                    for c in b + 1..5 {
                        tri.push(vec![edge(a, b), edge(a, c), edge(b, c)]);
                    }
                }
            }
            Clutter::new(0..10, tri)
        }
        KnownFamily::BlockerTrianglesK5 => blocker(&known_family(KnownFamily::TrianglesK5)?, 24),
        KnownFamily::Circulant(n, k) => {
            if !(n > k && k >= 1) {
                return Err(Error::InvalidParameter(format!(
                    "circulant({n},{k}) needs n > k >= 1"
                )));
            }
            let n32 = n as u32;
            let members = (0..n32)
                .map(|i| (0..k as u32).map(|j| (i + j) % n32).collect())
                .collect();
            Clutter::new(0..n32, members)
        }
        KnownFamily::DegenerateProjectivePlane(k) => {
            if k < 2 {
                return Err(Error::InvalidParameter(format!(
                    "degenerate projective plane order {k} must be >= 2"
                )));
            }
            let k32 = k as u32;
            let mut members = vec![(1..=k32).collect::<Vec<_>>()];
            members.extend((1..=k32).map(|i| vec![0, i]));
            Clutter::new(0..=k32, members)
        }
    }
}
