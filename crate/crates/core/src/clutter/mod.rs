//! Clutters (antichains of finite sets) and their minor operations,
//! blockers, cores, isomorphism and named families.

mod balanced;
mod blocker;
mod families;
mod iso;

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{enumerate_flows, SignedGraph};

pub use balanced::{is_balanced_matrix, CirculantWitness, ZeroOneMatrix};
pub use blocker::blocker;
pub use families::{known_family, KnownFamily};
pub use iso::is_isomorphic;

/// Ground-set element id. For flow clutters this is the edge id.
pub type Elem = u32;

/// An antichain of subsets of a finite ground set.
///
/// Members are sorted and kept in lexicographic order. The empty set may
/// only appear as the sole member; that clutter (nothing can cover it) is
/// distinct from the clutter with no members at all.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Clutter {
    ground: Vec<Elem>,
    members: Vec<Vec<Elem>>,
}

/// Side information produced by [`Clutter::contract`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct ContractionReport {
    pub produced_singleton: bool,
    pub produced_empty: bool,
}

impl Clutter {
    /// Strict constructor: members must be nonempty subsets of `ground` and
    /// form an antichain.
    pub fn new(ground: impl IntoIterator<Item = Elem>, members: Vec<Vec<Elem>>) -> Result<Self> {
        let ground = sorted_unique(ground);
        let mut ms: Vec<Vec<Elem>> = Vec::with_capacity(members.len());
        for m in members {
            let set = sorted_unique(m);
            if set.is_empty() {
                return Err(Error::InvalidClutter("empty member".into()));
            }
            if let Some(&x) = set.iter().find(|x| ground.binary_search(x).is_err()) {
                return Err(Error::UnknownElement(x));
            }
            ms.push(set);
        }
        ms.sort();
        for (i, a) in ms.iter().enumerate() {
            for b in &ms[i + 1..] {
                if is_subset(a, b) || is_subset(b, a) {
                    return Err(Error::InvalidClutter(format!(
                        "members {a:?} and {b:?} are nested"
                    )));
                }
            }
        }
        Ok(Clutter { ground, members: ms })
    }

    /// Keeps the inclusion-minimal sets of `members`. An empty set collapses
    /// the result to the clutter whose only member is the empty set.
    pub fn minimalize(ground: impl IntoIterator<Item = Elem>, members: Vec<Vec<Elem>>) -> Result<Self> {
        let ground = sorted_unique(ground);
        let mut ms: Vec<Vec<Elem>> = members.into_iter().map(sorted_unique).collect();
        if let Some(m) = ms.iter().flatten().find(|x| ground.binary_search(x).is_err()) {
            return Err(Error::UnknownElement(*m));
        }
        ms.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        ms.dedup();
        let mut kept: Vec<Vec<Elem>> = Vec::new();
        for m in ms {
            if !kept.iter().any(|k| is_subset(k, &m)) {
                kept.push(m);
            }
        }
        kept.sort();
        Ok(Clutter {
            ground,
            members: kept,
        })
    }

    /// The clutter `{∅}` over `ground`.
    pub fn with_empty_member(ground: impl IntoIterator<Item = Elem>) -> Self {
        Clutter {
            ground: sorted_unique(ground),
            members: vec![Vec::new()],
        }
    }

    /// The clutter with no members over `ground`.
    pub fn without_members(ground: impl IntoIterator<Item = Elem>) -> Self {
        Clutter {
            ground: sorted_unique(ground),
            members: Vec::new(),
        }
    }

    pub fn ground(&self) -> &[Elem] {
        &self.ground
    }

    pub fn members(&self) -> &[Vec<Elem>] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn has_empty_member(&self) -> bool {
        self.members.first().is_some_and(|m| m.is_empty())
    }

    /// True for the two clutters that covering-polyhedron checks do not
    /// accept: no members, or the empty set as member.
    pub fn is_degenerate(&self) -> bool {
        self.is_empty() || self.has_empty_member()
    }

    pub fn contains_member(&self, set: &[Elem]) -> bool {
        let s = sorted_unique(set.iter().copied());
        self.members.binary_search(&s).is_ok()
    }

    pub fn element_index(&self, e: Elem) -> Option<usize> {
        self.ground.binary_search(&e).ok()
    }

    /// Number of members containing `e`.
    pub fn degree(&self, e: Elem) -> usize {
        self.members.iter().filter(|m| m.binary_search(&e).is_ok()).count()
    }

    fn require(&self, e: Elem) -> Result<()> {
        self.element_index(e).map(|_| ()).ok_or(Error::UnknownElement(e))
    }

    fn ground_without(&self, e: Elem) -> Vec<Elem> {
        self.ground.iter().copied().filter(|&x| x != e).collect()
    }

    /// `C / e`: drop `e` from every member and keep the minimal sets.
    pub fn contract(&self, e: Elem) -> Result<(Clutter, ContractionReport)> {
        self.require(e)?;
        let mut report = ContractionReport::default();
        let ms: Vec<Vec<Elem>> = self
            .members
            .iter()
            .map(|m| {
                let had = m.binary_search(&e).is_ok();
                let r: Vec<Elem> = m.iter().copied().filter(|&x| x != e).collect();
                if had && r.len() == 1 {
                    report.produced_singleton = true;
                }
                r
            })
            .collect();
        let c = Clutter::minimalize(self.ground_without(e), ms)?;
        report.produced_empty = c.has_empty_member();
        report.produced_singleton &= !report.produced_empty;
        Ok((c, report))
    }

    /// `C \ e`: keep the members avoiding `e`.
    pub fn delete(&self, e: Elem) -> Result<Clutter> {
        self.require(e)?;
        Ok(Clutter {
            ground: self.ground_without(e),
            members: self
                .members
                .iter()
                .filter(|m| m.binary_search(&e).is_err())
                .cloned()
                .collect(),
        })
    }

    /// Contracts every element of `set` in turn.
    pub fn contract_all(&self, set: &[Elem]) -> Result<Clutter> {
        let mut c = self.clone();
        for &e in set {
            c = c.contract(e)?.0;
        }
        Ok(c)
    }

    /// Members of minimum cardinality, same ground set.
    pub fn core(&self) -> Result<Clutter> {
        if self.is_degenerate() {
            return Err(Error::InvalidClutter("core of a clutter without nonempty members".into()));
        }
        let min = self.members.iter().map(Vec::len).min().unwrap();
        Ok(Clutter {
            ground: self.ground.clone(),
            members: self.members.iter().filter(|m| m.len() == min).cloned().collect(),
        })
    }

    pub fn is_uniform(&self) -> bool {
        self.members.windows(2).all(|w| w[0].len() == w[1].len())
    }

    /// Elements renamed by `f`; `f` must be injective on the ground set.
    pub fn relabel(&self, f: impl Fn(Elem) -> Elem) -> Result<Clutter> {
        Clutter::new(
            self.ground.iter().map(|&e| f(e)),
            self.members.iter().map(|m| m.iter().map(|&e| f(e)).collect()).collect(),
        )
    }

    pub fn incidence_matrix(&self) -> ZeroOneMatrix {
        ZeroOneMatrix::from_rows(
            self.members
                .iter()
                .map(|m| self.ground.iter().map(|e| m.binary_search(e).is_ok()).collect())
                .collect(),
            (0..self.members.len() as u32).collect(),
            self.ground.clone(),
        )
    }

    /// Membership bitmasks over ground positions (ground must fit in 64 bits).
    pub(crate) fn masks(&self) -> Vec<u64> {
        debug_assert!(self.ground.len() <= 64);
        self.members
            .iter()
            .map(|m| {
                m.iter()
                    .map(|e| 1u64 << self.element_index(*e).unwrap())
                    .fold(0, |a, b| a | b)
            })
            .collect()
    }

    /// Returns `k` and a relabelling onto `{0..k}` when this clutter is the
    /// degenerate projective plane `{{1..k}, {0,1}, ..., {0,k}}`.
    pub fn degenerate_projective_plane(&self) -> Option<DppWitness> {
        let n = self.ground.len();
        if n < 3 || self.members.len() != n {
            return None;
        }
        let k = n - 1;
        let union: BTreeSet<Elem> = self.members.iter().flatten().copied().collect();
        if union.len() != n {
            return None;
        }
        for big in self.members.iter().filter(|m| m.len() == k) {
            let center = *self.ground.iter().find(|e| big.binary_search(e).is_err()).unwrap();
            let mut hit: BTreeSet<Elem> = BTreeSet::new();
            let ok = self.members.iter().filter(|m| *m != big).all(|m| {
                m.len() == 2 && m.contains(&center) && {
                    let other = if m[0] == center { m[1] } else { m[0] };
                    hit.insert(other)
                }
            });
            if ok && hit.len() == k {
                let mut labels = vec![(center, 0usize)];
                labels.extend(big.iter().enumerate().map(|(i, &e)| (e, i + 1)));
                labels.sort();
                return Some(DppWitness { order: k, labels });
            }
        }
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DppWitness {
    pub order: usize,
    /// element -> label in `0..=order` (0 is the apex).
    pub labels: Vec<(Elem, usize)>,
}

/// Ground = all edge ids of `g`; members = edge sets of its flows.
pub fn flow_clutter(g: &SignedGraph, max_flows: usize) -> Result<Clutter> {
    let flows = enumerate_flows(g, max_flows)?;
    let mut members: Vec<Vec<Elem>> = flows.iter().map(|f| f.edge_ids()).collect();
    members.sort();
    Ok(Clutter {
        ground: g.edge_ids(),
        members,
    })
}

pub(crate) fn sorted_unique(it: impl IntoIterator<Item = Elem>) -> Vec<Elem> {
    let mut v: Vec<Elem> = it.into_iter().collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// `a ⊆ b` for sorted slices.
pub(crate) fn is_subset(a: &[Elem], b: &[Elem]) -> bool {
    let mut it = b.iter();
    a.iter().all(|x| it.by_ref().any(|y| y == x))
}
