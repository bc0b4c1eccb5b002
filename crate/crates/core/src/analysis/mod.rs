//! Forbidden strong-minor detectors and the structural pipelines built on
//! them: positive-tree and positive-circuit idealness, terminal-path
//! clutters and the fat-core classification of weakly MNI flow clutters.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::clutter::{flow_clutter, is_balanced_matrix, Clutter, Elem};
use crate::error::{Error, Result};
use crate::exactlp::{
    is_fat_core, is_ideal, is_weakly_mni, lehman_verify, fat_core_screen, mni_contraction_search, LehmanReport,
    RatVec, ScreenMatch, ScreenVerdict,
};
use crate::graph::{
    apply_ops, generate, sign_isomorphism, strong_minor_reachable, verify_edge_mapping, EdgeId, Family, MinorOp,
    SignedGraph,
};
use crate::limits::Limits;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ForbiddenFamily {
    OddFlowStar,
    OddFlowCircuit,
    FlowSplitK5,
}

/// A replayable certificate that a graph has a forbidden strong minor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ForbiddenMinor {
    pub family: ForbiddenFamily,
    /// Family parameter; `None` for the split-K5 graph.
    pub k: Option<usize>,
    pub operations: Vec<MinorOp>,
    /// Surviving input edge id -> edge id in the generated family member.
    pub mapping: BTreeMap<EdgeId, EdgeId>,
}

impl ForbiddenMinor {
    pub fn target(&self) -> Result<SignedGraph> {
        generate(match (self.family, self.k) {
            (ForbiddenFamily::OddFlowStar, Some(k)) => Family::FlowStar(k),
            (ForbiddenFamily::OddFlowCircuit, Some(k)) => Family::FlowCircuit(k),
            (ForbiddenFamily::FlowSplitK5, None) => Family::FlowSplitK5,
            _ => return Err(Error::InvalidParameter("family parameter mismatch".into())),
        })
    }

    /// Replays the operations on `g` and checks the mapping is a signed
    /// isomorphism onto the family member.
    pub fn replays_on(&self, g: &SignedGraph) -> Result<bool> {
        let h = apply_ops(g, &self.operations)?;
        Ok(verify_edge_mapping(&h, &self.target()?, &self.mapping))
    }
}

fn search_family(
    g: &SignedGraph,
    family: ForbiddenFamily,
    k: Option<usize>,
    target: Family,
    limits: &Limits,
) -> Result<Option<ForbiddenMinor>> {
    let h = generate(target)?;
    Ok(strong_minor_reachable(g, &h, limits)?.map(|w| ForbiddenMinor {
        family,
        k,
        operations: w.operations,
        mapping: w.mapping,
    }))
}

/// Tries odd `k` from `first` up to the family cap. `fits(k)` tells whether
/// `g` is large enough to contain the member with parameter `k`; running out
/// of `k` while it still fits is inconclusive.
fn search_odd(
    g: &SignedGraph,
    first: usize,
    fits: impl Fn(usize) -> bool,
    make: impl Fn(usize) -> (ForbiddenFamily, Family),
    limits: &Limits,
) -> Result<Option<ForbiddenMinor>> {
    let mut k = first;
    while fits(k) {
        if k > limits.max_family_k {
            return Err(Error::size_limit("forbidden family parameter", k, limits.max_family_k));
        }
        let (fam, target) = make(k);
        if let Some(w) = search_family(g, fam, Some(k), target, limits)? {
            return Ok(Some(w));
        }
        k += 2;
    }
    Ok(None)
}

/// An odd flow-star strong minor, if one exists.
///
/// When `G+` is a spanning tree the flow matrix is unbalanced exactly when
/// such a minor exists; the minor is read off an odd 2-circulant submatrix
/// by deleting the edges outside its flows and contracting positive edges
/// outside its columns. Otherwise every odd `k` is searched.
pub fn detect_odd_flow_star(g: &SignedGraph, limits: &Limits) -> Result<Option<ForbiddenMinor>> {
    if g.is_weakly_balanced() {
        return Ok(None);
    }
    if g.positive_is_tree() {
        match star_from_matrix(g, limits) {
            Ok(Some(TreeStar::Found(w))) => return Ok(Some(w)),
            Ok(None) => return Ok(None),
            Ok(Some(TreeStar::NotReplayable)) | Err(Error::SizeLimit { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    let vertices = g.non_isolated_vertices().len();
    search_odd(
        g,
        3,
        |k| g.positive_count() >= k && g.negative_count() >= k && vertices > k,
        |k| (ForbiddenFamily::OddFlowStar, Family::FlowStar(k)),
        limits,
    )
}

enum TreeStar {
    Found(ForbiddenMinor),
    NotReplayable,
}

fn star_from_matrix(g: &SignedGraph, limits: &Limits) -> Result<Option<TreeStar>> {
    let f = flow_clutter(g, limits.max_flows)?;
    let a = f.incidence_matrix();
    let Some(w) = is_balanced_matrix(&a, limits.max_matrix_dim)? else {
        return Ok(None);
    };
    let mut keep: Vec<Elem> = w.rows.iter().flat_map(|&r| f.members()[r].iter().copied()).collect();
    keep.sort_unstable();
    keep.dedup();
    let cols: Vec<Elem> = w.cols.iter().map(|&c| a.col_labels()[c]).collect();
    let mut operations: Vec<MinorOp> = g
        .edge_ids()
        .into_iter()
        .filter(|e| keep.binary_search(e).is_err())
        .map(MinorOp::Delete)
        .collect();
    operations.extend(
        g.positive_edges()
            .filter(|e| keep.binary_search(&e.id).is_ok() && !cols.contains(&e.id))
            .map(|e| MinorOp::Contract(e.id)),
    );
    let k = w.rows.len();
    let Ok(h) = apply_ops(g, &operations) else {
        return Ok(Some(TreeStar::NotReplayable));
    };
    Ok(Some(match sign_isomorphism(&h, &generate(Family::FlowStar(k))?) {
        Some(mapping) => TreeStar::Found(ForbiddenMinor {
            family: ForbiddenFamily::OddFlowStar,
            k: Some(k),
            operations,
            mapping,
        }),
        None => TreeStar::NotReplayable,
    }))
}

/// An odd flow-circuit strong minor with at least five positive edges.
pub fn detect_odd_flow_circuit(g: &SignedGraph, limits: &Limits) -> Result<Option<ForbiddenMinor>> {
    if g.is_weakly_balanced() {
        return Ok(None);
    }
    let vertices = g.non_isolated_vertices().len();
    search_odd(
        g,
        5,
        |k| g.positive_count() >= k && g.negative_count() >= k && vertices >= k,
        |k| (ForbiddenFamily::OddFlowCircuit, Family::FlowCircuit(k)),
        limits,
    )
}

pub fn detect_flow_split_k5(g: &SignedGraph, limits: &Limits) -> Result<Option<ForbiddenMinor>> {
    search_family(g, ForbiddenFamily::FlowSplitK5, None, Family::FlowSplitK5, limits)
}

/// Idealness decided by a forbidden-minor detector, cross-checked against
/// vertex enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Characterization {
    pub ideal: bool,
    pub witness: Option<ForbiddenMinor>,
    /// Fractional vertex found by vertex enumeration, when non-ideal.
    pub fractional_vertex: Option<RatVec>,
}

fn characterize(
    g: &SignedGraph,
    claim: &str,
    witness: Option<ForbiddenMinor>,
    limits: &Limits,
) -> Result<Characterization> {
    if let Some(w) = &witness {
        if !w.replays_on(g)? {
            return Err(falsification(format!("{claim}: witness does not replay"), g, w));
        }
    }
    let verdict = is_ideal(&flow_clutter(g, limits.max_flows)?, limits)?;
    let ideal = witness.is_none();
    if ideal != verdict.ideal {
        return Err(falsification(
            format!("{claim}: detector says ideal={ideal}, vertex enumeration says {}", verdict.ideal),
            g,
            &verdict,
        ));
    }
    Ok(Characterization {
        ideal,
        witness,
        fractional_vertex: verdict.fractional_vertex,
    })
}

fn falsification(claim: String, g: &SignedGraph, detail: &impl Serialize) -> Error {
    let bundle = serde_json::json!({ "graph": g, "detail": detail });
    Error::Falsification {
        claim,
        bundle: bundle.to_string(),
    }
}

/// For `G+` a spanning tree: ideal iff there is no odd flow-star strong minor.
pub fn tree_idealness(g: &SignedGraph, limits: &Limits) -> Result<Characterization> {
    if !g.positive_is_tree() {
        return Err(Error::Precondition("positive edges do not form a spanning tree".into()));
    }
    let w = detect_odd_flow_star(g, limits)?;
    characterize(g, "positive-tree characterization", w, limits)
}

/// For `G+` a circuit: ideal iff there is no odd flow-circuit strong minor
/// with at least five positive edges.
pub fn circuit_idealness(g: &SignedGraph, limits: &Limits) -> Result<Characterization> {
    if !g.positive_is_circuit() {
        return Err(Error::Precondition("positive edges do not form a circuit".into()));
    }
    let w = detect_odd_flow_circuit(g, limits)?;
    characterize(g, "positive-circuit characterization", w, limits)
}

/// The flow clutter with every negative edge contracted: the clutter of
/// positive paths joining the ends of a negative edge, on ground `E+`.
pub fn terminal_path_clutter(g: &SignedGraph, limits: &Limits) -> Result<Clutter> {
    let negatives: Vec<Elem> = g.negative_edges().map(|e| e.id).collect();
    flow_clutter(g, limits.max_flows)?.contract_all(&negatives)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FatCoreReport {
    pub vertex: RatVec,
    pub e_minus_zero: Vec<EdgeId>,
    /// Every negative edge is zero at the vertex; the fat-core clauses are
    /// then vacuous.
    pub all_negatives_zero: bool,
    pub minor: Clutter,
    pub lehman: Option<LehmanReport>,
    pub fat: Option<bool>,
    pub screen: Option<ScreenVerdict>,
}

/// For a weakly MNI graph: find a fractional vertex whose zero negatives
/// contract to an MNI clutter and, when some negative edge stays nonzero,
/// check that the core is fat and is neither the Fano plane nor the blocker
/// of the K5 triangles. Violations are falsification errors.
pub fn fat_core_pipeline(g: &SignedGraph, limits: &Limits) -> Result<FatCoreReport> {
    let cert = is_weakly_mni(g, limits)?;
    if !cert.verdict {
        return Err(Error::Precondition("graph is not weakly MNI".into()));
    }
    let Some(found) = mni_contraction_search(g, limits)? else {
        return Err(falsification(
            "weakly MNI graph without an MNI contraction of zero negatives".into(),
            g,
            &cert,
        ));
    };
    let all_negatives_zero = found.e_minus_zero.len() == g.negative_count();
    let mut report = FatCoreReport {
        vertex: found.vertex,
        e_minus_zero: found.e_minus_zero,
        all_negatives_zero,
        minor: found.minor,
        lehman: None,
        fat: None,
        screen: None,
    };
    if all_negatives_zero {
        return Ok(report);
    }
    let lehman = lehman_verify(&report.minor, limits)?;
    if lehman.dpp_order.is_some() {
        return Err(falsification("MNI contraction is a degenerate projective plane".into(), g, &lehman));
    }
    let fat = is_fat_core(&report.minor, limits)?;
    if !fat {
        return Err(falsification("core of the MNI contraction is not fat".into(), g, &lehman));
    }
    let screen = fat_core_screen(&report.minor, limits)?;
    if matches!(screen.core, ScreenMatch::F7 | ScreenMatch::BlockerTauK5) {
        return Err(falsification(
            "core of the MNI contraction is the Fano plane or the K5-triangle blocker".into(),
            g,
            &screen,
        ));
    }
    report.lehman = Some(lehman);
    report.fat = Some(fat);
    report.screen = Some(screen);
    Ok(report)
}
