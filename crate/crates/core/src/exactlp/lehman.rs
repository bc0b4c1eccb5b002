use serde::Serialize;

use super::{is_mni, vertices, Rat, RatVec};
use crate::clutter::{blocker, is_isomorphic, known_family, Clutter, KnownFamily};
use crate::error::{Error, Result};
use crate::limits::Limits;

/// Outcome of each structural clause for an MNI clutter that is not a
/// degenerate projective plane. `None` means the clause was not evaluated.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct LehmanClauses {
    /// Both cores have exactly `n` members.
    pub core_sizes: Option<bool>,
    /// `cb >= n + 1`.
    pub i: Option<bool>,
    /// Uniform member sizes `c` and `b` in the two cores.
    pub ii: Option<bool>,
    /// Every element lies in `c` core members and `b` blocker-core members.
    pub iii: Option<bool>,
    /// Pairing with `|C_i ∩ B_j| = cb - n + 1` on the diagonal, 1 off it.
    pub iv: Option<bool>,
    /// `#{i : e ∈ C_i, f ∈ B_i}` is `cb - n + 1` for `e = f`, 1 otherwise.
    pub v: Option<bool>,
    /// `(1/c)·1` is the only fractional vertex.
    pub unique_fractional_vertex: Option<bool>,
}

impl LehmanClauses {
    fn all(&self) -> [Option<bool>; 7] {
        [
            self.core_sizes,
            self.i,
            self.ii,
            self.iii,
            self.iv,
            self.v,
            self.unique_fractional_vertex,
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LehmanReport {
    pub n: usize,
    pub c: usize,
    pub b: usize,
    /// `cb - n + 1`.
    pub excess: i64,
    pub is_mni: bool,
    pub dpp_order: Option<usize>,
    pub clauses: LehmanClauses,
    /// Core member index -> paired blocker-core member index.
    pub pairing: Option<Vec<usize>>,
    pub unique_fractional_vertex: Option<RatVec>,
    /// `Some(true)` iff MNI and every clause holds; `None` when the clauses
    /// were skipped because the clutter is a degenerate projective plane.
    pub pass: Option<bool>,
}

/// Checks the core structure an MNI clutter must have: equal-size cores of
/// `n` members, regularity, the `cb - n + 1` pairing and the unique
/// fractional vertex `(1/c)·1`.
pub fn lehman_verify(clutter: &Clutter, limits: &Limits) -> Result<LehmanReport> {
    if clutter.is_degenerate() {
        return Err(Error::InvalidClutter("Lehman check needs a clutter with nonempty members".into()));
    }
    let n = clutter.ground().len();
    let mni = is_mni(clutter, limits)?;
    let core = clutter.core()?;
    let c = core.members()[0].len();
    if let Some(d) = clutter.degenerate_projective_plane() {
        return Ok(LehmanReport {
            n,
            c,
            b: 0,
            excess: 0,
            is_mni: mni,
            dpp_order: Some(d.order),
            clauses: LehmanClauses::default(),
            pairing: None,
            unique_fractional_vertex: None,
            pass: None,
        });
    }
    let bl = blocker(clutter, limits.max_blocker_ground)?;
    let bcore = bl.core()?;
    let b = bcore.members()[0].len();
    let excess = (c * b) as i64 - n as i64 + 1;

    let mut cl = LehmanClauses {
        core_sizes: Some(core.len() == n && bcore.len() == n),
        i: Some(c * b > n),
        ii: Some(core.is_uniform() && bcore.is_uniform()),
        iii: Some(clutter.ground().iter().all(|&e| core.degree(e) == c && bcore.degree(e) == b)),
        ..LehmanClauses::default()
    };

    let pairing = pair_cores(&core, &bcore, excess);
    cl.iv = Some(pairing.is_some());
    cl.v = pairing.as_ref().map(|p| {
        clutter.ground().iter().all(|&e| {
            clutter.ground().iter().all(|&f| {
                let cnt = p
                    .iter()
                    .enumerate()
                    .filter(|&(i, &j)| core.members()[i].contains(&e) && bcore.members()[j].contains(&f))
                    .count() as i64;
                cnt == if e == f { excess } else { 1 }
            })
        })
    });

    let frac: Vec<RatVec> = vertices(clutter, limits)?
        .into_iter()
        .filter(|v| !v.is_integral())
        .collect();
    let target = RatVec::constant(clutter.ground(), &Rat::new(1, c as i64));
    let unique = frac.len() == 1 && frac[0] == target;
    cl.unique_fractional_vertex = Some(unique);

    let pass = Some(mni && cl.all().iter().all(|x| *x == Some(true)));
    Ok(LehmanReport {
        n,
        c,
        b,
        excess,
        is_mni: mni,
        dpp_order: None,
        clauses: cl,
        pairing,
        unique_fractional_vertex: unique.then_some(target),
        pass,
    })
}

/// The permutation `i -> j` with `|C_i ∩ B_j| = excess`, all other
/// intersections being 1. For `excess != 1` each row determines its partner.
fn pair_cores(core: &Clutter, bcore: &Clutter, excess: i64) -> Option<Vec<usize>> {
    let (cm, bm) = (core.members(), bcore.members());
    if cm.len() != bm.len() {
        return None;
    }
    let inter = |i: usize, j: usize| cm[i].iter().filter(|e| bm[j].contains(e)).count() as i64;
    if excess == 1 {
        let all_one = (0..cm.len()).all(|i| (0..bm.len()).all(|j| inter(i, j) == 1));
        return all_one.then(|| (0..cm.len()).collect());
    }
    let mut pairing = Vec::with_capacity(cm.len());
    let mut taken = vec![false; bm.len()];
    for i in 0..cm.len() {
        let mut partner = None;
        for j in 0..bm.len() {
            match inter(i, j) {
                1 => {}
                x if x == excess && partner.is_none() => partner = Some(j),
                _ => return None,
            }
        }
        let j = partner?;
        if std::mem::replace(&mut taken[j], true) {
            return None;
        }
        pairing.push(j);
    }
    Some(pairing)
}

/// `excess >= 3` for an MNI clutter that is not a degenerate projective plane.
pub fn is_fat_core(clutter: &Clutter, limits: &Limits) -> Result<bool> {
    let r = lehman_verify(clutter, limits)?;
    if r.dpp_order.is_some() {
        return Err(Error::Precondition("degenerate projective plane has no Lehman constants".into()));
    }
    if !r.is_mni {
        return Err(Error::Precondition("clutter is not minimally non-ideal".into()));
    }
    if r.pass != Some(true) {
        return Err(Error::Precondition(format!("Lehman clauses fail: {:?}", r.clauses)));
    }
    Ok(r.excess >= 3)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScreenMatch {
    BlockerTauK5,
    F7,
    TauK5,
    None,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScreenVerdict {
    /// Match of the clutter itself.
    pub clutter: ScreenMatch,
    /// Match of its core.
    pub core: ScreenMatch,
}

/// Compares a clutter (and its core) against the known fat cores.
pub fn fat_core_screen(clutter: &Clutter, limits: &Limits) -> Result<ScreenVerdict> {
    let refs = [
        (ScreenMatch::BlockerTauK5, known_family(KnownFamily::BlockerTrianglesK5)?),
        (ScreenMatch::F7, known_family(KnownFamily::FanoF7)?),
        (ScreenMatch::TauK5, known_family(KnownFamily::TrianglesK5)?),
    ];
    let classify = |x: &Clutter| -> Result<ScreenMatch> {
        for (tag, r) in &refs {
            // cheap rejection before the ground-size cap applies
            if x.ground().len() != r.ground().len() || x.len() != r.len() {
                continue;
            }
            if is_isomorphic(x, r, limits.max_iso_ground)?.is_some() {
                return Ok(*tag);
            }
        }
        Ok(ScreenMatch::None)
    };
    Ok(ScreenVerdict {
        clutter: classify(clutter)?,
        core: classify(&clutter.core()?)?,
    })
}
