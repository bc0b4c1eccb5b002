//! Exact covering-polyhedron computations: vertex enumeration, idealness,
//! minimal non-idealness (plain and strong-minor variants) and the
//! structure checks for minimally non-ideal clutters.

mod ideal;
mod lehman;
mod rat;
mod vertices;

pub use ideal::{
    e_minus_zero, is_ideal, is_mni, is_weakly_mni, mni_contraction_search, IdealVerdict,
    ImmediateMinor, MniContraction, WeaklyMniCertificate,
};
pub use lehman::{is_fat_core, lehman_verify, fat_core_screen, LehmanReport, LehmanClauses, ScreenMatch, ScreenVerdict};
pub use rat::{Rat, RatVec};
pub use vertices::vertices;

pub(crate) use vertices::vertices_unchecked;
