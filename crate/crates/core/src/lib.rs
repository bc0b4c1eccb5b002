//! Exact tools for correlation clustering on signed graphs: flows and strong
//! minors, clutter algebra, exact covering-polyhedron vertex enumeration,
//! MNI certification, cycle-relaxation and exact clustering solvers, and
//! the forbidden-minor characterizations of flow-partitionability.

pub mod analysis;
pub mod cluster;
pub mod clutter;
mod error;
pub mod exactlp;
pub mod graph;
pub mod io;
mod limits;

pub use error::{Error, Result};
pub use limits::{Deadline, Limits};

pub use clutter::{Clutter, Elem};
pub use exactlp::{Rat, RatVec};
pub use graph::{EdgeId, Sign, SignedGraph};
