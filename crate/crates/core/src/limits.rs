use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::{Error, Result};

/// Search and enumeration caps shared by all modules.
///
/// Exceeding a cap yields [`Error::SizeLimit`] (or [`Error::Deadline`]),
/// which callers must treat as "inconclusive", never as a negative answer.
#[derive(Debug, Clone, Serialize)]
pub struct Limits {
    pub max_flows: usize,
    pub max_blocker_ground: usize,
    pub max_vertex_ground: usize,
    pub max_members: usize,
    pub max_iso_ground: usize,
    pub max_matrix_dim: usize,
    pub max_brute_force_vertices: usize,
    pub max_exact_edges: usize,
    pub max_working_set: usize,
    /// Search states explored by the strong-minor search per target.
    pub max_minor_states: usize,
    /// Largest family parameter `k` tried by the forbidden-minor detectors.
    pub max_family_k: usize,
    #[serde(skip)]
    pub deadline: Option<Deadline>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_flows: 1_000_000,
            max_blocker_ground: 24,
            max_vertex_ground: 16,
            max_members: 200,
            max_iso_ground: 14,
            max_matrix_dim: 20,
            max_brute_force_vertices: 12,
            max_exact_edges: 24,
            max_working_set: 5_000,
            max_minor_states: 100_000,
            max_family_k: 9,
            deadline: None,
        }
    }
}

impl Limits {
    pub fn with_deadline(mut self, budget: Duration) -> Self {
        self.deadline = Some(Deadline::after(budget));
        self
    }

    pub(crate) fn check_deadline(&self) -> Result<()> {
        match &self.deadline {
            Some(d) => d.check(),
            None => Ok(()),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Deadline {
    start: Instant,
    budget: Duration,
}

impl Deadline {
    pub fn after(budget: Duration) -> Self {
        Deadline {
            start: Instant::now(),
            budget,
        }
    }

    pub fn check(&self) -> Result<()> {
        if self.start.elapsed() > self.budget {
            Err(Error::Deadline(self.budget))
        } else {
            Ok(())
        }
    }
}
