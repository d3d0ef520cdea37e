use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Desk-scale bounds for the exponential enumerations (circuits, bonds, realization search).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Largest ground set (or vertex set, for bond enumeration) enumerated exhaustively.
    pub max_ground: usize,
    /// Upper bound on elementary steps of a single enumeration.
    pub max_work: u64,
    /// When set, circuit enumeration stops at this circuit size, which lifts `max_ground`.
    pub max_circuit_size: Option<usize>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_ground: 24,
            max_work: 20_000_000,
            max_circuit_size: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{what} exceeds the desk-scale limit ({size} > {limit})")]
pub struct ScaleExceeded {
    pub what: String,
    pub size: u64,
    pub limit: u64,
}

impl ScaleExceeded {
    pub fn new(what: impl Into<String>, size: u64, limit: u64) -> Self {
        ScaleExceeded {
            what: what.into(),
            size,
            limit,
        }
    }
}

/// Counts work units against [`Limits::max_work`].
pub(crate) struct Budget {
    used: u64,
    limit: u64,
    what: &'static str,
}

impl Budget {
    pub(crate) fn new(limits: &Limits, what: &'static str) -> Self {
        Budget {
            used: 0,
            limit: limits.max_work,
            what,
        }
    }

    pub(crate) fn spend(&mut self, units: u64) -> Result<(), ScaleExceeded> {
        self.used += units;
        if self.used > self.limit {
            Err(ScaleExceeded::new(self.what, self.used, self.limit))
        } else {
            Ok(())
        }
    }
}
