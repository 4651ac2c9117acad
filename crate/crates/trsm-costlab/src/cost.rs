//! The alpha-beta-gamma cost algebra shared by all other modules.
//!
//! Costs are `(F, W, S)` vectors: flops, words moved, and messages, all
//! counted along the critical path. Dependent phases add componentwise
//! (`seq`); independent parallel branches contribute their componentwise
//! maximum (`par`), which keeps the vector machine-independent until
//! [`CostVector::total_time`] applies a machine at the very end.
//!
//! Components are kept in `f64`. The recursions in [`crate::sim`] only ever
//! produce dyadic rationals well below 2^53, so all arithmetic here is exact
//! for shapes of practical size.

use std::ops::Add;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Flops, words, and messages charged along a critical path.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CostVector {
    /// Flop count F.
    pub flops: f64,
    /// Bandwidth W: words sent and received.
    pub words: f64,
    /// Latency S: messages sent and received.
    pub messages: f64,
}

impl CostVector {
    pub const ZERO: CostVector = CostVector {
        flops: 0.0,
        words: 0.0,
        messages: 0.0,
    };

    pub fn new(flops: f64, words: f64, messages: f64) -> Self {
        debug_assert!(flops >= 0.0 && words >= 0.0 && messages >= 0.0);
        CostVector {
            flops,
            words,
            messages,
        }
    }

    /// Sequential composition: dependent phases add along the critical path.
    pub fn seq(self, other: CostVector) -> CostVector {
        CostVector {
            flops: self.flops + other.flops,
            words: self.words + other.words,
            messages: self.messages + other.messages,
        }
    }

    /// Parallel composition: independent branches contribute their
    /// componentwise maximum.
    pub fn par(self, other: CostVector) -> CostVector {
        CostVector {
            flops: self.flops.max(other.flops),
            words: self.words.max(other.words),
            messages: self.messages.max(other.messages),
        }
    }

    /// `T = alpha·S + beta·W + gamma·F`, evaluated in that term order.
    pub fn total_time(self, machine: &MachineParams) -> f64 {
        machine.alpha * self.messages + machine.beta * self.words + machine.gamma * self.flops
    }
}

impl Add for CostVector {
    type Output = CostVector;

    fn add(self, rhs: CostVector) -> CostVector {
        self.seq(rhs)
    }
}

impl std::iter::Sum for CostVector {
    fn sum<I: Iterator<Item = CostVector>>(iter: I) -> CostVector {
        iter.fold(CostVector::ZERO, CostVector::seq)
    }
}

/// Per-unit machine costs: seconds per message, word, and flop.
///
/// Loadable from JSON with keys `"alpha"`, `"beta"`, `"gamma"`; absent keys
/// fall back to documentation-only defaults (1e-6, 1e-9, 1e-11 seconds).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MachineParams {
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    #[serde(default = "default_beta")]
    pub beta: f64,
    #[serde(default = "default_gamma")]
    pub gamma: f64,
}

fn default_alpha() -> f64 {
    1e-6
}

fn default_beta() -> f64 {
    1e-9
}

fn default_gamma() -> f64 {
    1e-11
}

impl Default for MachineParams {
    fn default() -> Self {
        MachineParams {
            alpha: default_alpha(),
            beta: default_beta(),
            gamma: default_gamma(),
        }
    }
}

impl MachineParams {
    pub fn from_json_str(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }

    pub fn from_json_file(path: &std::path::Path) -> std::io::Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json_str(&text)
            .map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidData, e))
    }
}

/// A TRSM instance on a virtual machine: order n, right-hand sides k,
/// processors p, and the base-case order n0 at which recursion stops.
///
/// Construction enforces `n, k, p >= 1` and `1 <= n0 <= n`. Power-of-two
/// requirements are the simulator's, enforced at simulate entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ProblemShape {
    pub n: u64,
    pub k: u64,
    pub p: u64,
    pub n0: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShapeError {
    #[error("dimensions must be at least 1 (got n={n}, k={k}, p={p})")]
    ZeroDimension { n: u64, k: u64, p: u64 },
    #[error("base-case order n0={n0} must satisfy 1 <= n0 <= n={n}")]
    BadBaseCase { n0: u64, n: u64 },
}

impl ProblemShape {
    pub fn new(n: u64, k: u64, p: u64, n0: u64) -> Result<Self, ShapeError> {
        if n == 0 || k == 0 || p == 0 {
            return Err(ShapeError::ZeroDimension { n, k, p });
        }
        if n0 == 0 || n0 > n {
            return Err(ShapeError::BadBaseCase { n0, n });
        }
        Ok(ProblemShape { n, k, p, n0 })
    }

    /// The regime ratio `r = k/n`.
    pub fn ratio(&self) -> f64 {
        self.k as f64 / self.n as f64
    }
}
