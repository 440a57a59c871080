//! Machine-readable verification reports.

use serde::{Deserialize, Serialize};

/// Outcome of one verification check over a set of probe states.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub max_residual: f64,
    pub pass: bool,
    pub probes: usize,
}

impl CheckReport {
    /// Pass iff `max_residual ≤ threshold`. Exact checks report a residual of
    /// 0.0 and a threshold of 0.0.
    pub fn new(check: &str, max_residual: f64, threshold: f64, probes: usize) -> Self {
        // canonicalize -0.0 so reports serialize identically
        let max_residual = if max_residual == 0.0 { 0.0 } else { max_residual };
        Self {
            check: check.to_string(),
            max_residual,
            pass: max_residual <= threshold,
            probes,
        }
    }

    pub fn failed(check: &str, probes: usize) -> Self {
        Self {
            check: check.to_string(),
            max_residual: f64::INFINITY,
            pass: false,
            probes,
        }
    }
}

/// Result of a Monte Carlo resolution-of-identity run.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ResolveReport {
    pub irrep: Vec<u32>,
    pub dim: usize,
    pub samples: usize,
    /// Fitted proportionality constant Tr(Ô)/d.
    pub c: f64,
    pub max_offdiag: f64,
    pub max_diag_dev: f64,
    /// Largest standard error among the two extremal entries.
    pub stderr: f64,
    pub pass: bool,
    pub seed: u64,
}
