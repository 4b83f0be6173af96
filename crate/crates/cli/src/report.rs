//! The JSON report emitted by every subcommand.

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

/// One report per invocation. Field elements are serialized canonically
/// (decimal for prime fields, `a/b` for rationals). Reports with the same
/// seed and input are byte-identical except for `wall_time_ms`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct JsonReport {
    pub schema_version: u32,
    pub command: String,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shift: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stabilizer_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stabilizer_basis: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub essential_count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transform: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solution_dim: Option<usize>,
    pub queries_used: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u128>,
    pub seed: u64,
    pub epsilon: f64,
    pub algorithm: String,
}

impl JsonReport {
    pub fn new(command: &str, status: &str, seed: u64, epsilon: f64, algorithm: &str) -> Self {
        JsonReport {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            status: status.to_string(),
            shift: None,
            stabilizer_dim: None,
            stabilizer_basis: None,
            degree: None,
            essential_count: None,
            transform: None,
            coefficients: None,
            solution_dim: None,
            queries_used: 0,
            wall_time_ms: None,
            seed,
            epsilon,
            algorithm: algorithm.to_string(),
        }
    }

    /// Copy with the timing field cleared, for reproducibility comparisons.
    pub fn without_timing(&self) -> JsonReport {
        let mut r = self.clone();
        r.wall_time_ms = None;
        r
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}
