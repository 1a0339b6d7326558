//! Shared fixtures for the solver benchmarks.

use aisle_cop::instances::{gen_zipf, GenConfig};
use aisle_cop::AisleGraph;

/// Deterministic benchmark instance.
pub fn instance(m: usize, n: usize, theta: f64) -> AisleGraph {
    gen_zipf(&GenConfig::new(m, n, theta, 0x5eed))
}
