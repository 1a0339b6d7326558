//! Budget-constrained reward routing on aisle graphs.
//!
//! An aisle graph models row-structured workspaces (vineyards, warehouse
//! shelving): `m` reward-bearing rows joined only at their ends, so a
//! robot can switch row exclusively at the side columns. Given a budget of
//! unit-cost edge traversals, the goal is a closed walk from the corner
//! vertex `1:0` collecting the largest distinct-vertex reward.
//!
//! The general problem is hard, so this crate provides:
//!
//! - exact polynomial solvers for two restrictions: tours of complete row
//!   traversals ([`full_row`]) and tours confined to the left column
//!   ([`single_column`]);
//! - composite heuristics for the general problem built on those two,
//!   plus greedy baselines ([`heuristics`]);
//! - brute-force [`oracle`]s that certify the solvers on small instances;
//! - seeded instance generators and a plain-text instance format
//!   ([`instances`]);
//! - a deterministic benchmark [`harness`] that sweeps budgets across
//!   generated instances and emits plot-ready CSV.
//!
//! The `aisle-cop` binary in the companion CLI crate exposes all of this
//! on the command line.

pub mod algo;
mod error;
pub mod full_row;
pub mod graph;
pub mod harness;
pub mod heuristics;
pub mod instances;
pub mod oracle;
pub mod single_column;

pub use algo::Algorithm;
pub use error::Error;
pub use graph::{
    distinct_reward, parse_vertex_line, tour_cost, validate_tour, AisleGraph, SolveResult, Tour,
    TourAnnotation, ValidationReport, Variant, VertexId,
};
