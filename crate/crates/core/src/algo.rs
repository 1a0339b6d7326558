//! Name-based dispatch over the nine solvers.

use std::fmt;
use std::str::FromStr;

use crate::graph::{AisleGraph, SolveResult};
use crate::heuristics;
use crate::{full_row, single_column, Error};

/// The solvers exposed to the command line and the benchmark harness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Ofr,
    OfrI,
    Osc,
    H1,
    H2,
    H3,
    Hgc,
    Gfr,
    Gpr,
}

impl Algorithm {
    pub const ALL: [Algorithm; 9] = [
        Algorithm::Ofr,
        Algorithm::OfrI,
        Algorithm::Osc,
        Algorithm::H1,
        Algorithm::H2,
        Algorithm::H3,
        Algorithm::Hgc,
        Algorithm::Gfr,
        Algorithm::Gpr,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Ofr => "ofr",
            Algorithm::OfrI => "ofr_i",
            Algorithm::Osc => "osc",
            Algorithm::H1 => "h1",
            Algorithm::H2 => "h2",
            Algorithm::H3 => "h3",
            Algorithm::Hgc => "hgc",
            Algorithm::Gfr => "gfr",
            Algorithm::Gpr => "gpr",
        }
    }

    /// Every solver except the single-column one needs the right-hand
    /// interconnect column.
    pub fn requires_two_sided(self) -> bool {
        !matches!(self, Algorithm::Osc)
    }

    pub fn solve(self, g: &AisleGraph, budget: usize) -> Result<SolveResult, Error> {
        if self.requires_two_sided() && !g.is_two_sided() {
            return Err(Error::RequiresTwoSided {
                algorithm: self.name(),
            });
        }
        Ok(match self {
            Algorithm::Ofr => full_row::solve_ofr(g, budget),
            Algorithm::OfrI => full_row::solve_ofr_i(g, budget),
            Algorithm::Osc => single_column::solve_osc(g, budget, false).0,
            Algorithm::H1 => heuristics::solve_h1(g, budget),
            Algorithm::H2 => heuristics::solve_h2(g, budget),
            Algorithm::H3 => heuristics::solve_h3(g, budget),
            Algorithm::Hgc => heuristics::solve_hgc(g, budget),
            Algorithm::Gfr => heuristics::solve_gfr(g, budget),
            Algorithm::Gpr => heuristics::solve_gpr(g, budget),
        })
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Algorithm, Error> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| {
                Error::Config(format!(
                    "unknown algorithm {s:?}; expected one of {}",
                    Algorithm::ALL.map(|a| a.name()).join(", ")
                ))
            })
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
