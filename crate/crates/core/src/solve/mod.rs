//! Equilibrium search: exhaustive enumeration, the propositional route,
//! best-response dynamics and the closed-form constructions on paths and cycles.

pub mod cnf;
pub mod dynamics;
pub mod exhaustive;
pub mod sat;
pub mod structured;

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::PggInstance;
use crate::graph::Profile;

pub use cnf::{encode_ntpne_cnf, CnfEncoding};
pub use dynamics::{br_dynamics, DynamicsTrace, Schedule, Terminal};
pub use exhaustive::{ExhaustiveSearch, SearchStats};
pub use structured::{build_cycle_pne, build_path_pne, four_triangle_chain};

pub const DEFAULT_EXHAUSTIVE_CAP: usize = 26;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Brute,
    Cnf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Found,
    None,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveStats {
    pub nodes_explored: u64,
    pub conflicts: u64,
    /// Wall-clock time; left out of JSON so identical runs serialize identically.
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveResult {
    pub status: Status,
    pub method: Method,
    pub witness: Option<Profile>,
    pub stats: SolveStats,
}

impl SolveResult {
    pub fn found(&self) -> bool {
        self.status == Status::Found
    }
}

fn check_cap(inst: &PggInstance, cap: usize) -> Result<()> {
    if inst.n() > cap {
        return Err(Error::ExceedsCap { nodes: inst.n(), cap });
    }
    Ok(())
}

/// Up to `limit` non-trivial equilibria in lexicographic order (node 0 most significant).
pub fn enumerate_ntpne(inst: &PggInstance, limit: usize, cap: usize) -> Result<Vec<Profile>> {
    check_cap(inst, cap)?;
    if limit == 0 {
        return Err(Error::InvalidParameter("limit must be at least 1".into()));
    }
    let (found, _) = ExhaustiveSearch::new(&inst.graph, &inst.pattern)
        .nontrivial(true)
        .collect(limit);
    Ok(found)
}

/// Decides whether `inst` has a non-trivial PNE, returning a verified witness.
pub fn solve_ntpne(inst: &PggInstance, method: Method, cap: usize) -> Result<SolveResult> {
    let start = Instant::now();
    let (witness, mut stats) = match method {
        Method::Brute => {
            check_cap(inst, cap)?;
            let (w, s) = ExhaustiveSearch::new(&inst.graph, &inst.pattern)
                .nontrivial(true)
                .first();
            (
                w,
                SolveStats {
                    nodes_explored: s.nodes,
                    conflicts: s.conflicts,
                    ..Default::default()
                },
            )
        }
        Method::Cnf => {
            let enc = encode_ntpne_cnf(inst);
            let (out, s) = sat::solve_cnf(enc.num_vars, &enc.clauses);
            let w = match out {
                sat::SatOutcome::Sat(model) => Some(enc.decode(&model)),
                sat::SatOutcome::Unsat => None,
            };
            (
                w,
                SolveStats {
                    nodes_explored: s.decisions,
                    conflicts: s.conflicts,
                    ..Default::default()
                },
            )
        }
    };
    if let Some(w) = &witness {
        // a failure here is a solver bug, not an input error
        assert!(
            inst.is_ntpne(w)?,
            "{method:?} solver returned a profile that is not a non-trivial PNE"
        );
    }
    stats.elapsed = start.elapsed();
    Ok(SolveResult {
        status: if witness.is_some() { Status::Found } else { Status::None },
        method,
        witness,
        stats,
    })
}
