//! Sequential best-response dynamics.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashSet;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{count_productive, PggInstance};
use crate::graph::Profile;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Schedule {
    /// Scan nodes cyclically from just after the last updated node.
    RoundRobin,
    /// Always update the smallest-id deviating node.
    LowestDeviator,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Terminal {
    Fixpoint,
    Cycle,
    CapReached,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DynamicsStep {
    pub step: usize,
    pub node: usize,
    /// Hash of the profile after the update.
    pub profile_hash: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DynamicsTrace {
    pub steps: Vec<DynamicsStep>,
    pub terminal: Terminal,
    #[serde(rename = "final")]
    pub final_profile: Profile,
}

fn profile_hash(s: &Profile) -> u64 {
    let mut h = DefaultHasher::new();
    s.hash(&mut h);
    h.finish()
}

/// Runs at most `cap` single-node updates from `start`.
///
/// Stops at a PNE (`Fixpoint`), on revisiting a state (`Cycle`), or after
/// `cap` updates. Under round-robin the scan position is part of the state.
pub fn br_dynamics(
    inst: &PggInstance,
    start: &Profile,
    schedule: Schedule,
    cap: usize,
) -> Result<DynamicsTrace> {
    let n = inst.n();
    if start.len() != n {
        return Err(Error::LengthMismatch {
            profile: start.len(),
            nodes: n,
        });
    }
    if cap == 0 {
        return Err(Error::InvalidParameter("dynamics cap must be at least 1".into()));
    }
    let deviates = |s: &Profile, i: usize| s.get(i) != inst.pattern.query(count_productive(&inst.graph, s, i));

    let mut s = start.clone();
    let mut cursor = 0usize;
    let mut visited: HashSet<(Profile, usize)> = HashSet::new();
    let mut steps = Vec::new();
    let terminal = loop {
        let key_cursor = match schedule {
            Schedule::RoundRobin => cursor,
            Schedule::LowestDeviator => 0,
        };
        if !visited.insert((s.clone(), key_cursor)) {
            break Terminal::Cycle;
        }
        let next = match schedule {
            Schedule::LowestDeviator => (0..n).find(|&i| deviates(&s, i)),
            Schedule::RoundRobin => (0..n).map(|k| (cursor + k) % n).find(|&i| deviates(&s, i)),
        };
        let Some(i) = next else {
            break Terminal::Fixpoint;
        };
        if steps.len() == cap {
            break Terminal::CapReached;
        }
        s.set(i, !s.get(i));
        cursor = (i + 1) % n;
        steps.push(DynamicsStep {
            step: steps.len() + 1,
            node: i,
            profile_hash: profile_hash(&s),
        });
    };
    Ok(DynamicsTrace {
        steps,
        terminal,
        final_profile: s,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::pattern::Pattern;
    use crate::solve::structured::four_triangle_chain;

    #[test]
    fn threshold_two_on_an_edge() {
        // [1,1] on a single edge from 00: node 0 flips to 1, then node 1 already best-responds
        let inst = PggInstance::new(Graph::path(2), Pattern::from_bits(&[1, 1]));
        let tr = br_dynamics(&inst, &Profile::zeros(2), Schedule::LowestDeviator, 10).unwrap();
        assert_eq!(tr.terminal, Terminal::Fixpoint);
        assert!(tr.steps.len() <= 2);
        assert_eq!(tr.final_profile, Profile::ones(2));
        assert!(inst.is_pne(&tr.final_profile).unwrap());
    }

    #[test]
    fn best_shot_reaches_maximal_independent_set() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 3), (1, 4)]).unwrap();
        let inst = PggInstance::new(g.clone(), Pattern::best_shot());
        for sched in [Schedule::LowestDeviator, Schedule::RoundRobin] {
            let tr = br_dynamics(&inst, &Profile::zeros(6), sched, 1000).unwrap();
            assert_eq!(tr.terminal, Terminal::Fixpoint);
            let s = &tr.final_profile;
            for (u, v) in g.edges() {
                assert!(!(s.get(u) && s.get(v)), "not independent");
            }
            for i in 0..6 {
                assert!(s.get(i) || g.neighbors(i).iter().any(|&j| s.get(j)), "not maximal");
            }
        }
    }

    #[test]
    fn no_fixpoint_without_pne() {
        let inst = PggInstance::new(four_triangle_chain(), Pattern::zero_or_two());
        for sched in [Schedule::LowestDeviator, Schedule::RoundRobin] {
            for code in [0u32, 0b1_0101_0101, 0b1_1111_1111, 0b0_1100_1010] {
                let start = Profile((0..9).map(|i| code >> i & 1 == 1).collect());
                let tr = br_dynamics(&inst, &start, sched, 10_000).unwrap();
                assert_ne!(tr.terminal, Terminal::Fixpoint);
            }
        }
    }

    #[test]
    fn cap_and_errors() {
        let inst = PggInstance::new(four_triangle_chain(), Pattern::zero_or_two());
        let tr = br_dynamics(&inst, &Profile::zeros(9), Schedule::RoundRobin, 1).unwrap();
        assert!(tr.steps.len() <= 1);
        assert!(br_dynamics(&inst, &Profile::zeros(8), Schedule::RoundRobin, 5).is_err());
        assert!(br_dynamics(&inst, &Profile::zeros(9), Schedule::RoundRobin, 0).is_err());
    }
}
