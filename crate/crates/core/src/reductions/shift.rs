//! The family of graphs relating an isolated-odd pattern to its left shift by one.
//!
//! `G_j` is `G` plus an Add-1 gadget on every original node and a Force-1
//! gadget on node `j`. Each original node then has exactly one extra producer
//! (its bridge) in every equilibrium, and node `j` is forced to produce, so
//! `(G, shift_left(T, 1))` has a non-trivial equilibrium iff some `(G_j, T)` does.

use crate::error::{Error, Result};
use crate::gadgets::{add1_gadget, force1_gadget, PortedSubgraph};
use crate::graph::{Graph, Profile};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftMember {
    pub graph: Graph,
    /// Number of original nodes; they keep ids `0..original`.
    pub original: usize,
    /// The node carrying the Force-1 gadget.
    pub forced: usize,
    pub m: usize,
    /// Offset of the Add-1 gadget attached to original node `i`.
    pub add1_offsets: Vec<usize>,
    pub force1_offset: usize,
}

impl ShiftMember {
    /// Bridge node of the Add-1 gadget on original node `i`.
    pub fn bridge(&self, i: usize) -> usize {
        self.add1_offsets[i] + add1_gadget(self.m).expect("m was validated").port("b")
    }

    /// Extends an equilibrium of the original graph (under the shifted pattern)
    /// to this member, filling gadgets from their witness tables. The forced
    /// node must produce.
    pub fn lift(&self, s: &Profile) -> Result<Profile> {
        if s.len() != self.original {
            return Err(Error::LengthMismatch {
                profile: s.len(),
                nodes: self.original,
            });
        }
        if !s.get(self.forced) {
            return Err(Error::InvalidParameter(format!(
                "node {} carries the Force-1 gadget and must produce",
                self.forced
            )));
        }
        let ag = add1_gadget(self.m)?;
        let fg = force1_gadget(self.m)?;
        let mut out = Profile::zeros(self.graph.n());
        for i in 0..self.original {
            out.set(i, s.get(i));
            let w = ag.witness_for(&[("v", s.get(i))]).expect("add1 covers both inputs");
            write_block(&mut out, self.add1_offsets[i], &ag, &w.assignment);
        }
        let w = fg.witness_for(&[("u", true)]).expect("force1 witness exists");
        write_block(&mut out, self.force1_offset, &fg, &w.assignment);
        Ok(out)
    }

    /// The original nodes' part of a profile on this member.
    pub fn restrict(&self, s: &Profile) -> Profile {
        Profile(s.as_slice()[..self.original].to_vec())
    }
}

fn write_block(out: &mut Profile, offset: usize, g: &PortedSubgraph, a: &Profile) {
    for k in 0..g.n() {
        out.set(offset + k, a.get(k));
    }
}

pub fn shift_family(g: &Graph, m: usize) -> Result<Vec<ShiftMember>> {
    let ag = add1_gadget(m)?;
    let fg = force1_gadget(m)?;
    let n = g.n();
    let mut base = g.clone();
    let mut add1_offsets = Vec::with_capacity(n);
    for i in 0..n {
        let off = base.append(&ag.graph);
        base.add_edge(i, off + ag.port("b"))?;
        add1_offsets.push(off);
    }
    (0..n)
        .map(|j| {
            let mut graph = base.clone();
            let force1_offset = graph.append(&fg.graph);
            graph.add_edge(j, force1_offset + fg.port("a"))?;
            Ok(ShiftMember {
                graph,
                original: n,
                forced: j,
                m,
                add1_offsets: add1_offsets.clone(),
                force1_offset,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::PggInstance;
    use crate::gadgets::isolated_odd_pattern;
    use crate::solve::cnf::encode_ntpne_cnf;
    use crate::solve::sat::{solve_cnf, SatOutcome};
    use crate::solve::{enumerate_ntpne, solve_ntpne, Method, Status};

    #[test]
    fn single_node_member_size() {
        let fam = shift_family(&Graph::empty(1), 1).unwrap();
        assert_eq!(fam.len(), 1);
        assert_eq!(fam[0].graph.n(), 26);
        assert!(shift_family(&Graph::empty(1), 0).is_err());
        assert!(shift_family(&Graph::empty(0), 1).unwrap().is_empty());
    }

    #[test]
    fn bridges_always_produce() {
        let t = isolated_odd_pattern(1);
        for fam in [shift_family(&Graph::path(2), 1).unwrap(), shift_family(&Graph::complete(3), 1).unwrap()] {
            for member in &fam {
                let inst = PggInstance::new(member.graph.clone(), t.clone());
                let enc = encode_ntpne_cnf(&inst);
                for i in 0..member.original {
                    let mut cls = enc.clauses.clone();
                    cls.push(vec![-(enc.varmap[member.bridge(i)] as i32)]);
                    assert_eq!(solve_cnf(enc.num_vars, &cls).0, SatOutcome::Unsat);
                }
            }
        }
    }

    #[test]
    fn lift_and_restrict() {
        // a triangle (all-ones is the equilibrium under [0,0,1]) plus an isolated node that must stay off
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let shifted = PggInstance::new(g.clone(), isolated_odd_pattern(1).shift_left(1));
        let fam = shift_family(&g, 1).unwrap();
        let sols = enumerate_ntpne(&shifted, usize::MAX, 26).unwrap();
        assert!(!sols.is_empty());
        for s in &sols {
            for member in &fam {
                let inst = PggInstance::new(member.graph.clone(), isolated_odd_pattern(1));
                match member.lift(s) {
                    Ok(big) => {
                        assert!(inst.is_ntpne(&big).unwrap());
                        assert_eq!(&member.restrict(&big), s);
                    }
                    Err(_) => assert!(!s.get(member.forced)),
                }
            }
        }
        assert!(fam[0].lift(&Profile::zeros(2)).is_err());
    }

    #[test]
    fn member_equilibria_restrict_to_shifted_equilibria() {
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        let shifted = PggInstance::new(g.clone(), isolated_odd_pattern(1).shift_left(1));
        for member in shift_family(&g, 1).unwrap() {
            let inst = PggInstance::new(member.graph.clone(), isolated_odd_pattern(1));
            let r = solve_ntpne(&inst, Method::Cnf, 26).unwrap();
            if r.status == Status::Found {
                let s = member.restrict(r.witness.as_ref().unwrap());
                assert!(shifted.is_ntpne(&s).unwrap());
                assert!(s.get(member.forced));
            }
        }
    }
}
