//! Propositional encoding of "this instance has a non-trivial PNE".
//!
//! Variable `i + 1` is node `i`'s strategy. For each node a sequential (unary)
//! counter over its neighbors' variables defines `r[c]` = "at least `c`
//! neighbors produce", for `c` up to `min(deg, D + 1)` where `D` is the
//! pattern's largest 1-index. Counts beyond `D` all map to best response 0, so
//! the top counter bit stands for "`D + 1` or more". The counts partition into
//! buckets `r[k] ∧ ¬r[k+1]`, and each bucket forces the node's value to `T[k]`.

use std::fmt::Write as _;

use crate::game::PggInstance;
use crate::graph::Profile;
use crate::solve::sat::DimacsLit;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfEncoding {
    pub num_vars: usize,
    pub clauses: Vec<Vec<DimacsLit>>,
    /// `varmap[i]` is node `i`'s decision variable.
    pub varmap: Vec<u32>,
    /// Counter variables owned by each node, disjoint from all decision variables.
    pub aux: Vec<Vec<u32>>,
}

/// Literal that may have simplified to a constant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Term {
    True,
    False,
    Lit(DimacsLit),
}

impl Term {
    fn neg(self) -> Term {
        match self {
            Term::True => Term::False,
            Term::False => Term::True,
            Term::Lit(l) => Term::Lit(-l),
        }
    }
}

struct Builder {
    num_vars: usize,
    clauses: Vec<Vec<DimacsLit>>,
}

impl Builder {
    fn fresh(&mut self) -> u32 {
        self.num_vars += 1;
        self.num_vars as u32
    }

    fn clause(&mut self, terms: &[Term]) {
        let mut lits = Vec::with_capacity(terms.len());
        for &t in terms {
            match t {
                Term::True => return,
                Term::False => {}
                Term::Lit(l) => lits.push(l),
            }
        }
        self.clauses.push(lits);
    }
}

pub fn encode_ntpne_cnf(inst: &PggInstance) -> CnfEncoding {
    let g = &inst.graph;
    let t = &inst.pattern;
    let n = g.n();
    let mut b = Builder {
        num_vars: n,
        clauses: Vec::new(),
    };
    let x = |i: usize| Term::Lit(i as DimacsLit + 1);
    let mut aux = vec![Vec::new(); n];

    for (i, aux_i) in aux.iter_mut().enumerate() {
        let nbrs = g.neighbors(i);
        let d = nbrs.len();
        let width = match t.max_one() {
            Some(top) => d.min(top + 1),
            None => 0,
        };
        // prev[c] = at least c of the neighbors seen so far produce
        let mut prev: Vec<Term> = (0..=width).map(|c| if c == 0 { Term::True } else { Term::False }).collect();
        for (j, &nb) in nbrs.iter().enumerate() {
            let seen = j + 1;
            let mut cur = vec![Term::True; width + 1];
            for c in 1..=width {
                if c > seen {
                    cur[c] = Term::False;
                    continue;
                }
                let v = b.fresh();
                aux_i.push(v);
                let r = Term::Lit(v as DimacsLit);
                let (keep, carry, xj) = (prev[c], prev[c - 1], x(nb));
                // r <-> keep ∨ (carry ∧ xj)
                b.clause(&[keep.neg(), r]);
                b.clause(&[carry.neg(), xj.neg(), r]);
                b.clause(&[r.neg(), keep, carry]);
                b.clause(&[r.neg(), keep, xj]);
                cur[c] = r;
            }
            prev = cur;
        }
        // bucket k: prev[k] ∧ ¬prev[k+1] -> x_i = T[k]
        for k in 0..=width {
            let above = if k < width { prev[k + 1] } else { Term::False };
            let xi = if t.query(k) { x(i) } else { x(i).neg() };
            b.clause(&[prev[k].neg(), above, xi]);
        }
    }
    b.clauses.push((1..=n as DimacsLit).collect());

    CnfEncoding {
        num_vars: b.num_vars,
        clauses: b.clauses,
        varmap: (1..=n as u32).collect(),
        aux,
    }
}

impl CnfEncoding {
    pub fn decode(&self, model: &[bool]) -> Profile {
        Profile(self.varmap.iter().map(|&v| model[v as usize - 1]).collect())
    }

    /// DIMACS text with the node-to-variable map as leading comments.
    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        for (i, v) in self.varmap.iter().enumerate() {
            let _ = writeln!(out, "c node {i} var {v}");
        }
        let _ = writeln!(out, "p cnf {} {}", self.num_vars, self.clauses.len());
        for c in &self.clauses {
            for l in c {
                let _ = write!(out, "{l} ");
            }
            out.push_str("0\n");
        }
        out
    }
}
