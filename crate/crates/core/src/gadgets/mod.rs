//! Gadgets as ported subgraphs.
//!
//! Each gadget carries named ports (the only nodes that may touch the rest of
//! a host graph) and a table of witness assignments. A witness is keyed by a
//! boundary condition: the values of the outside nodes it was built for, and
//! how many productive outside neighbors each port sees. Witnesses are checked
//! against the gadget's design pattern when the gadget is built.

pub mod contract;
pub mod suite;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Profile};
use crate::pattern::Pattern;

pub use contract::{verify_gadget_contract, ContractReport, GadgetContract, Requirement};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    /// Values of the outside nodes (or port nodes) this completion is for.
    pub boundary: BTreeMap<String, bool>,
    /// Productive outside neighbors seen by each port.
    pub load: BTreeMap<String, u32>,
    pub assignment: Profile,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PortedSubgraph {
    pub kind: String,
    pub graph: Graph,
    /// Role name of every node.
    pub names: Vec<String>,
    pub ports: BTreeMap<String, usize>,
    pub witnesses: Vec<Witness>,
    /// Pattern the witnesses are valid for.
    pub design_pattern: Pattern,
}

impl PortedSubgraph {
    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn port(&self, name: &str) -> usize {
        self.ports[name]
    }

    pub fn node(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    /// First witness whose boundary matches every given value.
    pub fn witness_for(&self, boundary: &[(&str, bool)]) -> Option<&Witness> {
        self.witnesses
            .iter()
            .find(|w| boundary.iter().all(|(k, v)| w.boundary.get(*k) == Some(v)))
    }

    /// Nodes of the gadget that do not best-respond under `w`'s load.
    pub fn witness_deviators(&self, w: &Witness, pattern: &Pattern) -> Vec<usize> {
        let mut extra = vec![0usize; self.n()];
        for (port, &load) in &w.load {
            extra[self.ports[port]] += load as usize;
        }
        (0..self.n())
            .filter(|&i| {
                let k = extra[i] + self.graph.neighbors(i).iter().filter(|&&j| w.assignment.get(j)).count();
                w.assignment.get(i) != pattern.query(k)
            })
            .collect()
    }

    pub fn validate_witnesses(&self, pattern: &Pattern) -> std::result::Result<(), String> {
        for (k, w) in self.witnesses.iter().enumerate() {
            if w.assignment.len() != self.n() {
                return Err(format!("{} witness {k} has wrong length", self.kind));
            }
            if let Some(port) = w.load.keys().find(|p| !self.ports.contains_key(*p)) {
                return Err(format!("{} witness {k} loads unknown port {port}", self.kind));
            }
            let bad = self.witness_deviators(w, pattern);
            if !bad.is_empty() {
                let names: Vec<&str> = bad.iter().map(|&i| self.names[i].as_str()).collect();
                return Err(format!(
                    "{} witness {k} under {pattern}: nodes {names:?} do not best-respond",
                    self.kind
                ));
            }
        }
        Ok(())
    }

    fn validated(self) -> Self {
        if let Err(e) = self.validate_witnesses(&self.design_pattern) {
            panic!("invalid gadget witness table: {e}");
        }
        self
    }

    /// Graphviz rendering with ports filled.
    pub fn to_dot(&self) -> String {
        let mut out = format!("graph \"{}\" {{\n  node [shape=circle];\n", self.kind);
        let port_ids: Vec<usize> = self.ports.values().copied().collect();
        for (i, name) in self.names.iter().enumerate() {
            let style = if port_ids.contains(&i) {
                ", style=filled, fillcolor=gold, shape=doublecircle"
            } else {
                ""
            };
            let _ = writeln!(out, "  n{i} [label=\"{name}\"{style}];");
        }
        for (u, v) in self.graph.edges() {
            let _ = writeln!(out, "  n{u} -- n{v};");
        }
        out.push_str("}\n");
        out
    }

    pub fn witness_table_json(&self) -> serde_json::Value {
        serde_json::json!({
            "gadget": self.kind,
            "nodes": self.n(),
            "edges": self.graph.edge_count(),
            "names": self.names,
            "ports": self.ports,
            "design_pattern": self.design_pattern,
            "witnesses": self.witnesses,
        })
    }
}

/// Accumulates nodes with role names.
#[derive(Default)]
struct Builder {
    graph: Graph,
    names: Vec<String>,
}

impl Builder {
    fn node(&mut self, name: impl Into<String>) -> usize {
        self.names.push(name.into());
        self.graph.add_node()
    }

    fn edge(&mut self, u: usize, v: usize) {
        self.graph.add_edge(u, v).expect("gadget edges are simple");
    }

    fn embed(&mut self, g: &PortedSubgraph, prefix: &str) -> usize {
        let offset = self.graph.append(&g.graph);
        self.names.extend(g.names.iter().map(|n| format!("{prefix}.{n}")));
        offset
    }

    fn finish(
        self,
        kind: &str,
        ports: &[(&str, usize)],
        witnesses: Vec<Witness>,
        design_pattern: Pattern,
    ) -> PortedSubgraph {
        PortedSubgraph {
            kind: kind.to_string(),
            graph: self.graph,
            names: self.names,
            ports: ports.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
            witnesses,
            design_pattern,
        }
        .validated()
    }
}

fn witness(boundary: &[(&str, bool)], load: &[(&str, u32)], assignment: Vec<bool>) -> Witness {
    Witness {
        boundary: boundary.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
        load: load.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
        assignment: Profile(assignment),
    }
}

/// 21 nodes: literal triangle `l1,l2,l3`; each `l_i` sits in a triangle with
/// `x_i,y_i`, and `x_i`, `y_i` each sit in a further triangle with `a_i,b_i`
/// and `c_i,d_i` respectively.
pub fn clause_gadget() -> PortedSubgraph {
    let mut b = Builder::default();
    let lits: Vec<usize> = (1..=3).map(|i| b.node(format!("l{i}"))).collect();
    b.edge(lits[0], lits[1]);
    b.edge(lits[0], lits[2]);
    b.edge(lits[1], lits[2]);
    // sub[i] = [x, y, a, b, c, d]
    let mut sub = Vec::new();
    for (i, &l) in lits.iter().enumerate() {
        let ids: Vec<usize> = ["x", "y", "a", "b", "c", "d"]
            .iter()
            .map(|r| b.node(format!("{r}{}", i + 1)))
            .collect();
        let [x, y, a, bb, c, d] = ids[..] else { unreachable!() };
        for (u, v) in [(l, x), (l, y), (x, y), (x, a), (x, bb), (a, bb), (y, c), (y, d), (c, d)] {
            b.edge(u, v);
        }
        sub.push(ids);
    }
    let n = b.graph.n();
    let witnesses = (0..3)
        .map(|on| {
            let mut s = vec![false; n];
            s[lits[on]] = true;
            for (i, ids) in sub.iter().enumerate() {
                if i == on {
                    s[ids[0]] = true;
                    s[ids[1]] = true;
                } else {
                    s[ids[2]] = true;
                    s[ids[4]] = true;
                }
            }
            let boundary: Vec<(&str, bool)> =
                [("l1", on == 0), ("l2", on == 1), ("l3", on == 2)].to_vec();
            witness(&boundary, &[("l1", 0), ("l2", 0), ("l3", 0)], s)
        })
        .collect();
    b.finish(
        "clause",
        &[("l1", lits[0]), ("l2", lits[1]), ("l3", lits[2])],
        witnesses,
        Pattern::zero_or_two(),
    )
}

/// Bottom path `b1..b5` and tops `t1..t4`, each `t_i` adjacent to `b_i` and
/// `b_{i+1}`. Both constrained outside nodes attach to the port `t2`.
pub fn negation_gadget() -> PortedSubgraph {
    let mut b = Builder::default();
    let bottom: Vec<usize> = (1..=5).map(|i| b.node(format!("b{i}"))).collect();
    let top: Vec<usize> = (1..=4).map(|i| b.node(format!("t{i}"))).collect();
    for i in 0..4 {
        b.edge(bottom[i], bottom[i + 1]);
        b.edge(top[i], bottom[i]);
        b.edge(top[i], bottom[i + 1]);
    }
    let mut s = vec![false; 9];
    s[top[0]] = true;
    s[bottom[3]] = true;
    let witnesses = vec![
        witness(&[("u", true), ("v", false)], &[("t2", 1)], s.clone()),
        witness(&[("u", false), ("v", true)], &[("t2", 1)], s),
    ];
    b.finish("negation", &[("t2", top[1])], witnesses, Pattern::zero_or_two())
}

/// Two negation gadgets and an edge `x–y`; `x` hooks onto both `t2` ports,
/// `u` onto the first (`u-hook`) and `v` onto the second (`v-hook`).
pub fn copy_gadget() -> PortedSubgraph {
    let ng = negation_gadget();
    let mut b = Builder::default();
    let off1 = b.embed(&ng, "ng1");
    let off2 = b.embed(&ng, "ng2");
    let x = b.node("x");
    let y = b.node("y");
    let (h1, h2) = (off1 + ng.port("t2"), off2 + ng.port("t2"));
    b.edge(x, y);
    b.edge(x, h1);
    b.edge(x, h2);
    let n = b.graph.n();
    let ng_w = &ng.witnesses[0].assignment;
    let mk = |uv: bool| {
        let mut s = vec![false; n];
        for k in 0..ng.n() {
            s[off1 + k] = ng_w.get(k);
            s[off2 + k] = ng_w.get(k);
        }
        s[x] = !uv;
        s[y] = uv;
        let load = u32::from(uv);
        witness(&[("u", uv), ("v", uv)], &[("u-hook", load), ("v-hook", load)], s)
    };
    let witnesses = vec![mk(false), mk(true)];
    b.finish("copy", &[("u-hook", h1), ("v-hook", h2)], witnesses, Pattern::zero_or_two())
}

/// Smallest pattern meeting the isolated-odd hypotheses for `m`: `T[0] = T[2m+1] = 1`.
pub fn isolated_odd_pattern(m: usize) -> Pattern {
    let mut bits = vec![false; 2 * m + 2];
    bits[0] = true;
    bits[2 * m + 1] = true;
    Pattern::new(bits)
}

fn check_m(m: usize) -> Result<()> {
    if m < 1 {
        return Err(Error::InvalidParameter(format!("m must be at least 1, got {m}")));
    }
    Ok(())
}

/// Triangle `x,y,z` with `2m+1` pendant antennas on `x` and `2m` on each of
/// `y`, `z`. The port `a` is the first antenna of `x`; the forced node hangs off it.
pub fn force1_gadget(m: usize) -> Result<PortedSubgraph> {
    check_m(m)?;
    let mut b = Builder::default();
    let x = b.node("x");
    let y = b.node("y");
    let z = b.node("z");
    b.edge(x, y);
    b.edge(x, z);
    b.edge(y, z);
    let mut antennas = Vec::new();
    for (hub, tag, count) in [(x, "x", 2 * m + 1), (y, "y", 2 * m), (z, "z", 2 * m)] {
        for k in 1..=count {
            let name = if hub == x && k == 1 { "a".to_string() } else { format!("{tag}a{k}") };
            let id = b.node(name);
            b.edge(hub, id);
            antennas.push(id);
        }
    }
    let a = antennas[0];
    let n = b.graph.n();
    let mut s = vec![false; n];
    for &id in &antennas[1..] {
        s[id] = true;
    }
    let witnesses = vec![witness(&[("u", true)], &[("a", 1)], s)];
    Ok(b.finish("force1", &[("a", a)], witnesses, isolated_odd_pattern(m)))
}

/// Near-clique on `x_1..x_{m+1}, y_1..y_{m+1}` missing the edges `x_i–y_i` for
/// `i >= 2`, a bridge `b` adjacent to every `x_i, y_i` with `i >= 2`, and a
/// Force-1 gadget hung off `b`. The port is `b`.
pub fn add1_gadget(m: usize) -> Result<PortedSubgraph> {
    let fg = force1_gadget(m)?;
    let mut b = Builder::default();
    let bridge = b.node("b");
    let xs: Vec<usize> = (1..=m + 1).map(|i| b.node(format!("x{i}"))).collect();
    let ys: Vec<usize> = (1..=m + 1).map(|i| b.node(format!("y{i}"))).collect();
    let all: Vec<usize> = xs.iter().chain(&ys).copied().collect();
    for (p, &u) in all.iter().enumerate() {
        for &v in &all[p + 1..] {
            let paired = xs.iter().zip(&ys).skip(1).any(|(&xi, &yi)| (u, v) == (xi, yi));
            if !paired {
                b.edge(u, v);
            }
        }
    }
    for i in 1..=m {
        b.edge(bridge, xs[i]);
        b.edge(bridge, ys[i]);
    }
    let off = b.embed(&fg, "fg");
    b.edge(bridge, off + fg.port("a"));
    let n = b.graph.n();
    let fg_w = &fg.witnesses[0].assignment;
    let mk = |v: bool| {
        let mut s = vec![false; n];
        s[bridge] = true;
        for k in 0..fg.n() {
            s[off + k] = fg_w.get(k);
        }
        if v {
            for &id in &all {
                s[id] = true;
            }
        } else {
            s[xs[0]] = true;
        }
        witness(&[("v", v)], &[("b", u32::from(v))], s)
    };
    let witnesses = vec![mk(false), mk(true)];
    Ok(b.finish("add1", &[("b", bridge)], witnesses, isolated_odd_pattern(m)))
}

pub const GADGET_NAMES: [&str; 5] = ["clause", "negation", "copy", "force1", "add1"];

/// Looks up a gadget by name; `m` is used by `force1` and `add1` only.
pub fn gadget_by_name(name: &str, m: usize) -> Result<PortedSubgraph> {
    match name {
        "clause" => Ok(clause_gadget()),
        "negation" => Ok(negation_gadget()),
        "copy" => Ok(copy_gadget()),
        "force1" => force1_gadget(m),
        "add1" => add1_gadget(m),
        other => Err(Error::UnknownGadget(other.to_string())),
    }
}
