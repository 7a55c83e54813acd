//! Compiles a 1-in-3 formula into a public goods game under the 0-or-2 pattern.
//!
//! Every clause becomes a clause gadget whose literal ports stand for the
//! clause's three literal occurrences. Occurrences of the same literal are
//! chained by copy gadgets in clause order, and when a variable occurs in both
//! polarities a single negation gadget joins the last positive occurrence to
//! the last negative one. Each literal port then has at most two outside
//! neighbors, so the graph's maximum degree is at most 6.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gadgets::{clause_gadget, copy_gadget, negation_gadget, PortedSubgraph};
use crate::game::PggInstance;
use crate::graph::{Graph, Profile};
use crate::pattern::Pattern;
use crate::reductions::formula::CnfFormula1in3;

/// Position `position` (0..3) of clause `clause`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Occurrence {
    pub clause: usize,
    pub position: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PlacementKind {
    Clause { clause: usize },
    /// Links two consecutive occurrences of the same literal.
    Copy {
        var: usize,
        positive: bool,
        from: Occurrence,
        to: Occurrence,
    },
    /// Links the last positive and last negative occurrence of a variable.
    Negation {
        var: usize,
        positive_end: Occurrence,
        negative_end: Occurrence,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Placement {
    #[serde(flatten)]
    pub kind: PlacementKind,
    /// First node id of the gadget; its nodes are `offset..offset + size`.
    pub offset: usize,
    pub size: usize,
    /// Port name → host node id.
    pub ports: BTreeMap<String, usize>,
    /// `(port name, literal node)` edges joining this gadget to clause literals.
    pub attachments: Vec<(String, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeLabel {
    pub placement: usize,
    /// Role name inside the gadget, e.g. `l2` or `ng1.t2`.
    pub role: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelMap {
    pub formula: CnfFormula1in3,
    pub labels: Vec<NodeLabel>,
    pub placements: Vec<Placement>,
    /// Literal node ids of each clause, in literal order.
    pub clause_literals: Vec<[usize; 3]>,
    /// Per variable: `(literal node, polarity)` for each occurrence in clause order.
    pub literal_nodes: Vec<Vec<(usize, bool)>>,
}

impl LabelMap {
    pub fn literal_node(&self, occ: Occurrence) -> usize {
        self.clause_literals[occ.clause][occ.position]
    }

    pub fn count(&self, pred: impl Fn(&PlacementKind) -> bool) -> usize {
        self.placements.iter().filter(|p| pred(&p.kind)).count()
    }

    pub fn describe(&self, node: usize) -> String {
        let l = &self.labels[node];
        let p = &self.placements[l.placement];
        let head = match &p.kind {
            PlacementKind::Clause { clause } => format!("clause{clause}"),
            PlacementKind::Copy { var, positive, from, .. } => format!(
                "copy[{}x{var}@c{}]",
                if *positive { "" } else { "¬" },
                from.clause
            ),
            PlacementKind::Negation { var, .. } => format!("neg[x{var}]"),
        };
        format!("{head}.{}", l.role)
    }

    /// True iff every edge between two gadget placements joins two ports.
    pub fn ports_only_cross(&self, g: &Graph) -> bool {
        let is_port = |v: usize| {
            let p = &self.placements[self.labels[v].placement];
            p.ports.values().any(|&id| id == v)
        };
        g.edges().all(|(u, v)| {
            self.labels[u].placement == self.labels[v].placement || (is_port(u) && is_port(v))
        })
    }

    /// Graphviz rendering with one cluster per gadget placement.
    pub fn to_dot(&self, g: &Graph) -> String {
        let mut out = String::from("graph reduction {\n  node [shape=circle, fontsize=9];\n");
        for (k, p) in self.placements.iter().enumerate() {
            let title = match &p.kind {
                PlacementKind::Clause { clause } => format!("clause {clause}"),
                PlacementKind::Copy { var, positive, .. } => {
                    format!("copy {}x{var}", if *positive { "" } else { "¬" })
                }
                PlacementKind::Negation { var, .. } => format!("negation x{var}"),
            };
            let _ = writeln!(out, "  subgraph cluster_{k} {{\n    label=\"{title}\";");
            for v in p.offset..p.offset + p.size {
                let port = p.ports.values().any(|&id| id == v);
                let style = if port { ", style=filled, fillcolor=gold" } else { "" };
                let _ = writeln!(out, "    n{v} [label=\"{}\"{style}];", self.labels[v].role);
            }
            out.push_str("  }\n");
        }
        for (u, v) in g.edges() {
            let _ = writeln!(out, "  n{u} -- n{v};");
        }
        out.push_str("}\n");
        out
    }
}

struct Assembler {
    graph: Graph,
    labels: Vec<NodeLabel>,
    placements: Vec<Placement>,
}

impl Assembler {
    fn place(&mut self, g: &PortedSubgraph, kind: PlacementKind) -> usize {
        let offset = self.graph.append(&g.graph);
        let index = self.placements.len();
        self.labels.extend(g.names.iter().map(|role| NodeLabel {
            placement: index,
            role: role.clone(),
        }));
        self.placements.push(Placement {
            kind,
            offset,
            size: g.n(),
            ports: g.ports.iter().map(|(k, &v)| (k.clone(), offset + v)).collect(),
            attachments: Vec::new(),
        });
        index
    }

    fn attach(&mut self, placement: usize, port: &str, literal: usize) {
        let p = &mut self.placements[placement];
        let id = p.ports[port];
        self.graph
            .add_edge(id, literal)
            .expect("attachment edges are fresh and simple");
        p.attachments.push((port.to_string(), literal));
    }
}

pub fn reduce_1in3_to_pgg(f: &CnfFormula1in3) -> Result<(PggInstance, LabelMap)> {
    // re-validate in case the fields were built by hand
    let f = CnfFormula1in3::new(f.num_vars, f.clauses.clone())?;
    let (cg, copy, neg) = (clause_gadget(), copy_gadget(), negation_gadget());
    let mut a = Assembler {
        graph: Graph::default(),
        labels: Vec::new(),
        placements: Vec::new(),
    };
    let mut clause_literals = Vec::with_capacity(f.clauses.len());
    for c in 0..f.clauses.len() {
        let p = a.place(&cg, PlacementKind::Clause { clause: c });
        let ports = &a.placements[p].ports;
        clause_literals.push([ports["l1"], ports["l2"], ports["l3"]]);
    }

    let mut occurrences: Vec<[Vec<Occurrence>; 2]> = vec![[Vec::new(), Vec::new()]; f.num_vars];
    for (c, clause) in f.clauses.iter().enumerate() {
        for (position, lit) in clause.iter().enumerate() {
            occurrences[lit.var][usize::from(lit.positive)].push(Occurrence { clause: c, position });
        }
    }
    let lit_node = |o: Occurrence| clause_literals[o.clause][o.position];

    for (var, by_polarity) in occurrences.iter().enumerate() {
        for (pol, occs) in by_polarity.iter().enumerate() {
            for pair in occs.windows(2) {
                let p = a.place(
                    &copy,
                    PlacementKind::Copy {
                        var,
                        positive: pol == 1,
                        from: pair[0],
                        to: pair[1],
                    },
                );
                a.attach(p, "u-hook", lit_node(pair[0]));
                a.attach(p, "v-hook", lit_node(pair[1]));
            }
        }
        if let ([.., neg_end], [.., pos_end]) = (&by_polarity[0][..], &by_polarity[1][..]) {
            let p = a.place(
                &neg,
                PlacementKind::Negation {
                    var,
                    positive_end: *pos_end,
                    negative_end: *neg_end,
                },
            );
            a.attach(p, "t2", lit_node(*pos_end));
            a.attach(p, "t2", lit_node(*neg_end));
        }
    }

    let literal_nodes = (0..f.num_vars)
        .map(|v| {
            let mut nodes: Vec<(Occurrence, bool)> = occurrences[v][0]
                .iter()
                .map(|&o| (o, false))
                .chain(occurrences[v][1].iter().map(|&o| (o, true)))
                .collect();
            nodes.sort();
            nodes.into_iter().map(|(o, pol)| (lit_node(o), pol)).collect()
        })
        .collect();

    debug_assert!(a.graph.max_degree() <= 6);
    let lm = LabelMap {
        formula: f,
        labels: a.labels,
        placements: a.placements,
        clause_literals,
        literal_nodes,
    };
    Ok((PggInstance::new(a.graph, Pattern::zero_or_two()), lm))
}

/// Reads a satisfying assignment off an NTPNE of the reduced instance.
///
/// A variable takes the value of its positive literal nodes; a variable that
/// only occurs negatively takes the complement, and one that never occurs is false.
pub fn extract_assignment(inst: &PggInstance, s: &Profile, lm: &LabelMap) -> Result<Vec<bool>> {
    if !inst.is_ntpne(s)? {
        return Err(Error::NotAnEquilibrium);
    }
    let a: Vec<bool> = lm
        .literal_nodes
        .iter()
        .map(|nodes| match nodes.iter().find(|(_, pol)| *pol) {
            Some(&(node, _)) => s.get(node),
            None => nodes.first().is_some_and(|&(node, _)| !s.get(node)),
        })
        .collect();
    lm.formula.check(&a)?;
    Ok(a)
}

/// Builds the NTPNE matching a satisfying assignment from the gadgets' witness tables.
pub fn lift_assignment(a: &[bool], lm: &LabelMap) -> Result<Profile> {
    lm.formula.check(a)?;
    let (cg, copy, neg) = (clause_gadget(), copy_gadget(), negation_gadget());
    let lit_value = |o: Occurrence| lm.formula.clauses[o.clause][o.position].eval(a);
    let mut s = Profile::zeros(lm.labels.len());
    for p in &lm.placements {
        let w = match &p.kind {
            PlacementKind::Clause { clause } => {
                let on = |i: usize| lit_value(Occurrence { clause: *clause, position: i });
                cg.witness_for(&[("l1", on(0)), ("l2", on(1)), ("l3", on(2))])
            }
            PlacementKind::Copy { from, .. } => copy.witness_for(&[("u", lit_value(*from))]),
            PlacementKind::Negation { positive_end, .. } => neg.witness_for(&[("u", lit_value(*positive_end))]),
        }
        .expect("witness tables cover every boundary a satisfying assignment produces");
        for k in 0..p.size {
            s.set(p.offset + k, w.assignment.get(k));
        }
    }
    Ok(s)
}
