//! Exhaustive verification of gadget contracts.
//!
//! A contract places a gadget in a minimal host: free outside nodes attached to
//! chosen ports, whose values are unconstrained inputs. Gadget nodes must
//! best-respond (except ports the contract exempts, whose outside world is left
//! open). Every assignment of gadget plus outside nodes is then enumerated.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gadgets::PortedSubgraph;
use crate::graph::{Graph, Profile};
use crate::pattern::Pattern;
use crate::solve::ExhaustiveSearch;

/// Named read access to one assignment of gadget and outside nodes.
pub struct View<'a> {
    index: &'a BTreeMap<String, usize>,
    values: &'a [bool],
}

impl View<'_> {
    pub fn get(&self, name: &str) -> bool {
        match self.index.get(name) {
            Some(&i) => self.values[i],
            None => panic!("contract refers to unknown node {name:?}"),
        }
    }
}

#[derive(Clone)]
pub struct Predicate {
    pub description: String,
    check: Arc<dyn Fn(&View) -> bool + Send + Sync>,
}

impl Predicate {
    pub fn new(description: impl Into<String>, check: impl Fn(&View) -> bool + Send + Sync + 'static) -> Self {
        Predicate {
            description: description.into(),
            check: Arc::new(check),
        }
    }
}

impl fmt::Debug for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Predicate({:?})", self.description)
    }
}

#[derive(Clone, Debug)]
pub enum Requirement {
    /// Must hold in every completion consistent with the fixed values.
    ForAllPne {
        name: String,
        fixed: Vec<(String, bool)>,
        predicate: Predicate,
    },
    /// Some completion consistent with the fixed values must exist.
    ExistsWitness { name: String, fixed: Vec<(String, bool)> },
    /// The set of restrictions of all completions to `nodes` must equal `expected`.
    ProjectionEquals {
        name: String,
        nodes: Vec<String>,
        expected: BTreeSet<String>,
    },
}

impl Requirement {
    pub fn name(&self) -> &str {
        match self {
            Requirement::ForAllPne { name, .. }
            | Requirement::ExistsWitness { name, .. }
            | Requirement::ProjectionEquals { name, .. } => name,
        }
    }

    pub fn forall(name: &str, predicate: Predicate) -> Self {
        Requirement::ForAllPne {
            name: name.into(),
            fixed: Vec::new(),
            predicate,
        }
    }

    pub fn exists(name: &str, fixed: &[(&str, bool)]) -> Self {
        Requirement::ExistsWitness {
            name: name.into(),
            fixed: fixed.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
        }
    }

    pub fn projection(name: &str, nodes: &[&str], expected: &[&str]) -> Self {
        Requirement::ProjectionEquals {
            name: name.into(),
            nodes: nodes.iter().map(|s| s.to_string()).collect(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct GadgetContract {
    pub name: String,
    /// `(outside node name, ports it is adjacent to)`.
    pub externals: Vec<(String, Vec<String>)>,
    /// Gadget nodes released from the best-response condition.
    pub exempt: Vec<String>,
    pub requirements: Vec<Requirement>,
}

impl GadgetContract {
    pub fn new(name: &str) -> Self {
        GadgetContract {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn external(mut self, name: &str, ports: &[&str]) -> Self {
        self.externals
            .push((name.into(), ports.iter().map(|s| s.to_string()).collect()));
        self
    }

    pub fn exempt(mut self, nodes: &[&str]) -> Self {
        self.exempt.extend(nodes.iter().map(|s| s.to_string()));
        self
    }

    pub fn require(mut self, r: Requirement) -> Self {
        self.requirements.push(r);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RequirementReport {
    pub name: String,
    pub kind: &'static str,
    pub passed: bool,
    /// Completions examined (consistent with the fixed values).
    pub completions: usize,
    pub violations: usize,
    /// Lowest violating assignment, rendered as `name=value` pairs.
    pub counterexample: Option<String>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContractReport {
    pub contract: String,
    pub gadget: String,
    pub pattern: Pattern,
    /// Nodes enumerated: gadget plus outside nodes.
    pub nodes: usize,
    pub passed: bool,
    pub requirements: Vec<RequirementReport>,
}

impl fmt::Display for ContractReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.requirements {
            writeln!(
                f,
                "{} {} / {} [{}] completions={} {}",
                if r.passed { "PASS" } else { "FAIL" },
                self.contract,
                r.name,
                r.kind,
                r.completions,
                r.detail
            )?;
            if let Some(c) = &r.counterexample {
                writeln!(f, "     counterexample: {c}")?;
            }
        }
        Ok(())
    }
}

struct Host {
    graph: Graph,
    names: Vec<String>,
    index: BTreeMap<String, usize>,
    constrained: Vec<bool>,
}

fn build_host(g: &PortedSubgraph, c: &GadgetContract) -> Result<Host> {
    let mut graph = g.graph.clone();
    let mut names = g.names.clone();
    for (name, ports) in &c.externals {
        let id = graph.add_node();
        names.push(name.clone());
        for p in ports {
            let port = *g.ports.get(p).ok_or_else(|| Error::UnknownName(p.clone()))?;
            graph.add_edge(id, port)?;
        }
    }
    let index: BTreeMap<String, usize> = names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
    if index.len() != names.len() {
        return Err(Error::InvalidParameter("outside node names clash with gadget names".into()));
    }
    let mut constrained: Vec<bool> = (0..graph.n()).map(|i| i < g.n()).collect();
    for e in &c.exempt {
        let &i = index.get(e).ok_or_else(|| Error::UnknownName(e.clone()))?;
        constrained[i] = false;
    }
    Ok(Host {
        graph,
        names,
        index,
        constrained,
    })
}

impl Host {
    fn search<'a>(&'a self, pattern: &Pattern, fixed: &[(String, bool)]) -> Result<ExhaustiveSearch<'a>> {
        let mut s = ExhaustiveSearch::new(&self.graph, pattern).constrained(self.constrained.clone());
        for (name, v) in fixed {
            let &i = self.index.get(name).ok_or_else(|| Error::UnknownName(name.clone()))?;
            s = s.fix(i, *v);
        }
        Ok(s)
    }

    fn render(&self, s: &Profile) -> String {
        self.names
            .iter()
            .zip(s.as_slice())
            .map(|(n, &v)| format!("{n}={}", u8::from(v)))
            .collect::<Vec<_>>()
            .join(" ")
    }

    fn check_names(&self, names: &[String]) -> Result<()> {
        match names.iter().find(|n| !self.index.contains_key(*n)) {
            Some(n) => Err(Error::UnknownName(n.clone())),
            None => Ok(()),
        }
    }
}

/// Checks every requirement of `c` by exhaustive enumeration over the gadget
/// and its outside nodes. Violations are reported lowest assignment first.
pub fn verify_gadget_contract(
    g: &PortedSubgraph,
    pattern: &Pattern,
    c: &GadgetContract,
    cap: usize,
) -> Result<ContractReport> {
    let host = build_host(g, c)?;
    if host.graph.n() > cap {
        return Err(Error::ExceedsCap {
            nodes: host.graph.n(),
            cap,
        });
    }
    let mut reports = Vec::new();
    for req in &c.requirements {
        let report = match req {
            Requirement::ForAllPne { name, fixed, predicate } => {
                let (all, _) = host.search(pattern, fixed)?.collect(usize::MAX);
                let bad: Vec<&Profile> = all
                    .iter()
                    .filter(|s| {
                        !(predicate.check)(&View {
                            index: &host.index,
                            values: s.as_slice(),
                        })
                    })
                    .collect();
                RequirementReport {
                    name: name.clone(),
                    kind: "forall",
                    passed: bad.is_empty(),
                    completions: all.len(),
                    violations: bad.len(),
                    counterexample: bad.first().map(|s| host.render(s)),
                    detail: predicate.description.clone(),
                }
            }
            Requirement::ExistsWitness { name, fixed } => {
                let (first, _) = host.search(pattern, fixed)?.first();
                let fixed_desc = fixed
                    .iter()
                    .map(|(k, v)| format!("{k}={}", u8::from(*v)))
                    .collect::<Vec<_>>()
                    .join(" ");
                RequirementReport {
                    name: name.clone(),
                    kind: "exists",
                    passed: first.is_some(),
                    completions: usize::from(first.is_some()),
                    violations: usize::from(first.is_none()),
                    counterexample: None,
                    detail: match &first {
                        Some(s) => format!("[{fixed_desc}] witness: {}", host.render(s)),
                        None => format!("[{fixed_desc}] no completion"),
                    },
                }
            }
            Requirement::ProjectionEquals { name, nodes, expected } => {
                host.check_names(nodes)?;
                let (all, _) = host.search(pattern, &[])?.collect(usize::MAX);
                let project = |s: &Profile| -> String {
                    nodes
                        .iter()
                        .map(|n| if s.get(host.index[n]) { '1' } else { '0' })
                        .collect()
                };
                let seen: BTreeSet<String> = all.iter().map(project).collect();
                let stray: Vec<&Profile> = all.iter().filter(|s| !expected.contains(&project(s))).collect();
                let missing: Vec<&String> = expected.difference(&seen).collect();
                RequirementReport {
                    name: name.clone(),
                    kind: "projection",
                    passed: stray.is_empty() && missing.is_empty(),
                    completions: all.len(),
                    violations: stray.len() + missing.len(),
                    counterexample: stray.first().map(|s| host.render(s)),
                    detail: format!(
                        "{} = {:?}{}",
                        nodes.join(","),
                        seen,
                        if missing.is_empty() {
                            String::new()
                        } else {
                            format!(", missing {missing:?}")
                        }
                    ),
                }
            }
        };
        reports.push(report);
    }
    Ok(ContractReport {
        contract: c.name.clone(),
        gadget: g.kind.clone(),
        pattern: pattern.clone(),
        nodes: host.graph.n(),
        passed: reports.iter().all(|r| r.passed),
        requirements: reports,
    })
}
