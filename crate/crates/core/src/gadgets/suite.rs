//! The gadget contracts, ready to run exhaustively.

use crate::error::Result;
use crate::gadgets::contract::{verify_gadget_contract, ContractReport, GadgetContract, Predicate, Requirement};
use crate::gadgets::{add1_gadget, clause_gadget, copy_gadget, force1_gadget, isolated_odd_pattern, negation_gadget, PortedSubgraph};
use crate::pattern::Pattern;

/// Which pattern family a contract belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteGroup {
    /// Clause, negation and copy gadgets under the 0-or-2 pattern.
    ZeroOrTwo,
    /// Force-1 and Add-1 gadgets under `T = [1,0,0,1]` with `m = 1`.
    IsolatedOdd,
}

pub struct SuiteEntry {
    pub group: SuiteGroup,
    pub gadget: PortedSubgraph,
    pub pattern: Pattern,
    pub contract: GadgetContract,
}

fn literal_implies_pair(i: usize) -> Requirement {
    Requirement::forall(
        &format!("l{i}=1 forces x{i}=y{i}=1"),
        Predicate::new(format!("l{i} -> x{i} & y{i}"), move |v| {
            !v.get(&format!("l{i}")) || (v.get(&format!("x{i}")) && v.get(&format!("y{i}")))
        }),
    )
}

fn clause_contracts() -> Vec<GadgetContract> {
    // Concerns only the sub-gadgets, so the literals are left unconstrained.
    let mut pins = GadgetContract::new("clause/literal-pins-pair").exempt(&["l1", "l2", "l3"]);
    for i in 1..=3 {
        pins = pins
            .require(literal_implies_pair(i))
            .require(Requirement::exists(&format!("sub-gadget {i} completes with l{i}=1"), &[(&format!("l{i}"), true)]));
    }

    // Literals best-respond, each with one free outside neighbor.
    let at_most_one = GadgetContract::new("clause/at-most-one")
        .external("o1", &["l1"])
        .external("o2", &["l2"])
        .external("o3", &["l3"])
        .require(Requirement::forall(
            "one literal on turns the others off",
            Predicate::new("l_i=1 -> l_j=0 for j!=i", |v| {
                let on = ["l1", "l2", "l3"].iter().filter(|l| v.get(l)).count();
                on <= 1
            }),
        ));

    // Isolated literals: each single literal can be the true one, and some literal always is.
    let each_alone = GadgetContract::new("clause/each-literal-alone")
        .require(Requirement::exists("l1 on", &[("l1", true), ("l2", false), ("l3", false)]))
        .require(Requirement::exists("l2 on", &[("l1", false), ("l2", true), ("l3", false)]))
        .require(Requirement::exists("l3 on", &[("l1", false), ("l2", false), ("l3", true)]));
    let exactly_one = GadgetContract::new("clause/exactly-one")
        .require(Requirement::forall(
            "some literal is on",
            Predicate::new("l1 | l2 | l3", |v| v.get("l1") || v.get("l2") || v.get("l3")),
        ))
        .require(Requirement::projection(
            "literal restrictions",
            &["l1", "l2", "l3"],
            &["100", "010", "001"],
        ));
    vec![pins, at_most_one, each_alone, exactly_one]
}

fn negation_contract() -> GadgetContract {
    let base = GadgetContract::new("negation/complement")
        .external("u", &["t2"])
        .external("v", &["t2"]);
    let stated: Vec<(&str, bool)> = ["b1", "b2", "b3", "b4", "b5", "t1", "t2", "t3", "t4"]
        .iter()
        .map(|&n| (n, n == "t1" || n == "b4"))
        .collect();
    base.require(Requirement::forall(
        "u differs from v and t2 is off",
        Predicate::new("u != v & !t2", |v| v.get("u") != v.get("v") && !v.get("t2")),
    ))
    .require(Requirement::exists("u=1 v=0", &[("u", true), ("v", false)]))
    .require(Requirement::exists("u=0 v=1", &[("u", false), ("v", true)]))
    .require(Requirement::exists(
        "stated witness t1=b4=1",
        &[stated.as_slice(), &[("u", true), ("v", false)]].concat(),
    ))
}

fn copy_contract() -> GadgetContract {
    GadgetContract::new("copy/equal")
        .external("u", &["u-hook"])
        .external("v", &["v-hook"])
        .require(Requirement::forall(
            "u equals v",
            Predicate::new("u = v", |v| v.get("u") == v.get("v")),
        ))
        .require(Requirement::forall(
            "hooks are off",
            Predicate::new("!ng1.t2 & !ng2.t2", |v| !v.get("ng1.t2") && !v.get("ng2.t2")),
        ))
        .require(Requirement::exists(
            "u=v=0 with x=1 y=0",
            &[("u", false), ("v", false), ("x", true), ("y", false)],
        ))
        .require(Requirement::exists(
            "u=v=1 with x=0 y=1",
            &[("u", true), ("v", true), ("x", false), ("y", true)],
        ))
}

fn force1_contract() -> GadgetContract {
    GadgetContract::new("force1/forces-one")
        .external("u", &["a"])
        .require(Requirement::forall(
            "u is on and a is off",
            Predicate::new("u & !a", |v| v.get("u") && !v.get("a")),
        ))
        .require(Requirement::exists(
            "stated witness: antennas except a on",
            &[
                ("u", true),
                ("x", false),
                ("y", false),
                ("z", false),
                ("a", false),
                ("xa2", true),
                ("xa3", true),
                ("ya1", true),
                ("ya2", true),
                ("za1", true),
                ("za2", true),
            ],
        ))
}

fn add1_contract() -> GadgetContract {
    GadgetContract::new("add1/bridge-on")
        .external("v", &["b"])
        .require(Requirement::forall("bridge is on", Predicate::new("b", |v| v.get("b"))))
        .require(Requirement::exists(
            "v=0 with x1=1, other x,y off",
            &[("v", false), ("b", true), ("x1", true), ("x2", false), ("y1", false), ("y2", false)],
        ))
        .require(Requirement::exists(
            "v=1 with all x,y on",
            &[("v", true), ("b", true), ("x1", true), ("x2", true), ("y1", true), ("y2", true)],
        ))
}

/// Every gadget contract, clause gadget first.
pub fn contract_suite() -> Vec<SuiteEntry> {
    let zero_or_two = Pattern::zero_or_two();
    let mut out: Vec<SuiteEntry> = clause_contracts()
        .into_iter()
        .map(|contract| SuiteEntry {
            group: SuiteGroup::ZeroOrTwo,
            gadget: clause_gadget(),
            pattern: zero_or_two.clone(),
            contract,
        })
        .collect();
    out.push(SuiteEntry {
        group: SuiteGroup::ZeroOrTwo,
        gadget: negation_gadget(),
        pattern: zero_or_two.clone(),
        contract: negation_contract(),
    });
    out.push(SuiteEntry {
        group: SuiteGroup::ZeroOrTwo,
        gadget: copy_gadget(),
        pattern: zero_or_two,
        contract: copy_contract(),
    });
    let t = isolated_odd_pattern(1);
    out.push(SuiteEntry {
        group: SuiteGroup::IsolatedOdd,
        gadget: force1_gadget(1).expect("m = 1 is valid"),
        pattern: t.clone(),
        contract: force1_contract(),
    });
    out.push(SuiteEntry {
        group: SuiteGroup::IsolatedOdd,
        gadget: add1_gadget(1).expect("m = 1 is valid"),
        pattern: t,
        contract: add1_contract(),
    });
    out
}

/// A false contract (the negation gadget's ends always differ); the checker must reject it.
pub fn negative_control() -> SuiteEntry {
    SuiteEntry {
        group: SuiteGroup::ZeroOrTwo,
        gadget: negation_gadget(),
        pattern: Pattern::zero_or_two(),
        contract: GadgetContract::new("negation/negative-control")
            .external("u", &["t2"])
            .external("v", &["t2"])
            .require(Requirement::forall(
                "u equals v (false)",
                Predicate::new("u = v", |v| v.get("u") == v.get("v")),
            )),
    }
}

impl SuiteEntry {
    pub fn run(&self, cap: usize) -> Result<ContractReport> {
        verify_gadget_contract(&self.gadget, &self.pattern, &self.contract, cap)
    }
}

/// Runs the given group (or all groups) and returns one report per contract.
pub fn run_contract_suite(group: Option<SuiteGroup>, cap: usize) -> Result<Vec<ContractReport>> {
    contract_suite()
        .iter()
        .filter(|e| group.is_none_or(|g| g == e.group))
        .map(|e| e.run(cap))
        .collect()
}
