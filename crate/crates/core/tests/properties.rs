//! Randomized properties across modules, checked against independent oracles.

use proptest::prelude::*;

use pgg_core::reductions::{classify, double_graph, double_pattern, validate_chain, CnfFormula1in3, Literal, Verdict};
use pgg_core::solve::{enumerate_ntpne, solve_ntpne, ExhaustiveSearch, Method};
use pgg_core::{Graph, Pattern, PggInstance, Profile};

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        proptest::collection::vec(any::<bool>(), pairs.len())
            .prop_map(move |keep| Graph::from_edges(n, pairs.iter().zip(&keep).filter(|(_, &k)| k).map(|(&e, _)| e)).unwrap())
    })
}

fn pattern_strategy(max_len: usize) -> impl Strategy<Value = Pattern> {
    proptest::collection::vec(any::<bool>(), 0..=max_len).prop_map(Pattern::new)
}

/// Every profile, checked one by one: the slowest and simplest oracle.
fn naive_ntpne(inst: &PggInstance) -> Vec<Profile> {
    let n = inst.n();
    (0u32..1 << n)
        .map(|code| Profile((0..n).map(|i| code >> (n - 1 - i) & 1 == 1).collect()))
        .filter(|s| inst.is_ntpne(s).unwrap())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn pruned_search_matches_naive_enumeration(g in graph_strategy(9), t in pattern_strategy(5)) {
        let inst = PggInstance::new(g, t);
        let naive = naive_ntpne(&inst);
        prop_assert_eq!(enumerate_ntpne(&inst, 1 << 10, 26).unwrap(), naive.clone());
        let all = ExhaustiveSearch::new(&inst.graph, &inst.pattern).nontrivial(true).count();
        prop_assert_eq!(all, naive.len());
    }

    #[test]
    fn brute_and_cnf_agree_with_verified_witnesses(g in graph_strategy(11), t in pattern_strategy(5)) {
        let inst = PggInstance::new(g, t);
        let b = solve_ntpne(&inst, Method::Brute, 26).unwrap();
        let c = solve_ntpne(&inst, Method::Cnf, 26).unwrap();
        prop_assert_eq!(b.found(), c.found());
        for w in [&b.witness, &c.witness].into_iter().flatten() {
            prop_assert!(inst.is_ntpne(w).unwrap());
        }
        // both report the lexicographically least equilibrium
        prop_assert_eq!(b.witness, c.witness);
    }

    #[test]
    fn doubling_lifts_equilibria(g in graph_strategy(6), t in pattern_strategy(3)) {
        let inst = PggInstance::new(g.clone(), t.clone());
        let big = PggInstance::new(double_graph(&g), double_pattern(&t, &[]));
        for s in naive_ntpne(&inst) {
            let lifted = Profile([s.as_slice(), s.as_slice()].concat());
            prop_assert!(big.is_ntpne(&lifted).unwrap());
        }
    }

    #[test]
    fn every_chain_validates(t in pattern_strategy(16)) {
        let v = classify(&t);
        prop_assert_eq!(v.chain.is_some(), v.verdict == Verdict::NpComplete);
        if let Some(chain) = &v.chain {
            let r = validate_chain(&t, chain);
            prop_assert!(r.valid, "{}", r);
        }
    }

    #[test]
    fn text_formats_round_trip(g in graph_strategy(12), t in pattern_strategy(8)) {
        prop_assert_eq!(Graph::parse_text(&g.to_text()).unwrap(), g);
        prop_assert_eq!(t.to_string().parse::<Pattern>().unwrap(), t);
    }

    #[test]
    fn dimacs_round_trip(
        vars in 1usize..8,
        raw in proptest::collection::vec((0usize..8, any::<bool>()), 3..=15),
    ) {
        let lits: Vec<Literal> = raw.iter().map(|&(v, p)| Literal { var: v % vars, positive: p }).collect();
        let clauses = lits.chunks_exact(3).map(|c| [c[0], c[1], c[2]]).collect();
        let f = CnfFormula1in3::new(vars, clauses).unwrap();
        prop_assert_eq!(f.to_dimacs().parse::<CnfFormula1in3>().unwrap(), f);
    }
}
