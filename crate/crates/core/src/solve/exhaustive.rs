//! Pruned exhaustive search over 0/1 assignments.
//!
//! Nodes are assigned in id order, 0 before 1, so leaves are visited in
//! lexicographic profile order (node 0 most significant). After each
//! assignment, every constrained node touching it is checked: with `c` assigned
//! productive neighbors and `u` unassigned ones, its value must be attainable
//! as `T[k]` for some `k` in `c..=c+u`. Once all neighbors are assigned this is
//! exactly the best-response condition, so surviving leaves are precisely the
//! assignments in which every constrained node best-responds.

use rayon::prelude::*;

use crate::graph::{Graph, Profile};
use crate::pattern::Pattern;

const UNSET: i8 = -1;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Branch assignments tried.
    pub nodes: u64,
    /// Assignments rejected by the feasibility check.
    pub conflicts: u64,
}

impl SearchStats {
    fn add(&mut self, other: SearchStats) {
        self.nodes += other.nodes;
        self.conflicts += other.conflicts;
    }
}

#[derive(Clone, Debug)]
pub struct ExhaustiveSearch<'a> {
    graph: &'a Graph,
    /// `ones_before[k]` = number of indices `< k` where the pattern is 1.
    ones_before: Vec<u32>,
    constrained: Vec<bool>,
    fixed: Vec<Option<bool>>,
    nontrivial: bool,
}

struct State {
    val: Vec<i8>,
    ones: Vec<u32>,
    free: Vec<u32>,
    total_ones: usize,
    stats: SearchStats,
}

impl<'a> ExhaustiveSearch<'a> {
    /// Every node constrained to best-respond, nothing fixed, trivial profile allowed.
    pub fn new(graph: &'a Graph, pattern: &Pattern) -> Self {
        let n = graph.n();
        let span = graph.max_degree() + 2;
        let mut ones_before = Vec::with_capacity(span + 1);
        ones_before.push(0);
        for k in 0..span {
            ones_before.push(ones_before[k] + u32::from(pattern.query(k)));
        }
        ExhaustiveSearch {
            graph,
            ones_before,
            constrained: vec![true; n],
            fixed: vec![None; n],
            nontrivial: false,
        }
    }

    /// Only nodes with `mask[i]` must best-respond; others are free inputs.
    pub fn constrained(mut self, mask: Vec<bool>) -> Self {
        assert_eq!(mask.len(), self.graph.n());
        self.constrained = mask;
        self
    }

    pub fn fix(mut self, node: usize, value: bool) -> Self {
        self.fixed[node] = Some(value);
        self
    }

    /// Reject the all-zero assignment.
    pub fn nontrivial(mut self, yes: bool) -> Self {
        self.nontrivial = yes;
        self
    }

    #[inline]
    fn attainable(&self, value: bool, lo: usize, hi: usize) -> bool {
        let ones = self.ones_before[hi + 1] - self.ones_before[lo];
        if value {
            ones > 0
        } else {
            (ones as usize) < hi - lo + 1
        }
    }

    #[inline]
    fn node_ok(&self, st: &State, i: usize) -> bool {
        if !self.constrained[i] || st.val[i] == UNSET {
            return true;
        }
        let lo = st.ones[i] as usize;
        self.attainable(st.val[i] == 1, lo, lo + st.free[i] as usize)
    }

    fn fresh_state(&self) -> State {
        let n = self.graph.n();
        State {
            val: vec![UNSET; n],
            ones: vec![0; n],
            free: (0..n).map(|i| self.graph.degree(i) as u32).collect(),
            total_ones: 0,
            stats: SearchStats::default(),
        }
    }

    fn assign(&self, st: &mut State, i: usize, v: bool) -> bool {
        st.val[i] = i8::from(v);
        st.total_ones += usize::from(v);
        for &j in self.graph.neighbors(i) {
            st.free[j] -= 1;
            st.ones[j] += u32::from(v);
        }
        self.node_ok(st, i) && self.graph.neighbors(i).iter().all(|&j| self.node_ok(st, j))
    }

    fn unassign(&self, st: &mut State, i: usize) {
        let v = st.val[i] == 1;
        st.val[i] = UNSET;
        st.total_ones -= usize::from(v);
        for &j in self.graph.neighbors(i) {
            st.free[j] += 1;
            st.ones[j] -= u32::from(v);
        }
    }

    /// Depth-first from node `pos`; `visit` returns false to stop. Returns false if stopped.
    fn dfs(&self, st: &mut State, pos: usize, visit: &mut dyn FnMut(&[i8]) -> bool) -> bool {
        if pos == self.graph.n() {
            if self.nontrivial && st.total_ones == 0 {
                return true;
            }
            return visit(&st.val);
        }
        let choices: &[bool] = match self.fixed[pos] {
            Some(false) => &[false],
            Some(true) => &[true],
            None => &[false, true],
        };
        for &v in choices {
            st.stats.nodes += 1;
            let ok = self.assign(st, pos, v);
            let keep_going = if ok {
                self.dfs(st, pos + 1, visit)
            } else {
                st.stats.conflicts += 1;
                true
            };
            self.unassign(st, pos);
            if !keep_going {
                return false;
            }
        }
        true
    }

    /// Applies `prefix` to the first nodes; `None` if it contradicts a fixed value or a constraint.
    fn seeded_state(&self, prefix: &[bool]) -> Option<State> {
        let mut st = self.fresh_state();
        for (i, &v) in prefix.iter().enumerate() {
            if self.fixed[i].is_some_and(|f| f != v) {
                return None;
            }
            st.stats.nodes += 1;
            if !self.assign(&mut st, i, v) {
                return None;
            }
        }
        Some(st)
    }

    /// Sequential depth-first walk over all surviving assignments in lexicographic order.
    pub fn for_each(&self, mut visit: impl FnMut(&[bool]) -> bool) -> SearchStats {
        let mut st = self.fresh_state();
        let mut buf = Vec::with_capacity(self.graph.n());
        self.dfs(&mut st, 0, &mut |val| {
            buf.clear();
            buf.extend(val.iter().map(|&x| x == 1));
            visit(&buf)
        });
        st.stats
    }

    /// Lexicographically first surviving assignment.
    pub fn first(&self) -> (Option<Profile>, SearchStats) {
        let mut found = None;
        let stats = self.for_each(|s| {
            found = Some(Profile(s.to_vec()));
            false
        });
        (found, stats)
    }

    /// Up to `limit` surviving assignments in lexicographic order.
    ///
    /// The space is split on the first few nodes and searched in parallel; each
    /// part yields its own lexicographic prefix, and the parts are concatenated
    /// in prefix order, so the output equals the sequential one.
    pub fn collect(&self, limit: usize) -> (Vec<Profile>, SearchStats) {
        if limit == 0 {
            return (Vec::new(), SearchStats::default());
        }
        let n = self.graph.n();
        let split = if n >= 16 { 8 } else { 0 };
        let parts: Vec<(Vec<Profile>, SearchStats)> = (0u32..1 << split)
            .into_par_iter()
            .map(|code| {
                let prefix: Vec<bool> = (0..split).map(|b| code >> (split - 1 - b) & 1 == 1).collect();
                let Some(mut st) = self.seeded_state(&prefix) else {
                    return (Vec::new(), SearchStats { nodes: 0, conflicts: 1 });
                };
                let mut out = Vec::new();
                self.dfs(&mut st, split, &mut |val| {
                    out.push(Profile(val.iter().map(|&x| x == 1).collect()));
                    out.len() < limit
                });
                (out, st.stats)
            })
            .collect();
        let mut all = Vec::new();
        let mut stats = SearchStats::default();
        for (mut part, s) in parts {
            stats.add(s);
            if all.len() < limit {
                part.truncate(limit - all.len());
                all.append(&mut part);
            }
        }
        (all, stats)
    }

    pub fn count(&self) -> usize {
        let mut c = 0;
        self.for_each(|_| {
            c += 1;
            true
        });
        c
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::PggInstance;

    /// Plain 2^n sweep, independent of the pruning logic.
    fn oracle(g: &Graph, t: &Pattern, nontrivial: bool) -> Vec<Profile> {
        let n = g.n();
        let inst = PggInstance::new(g.clone(), t.clone());
        (0u64..1 << n)
            .map(|code| Profile((0..n).map(|i| code >> (n - 1 - i) & 1 == 1).collect()))
            .filter(|s| inst.is_pne(s).unwrap() && (!nontrivial || !s.is_all_zero()))
            .collect()
    }

    #[test]
    fn matches_oracle_on_small_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(1..=9);
            let p = rng.gen_range(0.1..0.7);
            let edges: Vec<_> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|_| rng.gen_bool(p))
                .collect();
            let g = Graph::from_edges(n, edges).unwrap();
            let len = rng.gen_range(0..6);
            let t = Pattern::new((0..len).map(|_| rng.gen_bool(0.5)).collect::<Vec<_>>());
            for nontrivial in [false, true] {
                let (got, _) = ExhaustiveSearch::new(&g, &t).nontrivial(nontrivial).collect(usize::MAX);
                assert_eq!(got, oracle(&g, &t, nontrivial), "graph {g:?} pattern {t}");
            }
        }
    }

    #[test]
    fn parallel_split_matches_sequential() {
        let g = Graph::cycle(18).unwrap();
        let t = Pattern::from_bits(&[1, 0, 0, 1]);
        let search = ExhaustiveSearch::new(&g, &t);
        let mut seq = Vec::new();
        search.for_each(|s| {
            seq.push(Profile(s.to_vec()));
            true
        });
        let (par, _) = search.collect(usize::MAX);
        assert!(!seq.is_empty());
        assert_eq!(par, seq);
        let (first3, _) = search.collect(3);
        assert_eq!(first3, seq[..3]);
    }

    #[test]
    fn fixed_and_free_nodes() {
        // path 0-1-2 under [1,0,1] with node 0 an unconstrained input
        let g = Graph::path(3);
        let t = Pattern::zero_or_two();
        let free0 = ExhaustiveSearch::new(&g, &t).constrained(vec![false, true, true]);
        let (all, _) = free0.collect(usize::MAX);
        assert_eq!(all, vec![Profile::from_bits(&[0, 0, 1]), Profile::from_bits(&[0, 1, 0])]);
        let (none, _) = free0.clone().fix(0, true).collect(usize::MAX);
        assert!(none.is_empty());
        assert_eq!(free0.fix(0, false).count(), 2);
    }
}
