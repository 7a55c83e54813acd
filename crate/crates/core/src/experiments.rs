//! Seeded batch experiments that cross-check the constructions against
//! independent oracles. Each batch draws all of its instances from one
//! ChaCha8 stream up front, then checks them in parallel; results are
//! collected in draw order, so a seed fully determines the report.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::game::PggInstance;
use crate::gadgets::isolated_odd_pattern;
use crate::graph::{Graph, Profile};
use crate::pattern::Pattern;
use crate::reductions::classify::{classify, validate_chain, Verdict};
use crate::reductions::double::{double_graph, random_double};
use crate::reductions::formula::CnfFormula1in3;
use crate::reductions::one_in_three::{extract_assignment, lift_assignment, reduce_1in3_to_pgg};
use crate::reductions::shift::shift_family;
use crate::solve::{br_dynamics, enumerate_ntpne, solve_ntpne, Method, Schedule, Terminal, DEFAULT_EXHAUSTIVE_CAP};

/// Mismatch descriptions kept per report; the count is always exact.
const KEPT_MISMATCHES: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExperimentReport {
    pub name: String,
    pub seed: u64,
    pub trials: usize,
    pub agreements: usize,
    /// Trials where the construction produced something structurally wrong
    /// (bad degree, failed lift, asymmetric replica, …), beyond plain disagreement.
    pub mismatches: usize,
    pub examples: Vec<String>,
    /// Experiment-specific tallies, e.g. how many instances were satisfiable.
    pub tallies: Vec<(String, usize)>,
}

impl ExperimentReport {
    pub fn passed(&self) -> bool {
        self.agreements == self.trials && self.mismatches == 0
    }

    fn from_outcomes(name: &str, seed: u64, outcomes: Vec<std::result::Result<Vec<&'static str>, String>>) -> Self {
        let trials = outcomes.len();
        let mut examples = Vec::new();
        let mut tallies: Vec<(String, usize)> = Vec::new();
        let mut agreements = 0;
        for o in outcomes {
            match o {
                Ok(tags) => {
                    agreements += 1;
                    for tag in tags {
                        match tallies.iter_mut().find(|(t, _)| t == tag) {
                            Some((_, c)) => *c += 1,
                            None => tallies.push((tag.to_string(), 1)),
                        }
                    }
                }
                Err(e) => {
                    if examples.len() < KEPT_MISMATCHES {
                        examples.push(e);
                    }
                }
            }
        }
        tallies.sort();
        ExperimentReport {
            name: name.to_string(),
            seed,
            trials,
            agreements,
            mismatches: trials - agreements,
            examples,
            tallies,
        }
    }
}

impl std::fmt::Display for ExperimentReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} {} seed={} {}/{} agree",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.seed,
            self.agreements,
            self.trials
        )?;
        for (tag, c) in &self.tallies {
            write!(f, " {tag}={c}")?;
        }
        for e in &self.examples {
            write!(f, "\n    {e}")?;
        }
        Ok(())
    }
}

/// `G(n, p)` on `n` nodes.
pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).expect("each pair is drawn once");
            }
        }
    }
    g
}

/// Node count uniform in `sizes`, edge probability uniform in `[0.15, 0.85]`.
fn draw_graph(rng: &mut impl Rng, sizes: std::ops::RangeInclusive<usize>) -> Graph {
    let n = rng.gen_range(sizes);
    let p = rng.gen_range(0.15..0.85);
    random_graph(rng, n, p)
}

fn random_profile(rng: &mut impl Rng, n: usize) -> Profile {
    Profile((0..n).map(|_| rng.gen_bool(0.5)).collect())
}

/// Brute-force 1-in-3 satisfiability against equilibrium existence on the
/// reduced graph (complete CNF solver), with lift/extract round trips.
pub fn theorem1_end_to_end(seed: u64, trials: usize) -> Result<ExperimentReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let formulas = (0..trials)
        .map(|_| {
            let vars = rng.gen_range(1..=6);
            let clauses = rng.gen_range(1..=4);
            CnfFormula1in3::random(&mut rng, vars, clauses)
        })
        .collect::<Result<Vec<_>>>()?;
    let outcomes = formulas
        .par_iter()
        .enumerate()
        .map(|(k, f)| -> Result<std::result::Result<Vec<&'static str>, String>> {
            let (inst, lm) = reduce_1in3_to_pgg(f)?;
            if inst.graph.max_degree() > 6 {
                return Ok(Err(format!("trial {k}: max degree {} for {f}", inst.graph.max_degree())));
            }
            let sat = f.brute_force()?;
            let r = solve_ntpne(&inst, Method::Cnf, DEFAULT_EXHAUSTIVE_CAP)?;
            if sat.is_some() != r.found() {
                return Ok(Err(format!(
                    "trial {k}: formula {f} satisfiable={} but equilibrium found={}",
                    sat.is_some(),
                    r.found()
                )));
            }
            if let Some(w) = &r.witness {
                if extract_assignment(&inst, w, &lm).is_err() {
                    return Ok(Err(format!("trial {k}: extraction failed for {f}")));
                }
            }
            if let Some(a) = &sat {
                let s = lift_assignment(a, &lm)?;
                if !inst.is_ntpne(&s)? || extract_assignment(&inst, &s, &lm)? != *a {
                    return Ok(Err(format!("trial {k}: lift/extract round trip failed for {f}")));
                }
            }
            Ok(Ok(vec![if sat.is_some() { "satisfiable" } else { "unsatisfiable" }]))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ExperimentReport::from_outcomes("theorem1-end-to-end", seed, outcomes))
}

/// Most equilibria enumerated per doubled instance for the replica-symmetry check.
const SYMMETRY_SAMPLE: usize = 4096;

/// Equilibrium existence for `(G, T)` against `(double(G), T')` by exhaustive
/// search on both sides, plus replica symmetry of the doubled equilibria.
pub fn double_equivalence(seed: u64, trials: usize) -> Result<ExperimentReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cases: Vec<(Graph, Pattern, Pattern)> = (0..trials)
        .map(|_| {
            let g = draw_graph(&mut rng, 1..=10);
            let len = rng.gen_range(1..=4);
            let t = Pattern::new((0..len).map(|_| rng.gen_bool(0.5)).collect::<Vec<_>>());
            let t2 = random_double(&mut rng, &t);
            (g, t, t2)
        })
        .collect();
    let outcomes = cases
        .par_iter()
        .enumerate()
        .map(|(k, (g, t, t2))| -> Result<std::result::Result<Vec<&'static str>, String>> {
            let small = PggInstance::new(g.clone(), t.clone());
            let big = PggInstance::new(double_graph(g), t2.clone());
            let lhs = solve_ntpne(&small, Method::Brute, DEFAULT_EXHAUSTIVE_CAP)?.found();
            let all = enumerate_ntpne(&big, SYMMETRY_SAMPLE, DEFAULT_EXHAUSTIVE_CAP)?;
            if lhs != !all.is_empty() {
                return Ok(Err(format!(
                    "trial {k}: n={} T={t} T'={t2}: original {lhs}, doubled {}",
                    g.n(),
                    !all.is_empty()
                )));
            }
            let n = g.n();
            if let Some(s) = all.iter().find(|s| s.as_slice()[..n] != s.as_slice()[n..]) {
                return Ok(Err(format!("trial {k}: replicas differ in {s}")));
            }
            Ok(Ok(vec![if lhs { "with-equilibrium" } else { "without-equilibrium" }]))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ExperimentReport::from_outcomes("double-equivalence", seed, outcomes))
}

/// `NTPNE(G, [0,0,1])` against `∃j NTPNE(G_j, [1,0,0,1])` with the CNF solver,
/// restricting and lifting witnesses across the family.
pub fn shift_equivalence(seed: u64, samples: usize) -> Result<ExperimentReport> {
    let t = isolated_odd_pattern(1);
    let shifted = t.shift_left(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let graphs: Vec<Graph> = (0..samples).map(|_| draw_graph(&mut rng, 1..=5)).collect();
    let outcomes = graphs
        .par_iter()
        .enumerate()
        .map(|(k, g)| -> Result<std::result::Result<Vec<&'static str>, String>> {
            let base = PggInstance::new(g.clone(), shifted.clone());
            let lhs = solve_ntpne(&base, Method::Cnf, DEFAULT_EXHAUSTIVE_CAP)?;
            let family = shift_family(g, 1)?;
            let mut rhs = false;
            for member in &family {
                let inst = PggInstance::new(member.graph.clone(), t.clone());
                let r = solve_ntpne(&inst, Method::Cnf, DEFAULT_EXHAUSTIVE_CAP)?;
                if let Some(w) = &r.witness {
                    rhs = true;
                    let s = member.restrict(w);
                    if !base.is_ntpne(&s)? || !s.get(member.forced) {
                        return Ok(Err(format!("trial {k}: G_{} witness restricts to non-equilibrium {s}", member.forced)));
                    }
                }
            }
            if lhs.found() != rhs {
                return Ok(Err(format!(
                    "trial {k}: n={} edges={:?}: shifted {} family {rhs}",
                    g.n(),
                    g.edges().collect::<Vec<_>>(),
                    lhs.found()
                )));
            }
            if let Some(s) = &lhs.witness {
                let j = (0..g.n()).find(|&i| s.get(i)).expect("non-trivial witness");
                let member = &family[j];
                let lifted = member.lift(s)?;
                if !PggInstance::new(member.graph.clone(), t.clone()).is_ntpne(&lifted)? {
                    return Ok(Err(format!("trial {k}: lift into G_{j} is not an equilibrium")));
                }
            }
            Ok(Ok(vec![if rhs { "with-equilibrium" } else { "without-equilibrium" }]))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ExperimentReport::from_outcomes("shift-equivalence", seed, outcomes))
}

/// Classifies every pattern of stored length at most `max_len`, validates each
/// hardness chain, and corroborates `ALWAYS_TRUE` with dynamics on random graphs.
pub fn classifier_totality(seed: u64, max_len: u32, graphs_per_pattern: usize) -> Result<ExperimentReport> {
    let patterns: Vec<Pattern> = (0u32..1 << max_len)
        .map(|code| Pattern::new((0..max_len).map(|i| code >> i & 1 == 1).collect::<Vec<_>>()))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // one batch of graphs and start profiles per pattern, drawn in pattern order
    let runs: Vec<Vec<(Graph, Profile, Schedule)>> = patterns
        .iter()
        .map(|t| {
            if !t.shape().monotone_decreasing || t.is_all_zero() {
                return Vec::new();
            }
            (0..graphs_per_pattern)
                .map(|_| {
                    let g = draw_graph(&mut rng, 1..=50);
                    let s = random_profile(&mut rng, g.n());
                    let sched = *[Schedule::RoundRobin, Schedule::LowestDeviator].choose(&mut rng).expect("non-empty");
                    (g, s, sched)
                })
                .collect()
        })
        .collect();
    let outcomes = patterns
        .par_iter()
        .zip(runs.par_iter())
        .map(|(t, runs)| -> Result<std::result::Result<Vec<&'static str>, String>> {
            let v = classify(t);
            let tag = match v.verdict {
                Verdict::AlwaysFalse => "always-false",
                Verdict::AlwaysTrue => "always-true",
                Verdict::PolyKnown => "poly-known",
                Verdict::NpComplete => "np-complete",
                Verdict::OutOfScopeInfinite => "out-of-scope",
            };
            if v.chain.is_some() != (v.verdict == Verdict::NpComplete) {
                return Ok(Err(format!("{t}: chain presence does not match verdict {tag}")));
            }
            if let Some(chain) = &v.chain {
                let r = validate_chain(t, chain);
                if !r.valid {
                    return Ok(Err(format!("{t}: invalid chain\n{r}")));
                }
            }
            if v.verdict == Verdict::AlwaysTrue {
                for (g, start, sched) in runs {
                    let inst = PggInstance::new(g.clone(), t.clone());
                    let cap = 100 * g.n().max(1) * g.n().max(1);
                    let tr = br_dynamics(&inst, start, *sched, cap)?;
                    if tr.terminal != Terminal::Fixpoint {
                        return Ok(Err(format!("{t}: dynamics ended in {:?} on {} nodes", tr.terminal, g.n())));
                    }
                }
            }
            Ok(Ok(vec![tag]))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ExperimentReport::from_outcomes("classifier-totality", seed, outcomes))
}

/// Patterns used to cross-validate the two complete solvers.
pub const CROSS_PATTERNS: [&str; 10] = ["1", "11", "101", "1001", "01", "001", "0101", "1101", "10011", "0110"];

/// Exhaustive search against the CNF encoding plus SAT procedure on seeded graphs.
pub fn solver_cross_validation(seed: u64, graphs: usize) -> Result<ExperimentReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let family: Vec<Graph> = (0..graphs).map(|_| draw_graph(&mut rng, 1..=12)).collect();
    let patterns: Vec<Pattern> = CROSS_PATTERNS.iter().map(|s| s.parse()).collect::<Result<_>>()?;
    let cases: Vec<(usize, &Graph, &Pattern)> = family
        .iter()
        .enumerate()
        .flat_map(|(k, g)| patterns.iter().map(move |t| (k, g, t)))
        .collect();
    let outcomes = cases
        .par_iter()
        .map(|&(k, g, t)| -> Result<std::result::Result<Vec<&'static str>, String>> {
            let inst = PggInstance::new(g.clone(), t.clone());
            let brute = solve_ntpne(&inst, Method::Brute, DEFAULT_EXHAUSTIVE_CAP)?;
            let cnf = solve_ntpne(&inst, Method::Cnf, DEFAULT_EXHAUSTIVE_CAP)?;
            if brute.found() != cnf.found() {
                return Ok(Err(format!(
                    "graph {k} (n={}) pattern {t}: brute {} cnf {}",
                    g.n(),
                    brute.found(),
                    cnf.found()
                )));
            }
            Ok(Ok(vec![if brute.found() { "found" } else { "none" }]))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ExperimentReport::from_outcomes("solver-cross-validation", seed, outcomes))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_batches_pass_and_are_deterministic() {
        let a = theorem1_end_to_end(3, 12).unwrap();
        assert!(a.passed(), "{a}");
        assert_eq!(a, theorem1_end_to_end(3, 12).unwrap());
        let b = double_equivalence(3, 20).unwrap();
        assert!(b.passed(), "{b}");
        let c = shift_equivalence(3, 4).unwrap();
        assert!(c.passed(), "{c}");
        let d = classifier_totality(3, 5, 2).unwrap();
        assert!(d.passed(), "{d}");
        assert_eq!(d.trials, 32);
        let e = solver_cross_validation(3, 5).unwrap();
        assert!(e.passed(), "{e}");
        assert_eq!(e.trials, 50);
    }

    #[test]
    fn report_counts_failures() {
        let r = ExperimentReport::from_outcomes(
            "x",
            0,
            vec![Ok(vec!["a"]), Err("boom".into()), Ok(vec!["a", "b"])],
        );
        assert!(!r.passed());
        assert_eq!((r.trials, r.agreements, r.mismatches), (3, 2, 1));
        assert_eq!(r.tallies, vec![("a".to_string(), 2), ("b".to_string(), 1)]);
        assert_eq!(r.examples, vec!["boom".to_string()]);
    }
}
