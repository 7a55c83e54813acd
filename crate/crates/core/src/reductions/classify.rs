//! Complexity classification of finite patterns as checkable reduction chains.
//!
//! A chain starts at the classified pattern and walks down to a base case
//! whose hardness is known. Each step records the pattern it consumes and the
//! pattern it hands on, so every step can be checked locally:
//!
//! * `HALVE`: the output is the half-pattern of the input; hardness of the
//!   half transfers to every double (replica construction).
//! * `SHIFT(t)`: the output is the input shifted left by an even `t`, where
//!   the removed prefix is `(1,0)^{t/2}`.
//! * `PREPEND10(l)`: must directly follow `SHIFT(2l)`. It certifies that
//!   prefixing its (unchanged) pattern with `(1,0)^l` gives back the shifted
//!   pattern, which preserves hardness for patterns beginning with 1.
//! * `BASE`: the final pattern satisfies the hypotheses of a known result.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::pattern::Pattern;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    AlwaysFalse,
    AlwaysTrue,
    /// Reserved for patterns settled as tractable by prior work that are not
    /// already `ALWAYS_TRUE`; no finite pattern currently lands here.
    PolyKnown,
    NpComplete,
    /// Reserved for infinite patterns, which [`Pattern`] cannot represent.
    OutOfScopeInfinite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BaseCase {
    /// `T[0]=T[2]=1` and `T[k]=0` for `k ∈ {1,3,4,5,6}` (degree-6 reduction).
    #[serde(rename = "THM1_COR_DEGREE6")]
    ZeroOrTwoPrefix,
    /// `(1,0)^{m+1}` followed by `0,0,0`, for some `m ≥ 1`.
    #[serde(rename = "COR_ALTERNATING")]
    AlternatingPrefix,
    /// Even entries 1 up to `m`, `T[1]=0`, and an odd 1 at `2n+1 ≤ m+1`, `n ≥ 1`, for some `m ≥ 2`.
    #[serde(rename = "LEMMA_ALT_ODD")]
    AlternatingWithOdd,
    /// Semi-sharp with `T[2m]=T[2m+2]=0` and `T[2m+1]=1` for some `m ≥ 1`.
    #[serde(rename = "THM2_ISOLATED_ODD")]
    IsolatedOdd,
    /// Non-monotone and `T[0]=0` (prior work).
    #[serde(rename = "PRIOR_STARTS_0")]
    PriorStartsZero,
    /// Non-monotone and `T[0]=T[1]=1` (prior work).
    #[serde(rename = "PRIOR_NONMONO_11")]
    PriorNonMonotoneOneOne,
}

impl BaseCase {
    pub fn tag(self) -> &'static str {
        match self {
            BaseCase::ZeroOrTwoPrefix => "THM1_COR_DEGREE6",
            BaseCase::AlternatingPrefix => "COR_ALTERNATING",
            BaseCase::AlternatingWithOdd => "LEMMA_ALT_ODD",
            BaseCase::IsolatedOdd => "THM2_ISOLATED_ODD",
            BaseCase::PriorStartsZero => "PRIOR_STARTS_0",
            BaseCase::PriorNonMonotoneOneOne => "PRIOR_NONMONO_11",
        }
    }

    /// Whether the base's hardness rests on constructions outside this crate.
    pub fn is_citation(self) -> bool {
        matches!(
            self,
            BaseCase::PriorStartsZero | BaseCase::PriorNonMonotoneOneOne | BaseCase::AlternatingWithOdd
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum StepKind {
    Halve,
    Shift { t: usize },
    Prepend10 { times: usize },
    Base {
        base: BaseCase,
        /// The parameter `m` the hypotheses were instantiated with, where the base has one.
        #[serde(skip_serializing_if = "Option::is_none")]
        m: Option<usize>,
    },
}

impl fmt::Display for StepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StepKind::Halve => f.write_str("HALVE"),
            StepKind::Shift { t } => write!(f, "SHIFT({t})"),
            StepKind::Prepend10 { times } => write!(f, "PREPEND10({times})"),
            StepKind::Base { base, m: Some(m) } => write!(f, "BASE({}, m={m})", base.tag()),
            StepKind::Base { base, m: None } => write!(f, "BASE({})", base.tag()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainStep {
    #[serde(flatten)]
    pub kind: StepKind,
    pub input: Pattern,
    pub output: Pattern,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionChain {
    pub steps: Vec<ChainStep>,
}

impl ReductionChain {
    pub fn base(&self) -> Option<BaseCase> {
        match self.steps.last()?.kind {
            StepKind::Base { base, .. } => Some(base),
            _ => None,
        }
    }

    pub fn halvings(&self) -> usize {
        self.steps.iter().filter(|s| s.kind == StepKind::Halve).count()
    }

    fn push(&mut self, kind: StepKind, input: &Pattern, output: &Pattern) {
        self.steps.push(ChainStep {
            kind,
            input: input.clone(),
            output: output.clone(),
        });
    }

    fn base_at(&mut self, base: BaseCase, m: Option<usize>, t: &Pattern) {
        self.push(StepKind::Base { base, m }, t, t);
    }
}

impl fmt::Display for ReductionChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .steps
            .iter()
            .map(|s| format!("{} [{}→{}]", s.kind, s.input, s.output))
            .collect();
        f.write_str(&parts.join("; "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HardnessVerdict {
    pub pattern: Pattern,
    pub verdict: Verdict,
    /// Present iff the verdict is `NP_COMPLETE`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chain: Option<ReductionChain>,
}

// ---------------------------------------------------------------------------
// Base-case hypotheses

fn starts_with_alternation(t: &Pattern, pairs: usize) -> bool {
    (0..pairs).all(|k| t.query(2 * k) && !t.query(2 * k + 1))
}

pub fn zero_or_two_prefix_holds(t: &Pattern) -> bool {
    t.query(0) && t.query(2) && [1, 3, 4, 5, 6].iter().all(|&k| !t.query(k))
}

pub fn alternating_prefix_holds(t: &Pattern, m: usize) -> bool {
    m >= 1 && starts_with_alternation(t, m + 1) && (2 * m + 2..=2 * m + 4).all(|k| !t.query(k))
}

pub fn alternating_with_odd_holds(t: &Pattern, m: usize) -> bool {
    m >= 2
        && (0..=m / 2).all(|k| t.query(2 * k))
        && !t.query(1)
        && (1..=m / 2).any(|n| t.query(2 * n + 1))
}

pub fn isolated_odd_holds(t: &Pattern, m: usize) -> bool {
    m >= 1 && t.shape().semi_sharp && !t.query(2 * m) && !t.query(2 * m + 2) && t.query(2 * m + 1)
}

fn smallest_m(t: &Pattern, from: usize, holds: impl Fn(&Pattern, usize) -> bool) -> Option<usize> {
    // every hypothesis needs a 1 at an index of order m, so m beyond the stored length cannot work
    (from..=t.len() + 1).find(|&m| holds(t, m))
}

pub fn base_holds(base: BaseCase, m: Option<usize>, t: &Pattern) -> bool {
    match (base, m) {
        (BaseCase::ZeroOrTwoPrefix, None) => zero_or_two_prefix_holds(t),
        (BaseCase::AlternatingPrefix, Some(m)) => alternating_prefix_holds(t, m),
        (BaseCase::AlternatingWithOdd, Some(m)) => alternating_with_odd_holds(t, m),
        (BaseCase::IsolatedOdd, Some(m)) => isolated_odd_holds(t, m),
        (BaseCase::PriorStartsZero, None) => !t.query(0) && !t.is_monotone(),
        (BaseCase::PriorNonMonotoneOneOne, None) => t.query(0) && t.query(1) && !t.is_monotone(),
        _ => false,
    }
}

// ---------------------------------------------------------------------------
// Classifier

pub fn classify(t: &Pattern) -> HardnessVerdict {
    let shape = t.shape();
    let (verdict, chain) = if shape.all_zero {
        (Verdict::AlwaysFalse, None)
    } else if shape.monotone_decreasing {
        (Verdict::AlwaysTrue, None)
    } else {
        let mut chain = ReductionChain::default();
        if !t.query(0) {
            chain.base_at(BaseCase::PriorStartsZero, None, t);
        } else if t.query(1) {
            chain.base_at(BaseCase::PriorNonMonotoneOneOne, None, t);
        } else if shape.spiked {
            spiked_chain(t, &mut chain);
        } else {
            semi_sharp_chain(t, &mut chain);
        }
        (Verdict::NpComplete, Some(chain))
    };
    HardnessVerdict {
        pattern: t.clone(),
        verdict,
        chain,
    }
}

/// Halving loop for a non-monotone pattern beginning `1,0`.
fn semi_sharp_chain(t: &Pattern, chain: &mut ReductionChain) {
    let mut current = t.clone();
    loop {
        let h = current.half();
        if h.query(1) {
            if !h.is_monotone() {
                chain.push(StepKind::Halve, &current, &h);
                chain.base_at(BaseCase::PriorNonMonotoneOneOne, None, &h);
                return;
            }
            let l = h.max_one().expect("h starts with 1");
            let odd_one = |z: usize| current.query(2 * z + 1);
            if let Some(m) = (1..=l).any(odd_one).then(|| smallest_m(&current, 2, alternating_with_odd_holds)) {
                chain.base_at(BaseCase::AlternatingWithOdd, m, &current);
            } else if (l + 1..=current.len() / 2).any(odd_one) {
                let shifted = current.shift_left(2 * l);
                chain.push(StepKind::Shift { t: 2 * l }, &current, &shifted);
                chain.push(StepKind::Prepend10 { times: l }, &shifted, &shifted);
                let m = smallest_m(&shifted, 1, isolated_odd_holds);
                chain.base_at(BaseCase::IsolatedOdd, m, &shifted);
            } else {
                chain.base_at(BaseCase::AlternatingPrefix, Some(l), &current);
            }
            return;
        }
        if h == Pattern::best_shot() {
            let m = smallest_m(&current, 1, isolated_odd_holds);
            chain.base_at(BaseCase::IsolatedOdd, m, &current);
            return;
        }
        chain.push(StepKind::Halve, &current, &h);
        current = h;
    }
}

fn spiked_chain(t: &Pattern, chain: &mut ReductionChain) {
    if zero_or_two_prefix_holds(t) {
        chain.base_at(BaseCase::ZeroOrTwoPrefix, None, t);
    } else if let Some(m) = smallest_m(t, 1, alternating_prefix_holds) {
        chain.base_at(BaseCase::AlternatingPrefix, Some(m), t);
    } else if let Some(m) = smallest_m(t, 2, alternating_with_odd_holds) {
        chain.base_at(BaseCase::AlternatingWithOdd, Some(m), t);
    } else {
        let k = (1..).find(|&k| !t.query(2 * k)).expect("finite pattern");
        let shifted = t.shift_left(2 * k - 2);
        chain.push(StepKind::Shift { t: 2 * k - 2 }, t, &shifted);
        chain.push(StepKind::Prepend10 { times: k - 1 }, &shifted, &shifted);
        semi_sharp_chain(&shifted, chain);
    }
}

// ---------------------------------------------------------------------------
// Validation

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepCheck {
    pub index: usize,
    pub step: String,
    /// The step's own structural precondition or base hypothesis.
    pub hypothesis_ok: bool,
    /// The step consumes exactly what the previous step produced.
    pub linked: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub problem: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainReport {
    pub pattern: Pattern,
    pub valid: bool,
    pub steps: Vec<StepCheck>,
    /// Problems with the chain as a whole (empty, not ending at a base, …).
    pub problems: Vec<String>,
}

impl fmt::Display for ChainReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} chain for {}", if self.valid { "VALID" } else { "INVALID" }, self.pattern)?;
        for s in &self.steps {
            write!(
                f,
                "  {}. {} hypothesis={} linked={}",
                s.index, s.step, s.hypothesis_ok, s.linked
            )?;
            if let Some(p) = &s.problem {
                write!(f, " ({p})")?;
            }
            writeln!(f)?;
        }
        for p in &self.problems {
            writeln!(f, "  problem: {p}")?;
        }
        Ok(())
    }
}

fn check_step(steps: &[ChainStep], i: usize) -> Result<(), String> {
    let s = &steps[i];
    let (inp, out) = (&s.input, &s.output);
    match s.kind {
        StepKind::Halve => {
            if !inp.is_double_of(out) {
                return Err(format!("{inp} is not a double of {out}"));
            }
            if out.half() != *out && *out != inp.half() {
                return Err(format!("{out} is not the half-pattern of {inp}"));
            }
        }
        StepKind::Shift { t } => {
            if t == 0 || t % 2 == 1 {
                return Err(format!("shift amount {t} is not a positive even number"));
            }
            if *out != inp.shift_left(t) {
                return Err(format!("{out} is not {inp} shifted left by {t}"));
            }
            if !starts_with_alternation(inp, t / 2) {
                return Err(format!("{inp} does not begin with (1,0)^{}", t / 2));
            }
            if !out.query(0) {
                return Err(format!("{out} does not begin with 1"));
            }
            match steps.get(i + 1).map(|n| n.kind) {
                Some(StepKind::Prepend10 { times }) if 2 * times == t => {}
                _ => return Err(format!("SHIFT({t}) is not followed by PREPEND10({})", t / 2)),
            }
        }
        StepKind::Prepend10 { times } => {
            if inp != out {
                return Err("PREPEND10 must hand on its pattern unchanged".into());
            }
            if !out.query(0) {
                return Err(format!("{out} does not begin with 1"));
            }
            let prev = match i.checked_sub(1).map(|p| &steps[p]) {
                Some(p) if p.kind == (StepKind::Shift { t: 2 * times }) => p,
                _ => return Err(format!("PREPEND10({times}) does not follow SHIFT({})", 2 * times)),
            };
            if out.prepend_one_zero(times) != prev.input {
                return Err(format!("(1,0)^{times} ++ {out} differs from {}", prev.input));
            }
        }
        StepKind::Base { base, m } => {
            if inp != out {
                return Err("BASE must not change the pattern".into());
            }
            if !base_holds(base, m, inp) {
                return Err(format!("{inp} violates the hypotheses of {}", s.kind));
            }
        }
    }
    Ok(())
}

/// Checks every step of `chain` against `t`; see the module docs for step semantics.
pub fn validate_chain(t: &Pattern, chain: &ReductionChain) -> ChainReport {
    let steps = &chain.steps;
    let mut problems = Vec::new();
    match steps.last().map(|s| s.kind) {
        None => problems.push("chain is empty".to_string()),
        Some(StepKind::Base { .. }) => {}
        Some(_) => problems.push("chain does not end at a BASE step".to_string()),
    }
    if steps[..steps.len().saturating_sub(1)]
        .iter()
        .any(|s| matches!(s.kind, StepKind::Base { .. }))
    {
        problems.push("BASE appears before the last step".to_string());
    }
    let checks: Vec<StepCheck> = (0..steps.len())
        .map(|i| {
            let expected_input = if i == 0 { t } else { &steps[i - 1].output };
            let linked = steps[i].input == *expected_input;
            let result = check_step(steps, i);
            let mut problem = result.as_ref().err().cloned();
            if !linked {
                let msg = format!("input {} should be {expected_input}", steps[i].input);
                problem = Some(problem.map_or(msg.clone(), |p| format!("{p}; {msg}")));
            }
            StepCheck {
                index: i,
                step: steps[i].kind.to_string(),
                hypothesis_ok: result.is_ok(),
                linked,
                problem,
            }
        })
        .collect();
    let valid = problems.is_empty() && checks.iter().all(|c| c.hypothesis_ok && c.linked);
    ChainReport {
        pattern: t.clone(),
        valid,
        steps: checks,
        problems,
    }
}
