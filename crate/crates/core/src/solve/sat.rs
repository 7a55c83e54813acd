//! A small complete SAT procedure: unit propagation over two watched literals,
//! first-UIP clause learning and backjumping. Branching is fixed: the lowest
//! unassigned variable, false first. There are no restarts and no randomness,
//! so a given clause list always produces the same model and statistics.

/// DIMACS-style literal: `v` or `-v` for variable `v >= 1`.
pub type DimacsLit = i32;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SatStats {
    pub decisions: u64,
    pub conflicts: u64,
    pub propagations: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SatOutcome {
    /// `model[v - 1]` is the value of variable `v`.
    Sat(Vec<bool>),
    Unsat,
}

const NO_REASON: u32 = u32::MAX;

#[inline]
fn var(lit: u32) -> usize {
    (lit >> 1) as usize
}

fn encode(l: DimacsLit) -> u32 {
    let v = l.unsigned_abs() - 1;
    (v << 1) | u32::from(l < 0)
}

pub struct SatSolver {
    clauses: Vec<Vec<u32>>,
    watches: Vec<Vec<u32>>,
    /// -1 unassigned, 0 false, 1 true
    assign: Vec<i8>,
    level: Vec<u32>,
    reason: Vec<u32>,
    trail: Vec<u32>,
    trail_lim: Vec<usize>,
    qhead: usize,
    seen: Vec<bool>,
    next_var: usize,
    unsat: bool,
    pub stats: SatStats,
}

impl SatSolver {
    pub fn new(num_vars: usize, clauses: &[Vec<DimacsLit>]) -> Self {
        let mut s = SatSolver {
            clauses: Vec::with_capacity(clauses.len()),
            watches: vec![Vec::new(); 2 * num_vars],
            assign: vec![-1; num_vars],
            level: vec![0; num_vars],
            reason: vec![NO_REASON; num_vars],
            trail: Vec::with_capacity(num_vars),
            trail_lim: Vec::new(),
            qhead: 0,
            seen: vec![false; num_vars],
            next_var: 0,
            unsat: false,
            stats: SatStats::default(),
        };
        for c in clauses {
            s.add_clause(c);
        }
        s
    }

    fn add_clause(&mut self, c: &[DimacsLit]) {
        if self.unsat {
            return;
        }
        let mut lits: Vec<u32> = c.iter().map(|&l| encode(l)).collect();
        lits.sort_unstable();
        lits.dedup();
        if lits.windows(2).any(|w| var(w[0]) == var(w[1])) {
            return; // tautology
        }
        match lits.len() {
            0 => self.unsat = true,
            1 => match self.value(lits[0]) {
                0 => self.unsat = true,
                1 => {}
                _ => self.enqueue(lits[0], NO_REASON),
            },
            _ => {
                let idx = self.clauses.len() as u32;
                self.watches[lits[0] as usize].push(idx);
                self.watches[lits[1] as usize].push(idx);
                self.clauses.push(lits);
            }
        }
    }

    /// 1 true, 0 false, -1 unassigned.
    #[inline]
    fn value(&self, lit: u32) -> i8 {
        match self.assign[var(lit)] {
            -1 => -1,
            a => a ^ (lit & 1) as i8,
        }
    }

    fn decision_level(&self) -> u32 {
        self.trail_lim.len() as u32
    }

    fn enqueue(&mut self, lit: u32, reason: u32) {
        let v = var(lit);
        self.assign[v] = i8::from(lit & 1 == 0);
        self.level[v] = self.decision_level();
        self.reason[v] = reason;
        self.trail.push(lit);
    }

    /// Returns the index of a conflicting clause, if any.
    fn propagate(&mut self) -> Option<u32> {
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            self.stats.propagations += 1;
            let false_lit = p ^ 1;
            let ws = std::mem::take(&mut self.watches[false_lit as usize]);
            let mut kept = Vec::with_capacity(ws.len());
            let mut conflict = None;
            for (i, &ci) in ws.iter().enumerate() {
                if conflict.is_some() {
                    kept.extend_from_slice(&ws[i..]);
                    break;
                }
                let c = &mut self.clauses[ci as usize];
                if c[0] == false_lit {
                    c.swap(0, 1);
                }
                let first = c[0];
                if self.value_of(first) == 1 {
                    kept.push(ci);
                    continue;
                }
                let c = &mut self.clauses[ci as usize];
                let mut moved = false;
                for k in 2..c.len() {
                    let l = c[k];
                    let val = match self.assign[var(l)] {
                        -1 => -1,
                        a => a ^ (l & 1) as i8,
                    };
                    if val != 0 {
                        c.swap(1, k);
                        self.watches[l as usize].push(ci);
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                kept.push(ci);
                if self.value_of(first) == 0 {
                    conflict = Some(ci);
                } else {
                    self.enqueue(first, ci);
                }
            }
            self.watches[false_lit as usize] = kept;
            if conflict.is_some() {
                return conflict;
            }
        }
        None
    }

    #[inline]
    fn value_of(&self, lit: u32) -> i8 {
        self.value(lit)
    }

    /// First-UIP learning; returns the learnt clause (asserting literal first) and the backjump level.
    fn analyze(&mut self, mut confl: u32) -> (Vec<u32>, u32) {
        let current = self.decision_level();
        let mut learnt = vec![0u32];
        let mut pending = 0usize;
        let mut p: Option<u32> = None;
        let mut idx = self.trail.len();
        loop {
            let clause = &self.clauses[confl as usize];
            let skip = usize::from(p.is_some());
            for &q in &clause[skip..] {
                let v = var(q);
                if !self.seen[v] && self.level[v] > 0 {
                    self.seen[v] = true;
                    if self.level[v] == current {
                        pending += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            loop {
                idx -= 1;
                if self.seen[var(self.trail[idx])] {
                    break;
                }
            }
            let lit = self.trail[idx];
            p = Some(lit);
            self.seen[var(lit)] = false;
            pending -= 1;
            if pending == 0 {
                break;
            }
            confl = self.reason[var(lit)];
        }
        learnt[0] = p.expect("conflict at a positive level has a UIP") ^ 1;
        for &q in &learnt[1..] {
            self.seen[var(q)] = false;
        }
        let mut back = 0;
        if learnt.len() > 1 {
            let mut best = 1;
            for k in 2..learnt.len() {
                if self.level[var(learnt[k])] > self.level[var(learnt[best])] {
                    best = k;
                }
            }
            learnt.swap(1, best);
            back = self.level[var(learnt[1])];
        }
        (learnt, back)
    }

    fn backtrack(&mut self, level: u32) {
        if self.decision_level() <= level {
            return;
        }
        let keep = self.trail_lim[level as usize];
        for &lit in &self.trail[keep..] {
            let v = var(lit);
            self.assign[v] = -1;
            self.reason[v] = NO_REASON;
        }
        self.trail.truncate(keep);
        self.trail_lim.truncate(level as usize);
        self.qhead = keep;
        self.next_var = 0;
    }

    fn pick_branch(&mut self) -> Option<usize> {
        while self.next_var < self.assign.len() {
            if self.assign[self.next_var] == -1 {
                return Some(self.next_var);
            }
            self.next_var += 1;
        }
        None
    }

    pub fn solve(&mut self) -> SatOutcome {
        if self.unsat {
            return SatOutcome::Unsat;
        }
        loop {
            if let Some(confl) = self.propagate() {
                self.stats.conflicts += 1;
                if self.decision_level() == 0 {
                    self.unsat = true;
                    return SatOutcome::Unsat;
                }
                let (learnt, back) = self.analyze(confl);
                self.backtrack(back);
                if learnt.len() == 1 {
                    self.enqueue(learnt[0], NO_REASON);
                } else {
                    let idx = self.clauses.len() as u32;
                    self.watches[learnt[0] as usize].push(idx);
                    self.watches[learnt[1] as usize].push(idx);
                    let asserting = learnt[0];
                    self.clauses.push(learnt);
                    self.enqueue(asserting, idx);
                }
            } else {
                let Some(v) = self.pick_branch() else {
                    return SatOutcome::Sat(self.assign.iter().map(|&a| a == 1).collect());
                };
                self.stats.decisions += 1;
                self.trail_lim.push(self.trail.len());
                self.enqueue(((v as u32) << 1) | 1, NO_REASON);
            }
        }
    }
}

/// Convenience wrapper.
pub fn solve_cnf(num_vars: usize, clauses: &[Vec<DimacsLit>]) -> (SatOutcome, SatStats) {
    let mut s = SatSolver::new(num_vars, clauses);
    let out = s.solve();
    (out, s.stats)
}
