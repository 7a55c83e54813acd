//! Three-literal CNF formulas read under exactly-one-true semantics.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Literal {
    /// Zero-based variable id.
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal { var, positive: true }
    }

    pub fn neg(var: usize) -> Self {
        Literal { var, positive: false }
    }

    pub fn eval(self, assignment: &[bool]) -> bool {
        assignment[self.var] == self.positive
    }

    /// DIMACS form: `var + 1`, negated when negative.
    pub fn to_dimacs(self) -> i64 {
        let v = self.var as i64 + 1;
        if self.positive {
            v
        } else {
            -v
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.positive {
            f.write_str("¬")?;
        }
        write!(f, "x{}", self.var)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CnfFormula1in3 {
    pub num_vars: usize,
    pub clauses: Vec<[Literal; 3]>,
}

impl CnfFormula1in3 {
    pub fn new(num_vars: usize, clauses: Vec<[Literal; 3]>) -> Result<Self> {
        for (c, clause) in clauses.iter().enumerate() {
            if let Some(l) = clause.iter().find(|l| l.var >= num_vars) {
                return Err(Error::MalformedClause {
                    clause: c,
                    message: format!("variable {} exceeds declared count {num_vars}", l.var + 1),
                });
            }
        }
        Ok(CnfFormula1in3 { num_vars, clauses })
    }

    /// Index of the first clause without exactly one true literal.
    pub fn first_violation(&self, assignment: &[bool]) -> Option<usize> {
        self.clauses
            .iter()
            .position(|c| c.iter().filter(|l| l.eval(assignment)).count() != 1)
    }

    pub fn check(&self, assignment: &[bool]) -> Result<()> {
        if assignment.len() != self.num_vars {
            return Err(Error::InvalidParameter(format!(
                "assignment has {} values but formula has {} variables",
                assignment.len(),
                self.num_vars
            )));
        }
        match self.first_violation(assignment) {
            Some(c) => Err(Error::NotOneInThree(c)),
            None => Ok(()),
        }
    }

    /// Lexicographically smallest satisfying assignment, by enumeration.
    pub fn brute_force(&self) -> Result<Option<Vec<bool>>> {
        const MAX_VARS: usize = 26;
        if self.num_vars > MAX_VARS {
            return Err(Error::ExceedsCap {
                nodes: self.num_vars,
                cap: MAX_VARS,
            });
        }
        let n = self.num_vars;
        Ok((0u64..1 << n)
            .map(|code| (0..n).map(|i| code >> (n - 1 - i) & 1 == 1).collect::<Vec<bool>>())
            .find(|a| self.first_violation(a).is_none()))
    }

    /// Uniform random formula: each literal picks a variable and polarity independently.
    pub fn random(rng: &mut impl Rng, num_vars: usize, num_clauses: usize) -> Result<Self> {
        if num_vars == 0 {
            return Err(Error::InvalidParameter("random formula needs at least one variable".into()));
        }
        let clauses = (0..num_clauses)
            .map(|_| {
                std::array::from_fn(|_| Literal {
                    var: rng.gen_range(0..num_vars),
                    positive: rng.gen_bool(0.5),
                })
            })
            .collect();
        CnfFormula1in3::new(num_vars, clauses)
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = String::from("c 1-in-3 semantics: a clause is satisfied when exactly one of its literals is true\n");
        let _ = writeln!(out, "p cnf {} {}", self.num_vars, self.clauses.len());
        for c in &self.clauses {
            let _ = writeln!(out, "{} {} {} 0", c[0].to_dimacs(), c[1].to_dimacs(), c[2].to_dimacs());
        }
        out
    }

    pub fn parse_dimacs(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut clauses = Vec::new();
        let mut pending: Vec<Literal> = Vec::new();
        let mut last_line = 0;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            last_line = line;
            let body = raw.trim();
            if body.is_empty() || body.starts_with('c') || body.starts_with('%') {
                continue;
            }
            if body.starts_with('p') {
                if header.is_some() {
                    return Err(Error::parse(line, "duplicate problem line"));
                }
                let parts: Vec<&str> = body.split_whitespace().collect();
                match parts[..] {
                    ["p", "cnf", v, c] => {
                        let v = v.parse().map_err(|_| Error::parse(line, format!("bad variable count {v:?}")))?;
                        let c = c.parse().map_err(|_| Error::parse(line, format!("bad clause count {c:?}")))?;
                        header = Some((v, c));
                    }
                    _ => return Err(Error::parse(line, "expected 'p cnf <vars> <clauses>'")),
                }
                continue;
            }
            let Some((num_vars, _)) = header else {
                return Err(Error::parse(line, "clause before the problem line"));
            };
            for tok in body.split_whitespace() {
                let x: i64 = tok
                    .parse()
                    .map_err(|_| Error::parse(line, format!("bad literal {tok:?}")))?;
                if x == 0 {
                    let clause = clauses.len();
                    let lits: [Literal; 3] = pending.as_slice().try_into().map_err(|_| Error::MalformedClause {
                        clause,
                        message: format!("has {} literals, expected exactly 3", pending.len()),
                    })?;
                    clauses.push(lits);
                    pending.clear();
                    continue;
                }
                let var = x.unsigned_abs() as usize - 1;
                if var >= num_vars {
                    return Err(Error::MalformedClause {
                        clause: clauses.len(),
                        message: format!("variable {} exceeds declared count {num_vars}", var + 1),
                    });
                }
                pending.push(Literal { var, positive: x > 0 });
            }
        }
        let Some((num_vars, num_clauses)) = header else {
            return Err(Error::parse(last_line, "missing problem line"));
        };
        if !pending.is_empty() {
            return Err(Error::MalformedClause {
                clause: clauses.len(),
                message: "not terminated by 0".into(),
            });
        }
        if clauses.len() != num_clauses {
            return Err(Error::parse(
                last_line,
                format!("header declares {num_clauses} clauses, found {}", clauses.len()),
            ));
        }
        CnfFormula1in3::new(num_vars, clauses)
    }
}

impl FromStr for CnfFormula1in3 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CnfFormula1in3::parse_dimacs(s)
    }
}

impl fmt::Display for CnfFormula1in3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .clauses
            .iter()
            .map(|c| format!("({}, {}, {})", c[0], c[1], c[2]))
            .collect();
        f.write_str(&parts.join(" ∧ "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn round_trip() {
        let f = CnfFormula1in3::new(
            3,
            vec![
                [Literal::pos(0), Literal::pos(1), Literal::pos(2)],
                [Literal::neg(0), Literal::pos(1), Literal::neg(2)],
            ],
        )
        .unwrap();
        let text = f.to_dimacs();
        assert!(text.starts_with("c 1-in-3"));
        assert_eq!(text.parse::<CnfFormula1in3>().unwrap(), f);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            "p cnf 3 1\n1 2 0\n".parse::<CnfFormula1in3>(),
            Err(Error::MalformedClause { clause: 0, .. })
        ));
        assert!(matches!(
            "p cnf 2 1\n1 2 3 0\n".parse::<CnfFormula1in3>(),
            Err(Error::MalformedClause { .. })
        ));
        assert!(matches!("1 2 3 0\n".parse::<CnfFormula1in3>(), Err(Error::Parse { line: 1, .. })));
        assert!("p cnf 3 2\n1 2 3 0\n".parse::<CnfFormula1in3>().is_err());
        assert!("p cnf 3 1\n1 2 3\n".parse::<CnfFormula1in3>().is_err());
        assert!("p cnf 3 1\n1 x 3 0\n".parse::<CnfFormula1in3>().is_err());
        // clauses may span lines
        let f: CnfFormula1in3 = "c hi\np cnf 3 1\n1 -2\n3 0\n".parse().unwrap();
        assert_eq!(f.clauses[0], [Literal::pos(0), Literal::neg(1), Literal::pos(2)]);
    }

    #[test]
    fn one_in_three_semantics() {
        let xxx = CnfFormula1in3::new(1, vec![[Literal::pos(0); 3]]).unwrap();
        assert_eq!(xxx.brute_force().unwrap(), None);
        let xyz = CnfFormula1in3::new(3, vec![[Literal::pos(0), Literal::pos(1), Literal::pos(2)]]).unwrap();
        assert_eq!(xyz.brute_force().unwrap(), Some(vec![false, false, true]));
        assert_eq!(xyz.check(&[false, false, false]), Err(Error::NotOneInThree(0)));
        assert_eq!(xyz.check(&[true, true, false]), Err(Error::NotOneInThree(0)));
        assert!(xyz.check(&[true, false, false]).is_ok());
        // (x, ¬x, y): exactly one of x, ¬x is always true, so y must be false
        let f = CnfFormula1in3::new(2, vec![[Literal::pos(0), Literal::neg(0), Literal::pos(1)]]).unwrap();
        assert_eq!(f.brute_force().unwrap(), Some(vec![false, false]));
    }

    #[test]
    fn random_is_seeded() {
        let a = CnfFormula1in3::random(&mut ChaCha8Rng::seed_from_u64(7), 6, 4).unwrap();
        let b = CnfFormula1in3::random(&mut ChaCha8Rng::seed_from_u64(7), 6, 4).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.clauses.len(), 4);
        assert!(CnfFormula1in3::random(&mut ChaCha8Rng::seed_from_u64(7), 0, 4).is_err());
    }
}
