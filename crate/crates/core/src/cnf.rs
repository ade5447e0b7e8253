//! CNF formulas, DIMACS input and exhaustive counters for the ordinary
//! (`#SAT`) and exactly-one (`#X3SAT`) semantics.

use std::fmt;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::isp::Limits;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    variable: u32,
    negated: bool,
}

impl Literal {
    pub fn new(variable: u32, negated: bool) -> Result<Self> {
        if variable == 0 {
            return Err(Error::InvalidFormula("variable indices start at 1".into()));
        }
        Ok(Literal { variable, negated })
    }

    pub fn pos(variable: u32) -> Self {
        Literal::new(variable, false).expect("variable >= 1")
    }

    pub fn neg(variable: u32) -> Self {
        Literal::new(variable, true).expect("variable >= 1")
    }

    /// DIMACS integer form: `v` or `-v`.
    pub fn from_dimacs(value: i64) -> Result<Self> {
        let variable = u32::try_from(value.unsigned_abs())
            .map_err(|_| Error::InvalidFormula(format!("literal {value} is too large")))?;
        Literal::new(variable, value < 0)
    }

    pub fn to_dimacs(self) -> i64 {
        let v = i64::from(self.variable);
        if self.negated {
            -v
        } else {
            v
        }
    }

    pub fn variable(self) -> u32 {
        self.variable
    }

    pub fn is_negated(self) -> bool {
        self.negated
    }

    pub fn complement(self) -> Self {
        Literal {
            variable: self.variable,
            negated: !self.negated,
        }
    }

    /// Truth value under an assignment packed as bits, variable `v` at bit
    /// `v - 1`.
    pub fn eval(self, assignment: u64) -> bool {
        (assignment >> (self.variable - 1) & 1 == 1) != self.negated
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            write!(f, "-x{}", self.variable)
        } else {
            write!(f, "x{}", self.variable)
        }
    }
}

pub type Clause = Vec<Literal>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CnfFormula {
    variable_count: u32,
    clauses: Vec<Clause>,
}

impl CnfFormula {
    /// Validates ranges and nonempty clauses, and drops repeated literals
    /// inside a clause (first occurrence wins). Complementary pairs are
    /// kept.
    pub fn new(variable_count: u32, clauses: Vec<Clause>) -> Result<Self> {
        let mut normalized = Vec::with_capacity(clauses.len());
        for (i, clause) in clauses.into_iter().enumerate() {
            if clause.is_empty() {
                return Err(Error::InvalidFormula(format!("clause {} is empty", i + 1)));
            }
            let mut seen = Vec::with_capacity(clause.len());
            for lit in clause {
                if lit.variable() > variable_count {
                    return Err(Error::InvalidFormula(format!(
                        "literal {} out of range 1..={variable_count}",
                        lit.to_dimacs()
                    )));
                }
                if !seen.contains(&lit) {
                    seen.push(lit);
                }
            }
            normalized.push(seen);
        }
        Ok(CnfFormula {
            variable_count,
            clauses: normalized,
        })
    }

    pub fn from_dimacs_clauses(variable_count: u32, clauses: &[&[i64]]) -> Result<Self> {
        let clauses = clauses
            .iter()
            .map(|c| {
                c.iter()
                    .map(|&l| Literal::from_dimacs(l))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        CnfFormula::new(variable_count, clauses)
    }

    pub fn variable_count(&self) -> u32 {
        self.variable_count
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn clause_count(&self) -> usize {
        self.clauses.len()
    }

    /// Sum of clause widths.
    pub fn literal_count(&self) -> usize {
        self.clauses.iter().map(Vec::len).sum()
    }

    pub fn max_width(&self) -> usize {
        self.clauses.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Declared variables that occur in no clause.
    pub fn unused_variables(&self) -> u32 {
        let mut used = vec![false; self.variable_count as usize + 1];
        for lit in self.clauses.iter().flatten() {
            used[lit.variable() as usize] = true;
        }
        used[1..].iter().filter(|&&u| !u).count() as u32
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.variable_count, self.clauses.len());
        for clause in &self.clauses {
            for lit in clause {
                out.push_str(&lit.to_dimacs().to_string());
                out.push(' ');
            }
            out.push_str("0\n");
        }
        out
    }

    /// Checks the exactly-one instance shape: widths 2 or 3, no repeated
    /// literal and no complementary pair inside a clause.
    pub fn check_x3sat_instance(&self) -> Result<()> {
        for (i, clause) in self.clauses.iter().enumerate() {
            check_x3sat_width(i, clause)?;
            for (j, a) in clause.iter().enumerate() {
                for b in &clause[j + 1..] {
                    if a.variable() == b.variable() {
                        return Err(Error::InvalidFormula(format!(
                            "clause {} mentions variable {} twice",
                            i + 1,
                            a.variable()
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_enumerable(&self, limits: &Limits) -> Result<()> {
        let n = self.variable_count as usize;
        if n > limits.sat_variables || n > 63 {
            return Err(Error::Capacity {
                what: "variable count for exhaustive counting",
                actual: n,
                limit: limits.sat_variables.min(63),
            });
        }
        Ok(())
    }
}

fn check_x3sat_width(index: usize, clause: &Clause) -> Result<()> {
    if !(2..=3).contains(&clause.len()) {
        return Err(Error::InvalidFormula(format!(
            "clause {} has width {}; exactly-one clauses need width 2 or 3",
            index + 1,
            clause.len()
        )));
    }
    Ok(())
}

impl fmt::Display for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_dimacs())
    }
}

/// Parses DIMACS CNF. Clauses may span lines and must end with `0`.
/// Declared but unused variables are kept.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula> {
    let mut header: Option<(u32, usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    let mut current_start = 0;
    let mut last_line = 0;
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        last_line = lineno;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        if trimmed.starts_with('%') {
            // SATLIB files end with `%` and a stray `0`
            break;
        }
        if let Some(rest) = trimmed.strip_prefix('p') {
            if header.is_some() {
                return Err(Error::parse(lineno, "second problem line"));
            }
            let fields: Vec<&str> = rest.split_whitespace().collect();
            let parsed = match fields[..] {
                ["cnf", n, m] => n.parse::<u32>().ok().zip(m.parse::<usize>().ok()),
                _ => None,
            };
            let Some((n, m)) = parsed else {
                return Err(Error::parse(
                    lineno,
                    "malformed header, expected `p cnf <vars> <clauses>`",
                ));
            };
            header = Some((n, m, lineno));
            continue;
        }
        let Some((n, _, _)) = header else {
            return Err(Error::parse(lineno, "clause before `p cnf` header"));
        };
        for token in trimmed.split_whitespace() {
            let value: i64 = token
                .parse()
                .map_err(|_| Error::parse(lineno, format!("not an integer literal: {token:?}")))?;
            if value == 0 {
                if current.is_empty() {
                    return Err(Error::parse(lineno, "empty clause"));
                }
                clauses.push((current_start, std::mem::take(&mut current)));
                continue;
            }
            if value.unsigned_abs() > u64::from(n) {
                return Err(Error::parse(
                    lineno,
                    format!("literal {value} out of range for {n} variables"),
                ));
            }
            if current.is_empty() {
                current_start = lineno;
            }
            current.push(
                Literal::from_dimacs(value).map_err(|e| Error::parse(lineno, e.to_string()))?,
            );
        }
    }
    let Some((n, m, header_line)) = header else {
        return Err(Error::parse(last_line.max(1), "missing `p cnf` header"));
    };
    if !current.is_empty() {
        return Err(Error::parse(
            current_start,
            "clause is missing its terminating 0",
        ));
    }
    if clauses.len() != m {
        return Err(Error::parse(
            header_line,
            format!("header declares {m} clauses, found {}", clauses.len()),
        ));
    }
    CnfFormula::new(n, clauses.into_iter().map(|(_, c)| c).collect())
}

fn count_assignments(
    f: &CnfFormula,
    limits: &Limits,
    accept: impl Fn(&Clause, u64) -> bool,
) -> Result<BigUint> {
    f.check_enumerable(limits)?;
    let total: u64 = (0..1u64 << f.variable_count)
        .filter(|&a| f.clauses.iter().all(|c| accept(c, a)))
        .count() as u64;
    Ok(BigUint::from(total))
}

/// Satisfying assignments, by enumerating all `2^n`.
pub fn count_sat(f: &CnfFormula) -> Result<BigUint> {
    count_sat_with(f, &Limits::default())
}

pub fn count_sat_with(f: &CnfFormula, limits: &Limits) -> Result<BigUint> {
    count_assignments(f, limits, |c, a| c.iter().any(|l| l.eval(a)))
}

/// Assignments making exactly one literal true in every clause.
pub fn count_x3sat(f: &CnfFormula) -> Result<BigUint> {
    count_x3sat_with(f, &Limits::default())
}

pub fn count_x3sat_with(f: &CnfFormula, limits: &Limits) -> Result<BigUint> {
    for (i, clause) in f.clauses.iter().enumerate() {
        check_x3sat_width(i, clause)?;
    }
    count_assignments(f, limits, |c, a| {
        c.iter().filter(|l| l.eval(a)).count() == 1
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(n: u32, clauses: &[&[i64]]) -> CnfFormula {
        CnfFormula::from_dimacs_clauses(n, clauses).unwrap()
    }

    #[test]
    fn parses_examples() {
        let g = parse_dimacs("c hi\np cnf 3 1\n1 2 3 0\n").unwrap();
        assert_eq!(g, f(3, &[&[1, 2, 3]]));
        let g = parse_dimacs("p cnf 4 2\n1 -2 0\n3 4 0").unwrap();
        assert_eq!(g.variable_count(), 4);
        assert_eq!(g.clauses(), f(4, &[&[1, -2], &[3, 4]]).clauses());
        // clauses may span lines
        let g = parse_dimacs("p cnf 3 2\n1 2\n 3 0 -1\n0\n").unwrap();
        assert_eq!(g, f(3, &[&[1, 2, 3], &[-1]]));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let e = parse_dimacs("p cnf 2 1\n1 3 0").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }), "{e}");
        assert!(e.to_string().contains("out of range"));
        let e = parse_dimacs("c\np dnf 2 1\n1 0").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        let e = parse_dimacs("p cnf 2 1\n1 2\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        assert!(e.to_string().contains("terminating"));
        let e = parse_dimacs("p cnf 2 2\n1 2 0\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }));
        assert!(parse_dimacs("1 2 0\n").is_err());
        assert!(parse_dimacs("p cnf 2 1\n1 x 0\n").is_err());
    }

    #[test]
    fn keeps_unused_variables_and_dedups() {
        let g = parse_dimacs("p cnf 5 1\n2 2 -3 0\n").unwrap();
        assert_eq!(g.clauses()[0], vec![Literal::pos(2), Literal::neg(3)]);
        assert_eq!(g.unused_variables(), 3);
        assert_eq!(count_sat(&g).unwrap(), BigUint::from(24u32));
    }

    #[test]
    fn sat_counts() {
        assert_eq!(
            count_sat(&f(3, &[&[1, 2, 3]])).unwrap(),
            BigUint::from(7u32)
        );
        assert_eq!(count_sat(&f(2, &[])).unwrap(), BigUint::from(4u32));
        assert_eq!(
            count_sat(&f(1, &[&[1], &[-1]])).unwrap(),
            BigUint::from(0u32)
        );
        assert_eq!(count_sat(&f(1, &[&[1, -1]])).unwrap(), BigUint::from(2u32));
    }

    #[test]
    fn x3sat_counts() {
        assert_eq!(
            count_x3sat(&f(3, &[&[1, 2, 3]])).unwrap(),
            BigUint::from(3u32)
        );
        assert_eq!(
            count_x3sat(&f(2, &[&[1, 2], &[-1, 2]])).unwrap(),
            BigUint::from(0u32)
        );
        assert_eq!(
            count_x3sat(&f(3, &[&[1, 2], &[1, 3]])).unwrap(),
            BigUint::from(2u32)
        );
        assert!(matches!(
            count_x3sat(&f(2, &[&[1]])),
            Err(Error::InvalidFormula(_))
        ));
    }

    #[test]
    fn capacity() {
        let big = f(30, &[&[1]]);
        assert!(matches!(count_sat(&big), Err(Error::Capacity { .. })));
    }

    #[test]
    fn x3sat_shape_check() {
        assert!(f(3, &[&[1, 2, 3]]).check_x3sat_instance().is_ok());
        assert!(f(3, &[&[1, -1, 3]]).check_x3sat_instance().is_err());
        assert!(f(3, &[&[1, 2, 3, -2]]).check_x3sat_instance().is_err());
        assert!(f(3, &[&[1]]).check_x3sat_instance().is_err());
    }
}
