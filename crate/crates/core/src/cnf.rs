//! CNF formulas, assignments, DIMACS text, and the dummy-variable augmentation.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::{self, Write as _};
use core::str::FromStr;

use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CnfError {
    #[error("variable index must be at least 1")]
    ZeroVariable,
    #[error("literal {literal} refers to a variable above {num_variables}")]
    VariableOutOfRange { literal: i64, num_variables: u32 },
    #[error("empty clause")]
    EmptyClause,
    #[error("assignment covers {got} variables, formula has {expected}")]
    AssignmentDomain { expected: u32, got: u32 },
    #[error("line {line}: {kind}")]
    Dimacs { line: usize, kind: DimacsErrorKind },
    #[error("malformed assignment: {0}")]
    AssignmentSyntax(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DimacsErrorKind {
    #[error("malformed header, expected `p cnf <variables> <clauses>`")]
    MalformedHeader,
    #[error("missing `p cnf` header")]
    MissingHeader,
    #[error("invalid literal `{0}`")]
    InvalidLiteral(String),
    #[error("literal {literal} out of range for {num_variables} variables")]
    LiteralOutOfRange { literal: i64, num_variables: u32 },
    #[error("empty clause")]
    EmptyClause,
    #[error("header declares {declared} clauses but {found} were given")]
    ClauseCountMismatch { declared: usize, found: usize },
    #[error("last clause is not terminated by 0")]
    UnterminatedClause,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Polarity {
    Positive,
    Negative,
}

/// A signed occurrence of a 1-based variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    variable: u32,
    polarity: Polarity,
}

impl Literal {
    pub fn new(variable: u32, polarity: Polarity) -> Result<Self, CnfError> {
        if variable == 0 {
            return Err(CnfError::ZeroVariable);
        }
        Ok(Self { variable, polarity })
    }

    /// # Panics
    ///
    /// If `variable` is zero.
    pub fn positive(variable: u32) -> Self {
        Self::new(variable, Polarity::Positive).expect("variable must be nonzero")
    }

    /// # Panics
    ///
    /// If `variable` is zero.
    pub fn negative(variable: u32) -> Self {
        Self::new(variable, Polarity::Negative).expect("variable must be nonzero")
    }

    /// DIMACS signed integer encoding.
    pub fn from_dimacs(value: i64) -> Result<Self, CnfError> {
        let variable = u32::try_from(value.unsigned_abs()).map_err(|_| {
            CnfError::VariableOutOfRange {
                literal: value,
                num_variables: u32::MAX,
            }
        })?;
        let polarity = if value < 0 {
            Polarity::Negative
        } else {
            Polarity::Positive
        };
        Self::new(variable, polarity)
    }

    pub fn to_dimacs(self) -> i64 {
        match self.polarity {
            Polarity::Positive => i64::from(self.variable),
            Polarity::Negative => -i64::from(self.variable),
        }
    }

    pub fn variable(self) -> u32 {
        self.variable
    }

    pub fn polarity(self) -> Polarity {
        self.polarity
    }

    pub fn is_positive(self) -> bool {
        self.polarity == Polarity::Positive
    }

    /// Whether the literal holds when its variable has value `value`.
    pub fn holds(self, value: bool) -> bool {
        value == self.is_positive()
    }
}

/// A disjunction of literals. Never empty; repeated literals are dropped,
/// keeping first occurrences in order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Clause {
    literals: Vec<Literal>,
}

impl Clause {
    pub fn new(literals: impl IntoIterator<Item = Literal>) -> Result<Self, CnfError> {
        let mut out: Vec<Literal> = Vec::new();
        for lit in literals {
            if !out.contains(&lit) {
                out.push(lit);
            }
        }
        if out.is_empty() {
            return Err(CnfError::EmptyClause);
        }
        Ok(Self { literals: out })
    }

    pub fn from_dimacs(values: &[i64]) -> Result<Self, CnfError> {
        let lits = values
            .iter()
            .map(|&v| Literal::from_dimacs(v))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(lits)
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    /// Whether `variable` occurs with `polarity`.
    pub fn contains(&self, variable: u32, polarity: Polarity) -> bool {
        self.literals
            .iter()
            .any(|l| l.variable == variable && l.polarity == polarity)
    }

    fn max_variable(&self) -> u32 {
        self.literals.iter().map(|l| l.variable).max().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CnfFormula {
    num_variables: u32,
    clauses: Vec<Clause>,
}

impl CnfFormula {
    pub fn new(num_variables: u32, clauses: Vec<Clause>) -> Result<Self, CnfError> {
        for clause in &clauses {
            if clause.max_variable() > num_variables {
                let lit = clause
                    .literals
                    .iter()
                    .find(|l| l.variable > num_variables)
                    .expect("max variable exceeds bound");
                return Err(CnfError::VariableOutOfRange {
                    literal: lit.to_dimacs(),
                    num_variables,
                });
            }
        }
        Ok(Self {
            num_variables,
            clauses,
        })
    }

    /// Convenience constructor from DIMACS-style signed clauses.
    pub fn from_dimacs_clauses(num_variables: u32, clauses: &[&[i64]]) -> Result<Self, CnfError> {
        let clauses = clauses
            .iter()
            .map(|c| Clause::from_dimacs(c))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(num_variables, clauses)
    }

    pub fn num_variables(&self) -> u32 {
        self.num_variables
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    /// True iff every clause has a literal made true by `assignment`.
    pub fn evaluate(&self, assignment: &Assignment) -> Result<bool, CnfError> {
        if assignment.num_variables() != self.num_variables {
            return Err(CnfError::AssignmentDomain {
                expected: self.num_variables,
                got: assignment.num_variables(),
            });
        }
        Ok(self.clauses.iter().all(|clause| {
            clause
                .literals
                .iter()
                .any(|lit| lit.holds(assignment.value(lit.variable)))
        }))
    }
}

/// Total truth assignment over variables `1..=num_variables`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Assignment {
    values: Vec<bool>,
}

impl Assignment {
    /// `values[i]` is the value of variable `i + 1`.
    pub fn from_values(values: Vec<bool>) -> Self {
        Self { values }
    }

    pub fn all_true(num_variables: u32) -> Self {
        Self::from_values(alloc::vec![true; num_variables as usize])
    }

    pub fn all_false(num_variables: u32) -> Self {
        Self::from_values(alloc::vec![false; num_variables as usize])
    }

    pub fn num_variables(&self) -> u32 {
        self.values.len() as u32
    }

    /// # Panics
    ///
    /// If `variable` is outside `1..=num_variables`.
    pub fn value(&self, variable: u32) -> bool {
        assert!(variable >= 1, "variables are 1-based");
        self.values[variable as usize - 1]
    }

    pub fn get(&self, variable: u32) -> Option<bool> {
        variable
            .checked_sub(1)
            .and_then(|i| self.values.get(i as usize).copied())
    }

    pub fn set(&mut self, variable: u32, value: bool) {
        self.values[variable as usize - 1] = value;
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    /// Appends one more variable.
    pub fn extended(&self, value: bool) -> Self {
        let mut values = self.values.clone();
        values.push(value);
        Self { values }
    }

    /// Keeps the first `num_variables` values.
    pub fn restricted(&self, num_variables: u32) -> Self {
        Self::from_values(self.values[..num_variables as usize].to_vec())
    }
}

/// `1=T,2=F` text form. An empty string is the empty assignment.
impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_char(',')?;
            }
            write!(f, "{}={}", i + 1, if v { 'T' } else { 'F' })?;
        }
        Ok(())
    }
}

impl FromStr for Assignment {
    type Err = CnfError;

    /// Pairs may come in any order but must cover `1..=k` exactly once.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::from_values(Vec::new()));
        }
        let mut pairs: Vec<(u32, bool)> = Vec::new();
        for item in s.split(',') {
            let item = item.trim();
            let bad = || CnfError::AssignmentSyntax(String::from(item));
            let (idx, val) = item.split_once('=').ok_or_else(bad)?;
            let idx: u32 = idx.trim().parse().map_err(|_| bad())?;
            let val = match val.trim() {
                "T" | "t" => true,
                "F" | "f" => false,
                _ => return Err(bad()),
            };
            if idx == 0 || pairs.iter().any(|&(i, _)| i == idx) {
                return Err(bad());
            }
            pairs.push((idx, val));
        }
        pairs.sort_unstable();
        if pairs.iter().enumerate().any(|(k, &(i, _))| i as usize != k + 1) {
            return Err(CnfError::AssignmentSyntax(String::from(
                "indices must cover 1..=k without gaps",
            )));
        }
        Ok(Self::from_values(pairs.into_iter().map(|(_, v)| v).collect()))
    }
}

/// A formula together with its `z`-augmented copy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AugmentedFormula {
    base: CnfFormula,
    augmented: CnfFormula,
}

impl AugmentedFormula {
    pub fn base(&self) -> &CnfFormula {
        &self.base
    }

    pub fn augmented(&self) -> &CnfFormula {
        &self.augmented
    }

    /// Index of `z`, always `n + 1`.
    pub fn dummy_variable(&self) -> u32 {
        self.base.num_variables + 1
    }
}

/// Appends the positive literal `z = n + 1` to every clause.
pub fn augment_with_dummy(formula: &CnfFormula) -> AugmentedFormula {
    let z = Literal::positive(formula.num_variables + 1);
    let clauses = formula
        .clauses
        .iter()
        .map(|c| {
            let mut literals = c.literals.clone();
            literals.push(z);
            Clause { literals }
        })
        .collect();
    AugmentedFormula {
        base: formula.clone(),
        augmented: CnfFormula {
            num_variables: formula.num_variables + 1,
            clauses,
        },
    }
}

/// Parses DIMACS CNF. Comment lines start with `c`; a line starting with `%`
/// ends the input.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula, CnfError> {
    let err = |line: usize, kind| CnfError::Dimacs { line, kind };
    let mut header: Option<(u32, usize)> = None;
    let mut clauses: Vec<Clause> = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('%') {
            break;
        }
        if line.starts_with('p') {
            if header.is_some() || !clauses.is_empty() || !current.is_empty() {
                return Err(err(line_no, DimacsErrorKind::MalformedHeader));
            }
            let mut parts = line.split_whitespace();
            let (Some("p"), Some("cnf"), Some(n), Some(m), None) = (
                parts.next(),
                parts.next(),
                parts.next(),
                parts.next(),
                parts.next(),
            ) else {
                return Err(err(line_no, DimacsErrorKind::MalformedHeader));
            };
            let n: u32 = n
                .parse()
                .map_err(|_| err(line_no, DimacsErrorKind::MalformedHeader))?;
            let m: usize = m
                .parse()
                .map_err(|_| err(line_no, DimacsErrorKind::MalformedHeader))?;
            header = Some((n, m));
            continue;
        }
        let Some((n, _)) = header else {
            return Err(err(line_no, DimacsErrorKind::MissingHeader));
        };
        for token in line.split_whitespace() {
            let value: i64 = token
                .parse()
                .map_err(|_| err(line_no, DimacsErrorKind::InvalidLiteral(token.into())))?;
            if value == 0 {
                if current.is_empty() {
                    return Err(err(line_no, DimacsErrorKind::EmptyClause));
                }
                let clause = Clause::new(core::mem::take(&mut current))
                    .expect("nonempty literal list");
                clauses.push(clause);
                continue;
            }
            if value.unsigned_abs() > u64::from(n) {
                return Err(err(
                    line_no,
                    DimacsErrorKind::LiteralOutOfRange {
                        literal: value,
                        num_variables: n,
                    },
                ));
            }
            current.push(Literal::from_dimacs(value).expect("range checked above"));
        }
    }

    let Some((n, m)) = header else {
        return Err(err(last_line.max(1), DimacsErrorKind::MissingHeader));
    };
    if !current.is_empty() {
        return Err(err(last_line, DimacsErrorKind::UnterminatedClause));
    }
    if clauses.len() != m {
        return Err(err(
            last_line.max(1),
            DimacsErrorKind::ClauseCountMismatch {
                declared: m,
                found: clauses.len(),
            },
        ));
    }
    Ok(CnfFormula {
        num_variables: n,
        clauses,
    })
}

/// Header plus one clause per line, literals in stored order.
pub fn emit_dimacs(formula: &CnfFormula) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "p cnf {} {}",
        formula.num_variables,
        formula.clauses.len()
    );
    for clause in &formula.clauses {
        for lit in &clause.literals {
            let _ = write!(out, "{} ", lit.to_dimacs());
        }
        out.push_str("0\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;
    use proptest::prelude::*;

    fn f(n: u32, clauses: &[&[i64]]) -> CnfFormula {
        CnfFormula::from_dimacs_clauses(n, clauses).unwrap()
    }

    #[test]
    fn parse_simple() {
        let phi = parse_dimacs("p cnf 2 1\n1 -2 0").unwrap();
        assert_eq!(phi, f(2, &[&[1, -2]]));
    }

    #[test]
    fn parse_zero_clauses() {
        let phi = parse_dimacs("p cnf 1 0").unwrap();
        assert_eq!(phi.num_variables(), 1);
        assert!(phi.clauses().is_empty());
    }

    #[test]
    fn parse_collapses_duplicates() {
        let phi = parse_dimacs("p cnf 1 1\n1 1 1 0").unwrap();
        assert_eq!(phi, f(1, &[&[1]]));
    }

    #[test]
    fn parse_keeps_complementary_pair() {
        let phi = parse_dimacs("p cnf 1 1\n1 -1 0\n").unwrap();
        assert_eq!(phi.clauses()[0].len(), 2);
    }

    #[test]
    fn parse_comments_multiline_and_end_marker() {
        let text = "c hello\np cnf 3 2\n1 -2\n 3 0 c\n-1 0\n%\n0\n";
        // `c` after literals on a line is not a comment in DIMACS; reject it.
        assert!(matches!(
            parse_dimacs(text),
            Err(CnfError::Dimacs {
                line: 4,
                kind: DimacsErrorKind::InvalidLiteral(_)
            })
        ));
        let text = "c hello\np cnf 3 2\n1 -2\n 3 0\n-1 0\n%\n0\n";
        assert_eq!(parse_dimacs(text).unwrap(), f(3, &[&[1, -2, 3], &[-1]]));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let cases: &[(&str, usize, DimacsErrorKind)] = &[
            ("p cnf x 1\n1 0\n", 1, DimacsErrorKind::MalformedHeader),
            ("p dnf 1 1\n1 0\n", 1, DimacsErrorKind::MalformedHeader),
            ("c only\n1 0\n", 2, DimacsErrorKind::MissingHeader),
            (
                "p cnf 1 1\n\n2 0\n",
                3,
                DimacsErrorKind::LiteralOutOfRange {
                    literal: 2,
                    num_variables: 1,
                },
            ),
            ("p cnf 1 2\n1 0\n0\n", 3, DimacsErrorKind::EmptyClause),
            (
                "p cnf 1 2\n1 0\n",
                2,
                DimacsErrorKind::ClauseCountMismatch {
                    declared: 2,
                    found: 1,
                },
            ),
            ("p cnf 1 1\n1", 2, DimacsErrorKind::UnterminatedClause),
            ("p cnf 1 1\np cnf 1 1\n1 0", 2, DimacsErrorKind::MalformedHeader),
        ];
        for (text, line, kind) in cases {
            assert_eq!(
                parse_dimacs(text),
                Err(CnfError::Dimacs {
                    line: *line,
                    kind: kind.clone()
                }),
                "input {text:?}"
            );
        }
    }

    #[test]
    fn emit_examples() {
        assert_eq!(emit_dimacs(&f(2, &[&[1, -2]])), "p cnf 2 1\n1 -2 0\n");
        assert_eq!(emit_dimacs(&f(0, &[])), "p cnf 0 0\n");
    }

    #[test]
    fn augment_examples() {
        let aug = augment_with_dummy(&f(2, &[&[1, -2]]));
        assert_eq!(aug.dummy_variable(), 3);
        assert_eq!(aug.augmented(), &f(3, &[&[1, -2, 3]]));
        assert_eq!(aug.base(), &f(2, &[&[1, -2]]));

        let aug = augment_with_dummy(&f(1, &[]));
        assert_eq!(aug.dummy_variable(), 2);
        assert_eq!(aug.augmented().num_clauses(), 0);
        assert_eq!(aug.augmented().num_variables(), 2);

        let aug = augment_with_dummy(&f(1, &[&[1], &[-1]]));
        assert_eq!(aug.augmented(), &f(2, &[&[1, 2], &[-1, 2]]));
    }

    #[test]
    fn augment_keeps_z_literal_when_clause_already_mentions_it() {
        // z is fresh, so it can never collide with an existing literal.
        let aug = augment_with_dummy(&f(2, &[&[2, -2]]));
        assert_eq!(aug.augmented().clauses()[0].literals().len(), 3);
    }

    #[test]
    fn evaluate_examples() {
        let a = Assignment::from_values(vec![false, false]);
        assert_eq!(f(2, &[&[1, -2]]).evaluate(&a), Ok(true));
        let contra = f(1, &[&[1], &[-1]]);
        for v in [true, false] {
            assert_eq!(contra.evaluate(&Assignment::from_values(vec![v])), Ok(false));
        }
        assert_eq!(
            contra.evaluate(&Assignment::all_true(2)),
            Err(CnfError::AssignmentDomain {
                expected: 1,
                got: 2
            })
        );
        assert_eq!(f(3, &[]).evaluate(&Assignment::all_false(3)), Ok(true));
    }

    #[test]
    fn assignment_text_round_trip() {
        let a: Assignment = "2=F, 1=T".parse().unwrap();
        assert_eq!(a.values(), &[true, false]);
        assert_eq!(a.to_string(), "1=T,2=F");
        assert!("1=T,3=F".parse::<Assignment>().is_err());
        assert!("1=X".parse::<Assignment>().is_err());
        assert!("1=T,1=F".parse::<Assignment>().is_err());
        assert_eq!("".parse::<Assignment>().unwrap().num_variables(), 0);
    }

    #[test]
    fn rejects_explicit_empty_clause_and_zero_variable() {
        assert_eq!(Clause::new([]), Err(CnfError::EmptyClause));
        assert_eq!(Literal::new(0, Polarity::Positive), Err(CnfError::ZeroVariable));
        assert!(matches!(
            CnfFormula::from_dimacs_clauses(1, &[&[2]]),
            Err(CnfError::VariableOutOfRange { literal: 2, .. })
        ));
    }

    fn arb_formula() -> impl Strategy<Value = CnfFormula> {
        (0u32..6).prop_flat_map(|n| {
            let lit = (1..=n.max(1) as i64, any::<bool>())
                .prop_map(|(v, neg)| if neg { -v } else { v });
            let clause = proptest::collection::vec(lit, 1..5);
            let clauses = if n == 0 {
                proptest::collection::vec(clause, 0..1).boxed()
            } else {
                proptest::collection::vec(clause, 0..6).boxed()
            };
            clauses.prop_map(move |cs| {
                let cs: Vec<&[i64]> = cs.iter().map(Vec::as_slice).collect();
                CnfFormula::from_dimacs_clauses(n, &cs).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn dimacs_round_trip(phi in arb_formula()) {
            let text = emit_dimacs(&phi);
            prop_assert_eq!(parse_dimacs(&text).unwrap(), phi.clone());
            prop_assert_eq!(emit_dimacs(&parse_dimacs(&text).unwrap()), text);
        }

        #[test]
        fn z_false_agrees_with_base(phi in arb_formula(), bits in any::<u32>()) {
            let aug = augment_with_dummy(&phi);
            let n = phi.num_variables();
            let a = Assignment::from_values((0..n).map(|i| bits >> i & 1 == 1).collect());
            prop_assert_eq!(
                aug.augmented().evaluate(&a.extended(false)).unwrap(),
                phi.evaluate(&a).unwrap()
            );
            prop_assert!(aug.augmented().evaluate(&Assignment::all_true(n + 1)).unwrap());
        }
    }
}
