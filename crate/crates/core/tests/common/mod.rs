#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};

use tourmin_core::cnf::parse_dimacs;
use tourmin_core::oracles::{sat_brute, SatOutcome};
use tourmin_core::{Assignment, CnfFormula, OracleBudget};

pub struct CorpusEntry {
    pub name: String,
    pub path: PathBuf,
    pub text: String,
    pub formula: CnfFormula,
}

pub fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/corpus")
}

pub fn corpus() -> Vec<CorpusEntry> {
    let mut paths: Vec<PathBuf> = fs::read_dir(corpus_dir())
        .expect("corpus directory")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "cnf"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|path| {
            let text = fs::read_to_string(&path).unwrap();
            let formula = parse_dimacs(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
            CorpusEntry {
                name: path.file_stem().unwrap().to_string_lossy().into_owned(),
                path,
                text,
                formula,
            }
        })
        .collect()
}

pub fn is_sat(formula: &CnfFormula) -> bool {
    match sat_brute(formula, OracleBudget::unlimited()) {
        SatOutcome::Satisfiable(_) => true,
        SatOutcome::Unsatisfiable => false,
        SatOutcome::BudgetExceeded => unreachable!("unlimited budget"),
    }
}

/// Every satisfying assignment, by direct enumeration.
pub fn all_models(formula: &CnfFormula) -> Vec<Assignment> {
    let n = formula.num_variables();
    (0u64..1 << n)
        .map(|bits| Assignment::from_values((0..n).map(|i| bits >> i & 1 == 1).collect()))
        .filter(|a| formula.evaluate(a).unwrap())
        .collect()
}

pub fn strip_comments(text: &str) -> String {
    text.lines()
        .filter(|l| !l.trim_start().starts_with('c'))
        .map(|l| format!("{l}\n"))
        .collect()
}
