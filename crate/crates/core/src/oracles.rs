//! Exhaustive deciders used to check the reduction: brute-force SAT,
//! backtracking Hamiltonian cycle search, exact TSP by Held-Karp and by
//! permutation scan, and the end-to-end "is there a shorter tour" decider.
//!
//! Every search is deterministic. Searches that can blow up take an
//! [`OracleBudget`] and report exhaustion as a distinct outcome.

use alloc::vec::Vec;

use thiserror::Error;

use crate::certificates::ReductionArtifact;
use crate::cnf::{Assignment, CnfFormula};
use crate::graph::{Digraph, UnGraph};
use crate::lowering::{collapse_graph, expand_cycle, LoweringError};
use crate::rhc::RhcInstance;
use crate::tsp::{DistanceMatrix, Tour};

pub const HELD_KARP_DEFAULT_CAP: usize = 18;
pub const BRUTE_FORCE_CAP: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    /// Candidate assignments (SAT) or search-tree nodes (Hamiltonian search).
    pub max_nodes_explored: u64,
}

impl OracleBudget {
    pub const fn new(max_nodes_explored: u64) -> Self {
        Self { max_nodes_explored }
    }

    pub const fn unlimited() -> Self {
        Self::new(u64::MAX)
    }
}

impl Default for OracleBudget {
    fn default() -> Self {
        Self::new(10_000_000)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SatOutcome {
    Satisfiable(Assignment),
    Unsatisfiable,
    BudgetExceeded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HamOutcome {
    Cycle(Vec<usize>),
    NoCycle,
    BudgetExceeded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnotherTour {
    /// A tour of length `|V'|`.
    Shorter(Tour),
    /// No tour beats the canonical one.
    Minimal,
    BudgetExceeded,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("dimension {dimension} exceeds the cap of {cap}")]
    DimensionCap { dimension: usize, cap: usize },
    #[error("instance has no cities")]
    Empty,
}

/// Enumerates assignments in binary counting order (`x1` least significant,
/// `false` = 0) and returns the first satisfying one.
pub fn sat_brute(formula: &CnfFormula, budget: OracleBudget) -> SatOutcome {
    let n = formula.num_variables();
    let total: u128 = 1u128 << n.min(127);
    let mut explored: u64 = 0;
    let mut bits: u128 = 0;
    while bits < total {
        if explored >= budget.max_nodes_explored {
            return SatOutcome::BudgetExceeded;
        }
        explored += 1;
        let a = Assignment::from_values((0..n).map(|i| i < 128 && bits >> i & 1 == 1).collect());
        if formula.evaluate(&a).expect("assignment covers the formula") {
            return SatOutcome::Satisfiable(a);
        }
        bits += 1;
    }
    SatOutcome::Unsatisfiable
}

enum Step {
    Found,
    Dead,
    Budget,
}

struct HamSearch {
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
    visited: Vec<bool>,
    path: Vec<usize>,
    explored: u64,
    limit: u64,
}

impl HamSearch {
    /// Every unvisited node can still be entered from the path end or another
    /// unvisited node, and can still leave toward the start or another
    /// unvisited node.
    fn feasible(&self) -> bool {
        let start = self.path[0];
        let end = *self.path.last().expect("nonempty path");
        (0..self.succ.len()).filter(|&w| !self.visited[w]).all(|w| {
            self.pred[w].iter().any(|&p| !self.visited[p] || p == end)
                && self.succ[w].iter().any(|&s| !self.visited[s] || s == start)
        })
    }

    fn extend(&mut self) -> Step {
        let u = *self.path.last().expect("nonempty path");
        if self.path.len() == self.succ.len() {
            return if self.succ[u].contains(&self.path[0]) {
                Step::Found
            } else {
                Step::Dead
            };
        }
        for i in 0..self.succ[u].len() {
            let v = self.succ[u][i];
            if self.visited[v] {
                continue;
            }
            if self.explored >= self.limit {
                return Step::Budget;
            }
            self.explored += 1;
            self.visited[v] = true;
            self.path.push(v);
            if self.feasible() {
                match self.extend() {
                    Step::Dead => {}
                    done => return done,
                }
            }
            self.path.pop();
            self.visited[v] = false;
        }
        Step::Dead
    }
}

/// Backtracking search for a directed Hamiltonian cycle that avoids the
/// `forbidden` edges. Starts at node 0 and tries successors in id order, so
/// the first cycle found is deterministic.
pub fn ham_cycle_search(
    g: &Digraph,
    forbidden: &[(usize, usize)],
    budget: OracleBudget,
) -> HamOutcome {
    let n = g.node_count();
    if n == 0 {
        return HamOutcome::NoCycle;
    }
    let allowed = Digraph::from_edges(n, g.edges().filter(|e| !forbidden.contains(e)));
    let succ: Vec<Vec<usize>> = (0..n).map(|u| allowed.successors(u).to_vec()).collect();
    if n == 1 {
        return if succ[0].contains(&0) {
            HamOutcome::Cycle(alloc::vec![0])
        } else {
            HamOutcome::NoCycle
        };
    }
    let mut search = HamSearch {
        pred: allowed.predecessors(),
        succ,
        visited: alloc::vec![false; n],
        path: alloc::vec![0],
        explored: 0,
        limit: budget.max_nodes_explored,
    };
    search.visited[0] = true;
    if !search.feasible() {
        return HamOutcome::NoCycle;
    }
    match search.extend() {
        Step::Found => HamOutcome::Cycle(search.path),
        Step::Dead => HamOutcome::NoCycle,
        Step::Budget => HamOutcome::BudgetExceeded,
    }
}

/// Undirected Hamiltonian cycle search; graphs with fewer than three nodes
/// have none.
pub fn ham_cycle_search_undirected(g: &UnGraph, budget: OracleBudget) -> HamOutcome {
    if g.node_count() < 3 {
        return HamOutcome::NoCycle;
    }
    ham_cycle_search(&g.to_symmetric_digraph(), &[], budget)
}

/// Exact TSP by dynamic programming over subsets. Among optimal tours
/// starting at city 1, returns the lexicographically smallest.
pub fn tsp_held_karp(
    matrix: &DistanceMatrix,
    max_dimension: usize,
) -> Result<(u64, Tour), OracleError> {
    let n = matrix.dimension();
    if n > max_dimension {
        return Err(OracleError::DimensionCap {
            dimension: n,
            cap: max_dimension,
        });
    }
    if let Some(trivial) = small_instance(matrix)? {
        return Ok(trivial);
    }
    let d = |i: usize, j: usize| u64::from(matrix.get(i, j));
    // Cities 1..n map to bits 0..n-1; `rest[mask * k + (j - 1)]` is the
    // cheapest way to finish from `j` after visiting city 0 and `mask`.
    let k = n - 1;
    let full = (1usize << k) - 1;
    let mut rest = alloc::vec![u64::MAX; (full + 1) * k];
    for j in 1..n {
        rest[full * k + j - 1] = d(j, 0);
    }
    for mask in (1..full).rev() {
        for j in 1..n {
            if mask >> (j - 1) & 1 == 0 {
                continue;
            }
            let best = (1..n)
                .filter(|&c| mask >> (c - 1) & 1 == 0)
                .map(|c| d(j, c) + rest[(mask | 1 << (c - 1)) * k + c - 1])
                .min()
                .expect("mask is not full");
            rest[mask * k + j - 1] = best;
        }
    }
    let optimum = (1..n)
        .map(|c| d(0, c) + rest[(1 << (c - 1)) * k + c - 1])
        .min()
        .expect("at least two cities");

    let mut tour = alloc::vec![0usize];
    let mut mask = 0usize;
    let mut remaining = optimum;
    let mut at = 0;
    while mask != full {
        let next = (1..n)
            .filter(|&c| mask >> (c - 1) & 1 == 0)
            .find(|&c| d(at, c) + rest[(mask | 1 << (c - 1)) * k + c - 1] == remaining)
            .expect("an optimal continuation exists");
        remaining -= d(at, next);
        mask |= 1 << (next - 1);
        tour.push(next);
        at = next;
    }
    Ok((optimum, Tour::from_nodes(&tour)))
}

/// Exact TSP by scanning every permutation with city 1 fixed, in
/// lexicographic order; ties keep the first (smallest) tour.
pub fn tsp_brute(matrix: &DistanceMatrix) -> Result<(u64, Tour), OracleError> {
    let n = matrix.dimension();
    if n > BRUTE_FORCE_CAP {
        return Err(OracleError::DimensionCap {
            dimension: n,
            cap: BRUTE_FORCE_CAP,
        });
    }
    if let Some(trivial) = small_instance(matrix)? {
        return Ok(trivial);
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let length = |p: &[usize]| -> u64 {
        (0..n)
            .map(|i| u64::from(matrix.get(p[i], p[(i + 1) % n])))
            .sum()
    };
    let mut best = (length(&perm), perm.clone());
    while next_permutation(&mut perm[1..]) {
        let len = length(&perm);
        if len < best.0 {
            best = (len, perm.clone());
        }
    }
    Ok((best.0, Tour::from_nodes(&best.1)))
}

fn small_instance(matrix: &DistanceMatrix) -> Result<Option<(u64, Tour)>, OracleError> {
    match matrix.dimension() {
        0 => Err(OracleError::Empty),
        1 => Ok(Some((0, Tour::from_nodes(&[0])))),
        2 => Ok(Some((2 * u64::from(matrix.get(0, 1)), Tour::from_nodes(&[0, 1])))),
        _ => Ok(None),
    }
}

/// Advances to the next lexicographic permutation; `false` after the last.
fn next_permutation(xs: &mut [usize]) -> bool {
    let Some(i) = xs.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = xs.iter().rposition(|&x| x > xs[i]).expect("pivot has a successor");
    xs.swap(i, j);
    xs[i + 1..].reverse();
    true
}

/// Decides whether the instance has a tour shorter than the canonical one by
/// searching the gadget graph for a Hamiltonian cycle avoiding `e_z`; a found
/// cycle is expanded into a tour of length `|V'|`.
pub fn decide_another_tour(art: &ReductionArtifact, budget: OracleBudget) -> AnotherTour {
    let g = art.gadget();
    match ham_cycle_search(g.digraph(), &[g.ez_directed()], budget) {
        HamOutcome::Cycle(cycle) => AnotherTour::Shorter(Tour::from_nodes(&expand_cycle(&cycle))),
        HamOutcome::NoCycle => AnotherTour::Minimal,
        HamOutcome::BudgetExceeded => AnotherTour::BudgetExceeded,
    }
}

/// Hamiltonian cycle search on an RHC graph, through its collapsed directed
/// form.
pub fn rhc_cycle_search(inst: &RhcInstance, budget: OracleBudget) -> Result<HamOutcome, LoweringError> {
    let directed = collapse_graph(&inst.graph)?;
    Ok(ham_cycle_search(&directed, &[], budget))
}
