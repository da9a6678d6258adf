//! Directed diamond gadget graph for an augmented formula.
//!
//! Every variable `v` of the augmented formula (the base variables in order,
//! then `z`) owns a diamond: `top(v)`, a row `row(v, 0..=3m)` and `bottom(v)`.
//! Entering the row at position 0 (left to right) encodes `true`, entering at
//! `3m` encodes `false`. Clause `j` uses the contact pair `3j-2, 3j-1` of each
//! diamond whose variable it mentions; `3j` separates consecutive pairs.
//! A positive occurrence adds `row(v,3j-2) -> clause(j) -> row(v,3j-1)`, a
//! negative one the reverse detour.
//!
//! Node ids are dense: diamonds in variable order (`top`, row left to right,
//! `bottom`), then the clause nodes by index.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use thiserror::Error;

use crate::cnf::{Assignment, AugmentedFormula, Polarity};
use crate::graph::Digraph;

pub type NodeId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeRole {
    Top(u32),
    Bottom(u32),
    /// Variable and 0-based row position.
    Row(u32, usize),
    /// 1-based clause index.
    Clause(usize),
}

impl fmt::Display for NodeRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            NodeRole::Top(v) => write!(f, "top({v})"),
            NodeRole::Bottom(v) => write!(f, "bottom({v})"),
            NodeRole::Row(v, p) => write!(f, "row({v},{p})"),
            NodeRole::Clause(j) => write!(f, "clause({j})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("invalid node label `{0}`")]
pub struct RoleParseError(pub String);

impl FromStr for NodeRole {
    type Err = RoleParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || RoleParseError(String::from(s));
        let (kind, rest) = s.split_once('(').ok_or_else(bad)?;
        let args = rest.strip_suffix(')').ok_or_else(bad)?;
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        let var = |t: &str| t.trim().parse::<u32>().map_err(|_| bad());
        match kind {
            "top" => Ok(NodeRole::Top(var(args)?)),
            "bottom" => Ok(NodeRole::Bottom(var(args)?)),
            "clause" => Ok(NodeRole::Clause(num(args)?)),
            "row" => {
                let (v, p) = args.split_once(',').ok_or_else(bad)?;
                Ok(NodeRole::Row(var(v)?, num(p)?))
            }
            _ => Err(bad()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GadgetError {
    #[error("node sequence is not a directed Hamiltonian cycle of the gadget graph")]
    NotHamiltonian,
    #[error("cycle enters the diamond of variable {0} through neither row end")]
    NoDiamondEntry(u32),
    #[error("assignment covers {got} variables, gadget graph has {expected}")]
    AssignmentDomain { expected: u32, got: u32 },
    #[error("clause {clause} cannot be detoured through variable {variable} under this assignment")]
    InvalidDetour { clause: usize, variable: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetGraph {
    /// Variables of the augmented formula, `z` included.
    num_variables: u32,
    num_clauses: usize,
    graph: Digraph,
    /// Clause literals of the augmented formula, kept for detour checks.
    occurrences: Vec<Vec<(u32, Polarity)>>,
}

impl GadgetGraph {
    /// Variables of the augmented formula (`n + 1`).
    pub fn num_variables(&self) -> u32 {
        self.num_variables
    }

    pub fn num_clauses(&self) -> usize {
        self.num_clauses
    }

    /// `x_1, ..., x_n, z`.
    pub fn variable_order(&self) -> impl Iterator<Item = u32> {
        1..=self.num_variables
    }

    pub fn dummy_variable(&self) -> u32 {
        self.num_variables
    }

    pub fn digraph(&self) -> &Digraph {
        &self.graph
    }

    pub fn node_count(&self) -> usize {
        self.graph.node_count()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    /// Last row position, `3m`.
    pub fn row_end(&self) -> usize {
        3 * self.num_clauses
    }

    fn diamond_size(&self) -> usize {
        self.row_end() + 3
    }

    fn diamond_base(&self, variable: u32) -> usize {
        (variable as usize - 1) * self.diamond_size()
    }

    pub fn node(&self, role: NodeRole) -> Option<NodeId> {
        let valid_var = |v: u32| (1..=self.num_variables).contains(&v);
        match role {
            NodeRole::Top(v) if valid_var(v) => Some(self.diamond_base(v)),
            NodeRole::Row(v, p) if valid_var(v) && p <= self.row_end() => {
                Some(self.diamond_base(v) + 1 + p)
            }
            NodeRole::Bottom(v) if valid_var(v) => {
                Some(self.diamond_base(v) + self.diamond_size() - 1)
            }
            NodeRole::Clause(j) if (1..=self.num_clauses).contains(&j) => {
                Some(self.num_variables as usize * self.diamond_size() + j - 1)
            }
            _ => None,
        }
    }

    fn id(&self, role: NodeRole) -> NodeId {
        self.node(role).expect("role within graph bounds")
    }

    /// # Panics
    ///
    /// If `id` is not a node of the graph.
    pub fn role(&self, id: NodeId) -> NodeRole {
        assert!(id < self.node_count(), "node {id} out of range");
        let size = self.diamond_size();
        let diamonds = self.num_variables as usize * size;
        if id >= diamonds {
            return NodeRole::Clause(id - diamonds + 1);
        }
        let v = (id / size) as u32 + 1;
        match id % size {
            0 => NodeRole::Top(v),
            k if k == size - 1 => NodeRole::Bottom(v),
            k => NodeRole::Row(v, k - 1),
        }
    }

    pub fn roles(&self) -> impl Iterator<Item = NodeRole> + '_ {
        (0..self.node_count()).map(|id| self.role(id))
    }

    /// The true-direction entry edge of `z`'s diamond, `top(z) -> row(z,0)`.
    pub fn ez_directed(&self) -> (NodeId, NodeId) {
        let z = self.dummy_variable();
        (self.id(NodeRole::Top(z)), self.id(NodeRole::Row(z, 0)))
    }

    /// Label with `z` spelled out, for humans (`row(z,3)`).
    pub fn display_label(&self, id: NodeId) -> String {
        let z = self.dummy_variable();
        let var = |v: u32| {
            if v == z {
                String::from("z")
            } else {
                alloc::format!("x{v}")
            }
        };
        match self.role(id) {
            NodeRole::Top(v) => alloc::format!("top({})", var(v)),
            NodeRole::Bottom(v) => alloc::format!("bottom({})", var(v)),
            NodeRole::Row(v, p) => alloc::format!("row({},{p})", var(v)),
            NodeRole::Clause(j) => alloc::format!("c{j}"),
        }
    }

    /// Builds the directed Hamiltonian cycle that traverses each diamond in
    /// the direction given by `values` and absorbs clause `j` into the
    /// diamond of `detours[j - 1]`. Starts at `top(x_1)` (or `top(z)` when the
    /// base formula has no variables).
    pub fn cycle_for(
        &self,
        values: &Assignment,
        detours: &[u32],
    ) -> Result<Vec<NodeId>, GadgetError> {
        if values.num_variables() != self.num_variables {
            return Err(GadgetError::AssignmentDomain {
                expected: self.num_variables,
                got: values.num_variables(),
            });
        }
        assert_eq!(detours.len(), self.num_clauses, "one detour per clause");
        for (j0, &v) in detours.iter().enumerate() {
            let wanted = if values.get(v) == Some(true) {
                Polarity::Positive
            } else {
                Polarity::Negative
            };
            let ok = values.get(v).is_some() && self.occurrences[j0].contains(&(v, wanted));
            if !ok {
                return Err(GadgetError::InvalidDetour {
                    clause: j0 + 1,
                    variable: v,
                });
            }
        }

        let end = self.row_end();
        let mut cycle = Vec::with_capacity(self.node_count());
        for v in self.variable_order() {
            cycle.push(self.id(NodeRole::Top(v)));
            let forward = values.value(v);
            for step in 0..=end {
                let p = if forward { step } else { end - step };
                cycle.push(self.id(NodeRole::Row(v, p)));
                // Left contact when going right, right contact when going left.
                let j = match (forward, p % 3) {
                    (true, 1) => p.div_ceil(3),
                    (false, 2) => (p + 1) / 3,
                    _ => continue,
                };
                if detours[j - 1] == v {
                    cycle.push(self.id(NodeRole::Clause(j)));
                }
            }
            cycle.push(self.id(NodeRole::Bottom(v)));
        }
        debug_assert!(self.graph.is_hamiltonian_cycle(&cycle));
        Ok(cycle)
    }

    /// The all-true traversal with every clause absorbed by `z`'s diamond.
    pub fn canonical_cycle(&self) -> Vec<NodeId> {
        let detours = alloc::vec![self.dummy_variable(); self.num_clauses];
        self.cycle_for(&Assignment::all_true(self.num_variables), &detours)
            .expect("z occurs positively in every clause")
    }
}

/// Compiles the augmented formula into its gadget graph.
pub fn build_gadget_graph(aug: &AugmentedFormula) -> GadgetGraph {
    let formula = aug.augmented();
    let num_variables = formula.num_variables();
    let num_clauses = formula.num_clauses();
    let size = 3 * num_clauses + 3;
    let node_count = num_variables as usize * size + num_clauses;
    let occurrences = formula
        .clauses()
        .iter()
        .map(|c| {
            c.literals()
                .iter()
                .map(|l| (l.variable(), l.polarity()))
                .collect()
        })
        .collect();
    let mut g = GadgetGraph {
        num_variables,
        num_clauses,
        graph: Digraph::new(node_count),
        occurrences,
    };

    let end = g.row_end();
    let mut edges = Vec::new();
    for v in 1..=num_variables {
        let top = g.id(NodeRole::Top(v));
        let bottom = g.id(NodeRole::Bottom(v));
        let row = |p| g.id(NodeRole::Row(v, p));
        edges.extend([
            (top, row(0)),
            (top, row(end)),
            (row(0), bottom),
            (row(end), bottom),
        ]);
        for p in 0..end {
            edges.extend([(row(p), row(p + 1)), (row(p + 1), row(p))]);
        }
        let next = if v == num_variables { 1 } else { v + 1 };
        edges.push((bottom, g.id(NodeRole::Top(next))));
    }
    for (j0, clause) in formula.clauses().iter().enumerate() {
        let j = j0 + 1;
        let c = g.id(NodeRole::Clause(j));
        for lit in clause.literals() {
            let a = g.id(NodeRole::Row(lit.variable(), 3 * j - 2));
            let b = g.id(NodeRole::Row(lit.variable(), 3 * j - 1));
            match lit.polarity() {
                Polarity::Positive => edges.extend([(a, c), (c, b)]),
                Polarity::Negative => edges.extend([(b, c), (c, a)]),
            }
        }
    }
    for (u, w) in edges {
        g.graph.add_edge(u, w);
    }
    g
}

/// Reads the truth value of every augmented-formula variable off a directed
/// Hamiltonian cycle: `true` iff the cycle leaves `top(v)` for `row(v,0)`.
///
/// With zero clauses the row is a single node and both ends coincide; every
/// variable then reads as `true`.
pub fn ham_cycle_orientation(g: &GadgetGraph, cycle: &[NodeId]) -> Result<Assignment, GadgetError> {
    if !g.graph.is_hamiltonian_cycle(cycle) {
        return Err(GadgetError::NotHamiltonian);
    }
    let mut next = alloc::vec![0; g.node_count()];
    for (i, &u) in cycle.iter().enumerate() {
        next[u] = cycle[(i + 1) % cycle.len()];
    }
    let values = g
        .variable_order()
        .map(|v| {
            let succ = next[g.id(NodeRole::Top(v))];
            if succ == g.id(NodeRole::Row(v, 0)) {
                Ok(true)
            } else if succ == g.id(NodeRole::Row(v, g.row_end())) {
                Ok(false)
            } else {
                Err(GadgetError::NoDiamondEntry(v))
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Assignment::from_values(values))
}
