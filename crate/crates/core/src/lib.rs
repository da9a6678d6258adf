//! Reduction compiler from CNF formulas to weighted TSP instances in which
//! deciding whether a given tour is minimal is as hard as SAT.
//!
//! The pipeline runs in stages, each a pure function over immutable data:
//!
//! 1. [`cnf`]: formula model, DIMACS text, and the dummy-variable augmentation
//!    that makes every clause satisfiable by a single extra variable `z`.
//! 2. [`gadget`]: the directed diamond/clause-node graph whose Hamiltonian
//!    cycles are the satisfying assignments of the augmented formula.
//! 3. [`lowering`]: node tripling into an undirected graph.
//! 4. [`tsp`]: the complete 1/2/3-weighted instance, the canonical tour and
//!    TSPLIB/tour text formats.
//! 5. [`certificates`]: witness translation between assignments and tours.
//! 6. [`rhc`]: restricted Hamiltonian cycle instances (graph plus a promised
//!    Hamiltonian path).
//! 7. [`oracles`]: exhaustive deciders used to check all of the above.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod certificates;
pub mod cnf;
pub mod gadget;
pub mod graph;
pub mod lowering;
pub mod oracles;
pub mod rhc;
pub mod tsp;

pub use certificates::{
    assignment_to_tour, tour_to_assignment, verify_tour, CertificateError, ReductionArtifact,
    TourReport,
};
pub use cnf::{
    augment_with_dummy, Assignment, AugmentedFormula, Clause, CnfError, CnfFormula, Literal,
    Polarity,
};
pub use gadget::{build_gadget_graph, ham_cycle_orientation, GadgetGraph, NodeId, NodeRole};
pub use graph::{Digraph, UnGraph};
pub use lowering::{collapse_cycle, triple, Part, TripledGraph, TripledNode};
pub use oracles::OracleBudget;
pub use rhc::{build_rhc, verify_ham_path, RhcInstance};
pub use tsp::{build_instance, canonical_tour, tour_length, DistanceMatrix, Tour, TspInstance};
