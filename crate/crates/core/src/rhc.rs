//! Restricted Hamiltonian cycle instances: the tripled graph without `e_z`,
//! together with the Hamiltonian path left over from the canonical tour.

use alloc::vec::Vec;

use crate::certificates::ReductionArtifact;
use crate::graph::UnGraph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RhcInstance {
    pub graph: UnGraph,
    /// Runs from `endpoints.0` to `endpoints.1`.
    pub ham_path: Vec<usize>,
    pub endpoints: (usize, usize),
}

/// Removes `e_z` from the tripled graph and cuts the canonical tour there.
pub fn build_rhc(art: &ReductionArtifact) -> RhcInstance {
    let tripled = art.tripled();
    let (a, b) = tripled.ez_undirected();
    let mut graph = tripled.graph().clone();
    graph.remove_edge(a, b);

    let tour = art.canonical().nodes();
    let len = tour.len();
    let pos_a = tour.iter().position(|&x| x == a).expect("tour visits every node");
    // Walk away from `b` so the path ends at it.
    let step_forward = tour[(pos_a + len - 1) % len] == b;
    debug_assert!(step_forward || tour[(pos_a + 1) % len] == b);
    let ham_path = (0..len)
        .map(|k| {
            if step_forward {
                tour[(pos_a + k) % len]
            } else {
                tour[(pos_a + len - k) % len]
            }
        })
        .collect();
    RhcInstance {
        graph,
        ham_path,
        endpoints: (a, b),
    }
}

/// Whether the path is Hamiltonian in the instance graph and joins exactly
/// the two endpoints.
pub fn verify_ham_path(inst: &RhcInstance) -> bool {
    let (Some(&first), Some(&last)) = (inst.ham_path.first(), inst.ham_path.last()) else {
        return false;
    };
    let (a, b) = inst.endpoints;
    ((first, last) == (a, b) || (first, last) == (b, a)) && inst.graph.is_hamiltonian_path(&inst.ham_path)
}
