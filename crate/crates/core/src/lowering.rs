//! Directed to undirected lowering by node tripling.
//!
//! Each directed node `u` becomes the path `u.1 - u.2 - u.3`; a directed edge
//! `u -> v` becomes `{u.3, v.1}`. Tripled node `(u, part)` has id
//! `3u + part - 1`.

use alloc::vec::Vec;

use thiserror::Error;

use crate::gadget::{GadgetGraph, NodeId};
use crate::graph::{ordered_pair, Digraph, UnGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Part {
    /// Receives the incoming edges.
    In = 1,
    Mid = 2,
    /// Emits the outgoing edges.
    Out = 3,
}

impl Part {
    pub fn number(self) -> u8 {
        self as u8
    }

    pub fn from_number(n: u8) -> Option<Self> {
        match n {
            1 => Some(Part::In),
            2 => Some(Part::Mid),
            3 => Some(Part::Out),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TripledNode {
    pub base: NodeId,
    pub part: Part,
}

impl TripledNode {
    pub fn new(base: NodeId, part: Part) -> Self {
        Self { base, part }
    }

    pub fn id(self) -> usize {
        3 * self.base + self.part as usize - 1
    }

    pub fn from_id(id: usize) -> Self {
        let part = Part::from_number((id % 3) as u8 + 1).expect("residue in 1..=3");
        Self { base: id / 3, part }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum LoweringError {
    #[error("node sequence is not an undirected Hamiltonian cycle")]
    NotHamiltonian,
    #[error("node triples are not traversed consecutively in one orientation")]
    InconsistentTriples,
    #[error("graph is not the image of a node tripling")]
    NotTripled,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripledGraph {
    graph: UnGraph,
    ez: (usize, usize),
}

impl TripledGraph {
    pub fn graph(&self) -> &UnGraph {
        &self.graph
    }

    pub fn node_count(&self) -> usize {
        self.graph.node_count()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn base_count(&self) -> usize {
        self.graph.node_count() / 3
    }

    /// `{(top(z), 3), (row(z,0), 1)}` as node ids, lower first.
    pub fn ez_undirected(&self) -> (usize, usize) {
        self.ez
    }

    pub fn node(&self, id: usize) -> TripledNode {
        TripledNode::from_id(id)
    }
}

/// Tripling of an arbitrary digraph.
pub fn triple_digraph(g: &Digraph) -> UnGraph {
    let mut out = UnGraph::new(3 * g.node_count());
    for u in 0..g.node_count() {
        out.add_edge(3 * u, 3 * u + 1);
        out.add_edge(3 * u + 1, 3 * u + 2);
    }
    for (u, v) in g.edges() {
        out.add_edge(3 * u + 2, 3 * v);
    }
    out
}

/// Lowers the gadget graph, carrying `e_z` along.
pub fn triple(g: &GadgetGraph) -> TripledGraph {
    let (u, v) = g.ez_directed();
    TripledGraph {
        graph: triple_digraph(g.digraph()),
        ez: ordered_pair(TripledNode::new(u, Part::Out).id(), TripledNode::new(v, Part::In).id()),
    }
}

/// Maps a directed cycle to its undirected image, each `u` as `u.1, u.2, u.3`.
pub fn expand_cycle(cycle: &[NodeId]) -> Vec<usize> {
    cycle.iter().flat_map(|&u| [3 * u, 3 * u + 1, 3 * u + 2]).collect()
}

/// Inverse of [`triple_digraph`]: recovers the directed graph from an
/// undirected graph with the tripling structure.
pub fn collapse_graph(g: &UnGraph) -> Result<Digraph, LoweringError> {
    if !g.node_count().is_multiple_of(3) {
        return Err(LoweringError::NotTripled);
    }
    let mut out = Digraph::new(g.node_count() / 3);
    for u in 0..out.node_count() {
        let mid = 3 * u + 1;
        if g.neighbors(mid) != [3 * u, 3 * u + 2] {
            return Err(LoweringError::NotTripled);
        }
    }
    for (a, b) in g.edges() {
        let (x, y) = (TripledNode::from_id(a), TripledNode::from_id(b));
        match (x.part, y.part) {
            (Part::In, Part::Mid) | (Part::Mid, Part::Out) if x.base == y.base => {}
            (Part::Out, Part::In) => {
                out.add_edge(x.base, y.base);
            }
            (Part::In, Part::Out) => {
                out.add_edge(y.base, x.base);
            }
            _ => return Err(LoweringError::NotTripled),
        }
    }
    Ok(out)
}

/// Collapses an undirected Hamiltonian cycle of a tripled graph to the
/// directed cycle of the base graph. The input may be any rotation or
/// reflection; the result starts at base node 0 and follows the `In -> Out`
/// direction.
pub fn collapse_ham_cycle(g: &UnGraph, cycle: &[usize]) -> Result<Vec<NodeId>, LoweringError> {
    if !g.is_hamiltonian_cycle(cycle) {
        return Err(LoweringError::NotHamiltonian);
    }
    let len = cycle.len();
    let start = cycle.iter().position(|&x| x == 0).expect("permutation contains 0");
    let forward = if cycle[(start + 1) % len] == 1 {
        true
    } else if cycle[(start + len - 1) % len] == 1 {
        false
    } else {
        return Err(LoweringError::InconsistentTriples);
    };
    let at = |k: usize| {
        if forward {
            cycle[(start + k) % len]
        } else {
            cycle[(start + len - k) % len]
        }
    };
    let mut bases = Vec::with_capacity(len / 3);
    for k in (0..len).step_by(3) {
        let (a, b, c) = (at(k), at(k + 1), at(k + 2));
        let base = a / 3;
        if a != 3 * base || b != a + 1 || c != a + 2 {
            return Err(LoweringError::InconsistentTriples);
        }
        bases.push(base);
    }
    Ok(bases)
}

pub fn collapse_cycle(g: &TripledGraph, cycle: &[usize]) -> Result<Vec<NodeId>, LoweringError> {
    collapse_ham_cycle(&g.graph, cycle)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::{augment_with_dummy, CnfFormula};
    use crate::gadget::build_gadget_graph;
    use alloc::vec;

    fn lowered(n: u32, clauses: &[&[i64]]) -> (GadgetGraph, TripledGraph) {
        let phi = CnfFormula::from_dimacs_clauses(n, clauses).unwrap();
        let g = build_gadget_graph(&augment_with_dummy(&phi));
        let t = triple(&g);
        (g, t)
    }

    #[test]
    fn single_edge() {
        let g = triple_digraph(&Digraph::from_edges(2, [(0, 1)]));
        assert_eq!(g.node_count(), 6);
        assert_eq!(g.edge_count(), 5);
        assert!(g.has_edge(2, 3));
    }

    #[test]
    fn sizes_and_structure() {
        for (n, clauses, v) in [
            (1, &[&[1i64][..]][..], 13),
            (1, &[&[1][..], &[-1][..]][..], 20),
            (1, &[][..], 6),
        ] {
            let (g, t) = lowered(n, clauses);
            assert_eq!(g.node_count(), v);
            assert_eq!(t.node_count(), 3 * v);
            assert_eq!(t.edge_count(), 2 * v + g.edge_count());
            for u in 0..g.node_count() {
                assert_eq!(t.graph().neighbors(3 * u + 1), &[3 * u, 3 * u + 2]);
            }
            for (a, b) in g.digraph().edges() {
                assert!(t.graph().has_edge(3 * a + 2, 3 * b));
            }
            assert_eq!(collapse_graph(t.graph()).unwrap(), g.digraph().clone());
        }
    }

    #[test]
    fn ez_image() {
        let (g, t) = lowered(1, &[&[1]]);
        let (a, b) = t.ez_undirected();
        let (ta, tb) = (TripledNode::from_id(a), TripledNode::from_id(b));
        assert_eq!(ta.part, Part::Out);
        assert_eq!(tb.part, Part::In);
        assert_eq!((ta.base, tb.base), g.ez_directed());
        assert!(t.graph().has_edge(a, b));
    }

    #[test]
    fn collapse_normalizes_rotation_and_reflection() {
        let (g, t) = lowered(1, &[&[1]]);
        let directed = g.canonical_cycle();
        let mut cycle = expand_cycle(&directed);
        assert_eq!(collapse_cycle(&t, &cycle).unwrap(), directed);
        cycle.rotate_left(7);
        assert_eq!(collapse_cycle(&t, &cycle).unwrap(), directed);
        cycle.reverse();
        assert_eq!(collapse_cycle(&t, &cycle).unwrap(), directed);
        assert_eq!(directed.len(), 13);
    }

    #[test]
    fn collapse_rejects_invalid() {
        let (_, t) = lowered(1, &[&[1]]);
        assert_eq!(collapse_cycle(&t, &[0, 1, 2]), Err(LoweringError::NotHamiltonian));
        assert!(collapse_graph(&UnGraph::from_edges(3, [(0, 2)])).is_err());
        assert!(collapse_graph(&UnGraph::new(4)).is_err());
    }

    #[test]
    fn inconsistent_triples_detected_on_non_tripled_graph() {
        // A 6-cycle whose node 0 is not adjacent to node 1 in the cycle order.
        let g = UnGraph::from_edges(6, [(0, 2), (2, 1), (1, 3), (3, 4), (4, 5), (5, 0)]);
        let cycle = vec![0, 2, 1, 3, 4, 5];
        assert_eq!(
            collapse_ham_cycle(&g, &cycle),
            Err(LoweringError::InconsistentTriples)
        );
    }
}
