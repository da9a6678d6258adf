//! Plain adjacency-list graphs shared by the construction stages and the oracles.
//!
//! Node ids are dense `usize` indices. Adjacency lists are kept sorted and
//! free of duplicates so iteration order is deterministic everywhere.

use alloc::vec::Vec;

/// Directed simple graph.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Digraph {
    successors: Vec<Vec<usize>>,
}

impl Digraph {
    pub fn new(node_count: usize) -> Self {
        Self {
            successors: alloc::vec![Vec::new(); node_count],
        }
    }

    /// Builds a graph from an edge list. Duplicate edges collapse.
    ///
    /// # Panics
    ///
    /// If an endpoint is out of range.
    pub fn from_edges(node_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = Self::new(node_count);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn node_count(&self) -> usize {
        self.successors.len()
    }

    pub fn edge_count(&self) -> usize {
        self.successors.iter().map(Vec::len).sum()
    }

    /// Inserts `u -> v`; returns `false` if it was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        assert!(v < self.node_count(), "edge target {v} out of range");
        let succ = &mut self.successors[u];
        match succ.binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                succ.insert(pos, v);
                true
            }
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.successors
            .get(u)
            .is_some_and(|succ| succ.binary_search(&v).is_ok())
    }

    pub fn successors(&self, u: usize) -> &[usize] {
        &self.successors[u]
    }

    /// Predecessor lists, sorted, computed in one pass.
    pub fn predecessors(&self) -> Vec<Vec<usize>> {
        let mut pred = alloc::vec![Vec::new(); self.node_count()];
        for (u, v) in self.edges() {
            pred[v].push(u);
        }
        pred
    }

    /// All edges in `(source, target)` lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.successors
            .iter()
            .enumerate()
            .flat_map(|(u, succ)| succ.iter().map(move |&v| (u, v)))
    }

    /// Whether `cycle` visits every node exactly once along existing edges,
    /// including the closing edge back to its first node.
    pub fn is_hamiltonian_cycle(&self, cycle: &[usize]) -> bool {
        !cycle.is_empty()
            && is_permutation(cycle, self.node_count())
            && cycle
                .iter()
                .zip(cycle.iter().cycle().skip(1))
                .all(|(&u, &v)| self.has_edge(u, v))
    }
}

/// Undirected simple graph; edges are reported as `(low, high)` pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UnGraph {
    neighbors: Vec<Vec<usize>>,
}

impl UnGraph {
    pub fn new(node_count: usize) -> Self {
        Self {
            neighbors: alloc::vec![Vec::new(); node_count],
        }
    }

    pub fn from_edges(node_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = Self::new(node_count);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn node_count(&self) -> usize {
        self.neighbors.len()
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Inserts `{u, v}`; returns `false` if it was already present.
    ///
    /// # Panics
    ///
    /// On a self-loop or an out-of-range endpoint.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        assert_ne!(u, v, "self-loops are not allowed");
        assert!(u.max(v) < self.node_count(), "edge endpoint out of range");
        if self.has_edge(u, v) {
            return false;
        }
        for (a, b) in [(u, v), (v, u)] {
            let adj = &mut self.neighbors[a];
            let pos = adj.binary_search(&b).unwrap_err();
            adj.insert(pos, b);
        }
        true
    }

    /// Removes `{u, v}`; returns `false` if it was absent.
    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        if !self.has_edge(u, v) {
            return false;
        }
        for (a, b) in [(u, v), (v, u)] {
            let adj = &mut self.neighbors[a];
            let pos = adj.binary_search(&b).unwrap();
            adj.remove(pos);
        }
        true
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors
            .get(u)
            .is_some_and(|adj| adj.binary_search(&v).is_ok())
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.neighbors[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.neighbors[u].len()
    }

    /// Canonical `(low, high)` edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.neighbors.iter().enumerate().flat_map(|(u, adj)| {
            adj.iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Whether `cycle` is a Hamiltonian cycle. Needs at least three nodes.
    pub fn is_hamiltonian_cycle(&self, cycle: &[usize]) -> bool {
        cycle.len() >= 3
            && is_permutation(cycle, self.node_count())
            && cycle
                .iter()
                .zip(cycle.iter().cycle().skip(1))
                .all(|(&u, &v)| self.has_edge(u, v))
    }

    /// Whether `path` visits every node exactly once along existing edges.
    pub fn is_hamiltonian_path(&self, path: &[usize]) -> bool {
        is_permutation(path, self.node_count())
            && path.windows(2).all(|w| self.has_edge(w[0], w[1]))
    }

    /// The symmetric digraph with both orientations of every edge.
    pub fn to_symmetric_digraph(&self) -> Digraph {
        Digraph {
            successors: self.neighbors.clone(),
        }
    }
}

/// Whether `seq` lists each of `0..n` exactly once.
pub fn is_permutation(seq: &[usize], n: usize) -> bool {
    if seq.len() != n {
        return false;
    }
    let mut seen = alloc::vec![false; n];
    seq.iter()
        .all(|&x| x < n && !core::mem::replace(&mut seen[x], true))
}

/// Canonical unordered pair.
pub(crate) fn ordered_pair(u: usize, v: usize) -> (usize, usize) {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}
