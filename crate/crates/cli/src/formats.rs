//! DOT export and the RHC graph/path documents.
//!
//! The RHC graph is written as `{"nodes": [label..], "adjacency": [[index..]..],
//! "endpoints": [a, b]}` where `endpoints` are the ends of the promised path.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use tourmin_core::{RhcInstance, ReductionArtifact};

use crate::meta::city_label;

/// Gadget graph with `e_z` drawn in red.
pub fn gadget_dot(art: &ReductionArtifact) -> String {
    let g = art.gadget();
    let ez = g.ez_directed();
    let mut out = String::from("digraph gadget {\n");
    for id in 0..g.node_count() {
        let _ = writeln!(out, "  n{id} [label=\"{}\"];", g.display_label(id));
    }
    for (u, v) in g.digraph().edges() {
        if (u, v) == ez {
            let _ = writeln!(out, "  n{u} -> n{v} [color=red, penwidth=2, label=\"e_z\"];");
        } else {
            let _ = writeln!(out, "  n{u} -> n{v};");
        }
    }
    out.push_str("}\n");
    out
}

/// Tripled graph with nodes named by city id and `e_z` drawn in red.
pub fn tripled_dot(art: &ReductionArtifact) -> String {
    let t = art.tripled();
    let ez = t.ez_undirected();
    let mut out = String::from("graph tripled {\n");
    for id in 0..t.node_count() {
        let city = id as u32 + 1;
        let _ = writeln!(out, "  c{city} [label=\"{}\"];", city_label(art, city));
    }
    for (u, v) in t.graph().edges() {
        let attrs = if (u, v) == ez {
            " [color=red, penwidth=2, label=\"e_z\"]"
        } else {
            ""
        };
        let _ = writeln!(out, "  c{} -- c{}{attrs};", u + 1, v + 1);
    }
    out.push_str("}\n");
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RhcDocument {
    pub nodes: Vec<String>,
    /// Neighbor indices into `nodes`, ascending.
    pub adjacency: Vec<Vec<usize>>,
    pub endpoints: [usize; 2],
}

impl RhcDocument {
    pub fn new(art: &ReductionArtifact, rhc: &RhcInstance) -> Self {
        Self {
            nodes: (1..=rhc.graph.node_count() as u32)
                .map(|c| city_label(art, c))
                .collect(),
            adjacency: (0..rhc.graph.node_count())
                .map(|u| rhc.graph.neighbors(u).to_vec())
                .collect(),
            endpoints: [rhc.endpoints.0, rhc.endpoints.1],
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("document serializes");
        s.push('\n');
        s
    }
}

/// One node label per line.
pub fn rhc_path_file(doc: &RhcDocument, rhc: &RhcInstance) -> String {
    rhc.ham_path
        .iter()
        .map(|&u| format!("{}\n", doc.nodes[u]))
        .collect()
}
