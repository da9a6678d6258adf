//! Meta document written next to a reduced instance.
//!
//! Carries the formula and every piece of numbering a certificate translation
//! needs. Loading re-derives the artifact from the formula and rejects the
//! document if any recorded stage disagrees with it.

use serde::{Deserialize, Serialize};
use tourmin_core::lowering::TripledNode;
use tourmin_core::{CnfFormula, ReductionArtifact};

use crate::CliError;

pub const META_VERSION: &str = "1.0";
const META_MAJOR: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetaDocument {
    pub version: String,
    pub num_variables: u32,
    /// DIMACS-signed literals per clause.
    pub clauses: Vec<Vec<i64>>,
    pub dummy_variable: u32,
    pub variable_order: Vec<u32>,
    /// Role label per gadget node id.
    pub nodes: Vec<String>,
    pub edges: Vec<[usize; 2]>,
    pub ez_directed: [usize; 2],
    /// Tripled-node label per city, city `i` at index `i - 1`.
    pub cities: Vec<String>,
    pub ez_cities: [u32; 2],
    pub baseline_length: u64,
    pub canonical_tour: Vec<u32>,
}

pub fn city_label(art: &ReductionArtifact, city: u32) -> String {
    let node = TripledNode::from_id(city as usize - 1);
    format!("{}.{}", art.gadget().role(node.base), node.part.number())
}

impl MetaDocument {
    pub fn from_artifact(art: &ReductionArtifact) -> Self {
        let g = art.gadget();
        let info = art.instance().info().expect("built instance");
        let (ez_a, ez_b) = g.ez_directed();
        Self {
            version: META_VERSION.into(),
            num_variables: art.formula().num_variables(),
            clauses: art
                .formula()
                .clauses()
                .iter()
                .map(|c| c.literals().iter().map(|l| l.to_dimacs()).collect())
                .collect(),
            dummy_variable: g.dummy_variable(),
            variable_order: g.variable_order().collect(),
            nodes: g.roles().map(|r| r.to_string()).collect(),
            edges: g.digraph().edges().map(|(u, v)| [u, v]).collect(),
            ez_directed: [ez_a, ez_b],
            cities: (1..=art.dimension() as u32).map(|c| city_label(art, c)).collect(),
            ez_cities: [info.ez_cities.0, info.ez_cities.1],
            baseline_length: info.baseline_length,
            canonical_tour: art.canonical().cities().to_vec(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("meta serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let version = serde_json::from_str::<serde_json::Value>(text)
            .map_err(|e| CliError::Input(format!("meta: {e}")))?
            .get("version")
            .and_then(|v| v.as_str().map(String::from))
            .ok_or_else(|| CliError::Input("meta: missing version".into()))?;
        let major = version.split('.').next().and_then(|m| m.parse::<u32>().ok());
        if major != Some(META_MAJOR) {
            return Err(CliError::Input(format!(
                "meta: unsupported schema version {version}"
            )));
        }
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("meta: {e}")))
    }

    pub fn formula(&self) -> Result<CnfFormula, CliError> {
        let clauses: Vec<&[i64]> = self.clauses.iter().map(Vec::as_slice).collect();
        CnfFormula::from_dimacs_clauses(self.num_variables, &clauses)
            .map_err(|e| CliError::Input(format!("meta: {e}")))
    }

    /// Rebuilds the artifact and checks it against every recorded field.
    pub fn to_artifact(&self) -> Result<ReductionArtifact, CliError> {
        let art = ReductionArtifact::reduce(&self.formula()?);
        let expected = Self::from_artifact(&art);
        let mismatch = [
            ("variable order", self.variable_order != expected.variable_order),
            ("dummy variable", self.dummy_variable != expected.dummy_variable),
            ("node numbering", self.nodes != expected.nodes),
            ("edges", self.edges != expected.edges),
            ("e_z", self.ez_directed != expected.ez_directed),
            ("city map", self.cities != expected.cities),
            ("e_z cities", self.ez_cities != expected.ez_cities),
            ("baseline length", self.baseline_length != expected.baseline_length),
            ("canonical tour", self.canonical_tour != expected.canonical_tour),
        ]
        .into_iter()
        .find(|(_, differs)| *differs);
        if let Some((field, _)) = mismatch {
            return Err(CliError::Input(format!(
                "meta: recorded {field} does not match the formula"
            )));
        }
        Ok(art)
    }
}
