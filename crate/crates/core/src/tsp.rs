//! Complete symmetric TSP instances built from a tripled graph, tours, and
//! the TSPLIB / tour text formats.
//!
//! Cities are 1-based: city `i` is tripled node `i - 1`. Weights are 1 on
//! graph edges, 2 on `e_z` and 3 on every missing edge, so the canonical tour
//! costs `|V'| + 1` and any tour avoiding `e_z` and non-edges costs `|V'|`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write as _;

use thiserror::Error;

use crate::gadget::GadgetGraph;
use crate::graph::UnGraph;
use crate::lowering::{expand_cycle, TripledGraph};

pub const WEIGHT_EDGE: u32 = 1;
pub const WEIGHT_EZ: u32 = 2;
pub const WEIGHT_NON_EDGE: u32 = 3;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TspError {
    #[error("tour is not a permutation of cities 1..={dimension}")]
    NotPermutation { dimension: usize },
    #[error("line {line}: {message}")]
    Tsplib { line: usize, message: String },
    #[error("unsupported TSPLIB variant: {0}")]
    Unsupported(String),
    #[error("line {line}: malformed tour file: {message}")]
    TourFile { line: usize, message: String },
}

/// Symmetric matrix with zero diagonal, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    dimension: usize,
    weights: Vec<u32>,
}

impl DistanceMatrix {
    /// All off-diagonal entries set to `fill`.
    pub fn filled(dimension: usize, fill: u32) -> Self {
        let mut weights = alloc::vec![fill; dimension * dimension];
        for i in 0..dimension {
            weights[i * dimension + i] = 0;
        }
        Self { dimension, weights }
    }

    /// Validates symmetry and the zero diagonal.
    pub fn from_rows(rows: Vec<Vec<u32>>) -> Result<Self, TspError> {
        let dimension = rows.len();
        let invalid = |message: &str| TspError::Tsplib {
            line: 0,
            message: message.into(),
        };
        if rows.iter().any(|r| r.len() != dimension) {
            return Err(invalid("matrix is not square"));
        }
        let weights: Vec<u32> = rows.into_iter().flatten().collect();
        let m = Self { dimension, weights };
        for i in 0..dimension {
            if m.get(i, i) != 0 {
                return Err(invalid("diagonal must be zero"));
            }
            for j in 0..i {
                if m.get(i, j) != m.get(j, i) {
                    return Err(invalid("matrix is not symmetric"));
                }
            }
        }
        Ok(m)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// 0-based indices.
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.weights[i * self.dimension + j]
    }

    pub fn set(&mut self, i: usize, j: usize, w: u32) {
        self.weights[i * self.dimension + j] = w;
        self.weights[j * self.dimension + i] = w;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.weights[i * self.dimension..(i + 1) * self.dimension]
    }
}

/// What the reduction knows about a built instance beyond its matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReductionInfo {
    /// 1-based cities of `e_z`, lower first.
    pub ez_cities: (u32, u32),
    /// `|V'| + 1`, the canonical tour's length.
    pub baseline_length: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TspInstance {
    matrix: DistanceMatrix,
    info: Option<ReductionInfo>,
}

impl TspInstance {
    pub fn new(matrix: DistanceMatrix) -> Self {
        Self { matrix, info: None }
    }

    pub fn with_info(matrix: DistanceMatrix, info: ReductionInfo) -> Self {
        Self {
            matrix,
            info: Some(info),
        }
    }

    pub fn matrix(&self) -> &DistanceMatrix {
        &self.matrix
    }

    pub fn dimension(&self) -> usize {
        self.matrix.dimension
    }

    /// 1-based cities.
    pub fn distance(&self, a: u32, b: u32) -> u32 {
        self.matrix.get(a as usize - 1, b as usize - 1)
    }

    pub fn info(&self) -> Option<&ReductionInfo> {
        self.info.as_ref()
    }

    /// Unit weights on the edges of `g`, 2 on `ez` if given, 3 elsewhere.
    pub fn from_graph(g: &UnGraph, ez: Option<(usize, usize)>) -> Self {
        let mut matrix = DistanceMatrix::filled(g.node_count(), WEIGHT_NON_EDGE);
        for (u, v) in g.edges() {
            matrix.set(u, v, WEIGHT_EDGE);
        }
        let info = ez.map(|(u, v)| {
            assert!(g.has_edge(u, v), "e_z must be an edge of the graph");
            matrix.set(u, v, WEIGHT_EZ);
            ReductionInfo {
                ez_cities: (u as u32 + 1, v as u32 + 1),
                baseline_length: g.node_count() as u64 + 1,
            }
        });
        Self { matrix, info }
    }
}

pub fn build_instance(g: &TripledGraph) -> TspInstance {
    TspInstance::from_graph(g.graph(), Some(g.ez_undirected()))
}

/// A cyclic permutation of 1-based cities; the closing edge is implied.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tour(Vec<u32>);

impl Tour {
    pub fn new(cities: Vec<u32>, dimension: usize) -> Result<Self, TspError> {
        check_permutation(&cities, dimension)?;
        Ok(Self(cities))
    }

    /// Tour from 0-based node ids.
    pub fn from_nodes(nodes: &[usize]) -> Self {
        Self(nodes.iter().map(|&u| u as u32 + 1).collect())
    }

    pub fn cities(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// 0-based node ids.
    pub fn nodes(&self) -> Vec<usize> {
        self.0.iter().map(|&c| c as usize - 1).collect()
    }

    pub fn into_cities(self) -> Vec<u32> {
        self.0
    }
}

fn check_permutation(cities: &[u32], dimension: usize) -> Result<(), TspError> {
    let ids: Option<Vec<usize>> = cities
        .iter()
        .map(|&c| (c as usize).checked_sub(1))
        .collect();
    match ids {
        Some(ids) if crate::graph::is_permutation(&ids, dimension) => Ok(()),
        _ => Err(TspError::NotPermutation { dimension }),
    }
}

/// All-true traversal with every clause detour taken through `z`'s diamond,
/// expanded through the tripling.
pub fn canonical_tour(g: &GadgetGraph) -> Tour {
    Tour::from_nodes(&expand_cycle(&g.canonical_cycle()))
}

/// Sum of distances over consecutive cities, closing edge included.
pub fn tour_length(instance: &TspInstance, cities: &[u32]) -> Result<u64, TspError> {
    check_permutation(cities, instance.dimension())?;
    Ok(cycle_pairs(cities)
        .map(|(a, b)| u64::from(instance.distance(a, b)))
        .sum())
}

pub(crate) fn cycle_pairs(cities: &[u32]) -> impl Iterator<Item = (u32, u32)> + '_ {
    cities.iter().copied().zip(cities.iter().copied().cycle().skip(1))
}

const TSPLIB_NAME: &str = "tourmin";

/// TSPLIB with an explicit full matrix. Built instances carry a comment
/// with the `e_z` city pair and the canonical tour length.
pub fn emit_tsplib(instance: &TspInstance) -> String {
    let n = instance.dimension();
    let mut out = String::with_capacity(n * n * 2 + 256);
    let _ = writeln!(out, "NAME: {TSPLIB_NAME}");
    let _ = writeln!(out, "TYPE: TSP");
    if let Some(info) = instance.info() {
        let _ = writeln!(
            out,
            "COMMENT: e_z cities {} {}; canonical tour length {}",
            info.ez_cities.0, info.ez_cities.1, info.baseline_length
        );
    }
    let _ = writeln!(out, "DIMENSION: {n}");
    let _ = writeln!(out, "EDGE_WEIGHT_TYPE: EXPLICIT");
    let _ = writeln!(out, "EDGE_WEIGHT_FORMAT: FULL_MATRIX");
    let _ = writeln!(out, "EDGE_WEIGHT_SECTION");
    for i in 0..n {
        for (j, w) in instance.matrix.row(i).iter().enumerate() {
            if j > 0 {
                out.push(' ');
            }
            let _ = write!(out, "{w}");
        }
        out.push('\n');
    }
    out.push_str("EOF\n");
    out
}

/// Reads symmetric `EXPLICIT` / `FULL_MATRIX` TSPLIB files. Only the matrix
/// is recovered.
pub fn parse_tsplib(text: &str) -> Result<TspInstance, TspError> {
    let err = |line: usize, message: &str| TspError::Tsplib {
        line,
        message: message.into(),
    };
    let mut dimension: Option<usize> = None;
    let mut weight_type: Option<String> = None;
    let mut weight_format: Option<String> = None;
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let mut section_line = None;

    for (line_no, line) in lines.by_ref() {
        if line.is_empty() {
            continue;
        }
        if line == "EOF" {
            break;
        }
        if line == "EDGE_WEIGHT_SECTION" {
            section_line = Some(line_no);
            break;
        }
        if line.ends_with("_SECTION") {
            return Err(TspError::Unsupported(alloc::format!("section {line}")));
        }
        let (key, value) = line
            .split_once(':')
            .map(|(k, v)| (k.trim(), v.trim()))
            .ok_or_else(|| err(line_no, "expected `KEY: VALUE`"))?;
        match key {
            "NAME" | "COMMENT" => {}
            "TYPE" => {
                if value != "TSP" {
                    return Err(TspError::Unsupported(alloc::format!("TYPE {value}")));
                }
            }
            "DIMENSION" => {
                dimension = Some(value.parse().map_err(|_| err(line_no, "invalid DIMENSION"))?)
            }
            "EDGE_WEIGHT_TYPE" => {
                if value != "EXPLICIT" {
                    return Err(TspError::Unsupported(alloc::format!(
                        "EDGE_WEIGHT_TYPE {value}"
                    )));
                }
                weight_type = Some(value.into())
            }
            "EDGE_WEIGHT_FORMAT" => weight_format = Some(value.into()),
            other => {
                return Err(TspError::Unsupported(alloc::format!("keyword {other}")));
            }
        }
    }

    if weight_type.is_none() {
        return Err(err(0, "missing EDGE_WEIGHT_TYPE"));
    }
    match weight_format.as_deref() {
        Some("FULL_MATRIX") => {}
        Some(other) => {
            return Err(TspError::Unsupported(alloc::format!(
                "EDGE_WEIGHT_FORMAT {other}"
            )))
        }
        None => return Err(err(0, "missing EDGE_WEIGHT_FORMAT")),
    }
    let n = dimension.ok_or_else(|| err(0, "missing DIMENSION"))?;
    let section_line = section_line.ok_or_else(|| err(0, "missing EDGE_WEIGHT_SECTION"))?;

    let mut weights = Vec::with_capacity(n * n);
    let mut last_line = section_line;
    let mut saw_eof = false;
    for (line_no, line) in lines {
        last_line = line_no;
        if line == "EOF" {
            saw_eof = true;
            break;
        }
        for token in line.split_whitespace() {
            let w: u32 = token
                .parse()
                .map_err(|_| err(line_no, "invalid edge weight"))?;
            weights.push(w);
        }
    }
    if weights.len() != n * n {
        return Err(err(
            last_line,
            &alloc::format!("expected {} weights, found {}", n * n, weights.len()),
        ));
    }
    if !saw_eof {
        return Err(err(last_line, "missing EOF"));
    }
    let rows = weights.chunks(n.max(1)).map(<[u32]>::to_vec).collect();
    let matrix = DistanceMatrix::from_rows(if n == 0 { Vec::new() } else { rows }).map_err(
        |e| match e {
            TspError::Tsplib { message, .. } => err(section_line, &message),
            other => other,
        },
    )?;
    Ok(TspInstance::new(matrix))
}

/// One city per line, then `-1`.
pub fn emit_tour(tour: &[u32]) -> String {
    let mut out = String::with_capacity(tour.len() * 4 + 3);
    for c in tour {
        let _ = writeln!(out, "{c}");
    }
    out.push_str("-1\n");
    out
}

/// Inverse of [`emit_tour`]. Blank lines are skipped; the sequence is not
/// checked against any instance.
pub fn parse_tour(text: &str) -> Result<Vec<u32>, TspError> {
    let mut cities = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let value: i64 = line.parse().map_err(|_| TspError::TourFile {
            line: i + 1,
            message: alloc::format!("`{line}` is not an integer"),
        })?;
        if value == -1 {
            return Ok(cities);
        }
        let city = u32::try_from(value)
            .ok()
            .filter(|&c| c >= 1)
            .ok_or_else(|| TspError::TourFile {
                line: i + 1,
                message: alloc::format!("city id {value} must be positive"),
            })?;
        cities.push(city);
    }
    Err(TspError::TourFile {
        line: text.lines().count(),
        message: "missing -1 terminator".into(),
    })
}
