//! Witness translation between satisfying assignments of the base formula and
//! tours shorter than the canonical one.

use alloc::vec::Vec;

use thiserror::Error;

use crate::cnf::{augment_with_dummy, Assignment, AugmentedFormula, CnfError, CnfFormula};
use crate::gadget::{build_gadget_graph, ham_cycle_orientation, GadgetError, GadgetGraph};
use crate::lowering::{collapse_cycle, expand_cycle, triple, LoweringError, TripledGraph};
use crate::tsp::{
    build_instance, canonical_tour, cycle_pairs, tour_length, Tour, TspError, TspInstance,
    WEIGHT_EZ, WEIGHT_NON_EDGE,
};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error(transparent)]
    Cnf(#[from] CnfError),
    #[error("assignment does not satisfy formula")]
    Unsatisfied,
    #[error("formula has no clauses, so every tour uses e_z and none is shorter than the canonical one")]
    NoClauses,
    #[error(transparent)]
    Tour(#[from] TspError),
    #[error("tour length {length} is not below the canonical length {baseline}")]
    NotShorter { length: u64, baseline: u64 },
    #[error("internal inconsistency: {0}")]
    Lowering(#[from] LoweringError),
    #[error("internal inconsistency: {0}")]
    Gadget(#[from] GadgetError),
    #[error("internal inconsistency: short tour reads z = true")]
    DummyTrue,
}

/// Every stage of one reduction, kept together so certificates can be moved
/// between them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionArtifact {
    aug: AugmentedFormula,
    gadget: GadgetGraph,
    tripled: TripledGraph,
    instance: TspInstance,
    canonical: Tour,
}

impl ReductionArtifact {
    pub fn reduce(phi: &CnfFormula) -> Self {
        let aug = augment_with_dummy(phi);
        let gadget = build_gadget_graph(&aug);
        let tripled = triple(&gadget);
        let instance = build_instance(&tripled);
        let canonical = canonical_tour(&gadget);
        Self {
            aug,
            gadget,
            tripled,
            instance,
            canonical,
        }
    }

    pub fn formula(&self) -> &CnfFormula {
        self.aug.base()
    }

    pub fn augmented(&self) -> &AugmentedFormula {
        &self.aug
    }

    pub fn gadget(&self) -> &GadgetGraph {
        &self.gadget
    }

    pub fn tripled(&self) -> &TripledGraph {
        &self.tripled
    }

    pub fn instance(&self) -> &TspInstance {
        &self.instance
    }

    pub fn canonical(&self) -> &Tour {
        &self.canonical
    }

    /// `|V'|`, the length of every tour shorter than the canonical one.
    pub fn dimension(&self) -> usize {
        self.instance.dimension()
    }

    /// `|V'| + 1`.
    pub fn baseline_length(&self) -> u64 {
        self.dimension() as u64 + 1
    }
}

/// Tour of length `|V'|` for a satisfying assignment of the base formula:
/// each diamond follows its variable, `z`'s diamond runs right to left, and
/// each clause is absorbed by its satisfied literal of smallest variable index.
pub fn assignment_to_tour(
    art: &ReductionArtifact,
    assignment: &Assignment,
) -> Result<Tour, CertificateError> {
    let phi = art.formula();
    if !phi.evaluate(assignment)? {
        return Err(CertificateError::Unsatisfied);
    }
    if phi.num_clauses() == 0 {
        return Err(CertificateError::NoClauses);
    }
    let detours: Vec<u32> = phi
        .clauses()
        .iter()
        .map(|clause| {
            clause
                .literals()
                .iter()
                .filter(|l| l.holds(assignment.value(l.variable())))
                .map(|l| l.variable())
                .min()
                .expect("satisfied clause has a true literal")
        })
        .collect();
    let values = assignment.extended(false);
    let cycle = art.gadget.cycle_for(&values, &detours)?;
    Ok(Tour::from_nodes(&expand_cycle(&cycle)))
}

/// Satisfying assignment of the base formula read off a tour strictly
/// shorter than the canonical one. Accepts any rotation or reflection.
pub fn tour_to_assignment(
    art: &ReductionArtifact,
    cities: &[u32],
) -> Result<Assignment, CertificateError> {
    let length = tour_length(&art.instance, cities)?;
    let baseline = art.baseline_length();
    if length >= baseline {
        return Err(CertificateError::NotShorter { length, baseline });
    }
    let nodes: Vec<usize> = cities.iter().map(|&c| c as usize - 1).collect();
    let directed = collapse_cycle(&art.tripled, &nodes)?;
    let values = ham_cycle_orientation(&art.gadget, &directed)?;
    if values.value(art.gadget.dummy_variable()) {
        return Err(CertificateError::DummyTrue);
    }
    let assignment = values.restricted(art.formula().num_variables());
    debug_assert_eq!(art.formula().evaluate(&assignment), Ok(true));
    Ok(assignment)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TourReport {
    /// The sequence is a permutation of all cities.
    pub valid: bool,
    /// Cyclic length over the in-range consecutive pairs.
    pub length: u64,
    /// Some consecutive pair has weight 2.
    pub uses_ez: bool,
    /// Some consecutive pair has weight 3.
    pub uses_nonedge: bool,
}

/// Never fails; a malformed sequence just reports `valid: false`.
pub fn verify_tour(instance: &TspInstance, cities: &[u32]) -> TourReport {
    let n = instance.dimension() as u32;
    let valid = !cities.is_empty() && tour_length(instance, cities).is_ok();
    let mut report = TourReport {
        valid,
        length: 0,
        uses_ez: false,
        uses_nonedge: false,
    };
    for (a, b) in cycle_pairs(cities) {
        if !(1..=n).contains(&a) || !(1..=n).contains(&b) {
            continue;
        }
        let w = instance.distance(a, b);
        report.length += u64::from(w);
        report.uses_ez |= w == WEIGHT_EZ;
        report.uses_nonedge |= w == WEIGHT_NON_EDGE;
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn art(n: u32, clauses: &[&[i64]]) -> ReductionArtifact {
        ReductionArtifact::reduce(&CnfFormula::from_dimacs_clauses(n, clauses).unwrap())
    }

    #[test]
    fn single_positive_literal() {
        let art = art(1, &[&[1]]);
        let a = Assignment::from_values(vec![true]);
        let tour = assignment_to_tour(&art, &a).unwrap();
        let report = verify_tour(art.instance(), tour.cities());
        assert_eq!(
            report,
            TourReport {
                valid: true,
                length: 39,
                uses_ez: false,
                uses_nonedge: false
            }
        );
        assert_eq!(tour_to_assignment(&art, tour.cities()), Ok(a));
    }

    #[test]
    fn canonical_is_not_a_shorter_tour() {
        let art = art(1, &[&[1]]);
        let report = verify_tour(art.instance(), art.canonical().cities());
        assert_eq!(
            report,
            TourReport {
                valid: true,
                length: 40,
                uses_ez: true,
                uses_nonedge: false
            }
        );
        assert_eq!(
            tour_to_assignment(&art, art.canonical().cities()),
            Err(CertificateError::NotShorter {
                length: 40,
                baseline: 40
            })
        );
    }

    #[test]
    fn detour_through_negative_literal() {
        let art = art(2, &[&[1, -2]]);
        let a = Assignment::from_values(vec![false, false]);
        let tour = assignment_to_tour(&art, &a).unwrap();
        assert_eq!(verify_tour(art.instance(), tour.cities()).length, art.dimension() as u64);
        // clause node sits between x2's right and left contacts
        let g = art.gadget();
        let nodes = tour.nodes();
        let directed: Vec<usize> = nodes.iter().step_by(3).map(|&t| t / 3).collect();
        let c = g.node(crate::NodeRole::Clause(1)).unwrap();
        let pos = directed.iter().position(|&u| u == c).unwrap();
        assert_eq!(g.role(directed[pos - 1]), crate::NodeRole::Row(2, 2));
        assert_eq!(g.role(directed[pos + 1]), crate::NodeRole::Row(2, 1));
        assert_eq!(tour_to_assignment(&art, tour.cities()), Ok(a));
    }

    #[test]
    fn rotated_and_reflected_tours_are_accepted() {
        let art = art(2, &[&[1, 2], &[-1, 2]]);
        let a = Assignment::from_values(vec![true, true]);
        let mut cities = assignment_to_tour(&art, &a).unwrap().into_cities();
        cities.rotate_left(11);
        cities.reverse();
        assert_eq!(tour_to_assignment(&art, &cities), Ok(a));
    }

    #[test]
    fn rejects_unsatisfying_assignment() {
        let art = art(1, &[&[1]]);
        assert_eq!(
            assignment_to_tour(&art, &Assignment::from_values(vec![false])),
            Err(CertificateError::Unsatisfied)
        );
        assert!(matches!(
            assignment_to_tour(&art, &Assignment::all_true(2)),
            Err(CertificateError::Cnf(CnfError::AssignmentDomain { .. }))
        ));
    }

    #[test]
    fn zero_clause_formula_has_no_short_tour() {
        let art = art(1, &[]);
        assert_eq!(
            assignment_to_tour(&art, &Assignment::all_false(1)),
            Err(CertificateError::NoClauses)
        );
    }

    #[test]
    fn verify_flags_bad_sequences() {
        let art = art(1, &[&[1]]);
        let mut cities = art.canonical().cities().to_vec();
        cities[1] = cities[0];
        assert!(!verify_tour(art.instance(), &cities).valid);
        assert!(!verify_tour(art.instance(), &[]).valid);
        assert!(!verify_tour(art.instance(), &[1, 2, 99]).valid);
        assert!(matches!(
            tour_to_assignment(&art, &cities),
            Err(CertificateError::Tour(TspError::NotPermutation { .. }))
        ));
    }

    #[test]
    fn swapping_tour_cities_costs_non_edges() {
        let art = art(1, &[&[1]]);
        let mut cities = art.canonical().cities().to_vec();
        cities.swap(4, 20);
        let report = verify_tour(art.instance(), &cities);
        assert!(report.valid && report.uses_nonedge);
        assert!(report.length >= art.dimension() as u64 + 2);
    }
}
