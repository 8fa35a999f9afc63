//! Numerical fundamental cycles and canonical cycles.
//!
//! The fundamental cycle of a contractible configuration is the unique
//! minimal effective divisor `Z` with full support satisfying `Z . E_i <= 0`
//! for every curve. It is computed by the classical chase: start from the
//! reduced cycle and repeatedly add any curve with positive pairing.

use crate::classify::{classify, SingularityType};
use crate::discrepancy::discrepancies;
use crate::graph::DualGraph;
use crate::linalg::is_negative_definite;
use crate::rat::Rat;
use num::One;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycleError {
    #[error("intersection matrix is not negative definite; configuration is not contractible")]
    NotContractible,
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph is empty")]
    Empty,
    #[error("configuration is not simple elliptic or a cusp")]
    NotEllipticGorenstein,
}

/// An effective cycle supported on the whole vertex set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cycle {
    ids: Vec<String>,
    coefficients: Vec<u64>,
}

impl Cycle {
    pub fn coefficient(&self, id: &str) -> Option<u64> {
        self.ids
            .iter()
            .position(|x| x == id)
            .map(|i| self.coefficients[i])
    }

    /// Coefficients in vertex order.
    pub fn coefficients(&self) -> &[u64] {
        &self.coefficients
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn is_reduced(&self) -> bool {
        self.coefficients.iter().all(|&c| c == 1)
    }

    /// `Z . E_i` against the graph's intersection form.
    pub fn dot_vertex(&self, g: &DualGraph, i: usize) -> i64 {
        let v: i128 = (0..g.len())
            .map(|j| self.coefficients[j] as i128 * g.pairing(i, j) as i128)
            .sum();
        v.try_into().expect("pairing fits in 64 bits")
    }

    /// `Z . Z` against the graph's intersection form.
    pub fn self_intersection(&self, g: &DualGraph) -> i64 {
        let v: i128 = (0..g.len())
            .map(|i| self.coefficients[i] as i128 * self.dot_vertex(g, i) as i128)
            .sum();
        v.try_into().expect("self-intersection fits in 64 bits")
    }
}

fn check_preconditions(g: &DualGraph) -> Result<(), CycleError> {
    if g.is_empty() {
        return Err(CycleError::Empty);
    }
    if !g.is_connected() {
        return Err(CycleError::Disconnected);
    }
    if !is_negative_definite(&g.intersection_matrix()) {
        return Err(CycleError::NotContractible);
    }
    Ok(())
}

/// The fundamental cycle together with the number of augmentation steps.
pub fn fundamental_cycle_with_iterations(g: &DualGraph) -> Result<(Cycle, usize), CycleError> {
    check_preconditions(g)?;
    let n = g.len();
    let mut z = vec![1u64; n];
    let mut steps = 0usize;
    loop {
        // lowest-index violator; the result is order-independent, the fixed
        // order keeps runs reproducible
        let violator = (0..n).find(|&i| {
            let dot: i128 = (0..n).map(|j| z[j] as i128 * g.pairing(i, j) as i128).sum();
            dot > 0
        });
        match violator {
            Some(i) => {
                z[i] += 1;
                steps += 1;
            }
            None => break,
        }
    }
    Ok((
        Cycle {
            ids: g.vertices().iter().map(|v| v.id.clone()).collect(),
            coefficients: z,
        },
        steps,
    ))
}

/// The numerical fundamental cycle of a contractible connected configuration.
pub fn fundamental_cycle(g: &DualGraph) -> Result<Cycle, CycleError> {
    fundamental_cycle_with_iterations(g).map(|(z, _)| z)
}

/// The degree `-Z^2` of a cycle.
pub fn degree(g: &DualGraph, z: &Cycle) -> u64 {
    let d = -z.self_intersection(g);
    assert!(d > 0, "contractible cycles have negative self-intersection");
    d as u64
}

/// The canonical cycle of a simple elliptic or cusp configuration: the
/// reduced cycle, verified against the solver (all discrepancies are -1).
pub fn canonical_cycle(g: &DualGraph) -> Result<Cycle, CycleError> {
    check_preconditions(g)?;
    match classify(g) {
        Ok(SingularityType::SimpleElliptic { .. }) | Ok(SingularityType::Cusp { .. }) => {}
        _ => return Err(CycleError::NotEllipticGorenstein),
    }
    let profile = discrepancies(g).expect("contractible by precondition");
    assert!(
        profile.coefficients().iter().all(|a| *a == -Rat::one()),
        "elliptic Gorenstein configurations have all discrepancies equal to -1"
    );
    Ok(Cycle {
        ids: g.vertices().iter().map(|v| v.id.clone()).collect(),
        coefficients: vec![1; g.len()],
    })
}

/// Kinds of points a movable linear system can meet in its base locus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContractionKind {
    SmoothPoint,
    Ade,
    EllipticDegreeAtLeast2,
    EllipticDegree1,
}

/// How a base point of a movable system contributes to the base part of its
/// pullback: always at least the fundamental cycle, with an extra smooth
/// base point in degree one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseLocusRule {
    pub kind: ContractionKind,
    /// what the fundamental cycle is in this case
    pub cycle: &'static str,
    /// the pullback of the maximal ideal sheaf
    pub ideal: &'static str,
    /// whether a smooth base point remains on the cycle
    pub extra_base_point: bool,
}

/// Lower bound `G >= Z` on the base part, by contraction kind.
pub fn base_locus_lower_bound(kind: ContractionKind) -> BaseLocusRule {
    match kind {
        ContractionKind::SmoothPoint => BaseLocusRule {
            kind,
            cycle: "Z is the exceptional (-1)-curve of the blowup",
            ideal: "O(-Z)",
            extra_base_point: false,
        },
        ContractionKind::Ade => BaseLocusRule {
            kind,
            cycle: "Z is the fundamental cycle of the Du Val configuration",
            ideal: "O(-Z)",
            extra_base_point: false,
        },
        ContractionKind::EllipticDegreeAtLeast2 => BaseLocusRule {
            kind,
            cycle: "Z equals the canonical cycle",
            ideal: "O(-Z)",
            extra_base_point: false,
        },
        ContractionKind::EllipticDegree1 => BaseLocusRule {
            kind,
            cycle: "Z equals the canonical cycle",
            ideal: "m_p O(-Z) for a smooth point p on Z",
            extra_base_point: true,
        },
    }
}
