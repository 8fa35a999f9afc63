//! Classification of log canonical surface singularities from dual graphs.
//!
//! A log terminal germ resolves to a string of rational curves (cyclic
//! quotient), a fork with two (-2)-curve branches (dihedral quotient), or a
//! fork whose branch determinants are (2,3,3), (2,3,4) or (2,3,5). The
//! strictly log canonical germs are the simple elliptic curve, the cusp
//! cycle, the double fork with four (-2) pendants, and the forks with branch
//! determinants (3,3,3), (2,4,4) or (2,3,6). Everything is decided by
//! integer pattern matching; the discrepancy solver provides the independent
//! cross-check.

use crate::discrepancy::{discrepancies, DiscrepancyError};
use crate::graph::{DualGraph, Shape};
use crate::linalg::branch_determinant;
use num::bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("graph is empty")]
    Empty,
    #[error("graph is not connected")]
    Disconnected,
    #[error("vertex {0:?} has positive genus outside the single-vertex elliptic pattern")]
    NonRationalVertexOutsideEllipticCase(String),
}

/// Du Val type refinement for all-(-2) configurations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AdeClass {
    A(usize),
    D(usize),
    E(u8),
}

impl std::fmt::Display for AdeClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AdeClass::A(n) => write!(f, "A{n}"),
            AdeClass::D(n) => write!(f, "D{n}"),
            AdeClass::E(n) => write!(f, "E{n}"),
        }
    }
}

/// The taxonomy of normal surface singularity germs recognized here.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SingularityType {
    /// A single (-1)-curve: contracts to a smooth point, no singularity.
    Smooth,
    /// Canonical (Du Val) singularity: every curve is a (-2)-curve. The
    /// refinement is `None` when only class membership is known.
    Ade(Option<AdeClass>),
    /// String of rational curves; `det` is the order of the cyclic group.
    CyclicQuotient {
        det: BigInt,
    },
    /// Fork with two single (-2) branches.
    DihedralQuotient {
        branch_dets: [BigInt; 3],
    },
    /// Fork with branch determinants (2,3,3).
    TetrahedralQuotient,
    /// Fork with branch determinants (2,3,4).
    OctahedralQuotient,
    /// Fork with branch determinants (2,3,5).
    IcosahedralQuotient,
    /// Single genus-1 vertex; `degree` is minus its self-intersection.
    SimpleElliptic {
        degree: i64,
    },
    /// Cycle of rational curves with some weight at least 3; `degree` is
    /// the sum of (c_i - 2).
    Cusp {
        degree: i64,
    },
    /// Double fork: four (-2) pendants around a core string.
    Z2QuotientOfCuspOrElliptic,
    /// Fork with branch determinants (3,3,3).
    Z3QuotientElliptic,
    /// Fork with branch determinants (2,4,4).
    Z4QuotientElliptic,
    /// Fork with branch determinants (2,3,6).
    Z6QuotientElliptic,
    /// Elliptic Gorenstein of known degree (double-cover dictionary result;
    /// simple elliptic or cusp, whichever the branch curve degenerates to).
    EllipticGorenstein {
        degree: u32,
    },
    NotInTaxonomy,
}

impl SingularityType {
    /// Log terminal types.
    pub fn is_log_terminal(&self) -> bool {
        matches!(
            self,
            SingularityType::Ade(_)
                | SingularityType::CyclicQuotient { .. }
                | SingularityType::DihedralQuotient { .. }
                | SingularityType::TetrahedralQuotient
                | SingularityType::OctahedralQuotient
                | SingularityType::IcosahedralQuotient
        )
    }

    /// Log canonical types (log terminal ones included).
    pub fn is_lc_type(&self) -> bool {
        self.is_log_terminal()
            || matches!(
                self,
                SingularityType::SimpleElliptic { .. }
                    | SingularityType::Cusp { .. }
                    | SingularityType::Z2QuotientOfCuspOrElliptic
                    | SingularityType::Z3QuotientElliptic
                    | SingularityType::Z4QuotientElliptic
                    | SingularityType::Z6QuotientElliptic
                    | SingularityType::EllipticGorenstein { .. }
            )
    }
}

impl std::fmt::Display for SingularityType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SingularityType::Smooth => write!(f, "smooth point blowdown"),
            SingularityType::Ade(Some(c)) => write!(f, "ADE ({c})"),
            SingularityType::Ade(None) => write!(f, "ADE"),
            SingularityType::CyclicQuotient { det } => write!(f, "cyclic quotient (det {det})"),
            SingularityType::DihedralQuotient { branch_dets } => write!(
                f,
                "dihedral quotient (branch determinants {}, {}, {})",
                branch_dets[0], branch_dets[1], branch_dets[2]
            ),
            SingularityType::TetrahedralQuotient => {
                write!(f, "tetrahedral quotient (branch determinants 2, 3, 3)")
            }
            SingularityType::OctahedralQuotient => {
                write!(f, "octahedral quotient (branch determinants 2, 3, 4)")
            }
            SingularityType::IcosahedralQuotient => {
                write!(f, "icosahedral quotient (branch determinants 2, 3, 5)")
            }
            SingularityType::SimpleElliptic { degree } => {
                write!(f, "simple elliptic (degree {degree})")
            }
            SingularityType::Cusp { degree } => write!(f, "cusp (degree {degree})"),
            SingularityType::Z2QuotientOfCuspOrElliptic => {
                write!(f, "Z/2-quotient of a cusp or simple elliptic singularity")
            }
            SingularityType::Z3QuotientElliptic => {
                write!(f, "Z/3-quotient of a simple elliptic singularity (3, 3, 3)")
            }
            SingularityType::Z4QuotientElliptic => {
                write!(f, "Z/4-quotient of a simple elliptic singularity (2, 4, 4)")
            }
            SingularityType::Z6QuotientElliptic => {
                write!(f, "Z/6-quotient of a simple elliptic singularity (2, 3, 6)")
            }
            SingularityType::EllipticGorenstein { degree } => {
                write!(f, "elliptic Gorenstein (degree {degree})")
            }
            SingularityType::NotInTaxonomy => write!(f, "not in the taxonomy"),
        }
    }
}

fn all_minus_two(g: &DualGraph) -> bool {
    g.vertices().iter().all(|v| v.self_intersection == -2)
}

/// Branch weights as the positive string c_1..c_k, or `None` if some weight
/// is above -2.
fn branch_weights(g: &DualGraph, idx: &[usize]) -> Option<Vec<u64>> {
    idx.iter()
        .map(|&i| {
            let w = g.vertex(i).self_intersection;
            if w <= -2 {
                Some((-w) as u64)
            } else {
                None
            }
        })
        .collect()
}

/// Pattern-matches a connected dual graph against the taxonomy.
///
/// The simple elliptic pattern is a single genus-1 vertex with
/// self-intersection at most -1; a genus-1 vertex with non-negative
/// self-intersection is not contractible and is reported as out of
/// taxonomy rather than accepted.
pub fn classify(g: &DualGraph) -> Result<SingularityType, ClassifyError> {
    if g.is_empty() {
        return Err(ClassifyError::Empty);
    }
    if !g.is_connected() {
        return Err(ClassifyError::Disconnected);
    }
    if g.len() == 1 && g.vertex(0).genus == 1 {
        let w = g.vertex(0).self_intersection;
        return Ok(if w <= -1 {
            SingularityType::SimpleElliptic { degree: -w }
        } else {
            SingularityType::NotInTaxonomy
        });
    }
    if let Some(v) = g.vertices().iter().find(|v| v.genus > 0) {
        return Err(ClassifyError::NonRationalVertexOutsideEllipticCase(
            v.id.clone(),
        ));
    }
    let shape = g.shape().expect("connectivity already checked");
    Ok(match shape {
        Shape::String(order) => {
            if g.len() == 1 && g.vertex(0).self_intersection == -1 {
                return Ok(SingularityType::Smooth);
            }
            match branch_weights(g, &order) {
                Some(ws) => {
                    if ws.iter().all(|&c| c == 2) {
                        SingularityType::Ade(Some(AdeClass::A(ws.len())))
                    } else {
                        SingularityType::CyclicQuotient {
                            det: branch_determinant(&ws).expect("nonempty string"),
                        }
                    }
                }
                None => SingularityType::NotInTaxonomy,
            }
        }
        Shape::Cycle(order) => match branch_weights(g, &order) {
            Some(ws) if ws.iter().any(|&c| c >= 3) => SingularityType::Cusp {
                degree: ws.iter().map(|&c| c as i64 - 2).sum(),
            },
            _ => SingularityType::NotInTaxonomy,
        },
        Shape::SingleFork { center, branches } => {
            if g.vertex(center).self_intersection > -2 {
                return Ok(SingularityType::NotInTaxonomy);
            }
            let ws: Option<Vec<Vec<u64>>> = branches.iter().map(|b| branch_weights(g, b)).collect();
            let ws = match ws {
                Some(ws) => ws,
                None => return Ok(SingularityType::NotInTaxonomy),
            };
            let dets: Vec<BigInt> = ws
                .iter()
                .map(|w| branch_determinant(w).expect("nonempty branch"))
                .collect();
            let single_minus_two = |w: &Vec<u64>| w.len() == 1 && w[0] == 2;
            if ws.iter().filter(|w| single_minus_two(w)).count() >= 2 {
                // dihedral takes precedence: two pendant (-2)-curves
                return Ok(if all_minus_two(g) {
                    SingularityType::Ade(Some(AdeClass::D(g.len())))
                } else {
                    let mut d: Vec<BigInt> = dets.clone();
                    d.sort();
                    SingularityType::DihedralQuotient {
                        branch_dets: d.try_into().expect("three branches"),
                    }
                });
            }
            let mut sorted = dets.clone();
            sorted.sort();
            let key: Vec<i64> = sorted
                .iter()
                .map(|d| {
                    use num::ToPrimitive;
                    d.to_i64().unwrap_or(i64::MAX)
                })
                .collect();
            match key[..] {
                [2, 3, 3] if all_minus_two(g) => SingularityType::Ade(Some(AdeClass::E(6))),
                [2, 3, 4] if all_minus_two(g) => SingularityType::Ade(Some(AdeClass::E(7))),
                [2, 3, 5] if all_minus_two(g) => SingularityType::Ade(Some(AdeClass::E(8))),
                [2, 3, 3] => SingularityType::TetrahedralQuotient,
                [2, 3, 4] => SingularityType::OctahedralQuotient,
                [2, 3, 5] => SingularityType::IcosahedralQuotient,
                // the all-(-2) realizations of the euclidean triples are the
                // affine diagrams: degenerate, not contractible
                [3, 3, 3] | [2, 4, 4] | [2, 3, 6] if all_minus_two(g) => {
                    SingularityType::NotInTaxonomy
                }
                [3, 3, 3] => SingularityType::Z3QuotientElliptic,
                [2, 4, 4] => SingularityType::Z4QuotientElliptic,
                [2, 3, 6] => SingularityType::Z6QuotientElliptic,
                _ => SingularityType::NotInTaxonomy,
            }
        }
        Shape::DoubleFork { core, side } => {
            let pendants_ok = side
                .iter()
                .all(|b| b.len() == 1 && g.vertex(b[0]).self_intersection == -2);
            let core_ok = core.iter().all(|&i| g.vertex(i).self_intersection <= -2);
            if pendants_ok && core_ok && !all_minus_two(g) {
                SingularityType::Z2QuotientOfCuspOrElliptic
            } else {
                SingularityType::NotInTaxonomy
            }
        }
        Shape::Other => SingularityType::NotInTaxonomy,
    })
}

/// Log canonicity by the discrepancy criterion: all coefficients at least
/// -1, compared exactly. Requires a contractible (negative definite)
/// configuration.
pub fn is_lc(g: &DualGraph) -> Result<bool, DiscrepancyError> {
    Ok(discrepancies(g)?.is_lc())
}

/// Branch curve singularities on a double cover of a smooth surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchPointKind {
    /// A simple (ADE) curve singularity of the branch.
    Simple,
    /// A triple point with an infinitely near triple point, everything
    /// infinitely near that being at most double.
    Triple33,
    /// A quadruple point with every infinitely near point at most double.
    Quadruple,
}

/// The double-cover dictionary: what singularity sits over a branch-curve
/// singularity of the given kind.
pub fn branch_curve_singularity_kind(kind: BranchPointKind) -> SingularityType {
    match kind {
        BranchPointKind::Simple => SingularityType::Ade(None),
        BranchPointKind::Triple33 => SingularityType::EllipticGorenstein { degree: 1 },
        BranchPointKind::Quadruple => SingularityType::EllipticGorenstein { degree: 2 },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::DualGraph;
    use crate::rat::{rat, Rat};
    use num::One;

    #[test]
    fn classify_examples() {
        assert_eq!(
            classify(&DualGraph::single(-2, 1)).unwrap(),
            SingularityType::SimpleElliptic { degree: 2 }
        );
        assert_eq!(
            classify(&DualGraph::cycle(&[-2, -2, -3])).unwrap(),
            SingularityType::Cusp { degree: 1 }
        );
        assert_eq!(
            classify(&DualGraph::fork(-2, &[&[-2], &[-3], &[-5]])).unwrap(),
            SingularityType::IcosahedralQuotient
        );
        assert_eq!(
            classify(&DualGraph::string(&[-2, -2, -2, -2])).unwrap(),
            SingularityType::Ade(Some(AdeClass::A(4)))
        );
    }

    #[test]
    fn classify_fork_patterns() {
        assert_eq!(
            classify(&DualGraph::fork(-2, &[&[-2], &[-3], &[-3]])).unwrap(),
            SingularityType::TetrahedralQuotient
        );
        assert_eq!(
            classify(&DualGraph::fork(-2, &[&[-2], &[-2, -2], &[-4]])).unwrap(),
            SingularityType::OctahedralQuotient
        );
        assert_eq!(
            classify(&DualGraph::fork(-3, &[&[-3], &[-3], &[-2, -2]])).unwrap(),
            SingularityType::Z3QuotientElliptic
        );
        assert_eq!(
            classify(&DualGraph::fork(-2, &[&[-2], &[-4], &[-2, -2, -2]])).unwrap(),
            SingularityType::Z4QuotientElliptic
        );
        assert_eq!(
            classify(&DualGraph::fork(-2, &[&[-2], &[-3], &[-6]])).unwrap(),
            SingularityType::Z6QuotientElliptic
        );
        // dihedral beats the determinant table when two branches are single (-2)s
        assert_eq!(
            classify(&DualGraph::fork(-3, &[&[-2], &[-2], &[-3, -2]])).unwrap(),
            SingularityType::DihedralQuotient {
                branch_dets: [BigInt::from(2), BigInt::from(2), BigInt::from(5)]
            }
        );
        // the all-(-2) D and E diagrams are canonical
        assert_eq!(
            classify(&DualGraph::fork(-2, &[&[-2], &[-2], &[-2, -2]])).unwrap(),
            SingularityType::Ade(Some(AdeClass::D(5)))
        );
        assert_eq!(
            classify(&DualGraph::fork(-2, &[&[-2], &[-2, -2], &[-2, -2]])).unwrap(),
            SingularityType::Ade(Some(AdeClass::E(6)))
        );
        assert_eq!(
            classify(&DualGraph::fork(-2, &[&[-2], &[-2, -2], &[-2, -2, -2, -2]])).unwrap(),
            SingularityType::Ade(Some(AdeClass::E(8)))
        );
        // the all-(-2) euclidean forks are affine diagrams, hence rejected
        assert_eq!(
            classify(&DualGraph::fork(-2, &[&[-2, -2], &[-2, -2], &[-2, -2]])).unwrap(),
            SingularityType::NotInTaxonomy
        );
    }

    #[test]
    fn elliptic_vertex_with_nonnegative_square_is_flagged() {
        assert_eq!(
            classify(&DualGraph::single(0, 1)).unwrap(),
            SingularityType::NotInTaxonomy
        );
        assert_eq!(
            classify(&DualGraph::single(1, 1)).unwrap(),
            SingularityType::NotInTaxonomy
        );
        assert_eq!(
            classify(&DualGraph::single(-1, 1)).unwrap(),
            SingularityType::SimpleElliptic { degree: 1 }
        );
    }

    #[test]
    fn genus_outside_elliptic_pattern_is_rejected() {
        let mut g = DualGraph::string(&[-2, -2]);
        assert!(classify(&g).is_ok());
        g = {
            let mut vs = g.vertices().to_vec();
            vs[1].genus = 1;
            let mut h = DualGraph::new(vs).unwrap();
            h.add_edge("E0", "E1", 1).unwrap();
            h
        };
        assert!(matches!(
            classify(&g),
            Err(ClassifyError::NonRationalVertexOutsideEllipticCase(_))
        ));
        // a single genus-2 vertex is also outside the elliptic pattern
        assert!(classify(&DualGraph::single(-1, 2)).is_err());
    }

    #[test]
    fn is_lc_examples() {
        let p = discrepancies(&DualGraph::cycle(&[-2, -2, -3])).unwrap();
        assert!(p.coefficients().iter().all(|a| *a == -Rat::one()));
        assert!(is_lc(&DualGraph::cycle(&[-2, -2, -3])).unwrap());
        let p = discrepancies(&DualGraph::single(-5, 0)).unwrap();
        assert_eq!(p.coefficients()[0], rat(-3, 5));
        assert!(is_lc(&DualGraph::single(-5, 0)).unwrap());
        assert!(!is_lc(&DualGraph::single(-1, 2)).unwrap());
        assert_eq!(
            is_lc(&DualGraph::cycle(&[-2, -2, -2])),
            Err(DiscrepancyError::NotContractible)
        );
    }

    #[test]
    fn double_cover_dictionary() {
        assert_eq!(
            branch_curve_singularity_kind(BranchPointKind::Simple),
            SingularityType::Ade(None)
        );
        assert_eq!(
            branch_curve_singularity_kind(BranchPointKind::Triple33),
            SingularityType::EllipticGorenstein { degree: 1 }
        );
        assert_eq!(
            branch_curve_singularity_kind(BranchPointKind::Quadruple),
            SingularityType::EllipticGorenstein { degree: 2 }
        );
    }

    #[test]
    fn classify_is_relabeling_invariant() {
        let g = DualGraph::fork(-2, &[&[-2], &[-3], &[-5]]);
        let n = g.len();
        let perm: Vec<usize> = (0..n).rev().collect();
        assert_eq!(classify(&g).unwrap(), classify(&g.permuted(&perm)).unwrap());
    }
}
