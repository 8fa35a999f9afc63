//! Volumes of contractions.
//!
//! Contracting a negative definite set of curves `E_i` inside a lattice
//! changes the self-intersection of the canonical class to
//! `K^2 - sum a_E (K . E)`, where the `a_E` solve the same linear system as
//! the discrepancy solver with right-hand side read off the pairing. The
//! module also evaluates the necessary (not sufficient) numerical
//! stability conditions and the strict volume gain of non-canonical
//! contractions.

use crate::discrepancy::{component_verdict, Verdict};
use crate::lattice::{IntersectionLattice, LatticeError};
use crate::linalg;
use crate::rat::Rat;
use num::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VolumeError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("class {0:?} is not flagged as a curve with genus metadata")]
    NotAFlaggedCurve(String),
    #[error("contracted pairing submatrix is not negative definite")]
    NotContractible,
    #[error(transparent)]
    LinAlg(#[from] linalg::LinAlgError),
}

/// A lattice plus the ordered list of curve labels to contract.
#[derive(Debug, Clone, PartialEq)]
pub struct ContractionSpec {
    pub lattice: IntersectionLattice,
    pub contracted: Vec<String>,
}

/// The result of a volume computation.
#[derive(Debug, Clone, PartialEq)]
pub struct VolumeOutcome {
    /// `(pullback K)^2 = K^2 - sum a_E (K . E)`, exact.
    pub volume: Rat,
    /// `K^2` of the ambient lattice.
    pub ambient_k_squared: Rat,
    /// contracted labels with their solved coefficients, in request order
    pub coefficients: Vec<(String, Rat)>,
    /// (labels, verdict) per connected component of the contracted set
    pub components: Vec<(Vec<String>, Verdict)>,
    /// set when some coefficient is below -1; the volume is still reported
    pub not_lc: bool,
}

impl VolumeOutcome {
    pub fn coefficient(&self, label: &str) -> Option<&Rat> {
        self.coefficients
            .iter()
            .find(|(l, _)| l == label)
            .map(|(_, a)| a)
    }
}

/// Connected components of the contracted set under nonzero pairing.
fn contracted_components(m: &linalg::SymMatrix) -> Vec<Vec<usize>> {
    let n = m.dim();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(v) = stack.pop() {
            for w in 0..n {
                if !seen[w] && v != w && !m.get(v, w).is_zero() {
                    seen[w] = true;
                    stack.push(w);
                    comp.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Computes the volume of the contraction and the discrepancy profile of
/// the contracted set.
pub fn volume(spec: &ContractionSpec) -> Result<VolumeOutcome, VolumeError> {
    let lat = &spec.lattice;
    for label in &spec.contracted {
        lat.index_of(label)?;
        if !lat.curves().contains_key(label) {
            return Err(VolumeError::NotAFlaggedCurve(label.clone()));
        }
    }
    let m = lat.gram_of(&spec.contracted)?;
    if !linalg::is_negative_definite(&m) {
        return Err(VolumeError::NotContractible);
    }
    let b: Vec<Rat> = spec
        .contracted
        .iter()
        .map(|l| lat.k_dot(l))
        .collect::<Result<_, _>>()?;
    let a = linalg::solve(&m, &b)?;
    let k_sq = lat.k_squared();
    let correction: Rat = a.iter().zip(&b).map(|(ai, bi)| ai * bi).sum();
    let vol = &k_sq - &correction;
    // two-sided check: expanding (K - sum a E)^2 through the pairing must
    // give the same exact value
    let quad: Rat = (0..a.len())
        .map(|i| {
            (0..a.len())
                .map(|j| &a[i] * &a[j] * m.get(i, j))
                .sum::<Rat>()
        })
        .sum();
    let expanded =
        &k_sq - a.iter().zip(&b).map(|(ai, bi)| ai * bi).sum::<Rat>() * crate::rat::int(2) + quad;
    assert_eq!(vol, expanded, "volume must agree with the expanded square");

    let components = contracted_components(&m)
        .into_iter()
        .map(|idx| {
            let coeffs: Vec<Rat> = idx.iter().map(|&i| a[i].clone()).collect();
            let labels = idx.iter().map(|&i| spec.contracted[i].clone()).collect();
            (labels, component_verdict(&coeffs))
        })
        .collect();
    let not_lc = a.iter().any(|x| x < &-Rat::one());
    Ok(VolumeOutcome {
        volume: vol,
        ambient_k_squared: k_sq,
        coefficients: spec.contracted.iter().cloned().zip(a).collect(),
        components,
        not_lc,
    })
}

/// One pass/fail line of the stability report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityCheck {
    pub description: String,
    pub pass: bool,
}

/// Report of the numerical stability conditions. These are necessary
/// conditions on listed curves, never a sufficiency claim: a lattice cannot
/// see all curves on the surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityReport {
    pub headline: &'static str,
    pub checks: Vec<StabilityCheck>,
}

impl StabilityReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Checks `(pullback K)^2 > 0`, `(pullback K) . C > 0` for every flagged
/// curve not contracted, and `a_E >= -1` for every contracted curve.
pub fn stability_necessary_checks(
    spec: &ContractionSpec,
    outcome: &VolumeOutcome,
) -> Result<StabilityReport, VolumeError> {
    let lat = &spec.lattice;
    let mut checks = Vec::new();
    checks.push(StabilityCheck {
        description: format!("(pullback K)^2 = {} > 0", outcome.volume),
        pass: outcome.volume.is_positive(),
    });
    for curve in lat.curves().keys() {
        if spec.contracted.iter().any(|c| c == curve) {
            continue;
        }
        // (K - sum a E) . C
        let mut v = lat.k_dot(curve)?;
        for (label, a) in &outcome.coefficients {
            v -= a * lat.pair(label, curve)?;
        }
        checks.push(StabilityCheck {
            description: format!("(pullback K) . {curve} = {v} > 0"),
            pass: v.is_positive(),
        });
    }
    for (label, a) in &outcome.coefficients {
        checks.push(StabilityCheck {
            description: format!("a_{label} = {a} >= -1"),
            pass: a >= &-Rat::one(),
        });
    }
    Ok(StabilityReport {
        headline: "necessary conditions on listed curves",
        checks,
    })
}

/// True iff this instance satisfies the strict-gain implication: whenever
/// some contracted curve has `a_E < 0` and `K . E > 0`, the volume strictly
/// exceeds the ambient `K^2`.
pub fn gorenstein_gap_check(
    spec: &ContractionSpec,
    outcome: &VolumeOutcome,
) -> Result<bool, VolumeError> {
    let lat = &spec.lattice;
    let mut premise = false;
    for (label, a) in &outcome.coefficients {
        if a.is_negative() && lat.k_dot(label)?.is_positive() {
            premise = true;
            break;
        }
    }
    Ok(!premise || outcome.volume > outcome.ambient_k_squared)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::IntersectionLattice;
    use crate::rat::{int, rat};

    /// A small lattice with K^2 = 0 and two disjoint contractible curves, a
    /// (-1)-curve and a (-3)-curve, plus a (-2)-curve meeting the latter.
    fn two_curve_lattice() -> IntersectionLattice {
        let mut lat = crate::lattice::parse(
            r#"{
              "classes": ["K", "E0", "E1", "C"],
              "pairing": [
                ["0", "-1", "1", "0"],
                ["-1", "-1", "0", "0"],
                ["1", "0", "-3", "1"],
                ["0", "0", "1", "-2"]
              ],
              "canonical": "K"
            }"#,
        )
        .unwrap();
        lat.mark_curve("E0", 0).unwrap();
        lat.mark_curve("E1", 0).unwrap();
        lat.mark_curve("C", 0).unwrap();
        lat
    }

    #[test]
    fn mixed_contraction_volume() {
        let lat = two_curve_lattice();
        let spec = ContractionSpec {
            lattice: lat,
            contracted: vec!["E0".into(), "E1".into()],
        };
        let out = volume(&spec).unwrap();
        assert_eq!(out.coefficient("E0").unwrap(), &int(1));
        assert_eq!(out.coefficient("E1").unwrap(), &rat(-1, 3));
        assert_eq!(out.volume, rat(4, 3));
        assert!(!out.not_lc);
        assert_eq!(out.components.len(), 2);
        let report = stability_necessary_checks(&spec, &out).unwrap();
        assert!(report.all_pass(), "{report:?}");
        assert!(gorenstein_gap_check(&spec, &out).unwrap());
    }

    #[test]
    fn canonical_contraction_keeps_volume() {
        let mut lat = crate::lattice::parse(
            r#"{
              "classes": ["K", "A1", "A2"],
              "pairing": [
                ["5", "0", "0"],
                ["0", "-2", "1"],
                ["0", "1", "-2"]
              ],
              "canonical": "K"
            }"#,
        )
        .unwrap();
        lat.mark_curve("A1", 0).unwrap();
        lat.mark_curve("A2", 0).unwrap();
        let spec = ContractionSpec {
            lattice: lat,
            contracted: vec!["A1".into(), "A2".into()],
        };
        let out = volume(&spec).unwrap();
        assert_eq!(out.volume, int(5));
        assert_eq!(out.components[0].1, Verdict::Canonical);
        assert!(gorenstein_gap_check(&spec, &out).unwrap());
    }

    #[test]
    fn volume_is_order_independent() {
        let lat = two_curve_lattice();
        let a = volume(&ContractionSpec {
            lattice: lat.clone(),
            contracted: vec!["E0".into(), "E1".into()],
        })
        .unwrap();
        let b = volume(&ContractionSpec {
            lattice: lat,
            contracted: vec!["E1".into(), "E0".into()],
        })
        .unwrap();
        assert_eq!(a.volume, b.volume);
    }

    #[test]
    fn not_lc_is_flagged_not_fatal() {
        // a genus-2 curve of square -1: a = -3
        let mut lat = crate::lattice::parse(
            r#"{
              "classes": ["K", "C"],
              "pairing": [
                ["1", "3"],
                ["3", "-1"]
              ],
              "canonical": "K"
            }"#,
        )
        .unwrap();
        lat.mark_curve("C", 2).unwrap();
        let spec = ContractionSpec {
            lattice: lat,
            contracted: vec!["C".into()],
        };
        let out = volume(&spec).unwrap();
        assert!(out.not_lc);
        assert_eq!(out.coefficient("C").unwrap(), &int(-3));
        assert_eq!(out.components[0].1, Verdict::NotLc);
        let report = stability_necessary_checks(&spec, &out).unwrap();
        assert!(!report.all_pass());
    }

    #[test]
    fn errors() {
        let lat = two_curve_lattice();
        assert!(matches!(
            volume(&ContractionSpec {
                lattice: lat.clone(),
                contracted: vec!["K".into()],
            }),
            Err(VolumeError::NotAFlaggedCurve(_))
        ));
        assert!(matches!(
            volume(&ContractionSpec {
                lattice: lat,
                contracted: vec!["nope".into()],
            }),
            Err(VolumeError::Lattice(LatticeError::UnknownLabel(_)))
        ));
    }
}
