//! Discrepancy coefficients of a contraction.
//!
//! For a configuration of curves `E_i` with negative definite intersection
//! matrix `M`, the coefficients `a_E` in `K = pullback(K) + sum a_E E` are
//! the unique exact solution of `M . a = b` with `b_i = K . E_i` given by
//! adjunction, `b_i = 2 genus(E_i) - 2 - E_i^2`. Each connected component of
//! the contracted set gets its own verdict from exact comparisons of the
//! coefficients against 0 and -1.

use crate::graph::DualGraph;
use crate::linalg;
use crate::rat::{int, rat, Rat};
use num::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiscrepancyError {
    #[error("intersection matrix is not negative definite; configuration is not contractible")]
    NotContractible,
    #[error(transparent)]
    Singular(#[from] linalg::LinAlgError),
    #[error("graph is not a chain of the required form")]
    NotAChain,
}

/// Per-component singularity verdict, decided by exact comparisons.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// Some coefficient is positive: the component contracts through a
    /// smooth-point blowdown.
    SmoothPointBlowdown,
    /// All coefficients are zero: canonical (Du Val) singularity.
    Canonical,
    /// All coefficients strictly between -1 and 0 (not all zero).
    LogTerminal,
    /// Log canonical but not log terminal: the minimum is exactly -1.
    LcNotLt,
    /// Some coefficient is below -1.
    NotLc,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verdict::SmoothPointBlowdown => "smooth point blowdown",
            Verdict::Canonical => "canonical",
            Verdict::LogTerminal => "log terminal",
            Verdict::LcNotLt => "log canonical, not log terminal",
            Verdict::NotLc => "NOT log canonical",
        };
        f.write_str(s)
    }
}

/// Verdict for one connected component from its exact coefficients.
pub fn component_verdict(coeffs: &[Rat]) -> Verdict {
    let minus_one = -Rat::one();
    if coeffs.iter().any(|a| a < &minus_one) {
        Verdict::NotLc
    } else if coeffs.iter().any(|a| a.is_positive()) {
        Verdict::SmoothPointBlowdown
    } else if coeffs.iter().all(|a| a.is_zero()) {
        Verdict::Canonical
    } else if coeffs.iter().any(|a| a == &minus_one) {
        Verdict::LcNotLt
    } else {
        Verdict::LogTerminal
    }
}

/// Exact discrepancy coefficients plus per-component verdicts.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscrepancyProfile {
    ids: Vec<String>,
    coefficients: Vec<Rat>,
    /// (vertex indices, verdict) per connected component
    components: Vec<(Vec<usize>, Verdict)>,
}

impl DiscrepancyProfile {
    pub fn coefficient(&self, id: &str) -> Option<&Rat> {
        self.ids
            .iter()
            .position(|x| x == id)
            .map(|i| &self.coefficients[i])
    }

    /// Coefficients in vertex order.
    pub fn coefficients(&self) -> &[Rat] {
        &self.coefficients
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn components(&self) -> &[(Vec<usize>, Verdict)] {
        &self.components
    }

    pub fn min(&self) -> &Rat {
        self.coefficients.iter().min().expect("nonempty profile")
    }

    /// Worst verdict across components, in the order
    /// NotLc > SmoothPointBlowdown > LcNotLt > LogTerminal > Canonical.
    pub fn overall(&self) -> Verdict {
        let rank = |v: &Verdict| match v {
            Verdict::NotLc => 4,
            Verdict::SmoothPointBlowdown => 3,
            Verdict::LcNotLt => 2,
            Verdict::LogTerminal => 1,
            Verdict::Canonical => 0,
        };
        *self
            .components
            .iter()
            .map(|(_, v)| v)
            .max_by_key(|v| rank(v))
            .expect("nonempty profile")
    }

    pub fn is_lc(&self) -> bool {
        self.min() >= &-Rat::one()
    }
}

/// Adjunction right-hand side `K . E_i = 2 genus - 2 - E_i^2`.
pub fn adjunction_rhs(g: &DualGraph) -> Vec<Rat> {
    g.vertices()
        .iter()
        .map(|v| int(2 * v.genus as i64 - 2 - v.self_intersection))
        .collect()
}

/// Solves for the discrepancy coefficients of the whole graph.
pub fn discrepancies(g: &DualGraph) -> Result<DiscrepancyProfile, DiscrepancyError> {
    let m = g.intersection_matrix();
    if !linalg::is_negative_definite(&m) {
        return Err(DiscrepancyError::NotContractible);
    }
    let b = adjunction_rhs(g);
    let a = linalg::solve(&m, &b)?;
    // defining identity (K - sum a_E E) . E_i = 0, exactly
    assert_eq!(
        m.mul_vec(&a),
        b,
        "solver must satisfy the defining identity"
    );
    let components = g
        .components()
        .into_iter()
        .map(|idx| {
            let coeffs: Vec<Rat> = idx.iter().map(|&i| a[i].clone()).collect();
            let verdict = component_verdict(&coeffs);
            (idx, verdict)
        })
        .collect();
    Ok(DiscrepancyProfile {
        ids: g.vertices().iter().map(|v| v.id.clone()).collect(),
        coefficients: a,
        components,
    })
}

/// Lower bound `1/(2 l + 1)` for the discrepancy magnitude at the start of a
/// pendant chain of length `l`, together with a solver verification that the
/// chain of `l - 1` (-2)-curves ending in a single (-3)-curve attains it.
pub fn end_chain_bound(l: u32) -> Rat {
    assert!(l >= 1);
    let bound = rat(1, 2 * l as i64 + 1);
    let mut weights = vec![-2i64; l as usize - 1];
    weights.push(-3);
    let profile = discrepancies(&DualGraph::string(&weights)).expect("chain is contractible");
    assert_eq!(
        profile.coefficients()[0],
        -bound.clone(),
        "equality case of the end-chain bound"
    );
    bound
}

/// True iff the solved coefficients grow linearly along the chain,
/// `a_k = k a_1`, in at least one of the two orientations.
///
/// The input must be a string whose internal vertices are all (-2)-curves.
pub fn proportionality_check(g: &DualGraph) -> Result<bool, DiscrepancyError> {
    let order = match g.shape().map_err(|_| DiscrepancyError::NotAChain)? {
        crate::graph::Shape::String(order) => order,
        _ => return Err(DiscrepancyError::NotAChain),
    };
    for &i in order.iter().skip(1).take(order.len().saturating_sub(2)) {
        if g.vertex(i).self_intersection != -2 {
            return Err(DiscrepancyError::NotAChain);
        }
    }
    let profile = discrepancies(g)?;
    let along: Vec<&Rat> = order.iter().map(|&i| &profile.coefficients()[i]).collect();
    let linear = |seq: &[&Rat]| -> bool {
        seq.iter()
            .enumerate()
            .all(|(k, a)| **a == seq[0] * int(k as i64 + 1))
    };
    let mut rev = along.clone();
    rev.reverse();
    Ok(linear(&along) || linear(&rev))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::DualGraph;

    #[test]
    fn isolated_curve_formula() {
        // a single rational (-d)-curve has a = -(d-2)/d
        for d in 3..=12i64 {
            let p = discrepancies(&DualGraph::single(-d, 0)).unwrap();
            assert_eq!(p.coefficients()[0], rat(-(d - 2), d));
        }
    }

    #[test]
    fn minimal_chain() {
        // [-(n+2), -2] solves to (-2n/(2n+3), -n/(2n+3)); n = 3 gives (-2/3, -1/3)
        let p = discrepancies(&DualGraph::string(&[-5, -2])).unwrap();
        assert_eq!(p.coefficients(), &[rat(-2, 3), rat(-1, 3)]);
    }

    #[test]
    fn pendant_chain_behind_a_minus_three() {
        // (-2), (-3), (-2): middle coefficient -2l/(3l+2) with l = 2
        let p = discrepancies(&DualGraph::string(&[-2, -3, -2])).unwrap();
        assert_eq!(p.coefficients()[1], rat(-1, 2));
    }

    #[test]
    fn all_minus_two_string_is_canonical() {
        let p = discrepancies(&DualGraph::string(&[-2, -2, -2])).unwrap();
        assert!(p.coefficients().iter().all(|a| a.is_zero()));
        assert_eq!(p.overall(), Verdict::Canonical);
    }

    #[test]
    fn verdicts() {
        // -1 curve: a = +1
        let p = discrepancies(&DualGraph::single(-1, 0)).unwrap();
        assert_eq!(p.coefficients()[0], int(1));
        assert_eq!(p.overall(), Verdict::SmoothPointBlowdown);
        // genus-1 curve: a = -1
        let p = discrepancies(&DualGraph::single(-2, 1)).unwrap();
        assert_eq!(p.coefficients()[0], int(-1));
        assert_eq!(p.overall(), Verdict::LcNotLt);
        // genus-2 curve at -1: a = -3
        let p = discrepancies(&DualGraph::single(-1, 2)).unwrap();
        assert_eq!(p.coefficients()[0], int(-3));
        assert_eq!(p.overall(), Verdict::NotLc);
        // log terminal chain
        let p = discrepancies(&DualGraph::string(&[-2, -3])).unwrap();
        assert_eq!(p.overall(), Verdict::LogTerminal);
    }

    #[test]
    fn not_contractible() {
        let g = DualGraph::cycle(&[-2, -2, -2]);
        assert_eq!(discrepancies(&g), Err(DiscrepancyError::NotContractible));
    }

    #[test]
    fn end_chain_bound_values() {
        assert_eq!(end_chain_bound(1), rat(1, 3));
        assert_eq!(end_chain_bound(2), rat(1, 5));
        assert_eq!(end_chain_bound(3), rat(1, 7));
    }

    #[test]
    fn proportionality_examples() {
        assert!(proportionality_check(&DualGraph::string(&[-2, -2, -3])).unwrap());
        assert!(proportionality_check(&DualGraph::string(&[-2, -2])).unwrap());
        assert!(!proportionality_check(&DualGraph::string(&[-3, -3])).unwrap());
        // reversed orientation also accepted
        assert!(proportionality_check(&DualGraph::string(&[-3, -2, -2])).unwrap());
        assert_eq!(
            proportionality_check(&DualGraph::fork(-2, &[&[-2], &[-2], &[-2]])),
            Err(DiscrepancyError::NotAChain)
        );
    }

    #[test]
    fn isolated_vertex_negative_coefficient_forces_positive_k_pairing() {
        // on isolated vertices, a_E < 0 happens exactly when K . E > 0
        for w in -9..=-1i64 {
            for genus in 0..=2u32 {
                let g = DualGraph::single(w, genus);
                let p = discrepancies(&g).unwrap();
                let k_dot = 2 * genus as i64 - 2 - w;
                if p.coefficients()[0].is_negative() {
                    assert!(k_dot > 0, "w={w}, genus={genus}");
                }
            }
        }
    }

    #[test]
    fn relabeling_keeps_coefficient_multiset() {
        let g = DualGraph::string(&[-2, -3, -4, -2]);
        let p = discrepancies(&g).unwrap();
        let perm = vec![2, 0, 3, 1];
        let q = discrepancies(&g.permuted(&perm)).unwrap();
        let mut a: Vec<Rat> = p.coefficients().to_vec();
        let mut b: Vec<Rat> = q.coefficients().to_vec();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }
}
