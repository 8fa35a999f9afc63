//! Numerical intersection lattices.
//!
//! A lattice is an ordered list of labeled divisor classes with a symmetric
//! rational pairing and a distinguished canonical class. Builders produce
//! the plane and the Hirzebruch surfaces and transform lattices through
//! blowups and double covers; derived classes are added as linear
//! combinations of existing ones and everything downstream is fixed by
//! bilinearity.
//!
//! Pairings and coefficients are rational rather than integral because the
//! reduced preimage of a branch component under a double cover is half a
//! pullback.

use crate::linalg::SymMatrix;
use crate::rat::{int, parse_rat, Rat};
use num::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("duplicate class label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown class label {0:?}")]
    UnknownLabel(String),
    #[error("class {label:?} violates adjunction: K.C = {k_dot_c}, but 2g - 2 - C^2 = {expected}")]
    AdjunctionViolated {
        label: String,
        k_dot_c: String,
        expected: String,
    },
    #[error("lattice file does not match the schema: {0}")]
    Schema(String),
}

/// A divisor class as rational coefficients over the lattice's class list.
#[derive(Debug, Clone, PartialEq)]
pub struct DivisorClass {
    pub coefficients: Vec<Rat>,
}

/// Genus bookkeeping for classes that represent irreducible curves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CurveMeta {
    pub genus: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntersectionLattice {
    labels: Vec<String>,
    /// gram[i][j] = pairing of class i with class j
    gram: Vec<Vec<Rat>>,
    canonical: String,
    curves: BTreeMap<String, CurveMeta>,
}

impl IntersectionLattice {
    /// The rational plane: one line class `l` with `l^2 = 1`, `K = -3l`.
    pub fn projective_plane() -> Self {
        let mut lat = IntersectionLattice {
            labels: vec!["l".into(), "K".into()],
            gram: vec![vec![int(1), int(-3)], vec![int(-3), int(9)]],
            canonical: "K".into(),
            curves: BTreeMap::new(),
        };
        lat.mark_curve("l", 0).expect("a line satisfies adjunction");
        lat
    }

    /// The Hirzebruch surface of degree `d`: zero section `Delta0` with
    /// self-intersection `-d`, fiber `Gamma`, and `K = -2 Delta0 - (d+2) Gamma`.
    pub fn hirzebruch(d: u32) -> Self {
        let d = d as i64;
        // K.Delta0 = d - 2, K.Gamma = -2, K^2 = 8
        let mut lat = IntersectionLattice {
            labels: vec!["Delta0".into(), "Gamma".into(), "K".into()],
            gram: vec![
                vec![int(-d), int(1), int(d - 2)],
                vec![int(1), int(0), int(-2)],
                vec![int(d - 2), int(-2), int(8)],
            ],
            canonical: "K".into(),
            curves: BTreeMap::new(),
        };
        lat.mark_curve("Delta0", 0)
            .expect("section satisfies adjunction");
        lat.mark_curve("Gamma", 0)
            .expect("fiber satisfies adjunction");
        lat
    }

    /// Builds a lattice from labeled basis classes and their pairing, with
    /// the canonical class supplied as a linear combination of the basis
    /// and appended under the label `K`.
    pub fn from_basis(
        labels: Vec<String>,
        gram: Vec<Vec<Rat>>,
        canonical_combo: &[(&str, Rat)],
    ) -> Result<Self, LatticeError> {
        let n = labels.len();
        {
            let mut seen = std::collections::BTreeSet::new();
            for l in &labels {
                if !seen.insert(l.clone()) {
                    return Err(LatticeError::DuplicateLabel(l.clone()));
                }
            }
        }
        if gram.len() != n || gram.iter().any(|r| r.len() != n) {
            return Err(LatticeError::Schema(format!(
                "pairing must be a {n} x {n} matrix"
            )));
        }
        for i in 0..n {
            for j in 0..n {
                if gram[i][j] != gram[j][i] {
                    return Err(LatticeError::Schema(format!(
                        "pairing is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        let mut lat = IntersectionLattice {
            labels,
            gram,
            canonical: String::new(),
            curves: BTreeMap::new(),
        };
        lat.add_class("K", canonical_combo)?;
        lat.canonical = "K".into();
        Ok(lat)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn canonical_label(&self) -> &str {
        &self.canonical
    }

    pub fn curves(&self) -> &BTreeMap<String, CurveMeta> {
        &self.curves
    }

    pub fn index_of(&self, label: &str) -> Result<usize, LatticeError> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| LatticeError::UnknownLabel(label.to_string()))
    }

    /// Pairing of two labeled classes.
    pub fn pair(&self, a: &str, b: &str) -> Result<Rat, LatticeError> {
        Ok(self.gram[self.index_of(a)?][self.index_of(b)?].clone())
    }

    /// `K . X` for a labeled class.
    pub fn k_dot(&self, label: &str) -> Result<Rat, LatticeError> {
        let k = self.canonical.clone();
        self.pair(&k, label)
    }

    pub fn k_squared(&self) -> Rat {
        let k = self
            .index_of(&self.canonical)
            .expect("canonical label exists");
        self.gram[k][k].clone()
    }

    /// Resolves a (label, coefficient) list into a `DivisorClass`.
    pub fn combo(&self, parts: &[(&str, Rat)]) -> Result<DivisorClass, LatticeError> {
        let mut coefficients = vec![Rat::zero(); self.labels.len()];
        for (label, c) in parts {
            coefficients[self.index_of(label)?] += c;
        }
        Ok(DivisorClass { coefficients })
    }

    /// Pairing of two coefficient vectors through the gram matrix.
    pub fn pair_classes(&self, a: &DivisorClass, b: &DivisorClass) -> Rat {
        let mut acc = Rat::zero();
        for (i, ca) in a.coefficients.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (j, cb) in b.coefficients.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                acc += ca * cb * &self.gram[i][j];
            }
        }
        acc
    }

    /// Adds a derived class as a linear combination of existing classes.
    pub fn add_class(&mut self, label: &str, parts: &[(&str, Rat)]) -> Result<(), LatticeError> {
        if self.labels.iter().any(|l| l == label) {
            return Err(LatticeError::DuplicateLabel(label.to_string()));
        }
        let combo = self.combo(parts)?;
        let n = self.labels.len();
        let mut row: Vec<Rat> = (0..n)
            .map(|j| {
                combo
                    .coefficients
                    .iter()
                    .enumerate()
                    .map(|(i, c)| c * &self.gram[i][j])
                    .sum()
            })
            .collect();
        let self_pairing = self.pair_classes(&combo, &combo);
        row.push(self_pairing);
        for (j, r) in self.gram.iter_mut().enumerate() {
            r.push(row[j].clone());
        }
        self.labels.push(label.to_string());
        self.gram.push(row);
        Ok(())
    }

    /// Adjoins a block of new classes orthogonal to everything already in
    /// the lattice, paired among themselves by `block`. This models adding
    /// a configuration disjoint from all listed classes.
    pub fn adjoin_orthogonal_block(
        &mut self,
        labels: &[&str],
        block: &[Vec<Rat>],
    ) -> Result<(), LatticeError> {
        let m = labels.len();
        if block.len() != m || block.iter().any(|r| r.len() != m) {
            return Err(LatticeError::Schema(format!(
                "block must be a {m} x {m} matrix"
            )));
        }
        for label in labels {
            if self.labels.iter().any(|l| l == label) {
                return Err(LatticeError::DuplicateLabel(label.to_string()));
            }
        }
        let n = self.labels.len();
        for r in self.gram.iter_mut() {
            r.resize(n + m, Rat::zero());
        }
        for (a, label) in labels.iter().enumerate() {
            self.labels.push(label.to_string());
            let mut row = vec![Rat::zero(); n];
            row.extend(block[a].iter().cloned());
            self.gram.push(row);
        }
        Ok(())
    }

    /// Flags a class as an irreducible curve of the given genus, enforcing
    /// adjunction `K . C = 2g - 2 - C^2` exactly.
    pub fn mark_curve(&mut self, label: &str, genus: u32) -> Result<(), LatticeError> {
        let i = self.index_of(label)?;
        let k_dot_c = self.k_dot(label)?;
        let expected = int(2 * genus as i64 - 2) - &self.gram[i][i];
        if k_dot_c != expected {
            return Err(LatticeError::AdjunctionViolated {
                label: label.to_string(),
                k_dot_c: k_dot_c.to_string(),
                expected: expected.to_string(),
            });
        }
        self.curves.insert(label.to_string(), CurveMeta { genus });
        Ok(())
    }

    pub fn clear_curve(&mut self, label: &str) {
        self.curves.remove(label);
    }

    /// Checks adjunction for every flagged curve.
    pub fn validate_curves(&self) -> Result<(), LatticeError> {
        for (label, meta) in self.curves.clone() {
            let mut probe = self.clone();
            probe.curves.clear();
            probe.mark_curve(&label, meta.genus)?;
        }
        Ok(())
    }

    /// Blows up a point: a fresh exceptional class `label` with square -1,
    /// orthogonal to every pullback, is appended and the canonical class
    /// becomes `K + E`. Existing labels now denote total pullbacks.
    pub fn blowup(&self, label: &str) -> Result<Self, LatticeError> {
        if self.labels.iter().any(|l| l == label) {
            return Err(LatticeError::DuplicateLabel(label.to_string()));
        }
        let mut lat = self.clone();
        let n = lat.labels.len();
        for r in lat.gram.iter_mut() {
            r.push(Rat::zero());
        }
        lat.labels.push(label.to_string());
        let mut row = vec![Rat::zero(); n + 1];
        row[n] = int(-1);
        lat.gram.push(row);
        // K -> K + E: only the pairings against E and K itself change
        let k = lat.index_of(&lat.canonical.clone())?;
        lat.gram[k][n] = int(-1);
        lat.gram[n][k] = int(-1);
        let k_sq = lat.gram[k][k].clone() - int(1);
        lat.gram[k][k] = k_sq;
        lat.mark_curve(label, 0)
            .expect("an exceptional curve satisfies adjunction");
        Ok(lat)
    }

    /// Strict transform `new = old - m E` through a point of multiplicity `m`
    /// on the blowup with exceptional class `exceptional`.
    pub fn strict_transform(
        &mut self,
        new_label: &str,
        class: &str,
        multiplicity: i64,
        exceptional: &str,
    ) -> Result<(), LatticeError> {
        self.add_class(
            new_label,
            &[(class, int(1)), (exceptional, int(-multiplicity))],
        )
    }

    /// The numerical double cover branched in `|2L|`: all pairings double
    /// (labels now denote pullbacks) and the canonical class becomes the
    /// pullback of `K + L`.
    ///
    /// Curve flags are dropped: the genus of a pullback is not a lattice
    /// quantity and must be re-supplied by the caller.
    pub fn double_cover(&self, half_branch: &DivisorClass) -> Self {
        let n = self.labels.len();
        assert_eq!(half_branch.coefficients.len(), n, "class vector length");
        let mut gram: Vec<Vec<Rat>> = self
            .gram
            .iter()
            .map(|r| r.iter().map(|e| e * int(2)).collect())
            .collect();
        // K_new = pullback(K + L); compute its pairings from a snapshot
        let k = self
            .index_of(&self.canonical)
            .expect("canonical label exists");
        let mut combo = half_branch.coefficients.clone();
        combo[k] += int(1);
        let new_row: Vec<Rat> = (0..n)
            .map(|j| combo.iter().enumerate().map(|(i, c)| c * &gram[i][j]).sum())
            .collect();
        let new_self: Rat = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| &combo[i] * &combo[j] * &gram[i][j])
                    .sum::<Rat>()
            })
            .sum();
        for j in 0..n {
            gram[k][j] = new_row[j].clone();
            gram[j][k] = new_row[j].clone();
        }
        gram[k][k] = new_self;
        IntersectionLattice {
            labels: self.labels.clone(),
            gram,
            canonical: self.canonical.clone(),
            curves: BTreeMap::new(),
        }
    }

    /// The pairing restricted to a list of labels, as a symmetric matrix.
    pub fn gram_of(&self, labels: &[String]) -> Result<SymMatrix, LatticeError> {
        let idx: Vec<usize> = labels
            .iter()
            .map(|l| self.index_of(l))
            .collect::<Result<_, _>>()?;
        Ok(SymMatrix::from_fn(idx.len(), |i, j| {
            self.gram[idx[i]][idx[j]].clone()
        }))
    }
}

/// Sections of `a Delta0 + b Gamma` on the Hirzebruch surface of degree `d`:
/// `h^0 = sum over k = 0..=a of max(0, b - k d + 1)`, and 0 for `a < 0`.
pub fn h0_hirzebruch(d: i64, a: i64, b: i64) -> u64 {
    if a < 0 {
        return 0;
    }
    let mut total = 0u64;
    for k in 0..=a {
        let t = b - k * d + 1;
        if t > 0 {
            total += t as u64;
        }
    }
    total
}

// --- file format ---

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLattice {
    classes: Vec<String>,
    pairing: Vec<Vec<String>>,
    canonical: String,
    #[serde(default)]
    curves: BTreeMap<String, RawCurveMeta>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCurveMeta {
    genus: u32,
}

/// Parses the JSON lattice format with `"p/q"` rational entries.
pub fn parse(text: &str) -> Result<IntersectionLattice, LatticeError> {
    let raw: RawLattice = serde_json::from_str(text).map_err(|e| {
        LatticeError::Schema(format!("{e} (line {}, column {})", e.line(), e.column()))
    })?;
    let n = raw.classes.len();
    {
        let mut seen = std::collections::BTreeSet::new();
        for l in &raw.classes {
            if !seen.insert(l) {
                return Err(LatticeError::DuplicateLabel(l.clone()));
            }
        }
    }
    if raw.pairing.len() != n || raw.pairing.iter().any(|r| r.len() != n) {
        return Err(LatticeError::Schema(format!(
            "pairing must be a {n} x {n} matrix"
        )));
    }
    let mut gram = vec![vec![Rat::zero(); n]; n];
    for (i, row) in raw.pairing.iter().enumerate() {
        for (j, s) in row.iter().enumerate() {
            gram[i][j] = parse_rat(s)
                .ok_or_else(|| LatticeError::Schema(format!("bad rational {s:?} at ({i}, {j})")))?;
        }
    }
    for i in 0..n {
        for j in 0..n {
            if gram[i][j] != gram[j][i] {
                return Err(LatticeError::Schema(format!(
                    "pairing is not symmetric at ({i}, {j})"
                )));
            }
        }
    }
    let mut lat = IntersectionLattice {
        labels: raw.classes,
        gram,
        canonical: raw.canonical.clone(),
        curves: BTreeMap::new(),
    };
    lat.index_of(&raw.canonical)?;
    for (label, meta) in raw.curves {
        lat.mark_curve(&label, meta.genus)?;
    }
    Ok(lat)
}

/// Serializes to the canonical JSON form.
pub fn serialize(lat: &IntersectionLattice) -> String {
    let raw = RawLattice {
        classes: lat.labels.clone(),
        pairing: lat
            .gram
            .iter()
            .map(|r| r.iter().map(|e| e.to_string()).collect())
            .collect(),
        canonical: lat.canonical.clone(),
        curves: lat
            .curves
            .iter()
            .map(|(l, m)| (l.clone(), RawCurveMeta { genus: m.genus }))
            .collect(),
    };
    serde_json::to_string_pretty(&raw).expect("lattice serialization cannot fail")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn hirzebruch_examples() {
        let lat = IntersectionLattice::hirzebruch(2);
        assert_eq!(lat.k_dot("Delta0").unwrap(), int(0));
        assert_eq!(lat.k_squared(), int(8));
        let lat = IntersectionLattice::hirzebruch(0);
        assert_eq!(lat.pair("Delta0", "Delta0").unwrap(), int(0));
        assert_eq!(lat.k_squared(), int(8));
        lat.validate_curves().unwrap();
    }

    #[test]
    fn plane_examples() {
        let lat = IntersectionLattice::projective_plane();
        assert_eq!(lat.k_dot("l").unwrap(), int(-3));
        assert_eq!(lat.k_squared(), int(9));
        // B = 8l pairs with a line in 8 points
        let b = lat.combo(&[("l", int(8))]).unwrap();
        let l = lat.combo(&[("l", int(1))]).unwrap();
        assert_eq!(lat.pair_classes(&b, &l), int(8));
    }

    #[test]
    fn blowup_laws() {
        let lat = IntersectionLattice::hirzebruch(3);
        let up = lat.blowup("E").unwrap();
        assert_eq!(up.k_squared(), int(7));
        assert_eq!(up.pair("E", "E").unwrap(), int(-1));
        assert_eq!(up.pair("E", "Delta0").unwrap(), int(0));
        assert_eq!(up.pair("E", "Gamma").unwrap(), int(0));
        assert_eq!(up.k_dot("E").unwrap(), int(-1));
        // pullbacks pair as before
        assert_eq!(up.pair("Delta0", "Gamma").unwrap(), int(1));
        assert_eq!(up.k_dot("Delta0").unwrap(), lat.k_dot("Delta0").unwrap());
        up.validate_curves().unwrap();
    }

    #[test]
    fn strict_transform_squares() {
        // a section of square -n through one blowup drops to -n-1;
        // a (-2)-curve through the same point drops to -3 and detaches
        let mut lat = IntersectionLattice::hirzebruch(2).blowup("E").unwrap();
        lat.strict_transform("D0bar", "Delta0", 1, "E").unwrap();
        assert_eq!(lat.pair("D0bar", "D0bar").unwrap(), int(-3));
        assert_eq!(lat.pair("D0bar", "E").unwrap(), int(1));
    }

    #[test]
    fn double_cover_laws() {
        // double cover of the Hirzebruch surface of degree 2 branched in
        // |2L| with L = 3 Delta0 + 5 Gamma: K^2 becomes 0
        let base = IntersectionLattice::hirzebruch(2);
        let l = base
            .combo(&[("Delta0", int(3)), ("Gamma", int(5))])
            .unwrap();
        let cover = base.double_cover(&l);
        assert_eq!(cover.k_squared(), int(0));
        // pullback pairings double
        assert_eq!(cover.pair("Delta0", "Gamma").unwrap(), int(2));
        assert_eq!(cover.pair("Delta0", "Delta0").unwrap(), int(-4));
        // K_X = pullback(Delta0 + Gamma)
        let kd = cover.pair("Delta0", "K").unwrap();
        assert_eq!(kd, int(2) * (int(-2) + int(1)));

        // the plane with L = 4l: K_X^2 = 2
        let p2 = IntersectionLattice::projective_plane();
        let l = p2.combo(&[("l", int(4))]).unwrap();
        assert_eq!(p2.double_cover(&l).k_squared(), int(2));
    }

    #[test]
    fn double_cover_general_hirzebruch() {
        // L = 3 Delta0 + ((N+3+3d)/2) Gamma gives K_X^2 = 2N - 2
        for (d, n) in [(0i64, 3i64), (0, 5), (1, 4), (2, 5), (3, 8)] {
            let base = IntersectionLattice::hirzebruch(d as u32);
            let l = base
                .combo(&[("Delta0", int(3)), ("Gamma", rat(n + 3 + 3 * d, 2))])
                .unwrap();
            let cover = base.double_cover(&l);
            assert_eq!(cover.k_squared(), int(2 * n - 2), "d={d}, N={n}");
        }
    }

    #[test]
    fn adjunction_is_enforced() {
        let mut lat = IntersectionLattice::hirzebruch(2);
        // Gamma has genus 0, not 1
        assert!(matches!(
            lat.mark_curve("Gamma", 1),
            Err(LatticeError::AdjunctionViolated { .. })
        ));
    }

    #[test]
    fn h0_examples() {
        // dim |4 Delta0 + 4N Gamma| on the degree-(N-1) surface is 10N + 14
        for n in 3..=12i64 {
            assert_eq!(h0_hirzebruch(n - 1, 4, 4 * n), (10 * n + 15) as u64);
        }
        assert_eq!(h0_hirzebruch(5, 0, 0), 1);
        assert_eq!(h0_hirzebruch(2, 1, 0), 1);
        assert_eq!(h0_hirzebruch(2, -1, 10), 0);
    }

    #[test]
    fn h0_matches_monomial_count() {
        // independent oracle: lattice points (k, m), 0 <= k <= a,
        // 0 <= m <= b - k d
        for d in 0..=3i64 {
            for a in 0..=4i64 {
                for b in 0..=12i64 {
                    let mut count = 0u64;
                    for k in 0..=a {
                        let mut m = 0;
                        while m <= b - k * d {
                            count += 1;
                            m += 1;
                        }
                    }
                    assert_eq!(h0_hirzebruch(d, a, b), count, "d={d} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn file_round_trip() {
        let mut lat = IntersectionLattice::hirzebruch(2).blowup("E").unwrap();
        lat.strict_transform("Zbar", "Delta0", 1, "E").unwrap();
        lat.mark_curve("Zbar", 0).unwrap();
        let text = serialize(&lat);
        assert_eq!(parse(&text).unwrap(), lat);
    }

    #[test]
    fn file_errors() {
        assert!(matches!(
            parse("{\"classes\":[\"A\"],\"pairing\":[[\"x\"]],\"canonical\":\"A\"}"),
            Err(LatticeError::Schema(_))
        ));
        assert!(matches!(
            parse("{\"classes\":[\"A\"],\"pairing\":[[\"1\"],[\"2\"]],\"canonical\":\"A\"}"),
            Err(LatticeError::Schema(_))
        ));
        assert!(matches!(
            parse("{\"classes\":[\"A\"],\"pairing\":[[\"1\"]],\"canonical\":\"B\"}"),
            Err(LatticeError::UnknownLabel(_))
        ));
    }
}
