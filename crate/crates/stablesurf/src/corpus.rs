//! A curated corpus of dual graphs instantiating every pattern of the
//! log canonical taxonomy, with weights up to 6 and branches up to length 4.
//!
//! Every entry is contractible (negative definite) by construction; tests
//! and the verification suite cross-check the pattern classifier against
//! the discrepancy solver on all of them.

use crate::graph::{CurveVertex, DualGraph};

/// Which taxonomy pattern an entry instantiates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Cyclic,
    Dihedral,
    Tetrahedral,
    Octahedral,
    Icosahedral,
    SimpleElliptic,
    Cusp,
    Z2Quotient,
    Z3Quotient,
    Z4Quotient,
    Z6Quotient,
}

impl Family {
    pub fn is_log_terminal(self) -> bool {
        matches!(
            self,
            Family::Cyclic
                | Family::Dihedral
                | Family::Tetrahedral
                | Family::Octahedral
                | Family::Icosahedral
        )
    }
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub family: Family,
    pub graph: DualGraph,
}

/// Double fork: core string with four pendant (-2)-curves, two at each end
/// (all four on the single core vertex when the core has length one).
pub fn double_fork(core: &[i64]) -> DualGraph {
    assert!(!core.is_empty());
    let mut vertices: Vec<CurveVertex> = core
        .iter()
        .enumerate()
        .map(|(k, &w)| CurveVertex::rational(format!("E{k}"), w))
        .collect();
    for p in 0..4 {
        vertices.push(CurveVertex::rational(format!("P{p}"), -2));
    }
    let mut g = DualGraph::new(vertices).unwrap();
    for k in 1..core.len() {
        g.add_edge(&format!("E{}", k - 1), &format!("E{k}"), 1)
            .unwrap();
    }
    let last = format!("E{}", core.len() - 1);
    g.add_edge("E0", "P0", 1).unwrap();
    g.add_edge("E0", "P1", 1).unwrap();
    g.add_edge(&last, "P2", 1).unwrap();
    g.add_edge(&last, "P3", 1).unwrap();
    g
}

fn entry(name: impl Into<String>, family: Family, graph: DualGraph) -> CorpusEntry {
    CorpusEntry {
        name: name.into(),
        family,
        graph,
    }
}

/// The full corpus (more than sixty graphs).
pub fn taxonomy_corpus() -> Vec<CorpusEntry> {
    let mut out = Vec::new();

    // strings: cyclic quotients, the all-(-2) ones being the A_n points
    let strings: [&[i64]; 15] = [
        &[-2],
        &[-2, -2],
        &[-2, -2, -2],
        &[-2, -2, -2, -2],
        &[-3],
        &[-6],
        &[-2, -3],
        &[-3, -3],
        &[-2, -5],
        &[-4, -2],
        &[-2, -2, -6],
        &[-2, -3, -2],
        &[-3, -2, -4],
        &[-2, -3, -4, -5],
        &[-5, -2, -2, -3],
    ];
    for (k, w) in strings.iter().enumerate() {
        out.push(entry(
            format!("string-{k}"),
            Family::Cyclic,
            DualGraph::string(w),
        ));
    }

    // dihedral forks: two (-2) pendants plus a string
    let dihedral: [(i64, &[i64]); 8] = [
        (-2, &[-2]),
        (-2, &[-2, -2]),
        (-2, &[-3]),
        (-3, &[-2]),
        (-3, &[-3, -2]),
        (-4, &[-2, -5]),
        (-2, &[-2, -2, -2]),
        (-3, &[-6]),
    ];
    for (k, (center, rest)) in dihedral.iter().enumerate() {
        out.push(entry(
            format!("dihedral-{k}"),
            Family::Dihedral,
            DualGraph::fork(*center, &[&[-2], &[-2], rest]),
        ));
    }

    // spherical fork triples, branches drawn from the determinant table
    let det3: [&[i64]; 2] = [&[-3], &[-2, -2]];
    let det4: [&[i64]; 2] = [&[-4], &[-2, -2, -2]];
    let det5: [&[i64]; 3] = [&[-5], &[-2, -2, -2, -2], &[-2, -3]];
    for center in [-2i64, -3] {
        for (i, b2) in det3.iter().enumerate() {
            for (j, b3) in det3.iter().enumerate() {
                if j < i {
                    continue;
                }
                out.push(entry(
                    format!("tetrahedral-c{}-{i}{j}", -center),
                    Family::Tetrahedral,
                    DualGraph::fork(center, &[&[-2], b2, b3]),
                ));
            }
        }
        for (i, b2) in det3.iter().enumerate() {
            for (j, b3) in det4.iter().enumerate() {
                out.push(entry(
                    format!("octahedral-c{}-{i}{j}", -center),
                    Family::Octahedral,
                    DualGraph::fork(center, &[&[-2], b2, b3]),
                ));
            }
        }
        for (i, b2) in det3.iter().enumerate() {
            for (j, b3) in det5.iter().enumerate() {
                out.push(entry(
                    format!("icosahedral-c{}-{i}{j}", -center),
                    Family::Icosahedral,
                    DualGraph::fork(center, &[&[-2], b2, b3]),
                ));
            }
        }
    }

    // euclidean fork triples (quotients of a simple elliptic singularity);
    // the all-(-2) instances are affine diagrams and excluded
    let z3: [(i64, [&[i64]; 3]); 3] = [
        (-2, [&[-3], &[-3], &[-3]]),
        (-2, [&[-3], &[-3], &[-2, -2]]),
        (-3, [&[-2, -2], &[-2, -2], &[-2, -2]]),
    ];
    for (k, (c, bs)) in z3.iter().enumerate() {
        out.push(entry(
            format!("z3-{k}"),
            Family::Z3Quotient,
            DualGraph::fork(*c, &[bs[0], bs[1], bs[2]]),
        ));
    }
    let z4: [(i64, [&[i64]; 3]); 3] = [
        (-2, [&[-2], &[-4], &[-4]]),
        (-2, [&[-2], &[-4], &[-2, -2, -2]]),
        (-3, [&[-2], &[-2, -2, -2], &[-2, -2, -2]]),
    ];
    for (k, (c, bs)) in z4.iter().enumerate() {
        out.push(entry(
            format!("z4-{k}"),
            Family::Z4Quotient,
            DualGraph::fork(*c, &[bs[0], bs[1], bs[2]]),
        ));
    }
    let z6: [(i64, [&[i64]; 3]); 3] = [
        (-2, [&[-2], &[-3], &[-6]]),
        (-3, [&[-2], &[-2, -2], &[-2, -2, -2, -2, -2]]),
        (-2, [&[-2], &[-3], &[-2, -2, -2, -2, -2]]),
    ];
    for (k, (c, bs)) in z6.iter().enumerate() {
        out.push(entry(
            format!("z6-{k}"),
            Family::Z6Quotient,
            DualGraph::fork(*c, &[bs[0], bs[1], bs[2]]),
        ));
    }

    // simple elliptic: one genus-1 vertex
    for d in 1..=4i64 {
        out.push(entry(
            format!("elliptic-d{d}"),
            Family::SimpleElliptic,
            DualGraph::single(-d, 1),
        ));
    }

    // cusps: cycles with some weight at least 3, including the two-curve
    // cycles meeting twice
    let cusp_cycles: [&[i64]; 6] = [
        &[-2, -2, -3],
        &[-3, -3, -3],
        &[-2, -2, -2, -3],
        &[-2, -3, -2, -4],
        &[-2, -2, -2, -2, -6],
        &[-2, -3, -4, -2, -2],
    ];
    for (k, w) in cusp_cycles.iter().enumerate() {
        out.push(entry(
            format!("cusp-{k}"),
            Family::Cusp,
            DualGraph::cycle(w),
        ));
    }
    for (k, w) in [[-2i64, -3], [-3, -3]].iter().enumerate() {
        let mut g = DualGraph::new(vec![
            CurveVertex::rational("E0", w[0]),
            CurveVertex::rational("E1", w[1]),
        ])
        .unwrap();
        g.add_edge("E0", "E1", 2).unwrap();
        out.push(entry(format!("cusp-double-edge-{k}"), Family::Cusp, g));
    }

    // double forks: Z/2-quotients, some core weight at least 3
    let cores: [&[i64]; 6] = [
        &[-3],
        &[-4],
        &[-2, -3],
        &[-3, -3],
        &[-2, -2, -3],
        &[-2, -3, -2],
    ];
    for (k, core) in cores.iter().enumerate() {
        out.push(entry(
            format!("z2-{k}"),
            Family::Z2Quotient,
            double_fork(core),
        ));
    }

    out
}
