//! Dual graphs of exceptional curve configurations.
//!
//! Vertices are curves weighted by self-intersection and genus; edges carry
//! intersection multiplicities (a double edge models two curves meeting
//! twice, which is how the shortest cycles arise). Self-loops are excluded:
//! self-intersection lives on the vertex.

use crate::linalg::SymMatrix;
use crate::rat::int;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph file does not match the schema: {0}")]
    Schema(String),
    #[error("duplicate curve id {0:?}")]
    DuplicateId(String),
    #[error("edge endpoint {0:?} is not a declared curve")]
    UnknownVertex(String),
    #[error("self-loop on {0:?} (self-intersection belongs on the vertex)")]
    SelfLoop(String),
    #[error("edge multiplicity must be at least 1")]
    ZeroMultiplicity,
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph is empty")]
    Empty,
}

/// An exceptional curve: a vertex of the dual graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveVertex {
    pub id: String,
    pub self_intersection: i64,
    pub genus: u32,
}

impl CurveVertex {
    pub fn rational(id: impl Into<String>, self_intersection: i64) -> Self {
        CurveVertex {
            id: id.into(),
            self_intersection,
            genus: 0,
        }
    }
}

/// A weighted dual graph. Vertex order is preserved and defines the index
/// order of the intersection matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualGraph {
    vertices: Vec<CurveVertex>,
    /// keyed by (i, j) with i < j; value is the intersection multiplicity
    edges: BTreeMap<(usize, usize), u64>,
}

impl DualGraph {
    pub fn new(vertices: Vec<CurveVertex>) -> Result<Self, GraphError> {
        let mut seen = std::collections::BTreeSet::new();
        for v in &vertices {
            if !seen.insert(v.id.clone()) {
                return Err(GraphError::DuplicateId(v.id.clone()));
            }
        }
        Ok(DualGraph {
            vertices,
            edges: BTreeMap::new(),
        })
    }

    pub fn add_edge(&mut self, a: &str, b: &str, mult: u64) -> Result<(), GraphError> {
        if mult == 0 {
            return Err(GraphError::ZeroMultiplicity);
        }
        let i = self
            .index_of(a)
            .ok_or_else(|| GraphError::UnknownVertex(a.to_string()))?;
        let j = self
            .index_of(b)
            .ok_or_else(|| GraphError::UnknownVertex(b.to_string()))?;
        if i == j {
            return Err(GraphError::SelfLoop(a.to_string()));
        }
        let key = (i.min(j), i.max(j));
        *self.edges.entry(key).or_insert(0) += mult;
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[CurveVertex] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &CurveVertex {
        &self.vertices[i]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    /// Intersection number of vertices `i` and `j`: the self-intersection on
    /// the diagonal, the edge multiplicity (or 0) off it.
    pub fn pairing(&self, i: usize, j: usize) -> i64 {
        if i == j {
            self.vertices[i].self_intersection
        } else {
            let key = (i.min(j), i.max(j));
            self.edges.get(&key).map(|&m| m as i64).unwrap_or(0)
        }
    }

    pub fn intersection_matrix(&self) -> SymMatrix {
        SymMatrix::from_fn(self.len(), |i, j| int(self.pairing(i, j)))
    }

    /// Degree of a vertex counting edge multiplicities.
    pub fn degree(&self, i: usize) -> u64 {
        self.edges
            .iter()
            .filter(|(&(a, b), _)| a == i || b == i)
            .map(|(_, &m)| m)
            .sum()
    }

    /// Neighbors of `i` (each listed once, whatever the multiplicity).
    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        self.edges
            .keys()
            .filter_map(|&(a, b)| {
                if a == i {
                    Some(b)
                } else if b == i {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for w in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Connected components as index sets, in first-seen order.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(v) = stack.pop() {
                for w in self.neighbors(v) {
                    if !seen[w] {
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

    pub fn weights_of(&self, idx: &[usize]) -> Vec<i64> {
        idx.iter()
            .map(|&i| self.vertices[i].self_intersection)
            .collect()
    }

    /// The same graph with vertices in permuted order (`perm[k]` = old index
    /// placed at position `k`). Useful for relabeling-invariance checks.
    pub fn permuted(&self, perm: &[usize]) -> DualGraph {
        assert_eq!(perm.len(), self.len());
        let vertices = perm.iter().map(|&i| self.vertices[i].clone()).collect();
        let mut inv = vec![0usize; perm.len()];
        for (k, &i) in perm.iter().enumerate() {
            inv[i] = k;
        }
        let mut edges = BTreeMap::new();
        for (&(a, b), &m) in &self.edges {
            let (x, y) = (inv[a], inv[b]);
            edges.insert((x.min(y), x.max(y)), m);
        }
        DualGraph { vertices, edges }
    }

    // --- convenience constructors (ids E0, E1, ...) ---

    /// A path with the given self-intersections.
    pub fn string(weights: &[i64]) -> DualGraph {
        assert!(!weights.is_empty());
        let mut g = DualGraph::new(
            weights
                .iter()
                .enumerate()
                .map(|(k, &w)| CurveVertex::rational(format!("E{k}"), w))
                .collect(),
        )
        .unwrap();
        for k in 1..weights.len() {
            g.add_edge(&format!("E{}", k - 1), &format!("E{k}"), 1)
                .unwrap();
        }
        g
    }

    /// A cycle; two vertices meeting twice when `weights.len() == 2`.
    pub fn cycle(weights: &[i64]) -> DualGraph {
        assert!(weights.len() >= 2, "a cycle needs at least two curves");
        let mut g = DualGraph::string(weights);
        let last = format!("E{}", weights.len() - 1);
        g.add_edge(&last, "E0", 1).unwrap();
        g
    }

    /// A single curve.
    pub fn single(weight: i64, genus: u32) -> DualGraph {
        DualGraph::new(vec![CurveVertex {
            id: "E0".into(),
            self_intersection: weight,
            genus,
        }])
        .unwrap()
    }

    /// A fork: center `E0`, then each branch laid out fork-outward with
    /// sequential ids.
    pub fn fork(center: i64, branches: &[&[i64]]) -> DualGraph {
        let mut vertices = vec![CurveVertex::rational("E0", center)];
        let mut k = 1;
        let mut attach = Vec::new();
        for branch in branches {
            assert!(!branch.is_empty());
            let mut prev = "E0".to_string();
            for (pos, &w) in branch.iter().enumerate() {
                let id = format!("E{k}");
                k += 1;
                vertices.push(CurveVertex::rational(id.clone(), w));
                attach.push((prev.clone(), id.clone()));
                let _ = pos;
                prev = id;
            }
        }
        let mut g = DualGraph::new(vertices).unwrap();
        for (a, b) in attach {
            g.add_edge(&a, &b, 1).unwrap();
        }
        g
    }
}

/// Structural shape of a connected dual graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Shape {
    /// A path (possibly a single vertex), indices in path order.
    String(Vec<usize>),
    /// A closed chain, indices in cyclic order.
    Cycle(Vec<usize>),
    /// Exactly one degree-3 vertex; branches ordered fork-outward.
    SingleFork {
        center: usize,
        branches: [Vec<usize>; 3],
    },
    /// Two degree-3 vertices joined by a core path (or one degree-4 vertex,
    /// in which case the core is that single vertex). `side[0..2]` hang off
    /// the first core vertex, `side[2..4]` off the last.
    DoubleFork {
        core: Vec<usize>,
        side: [Vec<usize>; 4],
    },
    Other,
}

impl DualGraph {
    /// Classifies the graph shape. Fails on disconnected input.
    pub fn shape(&self) -> Result<Shape, GraphError> {
        if self.is_empty() {
            return Err(GraphError::Empty);
        }
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        let n = self.len();
        if n == 1 {
            return Ok(Shape::String(vec![0]));
        }
        let deg: Vec<u64> = (0..n).map(|i| self.degree(i)).collect();
        if deg.iter().all(|&d| d == 2) {
            return Ok(Shape::Cycle(self.walk_cycle()));
        }
        // anything beyond a single cycle must be a tree to match a pattern
        let simple = self.edges.values().all(|&m| m == 1);
        let tree = simple && self.edges.len() == n - 1;
        if !tree {
            return Ok(Shape::Other);
        }
        let forks: Vec<usize> = (0..n).filter(|&i| deg[i] == 3).collect();
        let quads: Vec<usize> = (0..n).filter(|&i| deg[i] == 4).collect();
        if deg.iter().any(|&d| d > 4) || quads.len() > 1 || (!quads.is_empty() && !forks.is_empty())
        {
            return Ok(Shape::Other);
        }
        if let [v] = quads[..] {
            let mut side = self
                .neighbors(v)
                .into_iter()
                .map(|u| self.walk_branch(v, u))
                .collect::<Vec<_>>();
            side.sort();
            let side: [Vec<usize>; 4] = side.try_into().unwrap();
            return Ok(Shape::DoubleFork {
                core: vec![v],
                side,
            });
        }
        match forks[..] {
            [] => Ok(Shape::String(self.walk_path())),
            [center] => {
                let mut branches = self
                    .neighbors(center)
                    .into_iter()
                    .map(|u| self.walk_branch(center, u))
                    .collect::<Vec<_>>();
                branches.sort();
                Ok(Shape::SingleFork {
                    center,
                    branches: branches.try_into().unwrap(),
                })
            }
            [a, b] => {
                let core = self.path_between(a, b);
                let mut side = Vec::new();
                for (end, toward) in [(a, core[1]), (b, core[core.len() - 2])] {
                    let mut pair = self
                        .neighbors(end)
                        .into_iter()
                        .filter(|&u| u != toward)
                        .map(|u| self.walk_branch(end, u))
                        .collect::<Vec<_>>();
                    if pair.len() != 2 {
                        return Ok(Shape::Other);
                    }
                    pair.sort();
                    side.extend(pair);
                }
                Ok(Shape::DoubleFork {
                    core,
                    side: side.try_into().unwrap(),
                })
            }
            _ => Ok(Shape::Other),
        }
    }

    fn walk_cycle(&self) -> Vec<usize> {
        let n = self.len();
        if n == 2 {
            return vec![0, 1];
        }
        let mut order = vec![0usize];
        let mut prev = 0usize;
        let mut cur = *self.neighbors(0).iter().min().unwrap();
        while cur != 0 {
            order.push(cur);
            let next = self
                .neighbors(cur)
                .into_iter()
                .find(|&w| w != prev)
                .expect("degree-2 vertex in a cycle");
            prev = cur;
            cur = next;
        }
        debug_assert_eq!(order.len(), n);
        order
    }

    fn walk_path(&self) -> Vec<usize> {
        let start = (0..self.len())
            .find(|&i| self.degree(i) <= 1)
            .expect("a path has an endpoint");
        let mut order = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        while let Some(next) = self.neighbors(cur).into_iter().find(|&w| w != prev) {
            order.push(next);
            prev = cur;
            cur = next;
        }
        order
    }

    /// Walks from `from` into `first` until the path ends; returns the branch
    /// excluding `from`, ordered outward.
    fn walk_branch(&self, from: usize, first: usize) -> Vec<usize> {
        let mut order = vec![first];
        let mut prev = from;
        let mut cur = first;
        while self.degree(cur) == 2 {
            let next = self
                .neighbors(cur)
                .into_iter()
                .find(|&w| w != prev)
                .expect("degree-2 vertex continues the branch");
            order.push(next);
            prev = cur;
            cur = next;
        }
        order
    }

    /// Unique tree path between `a` and `b`, inclusive.
    fn path_between(&self, a: usize, b: usize) -> Vec<usize> {
        let mut parent = vec![usize::MAX; self.len()];
        let mut stack = vec![a];
        let mut seen = vec![false; self.len()];
        seen[a] = true;
        while let Some(v) = stack.pop() {
            for w in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = v;
                    stack.push(w);
                }
            }
        }
        let mut path = vec![b];
        let mut cur = b;
        while cur != a {
            cur = parent[cur];
            path.push(cur);
        }
        path.reverse();
        path
    }
}

// --- file format ---

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGraph {
    curves: Vec<RawCurve>,
    #[serde(default)]
    edges: Vec<RawEdge>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCurve {
    id: String,
    #[serde(rename = "self")]
    self_intersection: i64,
    #[serde(default, skip_serializing_if = "genus_is_zero")]
    genus: u32,
}

fn genus_is_zero(g: &u32) -> bool {
    *g == 0
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RawEdge {
    Plain([String; 2]),
    WithMult(String, String, u64),
}

/// Parses the JSON graph format:
/// `{"curves":[{"id":str,"self":int,"genus":int?},...],"edges":[[a,b,mult?],...]}`
/// with `genus` defaulting to 0 and `mult` to 1.
pub fn parse(text: &str) -> Result<DualGraph, GraphError> {
    let raw: RawGraph = serde_json::from_str(text).map_err(|e| {
        GraphError::Schema(format!("{e} (line {}, column {})", e.line(), e.column()))
    })?;
    let vertices = raw
        .curves
        .into_iter()
        .map(|c| CurveVertex {
            id: c.id,
            self_intersection: c.self_intersection,
            genus: c.genus,
        })
        .collect();
    let mut g = DualGraph::new(vertices)?;
    for e in raw.edges {
        let (a, b, m) = match e {
            RawEdge::Plain([a, b]) => (a, b, 1),
            RawEdge::WithMult(a, b, m) => (a, b, m),
        };
        g.add_edge(&a, &b, m)?;
    }
    Ok(g)
}

/// Serializes to the canonical JSON form: vertex order preserved, edges
/// sorted by index pair, defaults omitted.
pub fn serialize(g: &DualGraph) -> String {
    let raw = RawGraph {
        curves: g
            .vertices
            .iter()
            .map(|v| RawCurve {
                id: v.id.clone(),
                self_intersection: v.self_intersection,
                genus: v.genus,
            })
            .collect(),
        edges: g
            .edges
            .iter()
            .map(|(&(i, j), &m)| {
                let a = g.vertices[i].id.clone();
                let b = g.vertices[j].id.clone();
                if m == 1 {
                    RawEdge::Plain([a, b])
                } else {
                    RawEdge::WithMult(a, b, m)
                }
            })
            .collect(),
    };
    serde_json::to_string_pretty(&raw).expect("graph serialization cannot fail")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::int;

    #[test]
    fn intersection_matrix_examples() {
        let g = DualGraph::string(&[-2, -2]);
        let m = g.intersection_matrix();
        assert_eq!(m.get(0, 0), &int(-2));
        assert_eq!(m.get(0, 1), &int(1));
        assert_eq!(m.get(1, 1), &int(-2));

        let g = DualGraph::single(-3, 0);
        assert_eq!(g.intersection_matrix().get(0, 0), &int(-3));

        let g = DualGraph::cycle(&[-2, -2, -2]);
        let m = g.intersection_matrix();
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { -2 } else { 1 };
                assert_eq!(m.get(i, j), &int(want), "({i},{j})");
            }
        }
    }

    #[test]
    fn shape_examples() {
        assert_eq!(
            DualGraph::string(&[-2, -2, -2, -2]).shape().unwrap(),
            Shape::String(vec![0, 1, 2, 3])
        );
        assert!(matches!(
            DualGraph::cycle(&[-2, -2, -2, -2, -3]).shape().unwrap(),
            Shape::Cycle(v) if v.len() == 5
        ));
        let fork = DualGraph::fork(-2, &[&[-2], &[-2], &[-3, -2]]);
        assert!(matches!(
            fork.shape().unwrap(),
            Shape::SingleFork { center: 0, .. }
        ));
    }

    #[test]
    fn shape_double_edge_cycle_and_double_fork() {
        let mut g = DualGraph::new(vec![
            CurveVertex::rational("E0", -2),
            CurveVertex::rational("E1", -3),
        ])
        .unwrap();
        g.add_edge("E0", "E1", 2).unwrap();
        assert_eq!(g.shape().unwrap(), Shape::Cycle(vec![0, 1]));

        // two forks joined by a 2-vertex core
        let mut g = DualGraph::new(
            ["c0", "c1", "p0", "p1", "p2", "p3"]
                .iter()
                .map(|id| CurveVertex::rational(*id, -2))
                .collect(),
        )
        .unwrap();
        g.add_edge("c0", "c1", 1).unwrap();
        for p in ["p0", "p1"] {
            g.add_edge("c0", p, 1).unwrap();
        }
        for p in ["p2", "p3"] {
            g.add_edge("c1", p, 1).unwrap();
        }
        match g.shape().unwrap() {
            Shape::DoubleFork { core, side } => {
                assert_eq!(core, vec![0, 1]);
                assert!(side.iter().all(|s| s.len() == 1));
            }
            s => panic!("expected double fork, got {s:?}"),
        }

        // degenerate core: one degree-4 vertex
        let mut g = DualGraph::new(
            ["c", "p0", "p1", "p2", "p3"]
                .iter()
                .map(|id| CurveVertex::rational(*id, -3))
                .collect(),
        )
        .unwrap();
        for p in ["p0", "p1", "p2", "p3"] {
            g.add_edge("c", p, 1).unwrap();
        }
        assert!(matches!(
            g.shape().unwrap(),
            Shape::DoubleFork { core, .. } if core == vec![0]
        ));
    }

    #[test]
    fn shape_disconnected_is_an_error() {
        let g = DualGraph::new(vec![
            CurveVertex::rational("E0", -2),
            CurveVertex::rational("E1", -2),
        ])
        .unwrap();
        assert_eq!(g.shape(), Err(GraphError::Disconnected));
    }

    #[test]
    fn parse_single_vertex() {
        let g = parse(r#"{"curves":[{"id":"E0","self":-3,"genus":0}],"edges":[]}"#).unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g.vertex(0).self_intersection, -3);
        assert_eq!(g.vertex(0).genus, 0);
    }

    #[test]
    fn parse_chain_with_minus_one_leader() {
        // the length-2 variant of the pendant chain behind a (-1)-curve:
        // (-1)-(-2)-(-3)-(-2), a 4-vertex string
        let text = r#"{
            "curves":[
                {"id":"E","self":-1},
                {"id":"E1","self":-2},
                {"id":"E2","self":-3},
                {"id":"E3","self":-2}
            ],
            "edges":[["E","E1"],["E1","E2"],["E2","E3"]]
        }"#;
        let g = parse(text).unwrap();
        assert_eq!(g.len(), 4);
        assert!(matches!(g.shape().unwrap(), Shape::String(v) if v == vec![0, 1, 2, 3]));
    }

    #[test]
    fn parse_errors() {
        // malformed edge endpoint
        let bad = r#"{"curves":[{"id":"E0","self":-3}],"edges":[["E0",5]]}"#;
        assert!(matches!(parse(bad), Err(GraphError::Schema(_))));
        // unknown endpoint
        let bad = r#"{"curves":[{"id":"E0","self":-3}],"edges":[["E0","EX"]]}"#;
        assert!(matches!(parse(bad), Err(GraphError::UnknownVertex(id)) if id == "EX"));
        // duplicate id
        let bad = r#"{"curves":[{"id":"E0","self":-3},{"id":"E0","self":-2}],"edges":[]}"#;
        assert!(matches!(parse(bad), Err(GraphError::DuplicateId(_))));
        // self-loop
        let bad = r#"{"curves":[{"id":"E0","self":-3}],"edges":[["E0","E0"]]}"#;
        assert!(matches!(parse(bad), Err(GraphError::SelfLoop(_))));
    }

    #[test]
    fn serialize_omits_defaults_and_round_trips() {
        let mut g = DualGraph::new(vec![
            CurveVertex {
                id: "Z".into(),
                self_intersection: -2,
                genus: 1,
            },
            CurveVertex::rational("C", -3),
        ])
        .unwrap();
        g.add_edge("Z", "C", 2).unwrap();
        let text = serialize(&g);
        assert!(text.contains("\"genus\": 1"));
        assert!(!text.contains("\"genus\": 0"));
        assert_eq!(parse(&text).unwrap(), g);
    }
}
