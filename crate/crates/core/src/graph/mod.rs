//! Immutable simple-graph core.
//!
//! Adjacency is stored as one dense bitset row per vertex; all in-scope
//! graphs have well under 10^4..10^5 vertices. Vertex ids are `0..n` in
//! canonical construction order. Optional per-vertex annotations carry the
//! printable ring element and the partite class id.

mod exact;

pub use exact::{
    chromatic_number, clique_number, independence_number, path_cover_number, path_cover_witness,
    DEFAULT_CHI_CAP, DEFAULT_OMEGA_CAP, DEFAULT_PATH_COVER_CAP,
};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Graph diameter: finite, or infinite for disconnected graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Diameter {
    Finite(u32),
    Infinite,
}

impl Diameter {
    pub fn is_less_than(&self, bound: u32) -> bool {
        matches!(self, Diameter::Finite(d) if *d < bound)
    }
}

impl std::fmt::Display for Diameter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Diameter::Finite(d) => write!(f, "{d}"),
            Diameter::Infinite => write!(f, "infinite"),
        }
    }
}

/// An immutable undirected simple graph.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    n: usize,
    rows: Vec<FixedBitSet>,
    labels: Option<Vec<String>>,
    parts: Option<Vec<Option<usize>>>,
    ring: Option<String>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            rows: vec![FixedBitSet::with_capacity(n); n],
            labels: None,
            parts: None,
            ring: None,
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in (u + 1)..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 1..n {
            g.add_edge(u - 1, u);
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::path(n);
        if n >= 3 {
            g.add_edge(n - 1, 0);
        }
        g
    }

    /// Complete multipartite graph; classes occupy consecutive id ranges and
    /// are recorded as the partite annotation.
    pub fn complete_multipartite(sizes: &[usize]) -> Self {
        let n: usize = sizes.iter().sum();
        let mut g = Graph::empty(n);
        let mut class_of = Vec::with_capacity(n);
        for (c, &s) in sizes.iter().enumerate() {
            class_of.extend(std::iter::repeat(Some(c)).take(s));
        }
        for u in 0..n {
            for v in (u + 1)..n {
                if class_of[u] != class_of[v] {
                    g.add_edge(u, v);
                }
            }
        }
        g.parts = Some(class_of);
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    /// Erdos-Renyi graph from an explicit RNG; deterministic given the seed.
    pub fn random_gnp<R: rand::Rng>(n: usize, p: f64, rng: &mut R) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in (u + 1)..n {
                if rng.gen_bool(p) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "no self-loops");
        self.rows[u].insert(v);
        self.rows[v].insert(u);
    }

    pub(crate) fn set_labels(&mut self, labels: Vec<String>) {
        assert_eq!(labels.len(), self.n);
        self.labels = Some(labels);
    }

    pub(crate) fn set_parts(&mut self, parts: Vec<Option<usize>>) {
        assert_eq!(parts.len(), self.n);
        self.parts = Some(parts);
    }

    pub(crate) fn set_ring(&mut self, ring: String) {
        self.ring = Some(ring);
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones(..)).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones(..)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.rows[v].ones()
    }

    pub(crate) fn row(&self, v: usize) -> &FixedBitSet {
        &self.rows[v]
    }

    /// Edges listed once with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in self.rows[u].ones() {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn part(&self, v: usize) -> Option<usize> {
        self.parts.as_ref().and_then(|p| p[v])
    }

    pub fn ring(&self) -> Option<&str> {
        self.ring.as_deref()
    }

    /// Edge present iff absent in `self` (and `u != v`). Annotations are kept.
    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g.labels = self.labels.clone();
        g.parts = self.parts.clone();
        g
    }

    /// Subgraph induced by `keep` (ids are renumbered in the given order).
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut g = Graph::empty(keep.len());
        for (i, &u) in keep.iter().enumerate() {
            for (j, &v) in keep.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        if let Some(l) = &self.labels {
            g.labels = Some(keep.iter().map(|&u| l[u].clone()).collect());
        }
        g
    }

    /// BFS distances from `src`; `u32::MAX` marks unreachable vertices.
    pub fn bfs_distances(&self, src: usize) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.n];
        let mut visited = FixedBitSet::with_capacity(self.n);
        let mut frontier = FixedBitSet::with_capacity(self.n);
        visited.insert(src);
        frontier.insert(src);
        dist[src] = 0;
        let mut d = 0;
        while !frontier.is_clear() {
            d += 1;
            let mut next = FixedBitSet::with_capacity(self.n);
            for v in frontier.ones() {
                next.union_with(&self.rows[v]);
            }
            next.difference_with(&visited);
            for v in next.ones() {
                dist[v] = d;
            }
            visited.union_with(&next);
            frontier = next;
        }
        dist
    }

    /// All-pairs BFS distance table.
    pub fn distances(&self) -> Vec<Vec<u32>> {
        (0..self.n).map(|s| self.bfs_distances(s)).collect()
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        self.bfs_distances(0).iter().all(|&d| d != u32::MAX)
    }

    /// Max distance over connected pairs; `Infinite` if disconnected.
    pub fn diameter(&self) -> Diameter {
        if self.n == 0 {
            return Diameter::Finite(0);
        }
        let mut max = 0;
        for s in 0..self.n {
            for &d in &self.bfs_distances(s) {
                if d == u32::MAX {
                    return Diameter::Infinite;
                }
                max = max.max(d);
            }
        }
        Diameter::Finite(max)
    }

    /// Distance-2 relation as bitset rows: `d2[u]` holds `v` iff
    /// `dist(u, v) == 2`.
    pub(crate) fn distance_two_rows(&self) -> Vec<FixedBitSet> {
        (0..self.n)
            .map(|u| {
                let mut acc = FixedBitSet::with_capacity(self.n);
                for v in self.rows[u].ones() {
                    acc.union_with(&self.rows[v]);
                }
                acc.difference_with(&self.rows[u]);
                acc.set(u, false);
                acc
            })
            .collect()
    }

    /// True iff `map` is a bijection carrying edges of `self` exactly onto
    /// edges of `other`. This checks a *given* map; it is not isomorphism
    /// search.
    pub fn adjacency_preserved_under(&self, map: &[usize], other: &Graph) -> Result<bool> {
        if map.len() != self.n || other.n != self.n {
            return Err(Error::Unsupported(
                "adjacency check needs a bijection between equal vertex sets".into(),
            ));
        }
        let mut seen = vec![false; self.n];
        for &im in map {
            if im >= self.n || seen[im] {
                return Err(Error::Unsupported("map is not a bijection".into()));
            }
            seen[im] = true;
        }
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if self.has_edge(u, v) != other.has_edge(map[u], map[v]) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Graphviz DOT serialisation (undirected; labels from annotations).
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for v in 0..self.n {
            out.push_str(&format!("  {} [label=\"{}\"];\n", v, self.label(v)));
        }
        for (u, v) in self.edges() {
            out.push_str(&format!("  {u} -- {v};\n"));
        }
        out.push_str("}\n");
        out
    }

    /// Graph JSON per the external interface:
    /// `{"ring": .., "vertices": [{"id", "label", "part"}..], "edges": [[u,v]..]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let vertices: Vec<VertexJson> = (0..self.n)
            .map(|v| VertexJson {
                id: v,
                label: self.label(v),
                part: self.part(v),
            })
            .collect();
        serde_json::to_value(GraphJson {
            ring: self.ring.as_ref().cloned(),
            vertices,
            edges: self.edges(),
        })
        .expect("graph serialises")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Graph> {
        let parsed: GraphJson = serde_json::from_value(value.clone())
            .map_err(|e| Error::Parse(format!("bad graph JSON: {e}")))?;
        let n = parsed.vertices.len();
        for (i, v) in parsed.vertices.iter().enumerate() {
            if v.id != i {
                return Err(Error::Parse(format!(
                    "vertex ids must be 0..n in order, found {} at position {i}",
                    v.id
                )));
            }
        }
        let mut g = Graph::empty(n);
        for &(u, v) in &parsed.edges {
            if u >= n || v >= n || u == v {
                return Err(Error::Parse(format!("bad edge [{u},{v}]")));
            }
            g.add_edge(u, v);
        }
        g.labels = Some(parsed.vertices.iter().map(|v| v.label.clone()).collect());
        if parsed.vertices.iter().any(|v| v.part.is_some()) {
            g.parts = Some(parsed.vertices.iter().map(|v| v.part).collect());
        }
        g.ring = parsed.ring;
        Ok(g)
    }
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    ring: Option<String>,
    vertices: Vec<VertexJson>,
    edges: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct VertexJson {
    id: usize,
    label: String,
    part: Option<usize>,
}
