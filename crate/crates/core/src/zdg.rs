//! Zero-divisor graphs `Γ(R)`, Beck graphs `Γ'(R)`, the zero-pattern partite
//! structure, and the isolated-plus-dominating augmentation.

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::graph::Graph;
use crate::ring::{ElementClass, RingSpec, ZeroPattern};
use crate::{Error, Result};

/// Default cap on the vertex count of a constructed graph.
pub const DEFAULT_VERTEX_CAP: usize = 50_000;

/// Identity of one partite class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClassKey {
    /// All vertices sharing one zero pattern.
    Pattern(ZeroPattern),
    /// Singleton produced by splitting a non-independent pattern class.
    SplitSingleton { pattern: ZeroPattern, vertex: usize },
    /// Class of a partition not derived from a ring.
    Opaque(usize),
}

/// A partition of a graph's vertices into independent sets.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartiteStructure {
    classes: Vec<Vec<usize>>,
    keys: Vec<ClassKey>,
    /// True when some zero-pattern class failed independence and was split
    /// into singletons. No theorem is claimed for such structures.
    split_fallback: bool,
}

impl PartiteStructure {
    /// Build from explicit classes, validating that they are disjoint,
    /// cover every vertex, and are each independent in `g`.
    pub fn from_classes(g: &Graph, classes: Vec<Vec<usize>>) -> Result<Self> {
        let keys = (0..classes.len()).map(ClassKey::Opaque).collect();
        let s = PartiteStructure {
            classes,
            keys,
            split_fallback: false,
        };
        s.validate(g)?;
        Ok(s)
    }

    /// The natural partition of a complete multipartite graph built by
    /// [`Graph::complete_multipartite`].
    pub fn natural_parts(g: &Graph) -> Result<Self> {
        let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..g.vertex_count() {
            let c = g
                .part(v)
                .ok_or_else(|| Error::InvalidPartition("graph carries no part ids".into()))?;
            classes.entry(c).or_default().push(v);
        }
        Self::from_classes(g, classes.into_values().collect())
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        let n = g.vertex_count();
        let mut seen = vec![false; n];
        for class in &self.classes {
            if class.is_empty() {
                return Err(Error::InvalidPartition("empty class".into()));
            }
            for &v in class {
                if v >= n {
                    return Err(Error::InvalidPartition(format!("vertex {v} out of range")));
                }
                if seen[v] {
                    return Err(Error::InvalidPartition(format!("vertex {v} in two classes")));
                }
                seen[v] = true;
            }
            for (i, &u) in class.iter().enumerate() {
                for &v in &class[i + 1..] {
                    if g.has_edge(u, v) {
                        return Err(Error::InvalidPartition(format!(
                            "class is not independent: edge {u}-{v}"
                        )));
                    }
                }
            }
        }
        if !seen.iter().all(|&s| s) {
            return Err(Error::InvalidPartition("classes do not cover all vertices".into()));
        }
        Ok(())
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn keys(&self) -> &[ClassKey] {
        &self.keys
    }

    pub fn split_fallback(&self) -> bool {
        self.split_fallback
    }

    /// `class_of[v]` = index of the class containing `v`.
    pub fn class_of(&self, n: usize) -> Vec<usize> {
        let mut out = vec![usize::MAX; n];
        for (c, class) in self.classes.iter().enumerate() {
            for &v in class {
                out[v] = c;
            }
        }
        out
    }
}

fn vertex_rows(spec: &RingSpec, components: &[Vec<u64>]) -> Vec<FixedBitSet> {
    let n = components.len();
    (0..n)
        .into_par_iter()
        .map(|u| {
            let mut row = FixedBitSet::with_capacity(n);
            for v in 0..n {
                if v != u && spec.product_is_zero_unchecked(&components[u], &components[v]) {
                    row.insert(v);
                }
            }
            row
        })
        .collect()
}

fn assemble(spec: &RingSpec, elems: Vec<(Vec<u64>, String)>) -> Graph {
    let n = elems.len();
    let components: Vec<Vec<u64>> = elems.iter().map(|(c, _)| c.clone()).collect();
    let rows = vertex_rows(spec, &components);
    let mut g = Graph::empty(n);
    for (u, row) in rows.iter().enumerate() {
        for v in row.ones() {
            if v > u {
                g.add_edge(u, v);
            }
        }
    }
    g.set_labels(elems.into_iter().map(|(_, l)| l).collect());
    g.set_ring(spec.to_string());
    g
}

/// The zero-divisor graph `Γ(R)` with its zero-pattern partite structure.
///
/// Vertices are exactly the nonzero zero divisors in enumeration order;
/// `u ~ v` iff `uv = 0`. Two vertices share a partite class iff they have
/// the same zero pattern; a pattern class that fails independence (possible
/// only for non-reduced rings) is split into singletons and the structure is
/// flagged.
pub fn gamma(spec: &RingSpec) -> Result<(Graph, PartiteStructure)> {
    gamma_with_cap(spec, DEFAULT_VERTEX_CAP)
}

pub fn gamma_with_cap(spec: &RingSpec, cap: usize) -> Result<(Graph, PartiteStructure)> {
    let vcount = spec.zero_divisor_count();
    if vcount as usize > cap {
        return Err(Error::CapExceeded {
            what: "zero-divisor graph",
            actual: vcount as usize,
            cap,
        });
    }
    let mut elems = Vec::with_capacity(vcount as usize);
    let mut patterns = Vec::with_capacity(vcount as usize);
    for e in spec.enumerate_elements() {
        if spec.classify(&e)? == ElementClass::ZeroDivisor {
            patterns.push(ZeroPattern(spec.pattern_unchecked(&e.components)));
            elems.push((e.components.clone(), e.display()));
        }
    }
    let mut g = assemble(spec, elems);

    // group by pattern, classes ordered by first occurrence
    let mut order: Vec<ZeroPattern> = Vec::new();
    let mut by_pattern: BTreeMap<ZeroPattern, Vec<usize>> = BTreeMap::new();
    for (v, pat) in patterns.iter().enumerate() {
        if !by_pattern.contains_key(pat) {
            order.push(pat.clone());
        }
        by_pattern.entry(pat.clone()).or_default().push(v);
    }
    let mut classes = Vec::new();
    let mut keys = Vec::new();
    let mut split_fallback = false;
    for pat in order {
        let members = &by_pattern[&pat];
        let independent = members
            .iter()
            .enumerate()
            .all(|(i, &u)| members[i + 1..].iter().all(|&v| !g.has_edge(u, v)));
        if independent {
            classes.push(members.clone());
            keys.push(ClassKey::Pattern(pat));
        } else {
            split_fallback = true;
            for &v in members {
                classes.push(vec![v]);
                keys.push(ClassKey::SplitSingleton {
                    pattern: pat.clone(),
                    vertex: v,
                });
            }
        }
    }
    let parts = PartiteStructure {
        classes,
        keys,
        split_fallback,
    };
    let class_of = parts.class_of(g.vertex_count());
    g.set_parts(class_of.iter().map(|&c| Some(c)).collect());
    Ok((g, parts))
}

/// Beck's zero-divisor graph `Γ'(R)`: vertices are all ring elements,
/// `u ~ v` iff `uv = 0`; the zero element dominates.
pub fn gamma_beck(spec: &RingSpec) -> Result<Graph> {
    gamma_beck_with_cap(spec, DEFAULT_VERTEX_CAP)
}

pub fn gamma_beck_with_cap(spec: &RingSpec, cap: usize) -> Result<Graph> {
    let vcount = spec.order();
    if vcount as usize > cap {
        return Err(Error::CapExceeded {
            what: "Beck zero-divisor graph",
            actual: vcount as usize,
            cap,
        });
    }
    let elems: Vec<(Vec<u64>, String)> = spec
        .enumerate_elements()
        .map(|e| (e.components.clone(), e.display()))
        .collect();
    Ok(assemble(spec, elems))
}

/// `G_{m+1}`: the graph plus `m` isolated vertices plus one dominating
/// vertex adjacent to everything else. New vertices come after the original
/// ids: isolated ones first, the dominating vertex last.
pub fn add_isolated_and_dominating(g: &Graph, m: usize) -> Graph {
    let n = g.vertex_count();
    let total = n + m + 1;
    let mut out = Graph::empty(total);
    for (u, v) in g.edges() {
        out.add_edge(u, v);
    }
    let dom = total - 1;
    for v in 0..dom {
        out.add_edge(v, dom);
    }
    let mut labels: Vec<String> = (0..n).map(|v| g.label(v)).collect();
    labels.extend((0..m).map(|i| format!("iso{i}")));
    labels.push("dom".into());
    out.set_labels(labels);
    out
}
