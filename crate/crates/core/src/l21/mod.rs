//! L(2,1)-labellings: representation, validation, hole/gap/multiplicity
//! analysis, classical bounds, greedy upper bounds, the exact solver and the
//! path-cover oracle.
//!
//! An L(2,1)-labelling assigns non-negative integers to vertices so that
//! adjacent vertices differ by at least two and vertices at distance two get
//! different labels. Labellings are normalised to minimum label 0; the span
//! is then the maximum label, and the lambda number of a graph is the least
//! achievable span.

mod holes;
mod pathcover;
mod solver;

pub use holes::{hole_lemma_check, optimal_labellings, HoleLemmaReport, Reading, ReadingReport};
pub use pathcover::{lambda_via_path_cover, lambda_via_path_cover_with};
pub use solver::{lambda_exact, lambda_exact_with, SolveBudget, DEFAULT_SOLVER_CAP};

use serde::{Deserialize, Serialize};

use crate::graph::{
    chromatic_number, clique_number, independence_number, Graph, DEFAULT_CHI_CAP,
    DEFAULT_OMEGA_CAP,
};
use crate::{Error, Result};

/// A total vertex labelling, normalised so the minimum label is 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Labelling {
    labels: Vec<u32>,
    span: u32,
}

impl Labelling {
    /// Normalises the minimum label to 0.
    pub fn new(mut labels: Vec<u32>) -> Labelling {
        let min = labels.iter().copied().min().unwrap_or(0);
        if min > 0 {
            for l in &mut labels {
                *l -= min;
            }
        }
        let span = labels.iter().copied().max().unwrap_or(0);
        Labelling { labels, span }
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn get(&self, v: usize) -> u32 {
        self.labels[v]
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn span(&self) -> u32 {
        self.span
    }

    /// `{"graph_vertices": n, "labels": [..], "span": s}`
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "graph_vertices": self.labels.len(),
            "labels": self.labels,
            "span": self.span,
        })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Labelling> {
        let n = value["graph_vertices"]
            .as_u64()
            .ok_or_else(|| Error::Parse("labelling JSON: missing graph_vertices".into()))?;
        let labels: Vec<u32> = serde_json::from_value(value["labels"].clone())
            .map_err(|e| Error::Parse(format!("labelling JSON: bad labels: {e}")))?;
        if labels.len() as u64 != n {
            return Err(Error::Parse(format!(
                "labelling JSON: {} labels for {} vertices",
                labels.len(),
                n
            )));
        }
        Ok(Labelling::new(labels))
    }
}

/// A single broken constraint.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    /// Adjacent vertices whose labels differ by less than two.
    AdjacentTooClose { u: usize, v: usize, fu: u32, fv: u32 },
    /// Vertices at distance two sharing a label.
    DistanceTwoEqual { u: usize, v: usize, label: u32 },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::AdjacentTooClose { u, v, fu, fv } => {
                write!(f, "adjacent {u} ({fu}) and {v} ({fv}) differ by less than 2")
            }
            Violation::DistanceTwoEqual { u, v, label } => {
                write!(f, "distance-two vertices {u} and {v} share label {label}")
            }
        }
    }
}

/// Check the two L(2,1) rules; an empty list means the labelling is valid.
pub fn validate(g: &Graph, f: &Labelling) -> Result<Vec<Violation>> {
    if f.len() != g.vertex_count() {
        return Err(Error::Unsupported(format!(
            "labelling covers {} vertices, graph has {}",
            f.len(),
            g.vertex_count()
        )));
    }
    let mut violations = Vec::new();
    for u in 0..g.vertex_count() {
        for v in g.neighbors(u) {
            if v > u && f.get(u).abs_diff(f.get(v)) < 2 {
                violations.push(Violation::AdjacentTooClose {
                    u,
                    v,
                    fu: f.get(u),
                    fv: f.get(v),
                });
            }
        }
    }
    // Equal labels are the only possible distance-two violations; group by
    // label and test each non-adjacent pair for a common neighbour.
    let mut by_label: std::collections::BTreeMap<u32, Vec<usize>> = Default::default();
    for v in 0..g.vertex_count() {
        by_label.entry(f.get(v)).or_default().push(v);
    }
    for (label, group) in by_label {
        for (i, &u) in group.iter().enumerate() {
            for &v in &group[i + 1..] {
                if !g.has_edge(u, v) && !g.row(u).is_disjoint(g.row(v)) {
                    violations.push(Violation::DistanceTwoEqual { u, v, label });
                }
            }
        }
    }
    Ok(violations)
}

/// Hole / multiplicity / gap analysis of a valid labelling.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HoleReport {
    /// Unused labels strictly inside the span.
    pub holes: Vec<u32>,
    /// Labels used at least twice.
    pub multiplicities: Vec<u32>,
    /// Holes flanked by uniquely-used labels whose witnesses are adjacent.
    pub gaps: Vec<u32>,
    pub hole_count: usize,
    pub gap_count: usize,
}

/// Compute the [`HoleReport`] of a labelling; the labelling must be valid.
pub fn analyze(g: &Graph, f: &Labelling) -> Result<HoleReport> {
    let violations = validate(g, f)?;
    if !violations.is_empty() {
        return Err(Error::InvalidLabelling(violations.len()));
    }
    Ok(hole_report_unchecked(g, f))
}

pub(crate) fn hole_report_unchecked(g: &Graph, f: &Labelling) -> HoleReport {
    let span = f.span() as usize;
    let mut count = vec![0usize; span + 1];
    let mut witness = vec![usize::MAX; span + 1];
    for v in 0..f.len() {
        let l = f.get(v) as usize;
        count[l] += 1;
        witness[l] = v;
    }
    let holes: Vec<u32> = (1..span)
        .filter(|&h| count[h] == 0)
        .map(|h| h as u32)
        .collect();
    let multiplicities: Vec<u32> = (0..=span)
        .filter(|&h| count[h] >= 2)
        .map(|h| h as u32)
        .collect();
    let gaps: Vec<u32> = holes
        .iter()
        .copied()
        .filter(|&h| {
            let h = h as usize;
            count[h - 1] == 1 && count[h + 1] == 1 && g.has_edge(witness[h - 1], witness[h + 1])
        })
        .collect();
    HoleReport {
        hole_count: holes.len(),
        gap_count: gaps.len(),
        holes,
        multiplicities,
        gaps,
    }
}

/// First-fit labelling over the given vertex order; always valid, span is an
/// upper bound for lambda.
pub fn greedy_upper(g: &Graph, order: &[usize]) -> Labelling {
    let d2 = g.distance_two_rows();
    let mut labels = vec![u32::MAX; g.vertex_count()];
    for &v in order {
        let mut forbidden = vec![false; 3 * g.vertex_count() + 3];
        for u in g.neighbors(v) {
            if labels[u] != u32::MAX {
                let l = labels[u] as usize;
                forbidden[l] = true;
                forbidden[l + 1] = true;
                if l > 0 {
                    forbidden[l - 1] = true;
                }
            }
        }
        for u in d2[v].ones() {
            if labels[u] != u32::MAX {
                forbidden[labels[u] as usize] = true;
            }
        }
        labels[v] = forbidden.iter().position(|&f| !f).unwrap() as u32;
    }
    Labelling::new(labels)
}

/// Descending-degree vertex order with vertex-id tie break.
pub fn degree_order(g: &Graph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.vertex_count()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    order
}

/// The classical bound ledger around the lambda number.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundLedger {
    /// `2*omega - 2` (a clique forces even spacing); absent if the clique
    /// routine refused.
    pub lower_clique: Option<u64>,
    /// Span of the first-fit labelling in descending-degree order.
    pub upper_greedy: u64,
    /// `Delta^2 + 2*Delta`.
    pub upper_degree: u64,
    /// `n + chi - 2`; absent if the chromatic routine refused.
    pub upper_order_chromatic: Option<u64>,
    /// `2n - alpha - 1`; absent if the independence routine refused.
    pub upper_order_independence: Option<u64>,
}

impl BoundLedger {
    pub fn best_upper(&self) -> u64 {
        let mut best = self.upper_greedy.min(self.upper_degree);
        if let Some(u) = self.upper_order_chromatic {
            best = best.min(u);
        }
        if let Some(u) = self.upper_order_independence {
            best = best.min(u);
        }
        best
    }

    pub fn lower(&self) -> u64 {
        self.lower_clique.unwrap_or(0)
    }
}

/// Caps for the exact subroutines feeding the ledger.
#[derive(Debug, Clone, Copy)]
pub struct BoundCaps {
    pub omega: usize,
    pub chi: usize,
}

impl Default for BoundCaps {
    fn default() -> Self {
        BoundCaps {
            omega: DEFAULT_OMEGA_CAP,
            chi: DEFAULT_CHI_CAP,
        }
    }
}

/// Evaluate all four classical bounds, omitting any whose exact subroutine
/// refuses its cap.
pub fn classical_bounds(g: &Graph, caps: BoundCaps) -> BoundLedger {
    let n = g.vertex_count() as u64;
    let delta = g.max_degree() as u64;
    let greedy = greedy_upper(g, &degree_order(g));
    BoundLedger {
        lower_clique: clique_number(g, caps.omega)
            .ok()
            .map(|w| (2 * u64::from(w)).saturating_sub(2)),
        upper_greedy: u64::from(greedy.span()),
        upper_degree: delta * delta + 2 * delta,
        upper_order_chromatic: chromatic_number(g, caps.chi)
            .ok()
            .map(|chi| n + u64::from(chi) - 2),
        upper_order_independence: independence_number(g, caps.omega)
            .ok()
            .map(|a| 2 * n - u64::from(a) - 1),
    }
}

/// How a lambda value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Exact,
    PathCover,
    Formula,
    Construction,
    Lift,
}

/// The result of a lambda computation: the value, a witness labelling, how
/// it was obtained, whether it is known optimal, and the bound ledger.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LambdaReport {
    pub lambda: u64,
    pub method: Method,
    pub optimal: bool,
    pub witness: Option<Labelling>,
    pub bounds: BoundLedger,
}

impl LambdaReport {
    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("report serialises");
        if let Some(w) = &self.witness {
            v["witness"] = w.to_json();
        }
        v
    }
}
