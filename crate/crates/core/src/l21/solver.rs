//! Exact lambda-number solver: iterative deepening over the span with a
//! forward-checking branch-and-bound feasibility search.
//!
//! Vertices are branched in descending-degree order (ties by id) and labels
//! are tried ascending, so the search is deterministic. The reported witness
//! comes from a final re-derivation pass in vertex-id order at the proven
//! optimum, which yields the lexicographically smallest optimal labelling.
//! Budget exhaustion is an explicit non-optimal result, never an error.

use super::{classical_bounds, degree_order, greedy_upper, BoundCaps, Labelling, LambdaReport, Method};
use crate::graph::Graph;
use crate::{Error, Result};

/// Default vertex cap for the exact solver.
pub const DEFAULT_SOLVER_CAP: usize = 24;

/// Search budget in branch nodes (label-assignment attempts). Node counting
/// makes budgeted runs deterministic, unlike wall-clock cutoffs.
#[derive(Debug, Clone, Copy)]
pub struct SolveBudget {
    pub max_nodes: u64,
}

impl Default for SolveBudget {
    fn default() -> Self {
        SolveBudget {
            max_nodes: 20_000_000,
        }
    }
}

impl SolveBudget {
    pub fn nodes(max_nodes: u64) -> Self {
        SolveBudget { max_nodes }
    }
}

struct Search {
    order: Vec<usize>,
    adj: Vec<Vec<usize>>,
    d2: Vec<Vec<usize>>,
    cand: Vec<u64>,
    labels: Vec<u32>,
    assigned: Vec<bool>,
    nodes_left: u64,
    exhausted: bool,
}

#[inline]
fn window(l: u32) -> u64 {
    // labels within distance 1 of l
    if l == 0 {
        0b11
    } else {
        0b111 << (l - 1)
    }
}

impl Search {
    fn new(g: &Graph, order: Vec<usize>, span: u32, budget: u64) -> Search {
        let n = g.vertex_count();
        let d2_rows = g.distance_two_rows();
        let allowed = if span >= 63 {
            u64::MAX
        } else {
            (1u64 << (span + 1)) - 1
        };
        Search {
            order,
            adj: (0..n).map(|v| g.neighbors(v).collect()).collect(),
            d2: d2_rows.iter().map(|r| r.ones().collect()).collect(),
            cand: vec![allowed; n],
            labels: vec![0; n],
            assigned: vec![false; n],
            nodes_left: budget,
            exhausted: false,
        }
    }

    fn assign(&mut self, v: usize, l: u32, trail: &mut Vec<(usize, u64)>) -> bool {
        let mut ok = true;
        for i in 0..self.adj[v].len() {
            let u = self.adj[v][i];
            if self.assigned[u] {
                continue;
            }
            let new = self.cand[u] & !window(l);
            if new != self.cand[u] {
                trail.push((u, self.cand[u]));
                self.cand[u] = new;
                if new == 0 {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            for i in 0..self.d2[v].len() {
                let u = self.d2[v][i];
                if self.assigned[u] {
                    continue;
                }
                let new = self.cand[u] & !(1u64 << l);
                if new != self.cand[u] {
                    trail.push((u, self.cand[u]));
                    self.cand[u] = new;
                    if new == 0 {
                        ok = false;
                        break;
                    }
                }
            }
        }
        ok
    }

    fn undo(&mut self, trail: &mut Vec<(usize, u64)>) {
        while let Some((u, old)) = trail.pop() {
            self.cand[u] = old;
        }
    }

    /// Depth-first search; `true` iff a complete assignment was found.
    fn dfs(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let v = self.order[depth];
        let mut options = self.cand[v];
        while options != 0 {
            let l = options.trailing_zeros();
            options &= options - 1;
            if self.nodes_left == 0 {
                self.exhausted = true;
                return false;
            }
            self.nodes_left -= 1;
            let mut trail = Vec::new();
            self.assigned[v] = true;
            self.labels[v] = l;
            if self.assign(v, l, &mut trail) && self.dfs(depth + 1) {
                return true;
            }
            self.assigned[v] = false;
            self.undo(&mut trail);
            if self.exhausted {
                return false;
            }
        }
        false
    }
}

enum Feasibility {
    Yes(Labelling),
    No,
    Exhausted,
}

fn feasible(
    g: &Graph,
    order: &[usize],
    span: u32,
    budget: u64,
    symmetry: bool,
) -> (Feasibility, u64) {
    let mut s = Search::new(g, order.to_vec(), span, budget);
    if symmetry && !order.is_empty() {
        // a solution can always be mirrored l -> span - l, so the first
        // branching vertex never needs a label above span/2
        let v0 = order[0];
        let keep = (1u64 << (span / 2 + 1)) - 1;
        s.cand[v0] &= keep;
    }
    let found = s.dfs(0);
    let used = budget - s.nodes_left;
    let outcome = if found {
        Feasibility::Yes(Labelling::new(s.labels))
    } else if s.exhausted {
        Feasibility::Exhausted
    } else {
        Feasibility::No
    };
    (outcome, used)
}

/// Exact lambda number with the default vertex cap and node budget.
pub fn lambda_exact(g: &Graph) -> Result<LambdaReport> {
    lambda_exact_with(g, DEFAULT_SOLVER_CAP, SolveBudget::default())
}

/// Exact lambda number; refuses graphs above `cap`. On budget exhaustion the
/// report carries the best known upper bound with `optimal = false`.
pub fn lambda_exact_with(g: &Graph, cap: usize, budget: SolveBudget) -> Result<LambdaReport> {
    let n = g.vertex_count();
    if n > cap.min(60) {
        return Err(Error::CapExceeded {
            what: "exact lambda solver",
            actual: n,
            cap: cap.min(60),
        });
    }
    let bounds = classical_bounds(g, BoundCaps::default());
    if n == 0 {
        return Ok(LambdaReport {
            lambda: 0,
            method: Method::Exact,
            optimal: true,
            witness: Some(Labelling::new(Vec::new())),
            bounds,
        });
    }
    if g.edge_count() == 0 {
        // isolated vertices only: the all-zero labelling is optimal
        return Ok(LambdaReport {
            lambda: 0,
            method: Method::Exact,
            optimal: true,
            witness: Some(Labelling::new(vec![0; n])),
            bounds,
        });
    }

    // incumbent: the better of first-fit and the always-valid even spacing
    let greedy = greedy_upper(g, &degree_order(g));
    let even_span = 2 * (n as u32) - 2;
    let mut incumbent = if greedy.span() <= even_span {
        greedy
    } else {
        Labelling::new((0..n as u32).map(|v| 2 * v).collect())
    };

    let delta = g.max_degree() as u64;
    let lower = bounds.lower().max(delta + 1);
    let order = degree_order(g);

    let mut spent = 0u64;
    let mut optimal = true;
    let mut s = lower as u32;
    while s < incumbent.span() {
        let remaining = budget.max_nodes.saturating_sub(spent);
        if remaining == 0 {
            optimal = false;
            break;
        }
        let (outcome, used) = feasible(g, &order, s, remaining, true);
        spent += used;
        match outcome {
            Feasibility::Yes(f) => {
                incumbent = f;
                break;
            }
            Feasibility::No => s += 1,
            Feasibility::Exhausted => {
                optimal = false;
                break;
            }
        }
    }

    let lambda = u64::from(incumbent.span());
    let witness = if optimal {
        // deterministic lexicographically-smallest optimal labelling
        let id_order: Vec<usize> = (0..n).collect();
        match feasible(g, &id_order, incumbent.span(), budget.max_nodes, false).0 {
            Feasibility::Yes(f) => f,
            _ => incumbent,
        }
    } else {
        incumbent
    };
    Ok(LambdaReport {
        lambda,
        method: Method::Exact,
        optimal,
        witness: Some(witness),
        bounds,
    })
}
