//! Closed form and constructive labelling for `Γ(Z_{p^n})`.
//!
//! The graph's vertices are `α p^i` with `1 <= i <= n-1` and `α` coprime to
//! `p`; two vertices are adjacent iff their valuations sum to at least `n`.
//! The levels with valuation at least `ceil(n/2)` (plus one extra level-`k`
//! vertex when `n` is odd) form a clique labelled on the even grid; the low
//! levels are independent and fill the odd slots before overflowing.

use super::layout::Layout;
use super::{Discrepancy, FamilyConstruction};
use crate::ring::{is_prime, RingSpec};
use crate::zdg::gamma_with_cap;
use crate::{Error, Result};

pub fn lambda_zpn(p: u64, n: u32) -> Result<u64> {
    if !is_prime(p) || n < 2 {
        return Err(Error::Parse(format!("lambda(Z_p^n) needs p prime, n >= 2; got p={p}, n={n}")));
    }
    Ok(if n == 2 {
        2 * p - 4
    } else {
        p.pow(n - 1) + p - 3
    })
}

/// p-adic valuation of a nonzero residue.
pub(crate) fn valuation(mut r: u64, p: u64) -> u32 {
    let mut v = 0;
    while r % p == 0 {
        r /= p;
        v += 1;
    }
    v
}

/// The proof's layer order over `(vertex, valuation)` pairs: clique levels
/// descending (with the extra level-k vertex when `n` is odd), then the
/// independent levels `1, 2, ..`, then the rest of level `k` for odd `n`.
pub(crate) fn layer_order(vertices: &[(usize, u32)], n: u32) -> Vec<usize> {
    let k = n / 2;
    let mut by_level: Vec<Vec<usize>> = vec![Vec::new(); n as usize];
    for &(v, lvl) in vertices {
        by_level[lvl as usize].push(v);
    }
    let mut order = Vec::with_capacity(vertices.len());
    if n % 2 == 0 {
        for lvl in (k..n).rev() {
            order.extend(&by_level[lvl as usize]);
        }
        for lvl in 1..k {
            order.extend(&by_level[lvl as usize]);
        }
    } else {
        for lvl in (k + 1..n).rev() {
            order.extend(&by_level[lvl as usize]);
        }
        // the extra clique vertex from level k
        if let Some(&first) = by_level[k as usize].first() {
            order.push(first);
        }
        for lvl in 1..k {
            order.extend(&by_level[lvl as usize]);
        }
        if k >= 1 {
            order.extend(by_level[k as usize].iter().skip(1));
        }
    }
    order
}

pub fn construct_zpn(p: u64, n: u32, vertex_cap: usize) -> Result<FamilyConstruction> {
    let formula = lambda_zpn(p, n)?;
    let spec = RingSpec::parse(&format!("Z{}", p.pow(n)))?;
    let (graph, _) = gamma_with_cap(&spec, vertex_cap)?;
    let vertices: Vec<(usize, u32)> = (0..graph.vertex_count())
        .map(|v| {
            let r: u64 = graph.label(v).parse().expect("residue label");
            (v, valuation(r, p))
        })
        .collect();
    let order = layer_order(&vertices, n);
    let mut layout = Layout::new(&graph);
    for v in order {
        layout.first_fit_from(v, 0);
    }
    let labelling = layout.into_labelling();
    let mut discrepancies = Vec::new();
    if u64::from(labelling.span()) != formula {
        discrepancies.push(Discrepancy::span(
            "zpn",
            format!("p={p},n={n}"),
            formula,
            labelling.span(),
        ));
    }
    Ok(FamilyConstruction {
        graph,
        labelling,
        formula,
        discrepancies,
    })
}
