//! Closed form and constructive labelling for `Γ(Z_{p^n} x Z_{q^m})`.
//!
//! The vertex set splits by zero pattern into the pure blocks `V_1, V_2`
//! (zero divisors paired with zero), the unit blocks `U_1, U_2`, the mixed
//! blocks `W_1, W_2` (unit paired with zero divisor) and the doubly-degenerate
//! block `W`, which is further split by valuations: the mutually-annihilating
//! rectangle `S_1` (a clique, taking one extra vertex per odd exponent), the
//! independent side blocks `S_2, S_3, S_4` and the distinguished subsets
//! `C_1` (top valuations, labelled first inside `S_1`) and `C_2` (valuation
//! (1,1), interleaving into the clique's label gaps).
//!
//! Blocks are labelled in the order `V_2, U_2, V_1, U_1, S_1 (C_1 first),
//! C_2, S_3, S_4 \ C_2, S_2, W_2, W_1`. `W_2` re-uses labels across
//! distance->=3 blocks; the number of re-used slots is driven by the span
//! target of the closed form, and every re-used slot is the smallest one the
//! spacing rules admit. The stated slot constant `q^m + q - 2` violates the
//! gap-two rule against the first block of `V_1` and is always recomputed;
//! the recomputation is recorded as a discrepancy.

use super::layout::Layout;
use super::zpn::{lambda_zpn, layer_order, valuation};
use super::{Discrepancy, FamilyConstruction};
use crate::ring::{is_prime, Factor, RingSpec};
use crate::zdg::gamma_with_cap;
use crate::{Error, Result};

/// Orient the two local factors so that `p^n <= q^m`.
pub fn orient_tensor(p: u64, n: u32, q: u64, m: u32) -> (u64, u32, u64, u32) {
    if p.pow(n) <= q.pow(m) {
        (p, n, q, m)
    } else {
        (q, m, p, n)
    }
}

/// Closed-form lambda for `Γ(Z_{p^n} x Z_{q^m})`, n, m >= 2.
pub fn lambda_zpn_zqm(p: u64, n: u32, q: u64, m: u32) -> Result<u64> {
    if !is_prime(p) || !is_prime(q) || n < 2 || m < 2 {
        return Err(Error::Parse(format!(
            "lambda(Z_p^n x Z_q^m) needs p, q prime and n, m >= 2; got ({p},{n},{q},{m})"
        )));
    }
    let (p, n, q, m) = orient_tensor(p, n, q, m);
    Ok(match (n, m) {
        (2, 2) => p * q * q + p * q - 5,
        (2, _) => p * q.pow(m) + p * q - 4,
        (_, 2) => p.pow(n - 1) * q * q + p * q - 4,
        _ => p.pow(n - 1) * q.pow(m) + p * q - 3,
    })
}

#[derive(Debug, Default)]
struct Blocks {
    v2: Vec<(usize, u32)>, // (vertex, valuation of the nonzero side)
    u2: Vec<usize>,
    v1: Vec<(usize, u32)>,
    u1: Vec<usize>,
    s1_c1: Vec<usize>,
    s1_rect: Vec<(usize, u32, u32)>, // rectangle minus C1, with (i, j)
    s1_extras: Vec<usize>,
    c2: Vec<usize>,
    s3: Vec<usize>,
    s4_rest: Vec<usize>,
    s2: Vec<usize>,
    w2: Vec<(usize, u32)>, // (vertex, i = valuation of the zero-divisor side)
    w1: Vec<(usize, u32)>,
}

pub fn construct_zpn_zqm(p: u64, n: u32, q: u64, m: u32, cap: usize) -> Result<FamilyConstruction> {
    let formula = lambda_zpn_zqm(p, n, q, m)?;
    let (p, n, q, m) = orient_tensor(p, n, q, m);
    let params = format!("p={p},n={n},q={q},m={m}");
    let spec = RingSpec::with_cap(
        vec![Factor::LocalZ { p, k: n }, Factor::LocalZ { p: q, k: m }],
        u64::MAX >> 1,
    )?;
    // canonical factor order need not match the orientation; locate the
    // p-side component index explicitly
    let idx_p = if (p, n) == (q, m) {
        0
    } else {
        spec.factors()
            .iter()
            .position(|f| *f == Factor::LocalZ { p, k: n })
            .expect("factor present")
    };
    let idx_q = 1 - idx_p;
    let (graph, _) = gamma_with_cap(&spec, cap)?;

    // recover the (a, b) components in the same enumeration order gamma used
    let elements: Vec<(u64, u64)> = spec
        .enumerate_elements()
        .filter(|e| {
            matches!(
                spec.classify(e).unwrap(),
                crate::ring::ElementClass::ZeroDivisor
            )
        })
        .map(|e| (e.components[idx_p], e.components[idx_q]))
        .collect();
    assert_eq!(elements.len(), graph.vertex_count());

    let i_star = n.div_ceil(2);
    let j_star = m.div_ceil(2);
    let extra_n = (n % 2 == 1).then(|| (p.pow(n / 2), q.pow(j_star)));
    let extra_m = (m % 2 == 1).then(|| (p.pow(i_star), q.pow(m / 2)));

    let mut b = Blocks::default();
    for (v, &(a, bb)) in elements.iter().enumerate() {
        let a_unit = a != 0 && a % p != 0;
        let b_unit = bb != 0 && bb % q != 0;
        match (a, bb) {
            (0, _) if b_unit => b.u2.push(v),
            (0, _) => b.v2.push((v, valuation(bb, q))),
            (_, 0) if a_unit => b.u1.push(v),
            (_, 0) => b.v1.push((v, valuation(a, p))),
            _ if a_unit => b.w1.push((v, valuation(bb, q))),
            _ if b_unit => b.w2.push((v, valuation(a, p))),
            _ => {
                let i = valuation(a, p);
                let j = valuation(bb, q);
                let is_extra = extra_n == Some((a, bb)) || extra_m == Some((a, bb));
                if is_extra {
                    b.s1_extras.push(v);
                } else if i >= i_star && j >= j_star {
                    if i == n - 1 && j == m - 1 {
                        b.s1_c1.push(v);
                    } else {
                        b.s1_rect.push((v, i, j));
                    }
                } else if i == 1 && j == 1 {
                    b.c2.push(v);
                } else if i < i_star && j >= j_star {
                    b.s3.push(v);
                } else if i >= i_star {
                    b.s2.push(v);
                } else {
                    b.s4_rest.push(v);
                }
            }
        }
    }
    b.s1_rect.sort_by_key(|&(v, i, j)| (std::cmp::Reverse(i), std::cmp::Reverse(j), v));
    b.w2.sort_by_key(|&(v, i)| (i, v));
    b.w1.sort_by_key(|&(v, j)| (j, v));

    let mut layout = Layout::new(&graph);
    let mut discrepancies = Vec::new();

    // V_2 in its own layer order; spans lambda(Z_q^m)
    let v2_order = layer_order(&b.v2, m);
    layout.place_block(&v2_order, 0);
    let lambda_qm = lambda_zpn(q, m)?;
    if layout.current_max() != Some(lambda_qm as u32) && !b.v2.is_empty() {
        discrepancies.push(Discrepancy {
            family: "zpn-zqm".into(),
            params: params.clone(),
            item: "v2_span".into(),
            stated: Some(lambda_qm.to_string()),
            actual: format!("{:?}", layout.current_max()),
            note: "inner labelling of the second factor missed its closed form".into(),
        });
    }
    // U_2 strictly above V_2
    let u2_floor = layout.current_max().map_or(0, |x| x + 1);
    layout.place_block(&b.u2, u2_floor);
    // V_1 lands above automatically (adjacent to all of V_2 and U_2)
    let v1_order = layer_order(&b.v1, n);
    layout.place_block(&v1_order, 0);
    // U_1 strictly above V_1
    let u1_floor = layout.current_max().map_or(0, |x| x + 1);
    let u1_range = layout.place_block(&b.u1, u1_floor);
    // S_1: C_1 first, then the rectangle by descending valuations, extras last
    let s1_floor = layout.current_max().map_or(0, |x| x + 1);
    let mut s1_order = b.s1_c1.clone();
    s1_order.extend(b.s1_rect.iter().map(|&(v, _, _)| v));
    s1_order.extend(&b.s1_extras);
    layout.place_block(&s1_order, s1_floor);
    // C_2 interleaves into the clique's gaps, then the side blocks pack on
    layout.place_block(&b.c2, 0);
    layout.place_block(&b.s3, 0);
    layout.place_block(&b.s4_rest, 0);
    layout.place_block(&b.s2, 0);

    // W_2: re-use as many low slots as the span target requires, then fill
    // the tail directly above the side blocks.
    let delta4 = layout.current_max().unwrap_or(0);
    let tail_len = (formula as i64) - i64::from(delta4);
    let reuse_count = (b.w2.len() as i64 - tail_len).clamp(0, b.w2.len() as i64) as usize;
    let mut reused_slots = Vec::new();
    for (ix, &(v, _)) in b.w2.iter().enumerate() {
        if ix < reuse_count {
            reused_slots.push(layout.first_fit_from(v, 0));
        } else {
            layout.first_fit_from(v, delta4 + 1);
        }
    }
    if !b.w2.is_empty() {
        let stated_slot = q.pow(m) + q - 2;
        let outside_u1 = reused_slots
            .iter()
            .filter(|&&s| u1_range.map_or(true, |(lo, hi)| s < lo || s > hi))
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
            .join(",");
        discrepancies.push(Discrepancy {
            family: "zpn-zqm".into(),
            params: params.clone(),
            item: "w2_reuse_slots".into(),
            stated: Some(stated_slot.to_string()),
            actual: if outside_u1.is_empty() {
                "none".into()
            } else {
                outside_u1
            },
            note: "the stated slot sits one below the first clique label of \
                   the first factor's block and violates the gap-two rule; \
                   re-used slots are recomputed as the smallest valid ones"
                .into(),
        });
        if let Some(&worst) = reused_slots.iter().max() {
            if worst > delta4 {
                discrepancies.push(Discrepancy {
                    family: "zpn-zqm".into(),
                    params: params.clone(),
                    item: "w2_reuse_shortfall".into(),
                    stated: None,
                    actual: worst.to_string(),
                    note: "not enough valid low slots; the tail shifted up".into(),
                });
            }
        }
    }

    // W_1 re-uses freely; it must not extend the span
    let before_w1 = layout.current_max();
    for &(v, _) in &b.w1 {
        layout.first_fit_from(v, 0);
    }
    if layout.current_max() > before_w1 && !b.w1.is_empty() {
        discrepancies.push(Discrepancy {
            family: "zpn-zqm".into(),
            params: params.clone(),
            item: "w1_overflow".into(),
            stated: None,
            actual: format!("{:?}", layout.current_max()),
            note: "the unit-times-divisor block did not fit into existing labels".into(),
        });
    }

    let labelling = layout.into_labelling();
    if u64::from(labelling.span()) != formula {
        discrepancies.push(Discrepancy::span("zpn-zqm", params, formula, labelling.span()));
    }
    Ok(FamilyConstruction {
        graph,
        labelling,
        formula,
        discrepancies,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::l21::{lambda_exact_with, validate, SolveBudget};

    #[test]
    fn formula_values() {
        assert_eq!(lambda_zpn_zqm(2, 3, 3, 3).unwrap(), 111);
        assert_eq!(lambda_zpn_zqm(2, 2, 3, 2).unwrap(), 19);
        assert_eq!(lambda_zpn_zqm(2, 2, 3, 3).unwrap(), 56);
        assert_eq!(lambda_zpn_zqm(2, 3, 2, 4).unwrap(), 65);
        assert_eq!(lambda_zpn_zqm(3, 3, 3, 3).unwrap(), 249);
        // orientation: stated with the larger factor first
        assert_eq!(lambda_zpn_zqm(3, 3, 2, 3).unwrap(), lambda_zpn_zqm(2, 3, 3, 3).unwrap());
        assert!(lambda_zpn_zqm(2, 1, 3, 3).is_err());
        assert!(lambda_zpn_zqm(6, 2, 3, 3).is_err());
    }

    #[test]
    fn headline_instance_has_span_111_on_143_vertices() {
        let c = construct_zpn_zqm(2, 3, 3, 3, 50_000).unwrap();
        assert_eq!(c.graph.vertex_count(), 143);
        assert!(validate(&c.graph, &c.labelling).unwrap().is_empty());
        assert_eq!(c.labelling.span(), 111);
        // the recomputed reuse slot is reported
        assert!(c.discrepancies.iter().any(|d| d.item == "w2_reuse_slots"));
        assert!(!c.discrepancies.iter().any(|d| d.item == "span"));
    }

    #[test]
    fn remark_cases_validate_at_their_formulas() {
        for (p, n, q, m) in [(2u64, 2u32, 3u64, 2u32), (2, 2, 3, 3), (2, 3, 3, 2), (2, 2, 2, 3)] {
            let c = construct_zpn_zqm(p, n, q, m, 50_000).unwrap();
            assert!(
                validate(&c.graph, &c.labelling).unwrap().is_empty(),
                "({p},{n},{q},{m})"
            );
            assert_eq!(
                u64::from(c.labelling.span()),
                c.formula,
                "({p},{n},{q},{m}): {:?}",
                c.discrepancies
            );
        }
    }

    #[test]
    fn same_prime_square_case_overshoots_by_one() {
        // Z_4 x Z_4: 11 vertices. The closed form gives 7 and the exact
        // solver confirms lambda = 7, but the block order cannot reach it
        // for this doubly-degenerate instance (the optimum labels the first
        // pure block above the unit blocks, which the fixed order forbids);
        // the construction lands on 8 and records the conflict.
        let c = construct_zpn_zqm(2, 2, 2, 2, 50_000).unwrap();
        assert_eq!(c.graph.vertex_count(), 11);
        assert!(validate(&c.graph, &c.labelling).unwrap().is_empty());
        assert_eq!(c.formula, 7);
        let exact = lambda_exact_with(&c.graph, 24, SolveBudget::default()).unwrap();
        assert!(exact.optimal);
        assert_eq!(exact.lambda, 7);
        assert_eq!(c.labelling.span(), 8);
        assert!(c.discrepancies.iter().any(|d| d.item == "span"));
    }

    #[test]
    fn z4_z9_formula_is_not_optimal() {
        // Remark-case instance at desk scale: the construction meets the
        // stated value 19 and validates, but the exact solver proves
        // lambda(Z4 x Z9) = 17.
        let c = construct_zpn_zqm(2, 2, 3, 2, 50_000).unwrap();
        assert_eq!(c.graph.vertex_count(), 23);
        assert!(validate(&c.graph, &c.labelling).unwrap().is_empty());
        assert_eq!(c.formula, 19);
        assert_eq!(c.labelling.span(), 19);
        let exact = lambda_exact_with(&c.graph, 24, SolveBudget::nodes(400_000_000)).unwrap();
        assert!(exact.optimal);
        assert_eq!(exact.lambda, 17);
    }
}
