//! Closed form and constructive labelling for `Γ(F_q x Z_{p^n})`.
//!
//! Blocks: `W` (zero paired with a zero divisor) carries the inner
//! `Γ(Z_{p^n})` labelling; `V^3` (field unit times zero divisor) and the
//! local units `V^2 \ W` share the label range directly above it, being at
//! distance three from each other; the field block `V^1` lands above
//! everything it is adjacent to (the whole of `V^2`).

use super::layout::Layout;
use super::zpn::{lambda_zpn, layer_order, valuation};
use super::{Discrepancy, FamilyConstruction};
use crate::ring::{as_prime_power, is_prime, Factor, RingSpec};
use crate::zdg::gamma_with_cap;
use crate::{Error, Result};

/// Which of the four cases of the closed form applies.
pub fn fq_case(q: u64, p: u64, n: u32) -> Result<u8> {
    if as_prime_power(q).is_none() || !is_prime(p) || n < 2 {
        return Err(Error::Parse(format!(
            "lambda(F_q x Z_p^n) needs q a prime power, p prime, n >= 2; got ({q},{p},{n})"
        )));
    }
    Ok(if n >= 3 {
        // threshold q vs (p^n - 1)/(p^{n-1} - 1), compared exactly
        if q * (p.pow(n - 1) - 1) > p.pow(n) - 1 {
            1
        } else {
            2
        }
    } else if q < p + 1 {
        3
    } else {
        4
    })
}

/// Closed-form lambda for `Γ(F_q x Z_{p^n})`.
pub fn lambda_fq_zpn(q: u64, p: u64, n: u32) -> Result<u64> {
    Ok(match fq_case(q, p, n)? {
        1 => q * p.pow(n - 1) + p - 3,
        2 => p.pow(n) + p + q - 3,
        3 => p * p + p + q - 4,
        _ => 2 * p * q - 2 * q - 1,
    })
}

pub fn construct_fq_zpn(q: u64, p: u64, n: u32, cap: usize) -> Result<FamilyConstruction> {
    let formula = lambda_fq_zpn(q, p, n)?;
    let params = format!("q={q},p={p},n={n}");
    let spec = RingSpec::with_cap(
        vec![Factor::LocalZ { p, k: n }, Factor::Field { q }],
        u64::MAX >> 1,
    )?;
    let idx_local = spec
        .factors()
        .iter()
        .position(|f| matches!(f, Factor::LocalZ { .. }))
        .expect("local factor present");
    let idx_field = 1 - idx_local;
    let (graph, _) = gamma_with_cap(&spec, cap)?;
    let elements: Vec<(u64, u64)> = spec
        .enumerate_elements()
        .filter(|e| {
            matches!(
                spec.classify(e).unwrap(),
                crate::ring::ElementClass::ZeroDivisor
            )
        })
        .map(|e| (e.components[idx_local], e.components[idx_field]))
        .collect();
    assert_eq!(elements.len(), graph.vertex_count());

    let mut w = Vec::new(); // (vertex, valuation): zero divisor paired with 0
    let mut v3 = Vec::new(); // (vertex, valuation): zero divisor paired with a field unit
    let mut local_units = Vec::new(); // unit paired with 0
    let mut field_units = Vec::new(); // 0 paired with a field unit
    for (v, &(a, b)) in elements.iter().enumerate() {
        if b == 0 {
            if a % p == 0 {
                w.push((v, valuation(a, p)));
            } else {
                local_units.push(v);
            }
        } else if a == 0 {
            field_units.push(v);
        } else {
            v3.push((v, valuation(a, p)));
        }
    }
    v3.sort_by_key(|&(v, i)| (i, v));

    let mut layout = Layout::new(&graph);
    let mut discrepancies = Vec::new();
    layout.place_block(&layer_order(&w, n), 0);
    let lambda_pn = lambda_zpn(p, n)?;
    if layout.current_max() != Some(lambda_pn as u32) && !w.is_empty() {
        discrepancies.push(Discrepancy {
            family: "fq-zpn".into(),
            params: params.clone(),
            item: "w_span".into(),
            stated: Some(lambda_pn.to_string()),
            actual: format!("{:?}", layout.current_max()),
            note: "inner labelling of the local factor missed its closed form".into(),
        });
    }
    let shared_floor = layout.current_max().map_or(0, |x| x + 1);
    let v3_verts: Vec<usize> = v3.iter().map(|&(v, _)| v).collect();
    layout.place_block(&v3_verts, shared_floor);
    layout.place_block(&local_units, shared_floor);
    layout.place_block(&field_units, 0);

    let labelling = layout.into_labelling();
    if u64::from(labelling.span()) != formula {
        discrepancies.push(Discrepancy::span("fq-zpn", params, formula, labelling.span()));
    }
    Ok(FamilyConstruction {
        graph,
        labelling,
        formula,
        discrepancies,
    })
}
