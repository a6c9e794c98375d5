//! Lambda via the path covering number of the complement.
//!
//! For a graph on `n` vertices: `lambda <= n - 1` iff the complement is
//! covered by one path, and for `r >= 2`, `lambda = n + r - 2` iff the
//! complement needs exactly `r` vertex-disjoint paths. The witness walks the
//! cover: consecutive path vertices are non-adjacent in the graph so their
//! labels may differ by one; a fresh path jumps by two.

use super::{classical_bounds, BoundCaps, Labelling, LambdaReport, Method};
use crate::graph::{path_cover_number, path_cover_witness, Graph, DEFAULT_PATH_COVER_CAP};
use crate::{Error, Result};

/// Lambda by the path-cover route. Exact (optimal) when the complement's
/// cover number is at least two; otherwise only the bound `lambda <= n - 1`
/// is reported with `optimal = false`.
pub fn lambda_via_path_cover(g: &Graph) -> Result<LambdaReport> {
    lambda_via_path_cover_with(g, DEFAULT_PATH_COVER_CAP)
}

pub fn lambda_via_path_cover_with(g: &Graph, cap: usize) -> Result<LambdaReport> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::Unsupported("path-cover route needs vertices".into()));
    }
    let complement = g.complement();
    let r = path_cover_number(&complement, cap)?;
    let paths = path_cover_witness(&complement, cap)?;

    let mut labels = vec![0u32; n];
    let mut next = 0u32;
    for (i, path) in paths.iter().enumerate() {
        if i > 0 {
            next += 1; // previous path ended at next-1; leave a gap of two
        }
        for &v in path {
            labels[v] = next;
            next += 1;
        }
    }
    let witness = Labelling::new(labels);
    let bounds = classical_bounds(g, BoundCaps::default());
    if r >= 2 {
        Ok(LambdaReport {
            lambda: n as u64 + u64::from(r) - 2,
            method: Method::PathCover,
            optimal: true,
            witness: Some(witness),
            bounds,
        })
    } else {
        Ok(LambdaReport {
            lambda: n as u64 - 1,
            method: Method::PathCover,
            optimal: false,
            witness: Some(witness),
            bounds,
        })
    }
}
