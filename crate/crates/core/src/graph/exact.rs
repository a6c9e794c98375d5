//! Exact small-instance subroutines: clique number, independence number,
//! chromatic number and path covering number.
//!
//! Every routine refuses (instead of approximating) when the instance
//! exceeds its cap, so downstream checks never silently degrade.

use super::Graph;
use crate::{Error, Result};

/// Default vertex cap for the exact clique / independence routines.
pub const DEFAULT_OMEGA_CAP: usize = 40;
/// Default vertex cap for the exact chromatic-number routine.
pub const DEFAULT_CHI_CAP: usize = 24;
/// Default vertex cap for the exact path-cover routine.
pub const DEFAULT_PATH_COVER_CAP: usize = 16;

fn adjacency_masks(g: &Graph) -> Vec<u64> {
    let n = g.vertex_count();
    let mut adj = vec![0u64; n];
    for (u, v) in g.edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    adj
}

fn max_clique_rec(adj: &[u64], candidates: u64, size: u32, best: &mut u32) {
    if size + candidates.count_ones() <= *best {
        return;
    }
    if candidates == 0 {
        *best = (*best).max(size);
        return;
    }
    // pivot on the candidate covering the most of the candidate set
    let pivot = {
        let mut best_v = u64::MAX;
        let mut best_cover = u64::MAX;
        let mut rest = candidates;
        while rest != 0 {
            let v = rest.trailing_zeros() as u64;
            rest &= rest - 1;
            let cover = (candidates & !adj[v as usize]).count_ones() as u64;
            if cover < best_cover {
                best_cover = cover;
                best_v = v;
            }
        }
        best_v as usize
    };
    let mut branch = candidates & !adj[pivot];
    let mut remaining = candidates;
    while branch != 0 {
        let v = branch.trailing_zeros() as usize;
        branch &= branch - 1;
        remaining &= !(1u64 << v);
        max_clique_rec(adj, remaining & adj[v], size + 1, best);
    }
}

/// Exact clique number by branch and bound. Refuses above `cap` (or 64).
pub fn clique_number(g: &Graph, cap: usize) -> Result<u32> {
    let n = g.vertex_count();
    if n > cap.min(64) {
        return Err(Error::CapExceeded {
            what: "exact clique number",
            actual: n,
            cap: cap.min(64),
        });
    }
    if n == 0 {
        return Ok(0);
    }
    let adj = adjacency_masks(g);
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut best = 1;
    max_clique_rec(&adj, all, 0, &mut best);
    Ok(best)
}

/// Exact independence number: clique number of the complement.
pub fn independence_number(g: &Graph, cap: usize) -> Result<u32> {
    clique_number(&g.complement(), cap).map_err(|e| match e {
        Error::CapExceeded { actual, cap, .. } => Error::CapExceeded {
            what: "exact independence number",
            actual,
            cap,
        },
        other => other,
    })
}

fn colourable_rec(order: &[usize], adj: &[u64], colours: &mut [u32], idx: usize, used: u32, k: u32) -> bool {
    if idx == order.len() {
        return true;
    }
    let v = order[idx];
    let limit = (used + 1).min(k);
    for c in 0..limit {
        let mut ok = true;
        let mut nb = adj[v];
        while nb != 0 {
            let u = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            if colours[u] == c {
                ok = false;
                break;
            }
        }
        if ok {
            colours[v] = c;
            if colourable_rec(order, adj, colours, idx + 1, used.max(c + 1), k) {
                return true;
            }
            colours[v] = u32::MAX;
        }
    }
    false
}

/// Exact chromatic number by iterated k-colourability search.
pub fn chromatic_number(g: &Graph, cap: usize) -> Result<u32> {
    let n = g.vertex_count();
    if n > cap.min(64) {
        return Err(Error::CapExceeded {
            what: "exact chromatic number",
            actual: n,
            cap: cap.min(64),
        });
    }
    if n == 0 {
        return Ok(0);
    }
    if g.edge_count() == 0 {
        return Ok(1);
    }
    let adj = adjacency_masks(g);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let lower = clique_number(g, cap)?;
    for k in lower.. {
        let mut colours = vec![u32::MAX; n];
        if colourable_rec(&order, &adj, &mut colours, 0, 0, k) {
            return Ok(k);
        }
    }
    unreachable!("every graph is n-colourable")
}

struct PathCoverTables {
    /// `ends[mask]` = bitmask of vertices at which a Hamiltonian path of
    /// the induced subgraph on `mask` can end (0 if none exists).
    ends: Vec<u32>,
    /// `cover[mask]` = minimum number of vertex-disjoint paths covering `mask`.
    cover: Vec<u8>,
}

fn path_cover_tables(g: &Graph, cap: usize) -> Result<PathCoverTables> {
    let n = g.vertex_count();
    if n > cap.min(16) {
        return Err(Error::CapExceeded {
            what: "exact path cover",
            actual: n,
            cap: cap.min(16),
        });
    }
    let adj: Vec<u32> = adjacency_masks(g).iter().map(|&m| m as u32).collect();
    let full = 1usize << n;
    let mut ends = vec![0u32; full];
    for v in 0..n {
        ends[1 << v] = 1 << v;
    }
    for mask in 1..full {
        if mask.count_ones() < 2 {
            continue;
        }
        let mut e = 0u32;
        let mut rest = mask as u32;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let prev = mask & !(1 << v);
            if ends[prev] & adj[v] != 0 {
                e |= 1 << v;
            }
        }
        ends[mask] = e;
    }
    let mut cover = vec![u8::MAX; full];
    cover[0] = 0;
    for mask in 1..full {
        let low = mask.trailing_zeros();
        let fixed = 1usize << low;
        // iterate submasks of mask containing the lowest vertex
        let free = mask & !fixed;
        let mut sub = free;
        loop {
            let part = sub | fixed;
            if ends[part] != 0 {
                let rest = cover[mask & !part];
                if rest != u8::MAX {
                    cover[mask] = cover[mask].min(rest + 1);
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & free;
        }
    }
    Ok(PathCoverTables { ends, cover })
}

/// Minimum number of vertex-disjoint paths covering all vertices.
pub fn path_cover_number(g: &Graph, cap: usize) -> Result<u32> {
    if g.vertex_count() == 0 {
        return Ok(0);
    }
    let t = path_cover_tables(g, cap)?;
    Ok(u32::from(t.cover[(1usize << g.vertex_count()) - 1]))
}

/// A concrete optimal path cover: vertex-disjoint paths (as id sequences)
/// covering all vertices, using the smallest-index deterministic choice.
pub fn path_cover_witness(g: &Graph, cap: usize) -> Result<Vec<Vec<usize>>> {
    let n = g.vertex_count();
    if n == 0 {
        return Ok(Vec::new());
    }
    let adj: Vec<u32> = adjacency_masks(g).iter().map(|&m| m as u32).collect();
    let t = path_cover_tables(g, cap)?;
    let mut paths = Vec::new();
    let mut mask = (1usize << n) - 1;
    while mask != 0 {
        let low = mask.trailing_zeros();
        let fixed = 1usize << low;
        let free = mask & !fixed;
        let mut chosen = None;
        let mut sub = free;
        loop {
            let part = sub | fixed;
            if t.ends[part] != 0 && t.cover[mask & !part] != u8::MAX {
                let total = t.cover[mask & !part] + 1;
                if total == t.cover[mask] {
                    // deterministic: prefer the smallest qualifying submask
                    chosen = match chosen {
                        Some(c) if c <= part => Some(c),
                        _ => Some(part),
                    };
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & free;
        }
        let part = chosen.expect("cover table is consistent");
        // reconstruct one Hamiltonian path of `part`, ending at the smallest end
        let mut seq = Vec::with_capacity(part.count_ones() as usize);
        let mut cur_mask = part;
        let mut v = t.ends[cur_mask].trailing_zeros() as usize;
        loop {
            seq.push(v);
            cur_mask &= !(1 << v);
            if cur_mask == 0 {
                break;
            }
            let options = t.ends[cur_mask] & adj[v];
            v = options.trailing_zeros() as usize;
        }
        seq.reverse();
        paths.push(seq);
        mask &= !part;
    }
    Ok(paths)
}
