//! The shared suite of test graphs: classical families, zero-divisor graphs
//! of small rings, Beck graphs, and seeded random graphs.

use rand::SeedableRng;
use zdg_core::graph::Graph;
use zdg_core::ring::RingSpec;
use zdg_core::zdg::{gamma, gamma_beck};

pub fn gamma_of(spec: &str) -> Graph {
    gamma(&RingSpec::parse(spec).unwrap()).unwrap().0
}

pub fn beck_of(spec: &str) -> Graph {
    gamma_beck(&RingSpec::parse(spec).unwrap()).unwrap()
}

/// Every graph the acceptance suite sweeps, with a printable name.
pub fn suite_graphs() -> Vec<(String, Graph)> {
    let mut graphs: Vec<(String, Graph)> = Vec::new();
    for n in 1..=8 {
        graphs.push((format!("K_{n}"), Graph::complete(n)));
    }
    for (m, n) in [(1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (3, 3), (3, 4), (4, 4)] {
        graphs.push((format!("K_{{{m},{n}}}"), Graph::complete_multipartite(&[m, n])));
    }
    for n in 2..=7 {
        graphs.push((format!("P_{n}"), Graph::path(n)));
    }
    for n in 3..=7 {
        graphs.push((format!("C_{n}"), Graph::cycle(n)));
    }
    graphs.push(("empty_4".into(), Graph::empty(4)));
    graphs.push(("K_{2,2,2}".into(), Graph::complete_multipartite(&[2, 2, 2])));
    graphs.push(("K_{3,2,1}".into(), Graph::complete_multipartite(&[3, 2, 1])));
    for spec in [
        "Z8", "Z9", "Z12", "Z16", "Z25", "Z27", "Z2xZ2xZ2", "F2xF4", "F3xF3", "F2xF3xF2",
        "Z4xF3",
    ] {
        graphs.push((format!("gamma({spec})"), gamma_of(spec)));
    }
    for spec in ["F5", "Z4", "Z8", "Z9"] {
        graphs.push((format!("beck({spec})"), beck_of(spec)));
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
    for i in 0..10 {
        let n = 6 + (i % 5);
        graphs.push((format!("gnp_{i}(n={n})"), Graph::random_gnp(n, 0.45, &mut rng)));
    }
    graphs
}
