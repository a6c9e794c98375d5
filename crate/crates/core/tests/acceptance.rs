//! Acceptance suite: one test per criterion, each printing a single
//! PASS/FAIL line (plus per-failure detail) so a run reads as a checklist.
//!
//! Criteria 2, 3 and 7 assert equalities taken verbatim from the source
//! material. The exact solver — cross-checked against an independent
//! exhaustive enumeration in the unit tests — proves several of those
//! equalities false (the claimed values are upper bounds, not optima), so
//! those tests fail by design rather than encode the wrong numbers as
//! passing. The failure messages carry the machine-verified values.

mod common;

use std::time::Instant;

use rand::SeedableRng;
use zdg_core::formulas::{
    construct_family_with_cap, lambda_fq_zpn, lambda_zpn, Family,
};
use zdg_core::graph::{Diameter, Graph};
use zdg_core::l21::{
    hole_lemma_check, lambda_exact, lambda_exact_with, lambda_via_path_cover, validate, Reading,
    SolveBudget,
};
use zdg_core::ring::RingSpec;
use zdg_core::truncate::{
    check_uniform_bipartite, diam_case, lift_labelling, lift_lambda, partite_truncation,
    representative_classes,
};
use zdg_core::zdg::{add_isolated_and_dominating, gamma, ClassKey};

use common::{beck_of, suite_graphs};

fn finish(id: u32, name: &str, failures: Vec<String>) {
    if failures.is_empty() {
        println!("ACCEPTANCE {id} ({name}): PASS");
    } else {
        println!("ACCEPTANCE {id} ({name}): FAIL ({} issue(s))", failures.len());
        for f in &failures {
            println!("  - {f}");
        }
        panic!(
            "acceptance criterion {id} ({name}) failed:\n{}",
            failures.join("\n")
        );
    }
}

#[test]
fn criterion_01_thm_4_1_grid_exact() {
    let mut failures = Vec::new();
    for (p, n) in [(2u64, 3u32), (2, 4), (2, 5), (3, 2), (3, 3), (5, 2), (7, 2)] {
        let expect = lambda_zpn(p, n).unwrap();
        let g = common::gamma_of(&format!("Z{}", p.pow(n)));
        let started = Instant::now();
        let r = lambda_exact(&g).unwrap();
        let elapsed = started.elapsed();
        if !r.optimal || r.lambda != expect {
            failures.push(format!(
                "Z_{}^{}: exact {} (optimal {}) vs closed form {expect}",
                p, n, r.lambda, r.optimal
            ));
        }
        if elapsed.as_secs() >= 10 {
            failures.push(format!("Z_{p}^{n}: took {elapsed:?} (limit 10 s)"));
        }
    }
    finish(1, "prime-power grid matches the closed form exactly", failures);
}

#[test]
fn criterion_02_boolean_ring_headline() {
    let mut failures = Vec::new();
    let g = common::gamma_of("Z2xZ2xZ2xZ2");
    let started = Instant::now();
    let r = lambda_exact_with(&g, 24, SolveBudget::nodes(2_000_000_000)).unwrap();
    let elapsed = started.elapsed();
    assert!(r.optimal, "the 14-vertex instance solves well within budget");
    let w = r.witness.clone().unwrap();
    assert!(validate(&g, &w).unwrap().is_empty());
    if r.lambda != 10 {
        failures.push(format!(
            "lambda(gamma(Z2^4)) = {} with a validator-checked witness {:?}; \
             the stated value 10 is only an upper bound (a span-9 labelling \
             exists because complementary-overlap vertex pairs are at \
             distance 3 and may share labels; span 8 was refuted both by \
             the solver and by an independent exhaustive search)",
            r.lambda,
            w.labels()
        ));
    }
    if elapsed.as_secs() >= 60 {
        failures.push(format!("took {elapsed:?} (limit 60 s)"));
    }
    finish(2, "lambda(gamma(Z2^4)) equals the stated 10", failures);
}

/// All multisets over `values` with `len` entries, nondecreasing.
fn multisets(values: &[u64], len: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut cur = vec![0u64; len];
    fn rec(values: &[u64], len: usize, from: usize, cur: &mut Vec<u64>, depth: usize, out: &mut Vec<Vec<u64>>) {
        if depth == len {
            out.push(cur.clone());
            return;
        }
        for (i, &v) in values.iter().enumerate().skip(from) {
            cur[depth] = v;
            rec(values, len, i, cur, depth + 1, out);
        }
    }
    rec(values, len, 0, &mut cur, 0, &mut out);
    out
}

#[test]
fn criterion_03_lift_vs_exact_on_reduced_rings() {
    let started = Instant::now();
    let mut failures = Vec::new();
    for factors in 2..=3usize {
        for qs in multisets(&[2, 3, 4, 5], factors) {
            let spec_text = qs
                .iter()
                .map(|q| format!("F{q}"))
                .collect::<Vec<_>>()
                .join("x");
            let spec = RingSpec::parse(&spec_text).unwrap();
            if spec.zero_divisor_count() > 20 {
                continue;
            }
            let (g, parts) = gamma(&spec).unwrap();
            let exact = lambda_exact(&g).unwrap();
            assert!(exact.optimal);
            match diam_case(&g) {
                Err(_) => {
                    // complete graph (only gamma(F2xF2) = K_2 here): the
                    // truncation is the graph itself and lambda is 2n-2
                    let direct = 2 * g.vertex_count() as u64 - 2;
                    if exact.lambda != direct {
                        failures.push(format!(
                            "{spec_text}: complete case lambda {} != {direct}",
                            exact.lambda
                        ));
                    }
                }
                Ok(case) => {
                    assert!(check_uniform_bipartite(&g, &parts).unwrap());
                    let t = partite_truncation(&g, &parts).unwrap();
                    let inner = lambda_exact(&t.truncated).unwrap();
                    assert!(inner.optimal);
                    let f = inner.witness.unwrap();
                    let reps = representative_classes(&f, &parts).unwrap();
                    let lifted = lift_lambda(inner.lambda, &parts, &reps, case);
                    // the lifted labelling itself always validates
                    let witness = lift_labelling(&g, &parts, &f).unwrap();
                    assert!(validate(&g, &witness).unwrap().is_empty());
                    assert_eq!(u64::from(witness.span()), lifted);
                    if lifted != exact.lambda {
                        failures.push(format!(
                            "{spec_text} ({} vertices, diam case {:?}): lift {} != exact {} \
                             (the lifted labelling is valid at span {}, so the lift is an \
                             upper bound; the equality claim fails on this instance)",
                            g.vertex_count(),
                            case,
                            lifted,
                            exact.lambda,
                            witness.span(),
                        ));
                    }
                }
            }
        }
    }
    assert!(started.elapsed().as_secs() < 300, "grid exceeded 5 minutes");
    finish(3, "truncation lift equals exact lambda on the reduced grid", failures);
}

#[test]
fn criterion_04_boolean_truncation_structure() {
    let started = Instant::now();
    let mut failures = Vec::new();
    for factors in 3..=5usize {
        let boolean_spec =
            RingSpec::parse(&vec!["Z2"; factors].join("x")).unwrap();
        let (boolean, bparts) = gamma(&boolean_spec).unwrap();
        for qs in multisets(&[2, 3, 4], factors) {
            let spec_text = qs
                .iter()
                .map(|q| format!("F{q}"))
                .collect::<Vec<_>>()
                .join("x");
            let spec = RingSpec::parse(&spec_text).unwrap();
            let (g, parts) = gamma(&spec).unwrap();
            let expect_classes = (1usize << factors) - 2;
            if parts.class_count() != expect_classes {
                failures.push(format!(
                    "{spec_text}: {} classes, expected {expect_classes}",
                    parts.class_count()
                ));
                continue;
            }
            if !check_uniform_bipartite(&g, &parts).unwrap() {
                failures.push(format!("{spec_text}: class pairs not complete-or-empty"));
                continue;
            }
            let t = partite_truncation(&g, &parts).unwrap();
            // map each class to the boolean vertex with the same support
            let support = |key: &ClassKey| -> Vec<usize> {
                let ClassKey::Pattern(p) = key else { panic!("reduced rings give pattern keys") };
                p.0.iter()
                    .enumerate()
                    .filter(|(_, t)| **t != zdg_core::ring::ComponentTag::Zero)
                    .map(|(i, _)| i)
                    .collect()
            };
            let boolean_class_of = |s: &[usize]| -> usize {
                bparts
                    .keys()
                    .iter()
                    .position(|k| support(k) == s)
                    .expect("all supports present")
            };
            let map: Vec<usize> = parts
                .keys()
                .iter()
                .map(|k| {
                    let class = boolean_class_of(&support(k));
                    // boolean classes are singletons; class index -> vertex
                    bparts.classes()[class][0]
                })
                .collect();
            match t.truncated.adjacency_preserved_under(&map, &boolean) {
                Ok(true) => {}
                other => failures.push(format!(
                    "{spec_text}: pattern map does not carry the truncation onto \
                     the boolean-ring graph ({other:?})"
                )),
            }
        }
    }
    let elapsed = started.elapsed();
    if elapsed.as_secs() >= 60 {
        failures.push(format!("took {elapsed:?} (limit 1 min)"));
    }
    finish(4, "reduced rings truncate onto the boolean-ring graph", failures);
}

fn check_construction(family: Family, failures: &mut Vec<String>) -> Option<(usize, u32)> {
    match construct_family_with_cap(&family, 50_000) {
        Err(e) => {
            failures.push(format!("{family}: construction refused: {e}"));
            None
        }
        Ok(c) => {
            let violations = validate(&c.graph, &c.labelling).unwrap();
            if !violations.is_empty() {
                failures.push(format!(
                    "{family}: witness has {} violation(s), first: {}",
                    violations.len(),
                    violations[0]
                ));
                return None;
            }
            let span = c.labelling.span();
            if u64::from(span) != c.formula {
                if c.discrepancies.is_empty() {
                    failures.push(format!(
                        "{family}: span {span} != formula {} with an empty discrepancy report",
                        c.formula
                    ));
                } else {
                    // a recorded, explained mismatch: reported but tolerated
                    println!(
                        "  note: {family}: constructed span {span} vs stated {}; recorded: {}",
                        c.formula,
                        c.discrepancies
                            .iter()
                            .map(|d| d.item.as_str())
                            .collect::<Vec<_>>()
                            .join(",")
                    );
                }
            }
            Some((c.graph.vertex_count(), span))
        }
    }
}

#[test]
fn criterion_05_constructions_validate_at_formula_spans() {
    let mut failures = Vec::new();

    // prime powers: every order up to 1e5 for small primes
    for &(p, n_max) in &[(2u64, 15u32), (3, 9), (5, 6), (7, 5), (11, 4), (13, 4)] {
        for n in 2..=n_max {
            check_construction(Family::Zpn { p, n }, &mut failures);
        }
    }
    for &(p, n) in &[(97u64, 2u32), (313, 2)] {
        check_construction(Family::Zpn { p, n }, &mut failures);
    }

    // two local factors: all parities, same-prime pairs, and the pinned case
    let tensor_grid = [
        (2u64, 2u32, 3u64, 2u32),
        (2, 2, 3, 3),
        (2, 3, 3, 2),
        (2, 3, 3, 3),
        (2, 2, 2, 3),
        (2, 3, 2, 4),
        (2, 2, 5, 2),
        (2, 4, 3, 2),
        (2, 4, 3, 4),
        (3, 2, 2, 5),
        (3, 3, 3, 3),
        (5, 2, 7, 2),
        (2, 5, 3, 5),
        (2, 6, 3, 4),
        (2, 2, 2, 2),
    ];
    for &(p, n, q, m) in &tensor_grid {
        check_construction(Family::ZpnZqm { p, n, q, m }, &mut failures);
    }
    // the pinned instance: 143 vertices, span exactly 111
    match construct_family_with_cap(&Family::ZpnZqm { p: 2, n: 3, q: 3, m: 3 }, 50_000) {
        Ok(c) => {
            if c.graph.vertex_count() != 143 || c.labelling.span() != 111 {
                failures.push(format!(
                    "Z8xZ27: got {} vertices span {}, need 143 vertices span 111",
                    c.graph.vertex_count(),
                    c.labelling.span()
                ));
            }
        }
        Err(e) => failures.push(format!("Z8xZ27: {e}")),
    }

    // field times local ring, straddling all four cases and both boundary
    // orientations
    for &q in &[2u64, 3, 4, 5, 8, 9] {
        for &p in &[2u64, 3, 5] {
            let mut n = 2;
            while q * p.pow(n) <= 100_000 {
                let vertices = p.pow(n - 1) * (p + q - 1) - 1;
                if vertices <= 16_000 {
                    check_construction(Family::FqZpn { q, p, n }, &mut failures);
                }
                n += 1;
            }
        }
    }

    // complete multipartite grid
    for parts in 2..=4usize {
        for sizes in multisets(&[1, 2, 3, 4, 5], parts) {
            let sizes: Vec<usize> = sizes.iter().map(|&s| s as usize).collect();
            check_construction(Family::Multipartite { sizes }, &mut failures);
        }
    }

    finish(5, "family constructions validate and hit their formulas", failures);
}

#[test]
fn criterion_06_fq_zpn_case_coverage() {
    let started = Instant::now();
    let mut failures = Vec::new();
    for (q, p, n, expect) in [
        (3u64, 2u64, 3u32, 11u64),
        (2, 2, 3, 9),
        (2, 2, 2, 4),
        (5, 2, 2, 9),
    ] {
        match lambda_fq_zpn(q, p, n) {
            Ok(v) if v == expect => {}
            other => failures.push(format!("F{q}xZ{}: formula {other:?} != {expect}", p.pow(n))),
        }
    }
    // the two n = 2 instances are small enough for the exact solver
    for (q, p, n, expect) in [(2u64, 2u64, 2u32, 4u64), (5, 2, 2, 9)] {
        let g = common::gamma_of(&format!("F{q}xZ{}", p.pow(n)));
        let r = lambda_exact(&g).unwrap();
        if !r.optimal || r.lambda != expect {
            failures.push(format!(
                "F{q}xZ{}: exact {} (optimal {}) != {expect}",
                p.pow(n),
                r.lambda,
                r.optimal
            ));
        }
    }
    if started.elapsed().as_secs() >= 120 {
        failures.push("exceeded 2 minutes".into());
    }
    finish(6, "all four mixed-ring cases give their stated values", failures);
}

#[test]
fn criterion_07_beck_and_dominating_shift() {
    let started = Instant::now();
    let mut failures = Vec::new();
    for (spec, claimed) in [("Z8", 9u64), ("Z9", 10)] {
        let g = beck_of(spec);
        let r = lambda_exact(&g).unwrap();
        assert!(r.optimal);
        if r.lambda != claimed {
            failures.push(format!(
                "lambda(beck({spec})) = {} with a validated witness, not the stated {claimed} \
                 (units only need distinct labels, so they can absorb holes of the inner \
                 labelling instead of extending the span)",
                r.lambda
            ));
        }
    }
    // randomised shift property: lambda(G + m isolated + dominating)
    // should equal lambda(G) + m + 2 per the stated rule
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xd011);
    let mut tested = 0;
    let mut attempts = 0;
    while tested < 30 && attempts < 5_000 {
        attempts += 1;
        let n = 4 + (attempts % 7);
        let g = Graph::random_gnp(n, 0.55, &mut rng);
        if !matches!(g.diameter(), Diameter::Finite(d) if d < 3) {
            continue;
        }
        let m = tested % 4;
        let base = lambda_exact(&g).unwrap();
        let aug = add_isolated_and_dominating(&g, m);
        let shifted = lambda_exact(&aug).unwrap();
        assert!(base.optimal && shifted.optimal);
        if shifted.lambda != base.lambda + m as u64 + 2 {
            failures.push(format!(
                "graph #{tested} (n={n}, m={m}): lambda went {} -> {}, stated rule says {}",
                base.lambda,
                shifted.lambda,
                base.lambda + m as u64 + 2
            ));
        }
        tested += 1;
    }
    assert_eq!(tested, 30, "generator found 30 diameter-<3 graphs");
    if started.elapsed().as_secs() >= 180 {
        failures.push("exceeded 3 minutes".into());
    }
    // keep the report readable: summarise if the rule fails broadly
    if failures.len() > 6 {
        let total = failures.len();
        failures.truncate(5);
        failures.push(format!("... and {} more instances of the same pattern", total - 5));
    }
    finish(7, "Beck-graph values and the dominating-vertex shift rule", failures);
}

#[test]
fn criterion_08_path_cover_oracle_cross_validation() {
    let mut failures = Vec::new();
    let mut exercised_exact = 0;
    for (name, g) in suite_graphs() {
        let n = g.vertex_count();
        if n == 0 || n > 12 {
            continue;
        }
        let oracle = lambda_via_path_cover(&g).unwrap();
        let exact = lambda_exact(&g).unwrap();
        assert!(exact.optimal, "{name}");
        if oracle.optimal {
            exercised_exact += 1;
            if oracle.lambda != exact.lambda {
                failures.push(format!(
                    "{name}: path-cover route {} != exact {}",
                    oracle.lambda, exact.lambda
                ));
            }
        } else if exact.lambda > n as u64 - 1 {
            failures.push(format!(
                "{name}: complement has a Hamiltonian path but exact {} > n-1 = {}",
                exact.lambda,
                n - 1
            ));
        }
    }
    assert!(exercised_exact > 10, "the grid exercises the exact branch");
    finish(8, "path-cover oracle agrees with the exact solver", failures);
}

#[test]
fn criterion_09_bound_ledger_brackets_every_solved_instance() {
    let mut failures = Vec::new();
    for (name, g) in suite_graphs() {
        if g.vertex_count() > 24 {
            continue;
        }
        let r = lambda_exact(&g).unwrap();
        if !r.optimal {
            continue;
        }
        let lower = r.bounds.lower();
        let upper = r.bounds.best_upper();
        if !(lower <= r.lambda && r.lambda <= upper) {
            failures.push(format!(
                "{name}: lambda {} outside ledger [{lower}, {upper}] ({:?})",
                r.lambda, r.bounds
            ));
        }
    }
    finish(9, "2w-2 <= lambda <= min(n+chi-2, D^2+2D, 2n-a-1)", failures);
}

#[test]
fn criterion_10_hole_structure_lemmas() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let mut checked = 0;
    for (name, g) in suite_graphs() {
        let n = g.vertex_count();
        if n == 0 || n > 7 {
            continue;
        }
        checked += 1;
        let report = hole_lemma_check(&g).unwrap();
        let minimum_clean = report.reading(Reading::Minimum).clean();
        let minimal_clean = report.reading(Reading::Minimal).clean();
        if !minimum_clean && !minimal_clean {
            failures.push(format!(
                "{name}: counterexamples under both readings: {:?}",
                report.readings
            ));
        }
    }
    assert!(checked >= 20, "the suite provides enough small graphs");
    if started.elapsed().as_secs() >= 300 {
        failures.push("exceeded 5 minutes".into());
    }
    finish(10, "hole lemmas hold under at least one minimality reading", failures);
}
