//! Command-line interface: build zero-divisor graphs, compute lambda numbers
//! by several methods, verify labellings, truncate partite structures,
//! analyse bounds and reproduce the closed-form tables.
//!
//! Exit codes: 0 success/agreement, 1 verification or agreement failure,
//! 2 usage error, 3 cap or budget refusal.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use zdg_core::formulas::{
    construct_family_with_cap, infer_family, lambda_formula, Family, FamilyConstruction,
};
use zdg_core::graph::{
    chromatic_number, clique_number, independence_number, Diameter, Graph, DEFAULT_CHI_CAP,
    DEFAULT_OMEGA_CAP, DEFAULT_PATH_COVER_CAP,
};
use zdg_core::l21::{
    analyze, classical_bounds, lambda_exact_with, lambda_via_path_cover_with, validate, BoundCaps,
    Labelling, LambdaReport, Method, SolveBudget,
};
use zdg_core::ring::RingSpec;
use zdg_core::truncate::{
    check_uniform_bipartite, diam_case, lift_labelling, lift_lambda, partite_truncation,
    representative_classes,
};
use zdg_core::zdg::{gamma_beck_with_cap, gamma_with_cap, PartiteStructure};
use zdg_core::Error as CoreError;

const GRAPH_BUILD_CAP: usize = 50_000;
const NODES_PER_MS: u64 = 200_000;

#[derive(Parser)]
#[command(name = "zdg", version, about = "Zero-divisor graphs and L(2,1)-labellings")]
struct Cli {
    /// Vertex cap for the exact lambda solver.
    #[arg(long, global = true, default_value_t = 24)]
    max_vertices: usize,
    /// Search budget for the exact solver, converted to a deterministic
    /// node budget.
    #[arg(long, global = true, default_value_t = 10_000)]
    time_budget_ms: u64,
    /// Output format where applicable.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Seed for any randomised generation (commands are deterministic
    /// given the full configuration).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Tsv,
    Human,
}

#[derive(Subcommand)]
enum Command {
    /// Build the zero-divisor graph of a ring and write it as JSON (or DOT).
    Build(BuildArgs),
    /// Compute a lambda number by the chosen method.
    Lambda(LambdaArgs),
    /// Check a labelling against a graph; exits 1 on violations.
    Verify(VerifyArgs),
    /// Contract the partite classes of a graph to single vertices.
    Truncate(TruncateArgs),
    /// Diameter, exact invariants, bound ledger and hole analysis.
    Analyze(AnalyzeArgs),
    /// Reproduce a closed-form family table as TSV; exits 1 on disagreement.
    Table(TableArgs),
}

#[derive(Args)]
struct BuildArgs {
    /// Ring spec such as Z8, Z4xZ9, F5xZ27.
    #[arg(long)]
    ring: String,
    /// Build Beck's graph on all ring elements instead of the zero divisors.
    #[arg(long)]
    beck: bool,
    /// Emit DOT instead of JSON.
    #[arg(long)]
    dot: bool,
    /// Write to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct LambdaArgs {
    #[arg(long, conflicts_with = "graph")]
    ring: Option<String>,
    /// Graph JSON file (alternative to --ring).
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long, value_enum)]
    method: MethodArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Exact,
    Formula,
    Construct,
    PathCover,
    Lift,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    labelling: PathBuf,
}

#[derive(Args)]
struct TruncateArgs {
    /// Graph JSON file with a `part` id on every vertex.
    #[arg(long)]
    graph: PathBuf,
    /// Fail unless every class pair is complete or empty.
    #[arg(long)]
    require_uniform: bool,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[arg(long, conflicts_with = "graph")]
    ring: Option<String>,
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Labelling JSON; adds validation and hole analysis to the report.
    #[arg(long)]
    labelling: Option<PathBuf>,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// Comma-separated primes, e.g. 2,3,5.
    #[arg(long)]
    p: Option<String>,
    /// Exponent list or range, e.g. 2,3 or 2..4 (inclusive).
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    q: Option<String>,
    #[arg(long)]
    m: Option<String>,
    /// Upper bounds per class size, e.g. 4,4,4 enumerates all sorted size
    /// vectors within them.
    #[arg(long)]
    sizes_upto: Option<String>,
    /// Run the exact solver on instances with at most this many vertices.
    #[arg(long, default_value_t = 16)]
    exact_upto: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Zpn,
    ZpnZqm,
    FqZpn,
    Multipartite,
}

/// Failure kinds mapped onto exit codes.
enum Failure {
    Disagreement(String),
    Usage(String),
    Refused(String),
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Failure {
        match e {
            CoreError::CapExceeded { .. } => Failure::Refused(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Build(args) => cmd_build(&cli, args),
        Command::Lambda(args) => cmd_lambda(&cli, args),
        Command::Verify(args) => cmd_verify(&cli, args),
        Command::Truncate(args) => cmd_truncate(&cli, args),
        Command::Analyze(args) => cmd_analyze(&cli, args),
        Command::Table(args) => cmd_table(&cli, args),
    };
    match outcome {
        Ok(()) => ExitCode::from(0),
        Err(Failure::Disagreement(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Refused(msg)) => {
            eprintln!("refused: {msg}");
            ExitCode::from(3)
        }
    }
}

fn budget(cli: &Cli) -> SolveBudget {
    SolveBudget::nodes(cli.time_budget_ms.saturating_mul(NODES_PER_MS))
}

fn load_graph(path: &PathBuf) -> Result<Graph, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Ok(Graph::from_json(&value)?)
}

fn load_labelling(path: &PathBuf) -> Result<Labelling, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Ok(Labelling::from_json(&value)?)
}

fn graph_from_args(ring: &Option<String>, graph: &Option<PathBuf>) -> Result<Graph, Failure> {
    match (ring, graph) {
        (Some(spec), None) => {
            let spec = RingSpec::parse(spec)?;
            Ok(gamma_with_cap(&spec, GRAPH_BUILD_CAP)?.0)
        }
        (None, Some(path)) => load_graph(path),
        _ => Err(Failure::Usage("give exactly one of --ring or --graph".into())),
    }
}

fn emit(out: &Option<PathBuf>, text: String) -> CmdResult {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn cmd_build(cli: &Cli, args: &BuildArgs) -> CmdResult {
    let spec = RingSpec::parse(&args.ring)?;
    let graph = if args.beck {
        gamma_beck_with_cap(&spec, GRAPH_BUILD_CAP)?
    } else {
        gamma_with_cap(&spec, GRAPH_BUILD_CAP)?.0
    };
    let text = if args.dot || cli.format == Format::Dot {
        graph.to_dot()
    } else {
        serde_json::to_string_pretty(&graph.to_json()).expect("serialises")
    };
    emit(&args.out, text)
}

fn report_out(cli: &Cli, report: &LambdaReport) -> CmdResult {
    match cli.format {
        Format::Human => {
            println!(
                "lambda = {} (method {:?}, optimal: {})",
                report.lambda, report.method, report.optimal
            );
            if let Some(w) = &report.witness {
                println!("witness span {} over {} vertices", w.span(), w.len());
            }
            println!(
                "bounds: clique {:?}, greedy {}, degree {}, order+chromatic {:?}, order+independence {:?}",
                report.bounds.lower_clique,
                report.bounds.upper_greedy,
                report.bounds.upper_degree,
                report.bounds.upper_order_chromatic,
                report.bounds.upper_order_independence,
            );
            Ok(())
        }
        _ => {
            println!(
                "{}",
                serde_json::to_string_pretty(&report.to_json()).expect("serialises")
            );
            Ok(())
        }
    }
}

fn family_for(spec: &RingSpec) -> Result<Family, Failure> {
    infer_family(spec).ok_or_else(|| {
        Failure::Usage(format!(
            "no closed form covers {spec}; supported families: Z_p^n, Z_p^n x Z_q^m, F_q x Z_p^n, F_a x F_b"
        ))
    })
}

fn cmd_lambda(cli: &Cli, args: &LambdaArgs) -> CmdResult {
    match args.method {
        MethodArg::Exact => {
            let g = graph_from_args(&args.ring, &args.graph)?;
            let report = lambda_exact_with(&g, cli.max_vertices, budget(cli))?;
            let optimal = report.optimal;
            report_out(cli, &report)?;
            if optimal {
                Ok(())
            } else {
                Err(Failure::Refused(
                    "budget exhausted before optimality; value is an upper bound".into(),
                ))
            }
        }
        MethodArg::Formula => {
            let spec_text = args
                .ring
                .as_ref()
                .ok_or_else(|| Failure::Usage("--method formula needs --ring".into()))?;
            let spec = RingSpec::parse(spec_text)?;
            let family = family_for(&spec)?;
            let lambda = lambda_formula(&family)?;
            match cli.format {
                Format::Human => println!("lambda = {lambda} (formula, family {family})"),
                _ => println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "lambda": lambda,
                        "method": "formula",
                        "family": family.to_string(),
                        "optimal": true,
                        "witness": serde_json::Value::Null,
                    }))
                    .expect("serialises")
                ),
            }
            Ok(())
        }
        MethodArg::Construct => {
            let spec_text = args
                .ring
                .as_ref()
                .ok_or_else(|| Failure::Usage("--method construct needs --ring".into()))?;
            let spec = RingSpec::parse(spec_text)?;
            let family = family_for(&spec)?;
            let c = construct_family_with_cap(&family, GRAPH_BUILD_CAP)?;
            let report = LambdaReport {
                lambda: u64::from(c.labelling.span()),
                method: Method::Construction,
                optimal: false,
                witness: Some(c.labelling.clone()),
                bounds: classical_bounds(&c.graph, BoundCaps::default()),
            };
            report_out(cli, &report)?;
            print_discrepancies(&c);
            Ok(())
        }
        MethodArg::PathCover => {
            let g = graph_from_args(&args.ring, &args.graph)?;
            let report = lambda_via_path_cover_with(&g, DEFAULT_PATH_COVER_CAP)?;
            report_out(cli, &report)
        }
        MethodArg::Lift => {
            let spec_text = args
                .ring
                .as_ref()
                .ok_or_else(|| Failure::Usage("--method lift needs --ring".into()))?;
            let spec = RingSpec::parse(spec_text)?;
            let (g, parts) = gamma_with_cap(&spec, GRAPH_BUILD_CAP)?;
            if !check_uniform_bipartite(&g, &parts)? {
                return Err(Failure::Usage(format!(
                    "{spec}: partite structure is not uniform; the lift does not apply"
                )));
            }
            let t = partite_truncation(&g, &parts)?;
            let inner = lambda_exact_with(&t.truncated, cli.max_vertices, budget(cli))?;
            if !inner.optimal {
                return Err(Failure::Refused(
                    "truncation lambda did not finish within budget".into(),
                ));
            }
            let f = inner.witness.expect("optimal report carries a witness");
            let reps = representative_classes(&f, &parts)?;
            let case = diam_case(&g)?;
            let value = lift_lambda(inner.lambda, &parts, &reps, case);
            let lifted = lift_labelling(&g, &parts, &f)?;
            let report = LambdaReport {
                lambda: value,
                method: Method::Lift,
                optimal: false,
                witness: Some(lifted),
                bounds: classical_bounds(&g, BoundCaps::default()),
            };
            report_out(cli, &report)
        }
    }
}

fn print_discrepancies(c: &FamilyConstruction) {
    for d in &c.discrepancies {
        eprintln!(
            "discrepancy[{} {}] {}: stated {:?}, actual {} ({})",
            d.family, d.params, d.item, d.stated, d.actual, d.note
        );
    }
}

fn cmd_verify(cli: &Cli, args: &VerifyArgs) -> CmdResult {
    let g = load_graph(&args.graph)?;
    let f = load_labelling(&args.labelling)?;
    let violations = validate(&g, &f)?;
    match cli.format {
        Format::Json | Format::Tsv | Format::Dot => println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "valid": violations.is_empty(),
                "violations": violations,
            }))
            .expect("serialises")
        ),
        Format::Human => {
            if violations.is_empty() {
                println!("ok: valid L(2,1)-labelling with span {}", f.span());
            } else {
                for v in &violations {
                    println!("violation: {v}");
                }
            }
        }
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(Failure::Disagreement(format!(
            "{} violation(s)",
            violations.len()
        )))
    }
}

fn parts_from_graph(g: &Graph) -> Result<PartiteStructure, Failure> {
    let mut classes: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for v in 0..g.vertex_count() {
        let part = g.part(v).ok_or_else(|| {
            Failure::Usage(format!(
                "vertex {v} has no part id; truncation needs a partition"
            ))
        })?;
        classes.entry(part).or_default().push(v);
    }
    Ok(PartiteStructure::from_classes(g, classes.into_values().collect())?)
}

fn cmd_truncate(cli: &Cli, args: &TruncateArgs) -> CmdResult {
    let g = load_graph(&args.graph)?;
    let parts = parts_from_graph(&g)?;
    if args.require_uniform && !check_uniform_bipartite(&g, &parts)? {
        return Err(Failure::Disagreement(
            "partition fails the complete-or-empty uniformity check".into(),
        ));
    }
    let t = partite_truncation(&g, &parts)?;
    match cli.format {
        Format::Dot => println!("{}", t.truncated.to_dot()),
        _ => println!(
            "{}",
            serde_json::to_string_pretty(&t.to_json()).expect("serialises")
        ),
    }
    Ok(())
}

fn cmd_analyze(cli: &Cli, args: &AnalyzeArgs) -> CmdResult {
    let g = graph_from_args(&args.ring, &args.graph)?;
    let n = g.vertex_count();
    let mut refusals: Vec<String> = Vec::new();
    let field = |name: &str, r: Result<u32, CoreError>, refusals: &mut Vec<String>| match r {
        Ok(v) => Some(v),
        Err(e) => {
            refusals.push(format!("{name}: {e}"));
            None
        }
    };
    let omega = field("clique_number", clique_number(&g, DEFAULT_OMEGA_CAP), &mut refusals);
    let alpha = field(
        "independence_number",
        independence_number(&g, DEFAULT_OMEGA_CAP),
        &mut refusals,
    );
    let chi = field("chromatic_number", chromatic_number(&g, DEFAULT_CHI_CAP), &mut refusals);
    let bounds = classical_bounds(&g, BoundCaps::default());
    let path_cover = if n >= 1 && n <= DEFAULT_PATH_COVER_CAP {
        Some(lambda_via_path_cover_with(&g, DEFAULT_PATH_COVER_CAP)?)
    } else {
        if n > DEFAULT_PATH_COVER_CAP {
            refusals.push(format!(
                "path_cover: size {n} exceeds cap {DEFAULT_PATH_COVER_CAP}"
            ));
        }
        None
    };
    let labelling = match &args.labelling {
        Some(path) => {
            let f = load_labelling(path)?;
            let report = analyze(&g, &f)?;
            Some((f, report))
        }
        None => None,
    };

    let diameter = g.diameter();
    match cli.format {
        Format::Human => {
            println!("vertices {n}, edges {}", g.edge_count());
            println!("diameter {diameter}");
            println!("clique {omega:?}, independence {alpha:?}, chromatic {chi:?}");
            println!(
                "bounds: clique {:?}, greedy {}, degree {}, order+chromatic {:?}, order+independence {:?}",
                bounds.lower_clique,
                bounds.upper_greedy,
                bounds.upper_degree,
                bounds.upper_order_chromatic,
                bounds.upper_order_independence
            );
            if let Some(pc) = &path_cover {
                println!(
                    "path cover route: lambda {} ({})",
                    pc.lambda,
                    if pc.optimal { "exact" } else { "upper bound only" }
                );
            }
            if let Some((f, holes)) = &labelling {
                println!(
                    "labelling: span {}, holes {:?}, multiplicities {:?}, gaps {:?}",
                    f.span(),
                    holes.holes,
                    holes.multiplicities,
                    holes.gaps
                );
            }
            for r in &refusals {
                println!("refused: {r}");
            }
        }
        _ => {
            let mut report = json!({
                "vertices": n,
                "edges": g.edge_count(),
                "diameter": match diameter {
                    Diameter::Finite(d) => json!(d),
                    Diameter::Infinite => json!("infinite"),
                },
                "clique_number": omega,
                "independence_number": alpha,
                "chromatic_number": chi,
                "bounds": bounds,
                "refusals": refusals,
            });
            if let Some(pc) = &path_cover {
                report["path_cover"] = pc.to_json();
            }
            if let Some((f, holes)) = &labelling {
                report["labelling"] = f.to_json();
                report["holes"] = serde_json::to_value(holes).expect("serialises");
            }
            println!("{}", serde_json::to_string_pretty(&report).expect("serialises"));
        }
    }
    Ok(())
}

fn parse_u64_list(text: &Option<String>, what: &str) -> Result<Vec<u64>, Failure> {
    let Some(text) = text else {
        return Err(Failure::Usage(format!("missing --{what}")));
    };
    let mut out = Vec::new();
    for part in text.split(',') {
        if let Some((a, b)) = part.split_once("..") {
            let a: u64 = a.trim().parse().map_err(|_| bad_range(what, part))?;
            let b: u64 = b.trim().parse().map_err(|_| bad_range(what, part))?;
            out.extend(a..=b);
        } else {
            out.push(part.trim().parse().map_err(|_| bad_range(what, part))?);
        }
    }
    Ok(out)
}

fn bad_range(what: &str, part: &str) -> Failure {
    Failure::Usage(format!("--{what}: cannot parse '{part}' (use 2,3,5 or 2..4)"))
}

struct TableRow {
    family: String,
    params: String,
    formula: u64,
    span: u32,
    valid: bool,
    exact: Option<u64>,
    discrepancies: usize,
}

impl TableRow {
    fn agrees(&self) -> bool {
        self.valid
            && u64::from(self.span) == self.formula
            && self.exact.map_or(true, |e| e == self.formula)
    }
}

fn table_row(family: &Family, cli: &Cli, exact_upto: usize) -> Result<TableRow, Failure> {
    let c = construct_family_with_cap(family, GRAPH_BUILD_CAP)?;
    let valid = validate(&c.graph, &c.labelling)?.is_empty();
    let exact = if c.graph.vertex_count() <= exact_upto {
        let r = lambda_exact_with(&c.graph, exact_upto.max(1), budget(cli))?;
        r.optimal.then_some(r.lambda)
    } else {
        None
    };
    Ok(TableRow {
        family: match family {
            Family::Zpn { .. } => "zpn".into(),
            Family::ZpnZqm { .. } => "zpn-zqm".into(),
            Family::FqZpn { .. } => "fq-zpn".into(),
            Family::Multipartite { .. } => "multipartite".into(),
        },
        params: family.to_string(),
        formula: c.formula,
        span: c.labelling.span(),
        valid,
        exact,
        discrepancies: c.discrepancies.len(),
    })
}

fn cmd_table(cli: &Cli, args: &TableArgs) -> CmdResult {
    let mut families = Vec::new();
    match args.family {
        FamilyArg::Zpn => {
            for &p in &parse_u64_list(&args.p, "p")? {
                for &n in &parse_u64_list(&args.n, "n")? {
                    families.push(Family::Zpn { p, n: n as u32 });
                }
            }
        }
        FamilyArg::ZpnZqm => {
            for &p in &parse_u64_list(&args.p, "p")? {
                for &n in &parse_u64_list(&args.n, "n")? {
                    for &q in &parse_u64_list(&args.q, "q")? {
                        for &m in &parse_u64_list(&args.m, "m")? {
                            families.push(Family::ZpnZqm {
                                p,
                                n: n as u32,
                                q,
                                m: m as u32,
                            });
                        }
                    }
                }
            }
        }
        FamilyArg::FqZpn => {
            for &q in &parse_u64_list(&args.q, "q")? {
                for &p in &parse_u64_list(&args.p, "p")? {
                    for &n in &parse_u64_list(&args.n, "n")? {
                        families.push(Family::FqZpn { q, p, n: n as u32 });
                    }
                }
            }
        }
        FamilyArg::Multipartite => {
            let caps: Vec<u64> = parse_u64_list(&args.sizes_upto, "sizes-upto")?;
            if caps.is_empty() || caps.iter().any(|&c| c == 0) {
                return Err(Failure::Usage("--sizes-upto needs positive bounds".into()));
            }
            let mut sizes = vec![1u64; caps.len()];
            let mut seen = std::collections::BTreeSet::new();
            loop {
                let mut sorted = sizes.clone();
                sorted.sort_unstable();
                if seen.insert(sorted.clone()) {
                    families.push(Family::Multipartite {
                        sizes: sorted.iter().map(|&s| s as usize).collect(),
                    });
                }
                let mut i = 0;
                while i < sizes.len() {
                    sizes[i] += 1;
                    if sizes[i] <= caps[i] {
                        break;
                    }
                    sizes[i] = 1;
                    i += 1;
                }
                if i == sizes.len() {
                    break;
                }
            }
        }
    }

    println!("family\tparams\tformula\tconstructed_span\tvalid\texact\tagree");
    let mut all_agree = true;
    for family in &families {
        let row = table_row(family, cli, args.exact_upto)?;
        let agree = row.agrees();
        all_agree &= agree;
        println!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}",
            row.family,
            row.params,
            row.formula,
            row.span,
            if row.valid { "ok" } else { "INVALID" },
            row.exact.map_or("-".into(), |e| e.to_string()),
            if agree {
                "yes".to_string()
            } else {
                format!("no({} recorded)", row.discrepancies)
            }
        );
    }
    if all_agree {
        Ok(())
    } else {
        Err(Failure::Disagreement("some rows disagree".into()))
    }
}
