mod output;

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qtough_core::extremal::{
    proof_g2_case1, proof_g3_case2, proof_thm12_g2, proof_thm12_g3, proof_thm12_g3prime, JoinParts, Theorem,
};
use qtough_core::io::{parse_graph, write_graph};
use qtough_core::spectral::{adjacency_spectral_radius, das_feng_yu_bound, q_index, DEFAULT_TOL};
use qtough_core::toughness::{l_toughness, toughness, TOUGHNESS_MAX_ORDER};
use qtough_core::verify::suites::{run_suite, Suite, SuiteConfig};
use qtough_core::verify::{canonical_order, Tally};
use qtough_core::{Graph, GraphFormat, SampleModel};
use serde_json::json;

use output::{ReportFormat, ReportWriter};

const THREADS_VAR: &str = "Q_TOUGH_THREADS";

/// Spectral toughness laboratory: invariants, extremal graphs and verification suites.
#[derive(Parser, Debug)]
#[command(name = "qtough", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print n, e, connectivity, α, q, ρ, the edge-count bound on q, t and t_l.
    Invariants {
        /// graph6 or edge-list file; `-` reads standard input.
        path: PathBuf,
        #[arg(long)]
        l: Option<usize>,
        /// Input format; detected from the first byte when omitted.
        #[arg(long, value_parser = parse_graph_format)]
        input: Option<GraphFormat>,
        #[arg(long, value_enum, default_value_t = TextOrJson::Text)]
        format: TextOrJson,
    },
    /// Emit a member of one of the join families.
    Extremal {
        #[arg(value_enum)]
        family: Family,
        #[command(flatten)]
        params: FamilyParams,
        #[arg(long, value_enum, default_value_t = GraphOut::G6)]
        format: GraphOut,
        /// Print part sizes and the predicted t_l instead of the graph.
        #[arg(long)]
        describe: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run a verification suite and emit JSON-lines or CSV reports.
    Verify(VerifyArgs),
    /// Re-encode a graph between graph6 and edge-list.
    Convert {
        path: PathBuf,
        #[arg(long, value_parser = parse_graph_format)]
        input: Option<GraphFormat>,
        #[arg(long, value_enum, default_value_t = GraphOut::G6)]
        format: GraphOut,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct FamilyParams {
    #[arg(long)]
    b: Option<usize>,
    #[arg(long)]
    l: Option<usize>,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    s: Option<usize>,
    #[arg(long)]
    omega: Option<usize>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(value_parser = parse_suite)]
    suite: Suite,
    #[arg(long, value_parser = parse_theorem)]
    theorem: Option<Theorem>,
    #[arg(long)]
    b: Option<usize>,
    #[arg(long)]
    l: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    s: Option<usize>,
    #[arg(long)]
    omega: Option<usize>,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    /// Corpus size for the lemma suites.
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// near-complete:M, extremal-plus:M or gnp:P.
    #[arg(long, value_parser = parse_model)]
    model: Option<SampleModel>,
    /// Largest number of edges removed from K_n by the exhaustive suite.
    #[arg(long)]
    edge_budget: Option<usize>,
    #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
    format: ReportFormat,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TextOrJson {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GraphOut {
    G6,
    Edges,
}

impl From<GraphOut> for GraphFormat {
    fn from(f: GraphOut) -> Self {
        match f {
            GraphOut::G6 => GraphFormat::Graph6,
            GraphOut::Edges => GraphFormat::EdgeList,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    Thm11,
    Thm12,
    G2Case1,
    G3Case2,
    Thm12G2,
    Thm12G3,
    Thm12G3prime,
}

fn family_name(f: Family) -> String {
    f.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
}

fn parse_graph_format(s: &str) -> Result<GraphFormat, String> {
    s.parse()
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
}

fn parse_theorem(s: &str) -> Result<Theorem, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_model(s: &str) -> Result<SampleModel, String> {
    s.parse().map_err(|e| format!("{e}"))
}

/// Failure classes mapped onto the exit-status contract.
enum Failure {
    Usage(String),
    Verification,
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| format!("{THREADS_VAR} must be a positive integer, got `{raw}`"))?;
    rayon::ThreadPoolBuilder::new().num_threads(threads).build_global().map_err(|e| e.to_string())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Invariants { path, l, input, format } => {
            let g = read_graph(&path, input)?;
            let text = invariants(&g, l, format)?;
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
        Command::Extremal { family, params, format, describe, output } => {
            let (parts, theorem) = build_family(family, &params)?;
            let text = if describe {
                describe_family(family, &params, &parts, theorem)
            } else {
                warn_family(&params, &parts, theorem);
                let g = parts.graph().map_err(usage)?;
                let mut s = write_graph(&g, format.into());
                if !s.ends_with('\n') {
                    s.push('\n');
                }
                s
            };
            emit(output.as_ref(), &text)
        }
        Command::Convert { path, input, format, output } => {
            let g = read_graph(&path, input)?;
            let mut s = write_graph(&g, format.into());
            if !s.ends_with('\n') {
                s.push('\n');
            }
            emit(output.as_ref(), &s)
        }
        Command::Verify(args) => verify(args),
    }
}

fn read_graph(path: &PathBuf, format: Option<GraphFormat>) -> Result<Graph, Failure> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?
    };
    parse_graph(&text, format).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn emit(path: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => Ok(io::stdout().write_all(text.as_bytes())?),
    }
}

fn invariants(g: &Graph, l: Option<usize>, format: TextOrJson) -> Result<String, Failure> {
    let n = g.order();
    let mut rows: Vec<(&str, serde_json::Value)> = vec![
        ("n", json!(n)),
        ("e", json!(g.edge_count())),
        ("connected", json!(g.is_connected())),
        ("alpha", json!(g.independence_number())),
    ];
    if n > 0 {
        rows.push(("q", json!(q_index(g, DEFAULT_TOL).map_err(usage)?)));
        rows.push(("rho", json!(adjacency_spectral_radius(g, DEFAULT_TOL).map_err(usage)?)));
    }
    if n >= 2 {
        rows.push(("q_bound", json!(das_feng_yu_bound(g).map_err(usage)?)));
    }
    if n <= TOUGHNESS_MAX_ORDER {
        rows.push(("t", json!(toughness(g).map_err(usage)?.value.to_string())));
        if let Some(l) = l {
            rows.push(("t_l", json!(l_toughness(g, l).map_err(usage)?.value.to_string())));
        }
    } else {
        eprintln!("warning: n = {n} exceeds the exact toughness budget of {TOUGHNESS_MAX_ORDER}; t omitted");
    }
    Ok(match format {
        TextOrJson::Json => {
            let map: serde_json::Map<String, serde_json::Value> =
                rows.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
            format!("{}\n", serde_json::Value::Object(map))
        }
        TextOrJson::Text => rows
            .into_iter()
            .map(|(k, v)| match v {
                serde_json::Value::String(s) => format!("{k}: {s}\n"),
                other => format!("{k}: {other}\n"),
            })
            .collect(),
    })
}

fn require(value: Option<usize>, flag: &str, family: Family) -> Result<usize, Failure> {
    value.ok_or_else(|| Failure::Usage(format!("--{flag} is required for {}", family_name(family))))
}

fn build_family(family: Family, p: &FamilyParams) -> Result<(JoinParts, Option<Theorem>), Failure> {
    let n = p.n;
    let parts = match family {
        Family::Thm11 | Family::Thm12 => {
            let theorem = if family == Family::Thm11 { Theorem::Thm11 } else { Theorem::Thm12 };
            let (b, l) = (require(p.b, "b", family)?, require(p.l, "l", family)?);
            theorem.check_params(b, l).map_err(usage)?;
            return Ok((theorem.extremal(b, l, n).map_err(usage)?, Some(theorem)));
        }
        Family::G2Case1 => proof_g2_case1(require(p.b, "b", family)?, require(p.omega, "omega", family)?, n),
        Family::G3Case2 => proof_g3_case2(require(p.b, "b", family)?, n),
        Family::Thm12G2 => proof_thm12_g2(require(p.s, "s", family)?, require(p.omega, "omega", family)?, n),
        Family::Thm12G3 => proof_thm12_g3(require(p.b, "b", family)?, require(p.l, "l", family)?, n),
        Family::Thm12G3prime => {
            proof_thm12_g3prime(require(p.b, "b", family)?, require(p.l, "l", family)?, n)
        }
    };
    Ok((parts.map_err(usage)?, None))
}

fn warn_family(p: &FamilyParams, parts: &JoinParts, theorem: Option<Theorem>) {
    if parts.is_disconnected() {
        eprintln!("warning: join part size 0, graph disconnected");
    }
    if let (Some(t), Some(b), Some(l)) = (theorem, p.b, p.l) {
        if let Ok(n_min) = t.n_min(b, l) {
            if p.n < n_min {
                eprintln!("warning: n = {} is below the theorem's threshold {n_min}", p.n);
            }
        }
    }
}

fn describe_family(family: Family, p: &FamilyParams, parts: &JoinParts, theorem: Option<Theorem>) -> String {
    warn_family(p, parts, theorem);
    let mut out = format!(
        "family: {}\njoin: {}\nclique: {}\nisolated: {}\nn: {}\ne: {}\nconnected: {}\n",
        family_name(family),
        parts.join,
        parts.clique,
        parts.isolated,
        parts.order(),
        parts.edge_count(),
        !parts.is_disconnected()
    );
    if let (Some(t), Some(b), Some(l)) = (theorem, p.b, p.l) {
        out.push_str(&format!("predicted_t_l: {}\n", t.extremal_toughness(b, l)));
        out.push_str(&format!("toughness_bound: {}\n", t.toughness_bound(b)));
        if let Ok(n_min) = t.n_min(b, l) {
            out.push_str(&format!("n_min: {n_min}\n"));
        }
    }
    out
}

fn verify(args: VerifyArgs) -> Result<(), Failure> {
    let cfg = SuiteConfig {
        theorem: args.theorem,
        b: args.b,
        l: args.l,
        n: args.n,
        s: args.s,
        omega: args.omega,
        tol: args.tol,
        trials: args.trials,
        samples: args.samples,
        seed: args.seed,
        model: args.model,
        edge_budget: args.edge_budget,
    };
    let mut reports = run_suite(args.suite, &cfg).map_err(usage)?;
    canonical_order(&mut reports);
    let header = json!({
        "suite": args.suite.name(),
        "tol": args.tol,
        "samples": args.samples,
        "seed": args.seed,
        "model": args.model.map_or_else(|| "default".to_string(), |m| m.to_string()),
    });
    let mut writer = ReportWriter::open(args.output.as_ref(), args.format)?;
    writer.header(&header)?;
    for r in &reports {
        writer.report(r)?;
    }
    writer.finish()?;
    let tally = Tally::of(&reports);
    eprintln!(
        "{}: {} reports, {} passed, {} failed, {} other",
        args.suite, tally.total, tally.passed, tally.failed, tally.other
    );
    if tally.failed > 0 {
        Err(Failure::Verification)
    } else {
        Ok(())
    }
}
