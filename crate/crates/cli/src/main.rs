#![forbid(unsafe_code)]

//! `cisst`: construct, verify, bound, and exactly count completely
//! independent Steiner trees on small graphs.
//!
//! Exit codes are part of the contract: 0 success, 1 verification failed,
//! 2 usage or range error, 3 parse error, 4 internal inconsistency.

mod manifest;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};

use cisst_core::bipartite::{assemble_max_family, bound_report, build_star_family};
use cisst_core::complete::build_cissts_complete;
use cisst_core::dot::{family_dot, tree_dot};
use cisst_core::error::Error as CoreError;
use cisst_core::graph::{BipartiteLabeling, Graph};
use cisst_core::json::{family_to_json, graph_to_json, parse_family_json, parse_graph_json};
use cisst_core::solver::{
    exact_generalized_kappa_star, exact_kappa_star, KappaOutcome, SearchConfig,
};
use cisst_core::tree::{TerminalSet, TreeFamily};
use cisst_core::verify::{verify_characterization, verify_definitional, Verdict};
use cisst_core::VertexId;

use manifest::RunManifest;

const EXIT_VERIFICATION_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_PARSE: u8 = 3;
const EXIT_INTERNAL: u8 = 4;

#[derive(Parser)]
#[command(
    name = "cisst",
    version,
    about = "Completely independent Steiner trees: construction, verification, bounds, exact search"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a verified tree family and write JSON plus DOT artifacts
    Construct {
        #[command(subcommand)]
        target: ConstructTarget,
    },
    /// Check whether a family file is completely independent over a graph file
    Verify {
        /// Graph JSON (must carry a `terminals` list)
        graph: PathBuf,
        /// Family JSON
        family: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Both)]
        mode: Mode,
    },
    /// Evaluate the packing-number bound for K_{m1,m2} across all terminal splits
    Bound {
        #[arg(long)]
        m1: usize,
        #[arg(long)]
        m2: usize,
        #[arg(long)]
        s: usize,
    },
    /// Exact packing number by exhaustive, symmetry-pruned search
    Exact(ExactArgs),
}

#[derive(Subcommand)]
enum ConstructTarget {
    /// Families in the complete graph K_n
    Complete {
        #[arg(long)]
        n: usize,
        /// Terminal ids, e.g. `0,1,2` (defaults to every vertex)
        #[arg(long = "terminals", alias = "s", value_name = "IDS")]
        terminals: Option<String>,
        #[arg(long, default_value = "cisst-out")]
        out: PathBuf,
        #[arg(long, default_value = "family")]
        prefix: String,
    },
    /// Families in the complete bipartite graph K_{m1,m2}
    Bipartite {
        #[arg(long)]
        m1: usize,
        #[arg(long)]
        m2: usize,
        /// Terminals as raw ids or side labels, e.g. `x1,x2,y1` (defaults
        /// to every vertex)
        #[arg(long = "terminals", alias = "s", value_name = "IDS")]
        terminals: Option<String>,
        #[arg(long, default_value = "cisst-out")]
        out: PathBuf,
        #[arg(long, default_value = "family")]
        prefix: String,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Definitional,
    Characterization,
    Both,
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("host").required(true))]
struct ExactArgs {
    /// Graph JSON file
    #[arg(long, group = "host")]
    graph: Option<PathBuf>,
    /// Complete-graph host K_n
    #[arg(long, group = "host", value_name = "N")]
    complete: Option<usize>,
    /// Complete bipartite host, as `m1,m2`
    #[arg(long, group = "host", value_name = "M1,M2")]
    bipartite: Option<String>,
    /// Terminals as raw ids or side labels (required unless --all-subsets
    /// or the graph file carries them)
    #[arg(long = "terminals", alias = "s", value_name = "IDS")]
    terminals: Option<String>,
    /// Compute kappa*_k over all k-element terminal sets
    #[arg(long, value_name = "K")]
    all_subsets: Option<usize>,
    #[arg(long, default_value_t = 200_000_000)]
    node_budget: u64,
    #[arg(long, value_name = "SECONDS")]
    time_budget_secs: Option<u64>,
    /// Worker threads for the all-subsets sweep
    #[arg(long, env = "CISST_JOBS", default_value_t = 1)]
    jobs: usize,
    /// Disable orbit deduplication of terminal subsets
    #[arg(long)]
    no_symmetry: bool,
    /// Stop once a family of this size is found
    #[arg(long, value_name = "K")]
    max_trees: Option<usize>,
}

fn fail(code: u8, message: impl std::fmt::Display) -> ! {
    eprintln!("error: {message}");
    std::process::exit(code as i32)
}

/// Range, shape, and configuration problems all count as usage errors;
/// internal inconsistencies get their own exit code.
fn fail_core(err: CoreError) -> ! {
    match err {
        CoreError::Internal(_) | CoreError::ConstructionFailedVerification(_) => {
            fail(EXIT_INTERNAL, err)
        }
        _ => fail(EXIT_USAGE, err),
    }
}

fn parse_terminals(
    spec: &str,
    labeling: Option<&BipartiteLabeling>,
) -> Result<Vec<VertexId>, String> {
    let mut out = Vec::new();
    for token in spec.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        if token.starts_with('x') || token.starts_with('y') {
            let bl = labeling.ok_or_else(|| format!("label {token:?} needs a bipartite host"))?;
            out.push(bl.parse_label(token).map_err(|e| e.to_string())?);
        } else {
            out.push(
                token
                    .parse::<VertexId>()
                    .map_err(|_| format!("invalid terminal {token:?}"))?,
            );
        }
    }
    Ok(out)
}

fn read_file(path: &Path) -> String {
    match std::fs::read_to_string(path) {
        Ok(text) => text,
        Err(e) => fail(EXIT_PARSE, format!("cannot read {}: {e}", path.display())),
    }
}

fn write_file(path: &Path, content: &str) {
    if let Err(e) = std::fs::write(path, content) {
        fail(EXIT_USAGE, format!("cannot write {}: {e}", path.display()));
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    match cli.command {
        Command::Construct { target } => run_construct(target, started),
        Command::Verify {
            graph,
            family,
            mode,
        } => run_verify(&graph, &family, mode, started),
        Command::Bound { m1, m2, s } => run_bound(m1, m2, s, started),
        Command::Exact(args) => run_exact(args, started),
    }
}

fn run_construct(target: ConstructTarget, started: Instant) -> ExitCode {
    let (family, labeling, out, prefix, digest, params) = match target {
        ConstructTarget::Complete {
            n,
            terminals,
            out,
            prefix,
        } => {
            let ids = match &terminals {
                Some(spec) => match parse_terminals(spec, None) {
                    Ok(ids) => ids,
                    Err(msg) => fail(EXIT_USAGE, msg),
                },
                None => (0..n as VertexId).collect(),
            };
            let s = TerminalSet::new(ids.iter().copied()).unwrap_or_else(|e| fail_core(e));
            let family = build_cissts_complete(n, &s).unwrap_or_else(|e| fail_core(e));
            let digest = format!("complete:{n}:{:?}", s.to_vec());
            let params = serde_json::json!({
                "target": "complete", "n": n, "terminals": s.to_vec(),
            });
            (family, None, out, prefix, digest, params)
        }
        ConstructTarget::Bipartite {
            m1,
            m2,
            terminals,
            out,
            prefix,
        } => {
            let bl = BipartiteLabeling::new(m1, m2).unwrap_or_else(|e| fail_core(e));
            let ids = match &terminals {
                Some(spec) => match parse_terminals(spec, Some(&bl)) {
                    Ok(ids) => ids,
                    Err(msg) => fail(EXIT_USAGE, msg),
                },
                None => (0..bl.vertex_count() as VertexId).collect(),
            };
            let s = TerminalSet::new(ids.iter().copied()).unwrap_or_else(|e| fail_core(e));
            let one_sided = {
                let mut sides = s.iter().map(|v| bl.side(v));
                let first = sides.next().expect("terminal sets are non-empty");
                sides.all(|side| side == first)
            };
            let family = if one_sided {
                build_star_family(&bl, &s).unwrap_or_else(|e| fail_core(e))
            } else {
                assemble_max_family(&bl, &s).unwrap_or_else(|e| fail_core(e))
            };
            let digest = format!("bipartite:{m1},{m2}:{:?}", s.to_vec());
            let params = serde_json::json!({
                "target": "bipartite", "m1": m1, "m2": m2, "terminals": s.to_vec(),
            });
            (family, Some(bl), out, prefix, digest, params)
        }
    };

    if let Err(e) = std::fs::create_dir_all(&out) {
        fail(EXIT_USAGE, format!("cannot create {}: {e}", out.display()));
    }
    let path = |suffix: &str| out.join(format!("{prefix}-{suffix}"));
    write_file(
        &path("graph.json"),
        &graph_to_json(family.host(), labeling.as_ref(), Some(family.terminals())),
    );
    write_file(&path("family.json"), &family_to_json(&family));
    for idx in 0..family.len() {
        let dot = tree_dot(&family, idx, labeling.as_ref()).expect("index in range");
        write_file(&path(&format!("tree-{idx}.dot")), &dot);
    }
    write_file(
        &path("combined.dot"),
        &family_dot(&family, labeling.as_ref()),
    );

    let summary = format!("constructed {} trees", family.len());
    let manifest = RunManifest::new("construct", digest.as_bytes(), params, summary, started);
    write_file(&path("manifest.json"), &manifest.to_pretty_json());
    println!("{} trees", family.len());
    manifest.emit();
    ExitCode::SUCCESS
}

fn run_verify(graph_path: &Path, family_path: &Path, mode: Mode, started: Instant) -> ExitCode {
    let graph_text = read_file(graph_path);
    let family_text = read_file(family_path);
    let parsed = match parse_graph_json(&graph_text) {
        Ok(p) => p,
        Err(e) => fail(EXIT_PARSE, format!("{}: {e}", graph_path.display())),
    };
    let terminals = match parsed.terminals {
        Some(t) => t,
        None => fail(
            EXIT_PARSE,
            format!("{}: graph file carries no terminals", graph_path.display()),
        ),
    };
    let trees = match parse_family_json(&family_text) {
        Ok(t) => t,
        Err(e) => fail(EXIT_PARSE, format!("{}: {e}", family_path.display())),
    };
    let family = TreeFamily::new(parsed.graph, terminals, trees);

    let run = |label: &str, f: fn(&TreeFamily) -> cisst_core::Result<Verdict>| -> Verdict {
        match f(&family) {
            Ok(v) => {
                match &v {
                    Verdict::Independent => println!("{label}: completely independent"),
                    Verdict::Violated(violation) => println!("{label}: {violation}"),
                }
                v
            }
            Err(e @ CoreError::MalformedTree { .. }) => fail(EXIT_PARSE, e),
            Err(e) => fail_core(e),
        }
    };

    let (verdict, summary) = match mode {
        Mode::Definitional => {
            let v = run("definitional", verify_definitional);
            let s = render_verdict("definitional", &v);
            (v, s)
        }
        Mode::Characterization => {
            let v = run("characterization", verify_characterization);
            let s = render_verdict("characterization", &v);
            (v, s)
        }
        Mode::Both => {
            let d = run("definitional", verify_definitional);
            let c = run("characterization", verify_characterization);
            if d.is_independent() != c.is_independent() {
                fail(
                    EXIT_INTERNAL,
                    "the definitional and characterization checks disagree",
                );
            }
            let s = render_verdict("both", &d);
            (d, s)
        }
    };

    let mut digest_material = graph_text.into_bytes();
    digest_material.extend_from_slice(family_text.as_bytes());
    let manifest = RunManifest::new(
        "verify",
        &digest_material,
        serde_json::json!({
            "graph": graph_path.display().to_string(),
            "family": family_path.display().to_string(),
            "mode": match mode {
                Mode::Definitional => "definitional",
                Mode::Characterization => "characterization",
                Mode::Both => "both",
            },
        }),
        summary,
        started,
    );
    manifest.emit();
    if verdict.is_independent() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VERIFICATION_FAILED)
    }
}

fn render_verdict(mode: &str, v: &Verdict) -> String {
    match v {
        Verdict::Independent => format!("completely independent ({mode})"),
        Verdict::Violated(violation) => format!("violation ({mode}): {violation}"),
    }
}

fn run_bound(m1: usize, m2: usize, s: usize, started: Instant) -> ExitCode {
    let report = bound_report(m1, m2, s).unwrap_or_else(|e| fail_core(e));
    let mut table = String::new();
    writeln!(table, "{:>3}  {:<10} {:>5}", "i", "case", "f(i)").unwrap();
    for entry in &report.per_i {
        writeln!(
            table,
            "{:>3}  {:<10} {:>5}",
            entry.i,
            entry.case.to_string(),
            entry.value
        )
        .unwrap();
    }
    print!("{table}");
    println!("minimum: {} at i={}", report.minimum, report.argmin_i);
    if let Some(bound) = report.closed_form_bound {
        println!("closed-form floor bound: {bound}");
    }
    let summary = format!("minimum {} at i={}", report.minimum, report.argmin_i);
    RunManifest::new(
        "bound",
        format!("bound:{m1},{m2},{s}").as_bytes(),
        serde_json::json!({"m1": m1, "m2": m2, "s": s}),
        summary,
        started,
    )
    .emit();
    ExitCode::SUCCESS
}

fn run_exact(args: ExactArgs, started: Instant) -> ExitCode {
    let mut digest_material = String::new();
    let (g, labeling, file_terminals) = if let Some(n) = args.complete {
        digest_material.push_str(&format!("complete:{n}"));
        (
            Graph::complete(n).unwrap_or_else(|e| fail_core(e)),
            None,
            None,
        )
    } else if let Some(spec) = &args.bipartite {
        let (m1, m2) = match spec.split_once(',') {
            Some((a, b)) => match (a.trim().parse::<usize>(), b.trim().parse::<usize>()) {
                (Ok(m1), Ok(m2)) => (m1, m2),
                _ => fail(EXIT_USAGE, format!("invalid --bipartite value {spec:?}")),
            },
            None => fail(EXIT_USAGE, "--bipartite expects `m1,m2`"),
        };
        digest_material.push_str(&format!("bipartite:{m1},{m2}"));
        let (g, bl) = Graph::complete_bipartite(m1, m2).unwrap_or_else(|e| fail_core(e));
        (g, Some(bl), None)
    } else {
        let path = args.graph.as_ref().expect("clap enforces the host group");
        let text = read_file(path);
        digest_material.push_str(&text);
        let parsed = match parse_graph_json(&text) {
            Ok(p) => p,
            Err(e) => fail(EXIT_PARSE, format!("{}: {e}", path.display())),
        };
        (parsed.graph, parsed.labeling, parsed.terminals)
    };

    let cfg = SearchConfig {
        max_trees: args.max_trees,
        node_budget: args.node_budget,
        use_symmetry: !args.no_symmetry,
        time_budget: args.time_budget_secs.map(Duration::from_secs),
        jobs: args.jobs,
    };

    let (outcome, nodes, summary) = if let Some(k) = args.all_subsets {
        digest_material.push_str(&format!(":all-subsets:{k}"));
        let report = exact_generalized_kappa_star(&g, k, &cfg).unwrap_or_else(|e| fail_core(e));
        let summary = match report.outcome {
            KappaOutcome::Exact(v) => {
                println!("kappa_star_{k} = {v}");
                format!("kappa_star_{k}={v}")
            }
            KappaOutcome::Indeterminate { lower, upper } => {
                println!("INDETERMINATE: lower={lower} upper={upper}");
                format!("indeterminate:{lower}..{upper}")
            }
        };
        (report.outcome, report.nodes, summary)
    } else {
        let ids = match &args.terminals {
            Some(spec) => match parse_terminals(spec, labeling.as_ref()) {
                Ok(ids) => ids,
                Err(msg) => fail(EXIT_USAGE, msg),
            },
            None => match &file_terminals {
                Some(t) => t.to_vec(),
                None => fail(
                    EXIT_USAGE,
                    "no terminals given (pass --terminals or use --all-subsets)",
                ),
            },
        };
        let s = TerminalSet::new(ids.iter().copied()).unwrap_or_else(|e| fail_core(e));
        digest_material.push_str(&format!(":terminals:{:?}", s.to_vec()));
        let report = exact_kappa_star(&g, &s, &cfg).unwrap_or_else(|e| fail_core(e));
        let summary = match report.outcome {
            KappaOutcome::Exact(v) => {
                println!("kappa_star = {v}");
                format!("kappa_star={v}")
            }
            KappaOutcome::Indeterminate { lower, upper } => {
                println!("INDETERMINATE: lower={lower} upper={upper}");
                format!("indeterminate:{lower}..{upper}")
            }
        };
        (report.outcome, report.nodes, summary)
    };
    let _ = outcome;

    RunManifest::new(
        "exact",
        digest_material.as_bytes(),
        serde_json::json!({
            "node_budget": args.node_budget,
            "time_budget_secs": args.time_budget_secs,
            "jobs": args.jobs,
            "use_symmetry": !args.no_symmetry,
            "all_subsets": args.all_subsets,
            "nodes": nodes,
        }),
        summary,
        started,
    )
    .emit();
    ExitCode::SUCCESS
}
