//! Command line front end: decompose a graph against a pattern, verify
//! certificates, query the exact small-graph oracles, and sweep fuzz
//! instances. Certificates always go to files; standard output carries a
//! one-line summary (or, for fuzz, the report stream).
//!
//! Exit codes: 0 means the requested artifact was produced and verified,
//! 1 means a verification failure or an input the decomposer had to give
//! up on, 2 means bad input.

use std::collections::BTreeSet;
use std::fs;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use minorcert::apex_forest::decompose_apex_forest;
use minorcert::certificates::{verify_minor_model, verify_tree_decomposition};
use minorcert::io::{
    emit_decomposition, emit_minor_model, emit_reports, parse_decomposition, parse_graph,
    parse_minor_model, GraphFormat, RunReport,
};
use minorcert::oracles::{
    enumerate_connected_graphs, exact_minor_test, exact_treewidth, random_gnp,
    MINOR_HOST_DEFAULT_LIMIT, TREEWIDTH_DEFAULT_LIMIT,
};
use minorcert::wheel::{decompose_wheel, decompose_wheel_auto, CycleSpec};
use minorcert::{wheel_bag_bound, DecomposeOutcome, Error, Graph, PatternSpec, Verdict};

const FORMAT_HELP: &str = "\
Formats:
  Graphs read as edge lists by default: a \"n m\" header line, then one
  \"u v\" line per edge, vertices 0-indexed. Files ending in .g6 (or with
  --format graph6) use graph6 instead. Tree decompositions use the .td
  layout, which is 1-indexed by convention: \"s td <bags> <max bag size>
  <n>\", then \"b <id> <vertices...>\" lines with bag 1 as the root, then
  one \"parent child\" line per tree edge. Minor models are JSON with the
  pattern's edge list and a branch-set list per pattern vertex, 0-indexed
  like the input graph.

Config:
  The file named by MINORCERT_CONFIG is read as key=value lines; it may
  set max-oracle-n, fuzz-seeds, and fuzz-p. Command line flags win.";

#[derive(Parser)]
#[command(name = "minorcert", version, about = "Pattern-forced tree decompositions with checkable certificates", after_help = FORMAT_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Graph input format: edge-list or graph6 (default: by file name)
    #[arg(long, global = true)]
    format: Option<String>,
    /// Certificate output path, or the report directory for fuzz
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Largest graph the exact oracles will accept
    #[arg(long, global = true)]
    max_oracle_n: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose a graph: a rooted tree decomposition or a pattern minor
    Decompose {
        #[command(flatten)]
        pattern: PatternArgs,
        /// Graph file
        graph: PathBuf,
    },
    /// Check a certificate against its graph
    Verify {
        #[command(subcommand)]
        kind: VerifyKind,
    },
    /// Exact answers on small graphs, independently of the decomposer
    Oracle {
        #[command(subcommand)]
        kind: OracleKind,
    },
    /// Decompose and verify a swept batch of instances, one report each
    Fuzz {
        /// Instance source: exhaustive or gnp
        #[arg(long)]
        mode: String,
        /// Vertex count per instance
        #[arg(long)]
        n: u32,
        /// Edge probability for gnp mode
        #[arg(long)]
        p: Option<f64>,
        /// Number of seeds for gnp mode
        #[arg(long)]
        seeds: Option<u64>,
        #[command(flatten)]
        pattern: PatternArgs,
    },
}

#[derive(Args)]
struct PatternArgs {
    /// Pattern family: apex-forest or wheel
    #[arg(long)]
    pattern: String,
    /// Tree file for the apex-forest pattern
    #[arg(long)]
    forest: Option<PathBuf>,
    /// Wheel order
    #[arg(short)]
    k: Option<u32>,
    /// Root the decomposition at these vertices (edge or cycle), e.g. 0,1,2
    #[arg(long, value_delimiter = ',')]
    cycle: Option<Vec<u32>>,
}

#[derive(Subcommand)]
enum VerifyKind {
    /// Tree decomposition in .td layout
    Td { graph: PathBuf, decomposition: PathBuf },
    /// Minor model in JSON
    Minor { graph: PathBuf, model: PathBuf },
}

#[derive(Subcommand)]
enum OracleKind {
    /// Exact treewidth with a witness decomposition
    Treewidth { graph: PathBuf },
    /// Exact pattern-minor test
    Minor {
        #[command(flatten)]
        pattern: PatternArgs,
        graph: PathBuf,
    },
}

#[derive(Default)]
struct Config {
    max_oracle_n: Option<usize>,
    fuzz_seeds: Option<u64>,
    fuzz_p: Option<f64>,
}

fn load_config() -> Result<Config, Error> {
    let Some(path) = std::env::var_os("MINORCERT_CONFIG") else {
        return Ok(Config::default());
    };
    let path = PathBuf::from(path);
    let text = fs::read_to_string(&path)
        .map_err(|e| Error::input(format!("config {}: {e}", path.display())))?;
    let mut config = Config::default();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(Error::input(format!(
                "config line {}: expected key=value, got {line:?}",
                i + 1
            )));
        };
        let (key, value) = (key.trim(), value.trim());
        fn setting<T: std::str::FromStr>(key: &str, value: &str, line: usize) -> Result<T, Error>
        where
            T::Err: std::fmt::Display,
        {
            value.parse().map_err(|e| {
                Error::input(format!("config line {line}: bad value for {key}: {e}"))
            })
        }
        match key {
            "max-oracle-n" => config.max_oracle_n = Some(setting(key, value, i + 1)?),
            "fuzz-seeds" => config.fuzz_seeds = Some(setting(key, value, i + 1)?),
            "fuzz-p" => config.fuzz_p = Some(setting(key, value, i + 1)?),
            other => {
                return Err(Error::input(format!(
                    "config line {}: unknown key {other:?}",
                    i + 1
                )))
            }
        }
    }
    Ok(config)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                // the decomposer gave up on a covered-looking input: that is
                // a gap in this tool, not a problem with the input
                Error::Uncovered(_) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Error> {
    let config = load_config()?;
    match &cli.command {
        Command::Decompose { pattern, graph } => cmd_decompose(cli, pattern, graph),
        Command::Verify { kind } => cmd_verify(cli, kind),
        Command::Oracle { kind } => cmd_oracle(cli, &config, kind),
        Command::Fuzz { mode, n, p, seeds, pattern } => {
            cmd_fuzz(cli, &config, mode, *n, *p, *seeds, pattern)
        }
    }
}

fn read_graph(path: &Path, format: &Option<String>) -> Result<Graph, Error> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::input(format!("{}: {e}", path.display())))?;
    let fmt = match format {
        Some(name) => GraphFormat::from_name(name)?,
        None => GraphFormat::from_path(&path.to_string_lossy()),
    };
    parse_graph(&text, fmt).map_err(|e| at_file(e, path))
}

fn read_text(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::input(format!("{}: {e}", path.display())))
}

/// Prefixes the file name onto a parse position.
fn at_file(e: Error, path: &Path) -> Error {
    match e {
        Error::Parse { at, msg } => Error::Parse { at: format!("{}: {at}", path.display()), msg },
        other => other,
    }
}

fn write_text(path: &Path, text: &str) -> Result<(), Error> {
    fs::write(path, text).map_err(|e| Error::input(format!("{}: {e}", path.display())))
}

fn certificate_path(cli: &Cli, graph: &Path, extension: &str) -> PathBuf {
    match &cli.out {
        Some(out) => out.clone(),
        None => graph.with_extension(extension),
    }
}

impl PatternArgs {
    fn to_spec(&self, format: &Option<String>) -> Result<PatternSpec, Error> {
        let spec = match self.pattern.as_str() {
            "apex-forest" => {
                if self.k.is_some() || self.cycle.is_some() {
                    return Err(Error::input("-k and --cycle only apply to the wheel pattern"));
                }
                let path = self
                    .forest
                    .as_ref()
                    .ok_or_else(|| Error::input("the apex-forest pattern needs --forest"))?;
                PatternSpec::ApexForest { forest: read_graph(path, format)? }
            }
            "wheel" => {
                if self.forest.is_some() {
                    return Err(Error::input("--forest only applies to the apex-forest pattern"));
                }
                let k = self.k.ok_or_else(|| Error::input("the wheel pattern needs -k"))?;
                PatternSpec::Wheel { k }
            }
            other => {
                return Err(Error::input(format!(
                    "unknown pattern {other:?}, expected apex-forest or wheel"
                )))
            }
        };
        spec.validate()?;
        Ok(spec)
    }

    fn label(&self, spec: &PatternSpec) -> String {
        match spec {
            PatternSpec::ApexForest { forest } => format!("apex-forest-{}", forest.n()),
            PatternSpec::Wheel { k } => format!("wheel-{k}"),
        }
    }
}

fn decompose(g: &Graph, spec: &PatternSpec, cycle: &Option<Vec<u32>>) -> Result<DecomposeOutcome, Error> {
    match spec {
        PatternSpec::ApexForest { forest } => decompose_apex_forest(g, forest),
        PatternSpec::Wheel { k } => match cycle {
            Some(vs) => decompose_wheel(g, &CycleSpec::from_vertices(vs.clone())?, *k),
            None => decompose_wheel_auto(g, *k),
        },
    }
}

/// The decomposition bound the pattern promises, checked again here before
/// anything is printed.
fn promised_bound(spec: &PatternSpec) -> usize {
    match spec {
        PatternSpec::ApexForest { forest } => forest.n(),
        PatternSpec::Wheel { k } => wheel_bag_bound(*k),
    }
}

fn cmd_decompose(cli: &Cli, pattern: &PatternArgs, graph_path: &Path) -> Result<u8, Error> {
    let g = read_graph(graph_path, &cli.format)?;
    let spec = pattern.to_spec(&cli.format)?;
    match decompose(&g, &spec, &pattern.cycle)? {
        DecomposeOutcome::Decomposition(d) => {
            let required_root: Option<BTreeSet<u32>> =
                pattern.cycle.as_ref().map(|vs| vs.iter().copied().collect());
            let verdict = verify_tree_decomposition(
                &g,
                &d,
                required_root.as_ref(),
                Some(promised_bound(&spec)),
            );
            if let Verdict::Reject(v) = verdict {
                eprintln!("internal check failed: {}: {}", v.rule, v.witness);
                return Ok(1);
            }
            let path = certificate_path(cli, graph_path, "td");
            write_text(&path, &emit_decomposition(&d, g.n()))?;
            println!(
                "decomposition: {} bags, max bag {}, verified, written to {}",
                d.node_count(),
                d.max_bag_size(),
                path.display()
            );
            Ok(0)
        }
        DecomposeOutcome::Minor(m) => {
            if let Verdict::Reject(v) = verify_minor_model(&g, &m) {
                eprintln!("internal check failed: {}: {}", v.rule, v.witness);
                return Ok(1);
            }
            let path = certificate_path(cli, graph_path, "minor.json");
            write_text(&path, &emit_minor_model(&m))?;
            println!(
                "minor: {} branch sets over {} host vertices, verified, written to {}",
                m.branch.len(),
                m.support().len(),
                path.display()
            );
            Ok(0)
        }
    }
}

fn cmd_verify(cli: &Cli, kind: &VerifyKind) -> Result<u8, Error> {
    let (graph_path, verdict, summary) = match kind {
        VerifyKind::Td { graph, decomposition } => {
            let g = read_graph(graph, &cli.format)?;
            let (d, n) =
                parse_decomposition(&read_text(decomposition)?).map_err(|e| at_file(e, decomposition))?;
            if n != g.n() {
                println!(
                    "rejected: vertex count: decomposition declares {n} vertices, graph has {}",
                    g.n()
                );
                return Ok(1);
            }
            let summary =
                format!("tree decomposition, {} bags, max bag {}", d.node_count(), d.max_bag_size());
            (graph, verify_tree_decomposition(&g, &d, None, None), summary)
        }
        VerifyKind::Minor { graph, model } => {
            let g = read_graph(graph, &cli.format)?;
            let m = parse_minor_model(&read_text(model)?).map_err(|e| at_file(e, model))?;
            let summary = format!(
                "minor model, {} branch sets over {} host vertices",
                m.branch.len(),
                m.support().len()
            );
            (graph, verify_minor_model(&g, &m), summary)
        }
    };
    match verdict {
        Verdict::Accept => {
            println!("accepted: {summary} against {}", graph_path.display());
            Ok(0)
        }
        Verdict::Reject(v) => {
            println!("rejected: {}: {}", v.rule, v.witness);
            Ok(1)
        }
    }
}

fn cmd_oracle(cli: &Cli, config: &Config, kind: &OracleKind) -> Result<u8, Error> {
    match kind {
        OracleKind::Treewidth { graph } => {
            let g = read_graph(graph, &cli.format)?;
            let cap = cli.max_oracle_n.or(config.max_oracle_n).unwrap_or(TREEWIDTH_DEFAULT_LIMIT);
            let (width, d) = exact_treewidth(&g, cap)?;
            assert!(verify_tree_decomposition(&g, &d, None, None).is_accept());
            let path = certificate_path(cli, graph, "td");
            write_text(&path, &emit_decomposition(&d, g.n()))?;
            println!("treewidth {width}, witness written to {}", path.display());
            Ok(0)
        }
        OracleKind::Minor { pattern, graph } => {
            let g = read_graph(graph, &cli.format)?;
            let spec = pattern.to_spec(&cli.format)?;
            let (h, _) = spec.resolved()?;
            let cap =
                cli.max_oracle_n.or(config.max_oracle_n).unwrap_or(MINOR_HOST_DEFAULT_LIMIT);
            match exact_minor_test(&g, &h, cap)? {
                Some(m) => {
                    assert!(verify_minor_model(&g, &m).is_accept());
                    let path = certificate_path(cli, graph, "minor.json");
                    write_text(&path, &emit_minor_model(&m))?;
                    println!(
                        "{} minor present, model written to {}",
                        pattern.label(&spec),
                        path.display()
                    );
                }
                None => println!("no {} minor", pattern.label(&spec)),
            }
            Ok(0)
        }
    }
}

struct InstanceResult {
    outcome: &'static str,
    verdicts: Vec<String>,
    max_bag: Option<usize>,
    certificate: Option<(String, String)>,
    oracle: Option<String>,
    ok: bool,
}

fn run_instance(
    g: &Graph,
    spec: &PatternSpec,
    pattern_graph: &Graph,
    oracle_cap: usize,
) -> Result<InstanceResult, Error> {
    match decompose(g, spec, &None)? {
        DecomposeOutcome::Decomposition(d) => {
            let verdict = verify_tree_decomposition(g, &d, None, Some(promised_bound(spec)));
            let ok = verdict.is_accept();
            let verdicts = vec![verdict_line("decomposition", &verdict)];
            let oracle = if g.n() <= oracle_cap {
                let (tw, _) = exact_treewidth(g, oracle_cap)?;
                let width = d.width()?;
                Some(if tw <= width {
                    format!("exact treewidth {tw} within certificate width {width}")
                } else {
                    format!("exact treewidth {tw} EXCEEDS certificate width {width}")
                })
            } else {
                None
            };
            Ok(InstanceResult {
                outcome: "decomposition",
                verdicts,
                max_bag: Some(d.max_bag_size()),
                certificate: Some(("td".to_string(), emit_decomposition(&d, g.n()))),
                oracle,
                ok,
            })
        }
        DecomposeOutcome::Minor(m) => {
            let verdict = verify_minor_model(g, &m);
            let mut ok = verdict.is_accept();
            let verdicts = vec![verdict_line("minor", &verdict)];
            let oracle = if g.n() <= oracle_cap {
                let agree = exact_minor_test(g, pattern_graph, oracle_cap)?.is_some();
                ok &= agree;
                Some(if agree {
                    "exact search agrees: minor present".to_string()
                } else {
                    "exact search DISAGREES: no minor found".to_string()
                })
            } else {
                None
            };
            Ok(InstanceResult {
                outcome: "minor",
                verdicts,
                max_bag: None,
                certificate: Some(("minor.json".to_string(), emit_minor_model(&m))),
                oracle,
                ok,
            })
        }
    }
}

fn verdict_line(kind: &str, v: &Verdict) -> String {
    match v {
        Verdict::Accept => format!("{kind} accepted"),
        Verdict::Reject(violation) => {
            format!("{kind} rejected: {}: {}", violation.rule, violation.witness)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_fuzz(
    cli: &Cli,
    config: &Config,
    mode: &str,
    n: u32,
    p: Option<f64>,
    seeds: Option<u64>,
    pattern: &PatternArgs,
) -> Result<u8, Error> {
    if pattern.cycle.is_some() {
        return Err(Error::input("--cycle names concrete vertices and cannot sweep"));
    }
    let spec = pattern.to_spec(&cli.format)?;
    let label = pattern.label(&spec);
    let (pattern_graph, _) = spec.resolved()?;
    let oracle_cap = cli.max_oracle_n.or(config.max_oracle_n).unwrap_or(8);

    let instances: Vec<(String, Graph)> = match mode {
        "exhaustive" => enumerate_connected_graphs(n as usize)?
            .into_iter()
            .enumerate()
            .map(|(i, g)| (format!("exh-n{n}-{i:04}"), g))
            .collect(),
        "gnp" => {
            let p = p.or(config.fuzz_p).unwrap_or(0.3);
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::input(format!("edge probability {p} outside [0, 1]")));
            }
            let seeds = seeds.or(config.fuzz_seeds).unwrap_or(50);
            (0..seeds)
                .map(|s| (format!("gnp-n{n}-p{p:.2}-s{s:04}"), random_gnp(n, p, s)))
                .collect()
        }
        other => {
            return Err(Error::input(format!(
                "unknown fuzz mode {other:?}, expected exhaustive or gnp"
            )))
        }
    };

    if let Some(dir) = &cli.out {
        fs::create_dir_all(dir)
            .map_err(|e| Error::input(format!("{}: {e}", dir.display())))?;
    }

    let mut reports = Vec::new();
    let mut failures = 0usize;
    for (id, g) in &instances {
        let run = catch_unwind(AssertUnwindSafe(|| {
            run_instance(g, &spec, &pattern_graph, oracle_cap)
        }));
        let (outcome, verdicts, max_bag, certificate, oracle, ok) = match run {
            Ok(Ok(r)) => {
                let cert = match (&cli.out, r.certificate) {
                    (Some(dir), Some((ext, text))) => {
                        let path = dir.join(format!("{id}.{ext}"));
                        write_text(&path, &text)?;
                        Some(path.display().to_string())
                    }
                    _ => None,
                };
                (r.outcome, r.verdicts, r.max_bag, cert, r.oracle, r.ok)
            }
            Ok(Err(Error::Uncovered(msg))) => {
                ("uncovered", vec![format!("gave up: {msg}")], None, None, None, false)
            }
            Ok(Err(e)) => return Err(e),
            Err(_) => ("panic", vec!["panicked".to_string()], None, None, None, false),
        };
        if !ok {
            failures += 1;
        }
        reports.push(RunReport {
            instance: id.clone(),
            pattern: label.clone(),
            outcome: outcome.to_string(),
            certificate,
            verdicts,
            max_bag,
            oracle,
            timing_ms: None,
        });
    }

    print!("{}", emit_reports(&reports));
    eprintln!(
        "fuzz: {} instances, {} decompositions, {} minors, {} failures",
        reports.len(),
        reports.iter().filter(|r| r.outcome == "decomposition").count(),
        reports.iter().filter(|r| r.outcome == "minor").count(),
        failures
    );
    Ok(u8::from(failures > 0))
}
