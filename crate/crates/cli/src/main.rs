//! `cpath`: normalize computational paths, decide rw-equality, export
//! rewrite traces, compute circle winding numbers, and run the
//! naturals/lambda constructions from the command line.
//!
//! Inputs are s-expressions, passed literally, as a file name, or as `-`
//! for stdin. Exit codes are stable: 1 parse error, 2 endpoint
//! incoherence, 3 fuel exhaustion, 4 uninhabited premise.

use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use cpath_core::{
    circle_normalize, code, decode, encode, find_path, normalize, normalize_sequence, parse_path,
    parse_term, rw_equal, CircleError, CodeTag, CodeWitness, EngineConfig, FindPathError,
    LoopExpr, NatError, NormalizeError, ParsePathError, Path, RwEqualError, Strategy,
    TraceRecord,
};

#[derive(Parser)]
#[command(name = "cpath", version, about = "computational path rewriting toolkit")]
struct Cli {
    /// Maximum rewrite steps per normalization.
    #[arg(long, global = true)]
    fuel: Option<u64>,

    /// Redex selection strategy: `lo` (leftmost-outermost) or `priority`.
    #[arg(long, global = true)]
    strategy: Option<String>,

    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,

    /// Use rule 39 exactly as printed, skipping its endpoint check.
    #[arg(long = "rule39-literal", global = true)]
    rule39_literal: bool,

    /// Configuration file (key=value lines: fuel, strategy,
    /// rule39_literal). `./cpath.conf` is read when present; flags win.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reduce a path to rw-normal form; prints the normal form and the
    /// step count.
    Normalize { path: String },
    /// Decide rw-equality of two paths with shared endpoints.
    Equal { left: String, right: String },
    /// Emit the full rewrite trace of a normalization.
    Trace {
        path: String,
        /// Write the trace to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Winding number of a loop expression at the circle's base point.
    Winding {
        path: String,
        /// Also print the rewrite trace.
        #[arg(long)]
        trace: bool,
    },
    /// Transport the canonical witness along a path between numerals.
    NatEncode { m: u64, n: u64, path: String },
    /// The path corresponding to the unit witness of code(m, n).
    NatDecode { m: u64, n: u64 },
    /// Construct a beta-eta equality certificate between two terms.
    LambdaPath { left: String, right: String },
}

enum CliError {
    Parse(String),
    Coherence(String),
    Fuel(String),
    Uninhabited(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 1,
            CliError::Coherence(_) => 2,
            CliError::Fuel(_) => 3,
            CliError::Uninhabited(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Parse(m)
            | CliError::Coherence(m)
            | CliError::Fuel(m)
            | CliError::Uninhabited(m) => m,
        }
    }
}

impl From<cpath_core::ParseError> for CliError {
    fn from(e: cpath_core::ParseError) -> Self {
        CliError::Parse(format!("parse error: {e}"))
    }
}

impl From<ParsePathError> for CliError {
    fn from(e: ParsePathError) -> Self {
        match e {
            ParsePathError::Syntax(err) => CliError::Parse(format!("parse error: {err}")),
            ParsePathError::Incoherent(err) => CliError::Coherence(format!("incoherent path: {err}")),
        }
    }
}

impl From<NormalizeError> for CliError {
    fn from(e: NormalizeError) -> Self {
        match e {
            NormalizeError::FuelExhausted { .. } => CliError::Fuel(e.to_string()),
            NormalizeError::IllFormed(err) => CliError::Coherence(err.to_string()),
        }
    }
}

impl From<RwEqualError> for CliError {
    fn from(e: RwEqualError) -> Self {
        match e {
            RwEqualError::Endpoints(err) => CliError::Coherence(err.to_string()),
            RwEqualError::Normalize(err) => err.into(),
        }
    }
}

impl From<CircleError> for CliError {
    fn from(e: CircleError) -> Self {
        CliError::Coherence(e.to_string())
    }
}

impl From<NatError> for CliError {
    fn from(e: NatError) -> Self {
        match e {
            NatError::UninhabitedPremise { .. } | NatError::NotAWitness { .. } => {
                CliError::Uninhabited(e.to_string())
            }
            NatError::Engine(err) => err.into(),
            other => CliError::Coherence(other.to_string()),
        }
    }
}

impl From<FindPathError> for CliError {
    fn from(e: FindPathError) -> Self {
        CliError::Fuel(e.to_string())
    }
}

/// Resolve a positional input: `-` reads stdin, an existing file is
/// read, anything else is the expression itself.
fn read_input(arg: &str) -> Result<String, CliError> {
    if arg == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::Parse(format!("stdin: {e}")))?;
        return Ok(buf);
    }
    let p = std::path::Path::new(arg);
    if p.is_file() {
        return fs::read_to_string(p).map_err(|e| CliError::Parse(format!("{arg}: {e}")));
    }
    Ok(arg.to_string())
}

fn engine_config(cli: &Cli) -> Result<EngineConfig, CliError> {
    let mut cfg = EngineConfig::default();

    let config_path = cli
        .config
        .clone()
        .or_else(|| PathBuf::from("cpath.conf").is_file().then(|| PathBuf::from("cpath.conf")));
    if let Some(path) = config_path {
        let text = fs::read_to_string(&path)
            .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::Parse(format!(
                    "{}:{}: expected key=value",
                    path.display(),
                    lineno + 1
                )));
            };
            let (key, value) = (key.trim(), value.trim());
            match key {
                "fuel" => {
                    cfg.fuel = value.parse().map_err(|_| {
                        CliError::Parse(format!("{}:{}: bad fuel", path.display(), lineno + 1))
                    })?;
                }
                "strategy" => {
                    cfg.strategy = Strategy::from_name(value).ok_or_else(|| {
                        CliError::Parse(format!("{}:{}: bad strategy", path.display(), lineno + 1))
                    })?;
                }
                "rule39_literal" => {
                    cfg.rule39_literal = value.parse().map_err(|_| {
                        CliError::Parse(format!(
                            "{}:{}: bad rule39_literal",
                            path.display(),
                            lineno + 1
                        ))
                    })?;
                }
                other => {
                    return Err(CliError::Parse(format!(
                        "{}:{}: unknown key '{other}'",
                        path.display(),
                        lineno + 1
                    )))
                }
            }
        }
    }

    if let Some(fuel) = cli.fuel {
        cfg.fuel = fuel;
    }
    if let Some(name) = &cli.strategy {
        cfg.strategy = Strategy::from_name(name)
            .ok_or_else(|| CliError::Parse(format!("unknown strategy '{name}'")))?;
    }
    if cli.rule39_literal {
        cfg.rule39_literal = true;
    }
    Ok(cfg)
}

fn parse_path_arg(arg: &str) -> Result<Path, CliError> {
    Ok(parse_path(&read_input(arg)?)?)
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let cfg = engine_config(cli)?;
    match &cli.command {
        Command::Normalize { path } => {
            let p = parse_path_arg(path)?;
            let (nf, trace) = normalize(&p, &cfg)?;
            if cli.json {
                println!(
                    "{}",
                    json!({ "normal_form": nf.to_string(), "steps": trace.len() })
                );
            } else {
                println!("{nf}");
                println!("steps: {}", trace.len());
            }
        }
        Command::Equal { left, right } => {
            let p = parse_path_arg(left)?;
            let q = parse_path_arg(right)?;
            let eq = rw_equal(&p, &q, &cfg)?;
            if cli.json {
                println!("{}", json!({ "equal": eq }));
            } else {
                println!("{eq}");
            }
        }
        Command::Trace { path, out } => {
            let p = parse_path_arg(path)?;
            let (nf, trace) = normalize(&p, &cfg)?;
            let record = TraceRecord::new(&p, &nf, &trace);
            let rendered = if cli.json { record.to_json() } else { render_trace(&record) };
            match out {
                Some(file) => fs::write(file, rendered + "\n")
                    .map_err(|e| CliError::Parse(format!("{}: {e}", file.display())))?,
                None => println!("{rendered}"),
            }
        }
        Command::Winding { path, trace } => {
            let p = parse_path_arg(path)?;
            let expr = LoopExpr::new(p.clone())?;
            let w = circle_normalize(&expr, &cfg)?;
            if cli.json {
                println!("{}", json!({ "winding": w.0 }));
            } else {
                println!("{}", w.0);
            }
            if *trace {
                let (nf, steps) = normalize(&p, &cfg)?;
                println!("{}", render_trace(&TraceRecord::new(&p, &nf, &steps)));
            }
        }
        Command::NatEncode { m, n, path } => {
            let p = parse_path_arg(path)?;
            let w = encode(*m, *n, &p, &cfg)?;
            if cli.json {
                println!("{}", json!({ "witness": w.to_string() }));
            } else {
                println!("{w}");
            }
        }
        Command::NatDecode { m, n } => {
            let witness = match code(*m, *n) {
                CodeTag::Unit => CodeWitness::Star,
                CodeTag::Empty => CodeWitness::Uninhabited,
            };
            let p = decode(*m, *n, &witness)?;
            if cli.json {
                println!("{}", json!({ "path": p.to_string() }));
            } else {
                println!("{p}");
            }
        }
        Command::LambdaPath { left, right } => {
            let m = parse_term(&read_input(left)?)?;
            let n = parse_term(&read_input(right)?)?;
            match find_path(&m, &n, cfg.fuel)? {
                None => {
                    if cli.json {
                        println!("{}", json!({ "certificate": serde_json::Value::Null }));
                    } else {
                        println!("none");
                    }
                }
                Some(p) => {
                    let left_seq = normalize_sequence(&m, cfg.fuel).expect("already normalized");
                    let right_seq = normalize_sequence(&n, cfg.fuel).expect("already normalized");
                    if cli.json {
                        println!(
                            "{}",
                            json!({
                                "certificate": p.to_string(),
                                "source": m.to_string(),
                                "target": n.to_string(),
                                "left_terms": left_seq.terms.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
                                "right_terms": right_seq.terms.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
                            })
                        );
                    } else {
                        println!("{p}");
                        for (label, seq) in [("left", &left_seq), ("right", &right_seq)] {
                            for (i, step) in seq.steps.iter().enumerate() {
                                println!(
                                    "{label} {i}: {} at {} gives {}",
                                    step.kind, step.loc, seq.terms[i + 1]
                                );
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn render_trace(record: &TraceRecord) -> String {
    let mut out = String::new();
    out.push_str(&format!("input: {}\n", record.input));
    for s in &record.steps {
        out.push_str(&format!(
            "{}: {} (rule {}) at [{}]\n  before: {}\n  after:  {}\n",
            s.index,
            s.rule,
            s.number,
            s.position.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" "),
            s.before,
            s.after,
        ));
    }
    out.push_str(&format!("normal form: {} ({} steps)", record.normal_form, record.steps.len()));
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("cpath: {}", err.message());
            ExitCode::from(err.code())
        }
    }
}
