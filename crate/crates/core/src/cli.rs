//! The `spex` command line. [`run`] takes explicit streams so it can be
//! driven in-process.
//!
//! Exit codes: 0 success, 1 infeasible parameters, 2 input/output or format
//! error, 3 a verification that found a counterexample.

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::conn::{kappa_h_r, lambda_h_r, ConnError};
use crate::families::{b_lambda, f_lambda, g_kappa, k_family, Attachment, ExtremalParams, FamilyError, LabeledFamily};
use crate::graph::{decode_graph6, encode_graph6, to_dot, EdgeListJson, Graph};
use crate::spectral::{
    component_bracket, hong_shu_fang_bound, is_hsf_extremal, perron, SpectralConfig, SpectralError,
};
use crate::verify::{verify_class_maximum, verify_edge_extremal, verify_vertex_extremal, Mode, VerifyError, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INFEASIBLE: i32 = 1;
pub const EXIT_IO: i32 = 2;
pub const EXIT_FAILURE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "spex", version, about = "Spectral extremal graph toolkit")]
pub struct Cli {
    /// Worker threads for verification sharding.
    #[arg(long, env = "SPEX_THREADS", global = true)]
    pub threads: Option<usize>,
    /// Residual bound for power iteration.
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
    /// Margin for strict spectral comparisons.
    #[arg(long, global = true)]
    pub epsilon: Option<f64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a family member.
    Construct(ConstructArgs),
    /// Conditional (edge-)connectivity with a certificate.
    Invariant(InvariantArgs),
    /// Spectral radius and Perron vector.
    Rho(InputArg),
    /// Evaluate a spectral bound.
    Bound(BoundArgs),
    /// Run an extremality check and print its report.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Family {
    GKappa,
    BLambda,
    KFamily,
    FLambda,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Format {
    Graph6,
    Dot,
    Json,
}

#[derive(Debug, Args)]
pub struct ParamArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 2)]
    pub r: usize,
    #[arg(long, default_value_t = 1)]
    pub h: usize,
    #[arg(long)]
    pub delta: usize,
    #[arg(long, conflicts_with = "lambda")]
    pub kappa: Option<usize>,
    #[arg(long)]
    pub lambda: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    #[command(flatten)]
    pub params: ParamArgs,
    /// Edges from `K_1` into `K_h` (class members only).
    #[arg(long)]
    pub t: Option<usize>,
    /// Class-member attachment as JSON: {"base_targets": [...], "extra": [[big, small], ...]}.
    #[arg(long)]
    pub attachment: Option<String>,
    #[arg(long, value_enum, default_value = "graph6")]
    pub format: Format,
    /// Also write the block map as JSON to this path.
    #[arg(long)]
    pub blocks: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum InvariantKind {
    Kappa,
    Lambda,
}

#[derive(Debug, Args)]
pub struct InputArg {
    /// Graph file (graph6 or JSON edge list); "-" reads stdin.
    pub input: String,
}

#[derive(Debug, Args)]
pub struct InvariantArgs {
    #[arg(long, value_enum)]
    pub kind: InvariantKind,
    #[arg(long)]
    pub r: usize,
    #[arg(long)]
    pub h: usize,
    #[command(flatten)]
    pub input: InputArg,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum BoundKind {
    Hsf,
    Bracket,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[arg(long, value_enum)]
    pub kind: BoundKind,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub delta: Option<usize>,
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long)]
    pub h: Option<usize>,
    /// Optional graph to test against the bound.
    pub input: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckArg {
    #[value(name = "1.2")]
    VertexExtremal,
    #[value(name = "1.3")]
    EdgeExtremal,
    #[value(name = "lemma-3.4")]
    ClassMaximum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exhaustive,
    Randomized,
    Neighborhood,
    FamilyRestricted,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub theorem: CheckArg,
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    #[arg(long, default_value_t = 100_000)]
    pub iterations: u64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub chains: u64,
    #[arg(long, default_value_t = 2)]
    pub radius: usize,
    #[arg(long)]
    pub checkpoint: Option<PathBuf>,
    /// Permit exhaustive search at n = 8.
    #[arg(long)]
    pub long_running: bool,
    /// Accept edge parameters below the order threshold (probe only).
    #[arg(long)]
    pub below_threshold: bool,
}

#[derive(Debug)]
enum CliError {
    Infeasible(String),
    Io(String),
    Failed(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Infeasible(_) => EXIT_INFEASIBLE,
            CliError::Io(_) => EXIT_IO,
            CliError::Failed(_) => EXIT_FAILURE,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Infeasible(m) | CliError::Io(m) | CliError::Failed(m) => m,
        }
    }
}

impl From<FamilyError> for CliError {
    fn from(e: FamilyError) -> Self {
        match e {
            FamilyError::Params(_) | FamilyError::Attachment(_) | FamilyError::NotAMember(_) => {
                CliError::Infeasible(e.to_string())
            }
            _ => CliError::Io(e.to_string()),
        }
    }
}

impl From<VerifyError> for CliError {
    fn from(e: VerifyError) -> Self {
        if e.is_parameter_error() {
            CliError::Infeasible(e.to_string())
        } else {
            CliError::Io(e.to_string())
        }
    }
}

impl From<ConnError> for CliError {
    fn from(e: ConnError) -> Self {
        CliError::Infeasible(e.to_string())
    }
}

impl From<SpectralError> for CliError {
    fn from(e: SpectralError) -> Self {
        match e {
            SpectralError::Disconnected | SpectralError::Precondition(_) | SpectralError::InvalidConfig(_) => {
                CliError::Infeasible(e.to_string())
            }
            _ => CliError::Io(e.to_string()),
        }
    }
}

fn io_err(e: impl std::fmt::Display) -> CliError {
    CliError::Io(e.to_string())
}

/// Parses graph6 or a JSON edge list, whichever the text looks like.
pub fn parse_graph(text: &str) -> Result<Graph, String> {
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        let e: EdgeListJson = serde_json::from_str(trimmed).map_err(|e| format!("JSON edge list: {e}"))?;
        Graph::try_from(&e).map_err(|e| e.to_string())
    } else {
        let line = trimmed.lines().map(str::trim).find(|l| !l.is_empty()).unwrap_or("");
        decode_graph6(line).map_err(|e| e.to_string())
    }
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    out: &'a mut dyn Write,
}

impl Io<'_> {
    fn read_graph(&mut self, source: &str) -> Result<Graph, CliError> {
        let text = if source == "-" {
            let mut s = String::new();
            self.stdin.read_to_string(&mut s).map_err(io_err)?;
            s
        } else {
            fs::read_to_string(source).map_err(|e| CliError::Io(format!("{source}: {e}")))?
        };
        parse_graph(&text).map_err(|e| CliError::Io(format!("{source}: {e}")))
    }

    fn json(&mut self, value: &impl serde::Serialize) -> Result<(), CliError> {
        let text = serde_json::to_string_pretty(value).map_err(io_err)?;
        writeln!(self.out, "{text}").map_err(io_err)
    }
}

fn spectral_config(cli: &Cli) -> Result<SpectralConfig, CliError> {
    let mut cfg = SpectralConfig::default();
    if let Some(t) = cli.tolerance {
        cfg.tolerance = t;
    }
    if let Some(e) = cli.epsilon {
        cfg.comparison_epsilon = e;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn params(a: &ParamArgs, below_threshold: bool) -> Result<ExtremalParams, CliError> {
    let p = match (a.kappa, a.lambda) {
        (Some(k), None) => ExtremalParams::vertex(a.n, a.r, a.h, a.delta, k),
        (None, Some(l)) if below_threshold => ExtremalParams::edge_below_threshold(a.n, a.r, a.h, a.delta, l),
        (None, Some(l)) => ExtremalParams::edge(a.n, a.r, a.h, a.delta, l),
        _ => return Err(CliError::Infeasible("exactly one of --kappa and --lambda is required".into())),
    };
    p.map_err(|e| CliError::Infeasible(e.to_string()))
}

fn emit_graph(io: &mut Io, g: &Graph, format: Format) -> Result<(), CliError> {
    match format {
        Format::Graph6 => writeln!(io.out, "{}", encode_graph6(g)).map_err(io_err),
        Format::Dot => write!(io.out, "{}", to_dot(g)).map_err(io_err),
        Format::Json => io.json(&EdgeListJson::from(g)),
    }
}

fn construct(a: &ConstructArgs, io: &mut Io) -> Result<(), CliError> {
    let family: Option<LabeledFamily> = match a.family {
        Family::GKappa => Some(g_kappa(&params(&a.params, false)?)?),
        Family::BLambda => Some(b_lambda(&params(&a.params, false)?)?),
        Family::KFamily => {
            let p = params(&a.params, false)?;
            let t = a.t.ok_or_else(|| CliError::Infeasible("--t is required for k-family".into()))?;
            let text = a
                .attachment
                .as_deref()
                .ok_or_else(|| CliError::Infeasible("--attachment is required for k-family".into()))?;
            let att: Attachment =
                serde_json::from_str(text).map_err(|e| CliError::Infeasible(format!("attachment: {e}")))?;
            Some(k_family(&p, t, &att)?)
        }
        Family::FLambda => None,
    };
    match family {
        Some(f) => {
            if let Some(path) = &a.blocks {
                let text = serde_json::to_string_pretty(&f.sidecar()).map_err(io_err)?;
                fs::write(path, text + "\n").map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            }
            emit_graph(io, &f.graph, a.format)
        }
        None => {
            let lambda = a.params.lambda.ok_or_else(|| CliError::Infeasible("--lambda is required".into()))?;
            let g = f_lambda(a.params.n, a.params.delta, lambda)?;
            if a.blocks.is_some() {
                return Err(CliError::Infeasible("f-lambda has no block map".into()));
            }
            emit_graph(io, &g, a.format)
        }
    }
}

#[derive(serde::Serialize)]
struct InvariantOutput {
    kind: &'static str,
    r: usize,
    h: usize,
    defined: bool,
    value: Option<usize>,
    cut: serde_json::Value,
    components: serde_json::Value,
}

fn invariant(a: &InvariantArgs, io: &mut Io) -> Result<(), CliError> {
    let g = io.read_graph(&a.input.input)?;
    let (kind, cert) = match a.kind {
        InvariantKind::Kappa => ("kappa", kappa_h_r(&g, a.r, a.h)?.certificate().map(serde_json::to_value)),
        InvariantKind::Lambda => ("lambda", lambda_h_r(&g, a.r, a.h)?.certificate().map(serde_json::to_value)),
    };
    let cert = cert.transpose().map_err(io_err)?;
    let field = |name: &str| cert.as_ref().map_or(serde_json::Value::Null, |c| c[name].clone());
    io.json(&InvariantOutput {
        kind,
        r: a.r,
        h: a.h,
        defined: cert.is_some(),
        value: cert.as_ref().and_then(|c| c["value"].as_u64()).map(|v| v as usize),
        cut: field("cut"),
        components: field("components"),
    })
}

fn bound(a: &BoundArgs, cfg: &SpectralConfig, io: &mut Io) -> Result<(), CliError> {
    let g = match &a.input {
        Some(src) => Some(io.read_graph(src)?),
        None => None,
    };
    let rho = match &g {
        Some(g) => Some(perron(g, cfg)?.rho),
        None => None,
    };
    let missing = |flag: &str| CliError::Infeasible(format!("--{flag} is required without an input graph"));
    match a.kind {
        BoundKind::Hsf => {
            let n = a.n.or(g.as_ref().map(Graph::order)).ok_or_else(|| missing("n"))?;
            let m = a.m.or(g.as_ref().map(Graph::size)).ok_or_else(|| missing("m"))?;
            let delta = a.delta.or(g.as_ref().map(Graph::min_degree)).ok_or_else(|| missing("delta"))?;
            let b = hong_shu_fang_bound(n, m, delta)?;
            io.json(&json!({
                "kind": "hsf", "n": n, "m": m, "delta": delta, "bound": b, "rho": rho,
                "satisfied": rho.map(|r| r <= b + cfg.comparison_epsilon),
                "equality_class": g.as_ref().map(is_hsf_extremal),
            }))
        }
        BoundKind::Bracket => {
            let n = a.n.or(g.as_ref().map(Graph::order)).ok_or_else(|| missing("n"))?;
            let r = a.r.ok_or_else(|| CliError::Infeasible("--r is required".into()))?;
            let h = a.h.ok_or_else(|| CliError::Infeasible("--h is required".into()))?;
            let b = component_bracket(n, r, h)?;
            io.json(&json!({
                "kind": "bracket", "n": n, "r": r, "h": h, "lower": b.lower, "upper": b.upper, "rho": rho,
                "satisfied": rho.map(|x| b.contains(x, cfg.comparison_epsilon)),
            }))
        }
    }
}

fn verify(a: &VerifyArgs, cfg: &SpectralConfig, threads: Option<usize>, io: &mut Io) -> Result<(), CliError> {
    let p = params(&a.params, a.below_threshold)?;
    let mode_arg = a.mode.unwrap_or(match a.theorem {
        CheckArg::ClassMaximum => ModeArg::FamilyRestricted,
        _ => ModeArg::Exhaustive,
    });
    let mode = match mode_arg {
        ModeArg::Exhaustive => Mode::Exhaustive,
        ModeArg::Randomized => Mode::Randomized { iterations: a.iterations, seed: a.seed, chains: a.chains },
        ModeArg::Neighborhood => Mode::Neighborhood { radius: a.radius },
        ModeArg::FamilyRestricted => Mode::FamilyRestricted,
    };
    let opts = VerifyOptions {
        mode,
        cfg: *cfg,
        long_running: a.long_running,
        checkpoint: a.checkpoint.as_deref(),
        shard_budget: None,
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        builder = builder.num_threads(t.max(1));
    }
    let pool = builder.build().map_err(io_err)?;
    let report = pool.install(|| match a.theorem {
        CheckArg::VertexExtremal => verify_vertex_extremal(&p, &opts),
        CheckArg::EdgeExtremal => verify_edge_extremal(&p, &opts),
        CheckArg::ClassMaximum => verify_class_maximum(&p, &opts),
    })?;
    io.json(&report)?;
    if !report.passed && !p.below_threshold {
        return Err(CliError::Failed(format!(
            "verification failed: {} counterexample(s), matches_construction = {}",
            report.counterexamples.len(),
            report.matches_construction
        )));
    }
    Ok(())
}

/// Runs one invocation and returns its exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let display_only = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let sink: &mut dyn Write = if display_only { stdout } else { stderr };
            let _ = write!(sink, "{}", e.render());
            return if display_only { EXIT_OK } else { EXIT_IO };
        }
    };
    let mut io = Io { stdin, out: stdout };
    let result = spectral_config(&cli).and_then(|cfg| match &cli.command {
        Command::Construct(a) => construct(a, &mut io),
        Command::Invariant(a) => invariant(a, &mut io),
        Command::Rho(a) => {
            let g = io.read_graph(&a.input)?;
            io.json(&perron(&g, &cfg)?)
        }
        Command::Bound(a) => bound(a, &cfg, &mut io),
        Command::Verify(a) => verify(a, &cfg, cli.threads, &mut io),
    });
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message());
            e.code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str], stdin: &str) -> (i32, String, String) {
        let mut input = stdin.as_bytes();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("spex").chain(args.iter().copied()), &mut input, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn construct_graph6() {
        let (code, out, _) =
            call(&["construct", "--family", "g-kappa", "--n", "7", "--r", "2", "--h", "1", "--delta", "2", "--kappa", "1"], "");
        assert_eq!(code, 0);
        let g = decode_graph6(out.trim()).unwrap();
        assert_eq!((g.order(), g.size()), (7, 6 + 1 + 6));
    }

    #[test]
    fn invariant_on_stdin() {
        let c6 = encode_graph6(&Graph::cycle(6).unwrap());
        let (code, out, _) = call(&["invariant", "--kind", "kappa", "--r", "2", "--h", "1", "-"], &c6);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["value"], 2);
        assert_eq!(v["cut"], json!([0, 3]));
    }

    #[test]
    fn exit_codes() {
        let (code, _, err) =
            call(&["construct", "--family", "g-kappa", "--n", "4", "--delta", "1", "--kappa", "1"], "");
        assert_eq!(code, EXIT_INFEASIBLE, "{err}");
        assert_eq!(call(&["rho", "/nonexistent/graph.g6"], "").0, EXIT_IO);
        assert_eq!(call(&["rho", "-"], "not graph6 \u{1}").0, EXIT_IO);
        assert_eq!(call(&["frobnicate"], "").0, EXIT_IO);
        assert_eq!(call(&["--help"], "").0, EXIT_OK);
    }
}
