//! `qbethe` command-line front end.
//!
//! Exit codes: 0 success, 1 failed check or computation error, 2 usage error.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand};
use serde_json::{json, Value};

use qbethe::combinat::TypedVariables;
use qbethe::repr::{build_module, singular_scan, Module};
use qbethe::rmatrix::build_r;
use qbethe::suites::{run_suites, Fault, Suite, VerifyConfig};
use qbethe::weightfn::{compute, Method, WeightRequest};
use qbethe::{Error, Rational, ScalarContext, Variant};

const MAX_RANK: usize = 4;
const MAX_EXCITATIONS: usize = 4;
const MAX_EXCITATIONS_RANK2: usize = 6;
const SAMPLE_STREAM: u64 = 0x51;

#[derive(Parser)]
#[command(name = "qbethe", version, about = "Exact off-shell Bethe vectors over the rationals")]
struct Cli {
    /// Worker threads for parallel sums and suites.
    #[arg(long, global = true, env = "QBETHE_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// R-matrix operations.
    Rmatrix {
        #[command(subcommand)]
        action: RmatrixCmd,
    },
    /// Weight function computation and verification.
    Weight {
        #[command(subcommand)]
        action: WeightCmd,
    },
    /// Module operations.
    Module {
        #[command(subcommand)]
        action: ModuleCmd,
    },
    /// Run verification suites (same as `weight verify`).
    Verify(VerifyArgs),
}

#[derive(Subcommand)]
enum RmatrixCmd {
    /// Print R(u, v) as a row-major matrix of "p/q" strings.
    Dump(DumpArgs),
}

#[derive(Subcommand)]
enum WeightCmd {
    /// Compute one weight vector.
    Compute(ComputeArgs),
    /// Run verification suites.
    Verify(VerifyArgs),
}

#[derive(Subcommand)]
enum ModuleCmd {
    /// Describe a module: dimension, singular vector, lambda values.
    Inspect(InspectArgs),
}

#[derive(Args)]
struct Common {
    /// Rank N of gl(N).
    #[arg(long = "N", value_name = "N")]
    rank: usize,
    #[arg(long, default_value = "twist")]
    variant: Variant,
    /// Deformation parameter.
    #[arg(long, default_value = "3/7")]
    q: Rational,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Write JSON here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct DumpArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, allow_hyphen_values = true)]
    u: Rational,
    #[arg(long, allow_hyphen_values = true)]
    v: Rational,
}

#[derive(Args)]
struct ComputeArgs {
    #[command(flatten)]
    common: Common,
    /// Excitation numbers n_1,...,n_{N-1}.
    #[arg(long, value_name = "COUNTS", value_delimiter = ',', required = true)]
    n: Vec<usize>,
    /// Module recipe, e.g. `vec@2` or `tensor(vec@2,vec@5/3)`.
    #[arg(long)]
    module: String,
    #[arg(long, default_value = "direct")]
    method: Method,
    /// Variables `a:l=p/q,...` (1-based type and slot); sampled from the seed if absent.
    #[arg(long, allow_hyphen_values = true)]
    t: Option<String>,
    /// Lift the desk-scale size limits.
    #[arg(long)]
    force: bool,
}

#[derive(Args)]
struct InspectArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    module: String,
    /// Spectral parameter for the lambda values; sampled if absent.
    #[arg(long, allow_hyphen_values = true)]
    u: Option<Rational>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name or `all`.
    suite: String,
    /// Largest rank exercised.
    #[arg(long = "N", value_name = "N", default_value_t = 3)]
    rank: usize,
    #[arg(long, default_value_t = 3)]
    max_excitations: usize,
    /// Number of seeds, starting at `--seed`.
    #[arg(long, default_value_t = 3)]
    seeds: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value = "3/7")]
    q: Rational,
    /// Random spectral tuples per seed for the R-matrix suites.
    #[arg(long, default_value_t = 20)]
    samples: usize,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    force: bool,
    /// Corrupt one construction on purpose (mutation testing).
    #[arg(long, hide = true)]
    fault: Option<Fault>,
}

fn usage(msg: impl std::fmt::Display) -> ! {
    Cli::command().error(ErrorKind::ValueValidation, msg).exit()
}

fn emit(output: Option<&PathBuf>, value: &Value) -> std::io::Result<()> {
    let text = serde_json::to_string_pretty(value).expect("json serializes") + "\n";
    match output {
        Some(path) => fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn error_json(e: &Error) -> Value {
    json!({ "error": e.kind(), "message": e.to_string() })
}

fn context(q: &Rational, seed: u64) -> ScalarContext {
    ScalarContext::new(q.clone(), seed).unwrap_or_else(|e| usage(e))
}

fn check_rank(rank: usize, force: bool) {
    if rank == 0 {
        usage("--N must be at least 1");
    }
    if rank > MAX_RANK && !force {
        usage(format!("--N {rank} exceeds {MAX_RANK}; pass --force to run anyway"));
    }
}

fn check_excitations(rank: usize, total: usize, force: bool) {
    let cap = if rank == 2 { MAX_EXCITATIONS_RANK2 } else { MAX_EXCITATIONS };
    if total > cap && !force {
        usage(format!("{total} excitations exceed {cap} for N = {rank}; pass --force to run anyway"));
    }
}

/// Parse `a:l=p/q,...` into a full assignment for `counts`.
fn parse_vars(spec: &str, counts: &[usize]) -> std::result::Result<TypedVariables, String> {
    let mut seen: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
    for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (key, value) = part.split_once('=').ok_or_else(|| format!("expected a:l=p/q, got {part:?}"))?;
        let (a, l) = key.split_once(':').ok_or_else(|| format!("expected a:l, got {key:?}"))?;
        let a: usize = a.trim().parse().map_err(|_| format!("bad type index {a:?}"))?;
        let l: usize = l.trim().parse().map_err(|_| format!("bad slot index {l:?}"))?;
        if a == 0 || a > counts.len() || l == 0 || l > counts[a - 1] {
            return Err(format!("variable {a}:{l} is outside n = {counts:?}"));
        }
        let t: Rational = value.trim().parse().map_err(|e: Error| e.to_string())?;
        if seen.insert((a, l), t).is_some() {
            return Err(format!("variable {a}:{l} given twice"));
        }
    }
    let values: Vec<Vec<Rational>> = counts
        .iter()
        .enumerate()
        .map(|(a, &c)| {
            (1..=c)
                .map(|l| seen.remove(&(a + 1, l)).ok_or_else(|| format!("variable {}:{l} missing", a + 1)))
                .collect()
        })
        .collect::<std::result::Result<_, _>>()?;
    Ok(TypedVariables::new(values))
}

fn finish(output: Option<&PathBuf>, outcome: Result<Value, Error>) -> ExitCode {
    let (value, code) = match outcome {
        Ok(v) => (v, ExitCode::SUCCESS),
        Err(e) => (error_json(&e), ExitCode::from(1)),
    };
    match emit(output, &value) {
        Ok(()) => code,
        Err(e) => {
            eprintln!("qbethe: cannot write output: {e}");
            ExitCode::from(1)
        }
    }
}

fn cmd_dump(args: &DumpArgs) -> ExitCode {
    let c = &args.common;
    check_rank(c.rank, false);
    let ctx = context(&c.q, c.seed);
    let outcome = build_r(&ctx, c.variant, c.rank, &args.u, &args.v).map(|r| {
        json!({
            "variant": c.variant, "N": c.rank, "q": c.q, "u": args.u, "v": args.v, "matrix": r.rows(),
        })
    });
    finish(c.output.as_ref(), outcome)
}

fn build(ctx: &ScalarContext, c: &Common, recipe: &str) -> Result<std::sync::Arc<Module>, Error> {
    build_module(ctx, c.rank, c.variant, recipe)
}

fn cmd_compute(args: &ComputeArgs) -> ExitCode {
    let c = &args.common;
    check_rank(c.rank, args.force);
    if c.rank < 2 {
        usage("weight compute needs --N at least 2");
    }
    if args.n.len() != c.rank - 1 {
        usage(format!("--n needs {} entries for N = {}, got {}", c.rank - 1, c.rank, args.n.len()));
    }
    check_excitations(c.rank, args.n.iter().sum(), args.force);
    let explicit = args.t.as_deref().map(|s| parse_vars(s, &args.n).unwrap_or_else(|e| usage(e)));
    let ctx = context(&c.q, c.seed);
    let outcome = (|| {
        let module = build(&ctx, c, &args.module)?;
        let vars = match &explicit {
            Some(v) => v.clone(),
            None => TypedVariables::sample(&ctx, &args.n, &module.evaluation_points(), SAMPLE_STREAM),
        };
        let req = WeightRequest::new(module, vars, c.variant, args.method)?;
        let result = compute(&ctx, &req)?;
        Ok(json!({
            "module": req.module.recipe(),
            "variant": c.variant,
            "method": args.method,
            "N": c.rank,
            "n": args.n,
            "q": c.q,
            "seed": c.seed,
            "t": req.vars,
            "vector": result.vector,
            "meta": result.meta,
        }))
    })();
    finish(c.output.as_ref(), outcome)
}

fn cmd_inspect(args: &InspectArgs) -> ExitCode {
    let c = &args.common;
    check_rank(c.rank, false);
    let ctx = context(&c.q, c.seed);
    let outcome = (|| {
        let module = build(&ctx, c, &args.module)?;
        let u = match &args.u {
            Some(u) => u.clone(),
            None => ctx.sample_generic_stream(1, &module.evaluation_points(), SAMPLE_STREAM)[0].clone(),
        };
        let lambdas: Vec<Rational> = (0..c.rank).map(|b| module.lambda(b, &u)).collect::<Result<_, _>>()?;
        let scan = singular_scan(&ctx, &module)?;
        let top: Option<Vec<usize>> =
            module.top_level().map(|t| t.iter().enumerate().filter(|(_, &x)| x).map(|(k, _)| k).collect());
        Ok(json!({
            "module": module.recipe(),
            "N": c.rank,
            "variant": c.variant,
            "q": c.q,
            "dim": module.dim(),
            "evaluation_points": module.evaluation_points(),
            "singular_index": scan.index,
            "u": u,
            "lambda": lambdas,
            "top_level": top,
        }))
    })();
    finish(c.output.as_ref(), outcome)
}

fn cmd_verify(args: &VerifyArgs) -> ExitCode {
    check_rank(args.rank, args.force);
    check_excitations(args.rank, args.max_excitations, args.force);
    if args.seeds == 0 {
        usage("--seeds must be at least 1");
    }
    let suites: Vec<Suite> = if args.suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![args.suite.parse().unwrap_or_else(|e: Error| usage(e))]
    };
    context(&args.q, args.seed);
    let mut cfg = VerifyConfig::new(args.rank, args.max_excitations, (args.seed..args.seed + args.seeds).collect());
    cfg.q = args.q.clone();
    cfg.samples = args.samples;
    cfg.fault = args.fault;
    let report = run_suites(&suites, &cfg);
    for s in &report.suites {
        let status = match (s.passed, s.gated) {
            (true, _) => "PASS",
            (false, true) => "FAIL",
            (false, false) => "DIFFERS (not gated)",
        };
        eprintln!("{}: {status} {}/{}", s.suite, s.checks - s.failures, s.checks);
    }
    let value = serde_json::to_value(&report).expect("report serializes");
    if let Err(e) = emit(args.output.as_ref(), &value) {
        eprintln!("qbethe: cannot write output: {e}");
        return ExitCode::from(1);
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("qbethe: thread pool: {e}");
        }
    }
    match &cli.command {
        Command::Rmatrix { action: RmatrixCmd::Dump(a) } => cmd_dump(a),
        Command::Weight { action: WeightCmd::Compute(a) } => cmd_compute(a),
        Command::Weight { action: WeightCmd::Verify(a) } | Command::Verify(a) => cmd_verify(a),
        Command::Module { action: ModuleCmd::Inspect(a) } => cmd_inspect(a),
    }
}
