//! Command-line front end for the exact metric-jet prolongation engine.
//!
//! Subcommands: `dims`, `count`, `rank`, `kernel`, `table`, `verify`,
//! `geom`.  All numeric output is exact; machine formats render rationals
//! as `p/q` strings.  Exit codes: 0 on success / all-pass, 1 when a
//! verification fails, 2 on usage or input errors.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use metjet::acceptance;
use metjet::counting::{
    analyze_point, count_table, expected_rank, i_closed, i_empirical, trial_point,
    CountCertificate, PointAnalysis, RankPolicy,
};
use metjet::geometry::{
    first_order_matrix, kernel_equation_check, kretschmann, nabla_r_nonzero, ricci, ricci_generic,
    riemann, scalar_curvature, two_jet_from_curvature, CurvatureTensor,
};
use metjet::jetspace::{
    dim_metric_jet, dim_vf_jet, format_coord, metric_point_from_json, metric_point_to_json,
    signature_string, vf_layout, MetricJetPoint, VectorFieldJet,
};
use metjet::prolong::phi_matrix;
use metjet::Rational;

/// Largest dimension / order accepted on the command line; keeps every
/// derived dimension comfortably inside machine integers.
const MAX_N: usize = 12;
const MAX_R: u32 = 12;

#[derive(Parser)]
#[command(
    name = "metjet",
    version,
    about = "Exact ranks, kernels and invariant counts for the prolongated action of vector fields on metric jets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Jet-space dimensions and the expected prolongation rank at (n, r)
    Dims(DimsArgs),
    /// Closed-form count of functionally independent invariants at (n, r)
    Count(CountArgs),
    /// Certified rank of the prolongation matrix, sampled or at a pinned jet
    Rank(RankArgs),
    /// Kernel basis of the prolongation matrix, with the kernel equations
    Kernel(KernelArgs),
    /// Certified invariant-count table over a whole (n, r) grid
    Table(TableArgs),
    /// Run the complete verification suite
    Verify(VerifyArgs),
    /// Curvature, Ricci and scalar report at a jet of order ≥ 2
    Geom(GeomArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Human-readable text
    Table,
    /// JSON document embedding the resolved configuration
    Json,
    /// Comma-separated rows with a header line
    Csv,
}

impl Format {
    fn as_str(self) -> &'static str {
        match self {
            Format::Table => "table",
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Output format
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
    /// Write the report to a file instead of standard output
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SamplingArgs {
    /// Number of sampled jets
    #[arg(long, default_value_t = 5)]
    trials: usize,
    /// Seed of the deterministic sample generator (ChaCha8; trial k draws
    /// from stream k)
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of distinct 61-bit primes whose modular ranks must agree
    #[arg(long, default_value_t = 1, value_name = "K")]
    prime_count: usize,
    /// Three agreeing primes plus an unconditional exact recheck at
    /// moderate sizes
    #[arg(long)]
    paranoid: bool,
}

impl SamplingArgs {
    fn policy(&self) -> Result<RankPolicy, CliError> {
        if self.prime_count < 1 {
            return Err(CliError("--prime-count must be at least 1".into()));
        }
        let mut policy = if self.paranoid { RankPolicy::paranoid() } else { RankPolicy::standard() };
        policy.primes = policy.primes.max(self.prime_count);
        Ok(policy)
    }
}

#[derive(Args)]
struct PointArgs {
    /// Load the jet from a JSON file instead of sampling
    #[arg(long, value_name = "FILE", conflicts_with_all = ["flat", "curvature"])]
    point: Option<PathBuf>,
    /// Use the flat jet in normal form (diagonal ±1, all derivatives zero)
    #[arg(long, conflicts_with = "curvature")]
    flat: bool,
    /// Build the order-2 normal-form jet realizing the curvature tensor in
    /// a JSON file
    #[arg(long, value_name = "FILE")]
    curvature: Option<PathBuf>,
}

#[derive(Args)]
struct DimsArgs {
    /// Base dimension
    #[arg(long)]
    n: usize,
    /// Jet order
    #[arg(long)]
    r: u32,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct CountArgs {
    /// Base dimension
    #[arg(long)]
    n: usize,
    /// Jet order
    #[arg(long)]
    r: u32,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct RankArgs {
    /// Base dimension (required unless --point or --curvature pins the jet)
    #[arg(long)]
    n: Option<usize>,
    /// Jet order (required unless --point or --curvature pins the jet)
    #[arg(long)]
    r: Option<u32>,
    /// Metric signature as P,M (positive, negative); default P = n, M = 0
    #[arg(long, value_parser = parse_signature, value_name = "P,M")]
    signature: Option<(usize, usize)>,
    #[command(flatten)]
    sampling: SamplingArgs,
    #[command(flatten)]
    point: PointArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct KernelArgs {
    /// Base dimension (required unless --point or --curvature pins the jet)
    #[arg(long)]
    n: Option<usize>,
    /// Jet order (required unless --point or --curvature pins the jet)
    #[arg(long)]
    r: Option<u32>,
    /// Metric signature as P,M (positive, negative); default P = n, M = 0
    #[arg(long, value_parser = parse_signature, value_name = "P,M")]
    signature: Option<(usize, usize)>,
    /// Seed used when the jet is sampled
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    point: PointArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct TableArgs {
    /// Largest base dimension of the grid
    #[arg(long, default_value_t = 4)]
    nmax: usize,
    /// Largest jet order of the grid
    #[arg(long, default_value_t = 4)]
    rmax: u32,
    #[command(flatten)]
    sampling: SamplingArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct GeomArgs {
    /// Base dimension (required unless --point or --curvature pins the jet)
    #[arg(long)]
    n: Option<usize>,
    /// Jet order, at least 2 (default 2 when sampling)
    #[arg(long)]
    r: Option<u32>,
    /// Metric signature as P,M (positive, negative); default P = n, M = 0
    #[arg(long, value_parser = parse_signature, value_name = "P,M")]
    signature: Option<(usize, usize)>,
    /// Seed used when the jet is sampled
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    point: PointArgs,
    #[command(flatten)]
    output: OutputArgs,
}

/// Usage or input error; always exits with code 2.
struct CliError(String);

fn parse_signature(s: &str) -> Result<(usize, usize), String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err("expected P,M — e.g. 3,1 for signature (3,1)".into());
    }
    let p: usize = parts[0].trim().parse().map_err(|_| "P must be a nonnegative integer")?;
    let m: usize = parts[1].trim().parse().map_err(|_| "M must be a nonnegative integer")?;
    if p + m == 0 {
        return Err("signature (0,0) has no dimensions".into());
    }
    Ok((p, m))
}

/// Fully resolved run configuration, embedded in every JSON report.
#[derive(Serialize)]
struct RunConfig {
    subcommand: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    r: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    signature: Option<[usize; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    trials: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    prime_count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    paranoid: Option<bool>,
    format: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    point: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    flat: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    curvature: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    out: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    nmax: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rmax: Option<u32>,
}

impl RunConfig {
    fn new(subcommand: &'static str, output: &OutputArgs) -> Self {
        RunConfig {
            subcommand,
            n: None,
            r: None,
            signature: None,
            trials: None,
            seed: None,
            prime_count: None,
            paranoid: None,
            format: output.format.as_str(),
            point: None,
            flat: None,
            curvature: None,
            out: output.out.as_ref().map(|p| p.display().to_string()),
            nmax: None,
            rmax: None,
        }
    }

    fn with_point_args(mut self, args: &PointArgs) -> Self {
        self.point = args.point.as_ref().map(|p| p.display().to_string());
        self.flat = args.flat.then_some(true);
        self.curvature = args.curvature.as_ref().map(|p| p.display().to_string());
        self
    }

    fn with_sampling(mut self, args: &SamplingArgs) -> Self {
        self.trials = Some(args.trials);
        self.seed = Some(args.seed);
        self.prime_count = Some(args.prime_count);
        self.paranoid = Some(args.paranoid);
        self
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Dims(args) => cmd_dims(args),
        Command::Count(args) => cmd_count(args),
        Command::Rank(args) => cmd_rank(args),
        Command::Kernel(args) => cmd_kernel(args),
        Command::Table(args) => cmd_table(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Geom(args) => cmd_geom(args),
    };
    match result {
        Ok(code) => code,
        Err(CliError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn check_bounds(n: usize, r: u32) -> Result<(), CliError> {
    if n == 0 || n > MAX_N {
        return Err(CliError(format!("--n must be between 1 and {MAX_N}, got {n}")));
    }
    if r > MAX_R {
        return Err(CliError(format!("--r must be at most {MAX_R}, got {r}")));
    }
    Ok(())
}

fn check_signature(n: usize, sig: (usize, usize)) -> Result<(), CliError> {
    if sig.0 + sig.1 != n {
        return Err(CliError(format!(
            "signature {} does not sum to the dimension n = {n}",
            signature_string(sig)
        )));
    }
    Ok(())
}

/// Resolve the jet a command operates on: an explicit file, the flat
/// normal form, a curvature seed, or a deterministic sample.
fn resolve_point(
    point: &PointArgs,
    n: Option<usize>,
    r: Option<u32>,
    signature: Option<(usize, usize)>,
    seed: u64,
    default_r: Option<u32>,
) -> Result<(MetricJetPoint, String), CliError> {
    if let Some(path) = &point.point {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError(format!("cannot read {}: {e}", path.display())))?;
        let jet = metric_point_from_json(&text)
            .map_err(|e| CliError(format!("{}: {e}", path.display())))?;
        if let Some(n) = n {
            if n != jet.n() {
                return Err(CliError(format!(
                    "--n {n} does not match the file's dimension {}",
                    jet.n()
                )));
            }
        }
        if let Some(r) = r {
            if r != jet.r() {
                return Err(CliError(format!(
                    "--r {r} does not match the file's order {}",
                    jet.r()
                )));
            }
        }
        if let Some(sig) = signature {
            if sig != jet.signature() {
                return Err(CliError(format!(
                    "--signature {} does not match the file's signature {}",
                    signature_string(sig),
                    signature_string(jet.signature())
                )));
            }
        }
        check_bounds(jet.n(), jet.r())?;
        return Ok((jet, format!("file {}", path.display())));
    }

    if let Some(path) = &point.curvature {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError(format!("cannot read {}: {e}", path.display())))?;
        let tensor = CurvatureTensor::from_json(&text)
            .map_err(|e| CliError(format!("{}: {e}", path.display())))?;
        let tn = tensor.n();
        check_bounds(tn, 2)?;
        if let Some(n) = n {
            if n != tn {
                return Err(CliError(format!(
                    "--n {n} does not match the curvature tensor's dimension {tn}"
                )));
            }
        }
        if let Some(r) = r {
            if r != 2 {
                return Err(CliError("a curvature seed always produces an order-2 jet".into()));
            }
        }
        let sig = signature.unwrap_or((tn, 0));
        check_signature(tn, sig)?;
        let diag: Vec<i64> = (0..tn).map(|i| if i < sig.0 { 1 } else { -1 }).collect();
        let jet = two_jet_from_curvature(&diag, &tensor)
            .map_err(|e| CliError(format!("{}: {e}", path.display())))?;
        return Ok((jet, format!("curvature file {}", path.display())));
    }

    let n = n.ok_or_else(|| {
        CliError("--n is required unless --point or --curvature pins the jet".into())
    })?;
    let r = r.or(default_r).ok_or_else(|| {
        CliError("--r is required unless --point or --curvature pins the jet".into())
    })?;
    check_bounds(n, r)?;
    let sig = signature.unwrap_or((n, 0));
    check_signature(n, sig)?;
    if point.flat {
        Ok((
            MetricJetPoint::flat(n, sig, r),
            format!("flat normal form, signature {}", signature_string(sig)),
        ))
    } else {
        Ok((
            trial_point(n, r, sig, seed, 0),
            format!("sampled jet (seed {seed}, trial 0), signature {}", signature_string(sig)),
        ))
    }
}

fn json_report(config: &RunConfig, mut body: serde_json::Map<String, Value>) -> String {
    let mut doc = serde_json::Map::new();
    doc.insert("config".into(), serde_json::to_value(config).expect("config serializes"));
    doc.append(&mut body);
    let mut text =
        serde_json::to_string_pretty(&Value::Object(doc)).expect("report serializes");
    text.push('\n');
    text
}

// ---------------------------------------------------------------------------
// dims
// ---------------------------------------------------------------------------

fn cmd_dims(args: DimsArgs) -> Result<ExitCode, CliError> {
    check_bounds(args.n, args.r)?;
    let (n, r) = (args.n, args.r);
    let jet_dim = dim_metric_jet(n, r);
    let vf_dim = dim_vf_jet(n, r + 1);
    let difference = jet_dim as i64 - vf_dim as i64;
    let expected = expected_rank(n, r);

    let mut config = RunConfig::new("dims", &args.output);
    config.n = Some(n);
    config.r = Some(r);

    let text = match args.output.format {
        Format::Table => format!(
            "dims at n = {n}, r = {r}\n\
             dim_metric_jet = {jet_dim}\n\
             dim_vf_jet     = {vf_dim}   (vector-field jets of order r+1 = {})\n\
             difference     = {difference}\n\
             expected_rank  = {expected}\n",
            r + 1
        ),
        Format::Json => {
            let mut body = serde_json::Map::new();
            body.insert("dim_metric_jet".into(), json!(jet_dim));
            body.insert("dim_vf_jet".into(), json!(vf_dim));
            body.insert("difference".into(), json!(difference));
            body.insert("expected_rank".into(), json!(expected));
            json_report(&config, body)
        }
        Format::Csv => format!(
            "n,r,dim_metric_jet,dim_vf_jet,difference,expected_rank\n\
             {n},{r},{jet_dim},{vf_dim},{difference},{expected}\n"
        ),
    };
    emit(args.output.out.as_ref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------------
// count
// ---------------------------------------------------------------------------

fn cmd_count(args: CountArgs) -> Result<ExitCode, CliError> {
    check_bounds(args.n, args.r)?;
    let value = i_closed(args.n, args.r);

    let mut config = RunConfig::new("count", &args.output);
    config.n = Some(args.n);
    config.r = Some(args.r);

    let text = match args.output.format {
        Format::Table => format!("{value}\n"),
        Format::Json => {
            let mut body = serde_json::Map::new();
            body.insert("i_closed".into(), json!(value));
            json_report(&config, body)
        }
        Format::Csv => format!("n,r,i_closed\n{},{},{value}\n", args.n, args.r),
    };
    emit(args.output.out.as_ref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------------
// rank
// ---------------------------------------------------------------------------

fn cmd_rank(args: RankArgs) -> Result<ExitCode, CliError> {
    let policy = args.sampling.policy()?;
    let pinned = args.point.point.is_some() || args.point.flat || args.point.curvature.is_some();

    let mut config = RunConfig::new("rank", &args.output)
        .with_point_args(&args.point)
        .with_sampling(&args.sampling);

    if pinned {
        let (jet, source) = resolve_point(
            &args.point,
            args.n,
            args.r,
            args.signature,
            args.sampling.seed,
            None,
        )?;
        config.n = Some(jet.n());
        config.r = Some(jet.r());
        config.signature = Some([jet.signature().0, jet.signature().1]);
        let analysis = analyze_point(&jet, policy);
        let text = render_point_analysis(&config, &args.output.format, &jet, &source, &analysis);
        emit(args.output.out.as_ref(), &text)?;
        return Ok(ExitCode::SUCCESS);
    }

    let n = args
        .n
        .ok_or_else(|| CliError("--n is required unless --point or --curvature pins the jet".into()))?;
    let r = args
        .r
        .ok_or_else(|| CliError("--r is required unless --point or --curvature pins the jet".into()))?;
    check_bounds(n, r)?;
    let sig = args.signature.unwrap_or((n, 0));
    check_signature(n, sig)?;
    if args.sampling.trials < 1 || args.sampling.trials > 1000 {
        return Err(CliError("--trials must be between 1 and 1000".into()));
    }
    config.n = Some(n);
    config.r = Some(r);
    config.signature = Some([sig.0, sig.1]);

    let cert = i_empirical(n, r, sig, args.sampling.trials, args.sampling.seed, policy);
    let text = match args.output.format {
        Format::Table => {
            let ranks: Vec<String> = cert.observed_ranks.iter().map(|v| v.to_string()).collect();
            let mut s = String::new();
            let _ = writeln!(
                s,
                "rank certificate at n = {}, r = {}, signature {}",
                cert.n,
                cert.r,
                signature_string(cert.signature)
            );
            let _ = writeln!(s, "trials = {}, seed = {}", cert.trials, cert.seed);
            let _ = writeln!(
                s,
                "jet dimension {}, vector-field jet dimension {}, expected rank {}",
                cert.jet_dim, cert.vf_jet_dim, cert.expected_rank
            );
            let _ = writeln!(
                s,
                "observed rank {} (per trial: {}), kernel dimension {}",
                cert.observed_rank,
                ranks.join(" "),
                cert.vf_jet_dim - cert.observed_rank
            );
            let _ = writeln!(
                s,
                "i_closed = {}, i_empirical = {}",
                cert.i_closed, cert.i_empirical
            );
            let _ = writeln!(
                s,
                "primes: {:?}; exact elimination used: {}",
                cert.primes, cert.exact_elimination_used
            );
            let _ = writeln!(s, "witnesses: {}", witness_text(&cert));
            let _ = writeln!(s, "result: {}", if cert.pass { "PASS" } else { "FAIL" });
            s
        }
        Format::Json => {
            let mut body = serde_json::Map::new();
            body.insert(
                "certificate".into(),
                serde_json::to_value(&cert).expect("certificate serializes"),
            );
            json_report(&config, body)
        }
        Format::Csv => {
            let mut s = String::from(
                "n,r,p,m,trials,seed,jet_dim,vf_jet_dim,expected_rank,observed_rank,i_closed,i_empirical,exact_elimination_used,pass\n",
            );
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
                cert.n,
                cert.r,
                cert.signature.0,
                cert.signature.1,
                cert.trials,
                cert.seed,
                cert.jet_dim,
                cert.vf_jet_dim,
                cert.expected_rank,
                cert.observed_rank,
                cert.i_closed,
                cert.i_empirical,
                cert.exact_elimination_used,
                cert.pass
            );
            s
        }
    };
    emit(args.output.out.as_ref(), &text)?;
    Ok(if cert.pass { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn witness_text(cert: &CountCertificate) -> String {
    let mut parts = Vec::new();
    if let Some(v) = cert.witness.ricci_generic {
        parts.push(format!("ricci endomorphism generic = {v}"));
    }
    if let Some(v) = cert.witness.nabla_r_nonzero {
        parts.push(format!("covariant curvature derivative nonzero = {v}"));
    }
    if parts.is_empty() {
        "none required at this (n, r)".into()
    } else {
        parts.join(", ")
    }
}

fn render_point_analysis(
    config: &RunConfig,
    format: &Format,
    jet: &MetricJetPoint,
    source: &str,
    analysis: &PointAnalysis,
) -> String {
    match format {
        Format::Table => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "rank analysis at a pinned jet (n = {}, r = {}, signature {})",
                jet.n(),
                jet.r(),
                signature_string(jet.signature())
            );
            let _ = writeln!(s, "source: {source}");
            let _ = writeln!(
                s,
                "rank {} of {} columns, kernel dimension {}",
                analysis.rank,
                dim_vf_jet(jet.n(), jet.r() + 1),
                analysis.kernel_dim
            );
            let _ = writeln!(
                s,
                "primes: {:?}; exact elimination used: {}",
                analysis.evidence.primes, analysis.evidence.exact
            );
            s
        }
        Format::Json => {
            let mut body = serde_json::Map::new();
            body.insert("source".into(), json!(source));
            body.insert(
                "point".into(),
                serde_json::from_str::<Value>(&metric_point_to_json(jet))
                    .expect("point JSON is valid"),
            );
            body.insert(
                "analysis".into(),
                serde_json::to_value(analysis).expect("analysis serializes"),
            );
            json_report(config, body)
        }
        Format::Csv => {
            let mut s = String::from("n,r,p,m,rank,kernel_dim,exact_elimination_used\n");
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{}",
                jet.n(),
                jet.r(),
                jet.signature().0,
                jet.signature().1,
                analysis.rank,
                analysis.kernel_dim,
                analysis.evidence.exact
            );
            s
        }
    }
}

// ---------------------------------------------------------------------------
// kernel
// ---------------------------------------------------------------------------

fn cmd_kernel(args: KernelArgs) -> Result<ExitCode, CliError> {
    let (jet, source) =
        resolve_point(&args.point, args.n, args.r, args.signature, args.seed, None)?;
    let n = jet.n();
    let r = jet.r();

    let mut config = RunConfig::new("kernel", &args.output).with_point_args(&args.point);
    config.n = Some(n);
    config.r = Some(r);
    config.signature = Some([jet.signature().0, jet.signature().1]);
    config.seed = Some(args.seed);

    let matrix = phi_matrix(&jet);
    let basis = matrix.kernel_basis();
    let kernel_dim = basis.len();
    let rank = matrix.ncols() - kernel_dim;
    let labels = vf_layout(n, r + 1);

    let jets: Vec<VectorFieldJet> =
        basis.iter().map(|v| VectorFieldJet::from_column(n, r + 1, v.clone())).collect();

    // At normal-form jets the kernel must satisfy the pointwise equations.
    let mut reports = Vec::new();
    let mut all_hold = true;
    if jet.is_normal_form() {
        for vf in &jets {
            let report = kernel_equation_check(&jet, vf)
                .map_err(|e| CliError(format!("kernel equation check: {e}")))?;
            all_hold &= report.passes();
            reports.push(report);
        }
    }

    // For a one-dimensional kernel the generator is determined by one
    // first-derivative entry; the first-order equations pair each entry with
    // its transpose, so report the below-diagonal representative.
    let free_parameter = if kernel_dim == 1 {
        let b = first_order_matrix(&jets[0]);
        (0..n)
            .flat_map(|h| (0..n).map(move |i| (h, i)))
            .filter(|&(h, i)| h > i)
            .chain((0..n).flat_map(|h| (0..n).map(move |i| (h, i))))
            .find(|&(h, i)| !b[h][i].is_zero())
            .map(|(h, i)| format!("∂u_{}/∂x_{}", h + 1, i + 1))
    } else {
        None
    };

    let text = match args.output.format {
        Format::Table => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "kernel of the prolongation matrix at n = {n}, r = {r}, signature {}",
                signature_string(jet.signature())
            );
            let _ = writeln!(s, "source: {source}");
            let _ = writeln!(s, "rank {rank}, kernel dimension {kernel_dim}");
            for (idx, v) in basis.iter().enumerate() {
                let entries: Vec<String> = labels
                    .iter()
                    .zip(v.iter())
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(label, c)| format!("{label} = {}", format_coord(c)))
                    .collect();
                let _ = writeln!(s, "generator {}: {}", idx + 1, entries.join(", "));
            }
            if jet.is_normal_form() {
                for (idx, report) in reports.iter().enumerate() {
                    let curvature_part = match &report.curvature {
                        Some(res) => format!(
                            ", {} curvature-residual equations (orbit consistent: {})",
                            res.canonical.len(),
                            res.orbit_consistent
                        ),
                        None => String::new(),
                    };
                    let _ = writeln!(
                        s,
                        "kernel equations for generator {}: {} ({} value, {} first-order, {} higher-order{curvature_part})",
                        idx + 1,
                        if report.passes() { "satisfied" } else { "VIOLATED" },
                        report.values.len(),
                        report.killing.len(),
                        report.higher_order.len(),
                    );
                }
            } else {
                let _ = writeln!(
                    s,
                    "kernel equations: skipped (jet is not in normal form at the origin)"
                );
            }
            if let Some(free) = &free_parameter {
                let _ = writeln!(s, "free parameter: {free}");
            }
            s
        }
        Format::Json => {
            let basis_json: Vec<Value> = basis
                .iter()
                .map(|v| {
                    Value::Array(
                        labels
                            .iter()
                            .zip(v.iter())
                            .filter(|(_, c)| !c.is_zero())
                            .map(|(label, c)| {
                                json!({
                                    "component": label.comp + 1,
                                    "beta": label.beta.entries().to_vec(),
                                    "value": format_coord(c),
                                })
                            })
                            .collect(),
                    )
                })
                .collect();
            let equations: Value = if jet.is_normal_form() {
                Value::Array(
                    reports
                        .iter()
                        .map(|report| {
                            json!({
                                "holds": report.passes(),
                                "value_equations": report.values.len(),
                                "first_order_equations": report.killing.len(),
                                "higher_order_equations": report.higher_order.len(),
                                "curvature_residual_equations":
                                    report.curvature.as_ref().map(|c| c.canonical.len()),
                                "orbit_consistent":
                                    report.curvature.as_ref().map(|c| c.orbit_consistent),
                            })
                        })
                        .collect(),
                )
            } else {
                Value::Null
            };
            let mut body = serde_json::Map::new();
            body.insert("source".into(), json!(source));
            body.insert(
                "point".into(),
                serde_json::from_str::<Value>(&metric_point_to_json(&jet))
                    .expect("point JSON is valid"),
            );
            body.insert("rank".into(), json!(rank));
            body.insert("kernel_dim".into(), json!(kernel_dim));
            body.insert("basis".into(), Value::Array(basis_json));
            body.insert("normal_form".into(), json!(jet.is_normal_form()));
            body.insert("equations".into(), equations);
            body.insert("free_parameter".into(), json!(free_parameter));
            json_report(&config, body)
        }
        Format::Csv => {
            let mut s = String::from("generator,component,beta,value\n");
            for (idx, v) in basis.iter().enumerate() {
                for (label, c) in labels.iter().zip(v.iter()) {
                    if !c.is_zero() {
                        let beta: Vec<String> =
                            label.beta.entries().iter().map(|e| e.to_string()).collect();
                        let _ = writeln!(
                            s,
                            "{},{},{},{}",
                            idx + 1,
                            label.comp + 1,
                            beta.join(" "),
                            format_coord(c)
                        );
                    }
                }
            }
            s
        }
    };
    emit(args.output.out.as_ref(), &text)?;
    Ok(if all_hold { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

// ---------------------------------------------------------------------------
// table
// ---------------------------------------------------------------------------

fn cmd_table(args: TableArgs) -> Result<ExitCode, CliError> {
    if args.nmax == 0 || args.nmax > MAX_N {
        return Err(CliError(format!("--nmax must be between 1 and {MAX_N}")));
    }
    if args.rmax > MAX_R {
        return Err(CliError(format!("--rmax must be at most {MAX_R}")));
    }
    if args.sampling.trials < 1 || args.sampling.trials > 1000 {
        return Err(CliError("--trials must be between 1 and 1000".into()));
    }
    let policy = args.sampling.policy()?;

    let mut config = RunConfig::new("table", &args.output).with_sampling(&args.sampling);
    config.nmax = Some(args.nmax);
    config.rmax = Some(args.rmax);

    let certs = count_table(
        args.nmax,
        args.rmax,
        |n| (n, 0),
        args.sampling.trials,
        args.sampling.seed,
        policy,
    );
    let all_pass = certs.iter().all(|c| c.pass);
    let passed = certs.iter().filter(|c| c.pass).count();

    let text = match args.output.format {
        Format::Table => {
            let width = certs
                .iter()
                .map(|c| c.i_empirical.to_string().len())
                .max()
                .unwrap_or(1)
                .max(5)
                + 1;
            let mut s = format!(
                "invariant counts i(n, r), certified by sampling (trials = {}, seed = {})\n",
                args.sampling.trials, args.sampling.seed
            );
            let _ = write!(s, "{:>5}", "n\\r");
            for r in 0..=args.rmax {
                let _ = write!(s, "{:>width$}", format!("r={r}"));
            }
            s.push('\n');
            for n in 1..=args.nmax {
                let _ = write!(s, "{:>5}", format!("n={n}"));
                for r in 0..=args.rmax {
                    let cert = certs
                        .iter()
                        .find(|c| c.n == n && c.r == r)
                        .expect("every cell is present");
                    let cell = if cert.pass {
                        cert.i_empirical.to_string()
                    } else {
                        format!("{}!", cert.i_empirical)
                    };
                    let _ = write!(s, "{cell:>width$}");
                }
                s.push('\n');
            }
            let _ = writeln!(
                s,
                "{passed}/{} cells PASS{}",
                certs.len(),
                if all_pass { "" } else { " — '!' marks FAILED cells" }
            );
            s
        }
        Format::Json => {
            let mut body = serde_json::Map::new();
            body.insert(
                "cells".into(),
                serde_json::to_value(&certs).expect("certificates serialize"),
            );
            body.insert("all_pass".into(), json!(all_pass));
            json_report(&config, body)
        }
        Format::Csv => {
            let mut s = String::from(
                "n,r,p,m,jet_dim,vf_jet_dim,expected_rank,observed_rank,i_closed,i_empirical,exact_elimination_used,pass\n",
            );
            for cert in &certs {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{},{},{},{},{},{},{}",
                    cert.n,
                    cert.r,
                    cert.signature.0,
                    cert.signature.1,
                    cert.jet_dim,
                    cert.vf_jet_dim,
                    cert.expected_rank,
                    cert.observed_rank,
                    cert.i_closed,
                    cert.i_empirical,
                    cert.exact_elimination_used,
                    cert.pass
                );
            }
            s
        }
    };
    emit(args.output.out.as_ref(), &text)?;
    Ok(if all_pass { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, CliError> {
    let config = RunConfig::new("verify", &args.output);
    let results = acceptance::run_all();
    let all_pass = results.iter().all(|r| r.pass);
    let passed = results.iter().filter(|r| r.pass).count();

    let text = match args.output.format {
        Format::Table => {
            let mut s = String::new();
            for res in &results {
                let _ = writeln!(s, "{}", res.line());
            }
            let _ = writeln!(
                s,
                "{}: {passed}/{} criteria passed",
                if all_pass { "PASS" } else { "FAIL" },
                results.len()
            );
            s
        }
        Format::Json => {
            let criteria: Vec<Value> = results
                .iter()
                .map(|res| {
                    json!({
                        "id": res.id,
                        "name": res.name,
                        "pass": res.pass,
                        "within_budget": res.elapsed <= res.budget,
                        "details": res.details,
                    })
                })
                .collect();
            let mut body = serde_json::Map::new();
            body.insert("criteria".into(), Value::Array(criteria));
            body.insert("all_pass".into(), json!(all_pass));
            json_report(&config, body)
        }
        Format::Csv => {
            let mut s = String::from("id,name,pass,within_budget,details\n");
            for res in &results {
                let _ = writeln!(
                    s,
                    "{},{},{},{},\"{}\"",
                    res.id,
                    res.name,
                    res.pass,
                    res.elapsed <= res.budget,
                    res.details.replace('"', "'")
                );
            }
            s
        }
    };
    emit(args.output.out.as_ref(), &text)?;
    Ok(if all_pass { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

// ---------------------------------------------------------------------------
// geom
// ---------------------------------------------------------------------------

fn approx(q: &Rational) -> String {
    match q.to_f64() {
        Some(v) => format!(" (≈ {v:.6})"),
        None => String::new(),
    }
}

fn cmd_geom(args: GeomArgs) -> Result<ExitCode, CliError> {
    let (jet, source) =
        resolve_point(&args.point, args.n, args.r, args.signature, args.seed, Some(2))?;
    if jet.r() < 2 {
        return Err(CliError(format!(
            "curvature needs a jet of order at least 2, got r = {}",
            jet.r()
        )));
    }
    let n = jet.n();

    let mut config = RunConfig::new("geom", &args.output).with_point_args(&args.point);
    config.n = Some(n);
    config.r = Some(jet.r());
    config.signature = Some([jet.signature().0, jet.signature().1]);
    config.seed = Some(args.seed);

    let fail = |e: metjet::geometry::GeometryError| CliError(format!("geometry: {e}"));
    let curvature = riemann(&jet).map_err(fail)?;
    let ricci_data = ricci(&jet).map_err(fail)?;
    let scalar = scalar_curvature(&jet).map_err(fail)?;
    let kret = kretschmann(&jet).map_err(fail)?;
    let generic = ricci_generic(&jet).map_err(fail)?;
    let nabla = if jet.r() >= 3 { Some(nabla_r_nonzero(&jet).map_err(fail)?) } else { None };

    let text = match args.output.format {
        Format::Table => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "geometry report at n = {n}, r = {}, signature {}",
                jet.r(),
                signature_string(jet.signature())
            );
            let _ = writeln!(s, "source: {source}");
            let _ = writeln!(s, "normal form at origin: {}", jet.is_normal_form());
            let _ = writeln!(s, "scalar curvature = {}{}", format_coord(&scalar), approx(&scalar));
            let _ = writeln!(s, "kretschmann      = {}{}", format_coord(&kret), approx(&kret));
            let _ = writeln!(s, "ricci tensor (lower indices):");
            for (a, row) in ricci_data.tensor.iter().enumerate() {
                for (b, value) in row.iter().enumerate() {
                    if !value.is_zero() {
                        let _ = writeln!(s, "  ric[{}][{}] = {}", a + 1, b + 1, format_coord(value));
                    }
                }
            }
            let _ = writeln!(s, "ricci endomorphism has squarefree characteristic polynomial: {generic}");
            let _ = writeln!(s, "curvature components (canonical slots, 1-based):");
            let mut any = false;
            for (i, j, k, l) in CurvatureTensor::canonical_slots(n) {
                let value = curvature.get(i, j, k, l);
                if !value.is_zero() {
                    let _ = writeln!(
                        s,
                        "  R[{}][{}][{}][{}] = {}",
                        i + 1,
                        j + 1,
                        k + 1,
                        l + 1,
                        format_coord(value)
                    );
                    any = true;
                }
            }
            if !any {
                let _ = writeln!(s, "  (flat: all components vanish)");
            }
            match nabla {
                Some(v) => {
                    let _ = writeln!(s, "covariant derivative of curvature nonzero: {v}");
                }
                None => {
                    let _ = writeln!(
                        s,
                        "covariant derivative of curvature: needs order r ≥ 3 (jet has r = {})",
                        jet.r()
                    );
                }
            }
            s
        }
        Format::Json => {
            let ricci_json = |m: &Vec<Vec<Rational>>| -> Value {
                Value::Array(
                    m.iter()
                        .map(|row| {
                            Value::Array(row.iter().map(|v| json!(format_coord(v))).collect())
                        })
                        .collect(),
                )
            };
            let mut body = serde_json::Map::new();
            body.insert("source".into(), json!(source));
            body.insert(
                "point".into(),
                serde_json::from_str::<Value>(&metric_point_to_json(&jet))
                    .expect("point JSON is valid"),
            );
            body.insert("normal_form".into(), json!(jet.is_normal_form()));
            body.insert("scalar_curvature".into(), json!(format_coord(&scalar)));
            body.insert("kretschmann".into(), json!(format_coord(&kret)));
            body.insert("ricci_tensor".into(), ricci_json(&ricci_data.tensor));
            body.insert("ricci_endomorphism".into(), ricci_json(&ricci_data.endomorphism));
            body.insert("ricci_generic".into(), json!(generic));
            body.insert(
                "curvature".into(),
                serde_json::from_str::<Value>(&curvature.to_json())
                    .expect("curvature JSON is valid"),
            );
            body.insert("nabla_r_nonzero".into(), json!(nabla));
            json_report(&config, body)
        }
        Format::Csv => {
            let mut s = String::from("quantity,value\n");
            let _ = writeln!(s, "scalar_curvature,{}", format_coord(&scalar));
            let _ = writeln!(s, "kretschmann,{}", format_coord(&kret));
            for (a, row) in ricci_data.tensor.iter().enumerate() {
                for (b, value) in row.iter().enumerate() {
                    if !value.is_zero() {
                        let _ = writeln!(s, "ric_{}{},{}", a + 1, b + 1, format_coord(value));
                    }
                }
            }
            for (i, j, k, l) in CurvatureTensor::canonical_slots(n) {
                let value = curvature.get(i, j, k, l);
                if !value.is_zero() {
                    let _ = writeln!(
                        s,
                        "R_{}{}{}{},{}",
                        i + 1,
                        j + 1,
                        k + 1,
                        l + 1,
                        format_coord(value)
                    );
                }
            }
            let _ = writeln!(s, "ricci_generic,{generic}");
            if let Some(v) = nabla {
                let _ = writeln!(s, "nabla_r_nonzero,{v}");
            }
            s
        }
    };
    emit(args.output.out.as_ref(), &text)?;
    Ok(ExitCode::SUCCESS)
}
