//! Command-line front end: deterministic JSON/CSV verification reports
//! over the supported parameter grid. Failures land in the report and the
//! exit code; partial reports are still written on errors.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::braidext::{lambda_dim, EXACT_DIM_CEILING};
use crate::error::QError;
use crate::fodc::{f_constants, OmegaCtx};
use crate::ideals::{ad_invariant_check, compare_ideals, tsygan_span};
use crate::invariants::{biinv_lambda_dims, structural_suite, verify_thm2};
use crate::linalg::{RankCertificate, RankMode};
use crate::qgroup::{Branch, CalcParams, Group, Tau};
use crate::report::Report;

#[derive(Parser, Debug)]
#[command(
    name = "qforms",
    version,
    about = "Exact verification reports for the N^2-dimensional bicovariant calculi"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dump the deformation constants of one calculus.
    Constants {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Dimension table of the external algebra: rank A_k for k <= k_max.
    Dims {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long = "k-max", default_value_t = 5)]
        k_max: usize,
        #[command(flatten)]
        mode: ModeArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Bi-invariant dimensions plus graded commutativity and closedness.
    Biinv {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long = "k-max", default_value_t = 4)]
        k_max: usize,
        #[command(flatten)]
        mode: ModeArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Degree-wise comparison of the exterior ideals.
    Ideals {
        #[command(flatten)]
        params: ParamArgs,
        /// Word-length truncation for the universal ideal.
        #[arg(long = "D", default_value_t = 2)]
        d: usize,
        #[arg(long = "k-max", default_value_t = 3)]
        k_max: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// The full structural invariant suite.
    Verify {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Everything above for one parameter set.
    All {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long = "k-max", default_value_t = 4)]
        k_max: usize,
        #[arg(long = "D", default_value_t = 2)]
        d: usize,
        #[command(flatten)]
        mode: ModeArgs,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Args, Debug)]
struct ParamArgs {
    #[arg(long = "N", default_value_t = 2)]
    n: usize,
    #[arg(long, value_enum, default_value_t = TauArg::Plus)]
    tau: TauArg,
    #[arg(long, value_enum, default_value_t = GroupArg::Sl)]
    group: GroupArg,
    #[arg(long, value_enum, default_value_t = BranchArg::Principal)]
    branch: BranchArg,
}

#[derive(Args, Debug)]
struct ModeArgs {
    #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
    mode: ModeArg,
    /// Agreeing modular samples required per rank.
    #[arg(long, default_value_t = 3)]
    samples: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Args, Debug)]
struct OutArgs {
    /// Report destination; stdout when omitted.
    #[arg(long, short)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    /// Worker threads; QFORMS_THREADS or available parallelism when unset.
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum TauArg {
    Plus,
    Minus,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum GroupArg {
    Sl,
    Gl,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum BranchArg {
    Principal,
    Negative,
    #[value(name = "generic-z")]
    GenericZ,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ModeArg {
    Exact,
    Modular,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum FormatArg {
    Json,
    Csv,
}

/// The resolved run configuration echoed into every report.
#[derive(Serialize, Debug, Clone)]
pub struct RunConfig {
    pub command: String,
    pub n: usize,
    pub tau: String,
    pub group: String,
    pub branch: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_max: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    pub mode: String,
    pub samples: usize,
    pub seed: u64,
    pub thread_count: usize,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    tool_version: &'a str,
    params: &'a RunConfig,
    results: &'a [serde_json::Value],
    checks: &'a [crate::report::Check],
}

/// One dims table destined for the CSV projection.
struct DimsTable {
    name: &'static str,
    dims: Vec<usize>,
}

fn exit_code_for(e: &QError) -> i32 {
    match e {
        QError::InvalidParams(_) | QError::Parse(_) => 2,
        _ => 3,
    }
}

fn params_from(a: &ParamArgs) -> Result<CalcParams, QError> {
    let tau = match a.tau {
        TauArg::Plus => Tau::Plus,
        TauArg::Minus => Tau::Minus,
    };
    let group = match a.group {
        GroupArg::Sl => Group::SL,
        GroupArg::Gl => Group::GL,
    };
    let branch = match a.branch {
        BranchArg::Principal => Branch::Principal,
        BranchArg::Negative => Branch::Negative,
        BranchArg::GenericZ => Branch::GenericZ,
    };
    CalcParams::new(a.n, tau, group, branch)
}

fn rank_mode(m: &ModeArgs) -> RankMode {
    match m.mode {
        ModeArg::Exact => RankMode::Exact,
        ModeArg::Modular => RankMode::Modular { samples: m.samples, seed: m.seed },
    }
}

/// Largest k with (N^2)^k within the exact elimination ceiling.
fn exact_degree_cap(n: usize) -> usize {
    let n2 = n * n;
    let mut k = 0;
    while n2.pow(k as u32 + 1) <= EXACT_DIM_CEILING {
        k += 1;
    }
    k
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

struct Collected {
    results: Vec<serde_json::Value>,
    tables: Vec<DimsTable>,
    report: Report,
}

impl Collected {
    fn new() -> Self {
        Collected { results: Vec::new(), tables: Vec::new(), report: Report::new() }
    }
}

fn run_constants(p: &CalcParams, coll: &mut Collected) -> Result<(), QError> {
    let c = p.structure_constants()?;
    let ctx = OmegaCtx::new(p)?;
    let fc = f_constants(&ctx)?;
    let opt = |s: &Option<crate::scalar::Scalar>| {
        s.as_ref().map(|v| v.to_string()).unwrap_or_else(|| "absent".into())
    };
    coll.results.push(json!({
        "name": "structure_constants",
        "qnums": c.qnums.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        "big_q": c.big_q.to_string(),
        "big_q_plus": c.big_q_plus.to_string(),
        "r_tau": c.r_tau.to_string(),
        "theta_tau": c.theta_tau.to_string(),
    }));
    coll.results.push(json!({
        "name": "f_constants",
        "f2_plus": fc.f2_plus.to_string(),
        "f11_plus": fc.f11_plus.to_string(),
        "f2_minus": opt(&fc.f2_minus),
        "f11_minus": opt(&fc.f11_minus),
        "det": opt(&fc.det),
    }));
    coll.report.check(
        "theta nonzero",
        !c.theta_tau.is_zero(),
        format!("theta_tau = {}", c.theta_tau),
    );
    if let Some(det) = &fc.det {
        coll.report.check(
            "f-determinant nonzero",
            !det.is_zero(),
            format!("f2+ f11- - f11+ f2- = {det}"),
        );
    }
    Ok(())
}

fn run_dims(p: &CalcParams, k_max: usize, mode: RankMode, coll: &mut Collected) -> Result<(), QError> {
    let mut dims = Vec::with_capacity(k_max + 1);
    let mut cert = RankCertificate::Exact;
    for k in 0..=k_max {
        let (d, c) = lambda_dim(p, k, mode)?;
        dims.push(d);
        if let RankCertificate::ProbabilisticLowerBoundAgreed { .. } = c {
            cert = c;
        }
    }
    let expected: Vec<usize> = (0..=k_max).map(|k| binom(p.n * p.n, k)).collect();
    coll.report.check_certified(
        "lambda dimension table",
        dims == expected,
        format!("rank A_k = {dims:?}, binomial row {expected:?}"),
        &cert,
    );
    coll.results.push(json!({
        "name": "lambda_dims",
        "dims": dims,
        "certificate": cert.tag(),
    }));
    coll.tables.push(DimsTable { name: "lambda", dims });
    Ok(())
}

fn run_biinv(p: &CalcParams, k_max: usize, mode: RankMode, coll: &mut Collected) -> Result<(), QError> {
    let (dims, cert) = biinv_lambda_dims(p, k_max, mode)?;
    coll.results.push(json!({
        "name": "biinv_lambda_dims",
        "dims": dims,
        "certificate": cert.tag(),
    }));
    coll.report.check_certified(
        "bi-invariant dimension table",
        true,
        format!("dims {dims:?}"),
        &cert,
    );
    coll.tables.push(DimsTable { name: "biinv", dims });
    let cap = exact_degree_cap(p.n);
    let thm2_k = k_max.min(cap);
    coll.report.merge(verify_thm2(p, thm2_k)?);
    if thm2_k < k_max {
        coll.report.skip(
            "graded commutativity beyond exact cap",
            format!("pair checks need exact kernels; capped at total degree {thm2_k}"),
        );
    }
    Ok(())
}

fn run_ideals(p: &CalcParams, d: usize, k_max: usize, coll: &mut Collected) -> Result<(), QError> {
    let cmp = compare_ideals(p, d, k_max)?;
    coll.results.push(json!({
        "name": "ideal_comparison",
        "s_dim": cmp.s_dim,
        "u_dim": cmp.u_dim,
        "quotient_dim": cmp.quotient_dim,
        "stabilized": cmp.stabilized,
        "nu1nu1_in_u": cmp.nu1nu1_in_u,
    }));
    coll.report.merge(cmp.report);
    if p.n == 2 && p.group == Group::SL {
        coll.report.merge(ad_invariant_check(p)?);
    } else {
        coll.report.skip("ad-invariant slice", "specific to N = 2 on SL");
    }
    coll.report.merge(tsygan_span(p)?);
    Ok(())
}

fn run_command(cli: &Command, p: &CalcParams, coll: &mut Collected) -> Result<(), QError> {
    match cli {
        Command::Constants { .. } => run_constants(p, coll),
        Command::Dims { k_max, mode, .. } => run_dims(p, *k_max, rank_mode(mode), coll),
        Command::Biinv { k_max, mode, .. } => run_biinv(p, *k_max, rank_mode(mode), coll),
        Command::Ideals { d, k_max, .. } => run_ideals(p, *d, *k_max, coll),
        Command::Verify { .. } => {
            coll.report.merge(structural_suite(p)?);
            Ok(())
        }
        Command::All { k_max, d, mode, .. } => {
            run_constants(p, coll)?;
            run_dims(p, *k_max, rank_mode(mode), coll)?;
            run_biinv(p, *k_max, rank_mode(mode), coll)?;
            run_ideals(p, *d, (*k_max).max(2), coll)?;
            coll.report.merge(structural_suite(p)?);
            Ok(())
        }
    }
}

fn config_of(cli: &Command, threads: usize) -> RunConfig {
    let (name, params, k_max, d, mode) = match cli {
        Command::Constants { params, .. } => ("constants", params, None, None, None),
        Command::Dims { params, k_max, mode, .. } => ("dims", params, Some(*k_max), None, Some(mode)),
        Command::Biinv { params, k_max, mode, .. } => ("biinv", params, Some(*k_max), None, Some(mode)),
        Command::Ideals { params, d, k_max, .. } => ("ideals", params, Some(*k_max), Some(*d), None),
        Command::Verify { params, .. } => ("verify", params, None, None, None),
        Command::All { params, k_max, d, mode, .. } => {
            ("all", params, Some(*k_max), Some(*d), Some(mode))
        }
    };
    RunConfig {
        command: name.into(),
        n: params.n,
        tau: format!("{:?}", params.tau).to_lowercase(),
        group: format!("{:?}", params.group).to_lowercase(),
        branch: match params.branch {
            BranchArg::Principal => "principal".into(),
            BranchArg::Negative => "negative".into(),
            BranchArg::GenericZ => "generic-z".into(),
        },
        k_max,
        d,
        mode: match mode.map(|m| m.mode) {
            Some(ModeArg::Modular) => "modular".into(),
            _ => "exact".into(),
        },
        samples: mode.map(|m| m.samples).unwrap_or(0),
        seed: mode.map(|m| m.seed).unwrap_or(0),
        thread_count: threads,
    }
}

fn out_args(cli: &Command) -> &OutArgs {
    match cli {
        Command::Constants { out, .. }
        | Command::Dims { out, .. }
        | Command::Biinv { out, .. }
        | Command::Ideals { out, .. }
        | Command::Verify { out, .. }
        | Command::All { out, .. } => out,
    }
}

fn param_args(cli: &Command) -> &ParamArgs {
    match cli {
        Command::Constants { params, .. }
        | Command::Dims { params, .. }
        | Command::Biinv { params, .. }
        | Command::Ideals { params, .. }
        | Command::Verify { params, .. }
        | Command::All { params, .. } => params,
    }
}

fn resolve_threads(out: &OutArgs) -> usize {
    out.threads
        .or_else(|| std::env::var("QFORMS_THREADS").ok().and_then(|v| v.parse().ok()))
        .unwrap_or_else(|| {
            std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
        })
}

fn write_output(out: &OutArgs, body: &str) -> Result<(), QError> {
    match &out.output {
        Some(path) => std::fs::write(path, body)?,
        None => {
            let stdout = std::io::stdout();
            let mut h = stdout.lock();
            h.write_all(body.as_bytes())?;
        }
    }
    Ok(())
}

fn render(out: &OutArgs, cfg: &RunConfig, coll: &Collected) -> Result<String, QError> {
    match out.format {
        FormatArg::Json => {
            let rep = JsonReport {
                tool_version: env!("CARGO_PKG_VERSION"),
                params: cfg,
                results: &coll.results,
                checks: &coll.report.checks,
            };
            let mut s = serde_json::to_string_pretty(&rep).expect("report serializes");
            s.push('\n');
            Ok(s)
        }
        FormatArg::Csv => {
            if coll.tables.is_empty() {
                return Err(QError::InvalidParams(
                    "csv is a projection of the dimension tables; this command produces none \
                     (use --format json)"
                        .into(),
                ));
            }
            let mut s = String::from("table,k,dim\n");
            for t in &coll.tables {
                for (k, d) in t.dims.iter().enumerate() {
                    s.push_str(&format!("{},{k},{d}\n", t.name));
                }
            }
            Ok(s)
        }
    }
}

/// Parse and execute; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return 2;
        }
    };
    let out = out_args(&cli.command);
    let threads = resolve_threads(out);
    // The global pool may already exist (second call in-process); that is
    // fine, determinism does not depend on the worker count.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    let cfg = config_of(&cli.command, threads);

    let p = match params_from(param_args(&cli.command)) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };

    let mut coll = Collected::new();
    let run_err = run_command(&cli.command, &p, &mut coll).err();
    if let Some(e) = &run_err {
        coll.report.check("run completed", false, format!("aborted: {e}"));
    }
    let body = match render(out, &cfg, &coll) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code_for(&e);
        }
    };
    if let Err(e) = write_output(out, &body) {
        eprintln!("error: {e}");
        return exit_code_for(&e);
    }
    match run_err {
        Some(e) => exit_code_for(&e),
        None if coll.report.all_passed() => 0,
        None => 1,
    }
}
