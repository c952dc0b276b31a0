//! `twoweight` command-line front end.
//!
//! Exit status: 0 on success, 1 on domain errors (infeasible input, violated
//! hypothesis, exhausted budget), 2 on usage errors.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use twoweight::constructions::{ConstructionKind, ConstructionRecipe, Measured};
use twoweight::io::{parse_generator_matrix, parse_multiset, write_multiset};
use twoweight::params::{annotate, emit_table, enumerate_candidates, ExclusionLedger, Format, TableKind};
use twoweight::twochar::{code_bridge, g_crosscheck, residual_congruence_check, verify_weight_form};
use twoweight::{
    canonical_from_pointset, classify_parameters, geometric_dual, ClassifyOptions, DualPointSet, Error, Exec,
    Geometry, PointMultiset, SUMMARY_SCHEMA_VERSION, TABLE_SCHEMA_VERSION,
};

/// Largest point count classified without an explicit `--budget`.
const UNBUDGETED_POINTS: usize = 15;

#[derive(Parser)]
#[command(name = "twoweight", about = "Two-weight codes and two-character multisets in PG(k-1,q)")]
#[command(disable_version_flag = true, subcommand_required = false, arg_required_else_help = true)]
struct Cli {
    /// Worker threads (1 selects the sequential path); output is identical for every value.
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
    /// Print the program and output schema versions.
    #[arg(long)]
    version: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Parameter tables.
    #[command(subcommand)]
    Params(ParamsCommand),
    /// Parameters of all canonical two-character multisets, by exhaustive orbit enumeration.
    Classify(ClassifyArgs),
    /// Canonical multiset and summary of a point set (0/1 multiset file).
    Canonical(CanonicalArgs),
    /// Geometric dual point set of a two-character multiset.
    Dual(InputArgs),
    /// Hyperplane spectrum and weight distribution of a multiset or generator matrix.
    Spectrum(SpectrumArgs),
    /// Build a named construction and write it as a multiset file.
    Construct(ConstructArgs),
    /// Check one of the structural statements on an input.
    #[command(subcommand)]
    Verify(VerifyCommand),
}

#[derive(Subcommand)]
enum ParamsCommand {
    /// Feasible (r, μ, g) candidates, sorted by (n', s0, t0).
    Enumerate(EnumerateArgs),
}

#[derive(Args)]
struct Space {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    k: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
    Paper,
}

impl From<TableFormat> for Format {
    fn from(f: TableFormat) -> Self {
        match f {
            TableFormat::Csv => Format::Csv,
            TableFormat::Json => Format::Json,
            TableFormat::Paper => Format::Paper,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Json,
    Text,
}

#[derive(Args)]
struct EnumerateArgs {
    #[command(flatten)]
    space: Space,
    /// Keep only parameters passing the standard equations for point sets.
    #[arg(long)]
    sets_only: bool,
    /// Label rows as series members, table rows, or ledger exclusions.
    #[arg(long)]
    annotate: bool,
    /// Exclusion ledger (JSON) replacing the bundled one.
    #[arg(long, value_name = "PATH", requires = "annotate")]
    ledger: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: TableFormat,
}

#[derive(Args)]
struct ClassifyArgs {
    #[command(flatten)]
    space: Space,
    /// Keep rows with γ' at most this value.
    #[arg(long, value_name = "G")]
    gamma_max: Option<u64>,
    /// Append completed orbit levels here and resume from it.
    #[arg(long, value_name = "PATH")]
    checkpoint: Option<PathBuf>,
    /// Maximum number of canonical-form evaluations (required above 15 points).
    #[arg(long, value_name = "N")]
    budget: Option<u64>,
    #[arg(long, value_enum, default_value = "csv")]
    format: TableFormat,
}

#[derive(Args)]
struct InputArgs {
    /// Input file, `-` for stdin.
    #[arg(long = "in", value_name = "PATH")]
    input: PathBuf,
}

#[derive(Args)]
struct CanonicalArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value = "json")]
    format: ReportFormat,
    /// Also write the canonical multiset to this file.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SpectrumArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Read a generator matrix (`q k n` header) instead of a multiset.
    #[arg(long)]
    matrix: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: ReportFormat,
}

#[derive(Args)]
struct ConstructArgs {
    /// subspace, subspace_complement, two_subspace, partial_spread, hyperplane_sum, gamma_tight, S, P, K.
    kind: String,
    /// Integer parameters of the construction (hyperplane_sum: a leading -1 reduces μ).
    #[arg(allow_negative_numbers = true)]
    args: Vec<i64>,
    #[command(flatten)]
    space: Space,
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Weights u·p^f and (u+1)·p^f of a spanning, non-repetitive two-character multiset.
    WeightForm(InputArgs),
    /// Residual weights at every codimension-2 space of a Δ-divisible multiset.
    Residual(ResidualArgs),
    /// The common gcd g computed three ways from a point set.
    GCrosscheck(InputArgs),
}

#[derive(Args)]
struct ResidualArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Divisibility Δ to test.
    #[arg(long)]
    delta: u64,
}

/// Failure classes mapped onto exit codes.
enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(_) | Error::Parse(_) => Failure::Usage(e.to_string()),
            other => Failure::Domain(other.to_string()),
        }
    }
}

type Outcome = std::result::Result<String, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if cli.version {
        println!("twoweight {}", env!("CARGO_PKG_VERSION"));
        println!("table-schema {TABLE_SCHEMA_VERSION}");
        println!("summary-schema {SUMMARY_SCHEMA_VERSION}");
        return ExitCode::SUCCESS;
    }
    let Some(command) = cli.command else {
        eprintln!("error: a subcommand is required (see --help)");
        return ExitCode::from(2);
    };
    let exec = match configure_jobs(cli.jobs) {
        Ok(e) => e,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    match run(command, exec) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn configure_jobs(jobs: Option<usize>) -> std::result::Result<Exec, String> {
    match jobs {
        Some(0) => Err("--jobs must be at least 1".into()),
        Some(1) => Ok(Exec::Sequential),
        #[cfg(feature = "parallel")]
        Some(n) => {
            rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())?;
            Ok(Exec::Parallel)
        }
        #[cfg(not(feature = "parallel"))]
        Some(_) => Ok(Exec::Sequential),
        None => Ok(Exec::Parallel),
    }
}

fn run(command: Command, exec: Exec) -> Outcome {
    match command {
        Command::Params(ParamsCommand::Enumerate(a)) => params_enumerate(a, exec),
        Command::Classify(a) => classify(a, exec),
        Command::Canonical(a) => canonical(a),
        Command::Dual(a) => dual(a),
        Command::Spectrum(a) => spectrum(a),
        Command::Construct(a) => construct(a),
        Command::Verify(v) => verify(v),
    }
}

fn read_input(path: &PathBuf) -> std::result::Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Usage(format!("reading stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("reading {}: {e}", path.display())))
    }
}

fn read_multiset(a: &InputArgs) -> std::result::Result<PointMultiset, Failure> {
    Ok(parse_multiset(&read_input(&a.input)?, None)?)
}

fn read_pointset(a: &InputArgs) -> std::result::Result<DualPointSet, Failure> {
    Ok(DualPointSet::from_multiset(&read_multiset(a)?)?)
}

fn geometry(space: &Space) -> std::result::Result<Arc<Geometry>, Failure> {
    Ok(Arc::new(Geometry::new(space.q, space.k)?))
}

fn to_json<T: serde::Serialize>(value: &T) -> Outcome {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Failure::Domain(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn params_enumerate(a: EnumerateArgs, exec: Exec) -> Outcome {
    let (k, q) = (a.space.k, a.space.q);
    let mut rows = enumerate_candidates(k, q, a.sets_only, exec)?;
    if a.annotate {
        let ledger = match &a.ledger {
            Some(path) => ExclusionLedger::from_json(&read_input(path)?)?,
            None => ExclusionLedger::bundled(),
        };
        rows = annotate(&rows, &ledger, k, q)?;
    }
    Ok(emit_table(&rows, TableKind::Set, a.format.into())?)
}

fn classify(a: ClassifyArgs, exec: Exec) -> Outcome {
    let geo = geometry(&a.space)?;
    let n = geo.num_points();
    if n > UNBUDGETED_POINTS && a.budget.is_none() {
        return Err(Failure::Usage(format!(
            "PG({},{}) has {n} points; classification above {UNBUDGETED_POINTS} points requires --budget",
            a.space.k - 1,
            a.space.q
        )));
    }
    let options = ClassifyOptions { exec, budget: a.budget, checkpoint: a.checkpoint, r_max: None };
    let rows = classify_parameters(&geo, a.gamma_max, &options)?;
    Ok(emit_table(&rows, TableKind::Multiset, a.format.into())?)
}

fn canonical(a: CanonicalArgs) -> Outcome {
    let d = read_pointset(&a.input)?;
    let (m, summary) = canonical_from_pointset(&d)?;
    if let Some(path) = &a.out {
        std::fs::write(path, write_multiset(&m))
            .map_err(|e| Failure::Usage(format!("writing {}: {e}", path.display())))?;
    }
    match a.format {
        ReportFormat::Json => to_json(&summary),
        ReportFormat::Text => {
            let v = serde_json::to_value(&summary).map_err(|e| Failure::Domain(e.to_string()))?;
            let mut out = String::new();
            if let Some(obj) = v.as_object() {
                for (key, value) in obj {
                    let _ = writeln!(out, "{key}={value}");
                }
            }
            Ok(out)
        }
    }
}

fn dual(a: InputArgs) -> Outcome {
    let m = read_multiset(&a)?;
    let d = geometric_dual(&m)?;
    let indicator: Vec<u64> = d.indicator().iter().map(|&b| u64::from(b)).collect();
    Ok(write_multiset(&PointMultiset::new(d.geometry().clone(), indicator)?))
}

fn histogram(map: &BTreeMap<u64, u64>) -> String {
    map.iter().map(|(v, c)| format!("{v}:{c}")).collect::<Vec<_>>().join(",")
}

fn spectrum(a: SpectrumArgs) -> Outcome {
    let text = read_input(&a.input.input)?;
    let (m, direct) = if a.matrix {
        let gm = parse_generator_matrix(&text)?;
        let geo = Arc::new(Geometry::new(gm.q, gm.k())?);
        let m = code_bridge(geo.clone(), &gm)?;
        let direct = gm.enumerate_weights(&geo);
        (m, Some(direct))
    } else {
        (parse_multiset(&text, None)?, None)
    };
    let weights = m.weight_distribution();
    if let Some(direct) = &direct {
        if direct != &weights {
            return Err(Failure::Domain(format!(
                "weight enumeration {} disagrees with the hyperplane count {}",
                histogram(direct),
                histogram(&weights)
            )));
        }
    }
    let spec = m.spectrum();
    let two = spec.two_character();
    match a.format {
        ReportFormat::Json => to_json(&json!({
            "n": m.cardinality(),
            "mu": m.mu(),
            "gamma": m.gamma(),
            "spectrum": spec.entries,
            "two_character": two.map(|(s, t, a_s, a_t)| json!({"s": s, "t": t, "a_s": a_s, "a_t": a_t})),
            "weights": weights,
        })),
        ReportFormat::Text => {
            let mut out = format!("n={}\nmu={}\ngamma={}\nspectrum={}\n", m.cardinality(), m.mu(), m.gamma(), histogram(&spec.entries));
            match two {
                Some((s, t, a_s, a_t)) => {
                    let _ = writeln!(out, "s={s},t={t}\na_s={a_s},a_t={a_t}");
                }
                None => out.push_str("two_character=false\n"),
            }
            let _ = writeln!(out, "weights={}", histogram(&weights));
            Ok(out)
        }
    }
}

fn construct(a: ConstructArgs) -> Outcome {
    let kind = ConstructionKind::parse(&a.kind)
        .ok_or_else(|| Failure::Usage(format!("unknown construction {:?}", a.kind)))?;
    let geo = geometry(&a.space)?;
    let recipe = ConstructionRecipe::new(kind, a.args, &geo)?;
    let Some(m) = recipe.realize(&geo)? else {
        return Err(Failure::Domain(format!("{} is a parameter-only series with no explicit realization", a.kind)));
    };
    let measured = Measured::of(&m);
    let mut out = String::new();
    if let Some(p) = &recipe.predicted {
        if !measured.matches(p) {
            return Err(Failure::Domain(format!("construction measured {measured:?}, predicted {p:?}")));
        }
        let opt = |x: Option<u64>| x.map_or("-".to_string(), |v| v.to_string());
        let _ = writeln!(out, "# predicted n={} s={} t={} gamma={} mu={}", p.n, p.s, p.t, opt(p.gamma), opt(p.mu));
    }
    out.push_str(&write_multiset(&m));
    Ok(out)
}

fn verify(v: VerifyCommand) -> Outcome {
    match v {
        VerifyCommand::WeightForm(a) => to_json(&verify_weight_form(&read_multiset(&a)?)?),
        VerifyCommand::Residual(a) => {
            let report = residual_congruence_check(&read_multiset(&a.input)?, a.delta)?;
            if !report.holds() {
                return Err(Failure::Domain(format!(
                    "residual congruence fails at {} codimension-2 spaces",
                    report.violations.len()
                )));
            }
            to_json(&report)
        }
        VerifyCommand::GCrosscheck(a) => {
            let check = g_crosscheck(&read_pointset(&a)?)?;
            if !check.agree() {
                return Err(Failure::Domain(format!("g computations disagree: {check:?}")));
            }
            to_json(&check)
        }
    }
}
