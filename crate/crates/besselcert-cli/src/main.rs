//! `besselcert`: evaluate modified Bessel quantities and certify the
//! inequality catalog.
//!
//! Exit codes: 0 pass, 1 bound violation, 2 usage or evaluation error.

mod registry;
mod settings;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use besselcert::catalog::{catalog, NuClass};
use besselcert::certify::{
    certify, find_record, id_order, resolve_threads, sweep, CertifyOptions, Spacing, SweepRow,
    DEFAULT_REFINE_ROUNDS, THREADS_ENV,
};
use clap::{Parser, Subcommand, ValueEnum};

use registry::Params;
use settings::{FileConfig, GridOverrides, XSpecOverrides};

#[derive(Parser)]
#[command(
    name = "besselcert",
    version,
    about = "Modified Bessel evaluators and inequality certification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one function at one point.
    Eval(EvalArgs),
    /// Sweep the catalog over a grid and write a JSON report.
    Certify(CertifyArgs),
    /// Write lhs, rhs and margin of one record at every grid point.
    Sweep(SweepArgs),
    /// Print the catalog with anchors and domains.
    ListRecords,
    /// Print the functions accepted by `eval`.
    ListFunctions,
}

#[derive(clap::Args)]
struct EvalArgs {
    /// Function name, e.g. bessel_k or deriv_k_ratio.
    function: String,
    #[arg(long, allow_hyphen_values = true)]
    nu: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    x: Option<f64>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<f64>,
    #[arg(long)]
    variant: Option<u8>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    p: Option<f64>,
    /// Also recompute the value with a brute-force oracle.
    #[arg(long)]
    check: bool,
    /// Print a JSON object instead of text.
    #[arg(long)]
    json: bool,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(clap::Args)]
struct CertifyArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    /// Comma-separated record ids or inclusive ranges such as C12a-C12f.
    #[arg(long)]
    records: Option<String>,
    #[arg(long)]
    out: PathBuf,
    /// Worker threads; defaults to $BESSELCERT_THREADS, then the config
    /// file, then the number of logical processors.
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    refine_rounds: Option<u32>,
    /// Test hook: multiply a record's right-hand side, as ID=FACTOR.
    #[arg(long = "debug-scale-rhs", value_name = "ID=FACTOR")]
    scale_rhs: Vec<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SpacingArg {
    Linear,
    Log,
}

#[derive(clap::Args)]
struct SweepArgs {
    record: String,
    #[arg(long)]
    config: Option<PathBuf>,
    /// Comma-separated orders.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    nu: Option<Vec<f64>>,
    /// Comma-separated tilts.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    beta: Option<Vec<f64>>,
    #[arg(long)]
    x_min: Option<f64>,
    #[arg(long)]
    x_max: Option<f64>,
    #[arg(long)]
    x_count: Option<usize>,
    #[arg(long, value_enum)]
    spacing: Option<SpacingArg>,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    threads: Option<usize>,
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Eval(a) => run_eval(a),
        Command::Certify(a) => run_certify(a),
        Command::Sweep(a) => run_sweep(a),
        Command::ListRecords => run_list(),
        Command::ListFunctions => {
            let mut out = std::io::stdout().lock();
            for f in registry::FUNCTIONS {
                if writeln!(out, "{:<28} {:<24} {}", f.name, f.params, f.summary).is_err() {
                    break;
                }
            }
            ExitCode::SUCCESS
        }
    }
}

fn run_eval(a: EvalArgs) -> ExitCode {
    let file = match FileConfig::load(a.config.as_deref()) {
        Ok(f) => f,
        Err(e) => return fail(e),
    };
    let params = Params {
        nu: a.nu,
        x: a.x,
        n: a.n,
        beta: a.beta,
        variant: a.variant,
        k: a.k,
        p: a.p,
    };
    let value = match registry::evaluate(&a.function, &params, &file.eval) {
        Ok(v) => v,
        Err(e) => return fail(e),
    };
    let check = if a.check {
        match registry::oracle_check(&a.function, &params, value.value, &file.eval, &file.oracle) {
            Ok(c) => Some(c),
            Err(e) => return fail(e),
        }
    } else {
        None
    };
    if a.json {
        let doc = serde_json::json!({ "result": value, "oracle": check });
        println!("{doc}");
    } else {
        println!("function     {}", value.function);
        println!("value        {:.16e}", value.value);
        match value.abs_err_est {
            Some(e) => println!("abs_err_est  {e:.3e}"),
            None => println!("abs_err_est  n/a"),
        }
        println!("method       {}", value.method);
        if let Some(c) = check {
            println!("oracle       {:.16e}", c.value);
            println!("rel_diff     {:.3e}", c.rel_diff);
        }
    }
    ExitCode::SUCCESS
}

/// Expands `C4,C12a-C12f` into catalog ids, in catalog order for ranges.
fn parse_record_filter(spec: &str) -> Result<Vec<String>, String> {
    let mut ids: Vec<&'static str> = catalog().iter().map(|r| r.id).collect();
    ids.sort_by_key(|id| id_order(id));
    let position = |id: &str| {
        ids.iter()
            .position(|c| *c == id)
            .ok_or_else(|| format!("unknown record id {id}"))
    };
    let mut out: Vec<String> = Vec::new();
    for part in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let chosen: Vec<&str> = match part.split_once('-') {
            Some((lo, hi)) => {
                let (i, j) = (position(lo.trim())?, position(hi.trim())?);
                if i > j {
                    return Err(format!("empty record range {part}"));
                }
                ids[i..=j].to_vec()
            }
            None => vec![ids[position(part)?]],
        };
        for id in chosen {
            if !out.iter().any(|o| o == id) {
                out.push(id.to_string());
            }
        }
    }
    if out.is_empty() {
        return Err("record filter selects nothing".into());
    }
    Ok(out)
}

fn parse_scale(spec: &str) -> Result<(String, f64), String> {
    let (id, f) = spec
        .split_once('=')
        .ok_or_else(|| format!("expected ID=FACTOR, got {spec}"))?;
    let f: f64 = f
        .trim()
        .parse()
        .map_err(|_| format!("bad factor in {spec}"))?;
    Ok((id.trim().to_string(), f))
}

fn threads_for(flag: Option<usize>, file: Option<usize>) -> Result<usize, String> {
    let from_env = std::env::var(THREADS_ENV).is_ok();
    let requested = flag.or(if from_env { None } else { file });
    resolve_threads(requested).map_err(|e| e.to_string())
}

fn write_json<T: serde::Serialize>(path: &Path, value: &T) -> Result<(), String> {
    let file = File::create(path).map_err(|e| format!("cannot create {}: {e}", path.display()))?;
    let mut w = BufWriter::new(file);
    serde_json::to_writer_pretty(&mut w, value).map_err(|e| e.to_string())?;
    writeln!(w)
        .and_then(|_| w.flush())
        .map_err(|e| e.to_string())
}

fn run_certify(a: CertifyArgs) -> ExitCode {
    let file = match FileConfig::load(a.config.as_deref()) {
        Ok(f) => f,
        Err(e) => return fail(e),
    };
    let records = match &a.records {
        Some(spec) => match parse_record_filter(spec) {
            Ok(ids) => Some(ids),
            Err(e) => return fail(e),
        },
        None => file.certify.records.clone(),
    };
    let rhs_scale = match a
        .scale_rhs
        .iter()
        .map(|s| parse_scale(s))
        .collect::<Result<Vec<_>, _>>()
    {
        Ok(v) => v,
        Err(e) => return fail(e),
    };
    let opts = CertifyOptions {
        eval: file.eval,
        grid: file.grid.resolve(),
        refine_rounds: a
            .refine_rounds
            .or(file.certify.refine_rounds)
            .unwrap_or(DEFAULT_REFINE_ROUNDS),
        records,
        rhs_scale,
    };
    let threads = match threads_for(a.threads, file.certify.threads) {
        Ok(t) => t,
        Err(e) => return fail(e),
    };
    let report = match certify(&opts, threads) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    if let Err(e) = write_json(&a.out, &report) {
        return fail(e);
    }
    for e in &report.entries {
        let status = if e.failure.is_some() {
            "FAIL"
        } else if !e.violations.is_empty() {
            "VIOLATED"
        } else {
            "ok"
        };
        let fmt = |v: Option<f64>| v.map_or_else(|| "-".to_string(), |v| format!("{v:.6e}"));
        println!(
            "{:<6} {:<8} points={:<7} min_margin={:<14} sup={:<14} violations={}",
            e.id,
            status,
            e.points_tested,
            fmt(e.min_margin),
            fmt(e.sup_observed),
            e.violations.len()
        );
        if let Some(f) = &e.failure {
            eprintln!("  {}: {f}", e.id);
        }
    }
    println!(
        "{} records, {} violations, report written to {}",
        report.entries.len(),
        report.violation_count(),
        a.out.display()
    );
    ExitCode::from(report.exit_code() as u8)
}

fn run_sweep(a: SweepArgs) -> ExitCode {
    let file = match FileConfig::load(a.config.as_deref()) {
        Ok(f) => f,
        Err(e) => return fail(e),
    };
    let record = match find_record(&a.record) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    let mut grid = file.grid.clone();
    grid.merge(GridOverrides {
        nu_values: a.nu,
        beta_values: a.beta,
        x_spec: XSpecOverrides {
            min: a.x_min,
            max: a.x_max,
            count: a.x_count,
            spacing: a.spacing.map(|s| match s {
                SpacingArg::Linear => Spacing::Linear,
                SpacingArg::Log => Spacing::Log,
            }),
        },
    });
    let grid = grid.resolve();
    let threads = match threads_for(a.threads, file.certify.threads) {
        Ok(t) => t,
        Err(e) => return fail(e),
    };
    let rows = match sweep(&record, &grid, &file.eval, threads) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    let written = match a.format {
        Format::Json => write_json(&a.out, &rows),
        Format::Csv => write_csv(&a.out, &rows),
    };
    if let Err(e) = written {
        return fail(e);
    }
    let failed = rows.iter().filter(|r| r.failed()).count();
    println!("{} rows written to {}", rows.len(), a.out.display());
    if failed > 0 {
        return fail(format!(
            "{failed} points failed to evaluate; see method_flags"
        ));
    }
    ExitCode::SUCCESS
}

fn write_csv(path: &Path, rows: &[SweepRow]) -> Result<(), String> {
    let file = File::create(path).map_err(|e| format!("cannot create {}: {e}", path.display()))?;
    let mut w = BufWriter::new(file);
    let io = |e: std::io::Error| e.to_string();
    writeln!(w, "{}", SweepRow::CSV_HEADER).map_err(io)?;
    for r in rows {
        writeln!(w, "{}", r.to_csv()).map_err(io)?;
    }
    w.flush().map_err(io)
}

fn class_name(c: NuClass) -> &'static str {
    match c {
        NuClass::Any => "any",
        NuClass::Integer => "integer",
        NuClass::HalfIntegerOrInteger => "half-integer or integer",
        NuClass::NonInteger => "non-integer",
    }
}

fn run_list() -> ExitCode {
    let mut records = catalog();
    records.sort_by_key(|r| id_order(r.id));
    let mut out = std::io::stdout().lock();
    for r in records {
        let d = &r.domain;
        let written =
            writeln!(out, "{:<6} {:<40} {}", r.id, r.anchor, r.description).and_then(|_| {
                writeln!(
                    out,
                    "       nu {} ({}), beta {}, x {}",
                    d.nu,
                    class_name(d.nu_class),
                    d.beta,
                    d.x
                )
            });
        // A closed pipe (e.g. `| head`) is not an error.
        if written.is_err() {
            break;
        }
    }
    ExitCode::SUCCESS
}
