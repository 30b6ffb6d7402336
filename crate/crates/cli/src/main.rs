use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use join_invariants::report::InvariantReport;
use join_invariants::selftest::{run_selftest, Fault, TupleGrid};
use join_invariants::{build_report, fingerprint, validate, Error, Fingerprint, JoinParams};
use rayon::prelude::*;
use serde::Serialize;

const CSV_HELP: &str = "\
CSV columns (compute and sweep):
  g,n,w1,w2,l2,r,s,d        the tuple and its auxiliary integers
  h0..h5                    H^q(M; Z)
  hom0..hom5                H_q(M; Z)
  qz0..qz5                  H^q(M; Q/Z)
  checks_passed,checks_total

CSV columns (classify):
  group,g,n,w1,w2,l2,fingerprint

Environment:
  JOIN_INV_THREADS          worker threads for sweep and classify (0 = auto)

Exit codes: 0 success, 1 bad input, 2 internal validation failure.";

#[derive(Parser)]
#[command(name = "join-inv", version, about = "Invariants of lens-space bundle joins", after_help = CSV_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full report for one tuple.
    Compute(ComputeArgs),
    /// One record per admissible tuple in the given ranges.
    Sweep(SweepArgs),
    /// Group admissible tuples by their invariants.
    Classify(SweepArgs),
    /// Check every property over a bounded grid.
    Selftest(SelftestArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
    /// Write to FILE instead of standard output.
    #[arg(long, value_name = "FILE")]
    out: Option<String>,
}

#[derive(Args)]
struct ComputeArgs {
    #[arg(long, allow_negative_numbers = true)]
    g: i64,
    #[arg(long, allow_negative_numbers = true)]
    n: i64,
    #[arg(long, allow_negative_numbers = true)]
    w1: i64,
    #[arg(long, allow_negative_numbers = true)]
    w2: i64,
    #[arg(long, allow_negative_numbers = true)]
    l2: i64,
    #[command(flatten)]
    output: Output,
}

/// Each range is `A`, `A..B` (inclusive) or a comma list `A,B,C`.
#[derive(Args)]
struct SweepArgs {
    #[arg(long, default_value = "1")]
    g: String,
    #[arg(long, default_value = "1..3")]
    n: String,
    #[arg(long, default_value = "1..3")]
    w1: String,
    #[arg(long, default_value = "1..3")]
    w2: String,
    #[arg(long, default_value = "1..3")]
    l2: String,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct SelftestArgs {
    /// Use 1..=BOUND for every parameter instead of the default grid.
    #[arg(long)]
    bound: Option<i64>,
    #[arg(long, hide = true, value_enum)]
    inject_fault: Option<FaultArg>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FaultArg {
    TamperClosedForm,
    PerturbAux,
}

enum Failure {
    Input(String),
    Validation(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ValidationFailure { .. } => Failure::Validation(format!("{}: {e}", e.kind())),
            _ => Failure::Input(format!("{}: {e}", e.kind())),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Compute(args) => compute(&args),
        Command::Sweep(args) => sweep(&args),
        Command::Classify(args) => classify(&args),
        Command::Selftest(args) => selftest(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Validation(msg)) => {
            eprintln!("validation failure: {msg}");
            ExitCode::from(2)
        }
    }
}

fn emit(output: &Output, text: &str) -> Result<(), Failure> {
    match &output.out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Input(format!("cannot write {path}: {e}"))),
        None => {
            let mut stdout = io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Failure::Input(format!("cannot write output: {e}")))
        }
    }
}

fn to_json<T: Serialize>(value: &T, pretty: bool) -> String {
    let s = if pretty {
        serde_json::to_string_pretty(value)
    } else {
        serde_json::to_string(value)
    };
    s.expect("reports serialize")
}

fn compute(args: &ComputeArgs) -> Result<(), Failure> {
    let p = validate(args.g, args.n, args.w1, args.w2, args.l2)?;
    let report = build_report(&p)?;
    let text = match args.output.format {
        Format::Json => to_json(&report, true) + "\n",
        Format::Table => report.to_table(),
        Format::Csv => csv_reports(std::slice::from_ref(&report)),
    };
    emit(&args.output, &text)?;
    validation_status(std::slice::from_ref(&report))
}

fn validation_status(reports: &[InvariantReport]) -> Result<(), Failure> {
    match reports.iter().find_map(|r| r.first_failure().map(|c| (r, c))) {
        Some((r, c)) => Err(Failure::Validation(format!("`{}` at {}: {}", c.name, r.params, c.detail))),
        None => Ok(()),
    }
}

fn parse_values(name: &str, text: &str) -> Result<Vec<i64>, Failure> {
    let bad = || Failure::Input(format!("RangeViolation: --{name} {text:?} is not A, A..B or A,B,..."));
    let num = |s: &str| s.trim().parse::<i64>().map_err(|_| bad());
    let values: Vec<i64> = if let Some((a, b)) = text.split_once("..") {
        let b = b.strip_prefix('=').unwrap_or(b);
        (num(a)?..=num(b)?).collect()
    } else {
        text.split(',').map(num).collect::<Result<_, _>>()?
    };
    if let Some(v) = values.iter().find(|&&v| v < 1) {
        return Err(Failure::Input(format!(
            "RangeViolation: --{name} contains {v}, all bounds must be at least 1"
        )));
    }
    let mut values = values;
    values.sort_unstable();
    values.dedup();
    Ok(values)
}

fn admissible_tuples(args: &SweepArgs) -> Result<Vec<JoinParams>, Failure> {
    let g = parse_values("g", &args.g)?;
    let n = parse_values("n", &args.n)?;
    let w1 = parse_values("w1", &args.w1)?;
    let w2 = parse_values("w2", &args.w2)?;
    let l2 = parse_values("l2", &args.l2)?;
    let mut out = Vec::new();
    for &g in &g {
        for &n in &n {
            for &w1 in &w1 {
                for &w2 in &w2 {
                    for &l2 in &l2 {
                        if let Ok(p) = validate(g, n, w1, w2, l2) {
                            out.push(p);
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

fn thread_pool() -> Result<rayon::ThreadPool, Failure> {
    let threads = match std::env::var("JOIN_INV_THREADS") {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map_err(|_| Failure::Input(format!("JOIN_INV_THREADS={v:?} is not a non-negative integer")))?,
        Err(_) => 0,
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Failure::Input(format!("cannot start worker pool: {e}")))
}

/// Evaluates `f` on every tuple in parallel; results keep tuple order.
fn par_map<T: Send>(
    tuples: &[JoinParams],
    f: impl Fn(&JoinParams) -> join_invariants::Result<T> + Sync,
) -> Result<Vec<T>, Failure> {
    let pool = thread_pool()?;
    let results: Vec<_> = pool.install(|| tuples.par_iter().map(&f).collect());
    results.into_iter().map(|r| r.map_err(Failure::from)).collect()
}

fn sweep(args: &SweepArgs) -> Result<(), Failure> {
    let tuples = admissible_tuples(args)?;
    let reports = par_map(&tuples, build_report)?;
    let text = match args.output.format {
        Format::Json => reports.iter().map(|r| to_json(r, false) + "\n").collect(),
        Format::Csv => csv_reports(&reports),
        Format::Table => table_reports(&reports),
    };
    emit(&args.output, &text)?;
    validation_status(&reports)
}

fn csv_reports(reports: &[InvariantReport]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<String> = ["g", "n", "w1", "w2", "l2", "r", "s", "d"].map(String::from).to_vec();
    for prefix in ["h", "hom", "qz"] {
        header.extend((0..=5).map(|q| format!("{prefix}{q}")));
    }
    header.extend(["checks_passed".to_string(), "checks_total".to_string()]);
    w.write_record(&header).expect("in-memory csv");
    for r in reports {
        let p = &r.params;
        let (g, n, w1, w2, l2) = p.tuple();
        let mut row: Vec<String> = [g, n, w1, w2, l2].iter().map(ToString::to_string).collect();
        row.extend([p.r().to_string(), p.s().to_string(), p.d().to_string()]);
        row.extend(r.cohomology().iter().map(ToString::to_string));
        row.extend(r.homology_groups().iter().map(ToString::to_string));
        row.extend(r.qz().iter().map(ToString::to_string));
        let passed = r.checks.iter().filter(|c| c.passed).count();
        row.extend([passed.to_string(), r.checks.len().to_string()]);
        w.write_record(&row).expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8")
}

fn table_reports(reports: &[InvariantReport]) -> String {
    let mut out = format!(
        "{:<18} {:>3}  {:<4} {:<6} {:<10} {:<14} {:<12} {:<4} {}\n",
        "(g,n,w1,w2,l2)", "d", "H^0", "H^1", "H^2", "H^3", "H^4", "H^5", "checks"
    );
    for r in reports {
        let (g, n, w1, w2, l2) = r.params.tuple();
        let h = r.cohomology();
        let passed = r.checks.iter().filter(|c| c.passed).count();
        out.push_str(&format!(
            "{:<18} {:>3}  {:<4} {:<6} {:<10} {:<14} {:<12} {:<4} {}/{}\n",
            format!("({g},{n},{w1},{w2},{l2})"),
            r.params.d(),
            h[0].to_string(),
            h[1].to_string(),
            h[2].to_string(),
            h[3].to_string(),
            h[4].to_string(),
            h[5].to_string(),
            passed,
            r.checks.len()
        ));
    }
    out
}

type Tuple5 = (u64, u64, u64, u64, u64);

#[derive(Serialize)]
struct Group<'a> {
    fingerprint: &'a Fingerprint,
    members: Vec<Tuple5>,
}

fn classify(args: &SweepArgs) -> Result<(), Failure> {
    let tuples = admissible_tuples(args)?;
    let prints = par_map(&tuples, fingerprint)?;
    let mut groups: BTreeMap<&Fingerprint, Vec<Tuple5>> = BTreeMap::new();
    for (p, f) in tuples.iter().zip(&prints) {
        groups.entry(f).or_default().push(p.tuple());
    }
    let text = match args.output.format {
        Format::Json => {
            let list: Vec<Group<'_>> = groups
                .iter()
                .map(|(f, m)| Group {
                    fingerprint: f,
                    members: m.clone(),
                })
                .collect();
            to_json(&list, true) + "\n"
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["group", "g", "n", "w1", "w2", "l2", "fingerprint"])
                .expect("in-memory csv");
            for (i, (f, members)) in groups.iter().enumerate() {
                for (g, n, w1, w2, l2) in members {
                    let fields = [i + 1, *g as usize, *n as usize, *w1 as usize, *w2 as usize, *l2 as usize];
                    let mut row: Vec<String> = fields.iter().map(ToString::to_string).collect();
                    row.push(f.to_string());
                    w.write_record(&row).expect("in-memory csv");
                }
            }
            String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8")
        }
        Format::Table => {
            let mut out = format!("{} tuples in {} groups\n", tuples.len(), groups.len());
            for (i, (f, members)) in groups.iter().enumerate() {
                out.push_str(&format!("group {}: {f}\n", i + 1));
                let list: Vec<String> = members
                    .iter()
                    .map(|(g, n, w1, w2, l2)| format!("({g},{n},{w1},{w2},{l2})"))
                    .collect();
                out.push_str(&format!("  {}\n", list.join(" ")));
            }
            out
        }
    };
    emit(&args.output, &text)
}

fn selftest(args: &SelftestArgs) -> Result<(), Failure> {
    let grid = match args.bound {
        Some(b) if b < 0 => {
            return Err(Failure::Input(format!("RangeViolation: --bound {b} must be non-negative")))
        }
        Some(b) => TupleGrid::bounded(b, b, b),
        None => TupleGrid::default(),
    };
    let fault = args.inject_fault.map(|f| match f {
        FaultArg::TamperClosedForm => Fault::TamperClosedForm,
        FaultArg::PerturbAux => Fault::PerturbAux,
    });
    match run_selftest(&grid, fault) {
        Ok(summary) => {
            if summary.tuples == 0 {
                eprintln!("warning: the grid contains no admissible tuples; nothing was checked");
            }
            println!(
                "selftest passed: {} tuples, {} assertions, {:.3}s",
                summary.tuples,
                summary.assertions,
                summary.elapsed.as_secs_f64()
            );
            Ok(())
        }
        Err(failure) => {
            println!(
                "selftest FAILED after {} assertions: {failure}",
                failure.assertions_before
            );
            Err(Failure::Validation(failure.to_string()))
        }
    }
}
