//! `parteq`: check the finite-bound partition equinumerosity theorem from
//! the command line.
//!
//! Exit status: 0 when every checked claim holds, 1 when a claim fails,
//! 2 for usage, parse, or class-membership errors, 3 when the enumeration
//! budget is exceeded.

mod grid;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use parteq::qseries::{compare_bounded, compare_solution_i, lhs_series, rhs_series, Comparison};
use parteq::{count_a, count_b, phi, phi_inverse, Budget, ClassParams, Error, Partition};
use serde::Serialize;

use crate::grid::{GridSpec, Interval, VerifyRecord};

const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "parteq", version, about = "Verify the finite-bound partition equinumerosity theorem")]
struct Cli {
    #[command(flatten)]
    output: OutputArgs,

    /// Maximum number of partitions one enumeration may generate
    /// (default: $PARTEQ_BUDGET, else 10000000).
    #[arg(long, global = true)]
    budget: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct OutputArgs {
    /// Emit JSON (one object per line).
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,

    /// Emit CSV with a header row.
    #[arg(long, global = true)]
    csv: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Human,
    Json,
    Csv,
}

impl OutputArgs {
    fn format(self) -> Format {
        match (self.json, self.csv) {
            (true, _) => Format::Json,
            (_, true) => Format::Csv,
            _ => Format::Human,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check |A| = |B|, the series coefficients and the bijection over a grid.
    Verify(VerifyArgs),
    /// Apply the bijection (or its inverse) to one partition.
    Map(MapArgs),
    /// Count A(n,k,d,m) or B(n,k,d,m).
    Count(CountArgs),
    /// Compare both sides of a product identity up to a truncation degree.
    Series(SeriesArgs),
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Weights, e.g. 1..28.
    #[arg(long)]
    n: Interval,
    #[arg(long)]
    k: Interval,
    #[arg(long)]
    d: Interval,
    #[arg(long)]
    m: Interval,
    /// Truncation degree for the series (default: max(60, largest n)).
    #[arg(long = "N", alias = "degree")]
    degree: Option<usize>,
    /// Add per-point elapsed time to the records.
    #[arg(long)]
    timing: bool,
}

#[derive(Args, Debug)]
struct MapArgs {
    /// Partition in canonical form, e.g. "15^2 12 11 9".
    partition: String,
    /// The quadruple n,k,d,m.
    #[arg(long)]
    params: ClassParams,
    /// Map B → A instead of A → B.
    #[arg(long)]
    inverse: bool,
    /// Print every intermediate subpartition as JSON.
    #[arg(long)]
    trace: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
enum Class {
    #[value(name = "A")]
    A,
    #[value(name = "B")]
    B,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Method {
    Enumerate,
    Series,
}

#[derive(Args, Debug)]
struct CountArgs {
    #[arg(long)]
    params: ClassParams,
    #[arg(long, value_enum)]
    class: Class,
    #[arg(long, value_enum, default_value = "enumerate")]
    method: Method,
}

#[derive(Args, Debug)]
struct SeriesArgs {
    #[arg(long)]
    k: u64,
    #[arg(long, required_unless_present = "eq1")]
    d: Option<u64>,
    #[arg(long, required_unless_present = "eq1")]
    m: Option<u64>,
    /// Check the unbounded d = 2 identity instead (k may be 0).
    #[arg(long, conflicts_with_all = ["d", "m"])]
    eq1: bool,
    /// Truncation degree (default 60, or 100 with --eq1).
    #[arg(long = "N", alias = "degree")]
    degree: Option<usize>,
}

/// A failure that ends the command with a specific exit status.
struct Failure {
    status: u8,
    kind: &'static str,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            status: EXIT_USAGE,
            kind: "UsageError",
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::BudgetExceeded { .. } => EXIT_BUDGET,
            Error::Internal(_) => EXIT_FAILED,
            _ => EXIT_USAGE,
        };
        Failure {
            status,
            kind: e.kind(),
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure {
            status: EXIT_FAILED,
            kind: "IoError",
            message: e.to_string(),
        }
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure {
            status: EXIT_FAILED,
            kind: "IoError",
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<u8, Failure>;

fn write_json_line<T: Serialize>(out: &mut impl Write, value: &T) -> io::Result<()> {
    serde_json::to_writer(&mut *out, value)?;
    writeln!(out)
}

fn write_csv<T: Serialize>(out: impl Write, rows: &[T]) -> Result<(), csv::Error> {
    let mut writer = csv::Writer::from_writer(out);
    for row in rows {
        writer.serialize(row)?;
    }
    writer.flush()?;
    Ok(())
}

fn resolve_budget(flag: Option<u64>) -> Result<Budget, Failure> {
    match flag {
        Some(cap) => Ok(Budget(cap)),
        None => Budget::from_env().map_err(Failure::from),
    }
}

fn cmd_verify(args: &VerifyArgs, budget: Budget, format: Format, out: &mut impl Write) -> CmdResult {
    let degree = args.degree.unwrap_or_else(|| (args.n.hi as usize).max(60));
    let spec = GridSpec::new(args.n, args.k, args.d, args.m, degree, budget)
        .map_err(Failure::usage)?;
    let records = grid::run(&spec, args.timing)?;

    match format {
        Format::Json => {
            for r in &records {
                write_json_line(out, r)?;
            }
        }
        Format::Csv => write_csv(&mut *out, &records)?,
        Format::Human => write_verify_table(out, &records, args.timing)?,
    }

    let failed = records.iter().filter(|r| !r.pass).count();
    if format == Format::Human {
        writeln!(
            out,
            "{} points, {} passed, {failed} failed",
            records.len(),
            records.len() - failed
        )?;
    }
    let claim_failed = records.iter().any(|r| !r.pass && !r.budget_exceeded);
    Ok(if claim_failed {
        EXIT_FAILED
    } else if failed > 0 {
        EXIT_BUDGET
    } else {
        0
    })
}

fn write_verify_table(out: &mut impl Write, records: &[VerifyRecord], timing: bool) -> io::Result<()> {
    let show = |v: Option<String>| v.unwrap_or_else(|| "-".into());
    write!(
        out,
        "{:>4} {:>3} {:>3} {:>3} {:>8} {:>8} {:>9} {:>9} {:>9} {:>6}",
        "n", "k", "d", "m", "|A|", "|B|", "[q^n]A", "[q^n]B", "bijection", "status"
    )?;
    if timing {
        write!(out, " {:>10}", "ms")?;
    }
    writeln!(out)?;
    for r in records {
        let bijection = match r.round_trip {
            Some(true) => "ok",
            Some(false) => "FAILED",
            None => "n/a",
        };
        write!(
            out,
            "{:>4} {:>3} {:>3} {:>3} {:>8} {:>8} {:>9} {:>9} {:>9} {:>6}",
            r.n,
            r.k,
            r.d,
            r.m,
            show(r.count_a.map(|c| c.to_string())),
            show(r.count_b.map(|c| c.to_string())),
            show(r.series_a.clone()),
            show(r.series_b.clone()),
            bijection,
            if r.pass { "pass" } else { "FAIL" },
        )?;
        if let Some(ms) = r.elapsed_ms {
            write!(out, " {ms:>10.3}")?;
        }
        if let Some(e) = &r.error {
            write!(out, "  {e}")?;
        }
        writeln!(out)?;
    }
    Ok(())
}

#[derive(Serialize)]
struct MapRecord {
    params: String,
    direction: &'static str,
    input: String,
    image: String,
}

fn cmd_map(args: &MapArgs, format: Format, out: &mut impl Write) -> CmdResult {
    let input = Partition::parse(&args.partition)?;
    let (image, trace) = if args.inverse {
        phi_inverse(&input, &args.params)?
    } else {
        phi(&input, &args.params)?
    };
    if args.trace {
        serde_json::to_writer_pretty(&mut *out, &trace).map_err(io::Error::from)?;
        writeln!(out)?;
        return Ok(0);
    }
    let record = MapRecord {
        params: args.params.to_string(),
        direction: if args.inverse { "inverse" } else { "forward" },
        input: input.render(),
        image: image.render(),
    };
    match format {
        Format::Human => writeln!(out, "{}", record.image)?,
        Format::Json => write_json_line(out, &record)?,
        Format::Csv => write_csv(&mut *out, &[record])?,
    }
    Ok(0)
}

#[derive(Serialize)]
struct CountRecord {
    params: String,
    class: Class,
    method: Method,
    count: String,
}

fn cmd_count(args: &CountArgs, budget: Budget, format: Format, out: &mut impl Write) -> CmdResult {
    let ps = &args.params;
    let count = match args.method {
        Method::Enumerate => match args.class {
            Class::A => count_a(ps, budget)?,
            Class::B => count_b(ps, budget)?,
        }
        .to_string(),
        Method::Series => {
            let degree = usize::try_from(ps.n)
                .map_err(|_| Failure::usage(format!("n = {} is too large for a series", ps.n)))?;
            let series = match args.class {
                Class::A => lhs_series(ps.k, ps.d, ps.m, degree),
                Class::B => rhs_series(ps.k, ps.d, ps.m, degree),
            };
            series.coefficient(degree)?.to_string()
        }
    };
    let record = CountRecord {
        params: ps.to_string(),
        class: args.class,
        method: args.method,
        count,
    };
    match format {
        Format::Human => writeln!(out, "{}", record.count)?,
        Format::Json => write_json_line(out, &record)?,
        Format::Csv => write_csv(&mut *out, &[record])?,
    }
    Ok(0)
}

#[derive(Serialize)]
struct SeriesRecord {
    identity: &'static str,
    k: u64,
    d: Option<u64>,
    m: Option<u64>,
    degree: usize,
    agree: bool,
    mismatch_exponent: Option<usize>,
    lhs_coefficient: Option<String>,
    rhs_coefficient: Option<String>,
}

fn cmd_series(args: &SeriesArgs, format: Format, out: &mut impl Write) -> CmdResult {
    let (identity, comparison): (&str, Comparison) = if args.eq1 {
        let degree = args.degree.unwrap_or(100);
        ("eq1", compare_solution_i(args.k, degree))
    } else {
        let (d, m) = (args.d.unwrap_or(0), args.m.unwrap_or(0));
        // same minima as ClassParams; n plays no part here
        ClassParams::new(0, args.k, d, m)?;
        let degree = args.degree.unwrap_or(60);
        ("eq2", compare_bounded(args.k, d, m, degree))
    };
    let (exponent, lhs, rhs) = match &comparison.mismatch {
        Some((e, l, r)) => (Some(*e), Some(l.to_string()), Some(r.to_string())),
        None => (None, None, None),
    };
    let record = SeriesRecord {
        identity,
        k: args.k,
        d: args.d,
        m: args.m,
        degree: comparison.degree,
        agree: comparison.agrees(),
        mismatch_exponent: exponent,
        lhs_coefficient: lhs,
        rhs_coefficient: rhs,
    };
    match format {
        Format::Human => match (&record.mismatch_exponent, &record.lhs_coefficient, &record.rhs_coefficient) {
            (Some(e), Some(l), Some(r)) => {
                writeln!(out, "disagree at q^{e}: lhs {l}, rhs {r}")?
            }
            _ => writeln!(out, "agree up to q^{}", record.degree)?,
        },
        Format::Json => write_json_line(out, &record)?,
        Format::Csv => write_csv(&mut *out, &[record])?,
    }
    Ok(if comparison.agrees() { 0 } else { EXIT_FAILED })
}

#[derive(Serialize)]
struct ErrorRecord<'a> {
    error: &'a str,
    message: &'a str,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.output.format();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());

    let result = resolve_budget(cli.budget).and_then(|budget| match &cli.command {
        Command::Verify(args) => cmd_verify(args, budget, format, &mut out),
        Command::Map(args) => cmd_map(args, format, &mut out),
        Command::Count(args) => cmd_count(args, budget, format, &mut out),
        Command::Series(args) => cmd_series(args, format, &mut out),
    });
    let flushed = out.flush();

    match result {
        Ok(status) if flushed.is_ok() => ExitCode::from(status),
        Ok(_) => ExitCode::from(EXIT_FAILED),
        Err(failure) => {
            let record = ErrorRecord {
                error: failure.kind,
                message: &failure.message,
            };
            let line = serde_json::to_string(&record).unwrap_or_default();
            eprintln!("{line}");
            ExitCode::from(failure.status)
        }
    }
}
