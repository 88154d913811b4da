//! `metric-lines`: line counts, exhaustive verification and enumeration.
//!
//! Exit status is 0 when nothing failed, 1 when some check failed and 2 on
//! bad input or usage.

mod input;
mod report;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use metric_lines::enumerate::{enumerate_graphs, enumerate_two_metrics, Family};
use metric_lines::io::{graph6, text};
use metric_lines::verify::fixture;
use metric_lines::verify::{
    registry, run_suite, select_checks, SuiteOptions, SuiteReport, EXEMPT_GRAPHS, FIXTURES,
};

use input::InputArgs;
use report::{lines_row, LinesRow};

#[derive(Debug, Parser)]
#[command(
    name = "metric-lines",
    version,
    about = "Lines in finite metric spaces and graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Jsonl,
    Csv,
    Human,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Line counts per instance.
    Lines {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Run checks over instances; one verdict per check and instance.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        /// Check names, comma separated, or `all`.
        #[arg(long, default_value = "all", value_name = "NAME[,NAME...]")]
        check: String,
        /// Worker threads (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, value_enum, default_value = "jsonl")]
        format: Format,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        /// Also write the per-check summary CSV here.
        #[arg(long, value_name = "PATH")]
        summary: Option<PathBuf>,
        /// Add wall-clock `duration_ms` to each verdict.
        #[arg(long)]
        timings: bool,
        /// Stop after this many instances.
        #[arg(long)]
        max_instances: Option<usize>,
        /// Stop starting new work after this many seconds.
        #[arg(long, value_name = "SECS")]
        time_limit: Option<f64>,
    },
    /// Emit an enumerated family: graph6 for graphs, matrix text for 2-metrics.
    Enumerate {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// List the built-in fixtures and the registered checks.
    Fixtures {
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
}

fn writer(out: &Option<PathBuf>) -> Result<BufWriter<Box<dyn Write>>> {
    let w: Box<dyn Write> = match out {
        Some(p) => {
            Box::new(File::create(p).with_context(|| format!("cannot create {}", p.display()))?)
        }
        None => Box::new(io::stdout().lock()),
    };
    Ok(BufWriter::new(w))
}

fn cmd_lines(input: &InputArgs, format: Format, out: &Option<PathBuf>) -> Result<bool> {
    let rows = input
        .instances()?
        .map(|i| lines_row(&i))
        .collect::<Result<Vec<LinesRow>>>()?;
    let mut w = writer(out)?;
    if format == Format::Csv {
        writeln!(w, "{}", LinesRow::CSV_HEADER)?;
    }
    for r in &rows {
        match format {
            Format::Jsonl => writeln!(w, "{}", r.to_json())?,
            Format::Csv => writeln!(w, "{}", r.to_csv())?,
            Format::Human => write!(w, "{}", r.to_human())?,
        }
    }
    w.flush()?;
    Ok(true)
}

fn human_summary(r: &SuiteReport) -> String {
    let mut s = format!(
        "{:<16} {:>9} {:>6} {:>7} {:>9}\n",
        "check", "pass", "fail", "exempt", "unmet"
    );
    for (name, c) in &r.counts {
        s.push_str(&format!(
            "{name:<16} {:>9} {:>6} {:>7} {:>9}\n",
            c.pass, c.fail, c.exempt, c.unmet
        ));
    }
    s
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    input: &InputArgs,
    check: &str,
    jobs: Option<usize>,
    format: Format,
    out: &Option<PathBuf>,
    summary: &Option<PathBuf>,
    timings: bool,
    max_instances: Option<usize>,
    time_limit: Option<f64>,
) -> Result<bool> {
    let checks = select_checks(check)?;
    if jobs == Some(0) {
        bail!("--jobs must be at least 1");
    }
    let time_limit = match time_limit {
        Some(t) if !(t.is_finite() && t >= 0.0) => {
            bail!("--time-limit must be a non-negative number")
        }
        t => t.map(Duration::from_secs_f64),
    };
    let opts = SuiteOptions {
        jobs,
        max_instances,
        time_limit,
        timings,
    };
    let instances = input.instances()?;
    let mut w = writer(out)?;
    let mut write_err: Option<io::Error> = None;
    let report = run_suite(instances, &checks, &opts, |v| {
        if write_err.is_some() {
            return;
        }
        let r = match format {
            Format::Jsonl => writeln!(w, "{}", v.to_json_line()),
            Format::Human if v.status == metric_lines::verify::Status::Fail => writeln!(
                w,
                "FAIL {} {} {}",
                v.check,
                v.instance,
                v.witness
                    .as_ref()
                    .map(|x| x.to_string())
                    .unwrap_or_default()
            ),
            _ => Ok(()),
        };
        if let Err(e) = r {
            write_err = Some(e);
        }
    })?;
    if let Some(e) = write_err {
        return Err(e).context("writing verdicts");
    }
    match format {
        Format::Csv => write!(w, "{}", report.summary_csv())?,
        Format::Human => write!(w, "{}", human_summary(&report))?,
        Format::Jsonl => {}
    }
    w.flush()?;
    if let Some(p) = summary {
        std::fs::write(p, report.summary_csv())
            .with_context(|| format!("cannot write {}", p.display()))?;
    }
    eprintln!(
        "{} instances, {} failures{}",
        report.instances,
        report.total_failures(),
        if report.complete {
            ""
        } else {
            " (PARTIAL RUN: budget exhausted)"
        }
    );
    if format != Format::Human {
        eprint!("{}", human_summary(&report));
    }
    Ok(report.total_failures() == 0)
}

fn cmd_enumerate(input: &InputArgs, out: &Option<PathBuf>) -> Result<bool> {
    let Some(spec) = input.family_spec()? else {
        bail!("enumerate needs --family and --n");
    };
    let spec = match input.shard {
        Some(s) => spec.sharded(s),
        None => spec,
    };
    let mut w = writer(out)?;
    if spec.family == Family::TwoMetric {
        for d in enumerate_two_metrics(&spec)? {
            write!(w, "{}", text::write_matrix(&d))?;
        }
    } else {
        for g in enumerate_graphs(&spec)? {
            writeln!(w, "{}", graph6::encode(&g))?;
        }
    }
    w.flush()?;
    Ok(true)
}

fn cmd_fixtures(format: Format, out: &Option<PathBuf>) -> Result<bool> {
    let mut w = writer(out)?;
    if format == Format::Csv {
        writeln!(w, "name,n,m,graph6,exempted")?;
    }
    for name in FIXTURES {
        let g = fixture(name)?;
        let (n, m, g6, ex) = (
            g.n(),
            g.edge_count(),
            graph6::encode(&g),
            EXEMPT_GRAPHS.contains(&name),
        );
        match format {
            Format::Jsonl => writeln!(
                w,
                "{}",
                serde_json::json!({ "name": name, "n": n, "m": m, "graph6": g6, "exempted": ex })
            )?,
            Format::Csv => writeln!(w, "{name},{n},{m},{g6},{ex}")?,
            Format::Human => writeln!(
                w,
                "{name:<10} n={n:<2} m={m:<3} {g6:<12}{}",
                if ex { " exempted" } else { "" }
            )?,
        }
    }
    if format == Format::Human {
        writeln!(w, "\nchecks:")?;
        for c in registry() {
            writeln!(w, "  {:<14} {}", c.name, c.summary)?;
        }
    }
    w.flush()?;
    Ok(true)
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Lines { input, format, out } => cmd_lines(&input, format, &out),
        Command::Verify {
            input,
            check,
            jobs,
            format,
            out,
            summary,
            timings,
            max_instances,
            time_limit,
        } => cmd_verify(
            &input,
            &check,
            jobs,
            format,
            &out,
            &summary,
            timings,
            max_instances,
            time_limit,
        ),
        Command::Enumerate { input, out } => cmd_enumerate(&input, &out),
        Command::Fixtures { format, out } => cmd_fixtures(format, &out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
