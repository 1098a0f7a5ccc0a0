use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qwn_cli::report::{AlgebraSummary, DimensionRow};
use qwn_cli::{emit_report, load_config, run_suites_with, Format, RunOptions, VerificationReport};

/// Exit codes: 0 all suites passed (flagged counts as passed), 1 a suite
/// failed or errored, 2 the configuration or input was invalid.
#[derive(Parser)]
#[command(name = "qwn", version, about = "Verify quantum white noise operator identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Json,
    Markdown,
}

impl From<OutFormat> for Format {
    fn from(f: OutFormat) -> Self {
        match f {
            OutFormat::Json => Format::Json,
            OutFormat::Markdown => Format::Markdown,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and write a report.
    Verify {
        #[arg(long)]
        config: PathBuf,
        /// Restrict to these suites (repeatable); defaults to the config's list.
        #[arg(long = "suite")]
        suites: Vec<String>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: OutFormat,
        /// Record per-suite wall time (makes the report non-reproducible).
        #[arg(long)]
        timing: bool,
    },
    /// Print realized and formal closure dimensions.
    Closure {
        #[arg(long)]
        config: PathBuf,
    },
    /// Render a JSON report in another format.
    Report {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "markdown")]
        format: OutFormat,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

const CONFIG_ERROR: u8 = 2;

fn series(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" → ")
}

fn line(mode: &str, a: &AlgebraSummary) -> String {
    format!(
        "  {mode:<9} dim {:>2}  derived {}  lower central {}  solvable {}  nilpotent {}",
        a.dim,
        series(&a.derived_series),
        series(&a.lower_central_series),
        a.solvable,
        a.nilpotent
    )
}

fn print_rows(rows: &[DimensionRow]) {
    for r in rows {
        println!("{}", r.algebra);
        println!("{}", line("realized", &r.realized));
        if let Some(f) = &r.formal {
            println!("{}", line("formal", f));
        }
        if let (Some(s), Some(m)) = (r.stated_dim, &r.stated_matches) {
            println!("  stated    dim {s:>2}  matches {m}");
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify {
            config,
            suites,
            out,
            format,
            timing,
        } => {
            let mut cfg = match load_config(&config) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(CONFIG_ERROR);
                }
            };
            if !suites.is_empty() {
                cfg.suites = suites;
                if let Err(e) = cfg.validate() {
                    eprintln!("error: {e}");
                    return ExitCode::from(CONFIG_ERROR);
                }
            }
            let report = run_suites_with(&cfg, RunOptions { timing });
            for s in &report.suites {
                eprintln!("{:<20} {}", s.name, s.status.as_str());
            }
            if let Err(e) = emit_report(&report, &out, format.into()) {
                eprintln!("error: cannot write {}: {e}", out.display());
                return ExitCode::from(CONFIG_ERROR);
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Command::Closure { config } => {
            let cfg = match load_config(&config) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(CONFIG_ERROR);
                }
            };
            match qwn_cli::suites::closure_tables(&cfg) {
                Ok(rows) => {
                    print_rows(&rows);
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {}", e.0);
                    ExitCode::from(1)
                }
            }
        }
        Command::Report { input, format, out } => {
            let text = match std::fs::read_to_string(&input) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: cannot read {}: {e}", input.display());
                    return ExitCode::from(CONFIG_ERROR);
                }
            };
            let report = match VerificationReport::from_json(&text) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("error: {} is not a report: {e}", input.display());
                    return ExitCode::from(CONFIG_ERROR);
                }
            };
            let rendered = match Format::from(format) {
                Format::Json => report.to_json(),
                Format::Markdown => report.to_markdown(),
            };
            match out {
                Some(p) => {
                    if let Err(e) = std::fs::write(&p, rendered) {
                        eprintln!("error: cannot write {}: {e}", p.display());
                        return ExitCode::from(CONFIG_ERROR);
                    }
                }
                None => print!("{rendered}"),
            }
            ExitCode::SUCCESS
        }
    }
}
