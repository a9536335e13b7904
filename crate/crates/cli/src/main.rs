use std::path::PathBuf;
use std::process;

use clap::{Parser, Subcommand};
use nearfield_cli::output::{conventions, render};
use nearfield_cli::request::{parse_param, Format, Grid, ScanRequest, UnitScale};
use nearfield_cli::scan::run_scan;
use nearfield_cli::targets::registry;
use nearfield_cli::verify::{run_verify, SUITES};
use nearfield_cli::{CliError, ExitCode};
use nearfield_core::parallel::Execution;

#[derive(Parser)]
#[command(name = "nearfield", version, about = "Near-field propagators, switching functions and interaction scans")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one quantity over a parameter grid.
    Scan {
        #[arg(long)]
        target: String,
        /// Quantity within the target (see `nearfield info`).
        #[arg(long)]
        quantity: String,
        /// Fixed parameter, name=value. Repeatable.
        #[arg(long = "param", value_parser = parse_param)]
        params: Vec<(String, f64)>,
        /// Grid axis:min:max:count[:log]. Repeatable; the first is outermost.
        #[arg(long = "grid")]
        grids: Vec<Grid>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "csv")]
        format: Format,
        /// Display units for dimensioned output columns, length=..,time=..
        #[arg(long = "unit-scale")]
        unit_scale: Option<UnitScale>,
        /// Evaluate points on one thread.
        #[arg(long)]
        sequential: bool,
    },
    /// Run the identity checks: all, or one module suite.
    Verify {
        #[arg(default_value = "all")]
        suite: String,
        #[arg(long, default_value = "csv", hide_default_value = true)]
        format: Format,
        /// Also write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print conventions, targets and quantities with their parameters.
    Info,
}

fn write_out(out: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn info() -> String {
    let mut s = String::from("conventions:\n");
    if let Some(m) = conventions().as_object() {
        for (k, v) in m {
            s.push_str(&format!("  {k}: {}\n", v.as_str().unwrap_or_default()));
        }
    }
    s.push_str("\nverify suites:\n");
    for (name, ids) in SUITES {
        s.push_str(&format!("  {name}: {ids:?}\n"));
    }
    s.push_str("\nquantities (parameter=default, `?` marks a required value):\n");
    for q in registry() {
        let params: Vec<String> = q
            .params
            .iter()
            .map(|(n, d, _)| if d.is_nan() { format!("{n}=?") } else { format!("{n}={d}") })
            .collect();
        s.push_str(&format!("  {}/{}: {}\n      {}\n", q.target, q.name, q.summary, params.join(" ")));
    }
    s
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Scan { target, quantity, params, grids, out, format, unit_scale, sequential } => {
            let mut req = ScanRequest::new(&target, &quantity);
            for (k, v) in params {
                if req.params.insert(k.clone(), v).is_some() {
                    return Err(CliError::validation(format!("parameter `{k}` given twice")));
                }
            }
            req.grids = grids;
            req.format = format;
            req.units = unit_scale.unwrap_or_default();
            let exec = if sequential { Execution::Sequential } else { Execution::Parallel };
            let res = run_scan(&req, exec)?;
            write_out(out.as_ref(), &render(&res, format)?)?;
            Ok(ExitCode::Success)
        }
        Command::Verify { suite, format, out } => {
            let report = run_verify(&suite)?;
            let json = serde_json::to_string_pretty(&report.to_json()).map_err(|e| CliError::Io(e.to_string()))? + "\n";
            match format {
                Format::Json => print!("{json}"),
                Format::Csv => print!("{}", report.summary()),
            }
            if let Some(p) = out {
                write_out(Some(&p), &json)?;
            }
            Ok(if report.passed() { ExitCode::Success } else { ExitCode::VerifyFailed })
        }
        Command::Info => {
            print!("{}", info());
            Ok(ExitCode::Success)
        }
    }
}

/// Parse, run and map every outcome to an exit code.
fn execute<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::Validation } else { ExitCode::Success };
        }
    };
    match run(cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("nearfield: {e}");
            e.exit_code()
        }
    }
}

fn main() {
    process::exit(execute(std::env::args_os()) as i32);
}
