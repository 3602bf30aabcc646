//! `feqlab`: exact checks of polynomial solutions to mean-value and
//! difference functional equations.

mod commands;
mod report;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::{ErrorBody, ErrorKind, Report};

#[derive(Debug, Parser)]
#[command(name = "feqlab", version)]
#[command(about = "Exact verification of polynomial solutions to functional equations")]
struct Cli {
    /// Also print a human-readable summary on standard error.
    #[arg(long, global = true)]
    pretty: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide membership of one polynomial in a solution space
    Check(CheckArgs),
    /// Expand an operator applied to a polynomial
    Expand(ExpandArgs),
    /// Compare exact membership with the characterization theorem on every monomial up to a cap
    Verify(VerifyArgs),
    /// Check Djokovic's mixed-difference identity for concrete steps
    Djokovic(DjokovicArgs),
    /// Downward closures and minimal corners of exponent sets
    Corners(CornersArgs),
    /// Sample equation residuals on a grid and report the worst point
    Scan(ScanArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EquationArg {
    Knw,
    Haruki,
    Frechet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ScanEquationArg {
    Knw,
    Haruki,
    Nagumo,
    Frechet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OperatorArg {
    KnwAverage,
    HarukiDefect,
    KnwDefect,
    ForwardDiff,
    MixedDiff,
    DjokovicRhs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CornersMode {
    Close,
    Minimal,
}

#[derive(Debug, Args)]
struct CheckArgs {
    #[arg(long, value_enum)]
    equation: EquationArg,
    #[arg(long = "N", value_parser = clap::value_parser!(u32).range(1..))]
    n: u32,
    /// Dimension for frechet; inferred from the expression when omitted.
    #[arg(long, value_parser = clap::value_parser!(u16).range(1..))]
    d: Option<u16>,
    #[arg(long, allow_hyphen_values = true)]
    expr: String,
}

#[derive(Debug, Args)]
struct ExpandArgs {
    #[arg(long, value_enum)]
    operator: OperatorArg,
    #[arg(long = "N", value_parser = clap::value_parser!(u32).range(1..))]
    n: u32,
    #[arg(long, value_parser = clap::value_parser!(u16).range(1..))]
    d: Option<u16>,
    /// Rational vectors such as "1,0;0,1/2", or "sym" for symbolic steps.
    #[arg(long, allow_hyphen_values = true)]
    steps: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    expr: String,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    equation: EquationArg,
    #[arg(long = "N", value_parser = clap::value_parser!(u32).range(1..))]
    n: u32,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    d: u32,
    #[arg(long = "max-degree")]
    max_degree: u32,
}

#[derive(Debug, Args)]
struct DjokovicArgs {
    #[arg(long, allow_hyphen_values = true)]
    expr: String,
    #[arg(long, allow_hyphen_values = true)]
    steps: String,
    #[arg(long, value_parser = clap::value_parser!(u16).range(1..))]
    d: Option<u16>,
}

#[derive(Debug, Args)]
struct CornersArgs {
    #[arg(value_enum)]
    mode: CornersMode,
    /// Tuples such as "2,1;INF,0".
    #[arg(long, allow_hyphen_values = true)]
    points: String,
    /// Truncation for infinite coordinates, e.g. "4,4".
    #[arg(long, allow_hyphen_values = true)]
    cap: Option<String>,
}

#[derive(Debug, Args)]
struct ScanArgs {
    #[arg(long, value_enum)]
    equation: ScanEquationArg,
    #[arg(long = "N", value_parser = clap::value_parser!(u32).range(1..))]
    n: u32,
    #[arg(long, value_parser = clap::value_parser!(u16).range(1..))]
    d: Option<u16>,
    /// A polynomial, or a catalog function written @exp, @sin or @abs.
    #[arg(long, allow_hyphen_values = true)]
    expr: String,
    /// Uniform grid "min,max,count" applied to every sampled coordinate.
    #[arg(long, allow_hyphen_values = true)]
    grid: Option<String>,
    #[arg(long, default_value_t = feqlab_core::numeric::DEFAULT_TOLERANCE)]
    tol: f64,
}

/// Parses `argv` and runs the command. `Err` carries clap's own help or
/// version text, which is printed verbatim.
fn run(argv: &[String]) -> Result<(Report, Option<String>, bool), clap::Error> {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e)
            if matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp
                    | clap::error::ErrorKind::DisplayVersion
                    | clap::error::ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand
            ) =>
        {
            return Err(e)
        }
        Err(e) => {
            let command = argv
                .iter()
                .skip(1)
                .find(|a| !a.starts_with('-'))
                .cloned()
                .unwrap_or_default();
            let detail = e.render().to_string();
            let body = ErrorBody {
                kind: ErrorKind::Usage,
                message: first_line(&detail),
                offset: None,
            };
            let pretty = argv.iter().any(|a| a == "--pretty");
            return Ok((
                Report::failure(&command, Default::default(), body),
                Some(detail),
                pretty,
            ));
        }
    };
    let (report, summary) = commands::execute(&cli.command);
    Ok((report, summary, cli.pretty))
}

fn first_line(text: &str) -> String {
    text.lines()
        .next()
        .unwrap_or_default()
        .trim_start_matches("error: ")
        .to_string()
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    match run(&argv) {
        Ok((report, summary, pretty)) => {
            println!(
                "{}",
                serde_json::to_string(&report).expect("reports serialize")
            );
            if pretty {
                if let Some(s) = summary {
                    eprintln!("{}", s.trim_end());
                }
            }
            ExitCode::from(report.exit_code)
        }
        Err(e) => {
            let _ = e.print();
            ExitCode::SUCCESS
        }
    }
}
