use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use conelab::script::{self, error_exit_code, Report, RunOptions, COMMANDS};
use conelab::{Error, MonomialOrder};

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    Lex,
    Grevlex,
}

/// Flatness, tangent star cones and resolutions over the rationals.
#[derive(Parser)]
#[command(name = "conelab", version)]
struct Cli {
    /// One of: gb nf colon intersect saturate eliminate dim tangent-star smf
    /// s0 coalesce embedded flat internal-flat fiber-compare pd cm verdict
    command: String,
    /// A `.cone` script or a bare generator list.
    file: Option<PathBuf>,
    /// Polynomial `f`, instead of a file.
    #[arg(long)]
    poly: Option<String>,
    #[arg(long, value_enum)]
    order: Option<Order>,
    #[arg(long)]
    param: Option<String>,
    /// File holding the test ideal J.
    #[arg(long)]
    test_ideal: Option<PathBuf>,
    /// Seed for generated test ideals.
    #[arg(long)]
    seed: Option<u64>,
    /// Also test internal flatness with I : t^inf.
    #[arg(long)]
    saturate: bool,
    /// Check the hypersurface verdict by computing the cone.
    #[arg(long)]
    verify: bool,
    /// Write the report as JSON.
    #[arg(long)]
    json: Option<PathBuf>,
    #[arg(long)]
    max_pairs: Option<usize>,
}

fn execute(cli: &Cli) -> conelab::Result<Report> {
    if !COMMANDS.contains(&cli.command.as_str()) {
        return Err(Error::InvalidArgument(format!(
            "unknown command `{}`; expected one of {}",
            cli.command,
            COMMANDS.join(", ")
        )));
    }
    let opts = RunOptions {
        order: cli.order.map(|o| match o {
            Order::Lex => MonomialOrder::Lex,
            Order::Grevlex => MonomialOrder::Grevlex,
        }),
        param: cli.param.clone(),
        test_ideal: cli
            .test_ideal
            .as_ref()
            .map(std::fs::read_to_string)
            .transpose()?,
        seed: cli.seed,
        saturate: cli.saturate,
        verify: cli.verify,
        max_pairs: cli.max_pairs,
    };
    let session = match (&cli.file, &cli.poly) {
        (_, Some(p)) => script::script_from_poly(p, cli.param.as_deref())?,
        (Some(path), None) => script::parse(&std::fs::read_to_string(path)?)?,
        (None, None) => {
            return Err(Error::InvalidArgument(
                "give an input file or --poly".into(),
            ));
        }
    };
    let report = script::run(&cli.command, &session, &opts)?;
    if let Some(path) = &cli.json {
        std::fs::write(path, report.to_json())?;
    }
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(report) => {
            print!("{}", report.render());
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(error_exit_code(&e) as u8)
        }
    }
}
