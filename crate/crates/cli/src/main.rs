mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ribbon_core::ff_linalg::PrimeField;
use ribbon_core::green::GreenOptions;
use ribbon_core::session::{betti_report, default_conormal, green_session, strata_report, Report};
use ribbon_core::Error;

use config::{CommonArgs, Format, SessionConfig, StrataArgs};

const EXIT_FAILURE: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_NOT_SMOOTH: u8 = 3;
const EXIT_INCONSISTENT: u8 = 4;

/// Koszul cohomology and strata of ribbons over prime fields.
#[derive(Parser)]
#[command(name = "ribbon", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Betti table of the split canonical ribbon
    Betti {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Compare the three Green conditions on the split ribbon
    Green {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Blow-up indices and gonality witnesses of ribbons with fixed conormal bundle
    Strata {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        strata: StrataArgs,
    },
    /// Check that a JSON report parses and round-trips
    Validate { file: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err((code, msg)) => {
            eprintln!("ribbon: {msg}");
            ExitCode::from(code)
        }
    }
}

type Failure = (u8, String);

fn engine(e: Error) -> Failure {
    let code = match e {
        Error::NotSmooth(_) => EXIT_NOT_SMOOTH,
        Error::Config(_) | Error::NotPrime(_) | Error::UnsupportedConormal(_) => EXIT_CONFIG,
        Error::DimensionMismatch(_) | Error::WrongDegree { .. } => EXIT_CONFIG,
        _ => EXIT_FAILURE,
    };
    (code, e.to_string())
}

enum Kind {
    Betti,
    Green { inject_fault: bool },
    Strata,
}

fn run(command: Command) -> Result<u8, Failure> {
    let (kind, common, strata) = match command {
        Command::Validate { file } => return validate(&file),
        Command::Betti { common } => (Kind::Betti, common, StrataArgs::default()),
        Command::Green {
            common,
            inject_fault,
        } => (Kind::Green { inject_fault }, common, StrataArgs::default()),
        Command::Strata { common, strata } => (Kind::Strata, common, strata),
    };
    let cfg = SessionConfig::resolve(&common, &strata).map_err(|m| (EXIT_CONFIG, m))?;
    let field = PrimeField::new(cfg.modulus).map_err(engine)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let model = cfg.curve.build(field, &mut rng).map_err(engine)?;
    let conormal = match cfg.conormal {
        Some(t) => t,
        None => default_conormal(&model).map_err(engine)?,
    };
    let mut code = 0;
    let report = match kind {
        Kind::Betti => Report::Betti(betti_report(&model, conormal).map_err(engine)?),
        Kind::Green { inject_fault } => {
            let g = green_session(&model, conormal, GreenOptions { inject_fault }).map_err(engine)?;
            if !g.report.consistent {
                code = EXIT_INCONSISTENT;
            }
            Report::Green(g)
        }
        Kind::Strata => {
            Report::Strata(strata_report(&model, conormal, &cfg.strata_options(), &mut rng).map_err(engine)?)
        }
    };
    emit(&cfg, &report)?;
    if code == EXIT_INCONSISTENT {
        eprintln!("ribbon: the Green conditions disagree although the hypotheses hold");
    }
    Ok(code)
}

fn emit(cfg: &SessionConfig, report: &Report) -> Result<(), Failure> {
    let json = report.to_json();
    if let Some(path) = &cfg.out {
        std::fs::write(path, &json).map_err(|e| (EXIT_FAILURE, format!("{}: {e}", path.display())))?;
    }
    match cfg.format {
        Format::Text => print!("{}", report.to_text()),
        Format::Json => print!("{json}"),
    }
    Ok(())
}

fn validate(file: &PathBuf) -> Result<u8, Failure> {
    let text = std::fs::read_to_string(file).map_err(|e| (EXIT_CONFIG, format!("{}: {e}", file.display())))?;
    let report = Report::validate(&text).map_err(|m| (EXIT_CONFIG, format!("{}: {m}", file.display())))?;
    let kind = match report {
        Report::Betti(_) => "betti",
        Report::Green(_) => "green",
        Report::Strata(_) => "strata",
    };
    println!("{}: valid {kind} report", file.display());
    Ok(0)
}
