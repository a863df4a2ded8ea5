use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use qgeom_cli::commands::{self, GeodesicParam, ScanMode, ScanSpec};
use qgeom_cli::CliError;
use quantum_geometry::verify::Level;

/// Geometry of quantum evolution: reports, geodesics, scans and self-checks.
#[derive(Parser)]
#[command(name = "qgeom", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Speed, curvature, torsion and moments of a state as JSON.
    Report {
        spec: PathBuf,
        /// Exit with code 3 if the state is stationary.
        #[arg(long)]
        require_dimensionless: bool,
    },
    /// Point on the geodesic from the spec state to a second state.
    #[command(group(ArgGroup::new("param").required(true).args(["xi", "theta"])))]
    Geodesic {
        spec: PathBuf,
        psi1: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        xi: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        theta: Option<f64>,
    },
    /// Deviation curve over a geometric dt window, written as CSV, with a
    /// power-law fit on stdout.
    Scan {
        spec: PathBuf,
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long, allow_hyphen_values = true)]
        dt_start: f64,
        #[arg(long)]
        points: usize,
        #[arg(long, allow_hyphen_values = true)]
        ratio: f64,
        /// Second-stage step as a multiple of dt (torsion mode).
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        dt_prime_ratio: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Randomized property suites.
    Verify {
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = LevelArg::Quick)]
        level: LevelArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Curvature,
    Torsion,
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Quick,
    Full,
}

fn print_json<T: serde::Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("output is serializable")
    );
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Report {
            spec,
            require_dimensionless,
        } => print_json(&commands::report(&spec, require_dimensionless)?),
        Command::Geodesic {
            spec,
            psi1,
            xi,
            theta,
        } => {
            let param = match (xi, theta) {
                (Some(x), _) => GeodesicParam::Xi(x),
                (None, Some(t)) => GeodesicParam::Theta(t),
                (None, None) => unreachable!("clap requires one of --xi, --theta"),
            };
            print_json(&commands::geodesic(&spec, &psi1, param)?)
        }
        Command::Scan {
            spec,
            mode,
            dt_start,
            points,
            ratio,
            dt_prime_ratio,
            out,
        } => {
            let mode = match mode {
                Mode::Curvature => ScanMode::Curvature,
                Mode::Torsion => ScanMode::Torsion,
            };
            let scan = ScanSpec {
                dt_start,
                points,
                ratio,
                dt_prime_ratio,
            };
            print_json(&commands::scan(&spec, &scan, mode, &out)?)
        }
        Command::Verify { seed, level } => {
            let level = match level {
                LevelArg::Quick => Level::Quick,
                LevelArg::Full => Level::Full,
            };
            let (table, failed) = commands::verify(seed, level);
            print!("{table}");
            if failed > 0 {
                return Err(CliError::VerifyFailed(failed));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
