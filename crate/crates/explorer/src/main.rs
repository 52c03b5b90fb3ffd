use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use nhxy_explorer::config::Settings;
use nhxy_explorer::error::{ConfigError, ExplorerError};
use nhxy_explorer::sweep::{run_single, run_sweep, Axis, Command, Mode, SweepSpec};
use nhxy_explorer::table::ResultTable;

#[derive(Parser)]
#[command(
    name = "nhxy",
    version,
    about = "Spectra, thermal entanglement and dynamics of the non-Hermitian two-qubit XY model"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Eigenvalues and the signed gap E1 - E0 at one point.
    Spectrum(Flags),
    /// Thermal concurrence (full and low-temperature) at one point.
    Concurrence(Flags),
    /// Grid sweep selected by --mode.
    Sweep(Flags),
    /// Integrated hybrid dynamics against the exact propagator.
    Lindblad(Flags),
    /// Naive versus SVD-normalized entanglement measures for the ground state.
    Demo(Flags),
}

#[derive(Args)]
struct Flags {
    #[arg(long = "J")]
    j: Option<f64>,
    #[arg(long)]
    delta: Option<f64>,
    /// Anti-Hermitian rate: gamma1 = gamma, gamma2 = -gamma.
    #[arg(long, allow_hyphen_values = true)]
    gamma: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    gamma1: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    gamma2: Option<f64>,
    #[arg(long = "B", allow_hyphen_values = true)]
    b: Option<f64>,
    #[arg(long = "T")]
    t: Option<f64>,
    #[arg(long)]
    q: Option<f64>,
    #[arg(long = "t-final")]
    t_final: Option<f64>,
    #[arg(long)]
    dt: Option<f64>,
    #[arg(long)]
    mode: Option<Mode>,
    /// start:stop:count, once per swept axis.
    #[arg(long, allow_hyphen_values = true)]
    grid: Vec<Axis>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    workers: Option<usize>,
    /// Divide each integrated state by its trace.
    #[arg(long)]
    renormalize: bool,
}

impl Flags {
    fn settings(self) -> Result<(Settings, Option<PathBuf>), ConfigError> {
        let file = match &self.config {
            Some(path) => Settings::load(path)?,
            None => Settings::default(),
        };
        let flags = Settings {
            j: self.j,
            delta: self.delta,
            gamma: self.gamma,
            gamma1: self.gamma1,
            gamma2: self.gamma2,
            b: self.b,
            t: self.t,
            q: self.q,
            t_final: self.t_final,
            dt: self.dt,
            mode: self.mode,
            grid: self.grid,
            out: self.out,
            renormalize: self.renormalize.then_some(true),
            workers: self.workers,
        };
        let merged = file.overlay(flags);
        let out = merged.out.clone();
        Ok((merged, out))
    }
}

fn run(cli: Cli) -> Result<(), ExplorerError> {
    let (command, flags) = match cli.command {
        Cmd::Spectrum(f) => (Some(Command::Spectrum), f),
        Cmd::Concurrence(f) => (Some(Command::Concurrence), f),
        Cmd::Lindblad(f) => (Some(Command::Lindblad), f),
        Cmd::Demo(f) => (Some(Command::Demo), f),
        Cmd::Sweep(f) => (None, f),
    };
    let (settings, out) = flags.settings()?;
    let fixed = settings.resolve()?;
    let table = match command {
        Some(c) => run_single(c, &fixed, settings.grid)?,
        None => {
            let mode = settings
                .mode
                .ok_or_else(|| ConfigError::Validation("sweep needs --mode".into()))?;
            let spec = SweepSpec::new(mode, settings.grid, fixed, out.clone())?;
            run_sweep(&spec, settings.workers)?
        }
    };
    emit(&table, out)
}

fn emit(table: &ResultTable, out: Option<PathBuf>) -> Result<(), ExplorerError> {
    match out {
        Some(path) => table.write_to(&path)?,
        None => std::io::stdout()
            .lock()
            .write_all(table.to_csv().as_bytes())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("nhxy: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
