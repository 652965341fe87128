//! `rabisim` — command-line front end for the extended-Rabi-model toolkit.
//!
//! One TOML file (see `configs/`) can drive every subcommand; flags override
//! file values, and the fully resolved configuration is echoed as a JSON
//! comment into every output file. Grids are partitioned statically and
//! aggregated in order, so a rerun of the same configuration is
//! byte-identical regardless of worker count.
//!
//! Exit codes: 0 on success, 1 when the run completed but some grid points
//! failed (or a runtime error aborted it), 2 for configuration errors.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rabisim::model::ModelParams;

use crate::config::{parse_list, FileConfig, GridRange};

/// Failure taxonomy mirrored in the exit code: configuration problems are
/// rejected with 2, runtime failures end with 1.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Run(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "configuration error: {m}"),
            CliError::Run(m) => write!(f, "{m}"),
        }
    }
}

impl From<rabisim::Error> for CliError {
    fn from(e: rabisim::Error) -> Self {
        CliError::Run(e.to_string())
    }
}

/// Library errors raised while checking user input, before any computation.
pub fn config_err(e: rabisim::Error) -> CliError {
    CliError::Config(e.to_string())
}

#[derive(Debug, Parser)]
#[command(
    name = "rabisim",
    version,
    about = "Extended Rabi model: spectra, phase diagrams, quench dynamics, Wigner functions",
    propagate_version = true
)]
struct Cli {
    /// TOML run configuration; flags override file values.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Output directory, created if missing.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,

    /// Worker threads for grid parallelism; 0 uses every core.
    #[arg(long, global = true, value_name = "N")]
    workers: Option<usize>,

    #[command(flatten)]
    model: ModelFlags,

    #[command(subcommand)]
    command: Command,
}

/// Hamiltonian controls, shared by every subcommand.
#[derive(Debug, Args)]
struct ModelFlags {
    /// Parity-conserving coupling λ.
    #[arg(long, global = true)]
    lambda: Option<f64>,

    /// Rotating/counter-rotating asymmetry δ ∈ [−1, 1].
    #[arg(long, global = true, allow_negative_numbers = true)]
    delta: Option<f64>,

    /// Parity-violating coupling μ.
    #[arg(long, global = true)]
    mu: Option<f64>,

    /// Drive switch γ (0 or 1).
    #[arg(long, global = true)]
    gamma: Option<f64>,

    /// Size parameter R = ω_q/ω.
    #[arg(long, global = true)]
    r: Option<f64>,

    /// Boson quantum energy ω.
    #[arg(long, global = true)]
    omega: Option<f64>,

    /// Number of qubits N.
    #[arg(long, global = true)]
    n_qubits: Option<u32>,

    /// Fixed Fock cutoff; omit for the adaptive convergence search.
    #[arg(long, global = true)]
    fock_cutoff: Option<usize>,
}

impl ModelFlags {
    fn apply(&self, m: &mut ModelParams) {
        if let Some(v) = self.lambda {
            m.lambda = v;
        }
        if let Some(v) = self.delta {
            m.delta = v;
        }
        if let Some(v) = self.mu {
            m.mu = v;
        }
        if let Some(v) = self.gamma {
            m.gamma = v;
        }
        if let Some(v) = self.r {
            m.r = v;
        }
        if let Some(v) = self.omega {
            m.omega = v;
        }
        if let Some(v) = self.n_qubits {
            m.n_qubits = v;
        }
        if let Some(v) = self.fock_cutoff {
            m.fock_cutoff = Some(v);
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Semiclassical level density over a (λ, ε) grid plus ESQPT borderlines.
    Spectrum(SpectrumArgs),
    /// Ground-state phase diagram over the (λ, δ) plane.
    Phases(PhasesArgs),
    /// Quench of the vacuum product state: observable time series + averages.
    Quench(QuenchArgs),
    /// Infinite-time averages swept over λ (and optionally δ).
    Sweep(SweepArgs),
    /// Wigner snapshots of the reduced field state during a quench.
    Wigner(WignerArgs),
    /// Survival-probability scaling across system sizes R.
    Scaling(ScalingArgs),
}

#[derive(Debug, Args)]
struct SpectrumArgs {
    /// λ grid as start:stop:points.
    #[arg(long, value_name = "A:B:N")]
    lambda_grid: Option<String>,

    /// Scaled-energy grid ε = E/(NRω) as start:stop:points.
    #[arg(long, value_name = "A:B:N", allow_hyphen_values = true)]
    epsilon_grid: Option<String>,

    /// Also diagonalize at every λ and emit the smoothed quantum density.
    #[arg(long)]
    quantum_density: bool,

    /// Gaussian kernel width for the quantum density, in ε units.
    #[arg(long, value_name = "W")]
    kernel_width: Option<f64>,
}

impl SpectrumArgs {
    fn apply(&self, cfg: &mut FileConfig) -> Result<(), CliError> {
        if let Some(g) = &self.lambda_grid {
            cfg.spectrum.lambda = GridRange::parse(g)?;
        }
        if let Some(g) = &self.epsilon_grid {
            cfg.spectrum.epsilon = GridRange::parse(g)?;
        }
        if self.quantum_density {
            cfg.spectrum.quantum_density = true;
        }
        if let Some(w) = self.kernel_width {
            cfg.spectrum.kernel_width = w;
        }
        Ok(())
    }
}

#[derive(Debug, Args)]
struct PhasesArgs {
    /// λ grid as start:stop:points.
    #[arg(long, value_name = "A:B:N")]
    lambda_grid: Option<String>,

    /// δ grid as start:stop:points.
    #[arg(long, value_name = "A:B:N", allow_hyphen_values = true)]
    delta_grid: Option<String>,
}

impl PhasesArgs {
    fn apply(&self, cfg: &mut FileConfig) -> Result<(), CliError> {
        if let Some(g) = &self.lambda_grid {
            cfg.phases.lambda = GridRange::parse(g)?;
        }
        if let Some(g) = &self.delta_grid {
            cfg.phases.delta = GridRange::parse(g)?;
        }
        Ok(())
    }
}

#[derive(Debug, Args)]
struct QuenchArgs {
    /// First sample time.
    #[arg(long, value_name = "T")]
    t_min: Option<f64>,

    /// Last sample time.
    #[arg(long, value_name = "T")]
    t_max: Option<f64>,

    /// Number of sample times.
    #[arg(long, value_name = "N")]
    t_points: Option<usize>,

    /// Logarithmic time spacing (requires t_min > 0).
    #[arg(long)]
    log_times: bool,

    /// Also render Wigner snapshots at auto-located instants.
    #[arg(long)]
    snapshots: bool,

    /// Scan horizon for locating collapse and revival.
    #[arg(long, value_name = "T")]
    horizon: Option<f64>,

    /// Wigner grid resolution per axis when snapshots are on.
    #[arg(long, value_name = "N")]
    grid_points: Option<usize>,
}

impl QuenchArgs {
    fn apply(&self, cfg: &mut FileConfig) {
        if let Some(v) = self.t_min {
            cfg.quench.t_min = v;
        }
        if let Some(v) = self.t_max {
            cfg.quench.t_max = v;
        }
        if let Some(v) = self.t_points {
            cfg.quench.t_points = v;
        }
        if self.log_times {
            cfg.quench.log_times = true;
        }
        if self.snapshots {
            cfg.quench.snapshots = true;
        }
        if let Some(v) = self.horizon {
            cfg.quench.horizon = v;
        }
        if let Some(v) = self.grid_points {
            cfg.quench.grid_points = v;
        }
    }
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// λ grid as start:stop:points.
    #[arg(long, value_name = "A:B:N")]
    lambda_grid: Option<String>,

    /// Optional δ grid as start:stop:points; omitting it sweeps λ at the
    /// model δ only.
    #[arg(long, value_name = "A:B:N", allow_hyphen_values = true)]
    delta_grid: Option<String>,

    /// Moving-average half-width in λ points; 0 copies raw into smoothed.
    #[arg(long, value_name = "N")]
    window: Option<usize>,
}

impl SweepArgs {
    fn apply(&self, cfg: &mut FileConfig) -> Result<(), CliError> {
        if let Some(g) = &self.lambda_grid {
            cfg.sweep.lambda = GridRange::parse(g)?;
        }
        if let Some(g) = &self.delta_grid {
            cfg.sweep.delta = Some(GridRange::parse(g)?);
        }
        if let Some(w) = self.window {
            cfg.sweep.window = w;
        }
        Ok(())
    }
}

#[derive(Debug, Args)]
struct WignerArgs {
    /// Comma-separated snapshot times; omit to auto-locate
    /// early/dip/revival from the survival signal.
    #[arg(long, value_name = "T1,T2,…")]
    times: Option<String>,

    /// Scan horizon for the auto-located instants.
    #[arg(long, value_name = "T")]
    horizon: Option<f64>,

    /// Grid resolution per phase-space axis.
    #[arg(long, value_name = "N")]
    grid_points: Option<usize>,
}

impl WignerArgs {
    fn apply(&self, cfg: &mut FileConfig) -> Result<(), CliError> {
        if let Some(list) = &self.times {
            cfg.wigner.times = Some(parse_list(list)?);
        }
        if let Some(v) = self.horizon {
            cfg.wigner.horizon = v;
        }
        if let Some(v) = self.grid_points {
            cfg.wigner.grid_points = v;
        }
        Ok(())
    }
}

#[derive(Debug, Args)]
struct ScalingArgs {
    /// Comma-separated list of sizes R, strictly increasing.
    #[arg(long, value_name = "R1,R2,…")]
    r_values: Option<String>,
}

impl ScalingArgs {
    fn apply(&self, cfg: &mut FileConfig) -> Result<(), CliError> {
        if let Some(list) = &self.r_values {
            cfg.scaling.r_values = parse_list(list)?;
        }
        Ok(())
    }
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Spectrum(_) => "spectrum",
            Command::Phases(_) => "phases",
            Command::Quench(_) => "quench",
            Command::Sweep(_) => "sweep",
            Command::Wigner(_) => "wigner",
            Command::Scaling(_) => "scaling",
        }
    }
}

/// Resolves the configuration, prepares the output directory, and runs the
/// subcommand. Returns the number of grid points that failed.
fn run(cli: &Cli) -> Result<usize, CliError> {
    let mut cfg = FileConfig::load(cli.config.as_deref())?;
    cli.model.apply(&mut cfg.model);
    if let Some(dir) = &cli.out {
        cfg.output.dir = dir.clone();
    }
    if let Some(w) = cli.workers {
        cfg.run.workers = w;
    }

    match &cli.command {
        Command::Spectrum(a) => a.apply(&mut cfg)?,
        Command::Phases(a) => a.apply(&mut cfg)?,
        Command::Quench(a) => a.apply(&mut cfg),
        Command::Sweep(a) => a.apply(&mut cfg)?,
        Command::Wigner(a) => a.apply(&mut cfg)?,
        Command::Scaling(a) => a.apply(&mut cfg)?,
    }

    cfg.model = cfg.model.validate().map_err(config_err)?;

    if cfg.run.workers > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.run.workers)
            .build_global()
            .map_err(|e| CliError::Run(format!("thread pool: {e}")))?;
    }

    std::fs::create_dir_all(&cfg.output.dir).map_err(|e| {
        CliError::Run(format!("cannot create output dir {}: {e}", cfg.output.dir.display()))
    })?;

    match &cli.command {
        Command::Spectrum(_) => commands::spectrum::run(&cfg),
        Command::Phases(_) => commands::phases::run(&cfg),
        Command::Quench(_) => commands::quench::run(&cfg),
        Command::Sweep(_) => commands::sweep::run(&cfg),
        Command::Wigner(_) => commands::wigner::run(&cfg),
        Command::Scaling(_) => commands::scaling::run(&cfg),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = cli.command.name();
    match run(&cli) {
        Ok(0) => ExitCode::SUCCESS,
        Ok(failed) => {
            eprintln!("{command}: {failed} grid point(s) failed; see the report file");
            ExitCode::from(1)
        }
        Err(e @ CliError::Config(_)) => {
            eprintln!("{e}");
            ExitCode::from(2)
        }
        Err(e @ CliError::Run(_)) => {
            eprintln!("{e}");
            ExitCode::from(1)
        }
    }
}
