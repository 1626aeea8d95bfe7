//! Command-line front end: configuration, pattern and sweep computation, CSV
//! output and the validation report.
//!
//! Configuration is layered: built-in defaults (the reference parameter set),
//! then an optional flat `key = value` file, then command-line flags.

mod csv;
pub mod validate;

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use crate::error::Error;
use crate::slit::{diffracted_state, SlitGeometry};
use crate::twoparticle::{
    detection_pattern, initial_overlap, uniform_grid, DetectionPattern, Statistics, TwoParticleSystem,
};
use crate::wavepacket::PacketParams;

pub use csv::{write_pattern_csv, write_sweep_csv};

/// Every knob of a run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub sigma: f64,
    pub sigma_bar: f64,
    pub b: f64,
    pub x0: f64,
    pub tau_s: f64,
    pub tau_d: f64,
    pub x_fixed: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub y_steps: usize,
    pub statistics: Vec<Statistics>,
    pub sweep_min: f64,
    pub sweep_max: f64,
    pub sweep_steps: usize,
    pub output_path: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            sigma: 1.0,
            sigma_bar: 2.0,
            b: 0.1,
            x0: 0.4,
            tau_s: 0.2,
            tau_d: 0.2,
            x_fixed: 0.0,
            y_min: -4.0,
            y_max: 4.0,
            y_steps: 801,
            statistics: Statistics::ALL.to_vec(),
            sweep_min: 0.1,
            sweep_max: 5.0,
            sweep_steps: 50,
            output_path: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        let positive = [
            ("sigma", self.sigma),
            ("sigma-bar", self.sigma_bar),
            ("b", self.b),
            ("x0", self.x0),
            ("tau-d", self.tau_d),
            ("sweep-min", self.sweep_min),
        ];
        for (name, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(CliError::Config(format!("--{name} must be positive, got {v}")));
            }
        }
        if !(self.tau_s.is_finite() && self.tau_s >= 0.0) {
            return Err(CliError::Config(format!(
                "--tau-s must be non-negative, got {}",
                self.tau_s
            )));
        }
        if !self.x_fixed.is_finite() {
            return Err(CliError::Config("--x-fixed must be finite".into()));
        }
        if !(self.y_min.is_finite() && self.y_max.is_finite() && self.y_min < self.y_max) {
            return Err(CliError::Config(format!(
                "need y-min < y-max, got [{}, {}]",
                self.y_min, self.y_max
            )));
        }
        if self.y_steps < 2 {
            return Err(CliError::Config("--y-steps must be at least 2".into()));
        }
        if !(self.sweep_max.is_finite() && self.sweep_min < self.sweep_max) {
            return Err(CliError::Config("need sweep-min < sweep-max".into()));
        }
        if self.sweep_steps < 2 {
            return Err(CliError::Config("--sweep-steps must be at least 2".into()));
        }
        if self.statistics.is_empty() {
            return Err(CliError::Config("--stats selects no statistics".into()));
        }
        Ok(())
    }

    pub fn particle(&self, sigma: f64) -> crate::Result<PacketParams> {
        PacketParams::new(sigma, self.tau_s, self.tau_d)
    }

    pub fn geometry(&self) -> crate::Result<SlitGeometry> {
        SlitGeometry::new(self.b, self.x0)
    }

    /// The pair described by this configuration.
    pub fn system(&self) -> crate::Result<TwoParticleSystem> {
        let g = self.geometry()?;
        let psi = diffracted_state(&self.particle(self.sigma)?, &g)?;
        let phi = diffracted_state(&self.particle(self.sigma_bar)?, &g)?;
        TwoParticleSystem::new(psi, phi)
    }

    pub fn y_grid(&self) -> Vec<f64> {
        uniform_grid(self.y_min, self.y_max, self.y_steps)
    }

    pub fn sweep_grid(&self) -> Vec<f64> {
        uniform_grid(self.sweep_min, self.sweep_max, self.sweep_steps)
    }

    /// Statistics in canonical column order, duplicates removed.
    fn columns(&self) -> Vec<Statistics> {
        let mut s = self.statistics.clone();
        s.sort();
        s.dedup();
        s
    }

    fn apply_file(&mut self, file: ConfigFile) -> Result<(), CliError> {
        macro_rules! take {
            ($($field:ident),*) => { $( if let Some(v) = file.$field { self.$field = v; } )* };
        }
        take!(
            sigma,
            sigma_bar,
            b,
            x0,
            tau_s,
            tau_d,
            x_fixed,
            y_min,
            y_max,
            y_steps,
            sweep_min,
            sweep_max,
            sweep_steps
        );
        if let Some(s) = file.stats {
            self.statistics = parse_stats(&s).map_err(CliError::Config)?;
        }
        if let Some(out) = file.out {
            self.output_path = Some(out);
        }
        Ok(())
    }

    fn apply_flags(&mut self, flags: &ConfigFlags) {
        macro_rules! take {
            ($($field:ident),*) => { $( if let Some(v) = flags.$field { self.$field = v; } )* };
        }
        take!(sigma, sigma_bar, b, x0, tau_s, tau_d, x_fixed, y_min, y_max, y_steps);
        if let Some(s) = &flags.stats {
            self.statistics = s.clone();
        }
        if let Some(out) = &flags.out {
            self.output_path = Some(out.clone());
        }
    }

    /// Layer a config file (if any) and flags over the defaults.
    pub fn resolve(flags: &ConfigFlags) -> Result<Self, CliError> {
        let mut cfg = RunConfig::default();
        if let Some(path) = &flags.config {
            cfg.apply_file(ConfigFile::load(path)?)?;
        }
        cfg.apply_flags(flags);
        cfg.validate()?;
        Ok(cfg)
    }

    /// Preset for one of the reference figures: 1 and 2 are detection
    /// patterns at σ̄ = 2 and σ̄ = 4, 3 is the final-overlap sweep.
    pub fn figure(n: u8) -> Option<Self> {
        match n {
            1 => Some(RunConfig::default()),
            2 => Some(RunConfig {
                sigma_bar: 4.0,
                ..RunConfig::default()
            }),
            3 => Some(RunConfig::default()),
            _ => None,
        }
    }
}

fn parse_stats(s: &str) -> Result<Vec<Statistics>, String> {
    s.split(',').filter(|t| !t.trim().is_empty()).map(str::parse).collect()
}

/// Flat key-value configuration file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    sigma: Option<f64>,
    sigma_bar: Option<f64>,
    b: Option<f64>,
    x0: Option<f64>,
    tau_s: Option<f64>,
    tau_d: Option<f64>,
    x_fixed: Option<f64>,
    y_min: Option<f64>,
    y_max: Option<f64>,
    y_steps: Option<usize>,
    stats: Option<String>,
    sweep_min: Option<f64>,
    sweep_max: Option<f64>,
    sweep_steps: Option<usize>,
    out: Option<PathBuf>,
}

impl ConfigFile {
    fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::Config(format!("bad config {}: {e}", path.display())))
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Physics(#[from] Error),
    #[error("cannot write {path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{failed} validation check(s) failed")]
    Validation { failed: usize },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Io { .. } => 2,
            CliError::Physics(_) | CliError::Validation { .. } => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "twoslit", version, about = "Two-particle two-slit coincidence patterns")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Joint density P(x_fixed, y) along the moving detector.
    Pattern(ConfigFlags),
    /// Initial and final overlap as a function of sigma-bar.
    OverlapSweep {
        #[command(flatten)]
        flags: ConfigFlags,
        #[arg(long)]
        sweep_min: Option<f64>,
        #[arg(long)]
        sweep_max: Option<f64>,
        #[arg(long)]
        sweep_steps: Option<usize>,
    },
    /// Data for one of the reference figures (1, 2: patterns; 3: overlap sweep).
    Figure {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=3))]
        number: u8,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cross-check every closed form against quadrature.
    Validate(ConfigFlags),
}

#[derive(Debug, Clone, Default, Args)]
pub struct ConfigFlags {
    /// Flat key = value configuration file.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Mode width of the first particle [um^-1].
    #[arg(long)]
    pub sigma: Option<f64>,
    /// Mode width of the second particle [um^-1].
    #[arg(long)]
    pub sigma_bar: Option<f64>,
    /// Gaussian slit half-width [um].
    #[arg(long)]
    pub b: Option<f64>,
    /// Slit-centre offset [um].
    #[arg(long)]
    pub x0: Option<f64>,
    /// Reduced source-to-slit time hbar*t_s/m [um^2].
    #[arg(long)]
    pub tau_s: Option<f64>,
    /// Reduced slit-to-detector time hbar*(t-t_s)/m [um^2].
    #[arg(long)]
    pub tau_d: Option<f64>,
    /// Position of the fixed detector [um].
    #[arg(long, allow_hyphen_values = true)]
    pub x_fixed: Option<f64>,
    /// Start of the moving-detector grid [um].
    #[arg(long, allow_hyphen_values = true)]
    pub y_min: Option<f64>,
    /// End of the moving-detector grid [um].
    #[arg(long, allow_hyphen_values = true)]
    pub y_max: Option<f64>,
    /// Number of grid points, endpoints included.
    #[arg(long)]
    pub y_steps: Option<usize>,
    /// Comma-separated subset of dist,boson,fermion.
    #[arg(long, value_delimiter = ',')]
    pub stats: Option<Vec<Statistics>>,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Computes the detection pattern of a configuration.
pub fn compute_pattern(cfg: &RunConfig) -> crate::Result<DetectionPattern> {
    let sys = cfg.system()?;
    detection_pattern(cfg.x_fixed, &cfg.y_grid(), &sys, &cfg.columns())
}

/// One row of an overlap sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub sigma_bar: f64,
    pub initial_overlap: f64,
    pub final_overlap_sq: f64,
}

pub fn compute_overlap_sweep(cfg: &RunConfig) -> crate::Result<Vec<SweepRow>> {
    let g = cfg.geometry()?;
    let psi = diffracted_state(&cfg.particle(cfg.sigma)?, &g)?;
    cfg.sweep_grid()
        .into_iter()
        .map(|sigma_bar| {
            let phi = diffracted_state(&cfg.particle(sigma_bar)?, &g)?;
            let sys = TwoParticleSystem::new(psi, phi)?;
            Ok(SweepRow {
                sigma_bar,
                initial_overlap: initial_overlap(cfg.sigma, sigma_bar)?,
                final_overlap_sq: sys.overlap_sq(),
            })
        })
        .collect()
}

fn emit(path: Option<&Path>, write: impl FnOnce(&mut dyn Write) -> io::Result<()>) -> Result<(), CliError> {
    let io_err = |source| CliError::Io {
        path: path.map_or("<stdout>".into(), |p| p.display().to_string()),
        source,
    };
    match path {
        Some(p) => {
            let mut file = io::BufWriter::new(fs::File::create(p).map_err(io_err)?);
            write(&mut file).and_then(|_| file.flush()).map_err(io_err)
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            write(&mut lock).map_err(io_err)
        }
    }
}

pub fn cmd_pattern(cfg: &RunConfig, command: &str) -> Result<(), CliError> {
    if !cfg.geometry()?.is_well_separated() {
        eprintln!("warning: x0 = {} does not exceed b = {}; slits overlap", cfg.x0, cfg.b);
    }
    let pattern = compute_pattern(cfg)?;
    emit(cfg.output_path.as_deref(), |w| {
        write_pattern_csv(w, cfg, command, &pattern)
    })
}

pub fn cmd_overlap_sweep(cfg: &RunConfig, command: &str) -> Result<(), CliError> {
    let rows = compute_overlap_sweep(cfg)?;
    emit(cfg.output_path.as_deref(), |w| write_sweep_csv(w, cfg, command, &rows))
}

pub fn cmd_validate(cfg: &RunConfig) -> Result<(), CliError> {
    let report = validate::run(cfg);
    emit(cfg.output_path.as_deref(), |w| report.write(w))?;
    match report.failures() {
        0 => Ok(()),
        failed => Err(CliError::Validation { failed }),
    }
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Pattern(flags) => cmd_pattern(&RunConfig::resolve(&flags)?, "pattern"),
        Command::OverlapSweep {
            flags,
            sweep_min,
            sweep_max,
            sweep_steps,
        } => {
            let mut cfg = RunConfig::resolve(&flags)?;
            cfg.sweep_min = sweep_min.unwrap_or(cfg.sweep_min);
            cfg.sweep_max = sweep_max.unwrap_or(cfg.sweep_max);
            cfg.sweep_steps = sweep_steps.unwrap_or(cfg.sweep_steps);
            cfg.validate()?;
            cmd_overlap_sweep(&cfg, "overlap-sweep")
        }
        Command::Figure { number, out } => {
            let mut cfg = RunConfig::figure(number).expect("clap restricts the figure number");
            cfg.output_path = out;
            let command = format!("figure {number}");
            if number == 3 {
                cmd_overlap_sweep(&cfg, &command)
            } else {
                cmd_pattern(&cfg, &command)
            }
        }
        Command::Validate(flags) => cmd_validate(&RunConfig::resolve(&flags)?),
    }
}

/// Parse arguments, run, and map the outcome to a process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
