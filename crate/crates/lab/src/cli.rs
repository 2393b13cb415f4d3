//! Command-line parsing and the top-level `run`.

use std::io::Write;
use std::path::Path;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::config::{Command, Format, RunConfig};
use crate::experiments::execute;
use crate::report::render;
use crate::{LabError, LabResult};

#[derive(Debug, Parser)]
#[command(name = "boundary-lab", version, about = "Ergodic averages of boundary representations of lattices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Sub,
}

#[derive(Debug, Subcommand)]
pub enum Sub {
    /// List lattice points of a ball with Cartan and boundary data.
    Enumerate(Opts),
    /// Harish-Chandra function along the barycenter ray.
    Xi(Opts),
    /// Weighted operator averages against their limit.
    Ergodic(Opts),
    /// Equidistribution of boundary images.
    Equidist(Opts),
    /// Two-sided equidistribution of b(gamma) and b(gamma^-1).
    Twosided(Opts),
    /// Lattice point counts, volumes and cone ratios.
    Count(Opts),
    /// Volumes of Cartan balls.
    Volumes(Opts),
    /// Lattice Markov row, or the Haar integral with --haar.
    Markov(Opts),
    /// Decay of the normalized Poisson transform away from a peak.
    Peak(Opts),
    /// Birkhoff averages of a circle rotation.
    Koopman(Opts),
    /// Ball versus annuli decomposition of an average.
    Annuli(Opts),
}

#[derive(Debug, Default, Args)]
pub struct Opts {
    /// Start from a JSON run configuration; flags override its fields.
    #[arg(long)]
    pub config: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Single radius (shorthand for a one-point grid).
    #[arg(long = "T", conflicts_with = "t_grid")]
    pub t: Option<f64>,
    /// Comma-separated radii (the s grid for `peak`).
    #[arg(long = "T-grid", value_delimiter = ',')]
    pub t_grid: Option<Vec<f64>>,
    #[arg(long)]
    pub theta: Option<f64>,
    #[arg(long, value_delimiter = ',')]
    pub thetas: Option<Vec<f64>>,
    /// Quadrature resolution.
    #[arg(long)]
    pub quad: Option<usize>,
    #[arg(long = "inner-scale")]
    pub inner_scale: Option<f64>,
    /// Congruence level.
    #[arg(long)]
    pub q: Option<u32>,
    #[arg(long)]
    pub f: Option<String>,
    #[arg(long)]
    pub phi: Option<String>,
    #[arg(long)]
    pub psi: Option<String>,
    #[arg(long)]
    pub u: Option<String>,
    #[arg(long)]
    pub v: Option<String>,
    #[arg(long)]
    pub r: Option<f64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long, value_delimiter = ',')]
    pub sizes: Option<Vec<usize>>,
    #[arg(long)]
    pub grid: Option<usize>,
    #[arg(long)]
    pub haar: bool,
    #[arg(long)]
    pub radial: Option<usize>,
    /// Enumeration cache directory (default: $BOUNDARY_LAB_CACHE).
    #[arg(long = "cache-dir")]
    pub cache_dir: Option<String>,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<String>,
    /// json or csv; inferred from --out when absent.
    #[arg(long)]
    pub format: Option<String>,
    #[arg(long = "max-count")]
    pub max_count: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
}

impl Sub {
    fn split(self) -> (Command, Opts) {
        match self {
            Sub::Enumerate(o) => (Command::Enumerate, o),
            Sub::Xi(o) => (Command::Xi, o),
            Sub::Ergodic(o) => (Command::Ergodic, o),
            Sub::Equidist(o) => (Command::Equidist, o),
            Sub::Twosided(o) => (Command::Twosided, o),
            Sub::Count(o) => (Command::Count, o),
            Sub::Volumes(o) => (Command::Volumes, o),
            Sub::Markov(o) => (Command::Markov, o),
            Sub::Peak(o) => (Command::Peak, o),
            Sub::Koopman(o) => (Command::Koopman, o),
            Sub::Annuli(o) => (Command::Annuli, o),
        }
    }
}

fn parse_format(s: &str) -> LabResult<Format> {
    match s {
        "json" => Ok(Format::Json),
        "csv" => Ok(Format::Csv),
        _ => Err(LabError::config("format", "expected json or csv")),
    }
}

/// Builds the full configuration: defaults, then the config file, then flags.
pub fn build_config(command: Command, o: Opts) -> LabResult<RunConfig> {
    let mut cfg = match &o.config {
        Some(path) => {
            let c = RunConfig::from_json(&std::fs::read_to_string(path)?)?;
            if c.command != command {
                return Err(LabError::config("command", "config file is for a different command"));
            }
            c
        }
        None => RunConfig::defaults(command, o.n.unwrap_or(2)),
    };
    if let Some(n) = o.n {
        if n != cfg.n {
            let fresh = RunConfig::defaults(command, n);
            cfg.n = n;
            cfg.t_grid = fresh.t_grid;
            cfg.quad = fresh.quad;
            cfg.thetas = fresh.thetas;
        }
    }
    if let Some(t) = o.t {
        cfg.t_grid = vec![t];
    }
    macro_rules! set {
        ($($field:ident),*) => { $( if let Some(v) = o.$field { cfg.$field = v; } )* };
    }
    set!(t_grid, thetas, quad, q, f, phi, psi, u, v, r, alpha, sizes, grid, radial, max_count, seed);
    if o.theta.is_some() {
        cfg.theta = o.theta;
    }
    if o.inner_scale.is_some() {
        cfg.inner_scale = o.inner_scale;
    }
    if o.cache_dir.is_some() {
        cfg.cache_dir = o.cache_dir;
    }
    if o.haar {
        cfg.haar = true;
    }
    if o.out.is_some() {
        cfg.out = o.out;
    }
    cfg.format = match (&o.format, &cfg.out) {
        (Some(f), _) => parse_format(f)?,
        (None, Some(out)) if Path::new(out).extension().is_some_and(|e| e == "csv") => Format::Csv,
        (None, Some(_)) => Format::Json,
        (None, None) => cfg.format,
    };
    cfg.validate()?;
    Ok(cfg)
}

/// Runs a configuration and writes its report.
pub fn run(cfg: &RunConfig) -> LabResult<()> {
    let start = Instant::now();
    let table = execute(cfg)?;
    let text = render(cfg, &table, start.elapsed().as_secs_f64());
    match &cfg.out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Entry point of the binary; returns the process exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let (command, opts) = cli.command.split();
    match build_config(command, opts).and_then(|cfg| run(&cfg)) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
