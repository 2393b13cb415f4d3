//! Run configuration with every default made explicit.

use serde::{Deserialize, Serialize};

use crate::{LabError, LabResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Enumerate,
    Xi,
    Ergodic,
    Equidist,
    Twosided,
    Count,
    Volumes,
    Markov,
    Peak,
    Koopman,
    Annuli,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Enumerate => "enumerate",
            Command::Xi => "xi",
            Command::Ergodic => "ergodic",
            Command::Equidist => "equidist",
            Command::Twosided => "twosided",
            Command::Count => "count",
            Command::Volumes => "volumes",
            Command::Markov => "markov",
            Command::Peak => "peak",
            Command::Koopman => "koopman",
            Command::Annuli => "annuli",
        }
    }

    /// Default radius grid.
    fn default_t_grid(&self, n: usize) -> Vec<f64> {
        match self {
            Command::Enumerate if n == 2 => vec![1.0],
            Command::Enumerate => vec![1.5],
            Command::Xi => vec![0.5, 1.0, 2.0, 4.0, 8.0],
            Command::Peak => vec![2.0, 4.0, 6.0, 8.0],
            Command::Koopman => vec![],
            Command::Volumes if n == 2 => vec![2.0, 4.0, 6.0, 8.0],
            Command::Annuli if n == 2 => vec![4.0, 6.0, 8.0, 10.0],
            Command::Count if n == 2 => vec![8.0, 10.0, 12.0],
            _ if n == 3 => vec![1.2, 1.5, 1.8],
            _ => vec![6.0, 9.0, 12.0],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// Everything a run depends on. Serializes to a canonical JSON object (fixed
/// key order, no optional keys omitted).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: Command,
    pub n: usize,
    /// Radii; for `peak` the `s` grid, for `annuli` the annulus boundaries.
    pub t_grid: Vec<f64>,
    pub theta: Option<f64>,
    /// Cone angles reported by `count`.
    pub thetas: Vec<f64>,
    /// Quadrature resolution: nodes on the circle for `n = 2`, Euler rule
    /// `2N x N x 2N` for `n = 3`.
    pub quad: usize,
    pub inner_scale: Option<f64>,
    /// Congruence level; 1 means the full lattice.
    pub q: u32,
    pub f: String,
    pub phi: String,
    pub psi: String,
    /// Regions for `twosided`, as `arc:a:b`.
    pub u: String,
    pub v: String,
    /// Peak radius.
    pub r: f64,
    /// Koopman rotation number, window sizes and grid.
    pub alpha: f64,
    pub sizes: Vec<usize>,
    pub grid: usize,
    /// `markov`: integrate over the group instead of the lattice.
    pub haar: bool,
    /// Radial midpoint nodes of the Haar check.
    pub radial: usize,
    pub cache_dir: Option<String>,
    pub out: Option<String>,
    pub format: Format,
    pub max_t_sl2: f64,
    pub max_t_sl3: f64,
    pub max_count: f64,
    pub seed: u64,
}

impl RunConfig {
    /// Defaults for a command in dimension `n`.
    pub fn defaults(command: Command, n: usize) -> Self {
        let limits = boundary_lab_core::lattice::EnumerationLimits::default();
        RunConfig {
            command,
            n,
            t_grid: command.default_t_grid(n),
            theta: None,
            thetas: if n == 3 { vec![0.2, 0.35, 0.5, std::f64::consts::FRAC_PI_6] } else { vec![] },
            quad: if n == 3 { 8 } else { 1024 },
            inner_scale: None,
            q: 1,
            f: "one".into(),
            phi: "one".into(),
            psi: "one".into(),
            u: "arc:0:1.5707963267948966".into(),
            v: "arc:0:1.5707963267948966".into(),
            r: 0.5,
            alpha: (5f64.sqrt() - 1.0) / 2.0,
            sizes: vec![1000, 10000],
            grid: 64,
            haar: false,
            radial: 128,
            cache_dir: None,
            out: None,
            format: Format::Json,
            max_t_sl2: limits.max_t_sl2,
            max_t_sl3: limits.max_t_sl3,
            max_count: limits.max_count,
            seed: 0,
        }
    }

    pub fn validate(&self) -> LabResult<()> {
        if !(self.n == 2 || self.n == 3) {
            return Err(LabError::config("n", "must be 2 or 3"));
        }
        if self.command != Command::Koopman
            && (self.t_grid.is_empty() || self.t_grid.windows(2).any(|w| w[0] >= w[1]))
        {
            return Err(LabError::config("T_grid", "must be nonempty and strictly increasing"));
        }
        if self.t_grid.iter().any(|t| !(t.is_finite() && *t > 0.0)) {
            return Err(LabError::config("T_grid", "entries must be positive and finite"));
        }
        if self.quad == 0 {
            return Err(LabError::config("quad", "must be positive"));
        }
        if self.q == 0 {
            return Err(LabError::config("q", "must be at least 1"));
        }
        if self.command == Command::Koopman && (self.grid == 0 || self.sizes.is_empty()) {
            return Err(LabError::config("sizes", "Koopman runs need a grid and window sizes"));
        }
        if self.radial == 0 {
            return Err(LabError::config("radial", "must be positive"));
        }
        Ok(())
    }

    pub fn limits(&self) -> boundary_lab_core::lattice::EnumerationLimits {
        boundary_lab_core::lattice::EnumerationLimits {
            max_t_sl2: self.max_t_sl2,
            max_t_sl3: self.max_t_sl3,
            max_count: self.max_count,
        }
    }

    pub fn to_canonical_json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }

    pub fn from_json(text: &str) -> LabResult<Self> {
        let cfg: RunConfig = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }
}
