use clap::{Args, ValueEnum};
use kinetic_spectra::spectra::Tolerance;
use kinetic_spectra::{CrossSectionModel, OperatorSpec};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

use crate::CliError;

pub const DEFAULT_S: f64 = 0.5;
pub const DEFAULT_NMAX: u32 = 4;
pub const DEFAULT_LMAX: u32 = 4;
pub const DEFAULT_RADIAL_NODES: usize = 48;
pub const DEFAULT_TIMES: &[f64] = &[0.0, 0.1, 0.2, 0.5, 1.0, 2.0, 5.0];

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OperatorKind {
    Landau,
    Boltzmann,
    FractionalLandau,
}

/// Flags shared by every subcommand. Unset flags fall back to the JSON
/// config file, then to built-in defaults.
#[derive(Args, Debug, Clone, Default)]
pub struct CommonArgs {
    /// Singularity exponent of the angular kernel, in (0, 1).
    #[arg(long = "s")]
    pub s: Option<f64>,
    /// `normalized` or `cutoff:EPS`.
    #[arg(long)]
    pub kernel: Option<String>,
    #[arg(long)]
    pub nmax: Option<u32>,
    #[arg(long)]
    pub lmax: Option<u32>,
    /// Additional bound on the oscillator level 2n+l.
    #[arg(long = "level-max")]
    pub level_max: Option<u32>,
    /// Radial Gauss–Laguerre nodes for expanding function presets.
    #[arg(long = "radial-nodes")]
    pub radial_nodes: Option<usize>,
    /// Relative quadrature tolerance for eigenvalue integrals.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Output directory; files are written atomically.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// JSON file with any of the settings above.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

/// On-disk form of the run configuration.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub s: Option<f64>,
    pub kernel: Option<String>,
    pub nmax: Option<u32>,
    pub lmax: Option<u32>,
    pub level_max: Option<u32>,
    pub radial_nodes: Option<usize>,
    pub tol: Option<f64>,
    pub out: Option<PathBuf>,
    pub times: Option<Vec<f64>>,
    pub initial: Option<String>,
    pub operator: Option<OperatorKind>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("invalid config {}: {e}", path.display())))
    }
}

/// Fully resolved settings.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub s: f64,
    pub kernel: CrossSectionModel,
    pub kernel_spec: String,
    pub nmax: u32,
    pub lmax: u32,
    pub level_max: Option<u32>,
    pub radial_nodes: usize,
    pub tol: Tolerance,
    pub out: Option<PathBuf>,
    pub file: FileConfig,
}

impl RunConfig {
    pub fn resolve(args: &CommonArgs) -> Result<Self, CliError> {
        let file = match &args.config {
            Some(p) => FileConfig::load(p)?,
            None => FileConfig::default(),
        };
        let s = args.s.or(file.s).unwrap_or(DEFAULT_S);
        if !(s > 0.0 && s < 1.0) {
            return Err(CliError::Config(format!("--s must lie in (0, 1), got {s}")));
        }
        let kernel_spec = args
            .kernel
            .clone()
            .or_else(|| file.kernel.clone())
            .unwrap_or_else(|| "normalized".to_string());
        let kernel = parse_kernel(&kernel_spec, s)?;
        let nmax = args.nmax.or(file.nmax).unwrap_or(DEFAULT_NMAX);
        let lmax = args.lmax.or(file.lmax).unwrap_or(DEFAULT_LMAX);
        let level_max = args.level_max.or(file.level_max);
        let radial_nodes = args.radial_nodes.or(file.radial_nodes).unwrap_or(DEFAULT_RADIAL_NODES);
        if radial_nodes == 0 || radial_nodes > 512 {
            return Err(CliError::Config(format!("--radial-nodes must be in 1..=512, got {radial_nodes}")));
        }
        let tol = match args.tol.or(file.tol) {
            Some(t) => Tolerance::relative(t).map_err(|e| CliError::Config(format!("--tol: {e}")))?,
            None => Tolerance::default(),
        };
        let out = args.out.clone().or_else(|| file.out.clone());
        Ok(Self {
            s,
            kernel,
            kernel_spec,
            nmax,
            lmax,
            level_max,
            radial_nodes,
            tol,
            out,
            file,
        })
    }

    pub fn operator(&self, kind: OperatorKind) -> OperatorSpec {
        match kind {
            OperatorKind::Landau => OperatorSpec::Landau,
            OperatorKind::Boltzmann => OperatorSpec::Boltzmann {
                kernel: self.kernel.clone(),
            },
            OperatorKind::FractionalLandau => OperatorSpec::FractionalLandau { s: self.s },
        }
    }
}

pub fn parse_kernel(spec: &str, s: f64) -> Result<CrossSectionModel, CliError> {
    let spec = spec.trim();
    let model = if spec == "normalized" {
        CrossSectionModel::normalized(s)
    } else if let Some(eps) = spec.strip_prefix("cutoff:") {
        let eps: f64 = eps
            .parse()
            .map_err(|_| CliError::Config(format!("bad cutoff angle in --kernel {spec:?}")))?;
        CrossSectionModel::cutoff(s, eps)
    } else {
        return Err(CliError::Config(format!(
            "unknown kernel {spec:?}; expected `normalized` or `cutoff:EPS`"
        )));
    };
    model.map_err(|e| CliError::Config(e.to_string()))
}

pub fn parse_times(text: &str) -> Result<Vec<f64>, CliError> {
    let times = text
        .split(',')
        .map(|t| {
            let v: f64 = t
                .trim()
                .parse()
                .map_err(|_| CliError::Config(format!("bad time {t:?} in --times")))?;
            if !(v >= 0.0 && v.is_finite()) {
                return Err(CliError::Config(format!("time {v} must be finite and >= 0")));
            }
            Ok(v)
        })
        .collect::<Result<Vec<_>, _>>()?;
    if times.is_empty() {
        return Err(CliError::Config("--times is empty".into()));
    }
    Ok(times)
}
