use std::path::PathBuf;

use adft::array_sim::{ChainConfig, Engine};
use adft::fastalg::InputKind;
use adft::transforms::{adft32_matrix, dft_matrix, GaussianMatrix};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Debug, Parser)]
#[command(name = "adft", version, about = "32-point approximate DFT: matrices, fast algorithm, beam patterns and receive-chain simulation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub global: GlobalArgs,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct GlobalArgs {
    /// Output file; relative paths are resolved under --out-dir.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,

    /// Directory for relative and default output paths.
    #[arg(long, global = true, env = "ADFT_OUT_DIR")]
    pub out_dir: Option<PathBuf>,

    /// Write JSON instead of CSV.
    #[arg(long, global = true)]
    pub json: bool,

    /// Skip the `<output>.manifest.json` sidecar.
    #[arg(long, global = true)]
    pub no_manifest: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TransformKind {
    Dft,
    Adft,
}

impl TransformKind {
    pub fn matrix(self) -> GaussianMatrix {
        match self {
            TransformKind::Dft => dft_matrix(32),
            TransformKind::Adft => adft32_matrix(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TransformKind::Dft => "dft",
            TransformKind::Adft => "adft",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EngineArg {
    #[value(name = "dense_exact", alias = "dense-exact")]
    DenseExact,
    #[value(name = "dense_adft", alias = "dense-adft")]
    DenseAdft,
    #[value(name = "fast_adft", alias = "fast-adft")]
    FastAdft,
}

impl From<EngineArg> for Engine {
    fn from(e: EngineArg) -> Self {
        match e {
            EngineArg::DenseExact => Engine::DenseExact,
            EngineArg::DenseAdft => Engine::DenseAdft,
            EngineArg::FastAdft => Engine::FastAdft,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InputArg {
    Complex,
    Real,
}

impl From<InputArg> for InputKind {
    fn from(k: InputArg) -> Self {
        match k {
            InputArg::Complex => InputKind::Complex,
            InputArg::Real => InputKind::Real,
        }
    }
}

#[derive(Debug, Clone, Subcommand, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    /// Write the exact or approximate transform matrix.
    Matrix {
        #[arg(long, value_enum)]
        kind: TransformKind,
        /// DFT size (the approximate transform is always 32-point).
        #[arg(long, default_value_t = 32)]
        size: usize,
    },
    /// Check the factorization, fast/dense equivalence and operation counts.
    Verify {
        /// Flip the sign of one triple in stage W<n> (1-based) before checking.
        #[arg(long)]
        mutate_stage: Option<usize>,
        /// Triple index inside the mutated stage.
        #[arg(long, default_value_t = 0, requires = "mutate_stage")]
        mutate_index: usize,
        /// Random input vectors for the equivalence check.
        #[arg(long, default_value_t = 1000)]
        vectors: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Arithmetic-complexity table and per-stage addition counts.
    Opcount {
        #[arg(long, value_enum, default_value_t = InputArg::Complex)]
        input: InputArg,
    },
    /// Filter-bank magnitude responses of all 32 bins.
    Response {
        #[arg(long, value_enum, default_value_t = TransformKind::Adft)]
        transform: TransformKind,
        #[arg(long, default_value_t = 4096)]
        grid: usize,
        /// Emit the magnitude-response error against the exact DFT instead.
        #[arg(long)]
        error: bool,
    },
    /// Far-field ULA beam patterns versus azimuth.
    Beams1d {
        #[arg(long, value_enum, default_value_t = TransformKind::Adft)]
        transform: TransformKind,
        /// Element spacing in wavelengths.
        #[arg(long, default_value_t = 0.5)]
        dx: f64,
        #[arg(long, default_value_t = -90.0, allow_hyphen_values = true)]
        az_min: f64,
        #[arg(long, default_value_t = 90.0, allow_hyphen_values = true)]
        az_max: f64,
        #[arg(long, default_value_t = 721)]
        points: usize,
        /// Element pattern cos(θ)^q.
        #[arg(long)]
        cos_exponent: Option<f64>,
        /// Long format `bin,angle,dB` for polar plots.
        #[arg(long)]
        long: bool,
    },
    /// One 2-D URA beam over elevation and azimuth.
    Beams2d {
        #[arg(long, value_enum, default_value_t = TransformKind::Adft)]
        transform: TransformKind,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        #[arg(long, default_value_t = 0.5)]
        dx: f64,
        /// Defaults to --dx.
        #[arg(long)]
        dy: Option<f64>,
        /// Azimuth x elevation sample counts over [-180,180] x [0,90].
        #[arg(long, default_value = "361x181")]
        grid: String,
        /// 1-D pattern (beams1d/simulate JSON) used in place of the x-axis factor.
        #[arg(long)]
        measured: Option<PathBuf>,
    },
    /// ULA patterns for a point source at finite range.
    Nearfield {
        #[arg(long, value_enum, default_value_t = TransformKind::Adft)]
        transform: TransformKind,
        /// Source range(s) in metres; several values produce a deviation table.
        #[arg(long, value_delimiter = ',', default_value = "7")]
        range: Vec<f64>,
        #[arg(long, default_value_t = 5.8e9)]
        freq: f64,
        #[arg(long, default_value_t = 0.6)]
        dx: f64,
        #[arg(long, default_value_t = -72.0, allow_hyphen_values = true)]
        az_min: f64,
        #[arg(long, default_value_t = 72.0, allow_hyphen_values = true)]
        az_max: f64,
        #[arg(long, default_value_t = 1441)]
        points: usize,
    },
    /// Rounding search over β with Pareto flags.
    Pareto {
        #[arg(long, default_value_t = 0.01)]
        beta_min: f64,
        #[arg(long, default_value_t = 5.0)]
        beta_max: f64,
        #[arg(long, default_value_t = 0.01)]
        step: f64,
        /// Also write round(β·F32) as JSON next to the report.
        #[arg(long)]
        emit_matrix: Option<f64>,
    },
    /// Run the receive chain at one azimuth or over an azimuth sweep.
    Simulate {
        /// Chain configuration (TOML, or JSON by extension).
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = EngineArg::FastAdft)]
        engine: EngineArg,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        snr_db: Option<f64>,
        /// Source range in metres (far field if absent).
        #[arg(long)]
        range: Option<f64>,
        #[arg(long)]
        dx: Option<f64>,
        #[arg(long)]
        snapshots: Option<usize>,
        /// Single arrival angle; omit for a sweep.
        #[arg(long, allow_hyphen_values = true)]
        azimuth: Option<f64>,
        #[arg(long, default_value_t = -90.0, allow_hyphen_values = true)]
        az_min: f64,
        #[arg(long, default_value_t = 90.0, allow_hyphen_values = true)]
        az_max: f64,
        #[arg(long, default_value_t = 181)]
        points: usize,
        /// Configuration after file loading and overrides; set by the tool.
        #[arg(skip)]
        #[serde(default)]
        resolved: Option<Box<ChainConfig>>,
    },
    /// Re-run the command recorded in a manifest.
    Replay {
        manifest: PathBuf,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Matrix { .. } => "matrix",
            Command::Verify { .. } => "verify",
            Command::Opcount { .. } => "opcount",
            Command::Response { .. } => "response",
            Command::Beams1d { .. } => "beams1d",
            Command::Beams2d { .. } => "beams2d",
            Command::Nearfield { .. } => "nearfield",
            Command::Pareto { .. } => "pareto",
            Command::Simulate { .. } => "simulate",
            Command::Replay { .. } => "replay",
        }
    }
}
