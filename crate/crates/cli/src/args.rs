use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "greenbits",
    version,
    about = "Energy and information outage metrics for CRA and CPA over fading channels"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one metric at one parameter point.
    #[command(args_override_self = true)]
    Eval(EvalArgs),
    /// Sweep one parameter over a grid and write a CSV curve.
    #[command(args_override_self = true)]
    Sweep(SweepArgs),
    /// Compare a closed-form outage rate with a seeded simulation.
    #[command(args_override_self = true)]
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Metric {
    /// Minimum energy consumption (J) to deliver H bits at gain g.
    Mec,
    /// Maximum information delivery (bits) with energy E at gain g.
    Mid,
    /// Energy outage rate Pr[MEC > E_th].
    Eor,
    /// Information outage rate Pr[MID < H_th].
    Ior,
    /// Bits per joule at gain g.
    Bpj,
}

impl Metric {
    pub fn name(self) -> &'static str {
        match self {
            Metric::Mec => "mec",
            Metric::Mid => "mid",
            Metric::Eor => "eor",
            Metric::Ior => "ior",
            Metric::Bpj => "bpj",
        }
    }

    pub fn is_outage(self) -> bool {
        matches!(self, Metric::Eor | Metric::Ior)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyName {
    Cra,
    Cpa,
}

impl StrategyName {
    pub fn name(self) -> &'static str {
        match self {
            StrategyName::Cra => "cra",
            StrategyName::Cpa => "cpa",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FadingName {
    Rayleigh,
    Nakagami,
}

impl FadingName {
    pub fn name(self) -> &'static str {
        match self {
            FadingName::Rayleigh => "rayleigh",
            FadingName::Nakagami => "nakagami",
        }
    }
}

/// Parameter names accepted by `sweep --sweep`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweptParam {
    #[value(name = "E_th")]
    ETh,
    #[value(name = "H_th")]
    HTh,
    #[value(name = "p_t")]
    PT,
    #[value(name = "B")]
    B,
    #[value(name = "gamma_c")]
    GammaC,
    #[value(name = "p_max")]
    PMax,
    #[value(name = "avg_gain_db")]
    AvgGainDb,
    #[value(name = "m")]
    M,
}

impl SweptParam {
    pub fn name(self) -> &'static str {
        match self {
            SweptParam::ETh => "E_th",
            SweptParam::HTh => "H_th",
            SweptParam::PT => "p_t",
            SweptParam::B => "B",
            SweptParam::GammaC => "gamma_c",
            SweptParam::PMax => "p_max",
            SweptParam::AvgGainDb => "avg_gain_db",
            SweptParam::M => "m",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Spacing {
    Lin,
    Log,
}

/// Model parameters shared by every subcommand. Values carry optional unit
/// suffixes and are converted to SI when resolved.
#[derive(Debug, Clone, Args)]
pub struct ParamArgs {
    #[arg(long, value_enum)]
    pub metric: Metric,

    #[arg(long, value_enum)]
    pub strategy: StrategyName,

    #[arg(long, value_enum)]
    pub fading: Option<FadingName>,

    /// Data amount (bits, B, kB, MB).
    #[arg(long = "H", value_name = "DATA", allow_hyphen_values = true)]
    pub h: Option<String>,

    /// Energy threshold (J, mJ, uJ).
    #[arg(long = "Eth", value_name = "ENERGY", allow_hyphen_values = true)]
    pub e_th: Option<String>,

    /// Available energy (J, mJ, uJ).
    #[arg(long = "E", value_name = "ENERGY", allow_hyphen_values = true)]
    pub e: Option<String>,

    /// Entropy threshold (bits, B, kB, MB).
    #[arg(long = "Hth", value_name = "DATA", allow_hyphen_values = true)]
    pub h_th: Option<String>,

    /// Bandwidth (Hz, kHz, MHz).
    #[arg(long = "B", value_name = "FREQ", allow_hyphen_values = true)]
    pub b: Option<String>,

    /// CRA transmit power (W, mW).
    #[arg(long = "Pt", value_name = "POWER", allow_hyphen_values = true)]
    pub p_t: Option<String>,

    /// Noise spectral density in W/Hz [default: 1e-9].
    #[arg(long = "N0", value_name = "DENSITY", allow_hyphen_values = true)]
    pub n0: Option<String>,

    /// Instantaneous channel power gain (linear or dB).
    #[arg(long = "g", value_name = "GAIN", allow_hyphen_values = true)]
    pub g: Option<String>,

    /// CPA target received SNR (linear or dB).
    #[arg(long = "gammac", value_name = "SNR", allow_hyphen_values = true)]
    pub gamma_c: Option<String>,

    /// CPA peak transmit power (W, mW).
    #[arg(long = "Pmax", value_name = "POWER", allow_hyphen_values = true)]
    pub p_max: Option<String>,

    /// Average channel power gain (linear or dB).
    #[arg(long = "gbar", value_name = "GAIN", allow_hyphen_values = true)]
    pub gbar: Option<String>,

    /// Nakagami shape parameter, 0.5 to 50.
    #[arg(long = "m", value_name = "SHAPE", allow_hyphen_values = true)]
    pub m: Option<String>,

    /// Coherence time (s, ms).
    #[arg(long = "Tc", value_name = "TIME", allow_hyphen_values = true)]
    pub t_c: Option<String>,

    /// Read `key = value` lines as if they were flags; later flags win.
    #[arg(long, value_name = "FILE")]
    pub config: Vec<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SimArgs {
    /// Monte Carlo sample count.
    #[arg(long = "n", value_name = "SAMPLES")]
    pub n: Option<u64>,

    #[arg(long)]
    pub seed: Option<u64>,

    /// Worker threads; results do not depend on this.
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[command(flatten)]
    pub sim: SimArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub params: ParamArgs,

    /// Parameter to sweep.
    #[arg(long, value_enum)]
    pub sweep: SweptParam,

    /// First grid point, in the unit of the swept parameter.
    #[arg(long, allow_hyphen_values = true)]
    pub min: String,

    /// Last grid point.
    #[arg(long, allow_hyphen_values = true)]
    pub max: String,

    #[arg(long, default_value_t = 50)]
    pub points: usize,

    #[arg(long, value_enum, default_value_t = Spacing::Lin)]
    pub spacing: Spacing,

    /// Output CSV path; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Add simulated `p_hat,std_error` columns when `--n` is given.
    #[command(flatten)]
    pub sim: SimArgs,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[command(flatten)]
    pub sim: SimArgs,
}
