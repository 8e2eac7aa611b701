//! Resolution of unit-tagged flags into SI parameters, and evaluation of
//! one metric at one point.

use greenbits_core::metrics::{
    bits_per_joule_cpa, bits_per_joule_cra, eor_cpa, eor_cra, ior_cpa, ior_cra, mec_cpa,
    mec_cra, mid_cpa, mid_cra_single, required_blocks,
};
use greenbits_core::montecarlo::{estimate_eor, estimate_ior, estimate_ior_multiblock};
use greenbits_core::{
    CpaConfig, CpaOutcome, CraConfig, DataAmount, EnergyAmount, EnergyThreshold,
    EntropyThreshold, FadingModel, LinkParams, OutageEstimate, SimConfig, Strategy,
};

use crate::args::{FadingName, Metric, ParamArgs, SimArgs, StrategyName, SweptParam};
use crate::error::CliError;
use crate::units::{self, Dimension, WithUnit};

pub const DEFAULT_N0: f64 = 1e-9;
pub const DEFAULT_SEED: u64 = 0;
pub const DEFAULT_VERIFY_SAMPLES: u64 = 1_000_000;

/// Fully resolved parameter set, SI throughout; gains are linear.
#[derive(Debug, Clone, PartialEq)]
pub struct Params {
    pub metric: Metric,
    pub strategy: StrategyName,
    pub fading: Option<FadingName>,
    pub h: Option<f64>,
    pub e_th: Option<f64>,
    pub e: Option<f64>,
    pub h_th: Option<f64>,
    pub b: Option<f64>,
    pub p_t: Option<f64>,
    pub n0: f64,
    pub g: Option<f64>,
    pub gamma_c: Option<f64>,
    pub p_max: Option<f64>,
    pub avg_gain: Option<f64>,
    pub m: Option<f64>,
    pub t_c: Option<f64>,
}

fn opt(dim: Dimension, text: &Option<String>) -> Result<Option<f64>, CliError> {
    text.as_deref().map(|t| units::parse(dim, t)).transpose()
}

fn require(value: Option<f64>, flag: &str) -> Result<f64, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("missing --{flag}")))
}

impl Params {
    pub fn from_args(args: &ParamArgs) -> Result<Self, CliError> {
        Ok(Self {
            metric: args.metric,
            strategy: args.strategy,
            fading: args.fading,
            h: opt(Dimension::Data, &args.h)?,
            e_th: opt(Dimension::Energy, &args.e_th)?,
            e: opt(Dimension::Energy, &args.e)?,
            h_th: opt(Dimension::Data, &args.h_th)?,
            b: opt(Dimension::Frequency, &args.b)?,
            p_t: opt(Dimension::Power, &args.p_t)?,
            n0: opt(Dimension::Density, &args.n0)?.unwrap_or(DEFAULT_N0),
            g: opt(Dimension::Gain, &args.g)?,
            gamma_c: opt(Dimension::Gain, &args.gamma_c)?,
            p_max: opt(Dimension::Power, &args.p_max)?,
            avg_gain: opt(Dimension::Gain, &args.gbar)?,
            m: opt(Dimension::Dimensionless, &args.m)?,
            t_c: opt(Dimension::Time, &args.t_c)?,
        })
    }

    /// Sets the swept parameter; `avg_gain_db` is given in dB.
    pub fn set(&mut self, which: SweptParam, value: f64) {
        let slot = match which {
            SweptParam::ETh => &mut self.e_th,
            SweptParam::HTh => &mut self.h_th,
            SweptParam::PT => &mut self.p_t,
            SweptParam::B => &mut self.b,
            SweptParam::GammaC => &mut self.gamma_c,
            SweptParam::PMax => &mut self.p_max,
            SweptParam::AvgGainDb => {
                self.avg_gain = Some(units::db_to_linear(value));
                return;
            }
            SweptParam::M => &mut self.m,
        };
        *slot = Some(value);
    }

    pub fn link(&self) -> Result<LinkParams, CliError> {
        Ok(LinkParams::new(require(self.b, "B")?, self.n0)?)
    }

    pub fn cra(&self) -> Result<CraConfig, CliError> {
        Ok(CraConfig::new(require(self.p_t, "Pt")?)?)
    }

    pub fn cpa(&self) -> Result<CpaConfig, CliError> {
        Ok(CpaConfig::new(require(self.gamma_c, "gammac")?, require(self.p_max, "Pmax")?)?)
    }

    pub fn strategy(&self) -> Result<Strategy, CliError> {
        Ok(match self.strategy {
            StrategyName::Cra => Strategy::Cra(self.cra()?),
            StrategyName::Cpa => Strategy::Cpa(self.cpa()?),
        })
    }

    pub fn fading_model(&self) -> Result<FadingModel, CliError> {
        let kind = self.fading.ok_or_else(|| CliError::Usage("missing --fading".into()))?;
        let avg = require(self.avg_gain, "gbar")?;
        Ok(match kind {
            FadingName::Rayleigh => {
                if self.m.is_some() {
                    return Err(CliError::Usage("--m only applies to --fading nakagami".into()));
                }
                FadingModel::rayleigh(avg)?
            }
            FadingName::Nakagami => FadingModel::nakagami(require(self.m, "m")?, avg)?,
        })
    }

    fn gain(&self) -> Result<f64, CliError> {
        require(self.g, "g")
    }

    /// Whether a CRA information outage spans several coherence blocks and
    /// so has no closed form.
    pub fn is_multiblock(&self) -> Result<bool, CliError> {
        if self.metric != Metric::Ior || self.strategy != StrategyName::Cra {
            return Ok(false);
        }
        let Some(t_c) = self.t_c else { return Ok(false) };
        let e = EnergyAmount::new(require(self.e, "E")?)?;
        Ok(required_blocks(&self.cra()?, e, t_c) > 1)
    }

    /// Closed-form value of the selected metric.
    pub fn evaluate(&self) -> Result<Value, CliError> {
        let link = self.link()?;
        let value = match (self.metric, self.strategy) {
            (Metric::Mec, StrategyName::Cra) => {
                let h = DataAmount::new(require(self.h, "H")?)?;
                Value::Energy(mec_cra(&link, &self.cra()?, h, self.gain()?)?)
            }
            (Metric::Mec, StrategyName::Cpa) => {
                let h = DataAmount::new(require(self.h, "H")?)?;
                Value::energy_or_held(mec_cpa(&link, &self.cpa()?, h, self.gain()?)?)
            }
            (Metric::Mid, StrategyName::Cra) => {
                let e = EnergyAmount::new(require(self.e, "E")?)?;
                Value::Bits(mid_cra_single(&link, &self.cra()?, e, self.gain()?, self.t_c)?)
            }
            (Metric::Mid, StrategyName::Cpa) => {
                let e = EnergyAmount::new(require(self.e, "E")?)?;
                match mid_cpa(&link, &self.cpa()?, e, self.gain()?, self.t_c)? {
                    CpaOutcome::Sent(bits) => Value::Bits(bits),
                    CpaOutcome::Held => Value::Held,
                }
            }
            (Metric::Bpj, StrategyName::Cra) => {
                Value::BitsPerJoule(bits_per_joule_cra(&link, &self.cra()?, self.gain()?)?)
            }
            (Metric::Bpj, StrategyName::Cpa) => {
                match bits_per_joule_cpa(&link, &self.cpa()?, self.gain()?)? {
                    CpaOutcome::Sent(v) => Value::BitsPerJoule(v),
                    CpaOutcome::Held => Value::Held,
                }
            }
            (Metric::Eor, strategy) => {
                let fading = self.fading_model()?;
                let h = DataAmount::new(require(self.h, "H")?)?;
                let e_th = EnergyThreshold::new(require(self.e_th, "Eth")?)?;
                Value::Probability(match strategy {
                    StrategyName::Cra => eor_cra(&link, &self.cra()?, &fading, h, e_th)?,
                    StrategyName::Cpa => eor_cpa(&link, &self.cpa()?, &fading, h, e_th)?,
                })
            }
            (Metric::Ior, strategy) => {
                if self.is_multiblock()? {
                    return Err(CliError::Other(
                        "the session spans several coherence blocks; the information outage \
                         rate has no closed form there and needs --n to simulate"
                            .into(),
                    ));
                }
                let fading = self.fading_model()?;
                let e = EnergyAmount::new(require(self.e, "E")?)?;
                let h_th = EntropyThreshold::new(require(self.h_th, "Hth")?)?;
                Value::Probability(match strategy {
                    StrategyName::Cra => ior_cra(&link, &self.cra()?, &fading, e, h_th)?,
                    StrategyName::Cpa => ior_cpa(&link, &self.cpa()?, &fading, e, h_th)?,
                })
            }
        };
        Ok(value)
    }

    /// Seeded simulation of the selected outage rate.
    pub fn simulate(&self, sim: &SimConfig) -> Result<OutageEstimate, CliError> {
        let link = self.link()?;
        let fading = self.fading_model()?;
        let est = match self.metric {
            Metric::Eor => {
                let h = DataAmount::new(require(self.h, "H")?)?;
                let e_th = EnergyThreshold::new(require(self.e_th, "Eth")?)?;
                estimate_eor(&self.strategy()?, &link, &fading, h, e_th, sim)?
            }
            Metric::Ior => {
                let e = EnergyAmount::new(require(self.e, "E")?)?;
                let h_th = EntropyThreshold::new(require(self.h_th, "Hth")?)?;
                match (self.strategy, self.t_c) {
                    (StrategyName::Cra, Some(t_c)) => {
                        estimate_ior_multiblock(&link, &self.cra()?, &fading, e, t_c, h_th, sim)?
                    }
                    _ => estimate_ior(&self.strategy()?, &link, &fading, e, h_th, sim)?,
                }
            }
            other => {
                return Err(CliError::Usage(format!(
                    "metric {} is not a probability and cannot be simulated",
                    other.name()
                )))
            }
        };
        Ok(est)
    }

    /// Every resolved parameter with its SI unit, in a fixed order.
    pub fn describe(&self) -> Vec<(&'static str, String)> {
        let mut out = vec![
            ("metric", self.metric.name().to_string()),
            ("strategy", self.strategy.name().to_string()),
        ];
        if let Some(f) = self.fading {
            out.push(("fading", f.name().to_string()));
        }
        let quantities = [
            ("H", self.h, Dimension::Data),
            ("E_th", self.e_th, Dimension::Energy),
            ("E", self.e, Dimension::Energy),
            ("H_th", self.h_th, Dimension::Data),
            ("B", self.b, Dimension::Frequency),
            ("N0", Some(self.n0), Dimension::Density),
            ("p_t", self.p_t, Dimension::Power),
            ("gamma_c", self.gamma_c, Dimension::Dimensionless),
            ("p_max", self.p_max, Dimension::Power),
            ("g", self.g, Dimension::Gain),
            ("avg_gain", self.avg_gain, Dimension::Gain),
            ("m", self.m, Dimension::Dimensionless),
            ("T_c", self.t_c, Dimension::Time),
        ];
        for (name, value, dim) in quantities {
            if let Some(v) = value {
                out.push((name, WithUnit(v, dim).to_string()));
            }
        }
        if let (Some(gamma_c), Some(p_max), Some(b)) = (self.gamma_c, self.p_max, self.b) {
            if self.strategy == StrategyName::Cpa {
                if let (Ok(cpa), Ok(link)) = (CpaConfig::new(gamma_c, p_max), LinkParams::new(b, self.n0)) {
                    out.push(("g_T", WithUnit(cpa.cutoff_gain(&link), Dimension::Gain).to_string()));
                }
            }
        }
        out
    }
}

/// Result of a single-point evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Value {
    Probability(f64),
    Energy(f64),
    Bits(f64),
    BitsPerJoule(f64),
    Held,
}

impl Value {
    fn energy_or_held(outcome: CpaOutcome) -> Self {
        match outcome {
            CpaOutcome::Sent(e) => Value::Energy(e),
            CpaOutcome::Held => Value::Held,
        }
    }

    pub fn number(self) -> Option<f64> {
        match self {
            Value::Probability(v) | Value::Energy(v) | Value::Bits(v) | Value::BitsPerJoule(v) => Some(v),
            Value::Held => None,
        }
    }

    pub fn unit(self) -> &'static str {
        match self {
            Value::Probability(_) | Value::Held => "",
            Value::Energy(_) => "J",
            Value::Bits(_) => "bits",
            Value::BitsPerJoule(_) => "bits/J",
        }
    }
}

pub fn sim_config(args: &SimArgs, default_n: u64) -> Result<SimConfig, CliError> {
    let workers = match args.workers {
        Some(0) => return Err(CliError::Usage("--workers must be >= 1".into())),
        Some(w) => w,
        None => std::thread::available_parallelism().map_or(1, usize::from),
    };
    let n = args.n.unwrap_or(default_n);
    if n == 0 {
        return Err(CliError::Usage("--n must be >= 1".into()));
    }
    Ok(SimConfig::new(n, args.seed.unwrap_or(DEFAULT_SEED)).with_workers(workers))
}
