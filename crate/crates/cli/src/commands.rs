use std::fmt::Write as _;
use std::fs;
use std::io::Write;

use crate::args::{EvalArgs, Spacing, SweepArgs, SweptParam, VerifyArgs};
use crate::error::{CliError, EXIT_OK, EXIT_VERIFY_FAILED};
use crate::metadata::RunMetadata;
use crate::params::{sim_config, Params, Value, DEFAULT_VERIFY_SAMPLES};
use crate::units::{self, Dimension, Exact, WithUnit};

/// Samples used by `eval` when it has to simulate a multi-block outage.
pub const DEFAULT_EVAL_SAMPLES: u64 = 100_000;

fn emit(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes()).map_err(|e| CliError::io("<stdout>", e))
}

pub fn eval(args: &EvalArgs, timestamp: &str, out: &mut dyn Write) -> Result<i32, CliError> {
    let params = Params::from_args(&args.params)?;
    let mut meta = RunMetadata::new("eval", timestamp, params.describe());
    let line = if params.is_multiblock()? {
        let sim = sim_config(&args.sim, DEFAULT_EVAL_SAMPLES)?;
        let est = params.simulate(&sim)?;
        meta.sim = Some(sim);
        format!("{} (simulated, std_error {})\n", Exact(est.p_hat), Exact(est.std_error))
    } else {
        match params.evaluate()? {
            Value::Held => "HELD\n".to_string(),
            v => format!("{}\n", WithUnit(v.number().unwrap_or(f64::NAN), unit_dimension(v))),
        }
    };
    emit(out, &format!("{meta}{line}"))?;
    Ok(EXIT_OK)
}

fn unit_dimension(v: Value) -> Dimension {
    match v {
        Value::Energy(_) => Dimension::Energy,
        Value::Bits(_) => Dimension::Data,
        Value::Probability(_) | Value::Held => Dimension::Dimensionless,
        Value::BitsPerJoule(_) => Dimension::DataPerEnergy,
    }
}

fn swept_dimension(p: SweptParam) -> Dimension {
    match p {
        SweptParam::ETh => Dimension::Energy,
        SweptParam::HTh => Dimension::Data,
        SweptParam::PT | SweptParam::PMax => Dimension::Power,
        SweptParam::B => Dimension::Frequency,
        SweptParam::GammaC => Dimension::Gain,
        SweptParam::AvgGainDb => Dimension::Decibels,
        SweptParam::M => Dimension::Dimensionless,
    }
}

/// `points` grid values from `min` to `max`; both endpoints are exact.
pub fn grid(min: f64, max: f64, points: usize, spacing: Spacing) -> Result<Vec<f64>, CliError> {
    if points < 2 {
        return Err(CliError::Usage(format!("--points must be >= 2, got {points}")));
    }
    if !min.is_finite() || !max.is_finite() || min >= max {
        return Err(CliError::Usage(format!("--min ({min}) must be finite and below --max ({max})")));
    }
    if spacing == Spacing::Log && min <= 0.0 {
        return Err(CliError::Usage("log spacing needs --min > 0".into()));
    }
    let last = (points - 1) as f64;
    let mut values: Vec<f64> = (0..points)
        .map(|i| {
            let t = i as f64 / last;
            match spacing {
                Spacing::Lin => min + (max - min) * t,
                Spacing::Log => (min.ln() + (max.ln() - min.ln()) * t).exp(),
            }
        })
        .collect();
    values[0] = min;
    values[points - 1] = max;
    Ok(values)
}

/// Renders the whole sweep CSV, metadata included.
pub fn sweep_csv(args: &SweepArgs, timestamp: &str) -> Result<String, CliError> {
    let mut params = Params::from_args(&args.params)?;
    let dim = swept_dimension(args.sweep);
    let min = units::parse(dim, &args.min)?;
    let max = units::parse(dim, &args.max)?;
    let points = grid(min, max, args.points, args.spacing)?;

    let sim = match args.sim.n {
        Some(_) if !params.metric.is_outage() => {
            return Err(CliError::Usage(format!(
                "--n adds simulated columns, which only exist for eor and ior, not {}",
                params.metric.name()
            )))
        }
        Some(_) => Some(sim_config(&args.sim, 0)?),
        None => None,
    };

    // The swept slot is described by the grid, not by any fixed value.
    params.set(args.sweep, f64::NAN);
    let mut described = params.clone();
    match args.sweep {
        SweptParam::AvgGainDb => described.avg_gain = None,
        SweptParam::ETh => described.e_th = None,
        SweptParam::HTh => described.h_th = None,
        SweptParam::PT => described.p_t = None,
        SweptParam::B => described.b = None,
        SweptParam::GammaC => described.gamma_c = None,
        SweptParam::PMax => described.p_max = None,
        SweptParam::M => described.m = None,
    }
    let mut meta = RunMetadata::new("sweep", timestamp, described.describe());
    let spacing = match args.spacing {
        Spacing::Lin => "lin",
        Spacing::Log => "log",
    };
    meta.extra.push((
        "sweep",
        format!(
            "{} {spacing} from {} to {}, {} points",
            args.sweep.name(),
            WithUnit(min, dim),
            WithUnit(max, dim),
            args.points
        ),
    ));
    meta.sim = sim;

    let mut csv = meta.to_string();
    csv.push_str(args.sweep.name());
    csv.push_str(",value");
    if sim.is_some() {
        csv.push_str(",p_hat,std_error");
    }
    csv.push('\n');

    for x in points {
        params.set(args.sweep, x);
        let est = sim.as_ref().map(|s| params.simulate(s)).transpose()?;
        let value = if params.is_multiblock()? {
            let est = est.ok_or_else(|| {
                CliError::Other("the session spans several coherence blocks, so the value column needs --n".into())
            })?;
            Value::Probability(est.p_hat)
        } else {
            params.evaluate()?
        };
        write!(csv, "{x:.16e},").unwrap();
        match value.number() {
            Some(v) => write!(csv, "{v:.16e}").unwrap(),
            None => csv.push_str("HELD"),
        }
        if let Some(est) = est {
            write!(csv, ",{:.16e},{:.16e}", est.p_hat, est.std_error).unwrap();
        }
        csv.push('\n');
    }
    Ok(csv)
}

pub fn sweep(args: &SweepArgs, timestamp: &str, out: &mut dyn Write) -> Result<i32, CliError> {
    let csv = sweep_csv(args, timestamp)?;
    match &args.out {
        Some(path) => fs::write(path, csv).map_err(|e| CliError::io(path, e))?,
        None => emit(out, &csv)?,
    }
    Ok(EXIT_OK)
}

/// Closed form against simulation, as printed by `verify`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Verdict {
    pub closed_form: f64,
    pub p_hat: f64,
    pub std_error: f64,
    pub gap: f64,
    pub tolerance: f64,
}

impl Verdict {
    pub fn new(closed_form: f64, p_hat: f64, std_error: f64) -> Self {
        let gap = (closed_form - p_hat).abs();
        Self { closed_form, p_hat, std_error, gap, tolerance: (3.0 * std_error).max(1e-4) }
    }

    pub fn passed(&self) -> bool {
        self.gap <= self.tolerance
    }
}

pub fn verify(args: &VerifyArgs, timestamp: &str, out: &mut dyn Write) -> Result<i32, CliError> {
    let params = Params::from_args(&args.params)?;
    if !params.metric.is_outage() {
        return Err(CliError::Usage(format!(
            "verify compares outage rates; use --metric eor or ior, not {}",
            params.metric.name()
        )));
    }
    let sim = sim_config(&args.sim, DEFAULT_VERIFY_SAMPLES)?;
    let closed = match params.evaluate()? {
        Value::Probability(p) => p,
        other => unreachable!("outage metric evaluated to {other:?}"),
    };
    let est = params.simulate(&sim)?;
    let verdict = Verdict::new(closed, est.p_hat, est.std_error);

    let mut meta = RunMetadata::new("verify", timestamp, params.describe());
    meta.sim = Some(sim);
    let mut text = meta.to_string();
    for (key, v) in [
        ("closed_form", verdict.closed_form),
        ("p_hat", verdict.p_hat),
        ("std_error", verdict.std_error),
        ("gap", verdict.gap),
        ("tolerance", verdict.tolerance),
    ] {
        writeln!(text, "{key} = {v:.16e}").unwrap();
    }
    let (word, code) = if verdict.passed() { ("PASS", EXIT_OK) } else { ("FAIL", EXIT_VERIFY_FAILED) };
    writeln!(text, "verdict = {word}").unwrap();
    emit(out, &text)?;
    Ok(code)
}
