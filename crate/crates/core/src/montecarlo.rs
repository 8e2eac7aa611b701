//! Seeded Monte Carlo oracle for the outage rates.
//!
//! Trials are indexed `0..n`. The index space is cut into fixed blocks of
//! [`BLOCK_LEN`] trials; block `b` draws from a ChaCha8 generator seeded
//! with `seed` and positioned on stream `b`. Workers take contiguous runs of
//! blocks and merge counts by summation, so an estimate depends only on
//! `(n_samples, seed)` and never on the worker count or thread schedule.
//!
//! Gains are drawn by inverse transform only. For CPA the draw is
//! conditioned on transmission, `u' = F(g_T) + u (1 - F(g_T))`, which
//! matches the conditional form of the closed-form CPA outage rates.

use std::thread;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{positive, Error, Result};
use crate::fading::FadingModel;
use crate::link::LinkParams;
use crate::metrics::{
    self, transmit_probability, CpaConfig, CpaOutcome, CraConfig, DataAmount, EnergyAmount,
    EnergyThreshold, EntropyThreshold,
};

/// Trials per generator stream.
pub const BLOCK_LEN: u64 = 1 << 14;

/// Identifier recorded alongside every simulated output.
pub const GENERATOR: &str = "ChaCha8Rng (rand_chacha 0.9), seed_from_u64(seed), stream = trial_index / 16384";

/// Upper bound on coherence blocks per multi-block trial.
pub const MAX_BLOCKS_PER_TRIAL: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimConfig {
    pub n_samples: u64,
    pub seed: u64,
    pub workers: usize,
}

impl SimConfig {
    pub fn new(n_samples: u64, seed: u64) -> Self {
        Self { n_samples, seed, workers: 1 }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.n_samples == 0 {
            return Err(Error::Domain("sample count must be >= 1".into()));
        }
        if self.workers == 0 {
            return Err(Error::Domain("worker count must be >= 1".into()));
        }
        Ok(())
    }
}

/// Monte Carlo estimate of an outage probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutageEstimate {
    pub p_hat: f64,
    pub n: u64,
    /// `sqrt(p_hat (1 - p_hat) / n)`.
    pub std_error: f64,
    pub seed: u64,
}

impl OutageEstimate {
    pub fn from_counts(events: u64, n: u64, seed: u64) -> Self {
        let p_hat = events as f64 / n as f64;
        let std_error = (p_hat * (1.0 - p_hat) / n as f64).sqrt();
        Self { p_hat, n, std_error, seed }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Strategy {
    Cra(CraConfig),
    Cpa(CpaConfig),
}

/// Fading distribution conditioned on `g >= cutoff`, sampled by truncated
/// inverse transform.
#[derive(Debug, Clone, Copy)]
pub struct TruncatedFading {
    model: FadingModel,
    cutoff: f64,
    below: f64,
    above: f64,
}

impl TruncatedFading {
    pub fn new(model: FadingModel, cutoff: f64) -> Result<Self> {
        let above = transmit_probability(&model, cutoff)?;
        let below = model.cdf(cutoff)?;
        Ok(Self { model, cutoff, below, above })
    }

    pub fn cutoff(&self) -> f64 {
        self.cutoff
    }

    /// Maps `u ∈ [0, 1)` into the upper tail `[g_T, ∞)`.
    pub fn sample(&self, u: f64) -> Result<f64> {
        let shifted = (self.below + u * (1.0 - self.below)).min(ONE_BELOW);
        Ok(self.model.quantile(shifted)?.max(self.cutoff))
    }

    /// Conditional CDF `(F(g) − F(g_T)) / (1 − F(g_T))` for `g >= g_T`.
    pub fn cdf(&self, g: f64) -> Result<f64> {
        if g < self.cutoff {
            return Ok(0.0);
        }
        Ok(((self.above - self.model.sf(g)?) / self.above).clamp(0.0, 1.0))
    }
}

const ONE_BELOW: f64 = 1.0 - f64::EPSILON / 2.0;

/// Empirical energy outage rate `Pr[E_min(H) > E_th]`.
///
/// CRA draws from the full fading distribution; a zero gain needs infinite
/// energy and counts as an outage. CPA draws conditioned on `g >= g_T`.
pub fn estimate_eor(
    strategy: &Strategy,
    link: &LinkParams,
    fading: &FadingModel,
    h: DataAmount,
    e_th: EnergyThreshold,
    sim: &SimConfig,
) -> Result<OutageEstimate> {
    let threshold = e_th.get();
    match *strategy {
        Strategy::Cra(cra) => run(sim, |rng| {
            let g = fading.sample(rng.random())?;
            match metrics::mec_cra(link, &cra, h, g) {
                Ok(energy) => Ok(energy > threshold),
                Err(Error::InfiniteEnergy) => Ok(true),
                Err(e) => Err(e),
            }
        }),
        Strategy::Cpa(cpa) => {
            let tail = TruncatedFading::new(*fading, cpa.cutoff_gain(link))?;
            run(sim, |rng| {
                let g = tail.sample(rng.random())?;
                Ok(match metrics::mec_cpa(link, &cpa, h, g)? {
                    CpaOutcome::Sent(energy) => energy > threshold,
                    CpaOutcome::Held => false,
                })
            })
        }
    }
}

/// Empirical information outage rate `Pr[H_max(E) < H_th]` for sessions
/// that fit in one coherence block.
pub fn estimate_ior(
    strategy: &Strategy,
    link: &LinkParams,
    fading: &FadingModel,
    e: EnergyAmount,
    h_th: EntropyThreshold,
    sim: &SimConfig,
) -> Result<OutageEstimate> {
    let threshold = h_th.get();
    match *strategy {
        Strategy::Cra(cra) => run(sim, |rng| {
            let g = fading.sample(rng.random())?;
            Ok(metrics::mid_cra_single(link, &cra, e, g, None)? < threshold)
        }),
        Strategy::Cpa(cpa) => {
            let tail = TruncatedFading::new(*fading, cpa.cutoff_gain(link))?;
            run(sim, |rng| {
                let g = tail.sample(rng.random())?;
                Ok(match metrics::mid_cpa(link, &cpa, e, g, None)? {
                    CpaOutcome::Sent(bits) => bits < threshold,
                    CpaOutcome::Held => false,
                })
            })
        }
    }
}

/// Empirical CRA information outage rate when `E / p_t` spans several
/// coherence blocks of length `t_c` under independent block fading.
///
/// Each trial draws one gain per block consumed (in order, from the trial's
/// stream) and evaluates [`metrics::mid_cra_multi`].
pub fn estimate_ior_multiblock(
    link: &LinkParams,
    cra: &CraConfig,
    fading: &FadingModel,
    e: EnergyAmount,
    t_c: f64,
    h_th: EntropyThreshold,
    sim: &SimConfig,
) -> Result<OutageEstimate> {
    positive("coherence time", t_c)?;
    let (full, remainder) = metrics::coherence_blocks(e.get() / cra.p_t(), t_c);
    if full >= MAX_BLOCKS_PER_TRIAL {
        return Err(Error::ResourceLimit(format!(
            "session spans more than {MAX_BLOCKS_PER_TRIAL} coherence blocks"
        )));
    }
    let blocks = (full + u64::from(remainder > 0.0)) as usize;
    let threshold = h_th.get();
    run(sim, |rng| {
        let mut gains = Vec::with_capacity(blocks);
        for _ in 0..blocks {
            gains.push(fading.sample(rng.random())?);
        }
        Ok(metrics::mid_cra_multi(link, cra, e, &gains, t_c)? < threshold)
    })
}

/// Counts trials for which `trial` reports an event.
fn run<F>(sim: &SimConfig, trial: F) -> Result<OutageEstimate>
where
    F: Fn(&mut ChaCha8Rng) -> Result<bool> + Sync,
{
    sim.validate()?;
    let n = sim.n_samples;
    let n_blocks = n.div_ceil(BLOCK_LEN);
    let workers = (sim.workers as u64).clamp(1, n_blocks);

    let count_blocks = |first: u64, last: u64| -> Result<u64> {
        let mut events = 0;
        for block in first..last {
            let mut rng = ChaCha8Rng::seed_from_u64(sim.seed);
            rng.set_stream(block);
            let start = block * BLOCK_LEN;
            let end = (start + BLOCK_LEN).min(n);
            for _ in start..end {
                events += u64::from(trial(&mut rng)?);
            }
        }
        Ok(events)
    };

    let events = if workers == 1 {
        count_blocks(0, n_blocks)?
    } else {
        let per_worker = n_blocks.div_ceil(workers);
        let count_blocks = &count_blocks;
        thread::scope(|scope| {
            let handles: Vec<_> = (0..workers)
                .map(|w| {
                    let first = (w * per_worker).min(n_blocks);
                    let last = ((w + 1) * per_worker).min(n_blocks);
                    scope.spawn(move || count_blocks(first, last))
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("monte carlo worker panicked"))
                .sum::<Result<u64>>()
        })?
    };
    Ok(OutageEstimate::from_counts(events, n, sim.seed))
}
