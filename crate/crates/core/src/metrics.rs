//! Closed-form data-oriented energy-efficiency metrics.
//!
//! For a single transmission session over one channel realization `g`:
//!
//! | strategy | MEC `E_min(H)`                    | MID `H_max(E)`                     |
//! |----------|-----------------------------------|------------------------------------|
//! | CRA      | `p_t H / (B log2(1 + p_t g/N0B))` | `(E/p_t) B log2(1 + p_t g/N0B)`    |
//! | CPA      | `γ_c N0 H / (g log2(1 + γ_c))`    | `E g log2(1 + γ_c) / (γ_c N0)`     |
//!
//! CPA only transmits when `g >= g_T = γ_c N0 B / p_max`; below the cutoff
//! the session is [`CpaOutcome::Held`].
//!
//! The outage rates integrate these over the fading distribution. EOR and
//! IOR share one expression per strategy under the swap
//! `(H, E_th) <-> (H_th, E)`, and are computed by the same code path so the
//! identity holds bit for bit.

use std::f64::consts::LN_2;

use crate::error::{domain, nonnegative, positive, Error, Result};
use crate::fading::FadingModel;
use crate::link::{log2_1p, LinkParams};

macro_rules! positive_quantity {
    ($(#[$doc:meta])* $name:ident, $what:literal) => {
        $(#[$doc])*
        #[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
        pub struct $name(f64);

        impl $name {
            pub fn new(value: f64) -> Result<Self> {
                positive($what, value).map(Self)
            }

            pub fn get(self) -> f64 {
                self.0
            }
        }
    };
}

positive_quantity!(
    /// Amount of data `H` to deliver, in bits.
    DataAmount,
    "data amount"
);
positive_quantity!(
    /// Energy `E` available for a session, in joules.
    EnergyAmount,
    "energy amount"
);
positive_quantity!(
    /// Entropy threshold `H_th` for information outage, in bits.
    EntropyThreshold,
    "entropy threshold"
);
positive_quantity!(
    /// Energy threshold `E_th` for energy outage, in joules.
    EnergyThreshold,
    "energy threshold"
);

/// Continuous rate adaptation with constant transmit power `p_t` (W).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CraConfig {
    p_t: f64,
}

impl CraConfig {
    pub fn new(p_t: f64) -> Result<Self> {
        positive("transmit power", p_t).map(|p_t| Self { p_t })
    }

    pub fn p_t(&self) -> f64 {
        self.p_t
    }
}

/// Continuous power adaptation (truncated channel inversion): constant
/// received SNR `gamma_c` under a peak power `p_max` (W).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CpaConfig {
    gamma_c: f64,
    p_max: f64,
}

impl CpaConfig {
    pub fn new(gamma_c: f64, p_max: f64) -> Result<Self> {
        positive("target SNR", gamma_c)?;
        positive("peak power", p_max)?;
        Ok(Self { gamma_c, p_max })
    }

    pub fn gamma_c(&self) -> f64 {
        self.gamma_c
    }

    pub fn p_max(&self) -> f64 {
        self.p_max
    }

    /// Cutoff gain `g_T = γ_c N0 B / p_max` below which transmission is held.
    pub fn cutoff_gain(&self, link: &LinkParams) -> f64 {
        self.gamma_c * link.noise_power() / self.p_max
    }

    /// Fixed spectral efficiency `log2(1 + γ_c)` in bits/s/Hz.
    pub fn spectral_efficiency(&self) -> f64 {
        log2_1p(self.gamma_c)
    }

    /// Transmit power `γ_c N0 B / g` for a gain at or above the cutoff.
    pub fn transmit_power(&self, link: &LinkParams, g: f64) -> Result<CpaOutcome> {
        nonnegative("channel gain", g)?;
        if g < self.cutoff_gain(link) {
            return Ok(CpaOutcome::Held);
        }
        Ok(CpaOutcome::Sent(self.gamma_c * link.noise_power() / g))
    }
}

/// Result of a CPA session: a quantity, or held because `g < g_T`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CpaOutcome {
    Sent(f64),
    /// Transmission deferred until the channel improves; no energy spent.
    Held,
}

impl CpaOutcome {
    pub fn is_held(&self) -> bool {
        matches!(self, CpaOutcome::Held)
    }

    pub fn value(&self) -> Option<f64> {
        match *self {
            CpaOutcome::Sent(v) => Some(v),
            CpaOutcome::Held => None,
        }
    }
}

/// MEC with CRA in joules.
///
/// Assumes the transfer completes within one coherence time. Returns
/// [`Error::InfiniteEnergy`] when `g` (or the resulting rate) is zero.
pub fn mec_cra(link: &LinkParams, cra: &CraConfig, h: DataAmount, g: f64) -> Result<f64> {
    let rate = link.shannon_rate(cra.p_t, g)?;
    if rate == 0.0 {
        return Err(Error::InfiniteEnergy);
    }
    Ok(cra.p_t * h.get() / rate)
}

/// MID with CRA in bits when `E / p_t` fits in one coherence time.
///
/// With `coherence_time = Some(t_c)`, a session longer than `t_c` is a
/// [`Error::RegimeViolation`]; use [`mid_cra_multi`] instead.
pub fn mid_cra_single(
    link: &LinkParams,
    cra: &CraConfig,
    e: EnergyAmount,
    g: f64,
    coherence_time: Option<f64>,
) -> Result<f64> {
    let duration = e.get() / cra.p_t;
    if let Some(t_c) = coherence_time {
        positive("coherence time", t_c)?;
        if duration > t_c {
            return Err(Error::RegimeViolation(format!(
                "E/p_t = {duration:e} s exceeds T_c = {t_c:e} s; use the multi-block MID"
            )));
        }
    }
    Ok(duration * link.shannon_rate(cra.p_t, g)?)
}

/// Splits a session of `duration` seconds into full coherence blocks and a
/// trailing partial block: `(full_blocks, remainder_seconds)`.
pub fn coherence_blocks(duration: f64, t_c: f64) -> (u64, f64) {
    let full = (duration / t_c).floor();
    let remainder = (duration - full * t_c).max(0.0);
    (full as u64, remainder)
}

/// Number of independent block gains a CRA session of energy `e` consumes.
pub fn required_blocks(cra: &CraConfig, e: EnergyAmount, t_c: f64) -> u64 {
    let (full, remainder) = coherence_blocks(e.get() / cra.p_t, t_c);
    full + u64::from(remainder > 0.0)
}

/// MID with CRA across block-fading coherence intervals.
///
/// `gains[i]` is the channel gain during block `i`. Full blocks contribute
/// `T_c · B log2(1 + snr_i)`; a trailing partial block of `r` seconds
/// contributes `r · B log2(1 + snr_{N+1})`. Reduces to [`mid_cra_single`]
/// when the session fits in one block.
pub fn mid_cra_multi(
    link: &LinkParams,
    cra: &CraConfig,
    e: EnergyAmount,
    gains: &[f64],
    t_c: f64,
) -> Result<f64> {
    positive("coherence time", t_c)?;
    let (full, remainder) = coherence_blocks(e.get() / cra.p_t, t_c);
    let needed = full + u64::from(remainder > 0.0);
    if (gains.len() as u64) < needed {
        return Err(domain(format!(
            "session spans {needed} coherence blocks but only {} gains were supplied",
            gains.len()
        )));
    }
    let full = full as usize;
    let mut bits = 0.0;
    for &g in &gains[..full] {
        bits += t_c * link.shannon_rate(cra.p_t, g)?;
    }
    if remainder > 0.0 {
        bits += remainder * link.shannon_rate(cra.p_t, gains[full])?;
    }
    Ok(bits)
}

/// CRA bits/joule `B log2(1 + snr) / p_t` at gain `g`; independent of `E`.
pub fn bits_per_joule_cra(link: &LinkParams, cra: &CraConfig, g: f64) -> Result<f64> {
    Ok(link.shannon_rate(cra.p_t, g)? / cra.p_t)
}

/// MEC with CPA in joules, or `Held` below the cutoff gain.
pub fn mec_cpa(link: &LinkParams, cpa: &CpaConfig, h: DataAmount, g: f64) -> Result<CpaOutcome> {
    nonnegative("channel gain", g)?;
    if g < cpa.cutoff_gain(link) {
        return Ok(CpaOutcome::Held);
    }
    let n0 = link.noise_density();
    Ok(CpaOutcome::Sent(cpa.gamma_c * n0 / g * h.get() / cpa.spectral_efficiency()))
}

/// MID with CPA in bits, or `Held` below the cutoff gain.
///
/// With `coherence_time = Some(t_c)`, a transmission lasting
/// `E g / (γ_c N0 B) >= t_c` is a [`Error::RegimeViolation`].
pub fn mid_cpa(
    link: &LinkParams,
    cpa: &CpaConfig,
    e: EnergyAmount,
    g: f64,
    coherence_time: Option<f64>,
) -> Result<CpaOutcome> {
    nonnegative("channel gain", g)?;
    if g < cpa.cutoff_gain(link) {
        return Ok(CpaOutcome::Held);
    }
    if let Some(t_c) = coherence_time {
        positive("coherence time", t_c)?;
        let duration = e.get() * g / (cpa.gamma_c * link.noise_power());
        if duration >= t_c {
            return Err(Error::RegimeViolation(format!(
                "transmission time {duration:e} s reaches T_c = {t_c:e} s"
            )));
        }
    }
    let n0 = link.noise_density();
    Ok(CpaOutcome::Sent(e.get() * g / (cpa.gamma_c * n0) * cpa.spectral_efficiency()))
}

/// CPA bits/joule `g log2(1 + γ_c) / (γ_c N0)`, or `Held` below the cutoff.
pub fn bits_per_joule_cpa(link: &LinkParams, cpa: &CpaConfig, g: f64) -> Result<CpaOutcome> {
    nonnegative("channel gain", g)?;
    if g < cpa.cutoff_gain(link) {
        return Ok(CpaOutcome::Held);
    }
    Ok(CpaOutcome::Sent(g * cpa.spectral_efficiency() / (cpa.gamma_c * link.noise_density())))
}

/// Energy outage rate with CRA: `Pr[E_min(H) > E_th]`.
pub fn eor_cra(
    link: &LinkParams,
    cra: &CraConfig,
    fading: &FadingModel,
    h: DataAmount,
    e_th: EnergyThreshold,
) -> Result<f64> {
    cra_outage(link, cra, fading, h.get(), e_th.get())
}

/// Information outage rate with CRA: `Pr[H_max(E) < H_th]`, single block.
pub fn ior_cra(
    link: &LinkParams,
    cra: &CraConfig,
    fading: &FadingModel,
    e: EnergyAmount,
    h_th: EntropyThreshold,
) -> Result<f64> {
    cra_outage(link, cra, fading, h_th.get(), e.get())
}

/// Energy outage rate with CPA, conditioned on transmission occurring.
pub fn eor_cpa(
    link: &LinkParams,
    cpa: &CpaConfig,
    fading: &FadingModel,
    h: DataAmount,
    e_th: EnergyThreshold,
) -> Result<f64> {
    cpa_outage(link, cpa, fading, h.get(), e_th.get())
}

/// Information outage rate with CPA, conditioned on transmission occurring.
pub fn ior_cpa(
    link: &LinkParams,
    cpa: &CpaConfig,
    fading: &FadingModel,
    e: EnergyAmount,
    h_th: EntropyThreshold,
) -> Result<f64> {
    cpa_outage(link, cpa, fading, h_th.get(), e.get())
}

/// Outage happens iff `g` falls below the gain at which `joules` deliver
/// exactly `bits`: `F_g[(N0 B / p_t)(2^{bits p_t / (B joules)} − 1)]`.
fn cra_outage(
    link: &LinkParams,
    cra: &CraConfig,
    fading: &FadingModel,
    bits: f64,
    joules: f64,
) -> Result<f64> {
    let exponent = LN_2 * bits * cra.p_t / (link.bandwidth_hz() * joules);
    let growth = exponent.exp_m1();
    let threshold_gain = link.noise_power() / cra.p_t * growth;
    if !threshold_gain.is_finite() {
        // Saturated: the limit of F_g at infinity.
        return Ok(1.0);
    }
    fading.cdf(threshold_gain)
}

/// `[F_g(a) − F_g(g_T)] / (1 − F_g(g_T))` clamped to `[0, 1]`, with
/// `a = γ_c N0 bits / (joules log2(1 + γ_c))`.
fn cpa_outage(
    link: &LinkParams,
    cpa: &CpaConfig,
    fading: &FadingModel,
    bits: f64,
    joules: f64,
) -> Result<f64> {
    let cutoff = cpa.cutoff_gain(link);
    let survive_cutoff = transmit_probability(fading, cutoff)?;
    let threshold_gain =
        cpa.gamma_c * link.noise_density() * bits / (joules * cpa.spectral_efficiency());
    if threshold_gain <= cutoff {
        return Ok(0.0);
    }
    // F(a) − F(g_T) = S(g_T) − S(a), computed on the survival side so small
    // transmit probabilities keep their relative precision.
    let survive_threshold = fading.sf(threshold_gain)?;
    Ok(((survive_cutoff - survive_threshold) / survive_cutoff).clamp(0.0, 1.0))
}

/// `1 − F_g(g_T)`, or [`Error::DegenerateCutoff`] when `F_g(g_T)` rounds to 1.
pub fn transmit_probability(fading: &FadingModel, cutoff: f64) -> Result<f64> {
    let below = fading.cdf(cutoff)?;
    let above = fading.sf(cutoff)?;
    if below >= 1.0 || above <= 0.0 {
        return Err(Error::DegenerateCutoff { cutoff });
    }
    Ok(above)
}
