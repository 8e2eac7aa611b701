//! Link budget: received SNR and Shannon-limit rate.

use std::f64::consts::LN_2;

use crate::error::{nonnegative, positive, Result};

/// Bandwidth `B` (Hz) and receiver noise spectral density `N0` (W/Hz).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkParams {
    bandwidth_hz: f64,
    noise_density: f64,
}

impl LinkParams {
    pub fn new(bandwidth_hz: f64, noise_density_w_per_hz: f64) -> Result<Self> {
        positive("bandwidth", bandwidth_hz)?;
        positive("noise spectral density", noise_density_w_per_hz)?;
        let link = Self { bandwidth_hz, noise_density: noise_density_w_per_hz };
        positive("noise power", link.noise_power())?;
        Ok(link)
    }

    pub fn bandwidth_hz(&self) -> f64 {
        self.bandwidth_hz
    }

    pub fn noise_density(&self) -> f64 {
        self.noise_density
    }

    /// `N0 · B` in watts.
    pub fn noise_power(&self) -> f64 {
        self.noise_density * self.bandwidth_hz
    }

    /// Received SNR `p_t · g / (N0 · B)`.
    pub fn snr(&self, p_t: f64, g: f64) -> Result<f64> {
        nonnegative("transmit power", p_t)?;
        nonnegative("channel gain", g)?;
        Ok(p_t * g / self.noise_power())
    }

    /// Maximum reliable rate `B · log2(1 + snr)` in bits/s.
    pub fn shannon_rate(&self, p_t: f64, g: f64) -> Result<f64> {
        Ok(self.rate_at_snr(self.snr(p_t, g)?))
    }

    /// `B · log2(1 + snr)` for an already computed SNR.
    pub fn rate_at_snr(&self, snr: f64) -> f64 {
        self.bandwidth_hz * log2_1p(snr)
    }
}

/// `log2(1 + x)` without losing precision for small `x`.
pub(crate) fn log2_1p(x: f64) -> f64 {
    x.ln_1p() / LN_2
}
