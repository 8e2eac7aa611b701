//! Channel power-gain distributions for slow, flat fading.
//!
//! Rayleigh fading gives an exponentially distributed power gain with mean
//! `avg_gain`. Nakagami-m fading gives a gamma distributed power gain with
//! shape `m` and scale `avg_gain / m`, so `m = 1` reduces to Rayleigh.

use crate::error::{domain, nonnegative, positive, Error, Result};
use crate::special::{ln_gamma, IncompleteGamma};

/// Supported Nakagami shape range.
pub const NAKAGAMI_M_MIN: f64 = 0.5;
pub const NAKAGAMI_M_MAX: f64 = 50.0;

const QUANTILE_MAX_ITER: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FadingKind {
    Rayleigh,
    Nakagami,
}

/// Power-gain distribution of a fading channel. Gains are linear, never dB.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FadingModel {
    kind: FadingKind,
    avg_gain: f64,
    m: f64,
    /// Cached `ln Γ(m)`; unused for Rayleigh.
    ln_gamma_m: f64,
}

impl FadingModel {
    pub fn rayleigh(avg_gain: f64) -> Result<Self> {
        positive("average gain", avg_gain)?;
        Ok(Self { kind: FadingKind::Rayleigh, avg_gain, m: 1.0, ln_gamma_m: 0.0 })
    }

    pub fn nakagami(m: f64, avg_gain: f64) -> Result<Self> {
        positive("average gain", avg_gain)?;
        if !(NAKAGAMI_M_MIN..=NAKAGAMI_M_MAX).contains(&m) {
            return Err(domain(format!(
                "Nakagami m must lie in [{NAKAGAMI_M_MIN}, {NAKAGAMI_M_MAX}], got {m}"
            )));
        }
        Ok(Self {
            kind: FadingKind::Nakagami,
            avg_gain,
            m,
            ln_gamma_m: ln_gamma(m),
        })
    }

    pub fn kind(&self) -> FadingKind {
        self.kind
    }

    pub fn avg_gain(&self) -> f64 {
        self.avg_gain
    }

    /// Shape parameter; 1 for Rayleigh.
    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn mean(&self) -> f64 {
        self.avg_gain
    }

    /// `Pr[g' <= g]`. Accepts `g = +inf`.
    pub fn cdf(&self, g: f64) -> Result<f64> {
        check_gain(g)?;
        if g == f64::INFINITY {
            return Ok(1.0);
        }
        Ok(match self.shape() {
            None => -(-g / self.avg_gain).exp_m1(),
            Some(ig) => ig.eval(self.m * g / self.avg_gain)?.lower,
        })
    }

    /// Survival function `Pr[g' > g] = 1 - cdf(g)`, accurate in the upper tail.
    pub fn sf(&self, g: f64) -> Result<f64> {
        check_gain(g)?;
        if g == f64::INFINITY {
            return Ok(0.0);
        }
        Ok(match self.shape() {
            None => (-g / self.avg_gain).exp(),
            Some(ig) => ig.eval(self.m * g / self.avg_gain)?.upper,
        })
    }

    pub fn pdf(&self, g: f64) -> Result<f64> {
        check_gain(g)?;
        match self.shape() {
            None => Ok((-g / self.avg_gain).exp() / self.avg_gain),
            Some(ig) => {
                let scale = self.avg_gain / self.m;
                let x = g / scale;
                if x == 0.0 {
                    return Ok(if self.m < 1.0 {
                        f64::INFINITY
                    } else if self.m == 1.0 {
                        1.0 / scale
                    } else {
                        0.0
                    });
                }
                if x.is_infinite() {
                    return Ok(0.0);
                }
                Ok(ig.eval(x)?.kernel / x / scale)
            }
        }
    }

    /// Inverse CDF on `[0, 1)`.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(0.0..1.0).contains(&p) {
            return Err(domain(format!("quantile probability must lie in [0, 1), got {p}")));
        }
        if p == 0.0 {
            return Ok(0.0);
        }
        match self.shape() {
            None => Ok(-self.avg_gain * (-p).ln_1p()),
            Some(ig) => Ok(gamma_quantile(ig, self.m, p)? * self.avg_gain / self.m),
        }
    }

    /// Inverse-transform sample: maps a uniform variate `u ∈ [0, 1)` to a gain.
    pub fn sample(&self, u: f64) -> Result<f64> {
        self.quantile(u)
    }

    fn shape(&self) -> Option<IncompleteGamma> {
        match self.kind {
            FadingKind::Rayleigh => None,
            FadingKind::Nakagami => Some(IncompleteGamma::with_ln_gamma(self.m, self.ln_gamma_m)),
        }
    }
}

fn check_gain(g: f64) -> Result<()> {
    if g == f64::INFINITY {
        return Ok(());
    }
    nonnegative("channel gain", g).map(|_| ())
}

/// Solves `P(m, x) = p` for the unit-scale gamma distribution.
///
/// Halley iteration from a Wilson–Hilferty start, safeguarded by bisection
/// on a bracket that starts at `[0, m (1 + 20/√m)]` and doubles as needed.
fn gamma_quantile(ig: IncompleteGamma, m: f64, p: f64) -> Result<f64> {
    // P(m, x) = x^m / Γ(m + 1) · (1 + O(x)); exact to working precision here.
    let small = ((p.ln() + ln_gamma(m + 1.0)) / m).exp();
    if small < 1e-100 {
        return Ok(small);
    }
    let mut lo = 0.0;
    let mut hi = m * (1.0 + 20.0 / m.sqrt());
    let mut expansions = 0;
    while ig.eval(hi)?.lower < p {
        lo = hi;
        hi *= 2.0;
        expansions += 1;
        if expansions > 64 {
            return Err(Error::NoConvergence("gamma quantile bracket"));
        }
    }

    let mut x = wilson_hilferty(m, p);
    if !(x > lo && x < hi) {
        x = 0.5 * (lo + hi);
    }

    for _ in 0..QUANTILE_MAX_ITER {
        let tails = ig.eval(x)?;
        let f = tails.lower - p;
        if f == 0.0 {
            return Ok(x);
        }
        if f < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let density = tails.kernel / x;
        let mut next = f64::NAN;
        if density > 0.0 && density.is_finite() {
            let newton = f / density;
            // f''/f' = (m - 1)/x - 1 for the gamma density.
            let curvature = (m - 1.0) / x - 1.0;
            let denom = 1.0 - 0.5 * newton * curvature;
            let step = if denom > 0.5 { newton / denom } else { newton };
            next = x - step;
        }
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if (next - x).abs() <= 4.0 * f64::EPSILON * x || hi - lo <= 4.0 * f64::EPSILON * hi {
            return Ok(next);
        }
        x = next;
    }
    Err(Error::NoConvergence("gamma quantile"))
}

/// Wilson–Hilferty approximation to the unit-scale gamma quantile.
fn wilson_hilferty(m: f64, p: f64) -> f64 {
    let z = normal_quantile_approx(p);
    let c = 1.0 / (9.0 * m);
    let base = 1.0 - c + z * c.sqrt();
    if base <= 0.0 {
        // Lower tail where the cube-root transform breaks down.
        return ((p.ln() + ln_gamma(m + 1.0)) / m).exp();
    }
    m * base.powi(3)
}

/// Rational approximation to the standard normal quantile (|error| < 5e-4).
fn normal_quantile_approx(p: f64) -> f64 {
    let (q, sign) = if p < 0.5 { (p, -1.0) } else { (1.0 - p, 1.0) };
    let t = (-2.0 * q.max(f64::MIN_POSITIVE).ln()).sqrt();
    let z = t - (2.515_517 + 0.802_853 * t + 0.010_328 * t * t)
        / (1.0 + 1.432_788 * t + 0.189_269 * t * t + 0.001_308 * t * t * t);
    sign * z
}
