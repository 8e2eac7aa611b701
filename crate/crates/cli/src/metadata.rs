use std::fmt;

use chrono::{DateTime, Utc};
use greenbits_core::montecarlo::GENERATOR;
use greenbits_core::SimConfig;

use crate::error::CliError;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// `SOURCE_DATE_EPOCH` when set, so reruns can be byte-identical; the wall
/// clock otherwise.
pub fn timestamp_from_env() -> Result<String, CliError> {
    match std::env::var("SOURCE_DATE_EPOCH") {
        Ok(raw) => {
            let secs: i64 = raw
                .trim()
                .parse()
                .map_err(|_| CliError::Other(format!("SOURCE_DATE_EPOCH={raw:?} is not an integer")))?;
            let at = DateTime::from_timestamp(secs, 0)
                .ok_or_else(|| CliError::Other(format!("SOURCE_DATE_EPOCH={raw:?} is out of range")))?;
            Ok(format_timestamp(at))
        }
        Err(_) => Ok(format_timestamp(Utc::now())),
    }
}

pub fn format_timestamp(at: DateTime<Utc>) -> String {
    at.format("%Y-%m-%dT%H:%M:%SZ").to_string()
}

/// Provenance block written as `#` comment lines ahead of every output.
///
/// The worker count is left out on purpose: it never changes results.
#[derive(Debug, Clone)]
pub struct RunMetadata {
    pub command: &'static str,
    pub timestamp: String,
    pub params: Vec<(&'static str, String)>,
    pub extra: Vec<(&'static str, String)>,
    pub sim: Option<SimConfig>,
}

impl RunMetadata {
    pub fn new(command: &'static str, timestamp: &str, params: Vec<(&'static str, String)>) -> Self {
        Self { command, timestamp: timestamp.to_string(), params, extra: Vec::new(), sim: None }
    }
}

impl fmt::Display for RunMetadata {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# greenbits {VERSION}")?;
        writeln!(f, "# command: {}", self.command)?;
        writeln!(f, "# timestamp: {}", self.timestamp)?;
        for (key, value) in self.params.iter().chain(&self.extra) {
            writeln!(f, "# {key} = {value}")?;
        }
        if let Some(sim) = &self.sim {
            writeln!(f, "# generator = {GENERATOR}")?;
            writeln!(f, "# seed = {}", sim.seed)?;
            writeln!(f, "# n_samples = {}", sim.n_samples)?;
        }
        Ok(())
    }
}
