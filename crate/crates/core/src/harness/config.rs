use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{KgError, Result};
use crate::integrators::SchemeId;

/// The speeds of light of the published experiment.
pub const PAPER_C_LIST: [f64; 9] = [1.0, 5.0, 10.0, 50.0, 100.0, 500.0, 1000.0, 5000.0, 10000.0];

/// Desk-scale speeds of light used by the acceptance sweep.
pub const DESK_C_LIST: [f64; 5] = [1.0, 10.0, 100.0, 1000.0, 10000.0];

/// Modes of the published grid: 1024 points, mesh width `2 pi / 1024`.
pub const PAPER_MODES: usize = 512;

/// Desk-scale modes.
pub const DESK_MODES: usize = 256;

/// Inclusive range `lo..=hi` of exponents `m` in `tau = T 2^{-m}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct ExponentRange {
    pub lo: u32,
    pub hi: u32,
}

impl ExponentRange {
    pub fn new(lo: u32, hi: u32) -> Result<Self> {
        if lo > hi {
            return Err(KgError::Config(format!("empty exponent range {lo}..{hi}")));
        }
        if hi > 40 {
            return Err(KgError::Config(format!("exponent {hi} is too large")));
        }
        Ok(Self { lo, hi })
    }

    pub fn iter(self) -> impl Iterator<Item = u32> {
        self.lo..=self.hi
    }

    pub fn len(self) -> usize {
        (self.hi - self.lo + 1) as usize
    }

    pub fn is_empty(self) -> bool {
        false
    }
}

impl fmt::Display for ExponentRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

impl FromStr for ExponentRange {
    type Err = KgError;

    /// `"4..12"`, `"4..=12"` (both inclusive) or a single exponent `"7"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || KgError::Config(format!("bad exponent range '{s}', expected e.g. 4..12"));
        let s = s.trim();
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (a, b.trim_start_matches('=')),
            None => (s, s),
        };
        let lo = lo.trim().parse().map_err(|_| bad())?;
        let hi = hi.trim().parse().map_err(|_| bad())?;
        Self::new(lo, hi)
    }
}

impl From<ExponentRange> for String {
    fn from(r: ExponentRange) -> Self {
        r.to_string()
    }
}

impl TryFrom<String> for ExponentRange {
    type Error = KgError;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = KgError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(KgError::Config(format!("unknown format '{other}'"))),
        }
    }
}

/// The quantity whose error is reported.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ErrorVariable {
    /// The reconstructed solution `z`.
    #[default]
    Z,
    /// The twisted variable `u_*`.
    Twisted,
}

/// A convergence sweep over schemes, speeds of light and step sizes.
///
/// Read from a flat TOML file; every key is optional.
///
/// ```toml
/// schemes = ["uei1", "uei2"]
/// c = [1, 10, 100]
/// tau_exp = "4..10"
/// T = 0.1
/// K = 256
/// r = 1
/// out = "results.csv"
/// format = "csv"
/// ```
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepConfig {
    pub schemes: Vec<SchemeId>,
    #[serde(rename = "c")]
    pub c_list: Vec<f64>,
    #[serde(rename = "tau_exp")]
    pub tau_exponents: ExponentRange,
    #[serde(rename = "T")]
    pub horizon: f64,
    #[serde(rename = "K")]
    pub modes: usize,
    pub r: f64,
    #[serde(rename = "out")]
    pub output_path: Option<PathBuf>,
    pub format: OutputFormat,
    /// `tau_ref = T 2^{-reference_exponent}`.
    pub reference_exponent: u32,
    pub reference_tolerance: f64,
    pub error_variable: ErrorVariable,
    pub dealias: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            schemes: vec![SchemeId::Uei1Real, SchemeId::Uei2Real],
            c_list: DESK_C_LIST.to_vec(),
            tau_exponents: ExponentRange { lo: 4, hi: 10 },
            horizon: 0.1,
            modes: DESK_MODES,
            r: 1.0,
            output_path: None,
            format: OutputFormat::Csv,
            reference_exponent: 16,
            reference_tolerance: 1e-9,
            error_variable: ErrorVariable::Z,
            dealias: false,
        }
    }
}

impl SweepConfig {
    /// The published setting: nine speeds of light on the published grid.
    pub fn paper() -> Self {
        Self {
            c_list: PAPER_C_LIST.to_vec(),
            modes: PAPER_MODES,
            tau_exponents: ExponentRange { lo: 4, hi: 12 },
            ..Self::default()
        }
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| KgError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| KgError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_toml_str(&text).map_err(|e| match e {
            KgError::Config(message) => KgError::Format {
                path: path.to_path_buf(),
                message,
            },
            other => other,
        })
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("config serialises")
    }

    pub fn taus(&self) -> Vec<f64> {
        self.tau_exponents
            .iter()
            .map(|m| self.horizon / 2f64.powi(m as i32))
            .collect()
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.horizon > 0.0) || !self.horizon.is_finite() {
            return Err(KgError::Config(format!("T must be positive, got {}", self.horizon)));
        }
        if let Some(c) = self.c_list.iter().find(|c| !(**c > 0.0) || !c.is_finite()) {
            return Err(KgError::Config(format!("every c must be positive, got {c}")));
        }
        if self.modes < 2 {
            return Err(KgError::Config(format!("K must be at least 2, got {}", self.modes)));
        }
        if !(self.r >= 0.0) {
            return Err(KgError::Config(format!("r must be nonnegative, got {}", self.r)));
        }
        if self.reference_exponent <= self.tau_exponents.hi {
            return Err(KgError::Config(format!(
                "reference exponent {} must exceed the finest step exponent {}",
                self.reference_exponent, self.tau_exponents.hi
            )));
        }
        if !(self.reference_tolerance > 0.0) {
            return Err(KgError::Config("reference tolerance must be positive".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_ranges() {
        assert_eq!("4..12".parse::<ExponentRange>().unwrap(), ExponentRange { lo: 4, hi: 12 });
        assert_eq!("4..=12".parse::<ExponentRange>().unwrap(), ExponentRange { lo: 4, hi: 12 });
        assert_eq!("7".parse::<ExponentRange>().unwrap().len(), 1);
        assert!("9..4".parse::<ExponentRange>().is_err());
        assert!("a..b".parse::<ExponentRange>().is_err());
    }

    #[test]
    fn reads_flat_toml() {
        let cfg = SweepConfig::from_toml_str(
            "schemes = [\"uei1\", \"uei2\", \"strang\"]\nc = [1, 10.5]\ntau_exp = \"3..6\"\nT = 0.2\nK = 32\nformat = \"json\"\n",
        )
        .unwrap();
        assert_eq!(cfg.schemes, vec![SchemeId::Uei1, SchemeId::Uei2Real, SchemeId::StrangLimit]);
        assert_eq!(cfg.c_list, vec![1.0, 10.5]);
        assert_eq!(cfg.taus(), vec![0.025, 0.0125, 0.00625, 0.003125]);
        assert_eq!(cfg.modes, 32);
        assert_eq!(cfg.format, OutputFormat::Json);
        assert_eq!(cfg.r, 1.0);
    }

    #[test]
    fn rejects_bad_configs() {
        assert!(SweepConfig::from_toml_str("K = 1").is_err());
        assert!(SweepConfig::from_toml_str("c = [1, -2]").is_err());
        assert!(SweepConfig::from_toml_str("T = 0").is_err());
        assert!(SweepConfig::from_toml_str("unknown = 3").is_err());
        assert!(SweepConfig::from_toml_str("schemes = [\"rk4\"]").is_err());
        assert!(SweepConfig::from_toml_str("tau_exp = \"4..20\"").is_err());
    }

    #[test]
    fn toml_round_trip() {
        let cfg = SweepConfig::paper();
        assert_eq!(SweepConfig::from_toml_str(&cfg.to_toml_string()).unwrap(), cfg);
    }
}
