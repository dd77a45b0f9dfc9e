//! Experiment configuration: a TOML file whose fields mirror the command
//! line flags. Unset fields fall back to per-driver defaults.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::surface::SurfaceSig;

/// A positive rational `num/den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ratio {
    pub num: u32,
    pub den: u32,
}

impl Ratio {
    pub const HALF: Ratio = Ratio { num: 1, den: 2 };

    /// `⌈self · r⌉`.
    pub fn ceil_mul(&self, r: usize) -> usize {
        (self.num as usize * r).div_ceil(self.den as usize)
    }
}

impl FromStr for Ratio {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad ratio {s:?}, expected p/q"));
        let (p, q) = s.trim().split_once('/').unwrap_or((s.trim(), "1"));
        let num: u32 = p.trim().parse().map_err(|_| bad())?;
        let den: u32 = q.trim().parse().map_err(|_| bad())?;
        if num == 0 || den == 0 {
            return Err(bad());
        }
        Ok(Ratio { num, den })
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl Serialize for Ratio {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Ratio {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

mod sig_text {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<SurfaceSig>, s: S) -> std::result::Result<S::Ok, S::Error> {
        match v {
            Some(sig) => s.collect_str(&format_args!("{},{}", sig.genus, sig.boundary)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<SurfaceSig>, D::Error> {
        let s: Option<String> = Option::deserialize(d)?;
        s.map(|s| s.parse().map_err(serde::de::Error::custom)).transpose()
    }
}

/// Settings shared by every driver.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(with = "sig_text", skip_serializing_if = "Option::is_none")]
    pub surface: Option<SurfaceSig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight_bound: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radius: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threshold: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<Ratio>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cap: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
}

/// Default random seed.
pub const DEFAULT_SEED: u64 = 7;

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io { path: path.display().to_string(), message: e.to_string() })?;
        Self::parse(&text).map_err(|e| match e {
            Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
            e => e,
        })
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    /// Fields set in `other` replace those in `self`.
    pub fn overlay(&self, other: &ExperimentConfig) -> ExperimentConfig {
        ExperimentConfig {
            surface: other.surface.or(self.surface),
            weight_bound: other.weight_bound.or(self.weight_bound),
            radius: other.radius.or(self.radius),
            samples: other.samples.or(self.samples),
            seed: other.seed.or(self.seed),
            threshold: other.threshold.or(self.threshold),
            epsilon: other.epsilon.or(self.epsilon),
            cap: other.cap.or(self.cap),
            out: other.out.clone().or_else(|| self.out.clone()),
        }
    }

    /// Rejects zero-valued numeric fields.
    pub fn validate(&self) -> Result<()> {
        let zero = |name: &str| Err(Error::Parse(format!("{name} must be positive")));
        if self.weight_bound == Some(0) {
            return zero("weight_bound");
        }
        if self.samples == Some(0) {
            return zero("samples");
        }
        if self.threshold == Some(0) {
            return zero("threshold");
        }
        if self.cap == Some(0) {
            return zero("cap");
        }
        if let Some(sig) = self.surface {
            sig.check_supported()?;
        }
        Ok(())
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(DEFAULT_SEED)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_through_toml() {
        let cfg = ExperimentConfig {
            surface: Some(SurfaceSig::new(2, 1)),
            weight_bound: Some(3),
            epsilon: Some(Ratio::HALF),
            seed: Some(11),
            ..Default::default()
        };
        let text = cfg.to_toml();
        assert!(text.contains("surface = \"2,1\""));
        assert_eq!(ExperimentConfig::parse(&text).unwrap(), cfg);
    }

    #[test]
    fn flags_override_file_values() {
        let file = ExperimentConfig::parse("seed = 3\nradius = 2\n").unwrap();
        let flags = ExperimentConfig { seed: Some(9), ..Default::default() };
        let merged = file.overlay(&flags);
        assert_eq!((merged.seed, merged.radius), (Some(9), Some(2)));
    }

    #[test]
    fn rejects_unknown_fields_and_bad_ratios() {
        assert!(ExperimentConfig::parse("colour = 1").is_err());
        assert!("0/2".parse::<Ratio>().is_err());
        assert_eq!("2/3".parse::<Ratio>().unwrap().ceil_mul(2), 2);
        assert_eq!(Ratio::HALF.ceil_mul(3), 2);
    }
}
