//! TOML run configuration. Unknown keys are rejected.

use std::path::PathBuf;

use ldpc_core::builder::{BuildPolicy, CandidateOrder, Condition};
use ldpc_core::decode::{Algorithm, DecoderConfig};
use ldpc_core::galois::{FieldError, GaloisField};
use ldpc_core::graph::generate_patterns;
use serde::{Deserialize, Serialize};

use crate::channel::ChannelPoint;
use crate::sim::StopRule;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub seed: Option<u64>,
    pub workers: Option<usize>,
    pub out: Option<PathBuf>,
    pub field: Option<FieldConfig>,
    pub construct: Option<ConstructConfig>,
    pub simulate: Option<SimulateConfig>,
    pub analyze: Option<AnalyzeConfig>,
    pub patterns: Option<PatternsConfig>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldConfig {
    pub p: u32,
    #[serde(default = "one")]
    pub m: u32,
    /// Coefficients, constant term first, monic.
    pub modulus: Option<Vec<u32>>,
}

fn one() -> u32 {
    1
}

impl FieldConfig {
    pub fn build(&self) -> Result<GaloisField, FieldError> {
        GaloisField::new(self.p, self.m, self.modulus.as_deref())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Order {
    #[default]
    Random,
    Sequential,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstructConfig {
    #[serde(default = "three")]
    pub gamma: usize,
    pub target_rho: Option<usize>,
    #[serde(default)]
    pub order: Order,
    pub max_retries_per_block: Option<usize>,
    pub max_backtracks: Option<usize>,
    /// Seeds tried in turn until one reaches `target_rho`; the widest wins.
    #[serde(default = "one_usize")]
    pub restarts: usize,
    #[serde(default = "yes")]
    pub fix_first_row_zero: bool,
    /// Graded preset 1 to 4; mutually exclusive with `condition`.
    pub tau: Option<u8>,
    pub condition: Option<ConditionConfig>,
}

fn three() -> usize {
    3
}

fn one_usize() -> usize {
    1
}

fn yes() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConditionConfig {
    #[serde(default = "six")]
    pub girth: u32,
    /// `[a, b, girth]` triples; every generated pattern is forbidden.
    #[serde(default)]
    pub forbid: Vec<[u32; 3]>,
    #[serde(default)]
    pub eight_cycle_sharing: bool,
    #[serde(default)]
    pub min_distance_10: bool,
}

fn six() -> u32 {
    6
}

impl ConditionConfig {
    pub fn build(&self) -> Condition {
        let mut c = Condition::girth(self.girth);
        for &[a, b, g] in &self.forbid {
            c = c.forbid(generate_patterns(a as usize, b as usize, g));
        }
        if self.eight_cycle_sharing {
            c = c.with_eight_cycle_sharing();
        }
        if self.min_distance_10 {
            c = c.with_min_distance_10();
        }
        c
    }
}

impl ConstructConfig {
    pub fn condition(&self) -> Result<Condition, ConfigError> {
        match (&self.tau, &self.condition) {
            (Some(_), Some(_)) => Err(ConfigError::Invalid("construct: give either `tau` or `condition`, not both".into())),
            (Some(k), None) => Condition::tau(*k).ok_or_else(|| ConfigError::Invalid(format!("construct: tau {k} is not 1 to 4"))),
            (None, Some(c)) => Ok(c.build()),
            (None, None) => Err(ConfigError::Invalid("construct: `tau` or `condition` is required".into())),
        }
    }

    pub fn policy(&self, seed: u64) -> BuildPolicy {
        BuildPolicy {
            candidate_order: match self.order {
                Order::Random => CandidateOrder::Random { seed },
                Order::Sequential => CandidateOrder::Sequential,
            },
            max_retries_per_block: self.max_retries_per_block,
            max_backtracks: self.max_backtracks,
            target_rho: self.target_rho,
            fix_first_row_zero: self.fix_first_row_zero,
            audit_steps: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AlgorithmName {
    #[default]
    Spa,
    GallagerA,
    GallagerB,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChannelName {
    #[default]
    Awgn,
    Bsc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StopPreset {
    #[default]
    Standard,
    Desk,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulateConfig {
    /// alist file; the command line may supply it instead.
    pub code: Option<PathBuf>,
    #[serde(default)]
    pub algorithm: AlgorithmName,
    /// Gallager B only.
    pub threshold: Option<usize>,
    pub max_iter: Option<usize>,
    pub llr_clamp: Option<f64>,
    #[serde(default)]
    pub channel: ChannelName,
    /// Eb/N0 values in dB for AWGN, crossover probabilities for the BSC.
    pub points: Vec<f64>,
    /// Defaults to the true rate k/n of the code.
    pub rate: Option<f64>,
    #[serde(default)]
    pub preset: StopPreset,
    pub min_frame_errors: Option<u64>,
    pub max_frames: Option<u64>,
    #[serde(default)]
    pub gnuplot: bool,
}

impl SimulateConfig {
    pub fn decoder(&self) -> DecoderConfig {
        let algorithm = match self.algorithm {
            AlgorithmName::Spa => Algorithm::Spa,
            AlgorithmName::GallagerA => Algorithm::GallagerA,
            AlgorithmName::GallagerB => Algorithm::GallagerB { threshold: self.threshold.unwrap_or(2) },
        };
        let mut cfg = DecoderConfig::new(algorithm);
        if let Some(m) = self.max_iter {
            cfg.max_iter = m;
        }
        if let Some(c) = self.llr_clamp {
            cfg.llr_clamp = c;
        }
        cfg
    }

    pub fn stop(&self) -> StopRule {
        let base = match self.preset {
            StopPreset::Standard => StopRule::default(),
            StopPreset::Desk => StopRule::desk(),
        };
        StopRule {
            min_frame_errors: self.min_frame_errors.unwrap_or(base.min_frame_errors),
            max_frames: self.max_frames.unwrap_or(base.max_frames),
        }
    }

    pub fn points(&self, rate: f64) -> Vec<ChannelPoint> {
        self.points
            .iter()
            .map(|&x| match self.channel {
                ChannelName::Awgn => ChannelPoint::awgn(x, rate),
                ChannelName::Bsc => ChannelPoint { rate, ..ChannelPoint::bsc(x) },
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalyzeConfig {
    pub code: Option<PathBuf>,
    /// Cycle lengths to count.
    #[serde(default = "default_lengths")]
    pub cycles: Vec<usize>,
    /// `[a, b, girth]` pattern families to search for.
    #[serde(default = "default_families")]
    pub patterns: Vec<[u32; 3]>,
    #[serde(default = "yes")]
    pub eight_cycle_sharing: bool,
    #[serde(default = "yes")]
    pub min_distance_10: bool,
}

fn default_lengths() -> Vec<usize> {
    vec![4, 6, 8]
}

fn default_families() -> Vec<[u32; 3]> {
    vec![[6, 0, 6], [8, 0, 6], [5, 3, 6]]
}

impl Default for AnalyzeConfig {
    fn default() -> Self {
        AnalyzeConfig {
            code: None,
            cycles: default_lengths(),
            patterns: default_families(),
            eight_cycle_sharing: true,
            min_distance_10: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PatternsConfig {
    pub a: usize,
    pub b: usize,
    #[serde(default = "six")]
    pub girth: u32,
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: String, source: toml::de::Error },
    #[error("{0}")]
    Invalid(String),
}

impl RunConfig {
    pub fn parse(text: &str, origin: &str) -> Result<Self, ConfigError> {
        toml::from_str(text).map_err(|source| ConfigError::Parse { path: origin.to_string(), source })
    }

    pub fn load(path: &std::path::Path) -> Result<Self, ConfigError> {
        let shown = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io { path: shown.clone(), source })?;
        Self::parse(&text, &shown)
    }
}
