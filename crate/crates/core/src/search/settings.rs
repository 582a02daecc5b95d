use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::evaluator::OptimaLog;
use crate::error::{Error, Result};
use crate::neighborhood::{BlockMode, InverseSpan, MoveKind, DEFAULT_BLOCK_SIZE};

/// Which move operator an engine uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum NeighborhoodChoice {
    Fixed(MoveKind),
    /// Roulette selection over all four kinds, rewarded by improvement.
    MetaLamarckian,
    /// Resolved from the instance size before the run.
    Auto,
}

impl Default for NeighborhoodChoice {
    fn default() -> Self {
        NeighborhoodChoice::Fixed(MoveKind::Swap)
    }
}

impl fmt::Display for NeighborhoodChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NeighborhoodChoice::Fixed(k) => write!(f, "{k}"),
            NeighborhoodChoice::MetaLamarckian => f.write_str("ml"),
            NeighborhoodChoice::Auto => f.write_str("auto"),
        }
    }
}

impl FromStr for NeighborhoodChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ml" => Ok(NeighborhoodChoice::MetaLamarckian),
            "auto" => Ok(NeighborhoodChoice::Auto),
            other => other.parse().map(NeighborhoodChoice::Fixed),
        }
    }
}

impl TryFrom<String> for NeighborhoodChoice {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<NeighborhoodChoice> for String {
    fn from(c: NeighborhoodChoice) -> String {
        c.to_string()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MoveSettings {
    pub neighborhood: NeighborhoodChoice,
    pub block_size: usize,
    pub block_mode: BlockMode,
    pub inverse_span: InverseSpan,
}

impl Default for MoveSettings {
    fn default() -> Self {
        Self {
            neighborhood: NeighborhoodChoice::default(),
            block_size: DEFAULT_BLOCK_SIZE,
            block_mode: BlockMode::Fixed,
            inverse_span: InverseSpan::Exclusive,
        }
    }
}

impl MoveSettings {
    pub fn with(neighborhood: NeighborhoodChoice) -> Self {
        Self {
            neighborhood,
            ..Self::default()
        }
    }

    /// Moves per temperature level: the number of blocks, `ceil(n / block_size)`.
    pub fn theta(&self, n: usize) -> usize {
        n.div_ceil(self.block_size.max(1)).max(1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CoolingSchedule {
    /// `None` calibrates from sampled moves around the starting solution.
    pub initial_temperature: Option<f64>,
    /// Multiplier applied after every θ-block; 1 keeps the temperature fixed.
    pub cooling: f64,
    /// Moves per temperature level; `None` means one per block of specimens.
    pub theta: Option<usize>,
    pub calibration_moves: usize,
}

impl Default for CoolingSchedule {
    fn default() -> Self {
        Self {
            initial_temperature: None,
            cooling: 0.98,
            theta: None,
            calibration_moves: 100,
        }
    }
}

impl CoolingSchedule {
    pub fn check(&self) -> Result<()> {
        if !(self.cooling > 0.0 && self.cooling <= 1.0) {
            return Err(Error::invalid(format!(
                "cooling must lie in (0, 1], got {}",
                self.cooling
            )));
        }
        if self.theta == Some(0) {
            return Err(Error::invalid("theta must be at least 1"));
        }
        if let Some(t) = self.initial_temperature {
            if !(t >= 0.0 && t.is_finite()) {
                return Err(Error::invalid(format!(
                    "initial temperature must be finite and >= 0, got {t}"
                )));
            }
        }
        Ok(())
    }
}

/// Extra recording for landscape analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RunOptions {
    /// Stop after this many consecutive evaluations without a strict improvement.
    pub stagnation: Option<u64>,
    pub optima: OptimaLog,
    pub keep_accepted: bool,
}
