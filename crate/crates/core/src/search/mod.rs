//! Search engines over specimen sequences.
//!
//! Every engine counts decode calls through an [`Evaluator`]; the evaluation
//! budget is exact and the best-so-far trace only ever goes down.

mod anneal;
mod combine;
mod evaluator;
mod ml;
mod neh;
mod scatter;
mod settings;

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::decoder::TiePolicy;
use crate::error::{Error, Result};
use crate::instance::Instance;

pub use anneal::{acceptance_probability, anneal, anneal_with, AnnealConfig};
pub use combine::{combine_solutions, Combination, VoteStep};
pub use evaluator::{EngineStats, Evaluator, OptimaLog, OptimumEvent, Sample, TracePoint};
pub use ml::{aps_select_neighborhood, ml_select, ml_update, ApsTable, MlState};
pub use neh::{neh_b, NehOutcome};
pub use scatter::{scatter_search, scatter_search_with, select_subset, ScatterConfig};
pub use settings::{CoolingSchedule, MoveSettings, NeighborhoodChoice, RunOptions};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchResult {
    pub best: Vec<u32>,
    pub best_mtat: f64,
    pub trace: Vec<TracePoint>,
    /// Best-so-far improvements with their sequences, when requested.
    pub optima: Vec<OptimumEvent>,
    /// Solutions the engine moved to, when requested.
    pub accepted: Vec<Sample>,
    pub evaluations: u64,
    pub seconds: f64,
    pub stats: EngineStats,
}

impl SearchResult {
    /// Equality on everything but wall-clock time.
    pub fn same_outcome(&self, other: &SearchResult) -> bool {
        self.best == other.best
            && self.best_mtat == other.best_mtat
            && self.trace == other.trace
            && self.optima == other.optima
            && self.accepted == other.accepted
            && self.evaluations == other.evaluations
            && self.stats == other.stats
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Sa,
    Fta,
    Ss,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Sa, Algorithm::Fta, Algorithm::Ss];

    pub fn code(self) -> &'static str {
        match self {
            Algorithm::Sa => "sa",
            Algorithm::Fta => "fta",
            Algorithm::Ss => "ss",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sa" => Ok(Algorithm::Sa),
            "fta" => Ok(Algorithm::Fta),
            "ss" => Ok(Algorithm::Ss),
            _ => Err(Error::invalid(format!("unknown algorithm `{s}` (sa|fta|ss)"))),
        }
    }
}

/// Every tunable of the solver front-end; missing keys in a config file keep their defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverConfig {
    pub algo: Algorithm,
    pub evals: u64,
    #[serde(flatten)]
    pub moves: MoveSettings,
    #[serde(flatten)]
    pub schedule: CoolingSchedule,
    pub refset_size: usize,
    pub improve_evals: Option<u64>,
    pub neh_block_size: Option<usize>,
    pub idle_tiebreak: bool,
    pub tie: TiePolicy,
    pub aps: ApsTable,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            algo: Algorithm::Ss,
            evals: 10_000,
            moves: MoveSettings::default(),
            schedule: CoolingSchedule::default(),
            refset_size: 10,
            improve_evals: None,
            neh_block_size: None,
            idle_tiebreak: true,
            tie: TiePolicy::default(),
            aps: ApsTable::default(),
        }
    }
}

impl SolverConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml(&text).map_err(|e| match e {
            Error::Config(msg) => Error::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    /// Move settings with `auto` replaced by the size-based choice for `n`.
    pub fn resolved_moves(&self, n: usize) -> MoveSettings {
        let mut m = self.moves;
        if m.neighborhood == NeighborhoodChoice::Auto {
            m.neighborhood = NeighborhoodChoice::Fixed(self.aps.select(n));
        }
        m
    }

    pub fn anneal_config(&self, n: usize, seed: u64) -> AnnealConfig {
        let mut schedule = self.schedule;
        if self.algo == Algorithm::Fta {
            schedule.cooling = 1.0;
        }
        AnnealConfig {
            schedule,
            budget: self.evals,
            moves: self.resolved_moves(n),
            tie: self.tie.clone(),
            seed,
        }
    }

    pub fn scatter_config(&self, n: usize, seed: u64) -> ScatterConfig {
        ScatterConfig {
            refset_size: self.refset_size,
            improvement: self.schedule,
            improve_evals: self.improve_evals,
            budget: self.evals,
            moves: self.resolved_moves(n),
            neh_block_size: self.neh_block_size,
            idle_tiebreak: self.idle_tiebreak,
            tie: self.tie.clone(),
            seed,
        }
    }
}

pub fn solve(inst: &Instance, cfg: &SolverConfig, seed: u64) -> Result<SearchResult> {
    solve_with(inst, cfg, seed, RunOptions::default())
}

pub fn solve_with(inst: &Instance, cfg: &SolverConfig, seed: u64, opts: RunOptions) -> Result<SearchResult> {
    let n = inst.specimen_count();
    match cfg.algo {
        Algorithm::Sa | Algorithm::Fta => anneal_with(inst, &cfg.anneal_config(n, seed), opts),
        Algorithm::Ss => scatter_search_with(inst, &cfg.scatter_config(n, seed), opts),
    }
}
