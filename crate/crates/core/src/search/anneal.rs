use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::evaluator::{EngineStats, Evaluator};
use super::ml::{ml_select, ml_update, MlState};
use super::settings::{CoolingSchedule, MoveSettings, NeighborhoodChoice, RunOptions};
use super::SearchResult;
use crate::decoder::TiePolicy;
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::neighborhood::{MoveKind, Neighborhood};
use crate::rng::{self, SearchRng};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AnnealConfig {
    #[serde(flatten)]
    pub schedule: CoolingSchedule,
    pub budget: u64,
    #[serde(flatten)]
    pub moves: MoveSettings,
    pub tie: TiePolicy,
    pub seed: u64,
}

impl Default for AnnealConfig {
    fn default() -> Self {
        Self {
            schedule: CoolingSchedule::default(),
            budget: 10_000,
            moves: MoveSettings::default(),
            tie: TiePolicy::default(),
            seed: 0,
        }
    }
}

impl AnnealConfig {
    /// Fixed-temperature variant: cooling 1.
    pub fn fixed_temperature(mut self) -> Self {
        self.schedule.cooling = 1.0;
        self
    }
}

/// `min(1, exp(-delta / t))`; zero temperature rejects every uphill move.
pub fn acceptance_probability(delta: f64, temperature: f64) -> f64 {
    if delta <= 0.0 {
        1.0
    } else if temperature <= 0.0 {
        0.0
    } else {
        (-delta / temperature).exp()
    }
}

pub(crate) fn random_permutation(n: usize, rng: &mut SearchRng) -> Vec<u32> {
    let mut seq: Vec<u32> = (1..=n as u32).collect();
    seq.shuffle(rng);
    seq
}

/// Produces neighbors for one engine run, switching kinds per θ-block when learning.
pub(crate) struct MoveSource {
    settings: MoveSettings,
    start: Vec<u32>,
    nbhds: [Option<Neighborhood>; 4],
    ml: Option<MlState>,
    kind: MoveKind,
}

impl MoveSource {
    pub fn new(settings: MoveSettings, start: &[u32]) -> Result<Self> {
        let (kind, ml) = match settings.neighborhood {
            NeighborhoodChoice::Fixed(k) => (k, None),
            NeighborhoodChoice::MetaLamarckian => (MoveKind::Insert, Some(MlState::default())),
            NeighborhoodChoice::Auto => {
                return Err(Error::invalid(
                    "resolve the `auto` neighborhood before running an engine",
                ))
            }
        };
        Ok(Self {
            settings,
            start: start.to_vec(),
            nbhds: Default::default(),
            ml,
            kind,
        })
    }

    pub fn has_moves(&self) -> bool {
        self.start.len() >= 2
    }

    fn begin_block(&mut self, rng: &mut SearchRng) -> MoveKind {
        if let Some(state) = &self.ml {
            self.kind = ml_select(state, rng);
        }
        self.kind
    }

    fn end_block(&mut self, before: f64, after: f64, theta: usize) {
        if let Some(state) = &mut self.ml {
            ml_update(state, self.kind, before, after, theta);
        }
    }

    fn neighbor_of(&mut self, kind: MoveKind, current: &[u32], rng: &mut SearchRng) -> Result<Vec<u32>> {
        let s = &self.settings;
        let start = &self.start;
        self.nbhds[kind.index()]
            .get_or_insert_with(|| Neighborhood::new(kind, start, s.block_size, s.block_mode, s.inverse_span))
            .neighbor(current, rng)
    }
}

/// Temperature state shared by plain annealing and the scatter-search improvement phase.
pub(crate) struct Annealer {
    pub temperature: f64,
    pub cooling: f64,
    pub theta: usize,
    pub source: MoveSource,
    pub stats: EngineStats,
}

impl Annealer {
    pub fn new(schedule: &CoolingSchedule, source: MoveSource, n: usize) -> Result<Self> {
        schedule.check()?;
        Ok(Self {
            temperature: schedule.initial_temperature.unwrap_or(0.0),
            cooling: schedule.cooling,
            theta: schedule.theta.unwrap_or_else(|| source.settings.theta(n)),
            source,
            stats: EngineStats::default(),
        })
    }

    /// Sets the temperature to the mean absolute change over sampled moves divided by
    /// ln 2 (1.0 if every sampled move was neutral).
    pub fn calibrate(
        &mut self,
        ev: &mut Evaluator,
        rng: &mut SearchRng,
        from: &[u32],
        fitness: f64,
        moves: usize,
    ) -> Result<()> {
        let mut sum = 0.0;
        let mut count = 0usize;
        if self.source.has_moves() {
            for k in 0..moves {
                let kind = match self.source.ml {
                    Some(_) => MoveKind::ALL[k % 4],
                    None => self.source.kind,
                };
                let cand = self.source.neighbor_of(kind, from, rng)?;
                let Some(f) = ev.evaluate(&cand)? else { break };
                sum += (f - fitness).abs();
                count += 1;
            }
        }
        let mean = if count > 0 { sum / count as f64 } else { 0.0 };
        self.temperature = if mean > 0.0 { mean / std::f64::consts::LN_2 } else { 1.0 };
        self.stats.initial_temperature = self.temperature;
        Ok(())
    }

    pub fn set_initial(&mut self, t: f64) {
        self.temperature = t;
        self.stats.initial_temperature = t;
    }

    /// Runs θ-blocks from `current` until `max_evals` decode calls are spent or the
    /// evaluator stops. Returns the best solution met, starting point included.
    pub fn run(
        &mut self,
        ev: &mut Evaluator,
        rng: &mut SearchRng,
        current: &mut (Vec<u32>, f64),
        max_evals: u64,
    ) -> Result<(Vec<u32>, f64)> {
        let mut best = current.clone();
        if !self.source.has_moves() {
            return Ok(best);
        }
        let mut spent = 0u64;
        'outer: while spent < max_evals && !ev.exhausted() {
            let kind = self.source.begin_block(rng);
            self.stats.temperatures.push(self.temperature);
            let before = current.1;
            let mut done = 0usize;
            while done < self.theta {
                if spent >= max_evals {
                    break;
                }
                let cand = self.source.neighbor_of(kind, &current.0, rng)?;
                self.stats.moves_by_kind[kind.index()] += 1;
                let Some(f) = ev.evaluate(&cand)? else {
                    break;
                };
                spent += 1;
                done += 1;
                let delta = f - current.1;
                let p = acceptance_probability(delta, self.temperature);
                if p >= 1.0 || rng.gen::<f64>() < p {
                    if delta > 0.0 {
                        self.stats.uphill_accepted += 1;
                    }
                    *current = (cand, f);
                    ev.note_accepted(&current.0, f);
                    if f < best.1 {
                        best = current.clone();
                    }
                }
            }
            if done == 0 {
                self.stats.temperatures.pop();
                break 'outer;
            }
            self.source.end_block(before, current.1, self.theta);
            self.temperature *= self.cooling;
        }
        Ok(best)
    }
}

/// Simulated annealing from a random permutation; cooling 1 gives the fixed-temperature variant.
pub fn anneal(inst: &Instance, cfg: &AnnealConfig) -> Result<SearchResult> {
    anneal_with(inst, cfg, RunOptions::default())
}

pub fn anneal_with(inst: &Instance, cfg: &AnnealConfig, opts: RunOptions) -> Result<SearchResult> {
    if cfg.budget == 0 {
        return Err(Error::invalid("evaluation budget must be at least 1"));
    }
    let n = inst.specimen_count();
    let mut rng = rng::stream(cfg.seed, &[0xA11EA1]);
    let mut ev = Evaluator::new(inst, cfg.tie.clone(), cfg.budget)
        .with_stagnation(opts.stagnation)
        .with_optima_log(opts.optima)
        .keep_accepted(opts.keep_accepted);

    let start = random_permutation(n, &mut rng);
    let source = MoveSource::new(cfg.moves, &start)?;
    let mut annealer = Annealer::new(&cfg.schedule, source, n)?;
    let f0 = ev.evaluate(&start)?.expect("budget is at least one evaluation");
    ev.note_accepted(&start, f0);
    match cfg.schedule.initial_temperature {
        Some(t) => annealer.set_initial(t),
        None => annealer.calibrate(&mut ev, &mut rng, &start, f0, cfg.schedule.calibration_moves)?,
    }
    let mut current = (start, f0);
    annealer.run(&mut ev, &mut rng, &mut current, u64::MAX)?;
    Ok(ev.finish(annealer.stats))
}
