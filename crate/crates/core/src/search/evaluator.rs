use std::time::Instant;

use serde::Serialize;

use crate::decoder::{decode_partial, TiePolicy};
use crate::error::Result;
use crate::instance::Instance;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TracePoint {
    /// 1-based index of the decode call that produced the value.
    pub evaluation: u64,
    pub mtat: f64,
}

/// A solution recorded when it became (or tied) the run's best-so-far.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptimumEvent {
    pub evaluation: u64,
    pub sequence: Vec<u32>,
    pub mtat: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Sample {
    pub sequence: Vec<u32>,
    pub mtat: f64,
}

/// Which solutions enter the optima log.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OptimaLog {
    #[default]
    Off,
    /// Strict improvements of the best-so-far.
    Improvements,
    /// Strict improvements plus distinct sequences that equal the best-so-far.
    WithNeutral,
}

/// Decodes sequences against a budget of decode calls and tracks the incumbent.
pub struct Evaluator<'a> {
    inst: &'a Instance,
    tie: TiePolicy,
    budget: u64,
    used: u64,
    stagnation: Option<u64>,
    since_improvement: u64,
    best: Option<(Vec<u32>, f64)>,
    trace: Vec<TracePoint>,
    optima_mode: OptimaLog,
    optima: Vec<OptimumEvent>,
    keep_accepted: bool,
    accepted: Vec<Sample>,
    started: Instant,
}

impl<'a> Evaluator<'a> {
    pub fn new(inst: &'a Instance, tie: TiePolicy, budget: u64) -> Self {
        Self {
            inst,
            tie,
            budget,
            used: 0,
            stagnation: None,
            since_improvement: 0,
            best: None,
            trace: Vec::new(),
            optima_mode: OptimaLog::Off,
            optima: Vec::new(),
            keep_accepted: false,
            accepted: Vec::new(),
            started: Instant::now(),
        }
    }

    /// Stop after `limit` consecutive evaluations without a strict improvement.
    pub fn with_stagnation(mut self, limit: Option<u64>) -> Self {
        self.stagnation = limit;
        self
    }

    pub fn with_optima_log(mut self, mode: OptimaLog) -> Self {
        self.optima_mode = mode;
        self
    }

    pub fn keep_accepted(mut self, on: bool) -> Self {
        self.keep_accepted = on;
        self
    }

    pub fn instance(&self) -> &'a Instance {
        self.inst
    }

    pub fn n(&self) -> usize {
        self.inst.specimen_count()
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn remaining(&self) -> u64 {
        if self.stagnated() {
            return 0;
        }
        self.budget - self.used
    }

    fn stagnated(&self) -> bool {
        self.stagnation.is_some_and(|m| self.since_improvement >= m)
    }

    pub fn exhausted(&self) -> bool {
        self.used >= self.budget || self.stagnated()
    }

    pub fn best(&self) -> Option<(&[u32], f64)> {
        self.best.as_ref().map(|(s, f)| (s.as_slice(), *f))
    }

    /// MTAT of a full permutation, or `None` once the budget is spent.
    pub fn evaluate(&mut self, seq: &[u32]) -> Result<Option<f64>> {
        if self.exhausted() {
            return Ok(None);
        }
        let raw = decode_partial(self.inst, seq, &self.tie)?;
        self.used += 1;
        let mtat = raw.total_tat as f64 / seq.len() as f64;
        self.observe(seq, mtat);
        Ok(Some(mtat))
    }

    /// Total TAT and machine idle time of a prefix sequence. Counts as one decode call;
    /// a prefix that covers every specimen also updates the incumbent.
    pub fn evaluate_partial(&mut self, seq: &[u32]) -> Result<Option<(i64, i64)>> {
        if self.exhausted() {
            return Ok(None);
        }
        let raw = decode_partial(self.inst, seq, &self.tie)?;
        self.used += 1;
        if seq.len() == self.n() {
            self.observe(seq, raw.total_tat as f64 / seq.len() as f64);
        } else {
            self.since_improvement += 1;
        }
        Ok(Some((raw.total_tat, raw.total_idle())))
    }

    fn observe(&mut self, seq: &[u32], mtat: f64) {
        let improved = self.best.as_ref().is_none_or(|(_, b)| mtat < *b);
        if improved {
            self.best = Some((seq.to_vec(), mtat));
            self.since_improvement = 0;
            self.trace.push(TracePoint {
                evaluation: self.used,
                mtat,
            });
            if self.optima_mode != OptimaLog::Off {
                self.push_optimum(seq, mtat);
            }
            return;
        }
        self.since_improvement += 1;
        if self.optima_mode == OptimaLog::WithNeutral {
            let (best_seq, best) = self.best.as_ref().expect("checked above");
            if mtat == *best && best_seq.as_slice() != seq {
                let seq = seq.to_vec();
                self.best = Some((seq.clone(), mtat));
                self.push_optimum(&seq, mtat);
            }
        }
    }

    fn push_optimum(&mut self, seq: &[u32], mtat: f64) {
        self.optima.push(OptimumEvent {
            evaluation: self.used,
            sequence: seq.to_vec(),
            mtat,
        });
    }

    /// Records a solution the engine accepted as its current one.
    pub fn note_accepted(&mut self, seq: &[u32], mtat: f64) {
        if self.keep_accepted {
            self.accepted.push(Sample {
                sequence: seq.to_vec(),
                mtat,
            });
        }
    }

    pub(crate) fn finish(self, stats: EngineStats) -> super::SearchResult {
        let (best, best_mtat) = self.best.unwrap_or_default();
        super::SearchResult {
            best,
            best_mtat,
            trace: self.trace,
            optima: self.optima,
            accepted: self.accepted,
            evaluations: self.used,
            seconds: self.started.elapsed().as_secs_f64(),
            stats,
        }
    }
}

/// Engine-specific counters reported with a result.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct EngineStats {
    pub initial_temperature: f64,
    /// Temperature in force during each θ-block.
    pub temperatures: Vec<f64>,
    pub uphill_accepted: u64,
    /// Moves drawn per kind, indexed by `MoveKind::index`.
    pub moves_by_kind: [u64; 4],
    pub refset_refills: u64,
}
