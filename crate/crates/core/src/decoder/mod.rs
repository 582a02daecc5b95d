//! Permutation decoding, timing realization and schedule validation.
//!
//! A [`Schedule`] carries the realized decision variables: the line of each
//! specimen, every batch with its machine, position, members and timing, the
//! availability time of every operation, and the resulting turnaround times.
//! Times are integer seconds.

mod fabm;
mod file;
mod realize;
mod validate;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::instance::MachineId;

pub use fabm::decode_fabm;
pub(crate) use fabm::decode_partial;
pub use file::{load_schedule, parse_schedule, save_schedule, schedule_to_json, write_batch_csv};
pub use realize::{export_assignment, realize_from_assignment};
pub use validate::{validate_schedule, ScheduleViolation};

/// Operation `O_{i,j}`: specimen id and 1-based operation index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OpRef {
    pub specimen: u32,
    pub op: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Batch {
    pub machine: MachineId,
    /// 1-based position `r` in the machine's processing sequence.
    pub position: usize,
    pub members: Vec<OpRef>,
    pub processing_time: i64,
    pub start: i64,
    pub completion: i64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Schedule {
    /// Line of specimen `i` at index `i - 1`.
    pub line_of: Vec<usize>,
    /// Sorted by machine, then position.
    pub batches: Vec<Batch>,
    /// `E_{i,j}` at `[i - 1][j - 1]`.
    pub available: Vec<Vec<i64>>,
    pub tat: Vec<i64>,
    pub mtat: f64,
}

impl Schedule {
    pub fn total_tat(&self) -> i64 {
        self.tat.iter().sum()
    }

    /// MTAT with two decimals, e.g. `1569.50`.
    pub fn mtat_display(&self) -> String {
        format!("{:.2}", self.mtat)
    }

    pub fn batches_on(&self, machine: MachineId) -> impl Iterator<Item = &Batch> {
        self.batches.iter().filter(move |b| b.machine == machine)
    }

    /// The batch holding `O_{i,j}`.
    pub fn batch_of(&self, specimen: u32, op: usize) -> Option<&Batch> {
        let target = OpRef { specimen, op };
        self.batches.iter().find(|b| b.members.contains(&target))
    }

    /// Idle seconds summed over machines: gaps between consecutive batches.
    pub fn total_idle(&self) -> i64 {
        idle_time(&self.batches)
    }
}

pub(crate) fn idle_time(batches: &[Batch]) -> i64 {
    let mut idle = 0;
    for pair in batches.windows(2) {
        if pair[0].machine == pair[1].machine {
            idle += (pair[1].start - pair[0].completion).max(0);
        }
    }
    idle
}

pub(crate) fn mean_tat(tat: &[i64]) -> f64 {
    if tat.is_empty() {
        0.0
    } else {
        tat.iter().sum::<i64>() as f64 / tat.len() as f64
    }
}

/// How FABM resolves equal remaining capacities when choosing a machine.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TiePolicy {
    /// Uniform choice from a stream re-seeded at every decode call.
    SeededRandom { seed: u64 },
    /// Smallest `(line, index)`.
    LowestIndex,
    /// Consumes one recorded machine per tie; falls back to the lowest index when
    /// the list is exhausted or its next entry is not among the tied machines.
    Recorded(Vec<MachineId>),
}

impl Default for TiePolicy {
    fn default() -> Self {
        TiePolicy::SeededRandom { seed: 0 }
    }
}

impl TiePolicy {
    /// Parses `seeded-random[:SEED]`, `lowest-index`, `worked-example`.
    pub fn parse(s: &str) -> crate::Result<Self> {
        let (head, tail) = s.split_once(':').unwrap_or((s, ""));
        match head {
            "seeded-random" => {
                let seed = if tail.is_empty() {
                    0
                } else {
                    tail.parse()
                        .map_err(|_| crate::Error::invalid(format!("bad tie seed `{tail}`")))?
                };
                Ok(TiePolicy::SeededRandom { seed })
            }
            "lowest-index" => Ok(TiePolicy::LowestIndex),
            "worked-example" => Ok(crate::fixtures::worked_example_ties()),
            _ => Err(crate::Error::invalid(format!("unknown tie policy `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct XVar {
    pub specimen: u32,
    pub line: usize,
}

/// `Y_{i,j,d}^{l,k} = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct YVar {
    pub specimen: u32,
    pub op: usize,
    pub machine: MachineId,
    pub batch: usize,
}

/// `Z_d^{l,k,r} = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ZVar {
    pub machine: MachineId,
    pub batch: usize,
    pub position: usize,
}

/// The 1-valued binary decision variables; everything absent is 0.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assignment {
    pub x: BTreeSet<XVar>,
    pub y: BTreeSet<YVar>,
    pub z: BTreeSet<ZVar>,
}
