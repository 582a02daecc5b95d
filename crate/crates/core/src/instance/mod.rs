//! Instance data model for the two-line laboratory shop.
//!
//! Each line is a flexible job shop whose machines belong to one of five
//! stages. Every specimen follows the fixed route centrifugation, decapping,
//! analysis (biochemical or immunologic), validation. Processing times are
//! stored per `(specimen, operation, line)`; all machines of a stage group on a
//! line share the operation's time.

mod generate;
mod io;
mod profile;
mod validate;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

pub use generate::{generate_instance, realistic_benchmark, toy_benchmark, BenchmarkSpec};
pub use io::{load_instance, parse_instance, save_instance, to_json};
pub use profile::{realistic_profile, toy_profile, GenerationProfile, LineProfile, StageSpec};
pub use validate::{check_profile_bounds, validate_instance, InstanceViolation};

/// Number of job shop lines in every instance.
pub const LINE_COUNT: usize = 2;

/// Number of operations on every specimen route.
pub const ROUTE_LEN: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum StageKind {
    Centrifugation,
    Decapping,
    BiochemicalTest,
    ImmunologicTest,
    Validation,
}

impl StageKind {
    pub const ALL: [StageKind; 5] = [
        StageKind::Centrifugation,
        StageKind::Decapping,
        StageKind::BiochemicalTest,
        StageKind::ImmunologicTest,
        StageKind::Validation,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            StageKind::Centrifugation => "Centrifugation",
            StageKind::Decapping => "Decapping",
            StageKind::BiochemicalTest => "BiochemicalTest",
            StageKind::ImmunologicTest => "ImmunologicTest",
            StageKind::Validation => "Validation",
        }
    }
}

impl fmt::Display for StageKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TestKind {
    Biochemical,
    Immunologic,
}

impl TestKind {
    pub fn route(self) -> Vec<StageKind> {
        let analysis = match self {
            TestKind::Biochemical => StageKind::BiochemicalTest,
            TestKind::Immunologic => StageKind::ImmunologicTest,
        };
        vec![
            StageKind::Centrifugation,
            StageKind::Decapping,
            analysis,
            StageKind::Validation,
        ]
    }
}

/// Machine address: 1-based line `l` and 1-based machine index `k` within the line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MachineId {
    pub line: usize,
    pub index: usize,
}

impl MachineId {
    pub const fn new(line: usize, index: usize) -> Self {
        Self { line, index }
    }
}

impl fmt::Display for MachineId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M({},{})", self.line, self.index)
    }
}

impl FromStr for MachineId {
    type Err = Error;

    /// Accepts `l,k` or `M(l,k)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let body = s
            .trim()
            .trim_start_matches('M')
            .trim_start_matches('(')
            .trim_end_matches(')');
        let mut parts = body.split(',').map(|p| p.trim().parse::<usize>());
        match (parts.next(), parts.next(), parts.next()) {
            (Some(Ok(line)), Some(Ok(index)), None) => Ok(MachineId { line, index }),
            _ => Err(Error::invalid(format!("bad machine id `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Machine {
    pub id: MachineId,
    pub stage: StageKind,
    pub capacity: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Line {
    pub machines: Vec<Machine>,
}

impl Line {
    pub fn machines_for(&self, stage: StageKind) -> impl Iterator<Item = &Machine> {
        self.machines.iter().filter(move |m| m.stage == stage)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Specimen {
    pub id: u32,
    pub kind: TestKind,
    pub route: Vec<StageKind>,
}

/// Dense `(specimen, operation, line)` table of processing seconds.
///
/// A zero entry marks a missing time; it can only come from a hand-edited file
/// and is reported by [`validate_instance`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProcessingTimes {
    specimens: usize,
    operations: usize,
    lines: usize,
    seconds: Vec<u32>,
}

impl ProcessingTimes {
    pub fn new(specimens: usize, operations: usize, lines: usize) -> Self {
        Self {
            specimens,
            operations,
            lines,
            seconds: vec![0; specimens * operations * lines],
        }
    }

    fn slot(&self, specimen: u32, op: usize, line: usize) -> Option<usize> {
        let i = (specimen as usize).checked_sub(1)?;
        let j = op.checked_sub(1)?;
        let l = line.checked_sub(1)?;
        (i < self.specimens && j < self.operations && l < self.lines)
            .then(|| (i * self.operations + j) * self.lines + l)
    }

    /// Seconds for operation `op` (1-based) of `specimen` on `line`; 0 if absent.
    pub fn get(&self, specimen: u32, op: usize, line: usize) -> u32 {
        self.slot(specimen, op, line).map(|s| self.seconds[s]).unwrap_or(0)
    }

    pub fn set(&mut self, specimen: u32, op: usize, line: usize, seconds: u32) -> Result<(), Error> {
        let slot = self
            .slot(specimen, op, line)
            .ok_or_else(|| Error::invalid(format!("time entry (i={specimen}, j={op}, line={line}) outside table")))?;
        self.seconds[slot] = seconds;
        Ok(())
    }

    pub fn specimens(&self) -> usize {
        self.specimens
    }

    pub fn operations(&self) -> usize {
        self.operations
    }

    pub fn lines(&self) -> usize {
        self.lines
    }

    /// Iterates `(i, j, line, seconds)` in `i`, `j`, `line` order.
    pub fn entries(&self) -> impl Iterator<Item = (u32, usize, usize, u32)> + '_ {
        let (ops, lines) = (self.operations, self.lines);
        self.seconds.iter().enumerate().map(move |(s, &v)| {
            let l = s % lines;
            let j = (s / lines) % ops;
            let i = s / (lines * ops);
            (i as u32 + 1, j + 1, l + 1, v)
        })
    }

    pub(crate) fn scale(&mut self, factor: u32) {
        for v in &mut self.seconds {
            *v *= factor;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub name: String,
    pub seed: u64,
    pub lines: Vec<Line>,
    pub specimens: Vec<Specimen>,
    pub times: ProcessingTimes,
}

impl Instance {
    pub fn specimen_count(&self) -> usize {
        self.specimens.len()
    }

    pub fn specimen(&self, id: u32) -> Option<&Specimen> {
        id.checked_sub(1)
            .and_then(|i| self.specimens.get(i as usize))
            .filter(|s| s.id == id)
    }

    pub fn machine(&self, id: MachineId) -> Option<&Machine> {
        self.lines
            .get(id.line.checked_sub(1)?)?
            .machines
            .get(id.index.checked_sub(1)?)
    }

    pub fn machines(&self) -> impl Iterator<Item = &Machine> {
        self.lines.iter().flat_map(|l| l.machines.iter())
    }

    /// `P_{i,j}^{l,·}` in seconds.
    pub fn time(&self, specimen: u32, op: usize, line: usize) -> u32 {
        self.times.get(specimen, op, line)
    }

    /// Eligibility `W`: the machine's stage is the operation's stage.
    pub fn eligible(&self, specimen: u32, op: usize, machine: MachineId) -> bool {
        match (self.specimen(specimen), self.machine(machine)) {
            (Some(s), Some(m)) => op >= 1 && s.route.get(op - 1) == Some(&m.stage),
            _ => false,
        }
    }

    /// Sum of the specimen's operation times over every line.
    pub fn total_time(&self, specimen: u32) -> u64 {
        let Some(s) = self.specimen(specimen) else {
            return 0;
        };
        (1..=s.route.len())
            .flat_map(|j| (1..=self.lines.len()).map(move |l| (j, l)))
            .map(|(j, l)| u64::from(self.time(specimen, j, l)))
            .sum()
    }

    /// Copy with every processing time multiplied by `factor`.
    pub fn scaled(&self, factor: u32) -> Instance {
        let mut out = self.clone();
        out.times.scale(factor);
        out
    }
}
