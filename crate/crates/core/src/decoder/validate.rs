use std::collections::{BTreeMap, HashMap};
use std::fmt;

use super::{OpRef, Schedule};
use crate::instance::{Instance, MachineId};

/// One violated model constraint, numbered as in the MIP formulation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScheduleViolation {
    pub constraint: u8,
    pub detail: String,
}

impl fmt::Display for ScheduleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "constraint ({}): {}", self.constraint, self.detail)
    }
}

/// Checks constraints (2)-(15) directly on a realized schedule.
pub fn validate_schedule(inst: &Instance, sched: &Schedule) -> Vec<ScheduleViolation> {
    let mut out = Vec::new();
    let mut flag = |constraint: u8, detail: String| out.push(ScheduleViolation { constraint, detail });
    let n = inst.specimen_count();

    // (2)
    if sched.line_of.len() != n {
        flag(
            2,
            format!("line_of has {} entries for {n} specimens", sched.line_of.len()),
        );
        return out;
    }
    for (i, &l) in sched.line_of.iter().enumerate() {
        if l == 0 || l > inst.lines.len() {
            flag(2, format!("specimen {} is on no valid line", i + 1));
        }
    }

    // (3)-(4): every operation in exactly one batch on an eligible machine of its line
    let mut holder: HashMap<OpRef, usize> = HashMap::new();
    for (b_idx, b) in sched.batches.iter().enumerate() {
        let Some(machine) = inst.machine(b.machine) else {
            flag(3, format!("batch on unknown machine {}", b.machine));
            continue;
        };
        for m in &b.members {
            if inst.specimen(m.specimen).is_none() {
                flag(4, format!("unknown specimen {} on {}", m.specimen, b.machine));
                continue;
            }
            if !inst.eligible(m.specimen, m.op, b.machine) {
                flag(
                    3,
                    format!("O({},{}) is not eligible on {}", m.specimen, m.op, b.machine),
                );
            }
            if sched.line_of[m.specimen as usize - 1] != machine.id.line {
                flag(
                    2,
                    format!("O({},{}) processed off its line on {}", m.specimen, m.op, b.machine),
                );
            }
            if holder.insert(*m, b_idx).is_some() {
                flag(4, format!("O({},{}) appears in two batches", m.specimen, m.op));
            }
        }
        // (5)
        if b.members.len() > machine.capacity as usize {
            flag(
                5,
                format!(
                    "batch r={} on {} holds {} > capacity {}",
                    b.position,
                    b.machine,
                    b.members.len(),
                    machine.capacity
                ),
            );
        }
        // (8)
        let longest = b
            .members
            .iter()
            .map(|m| i64::from(inst.time(m.specimen, m.op, b.machine.line)))
            .max()
            .unwrap_or(0);
        if b.processing_time != longest {
            flag(
                8,
                format!(
                    "batch r={} on {} lasts {} but its longest member needs {longest}",
                    b.position, b.machine, b.processing_time
                ),
            );
        }
        // (14)
        if b.start < 0 || b.completion < 0 {
            flag(14, format!("batch r={} on {} has negative time", b.position, b.machine));
        }
    }
    for s in &inst.specimens {
        for j in 1..=s.route.len() {
            if !holder.contains_key(&OpRef { specimen: s.id, op: j }) {
                flag(4, format!("O({},{}) is not scheduled", s.id, j));
            }
        }
    }

    // (6)-(7), (9)-(10): per machine positions 1..count and sequencing
    let mut per_machine: BTreeMap<MachineId, Vec<usize>> = BTreeMap::new();
    for (idx, b) in sched.batches.iter().enumerate() {
        per_machine.entry(b.machine).or_default().push(idx);
    }
    for (machine, mut idxs) in per_machine {
        idxs.sort_by_key(|&i| sched.batches[i].position);
        for (want, &i) in idxs.iter().enumerate() {
            let pos = sched.batches[i].position;
            if pos != want + 1 {
                let c = if idxs.iter().filter(|&&o| sched.batches[o].position == pos).count() > 1 {
                    6
                } else {
                    7
                };
                flag(c, format!("{machine}: expected position {}, found {pos}", want + 1));
            }
        }
        let mut prev_completion = 0;
        for &i in &idxs {
            let b = &sched.batches[i];
            if b.completion != b.start + b.processing_time {
                flag(
                    if b.position == 1 { 9 } else { 10 },
                    format!(
                        "{machine} r={}: completion {} != start {} + {}",
                        b.position, b.completion, b.start, b.processing_time
                    ),
                );
            }
            if b.start < prev_completion {
                flag(
                    10,
                    format!(
                        "{machine} r={} starts at {} before r={} completes at {prev_completion}",
                        b.position,
                        b.start,
                        b.position - 1
                    ),
                );
            }
            prev_completion = b.completion;
        }
    }

    // (11)-(13): availability
    for s in &inst.specimens {
        let i = s.id as usize - 1;
        let Some(avail) = sched.available.get(i) else {
            flag(11, format!("no availability times for specimen {}", s.id));
            continue;
        };
        for j in 1..=s.route.len() {
            let Some(&b_idx) = holder.get(&OpRef { specimen: s.id, op: j }) else {
                continue;
            };
            let b = &sched.batches[b_idx];
            let e = avail.get(j - 1).copied().unwrap_or(0);
            if j == 1 && e < 0 {
                flag(13, format!("E({},1) = {e} < 0", s.id));
            }
            if b.start < e {
                flag(
                    11,
                    format!("O({},{j}) batch starts at {} before availability {e}", s.id, b.start),
                );
            }
            if j > 1 {
                if let Some(&p_idx) = holder.get(&OpRef {
                    specimen: s.id,
                    op: j - 1,
                }) {
                    let prev = &sched.batches[p_idx];
                    if e < prev.completion || b.start < prev.completion {
                        flag(
                            12,
                            format!(
                                "O({},{j}) starts at {} (E = {e}) before O({},{}) completes at {}",
                                s.id,
                                b.start,
                                s.id,
                                j - 1,
                                prev.completion
                            ),
                        );
                    }
                }
            }
        }
    }

    // (15)
    if sched.tat.len() != n {
        flag(15, format!("tat has {} entries for {n} specimens", sched.tat.len()));
    } else {
        for s in &inst.specimens {
            let last = holder
                .get(&OpRef {
                    specimen: s.id,
                    op: s.route.len(),
                })
                .map(|&b| sched.batches[b].completion);
            let tat = sched.tat[s.id as usize - 1];
            if last.is_some_and(|c| c != tat) {
                flag(
                    15,
                    format!("TAT of specimen {} is {tat}, last completion {:?}", s.id, last),
                );
            }
        }
        let mean = super::mean_tat(&sched.tat);
        if (mean - sched.mtat).abs() > 1e-9 * mean.abs().max(1.0) {
            flag(15, format!("mtat {} is not the mean TAT {mean}", sched.mtat));
        }
    }
    out
}
