//! Schedule JSON and batch-interval CSV.

use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{mean_tat, Batch, OpRef, Schedule};
use crate::error::{Error, Result};
use crate::instance::MachineId;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScheduleFile {
    line_of: Vec<usize>,
    batches: Vec<BatchFile>,
    tat: Vec<i64>,
    mtat: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BatchFile {
    l: usize,
    k: usize,
    r: usize,
    members: Vec<(u32, usize)>,
    start: i64,
    completion: i64,
}

pub fn schedule_to_json(sched: &Schedule) -> String {
    let file = ScheduleFile {
        line_of: sched.line_of.clone(),
        batches: sched
            .batches
            .iter()
            .map(|b| BatchFile {
                l: b.machine.line,
                k: b.machine.index,
                r: b.position,
                members: b.members.iter().map(|m| (m.specimen, m.op)).collect(),
                start: b.start,
                completion: b.completion,
            })
            .collect(),
        tat: sched.tat.clone(),
        mtat: (sched.mtat * 100.0).round() / 100.0,
    };
    serde_json::to_string_pretty(&file).expect("schedule serializes")
}

pub fn save_schedule(sched: &Schedule, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, schedule_to_json(sched)).map_err(|e| Error::io(path, e))
}

pub fn load_schedule(path: impl AsRef<Path>) -> Result<Schedule> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_schedule(&text, path)
}

/// Rebuilds batch durations from start/completion and `E` from the batch of
/// each preceding operation.
pub fn parse_schedule(text: &str, origin: &Path) -> Result<Schedule> {
    let file: ScheduleFile = serde_json::from_str(text).map_err(|e| Error::Parse {
        path: origin.to_path_buf(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let n = file.line_of.len();
    let batches: Vec<Batch> = file
        .batches
        .into_iter()
        .map(|b| Batch {
            machine: MachineId::new(b.l, b.k),
            position: b.r,
            members: b
                .members
                .into_iter()
                .map(|(specimen, op)| OpRef { specimen, op })
                .collect(),
            processing_time: b.completion - b.start,
            start: b.start,
            completion: b.completion,
        })
        .collect();

    let mut completion: HashMap<OpRef, i64> = HashMap::new();
    let mut ops = vec![0usize; n];
    for b in &batches {
        for m in &b.members {
            completion.insert(*m, b.completion);
            if let Some(slot) = (m.specimen as usize).checked_sub(1).and_then(|i| ops.get_mut(i)) {
                *slot = (*slot).max(m.op);
            }
        }
    }
    let available = (0..n)
        .map(|i| {
            (1..=ops[i])
                .map(|j| {
                    if j == 1 {
                        0
                    } else {
                        completion
                            .get(&OpRef {
                                specimen: i as u32 + 1,
                                op: j - 1,
                            })
                            .copied()
                            .unwrap_or(0)
                    }
                })
                .collect()
        })
        .collect();

    let mtat = mean_tat(&file.tat);
    if (mtat - file.mtat).abs() > 0.005 + 1e-9 {
        return Err(Error::Parse {
            path: origin.to_path_buf(),
            line: 0,
            column: 0,
            message: format!("mtat {} does not match the mean of tat ({mtat:.2})", file.mtat),
        });
    }
    Ok(Schedule {
        line_of: file.line_of,
        batches,
        available,
        tat: file.tat,
        mtat,
    })
}

/// One row per batch: `line,machine,position,start,completion,members`.
pub fn write_batch_csv<W: Write>(sched: &Schedule, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["line", "machine", "position", "start", "completion", "members"])?;
    for b in &sched.batches {
        let members = b
            .members
            .iter()
            .map(|m| format!("O{}.{}", m.specimen, m.op))
            .collect::<Vec<_>>()
            .join(" ");
        w.write_record([
            b.machine.line.to_string(),
            b.machine.index.to_string(),
            b.position.to_string(),
            b.start.to_string(),
            b.completion.to_string(),
            members,
        ])?;
    }
    w.flush().map_err(|e| Error::io("<csv>", e))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decoder::{decode_fabm, validate_schedule, TiePolicy};
    use crate::fixtures::{example6, EXAMPLE6_SEQUENCE};

    #[test]
    fn json_round_trip_validates() {
        let inst = example6();
        let s = decode_fabm(&inst, &EXAMPLE6_SEQUENCE, &TiePolicy::LowestIndex).unwrap();
        let back = parse_schedule(&schedule_to_json(&s), Path::new("s.json")).unwrap();
        assert_eq!(back.batches, s.batches);
        assert_eq!(back.available, s.available);
        assert!(validate_schedule(&inst, &back).is_empty());
    }

    #[test]
    fn csv_has_a_row_per_batch() {
        let inst = example6();
        let s = decode_fabm(&inst, &EXAMPLE6_SEQUENCE, &TiePolicy::LowestIndex).unwrap();
        let mut buf = Vec::new();
        write_batch_csv(&s, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), s.batches.len() + 1);
    }
}
