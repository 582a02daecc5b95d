use std::collections::{BTreeMap, HashMap};

use super::{mean_tat, Assignment, Batch, OpRef, Schedule, XVar, YVar, ZVar};
use crate::error::{Error, Result};
use crate::instance::{Instance, MachineId};

fn infeasible(constraint: u8, detail: impl Into<String>) -> Error {
    Error::Infeasible {
        constraint,
        detail: detail.into(),
    }
}

/// Earliest-start timing of an explicit X/Y/Z assignment.
///
/// Each batch starts at the later of the previous batch's completion on its
/// machine and the latest availability of its members; `E_{i,1} = 0`.
/// Positions are renumbered densely in `r` order.
pub fn realize_from_assignment(inst: &Instance, asg: &Assignment) -> Result<Schedule> {
    let n = inst.specimen_count();

    let mut line_of = vec![0usize; n];
    for x in &asg.x {
        if inst.specimen(x.specimen).is_none() || x.line == 0 || x.line > inst.lines.len() {
            return Err(infeasible(
                2,
                format!("X({}, line {}) is out of range", x.specimen, x.line),
            ));
        }
        let slot = &mut line_of[x.specimen as usize - 1];
        if *slot != 0 {
            return Err(infeasible(2, format!("specimen {} is on two lines", x.specimen)));
        }
        *slot = x.line;
    }
    if let Some(i) = line_of.iter().position(|&l| l == 0) {
        return Err(infeasible(2, format!("specimen {} has no line", i + 1)));
    }

    let mut op_batch: HashMap<OpRef, (MachineId, usize)> = HashMap::new();
    let mut members: BTreeMap<(MachineId, usize), Vec<OpRef>> = BTreeMap::new();
    for y in &asg.y {
        let op = OpRef {
            specimen: y.specimen,
            op: y.op,
        };
        let Some(machine) = inst.machine(y.machine) else {
            return Err(infeasible(3, format!("{} does not exist", y.machine)));
        };
        if !inst.eligible(y.specimen, y.op, y.machine) {
            return Err(infeasible(
                3,
                format!("O({},{}) is not eligible on {}", y.specimen, y.op, y.machine),
            ));
        }
        if machine.id.line != line_of[y.specimen as usize - 1] {
            return Err(infeasible(
                3,
                format!("O({},{}) placed off its line on {}", y.specimen, y.op, y.machine),
            ));
        }
        if op_batch.insert(op, (y.machine, y.batch)).is_some() {
            return Err(infeasible(4, format!("O({},{}) is in two batches", y.specimen, y.op)));
        }
        members.entry((y.machine, y.batch)).or_default().push(op);
    }
    for s in &inst.specimens {
        for j in 1..=s.route.len() {
            if !op_batch.contains_key(&OpRef { specimen: s.id, op: j }) {
                return Err(infeasible(4, format!("O({},{}) is not assigned", s.id, j)));
            }
        }
    }
    for (&(machine, d), ops) in &members {
        let cap = inst.machine(machine).map_or(0, |m| m.capacity as usize);
        if ops.len() > cap {
            return Err(infeasible(
                5,
                format!("batch {d} on {machine} holds {} > capacity {cap}", ops.len()),
            ));
        }
    }

    let mut position: HashMap<(MachineId, usize), usize> = HashMap::new();
    let mut occupied: HashMap<(MachineId, usize), usize> = HashMap::new();
    for z in &asg.z {
        if position.insert((z.machine, z.batch), z.position).is_some() {
            return Err(infeasible(
                7,
                format!("batch {} on {} has two positions", z.batch, z.machine),
            ));
        }
        if let Some(other) = occupied.insert((z.machine, z.position), z.batch) {
            return Err(infeasible(
                6,
                format!(
                    "position {} on {} holds batches {other} and {}",
                    z.position, z.machine, z.batch
                ),
            ));
        }
    }

    // per machine: batches in position order
    let mut sequence: BTreeMap<MachineId, Vec<(usize, Vec<OpRef>)>> = BTreeMap::new();
    for ((machine, d), ops) in members {
        let r = *position
            .get(&(machine, d))
            .ok_or_else(|| infeasible(7, format!("batch {d} on {machine} has no position")))?;
        sequence.entry(machine).or_default().push((r, ops));
    }
    for list in sequence.values_mut() {
        list.sort_by_key(|(r, _)| *r);
    }

    let mut done: HashMap<OpRef, i64> = HashMap::new();
    let mut available: Vec<Vec<i64>> = inst.specimens.iter().map(|s| vec![0; s.route.len()]).collect();
    let mut cursor: BTreeMap<MachineId, (usize, i64)> = sequence.keys().map(|&m| (m, (0, 0))).collect();
    let mut batches = Vec::new();
    loop {
        let mut progressed = false;
        for (&machine, list) in &sequence {
            let (next, free_at) = cursor[&machine];
            let Some((_, ops)) = list.get(next) else { continue };
            let mut arrival = 0;
            let mut ready = true;
            for o in ops {
                if o.op > 1 {
                    match done.get(&OpRef {
                        specimen: o.specimen,
                        op: o.op - 1,
                    }) {
                        Some(&c) => arrival = arrival.max(c),
                        None => {
                            ready = false;
                            break;
                        }
                    }
                }
            }
            if !ready {
                continue;
            }
            let processing_time = ops
                .iter()
                .map(|o| i64::from(inst.time(o.specimen, o.op, machine.line)))
                .max()
                .unwrap_or(0);
            let start = free_at.max(arrival);
            let completion = start + processing_time;
            for o in ops {
                available[o.specimen as usize - 1][o.op - 1] = if o.op > 1 {
                    done[&OpRef {
                        specimen: o.specimen,
                        op: o.op - 1,
                    }]
                } else {
                    0
                };
                done.insert(*o, completion);
            }
            batches.push(Batch {
                machine,
                position: next + 1,
                members: ops.clone(),
                processing_time,
                start,
                completion,
            });
            cursor.insert(machine, (next + 1, completion));
            progressed = true;
        }
        if !progressed {
            break;
        }
    }
    if done.len() != op_batch.len() {
        return Err(infeasible(
            12,
            "machine sequences and routes form a cycle; some batches can never start",
        ));
    }

    batches.sort_by_key(|b| (b.machine, b.position));
    let tat: Vec<i64> = inst
        .specimens
        .iter()
        .map(|s| {
            done[&OpRef {
                specimen: s.id,
                op: s.route.len(),
            }]
        })
        .collect();
    let mtat = mean_tat(&tat);
    Ok(Schedule {
        line_of,
        batches,
        available,
        tat,
        mtat,
    })
}

/// The 1-valued X/Y/Z triples of a schedule, with batch index `d = r`.
pub fn export_assignment(sched: &Schedule) -> Assignment {
    let mut asg = Assignment::default();
    for (i, &line) in sched.line_of.iter().enumerate() {
        asg.x.insert(XVar {
            specimen: i as u32 + 1,
            line,
        });
    }
    for b in &sched.batches {
        asg.z.insert(ZVar {
            machine: b.machine,
            batch: b.position,
            position: b.position,
        });
        for m in &b.members {
            asg.y.insert(YVar {
                specimen: m.specimen,
                op: m.op,
                machine: b.machine,
                batch: b.position,
            });
        }
    }
    asg
}
