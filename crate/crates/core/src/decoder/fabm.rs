//! First Available Batch Machine decoding.
//!
//! Operations are dispatched stage by stage. Within a stage, specimens are
//! taken in order of arrival (completion of their previous operation), ties
//! broken by sequence position. Each operation goes to an available eligible
//! machine, preferring the one left closest to full after adding it; when every
//! eligible machine is busy it queues on the one that frees up first. A
//! machine's queue is cut into capacity-sized batches in arrival order; a batch
//! is closed as soon as it is full, residual batches at the end of the stage,
//! and each starts once the machine is free and all of its members have arrived.
//! The first operation fixes the specimen's line.

use rand::seq::SliceRandom;

use super::{mean_tat, Batch, OpRef, Schedule, TiePolicy};
use crate::error::{Error, Result};
use crate::instance::{Instance, MachineId, StageKind};
use crate::rng::{self, SearchRng};

struct MachineState {
    id: MachineId,
    capacity: usize,
    free_at: i64,
    open: Vec<(u32, i64)>,
    batches: usize,
}

enum TieState<'a> {
    Random(SearchRng),
    Lowest,
    Recorded(&'a [MachineId], usize),
}

impl TieState<'_> {
    fn pick(&mut self, tied: &[usize], machines: &[MachineState]) -> usize {
        match self {
            TieState::Random(r) => *tied.choose(r).expect("tie set is non-empty"),
            TieState::Lowest => tied[0],
            TieState::Recorded(list, next) => {
                let wanted = list.get(*next).copied();
                *next += 1;
                wanted
                    .and_then(|w| tied.iter().copied().find(|&m| machines[m].id == w))
                    .unwrap_or(tied[0])
            }
        }
    }
}

/// Raw decoding of an arbitrary subsequence of distinct specimen ids.
pub(crate) struct PartialDecode {
    pub batches: Vec<Batch>,
    /// Indexed by `id - 1`; 0 for specimens outside the sequence.
    pub line_of: Vec<usize>,
    pub available: Vec<Vec<i64>>,
    pub tat: Vec<i64>,
    pub total_tat: i64,
}

impl PartialDecode {
    pub fn total_idle(&self) -> i64 {
        super::idle_time(&self.batches)
    }
}

pub(crate) fn decode_partial(inst: &Instance, seq: &[u32], tie: &TiePolicy) -> Result<PartialDecode> {
    let n = inst.specimen_count();
    let mut rank = vec![usize::MAX; n];
    for (pos, &id) in seq.iter().enumerate() {
        let slot = (id as usize)
            .checked_sub(1)
            .filter(|&i| i < n)
            .ok_or_else(|| Error::invalid(format!("specimen {id} is not in {}", inst.name)))?;
        if rank[slot] != usize::MAX {
            return Err(Error::invalid(format!("specimen {id} appears twice")));
        }
        rank[slot] = pos;
    }

    let mut machines = Vec::new();
    // groups[line][stage] -> indices into `machines`
    let mut groups = vec![vec![Vec::new(); StageKind::ALL.len()]; inst.lines.len()];
    for (l, line) in inst.lines.iter().enumerate() {
        for m in &line.machines {
            if m.capacity == 0 {
                return Err(Error::invalid(format!("{} has capacity 0", m.id)));
            }
            groups[l][m.stage.index()].push(machines.len());
            machines.push(MachineState {
                id: m.id,
                capacity: m.capacity as usize,
                free_at: 0,
                open: Vec::new(),
                batches: 0,
            });
        }
    }

    let mut tie_state = match tie {
        TiePolicy::SeededRandom { seed } => TieState::Random(rng::stream(*seed, &[])),
        TiePolicy::LowestIndex => TieState::Lowest,
        TiePolicy::Recorded(list) => TieState::Recorded(list, 0),
    };

    let route_len = |id: u32| inst.specimens[id as usize - 1].route.len();
    let max_ops = seq.iter().map(|&id| route_len(id)).max().unwrap_or(0);

    let mut line_of = vec![0usize; n];
    let mut ready = vec![0i64; n];
    let mut available: Vec<Vec<i64>> = inst.specimens.iter().map(|s| vec![0; s.route.len()]).collect();
    let mut batches = Vec::new();
    let mut order: Vec<u32> = Vec::with_capacity(seq.len());
    let mut candidates: Vec<usize> = Vec::new();
    let mut tied: Vec<usize> = Vec::new();

    for op in 1..=max_ops {
        order.clear();
        order.extend(seq.iter().copied().filter(|&id| route_len(id) >= op));
        order.sort_by_key(|&id| (ready[id as usize - 1], rank[id as usize - 1]));

        for &id in &order {
            let i = id as usize - 1;
            let stage = inst.specimens[i].route[op - 1];
            candidates.clear();
            if op == 1 {
                for g in &groups {
                    candidates.extend_from_slice(&g[stage.index()]);
                }
            } else {
                candidates.extend_from_slice(&groups[line_of[i] - 1][stage.index()]);
            }
            if candidates.is_empty() {
                return Err(Error::invalid(format!("no eligible {stage} machine for specimen {id}")));
            }

            let t = ready[i];
            let mut best_remaining = i64::MAX;
            tied.clear();
            for &m in &candidates {
                let st = &machines[m];
                if st.open.is_empty() && st.free_at > t {
                    continue;
                }
                let remaining = st.capacity as i64 - st.open.len() as i64 - 1;
                if remaining < best_remaining {
                    best_remaining = remaining;
                    tied.clear();
                }
                if remaining == best_remaining {
                    tied.push(m);
                }
            }
            let chosen = match tied.len() {
                0 => *candidates
                    .iter()
                    .min_by_key(|&&m| (machines[m].free_at, m))
                    .expect("candidates is non-empty"),
                1 => tied[0],
                _ => tie_state.pick(&tied, &machines),
            };

            if op == 1 {
                line_of[i] = machines[chosen].id.line;
            }
            available[i][op - 1] = t;
            machines[chosen].open.push((id, t));
            if machines[chosen].open.len() == machines[chosen].capacity {
                close_batch(inst, &mut machines[chosen], op, &mut ready, &mut batches);
            }
        }

        for st in &mut machines {
            if !st.open.is_empty() {
                close_batch(inst, st, op, &mut ready, &mut batches);
            }
        }
    }

    batches.sort_by_key(|b: &Batch| (b.machine, b.position));
    let mut tat = vec![0i64; n];
    let mut total = 0;
    for &id in seq {
        let i = id as usize - 1;
        tat[i] = ready[i];
        total += ready[i];
    }
    Ok(PartialDecode {
        batches,
        line_of,
        available,
        tat,
        total_tat: total,
    })
}

fn close_batch(inst: &Instance, st: &mut MachineState, op: usize, ready: &mut [i64], batches: &mut Vec<Batch>) {
    let line = st.id.line;
    let arrival = st.open.iter().map(|&(_, a)| a).max().unwrap_or(0);
    let processing_time = st
        .open
        .iter()
        .map(|&(id, _)| i64::from(inst.time(id, op, line)))
        .max()
        .unwrap_or(0);
    let start = st.free_at.max(arrival);
    let completion = start + processing_time;
    st.free_at = completion;
    st.batches += 1;
    let members = st
        .open
        .drain(..)
        .map(|(id, _)| {
            ready[id as usize - 1] = completion;
            OpRef { specimen: id, op }
        })
        .collect();
    batches.push(Batch {
        machine: st.id,
        position: st.batches,
        members,
        processing_time,
        start,
        completion,
    });
}

/// Decodes a full specimen permutation into a feasible schedule.
pub fn decode_fabm(inst: &Instance, vss: &[u32], tie: &TiePolicy) -> Result<Schedule> {
    if vss.len() != inst.specimen_count() {
        return Err(Error::invalid(format!(
            "sequence has {} ids, instance {} has {} specimens",
            vss.len(),
            inst.name,
            inst.specimen_count()
        )));
    }
    let raw = decode_partial(inst, vss, tie)?;
    let mtat = mean_tat(&raw.tat);
    Ok(Schedule {
        line_of: raw.line_of,
        batches: raw.batches,
        available: raw.available,
        tat: raw.tat,
        mtat,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{example6, worked_example_ties, EXAMPLE6_SEQUENCE};

    fn batch_time(s: &Schedule, l: usize, k: usize) -> Vec<i64> {
        s.batches_on(MachineId::new(l, k)).map(|b| b.processing_time).collect()
    }

    #[test]
    fn worked_example_first_stage() {
        let inst = example6();
        let s = decode_fabm(&inst, &EXAMPLE6_SEQUENCE, &worked_example_ties()).unwrap();
        let on = |l, k| -> Vec<Vec<u32>> {
            s.batches_on(MachineId::new(l, k))
                .map(|b| b.members.iter().map(|o| o.specimen).collect())
                .collect()
        };
        assert_eq!(on(2, 1), vec![vec![3, 1]]);
        assert_eq!(on(1, 2), vec![vec![6, 4]]);
        assert_eq!(on(2, 2), vec![vec![5, 2]]);
        assert_eq!(batch_time(&s, 2, 1), vec![332]);
        assert_eq!(batch_time(&s, 2, 2), vec![356]);
        // decapper on line 2: 3 before 1 (capacity 1), then 5, 2
        assert_eq!(on(2, 3), vec![vec![3], vec![1], vec![5], vec![2]]);
        assert_eq!(on(1, 3), vec![vec![6], vec![4]]);
        assert_eq!(s.line_of, vec![2, 2, 2, 1, 2, 1]);
        assert_eq!(s.mtat_display(), "1569.50");
    }

    #[test]
    fn single_specimen_is_sum_of_times() {
        let mut inst = example6();
        inst.specimens.truncate(1);
        inst.times = {
            let mut t = crate::instance::ProcessingTimes::new(1, 4, 2);
            for j in 1..=4 {
                for l in 1..=2 {
                    t.set(1, j, l, example6().time(1, j, l)).unwrap();
                }
            }
            t
        };
        let s = decode_fabm(&inst, &[1], &TiePolicy::LowestIndex).unwrap();
        let line = s.line_of[0];
        let sum: i64 = (1..=4).map(|j| i64::from(inst.time(1, j, line))).sum();
        assert_eq!(s.tat, vec![sum]);
        assert_eq!(s.mtat, sum as f64);
    }

    #[test]
    fn rejects_non_permutations() {
        let inst = example6();
        let tie = TiePolicy::LowestIndex;
        assert!(decode_fabm(&inst, &[1, 2, 3], &tie).is_err());
        assert!(decode_fabm(&inst, &[1, 1, 2, 3, 4, 5], &tie).is_err());
        assert!(decode_fabm(&inst, &[1, 2, 3, 4, 5, 7], &tie).is_err());
    }

    #[test]
    fn seeded_random_is_deterministic() {
        let inst = example6();
        let tie = TiePolicy::SeededRandom { seed: 42 };
        let a = decode_fabm(&inst, &EXAMPLE6_SEQUENCE, &tie).unwrap();
        let b = decode_fabm(&inst, &EXAMPLE6_SEQUENCE, &tie).unwrap();
        assert_eq!(a, b);
    }
}
