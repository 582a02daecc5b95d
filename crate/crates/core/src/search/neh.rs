use std::cmp::Reverse;

use serde::Serialize;

use super::anneal::random_permutation;
use super::evaluator::Evaluator;
use crate::decoder::TiePolicy;
use crate::error::Result;
use crate::instance::Instance;
use crate::neighborhood::split_blocks;
use crate::rng::{self, SearchRng};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NehOutcome {
    pub sequence: Vec<u32>,
    pub mtat: f64,
    pub evaluations: u64,
    /// Blocks in the order they were inserted.
    pub insertion_order: Vec<Vec<u32>>,
}

/// Block-based NEH. A seeded random sequence is cut into blocks, blocks are ranked by
/// descending total processing time and each is inserted where the partial schedule
/// has the lowest total turnaround (then lowest idle time, when enabled).
pub fn neh_b(
    inst: &Instance,
    block_size: usize,
    idle_tiebreak: bool,
    seed: u64,
    tie: &TiePolicy,
) -> Result<NehOutcome> {
    let mut ev = Evaluator::new(inst, tie.clone(), u64::MAX);
    let mut rng = rng::stream(seed, &[0x4E48]);
    let out = construct(&mut ev, block_size, idle_tiebreak, &mut rng)?;
    Ok(out.expect("unlimited budget"))
}

/// `None` when the evaluator ran out before the sequence was complete.
pub(crate) fn construct(
    ev: &mut Evaluator,
    block_size: usize,
    idle_tiebreak: bool,
    rng: &mut SearchRng,
) -> Result<Option<NehOutcome>> {
    let inst = ev.instance();
    let n = inst.specimen_count();
    let used_before = ev.used();
    let base = random_permutation(n, rng);
    let mut blocks = split_blocks(&base, block_size.max(1)).blocks;
    blocks.sort_by_cached_key(|b| Reverse(b.iter().map(|&id| inst.total_time(id)).sum::<u64>()));

    let mut placed: Vec<&[u32]> = Vec::with_capacity(blocks.len());
    let mut last_tat = None;
    let mut trial = Vec::with_capacity(n);
    for (k, blk) in blocks.iter().enumerate() {
        if k == 0 {
            placed.push(blk);
            continue;
        }
        let mut best: Option<((i64, i64), usize)> = None;
        for pos in 0..=placed.len() {
            trial.clear();
            for (q, b) in placed.iter().enumerate() {
                if q == pos {
                    trial.extend_from_slice(blk);
                }
                trial.extend_from_slice(b);
            }
            if pos == placed.len() {
                trial.extend_from_slice(blk);
            }
            let Some((tat, idle)) = ev.evaluate_partial(&trial)? else {
                return Ok(None);
            };
            let key = (tat, if idle_tiebreak { idle } else { 0 });
            if best.is_none_or(|(b, _)| key < b) {
                best = Some((key, pos));
            }
        }
        let ((tat, _), pos) = best.expect("at least one position");
        placed.insert(pos, blk);
        last_tat = Some(tat);
    }

    let sequence: Vec<u32> = placed.concat();
    let mtat = match last_tat {
        Some(t) => t as f64 / n as f64,
        None => match ev.evaluate(&sequence)? {
            Some(f) => f,
            None => return Ok(None),
        },
    };
    Ok(Some(NehOutcome {
        sequence,
        mtat,
        evaluations: ev.used() - used_before,
        insertion_order: blocks,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decoder::decode_fabm;
    use crate::fixtures::example6;

    #[test]
    fn classic_order_is_by_total_time() {
        let inst = example6();
        let out = neh_b(&inst, 1, false, 3, &TiePolicy::LowestIndex).unwrap();
        let totals: Vec<u64> = out.insertion_order.iter().map(|b| inst.total_time(b[0])).collect();
        assert!(totals.windows(2).all(|w| w[0] >= w[1]));
        assert_eq!(out.evaluations, 6 * 7 / 2 - 1);
    }

    #[test]
    fn reported_mtat_is_decoded_mtat() {
        let inst = example6();
        for bs in 1..=6 {
            let out = neh_b(&inst, bs, true, 11, &TiePolicy::LowestIndex).unwrap();
            let b = 6usize.div_ceil(bs) as u64;
            assert!(out.evaluations <= b * (b + 1) / 2);
            let s = decode_fabm(&inst, &out.sequence, &TiePolicy::LowestIndex).unwrap();
            assert_eq!(s.mtat, out.mtat);
        }
    }
}
