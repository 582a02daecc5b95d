use serde::Serialize;

use super::{apply_move_in_place, distance::discordant_pairs, sample_move, split_blocks, InverseSpan, Move, MoveKind};
use crate::error::{Error, Result};
use crate::rng;

/// Mean and variance of the distance between a sequence and a random neighbor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DistanceMoments {
    pub mean: f64,
    pub variance: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScatteredBlockBounds {
    pub mean_lower: f64,
    pub mean_upper: f64,
    pub var_lower: f64,
    pub var_upper: f64,
}

fn check_blocks(n: usize, b: usize) -> Result<()> {
    if b < 2 {
        return Err(Error::invalid(format!("need at least 2 blocks, got {b}")));
    }
    if !n.is_multiple_of(b) {
        return Err(Error::invalid(format!(
            "{n} specimens do not split into {b} equal blocks"
        )));
    }
    Ok(())
}

/// Closed-form moments for a uniformly sampled move. `blocks` is the block count `b`
/// and is only read for block insert.
pub fn theoretical_moments(kind: MoveKind, n: usize, blocks: Option<usize>) -> Result<DistanceMoments> {
    if n < 2 {
        return Err(Error::invalid(format!("moments need n >= 2, got {n}")));
    }
    let nf = n as f64;
    let nn1 = nf * (nf - 1.0);
    let (mean, variance) = match kind {
        MoveKind::Inverse => (
            (nf - 2.0) * (nf - 3.0) / (6.0 * nn1),
            (nf + 1.0) * (nf - 2.0) * (nf - 3.0) * (7.0 * nf - 18.0) / (180.0 * nn1 * nn1),
        ),
        MoveKind::Insert => (
            2.0 * (nf + 1.0) / (3.0 * nn1),
            2.0 * (nf + 1.0) * (nf - 2.0) / (9.0 * nn1 * nn1),
        ),
        MoveKind::Swap => (
            2.0 * (2.0 * nf - 1.0) / (3.0 * nn1),
            8.0 * (nf + 1.0) * (nf - 2.0) / (9.0 * nn1 * nn1),
        ),
        MoveKind::BlockInsert => {
            let b = blocks.ok_or_else(|| Error::invalid("block insert moments need a block count"))?;
            check_blocks(n, b)?;
            let bf = b as f64;
            let n1 = nf - 1.0;
            (
                2.0 * nf * (bf + 1.0) / (3.0 * bf * bf * n1),
                2.0 * (bf + 1.0) * (bf - 2.0) * nf * nf / (9.0 * bf.powi(4) * n1 * n1),
            )
        }
    };
    Ok(DistanceMoments { mean, variance })
}

/// Bounds on the block-insert moments once blocks have become scattered.
pub fn scattered_block_bounds(n: usize, b: usize) -> Result<ScatteredBlockBounds> {
    check_blocks(n, b)?;
    let nf = n as f64;
    let bf = b as f64;
    let n1 = nf - 1.0;
    let b2 = bf * bf;
    let b4 = b2 * b2;

    let mean_upper = ((4.0 * bf + 1.0) * nf + (-2.0 * bf + 1.0) * bf) / (3.0 * b2 * n1);
    let mean_lower = (3.0 * nf + (2.0 * bf - 1.0) * bf) / (3.0 * b2 * n1);

    let up = 6.0 * (3.0 * b2 + bf - 2.0) * nf * nf
        - 6.0 * (bf - 2.0) * (bf + 1.0) * bf * nf
        - 2.0 * (5.0 * bf + 2.0) * (bf + 1.0) * b2;
    let var_upper = (up / (9.0 * b4 * n1 * n1)).min(1.0);

    let lo = (-80.0 * b4 - 4.0 * b2 * bf - 89.0 * b2 + bf + 6.0) * nf * nf
        + 5.0 * (-16.0 * b2 + 4.0 * bf + 5.0) * (bf - 1.0) * b2 * nf
        + 5.0 * (4.0 * b4 - 8.0 * b2 * bf + 5.0 * b2 + bf - 1.0) * b2;
    let var_lower = (lo / (45.0 * n1 * n1 * b4 * bf * (bf - 1.0))).max(0.0);

    Ok(ScatteredBlockBounds {
        mean_lower,
        mean_upper,
        var_lower,
        var_upper,
    })
}

fn moves_of(kind: MoveKind, range: usize) -> impl Iterator<Item = Move> {
    (0..range).flat_map(move |a| {
        (a + 1..range).map(move |b| Move {
            kind,
            first: a,
            second: b,
        })
    })
}

/// Moments over every move of `kind` applied to the identity sequence of length `n`.
/// Returns the mean and population variance together with the raw sums
/// `(Σd, Σd², moves)` of discordant-pair counts, so callers can compare exactly.
pub fn exhaustive_moments(
    kind: MoveKind,
    n: usize,
    block_size: usize,
) -> Result<(DistanceMoments, (u128, u128, u128))> {
    if n < 2 {
        return Err(Error::invalid(format!("moments need n >= 2, got {n}")));
    }
    let base: Vec<u32> = (1..=n as u32).collect();
    let partition = (kind == MoveKind::BlockInsert).then(|| split_blocks(&base, block_size));
    let range = partition.as_ref().map_or(n, |p| p.len());
    if range < 2 {
        return Err(Error::invalid("fewer than two movable units"));
    }
    let (mut s1, mut s2, mut count) = (0u128, 0u128, 0u128);
    for mv in moves_of(kind, range) {
        let mut seq = base.clone();
        apply_move_in_place(&mut seq, mv, partition.as_ref(), InverseSpan::Exclusive)?;
        let d = u128::from(discordant_pairs(&base, &seq)?);
        s1 += d;
        s2 += d * d;
        count += 1;
    }
    let pairs = (n * (n - 1) / 2) as f64;
    let mean = s1 as f64 / count as f64 / pairs;
    let m2 = s2 as f64 / count as f64 / (pairs * pairs);
    Ok((
        DistanceMoments {
            mean,
            variance: (m2 - mean * mean).max(0.0),
        },
        (s1, s2, count),
    ))
}

/// Monte-Carlo moments from `samples` uniform moves on a fixed sequence.
/// Variance is the unbiased sample variance.
pub fn empirical_moments(
    kind: MoveKind,
    n: usize,
    block_size: usize,
    samples: usize,
    seed: u64,
) -> Result<DistanceMoments> {
    if samples == 0 {
        return Err(Error::invalid("need at least one sample"));
    }
    if n < 2 {
        return Err(Error::invalid(format!("moments need n >= 2, got {n}")));
    }
    let base: Vec<u32> = (1..=n as u32).collect();
    let partition = (kind == MoveKind::BlockInsert).then(|| split_blocks(&base, block_size));
    let mut r = rng::stream(seed, &[kind.index() as u64, n as u64]);
    let pairs = (n * (n - 1) / 2) as f64;
    let (mut mean, mut m2) = (0.0f64, 0.0f64);
    let mut seq = base.clone();
    for k in 1..=samples {
        let mv = sample_move(kind, n, partition.as_ref(), &mut r)?;
        seq.copy_from_slice(&base);
        apply_move_in_place(&mut seq, mv, partition.as_ref(), InverseSpan::Exclusive)?;
        let d = discordant_pairs(&base, &seq)? as f64 / pairs;
        let delta = d - mean;
        mean += delta / k as f64;
        m2 += delta * (d - mean);
    }
    let variance = if samples > 1 { m2 / (samples - 1) as f64 } else { 0.0 };
    Ok(DistanceMoments { mean, variance })
}
