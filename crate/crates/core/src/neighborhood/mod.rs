//! Move operators on specimen sequences.
//!
//! Positions and block indices are 0-based. A [`Move`] always stores its two
//! positions (or blocks) in ascending order.

mod blocks;
mod distance;
mod theory;

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use blocks::{block_count, split_blocks, BlockMode, BlockPartition, DEFAULT_BLOCK_SIZE};
pub use distance::{discordant_pairs, jpr_distance};
pub use theory::{
    empirical_moments, exhaustive_moments, scattered_block_bounds, theoretical_moments, DistanceMoments,
    ScatteredBlockBounds,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MoveKind {
    #[serde(rename = "ins")]
    Insert,
    #[serde(rename = "swp")]
    Swap,
    #[serde(rename = "inv")]
    Inverse,
    #[serde(rename = "inb")]
    BlockInsert,
}

impl MoveKind {
    pub const ALL: [MoveKind; 4] = [
        MoveKind::Insert,
        MoveKind::Swap,
        MoveKind::Inverse,
        MoveKind::BlockInsert,
    ];

    pub fn code(self) -> &'static str {
        match self {
            MoveKind::Insert => "ins",
            MoveKind::Swap => "swp",
            MoveKind::Inverse => "inv",
            MoveKind::BlockInsert => "inb",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for MoveKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ins" | "insert" => Ok(MoveKind::Insert),
            "swp" | "swap" => Ok(MoveKind::Swap),
            "inv" | "inverse" => Ok(MoveKind::Inverse),
            "inb" | "block-insert" => Ok(MoveKind::BlockInsert),
            _ => Err(Error::invalid(format!("unknown move kind `{s}`"))),
        }
    }
}

/// Which elements an inverse move reverses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InverseSpan {
    /// Only the elements strictly between the two positions.
    #[default]
    Exclusive,
    /// The two chosen positions are reversed as well.
    Inclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Move {
    pub kind: MoveKind,
    pub first: usize,
    pub second: usize,
}

impl Move {
    pub fn new(kind: MoveKind, a: usize, b: usize) -> Result<Self> {
        if a == b {
            return Err(Error::invalid(format!(
                "{kind} needs two distinct positions, got {a} twice"
            )));
        }
        Ok(Self {
            kind,
            first: a.min(b),
            second: a.max(b),
        })
    }
}

/// Applies `mv` in place. Block moves need `blocks`.
pub fn apply_move_in_place(
    seq: &mut Vec<u32>,
    mv: Move,
    blocks: Option<&BlockPartition>,
    span: InverseSpan,
) -> Result<()> {
    let (a, b) = (mv.first, mv.second);
    if a >= b {
        return Err(Error::invalid("move positions must be distinct and ordered"));
    }
    match mv.kind {
        MoveKind::BlockInsert => {
            let blocks = blocks.ok_or_else(|| Error::invalid("block insert needs a block partition"))?;
            blocks.insert_block(seq, a, b)
        }
        _ if b >= seq.len() => Err(Error::invalid(format!(
            "position {b} outside sequence of length {}",
            seq.len()
        ))),
        MoveKind::Insert => {
            let moved = seq.remove(b);
            seq.insert(a, moved);
            Ok(())
        }
        MoveKind::Swap => {
            seq.swap(a, b);
            Ok(())
        }
        MoveKind::Inverse => {
            match span {
                InverseSpan::Exclusive => seq[a + 1..b].reverse(),
                InverseSpan::Inclusive => seq[a..=b].reverse(),
            }
            Ok(())
        }
    }
}

pub fn apply_move(seq: &[u32], mv: Move, blocks: Option<&BlockPartition>) -> Result<Vec<u32>> {
    let mut out = seq.to_vec();
    apply_move_in_place(&mut out, mv, blocks, InverseSpan::Exclusive)?;
    Ok(out)
}

/// Uniform unordered pair of distinct indices from `0..n`.
pub fn sample_pair<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<(usize, usize)> {
    if n < 2 {
        return Err(Error::invalid(format!(
            "need at least 2 elements to pick a pair, got {n}"
        )));
    }
    let a = rng.gen_range(0..n);
    let mut b = rng.gen_range(0..n - 1);
    if b >= a {
        b += 1;
    }
    Ok((a.min(b), a.max(b)))
}

/// Uniform move of `kind` over a sequence of length `n` (or over the blocks of `blocks`).
pub fn sample_move<R: Rng + ?Sized>(
    kind: MoveKind,
    n: usize,
    blocks: Option<&BlockPartition>,
    rng: &mut R,
) -> Result<Move> {
    let range = match kind {
        MoveKind::BlockInsert => blocks
            .ok_or_else(|| Error::invalid("block insert needs a block partition"))?
            .len(),
        _ => n,
    };
    let (first, second) = sample_pair(range, rng)?;
    Ok(Move { kind, first, second })
}

/// Block size actually used for `n` specimens: `block_size`, unless that gives a single block.
pub fn effective_block_size(n: usize, block_size: usize) -> usize {
    let size = block_size.max(1);
    if n >= 2 && block_count(n, size) < 2 {
        n.div_ceil(2)
    } else {
        size
    }
}

/// A move operator bound to its block and inverse settings.
#[derive(Debug, Clone)]
pub struct Neighborhood {
    pub kind: MoveKind,
    pub span: InverseSpan,
    pub block_mode: BlockMode,
    pub block_size: usize,
    blocks: Option<BlockPartition>,
}

impl Neighborhood {
    /// Block membership (fixed mode) is taken from `start`. A block size that would
    /// leave fewer than two blocks is reduced to `ceil(n / 2)`.
    pub fn new(kind: MoveKind, start: &[u32], block_size: usize, block_mode: BlockMode, span: InverseSpan) -> Self {
        let block_size = effective_block_size(start.len(), block_size);
        let blocks = (kind == MoveKind::BlockInsert).then(|| split_blocks(start, block_size));
        Self {
            kind,
            span,
            block_mode,
            block_size,
            blocks,
        }
    }

    pub fn blocks(&self) -> Option<&BlockPartition> {
        self.blocks.as_ref()
    }

    /// Whether a move exists at all (two elements, or two blocks).
    pub fn has_moves(&self, n: usize) -> bool {
        match &self.blocks {
            Some(b) => b.len() >= 2,
            None => n >= 2,
        }
    }

    /// Samples and applies one move; returns the neighbor.
    pub fn neighbor<R: Rng + ?Sized>(&mut self, current: &[u32], rng: &mut R) -> Result<Vec<u32>> {
        if self.kind == MoveKind::BlockInsert && self.block_mode == BlockMode::Resplit {
            self.blocks = Some(split_blocks(current, self.block_size));
        }
        let mv = sample_move(self.kind, current.len(), self.blocks.as_ref(), rng)?;
        let mut out = current.to_vec();
        apply_move_in_place(&mut out, mv, self.blocks.as_ref(), self.span)?;
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng;

    #[test]
    fn swap_example() {
        let mv = Move::new(MoveKind::Swap, 0, 2).unwrap();
        assert_eq!(apply_move(&[1, 2, 3], mv, None).unwrap(), vec![3, 2, 1]);
    }

    #[test]
    fn inverse_excludes_endpoints() {
        let mv = Move::new(MoveKind::Inverse, 0, 4).unwrap();
        assert_eq!(apply_move(&[1, 2, 3, 4, 5], mv, None).unwrap(), vec![1, 4, 3, 2, 5]);
        let mut inclusive = vec![1, 2, 3, 4, 5];
        apply_move_in_place(&mut inclusive, mv, None, InverseSpan::Inclusive).unwrap();
        assert_eq!(inclusive, vec![5, 4, 3, 2, 1]);
        // adjacent positions: nothing between them
        let adj = Move::new(MoveKind::Inverse, 1, 2).unwrap();
        assert_eq!(apply_move(&[1, 2, 3], adj, None).unwrap(), vec![1, 2, 3]);
    }

    #[test]
    fn insert_moves_back_before_front() {
        // select 1 and 5, 5 goes in front of 1
        let mv = Move::new(MoveKind::Insert, 4, 0).unwrap();
        assert_eq!(
            apply_move(&[1, 2, 3, 4, 5, 6], mv, None).unwrap(),
            vec![5, 1, 2, 3, 4, 6]
        );
    }

    #[test]
    fn block_insert_contiguous() {
        let seq = [1, 2, 3, 4, 5, 6];
        let blocks = split_blocks(&seq, 2);
        let mv = Move::new(MoveKind::BlockInsert, 1, 2).unwrap();
        assert_eq!(apply_move(&seq, mv, Some(&blocks)).unwrap(), vec![1, 2, 5, 6, 3, 4]);
    }

    #[test]
    fn tiny_sequences_keep_two_blocks() {
        assert_eq!(effective_block_size(100, 4), 4);
        assert_eq!(effective_block_size(2, 4), 1);
        assert_eq!(effective_block_size(4, 4), 2);
        assert_eq!(effective_block_size(6, 4), 4);
        let mut nb = Neighborhood::new(
            MoveKind::BlockInsert,
            &[1, 2],
            4,
            BlockMode::Fixed,
            InverseSpan::Exclusive,
        );
        let mut r = rng::stream(0, &[]);
        assert_eq!(nb.neighbor(&[1, 2], &mut r).unwrap(), vec![2, 1]);
    }

    #[test]
    fn equal_positions_rejected() {
        assert!(Move::new(MoveKind::Swap, 3, 3).is_err());
        let mut r = rng::stream(0, &[]);
        assert!(sample_move(MoveKind::Swap, 1, None, &mut r).is_err());
    }

    #[test]
    fn two_elements_single_pair() {
        let mut r = rng::stream(1, &[]);
        for _ in 0..100 {
            assert_eq!(sample_pair(2, &mut r).unwrap(), (0, 1));
        }
    }

    #[test]
    fn block_pairs_stay_in_range() {
        let seq: Vec<u32> = (1..=9).collect();
        let blocks = split_blocks(&seq, 3);
        let mut r = rng::stream(2, &[]);
        for _ in 0..200 {
            let mv = sample_move(MoveKind::BlockInsert, 9, Some(&blocks), &mut r).unwrap();
            assert!(matches!((mv.first, mv.second), (0, 1) | (0, 2) | (1, 2)));
        }
    }

    #[test]
    fn pair_frequencies_are_uniform() {
        let mut r = rng::stream(3, &[]);
        let mut counts = [[0u32; 5]; 5];
        let draws = 100_000;
        for _ in 0..draws {
            let (a, b) = sample_pair(5, &mut r).unwrap();
            counts[a][b] += 1;
        }
        for a in 0..5 {
            for b in a + 1..5 {
                let f = f64::from(counts[a][b]) / draws as f64;
                assert!((f - 0.1).abs() < 0.01, "({a},{b}) -> {f}");
            }
        }
    }
}
