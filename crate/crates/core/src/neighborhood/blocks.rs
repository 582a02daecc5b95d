use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_BLOCK_SIZE: usize = 4;

/// How block membership evolves while a search applies block moves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BlockMode {
    /// Membership is fixed once; blocks may become scattered after moves.
    #[default]
    Fixed,
    /// The current sequence is re-cut into consecutive blocks before every move.
    Resplit,
}

impl FromStr for BlockMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fixed" => Ok(BlockMode::Fixed),
            "resplit" => Ok(BlockMode::Resplit),
            _ => Err(Error::invalid(format!("unknown block mode `{s}` (fixed|resplit)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockPartition {
    pub block_size: usize,
    pub blocks: Vec<Vec<u32>>,
}

pub fn block_count(n: usize, block_size: usize) -> usize {
    n.div_ceil(block_size.max(1))
}

/// Cuts `seq` into consecutive groups of `block_size`; the last one takes the residue.
pub fn split_blocks(seq: &[u32], block_size: usize) -> BlockPartition {
    let block_size = block_size.max(1);
    BlockPartition {
        block_size,
        blocks: seq.chunks(block_size).map(<[u32]>::to_vec).collect(),
    }
}

impl BlockPartition {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_of(&self, id: u32) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(&id))
    }

    /// Moves every member of the back block, keeping their order, in front of the
    /// first element of the front block. Front is whichever block shows up first in `seq`.
    pub fn insert_block(&self, seq: &mut Vec<u32>, a: usize, b: usize) -> Result<()> {
        if a == b {
            return Err(Error::invalid(format!(
                "block insert needs two distinct blocks, got {a} twice"
            )));
        }
        let nb = self.blocks.len();
        if a >= nb || b >= nb {
            return Err(Error::invalid(format!(
                "block index out of range ({a}, {b}) with {nb} blocks"
            )));
        }
        let max_id = seq.iter().copied().max().unwrap_or(0) as usize;
        let mut owner = vec![usize::MAX; max_id + 1];
        for (bi, blk) in self.blocks.iter().enumerate() {
            for &id in blk {
                if (id as usize) <= max_id {
                    owner[id as usize] = bi;
                }
            }
        }
        let first_of = |blk: usize| seq.iter().position(|&id| owner[id as usize] == blk);
        let (fa, fb) = match (first_of(a), first_of(b)) {
            (Some(x), Some(y)) => (x, y),
            _ => return Err(Error::invalid("block members missing from sequence")),
        };
        let (front_pos, back) = if fa < fb { (fa, b) } else { (fb, a) };
        let moved: Vec<u32> = seq.iter().copied().filter(|&id| owner[id as usize] == back).collect();
        seq.retain(|&id| owner[id as usize] != back);
        seq.splice(front_pos..front_pos, moved);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_shapes() {
        let p = split_blocks(&[1, 2, 3, 4, 5, 6], 2);
        assert_eq!(p.blocks, vec![vec![1, 2], vec![3, 4], vec![5, 6]]);
        let seq: Vec<u32> = (1..=100).collect();
        assert_eq!(split_blocks(&seq, DEFAULT_BLOCK_SIZE).len(), 25);
        let p = split_blocks(&[1, 2, 3, 4, 5, 6, 7], 4);
        assert_eq!(p.blocks.iter().map(Vec::len).collect::<Vec<_>>(), vec![4, 3]);
        assert_eq!(block_count(7, 4), 2);
    }

    #[test]
    fn scattered_block_insert() {
        // blocks {1,2,3} {4,5,6} {7,8,9}, already scattered
        let p = BlockPartition {
            block_size: 3,
            blocks: vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]],
        };
        let mut seq = vec![1, 4, 7, 2, 5, 8, 3, 6, 9];
        p.insert_block(&mut seq, 2, 1).unwrap();
        assert_eq!(seq, vec![1, 7, 8, 9, 4, 2, 5, 3, 6]);
    }

    #[test]
    fn order_of_arguments_irrelevant() {
        let p = split_blocks(&[1, 2, 3, 4, 5, 6], 2);
        let mut x = vec![1, 2, 3, 4, 5, 6];
        let mut y = x.clone();
        p.insert_block(&mut x, 0, 2).unwrap();
        p.insert_block(&mut y, 2, 0).unwrap();
        assert_eq!(x, y);
        assert_eq!(x, vec![5, 6, 1, 2, 3, 4]);
        assert!(p.insert_block(&mut x, 1, 1).is_err());
    }
}
