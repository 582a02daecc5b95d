use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::Result;
use crate::instance::Instance;
use crate::rng;
use crate::search::{solve_with, OptimaLog, RunOptions, SolverConfig};

/// Specimen count from which nodes are keyed by hash instead of by sequence.
pub const HASH_KEY_FROM: usize = 100;

/// Identity of a local optimum.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NodeKey {
    Sequence(Vec<u32>),
    /// First 128 bits of SHA-256 over the sequence and its fitness bits.
    Hash(u128),
}

impl NodeKey {
    pub fn of(seq: &[u32], fitness: f64) -> Self {
        if seq.len() < HASH_KEY_FROM {
            return NodeKey::Sequence(seq.to_vec());
        }
        let mut h = Sha256::new();
        for id in seq {
            h.update(id.to_le_bytes());
        }
        h.update(fitness.to_bits().to_le_bytes());
        let digest = h.finalize();
        let mut bytes = [0u8; 16];
        bytes.copy_from_slice(&digest[..16]);
        NodeKey::Hash(u128::from_be_bytes(bytes))
    }
}

impl fmt::Display for NodeKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NodeKey::Sequence(s) => {
                let parts: Vec<String> = s.iter().map(u32::to_string).collect();
                f.write_str(&parts.join("-"))
            }
            NodeKey::Hash(h) => write!(f, "{h:032x}"),
        }
    }
}

/// Node and edge multiset from one or more runs. Merging is associative and commutative.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct LonLog {
    pub nodes: BTreeMap<NodeKey, (f64, u64)>,
    pub edges: BTreeMap<(NodeKey, NodeKey), u64>,
}

impl LonLog {
    /// Log of one run's optima sequence: consecutive optima form edges.
    pub fn from_run(optima: &[(Vec<u32>, f64)]) -> Self {
        let mut log = LonLog::default();
        let mut prev: Option<NodeKey> = None;
        for (seq, f) in optima {
            let key = NodeKey::of(seq, *f);
            log.nodes.entry(key.clone()).or_insert((*f, 0)).1 += 1;
            if let Some(p) = prev.take() {
                if p != key {
                    *log.edges.entry((p, key.clone())).or_insert(0) += 1;
                }
            }
            prev = Some(key);
        }
        log
    }

    pub fn merge(mut self, other: LonLog) -> LonLog {
        for (k, (f, c)) in other.nodes {
            self.nodes.entry(k).or_insert((f, 0)).1 += c;
        }
        for (e, w) in other.edges {
            *self.edges.entry(e).or_insert(0) += w;
        }
        self
    }

    pub fn into_graph(self) -> LonGraph {
        let index: BTreeMap<&NodeKey, usize> = self.nodes.keys().enumerate().map(|(i, k)| (k, i)).collect();
        let mut nodes: Vec<LonNode> = self
            .nodes
            .iter()
            .enumerate()
            .map(|(id, (k, &(fitness, hits)))| LonNode {
                id,
                key: k.to_string(),
                fitness,
                hits,
                in_weight: 0,
            })
            .collect();
        let edges: Vec<LonEdge> = self
            .edges
            .iter()
            .map(|((s, t), &weight)| LonEdge {
                source: index[s],
                target: index[t],
                weight,
            })
            .collect();
        for e in &edges {
            nodes[e.target].in_weight += e.weight;
        }
        LonGraph { nodes, edges }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LonNode {
    pub id: usize,
    pub key: String,
    pub fitness: f64,
    /// Times the optimum was recorded across runs.
    pub hits: u64,
    /// Weighted incoming degree.
    pub in_weight: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LonEdge {
    pub source: usize,
    pub target: usize,
    pub weight: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct LonGraph {
    pub nodes: Vec<LonNode>,
    pub edges: Vec<LonEdge>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LonConfig {
    /// Engine for each run. Its evaluation budget still applies as a hard cap.
    pub solver: SolverConfig,
    pub runs: usize,
    /// Consecutive non-improving evaluations that end a run.
    pub stagnation: u64,
    pub seed: u64,
    /// Also record moves onto distinct solutions equal to the best-so-far.
    pub neutral: bool,
}

impl LonConfig {
    /// Run count and stagnation limit used for instances of up to 8 specimens.
    pub fn toy(solver: SolverConfig, seed: u64) -> Self {
        Self::sized(solver, 1000, 10_000, seed)
    }

    /// Run count and stagnation limit for 100 specimens and up.
    pub fn large(solver: SolverConfig, seed: u64) -> Self {
        Self::sized(solver, 50, 1000, seed)
    }

    fn sized(mut solver: SolverConfig, runs: usize, stagnation: u64, seed: u64) -> Self {
        solver.evals = u64::MAX;
        Self {
            solver,
            runs,
            stagnation,
            seed,
            neutral: false,
        }
    }
}

/// Runs the engine `runs` times in parallel and merges every run's chain of
/// best-so-far improvements into one network.
pub fn build_lon(inst: &Instance, cfg: &LonConfig) -> Result<LonGraph> {
    let opts = RunOptions {
        stagnation: Some(cfg.stagnation.max(1)),
        optima: if cfg.neutral {
            OptimaLog::WithNeutral
        } else {
            OptimaLog::Improvements
        },
        keep_accepted: false,
    };
    let logs: Vec<LonLog> = (0..cfg.runs as u64)
        .into_par_iter()
        .map(|r| {
            let res = solve_with(inst, &cfg.solver, rng::derive_seed(cfg.seed, &[r]), opts)?;
            let chain: Vec<(Vec<u32>, f64)> = res.optima.into_iter().map(|o| (o.sequence, o.mtat)).collect();
            Ok(LonLog::from_run(&chain))
        })
        .collect::<Result<_>>()?;
    Ok(logs.into_iter().fold(LonLog::default(), LonLog::merge).into_graph())
}
