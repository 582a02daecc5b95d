use std::collections::BTreeMap;

use serde::Serialize;

use super::lon::LonGraph;

pub const DEFAULT_PLATEAU_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Plateau {
    pub id: usize,
    /// Node ids, ascending.
    pub nodes: Vec<usize>,
    pub fitness: f64,
    /// No edge leaves the plateau towards a better one.
    pub sink: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlateauGraph {
    pub plateaus: Vec<Plateau>,
    /// Plateau id of every node.
    pub plateau_of: Vec<usize>,
    /// Aggregated weights between distinct plateaus.
    pub edges: Vec<(usize, usize, u64)>,
    pub average_size: f64,
}

impl PlateauGraph {
    pub fn sink_count(&self) -> usize {
        self.plateaus.iter().filter(|p| p.sink).count()
    }
}

fn same_fitness(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs())
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Groups equal-fitness nodes joined by edges (either direction) into plateaus.
/// `tolerance` is relative.
pub fn compress_plateaus(g: &LonGraph, tolerance: f64) -> PlateauGraph {
    let n = g.nodes.len();
    let mut parent: Vec<usize> = (0..n).collect();
    for e in &g.edges {
        if same_fitness(g.nodes[e.source].fitness, g.nodes[e.target].fitness, tolerance) {
            let (a, b) = (find(&mut parent, e.source), find(&mut parent, e.target));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }

    let mut plateau_of = vec![0; n];
    let mut by_root: BTreeMap<usize, usize> = BTreeMap::new();
    let mut plateaus: Vec<Plateau> = Vec::new();
    for v in 0..n {
        let root = find(&mut parent, v);
        let id = *by_root.entry(root).or_insert_with(|| {
            plateaus.push(Plateau {
                id: plateaus.len(),
                nodes: Vec::new(),
                fitness: g.nodes[v].fitness,
                sink: true,
            });
            plateaus.len() - 1
        });
        plateaus[id].nodes.push(v);
        plateau_of[v] = id;
    }

    let mut weights: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    for e in &g.edges {
        let (ps, pt) = (plateau_of[e.source], plateau_of[e.target]);
        if ps == pt {
            continue;
        }
        *weights.entry((ps, pt)).or_insert(0) += e.weight;
        if g.nodes[e.target].fitness < g.nodes[e.source].fitness {
            plateaus[ps].sink = false;
        }
    }

    let average_size = if plateaus.is_empty() {
        0.0
    } else {
        n as f64 / plateaus.len() as f64
    };
    PlateauGraph {
        plateaus,
        plateau_of,
        edges: weights.into_iter().map(|((a, b), w)| (a, b, w)).collect(),
        average_size,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::landscape::{LonEdge, LonNode};

    pub(crate) fn graph(fitness: &[f64], edges: &[(usize, usize)]) -> LonGraph {
        LonGraph {
            nodes: fitness
                .iter()
                .enumerate()
                .map(|(id, &f)| LonNode {
                    id,
                    key: id.to_string(),
                    fitness: f,
                    hits: 1,
                    in_weight: 0,
                })
                .collect(),
            edges: edges
                .iter()
                .map(|&(source, target)| LonEdge {
                    source,
                    target,
                    weight: 1,
                })
                .collect(),
        }
    }

    #[test]
    fn single_node_is_a_sink() {
        let p = compress_plateaus(&graph(&[4.0], &[]), DEFAULT_PLATEAU_TOLERANCE);
        assert_eq!(p.plateaus.len(), 1);
        assert_eq!(p.average_size, 1.0);
        assert!(p.plateaus[0].sink);
    }

    #[test]
    fn five_node_example() {
        let g = graph(&[12.0, 10.0, 10.0, 9.0, 8.0], &[(0, 1), (1, 2), (2, 3), (3, 4)]);
        let p = compress_plateaus(&g, DEFAULT_PLATEAU_TOLERANCE);
        assert_eq!(p.plateaus.len(), 4);
        assert_eq!(p.average_size, 1.25);
        assert_eq!(p.plateaus[p.plateau_of[1]].nodes, vec![1, 2]);
        assert_eq!(p.sink_count(), 1);
        assert!(p.plateaus[p.plateau_of[4]].sink);
        assert!(!p.plateaus[p.plateau_of[1]].sink);
    }

    #[test]
    fn equal_but_unconnected_nodes_stay_apart() {
        let p = compress_plateaus(&graph(&[5.0, 5.0], &[]), DEFAULT_PLATEAU_TOLERANCE);
        assert_eq!(p.plateaus.len(), 2);
    }
}
