//! Fitness landscape measures: fitness-distance correlation, random-walk
//! autocorrelation and local optima networks.

mod export;
mod lon;
mod plateau;

use serde::Serialize;

use crate::decoder::TiePolicy;
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::neighborhood::{jpr_distance, BlockMode, InverseSpan, MoveKind, Neighborhood, DEFAULT_BLOCK_SIZE};
use crate::rng;
use crate::search::SearchResult;

pub use export::{export_graph, to_dot, to_graphml, GraphFormat};
pub use lon::{build_lon, LonConfig, LonEdge, LonGraph, LonLog, LonNode, NodeKey};
pub use plateau::{compress_plateaus, Plateau, PlateauGraph, DEFAULT_PLATEAU_TOLERANCE};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FdcSample {
    pub fitness: f64,
    pub distance: f64,
}

fn mean(xs: impl Iterator<Item = f64> + Clone) -> f64 {
    let (s, c) = xs.fold((0.0, 0usize), |(s, c), x| (s + x, c + 1));
    s / c as f64
}

/// Pearson correlation of fitness and distance with population normalization.
pub fn fdc(samples: &[FdcSample]) -> Result<f64> {
    let m = samples.len();
    if m < 2 {
        return Err(Error::DegenerateInput(format!("fdc needs at least 2 samples, got {m}")));
    }
    let fbar = mean(samples.iter().map(|s| s.fitness));
    let dbar = mean(samples.iter().map(|s| s.distance));
    let (mut cov, mut vf, mut vd) = (0.0, 0.0, 0.0);
    for s in samples {
        let (a, b) = (s.fitness - fbar, s.distance - dbar);
        cov += a * b;
        vf += a * a;
        vd += b * b;
    }
    let mf = m as f64;
    let (sf, sd) = ((vf / mf).sqrt(), (vd / mf).sqrt());
    if sf == 0.0 || sd == 0.0 {
        return Err(Error::DegenerateInput("fitness or distance has zero variance".into()));
    }
    Ok(cov / (mf * sf * sd))
}

/// Samples for fdc from the solutions a run accepted, measured against its best.
pub fn fdc_samples(result: &SearchResult) -> Result<Vec<FdcSample>> {
    result
        .accepted
        .iter()
        .map(|s| {
            Ok(FdcSample {
                fitness: s.mtat,
                distance: jpr_distance(&s.sequence, &result.best)?,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WalkSeries {
    pub values: Vec<f64>,
    pub kind: MoveKind,
    pub seed: u64,
}

/// MTAT along `length` points of a random walk: a random start followed by
/// `length - 1` uniform moves of `kind`.
pub fn random_walk(inst: &Instance, kind: MoveKind, length: usize, seed: u64, tie: &TiePolicy) -> Result<WalkSeries> {
    if length < 2 {
        return Err(Error::invalid(format!("walk length must be at least 2, got {length}")));
    }
    let n = inst.specimen_count();
    let mut r = rng::stream(seed, &[0x3A1C, kind.index() as u64]);
    let mut x: Vec<u32> = (1..=n as u32).collect();
    rand::seq::SliceRandom::shuffle(x.as_mut_slice(), &mut r);
    let mut nb = Neighborhood::new(kind, &x, DEFAULT_BLOCK_SIZE, BlockMode::Fixed, InverseSpan::Exclusive);
    let mut values = Vec::with_capacity(length);
    values.push(crate::decoder::decode_fabm(inst, &x, tie)?.mtat);
    for _ in 1..length {
        x = nb.neighbor(&x, &mut r)?;
        values.push(crate::decoder::decode_fabm(inst, &x, tie)?.mtat);
    }
    Ok(WalkSeries { values, kind, seed })
}

/// Lag-`s` autocorrelation: `Σ (f_t - f̄)(f_{t+s} - f̄) / (σ² (m - s))` with the
/// population variance σ² of the whole series.
pub fn autocorrelation(series: &[f64], s: usize) -> Result<f64> {
    let m = series.len();
    if m < 2 {
        return Err(Error::invalid(format!("series needs at least 2 values, got {m}")));
    }
    if s >= m {
        return Err(Error::invalid(format!("lag {s} must be below the series length {m}")));
    }
    let fbar = mean(series.iter().copied());
    let var = series.iter().map(|f| (f - fbar).powi(2)).sum::<f64>() / m as f64;
    if var == 0.0 {
        return Err(Error::DegenerateInput("constant series has no autocorrelation".into()));
    }
    let acc: f64 = series.windows(s + 1).map(|w| (w[0] - fbar) * (w[s] - fbar)).sum();
    Ok(acc / (var * (m - s) as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::example6;

    fn line(slope: f64) -> Vec<FdcSample> {
        (0..10)
            .map(|i| FdcSample {
                fitness: 3.0 + slope * f64::from(i),
                distance: f64::from(i) / 10.0,
            })
            .collect()
    }

    #[test]
    fn fdc_on_lines() {
        assert!((fdc(&line(2.0)).unwrap() - 1.0).abs() < 1e-12);
        assert!((fdc(&line(-0.5)).unwrap() + 1.0).abs() < 1e-12);
        assert!(matches!(fdc(&line(0.0)), Err(Error::DegenerateInput(_))));
    }

    #[test]
    fn ac_basics() {
        let alt: Vec<f64> = (0..100).map(|i| if i % 2 == 0 { 1.0 } else { -1.0 }).collect();
        assert!((autocorrelation(&alt, 0).unwrap() - 1.0).abs() < 1e-12);
        assert!((autocorrelation(&alt, 1).unwrap() + 1.0).abs() < 1e-12);
        assert!(autocorrelation(&alt, 100).is_err());
        assert!(autocorrelation(&[2.0; 5], 1).is_err());
    }

    #[test]
    fn walk_is_reproducible() {
        let a = random_walk(&example6(), MoveKind::Swap, 50, 3, &TiePolicy::LowestIndex).unwrap();
        let b = random_walk(&example6(), MoveKind::Swap, 50, 3, &TiePolicy::LowestIndex).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.values.len(), 50);
    }
}
