use serde::{Deserialize, Serialize};

use super::anneal::{Annealer, MoveSource};
use super::combine::combine_solutions;
use super::evaluator::Evaluator;
use super::neh::construct;
use super::settings::{CoolingSchedule, MoveSettings, RunOptions};
use super::SearchResult;
use crate::decoder::TiePolicy;
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::neighborhood::jpr_distance;
use crate::rng;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScatterConfig {
    pub refset_size: usize,
    /// Temperature schedule of the improvement phase, kept across iterations.
    pub improvement: CoolingSchedule,
    /// Decode calls per improvement phase; `None` means θ.
    pub improve_evals: Option<u64>,
    pub budget: u64,
    #[serde(flatten)]
    pub moves: MoveSettings,
    /// Block size for the constructive seeding; `None` uses the move block size.
    pub neh_block_size: Option<usize>,
    pub idle_tiebreak: bool,
    pub tie: TiePolicy,
    pub seed: u64,
}

impl Default for ScatterConfig {
    fn default() -> Self {
        Self {
            refset_size: 10,
            improvement: CoolingSchedule::default(),
            improve_evals: None,
            budget: 10_000,
            moves: MoveSettings::default(),
            neh_block_size: None,
            idle_tiebreak: true,
            tie: TiePolicy::default(),
            seed: 0,
        }
    }
}

/// Indices of the best member and of the member furthest from it.
pub fn select_subset(refset: &[(Vec<u32>, f64)]) -> Result<(usize, usize)> {
    if refset.len() < 2 {
        return Err(Error::invalid("reference set needs at least two members"));
    }
    let best = (0..refset.len())
        .min_by(|&a, &b| refset[a].1.total_cmp(&refset[b].1))
        .expect("non-empty");
    let mut far = None::<(usize, f64)>;
    for (i, (seq, _)) in refset.iter().enumerate() {
        if i == best {
            continue;
        }
        let d = jpr_distance(&refset[best].0, seq)?;
        if far.is_none_or(|(_, fd)| d > fd) {
            far = Some((i, d));
        }
    }
    Ok((best, far.expect("two or more members").0))
}

pub fn scatter_search(inst: &Instance, cfg: &ScatterConfig) -> Result<SearchResult> {
    scatter_search_with(inst, cfg, RunOptions::default())
}

pub fn scatter_search_with(inst: &Instance, cfg: &ScatterConfig, opts: RunOptions) -> Result<SearchResult> {
    if cfg.refset_size < 2 {
        return Err(Error::invalid(format!(
            "reference set size must be at least 2, got {}",
            cfg.refset_size
        )));
    }
    if cfg.budget == 0 {
        return Err(Error::invalid("evaluation budget must be at least 1"));
    }
    let n = inst.specimen_count();
    let mut ev = Evaluator::new(inst, cfg.tie.clone(), cfg.budget)
        .with_stagnation(opts.stagnation)
        .with_optima_log(opts.optima)
        .keep_accepted(opts.keep_accepted);
    let mut rng = rng::stream(cfg.seed, &[0x55]);
    let neh_bs = cfg.neh_block_size.unwrap_or(cfg.moves.block_size);
    let mut seeds_used = 0u64;
    let mut seed_one = |ev: &mut Evaluator| -> Result<Option<(Vec<u32>, f64)>> {
        let mut r = rng::stream(cfg.seed, &[0x4E48, seeds_used]);
        seeds_used += 1;
        Ok(construct(ev, neh_bs, cfg.idle_tiebreak, &mut r)?.map(|o| (o.sequence, o.mtat)))
    };

    let mut refset = Vec::with_capacity(cfg.refset_size);
    while refset.len() < cfg.refset_size {
        match seed_one(&mut ev)? {
            Some(member) => {
                ev.note_accepted(&member.0, member.1);
                refset.push(member);
            }
            None => break,
        }
    }
    let Some(first) = refset.first().cloned() else {
        return Ok(ev.finish(Default::default()));
    };
    let source = MoveSource::new(cfg.moves, &first.0)?;
    let mut annealer = Annealer::new(&cfg.improvement, source, n)?;
    if refset.len() < 2 || n < 2 {
        return Ok(ev.finish(annealer.stats));
    }
    let (b0, _) = select_subset(&refset)?;
    match cfg.improvement.initial_temperature {
        Some(t) => annealer.set_initial(t),
        None => {
            let (s, f) = refset[b0].clone();
            annealer.calibrate(&mut ev, &mut rng, &s, f, cfg.improvement.calibration_moves)?;
        }
    }
    let improve_evals = cfg.improve_evals.unwrap_or(annealer.theta as u64).max(1);

    while !ev.exhausted() {
        let (mut best, mut far) = select_subset(&refset)?;
        if refset[best].0 == refset[far].0 && refset.iter().all(|m| m.0 == refset[best].0) {
            annealer.stats.refset_refills += 1;
            for i in 0..refset.len() {
                if i == best {
                    continue;
                }
                match seed_one(&mut ev)? {
                    Some(m) => refset[i] = m,
                    None => return Ok(ev.finish(annealer.stats)),
                }
            }
            (best, far) = select_subset(&refset)?;
        }
        let (p1, f1) = &refset[best];
        let (p2, f2) = &refset[far];
        let trial = combine_solutions(p1, p2, *f1, *f2, &mut rng)?.trial;
        let Some(ft) = ev.evaluate(&trial)? else { break };
        ev.note_accepted(&trial, ft);
        let mut current = (trial, ft);
        let improved = annealer.run(&mut ev, &mut rng, &mut current, improve_evals)?;
        refset[far] = improved;
    }
    Ok(ev.finish(annealer.stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::example6;

    #[test]
    fn subset_is_best_and_furthest() {
        let a = (vec![1, 2, 3, 4, 5], 10.0);
        let b = (vec![2, 1, 4, 3, 5], 12.0);
        let c = (vec![3, 2, 1, 5, 4], 11.0);
        assert!((jpr_distance(&a.0, &b.0).unwrap() - 0.2).abs() < 1e-12);
        assert!((jpr_distance(&a.0, &c.0).unwrap() - 0.4).abs() < 1e-12);
        assert_eq!(select_subset(&[b.clone(), a.clone(), c.clone()]).unwrap(), (1, 2));
        assert!(select_subset(&[a]).is_err());
    }

    #[test]
    fn respects_budget_and_is_deterministic() {
        let cfg = ScatterConfig {
            budget: 600,
            seed: 9,
            ..ScatterConfig::default()
        };
        let a = scatter_search(&example6(), &cfg).unwrap();
        let b = scatter_search(&example6(), &cfg).unwrap();
        assert_eq!(a.evaluations, 600);
        assert_eq!(a.best, b.best);
        assert_eq!(a.trace, b.trace);
        assert!(a.trace.windows(2).all(|w| w[1].mtat < w[0].mtat));
    }
}
