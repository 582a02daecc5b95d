use rand::distributions::{Distribution, WeightedIndex};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::neighborhood::MoveKind;

pub const ARMS: usize = 4;

/// Reward-driven roulette selection over the four move kinds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MlState {
    pub rewards: [f64; ARMS],
    pub probabilities: [f64; ARMS],
    /// Arms that have had their training block.
    pub trained: [bool; ARMS],
}

impl Default for MlState {
    fn default() -> Self {
        Self {
            rewards: [0.0; ARMS],
            probabilities: [1.0 / ARMS as f64; ARMS],
            trained: [false; ARMS],
        }
    }
}

impl MlState {
    pub fn training(&self) -> bool {
        self.trained.iter().any(|t| !t)
    }

    fn renormalize(&mut self) {
        let total: f64 = self.rewards.iter().sum();
        if total > 0.0 {
            for (p, r) in self.probabilities.iter_mut().zip(self.rewards) {
                *p = r / total;
            }
        } else {
            self.probabilities = [1.0 / ARMS as f64; ARMS];
        }
    }
}

/// Next arm: untrained arms in order first, then roulette over the probabilities.
pub fn ml_select<R: Rng + ?Sized>(state: &MlState, rng: &mut R) -> MoveKind {
    if let Some(i) = state.trained.iter().position(|t| !t) {
        return MoveKind::ALL[i];
    }
    match WeightedIndex::new(state.probabilities) {
        Ok(w) => MoveKind::ALL[w.sample(rng)],
        Err(_) => MoveKind::ALL[rng.gen_range(0..ARMS)],
    }
}

/// Credits `kind` with `|before - after| / theta` and renormalizes.
pub fn ml_update(state: &mut MlState, kind: MoveKind, mtat_before: f64, mtat_after: f64, theta: usize) {
    let i = kind.index();
    state.rewards[i] += (mtat_before - mtat_after).abs() / theta.max(1) as f64;
    state.trained[i] = true;
    state.renormalize();
}

/// Size-based neighborhood lookup: swap below `inb_from` specimens, block insert from there.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApsTable {
    pub inb_from: usize,
}

impl Default for ApsTable {
    fn default() -> Self {
        Self { inb_from: 200 }
    }
}

impl ApsTable {
    pub fn select(&self, n: usize) -> MoveKind {
        if n >= self.inb_from {
            MoveKind::BlockInsert
        } else {
            MoveKind::Swap
        }
    }
}

pub fn aps_select_neighborhood(n: usize) -> MoveKind {
    ApsTable::default().select(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng;

    #[test]
    fn reward_and_probabilities() {
        let mut s = MlState::default();
        ml_update(&mut s, MoveKind::Insert, 100.0, 90.0, 5);
        assert_eq!(s.rewards[0], 2.0);
        let mut s = MlState {
            rewards: [1.0, 1.0, 1.0, 0.0],
            trained: [true; ARMS],
            ..MlState::default()
        };
        ml_update(&mut s, MoveKind::Insert, 10.0, 9.0, 1);
        assert_eq!(s.probabilities, [0.5, 0.25, 0.25, 0.0]);
    }

    #[test]
    fn training_visits_every_arm_once() {
        let mut s = MlState::default();
        let mut r = rng::stream(0, &[]);
        let mut seen = Vec::new();
        while s.training() {
            let k = ml_select(&s, &mut r);
            seen.push(k);
            ml_update(&mut s, k, 1.0, 1.0, 1);
        }
        assert_eq!(seen, MoveKind::ALL.to_vec());
        // all rewards zero: uniform
        assert_eq!(s.probabilities, [0.25; ARMS]);
    }

    #[test]
    fn roulette_frequencies() {
        let s = MlState {
            rewards: [2.0, 1.0, 1.0, 0.0],
            probabilities: [0.5, 0.25, 0.25, 0.0],
            trained: [true; ARMS],
        };
        let mut r = rng::stream(4, &[]);
        let mut counts = [0u32; ARMS];
        let draws = 100_000;
        for _ in 0..draws {
            counts[ml_select(&s, &mut r).index()] += 1;
        }
        for (c, p) in counts.iter().zip(s.probabilities) {
            assert!((f64::from(*c) / draws as f64 - p).abs() < 0.01);
        }
    }

    #[test]
    fn aps_lookup() {
        assert_eq!(aps_select_neighborhood(8), MoveKind::Swap);
        assert_eq!(aps_select_neighborhood(100), MoveKind::Swap);
        assert_eq!(aps_select_neighborhood(150), MoveKind::Swap);
        assert_eq!(aps_select_neighborhood(300), MoveKind::BlockInsert);
    }
}
