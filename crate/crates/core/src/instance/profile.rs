use serde::{Deserialize, Serialize};

use super::StageKind;

/// Machine group for one stage on one line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageSpec {
    pub count: usize,
    pub capacity: u32,
    pub lower: u32,
    pub upper: u32,
}

impl StageSpec {
    const fn new(lower: u32, upper: u32, capacity: u32, count: usize) -> Self {
        Self {
            count,
            capacity,
            lower,
            upper,
        }
    }
}

/// Stage specs of one line, indexed by [`StageKind::index`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineProfile {
    pub stages: [StageSpec; 5],
}

impl LineProfile {
    pub fn stage(&self, stage: StageKind) -> &StageSpec {
        &self.stages[stage.index()]
    }

    pub fn stage_mut(&mut self, stage: StageKind) -> &mut StageSpec {
        &mut self.stages[stage.index()]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenerationProfile {
    pub lines: Vec<LineProfile>,
}

impl GenerationProfile {
    pub fn line(&self, line: usize) -> &LineProfile {
        &self.lines[line - 1]
    }
}

/// Instrument counts, capacities and time bounds of the two laboratory regions.
pub fn realistic_profile() -> GenerationProfile {
    let region1 = LineProfile {
        stages: [
            StageSpec::new(480, 600, 84, 2),
            StageSpec::new(2, 2, 1, 1),
            StageSpec::new(480, 600, 84, 2),
            StageSpec::new(1080, 1800, 84, 2),
            StageSpec::new(4, 6, 1, 1),
        ],
    };
    let region2 = LineProfile {
        stages: [
            StageSpec::new(300, 360, 32, 4),
            StageSpec::new(4, 6, 1, 1),
            StageSpec::new(300, 720, 60, 2),
            StageSpec::new(900, 2700, 48, 2),
            StageSpec::new(4, 6, 1, 1),
        ],
    };
    GenerationProfile {
        lines: vec![region1, region2],
    }
}

/// Reduced-capacity variant used for the small benchmark instances: region 2
/// keeps two centrifuges and every batch machine holds two tubes.
pub fn toy_profile() -> GenerationProfile {
    let mut profile = realistic_profile();
    profile.lines[1].stage_mut(StageKind::Centrifugation).count = 2;
    for line in &mut profile.lines {
        for stage in [
            StageKind::Centrifugation,
            StageKind::BiochemicalTest,
            StageKind::ImmunologicTest,
        ] {
            line.stage_mut(stage).capacity = 2;
        }
    }
    profile
}
