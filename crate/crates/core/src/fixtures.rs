//! The six-specimen worked example and its recorded schedule.

use crate::decoder::{Assignment, TiePolicy, XVar, YVar, ZVar};
use crate::instance::{Instance, Line, Machine, MachineId, ProcessingTimes, Specimen, StageKind, TestKind};

/// Per specimen: `[centrifuge, decap, analysis, validation]` seconds on line 1, then line 2.
const EXAMPLE6_TIMES: [([u32; 4], [u32; 4]); 6] = [
    ([545, 2, 545, 5], [332, 5, 530, 5]),
    ([593, 2, 593, 5], [356, 5, 695, 5]),
    ([530, 2, 530, 4], [325, 4, 475, 4]),
    ([597, 2, 1787, 5], [358, 5, 2669, 5]),
    ([516, 2, 1297, 4], [318, 4, 1442, 4]),
    ([564, 2, 1584, 5], [342, 5, 2161, 5]),
];

/// Capacities of centrifuge, decapper, biochemistry, immunoassay and validation.
const EXAMPLE6_CAPACITY: [u32; 5] = [2, 1, 2, 2, 1];

/// Specimens 1-3 biochemical, 4-6 immunologic; two lines of eight machines
/// (`M(l,1..2)` centrifuges, `M(l,3)` decapper, `M(l,4..5)` biochemistry,
/// `M(l,6..7)` immunoassay, `M(l,8)` validation).
pub fn example6() -> Instance {
    let counts = [2usize, 1, 2, 2, 1];
    let lines = (1..=2)
        .map(|l| {
            let mut machines = Vec::new();
            for (s, stage) in StageKind::ALL.into_iter().enumerate() {
                for _ in 0..counts[s] {
                    machines.push(Machine {
                        id: MachineId::new(l, machines.len() + 1),
                        stage,
                        capacity: EXAMPLE6_CAPACITY[s],
                    });
                }
            }
            Line { machines }
        })
        .collect();
    let specimens = (1..=6u32)
        .map(|id| {
            let kind = if id <= 3 {
                TestKind::Biochemical
            } else {
                TestKind::Immunologic
            };
            Specimen {
                id,
                kind,
                route: kind.route(),
            }
        })
        .collect();
    let mut times = ProcessingTimes::new(6, 4, 2);
    for (i, (l1, l2)) in EXAMPLE6_TIMES.iter().enumerate() {
        for j in 0..4 {
            times.set(i as u32 + 1, j + 1, 1, l1[j]).expect("in range");
            times.set(i as u32 + 1, j + 1, 2, l2[j]).expect("in range");
        }
    }
    Instance {
        name: "example6".into(),
        seed: 0,
        lines,
        specimens,
        times,
    }
}

/// The sequence used throughout the worked example.
pub const EXAMPLE6_SEQUENCE: [u32; 6] = [3, 1, 6, 4, 5, 2];

/// Tie resolutions that reproduce the narrated decoding of [`EXAMPLE6_SEQUENCE`].
pub fn worked_example_ties() -> TiePolicy {
    TiePolicy::Recorded(vec![
        MachineId::new(2, 1),
        MachineId::new(1, 2),
        MachineId::new(2, 2),
        MachineId::new(2, 4),
        MachineId::new(2, 6),
        MachineId::new(1, 6),
    ])
}

/// The recorded 1-valued decision variables for the worked example.
///
/// The recorded table lists `Z(d=1)` on `M(2,2)` while both `Y` entries there use
/// batch `d=2`; the batch index is normalized to 2 so that `Y` and `Z` agree.
pub fn example6_assignment() -> Assignment {
    let x = [(4, 1), (6, 1), (1, 2), (2, 2), (3, 2), (5, 2)]
        .into_iter()
        .map(|(specimen, line)| XVar { specimen, line })
        .collect();
    let y = [
        // (i, j, d, l, k)
        (4, 1, 1, 1, 2),
        (4, 2, 1, 1, 3),
        (4, 3, 1, 1, 6),
        (4, 4, 1, 1, 8),
        (6, 1, 1, 1, 2),
        (6, 2, 2, 1, 3),
        (6, 3, 1, 1, 6),
        (6, 4, 2, 1, 8),
        (1, 1, 1, 2, 1),
        (1, 2, 1, 2, 3),
        (1, 3, 1, 2, 4),
        (1, 4, 1, 2, 8),
        (2, 1, 2, 2, 2),
        (2, 2, 2, 2, 3),
        (2, 3, 1, 2, 5),
        (2, 4, 2, 2, 8),
        (3, 1, 1, 2, 1),
        (3, 2, 3, 2, 3),
        (3, 3, 1, 2, 4),
        (3, 4, 3, 2, 8),
        (5, 1, 2, 2, 2),
        (5, 2, 4, 2, 3),
        (5, 3, 1, 2, 6),
        (5, 4, 4, 2, 8),
    ]
    .into_iter()
    .map(|(specimen, op, batch, l, k)| YVar {
        specimen,
        op,
        machine: MachineId::new(l, k),
        batch,
    })
    .collect();
    let z = [
        // (d, l, k, r)
        (1, 1, 2, 1),
        (1, 1, 3, 2),
        (2, 1, 3, 1),
        (1, 1, 6, 1),
        (1, 1, 8, 2),
        (2, 1, 8, 1),
        (1, 2, 1, 1),
        (2, 2, 2, 1),
        (1, 2, 3, 2),
        (2, 2, 3, 4),
        (3, 2, 3, 1),
        (4, 2, 3, 3),
        (1, 2, 4, 1),
        (1, 2, 5, 1),
        (1, 2, 6, 1),
        (1, 2, 8, 2),
        (2, 2, 8, 3),
        (3, 2, 8, 1),
        (4, 2, 8, 4),
    ]
    .into_iter()
    .map(|(batch, l, k, position)| ZVar {
        machine: MachineId::new(l, k),
        batch,
        position,
    })
    .collect();
    Assignment { x, y, z }
}
