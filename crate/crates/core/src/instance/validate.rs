use std::collections::HashSet;
use std::fmt;

use super::{GenerationProfile, Instance, MachineId, StageKind, LINE_COUNT};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InstanceViolation {
    LineCount {
        found: usize,
    },
    ZeroCapacity {
        machine: MachineId,
    },
    MachineAddress {
        machine: MachineId,
        expected: MachineId,
    },
    DuplicateMachine {
        machine: MachineId,
    },
    SpecimenId {
        position: usize,
        found: u32,
    },
    Route {
        specimen: u32,
    },
    /// Constraint (2) cannot be met on `line`: no machine serves `stage`.
    RouteUnsatisfiable {
        specimen: u32,
        line: usize,
        stage: StageKind,
    },
    MissingTime {
        specimen: u32,
        op: usize,
        line: usize,
    },
    TimeOutOfBounds {
        specimen: u32,
        op: usize,
        line: usize,
        seconds: u32,
        lower: u32,
        upper: u32,
    },
    TableShape,
}

impl fmt::Display for InstanceViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use InstanceViolation::*;
        match self {
            LineCount { found } => write!(f, "expected {LINE_COUNT} lines, found {found}"),
            ZeroCapacity { machine } => write!(f, "{machine} has capacity 0"),
            MachineAddress { machine, expected } => {
                write!(f, "machine stored as {machine} sits at {expected}")
            }
            DuplicateMachine { machine } => write!(f, "{machine} appears twice"),
            SpecimenId { position, found } => {
                write!(f, "specimen at position {position} has id {found}, expected {position}")
            }
            Route { specimen } => write!(f, "specimen {specimen} has a non-standard route"),
            RouteUnsatisfiable { specimen, line, stage } => write!(
                f,
                "specimen {specimen}: line {line} has no {stage} machine (constraint (2))"
            ),
            MissingTime { specimen, op, line } => {
                write!(f, "missing time for (i={specimen}, j={op}, line={line})")
            }
            TimeOutOfBounds {
                specimen,
                op,
                line,
                seconds,
                lower,
                upper,
            } => write!(
                f,
                "time {seconds} for (i={specimen}, j={op}, line={line}) outside [{lower}, {upper}]"
            ),
            TableShape => write!(f, "time table shape does not match specimens and lines"),
        }
    }
}

/// Lists every violated structural invariant; empty when the instance is well formed.
pub fn validate_instance(inst: &Instance) -> Vec<InstanceViolation> {
    let mut out = Vec::new();
    if inst.lines.len() != LINE_COUNT {
        out.push(InstanceViolation::LineCount {
            found: inst.lines.len(),
        });
    }

    let mut seen = HashSet::new();
    for (l, line) in inst.lines.iter().enumerate() {
        for (k, m) in line.machines.iter().enumerate() {
            let expected = MachineId::new(l + 1, k + 1);
            if m.id != expected {
                out.push(InstanceViolation::MachineAddress {
                    machine: m.id,
                    expected,
                });
            }
            if !seen.insert(m.id) {
                out.push(InstanceViolation::DuplicateMachine { machine: m.id });
            }
            if m.capacity == 0 {
                out.push(InstanceViolation::ZeroCapacity { machine: m.id });
            }
        }
    }

    for (pos, s) in inst.specimens.iter().enumerate() {
        if s.id as usize != pos + 1 {
            out.push(InstanceViolation::SpecimenId {
                position: pos + 1,
                found: s.id,
            });
        }
        if s.route != s.kind.route() {
            out.push(InstanceViolation::Route { specimen: s.id });
        }
        for (l, line) in inst.lines.iter().enumerate() {
            for &stage in &s.route {
                if line.machines_for(stage).next().is_none() {
                    out.push(InstanceViolation::RouteUnsatisfiable {
                        specimen: s.id,
                        line: l + 1,
                        stage,
                    });
                }
            }
        }
    }

    let t = &inst.times;
    if t.specimens() != inst.specimens.len() || t.lines() != inst.lines.len() {
        out.push(InstanceViolation::TableShape);
    } else {
        for s in &inst.specimens {
            for j in 1..=s.route.len().min(t.operations()) {
                for l in 1..=inst.lines.len() {
                    if inst.time(s.id, j, l) == 0 {
                        out.push(InstanceViolation::MissingTime {
                            specimen: s.id,
                            op: j,
                            line: l,
                        });
                    }
                }
            }
        }
    }
    out
}

/// Reports every time entry outside the profile bounds of its stage and line.
pub fn check_profile_bounds(inst: &Instance, profile: &GenerationProfile) -> Vec<InstanceViolation> {
    let mut out = Vec::new();
    for s in &inst.specimens {
        for (j, &stage) in s.route.iter().enumerate() {
            for l in 1..=inst.lines.len().min(profile.lines.len()) {
                let spec = profile.line(l).stage(stage);
                let seconds = inst.time(s.id, j + 1, l);
                if !(spec.lower..=spec.upper).contains(&seconds) {
                    out.push(InstanceViolation::TimeOutOfBounds {
                        specimen: s.id,
                        op: j + 1,
                        line: l,
                        seconds,
                        lower: spec.lower,
                        upper: spec.upper,
                    });
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{generate_instance, realistic_profile, toy_profile, TestKind};

    #[test]
    fn generated_is_clean() {
        let p = realistic_profile();
        let inst = generate_instance(&p, 20, 80, 5, 3).unwrap();
        assert!(validate_instance(&inst).is_empty());
        assert!(check_profile_bounds(&inst, &p).is_empty());
    }

    #[test]
    fn zero_capacity_is_named() {
        let mut inst = generate_instance(&toy_profile(), 1, 1, 1, 0).unwrap();
        inst.lines[1].machines[2].capacity = 0;
        let report = validate_instance(&inst);
        assert_eq!(
            report,
            vec![InstanceViolation::ZeroCapacity {
                machine: MachineId::new(2, 3)
            }]
        );
    }

    #[test]
    fn missing_immuno_machine_on_line_two() {
        let mut inst = generate_instance(&toy_profile(), 1, 1, 1, 0).unwrap();
        inst.lines[1].machines.retain(|m| m.stage != StageKind::ImmunologicTest);
        for (k, m) in inst.lines[1].machines.iter_mut().enumerate() {
            m.id.index = k + 1;
        }
        let report = validate_instance(&inst);
        let immuno = inst
            .specimens
            .iter()
            .find(|s| s.kind == TestKind::Immunologic)
            .unwrap()
            .id;
        assert_eq!(
            report,
            vec![InstanceViolation::RouteUnsatisfiable {
                specimen: immuno,
                line: 2,
                stage: StageKind::ImmunologicTest
            }]
        );
    }
}
