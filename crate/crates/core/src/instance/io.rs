//! JSON instance files with a strict schema.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Instance, Line, Machine, MachineId, ProcessingTimes, Specimen, StageKind, TestKind, ROUTE_LEN};
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    name: String,
    seed: u64,
    lines: Vec<LineFile>,
    specimens: Vec<SpecimenFile>,
    times: Vec<TimeFile>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LineFile {
    machines: Vec<MachineFile>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MachineFile {
    stage: StageKind,
    capacity: u32,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecimenFile {
    id: u32,
    kind: TestKind,
    route: Vec<StageKind>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TimeFile {
    i: u32,
    j: usize,
    line: usize,
    seconds: u32,
}

pub fn to_json(inst: &Instance) -> String {
    let file = InstanceFile {
        name: inst.name.clone(),
        seed: inst.seed,
        lines: inst
            .lines
            .iter()
            .map(|l| LineFile {
                machines: l
                    .machines
                    .iter()
                    .map(|m| MachineFile {
                        stage: m.stage,
                        capacity: m.capacity,
                    })
                    .collect(),
            })
            .collect(),
        specimens: inst
            .specimens
            .iter()
            .map(|s| SpecimenFile {
                id: s.id,
                kind: s.kind,
                route: s.route.clone(),
            })
            .collect(),
        times: inst
            .times
            .entries()
            .filter(|&(_, _, _, v)| v > 0)
            .map(|(i, j, line, seconds)| TimeFile { i, j, line, seconds })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("instance serializes")
}

pub fn save_instance(inst: &Instance, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, to_json(inst)).map_err(|e| Error::io(path, e))
}

pub fn load_instance(path: impl AsRef<Path>) -> Result<Instance> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_instance(&text, path)
}

/// Parses instance JSON; `origin` only labels diagnostics.
pub fn parse_instance(text: &str, origin: &Path) -> Result<Instance> {
    let file: InstanceFile = serde_json::from_str(text).map_err(|e| Error::Parse {
        path: origin.to_path_buf(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let schema_err = |message: String| Error::Parse {
        path: origin.to_path_buf(),
        line: 0,
        column: 0,
        message,
    };

    let lines = file
        .lines
        .into_iter()
        .enumerate()
        .map(|(l, lf)| Line {
            machines: lf
                .machines
                .into_iter()
                .enumerate()
                .map(|(k, m)| Machine {
                    id: MachineId::new(l + 1, k + 1),
                    stage: m.stage,
                    capacity: m.capacity,
                })
                .collect(),
        })
        .collect::<Vec<_>>();
    let specimens = file
        .specimens
        .into_iter()
        .map(|s| Specimen {
            id: s.id,
            kind: s.kind,
            route: s.route,
        })
        .collect::<Vec<_>>();

    let ops = specimens.iter().map(|s| s.route.len()).max().unwrap_or(ROUTE_LEN);
    let mut times = ProcessingTimes::new(specimens.len(), ops, lines.len());
    for (pos, t) in file.times.iter().enumerate() {
        if times.get(t.i, t.j, t.line) != 0 {
            return Err(schema_err(format!(
                "times[{pos}]: duplicate entry (i={}, j={}, line={})",
                t.i, t.j, t.line
            )));
        }
        if t.seconds == 0 {
            return Err(schema_err(format!("times[{pos}]: field `seconds` must be positive")));
        }
        times
            .set(t.i, t.j, t.line, t.seconds)
            .map_err(|e| schema_err(format!("times[{pos}]: {e}")))?;
    }

    Ok(Instance {
        name: file.name,
        seed: file.seed,
        lines,
        specimens,
        times,
    })
}
