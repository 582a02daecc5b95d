use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::sync::mpsc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    metrics_table, read_results, summarize, write_metrics, write_summary, BestKnownTable, ResultRecord, ResultsWriter,
};
use crate::error::{Error, Result};
use crate::instance::{load_instance, Instance};
use crate::rng::hash_labels;
use crate::search::{solve, Algorithm, NeighborhoodChoice, SolverConfig};

/// Suite description. Relative paths resolve against the manifest's directory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    /// Glob patterns for instance files.
    pub instances: Vec<String>,
    pub algorithms: Vec<Algorithm>,
    pub neighborhoods: Vec<NeighborhoodChoice>,
    pub reps: u32,
    #[serde(default = "default_budget")]
    pub budget: u64,
    #[serde(default)]
    pub seed: u64,
    /// Output directory; defaults to the manifest's directory.
    #[serde(default)]
    pub out_dir: Option<PathBuf>,
    /// Extra best-known values merged with the recorded minima.
    #[serde(default)]
    pub best_known: Option<PathBuf>,
    /// Worker threads; 0 uses every core.
    #[serde(default)]
    pub workers: usize,
    /// Engine settings shared by every cell.
    #[serde(default)]
    pub solver: SolverConfig,
}

fn default_budget() -> u64 {
    10_000
}

impl Manifest {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml(&text).map_err(|e| match e {
            Error::Config(msg) => Error::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub executed: usize,
    pub skipped: usize,
    pub errors: usize,
    pub results: PathBuf,
    pub metrics: PathBuf,
}

#[derive(Serialize)]
struct ErrorRow {
    source: String,
    algo: String,
    nbhd: String,
    rep: String,
    message: String,
}

struct Cell<'a> {
    inst: &'a Instance,
    algo: Algorithm,
    nbhd: NeighborhoodChoice,
    rep: u32,
}

fn resolve(base: &Path, p: &Path) -> PathBuf {
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.join(p)
    }
}

/// Runs every missing (instance × algorithm × neighborhood × rep) cell, appending to
/// `results.csv`, then rewrites `bestknown.csv`, `metrics.csv`, `summary.csv` and `errors.csv`.
pub fn run_suite(manifest_path: impl AsRef<Path>) -> Result<SuiteReport> {
    let manifest_path = manifest_path.as_ref();
    let manifest = Manifest::load(manifest_path)?;
    let base = manifest_path.parent().unwrap_or(Path::new(".")).to_path_buf();
    let out_dir = manifest.out_dir.as_deref().map_or(base.clone(), |d| resolve(&base, d));
    std::fs::create_dir_all(&out_dir).map_err(|e| Error::io(&out_dir, e))?;

    let mut errors = Vec::new();
    let mut files = BTreeSet::new();
    for pattern in &manifest.instances {
        let full = resolve(&base, Path::new(pattern));
        let matched: Vec<PathBuf> = glob::glob(&full.to_string_lossy())
            .map_err(|e| Error::Config(format!("bad instance pattern `{pattern}`: {e}")))?
            .filter_map(|p| p.ok())
            .collect();
        if matched.is_empty() {
            errors.push(ErrorRow {
                source: pattern.clone(),
                algo: String::new(),
                nbhd: String::new(),
                rep: String::new(),
                message: "no instance file matches".into(),
            });
        }
        files.extend(matched);
    }
    let mut instances = Vec::new();
    for f in &files {
        match load_instance(f) {
            Ok(inst) => instances.push(inst),
            Err(e) => errors.push(ErrorRow {
                source: f.display().to_string(),
                algo: String::new(),
                nbhd: String::new(),
                rep: String::new(),
                message: e.to_string(),
            }),
        }
    }

    let results_path = out_dir.join("results.csv");
    let mut done = BTreeSet::new();
    if results_path.exists() {
        for r in read_results(&results_path)? {
            done.insert((r.instance, r.algo, r.nbhd, r.rep));
        }
    }

    let mut cells = Vec::new();
    let mut skipped = 0;
    for inst in &instances {
        for &algo in &manifest.algorithms {
            for &nbhd in &manifest.neighborhoods {
                for rep in 1..=manifest.reps {
                    let key = (inst.name.clone(), algo.to_string(), nbhd.to_string(), rep);
                    if done.contains(&key) {
                        skipped += 1;
                    } else {
                        cells.push(Cell { inst, algo, nbhd, rep });
                    }
                }
            }
        }
    }

    let executed = cells.len();
    if executed > 0 {
        let mut writer = ResultsWriter::append(&results_path)?;
        let (tx, rx) = mpsc::channel::<std::result::Result<ResultRecord, ErrorRow>>();
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(manifest.workers)
            .build()
            .map_err(|e| Error::Config(e.to_string()))?;
        let mut write_err = None;
        std::thread::scope(|scope| {
            scope.spawn(|| {
                pool.install(|| {
                    cells.par_iter().for_each_with(tx, |tx, c| {
                        let _ = tx.send(run_cell(&manifest, c));
                    })
                })
            });
            for msg in rx {
                match msg {
                    Ok(rec) => {
                        if let Err(e) = writer.write(&rec) {
                            write_err.get_or_insert(e);
                        }
                    }
                    Err(row) => errors.push(row),
                }
            }
        });
        if let Some(e) = write_err {
            return Err(e);
        }
    }

    let records = if results_path.exists() {
        read_results(&results_path)?
    } else {
        Vec::new()
    };
    let mut best = BestKnownTable::from_records(&records);
    if let Some(p) = &manifest.best_known {
        best.absorb(&BestKnownTable::load(resolve(&base, p))?);
    }
    best.save(out_dir.join("bestknown.csv"))?;
    let metrics = metrics_table(&records, &best)?;
    let metrics_path = out_dir.join("metrics.csv");
    write_metrics(&metrics_path, &metrics)?;
    let sizes: BTreeMap<&str, usize> = instances
        .iter()
        .map(|i| (i.name.as_str(), i.specimen_count()))
        .collect();
    write_summary(
        out_dir.join("summary.csv"),
        &summarize(&metrics, |name| sizes.get(name).copied()),
    )?;

    let errors_path = out_dir.join("errors.csv");
    let mut w = csv::Writer::from_path(&errors_path).map_err(|e| Error::Config(e.to_string()))?;
    if errors.is_empty() {
        w.write_record(["source", "algo", "nbhd", "rep", "message"])?;
    }
    errors.sort_by(|a, b| (&a.source, &a.algo, &a.nbhd, &a.rep).cmp(&(&b.source, &b.algo, &b.nbhd, &b.rep)));
    for row in &errors {
        w.serialize(row)?;
    }
    w.flush().map_err(|e| Error::io(&errors_path, e))?;

    Ok(SuiteReport {
        executed: executed - errors.iter().filter(|r| !r.rep.is_empty()).count(),
        skipped,
        errors: errors.len(),
        results: results_path,
        metrics: metrics_path,
    })
}

fn run_cell(m: &Manifest, c: &Cell) -> std::result::Result<ResultRecord, ErrorRow> {
    let algo = c.algo.to_string();
    let nbhd = c.nbhd.to_string();
    let seed = hash_labels(m.seed, &[&c.inst.name, &algo, &nbhd, &c.rep.to_string()]);
    let mut cfg = m.solver.clone();
    cfg.algo = c.algo;
    cfg.evals = m.budget;
    cfg.moves.neighborhood = c.nbhd;
    match solve(c.inst, &cfg, seed) {
        Ok(res) => Ok(ResultRecord {
            instance: c.inst.name.clone(),
            algo,
            nbhd,
            seed,
            rep: c.rep,
            best_mtat: res.best_mtat,
            evals: res.evaluations,
            cpu_seconds: res.seconds,
        }),
        Err(e) => Err(ErrorRow {
            source: c.inst.name.clone(),
            algo,
            nbhd,
            rep: c.rep.to_string(),
            message: e.to_string(),
        }),
    }
}
