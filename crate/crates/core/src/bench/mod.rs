//! Experiment records, error metrics, Friedman ranks and the suite runner.

mod friedman;
mod suite;

use std::collections::BTreeMap;
use std::fs::File;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use friedman::{friedman_ranks, rank_row, FriedmanResult};
pub use suite::{run_suite, Manifest, SuiteReport};

/// One engine run. Serialized as a `results.csv` row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub instance: String,
    pub algo: String,
    pub nbhd: String,
    pub seed: u64,
    pub rep: u32,
    pub best_mtat: f64,
    pub evals: u64,
    pub cpu_seconds: f64,
}

impl ResultRecord {
    pub fn cell(&self) -> (String, String, String) {
        (self.instance.clone(), self.algo.clone(), self.nbhd.clone())
    }
}

fn csv_err(path: &Path, e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::io(path, io),
        other => Error::Parse {
            path: path.to_path_buf(),
            line: 0,
            column: 0,
            message: format!("{other:?}"),
        },
    }
}

pub fn read_results(path: impl AsRef<Path>) -> Result<Vec<ResultRecord>> {
    let path = path.as_ref();
    let mut rdr = csv::Reader::from_path(path).map_err(|e| csv_err(path, e))?;
    rdr.deserialize().map(|r| r.map_err(|e| csv_err(path, e))).collect()
}

pub fn write_results(path: impl AsRef<Path>, records: &[ResultRecord]) -> Result<()> {
    let path = path.as_ref();
    let mut w = csv::Writer::from_path(path).map_err(|e| csv_err(path, e))?;
    for r in records {
        w.serialize(r)?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

/// Best known MTAT per instance.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct BestKnownTable(pub BTreeMap<String, f64>);

#[derive(Serialize, Deserialize)]
struct BestKnownRow {
    instance: String,
    best_mtat: f64,
}

impl BestKnownTable {
    /// Minimum recorded MTAT per instance.
    pub fn from_records<'a>(records: impl IntoIterator<Item = &'a ResultRecord>) -> Self {
        let mut t = BTreeMap::new();
        for r in records {
            t.entry(r.instance.clone())
                .and_modify(|b: &mut f64| *b = b.min(r.best_mtat))
                .or_insert(r.best_mtat);
        }
        Self(t)
    }

    /// Keeps the smaller value per instance.
    pub fn absorb(&mut self, other: &BestKnownTable) {
        for (k, &v) in &other.0 {
            self.0.entry(k.clone()).and_modify(|b| *b = b.min(v)).or_insert(v);
        }
    }

    pub fn get(&self, instance: &str) -> Result<f64> {
        match self.0.get(instance) {
            Some(&v) if v > 0.0 => Ok(v),
            Some(&v) => Err(Error::invalid(format!(
                "best known value for {instance} is not positive ({v})"
            ))),
            None => Err(Error::Lookup(format!("no best known value for instance {instance}"))),
        }
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let mut rdr = csv::Reader::from_path(path).map_err(|e| csv_err(path, e))?;
        let mut t = BTreeMap::new();
        for row in rdr.deserialize::<BestKnownRow>() {
            let row = row.map_err(|e| csv_err(path, e))?;
            t.insert(row.instance, row.best_mtat);
        }
        Ok(Self(t))
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let mut w = csv::Writer::from_path(path).map_err(|e| csv_err(path, e))?;
        for (instance, &best_mtat) in &self.0 {
            w.serialize(BestKnownRow {
                instance: instance.clone(),
                best_mtat,
            })?;
        }
        w.flush().map_err(|e| Error::io(path, e))
    }
}

/// Relative errors of one (instance, algorithm, neighborhood) cell. Values are fractions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CellMetrics {
    pub bre: f64,
    pub are: f64,
    pub wre: f64,
    pub arpd: f64,
    pub acpu: f64,
}

/// `e_l = (I_l - C*) / C*`; BRE/WRE are the min/max, ARE = ARPD the mean, ACPU the mean time.
pub fn compute_metrics(records: &[ResultRecord], c_star: f64) -> Result<CellMetrics> {
    if records.is_empty() {
        return Err(Error::invalid("metrics need at least one record"));
    }
    if !(c_star > 0.0) {
        return Err(Error::invalid(format!(
            "best known value must be positive, got {c_star}"
        )));
    }
    let errors: Vec<f64> = records.iter().map(|r| (r.best_mtat - c_star) / c_star).collect();
    let l = records.len() as f64;
    let mean = errors.iter().sum::<f64>() / l;
    Ok(CellMetrics {
        bre: errors.iter().copied().fold(f64::INFINITY, f64::min),
        are: mean,
        wre: errors.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        arpd: mean,
        acpu: records.iter().map(|r| r.cpu_seconds).sum::<f64>() / l,
    })
}

/// One `metrics.csv` row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsRow {
    pub instance: String,
    pub algo: String,
    pub nbhd: String,
    #[serde(rename = "BRE")]
    pub bre: f64,
    #[serde(rename = "ARE")]
    pub are: f64,
    #[serde(rename = "WRE")]
    pub wre: f64,
    #[serde(rename = "ARPD")]
    pub arpd: f64,
    #[serde(rename = "ACPU")]
    pub acpu: f64,
}

/// Metrics for every distinct (instance, algo, nbhd) cell, sorted by cell.
pub fn metrics_table(records: &[ResultRecord], best: &BestKnownTable) -> Result<Vec<MetricsRow>> {
    let mut cells: BTreeMap<(String, String, String), Vec<ResultRecord>> = BTreeMap::new();
    for r in records {
        cells.entry(r.cell()).or_default().push(r.clone());
    }
    cells
        .into_iter()
        .map(|((instance, algo, nbhd), rs)| {
            let m = compute_metrics(&rs, best.get(&instance)?)?;
            Ok(MetricsRow {
                instance,
                algo,
                nbhd,
                bre: m.bre,
                are: m.are,
                wre: m.wre,
                arpd: m.arpd,
                acpu: m.acpu,
            })
        })
        .collect()
}

pub fn write_metrics(path: impl AsRef<Path>, rows: &[MetricsRow]) -> Result<()> {
    let path = path.as_ref();
    let mut w = csv::Writer::from_path(path).map_err(|e| csv_err(path, e))?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

/// Per (algo, nbhd, size) means of the cell metrics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub algo: String,
    pub nbhd: String,
    pub size: usize,
    pub instances: usize,
    #[serde(rename = "BRE")]
    pub bre: f64,
    #[serde(rename = "ARE")]
    pub are: f64,
    #[serde(rename = "WRE")]
    pub wre: f64,
    #[serde(rename = "ARPD")]
    pub arpd: f64,
    #[serde(rename = "ACPU")]
    pub acpu: f64,
}

/// Groups metric rows by algorithm, neighborhood and instance size (`size_of` maps names to sizes).
pub fn summarize(rows: &[MetricsRow], size_of: impl Fn(&str) -> Option<usize>) -> Vec<SummaryRow> {
    let mut groups: BTreeMap<(String, String, usize), Vec<&MetricsRow>> = BTreeMap::new();
    for r in rows {
        let size = size_of(&r.instance).unwrap_or(0);
        groups
            .entry((r.algo.clone(), r.nbhd.clone(), size))
            .or_default()
            .push(r);
    }
    groups
        .into_iter()
        .map(|((algo, nbhd, size), rs)| {
            let k = rs.len() as f64;
            let avg = |f: fn(&MetricsRow) -> f64| rs.iter().map(|r| f(r)).sum::<f64>() / k;
            SummaryRow {
                algo,
                nbhd,
                size,
                instances: rs.len(),
                bre: avg(|r| r.bre),
                are: avg(|r| r.are),
                wre: avg(|r| r.wre),
                arpd: avg(|r| r.arpd),
                acpu: avg(|r| r.acpu),
            }
        })
        .collect()
}

pub fn write_summary(path: impl AsRef<Path>, rows: &[SummaryRow]) -> Result<()> {
    let path = path.as_ref();
    let mut w = csv::Writer::from_path(path).map_err(|e| csv_err(path, e))?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

/// Appends records to a results file, writing the header when the file is new.
pub struct ResultsWriter {
    inner: csv::Writer<File>,
    path: PathBuf,
}

impl ResultsWriter {
    pub fn append(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let fresh = std::fs::metadata(path).map(|m| m.len() == 0).unwrap_or(true);
        let file = std::fs::OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .map_err(|e| Error::io(path, e))?;
        let inner = csv::WriterBuilder::new().has_headers(fresh).from_writer(file);
        Ok(Self {
            inner,
            path: path.to_path_buf(),
        })
    }

    pub fn write(&mut self, r: &ResultRecord) -> Result<()> {
        self.inner.serialize(r)?;
        self.inner.flush().map_err(|e| Error::io(&self.path, e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(instance: &str, algo: &str, rep: u32, best: f64, cpu: f64) -> ResultRecord {
        ResultRecord {
            instance: instance.into(),
            algo: algo.into(),
            nbhd: "swp".into(),
            seed: 0,
            rep,
            best_mtat: best,
            evals: 10,
            cpu_seconds: cpu,
        }
    }

    #[test]
    fn two_rep_example() {
        let m = compute_metrics(&[rec("a", "ss", 1, 110.0, 1.0), rec("a", "ss", 2, 105.0, 3.0)], 100.0).unwrap();
        assert!((m.arpd - 0.075).abs() < 1e-12);
        assert!((m.bre - 0.05).abs() < 1e-12);
        assert!((m.wre - 0.10).abs() < 1e-12);
        assert_eq!(m.acpu, 2.0);
        let z = compute_metrics(&[rec("a", "ss", 1, 100.0, 0.0)], 100.0).unwrap();
        assert_eq!((z.bre, z.are, z.wre, z.arpd), (0.0, 0.0, 0.0, 0.0));
    }

    #[test]
    fn missing_best_known_is_lookup_error() {
        let t = BestKnownTable::from_records(&[rec("a", "ss", 1, 5.0, 0.0)]);
        assert!(matches!(t.get("b"), Err(Error::Lookup(_))));
        assert!(metrics_table(&[rec("b", "ss", 1, 5.0, 0.0)], &t).is_err());
    }

    #[test]
    fn table_has_row_per_cell() {
        let rs = vec![
            rec("a", "ss", 1, 10.0, 0.0),
            rec("a", "ss", 2, 12.0, 0.0),
            rec("a", "sa", 1, 11.0, 0.0),
            rec("b", "sa", 1, 7.0, 0.0),
        ];
        let best = BestKnownTable::from_records(&rs);
        assert_eq!(best.get("a").unwrap(), 10.0);
        let rows = metrics_table(&rs, &best).unwrap();
        assert_eq!(rows.len(), 3);
        let summary = summarize(&rows, |_| Some(2));
        assert_eq!(summary.len(), 2);
    }
}
