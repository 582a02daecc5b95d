//! A small experiment: manifest, suite run, metrics and Friedman ranks.

use std::collections::BTreeMap;

use labsched::bench::{friedman_ranks, read_results, run_suite};
use labsched::instance::{generate_instance, save_instance, toy_profile};

fn main() -> labsched::Result<()> {
    let dir = std::env::temp_dir().join("labsched-suite");
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(dir.join("instances")).expect("temp dir");
    for idx in 1..=3 {
        let inst = generate_instance(&toy_profile(), 4, 4, idx, 77)?;
        save_instance(&inst, dir.join("instances").join(format!("{}.json", inst.name)))?;
    }
    let manifest = r#"
instances = ["instances/*.json"]
algorithms = ["sa", "fta", "ss"]
neighborhoods = ["swp", "inv"]
reps = 5
budget = 2000
seed = 42
"#;
    let path = dir.join("manifest.toml");
    std::fs::write(&path, manifest).expect("manifest");

    let report = run_suite(&path)?;
    println!("{} cells run, {} skipped", report.executed, report.skipped);
    let again = run_suite(&path)?;
    println!("rerun: {} cells run, {} skipped", again.executed, again.skipped);

    print!("{}", std::fs::read_to_string(&report.metrics).expect("metrics"));

    // mean best MTAT per instance and treatment, ranked per instance
    let mut table: BTreeMap<String, BTreeMap<String, Vec<f64>>> = BTreeMap::new();
    for r in read_results(&report.results)? {
        table
            .entry(r.instance)
            .or_default()
            .entry(format!("{}-{}", r.algo, r.nbhd))
            .or_default()
            .push(r.best_mtat);
    }
    let treatments: Vec<String> = table
        .values()
        .next()
        .map(|t| t.keys().cloned().collect())
        .unwrap_or_default();
    let matrix: Vec<Vec<f64>> = table
        .values()
        .map(|t| t.values().map(|v| v.iter().sum::<f64>() / v.len() as f64).collect())
        .collect();
    let f = friedman_ranks(&matrix)?;
    for (t, r) in treatments.iter().zip(&f.average_ranks) {
        println!("{t:<8} average rank {r:.2}");
    }
    println!("Friedman chi-square {:.3}", f.chi_square);
    Ok(())
}
