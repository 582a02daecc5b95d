use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use labsched::bench::{self, BestKnownTable, ResultRecord, ResultsWriter};
use labsched::decoder::{self, TiePolicy};
use labsched::instance::{self, Instance};
use labsched::landscape::{self, GraphFormat, LonConfig};
use labsched::neighborhood::{self, MoveKind};
use labsched::rng::hash_labels;
use labsched::search::{self, Algorithm, NeighborhoodChoice, RunOptions, SolverConfig};
use labsched::{Error, Result};

#[derive(Parser)]
#[command(
    name = "labsched",
    version,
    about = "Specimen scheduling for distributed batch-machine lab lines"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate benchmark instances
    Gen {
        #[arg(long, value_enum)]
        profile: Profile,
        #[arg(long)]
        bio: usize,
        #[arg(long)]
        immuno: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run an engine and append one row per repetition to a results CSV
    Solve {
        #[command(flatten)]
        engine: EngineArgs,
        #[arg(long, default_value_t = 1)]
        reps: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decode a specimen sequence into a schedule
    Decode {
        #[arg(long)]
        instance: PathBuf,
        /// Comma-separated specimen ids
        #[arg(long)]
        vss: String,
        #[arg(long, default_value = "seeded-random")]
        tie: String,
        /// Write the schedule JSON here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print one CSV row per batch instead of JSON
        #[arg(long)]
        csv: bool,
    },
    /// Check an instance, or a schedule against it
    Validate {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        schedule: Option<PathBuf>,
    },
    /// Pair-order distance between two permutations
    Distance {
        #[arg(long)]
        p1: String,
        #[arg(long)]
        p2: String,
    },
    /// Theoretical (and optionally sampled) inter-neighbor distance moments
    Moments {
        #[arg(long)]
        kind: MoveKind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = neighborhood::DEFAULT_BLOCK_SIZE)]
        block: usize,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Landscape analysis
    Landscape {
        #[arg(value_enum)]
        what: LandscapeKind,
        #[command(flatten)]
        engine: EngineArgs,
        #[arg(long, default_value_t = 500)]
        walk: usize,
        #[arg(long, default_value_t = 1)]
        lag: usize,
        #[arg(long)]
        runs: Option<usize>,
        #[arg(long)]
        stagnation: Option<u64>,
        /// Also connect distinct solutions equal to the best-so-far
        #[arg(long)]
        neutral: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run an experiment manifest
    Bench {
        #[arg(long)]
        manifest: PathBuf,
    },
    /// Per-cell error metrics from results files
    Metrics {
        #[arg(long, required = true, num_args = 1..)]
        results: Vec<PathBuf>,
        /// Best-known table; the minimum per instance of the results when absent
        #[arg(long)]
        bestknown: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        summary: Option<PathBuf>,
    },
    /// Minimum recorded MTAT per instance
    Bestknown {
        #[arg(long, required = true, num_args = 1..)]
        results: Vec<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Profile {
    Toy,
    Realistic,
}

#[derive(Clone, Copy, ValueEnum)]
enum LandscapeKind {
    Fdc,
    Ac,
    Lon,
}

#[derive(Args)]
struct EngineArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long)]
    algo: Option<Algorithm>,
    #[arg(long)]
    nbhd: Option<NeighborhoodChoice>,
    #[arg(long)]
    evals: Option<u64>,
    #[arg(long)]
    tie: Option<String>,
    /// TOML file overriding engine defaults; flags win over the file
    #[arg(long)]
    config: Option<PathBuf>,
}

impl EngineArgs {
    fn load(&self) -> Result<(Instance, SolverConfig)> {
        let inst = instance::load_instance(&self.instance)?;
        let mut cfg = match &self.config {
            Some(p) => SolverConfig::load(p)?,
            None => SolverConfig::default(),
        };
        if let Some(a) = self.algo {
            cfg.algo = a;
        }
        if let Some(n) = self.nbhd {
            cfg.moves.neighborhood = n;
        }
        if let Some(e) = self.evals {
            cfg.evals = e;
        }
        if let Some(t) = &self.tie {
            cfg.tie = TiePolicy::parse(t)?;
        }
        Ok((inst, cfg))
    }
}

fn parse_ids(s: &str) -> Result<Vec<u32>> {
    s.trim_matches(|c| c == '[' || c == ']')
        .split([',', ' '])
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad specimen id `{t}`")))
        })
        .collect()
}

/// `3.47E-04` style.
fn sci(x: f64) -> String {
    let s = format!("{x:.2E}");
    match s.split_once('E') {
        Some((m, e)) => {
            let (sign, digits) = e.strip_prefix('-').map_or(("+", e), |d| ("-", d));
            format!("{m}E{sign}{digits:0>2}")
        }
        None => s,
    }
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn write_csv<S: serde::Serialize>(path: &Path, rows: &[S]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush().map_err(|e| Error::Io {
        path: path.to_path_buf(),
        source: e,
    })
}

fn run(cli: Cli) -> Result<()> {
    match cli.cmd {
        Cmd::Gen {
            profile,
            bio,
            immuno,
            count,
            seed,
            out,
        } => {
            let prof = match profile {
                Profile::Toy => instance::toy_profile(),
                Profile::Realistic => instance::realistic_profile(),
            };
            std::fs::create_dir_all(&out).map_err(|e| Error::Io {
                path: out.clone(),
                source: e,
            })?;
            for idx in 1..=count {
                let inst = instance::generate_instance(&prof, bio, immuno, idx, seed)?;
                let path = out.join(format!("{}.json", inst.name));
                instance::save_instance(&inst, &path)?;
                println!("{}", path.display());
            }
        }
        Cmd::Solve {
            engine,
            reps,
            seed,
            out,
        } => {
            let (inst, cfg) = engine.load()?;
            let mut writer = out.as_deref().map(ResultsWriter::append).transpose()?;
            let (algo, nbhd) = (cfg.algo.to_string(), cfg.moves.neighborhood.to_string());
            for rep in 1..=reps {
                let cell_seed = hash_labels(seed, &[&inst.name, &algo, &nbhd, &rep.to_string()]);
                let res = search::solve(&inst, &cfg, cell_seed)?;
                let rec = ResultRecord {
                    instance: inst.name.clone(),
                    algo: algo.clone(),
                    nbhd: nbhd.clone(),
                    seed: cell_seed,
                    rep,
                    best_mtat: res.best_mtat,
                    evals: res.evaluations,
                    cpu_seconds: res.seconds,
                };
                println!(
                    "rep {rep}: mtat {:.2} after {} evals ({:.3}s)",
                    rec.best_mtat, rec.evals, rec.cpu_seconds
                );
                if let Some(w) = writer.as_mut() {
                    w.write(&rec)?;
                } else {
                    let seq: Vec<String> = res.best.iter().map(u32::to_string).collect();
                    println!("  vss {}", seq.join(","));
                }
            }
        }
        Cmd::Decode {
            instance: path,
            vss,
            tie,
            out,
            csv,
        } => {
            let inst = instance::load_instance(&path)?;
            let sched = decoder::decode_fabm(&inst, &parse_ids(&vss)?, &TiePolicy::parse(&tie)?)?;
            if csv {
                decoder::write_batch_csv(&sched, std::io::stdout().lock())?;
            } else if let Some(p) = out {
                decoder::save_schedule(&sched, &p)?;
                println!("mtat {}", sched.mtat_display());
            } else {
                println!("{}", decoder::schedule_to_json(&sched));
            }
        }
        Cmd::Validate {
            instance: path,
            schedule,
        } => {
            let inst = instance::load_instance(&path)?;
            let problems: Vec<String> = match schedule {
                None => instance::validate_instance(&inst)
                    .iter()
                    .map(ToString::to_string)
                    .collect(),
                Some(s) => {
                    let sched = decoder::load_schedule(&s)?;
                    decoder::validate_schedule(&inst, &sched)
                        .iter()
                        .map(ToString::to_string)
                        .collect()
                }
            };
            if problems.is_empty() {
                println!("ok");
            } else {
                for p in &problems {
                    println!("{p}");
                }
                return Err(Error::Infeasible {
                    constraint: 0,
                    detail: format!("{} violation(s)", problems.len()),
                });
            }
        }
        Cmd::Distance { p1, p2 } => {
            let d = neighborhood::jpr_distance(&parse_ids(&p1)?, &parse_ids(&p2)?)?;
            println!("{d}");
        }
        Cmd::Moments {
            kind,
            n,
            block,
            samples,
            seed,
        } => {
            let b = (kind == MoveKind::BlockInsert).then(|| neighborhood::block_count(n, block));
            let t = neighborhood::theoretical_moments(kind, n, b)?;
            match samples {
                None => {
                    println!("kind,n,mean,variance");
                    println!("{kind},{n},{:.4},{}", t.mean, sci(t.variance));
                }
                Some(m) => {
                    let e = neighborhood::empirical_moments(kind, n, block, m, seed)?;
                    println!("kind,n,mean,variance,sampled_mean,sampled_variance");
                    println!(
                        "{kind},{n},{:.4},{},{:.4},{}",
                        t.mean,
                        sci(t.variance),
                        e.mean,
                        sci(e.variance)
                    );
                }
            }
        }
        Cmd::Landscape {
            what,
            engine,
            walk,
            lag,
            runs,
            stagnation,
            neutral,
            seed,
            out,
        } => landscape_cmd(what, &engine, walk, lag, runs, stagnation, neutral, seed, &out)?,
        Cmd::Bench { manifest } => {
            let r = bench::run_suite(&manifest)?;
            println!(
                "{} cells run, {} already present, {} errors; metrics in {}",
                r.executed,
                r.skipped,
                r.errors,
                r.metrics.display()
            );
        }
        Cmd::Metrics {
            results,
            bestknown,
            out,
            summary,
        } => {
            let mut records = Vec::new();
            for r in &results {
                records.extend(bench::read_results(r)?);
            }
            let best = match bestknown {
                Some(p) => BestKnownTable::load(p)?,
                None => BestKnownTable::from_records(&records),
            };
            let rows = bench::metrics_table(&records, &best)?;
            bench::write_metrics(&out, &rows)?;
            if let Some(s) = summary {
                let sizes = |name: &str| name.split('_').skip(1).take(2).map(|p| p.parse::<usize>().ok()).sum();
                bench::write_summary(s, &bench::summarize(&rows, sizes))?;
            }
            println!("{} rows -> {}", rows.len(), out.display());
        }
        Cmd::Bestknown { results, out } => {
            let mut best = BestKnownTable::default();
            for r in &results {
                best.absorb(&BestKnownTable::from_records(&bench::read_results(r)?));
            }
            best.save(&out)?;
            println!("{} instances -> {}", best.0.len(), out.display());
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn landscape_cmd(
    what: LandscapeKind,
    engine: &EngineArgs,
    walk: usize,
    lag: usize,
    runs: Option<usize>,
    stagnation: Option<u64>,
    neutral: bool,
    seed: u64,
    out: &Path,
) -> Result<()> {
    let (inst, cfg) = engine.load()?;
    let n = inst.specimen_count();
    if let Some(dir) = out.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| Error::Io {
            path: dir.to_path_buf(),
            source: e,
        })?;
    }
    match what {
        LandscapeKind::Fdc => {
            let opts = RunOptions {
                keep_accepted: true,
                ..RunOptions::default()
            };
            let res = search::solve_with(&inst, &cfg, seed, opts)?;
            let samples = landscape::fdc_samples(&res)?;
            write_csv(&with_suffix(out, "_fdc.csv"), &samples)?;
            println!("fdc {:.4} over {} samples", landscape::fdc(&samples)?, samples.len());
        }
        LandscapeKind::Ac => {
            let kind = match cfg.resolved_moves(n).neighborhood {
                NeighborhoodChoice::Fixed(k) => k,
                _ => return Err(Error::InvalidArgument("random walks need a single move kind".into())),
            };
            let series = landscape::random_walk(&inst, kind, walk, seed, &cfg.tie)?;
            #[derive(serde::Serialize)]
            struct Row {
                lag: usize,
                ac: f64,
            }
            let rows: Vec<Row> = (0..=lag)
                .map(|s| landscape::autocorrelation(&series.values, s).map(|ac| Row { lag: s, ac }))
                .collect::<Result<_>>()?;
            write_csv(&with_suffix(out, "_ac.csv"), &rows)?;
            println!("AC({lag}) = {:.4}", rows[lag].ac);
        }
        LandscapeKind::Lon => {
            let mut lc = if n <= 8 {
                LonConfig::toy(cfg.clone(), seed)
            } else {
                LonConfig::large(cfg.clone(), seed)
            };
            if let Some(r) = runs {
                lc.runs = r;
            }
            if let Some(m) = stagnation {
                lc.stagnation = m;
            }
            if engine.evals.is_some() {
                lc.solver.evals = cfg.evals;
            }
            lc.neutral = neutral;
            let g = landscape::build_lon(&inst, &lc)?;
            let p = landscape::compress_plateaus(&g, landscape::DEFAULT_PLATEAU_TOLERANCE);
            for f in [GraphFormat::GraphMl, GraphFormat::Dot] {
                landscape::export_graph(&g, Some(&p), f, with_suffix(out, &format!(".{}", f.extension())))?;
            }
            #[derive(serde::Serialize)]
            struct Stats {
                nodes: usize,
                edges: usize,
                plateaus: usize,
                average_size: f64,
                sinks: usize,
            }
            let stats = Stats {
                nodes: g.nodes.len(),
                edges: g.edges.len(),
                plateaus: p.plateaus.len(),
                average_size: p.average_size,
                sinks: p.sink_count(),
            };
            println!(
                "{} nodes, {} edges, {} plateaus (average size {:.3}), {} sinks",
                stats.nodes, stats.edges, stats.plateaus, stats.average_size, stats.sinks
            );
            write_csv(&with_suffix(out, "_plateaus.csv"), &[stats])?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
