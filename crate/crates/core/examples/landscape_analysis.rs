//! Random-walk autocorrelation, fitness-distance correlation and a local optima network.

use labsched::decoder::TiePolicy;
use labsched::instance::{generate_instance, realistic_profile, toy_profile};
use labsched::landscape::{
    autocorrelation, build_lon, compress_plateaus, export_graph, fdc, fdc_samples, random_walk, GraphFormat, LonConfig,
    DEFAULT_PLATEAU_TOLERANCE,
};
use labsched::neighborhood::MoveKind;
use labsched::search::{solve_with, MoveSettings, NeighborhoodChoice, RunOptions, SolverConfig};

fn main() -> labsched::Result<()> {
    let inst = generate_instance(&realistic_profile(), 20, 20, 1, 3)?;
    for kind in MoveKind::ALL {
        let walk = random_walk(&inst, kind, 500, 9, &TiePolicy::LowestIndex)?;
        println!("{kind}: AC(1) = {:.4}", autocorrelation(&walk.values, 1)?);
    }

    let cfg = SolverConfig {
        evals: 3_000,
        ..SolverConfig::default()
    };
    let opts = RunOptions {
        keep_accepted: true,
        ..RunOptions::default()
    };
    let res = solve_with(&inst, &cfg, 4, opts)?;
    let samples = fdc_samples(&res)?;
    println!("FDC over {} accepted solutions: {:.4}", samples.len(), fdc(&samples)?);

    let toy = generate_instance(&toy_profile(), 3, 3, 1, 3)?;
    let mut lon = LonConfig::toy(
        SolverConfig {
            moves: MoveSettings::with(NeighborhoodChoice::Fixed(MoveKind::Swap)),
            ..SolverConfig::default()
        },
        1,
    );
    lon.runs = 100;
    lon.stagnation = 500;
    let g = build_lon(&toy, &lon)?;
    let p = compress_plateaus(&g, DEFAULT_PLATEAU_TOLERANCE);
    println!(
        "LON: {} nodes, {} edges, {} plateaus, {} sinks",
        g.nodes.len(),
        g.edges.len(),
        p.plateaus.len(),
        p.sink_count()
    );
    let out = std::env::temp_dir().join("labsched-lon.graphml");
    export_graph(&g, Some(&p), GraphFormat::GraphMl, &out)?;
    println!("graph written to {}", out.display());
    Ok(())
}
