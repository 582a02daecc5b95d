//! Scatter search: constructive seeding, vote-based combination and the full engine.

use labsched::decoder::TiePolicy;
use labsched::fixtures::example6;
use labsched::instance::{generate_instance, realistic_profile};
use labsched::rng;
use labsched::search::{combine_solutions, neh_b, scatter_search, MoveSettings, NeighborhoodChoice, ScatterConfig};

fn main() -> labsched::Result<()> {
    let mut r = rng::stream(0, &[]);
    let c = combine_solutions(&[3, 1, 6, 4, 5, 2], &[3, 4, 6, 1, 5, 2], 1569.50, 1829.17, &mut r)?;
    println!("weights {:.2?}", c.weights);
    for s in &c.steps {
        println!(
            "  position {}: {} vs {} -> departures {:.2?}, parent {} donates",
            s.position,
            s.candidates[0],
            s.candidates[1],
            s.departures,
            s.donor + 1
        );
    }
    println!("trial {:?}", c.trial);

    let neh = neh_b(&example6(), 1, false, 0, &TiePolicy::LowestIndex)?;
    println!(
        "\nNEH on the worked example: {:?} mtat {:.2} ({} decodes)",
        neh.sequence, neh.mtat, neh.evaluations
    );

    let inst = generate_instance(&realistic_profile(), 20, 20, 1, 11)?;
    for nb in ["swp", "inb", "ml"] {
        let cfg = ScatterConfig {
            budget: 4_000,
            moves: MoveSettings::with(nb.parse::<NeighborhoodChoice>()?),
            seed: 5,
            ..ScatterConfig::default()
        };
        let res = scatter_search(&inst, &cfg)?;
        println!(
            "SS-{nb}: {:.2} after {} decodes, {} improvements",
            res.best_mtat,
            res.evaluations,
            res.trace.len()
        );
    }
    Ok(())
}
