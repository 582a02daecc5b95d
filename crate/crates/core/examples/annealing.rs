//! Simulated annealing against its fixed-temperature variant on a generated instance.

use labsched::instance::{generate_instance, realistic_profile};
use labsched::neighborhood::MoveKind;
use labsched::search::{anneal, AnnealConfig, MoveSettings, NeighborhoodChoice};

fn main() -> labsched::Result<()> {
    let inst = generate_instance(&realistic_profile(), 10, 10, 1, 7)?;
    for kind in MoveKind::ALL {
        let base = AnnealConfig {
            budget: 5_000,
            moves: MoveSettings::with(NeighborhoodChoice::Fixed(kind)),
            seed: 3,
            ..AnnealConfig::default()
        };
        let sa = anneal(&inst, &base)?;
        let fta = anneal(&inst, &base.clone().fixed_temperature())?;
        println!(
            "{kind}: SA {:.2} (T0 {:.1}, {} uphill)  FTA {:.2}",
            sa.best_mtat, sa.stats.initial_temperature, sa.stats.uphill_accepted, fta.best_mtat
        );
    }
    Ok(())
}
