//! Reward-driven neighborhood selection and the size-based lookup.

use labsched::instance::{generate_instance, realistic_profile};
use labsched::neighborhood::MoveKind;
use labsched::rng;
use labsched::search::{
    aps_select_neighborhood, ml_select, ml_update, solve, Algorithm, MlState, MoveSettings, NeighborhoodChoice,
    SolverConfig,
};

fn main() -> labsched::Result<()> {
    let mut state = MlState::default();
    let mut r = rng::stream(1, &[]);
    for (before, after) in [(100.0, 90.0), (90.0, 88.0), (88.0, 60.0), (60.0, 60.0)] {
        let kind = ml_select(&state, &mut r);
        ml_update(&mut state, kind, before, after, 5);
        println!("trained {kind}: rewards {:?}", state.rewards);
    }
    println!("probabilities {:.3?}", state.probabilities);

    for n in [8, 100, 200, 500] {
        println!("n = {n}: {}", aps_select_neighborhood(n));
    }

    let inst = generate_instance(&realistic_profile(), 12, 12, 1, 5)?;
    let cfg = SolverConfig {
        algo: Algorithm::Sa,
        evals: 4_000,
        moves: MoveSettings::with(NeighborhoodChoice::MetaLamarckian),
        ..SolverConfig::default()
    };
    let res = solve(&inst, &cfg, 2)?;
    println!("\nSA-ML best {:.2}", res.best_mtat);
    for k in MoveKind::ALL {
        println!("  {k}: {} moves", res.stats.moves_by_kind[k.index()]);
    }
    Ok(())
}
