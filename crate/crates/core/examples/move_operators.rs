//! The four move operators, the pair-order distance and inter-neighbor distance moments.

use labsched::neighborhood::{
    apply_move, empirical_moments, jpr_distance, scattered_block_bounds, split_blocks, theoretical_moments, Move,
    MoveKind, DEFAULT_BLOCK_SIZE,
};

fn main() -> labsched::Result<()> {
    let seq = [1, 2, 3, 4, 5, 6];
    let blocks = split_blocks(&seq, 2);
    for (kind, a, b) in [
        (MoveKind::Insert, 1, 4),
        (MoveKind::Swap, 1, 4),
        (MoveKind::Inverse, 1, 4),
        (MoveKind::BlockInsert, 1, 2),
    ] {
        let out = apply_move(&seq, Move::new(kind, a, b)?, Some(&blocks))?;
        println!("{kind} ({a},{b}): {out:?}  distance {:.3}", jpr_distance(&seq, &out)?);
    }

    println!("\nn,kind,mean,variance,sampled_mean");
    for n in [100, 200, 300, 400, 500] {
        for kind in [
            MoveKind::Inverse,
            MoveKind::Insert,
            MoveKind::Swap,
            MoveKind::BlockInsert,
        ] {
            let t = theoretical_moments(kind, n, Some(n / DEFAULT_BLOCK_SIZE))?;
            let e = empirical_moments(kind, n, DEFAULT_BLOCK_SIZE, 20_000, 1)?;
            println!("{n},{kind},{:.4},{:.2e},{:.4}", t.mean, t.variance, e.mean);
        }
    }

    let b = scattered_block_bounds(100, 25)?;
    println!(
        "\nscattered blocks at n=100: mean in [{:.6}, {:.6}], variance in [{:.2e}, {:.2e}]",
        b.mean_lower, b.mean_upper, b.var_lower, b.var_upper
    );
    Ok(())
}
