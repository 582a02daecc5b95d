//! Decodes the six-specimen worked example and prints the batch plan.

use labsched::decoder::{decode_fabm, export_assignment, realize_from_assignment, validate_schedule, TiePolicy};
use labsched::fixtures::{example6, example6_assignment, worked_example_ties, EXAMPLE6_SEQUENCE};

fn main() -> labsched::Result<()> {
    let inst = example6();
    let sched = decode_fabm(&inst, &EXAMPLE6_SEQUENCE, &worked_example_ties())?;

    println!("machine  pos  start  end   members");
    for b in &sched.batches {
        let members: Vec<String> = b.members.iter().map(|o| format!("O{}.{}", o.specimen, o.op)).collect();
        println!(
            "{:<8} {:>3} {:>6} {:>5}   {}",
            b.machine,
            b.position,
            b.start,
            b.completion,
            members.join(" ")
        );
    }
    println!("lines  {:?}", sched.line_of);
    println!("tat    {:?}", sched.tat);
    println!("mtat   {}", sched.mtat_display());
    assert!(validate_schedule(&inst, &sched).is_empty());

    // the same schedule from explicit assignment variables
    let recorded = realize_from_assignment(&inst, &example6_assignment())?;
    println!("recorded assignment mtat {}", recorded.mtat_display());

    // other tie policies may batch differently
    for tie in [TiePolicy::LowestIndex, TiePolicy::SeededRandom { seed: 1 }] {
        let s = decode_fabm(&inst, &EXAMPLE6_SEQUENCE, &tie)?;
        let again = realize_from_assignment(&inst, &export_assignment(&s))?;
        println!(
            "{tie:?}: mtat {} (round trip {})",
            s.mtat_display(),
            again.mtat_display()
        );
    }
    Ok(())
}
