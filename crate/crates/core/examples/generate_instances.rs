//! Builds the toy benchmark family, writes it to a temp directory and reads it back.

use labsched::instance::{
    check_profile_bounds, generate_instance, load_instance, save_instance, toy_benchmark, toy_profile,
    validate_instance,
};

fn main() -> labsched::Result<()> {
    let dir = std::env::temp_dir().join("labsched-toy");
    std::fs::create_dir_all(&dir).expect("temp dir");
    let profile = toy_profile();

    for spec in toy_benchmark() {
        let inst = generate_instance(&profile, spec.n_bio, spec.n_immuno, spec.idx, 2024)?;
        let path = dir.join(format!("{}.json", inst.name));
        save_instance(&inst, &path)?;

        let back = load_instance(&path)?;
        assert_eq!(back, inst);
        assert!(validate_instance(&back).is_empty());
        assert!(check_profile_bounds(&back, &profile).is_empty());
        println!(
            "{:<16} {} specimens, {} machines",
            back.name,
            back.specimen_count(),
            back.machines().count()
        );
    }
    println!("written to {}", dir.display());
    Ok(())
}
