// The max-entry algorithm on (10, 10, 12, −15, 3, 21) in G(2, 4), step by
// step, followed by reconstruction of a realizing pair of vectors.

use grassmann_cf::{assemble, compute_plucker, mee_run, MeeOptions, PluckerVector, StageLabel};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let p = PluckerVector::from_i64(2, 4, &[10, 10, 12, -15, 3, 21])?;
    let trace = mee_run(&p, MeeOptions::default())?;
    for (i, step) in trace.steps.iter().enumerate() {
        println!("{i:3} n={} {:<18} {}", step.ambient_n, step.label.to_string(), step.transform.descriptor());
    }
    println!(
        "{} subtractions, {} drops, p_hat = {}",
        trace.count(StageLabel::MaxSubtract),
        trace.drop_count(),
        trace.p_hat.as_ref().unwrap()
    );

    let fast = mee_run(&p, MeeOptions { accelerate: true, ..MeeOptions::default() })?;
    println!("with accelerated subtraction: {} steps instead of {}", fast.len(), trace.len());

    let r = assemble(&trace, &p)?;
    print!("realizing matrix:\n{}", r.matrix);
    assert_eq!(compute_plucker(&r.matrix)?, p);
    assert_eq!(r.sublattice_index, 1.into());
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
