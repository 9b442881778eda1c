// Every basis of determinant p̂ pulled back through a trace gives vectors
// spanning the same plane with the same Plücker vector up to sign.

use grassmann_cf::reconstruct::default_seed;
use grassmann_cf::sample::{random_full_rank, random_unimodular, rng_from_seed};
use grassmann_cf::{admissible_tuple, compute_plucker, minee_run, sublattice_index};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = rng_from_seed(5);
    let m = random_full_rank(&mut rng, 2, 5, 9)?;
    let p = compute_plucker(&m)?;
    let trace = minee_run(&p)?;
    let p_hat = trace.p_hat.clone().unwrap();
    println!("input {p}, sublattice index {}", sublattice_index(&m)?);

    for i in 0..3 {
        let seed = random_unimodular(&mut rng, 2, 6).mul(&default_seed(2, &p_hat))?;
        let tuple = admissible_tuple(&trace, &seed)?;
        let q = compute_plucker(&tuple)?;
        println!("seed {i}: {:?} -> {:?}", seed.to_rows(), tuple.to_rows());
        assert!(q == p || q.negated() == p);
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
