// The min-entry algorithm in G(3, 6), where positivization is unavailable,
// and on a non-primitive input where the terminal coordinate is the gcd.

use grassmann_cf::{assemble, compute_plucker, minee_run, plucker_gcd, IntMatrix, PluckerVector, StageLabel};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let p = PluckerVector::from_i64(3, 6, &[1, 8, 5, 1, 3, 2, 1, 1, 5, 3, 1, 1, 1, 3, 7, 4, 1, 2, 1, -1])?;
    let trace = minee_run(&p)?;
    println!(
        "G(3,6): {} steps ({} subtractions, {} JP reductions, {} drops), p_hat = {}",
        trace.len(),
        trace.count(StageLabel::MinSubtract),
        trace.count(StageLabel::DimReductionJp),
        trace.drop_count(),
        trace.p_hat.as_ref().unwrap()
    );
    let r = assemble(&trace, &p)?;
    print!("{}", r.matrix);
    assert_eq!(compute_plucker(&r.matrix)?, p);

    let m = IntMatrix::from_rows(&[vec![6, 0, 3, 9, 3], vec![0, 2, 4, -2, 6], vec![1, 1, 0, 5, -1]])?;
    let q = compute_plucker(&m)?;
    let t = minee_run(&q)?;
    let p_hat = num_traits::Signed::abs(t.p_hat.as_ref().unwrap());
    println!("{q}: gcd {} = |p_hat| {p_hat}", plucker_gcd(&q)?);
    assert_eq!(plucker_gcd(&q)?, p_hat);
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
