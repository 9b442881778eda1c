// Serializing a trace and re-checking it from its raw matrices, then
// showing which check catches a tampered trace.

use grassmann_cf::{compute_plucker, mee_run, verify_trace, IntMatrix, MeeOptions};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let p = compute_plucker(&IntMatrix::from_rows(&[vec![3, 0, 6, 3, -3], vec![1, 2, -1, 5, 4]])?)?;
    println!("input {p}");
    let trace = mee_run(&p, MeeOptions::default())?.to_json();
    let json = serde_json::to_string(&trace)?;
    println!("trace: {} steps, {} bytes of JSON", trace.steps.len(), json.len());

    let report = verify_trace(&serde_json::from_str(&json)?, &p)?;
    print!("{report}");
    assert!(report.all_passed());

    let mut tampered = trace.clone();
    tampered.steps[0].matrix[0][1] = "1".into();
    let report = verify_trace(&tampered, &p)?;
    print!("after tampering:\n{report}");
    assert!(!report.all_passed());
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
