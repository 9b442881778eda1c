// Plücker coordinates of an integer matrix, the Plücker relations, and the
// lexicographic indexing of coordinates.

use grassmann_cf::{check_relations, compute_plucker, is_primitive, lex_rank, plucker_gcd, IntMatrix};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let m = IntMatrix::from_rows(&[vec![1, 0, 0, 1, 1, 1], vec![0, 1, 0, -3, -2, -1], vec![0, 0, 1, 8, 5, 1]])?;
    let p = compute_plucker(&m)?;
    println!("matrix:\n{m}plucker: {p}");
    assert_eq!(p.to_text(), "3 6 : 1 8 5 1 3 2 1 1 5 3 1 1 1 3 7 4 1 2 1 -1");

    // p_{4,5,6} is the last coordinate in lex order
    assert_eq!(lex_rank(6, &[4, 5, 6])?, 19);
    println!("p_456 = {} at rank {}", p.get(&[4, 5, 6]), lex_rank(6, &[4, 5, 6])?);

    assert!(check_relations(&p));
    println!("relations hold, gcd = {}, primitive: {}", plucker_gcd(&p)?, is_primitive(&p));
    println!("json: {}", serde_json::to_string(&p.to_json())?);
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
