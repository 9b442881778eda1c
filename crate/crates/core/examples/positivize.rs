// Making every coordinate of a G(2, n) point positive with sign flips and
// column swaps, and the parity obstruction that blocks the same in G(3, 6).

use grassmann_cf::{negative_parity, positivize_g2n, Parity, PluckerVector, SwapOrder};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let p = PluckerVector::from_i64(2, 4, &[10, 10, 12, -15, 3, 21])?;
    for order in [SwapOrder::Sorted, SwapOrder::LexScan] {
        let r = positivize_g2n(&p, order)?;
        let steps: Vec<String> = r.transforms.iter().map(|u| u.descriptor().to_string()).collect();
        println!("{order:?}: {p} -> {} via {}", r.vector, steps.join(", "));
        assert_eq!(r.vector, PluckerVector::from_i64(2, 4, &[10, 10, 12, 15, 21, 3])?);
    }

    let g36 = PluckerVector::from_i64(3, 6, &[1, 8, 5, 1, 3, 2, 1, 1, 5, 3, 1, 1, 1, 3, 7, 4, 1, 2, 1, -1])?;
    assert!(positivize_g2n(&g36, SwapOrder::Sorted).is_err());
    assert_eq!(negative_parity(&g36)?, Parity::Odd);
    println!("G(3,6) example has an odd number of negative coordinates; no signed permutation fixes that");
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
