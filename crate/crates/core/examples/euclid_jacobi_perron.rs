// The one-dimensional subroutines: Euclid as a continued fraction and the
// Jacobi–Perron reduction of an integer vector to its gcd.

use grassmann_cf::{euclid_cf, jacobi_perron};
use num_bigint::BigInt;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let (a, b) = (BigInt::from(355), BigInt::from(113));
    let e = euclid_cf(&a, &b)?;
    let qs: Vec<String> = e.quotients.iter().map(ToString::to_string).collect();
    println!("355/113 = [{}], gcd {}", qs.join("; "), e.gcd);
    let image = e.transform().mul_vec(&[a, b])?;
    println!("step matrices send (355, 113) to ({}, {})", image[0], image[1]);
    assert_eq!(e.quotients, vec![3.into(), 7.into(), 16.into()]);

    let x: Vec<BigInt> = [84, -60, 210, 35].into_iter().map(BigInt::from).collect();
    let jp = jacobi_perron(&x)?;
    println!("jacobi-perron on {x:?}: gcd {}, {} steps", jp.gcd, jp.elements.len());
    print!("{}", jp.matrix);
    let y = jp.matrix.mul_vec(&x)?;
    assert_eq!(y[0], jp.gcd);
    assert!(y[1..].iter().all(|v| v == &BigInt::from(0)));
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
