//! Seeded random instances.

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::{IntMatrix, LatticeMatrix};
use crate::plucker::{compute_plucker, PluckerVector};

/// Draws tried before giving up on a full-rank matrix.
pub const MAX_DRAWS: usize = 1000;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform k×n matrix with entries in `[−bound, bound]` (may be singular).
pub fn random_matrix<R: Rng + ?Sized>(rng: &mut R, k: usize, n: usize, bound: i64) -> LatticeMatrix {
    let rows: Vec<Vec<i64>> = (0..k).map(|_| (0..n).map(|_| rng.gen_range(-bound..=bound)).collect()).collect();
    IntMatrix::from_rows(&rows).expect("rectangular")
}

/// Full-rank k×n matrix with entries in `[−bound, bound]`, by rejection.
pub fn random_full_rank<R: Rng + ?Sized>(rng: &mut R, k: usize, n: usize, bound: i64) -> Result<LatticeMatrix> {
    if bound < 1 {
        return Err(Error::Validation(format!("bound must be at least 1, got {bound}")));
    }
    if k == 0 || k > n {
        return Err(Error::Dimension(format!("need 1 <= k <= n, got k = {k}, n = {n}")));
    }
    for _ in 0..MAX_DRAWS {
        let m = random_matrix(rng, k, n, bound);
        if m.rank() == k {
            return Ok(m);
        }
    }
    Err(Error::Invariant(format!("no full-rank {k}x{n} matrix after {MAX_DRAWS} draws")))
}

/// A seeded full-rank matrix and its Plücker vector.
pub fn random_instance(k: usize, n: usize, bound: i64, seed: u64) -> Result<(LatticeMatrix, PluckerVector)> {
    let mut rng = rng_from_seed(seed);
    let m = random_full_rank(&mut rng, k, n, bound)?;
    let p = compute_plucker(&m)?;
    Ok((m, p))
}

/// Random unimodular k×k matrix as a product of elementary operations.
pub fn random_unimodular<R: Rng + ?Sized>(rng: &mut R, k: usize, steps: usize) -> IntMatrix {
    let mut u = IntMatrix::identity(k);
    if k < 2 {
        return u;
    }
    for _ in 0..steps {
        let a = rng.gen_range(0..k);
        let mut b = rng.gen_range(0..k - 1);
        if b >= a {
            b += 1;
        }
        let q = BigInt::from(rng.gen_range(-3i64..=3));
        for c in 0..k {
            let add = &u[(b, c)] * &q;
            u[(a, c)] += add;
        }
        if rng.gen_bool(0.3) {
            for c in 0..k {
                u[(a, c)] = -&u[(a, c)];
            }
        }
    }
    u
}
