//! Making all Plücker coordinates of a point of G(2, n) positive using only
//! sign flips and reorderings of the basis, working from the coordinates
//! alone.
//!
//! After the columns w_2..w_n are flipped so that every `p_{1,i} > 0`, all of
//! them lie in the open half-plane to the left of w_1, where
//! `p_{a,b} = det(w_a, w_b) > 0` exactly when w_a comes before w_b
//! counterclockwise. Sorting by that comparator makes every coordinate
//! positive.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::plucker::PluckerVector;
use crate::transforms::{push_plucker, UnimodularTransform};

/// How Stage II orders the columns.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SwapOrder {
    /// Selection sort by the counterclockwise comparator (at most n − 2 swaps).
    #[default]
    Sorted,
    /// Repeatedly swap the lexicographically first pair with `p_{i,j} < 0`.
    LexScan,
}

/// Result of [`positivize_g2n`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Positivized {
    pub vector: PluckerVector,
    /// Sign flips then column swaps, in application order.
    pub transforms: Vec<UnimodularTransform>,
    pub swaps: usize,
}

pub fn positivize_g2n(p: &PluckerVector, order: SwapOrder) -> Result<Positivized> {
    if p.k() != 2 {
        return Err(Error::Validation(format!(
            "positivization by reflections and reorderings is only available for k = 2, got k = {}",
            p.k()
        )));
    }
    if let Some(z) = p.first_zero() {
        return Err(Error::ZeroCoordinate(format!("{z:?}")));
    }
    let n = p.n();
    let mut cur = p.clone();
    let mut transforms = Vec::new();
    let mut apply = |cur: &mut PluckerVector, u: UnimodularTransform| -> Result<()> {
        *cur = push_plucker(cur, &u)?;
        transforms.push(u);
        Ok(())
    };

    for i in 2..=n {
        if cur.get(&[1, i]).is_negative() {
            apply(&mut cur, UnimodularTransform::sign_flip(n, i)?)?;
        }
    }

    let mut swaps = 0;
    match order {
        SwapOrder::Sorted => {
            for pos in 2..n {
                let mut first = pos;
                for d in pos + 1..=n {
                    if cur.skew(d, first).is_positive() {
                        first = d;
                    }
                }
                if first != pos {
                    apply(&mut cur, UnimodularTransform::column_swap(n, pos, first)?)?;
                    swaps += 1;
                }
            }
        }
        SwapOrder::LexScan => {
            // each swap removes at least one inversion among columns 2..n
            let limit = (n - 1) * (n - 2) / 2;
            while swaps < limit {
                let next = cur.iter().find(|(_, v)| v.is_negative()).map(|(i, _)| i);
                let Some(idx) = next else { break };
                apply(&mut cur, UnimodularTransform::column_swap(n, idx[0], idx[1])?)?;
                swaps += 1;
            }
        }
    }

    if let Some((idx, _)) = cur.iter().find(|(_, v)| !v.is_positive()) {
        return Err(Error::NotDecomposable(format!(
            "coordinate {idx:?} stays non-positive after reordering; the input is not a point of G(2,{n})"
        )));
    }
    Ok(Positivized { vector: cur, transforms, swaps })
}

/// Parity of the number of negative coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// Sign flips and column swaps never change this for G(3, 6), which is why
/// some points there cannot be made positive by them.
pub fn negative_parity(p: &PluckerVector) -> Result<Parity> {
    if p.entries().iter().any(Zero::is_zero) {
        return Err(Error::ZeroCoordinate(format!("{:?}", p.first_zero().unwrap())));
    }
    let neg = p.entries().iter().filter(|e| e.is_negative()).count();
    Ok(if neg % 2 == 0 { Parity::Even } else { Parity::Odd })
}
