//! Classical subtractive subroutines: the two-term Euclidean algorithm with
//! its regular continued fraction, and the Jacobi–Perron algorithm.
//!
//! Quotients are floored (rounded toward −∞), so a remainder always has the
//! sign of its divisor and a strictly smaller absolute value.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// Output of [`euclid_cf`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EuclidResult {
    pub gcd: BigInt,
    /// Partial quotients `a_0, …, a_N` of `p0/q0`.
    pub quotients: Vec<BigInt>,
    /// Step matrices `[[0, 1], [1, −a_i]]`, in the order they were applied.
    pub matrices: Vec<IntMatrix>,
}

impl EuclidResult {
    /// `M_N ⋯ M_1`, the accumulated map sending `(p0, q0)` to `(±gcd, 0)`.
    pub fn transform(&self) -> IntMatrix {
        self.matrices
            .iter()
            .fold(IntMatrix::identity(2), |acc, m| m.mul(&acc).expect("2x2"))
    }
}

/// Runs `(p, q) → (q, p − a·q)` with `a = ⌊p/q⌋` until `q = 0`.
pub fn euclid_cf(p0: &BigInt, q0: &BigInt) -> Result<EuclidResult> {
    if p0.is_zero() && q0.is_zero() {
        return Err(Error::Validation("Euclid on (0, 0)".into()));
    }
    let (mut p, mut q) = (p0.clone(), q0.clone());
    let mut quotients = Vec::new();
    let mut matrices = Vec::new();
    while !q.is_zero() {
        let (a, r) = p.div_mod_floor(&q);
        debug_assert!(r.abs() < q.abs());
        matrices.push(IntMatrix::from_rows(&[vec![BigInt::zero(), BigInt::one()], vec![BigInt::one(), -a.clone()]]).unwrap());
        quotients.push(a);
        p = std::mem::replace(&mut q, r);
    }
    Ok(EuclidResult { gcd: p.abs(), quotients, matrices })
}

/// Output of [`jacobi_perron`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiPerronResult {
    pub gcd: BigInt,
    /// Per-step quotients `(⌊x_3/x_2⌋, …, ⌊x_m/x_2⌋, ⌊x_1/x_2⌋)` over the
    /// active coordinates.
    pub elements: Vec<Vec<BigInt>>,
    /// Unimodular `U` with `U·x = (gcd, 0, …, 0)`.
    pub matrix: IntMatrix,
    /// Slots whose sign was flipped before the main loop.
    pub sign_flips: Vec<usize>,
}

/// Reduces an integer vector to `(gcd, 0, …, 0)` by Jacobi–Perron steps.
///
/// Negative entries are first made non-negative by sign flips (recorded in
/// the matrix). While the active prefix has length `r ≥ 2` and `x_2 ≠ 0`,
/// one step maps `x` to `(x_2, x_3 mod x_2, …, x_r mod x_2, x_1 mod x_2)`.
/// When `x_2 = 0` the second and last active coordinates are swapped and
/// the (now zero) last one is retired.
pub fn jacobi_perron(x: &[BigInt]) -> Result<JacobiPerronResult> {
    let m = x.len();
    if x.iter().all(Zero::is_zero) {
        return Err(Error::Validation("Jacobi–Perron on the zero vector".into()));
    }
    let mut v = x.to_vec();
    let mut u = IntMatrix::identity(m);
    let mut sign_flips = Vec::new();
    for (i, e) in v.iter_mut().enumerate() {
        if e.is_negative() {
            *e = -&*e;
            for c in 0..m {
                u[(i, c)] = -&u[(i, c)];
            }
            sign_flips.push(i + 1);
        }
    }
    let mut elements = Vec::new();
    let mut active = m;
    // pivot x_2 strictly decreases between retirements
    let mut last_pivot: Option<BigInt> = None;
    while active >= 2 {
        if v[1].is_zero() {
            if !v[active - 1].is_zero() {
                v.swap(1, active - 1);
                swap_rows(&mut u, 1, active - 1);
            }
            active -= 1;
            last_pivot = None;
            continue;
        }
        if let Some(prev) = &last_pivot {
            if &v[1] >= prev {
                return Err(Error::Invariant(format!("Jacobi–Perron pivot did not decrease: {v:?}")));
            }
        }
        last_pivot = Some(v[1].clone());
        let step = jp_step_matrix(&v[..active]);
        let mut quot = Vec::with_capacity(active - 1);
        let pivot = v[1].clone();
        let mut next = Vec::with_capacity(active);
        next.push(pivot.clone());
        for j in (2..active).chain(std::iter::once(0)) {
            let (a, r) = v[j].div_mod_floor(&pivot);
            quot.push(a);
            next.push(r);
        }
        v[..active].clone_from_slice(&next);
        u = step.pad_identity(m).mul(&u)?;
        elements.push(quot);
    }
    debug_assert!(v[1..].iter().all(Zero::is_zero));
    debug_assert_eq!(u.mul_vec(x)?, v);
    Ok(JacobiPerronResult { gcd: v[0].clone(), elements, matrix: u, sign_flips })
}

/// The step matrix: row 1 picks x_2, row j picks `x_{j+1} − ⌊x_{j+1}/x_2⌋·x_2`
/// and the last row `x_1 − ⌊x_1/x_2⌋·x_2`.
fn jp_step_matrix(x: &[BigInt]) -> IntMatrix {
    let r = x.len();
    let mut s = IntMatrix::zeros(r, r);
    s[(0, 1)] = BigInt::one();
    for row in 1..r {
        let src = if row + 1 < r { row + 1 } else { 0 };
        s[(row, src)] = BigInt::one();
        s[(row, 1)] = -x[src].div_floor(&x[1]);
    }
    s
}

fn swap_rows(u: &mut IntMatrix, a: usize, b: usize) {
    for c in 0..u.ncols() {
        let t = u[(a, c)].clone();
        u[(a, c)] = u[(b, c)].clone();
        u[(b, c)] = t;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn cf_value(q: &[BigInt]) -> BigRational {
        let mut it = q.iter().rev();
        let mut acc = BigRational::from_integer(it.next().unwrap().clone());
        for a in it {
            acc = BigRational::from_integer(a.clone()) + acc.recip();
        }
        acc
    }

    #[test]
    fn trivial_and_hand_examples() {
        let r = euclid_cf(&b(-9), &b(0)).unwrap();
        assert_eq!(r.gcd, b(9));
        assert!(r.quotients.is_empty());
        let r = euclid_cf(&b(10), &b(4)).unwrap();
        assert_eq!(r.gcd, b(2));
        assert_eq!(r.quotients, vec![b(2), b(2)]);
        assert_eq!(r.transform().mul_vec(&[b(10), b(4)]).unwrap(), vec![b(2), b(0)]);
        assert!(euclid_cf(&b(0), &b(0)).is_err());
    }

    #[test]
    fn continued_fraction_identity() {
        for (p, q) in [(355, 113), (-7, 3), (3, -2), (1, 1), (0, 5), (144, -89)] {
            let r = euclid_cf(&b(p), &b(q)).unwrap();
            assert_eq!(cf_value(&r.quotients), BigRational::new(b(p), b(q)), "{p}/{q}");
        }
    }

    #[test]
    fn jp_trivial() {
        let r = jacobi_perron(&[b(6), b(0), b(0), b(0)]).unwrap();
        assert_eq!(r.gcd, b(6));
        assert_eq!(r.matrix, IntMatrix::identity(4));
        assert!(jacobi_perron(&[b(0), b(0)]).is_err());
    }

    #[test]
    fn jp_pair() {
        let x = [b(2), b(3)];
        let r = jacobi_perron(&x).unwrap();
        assert_eq!(r.gcd, b(1));
        assert_eq!(r.matrix.mul_vec(&x).unwrap(), vec![b(1), b(0)]);
        assert_eq!(r.matrix.det().unwrap().abs(), b(1));
    }

    #[test]
    fn jp_signs_and_zeros() {
        for x in [vec![-4, 6, -10], vec![0, 0, 7], vec![0, -3, 0, 9], vec![5], vec![-5], vec![12, 18, 30, 7]] {
            let xs: Vec<BigInt> = x.iter().map(|&v| b(v)).collect();
            let r = jacobi_perron(&xs).unwrap();
            let g = x.iter().fold(0i64, |g, &v| num_integer::gcd(g, v));
            assert_eq!(r.gcd, b(g));
            let mut want = vec![b(0); x.len()];
            want[0] = b(g);
            assert_eq!(r.matrix.mul_vec(&xs).unwrap(), want, "{x:?}");
            assert_eq!(r.matrix.det().unwrap().abs(), b(1));
        }
    }

    #[test]
    fn jp_step_shape() {
        // one step on (7, 3, 11): (3, 11 mod 3, 7 mod 3) = (3, 2, 1)
        let s = jp_step_matrix(&[b(7), b(3), b(11)]);
        assert_eq!(s.mul_vec(&[b(7), b(3), b(11)]).unwrap(), vec![b(3), b(2), b(1)]);
    }
}
