//! Turning a completed trace back into integer vectors.
//!
//! At termination the transformed columns are `(B | 0)` with `det B = p̂`.
//! Starting from a seed `k×k` block of determinant `p̂` and undoing the
//! trace, i.e. multiplying by the inverse of the composed transform, yields
//! a `k×n` integer matrix whose Plücker vector is the input.

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{IntMatrix, LatticeMatrix};
use crate::plucker::{compute_plucker, plucker_gcd, PluckerVector};
use crate::transforms::{apply_matrix, invert, Trace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReconstructionResult {
    pub matrix: LatticeMatrix,
    pub p_hat: BigInt,
    /// `|p̂|`, the index of the generated sublattice.
    pub sublattice_index: BigInt,
}

impl ReconstructionResult {
    pub fn to_json(&self) -> ResultJson {
        ResultJson {
            matrix: self.matrix.rows().map(|r| r.iter().map(ToString::to_string).collect()).collect(),
            p_hat: self.p_hat.to_string(),
            index: self.sublattice_index.to_string(),
        }
    }
}

/// `{"matrix":[["dec",…],…],"p_hat":"dec","index":"dec"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultJson {
    pub matrix: Vec<Vec<String>>,
    pub p_hat: String,
    pub index: String,
}

fn terminal(trace: &Trace) -> Result<&BigInt> {
    match &trace.p_hat {
        Some(p) if trace.current_n() == trace.k => Ok(p),
        _ => Err(Error::Validation("trace is not complete".into())),
    }
}

/// Pulls the seed rows `(seed | 0)` back through every step of the trace.
fn lift(trace: &Trace, seed: &IntMatrix) -> Result<LatticeMatrix> {
    let (k, n) = (trace.k, trace.n_initial);
    let mut m = IntMatrix::zeros(k, n);
    for i in 0..k {
        for j in 0..k {
            m[(i, j)] = seed[(i, j)].clone();
        }
    }
    for step in trace.steps.iter().rev() {
        let inv = invert(&step.transform.padded(n))?;
        m = apply_matrix(&inv, &m)?;
    }
    Ok(m)
}

/// Builds `(p̂·e_1, e_2, …, e_k)`, undoes the trace, and fixes the global
/// sign by negating row 1 if needed.
pub fn assemble(trace: &Trace, original: &PluckerVector) -> Result<ReconstructionResult> {
    let p_hat = terminal(trace)?.clone();
    if trace.k != original.k() || trace.n_initial != original.n() {
        return Err(Error::Dimension(format!(
            "trace is for G({},{}) but the vector is in G({},{})",
            trace.k,
            trace.n_initial,
            original.k(),
            original.n()
        )));
    }
    let k = trace.k;
    let mut seed = IntMatrix::identity(k);
    seed[(0, 0)] = p_hat.clone();
    let mut matrix = lift(trace, &seed)?;
    let got = compute_plucker(&matrix)?;
    if &got != original {
        if got.negated() == *original {
            for j in 0..matrix.ncols() {
                matrix[(0, j)] = -&matrix[(0, j)];
            }
        } else {
            return Err(Error::Invariant(format!(
                "reconstruction gives {got} instead of {original}"
            )));
        }
    }
    Ok(ReconstructionResult { matrix, sublattice_index: p_hat.abs(), p_hat })
}

/// Same pipeline as [`assemble`] with an arbitrary seed of determinant
/// `±p̂`; the result realizes the input up to a global sign.
pub fn admissible_tuple(trace: &Trace, seed: &IntMatrix) -> Result<LatticeMatrix> {
    let p_hat = terminal(trace)?;
    if seed.nrows() != trace.k || seed.ncols() != trace.k {
        return Err(Error::Dimension(format!("seed must be {0}x{0}", trace.k)));
    }
    let d = seed.det()?;
    if d.abs() != p_hat.abs() {
        return Err(Error::Validation(format!("seed determinant {d} does not match p̂ = {p_hat}")));
    }
    lift(trace, seed)
}

/// Index of the lattice generated by the rows inside the integer points of
/// their span: the gcd of the maximal minors.
pub fn sublattice_index(m: &LatticeMatrix) -> Result<BigInt> {
    if m.nrows() > m.ncols() || m.rank() != m.nrows() {
        return Err(Error::Validation(format!(
            "{}x{} matrix does not have full row rank",
            m.nrows(),
            m.ncols()
        )));
    }
    plucker_gcd(&compute_plucker(m)?)
}

/// `diag(p̂, 1, …, 1)`.
pub fn default_seed(k: usize, p_hat: &BigInt) -> IntMatrix {
    let mut s = IntMatrix::identity(k);
    s[(0, 0)] = p_hat.clone();
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mee::{mee_run, MeeOptions};
    use crate::minee::minee_run;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn worked_example() {
        let p = PluckerVector::from_i64(2, 4, &[10, 10, 12, -15, 3, 21]).unwrap();
        let t = mee_run(&p, MeeOptions::default()).unwrap();
        let r = assemble(&t, &p).unwrap();
        assert_eq!(compute_plucker(&r.matrix).unwrap(), p);
        assert_eq!(r.sublattice_index, b(1));
        let t = minee_run(&p).unwrap();
        assert_eq!(compute_plucker(&assemble(&t, &p).unwrap().matrix).unwrap(), p);
    }

    #[test]
    fn empty_trace_is_seed() {
        let p = PluckerVector::from_i64(3, 3, &[7]).unwrap();
        let t = minee_run(&p).unwrap();
        let r = assemble(&t, &p).unwrap();
        assert_eq!(r.matrix, default_seed(3, &b(7)));
    }

    #[test]
    fn admissible_seeds() {
        let m = IntMatrix::from_rows(&[vec![2, 0, 2, 4], vec![0, 2, 2, -2]]).unwrap();
        let p = compute_plucker(&m).unwrap();
        let t = minee_run(&p).unwrap();
        assert_eq!(t.p_hat.as_ref().unwrap().abs(), b(4));
        let ph = t.p_hat.clone().unwrap();
        let base = admissible_tuple(&t, &default_seed(2, &ph)).unwrap();
        assert_eq!(base, assemble(&t, &p).unwrap().matrix);
        // U·diag(p̂, 1) with U = [[2, 1], [1, 1]]
        let u = IntMatrix::from_rows(&[vec![2, 1], vec![1, 1]]).unwrap();
        let other = admissible_tuple(&t, &u.mul(&default_seed(2, &ph)).unwrap()).unwrap();
        let q = compute_plucker(&other).unwrap();
        assert!(q == p || q.negated() == p);
        assert!(admissible_tuple(&t, &IntMatrix::identity(2).mul(&default_seed(2, &(ph + 1))).unwrap()).is_err());
    }

    #[test]
    fn incomplete_trace_rejected() {
        let p = PluckerVector::from_i64(2, 3, &[1, 2, 3]).unwrap();
        let t = Trace::new(2, 3);
        assert!(assemble(&t, &p).is_err());
    }

    #[test]
    fn index_examples() {
        let m = IntMatrix::from_rows(&[vec![4, 1, 7, 0], vec![-6, 1, -8, 3]]).unwrap();
        assert_eq!(sublattice_index(&m).unwrap(), b(1));
        let d = IntMatrix::from_rows(&[vec![2, 0], vec![0, 2]]).unwrap();
        assert_eq!(sublattice_index(&d).unwrap(), b(4));
        let mut doubled = m.clone();
        for j in 0..4 {
            doubled[(1, j)] = &doubled[(1, j)] * 2;
        }
        assert_eq!(sublattice_index(&doubled).unwrap(), b(2));
        let flat = IntMatrix::from_rows(&[vec![1, 2], vec![2, 4]]).unwrap();
        assert!(sublattice_index(&flat).is_err());
        assert!(BigInt::from(1) == sublattice_index(&IntMatrix::identity(3)).unwrap());
    }
}
