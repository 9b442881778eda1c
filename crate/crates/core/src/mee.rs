//! Maximal Element Elimination for G(2, n).
//!
//! The annulation loop keeps every coordinate positive and subtracts from
//! the largest one until some coordinate vanishes; a dimension reduction
//! then clears one column and drops it. Every pass is certified by the
//! potential `(max |p|, number of coordinates attaining it)`, which must
//! strictly decrease in lexicographic order at each subtraction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::euclid::euclid_cf;
use crate::plucker::{check_relations, plucker_gcd, PluckerVector};
use crate::positivity::{positivize_g2n, SwapOrder};
use crate::transforms::{push_plucker, StageLabel, Trace, UnimodularTransform};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MeeOptions {
    pub swap_order: SwapOrder,
    /// Subtract `⌊p_{i,j}/p_{i,j−1}⌋` copies at once when every affected
    /// coordinate provably stays below the old maximum.
    pub accelerate: bool,
}

/// Working state of a run: the current vector and the trace so far.
#[derive(Clone, Debug)]
pub struct MeeState {
    pub p: PluckerVector,
    pub trace: Trace,
}

impl MeeState {
    pub fn new(p: PluckerVector) -> Self {
        let trace = Trace::new(p.k(), p.n());
        MeeState { p, trace }
    }

    /// `(max |p|, count at max)`.
    pub fn potential(&self) -> (BigInt, usize) {
        potential(&self.p)
    }

    fn apply(&mut self, u: UnimodularTransform, label: StageLabel) -> Result<()> {
        self.p = push_plucker(&self.p, &u)?;
        self.trace.record(u, label);
        Ok(())
    }

    fn violation(&self, what: &str) -> Error {
        Error::Invariant(format!("{what}; state: {}", self.p))
    }
}

pub(crate) fn potential(p: &PluckerVector) -> (BigInt, usize) {
    let m = p.max_abs();
    let c = p.entries().iter().filter(|e| e.abs() == m).count();
    (m, c)
}

/// Index of the maximal coordinate: `(1, n)` if it attains the maximum,
/// otherwise the lexicographically first maximum.
pub fn select_max(p: &PluckerVector) -> (usize, usize) {
    let n = p.n();
    let m = p.max_abs();
    if p.get(&[1, n]).abs() == m {
        return (1, n);
    }
    let (idx, _) = p.iter().find(|(_, v)| v.abs() == m).expect("non-empty");
    (idx[0], idx[1])
}

/// One annulation pass: positivize, select the maximum, rotate it to
/// `(1, n)` if it sits on the second diagonal, then subtract
/// `e_j → e_j − e_{j−1}`.
pub fn mee_step(state: &mut MeeState, opts: MeeOptions) -> Result<()> {
    let n = state.p.n();
    if n <= 2 {
        return Ok(());
    }
    if let Some(z) = state.p.first_zero() {
        return Err(Error::ZeroCoordinate(format!("{z:?}: route to dimension reduction")));
    }
    let before = state.potential();

    let pos = positivize_g2n(&state.p, opts.swap_order)?;
    for u in pos.transforms {
        state.apply(u, StageLabel::Positivize)?;
    }

    let (mut i, mut j) = select_max(&state.p);
    if j == i + 1 {
        state.apply(UnimodularTransform::rotation(n, i)?, StageLabel::MaxSelectRotate)?;
        if state.p.get(&[1, n]).abs() != before.0 {
            return Err(state.violation("rotation did not bring the maximum to (1,n)"));
        }
        (i, j) = (1, n);
    }
    if state.potential() != before {
        return Err(state.violation("positivization changed the maximum"));
    }

    let q = if opts.accelerate { accelerated_multiplier(&state.p, i, j, &before.0)? } else { BigInt::one() };
    let prev = state.p.clone();
    state.apply(UnimodularTransform::elementary_subtract(n, j, j - 1, q)?, StageLabel::MaxSubtract)?;

    for (old, new) in prev.entries().iter().zip(state.p.entries()) {
        if old != new && new.abs() >= before.0 {
            return Err(state.violation("subtraction produced a coordinate at or above the old maximum"));
        }
    }
    let after = state.potential();
    if after >= before {
        return Err(state.violation(&format!(
            "potential did not decrease: ({}, {}) -> ({}, {})",
            before.0, before.1, after.0, after.1
        )));
    }
    Ok(())
}

fn accelerated_multiplier(p: &PluckerVector, i: usize, j: usize, max: &BigInt) -> Result<BigInt> {
    let q = p.get(&[i, j]).div_floor(p.get(&[i, j - 1]));
    if q <= BigInt::one() {
        return Ok(BigInt::one());
    }
    let trial = push_plucker(p, &UnimodularTransform::elementary_subtract(p.n(), j, j - 1, q.clone())?)?;
    let ok = p.entries().iter().zip(trial.entries()).all(|(o, t)| o == t || &t.abs() < max);
    Ok(if ok { q } else { BigInt::one() })
}

/// Clears column 1 after a zero coordinate `p_{s,t}` appeared and drops it.
///
/// The zero index is moved to `(1, 2)` by an order-preserving permutation,
/// so w_1 and w_2 are parallel. If some `p_{1,i} ≠ 0`, the Euclidean
/// algorithm on `(p_{2,i}, p_{1,i})` is replayed as column operations on
/// slots 1 and 2 until w_1 = 0. Column 1 is then sent to the last slot and
/// the ambient dimension shrinks by one.
pub fn mee_dim_reduce(state: &mut MeeState) -> Result<()> {
    let n = state.p.n();
    let zero = state
        .p
        .first_zero()
        .ok_or_else(|| Error::Validation("dimension reduction needs a zero coordinate".into()))?;
    let (s, t) = (zero[0], zero[1]);
    if (s, t) != (1, 2) {
        let mut source = vec![s, t];
        source.extend((1..=n).filter(|&c| c != s && c != t));
        state.apply(UnimodularTransform::permutation(source)?, StageLabel::Swap)?;
    }

    if let Some(i) = (3..=n).find(|&i| !state.p.get(&[1, i]).is_zero()) {
        let eu = euclid_cf(state.p.get(&[2, i]), state.p.get(&[1, i]))?;
        for a in eu.quotients {
            if !a.is_zero() {
                state.apply(UnimodularTransform::elementary_subtract(n, 2, 1, a)?, StageLabel::DimReductionEuclid)?;
            }
            state.apply(UnimodularTransform::column_swap(n, 1, 2)?, StageLabel::DimReductionEuclid)?;
        }
    }
    drop_first(state)
}

fn drop_first(state: &mut MeeState) -> Result<()> {
    let n = state.p.n();
    if state.p.iter().any(|(idx, v)| idx[0] == 1 && !v.is_zero()) {
        return Err(state.violation("column 1 was not cleared before the drop"));
    }
    state.apply(UnimodularTransform::drop_to_last(n, 1)?, StageLabel::CoordinateDrop)?;
    state.p = state.p.drop_last()?;
    Ok(())
}

/// Runs the full algorithm and returns the completed trace.
pub fn mee_run(p: &PluckerVector, opts: MeeOptions) -> Result<Trace> {
    if p.k() != 2 {
        return Err(Error::Validation(format!(
            "maximal element elimination works only in G(2,n); got k = {} (use minee)",
            p.k()
        )));
    }
    let gcd = plucker_gcd(p)?;
    if !check_relations(p) {
        return Err(Error::NotDecomposable("three-term Plücker relation fails".into()));
    }
    let mut state = MeeState::new(p.clone());
    while state.p.n() > 2 {
        if state.p.first_zero().is_some() {
            mee_dim_reduce(&mut state)?;
        } else {
            mee_step(&mut state, opts)?;
        }
    }
    let p_hat = state.p.entries()[0].clone();
    if p_hat.abs() != gcd {
        return Err(state.violation(&format!("terminal coordinate {p_hat} differs from gcd {gcd}")));
    }
    state.trace.p_hat = Some(p_hat);
    Ok(state.trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::IntMatrix;
    use crate::plucker::compute_plucker;
    use crate::transforms::Descriptor;

    fn pv(n: usize, e: &[i64]) -> PluckerVector {
        PluckerVector::from_i64(2, n, e).unwrap()
    }

    #[test]
    fn worked_example_first_step() {
        let mut st = MeeState::new(pv(4, &[10, 10, 12, 15, 21, 3]));
        mee_step(&mut st, MeeOptions::default()).unwrap();
        assert_eq!(st.p, pv(4, &[10, 10, 2, 15, 6, 3]));
        assert_eq!(st.trace.len(), 1);
        assert_eq!(
            st.trace.steps[0].transform.descriptor(),
            &Descriptor::ElementarySubtract { s: 4, t: 3, q: BigInt::one() }
        );
    }

    #[test]
    fn corner_maximum_only_subtracts() {
        let m = IntMatrix::from_rows(&[vec![1, 1, 1, 0], vec![0, 1, 2, 5]]).unwrap();
        let p = compute_plucker(&m).unwrap();
        assert_eq!(select_max(&p), (1, 4));
        let mut st = MeeState::new(p.clone());
        mee_step(&mut st, MeeOptions::default()).unwrap();
        assert_eq!(st.trace.len(), 1);
        assert!(st.p.get(&[1, 4]) < p.get(&[1, 4]));
    }

    #[test]
    fn adjacent_maximum_is_rotated() {
        // max at (2,3)
        let p = pv(4, &[10, 10, 2, 15, 6, 3]);
        assert_eq!(select_max(&p), (2, 3));
        let mut st = MeeState::new(p);
        mee_step(&mut st, MeeOptions::default()).unwrap();
        assert_eq!(st.trace.steps[0].label, StageLabel::MaxSelectRotate);
        assert_eq!(st.trace.steps[1].label, StageLabel::MaxSubtract);
    }

    #[test]
    fn worked_example_dimension_reduction() {
        // v_4 = v_3 in the worked G(2,4) example
        let mut st = MeeState::new(pv(4, &[3, 1, 1, 2, 2, 0]));
        mee_dim_reduce(&mut st).unwrap();
        assert_eq!(st.p.n(), 3);
        let mut got: Vec<_> = st.p.entries().iter().map(Signed::abs).collect();
        got.sort();
        assert_eq!(got, vec![BigInt::from(1), BigInt::from(2), BigInt::from(3)]);
    }

    #[test]
    fn zero_column_drops_immediately() {
        let mut st = MeeState::new(pv(3, &[0, 0, 5]));
        mee_dim_reduce(&mut st).unwrap();
        assert_eq!(st.p, pv(2, &[5]));
        assert_eq!(st.trace.len(), 1);
        assert_eq!(st.trace.steps[0].label, StageLabel::CoordinateDrop);
    }

    #[test]
    fn worked_example_run() {
        let p = pv(4, &[10, 10, 12, -15, 3, 21]);
        for accelerate in [false, true] {
            let t = mee_run(&p, MeeOptions { accelerate, ..Default::default() }).unwrap();
            assert_eq!(t.p_hat.as_ref().unwrap().abs(), BigInt::one());
            assert_eq!(t.count(StageLabel::CoordinateDrop), 2);
            assert!(t.is_complete());
        }
    }

    #[test]
    fn trivial_and_rejected_inputs() {
        let t = mee_run(&pv(2, &[-6]), MeeOptions::default()).unwrap();
        assert!(t.is_empty());
        assert_eq!(t.p_hat, Some(BigInt::from(-6)));
        assert!(matches!(
            mee_run(&pv(4, &[1, 0, 0, 0, 0, 1]), MeeOptions::default()),
            Err(Error::NotDecomposable(_))
        ));
        let g33 = PluckerVector::from_i64(3, 4, &[1, 2, 3, 4]).unwrap();
        assert!(matches!(mee_run(&g33, MeeOptions::default()), Err(Error::Validation(_))));
    }
}
