//! Minimal Element Elimination for G(k, n).
//!
//! Annulation reduces a neighbouring coordinate modulo the coordinate of
//! smallest absolute value, Euclid style, until some coordinate vanishes.
//! Dimension reduction then reads an integer linear relation among the
//! first columns off the coordinates, runs Jacobi–Perron on its
//! coefficients, and applies the resulting change of basis so that column 1
//! becomes zero and can be dropped.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::euclid::jacobi_perron;
use crate::plucker::{check_relations, plucker_gcd, PluckerVector};
use crate::transforms::{invert, push_plucker, StageLabel, Trace, UnimodularTransform};

#[derive(Clone, Debug)]
pub struct MineeState {
    pub p: PluckerVector,
    pub trace: Trace,
}

impl MineeState {
    pub fn new(p: PluckerVector) -> Self {
        let trace = Trace::new(p.k(), p.n());
        MineeState { p, trace }
    }

    /// Smallest non-zero absolute coordinate.
    pub fn current_min(&self) -> Option<BigInt> {
        self.p.entries().iter().filter(|e| !e.is_zero()).map(Signed::abs).min()
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

/// The pair of coordinates an annulation step works on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Selection {
    /// Index of the minimal coordinate.
    pub i: Vec<usize>,
    /// `i` with slot `t` replaced by a neighbouring free index.
    pub j: Vec<usize>,
    /// 1-based slot where `i` and `j` differ.
    pub t: usize,
}

/// Picks the minimal coordinate (lex-first on ties) and its neighbour: the
/// first slot whose index has a free neighbour, preferring `i_t − 1`.
pub fn minee_select(p: &PluckerVector) -> Result<Selection> {
    if let Some(z) = p.first_zero() {
        return Err(Error::ZeroCoordinate(format!("{z:?}: route to dimension reduction")));
    }
    let (k, n) = (p.k(), p.n());
    if n == k {
        return Err(Error::Validation("G(k,k) is terminal".into()));
    }
    let min = p.entries().iter().map(Signed::abs).min().expect("non-empty");
    let (i, _) = p.iter().find(|(_, v)| v.abs() == min).expect("non-empty");
    let free = |c: usize| c >= 1 && c <= n && i.binary_search(&c).is_err();
    for t in 0..k {
        let c = i[t];
        let jt = if c > 1 && free(c - 1) {
            c - 1
        } else if free(c + 1) {
            c + 1
        } else {
            continue;
        };
        let mut j = i.clone();
        j[t] = jt;
        return Ok(Selection { i, j, t: t + 1 });
    }
    unreachable!("n > k leaves a free neighbour")
}

/// Reduces `p_j` modulo `p_i` with the column operation
/// `e_{j_t} → e_{j_t} − q·e_{i_t}`, `q = ⌊p_j / p_i⌋`.
pub fn minee_subtract(state: &mut MineeState, sel: &Selection) -> Result<()> {
    let pi = state.p.get(&sel.i).clone();
    if pi.is_zero() {
        return Err(Error::Validation(format!("coordinate {:?} is zero", sel.i)));
    }
    let pj = state.p.get(&sel.j).clone();
    let (q, r) = pj.div_mod_floor(&pi);
    let before = state.current_min();
    let (moved, fixed) = (sel.j[sel.t - 1], sel.i[sel.t - 1]);
    let u = UnimodularTransform::elementary_subtract(state.p.n(), moved, fixed, q)?;
    state.apply(u, StageLabel::MinSubtract)?;

    if state.p.get(&sel.i) != &pi || state.p.get(&sel.j) != &r {
        return Err(state.violation("subtraction did not leave the floored remainder"));
    }
    let zero_appeared = state.p.first_zero().is_some();
    if !zero_appeared && state.current_min() >= before {
        return Err(state.violation("minimal coordinate did not decrease"));
    }
    Ok(())
}

/// Drops one column after a zero coordinate appeared.
pub fn minee_dim_reduce(state: &mut MineeState) -> Result<()> {
    let (k, n) = (state.p.k(), state.p.n());
    let zero = state
        .p
        .first_zero()
        .ok_or_else(|| Error::Validation("dimension reduction needs a zero coordinate".into()))?;

    // a column whose coordinates all vanish is the zero vector; drop it as is
    if let Some(m) = (1..=n).find(|&m| state.p.iter().all(|(idx, v)| v.is_zero() || !idx.contains(&m))) {
        state.apply(UnimodularTransform::drop_to_last(n, m)?, StageLabel::CoordinateDrop)?;
        state.p = state.p.drop_last()?;
        return Ok(());
    }

    if zero.iter().copied().ne(1..=k) {
        let mut source = zero.clone();
        source.extend((1..=n).filter(|c| !zero.contains(c)));
        state.apply(UnimodularTransform::permutation(source)?, StageLabel::Swap)?;
    }

    let (s, tail) = find_dependency(&state.p).ok_or_else(|| state.violation("no linear dependency found"))?;
    let coeffs = relation_coefficients(&state.p, s, &tail);

    if coeffs[..s].iter().all(Zero::is_zero) {
        // only w_{s+1} appears in the relation, so it is zero
        if s > 0 {
            state.apply(UnimodularTransform::column_swap(n, 1, s + 1)?, StageLabel::Swap)?;
        }
    } else {
        let jp = jacobi_perron(&coeffs)?;
        let u = UnimodularTransform::general(jp.matrix.pad_identity(n))?;
        let v = invert(&u)?;
        if !v.is_identity() {
            state.apply(v, StageLabel::DimReductionJp)?;
        }
    }

    if state.p.iter().any(|(idx, v)| idx[0] == 1 && !v.is_zero()) {
        return Err(state.violation("column 1 was not cleared before the drop"));
    }
    state.apply(UnimodularTransform::drop_to_last(n, 1)?, StageLabel::CoordinateDrop)?;
    state.p = state.p.drop_last()?;
    Ok(())
}

/// With `p_{1..k} = 0`: the largest `s < k` such that every coordinate
/// whose index contains `1..=s+1` vanishes while some coordinate with index
/// `(1..=s, tail)` does not; returns `s` and the lex-first such tail.
fn find_dependency(p: &PluckerVector) -> Option<(usize, Vec<usize>)> {
    let k = p.k();
    (0..k).rev().find_map(|s| {
        let all_dependent = p
            .iter()
            .filter(|(idx, _)| idx.len() > s && idx[..=s].iter().copied().eq(1..=s + 1))
            .all(|(_, v)| v.is_zero());
        if !all_dependent {
            return None;
        }
        p.iter()
            .find(|(idx, v)| !v.is_zero() && idx[..s].iter().copied().eq(1..=s) && idx[s] != s + 1)
            .map(|(idx, _)| (s, idx[s..].to_vec()))
    })
}

/// Coefficients `(a_1, …, a_{s+1})` of the relation `Σ a_j w_j = 0`:
/// `a_j = det(w_1..w_{j−1}, w_{s+1}, w_{j+1}..w_s, tail)` for `j ≤ s` and
/// `a_{s+1} = −p_{1..s, tail}` (Cramer's rule).
fn relation_coefficients(p: &PluckerVector, s: usize, tail: &[usize]) -> Vec<BigInt> {
    let mut coeffs = Vec::with_capacity(s + 1);
    for j in 1..=s {
        let mut idx: Vec<usize> = (1..=s).map(|c| if c == j { s + 1 } else { c }).collect();
        idx.extend_from_slice(tail);
        coeffs.push(p.get_signed(&idx));
    }
    let mut base: Vec<usize> = (1..=s).collect();
    base.extend_from_slice(tail);
    coeffs.push(-p.get(&base));
    coeffs
}

/// Runs the full algorithm and returns the completed trace.
pub fn minee_run(p: &PluckerVector) -> Result<Trace> {
    let gcd = plucker_gcd(p)?;
    if !check_relations(p) {
        return Err(Error::NotDecomposable("Grassmann–Plücker relations fail".into()));
    }
    let mut state = MineeState::new(p.clone());
    while state.p.n() > state.p.k() {
        if state.p.first_zero().is_some() {
            minee_dim_reduce(&mut state)?;
        } else {
            let sel = minee_select(&state.p)?;
            minee_subtract(&mut state, &sel)?;
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

    fn pv(k: usize, n: usize, e: &[i64]) -> PluckerVector {
        PluckerVector::from_i64(k, n, e).unwrap()
    }

    fn with_min_at(k: usize, n: usize, at: &[usize]) -> PluckerVector {
        let len = crate::plucker::binomial(n, k);
        let r = crate::plucker::lex_rank(n, at).unwrap();
        let e: Vec<i64> = (0..len).map(|x| if x == r { 1 } else { 5 + x as i64 }).collect();
        pv(k, n, &e)
    }

    #[test]
    fn selection_rule() {
        let s = minee_select(&with_min_at(2, 4, &[2, 3])).unwrap();
        assert_eq!((s.t, s.j.clone()), (1, vec![1, 3]));
        let s = minee_select(&with_min_at(3, 6, &[1, 2, 3])).unwrap();
        assert_eq!((s.t, s.j.clone()), (3, vec![1, 2, 4]));
        let s = minee_select(&with_min_at(2, 4, &[1, 2])).unwrap();
        assert_eq!((s.t, s.j.clone()), (2, vec![1, 3]));
        assert!(minee_select(&pv(2, 2, &[3])).is_err());
    }

    #[test]
    fn subtract_leaves_remainder() {
        for (pi, pj, want) in [(2, 7, 1), (2, -2, 0), (-3, 7, -2)] {
            // k = 1: coordinates are the entries themselves; min at (1), partner (2)
            let mut st = MineeState::new(pv(1, 2, &[pi, pj]));
            let sel = Selection { i: vec![1], j: vec![2], t: 1 };
            minee_subtract(&mut st, &sel).unwrap();
            assert_eq!(st.p, PluckerVector::new_unchecked_zero(1, 2, vec![pi.into(), want.into()]).unwrap());
        }
    }

    #[test]
    fn relation_kills_first_column() {
        // column 4 = column 2 + column 3 gives a zero at (2,3,4)
        let m = IntMatrix::from_rows(&[vec![1, 2, 0, 2, 3, 1], vec![0, 1, 3, 4, -1, 2], vec![2, 0, 1, 1, 1, 5]]).unwrap();
        let p = compute_plucker(&m).unwrap();
        assert!(p.get(&[2, 3, 4]).is_zero());
        let mut st = MineeState::new(p.clone());
        minee_dim_reduce(&mut st).unwrap();
        assert_eq!(st.p.n(), 5);
        assert!(check_relations(&st.p));
        assert_eq!(plucker_gcd(&st.p).unwrap(), plucker_gcd(&p).unwrap());
    }

    #[test]
    fn zero_column_is_dropped() {
        let m = IntMatrix::from_rows(&[vec![1, 0, 2, 5], vec![3, 0, 1, 1]]).unwrap();
        let mut st = MineeState::new(compute_plucker(&m).unwrap());
        minee_dim_reduce(&mut st).unwrap();
        assert_eq!(st.trace.len(), 1);
        assert_eq!(st.p.n(), 3);
    }

    #[test]
    fn runs() {
        let t = minee_run(&pv(2, 4, &[10, 10, 12, -15, 3, 21])).unwrap();
        assert_eq!(t.p_hat.unwrap().abs(), BigInt::from(1));
        let t = minee_run(&pv(3, 3, &[-4])).unwrap();
        assert!(t.is_empty());
        assert_eq!(t.p_hat, Some(BigInt::from(-4)));
        let g36 = pv(3, 6, &[1, 8, 5, 1, 3, 2, 1, 1, 5, 3, 1, 1, 1, 3, 7, 4, 1, 2, 1, -1]);
        let t = minee_run(&g36).unwrap();
        assert_eq!(t.count(StageLabel::CoordinateDrop), 3);
        assert!(matches!(minee_run(&pv(2, 4, &[1, 0, 0, 0, 0, 1])), Err(Error::NotDecomposable(_))));
    }
}
