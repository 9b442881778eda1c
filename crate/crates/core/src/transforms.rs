//! GL(n,ℤ) basis transformations and the continued-fraction trace.
//!
//! Convention: a transform `U` acts on a [`LatticeMatrix`] `M` (rows v_i,
//! columns w_j) by right multiplication, `M ↦ M·U`, so column `c` of `U` is
//! the image of the basis vector `e_c`. The elementary subtraction
//! `e_s → e_s − q·e_t` therefore replaces the column w_s by `w_s − q·w_t`.
//! Composition reads left to right: `compose(a, b)` is "apply `a`, then `b`".

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{IntMatrix, LatticeMatrix};
use crate::plucker::{sort_with_sign, subsets, PluckerVector};

/// Structured shape of a transform. Indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Descriptor {
    /// `e_s → e_s − q·e_t`.
    ElementarySubtract { s: usize, t: usize, q: BigInt },
    ColumnSwap { s: usize, t: usize },
    SignFlip { s: usize },
    /// New column tuple `(w_{i+1}, …, w_n, −w_1, …, −w_i)`.
    Rotation { i: usize },
    /// New column `c` is old column `source[c−1]`.
    Permutation { source: Vec<usize> },
    /// Moves column `s` to the last slot, shifting the later ones left.
    DropToLast { s: usize },
    General,
}

/// A unimodular integer matrix together with its structured descriptor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnimodularTransform {
    n: usize,
    matrix: IntMatrix,
    descriptor: Descriptor,
}

fn check_slot(n: usize, s: usize) -> Result<()> {
    if s < 1 || s > n {
        return Err(Error::InvalidTransform(format!("slot {s} outside 1..={n}")));
    }
    Ok(())
}

/// Signed column permutation: new column `c` is `sign[c]·old[source[c]]`
/// (0-based). Every structured descriptor except the elementary subtraction
/// has this shape.
struct SignedPerm {
    source: Vec<usize>,
    negate: Vec<bool>,
}

impl SignedPerm {
    fn identity(n: usize) -> Self {
        SignedPerm { source: (0..n).collect(), negate: vec![false; n] }
    }

    fn matrix(&self) -> IntMatrix {
        let n = self.source.len();
        let mut m = IntMatrix::zeros(n, n);
        for c in 0..n {
            m[(self.source[c], c)] = if self.negate[c] { -BigInt::one() } else { BigInt::one() };
        }
        m
    }
}

impl UnimodularTransform {
    pub fn identity(n: usize) -> Self {
        UnimodularTransform {
            n,
            matrix: IntMatrix::identity(n),
            descriptor: Descriptor::Permutation { source: (1..=n).collect() },
        }
    }

    /// `e_s → e_s − q·e_t`: column s becomes `w_s − q·w_t`.
    pub fn elementary_subtract(n: usize, s: usize, t: usize, q: BigInt) -> Result<Self> {
        check_slot(n, s)?;
        check_slot(n, t)?;
        if s == t {
            return Err(Error::InvalidTransform(format!("elementary subtraction needs s != t, got {s}")));
        }
        let mut matrix = IntMatrix::identity(n);
        matrix[(t - 1, s - 1)] = -q.clone();
        Ok(UnimodularTransform { n, matrix, descriptor: Descriptor::ElementarySubtract { s, t, q } })
    }

    pub fn column_swap(n: usize, s: usize, t: usize) -> Result<Self> {
        check_slot(n, s)?;
        check_slot(n, t)?;
        if s == t {
            return Err(Error::InvalidTransform(format!("column swap needs s != t, got {s}")));
        }
        let mut p = SignedPerm::identity(n);
        p.source.swap(s - 1, t - 1);
        Ok(Self::from_signed_perm(p, Descriptor::ColumnSwap { s, t }))
    }

    pub fn sign_flip(n: usize, s: usize) -> Result<Self> {
        check_slot(n, s)?;
        let mut p = SignedPerm::identity(n);
        p.negate[s - 1] = true;
        Ok(Self::from_signed_perm(p, Descriptor::SignFlip { s }))
    }

    /// Cyclic shift by `n − i` slots followed by negating the wrapped
    /// columns: `(w_1..w_n) ↦ (w_{i+1}, …, w_n, −w_1, …, −w_i)`.
    pub fn rotation(n: usize, i: usize) -> Result<Self> {
        if i < 1 || i >= n {
            return Err(Error::InvalidTransform(format!("rotation index {i} outside 1..{n}")));
        }
        let source = (0..n).map(|c| (c + i) % n).collect();
        let negate = (0..n).map(|c| c >= n - i).collect();
        Ok(Self::from_signed_perm(SignedPerm { source, negate }, Descriptor::Rotation { i }))
    }

    /// New column `c` is old column `source[c−1]` (1-based).
    pub fn permutation(source: Vec<usize>) -> Result<Self> {
        let n = source.len();
        let mut seen = vec![false; n];
        for &s in &source {
            check_slot(n, s)?;
            if std::mem::replace(&mut seen[s - 1], true) {
                return Err(Error::InvalidTransform(format!("{source:?} is not a permutation")));
            }
        }
        let p = SignedPerm { source: source.iter().map(|s| s - 1).collect(), negate: vec![false; n] };
        Ok(Self::from_signed_perm(p, Descriptor::Permutation { source }))
    }

    pub fn drop_to_last(n: usize, s: usize) -> Result<Self> {
        check_slot(n, s)?;
        let mut source: Vec<usize> = (0..n).filter(|&c| c != s - 1).collect();
        source.push(s - 1);
        let p = SignedPerm { source, negate: vec![false; n] };
        Ok(Self::from_signed_perm(p, Descriptor::DropToLast { s }))
    }

    /// Wraps an arbitrary matrix, checking `|det| = 1`.
    pub fn general(matrix: IntMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::InvalidTransform("transform matrix must be square".into()));
        }
        let d = matrix.det()?;
        if d.abs() != BigInt::one() {
            return Err(Error::InvalidTransform(format!("determinant {d} is not ±1")));
        }
        Ok(UnimodularTransform { n: matrix.nrows(), matrix, descriptor: Descriptor::General })
    }

    fn from_signed_perm(p: SignedPerm, descriptor: Descriptor) -> Self {
        UnimodularTransform { n: p.source.len(), matrix: p.matrix(), descriptor }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn descriptor(&self) -> &Descriptor {
        &self.descriptor
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == IntMatrix::identity(self.n)
    }

    pub fn det(&self) -> BigInt {
        self.matrix.det().expect("square by construction")
    }

    /// Extends to dimension `m` by the identity on trailing slots.
    pub fn padded(&self, m: usize) -> UnimodularTransform {
        if m == self.n {
            return self.clone();
        }
        let descriptor = match &self.descriptor {
            Descriptor::ElementarySubtract { .. } | Descriptor::ColumnSwap { .. } | Descriptor::SignFlip { .. } => {
                self.descriptor.clone()
            }
            Descriptor::Permutation { source } => {
                let mut source = source.clone();
                source.extend(self.n + 1..=m);
                Descriptor::Permutation { source }
            }
            _ => Descriptor::General,
        };
        UnimodularTransform { n: m, matrix: self.matrix.pad_identity(m), descriptor }
    }

    /// The signed-permutation form of the matrix, if it has one.
    fn as_signed_perm(&self) -> Option<SignedPerm> {
        let n = self.n;
        let mut source = Vec::with_capacity(n);
        let mut negate = Vec::with_capacity(n);
        for c in 0..n {
            let mut hit = None;
            for r in 0..n {
                let v = &self.matrix[(r, c)];
                if v.is_zero() {
                    continue;
                }
                if hit.is_some() || v.abs() != BigInt::one() {
                    return None;
                }
                hit = Some((r, v.is_negative()));
            }
            let (r, neg) = hit?;
            source.push(r);
            negate.push(neg);
        }
        Some(SignedPerm { source, negate })
    }
}

impl fmt::Display for Descriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Descriptor::ElementarySubtract { s, t, q } => write!(f, "T[{s},{t}]^{q}"),
            Descriptor::ColumnSwap { s, t } => write!(f, "swap({s},{t})"),
            Descriptor::SignFlip { s } => write!(f, "flip({s})"),
            Descriptor::Rotation { i } => write!(f, "rotate({i})"),
            Descriptor::Permutation { source } => write!(f, "perm{source:?}"),
            Descriptor::DropToLast { s } => write!(f, "drop({s})"),
            Descriptor::General => f.write_str("general"),
        }
    }
}

/// `compose(a, b)`: apply `a` then `b`, i.e. the matrix `a·b`.
pub fn compose(a: &UnimodularTransform, b: &UnimodularTransform) -> Result<UnimodularTransform> {
    if a.n != b.n {
        return Err(Error::Dimension(format!("cannot compose transforms of size {} and {}", a.n, b.n)));
    }
    let matrix = a.matrix.mul(&b.matrix)?;
    Ok(UnimodularTransform { n: a.n, matrix, descriptor: Descriptor::General })
}

pub fn invert(a: &UnimodularTransform) -> Result<UnimodularTransform> {
    let n = a.n;
    Ok(match &a.descriptor {
        Descriptor::ElementarySubtract { s, t, q } => UnimodularTransform::elementary_subtract(n, *s, *t, -q)?,
        Descriptor::ColumnSwap { .. } | Descriptor::SignFlip { .. } => a.clone(),
        Descriptor::Permutation { source } => {
            let mut inv = vec![0; n];
            for (c, &s) in source.iter().enumerate() {
                inv[s - 1] = c + 1;
            }
            UnimodularTransform::permutation(inv)?
        }
        _ => match a.as_signed_perm() {
            // a signed permutation matrix is orthogonal
            Some(_) => UnimodularTransform { n, matrix: a.matrix.transpose(), descriptor: Descriptor::General },
            None => UnimodularTransform { n, matrix: a.matrix.inverse_unimodular()?, descriptor: Descriptor::General },
        },
    })
}

/// `M ↦ M·U`.
pub fn apply_matrix(u: &UnimodularTransform, m: &LatticeMatrix) -> Result<LatticeMatrix> {
    if m.ncols() != u.n {
        return Err(Error::Dimension(format!(
            "transform of size {} applied to a matrix with {} columns",
            u.n,
            m.ncols()
        )));
    }
    m.mul(&u.matrix)
}

/// Plücker vector of `M·U` given the Plücker vector of `M`.
///
/// Structured descriptors use the closed-form coordinate updates; general
/// matrices go through the k-th compound matrix (Cauchy–Binet).
pub fn push_plucker(p: &PluckerVector, u: &UnimodularTransform) -> Result<PluckerVector> {
    if p.n() != u.n {
        return Err(Error::Dimension(format!(
            "transform of size {} applied to a Plücker vector with n = {}",
            u.n,
            p.n()
        )));
    }
    match &u.descriptor {
        Descriptor::ElementarySubtract { s, t, q } => Ok(push_elementary(p, *s, *t, q)),
        Descriptor::General => match u.as_signed_perm() {
            Some(sp) => Ok(push_signed_perm(p, &sp)),
            None => push_compound(p, &u.matrix),
        },
        _ => {
            let sp = u.as_signed_perm().expect("structured descriptors are signed permutations");
            Ok(push_signed_perm(p, &sp))
        }
    }
}

/// Coordinates containing s but not t change by `−q·p[i with s→t]`.
fn push_elementary(p: &PluckerVector, s: usize, t: usize, q: &BigInt) -> PluckerVector {
    let mut out = p.clone();
    if q.is_zero() {
        return out;
    }
    for (r, idx) in subsets(p.n(), p.k()).enumerate() {
        if idx.binary_search(&s).is_err() || idx.binary_search(&t).is_ok() {
            continue;
        }
        let replaced: Vec<usize> = idx.iter().map(|&c| if c == s { t } else { c }).collect();
        let companion = p.get_signed(&replaced);
        if !companion.is_zero() {
            out.entries_mut()[r] -= q * companion;
        }
    }
    out
}

fn push_signed_perm(p: &PluckerVector, sp: &SignedPerm) -> PluckerVector {
    let mut out = p.clone();
    for (r, idx) in subsets(p.n(), p.k()).enumerate() {
        let src: Vec<usize> = idx.iter().map(|&c| sp.source[c - 1] + 1).collect();
        let neg = idx.iter().filter(|&&c| sp.negate[c - 1]).count() % 2 == 1;
        let (sorted, sign) = sort_with_sign(&src).expect("permutation images are distinct");
        let v = p.get(&sorted);
        out.entries_mut()[r] = if (sign < 0) != neg { -v } else { v.clone() };
    }
    out
}

/// `p'_J = Σ_I det(U[I, J])·p_I`, summing only over row sets `I` inside
/// the rows where `U[·, J]` has a nonzero entry.
pub fn push_compound(p: &PluckerVector, u: &IntMatrix) -> Result<PluckerVector> {
    let (k, n) = (p.k(), p.n());
    if u.nrows() != n || u.ncols() != n {
        return Err(Error::Dimension(format!("{}x{} matrix acting on G({k},{n})", u.nrows(), u.ncols())));
    }
    let entries = subsets(n, k)
        .map(|cols| {
            let cols0: Vec<usize> = cols.iter().map(|c| c - 1).collect();
            let support: Vec<usize> = (0..n).filter(|&r| cols0.iter().any(|&c| !u[(r, c)].is_zero())).collect();
            let mut acc = BigInt::zero();
            for pick in subsets(support.len(), k) {
                let rows0: Vec<usize> = pick.iter().map(|&i| support[i - 1]).collect();
                let rows1: Vec<usize> = rows0.iter().map(|r| r + 1).collect();
                let v = p.get(&rows1);
                if v.is_zero() {
                    continue;
                }
                let d = crate::matrix::det_square(u.select(&rows0, &cols0).to_rows());
                acc += d * v;
            }
            acc
        })
        .collect();
    PluckerVector::new_unchecked_zero(k, n, entries)
}

/// Which stage of an algorithm recorded a trace step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StageLabel {
    Positivize,
    MaxSelectRotate,
    MaxSubtract,
    MinSubtract,
    DimReductionEuclid,
    #[serde(rename = "DimReductionJP")]
    DimReductionJp,
    CoordinateDrop,
    Swap,
}

impl fmt::Display for StageLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            StageLabel::Positivize => "Positivize",
            StageLabel::MaxSelectRotate => "MaxSelectRotate",
            StageLabel::MaxSubtract => "MaxSubtract",
            StageLabel::MinSubtract => "MinSubtract",
            StageLabel::DimReductionEuclid => "DimReductionEuclid",
            StageLabel::DimReductionJp => "DimReductionJP",
            StageLabel::CoordinateDrop => "CoordinateDrop",
            StageLabel::Swap => "Swap",
        };
        f.write_str(s)
    }
}

/// One element of the continued-fraction sequence. The transform is stored
/// at the ambient dimension in force when it was recorded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub transform: UnimodularTransform,
    pub label: StageLabel,
    pub ambient_n: usize,
}

/// The continued-fraction sequence of a run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    pub k: usize,
    pub n_initial: usize,
    pub steps: Vec<TraceStep>,
    pub p_hat: Option<BigInt>,
}

impl Trace {
    pub fn new(k: usize, n_initial: usize) -> Self {
        Trace { k, n_initial, steps: Vec::new(), p_hat: None }
    }

    /// Current ambient dimension: initial dimension minus recorded drops.
    pub fn current_n(&self) -> usize {
        self.n_initial - self.drop_count()
    }

    pub fn drop_count(&self) -> usize {
        self.steps.iter().filter(|s| s.label == StageLabel::CoordinateDrop).count()
    }

    pub fn is_complete(&self) -> bool {
        self.p_hat.is_some() && self.current_n() == self.k
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Appends a step at the current ambient dimension.
    pub fn record(&mut self, transform: UnimodularTransform, label: StageLabel) {
        let ambient_n = self.current_n();
        debug_assert_eq!(transform.n, ambient_n);
        self.steps.push(TraceStep { transform, label, ambient_n });
    }

    pub fn count(&self, label: StageLabel) -> usize {
        self.steps.iter().filter(|s| s.label == label).count()
    }

    /// Product of all steps, each padded to the initial dimension.
    pub fn composed(&self) -> Result<UnimodularTransform> {
        let mut acc = IntMatrix::identity(self.n_initial);
        for step in &self.steps {
            acc = acc.mul(&step.transform.padded(self.n_initial).matrix)?;
        }
        Ok(UnimodularTransform { n: self.n_initial, matrix: acc, descriptor: Descriptor::General })
    }

    pub fn to_json(&self) -> TraceJson {
        TraceJson {
            k: self.k,
            n: self.n_initial,
            steps: self
                .steps
                .iter()
                .map(|s| StepJson {
                    label: s.label,
                    n: s.ambient_n,
                    matrix: s.transform.matrix.rows().map(|r| r.iter().map(ToString::to_string).collect()).collect(),
                })
                .collect(),
            p_hat: self.p_hat.as_ref().map(ToString::to_string),
        }
    }

    /// Rebuilds a trace from JSON. Descriptors are not serialized, so every
    /// step comes back as a general transform (determinant re-checked).
    pub fn from_json(j: &TraceJson) -> Result<Trace> {
        let mut trace = Trace::new(j.k, j.n);
        for (i, s) in j.steps.iter().enumerate() {
            let rows = s
                .matrix
                .iter()
                .map(|r| r.iter().map(|t| parse_int(t)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            let matrix = IntMatrix::from_rows(&rows)?;
            if matrix.nrows() != s.n || matrix.ncols() != s.n {
                return Err(Error::Dimension(format!("step {i}: matrix is not {0}x{0}", s.n)));
            }
            let transform = UnimodularTransform::general(matrix)?;
            trace.steps.push(TraceStep { transform, label: s.label, ambient_n: s.n });
        }
        trace.p_hat = j.p_hat.as_deref().map(parse_int).transpose()?;
        Ok(trace)
    }

    /// Like [`Trace::from_json`] but keeps matrices whose determinant is not
    /// ±1, so that a verifier can report them instead of failing to load.
    pub fn raw_matrices(j: &TraceJson) -> Result<Vec<(StageLabel, usize, IntMatrix)>> {
        j.steps
            .iter()
            .map(|s| {
                let rows = s
                    .matrix
                    .iter()
                    .map(|r| r.iter().map(|t| parse_int(t)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                let m = IntMatrix::from_rows(&rows)?;
                if !m.is_square() || m.nrows() != s.n {
                    return Err(Error::Dimension(format!("step matrix is not {0}x{0}", s.n)));
                }
                Ok((s.label, s.n, m))
            })
            .collect()
    }
}

pub(crate) fn parse_int(t: &str) -> Result<BigInt> {
    BigInt::from_str(t.trim()).map_err(|_| Error::Parse(format!("bad integer `{t}`")))
}

/// Trace JSON: `{"k","n","steps":[{"label","n","matrix"}],"p_hat"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceJson {
    pub k: usize,
    pub n: usize,
    pub steps: Vec<StepJson>,
    pub p_hat: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepJson {
    pub label: StageLabel,
    pub n: usize,
    pub matrix: Vec<Vec<String>>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plucker::compute_plucker;

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn pv(k: usize, n: usize, e: &[i64]) -> PluckerVector {
        PluckerVector::from_i64(k, n, e).unwrap()
    }

    #[test]
    fn zero_multiplier_is_identity() {
        let u = UnimodularTransform::elementary_subtract(4, 2, 3, BigInt::zero()).unwrap();
        assert!(u.is_identity());
        assert!(UnimodularTransform::elementary_subtract(4, 2, 2, BigInt::one()).is_err());
        assert!(UnimodularTransform::elementary_subtract(4, 5, 2, BigInt::one()).is_err());
    }

    #[test]
    fn worked_example_first_subtraction() {
        // the worked G(2,4) example labels this step T_{3,4}; it reduces column 4
        let u = UnimodularTransform::elementary_subtract(4, 4, 3, BigInt::one()).unwrap();
        let p = pv(2, 4, &[10, 10, 12, 15, 21, 3]);
        assert_eq!(push_plucker(&p, &u).unwrap(), pv(2, 4, &[10, 10, 2, 15, 6, 3]));
    }

    #[test]
    fn elementary_matches_matrix_action() {
        let m = mat(&[&[3, -1, 4, 1, 5], &[9, 2, -6, 5, 3], &[5, 8, 9, -7, 9]]);
        let p = compute_plucker(&m).unwrap();
        for (s, t, q) in [(1, 2, 3), (5, 1, -2), (3, 4, 7), (2, 5, 1)] {
            let u = UnimodularTransform::elementary_subtract(5, s, t, BigInt::from(q)).unwrap();
            let direct = compute_plucker(&apply_matrix(&u, &m).unwrap()).unwrap();
            assert_eq!(push_plucker(&p, &u).unwrap(), direct);
            assert_eq!(push_compound(&p, u.matrix()).unwrap(), direct);
        }
    }

    #[test]
    fn sign_flip_negates_entries_containing_slot() {
        let p = pv(2, 4, &[1, 2, 3, 4, 5, 6]);
        let u = UnimodularTransform::sign_flip(4, 3).unwrap();
        assert_eq!(push_plucker(&p, &u).unwrap(), pv(2, 4, &[1, -2, 3, -4, 5, -6]));
    }

    #[test]
    fn column_swap_preserves_absolute_values() {
        let p = pv(2, 4, &[10, 10, 12, -15, 3, 21]);
        let u = UnimodularTransform::column_swap(4, 2, 3).unwrap();
        let q = push_plucker(&p, &u).unwrap();
        let mut a: Vec<_> = p.entries().iter().map(Signed::abs).collect();
        let mut b: Vec<_> = q.entries().iter().map(Signed::abs).collect();
        a.sort();
        b.sort();
        assert_eq!(a, b);
        assert_eq!(q, pv(2, 4, &[10, 10, 12, 15, 21, 3]));
    }

    #[test]
    fn rotation_columns() {
        let m = mat(&[&[1, 2, 3, 4], &[10, 20, 30, 40]]);
        let u = UnimodularTransform::rotation(4, 2).unwrap();
        let r = apply_matrix(&u, &m).unwrap();
        assert_eq!(r, mat(&[&[3, 4, -1, -2], &[30, 40, -10, -20]]));
        assert!(UnimodularTransform::rotation(4, 4).is_err());
        assert!(UnimodularTransform::rotation(4, 0).is_err());
    }

    #[test]
    fn rotation_moves_adjacent_entry_to_corner() {
        let m = mat(&[&[1, 1, 0, -1, -2], &[0, 1, 1, 1, 1]]);
        let p = compute_plucker(&m).unwrap();
        assert!(p.entries().iter().all(|e| e.is_positive()));
        for i in 1..5 {
            let q = push_plucker(&p, &UnimodularTransform::rotation(5, i).unwrap()).unwrap();
            assert_eq!(q.skew(1, 5), p.skew(i, i + 1));
            assert!(q.entries().iter().all(|e| e.is_positive()));
        }
    }

    #[test]
    fn inverses() {
        let e = UnimodularTransform::elementary_subtract(5, 2, 4, BigInt::from(7)).unwrap();
        assert_eq!(invert(&e).unwrap(), UnimodularTransform::elementary_subtract(5, 2, 4, BigInt::from(-7)).unwrap());
        for u in [
            e,
            UnimodularTransform::rotation(5, 3).unwrap(),
            UnimodularTransform::drop_to_last(5, 2).unwrap(),
            UnimodularTransform::permutation(vec![3, 1, 2, 5, 4]).unwrap(),
            UnimodularTransform::general(mat(&[&[2, 1, 0], &[1, 1, 0], &[0, 0, -1]])).unwrap(),
        ] {
            let id = compose(&u, &invert(&u).unwrap()).unwrap();
            assert!(id.is_identity(), "{}", u.descriptor());
        }
    }

    #[test]
    fn general_rejects_non_unimodular() {
        assert!(UnimodularTransform::general(mat(&[&[2, 0], &[0, 1]])).is_err());
        assert!(UnimodularTransform::permutation(vec![1, 1, 2]).is_err());
    }

    #[test]
    fn drop_to_last_layout() {
        let m = mat(&[&[1, 2, 3, 4]]);
        let u = UnimodularTransform::drop_to_last(4, 2).unwrap();
        assert_eq!(apply_matrix(&u, &m).unwrap(), mat(&[&[1, 3, 4, 2]]));
    }

    #[test]
    fn padded_acts_as_identity_on_tail() {
        let u = UnimodularTransform::rotation(3, 1).unwrap().padded(5);
        let m = mat(&[&[1, 2, 3, 4, 5]]);
        assert_eq!(apply_matrix(&u, &m).unwrap(), mat(&[&[2, 3, -1, 4, 5]]));
    }

    #[test]
    fn trace_json_roundtrip() {
        let mut t = Trace::new(2, 3);
        t.record(UnimodularTransform::sign_flip(3, 2).unwrap(), StageLabel::Positivize);
        t.record(UnimodularTransform::drop_to_last(3, 1).unwrap(), StageLabel::CoordinateDrop);
        t.p_hat = Some(BigInt::from(-4));
        let j = serde_json::to_string(&t.to_json()).unwrap();
        assert!(j.starts_with(r#"{"k":2,"n":3,"steps":[{"label":"Positivize","n":3,"matrix":[["1","0","0"]"#));
        assert!(j.ends_with(r#""p_hat":"-4"}"#));
        let back = Trace::from_json(&serde_json::from_str(&j).unwrap()).unwrap();
        assert_eq!(back.to_json(), t.to_json());
        assert_eq!(back.current_n(), 2);
    }
}
