//! Plücker vectors of integer k-planes.
//!
//! Coordinates are indexed by strictly increasing k-tuples of 1-based column
//! indices, stored in lexicographic order. Ranks are computed through the
//! combinatorial number system, so no subset table is ever materialized.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{det_square, LatticeMatrix};

/// Largest ambient dimension supported by the rank tables.
pub const MAX_N: usize = 64;

fn pascal() -> &'static Vec<Vec<u64>> {
    static TABLE: OnceLock<Vec<Vec<u64>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = vec![vec![0u64; MAX_N + 1]; MAX_N + 1];
        for n in 0..=MAX_N {
            t[n][0] = 1;
            for k in 1..=n {
                t[n][k] = t[n - 1][k - 1].saturating_add(t[n - 1][k]);
            }
        }
        t
    })
}

/// Binomial coefficient C(n, k); zero when k > n.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    assert!(n <= MAX_N, "ambient dimension {n} exceeds {MAX_N}");
    pascal()[n][k] as usize
}

/// A strictly increasing k-tuple of indices in `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetIndex {
    n: usize,
    indices: Vec<usize>,
}

impl SubsetIndex {
    pub fn new(n: usize, indices: Vec<usize>) -> Result<Self> {
        validate_subset(n, &indices)?;
        Ok(SubsetIndex { n, indices })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.indices.len()
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    pub fn rank(&self) -> usize {
        rank_unchecked(self.n, &self.indices)
    }

    pub fn unrank(n: usize, k: usize, rank: usize) -> Result<Self> {
        if k > n || n > MAX_N {
            return Err(Error::Dimension(format!("no {k}-subsets of 1..={n}")));
        }
        if rank >= binomial(n, k) {
            return Err(Error::Validation(format!(
                "rank {rank} out of range for C({n},{k}) = {}",
                binomial(n, k)
            )));
        }
        Ok(SubsetIndex { n, indices: unrank_unchecked(n, k, rank) })
    }
}

impl fmt::Display for SubsetIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

fn validate_subset(n: usize, indices: &[usize]) -> Result<()> {
    if n > MAX_N {
        return Err(Error::Dimension(format!("ambient dimension {n} exceeds {MAX_N}")));
    }
    if indices.len() > n {
        return Err(Error::Validation(format!("{} indices exceed n = {n}", indices.len())));
    }
    for (pos, &i) in indices.iter().enumerate() {
        if i < 1 || i > n {
            return Err(Error::Validation(format!("index {i} outside 1..={n}")));
        }
        if pos > 0 && indices[pos - 1] >= i {
            return Err(Error::Validation(format!("indices {indices:?} are not strictly increasing")));
        }
    }
    Ok(())
}

/// 0-based lexicographic position of a k-subset of `1..=n`.
pub fn lex_rank(n: usize, indices: &[usize]) -> Result<usize> {
    validate_subset(n, indices)?;
    Ok(rank_unchecked(n, indices))
}

/// Inverse of [`lex_rank`].
pub fn lex_unrank(n: usize, k: usize, rank: usize) -> Result<Vec<usize>> {
    SubsetIndex::unrank(n, k, rank).map(|s| s.indices)
}

pub(crate) fn rank_unchecked(n: usize, indices: &[usize]) -> usize {
    let k = indices.len();
    let mut r = 0;
    let mut prev = 0;
    for (t, &c) in indices.iter().enumerate() {
        // subsets agreeing on the first t slots but with a smaller value here
        for v in prev + 1..c {
            r += binomial(n - v, k - t - 1);
        }
        prev = c;
    }
    r
}

pub(crate) fn unrank_unchecked(n: usize, k: usize, mut rank: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(k);
    let mut v = 1;
    for t in 0..k {
        loop {
            let block = binomial(n - v, k - t - 1);
            if rank < block {
                break;
            }
            rank -= block;
            v += 1;
        }
        out.push(v);
        v += 1;
    }
    out
}

/// Iterator over all k-subsets of `1..=n` in lexicographic order.
pub struct Subsets {
    n: usize,
    current: Option<Vec<usize>>,
}

pub fn subsets(n: usize, k: usize) -> Subsets {
    let current = (k <= n).then(|| (1..=k).collect());
    Subsets { n, current }
}

impl Iterator for Subsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.current.take()?;
        let k = cur.len();
        let mut next = cur.clone();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if next[i] < self.n - (k - 1 - i) {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                return Some(cur);
            }
        }
        Some(cur)
    }
}

/// Sorts an index tuple; returns `None` on a repeated index, otherwise the
/// sorted tuple with the sign of the sorting permutation.
pub fn sort_with_sign(indices: &[usize]) -> Option<(Vec<usize>, i8)> {
    let mut v = indices.to_vec();
    let mut sign = 1i8;
    // insertion sort, counting transpositions
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
        if j > 0 && v[j - 1] == v[j] {
            return None;
        }
    }
    Some((v, sign))
}

/// Integer Plücker coordinates of a point of G(k, n).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PluckerVector {
    k: usize,
    n: usize,
    entries: Vec<BigInt>,
}

impl PluckerVector {
    /// Validates the length and rejects the all-zero vector.
    pub fn new(k: usize, n: usize, entries: Vec<BigInt>) -> Result<Self> {
        let p = Self::new_unchecked_zero(k, n, entries)?;
        if p.is_zero() {
            return Err(Error::Validation("all Plücker coordinates are zero".into()));
        }
        Ok(p)
    }

    /// Like [`PluckerVector::new`] but admits the zero vector (used for
    /// intermediate states and the pushforward of degenerate inputs).
    pub fn new_unchecked_zero(k: usize, n: usize, entries: Vec<BigInt>) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::Dimension(format!("need 1 <= k <= n, got k = {k}, n = {n}")));
        }
        if n > MAX_N {
            return Err(Error::Dimension(format!("ambient dimension {n} exceeds {MAX_N}")));
        }
        let len = binomial(n, k);
        if entries.len() != len {
            return Err(Error::Dimension(format!(
                "G({k},{n}) needs {len} coordinates, got {}",
                entries.len()
            )));
        }
        Ok(PluckerVector { k, n, entries })
    }

    pub fn from_i64(k: usize, n: usize, entries: &[i64]) -> Result<Self> {
        Self::new(k, n, entries.iter().map(|&e| BigInt::from(e)).collect())
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<BigInt> {
        self.entries
    }

    pub(crate) fn entries_mut(&mut self) -> &mut [BigInt] {
        &mut self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Coordinate at a sorted index tuple.
    pub fn get(&self, indices: &[usize]) -> &BigInt {
        &self.entries[rank_unchecked(self.n, indices)]
    }

    /// Coordinate at an arbitrary ordered tuple: the determinant of the
    /// columns taken in that order (zero on a repeated index).
    pub fn get_signed(&self, indices: &[usize]) -> BigInt {
        match sort_with_sign(indices) {
            None => BigInt::zero(),
            Some((sorted, s)) => {
                let v = self.get(&sorted).clone();
                if s < 0 {
                    -v
                } else {
                    v
                }
            }
        }
    }

    /// For k = 2: the skew-symmetric entry p_{i,j} (1-based, any order).
    pub fn skew(&self, i: usize, j: usize) -> BigInt {
        debug_assert_eq!(self.k, 2);
        self.get_signed(&[i, j])
    }

    /// Iterates `(tuple, value)` in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = (Vec<usize>, &BigInt)> {
        subsets(self.n, self.k).zip(self.entries.iter())
    }

    /// First index (lex order) whose coordinate is zero.
    pub fn first_zero(&self) -> Option<Vec<usize>> {
        self.iter().find(|(_, v)| v.is_zero()).map(|(s, _)| s)
    }

    pub fn scaled(&self, c: &BigInt) -> PluckerVector {
        PluckerVector { k: self.k, n: self.n, entries: self.entries.iter().map(|e| e * c).collect() }
    }

    pub fn negated(&self) -> PluckerVector {
        self.scaled(&-BigInt::one())
    }

    pub fn max_abs(&self) -> BigInt {
        self.entries.iter().map(Signed::abs).max().unwrap_or_default()
    }

    /// Restriction to the coordinates not involving column n, as a point of
    /// G(k, n−1). The caller guarantees those involving n are zero.
    pub fn drop_last(&self) -> Result<PluckerVector> {
        let entries = self
            .iter()
            .filter(|(s, _)| *s.last().unwrap() < self.n)
            .map(|(_, v)| v.clone())
            .collect();
        PluckerVector::new_unchecked_zero(self.k, self.n - 1, entries)
    }

    /// Inverse of [`PluckerVector::drop_last`]: zero coordinates involving n+1.
    pub fn extend_zero(&self) -> PluckerVector {
        let n = self.n + 1;
        let entries = subsets(n, self.k)
            .map(|s| if *s.last().unwrap() == n { BigInt::zero() } else { self.get(&s).clone() })
            .collect();
        PluckerVector { k: self.k, n, entries }
    }

    /// Text form `k n : e_0 e_1 …`.
    pub fn to_text(&self) -> String {
        let e: Vec<String> = self.entries.iter().map(ToString::to_string).collect();
        format!("{} {} : {}", self.k, self.n, e.join(" "))
    }

    pub fn to_json(&self) -> PluckerJson {
        PluckerJson {
            k: self.k,
            n: self.n,
            entries: self.entries.iter().map(ToString::to_string).collect(),
        }
    }

    /// Parses either the text or the JSON form.
    pub fn parse(s: &str) -> Result<Self> {
        if s.trim_start().starts_with('{') {
            let j: PluckerJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
            j.try_into()
        } else {
            s.parse()
        }
    }
}

impl fmt::Display for PluckerVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for PluckerVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body: String = s
            .lines()
            .map(|l| l.split('#').next().unwrap_or(""))
            .collect::<Vec<_>>()
            .join(" ");
        let (head, tail) = body
            .split_once(':')
            .ok_or_else(|| Error::Parse("expected `k n : entries`".into()))?;
        let dims: Vec<usize> = head
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad dimension `{t}`"))))
            .collect::<Result<_>>()?;
        let [k, n] = dims[..] else {
            return Err(Error::Parse("expected exactly two dimensions before `:`".into()));
        };
        let entries = tail
            .split_whitespace()
            .map(|t| BigInt::from_str(t).map_err(|_| Error::Parse(format!("bad integer `{t}`"))))
            .collect::<Result<_>>()?;
        PluckerVector::new(k, n, entries)
    }
}

/// JSON form `{"k":…,"n":…,"entries":["dec",…]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PluckerJson {
    pub k: usize,
    pub n: usize,
    pub entries: Vec<String>,
}

impl TryFrom<PluckerJson> for PluckerVector {
    type Error = Error;

    fn try_from(j: PluckerJson) -> Result<Self> {
        let entries = j
            .entries
            .iter()
            .map(|t| BigInt::from_str(t).map_err(|_| Error::Parse(format!("bad integer `{t}`"))))
            .collect::<Result<_>>()?;
        PluckerVector::new(j.k, j.n, entries)
    }
}

/// Maximal minors of a k×n matrix in lexicographic column order.
pub fn compute_plucker(m: &LatticeMatrix) -> Result<PluckerVector> {
    let (k, n) = (m.nrows(), m.ncols());
    if k == 0 || k > n {
        return Err(Error::Dimension(format!("need 1 <= k <= n for a {k}x{n} matrix")));
    }
    let entries = subsets(n, k)
        .map(|cols| {
            let rows = (0..k)
                .map(|i| cols.iter().map(|&c| m[(i, c - 1)].clone()).collect())
                .collect();
            det_square(rows)
        })
        .collect();
    PluckerVector::new_unchecked_zero(k, n, entries)
}

/// gcd of the absolute values of all coordinates.
pub fn plucker_gcd(p: &PluckerVector) -> Result<BigInt> {
    if p.is_zero() {
        return Err(Error::Validation("gcd of the zero vector".into()));
    }
    Ok(p.entries.iter().fold(BigInt::zero(), |g, e| g.gcd(e)))
}

pub fn is_primitive(p: &PluckerVector) -> bool {
    plucker_gcd(p).is_ok_and(|g| g.is_one())
}

/// Whether `p` satisfies the Grassmann–Plücker relations.
///
/// For k = 2 this is the three-term identity
/// `p_ik p_jl = p_ij p_kl + p_il p_jk` for all i < j < k < l. For general k
/// the exchange relations
/// `Σ_l (−1)^l p[a_1..a_{k−1} b_l] · p[b_1..b̂_l..b_{k+1}] = 0`
/// are checked over all (k−1)-subsets a and (k+1)-subsets b.
pub fn check_relations(p: &PluckerVector) -> bool {
    match p.k {
        1 => true,
        2 => check_three_term(p),
        _ => check_exchange(p),
    }
}

fn check_three_term(p: &PluckerVector) -> bool {
    subsets(p.n, 4).all(|q| {
        let [i, j, k, l] = q[..] else { unreachable!() };
        p.get(&[i, k]) * p.get(&[j, l]) == p.get(&[i, j]) * p.get(&[k, l]) + p.get(&[i, l]) * p.get(&[j, k])
    })
}

pub(crate) fn check_exchange(p: &PluckerVector) -> bool {
    let (k, n) = (p.k, p.n);
    if k + 1 > n {
        return true;
    }
    for a in subsets(n, k - 1) {
        for b in subsets(n, k + 1) {
            let mut sum = BigInt::zero();
            for l in 0..=k {
                let mut left = a.clone();
                left.push(b[l]);
                let lv = p.get_signed(&left);
                if lv.is_zero() {
                    continue;
                }
                let right: Vec<usize> =
                    b.iter().enumerate().filter(|&(i, _)| i != l).map(|(_, &x)| x).collect();
                let term = lv * p.get(&right);
                if l % 2 == 0 {
                    sum += term;
                } else {
                    sum -= term;
                }
            }
            if !sum.is_zero() {
                return false;
            }
        }
    }
    true
}
