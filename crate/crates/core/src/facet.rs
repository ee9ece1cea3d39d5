use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SpgError};

/// A set of symbol indices in canonical (strictly ascending) order.
///
/// Equality and hashing are structural, so two facet sets with the same
/// members compare equal regardless of how they were built.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FacetSet(Vec<u32>);

impl FacetSet {
    pub fn new<I: IntoIterator<Item = u32>>(elements: I) -> Result<Self> {
        let mut v: Vec<u32> = elements.into_iter().collect();
        v.sort_unstable();
        if let Some(w) = v.windows(2).find(|w| w[0] == w[1]) {
            return Err(SpgError::DuplicateElement(w[0]));
        }
        Ok(Self(v))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// Caller guarantees `v` is strictly ascending.
    pub(crate) fn from_sorted(v: Vec<u32>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        Self(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = u32> + ExactSizeIterator + '_ {
        self.0.iter().copied()
    }

    pub fn max_element(&self) -> Option<u32> {
        self.0.last().copied()
    }

    pub fn contains(&self, x: u32) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn intersection_len(&self, other: &FacetSet) -> usize {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j, mut n) = (0, 0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    n += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        n
    }

    pub fn is_subset(&self, other: &FacetSet) -> bool {
        self.len() <= other.len() && self.intersection_len(other) == self.len()
    }

    pub fn difference(&self, other: &FacetSet) -> FacetSet {
        FacetSet(self.0.iter().copied().filter(|&x| !other.contains(x)).collect())
    }

    pub fn union(&self, other: &FacetSet) -> FacetSet {
        let mut v: Vec<u32> = self.0.iter().chain(other.0.iter()).copied().collect();
        v.sort_unstable();
        v.dedup();
        FacetSet(v)
    }

    /// The set with `x` removed (unchanged if absent).
    pub fn without(&self, x: u32) -> FacetSet {
        FacetSet(self.0.iter().copied().filter(|&y| y != x).collect())
    }

    /// Replaces `out` by `inn`. Panics if `out` is absent or `inn` present.
    pub(crate) fn swap(&mut self, out: u32, inn: u32) {
        let pos = self.0.binary_search(&out).expect("swapped-out element present");
        self.0.remove(pos);
        let pos = self.0.binary_search(&inn).expect_err("swapped-in element absent");
        self.0.insert(pos, inn);
    }

    /// `self × [r]` over a base alphabet of `n` symbols, row-major.
    pub fn lift(&self, n: usize, r: usize) -> FacetSet {
        let n = n as u32;
        FacetSet(
            (0..r as u32)
                .flat_map(|row| self.0.iter().map(move |&x| row * n + x))
                .collect(),
        )
    }

    /// Row `row` (0-based) of a lifted set, as base symbol indices.
    pub fn row(&self, n: usize, row: usize) -> FacetSet {
        let (lo, hi) = ((row * n) as u32, ((row + 1) * n) as u32);
        FacetSet(
            self.0
                .iter()
                .copied()
                .filter(|&x| x >= lo && x < hi)
                .map(|x| x - lo)
                .collect(),
        )
    }

    /// All subsets, in no particular order. Only sensible for small sets.
    pub(crate) fn subsets(&self) -> impl Iterator<Item = FacetSet> + '_ {
        let k = self.0.len();
        assert!(k < 64, "subset enumeration of a {k}-element set");
        (0u64..(1u64 << k)).map(move |mask| {
            FacetSet(
                (0..k)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| self.0[i])
                    .collect(),
            )
        })
    }
}

impl fmt::Display for FacetSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}
