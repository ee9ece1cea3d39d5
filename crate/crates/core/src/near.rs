//! One-deletion hashing over equal-size facet sets.
//!
//! Two sets of size `k` share `k - 1` elements iff deleting one element from
//! each yields the same set. Each set is keyed by the additive hash of every
//! one-element deletion, so candidate pairs are found without a quadratic
//! scan. Every candidate is re-checked exactly; hash collisions only cost time.

use std::collections::HashMap;

use crate::facet::FacetSet;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[inline]
fn key(x: u32) -> u64 {
    splitmix64(x as u64)
}

fn set_hash(set: &FacetSet) -> u64 {
    set.iter().fold(0u64, |h, x| h.wrapping_add(key(x)))
}

fn deletions(set: &FacetSet) -> impl Iterator<Item = (u64, u32)> + '_ {
    let h = set_hash(set);
    set.iter().map(move |x| (h.wrapping_sub(key(x)), x))
}

struct DeletionIndex {
    buckets: HashMap<u64, Vec<(usize, u32)>>,
}

impl DeletionIndex {
    fn build<'a>(sets: impl IntoIterator<Item = &'a FacetSet>) -> Self {
        let mut buckets: HashMap<u64, Vec<(usize, u32)>> = HashMap::new();
        for (i, set) in sets.into_iter().enumerate() {
            for (h, x) in deletions(set) {
                buckets.entry(h).or_default().push((i, x));
            }
        }
        Self { buckets }
    }
}

/// Groups of at least two sets sharing a common `(k-1)`-subset, as
/// `(shared subset, ascending set indices)`, sorted by subset.
pub(crate) fn shared_subfacets(sets: &[FacetSet]) -> Vec<(FacetSet, Vec<usize>)> {
    let index = DeletionIndex::build(sets);
    let mut groups: Vec<(FacetSet, Vec<usize>)> = Vec::new();
    for entries in index.buckets.values() {
        if entries.len() < 2 {
            continue;
        }
        let mut exact: Vec<(FacetSet, usize)> = entries
            .iter()
            .map(|&(i, x)| (sets[i].without(x), i))
            .collect();
        exact.sort();
        for run in exact.chunk_by(|a, b| a.0 == b.0) {
            if run.len() >= 2 {
                let mut ids: Vec<usize> = run.iter().map(|e| e.1).collect();
                ids.dedup();
                if ids.len() >= 2 {
                    groups.push((run[0].0.clone(), ids));
                }
            }
        }
    }
    groups.sort();
    groups
}

/// All pairs `(i, j)` with `|left[i] ∩ right[j]| >= k - 1`, where every set
/// has size `k`. Sorted, without duplicates.
#[cfg(test)]
pub(crate) fn near_pairs(left: &[FacetSet], right: &[FacetSet]) -> Vec<(usize, usize)> {
    let Some(k) = left.first().map(FacetSet::len) else {
        return Vec::new();
    };
    if k == 0 {
        // every pair of empty sets is identical
        return (0..left.len())
            .flat_map(|i| (0..right.len()).map(move |j| (i, j)))
            .collect();
    }
    let index = DeletionIndex::build(left);
    let mut out = Vec::new();
    for (j, b) in right.iter().enumerate() {
        for (h, _) in deletions(b) {
            if let Some(entries) = index.buckets.get(&h) {
                for &(i, _) in entries {
                    if left[i].intersection_len(b) + 1 >= k {
                        out.push((i, j));
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// The pair `(i, j)` with `|left[i] ∩ right[j]| >= k - 1` minimizing `(j, i)`.
pub(crate) fn first_near_pair(left: &[FacetSet], right: &[FacetSet]) -> Option<(usize, usize)> {
    let k = left.first()?.len();
    if k == 0 {
        return (!right.is_empty()).then_some((0, 0));
    }
    let index = DeletionIndex::build(left);
    let mut best: Option<(usize, usize)> = None;
    for (j, b) in right.iter().enumerate() {
        for (h, _) in deletions(b) {
            if let Some(entries) = index.buckets.get(&h) {
                for &(i, _) in entries {
                    if left[i].intersection_len(b) + 1 >= k && best.is_none_or(|p| (i, j) < p) {
                        best = Some((i, j));
                    }
                }
            }
        }
        if best.is_some() {
            // smallest j found; minimal i for that j already selected
            return best;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn family() -> impl Strategy<Value = Vec<FacetSet>> {
        (1usize..4).prop_flat_map(|k| {
            prop::collection::btree_set(prop::collection::btree_set(0u32..7, k..=k), 0..25)
                .prop_map(|s| {
                    s.into_iter()
                        .map(|x| FacetSet::new(x).unwrap())
                        .collect::<Vec<_>>()
                })
        })
    }

    proptest! {
        #[test]
        fn near_pairs_match_brute_force(a in family(), b in family()) {
            let k = a.first().map(FacetSet::len);
            prop_assume!(k.is_some() && b.first().map(FacetSet::len) == k);
            let k = k.unwrap();
            let mut brute = Vec::new();
            for (i, x) in a.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    if x.intersection_len(y) + 1 >= k {
                        brute.push((i, j));
                    }
                }
            }
            prop_assert_eq!(&near_pairs(&a, &b), &brute);
            prop_assert_eq!(first_near_pair(&a, &b), brute.iter().copied().min_by_key(|&(i, j)| (j, i)));
        }

        #[test]
        fn shared_subfacets_match_brute_force(a in family()) {
            let got = shared_subfacets(&a);
            for (f, ids) in &got {
                for &i in ids {
                    prop_assert!(f.is_subset(&a[i]));
                }
                let all: Vec<usize> = (0..a.len()).filter(|&i| f.is_subset(&a[i])).collect();
                prop_assert_eq!(ids, &all);
            }
            // every pair sharing k-1 elements appears in some group
            for i in 0..a.len() {
                for j in i + 1..a.len() {
                    if a[i].intersection_len(&a[j]) + 1 == a[i].len() {
                        prop_assert!(got.iter().any(|(_, ids)| ids.contains(&i) && ids.contains(&j)));
                    }
                }
            }
        }
    }
}
