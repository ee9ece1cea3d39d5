//! Oracles and instance generators shared by the integration tests. Nothing
//! here calls the hashed verifiers; the checks are direct enumerations.
#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use spg::transform::{PermutationAssignment, TransformResult};
use spg::{FacetSet, Spg, SymbolTable};

pub fn fs(v: &[u32]) -> FacetSet {
    FacetSet::new(v.iter().copied()).unwrap()
}

pub fn binomial(n: usize, k: usize) -> usize {
    // Pascal's triangle, independent of any closed form
    let mut row = vec![1usize];
    for _ in 0..n {
        let mut next = vec![1usize; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row.get(k).copied().unwrap_or(0)
}

fn bset(s: &FacetSet) -> BTreeSet<u32> {
    s.iter().collect()
}

pub fn intersection(a: &FacetSet, b: &FacetSet) -> usize {
    bset(a).intersection(&bset(b)).count()
}

/// Every `k`-subset of `0..n` by recursion.
pub fn all_subsets(n: u32, k: usize) -> Vec<FacetSet> {
    fn go(start: u32, n: u32, k: usize, cur: &mut Vec<u32>, out: &mut Vec<FacetSet>) {
        if cur.len() == k {
            out.push(FacetSet::new(cur.iter().copied()).unwrap());
            return;
        }
        for x in start..n {
            cur.push(x);
            go(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

pub fn all_permutations(r: u32) -> Vec<Vec<u32>> {
    if r == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in all_permutations(r - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, r - 1);
            out.push(q);
        }
    }
    out
}

/// `(F, containing sets)` for every `(d-1)`-subset `F` of the symbol set
/// contained in three or more sets, found by enumerating all of `C(S, d-1)`.
pub fn endpoint_overflow_brute_force(spg: &Spg) -> Vec<(FacetSet, Vec<FacetSet>)> {
    let d = spg.dimension();
    let family: Vec<&FacetSet> = spg.family().map(|(_, s)| s).collect();
    let mut out = Vec::new();
    for f in all_subsets(spg.symbols().len() as u32, d - 1) {
        let mut holders: Vec<FacetSet> = family
            .iter()
            .filter(|a| bset(&f).is_subset(&bset(a)))
            .map(|a| (*a).clone())
            .collect();
        if holders.len() > 2 {
            holders.sort();
            out.push((f, holders));
        }
    }
    out.sort();
    out
}

/// Pairs of sets sharing `d - 1` symbols whose vertices are distinct and
/// not joined by an edge; plain double loop.
pub fn adjacency_violations_brute_force(spg: &Spg) -> usize {
    let d = spg.dimension();
    let family: Vec<(usize, &FacetSet)> = spg.family().collect();
    let mut count = 0;
    for i in 0..family.len() {
        for j in i + 1..family.len() {
            let ((u, a), (v, b)) = (family[i], family[j]);
            if intersection(a, b) + 1 == d
                && u != v
                && !spg.edges().contains(&(u.min(v), u.max(v)))
            {
                count += 1;
            }
        }
    }
    count
}

/// Number of subdivision vertices having two or more rows that match
/// neither endpoint of their edge.
pub fn row_structure_violations(result: &TransformResult, template: &Spg) -> usize {
    let n = result.base_symbols;
    let sets = template.singleton_sets().unwrap();
    let mut bad = 0;
    for (e, path) in result.edge_paths.iter().enumerate() {
        let (u, v) = template.edges()[e];
        for &w in &path[1..path.len() - 1] {
            let b = result.set_at(w);
            let odd = (0..result.r)
                .filter(|&row| {
                    let r = b.row(n, row);
                    &r != sets[u] && &r != sets[v]
                })
                .count();
            if odd > 1 {
                bad += 1;
            }
        }
    }
    bad
}

/// Random connected singleton template: `vertices` distinct `d`-subsets of
/// `n` symbols, a random spanning tree, plus each remaining pair as an
/// edge with probability `extra`.
pub fn random_template(
    rng: &mut ChaCha8Rng,
    vertices: usize,
    d: usize,
    n: usize,
    extra: f64,
) -> Spg {
    let mut pool = all_subsets(n as u32, d);
    pool.shuffle(rng);
    let sets: Vec<FacetSet> = pool.into_iter().take(vertices).collect();
    assert_eq!(sets.len(), vertices, "not enough distinct subsets");
    let mut edges = Vec::new();
    for v in 1..vertices {
        edges.push((rng.gen_range(0..v), v));
    }
    for u in 0..vertices {
        for v in u + 1..vertices {
            if !edges.contains(&(u, v)) && rng.gen_bool(extra) {
                edges.push((u, v));
            }
        }
    }
    Spg::singleton(SymbolTable::alphabetic(n), d, sets, edges).unwrap()
}

pub fn random_permutations(rng: &mut ChaCha8Rng, r: usize, edges: usize) -> PermutationAssignment {
    let perms = (0..edges)
        .map(|_| {
            let mut p: Vec<u32> = (0..r as u32).collect();
            p.shuffle(rng);
            p
        })
        .collect();
    PermutationAssignment::new(r, perms).unwrap()
}

/// Random valid SPG, not necessarily singleton: up to `max_sets` distinct
/// `d`-subsets split into random vertices joined by a random tree.
pub fn random_spg(rng: &mut ChaCha8Rng, max_sets: usize) -> Spg {
    let d = rng.gen_range(1..=4usize);
    let n = rng.gen_range(d..=10usize);
    let mut pool = all_subsets(n as u32, d);
    pool.shuffle(rng);
    let take = rng.gen_range(1..=pool.len().min(max_sets));
    pool.truncate(take);
    let groups = rng.gen_range(1..=take);
    let mut vertices: Vec<Vec<FacetSet>> = vec![Vec::new(); groups];
    for (i, s) in pool.into_iter().enumerate() {
        let slot = if i < groups { i } else { rng.gen_range(0..groups) };
        vertices[slot].push(s);
    }
    let edges = (1..groups).map(|v| (rng.gen_range(0..v), v)).collect();
    Spg::new(SymbolTable::alphabetic(n), d, vertices, edges).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
