//! Randomized construction giving a singleton SPG strong adjacency and the
//! end-point count property.
//!
//! Every set `A` is lifted to `A × [r]`, then every edge `{A, A'}` is
//! subdivided into `r` segments. Segment `j` walks row `π(j)` from `A` to
//! `A'` one symbol swap at a time, so consecutive sets always share `rd - 1`
//! symbols. The per-edge row permutations are the only randomness. Two
//! edges meeting at a vertex can interfere (a *bad event*) when sets on their
//! subdivisions share `rd - 1` symbols; such permutations are redrawn until
//! none remain.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::TransformError;
use crate::facet::FacetSet;
use crate::near;
use crate::spg::Spg;
use crate::verify::{self, Property, PropertyReport, Witness};

pub const DEFAULT_MAX_ROUNDS: usize = 1000;

type Result<T> = std::result::Result<T, TransformError>;

/// How permutations are redrawn after a round with bad events.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Redraw only the permutations of edges involved in a bad event.
    #[default]
    Resample,
    /// Redraw every permutation.
    Reject,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformConfig {
    pub r: usize,
    pub seed: u64,
    pub max_rounds: usize,
    pub strategy: Strategy,
}

impl TransformConfig {
    pub fn new(r: usize, seed: u64) -> Self {
        Self {
            r,
            seed,
            max_rounds: DEFAULT_MAX_ROUNDS,
            strategy: Strategy::Resample,
        }
    }
}

/// `⌈16·e·Δ⌉`, the multiplier that guarantees a bad-event-free assignment
/// exists. Graphs without edges need only the lift, so `delta = 0` gives 2.
pub fn min_multiplier(delta: usize) -> usize {
    if delta == 0 {
        return 2;
    }
    (16.0 * std::f64::consts::E * delta as f64).ceil() as usize
}

/// The local lemma condition `(4Δ - 5) · (4/r) · e < 1`.
pub fn lll_condition_holds(delta: usize, r: usize) -> bool {
    let dependents = 4.0 * delta as f64 - 5.0;
    dependents * (4.0 / r as f64) * std::f64::consts::E < 1.0
}

/// One row permutation per edge of the template.
///
/// `rows(e)[j]` is the (0-based) row swapped in segment `j` when walking edge
/// `e` from its lower-indexed endpoint to its higher one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationAssignment {
    r: usize,
    perms: Vec<Vec<u32>>,
}

impl PermutationAssignment {
    pub fn new(r: usize, perms: Vec<Vec<u32>>) -> Result<Self> {
        for (edge, p) in perms.iter().enumerate() {
            if !is_permutation(p, r) {
                return Err(TransformError::NotAPermutation { edge, r });
            }
        }
        Ok(Self { r, perms })
    }

    pub fn identity(r: usize, edges: usize) -> Self {
        Self {
            r,
            perms: vec![(0..r as u32).collect(); edges],
        }
    }

    fn random(r: usize, edges: usize, rng: &mut ChaCha8Rng) -> Self {
        let mut out = Self::identity(r, edges);
        for p in &mut out.perms {
            p.shuffle(rng);
        }
        out
    }

    fn redraw(&mut self, edge: usize, rng: &mut ChaCha8Rng) {
        let p = &mut self.perms[edge];
        *p = (0..self.r as u32).collect();
        p.shuffle(rng);
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn len(&self) -> usize {
        self.perms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perms.is_empty()
    }

    pub fn rows(&self, edge: usize) -> &[u32] {
        &self.perms[edge]
    }

    /// Segment order seen when walking `edge` away from `vertex`.
    pub fn from_vertex(&self, edge: usize, endpoints: (usize, usize), vertex: usize) -> Vec<u32> {
        let p = &self.perms[edge];
        if vertex == endpoints.0.min(endpoints.1) {
            p.clone()
        } else {
            p.iter().rev().copied().collect()
        }
    }
}

fn is_permutation(p: &[u32], r: usize) -> bool {
    let mut seen = vec![false; r];
    p.len() == r
        && p.iter().all(|&x| {
            let x = x as usize;
            x < r && !std::mem::replace(&mut seen[x], true)
        })
}

/// Sets on the subdivisions of two edges at `vertex` sharing `rd - 1` or
/// more symbols.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct BadEvent {
    pub vertex: usize,
    pub edges: (usize, usize),
    pub witness: (FacetSet, FacetSet),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResampleRound {
    pub round: usize,
    pub bad_events: Vec<BadEvent>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformResult {
    pub spg: Spg,
    pub r: usize,
    /// Template symbol count `n`; the result has `r·n` symbols.
    pub base_symbols: usize,
    pub base_dimension: usize,
    /// Template vertex → result vertex (identity: lifted originals come first).
    pub vertex_map: Vec<usize>,
    /// Template edge → result vertices along it, lower endpoint first.
    pub edge_paths: Vec<Vec<usize>>,
    pub permutations: PermutationAssignment,
    pub rounds_used: usize,
    pub resample_log: Vec<ResampleRound>,
}

impl TransformResult {
    pub fn set_at(&self, vertex: usize) -> &FacetSet {
        &self.spg.vertices()[vertex][0]
    }

    /// Template edges whose subdivision contains each result vertex.
    pub fn vertex_locations(&self) -> Vec<Vec<usize>> {
        let mut loc = vec![Vec::new(); self.spg.vertex_count()];
        for (e, path) in self.edge_paths.iter().enumerate() {
            for &v in path {
                loc[v].push(e);
            }
        }
        loc
    }
}

fn singleton_sets(spg: &Spg) -> Result<Vec<FacetSet>> {
    spg.ensure_valid()?;
    spg.singleton_sets()
        .map(|v| v.into_iter().cloned().collect())
        .ok_or(TransformError::NotSingleton)
}

/// Replaces every set `A` by `A × [r]`; same graph.
pub fn lift_product(spg: &Spg, r: usize) -> Result<Spg> {
    if r < 2 {
        return Err(TransformError::MultiplierTooSmall(r));
    }
    let sets = singleton_sets(spg)?;
    let n = spg.symbols().len();
    Ok(Spg::from_parts(
        spg.symbols().lifted(r),
        r * spg.dimension(),
        sets.iter().map(|a| vec![a.lift(n, r)]).collect(),
        spg.edges().to_vec(),
    ))
}

/// The lifted sets along the subdivision of edge `{from, to}`, both
/// endpoints included: `r·|from ∖ to| + 1` sets.
///
/// Segment `j` handles row `rows[j]`, swapping the elements of `from ∖ to`
/// for those of `to ∖ from` pairwise in ascending order.
pub fn subdivision_path(
    from: &FacetSet,
    to: &FacetSet,
    n: usize,
    rows: &[u32],
) -> Result<Vec<FacetSet>> {
    if from.len() != to.len() {
        return Err(TransformError::SizeMismatch(from.len(), to.len()));
    }
    if from == to {
        return Err(TransformError::IdenticalEndpoints);
    }
    let r = rows.len();
    if !is_permutation(rows, r) {
        return Err(TransformError::NotAPermutation { edge: 0, r });
    }
    let out = from.difference(to);
    let inn = to.difference(from);
    let mut current = from.lift(n, r);
    let mut path = Vec::with_capacity(r * out.len() + 1);
    path.push(current.clone());
    for &row in rows {
        let base = row * n as u32;
        for (x, y) in out.iter().zip(inn.iter()) {
            current.swap(base + x, base + y);
            path.push(current.clone());
        }
    }
    Ok(path)
}

/// Assembles the subdivided graph for a fixed permutation assignment.
pub fn build_subdivision(
    spg: &Spg,
    r: usize,
    perms: &PermutationAssignment,
) -> Result<TransformResult> {
    if r < 2 {
        return Err(TransformError::MultiplierTooSmall(r));
    }
    let sets = singleton_sets(spg)?;
    build_from_sets(spg, &sets, r, perms)
}

fn build_from_sets(
    spg: &Spg,
    sets: &[FacetSet],
    r: usize,
    perms: &PermutationAssignment,
) -> Result<TransformResult> {
    let edges = spg.edges();
    if perms.len() != edges.len() {
        return Err(TransformError::MissingPermutation {
            expected: edges.len(),
            got: perms.len(),
        });
    }
    if perms.r() != r {
        return Err(TransformError::NotAPermutation { edge: 0, r });
    }
    let n = spg.symbols().len();
    let mut vertices: Vec<Vec<FacetSet>> = sets.iter().map(|a| vec![a.lift(n, r)]).collect();
    let vertex_map: Vec<usize> = (0..sets.len()).collect();
    let mut new_edges = Vec::new();
    let mut edge_paths = Vec::with_capacity(edges.len());
    for (e, &(u, v)) in edges.iter().enumerate() {
        let path = subdivision_path(&sets[u], &sets[v], n, perms.rows(e))?;
        let mut ids = Vec::with_capacity(path.len());
        ids.push(u);
        let interior = path.len() - 2;
        for set in path.into_iter().skip(1).take(interior) {
            ids.push(vertices.len());
            vertices.push(vec![set]);
        }
        ids.push(v);
        new_edges.extend(ids.windows(2).map(|w| (w[0], w[1])));
        edge_paths.push(ids);
    }
    Ok(TransformResult {
        spg: Spg::from_parts(spg.symbols().lifted(r), r * spg.dimension(), vertices, new_edges),
        r,
        base_symbols: n,
        base_dimension: spg.dimension(),
        vertex_map,
        edge_paths,
        permutations: perms.clone(),
        rounds_used: 0,
        resample_log: Vec::new(),
    })
}

/// For every template vertex and pair of incident edges, reports a bad
/// event if some set on one subdivision and some set on the other (the
/// shared vertex excluded, far endpoints included) share `rd - 1` or more
/// symbols. Sorted by (vertex, edges).
pub fn find_bad_events(result: &TransformResult, original: &Spg) -> Vec<BadEvent> {
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); original.vertex_count()];
    for (e, &(u, v)) in original.edges().iter().enumerate() {
        incident[u].push(e);
        incident[v].push(e);
    }
    let mut events = Vec::new();
    for (vertex, edges) in incident.iter().enumerate() {
        if edges.len() < 2 {
            continue;
        }
        let arms: Vec<Vec<FacetSet>> = edges
            .iter()
            .map(|&e| {
                result.edge_paths[e]
                    .iter()
                    .filter(|&&w| w != result.vertex_map[vertex])
                    .map(|&w| result.set_at(w).clone())
                    .collect()
            })
            .collect();
        for i in 0..edges.len() {
            for j in i + 1..edges.len() {
                if let Some((a, b)) = near::first_near_pair(&arms[i], &arms[j]) {
                    events.push(BadEvent {
                        vertex,
                        edges: (edges[i], edges[j]),
                        witness: (arms[i][a].clone(), arms[j][b].clone()),
                    });
                }
            }
        }
    }
    events.sort();
    events
}

/// Outcome of one resampling run, successful or not.
pub(crate) struct Attempt {
    pub outcome: Result<TransformResult>,
    pub rounds: usize,
    pub initial_bad_events: usize,
}

pub(crate) fn attempt(spg: &Spg, config: &TransformConfig) -> Result<Attempt> {
    if config.r < 2 {
        return Err(TransformError::MultiplierTooSmall(config.r));
    }
    let sets = singleton_sets(spg)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut perms = PermutationAssignment::random(config.r, spg.edges().len(), &mut rng);
    let mut log = Vec::new();
    let mut initial_bad_events = 0;
    for round in 0.. {
        let mut result = build_from_sets(spg, &sets, config.r, &perms)?;
        let events = find_bad_events(&result, spg);
        if round == 0 {
            initial_bad_events = events.len();
        }
        if events.is_empty() {
            result.rounds_used = round;
            result.resample_log = log;
            let outcome = certify(&result.spg).map(|()| result);
            return Ok(Attempt { outcome, rounds: round, initial_bad_events });
        }
        if round >= config.max_rounds {
            return Ok(Attempt {
                outcome: Err(TransformError::BudgetExhausted { rounds: round, last: events }),
                rounds: round,
                initial_bad_events,
            });
        }
        match config.strategy {
            Strategy::Resample => {
                let involved: BTreeSet<usize> =
                    events.iter().flat_map(|b| [b.edges.0, b.edges.1]).collect();
                for e in involved {
                    perms.redraw(e, &mut rng);
                }
            }
            Strategy::Reject => {
                perms = PermutationAssignment::random(config.r, spg.edges().len(), &mut rng);
            }
        }
        log.push(ResampleRound { round, bad_events: events });
    }
    unreachable!("resampling loop exits by return")
}

// Re-checks the guarantees of a bad-event-free construction.
fn certify(spg: &Spg) -> Result<()> {
    let validity = verify::validate(spg);
    if !validity.holds() {
        return Err(TransformError::Verification(Box::new(validity)));
    }
    for check in [
        verify::check_adjacency,
        verify::check_strong_adjacency,
        verify::check_endpoint_count,
        verify::check_singleton,
    ] {
        let report = check(spg)?;
        if !report.holds() {
            return Err(TransformError::Verification(Box::new(report)));
        }
    }
    Ok(())
}

/// Draws per-edge permutations from `config.seed` and redraws until no bad
/// event remains, then verifies the result.
///
/// Fails with [`TransformError::BudgetExhausted`] after `config.max_rounds`
/// redraws, or [`TransformError::Verification`] if a bad-event-free result
/// still violates a property (possible only for `r < 4`).
pub fn construct_with_resampling(spg: &Spg, config: &TransformConfig) -> Result<TransformResult> {
    attempt(spg, config)?.outcome
}

#[derive(Debug, Clone, PartialEq)]
pub struct BadEventEstimate {
    pub trials: usize,
    pub occurrences: usize,
    pub frequency: f64,
    /// `4 / r`; meaningful only for `r >= 4`.
    pub bound: f64,
}

/// Monte-Carlo frequency of the bad event at the centre of the star
/// `center - leaf1, center - leaf2` under independent uniform permutations.
pub fn estimate_bad_event_probability(
    center: &FacetSet,
    leaf1: &FacetSet,
    leaf2: &FacetSet,
    r: usize,
    trials: usize,
    seed: u64,
) -> Result<BadEventEstimate> {
    if trials == 0 {
        return Err(TransformError::NoTrials);
    }
    if r < 2 {
        return Err(TransformError::MultiplierTooSmall(r));
    }
    let n = [center, leaf1, leaf2]
        .iter()
        .filter_map(|s| s.max_element())
        .max()
        .map_or(1, |x| x as usize + 1);
    let star = Spg::singleton(
        crate::symbols::SymbolTable::alphabetic(n),
        center.len(),
        vec![center.clone(), leaf1.clone(), leaf2.clone()],
        vec![(0, 1), (0, 2)],
    )?;
    let sets = [center.clone(), leaf1.clone(), leaf2.clone()];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut occurrences = 0;
    for _ in 0..trials {
        let perms = PermutationAssignment::random(r, 2, &mut rng);
        let result = build_from_sets(&star, &sets, r, &perms)?;
        if !find_bad_events(&result, &star).is_empty() {
            occurrences += 1;
        }
    }
    Ok(BadEventEstimate {
        trials,
        occurrences,
        frequency: occurrences as f64 / trials as f64,
        bound: 4.0 / r as f64,
    })
}

/// Checks that every two sets of the construction sharing exactly `rd - 1`
/// symbols lie on one edge's subdivision or on two edges with a common
/// endpoint. Exhaustive pairwise scan, independent of the bad-event search.
pub fn check_localization(result: &TransformResult, original: &Spg) -> Result<PropertyReport> {
    if result.r < 4 {
        return Err(TransformError::LocalizationPrecondition(result.r));
    }
    let sets: Vec<&FacetSet> = (0..result.spg.vertex_count()).map(|v| result.set_at(v)).collect();
    let target = result.spg.dimension() - 1;
    let loc = result.vertex_locations();
    let edges = original.edges();
    let touching = |e1: usize, e2: usize| {
        let ((a, b), (c, d)) = (edges[e1], edges[e2]);
        e1 == e2 || a == c || a == d || b == c || b == d
    };
    let mut w = Vec::new();
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            if sets[i].intersection_len(sets[j]) != target {
                continue;
            }
            let ok = loc[i].iter().any(|&e1| loc[j].iter().any(|&e2| touching(e1, e2)));
            if !ok {
                w.push(Witness::Unlocalized {
                    sets: (sets[i].clone(), sets[j].clone()),
                    vertices: (i, j),
                });
            }
        }
    }
    Ok(PropertyReport::new(Property::Localization, w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbols::SymbolTable;

    fn fs(v: &[u32]) -> FacetSet {
        FacetSet::new(v.iter().copied()).unwrap()
    }

    fn star(center: &[u32], leaves: &[&[u32]], n: usize) -> Spg {
        let mut sets = vec![fs(center)];
        sets.extend(leaves.iter().map(|l| fs(l)));
        Spg::singleton(
            SymbolTable::alphabetic(n),
            center.len(),
            sets,
            (1..=leaves.len()).map(|i| (0, i)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn min_multiplier_values() {
        // ⌈16e⌉ = ⌈43.49⌉, ⌈32e⌉ = ⌈86.99⌉, ⌈48e⌉ = ⌈130.48⌉
        assert_eq!(min_multiplier(1), 44);
        assert_eq!(min_multiplier(2), 87);
        assert_eq!(min_multiplier(3), 131);
        assert_eq!(min_multiplier(0), 2);
        for delta in 1..50 {
            assert!(lll_condition_holds(delta, min_multiplier(delta)));
        }
        assert!(!lll_condition_holds(2, 32));
    }

    #[test]
    fn lift_examples() {
        let g = Spg::singleton(SymbolTable::alphabetic(4), 2, vec![fs(&[0, 1])], vec![]).unwrap();
        let lifted = lift_product(&g, 2).unwrap();
        assert_eq!(lifted.dimension(), 4);
        assert_eq!(lifted.symbols().format_facet(&lifted.vertices()[0][0]), "{a@1,b@1,a@2,b@2}");
        assert!(lifted.edges().is_empty());
        assert!(matches!(lift_product(&g, 1), Err(TransformError::MultiplierTooSmall(1))));

        let multi = Spg::new(
            SymbolTable::alphabetic(4),
            2,
            vec![vec![fs(&[0, 1]), fs(&[1, 2])]],
            vec![],
        )
        .unwrap();
        assert!(matches!(lift_product(&multi, 2), Err(TransformError::NotSingleton)));
    }

    #[test]
    fn subdivision_path_errors() {
        assert!(matches!(
            subdivision_path(&fs(&[0, 1]), &fs(&[0, 1]), 4, &[0, 1]),
            Err(TransformError::IdenticalEndpoints)
        ));
        assert!(matches!(
            subdivision_path(&fs(&[0, 1]), &fs(&[2]), 4, &[0, 1]),
            Err(TransformError::SizeMismatch(2, 1))
        ));
        assert!(matches!(
            subdivision_path(&fs(&[0, 1]), &fs(&[2, 3]), 4, &[0, 0]),
            Err(TransformError::NotAPermutation { .. })
        ));
    }

    #[test]
    fn no_edges_gives_lift() {
        let g = Spg::singleton(SymbolTable::alphabetic(3), 2, vec![fs(&[0, 2])], vec![]).unwrap();
        let res = build_subdivision(&g, 3, &PermutationAssignment::identity(3, 0)).unwrap();
        assert_eq!(res.spg, lift_product(&g, 3).unwrap());
    }

    #[test]
    fn three_vertex_disjoint_path_count() {
        // {a,b} - {c,d} - {a,b}? no: use three pairwise disjoint sets
        let g = Spg::singleton(
            SymbolTable::alphabetic(6),
            2,
            vec![fs(&[0, 1]), fs(&[2, 3]), fs(&[4, 5])],
            vec![(0, 1), (1, 2)],
        )
        .unwrap();
        for r in 2..6 {
            let res = build_subdivision(&g, r, &PermutationAssignment::identity(r, 2)).unwrap();
            assert_eq!(res.spg.vertex_count(), 3 + 2 * (r * 2 - 1));
        }
    }

    #[test]
    fn permutation_assignment_checks() {
        let g = star(&[0, 1], &[&[2, 3]], 4);
        assert!(matches!(
            build_subdivision(&g, 2, &PermutationAssignment::identity(2, 0)),
            Err(TransformError::MissingPermutation { expected: 1, got: 0 })
        ));
        assert!(matches!(
            PermutationAssignment::new(3, vec![vec![0, 1, 1]]),
            Err(TransformError::NotAPermutation { edge: 0, r: 3 })
        ));
    }

    #[test]
    fn bad_event_on_shared_first_row() {
        // centre {a,b}, leaves {c,d} and {c,e}; identical first swaps a@1 -> c@1
        let g = star(&[0, 1], &[&[2, 3], &[2, 4]], 5);
        let res = build_subdivision(&g, 2, &PermutationAssignment::identity(2, 2)).unwrap();
        let events = find_bad_events(&res, &g);
        assert_eq!(events.len(), 1);
        let b = &events[0];
        assert_eq!((b.vertex, b.edges), (0, (0, 1)));
        assert_eq!(b.witness.0.intersection_len(&b.witness.1), 4);
        assert_eq!(res.spg.symbols().format_facet(&b.witness.0), "{b@1,c@1,a@2,b@2}");
    }

    #[test]
    fn distinct_leading_rows_avoid_bad_event() {
        let g = star(&[0, 1], &[&[2, 3], &[2, 4]], 5);
        let perms = PermutationAssignment::new(4, vec![vec![0, 1, 2, 3], vec![2, 3, 0, 1]]).unwrap();
        let res = build_subdivision(&g, 4, &perms).unwrap();
        assert!(find_bad_events(&res, &g).is_empty());
    }

    #[test]
    fn single_edge_has_no_bad_events() {
        let g = star(&[0, 1], &[&[2, 3]], 4);
        let res = construct_with_resampling(&g, &TransformConfig::new(2, 1)).unwrap();
        assert_eq!(res.rounds_used, 0);
        assert!(res.resample_log.is_empty());
    }

    #[test]
    fn perspective_flip() {
        let perms = PermutationAssignment::new(3, vec![vec![2, 0, 1]]).unwrap();
        assert_eq!(perms.from_vertex(0, (4, 7), 4), vec![2, 0, 1]);
        assert_eq!(perms.from_vertex(0, (4, 7), 7), vec![1, 0, 2]);
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        // r = 2 on a degree-3 star almost never resolves in zero redraws
        let g = star(&[0, 1], &[&[0, 2], &[0, 3], &[0, 4]], 5);
        let mut cfg = TransformConfig::new(2, 3);
        cfg.max_rounds = 0;
        match construct_with_resampling(&g, &cfg) {
            Err(TransformError::BudgetExhausted { rounds: 0, last }) => assert!(!last.is_empty()),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn estimate_rejects_zero_trials() {
        assert!(matches!(
            estimate_bad_event_probability(&fs(&[0, 1]), &fs(&[2, 3]), &fs(&[4, 5]), 8, 0, 1),
            Err(TransformError::NoTrials)
        ));
    }

    #[test]
    fn localization_refuses_small_r() {
        let g = star(&[0, 1], &[&[2, 3]], 4);
        let res = build_subdivision(&g, 2, &PermutationAssignment::identity(2, 1)).unwrap();
        assert!(matches!(
            check_localization(&res, &g),
            Err(TransformError::LocalizationPrecondition(2))
        ));
    }
}
