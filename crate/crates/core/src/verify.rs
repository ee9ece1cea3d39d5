//! Exhaustive verifiers for subset partition graph properties.
//!
//! Every verifier returns a [`PropertyReport`] listing each violation as a
//! [`Witness`], sorted so output is deterministic. Verifiers other than
//! [`validate`] reject invalid input with [`SpgError::Invalid`].

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::error::{Result, SpgError};
use crate::facet::FacetSet;
use crate::near;
use crate::spg::Spg;
use crate::symbols::SymbolTable;

/// Default cap on restriction-connectivity checks.
pub const DEFAULT_RESTRICTION_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Property {
    /// Well-formedness: the union of the structural checks.
    Validity,
    Partition,
    Connectivity,
    Adjacency,
    StrongAdjacency,
    EndPointCount,
    Singleton,
    DimensionReduction,
    Localization,
}

impl Property {
    pub fn name(self) -> &'static str {
        match self {
            Property::Validity => "validity",
            Property::Partition => "partition",
            Property::Connectivity => "connectivity",
            Property::Adjacency => "adjacency",
            Property::StrongAdjacency => "strong-adjacency",
            Property::EndPointCount => "endpoint-count",
            Property::Singleton => "singleton",
            Property::DimensionReduction => "dimension-reduction",
            Property::Localization => "localization",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Witness {
    NoSymbols,
    DimensionOutOfRange { dimension: usize, symbols: usize },
    EmptyVertex { vertex: usize },
    WrongSetSize { vertex: usize, set: FacetSet, expected: usize },
    SymbolOutOfRange { vertex: usize, set: FacetSet, symbol: u32 },
    /// A set held more than once, with every vertex holding it.
    DuplicateSet { set: FacetSet, vertices: Vec<usize> },
    EdgeOutOfRange { edge: usize, endpoint: usize },
    SelfLoop { edge: usize, vertex: usize },
    ParallelEdge { first: usize, second: usize },
    Disconnected { components: Vec<Vec<usize>> },
    /// Two sets sharing `d - 1` symbols in distinct, non-adjacent vertices.
    NonAdjacentPair { sets: (FacetSet, FacetSet), vertices: (usize, usize) },
    /// An edge whose endpoints hold no pair of sets sharing `d - 1` symbols.
    UnwitnessedEdge { edge: usize, vertices: (usize, usize) },
    /// A `(d-1)`-set contained in three or more sets of the family.
    EndPointOverflow { subfacet: FacetSet, sets: Vec<FacetSet> },
    NonSingleton { vertex: usize, size: usize },
    DisconnectedRestriction { facet: FacetSet, components: usize },
    /// Sets sharing `rd - 1` symbols on subdivisions of two edges with no
    /// common endpoint.
    Unlocalized { sets: (FacetSet, FacetSet), vertices: (usize, usize) },
}

impl Witness {
    pub fn describe(&self, symbols: &SymbolTable) -> String {
        let set = |s: &FacetSet| {
            if s.max_element().is_some_and(|x| x as usize >= symbols.len()) {
                s.to_string()
            } else {
                symbols.format_facet(s)
            }
        };
        match self {
            Witness::NoSymbols => "symbol table is empty".into(),
            Witness::DimensionOutOfRange { dimension, symbols } => {
                format!("dimension {dimension} outside 1..={symbols}")
            }
            Witness::EmptyVertex { vertex } => format!("vertex {vertex} is empty"),
            Witness::WrongSetSize { vertex, set: s, expected } => format!(
                "vertex {vertex}: set {} has size {}, expected {expected}",
                set(s),
                s.len()
            ),
            Witness::SymbolOutOfRange { vertex, set: s, symbol } => {
                format!("vertex {vertex}: set {s} uses unknown symbol {symbol}")
            }
            Witness::DuplicateSet { set: s, vertices } => {
                format!("set {} occurs in vertices {vertices:?}", set(s))
            }
            Witness::EdgeOutOfRange { edge, endpoint } => {
                format!("edge {edge}: endpoint {endpoint} out of range")
            }
            Witness::SelfLoop { edge, vertex } => format!("edge {edge}: self-loop at {vertex}"),
            Witness::ParallelEdge { first, second } => {
                format!("edges {first} and {second} are parallel")
            }
            Witness::Disconnected { components } => {
                format!("graph has {} components: {components:?}", components.len())
            }
            Witness::NonAdjacentPair { sets, vertices } => format!(
                "sets {} (vertex {}) and {} (vertex {}) share d-1 symbols but are not adjacent",
                set(&sets.0),
                vertices.0,
                set(&sets.1),
                vertices.1
            ),
            Witness::UnwitnessedEdge { edge, vertices } => format!(
                "edge {edge} ({}-{}) has no pair of sets sharing d-1 symbols",
                vertices.0, vertices.1
            ),
            Witness::EndPointOverflow { subfacet, sets } => format!(
                "F = {} lies in {} sets: {}",
                set(subfacet),
                sets.len(),
                sets.iter().map(set).collect::<Vec<_>>().join(" ")
            ),
            Witness::NonSingleton { vertex, size } => format!("vertex {vertex} holds {size} sets"),
            Witness::DisconnectedRestriction { facet, components } => format!(
                "restriction to F = {} has {components} components",
                set(facet)
            ),
            Witness::Unlocalized { sets, vertices } => format!(
                "sets {} (vertex {}) and {} (vertex {}) share rd-1 symbols across non-incident edges",
                set(&sets.0),
                vertices.0,
                set(&sets.1),
                vertices.1
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyReport {
    pub property: Property,
    pub witnesses: Vec<Witness>,
}

impl PropertyReport {
    pub fn new(property: Property, mut witnesses: Vec<Witness>) -> Self {
        witnesses.sort();
        witnesses.dedup();
        Self {
            property,
            witnesses,
        }
    }

    pub fn holds(&self) -> bool {
        self.witnesses.is_empty()
    }
}

impl fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.holds() {
            write!(f, "{} holds", self.property)
        } else {
            write!(f, "{} fails ({} witnesses)", self.property, self.witnesses.len())
        }
    }
}

/// Structural checks: symbol/dimension ranges, set sizes, partition, simple
/// graph, and connectivity (skipped for restrictions).
pub fn validate(spg: &Spg) -> PropertyReport {
    let n = spg.symbols().len();
    let d = spg.dimension();
    let mut w = Vec::new();
    if !spg.is_restriction() {
        if n == 0 {
            w.push(Witness::NoSymbols);
        }
        if d < 1 || d > n {
            w.push(Witness::DimensionOutOfRange { dimension: d, symbols: n });
        }
    } else if d > n {
        w.push(Witness::DimensionOutOfRange { dimension: d, symbols: n });
    }
    for (v, sets) in spg.vertices().iter().enumerate() {
        if sets.is_empty() {
            w.push(Witness::EmptyVertex { vertex: v });
        }
        for s in sets {
            if s.len() != d {
                w.push(Witness::WrongSetSize { vertex: v, set: s.clone(), expected: d });
            }
            if let Some(x) = s.max_element().filter(|&x| x as usize >= n) {
                w.push(Witness::SymbolOutOfRange { vertex: v, set: s.clone(), symbol: x });
            }
        }
    }
    w.extend(check_partition(spg).witnesses);
    let m = spg.vertex_count();
    let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
    for (e, &(a, b)) in spg.edges().iter().enumerate() {
        for x in [a, b] {
            if x >= m {
                w.push(Witness::EdgeOutOfRange { edge: e, endpoint: x });
            }
        }
        if a == b {
            w.push(Witness::SelfLoop { edge: e, vertex: a });
        }
        if let Some(&first) = seen.get(&(a, b)) {
            w.push(Witness::ParallelEdge { first, second: e });
        } else {
            seen.insert((a, b), e);
        }
    }
    if !spg.is_restriction() {
        w.extend(check_connectivity(spg).witnesses);
    }
    PropertyReport::new(Property::Validity, w)
}

/// Every set occurs exactly once across all vertices.
pub fn check_partition(spg: &Spg) -> PropertyReport {
    let mut holders: HashMap<&FacetSet, Vec<usize>> = HashMap::new();
    for (v, s) in spg.family() {
        holders.entry(s).or_default().push(v);
    }
    let w = holders
        .into_iter()
        .filter(|(_, vs)| vs.len() > 1)
        .map(|(s, vertices)| Witness::DuplicateSet { set: s.clone(), vertices })
        .collect();
    PropertyReport::new(Property::Partition, w)
}

pub fn check_connectivity(spg: &Spg) -> PropertyReport {
    let components = spg.components();
    let w = if components.len() > 1 {
        vec![Witness::Disconnected { components }]
    } else {
        Vec::new()
    };
    PropertyReport::new(Property::Connectivity, w)
}

fn edge_lookup(spg: &Spg) -> HashSet<(usize, usize)> {
    spg.edges().iter().copied().collect()
}

fn adjacency_witnesses(spg: &Spg) -> Vec<Witness> {
    let (owners, sets): (Vec<usize>, Vec<FacetSet>) =
        spg.family().map(|(v, s)| (v, s.clone())).unzip();
    let edges = edge_lookup(spg);
    let mut w = Vec::new();
    for (_, ids) in near::shared_subfacets(&sets) {
        for (k, &i) in ids.iter().enumerate() {
            for &j in &ids[k + 1..] {
                let (vi, vj) = (owners[i], owners[j]);
                if vi != vj && !edges.contains(&(vi.min(vj), vi.max(vj))) {
                    let (a, b) = if (vi, &sets[i]) <= (vj, &sets[j]) { (i, j) } else { (j, i) };
                    w.push(Witness::NonAdjacentPair {
                        sets: (sets[a].clone(), sets[b].clone()),
                        vertices: (owners[a], owners[b]),
                    });
                }
            }
        }
    }
    w
}

/// Any two sets sharing `d - 1` symbols lie in the same or adjacent vertices.
pub fn check_adjacency(spg: &Spg) -> Result<PropertyReport> {
    spg.ensure_valid()?;
    Ok(PropertyReport::new(Property::Adjacency, adjacency_witnesses(spg)))
}

/// Adjacency, plus every edge joins two vertices holding sets that share
/// `d - 1` symbols.
pub fn check_strong_adjacency(spg: &Spg) -> Result<PropertyReport> {
    spg.ensure_valid()?;
    let d = spg.dimension();
    let mut w = adjacency_witnesses(spg);
    let verts = spg.vertices();
    for (e, &(u, v)) in spg.edges().iter().enumerate() {
        let witnessed = verts[u]
            .iter()
            .any(|a| verts[v].iter().any(|b| a.intersection_len(b) + 1 == d));
        if !witnessed {
            w.push(Witness::UnwitnessedEdge { edge: e, vertices: (u, v) });
        }
    }
    Ok(PropertyReport::new(Property::StrongAdjacency, w))
}

/// Every `(d-1)`-subset of symbols lies in at most two sets. Counts over each
/// set's own `(d-1)`-subsets rather than all of `C(S, d-1)`.
pub fn check_endpoint_count(spg: &Spg) -> Result<PropertyReport> {
    spg.ensure_valid()?;
    let sets: Vec<FacetSet> = spg.family().map(|(_, s)| s.clone()).collect();
    let w = near::shared_subfacets(&sets)
        .into_iter()
        .filter(|(_, ids)| ids.len() > 2)
        .map(|(subfacet, ids)| {
            let mut members: Vec<FacetSet> = ids.into_iter().map(|i| sets[i].clone()).collect();
            members.sort();
            Witness::EndPointOverflow { subfacet, sets: members }
        })
        .collect();
    Ok(PropertyReport::new(Property::EndPointCount, w))
}

pub fn check_singleton(spg: &Spg) -> Result<PropertyReport> {
    spg.ensure_valid()?;
    let w = spg
        .vertices()
        .iter()
        .enumerate()
        .filter(|(_, sets)| sets.len() != 1)
        .map(|(vertex, sets)| Witness::NonSingleton { vertex, size: sets.len() })
        .collect();
    Ok(PropertyReport::new(Property::Singleton, w))
}

/// The restriction `G|_F`: sets containing `F`, with `F` removed, grouped by
/// their original vertices; edges kept where both ends survive. Returns
/// `None` when no set contains `F`. The result is flagged as a restriction
/// and may be disconnected.
pub fn restrict(spg: &Spg, facet: &FacetSet) -> Result<Option<Spg>> {
    spg.ensure_valid()?;
    if facet.len() > spg.dimension() {
        return Err(SpgError::FacetTooLarge {
            facet: facet.len(),
            dimension: spg.dimension(),
        });
    }
    if let Some(x) = facet.max_element().filter(|&x| x as usize >= spg.symbols().len()) {
        return Err(SpgError::InvalidArgument(format!("facet symbol {x} out of range")));
    }
    let (symbols, remap) = spg.symbols().without(facet);
    let mut new_index = vec![None; spg.vertex_count()];
    let mut vertices = Vec::new();
    for (v, sets) in spg.vertices().iter().enumerate() {
        let kept: Vec<FacetSet> = sets
            .iter()
            .filter(|a| facet.is_subset(a))
            .map(|a| {
                FacetSet::from_sorted(
                    a.iter()
                        .filter_map(|x| remap[x as usize])
                        .collect(),
                )
            })
            .collect();
        if !kept.is_empty() {
            new_index[v] = Some(vertices.len());
            vertices.push(kept);
        }
    }
    if vertices.is_empty() {
        return Ok(None);
    }
    let edges = spg
        .edges()
        .iter()
        .filter_map(|&(u, v)| Some((new_index[u]?, new_index[v]?)))
        .collect();
    let dimension = spg.dimension() - facet.len();
    Ok(Some(
        Spg::from_parts(symbols, dimension, vertices, edges).into_restriction(),
    ))
}

/// Every restriction by at most `d` symbols is connected or empty.
///
/// Only faces contained in some set are enumerated; all others restrict to
/// the empty graph. Refuses with [`SpgError::BudgetExceeded`] when the number
/// of candidate faces (`|family| · 2^d`) exceeds `budget`.
pub fn check_dimension_reduction(spg: &Spg, budget: u64) -> Result<PropertyReport> {
    spg.ensure_valid()?;
    let d = spg.dimension();
    let needed = if d >= 100 {
        u128::MAX
    } else {
        (spg.set_count() as u128).saturating_mul(1u128 << d)
    };
    if needed > budget as u128 {
        return Err(SpgError::BudgetExceeded { needed, budget });
    }

    let mut faces: HashMap<FacetSet, Vec<usize>> = HashMap::new();
    for (v, a) in spg.family() {
        for f in a.subsets() {
            faces.entry(f).or_default().push(v);
        }
    }

    let adj = spg.adjacency();
    let mut stamp = vec![0u32; adj.len()];
    let mut seen = vec![0u32; adj.len()];
    let mut w = Vec::new();
    for (gen, (facet, mut members)) in faces.into_iter().enumerate() {
        let gen = gen as u32 + 1;
        members.sort_unstable();
        members.dedup();
        for &v in &members {
            stamp[v] = gen;
        }
        let components = count_components(&adj, &members, &stamp, &mut seen, gen);
        if components > 1 {
            w.push(Witness::DisconnectedRestriction { facet, components });
        }
    }
    Ok(PropertyReport::new(Property::DimensionReduction, w))
}

// Components of the subgraph induced by `members` (those with stamp == gen).
fn count_components(
    adj: &[Vec<usize>],
    members: &[usize],
    stamp: &[u32],
    seen: &mut [u32],
    gen: u32,
) -> usize {
    let mut components = 0;
    let mut stack = Vec::new();
    for &s in members {
        if seen[s] == gen {
            continue;
        }
        components += 1;
        seen[s] = gen;
        stack.push(s);
        while let Some(u) = stack.pop() {
            for &x in &adj[u] {
                if stamp[x] == gen && seen[x] != gen {
                    seen[x] = gen;
                    stack.push(x);
                }
            }
        }
    }
    components
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbols::SymbolTable;

    fn fs(v: &[u32]) -> FacetSet {
        FacetSet::new(v.iter().copied()).unwrap()
    }

    // a=0, b=1, c=2, d=3
    fn singletons(sets: &[&[u32]], edges: &[(usize, usize)]) -> Spg {
        Spg::from_parts(
            SymbolTable::alphabetic(5),
            sets[0].len(),
            sets.iter().map(|s| vec![fs(s)]).collect(),
            edges.to_vec(),
        )
    }

    fn good_path() -> Spg {
        singletons(&[&[0, 1], &[1, 2], &[2, 3]], &[(0, 1), (1, 2)])
    }

    fn bad_path() -> Spg {
        singletons(&[&[0, 1], &[2, 3], &[1, 2]], &[(0, 1), (1, 2)])
    }

    #[test]
    fn validate_examples() {
        assert!(validate(&singletons(&[&[0, 1]], &[])).holds());

        let dup = Spg::from_parts(
            SymbolTable::alphabetic(4),
            2,
            vec![vec![fs(&[0, 1])], vec![fs(&[0, 1])]],
            vec![(0, 1)],
        );
        let r = validate(&dup);
        assert!(!r.holds());
        assert!(matches!(&r.witnesses[..], [Witness::DuplicateSet { vertices, .. }] if vertices == &[0, 1]));

        let r = validate(&singletons(&[&[0, 1], &[2, 3]], &[]));
        assert!(matches!(&r.witnesses[..], [Witness::Disconnected { components }] if components.len() == 2));
    }

    #[test]
    fn validate_structural_violations() {
        let g = Spg::from_parts(
            SymbolTable::alphabetic(3),
            2,
            vec![vec![fs(&[0, 1])], vec![], vec![fs(&[0, 1, 2])], vec![fs(&[0, 7])]],
            vec![(0, 0), (0, 1), (1, 0), (2, 3), (1, 2), (0, 9)],
        );
        let r = validate(&g);
        let has = |f: &dyn Fn(&Witness) -> bool| r.witnesses.iter().any(f);
        assert!(has(&|w| matches!(w, Witness::EmptyVertex { vertex: 1 })));
        assert!(has(&|w| matches!(w, Witness::WrongSetSize { vertex: 2, .. })));
        assert!(has(&|w| matches!(w, Witness::SymbolOutOfRange { vertex: 3, symbol: 7, .. })));
        assert!(has(&|w| matches!(w, Witness::SelfLoop { edge: 0, vertex: 0 })));
        assert!(has(&|w| matches!(w, Witness::ParallelEdge { first: 1, second: 2 })));
        assert!(has(&|w| matches!(w, Witness::EdgeOutOfRange { edge: 5, endpoint: 9 })));
    }

    #[test]
    fn degenerate_full_dimension() {
        let g = Spg::from_parts(SymbolTable::alphabetic(2), 2, vec![vec![fs(&[0, 1])]], vec![]);
        assert!(validate(&g).holds());
        let g = Spg::from_parts(SymbolTable::alphabetic(2), 3, vec![vec![fs(&[0, 1])]], vec![]);
        assert!(!validate(&g).holds());
    }

    #[test]
    fn adjacency_examples() {
        assert!(check_adjacency(&good_path()).unwrap().holds());
        let r = check_adjacency(&bad_path()).unwrap();
        assert_eq!(
            r.witnesses,
            vec![Witness::NonAdjacentPair {
                sets: (fs(&[0, 1]), fs(&[1, 2])),
                vertices: (0, 2)
            }]
        );
    }

    #[test]
    fn verifiers_reject_invalid_input() {
        let g = singletons(&[&[0, 1], &[2, 3]], &[]);
        assert!(matches!(check_adjacency(&g), Err(SpgError::Invalid(_))));
        assert!(matches!(check_endpoint_count(&g), Err(SpgError::Invalid(_))));
        assert!(matches!(check_singleton(&g), Err(SpgError::Invalid(_))));
        assert!(matches!(restrict(&g, &FacetSet::empty()), Err(SpgError::Invalid(_))));
    }

    #[test]
    fn strong_adjacency_examples() {
        let g = singletons(&[&[0, 1], &[1, 2]], &[(0, 1)]);
        assert!(check_strong_adjacency(&g).unwrap().holds());
        let g = singletons(&[&[0, 1], &[2, 3]], &[(0, 1)]);
        let r = check_strong_adjacency(&g).unwrap();
        assert_eq!(r.witnesses, vec![Witness::UnwitnessedEdge { edge: 0, vertices: (0, 1) }]);
    }

    #[test]
    fn endpoint_count_examples() {
        let g = good_path();
        assert!(check_endpoint_count(&g).unwrap().holds());
        let g = singletons(&[&[0, 1], &[1, 2], &[1, 3]], &[(0, 1), (1, 2)]);
        let r = check_endpoint_count(&g).unwrap();
        assert_eq!(
            r.witnesses,
            vec![Witness::EndPointOverflow {
                subfacet: fs(&[1]),
                sets: vec![fs(&[0, 1]), fs(&[1, 2]), fs(&[1, 3])]
            }]
        );
    }

    #[test]
    fn singleton_examples() {
        assert!(check_singleton(&good_path()).unwrap().holds());
        let g = Spg::from_parts(
            SymbolTable::alphabetic(4),
            2,
            vec![vec![fs(&[0, 1]), fs(&[1, 2])]],
            vec![],
        );
        let r = check_singleton(&g).unwrap();
        assert_eq!(r.witnesses, vec![Witness::NonSingleton { vertex: 0, size: 2 }]);
    }

    #[test]
    fn restrict_examples() {
        let g = good_path();
        let same = restrict(&g, &FacetSet::empty()).unwrap().unwrap();
        assert!(same.is_restriction());
        assert_eq!(same.vertices(), g.vertices());
        assert_eq!(same.edges(), g.edges());

        // F = {b}: {a} and {c}, joined by the inherited edge
        let r = restrict(&g, &fs(&[1])).unwrap().unwrap();
        assert_eq!(r.dimension(), 1);
        assert_eq!(r.symbols().labels(), ["a", "c", "d", "e"]);
        assert_eq!(r.vertices(), &[vec![fs(&[0])], vec![fs(&[1])]]);
        assert_eq!(r.edges(), &[(0, 1)]);
        assert!(r.is_connected());

        let r = restrict(&bad_path(), &fs(&[1])).unwrap().unwrap();
        assert_eq!(r.vertex_count(), 2);
        assert!(r.edges().is_empty());
        assert!(!r.is_connected());
        assert!(validate(&r).holds());

        assert!(restrict(&g, &fs(&[4])).unwrap().is_none());
        assert!(matches!(
            restrict(&g, &fs(&[0, 1, 2])),
            Err(SpgError::FacetTooLarge { facet: 3, dimension: 2 })
        ));
    }

    #[test]
    fn dimension_reduction_examples() {
        let single = singletons(&[&[0, 1]], &[]);
        assert!(check_dimension_reduction(&single, DEFAULT_RESTRICTION_BUDGET).unwrap().holds());
        assert!(check_dimension_reduction(&good_path(), DEFAULT_RESTRICTION_BUDGET).unwrap().holds());
        let r = check_dimension_reduction(&bad_path(), DEFAULT_RESTRICTION_BUDGET).unwrap();
        assert_eq!(
            r.witnesses,
            vec![Witness::DisconnectedRestriction { facet: fs(&[1]), components: 2 }]
        );
        assert!(matches!(
            check_dimension_reduction(&good_path(), 11),
            Err(SpgError::BudgetExceeded { needed: 12, budget: 11 })
        ));
    }
}
