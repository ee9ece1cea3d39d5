use std::collections::VecDeque;

use crate::error::{Result, SpgError};
use crate::facet::FacetSet;
use crate::symbols::SymbolTable;
use crate::verify;

/// A subset partition graph: an undirected graph whose vertices partition a
/// family of `d`-subsets of a symbol set.
///
/// Sets inside a vertex are kept sorted and edges are stored as
/// `(lower, higher)` pairs in insertion order; the edge index is significant
/// for the transform, which keys its row permutations by it.
///
/// An `Spg` can hold invalid data (see [`Spg::from_parts`]) so that
/// [`verify::validate`] can report on it; [`Spg::new`] only returns valid ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spg {
    symbols: SymbolTable,
    dimension: usize,
    vertices: Vec<Vec<FacetSet>>,
    edges: Vec<(usize, usize)>,
    is_restriction: bool,
}

impl Spg {
    /// Builds and validates.
    pub fn new(
        symbols: SymbolTable,
        dimension: usize,
        vertices: Vec<Vec<FacetSet>>,
        edges: Vec<(usize, usize)>,
    ) -> Result<Self> {
        let spg = Self::from_parts(symbols, dimension, vertices, edges);
        spg.ensure_valid()?;
        Ok(spg)
    }

    /// Builds without validation.
    pub fn from_parts(
        symbols: SymbolTable,
        dimension: usize,
        mut vertices: Vec<Vec<FacetSet>>,
        edges: Vec<(usize, usize)>,
    ) -> Self {
        for v in &mut vertices {
            v.sort();
        }
        let edges = edges.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
        Self {
            symbols,
            dimension,
            vertices,
            edges,
            is_restriction: false,
        }
    }

    /// Singleton SPG from one set per vertex.
    pub fn singleton(
        symbols: SymbolTable,
        dimension: usize,
        sets: Vec<FacetSet>,
        edges: Vec<(usize, usize)>,
    ) -> Result<Self> {
        Self::new(
            symbols,
            dimension,
            sets.into_iter().map(|s| vec![s]).collect(),
            edges,
        )
    }

    pub(crate) fn into_restriction(mut self) -> Self {
        self.is_restriction = true;
        self
    }

    pub(crate) fn set_restriction(&mut self, flag: bool) {
        self.is_restriction = flag;
    }

    pub(crate) fn ensure_valid(&self) -> Result<()> {
        let report = verify::validate(self);
        if report.holds() {
            Ok(())
        } else {
            Err(SpgError::Invalid(Box::new(report)))
        }
    }

    pub fn symbols(&self) -> &SymbolTable {
        &self.symbols
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn vertices(&self) -> &[Vec<FacetSet>] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Restrictions are exempt from the connectivity requirement.
    pub fn is_restriction(&self) -> bool {
        self.is_restriction
    }

    /// Every set of the family with the vertex that holds it.
    pub fn family(&self) -> impl Iterator<Item = (usize, &FacetSet)> {
        self.vertices
            .iter()
            .enumerate()
            .flat_map(|(v, sets)| sets.iter().map(move |s| (v, s)))
    }

    pub fn set_count(&self) -> usize {
        self.vertices.iter().map(Vec::len).sum()
    }

    /// The single set of each vertex, if every vertex is a singleton.
    pub fn singleton_sets(&self) -> Option<Vec<&FacetSet>> {
        self.vertices
            .iter()
            .map(|v| (v.len() == 1).then(|| &v[0]))
            .collect()
    }

    /// Index of the vertex containing `set`.
    pub fn vertex_of(&self, set: &FacetSet) -> Option<usize> {
        self.vertices.iter().position(|v| v.binary_search(set).is_ok())
    }

    /// Adjacency lists. Out-of-range endpoints are skipped.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let m = self.vertices.len();
        let mut adj = vec![Vec::new(); m];
        for &(u, v) in &self.edges {
            if u < m && v < m {
                adj[u].push(v);
                if u != v {
                    adj[v].push(u);
                }
            }
        }
        adj
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency().iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Breadth-first distances from `source`; `None` where unreachable.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        bfs(&self.adjacency(), source)
    }

    pub fn graph_distance(&self, from: usize, to: usize) -> Result<usize> {
        let len = self.vertices.len();
        for index in [from, to] {
            if index >= len {
                return Err(SpgError::VertexOutOfRange { index, len });
            }
        }
        self.distances_from(from)[to].ok_or(SpgError::Unreachable(to, from))
    }

    /// Largest finite distance between two vertices. `None` if disconnected
    /// or empty.
    pub fn diameter(&self) -> Option<usize> {
        let adj = self.adjacency();
        let mut best = 0;
        for s in 0..adj.len() {
            for d in bfs(&adj, s) {
                best = best.max(d?);
            }
        }
        (!adj.is_empty()).then_some(best)
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let mut seen = vec![false; adj.len()];
        let mut out = Vec::new();
        for s in 0..adj.len() {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut i = 0;
            while i < comp.len() {
                for &w in &adj[comp[i]] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
                i += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }
}

pub(crate) fn bfs(adj: &[Vec<usize>], source: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; adj.len()];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].expect("queued vertices have a distance");
        for &w in &adj[u] {
            if dist[w].is_none() {
                dist[w] = Some(du + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// An SPG on `2d` symbols with two distinguished complementary sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spindle {
    spg: Spg,
    apex1: FacetSet,
    apex2: FacetSet,
}

impl Spindle {
    pub fn new(spg: Spg, apex1: FacetSet, apex2: FacetSet) -> Result<Self> {
        let n = spg.symbols().len();
        if n != 2 * spg.dimension() {
            return Err(SpgError::InvalidArgument(format!(
                "a spindle needs n = 2d symbols, got n = {n}, d = {}",
                spg.dimension()
            )));
        }
        if apex1.union(&apex2).len() != n {
            return Err(SpgError::InvalidArgument(
                "apices must cover the symbol set".into(),
            ));
        }
        for apex in [&apex1, &apex2] {
            if spg.vertex_of(apex).is_none() {
                return Err(SpgError::InvalidArgument(format!(
                    "apex {} is not in the family",
                    spg.symbols().format_facet(apex)
                )));
            }
        }
        Ok(Self { spg, apex1, apex2 })
    }

    pub fn spg(&self) -> &Spg {
        &self.spg
    }

    pub fn into_spg(self) -> Spg {
        self.spg
    }

    pub fn apices(&self) -> (&FacetSet, &FacetSet) {
        (&self.apex1, &self.apex2)
    }

    /// Graph distance between the vertices holding the two apices.
    pub fn length(&self) -> usize {
        let v1 = self.spg.vertex_of(&self.apex1).expect("apex checked on construction");
        let v2 = self.spg.vertex_of(&self.apex2).expect("apex checked on construction");
        self.spg
            .graph_distance(v1, v2)
            .expect("validated spindle graph is connected")
    }
}
