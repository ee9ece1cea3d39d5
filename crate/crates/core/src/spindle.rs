//! Template builders: the exponential-length abstract spindle, plus generic
//! path and star templates.

use crate::error::{Result, SpgError, TransformError};
use crate::facet::FacetSet;
use crate::spg::{Spg, Spindle};
use crate::symbols::SymbolTable;
use crate::transform::{self, TransformConfig, TransformResult};
use crate::verify;

/// Largest `d` built without an explicit override (`C(16, 8) = 12870` sets).
pub const DEFAULT_MAX_SPINDLE_DIM: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpindleTemplate {
    pub spindle: Spindle,
    /// The `d`-subsets in path order.
    pub order: Vec<FacetSet>,
}

/// Symbols of `[d] × {1, 2}`: `(i, c)` has index `(c - 1)·d + (i - 1)` and
/// label `"i.c"`.
pub fn spindle_symbols(d: usize) -> SymbolTable {
    SymbolTable::new(
        (1..=2).flat_map(|c| (1..=d).map(move |i| format!("{i}.{c}"))),
    )
    .expect("spindle labels are distinct")
}

/// All `k`-subsets of `0..n` in colexicographic order.
pub fn colex_subsets(n: usize, k: usize) -> Vec<FacetSet> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<u32> = (0..k as u32).collect();
    loop {
        out.push(FacetSet::from_sorted(cur.clone()));
        // advance the lowest position that can move up
        let mut i = 0;
        while i < k && cur[i] + 1 == if i + 1 < k { cur[i + 1] } else { n as u32 } {
            i += 1;
        }
        if i == k {
            return out;
        }
        cur[i] += 1;
        for (j, x) in cur.iter_mut().enumerate().take(i) {
            *x = j as u32;
        }
    }
}

/// Path over every `d`-subset of `[d] × {1, 2}`, from `[d] × {1}` to
/// `[d] × {2}`. Length `C(2d, d) - 1`.
pub fn build_spindle_template(d: usize) -> Result<SpindleTemplate> {
    build_spindle_template_capped(d, DEFAULT_MAX_SPINDLE_DIM)
}

pub fn build_spindle_template_capped(d: usize, max_dim: usize) -> Result<SpindleTemplate> {
    if d == 0 {
        return Err(SpgError::InvalidArgument("spindle dimension must be at least 1".into()));
    }
    if d > max_dim {
        return Err(SpgError::InvalidArgument(format!(
            "spindle dimension {d} exceeds the cap of {max_dim}"
        )));
    }
    // colex order already starts at {0..d} and ends at {d..2d}
    let order = colex_subsets(2 * d, d);
    let apex1 = FacetSet::from_sorted((0..d as u32).collect());
    let apex2 = FacetSet::from_sorted((d as u32..2 * d as u32).collect());
    debug_assert_eq!(order.first(), Some(&apex1));
    debug_assert_eq!(order.last(), Some(&apex2));
    let edges = (1..order.len()).map(|i| (i - 1, i)).collect();
    let spg = Spg::singleton(spindle_symbols(d), d, order.clone(), edges)?;
    let spindle = Spindle::new(spg, apex1, apex2)?;
    Ok(SpindleTemplate { spindle, order })
}

/// The spindle template pushed through the transform. Apices map to
/// `[d] × {1} × [r]` and `[d] × {2} × [r]`.
pub fn build_exponential_spindle(
    d: usize,
    config: &TransformConfig,
) -> std::result::Result<(TransformResult, Spindle), TransformError> {
    let template = build_spindle_template(d)?;
    let spg = template.spindle.spg();
    let result = transform::construct_with_resampling(spg, config)?;
    let n = spg.symbols().len();
    let (a1, a2) = template.spindle.apices();
    let spindle = Spindle::new(result.spg.clone(), a1.lift(n, config.r), a2.lift(n, config.r))?;
    for check in [verify::check_strong_adjacency, verify::check_endpoint_count] {
        let report = check(spindle.spg())?;
        if !report.holds() {
            return Err(TransformError::Verification(Box::new(report)));
        }
    }
    Ok((result, spindle))
}

fn check_family(sets: &[FacetSet]) -> Result<usize> {
    let d = sets
        .first()
        .ok_or_else(|| SpgError::InvalidArgument("template needs at least one set".into()))?
        .len();
    if let Some(s) = sets.iter().find(|s| s.len() != d) {
        return Err(SpgError::InvalidArgument(format!(
            "set {s} has size {}, expected {d}",
            s.len()
        )));
    }
    let mut sorted: Vec<&FacetSet> = sets.iter().collect();
    sorted.sort();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(SpgError::InvalidArgument(format!("duplicate set {}", w[0])));
    }
    Ok(d)
}

fn symbols_for(sets: &[FacetSet]) -> SymbolTable {
    let n = sets.iter().filter_map(FacetSet::max_element).max().map_or(1, |x| x as usize + 1);
    SymbolTable::alphabetic(n)
}

/// Singleton path through `sets` in order, over the symbols `0..=max`.
pub fn build_path_template(sets: Vec<FacetSet>) -> Result<Spg> {
    let d = check_family(&sets)?;
    let symbols = symbols_for(&sets);
    let edges = (1..sets.len()).map(|i| (i - 1, i)).collect();
    Spg::singleton(symbols, d.max(1), sets, edges)
}

/// Singleton star with `center` as vertex 0 and leaves `1..=k`.
pub fn build_star_template(center: FacetSet, leaves: Vec<FacetSet>) -> Result<Spg> {
    let mut sets = vec![center];
    sets.extend(leaves);
    let d = check_family(&sets)?;
    let symbols = symbols_for(&sets);
    let edges = (1..sets.len()).map(|i| (0, i)).collect();
    Spg::singleton(symbols, d.max(1), sets, edges)
}

/// Path over the sliding windows `{i, ..., i + d - 1}` for `i = 0..=d`.
pub fn sliding_window_path(d: usize) -> Result<Spg> {
    build_path_template(
        (0..=d as u32)
            .map(|i| FacetSet::from_sorted((i..i + d as u32).collect()))
            .collect(),
    )
}
