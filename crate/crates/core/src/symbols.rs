use std::collections::HashMap;

use crate::error::{Result, SpgError};
use crate::facet::FacetSet;

/// Named symbols with a stable integer encoding.
///
/// Symbol `i` is stored as index `i`; labels only matter at the I/O boundary.
/// A table lifted by `r` rows lays symbols out row-major: base symbol `x` in
/// row `j` (0-based) is index `j * n + x` and is labelled `"x@(j+1)"`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolTable {
    names: Vec<String>,
    lookup: HashMap<String, u32>,
}

impl SymbolTable {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let table = Self::build(labels.into_iter().map(Into::into).collect())?;
        if table.is_empty() {
            return Err(SpgError::EmptySymbolTable);
        }
        Ok(table)
    }

    // Restrictions may remove every symbol, so the empty table is allowed here.
    fn build(names: Vec<String>) -> Result<Self> {
        let mut lookup = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if lookup.insert(name.clone(), i as u32).is_some() {
                return Err(SpgError::DuplicateSymbol(name.clone()));
            }
        }
        Ok(Self { names, lookup })
    }

    /// `a, b, ..., z` for up to 26 symbols, `s0, s1, ...` beyond that.
    pub fn alphabetic(n: usize) -> Self {
        let names = (0..n)
            .map(|i| {
                if n <= 26 {
                    ((b'a' + i as u8) as char).to_string()
                } else {
                    format!("s{i}")
                }
            })
            .collect();
        Self::build(names).expect("generated labels are distinct")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn label(&self, index: u32) -> &str {
        &self.names[index as usize]
    }

    pub fn labels(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, label: &str) -> Result<u32> {
        self.lookup
            .get(label)
            .copied()
            .ok_or_else(|| SpgError::UnknownSymbol(label.to_string()))
    }

    /// Parses a comma-separated list of labels into a facet set.
    pub fn parse_facet(&self, list: &str) -> Result<FacetSet> {
        let indices = list
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| self.index_of(s))
            .collect::<Result<Vec<_>>>()?;
        FacetSet::new(indices)
    }

    pub fn format_facet(&self, set: &FacetSet) -> String {
        let labels: Vec<&str> = set.iter().map(|i| self.label(i)).collect();
        format!("{{{}}}", labels.join(","))
    }

    /// The table for `S × [r]`.
    pub fn lifted(&self, r: usize) -> Self {
        let names = (1..=r)
            .flat_map(|row| self.names.iter().map(move |name| format!("{name}@{row}")))
            .collect();
        Self::build(names).expect("lifted labels are distinct")
    }

    /// The table for `S ∖ removed`, plus the old-to-new index map
    /// (`None` for removed symbols).
    pub fn without(&self, removed: &FacetSet) -> (Self, Vec<Option<u32>>) {
        let mut names = Vec::with_capacity(self.len().saturating_sub(removed.len()));
        let mut remap = Vec::with_capacity(self.len());
        for (i, name) in self.names.iter().enumerate() {
            if removed.contains(i as u32) {
                remap.push(None);
            } else {
                remap.push(Some(names.len() as u32));
                names.push(name.clone());
            }
        }
        let table = Self::build(names).expect("subset of distinct labels");
        (table, remap)
    }

    pub(crate) fn new_allow_empty(names: Vec<String>) -> Result<Self> {
        Self::build(names)
    }
}
