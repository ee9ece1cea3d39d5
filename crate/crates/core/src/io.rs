//! The versioned JSON document used for SPGs, spindles, restrictions and
//! transform results.
//!
//! ```text
//! {
//!   "format_version": 1,
//!   "dimension": 2,
//!   "symbols": ["a","b","c"],
//!   "flags": {"is_restriction":false},
//!   "vertices": [
//!     [[0,1]],
//!     [[1,2]]
//!   ],
//!   "edges": [[0,1]],
//!   "annotations": {"apices": ..., "vertex_map": ..., "edge_paths": ...}
//! }
//! ```
//!
//! Vertices list their sets as symbol indices. `annotations` and each of its
//! keys are optional. [`serialize`] output is canonical: sets sorted, fixed
//! key order, one vertex per line, trailing newline.

use serde::{Deserialize, Serialize};

use crate::error::DocumentError;
use crate::facet::FacetSet;
use crate::spg::{Spg, Spindle};
use crate::symbols::SymbolTable;
use crate::transform::TransformResult;
use crate::verify;

pub const FORMAT_VERSION: u64 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Flags {
    pub is_restriction: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Annotations {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub apices: Option<[FacetSet; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex_map: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge_paths: Option<Vec<Vec<usize>>>,
}

impl Annotations {
    pub fn is_empty(&self) -> bool {
        self.apices.is_none() && self.vertex_map.is_none() && self.edge_paths.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpgDocument {
    pub format_version: u64,
    pub dimension: usize,
    pub symbols: Vec<String>,
    pub flags: Flags,
    pub vertices: Vec<Vec<Vec<u32>>>,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Annotations::is_empty")]
    pub annotations: Annotations,
}

impl SpgDocument {
    pub fn from_spg(spg: &Spg) -> Self {
        Self {
            format_version: FORMAT_VERSION,
            dimension: spg.dimension(),
            symbols: spg.symbols().labels().to_vec(),
            flags: Flags {
                is_restriction: spg.is_restriction(),
            },
            vertices: spg
                .vertices()
                .iter()
                .map(|v| v.iter().map(|s| s.as_slice().to_vec()).collect())
                .collect(),
            edges: spg.edges().iter().map(|&(u, v)| [u, v]).collect(),
            annotations: Annotations::default(),
        }
    }

    pub fn from_spindle(spindle: &Spindle) -> Self {
        let mut doc = Self::from_spg(spindle.spg());
        let (a1, a2) = spindle.apices();
        doc.annotations.apices = Some([a1.clone(), a2.clone()]);
        doc
    }

    pub fn from_transform(result: &TransformResult, apices: Option<[FacetSet; 2]>) -> Self {
        let mut doc = Self::from_spg(&result.spg);
        doc.annotations = Annotations {
            apices,
            vertex_map: Some(result.vertex_map.clone()),
            edge_paths: Some(result.edge_paths.clone()),
        };
        doc
    }

    pub fn empty_restriction(symbols: &SymbolTable, dimension: usize) -> Self {
        Self {
            format_version: FORMAT_VERSION,
            dimension,
            symbols: symbols.labels().to_vec(),
            flags: Flags { is_restriction: true },
            vertices: Vec::new(),
            edges: Vec::new(),
            annotations: Annotations::default(),
        }
    }

    /// Builds the graph; fails on any invariant violation.
    pub fn to_spg(&self) -> Result<Spg, DocumentError> {
        let symbols = if self.flags.is_restriction {
            SymbolTable::new_allow_empty(self.symbols.clone())
        } else {
            SymbolTable::new(self.symbols.clone())
        }
        .map_err(|e| field("symbols", e))?;
        let mut vertices = Vec::with_capacity(self.vertices.len());
        for (i, v) in self.vertices.iter().enumerate() {
            let mut sets = Vec::with_capacity(v.len());
            for (j, s) in v.iter().enumerate() {
                sets.push(
                    FacetSet::new(s.iter().copied())
                        .map_err(|e| field(format!("vertices[{i}][{j}]"), e))?,
                );
            }
            vertices.push(sets);
        }
        let edges = self.edges.iter().map(|&[u, v]| (u, v)).collect();
        let mut spg = Spg::from_parts(symbols, self.dimension, vertices, edges);
        spg.set_restriction(self.flags.is_restriction);
        let report = verify::validate(&spg);
        if !report.holds() {
            return Err(DocumentError::Invariant(Box::new(report)));
        }
        Ok(spg)
    }

    /// The spindle, if apices are annotated.
    pub fn to_spindle(&self) -> Result<Option<Spindle>, DocumentError> {
        let Some([a1, a2]) = &self.annotations.apices else {
            return Ok(None);
        };
        Spindle::new(self.to_spg()?, a1.clone(), a2.clone())
            .map(Some)
            .map_err(|e| field("annotations.apices", e))
    }

    fn check_annotations(&self, spg: &Spg) -> Result<(), DocumentError> {
        let m = spg.vertex_count();
        if let Some(map) = &self.annotations.vertex_map {
            if let Some(i) = map.iter().position(|&v| v >= m) {
                return Err(field(format!("annotations.vertex_map[{i}]"), "vertex index out of range"));
            }
        }
        if let Some(paths) = &self.annotations.edge_paths {
            for (i, path) in paths.iter().enumerate() {
                if path.iter().any(|&v| v >= m) {
                    return Err(field(format!("annotations.edge_paths[{i}]"), "vertex index out of range"));
                }
            }
        }
        if self.annotations.apices.is_some() {
            self.to_spindle()?;
        }
        Ok(())
    }
}

fn field(name: impl Into<String>, message: impl ToString) -> DocumentError {
    DocumentError::Field {
        field: name.into(),
        message: message.to_string(),
    }
}

fn json<T: Serialize + ?Sized>(value: &T) -> String {
    serde_json::to_string(value).expect("document values serialize")
}

fn push_lines<T: Serialize>(out: &mut String, key: &str, items: &[T], indent: &str, last: bool) {
    out.push_str(&format!("{indent}\"{key}\": ["));
    if !items.is_empty() {
        out.push('\n');
        for (i, item) in items.iter().enumerate() {
            let sep = if i + 1 < items.len() { "," } else { "" };
            out.push_str(&format!("{indent}  {}{sep}\n", json(item)));
        }
        out.push_str(indent);
    }
    out.push(']');
    out.push_str(if last { "\n" } else { ",\n" });
}

/// Canonical text form.
pub fn serialize(doc: &SpgDocument) -> String {
    let mut out = String::from("{\n");
    out.push_str(&format!("  \"format_version\": {},\n", doc.format_version));
    out.push_str(&format!("  \"dimension\": {},\n", doc.dimension));
    out.push_str(&format!("  \"symbols\": {},\n", json(&doc.symbols)));
    out.push_str(&format!("  \"flags\": {},\n", json(&doc.flags)));
    let has_annotations = !doc.annotations.is_empty();
    push_lines(&mut out, "vertices", &doc.vertices, "  ", false);
    out.push_str(&format!(
        "  \"edges\": {}{}\n",
        json(&doc.edges),
        if has_annotations { "," } else { "" }
    ));
    if has_annotations {
        let a = &doc.annotations;
        let mut parts: Vec<String> = Vec::new();
        if let Some(apices) = &a.apices {
            parts.push(format!("    \"apices\": {}", json(apices)));
        }
        if let Some(map) = &a.vertex_map {
            parts.push(format!("    \"vertex_map\": {}", json(map)));
        }
        if let Some(paths) = &a.edge_paths {
            let mut s = String::new();
            push_lines(&mut s, "edge_paths", paths, "    ", true);
            parts.push(s.trim_end().to_string());
        }
        out.push_str("  \"annotations\": {\n");
        out.push_str(&parts.join(",\n"));
        out.push_str("\n  }\n");
    }
    out.push_str("}\n");
    out
}

/// Parses and validates a document, returning it in canonical form.
pub fn parse(text: &str) -> Result<SpgDocument, DocumentError> {
    let syntax = |e: serde_json::Error| DocumentError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    };
    let value: serde_json::Value = serde_json::from_str(text).map_err(syntax)?;
    match value.get("format_version").and_then(serde_json::Value::as_u64) {
        Some(FORMAT_VERSION) => {}
        Some(found) => {
            return Err(DocumentError::Version {
                found,
                expected: FORMAT_VERSION,
            })
        }
        None => return Err(field("format_version", "missing or not a natural number")),
    }
    let doc: SpgDocument = serde_json::from_str(text).map_err(syntax)?;
    let spg = doc.to_spg()?;
    doc.check_annotations(&spg)?;
    let mut canonical = SpgDocument::from_spg(&spg);
    canonical.annotations = doc.annotations;
    Ok(canonical)
}
