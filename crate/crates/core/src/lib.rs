//! Subset partition graphs: exhaustive property verifiers, the randomized
//! row-permutation transform that adds strong adjacency and the end-point
//! count property to any singleton SPG, and abstract spindle templates.

pub mod error;
pub mod experiments;
pub mod facet;
pub mod io;
mod near;
pub mod spg;
pub mod spindle;
pub mod symbols;
pub mod transform;
pub mod verify;

pub use error::{DocumentError, SpgError, TransformError};
pub use facet::FacetSet;
pub use spg::{Spg, Spindle};
pub use symbols::SymbolTable;
pub use transform::{TransformConfig, TransformResult};
pub use verify::{Property, PropertyReport, Witness};
