//! C ABI over the `spg` library.
//!
//! Graphs and transform results are opaque handles owned by the caller and
//! released with the matching `*_free` function. Every fallible call returns
//! an [`SpgStatus`]; on failure the message is available from
//! [`spg_last_error`] on the same thread until the next failing call.
//! Strings returned through out-parameters are released with
//! [`spg_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use spg::io::{self, SpgDocument};
use spg::spindle;
use spg::transform::{self, Strategy, TransformConfig, TransformResult};
use spg::verify;
use spg::{DocumentError, Spg, SpgError, TransformError};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidArgument = 4,
    InvalidGraph = 5,
    BudgetExceeded = 6,
    BudgetExhausted = 7,
    VerificationFailed = 8,
    Unreachable = 9,
    Panic = 10,
}

/// Property selector for [`spg_graph_check`].
#[repr(u32)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpgProperty {
    Validity = 0,
    Partition = 1,
    Connectivity = 2,
    Adjacency = 3,
    StrongAdjacency = 4,
    EndPointCount = 5,
    Singleton = 6,
    DimensionReduction = 7,
}

/// Strategy selector for [`spg_transform`].
#[repr(u32)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpgStrategy {
    Resample = 0,
    Reject = 1,
}

/// An SPG together with its document form (annotations included).
pub struct SpgGraph {
    doc: SpgDocument,
    spg: Spg,
}

/// The outcome of a successful transform.
pub struct SpgTransform {
    result: TransformResult,
    apices: Option<[spg::FacetSet; 2]>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(SpgStatus, String);

impl From<SpgError> for Failure {
    fn from(e: SpgError) -> Self {
        let status = match e {
            SpgError::BudgetExceeded { .. } => SpgStatus::BudgetExceeded,
            SpgError::Invalid(_) => SpgStatus::InvalidGraph,
            SpgError::Unreachable(..) => SpgStatus::Unreachable,
            _ => SpgStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

impl From<TransformError> for Failure {
    fn from(e: TransformError) -> Self {
        let status = match e {
            TransformError::Spg(inner) => return inner.into(),
            TransformError::BudgetExhausted { .. } => SpgStatus::BudgetExhausted,
            TransformError::Verification(_) => SpgStatus::VerificationFailed,
            TransformError::NotSingleton => SpgStatus::InvalidGraph,
            _ => SpgStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

impl From<DocumentError> for Failure {
    fn from(e: DocumentError) -> Self {
        let status = match e {
            DocumentError::Invariant(_) => SpgStatus::InvalidGraph,
            _ => SpgStatus::ParseError,
        };
        Failure(status, e.to_string())
    }
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn run(f: impl FnOnce() -> Result<(), Failure>) -> SpgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SpgStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            SpgStatus::Panic
        }
    }
}

fn null() -> Failure {
    Failure(SpgStatus::NullPointer, "null pointer argument".into())
}

unsafe fn as_ref<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(null)
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    out.write(value);
    Ok(())
}

fn into_c_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Failure(SpgStatus::InvalidArgument, "string contains NUL".into()))
}

fn graph_handle(doc: SpgDocument, spg: Spg) -> *mut SpgGraph {
    Box::into_raw(Box::new(SpgGraph { doc, spg }))
}

/// Message of the last failure on this thread, or NULL. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn spg_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn spg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a JSON document.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn spg_graph_parse(json: *const c_char, out: *mut *mut SpgGraph) -> SpgStatus {
    run(|| {
        if json.is_null() {
            return Err(null());
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|e| Failure(SpgStatus::InvalidUtf8, e.to_string()))?;
        let doc = io::parse(text)?;
        let spg = doc.to_spg()?;
        write(out, graph_handle(doc, spg))
    })
}

/// Serializes to the canonical JSON layout.
///
/// # Safety
/// `graph` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn spg_graph_to_json(graph: *const SpgGraph, out: *mut *mut c_char) -> SpgStatus {
    run(|| {
        let g = as_ref(graph)?;
        write(out, into_c_string(io::serialize(&g.doc))?)
    })
}

/// # Safety
/// `graph` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn spg_graph_free(graph: *mut SpgGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// The spindle template on `[d] x {1,2}`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn spg_spindle_template(d: usize, out: *mut *mut SpgGraph) -> SpgStatus {
    run(|| {
        let t = spindle::build_spindle_template(d)?;
        let doc = SpgDocument::from_spindle(&t.spindle);
        write(out, graph_handle(doc, t.spindle.into_spg()))
    })
}

/// # Safety
/// `graph` must be NULL or a live handle. Returns 0 for NULL.
#[no_mangle]
pub unsafe extern "C" fn spg_graph_vertex_count(graph: *const SpgGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.spg.vertex_count())
}

/// # Safety
/// `graph` must be NULL or a live handle. Returns 0 for NULL.
#[no_mangle]
pub unsafe extern "C" fn spg_graph_edge_count(graph: *const SpgGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.spg.edges().len())
}

/// # Safety
/// `graph` must be NULL or a live handle. Returns 0 for NULL.
#[no_mangle]
pub unsafe extern "C" fn spg_graph_dimension(graph: *const SpgGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.spg.dimension())
}

/// # Safety
/// `graph` must be NULL or a live handle. Returns 0 for NULL.
#[no_mangle]
pub unsafe extern "C" fn spg_graph_symbol_count(graph: *const SpgGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.spg.symbols().len())
}

/// # Safety
/// `graph` must be NULL or a live handle. Returns 0 for NULL.
#[no_mangle]
pub unsafe extern "C" fn spg_graph_max_degree(graph: *const SpgGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.spg.max_degree())
}

/// Shortest-path distance between two vertices.
///
/// # Safety
/// `graph` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn spg_graph_distance(
    graph: *const SpgGraph,
    from: usize,
    to: usize,
    out: *mut usize,
) -> SpgStatus {
    run(|| {
        let g = as_ref(graph)?;
        write(out, g.spg.graph_distance(from, to)?)
    })
}

/// Distance between the annotated apices.
///
/// # Safety
/// `graph` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn spg_graph_spindle_length(graph: *const SpgGraph, out: *mut usize) -> SpgStatus {
    run(|| {
        let g = as_ref(graph)?;
        match g.doc.to_spindle()? {
            Some(s) => write(out, s.length()),
            None => Err(Failure(SpgStatus::InvalidArgument, "graph has no apices".into())),
        }
    })
}

/// Checks one property. `*holds` is set to 1 or 0 and, when non-NULL,
/// `*witnesses` to the number of violations found. `budget` applies to
/// dimension reduction only; 0 selects the default.
///
/// # Safety
/// `graph` must be a live handle; `holds` must be writable; `witnesses`
/// must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn spg_graph_check(
    graph: *const SpgGraph,
    property: u32,
    budget: u64,
    holds: *mut u8,
    witnesses: *mut usize,
) -> SpgStatus {
    run(|| {
        let g = &as_ref(graph)?.spg;
        let report = match property {
            p if p == SpgProperty::Validity as u32 => verify::validate(g),
            p if p == SpgProperty::Partition as u32 => verify::check_partition(g),
            p if p == SpgProperty::Connectivity as u32 => verify::check_connectivity(g),
            p if p == SpgProperty::Adjacency as u32 => verify::check_adjacency(g)?,
            p if p == SpgProperty::StrongAdjacency as u32 => verify::check_strong_adjacency(g)?,
            p if p == SpgProperty::EndPointCount as u32 => verify::check_endpoint_count(g)?,
            p if p == SpgProperty::Singleton as u32 => verify::check_singleton(g)?,
            p if p == SpgProperty::DimensionReduction as u32 => {
                let budget = if budget == 0 { verify::DEFAULT_RESTRICTION_BUDGET } else { budget };
                verify::check_dimension_reduction(g, budget)?
            }
            other => {
                return Err(Failure(SpgStatus::InvalidArgument, format!("unknown property {other}")))
            }
        };
        write(holds, u8::from(report.holds()))?;
        if !witnesses.is_null() {
            witnesses.write(report.witnesses.len());
        }
        Ok(())
    })
}

/// Smallest multiplier `r` for which the construction is guaranteed at
/// maximum degree `delta`.
#[no_mangle]
pub extern "C" fn spg_min_multiplier(delta: usize) -> usize {
    transform::min_multiplier(delta)
}

fn config(r: usize, seed: u64, max_rounds: usize, strategy: u32) -> Result<TransformConfig, Failure> {
    let strategy = match strategy {
        s if s == SpgStrategy::Resample as u32 => Strategy::Resample,
        s if s == SpgStrategy::Reject as u32 => Strategy::Reject,
        other => return Err(Failure(SpgStatus::InvalidArgument, format!("unknown strategy {other}"))),
    };
    Ok(TransformConfig { r, seed, max_rounds, strategy })
}

/// Runs the strong-adjacency transform on a singleton graph.
///
/// # Safety
/// `graph` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn spg_transform(
    graph: *const SpgGraph,
    r: usize,
    seed: u64,
    max_rounds: usize,
    strategy: u32,
    out: *mut *mut SpgTransform,
) -> SpgStatus {
    run(|| {
        let g = as_ref(graph)?;
        let config = config(r, seed, max_rounds, strategy)?;
        let result = transform::construct_with_resampling(&g.spg, &config)?;
        write(out, Box::into_raw(Box::new(SpgTransform { result, apices: None })))
    })
}

/// Transforms the spindle template of dimension `d`; the result keeps the
/// lifted apices.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn spg_exponential_spindle(
    d: usize,
    r: usize,
    seed: u64,
    max_rounds: usize,
    strategy: u32,
    out: *mut *mut SpgTransform,
) -> SpgStatus {
    run(|| {
        let config = config(r, seed, max_rounds, strategy)?;
        let (result, spindle) = spindle::build_exponential_spindle(d, &config)?;
        let (a1, a2) = spindle.apices();
        let apices = Some([a1.clone(), a2.clone()]);
        write(out, Box::into_raw(Box::new(SpgTransform { result, apices })))
    })
}

/// A new graph handle holding the transformed graph and its annotations.
///
/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn spg_transform_graph(t: *const SpgTransform, out: *mut *mut SpgGraph) -> SpgStatus {
    run(|| {
        let t = as_ref(t)?;
        let doc = SpgDocument::from_transform(&t.result, t.apices.clone());
        write(out, graph_handle(doc, t.result.spg.clone()))
    })
}

/// # Safety
/// `t` must be NULL or a live handle. Returns 0 for NULL.
#[no_mangle]
pub unsafe extern "C" fn spg_transform_rounds_used(t: *const SpgTransform) -> usize {
    t.as_ref().map_or(0, |t| t.result.rounds_used)
}

/// # Safety
/// `t` must be NULL or a live handle. Returns 0 for NULL.
#[no_mangle]
pub unsafe extern "C" fn spg_transform_multiplier(t: *const SpgTransform) -> usize {
    t.as_ref().map_or(0, |t| t.result.r)
}

/// # Safety
/// `t` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn spg_transform_free(t: *mut SpgTransform) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}
