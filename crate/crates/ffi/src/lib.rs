//! C ABI over `ksgraph`.
//!
//! Every fallible function returns a [`KsgStatus`] and writes its results
//! through out-pointers. On failure a message is available from
//! [`ksg_last_error_message`] on the same thread. Graphs are opaque handles
//! released with [`ksg_graph_free`]; strings returned through `char **`
//! out-pointers are released with [`ksg_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ksgraph::coloring::{chromatic_number, clique_number, SearchLimits};
use ksgraph::graph::format::parse_ograph;
use ksgraph::graph::{catalog_get, EnumerationLimits};
use ksgraph::polytope::{fractional_chromatic_number, sic_test, verify_certificate, Certificate};
use ksgraph::quantum::io::{projectors_from_json, state_from_json};
use ksgraph::quantum::{contextuality_measure_fixed, DensityMatrix, MeasureOptions};
use ksgraph::{Error, Graph};

/// Result codes. Stable across releases.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KsgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    NotFound = 3,
    ParseError = 4,
    ResourceLimit = 5,
    ValidationFailed = 6,
    NonConvergence = 7,
    IoError = 8,
    Panic = 9,
}

/// Opaque graph handle.
pub struct KsgGraph {
    graph: Graph,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> KsgStatus {
    match e {
        Error::InvalidVertex { .. } | Error::Shape(_) | Error::Domain(_) | Error::InvalidGraph(_) => {
            KsgStatus::InvalidArgument
        }
        Error::NotFound { .. } | Error::NoSeedRealization(_) => KsgStatus::NotFound,
        Error::Parse { .. } | Error::Json(_) => KsgStatus::ParseError,
        Error::ResourceLimit { .. } => KsgStatus::ResourceLimit,
        Error::Validation(_) => KsgStatus::ValidationFailed,
        Error::NonConvergence { .. } => KsgStatus::NonConvergence,
        Error::Io { .. } => KsgStatus::IoError,
    }
}

struct Failure(KsgStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

/// Runs `body`, converting errors and panics into status codes.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> KsgStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => KsgStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            KsgStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(KsgStatus::NullPointer, format!("{what} is NULL"))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(KsgStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn graph<'a>(g: *const KsgGraph) -> Result<&'a Graph, Failure> {
    g.as_ref().map(|h| &h.graph).ok_or_else(|| null("graph"))
}

unsafe fn write<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("NULs removed").into_raw()
}

fn new_graph(g: Graph) -> *mut KsgGraph {
    Box::into_raw(Box::new(KsgGraph { graph: g }))
}

/// Message for the last failed call on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ksg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ksg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn ksg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Looks up a catalog graph such as `G_YO`, `J_GYO_GYO`, `K4` or `C5`.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ksg_graph_from_catalog(name: *const c_char, out: *mut *mut KsgGraph) -> KsgStatus {
    guard(|| {
        let entry = catalog_get(text(name, "name")?)?;
        write(out, new_graph(entry.graph), "out")
    })
}

/// Parses a graph in the `p ograph` text format.
///
/// # Safety
/// `source` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ksg_graph_from_ograph(source: *const c_char, out: *mut *mut KsgGraph) -> KsgStatus {
    guard(|| {
        let g = parse_ograph(text(source, "source")?)?;
        write(out, new_graph(g), "out")
    })
}

/// Builds a graph on `n` vertices from `m` edges given as `2m` 0-based
/// endpoints.
///
/// # Safety
/// `edges` must point to `2 * m` readable values (may be NULL when `m` is 0).
#[no_mangle]
pub unsafe extern "C" fn ksg_graph_from_edges(
    n: usize,
    edges: *const usize,
    m: usize,
    out: *mut *mut KsgGraph,
) -> KsgStatus {
    guard(|| {
        let flat: &[usize] = if m == 0 {
            &[]
        } else if edges.is_null() {
            return Err(null("edges"));
        } else {
            std::slice::from_raw_parts(edges, 2 * m)
        };
        let pairs: Vec<(usize, usize)> = flat.chunks_exact(2).map(|p| (p[0], p[1])).collect();
        let g = Graph::from_edges(n, &pairs)?;
        write(out, new_graph(g), "out")
    })
}

/// Releases a graph handle. NULL is ignored.
///
/// # Safety
/// `g` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn ksg_graph_free(g: *mut KsgGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Vertex count, or 0 for NULL.
///
/// # Safety
/// `g` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ksg_graph_vertex_count(g: *const KsgGraph) -> usize {
    g.as_ref().map_or(0, |h| h.graph.n())
}

/// Edge count, or 0 for NULL.
///
/// # Safety
/// `g` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ksg_graph_edge_count(g: *const KsgGraph) -> usize {
    g.as_ref().map_or(0, |h| h.graph.edge_count())
}

/// Exact clique number.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ksg_clique_number(g: *const KsgGraph, out: *mut u64) -> KsgStatus {
    guard(|| {
        let omega = clique_number(graph(g)?, SearchLimits::default())?;
        write(out, omega as u64, "out")
    })
}

/// Exact chromatic number.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ksg_chromatic_number(g: *const KsgGraph, out: *mut u64) -> KsgStatus {
    guard(|| {
        let chi = chromatic_number(graph(g)?, SearchLimits::default())?;
        write(out, chi.chromatic_number as u64, "out")
    })
}

/// Exact fractional chromatic number as a `"p/q"` string.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable. Free the string with
/// [`ksg_string_free`].
#[no_mangle]
pub unsafe extern "C" fn ksg_fractional_chromatic_number(g: *const KsgGraph, out: *mut *mut c_char) -> KsgStatus {
    guard(|| {
        let chi_f = fractional_chromatic_number(graph(g)?, EnumerationLimits::default())?;
        if out.is_null() {
            return Err(null("out"));
        }
        out.write(owned_string(chi_f.value.to_string()));
        Ok(())
    })
}

/// State-independent contextuality test for rank-`rank` projectors in
/// dimension `dim`. Writes 1 or 0 to `is_sic` and, when `certificate` is
/// not NULL, the certificate JSON.
///
/// # Safety
/// `g` must be a live handle; `is_sic` must be writable; `certificate` may
/// be NULL.
#[no_mangle]
pub unsafe extern "C" fn ksg_sic_test(
    g: *const KsgGraph,
    dim: u64,
    rank: u64,
    is_sic: *mut c_int,
    certificate: *mut *mut c_char,
) -> KsgStatus {
    guard(|| {
        let g = graph(g)?;
        let verdict = sic_test(g, dim, rank, EnumerationLimits::default())?;
        write(is_sic, c_int::from(verdict.is_sic), "is_sic")?;
        if !certificate.is_null() {
            certificate.write(owned_string(Certificate::sic(g, &verdict).to_json()));
        }
        Ok(())
    })
}

/// Re-checks a certificate. Writes 1 or 0 to `valid`; when invalid and
/// `failure` is not NULL, writes the first violated condition.
///
/// # Safety
/// `g` must be a live handle; `json` NUL-terminated; `valid` writable;
/// `failure` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn ksg_verify_certificate(
    g: *const KsgGraph,
    json: *const c_char,
    valid: *mut c_int,
    failure: *mut *mut c_char,
) -> KsgStatus {
    guard(|| {
        let g = graph(g)?;
        let cert = Certificate::from_json(text(json, "json")?)?;
        let check = verify_certificate(g, &cert, EnumerationLimits::default())?;
        write(valid, c_int::from(check.is_valid()), "valid")?;
        if !failure.is_null() {
            failure.write(check.failure().map_or(ptr::null_mut(), |f| owned_string(f.to_string())));
        }
        Ok(())
    })
}

/// Contextuality measure for fixed projectors. `state_json` NULL means the
/// maximally mixed state. `tol <= 0` selects the default tolerance. Writes
/// the value in nats and, when `result_json` is not NULL, the full result.
///
/// # Safety
/// `g` must be a live handle; string arguments NUL-terminated;
/// `value_nats` writable; `result_json` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn ksg_measure(
    g: *const KsgGraph,
    projectors_json: *const c_char,
    state_json: *const c_char,
    tol: f64,
    value_nats: *mut f64,
    result_json: *mut *mut c_char,
) -> KsgStatus {
    guard(|| {
        let g = graph(g)?;
        let ps = projectors_from_json(text(projectors_json, "projectors_json")?)?;
        let rho = if state_json.is_null() {
            DensityMatrix::maximally_mixed(ps.dim())
        } else {
            state_from_json(text(state_json, "state_json")?)?
        };
        let mut opts = MeasureOptions::default();
        if tol > 0.0 {
            opts.tol = tol;
        }
        let result = contextuality_measure_fixed(g, &ps, &rho, &opts)?;
        write(value_nats, result.value_nats, "value_nats")?;
        if !result_json.is_null() {
            let s = serde_json::to_string_pretty(&result).map_err(Error::from)?;
            result_json.write(owned_string(s));
        }
        Ok(())
    })
}
