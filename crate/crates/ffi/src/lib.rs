//! C ABI for `eccn-core`.
//!
//! Every function returns an [`EccnStatus`] and writes results through out
//! pointers. On failure a message is kept per thread and can be copied out
//! with [`eccn_last_error_message`]. Handles are opaque and must be released
//! with the matching `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;

use eccn_core::bounds::{breakeven_ratio, sample_complexity_graph, sample_complexity_single, GraphBoundForm};
use eccn_core::eccn::{exact_eccn, kellerman_cover, maximal_cliques, ExactOutcome};
use eccn_core::graph::{decode_record, flatten};
use eccn_core::rnn::{load_checkpoint, Model};
use eccn_core::{er_generate, Error, Graph};

/// Result codes of every `eccn_*` function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EccnStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    Dimension = 4,
    Io = 5,
    Checkpoint = 6,
    BudgetExhausted = 7,
    Internal = 8,
}

/// An undirected graph on at most 64 vertices.
pub struct EccnGraph(Graph);

/// A trained network loaded from a checkpoint.
pub struct EccnModel(Model);

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into());
}

fn status_of(e: &Error) -> EccnStatus {
    match e {
        Error::Parse { .. } => EccnStatus::Parse,
        Error::Dimension { .. } | Error::TooLarge { .. } => EccnStatus::Dimension,
        Error::Io { .. } => EccnStatus::Io,
        Error::Checkpoint(_) => EccnStatus::Checkpoint,
        Error::BudgetExhausted { .. } => EccnStatus::BudgetExhausted,
        _ => EccnStatus::InvalidArgument,
    }
}

struct Fail(EccnStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(EccnStatus::NullPointer, format!("{what} is null"))
}

/// Run `f`, turning errors and panics into a status plus a stored message.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> EccnStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => EccnStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            EccnStatus::Internal
        }
    }
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn graph_ref<'a>(g: *const EccnGraph) -> Result<&'a Graph, Fail> {
    g.as_ref().map(|g| &g.0).ok_or_else(|| null("graph"))
}

unsafe fn str_arg<'a>(s: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Fail(EccnStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

/// Copy the calling thread's last error message into `buf` (NUL
/// terminated, truncated to `len`). Returns the full message length in
/// bytes, excluding the terminator.
///
/// # Safety
/// `buf` must be null or valid for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn eccn_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = msg.len().min(len - 1);
            std::ptr::copy_nonoverlapping(msg.as_ptr().cast::<c_char>(), buf, n);
            *buf.add(n) = 0;
        }
        msg.len()
    })
}

/// Erdős–Rényi graph `G(n, p)` drawn from `seed`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn eccn_graph_er_generate(n: usize, p: f64, seed: u64, out: *mut *mut EccnGraph) -> EccnStatus {
    guard(|| {
        let g = er_generate(n, p, seed)?;
        write(out, Box::into_raw(Box::new(EccnGraph(g))))
    })
}

/// Parse a `<n>\t<upper-triangle bits>` record.
///
/// # Safety
/// `record` must be a NUL-terminated string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn eccn_graph_from_record(record: *const c_char, out: *mut *mut EccnGraph) -> EccnStatus {
    guard(|| {
        let g = decode_record(str_arg(record, "record")?, 1)?;
        write(out, Box::into_raw(Box::new(EccnGraph(g))))
    })
}

/// Graph on `n` vertices from `edge_count` pairs stored flat in `endpoints`
/// (`2 · edge_count` entries).
///
/// # Safety
/// `endpoints` must hold `2 · edge_count` values (it may be null when
/// `edge_count` is 0) and `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn eccn_graph_from_edges(
    n: usize,
    endpoints: *const u32,
    edge_count: usize,
    out: *mut *mut EccnGraph,
) -> EccnStatus {
    guard(|| {
        let flat: &[u32] = if edge_count == 0 {
            &[]
        } else if endpoints.is_null() {
            return Err(null("endpoints"));
        } else {
            std::slice::from_raw_parts(endpoints, 2 * edge_count)
        };
        let edges: Vec<(usize, usize)> = flat.chunks(2).map(|e| (e[0] as usize, e[1] as usize)).collect();
        let g = Graph::from_edges(n, &edges)?;
        write(out, Box::into_raw(Box::new(EccnGraph(g))))
    })
}

/// # Safety
/// `g` must come from an `eccn_graph_*` constructor and not be used again.
#[no_mangle]
pub unsafe extern "C" fn eccn_graph_free(g: *mut EccnGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live graph handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn eccn_graph_vertex_count(g: *const EccnGraph, out: *mut usize) -> EccnStatus {
    guard(|| write(out, graph_ref(g)?.n()))
}

/// # Safety
/// `g` must be a live graph handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn eccn_graph_edge_count(g: *const EccnGraph, out: *mut usize) -> EccnStatus {
    guard(|| write(out, graph_ref(g)?.edge_count()))
}

/// Exact edge clique cover number. A negative `budget` means unlimited;
/// otherwise the search gives up after `budget` clique selections and
/// returns `ECCN_STATUS_BUDGET_EXHAUSTED`.
///
/// # Safety
/// `g` must be a live graph handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn eccn_exact(g: *const EccnGraph, budget: i64, out: *mut usize) -> EccnStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let budget = u64::try_from(budget).ok();
        match exact_eccn(g, budget) {
            ExactOutcome::Solved { eccn, .. } => write(out, eccn),
            ExactOutcome::Unsolved { explored } => Err(Fail(
                EccnStatus::BudgetExhausted,
                format!("budget exhausted after {explored} clique selections"),
            )),
        }
    })
}

/// Size of the Kellerman heuristic cover.
///
/// # Safety
/// `g` must be a live graph handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn eccn_kellerman(g: *const EccnGraph, out: *mut usize) -> EccnStatus {
    guard(|| write(out, kellerman_cover(graph_ref(g)?).size()))
}

/// # Safety
/// `g` must be a live graph handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn eccn_maximal_clique_count(g: *const EccnGraph, out: *mut usize) -> EccnStatus {
    guard(|| write(out, maximal_cliques(graph_ref(g)?).len()))
}

/// Sample-complexity bound for one recurrent layer of width `a` on inputs
/// of length at most `b`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn eccn_sample_complexity_single(
    a: usize,
    b: usize,
    eps: f64,
    delta: f64,
    out: *mut f64,
) -> EccnStatus {
    guard(|| write(out, sample_complexity_single(a, b, eps, delta)?))
}

/// Sample-complexity bound of the size-adaptive network with `d` layers on
/// graphs with at most `n` vertices.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn eccn_sample_complexity_graph(
    n: usize,
    d: usize,
    eps: f64,
    delta: f64,
    out: *mut f64,
) -> EccnStatus {
    guard(|| write(out, sample_complexity_graph(n, d, eps, delta, GraphBoundForm::Published)?))
}

/// The graph bound divided by the number of graphs with at most `n`
/// vertices.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn eccn_breakeven_ratio(n: usize, d: usize, eps: f64, delta: f64, out: *mut f64) -> EccnStatus {
    guard(|| write(out, breakeven_ratio(n, d, eps, delta, GraphBoundForm::Published)?))
}

/// # Safety
/// `path` must be a NUL-terminated string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn eccn_model_load(path: *const c_char, out: *mut *mut EccnModel) -> EccnStatus {
    guard(|| {
        let model = load_checkpoint(Path::new(str_arg(path, "path")?))?;
        write(out, Box::into_raw(Box::new(EccnModel(model))))
    })
}

/// Largest graph the model accepts.
///
/// # Safety
/// `m` must be a live model handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn eccn_model_n_max(m: *const EccnModel, out: *mut usize) -> EccnStatus {
    guard(|| {
        let m = m.as_ref().ok_or_else(|| null("model"))?;
        write(out, m.0.n_max)
    })
}

/// Model output on `g`, in normalised label space.
///
/// # Safety
/// `m` and `g` must be live handles and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn eccn_model_predict(m: *const EccnModel, g: *const EccnGraph, out: *mut f64) -> EccnStatus {
    guard(|| {
        let m = &m.as_ref().ok_or_else(|| null("model"))?.0;
        let enc = flatten(graph_ref(g)?, m.n_max)?;
        write(out, m.predict(&enc)?)
    })
}

/// # Safety
/// `m` must come from [`eccn_model_load`] and not be used again.
#[no_mangle]
pub unsafe extern "C" fn eccn_model_free(m: *mut EccnModel) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}
