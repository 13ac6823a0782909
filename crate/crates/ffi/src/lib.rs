//! C ABI over the `prdc` metrics.
//!
//! Embedding matrices live behind the opaque [`PrdcEmbeddings`] handle.
//! Every fallible function returns a [`PrdcStatus`]; on failure a message for
//! the calling thread is available from [`prdc_last_error`]. The header
//! `include/prdc.h` is generated from this file by the build script.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use prdc::{EmbeddingSet, Error, ErrorClass, Evaluator, KnnConfig, MetricConfig};

/// Result codes. The non-zero values match the CLI exit codes where they overlap.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrdcStatus {
    Ok = 0,
    NullPointer = 1,
    DataError = 2,
    ParameterError = 3,
    Panic = 4,
}

/// Opaque embedding matrix.
pub struct PrdcEmbeddings(EmbeddingSet);

/// The four metric values and the settings that produced them.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct PrdcScores {
    pub precision: f64,
    pub recall: f64,
    pub density: f64,
    pub coverage: f64,
    pub k_pr: usize,
    pub k_dc: usize,
    pub n_real: usize,
    pub n_fake: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(msg));
}

fn fail(err: Error) -> PrdcStatus {
    let status = match err.class() {
        ErrorClass::Data => PrdcStatus::DataError,
        ErrorClass::Parameter => PrdcStatus::ParameterError,
    };
    set_last_error(err.to_string());
    status
}

fn guarded<F: FnOnce() -> PrdcStatus>(f: F) -> PrdcStatus {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_last_error("internal panic".into());
            PrdcStatus::Panic
        }
    }
}

fn null_pointer(what: &str) -> PrdcStatus {
    set_last_error(format!("null pointer: {what}"));
    PrdcStatus::NullPointer
}

unsafe fn store_handle(set: Result<EmbeddingSet, Error>, out: *mut *mut PrdcEmbeddings) -> PrdcStatus {
    match set {
        Ok(set) => {
            *out = Box::into_raw(Box::new(PrdcEmbeddings(set)));
            PrdcStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Copies a row-major `n_samples x dim` array of doubles into a new handle.
#[no_mangle]
pub unsafe extern "C" fn prdc_embeddings_from_f64(
    data: *const f64,
    n_samples: usize,
    dim: usize,
    out: *mut *mut PrdcEmbeddings,
) -> PrdcStatus {
    guarded(|| {
        if data.is_null() || out.is_null() {
            return null_pointer("data/out");
        }
        let Some(len) = n_samples.checked_mul(dim) else {
            return fail(Error::InvalidParameter("shape overflows".into()));
        };
        let values = std::slice::from_raw_parts(data, len).to_vec();
        store_handle(EmbeddingSet::from_flat(values, n_samples, dim), out)
    })
}

/// Like [`prdc_embeddings_from_f64`] for single precision input; values are
/// widened to double.
#[no_mangle]
pub unsafe extern "C" fn prdc_embeddings_from_f32(
    data: *const f32,
    n_samples: usize,
    dim: usize,
    out: *mut *mut PrdcEmbeddings,
) -> PrdcStatus {
    guarded(|| {
        if data.is_null() || out.is_null() {
            return null_pointer("data/out");
        }
        let Some(len) = n_samples.checked_mul(dim) else {
            return fail(Error::InvalidParameter("shape overflows".into()));
        };
        let values = std::slice::from_raw_parts(data, len);
        store_handle(EmbeddingSet::from_f32(values, n_samples, dim), out)
    })
}

/// Loads an embedding file, choosing the format from its extension.
#[no_mangle]
pub unsafe extern "C" fn prdc_embeddings_load(path: *const c_char, out: *mut *mut PrdcEmbeddings) -> PrdcStatus {
    guarded(|| {
        if path.is_null() || out.is_null() {
            return null_pointer("path/out");
        }
        let Ok(path) = CStr::from_ptr(path).to_str() else {
            return fail(Error::InvalidParameter("path is not valid UTF-8".into()));
        };
        store_handle(prdc::load_embeddings(path, None), out)
    })
}

/// Releases a handle. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn prdc_embeddings_free(handle: *mut PrdcEmbeddings) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

#[no_mangle]
pub unsafe extern "C" fn prdc_embeddings_n_samples(handle: *const PrdcEmbeddings) -> usize {
    handle.as_ref().map_or(0, |h| h.0.n_samples())
}

#[no_mangle]
pub unsafe extern "C" fn prdc_embeddings_dim(handle: *const PrdcEmbeddings) -> usize {
    handle.as_ref().map_or(0, |h| h.0.dim())
}

/// Computes all four metrics. `threads == 0` uses every core.
#[no_mangle]
pub unsafe extern "C" fn prdc_compute(
    real: *const PrdcEmbeddings,
    fake: *const PrdcEmbeddings,
    k_pr: usize,
    k_dc: usize,
    threads: usize,
    out: *mut PrdcScores,
) -> PrdcStatus {
    guarded(|| {
        let (Some(real), Some(fake), false) = (real.as_ref(), fake.as_ref(), out.is_null()) else {
            return null_pointer("real/fake/out");
        };
        let eval = Evaluator::new(KnnConfig::default().with_threads(threads));
        match eval.prdc(&real.0, &fake.0, MetricConfig { k_pr, k_dc }) {
            Ok(s) => {
                *out = PrdcScores {
                    precision: s.precision,
                    recall: s.recall,
                    density: s.density,
                    coverage: s.coverage,
                    k_pr: s.k_pr,
                    k_dc: s.k_dc,
                    n_real: s.n_real,
                    n_fake: s.n_fake,
                };
                PrdcStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Expected coverage for identically distributed sets of sizes `n_real`, `n_fake`.
#[no_mangle]
pub unsafe extern "C" fn prdc_expected_coverage(n_real: u64, n_fake: u64, k: u64, out: *mut f64) -> PrdcStatus {
    guarded(|| {
        if out.is_null() {
            return null_pointer("out");
        }
        match prdc::expected_coverage(n_real, n_fake, k) {
            Ok(v) => {
                *out = v;
                PrdcStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Smallest k with expected coverage above `1 - epsilon`. `out_coverage` may be null.
#[no_mangle]
pub unsafe extern "C" fn prdc_select_k(
    n_real: u64,
    n_fake: u64,
    epsilon: f64,
    out_k: *mut u64,
    out_coverage: *mut f64,
) -> PrdcStatus {
    guarded(|| {
        if out_k.is_null() {
            return null_pointer("out_k");
        }
        match prdc::select_k(n_real, n_fake, epsilon) {
            Ok(choice) => {
                *out_k = choice.k;
                if !out_coverage.is_null() {
                    *out_coverage = choice.achieved_expected_coverage;
                }
                PrdcStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Message for the most recent failure on this thread, or null. Valid until
/// the next call into this library from the same thread.
#[no_mangle]
pub extern "C" fn prdc_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn prdc_version() -> *const c_char {
    static VERSION: &CStr = match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
        Ok(v) => v,
        Err(_) => panic!("version contains NUL"),
    };
    VERSION.as_ptr()
}
