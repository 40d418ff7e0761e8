//! C ABI over `iaa-core`.
//!
//! Fuzzy sets are exposed as opaque handles that the caller owns and must
//! release with the matching `*_free` function. Every fallible call returns an
//! [`IaaStatus`]; on failure a description is available from
//! [`iaa_last_error_message`] on the same thread. Output pointers are written
//! only on success.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use iaa_core::{
    build_t1, build_zgt2, centroid, gamma_gt2, gamma_t1, height, ingest_csv, jaccard_nested, run_report, support,
    Error, IngestOptions, Interval, Mode, OutputFormat, RunConfig, Type1FuzzySet, ZGT2FuzzySet,
};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IaaStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    NestingViolation = 3,
    EmptySet = 4,
    IoError = 5,
    InvalidData = 6,
    Panic = 7,
}

/// Opaque type-1 fuzzy set.
pub struct IaaT1Set(Type1FuzzySet);

/// Opaque zSlice general type-2 fuzzy set.
pub struct IaaZgt2Set(ZGT2FuzzySet);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> IaaStatus {
    match err {
        Error::NestingViolation { .. } => IaaStatus::NestingViolation,
        Error::EmptySet(_) => IaaStatus::EmptySet,
        Error::Io { .. } => IaaStatus::IoError,
        Error::Rows(_) | Error::NoRecords | Error::BadHeader(_) => IaaStatus::InvalidData,
        Error::Term { source, .. } => status_of(source),
        _ => IaaStatus::InvalidArgument,
    }
}

enum Failure {
    Null(&'static str),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

/// Runs `body`, converting errors and panics into status codes.
fn guard<F>(body: F) -> IaaStatus
where
    F: FnOnce() -> Result<(), Failure>,
{
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => IaaStatus::Ok,
        Ok(Err(Failure::Null(what))) => {
            set_last_error(format!("null pointer: {what}"));
            IaaStatus::NullPointer
        }
        Ok(Err(Failure::Core(e))) => {
            set_last_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_last_error("internal panic".to_string());
            IaaStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(what))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &'static str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null(what));
    }
    out.write(value);
    Ok(())
}

/// Message of the last failed call on this thread, or NULL. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn iaa_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn iaa_status_str(status: IaaStatus) -> *const c_char {
    let s: &'static CStr = match status {
        IaaStatus::Ok => c"ok",
        IaaStatus::NullPointer => c"null pointer",
        IaaStatus::InvalidArgument => c"invalid argument",
        IaaStatus::NestingViolation => c"nesting violation",
        IaaStatus::EmptySet => c"empty set",
        IaaStatus::IoError => c"I/O error",
        IaaStatus::InvalidData => c"invalid data",
        IaaStatus::Panic => c"internal panic",
    };
    s.as_ptr()
}

/// Builds a type-1 set from `n` intervals `[lo[i], hi[i]]`.
///
/// # Safety
/// `lo` and `hi` must point to `n` readable doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn iaa_t1_new(lo: *const f64, hi: *const f64, n: usize, out: *mut *mut IaaT1Set) -> IaaStatus {
    guard(|| {
        if n > 0 && (lo.is_null() || hi.is_null()) {
            return Err(Failure::Null("interval endpoints"));
        }
        let intervals = if n == 0 {
            Vec::new()
        } else {
            let (lo, hi) = (std::slice::from_raw_parts(lo, n), std::slice::from_raw_parts(hi, n));
            lo.iter()
                .zip(hi)
                .map(|(&a, &b)| Interval::new(a, b))
                .collect::<Result<Vec<_>, _>>()?
        };
        let set = build_t1(&intervals)?;
        write_out(out, Box::into_raw(Box::new(IaaT1Set(set))), "out")
    })
}

/// Releases a set from `iaa_t1_new` or `iaa_zgt2_zslice`. NULL is ignored.
///
/// # Safety
/// `set` must be NULL or a live handle not freed before.
#[no_mangle]
pub unsafe extern "C" fn iaa_t1_free(set: *mut IaaT1Set) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

/// Membership at `x`.
///
/// # Safety
/// `set` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn iaa_t1_membership(set: *const IaaT1Set, x: f64, out: *mut f64) -> IaaStatus {
    guard(|| write_out(out, deref(set, "set")?.0.membership(x), "out"))
}

/// Total length of the cut `{x : mu(x) >= alpha}`, `alpha` in (0, 1].
///
/// # Safety
/// `set` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn iaa_t1_alpha_cut_length(set: *const IaaT1Set, alpha: f64, out: *mut f64) -> IaaStatus {
    guard(|| {
        let len = deref(set, "set")?.0.mf().alpha_cut_length(alpha)?;
        write_out(out, len, "out")
    })
}

/// Integral of the membership function.
///
/// # Safety
/// `set` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn iaa_t1_integral(set: *const IaaT1Set, out: *mut f64) -> IaaStatus {
    guard(|| write_out(out, deref(set, "set")?.0.mf().integral(), "out"))
}

/// Intra-group agreement ratio (exact lengths).
///
/// # Safety
/// `set` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn iaa_t1_gamma(set: *const IaaT1Set, out: *mut f64) -> IaaStatus {
    guard(|| {
        let r = gamma_t1(&deref(set, "set")?.0, Mode::Exact)?;
        write_out(out, r.gamma, "out")
    })
}

/// Smallest closed interval containing all positive membership.
///
/// # Safety
/// `set` must be a live handle; `lo` and `hi` must be writable.
#[no_mangle]
pub unsafe extern "C" fn iaa_t1_support(set: *const IaaT1Set, lo: *mut f64, hi: *mut f64) -> IaaStatus {
    guard(|| {
        if lo.is_null() || hi.is_null() {
            return Err(Failure::Null("out"));
        }
        let s = support(&deref(set, "set")?.0)?;
        write_out(lo, s.lo(), "lo")?;
        write_out(hi, s.hi(), "hi")
    })
}

/// Membership-weighted mean abscissa.
///
/// # Safety
/// `set` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn iaa_t1_centroid(set: *const IaaT1Set, out: *mut f64) -> IaaStatus {
    guard(|| write_out(out, centroid(&deref(set, "set")?.0)?, "out"))
}

/// Largest attained membership.
///
/// # Safety
/// `set` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn iaa_t1_height(set: *const IaaT1Set, out: *mut f64) -> IaaStatus {
    guard(|| write_out(out, height(&deref(set, "set")?.0), "out"))
}

/// Jaccard similarity of nested sets `inner ⊆ outer`.
///
/// # Safety
/// Both handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn iaa_jaccard_nested(
    inner: *const IaaT1Set,
    outer: *const IaaT1Set,
    out: *mut f64,
) -> IaaStatus {
    guard(|| {
        let s = jaccard_nested(&deref(inner, "inner")?.0, &deref(outer, "outer")?.0, Mode::Exact)?;
        write_out(out, s, "out")
    })
}

/// Builds a type-2 set from `n` group-level type-1 sets. The inputs are not
/// consumed.
///
/// # Safety
/// `sets` must point to `n` live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn iaa_zgt2_new(sets: *const *const IaaT1Set, n: usize, out: *mut *mut IaaZgt2Set) -> IaaStatus {
    guard(|| {
        if n > 0 && sets.is_null() {
            return Err(Failure::Null("sets"));
        }
        let handles: &[*const IaaT1Set] = if n == 0 {
            &[]
        } else {
            std::slice::from_raw_parts(sets, n)
        };
        let groups = handles
            .iter()
            .map(|&h| deref(h, "sets[i]").map(|s| s.0.clone()))
            .collect::<Result<Vec<_>, _>>()?;
        let g = build_zgt2(&groups)?;
        write_out(out, Box::into_raw(Box::new(IaaZgt2Set(g))), "out")
    })
}

/// Releases a type-2 set. NULL is ignored.
///
/// # Safety
/// `set` must be NULL or a live handle not freed before.
#[no_mangle]
pub unsafe extern "C" fn iaa_zgt2_free(set: *mut IaaZgt2Set) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

/// Number of zSlices.
///
/// # Safety
/// `set` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn iaa_zgt2_len(set: *const IaaZgt2Set, out: *mut usize) -> IaaStatus {
    guard(|| write_out(out, deref(set, "set")?.0.len(), "out"))
}

/// Copy of zSlice `j` (1-based) as a new type-1 handle.
///
/// # Safety
/// `set` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn iaa_zgt2_zslice(set: *const IaaZgt2Set, j: usize, out: *mut *mut IaaT1Set) -> IaaStatus {
    guard(|| {
        let z = deref(set, "set")?.0.zslice(j)?.clone();
        write_out(out, Box::into_raw(Box::new(IaaT1Set(z))), "out")
    })
}

/// Inter-group agreement ratio (exact masses).
///
/// # Safety
/// `set` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn iaa_zgt2_gamma(set: *const IaaZgt2Set, out: *mut f64) -> IaaStatus {
    guard(|| {
        let r = gamma_gt2(&deref(set, "set")?.0, Mode::Exact)?;
        write_out(out, r.gamma, "out")
    })
}

/// JSON report for a survey CSV file. `discretize_step <= 0` measures exactly.
/// The returned string must be released with `iaa_string_free`.
///
/// # Safety
/// `csv_path` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn iaa_report_json(
    csv_path: *const c_char,
    scale_lo: f64,
    scale_hi: f64,
    discretize_step: f64,
    out: *mut *mut c_char,
) -> IaaStatus {
    guard(|| {
        let path = deref(csv_path, "csv_path")?;
        let path = CStr::from_ptr(path)
            .to_str()
            .map_err(|_| Error::InvalidArgument("csv_path is not UTF-8".into()))?;
        if scale_lo.is_nan() || scale_hi.is_nan() || scale_lo >= scale_hi {
            return Err(Error::InvalidArgument(format!("invalid scale [{scale_lo}, {scale_hi}]")).into());
        }
        let scale = Interval::new(scale_lo, scale_hi)?;
        let data = ingest_csv(
            path,
            &IngestOptions {
                scale,
                skip_invalid: false,
            },
        )?
        .dataset;
        let config = RunConfig {
            scale,
            discretize: (discretize_step > 0.0).then_some(discretize_step),
            format: OutputFormat::Json,
        };
        let text = run_report(&data, &config)?;
        let c = CString::new(text).map_err(|_| Error::InvalidArgument("report contains NUL".into()))?;
        write_out(out, c.into_raw(), "out")
    })
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must be NULL or a string from this library not freed before.
#[no_mangle]
pub unsafe extern "C" fn iaa_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
