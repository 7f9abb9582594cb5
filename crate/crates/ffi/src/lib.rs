//! C interface to `meridian-core`.
//!
//! Every fallible function returns a [`MeridianStatus`] and writes results
//! through out-pointers. Handles are opaque and owned by the caller, who
//! releases them with the matching `*_free` function. Strings returned by
//! the library are released with [`meridian_string_free`]. On failure a
//! message is kept per thread and can be fetched with [`meridian_last_error`].

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use meridian::coset::{group_order, EnumerationLimits, GroupOrder};
use meridian::quotient::{
    certify, count_homs, default_targets, separation_report, Certificate, FiniteTarget,
};
use meridian::{
    abelianization, affine_group, catalog, parse_presentation, pullback_group, torus_curve_group,
};
use meridian::{CurveGroup, Error, Presentation};

pub const MERIDIAN_ABI_VERSION: u32 = 1;

/// Opaque finitely presented group.
pub struct MeridianPresentation {
    inner: Presentation,
}

/// Opaque presented group with degree and linking values.
pub struct MeridianCurveGroup {
    inner: CurveGroup,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MeridianStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Linking = 4,
    InvalidArgument = 5,
    /// Coset enumeration hit its limits; the answer is unknown.
    Exhausted = 6,
    BufferTooSmall = 7,
    TargetTooLarge = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MeridianVerdict {
    Abelian = 0,
    NonAbelian = 1,
    Unknown = 2,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(err: &Error) -> MeridianStatus {
    set_error(err.to_string());
    match err {
        Error::Syntax { .. }
        | Error::DuplicateGenerator { .. }
        | Error::UnknownGenerator { .. } => MeridianStatus::Parse,
        Error::Linking(_) => MeridianStatus::Linking,
        Error::TargetTooLarge { .. } => MeridianStatus::TargetTooLarge,
        Error::MalformedWord { .. } | Error::InvalidArgument(_) | Error::NotAGroup(_) => {
            MeridianStatus::InvalidArgument
        }
    }
}

fn guard<F: FnOnce() -> MeridianStatus>(f: F) -> MeridianStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| {
        set_error("internal panic");
        MeridianStatus::Panic
    })
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, MeridianStatus> {
    if s.is_null() {
        set_error("null string argument");
        return Err(MeridianStatus::NullPointer);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("string argument is not UTF-8");
        MeridianStatus::InvalidUtf8
    })
}

fn limits(max_cosets: usize, max_steps: u64) -> Result<EnumerationLimits, MeridianStatus> {
    let d = EnumerationLimits::default();
    let cosets = if max_cosets == 0 {
        d.max_cosets
    } else {
        max_cosets
    };
    let steps = if max_steps == 0 {
        d.max_steps
    } else {
        max_steps
    };
    EnumerationLimits::new(cosets, steps).map_err(|e| status_of(&e))
}

macro_rules! try_status {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

macro_rules! non_null {
    ($($p:expr),+) => {
        $(if $p.is_null() {
            set_error(concat!("null pointer: ", stringify!($p)));
            return MeridianStatus::NullPointer;
        })+
    };
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map_or(ptr::null_mut(), CString::into_raw)
}

#[no_mangle]
pub extern "C" fn meridian_abi_version() -> u32 {
    MERIDIAN_ABI_VERSION
}

/// Message for the last failed call on this thread, or NULL. Free with
/// `meridian_string_free`.
#[no_mangle]
pub extern "C" fn meridian_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| {
        e.borrow()
            .as_ref()
            .map_or(ptr::null_mut(), |s| s.clone().into_raw())
    })
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn meridian_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses the text format. Curve-group files are accepted; their linking
/// data is dropped.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn meridian_presentation_parse(
    text: *const c_char,
    out: *mut *mut MeridianPresentation,
) -> MeridianStatus {
    guard(|| {
        non_null!(out);
        let text = try_status!(read_str(text));
        let parsed = try_status!(parse_presentation(text).map_err(|e| status_of(&e)));
        *out = Box::into_raw(Box::new(MeridianPresentation {
            inner: parsed.presentation().clone(),
        }));
        MeridianStatus::Ok
    })
}

/// Parses a curve group (the text must contain `group d=` and `lk` lines).
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn meridian_curve_parse(
    text: *const c_char,
    out: *mut *mut MeridianCurveGroup,
) -> MeridianStatus {
    guard(|| {
        non_null!(out);
        let text = try_status!(read_str(text));
        let parsed = try_status!(parse_presentation(text).map_err(|e| status_of(&e)));
        match parsed.into_curve() {
            Some(cg) => {
                *out = Box::into_raw(Box::new(MeridianCurveGroup { inner: cg }));
                MeridianStatus::Ok
            }
            None => {
                set_error("expected a curve group (`group d=` line missing)");
                MeridianStatus::Linking
            }
        }
    })
}

/// Built-in curve group by name (`quartic`, `sextic-conic`,
/// `sextic-generic`, `torus-<p>-<q>-<k>`).
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn meridian_curve_catalog(
    name: *const c_char,
    out: *mut *mut MeridianCurveGroup,
) -> MeridianStatus {
    guard(|| {
        non_null!(out);
        let name = try_status!(read_str(name));
        let cg = try_status!(catalog::lookup(name).map_err(|e| status_of(&e)));
        *out = Box::into_raw(Box::new(MeridianCurveGroup { inner: cg }));
        MeridianStatus::Ok
    })
}

/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn meridian_curve_torus(
    p: u64,
    q: u64,
    k: u64,
    out: *mut *mut MeridianCurveGroup,
) -> MeridianStatus {
    guard(|| {
        non_null!(out);
        let cg = try_status!(torus_curve_group(p, q, k).map_err(|e| status_of(&e)));
        *out = Box::into_raw(Box::new(MeridianCurveGroup { inner: cg }));
        MeridianStatus::Ok
    })
}

/// # Safety
/// `p` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn meridian_presentation_free(p: *mut MeridianPresentation) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// `cg` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn meridian_curve_free(cg: *mut MeridianCurveGroup) {
    if !cg.is_null() {
        drop(Box::from_raw(cg));
    }
}

/// Copies the underlying presentation of a curve group into a new handle.
///
/// # Safety
/// `cg` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn meridian_curve_presentation(
    cg: *const MeridianCurveGroup,
    out: *mut *mut MeridianPresentation,
) -> MeridianStatus {
    guard(|| {
        non_null!(cg, out);
        *out = Box::into_raw(Box::new(MeridianPresentation {
            inner: (*cg).inner.presentation().clone(),
        }));
        MeridianStatus::Ok
    })
}

/// Degree of the curve, or 0 for a NULL handle.
///
/// # Safety
/// `cg` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn meridian_curve_degree(cg: *const MeridianCurveGroup) -> u64 {
    if cg.is_null() {
        0
    } else {
        (*cg).inner.degree()
    }
}

/// Text-format serialization; NULL for a NULL handle.
///
/// # Safety
/// `p` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn meridian_presentation_to_string(
    p: *const MeridianPresentation,
) -> *mut c_char {
    if p.is_null() {
        return ptr::null_mut();
    }
    into_c_string((*p).inner.to_string())
}

/// # Safety
/// `cg` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn meridian_curve_to_string(cg: *const MeridianCurveGroup) -> *mut c_char {
    if cg.is_null() {
        return ptr::null_mut();
    }
    into_c_string((*cg).inner.to_string())
}

/// Group order by coset enumeration. Zero limits select the defaults.
/// Returns `MERIDIAN_STATUS_EXHAUSTED` when the order is unknown.
///
/// # Safety
/// `p` must be a live handle and `out_order` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn meridian_group_order(
    p: *const MeridianPresentation,
    max_cosets: usize,
    max_steps: u64,
    out_order: *mut u64,
) -> MeridianStatus {
    guard(|| {
        non_null!(p, out_order);
        let limits = try_status!(limits(max_cosets, max_steps));
        match group_order(&(*p).inner, &limits) {
            GroupOrder::Finite(n) => {
                *out_order = n;
                MeridianStatus::Ok
            }
            GroupOrder::Unknown(x) => {
                set_error(format!("coset enumeration exhausted {}", x.limit));
                MeridianStatus::Exhausted
            }
        }
    })
}

/// Abelian invariants. `out_len` always receives the number of torsion
/// factors; if it exceeds `capacity` nothing is written to `torsion` and
/// `MERIDIAN_STATUS_BUFFER_TOO_SMALL` is returned. Factors that do not fit
/// in 64 bits are reported as `UINT64_MAX`.
///
/// # Safety
/// `p` must be a live handle; `out_free_rank` and `out_len` valid pointers;
/// `torsion` valid for `capacity` writes (may be NULL when `capacity` is 0).
#[no_mangle]
pub unsafe extern "C" fn meridian_abelianization(
    p: *const MeridianPresentation,
    out_free_rank: *mut usize,
    torsion: *mut u64,
    capacity: usize,
    out_len: *mut usize,
) -> MeridianStatus {
    guard(|| {
        non_null!(p, out_free_rank, out_len);
        let inv = abelianization(&(*p).inner);
        let t = inv.torsion_u64();
        *out_free_rank = inv.free_rank;
        *out_len = t.len();
        if t.len() > capacity {
            set_error(format!("need room for {} torsion factors", t.len()));
            return MeridianStatus::BufferTooSmall;
        }
        if !t.is_empty() {
            non_null!(torsion);
            ptr::copy_nonoverlapping(t.as_ptr(), torsion, t.len());
        }
        MeridianStatus::Ok
    })
}

/// Number of homomorphisms into a built-in target (`S3`, `S4`, `Q8`,
/// `Dic12`, `Z1`..`Z12`).
///
/// # Safety
/// `p` must be a live handle, `target` a NUL-terminated string and
/// `out_count` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn meridian_count_homs(
    p: *const MeridianPresentation,
    target: *const c_char,
    out_count: *mut u64,
) -> MeridianStatus {
    guard(|| {
        non_null!(p, out_count);
        let name = try_status!(read_str(target));
        let t = try_status!(FiniteTarget::builtin(name).map_err(|e| status_of(&e)));
        *out_count = try_status!(count_homs(&(*p).inner, &t).map_err(|e| status_of(&e)));
        MeridianStatus::Ok
    })
}

/// Abelianness certificate using the default targets. Zero limits select
/// the defaults.
///
/// # Safety
/// `p` must be a live handle and `out_verdict` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn meridian_certify(
    p: *const MeridianPresentation,
    max_cosets: usize,
    max_steps: u64,
    out_verdict: *mut MeridianVerdict,
) -> MeridianStatus {
    guard(|| {
        non_null!(p, out_verdict);
        let limits = try_status!(limits(max_cosets, max_steps));
        *out_verdict = match certify(&(*p).inner, &limits, &default_targets()) {
            Certificate::Abelian { .. } => MeridianVerdict::Abelian,
            Certificate::NonAbelian(_) => MeridianVerdict::NonAbelian,
            Certificate::Unknown => MeridianVerdict::Unknown,
        };
        MeridianStatus::Ok
    })
}

/// Curve group of the pull-back under a generic degree-`k` covering.
///
/// # Safety
/// `cg` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn meridian_pullback(
    cg: *const MeridianCurveGroup,
    k: u64,
    out: *mut *mut MeridianCurveGroup,
) -> MeridianStatus {
    guard(|| {
        non_null!(cg, out);
        let pb = try_status!(pullback_group(&(*cg).inner, k).map_err(|e| status_of(&e)));
        *out = Box::into_raw(Box::new(MeridianCurveGroup { inner: pb }));
        MeridianStatus::Ok
    })
}

/// Presentation of the affine complement group.
///
/// # Safety
/// `cg` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn meridian_affine(
    cg: *const MeridianCurveGroup,
    out: *mut *mut MeridianPresentation,
) -> MeridianStatus {
    guard(|| {
        non_null!(cg, out);
        let p = try_status!(affine_group(&(*cg).inner).map_err(|e| status_of(&e)));
        *out = Box::into_raw(Box::new(MeridianPresentation { inner: p }));
        MeridianStatus::Ok
    })
}

/// Separation report for the pull-backs of two curve groups, one row per
/// entry of `ks`, as JSON with the same row schema as the command-line
/// `pair-report`. Free the string with `meridian_string_free`.
///
/// # Safety
/// `cg1`, `cg2` must be live handles, `ks` valid for `nk` reads and
/// `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn meridian_pair_report_json(
    cg1: *const MeridianCurveGroup,
    cg2: *const MeridianCurveGroup,
    ks: *const u64,
    nk: usize,
    max_cosets: usize,
    max_steps: u64,
    out_json: *mut *mut c_char,
) -> MeridianStatus {
    guard(|| {
        non_null!(cg1, cg2, out_json);
        if nk > 0 {
            non_null!(ks);
        }
        let ks: &[u64] = if nk == 0 {
            &[]
        } else {
            std::slice::from_raw_parts(ks, nk)
        };
        let limits = try_status!(limits(max_cosets, max_steps));
        let rows = try_status!(separation_report(
            &(*cg1).inner,
            &(*cg2).inner,
            ks,
            &limits,
            &default_targets()
        )
        .map_err(|e| status_of(&e)));
        let doc = serde_json::json!({ "schema": 1, "rows": rows });
        *out_json = into_c_string(doc.to_string());
        MeridianStatus::Ok
    })
}
