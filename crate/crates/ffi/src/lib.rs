//! C interface to the STL monitor and the RSS safe distances.
//!
//! Every function returns an [`RssStlStatus`]; on failure the message is
//! available from [`rss_stl_last_error`] on the same thread. Formulas and
//! traces are opaque handles released with their `_free` functions.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use rss_stl::rss::{lat_safe_distance, lon_safe_distance, rss_formula, RssError, RssParams};
use rss_stl::stl::{blame_at, eval_robustness, parse_formula, Formula, StlError, Trace};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RssStlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    MissingChannel = 5,
    IndexOutOfRange = 6,
    BufferTooSmall = 7,
    Panic = 99,
}

/// Parsed STL formula.
pub struct RssStlFormula(Formula);

/// Uniformly sampled multi-channel signal.
pub struct RssStlTrace(Trace);

/// RSS response time, fluctuation margin, sampling period and acceleration
/// bounds, in SI units.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RssStlParams {
    pub rho: f64,
    pub mu: f64,
    pub dt: f64,
    pub a_lon_min_br: f64,
    pub a_lon_max_acc: f64,
    pub a_lon_max_br: f64,
    pub a_lat_min_br: f64,
    pub a_lat_max_acc: f64,
}

impl From<RssParams> for RssStlParams {
    fn from(p: RssParams) -> Self {
        RssStlParams {
            rho: p.rho,
            mu: p.mu,
            dt: p.dt,
            a_lon_min_br: p.a_lon_min_br,
            a_lon_max_acc: p.a_lon_max_acc,
            a_lon_max_br: p.a_lon_max_br,
            a_lat_min_br: p.a_lat_min_br,
            a_lat_max_acc: p.a_lat_max_acc,
        }
    }
}

impl From<RssStlParams> for RssParams {
    fn from(p: RssStlParams) -> Self {
        RssParams {
            rho: p.rho,
            mu: p.mu,
            dt: p.dt,
            a_lon_min_br: p.a_lon_min_br,
            a_lon_max_acc: p.a_lon_max_acc,
            a_lon_max_br: p.a_lon_max_br,
            a_lat_min_br: p.a_lat_min_br,
            a_lat_max_acc: p.a_lat_max_acc,
        }
    }
}

/// Result of [`rss_stl_blame`]. `sample` is -1 when no atom decided the
/// value (for example a formula without atoms).
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RssStlBlame {
    pub robustness: f64,
    pub sample: i64,
    pub time: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(RssStlStatus, String);

impl From<StlError> for Failure {
    fn from(e: StlError) -> Self {
        let status = match e {
            StlError::Syntax { .. } | StlError::UnknownOperator { .. } => RssStlStatus::Parse,
            StlError::MissingChannel(_) => RssStlStatus::MissingChannel,
            StlError::IndexOutOfRange { .. } => RssStlStatus::IndexOutOfRange,
            _ => RssStlStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

impl From<RssError> for Failure {
    fn from(e: RssError) -> Self {
        Failure(RssStlStatus::InvalidArgument, e.to_string())
    }
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> RssStlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            RssStlStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            RssStlStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(RssStlStatus::NullPointer, format!("`{what}` is NULL"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|e| Failure(RssStlStatus::InvalidUtf8, format!("`{what}`: {e}")))
}

unsafe fn ref_arg<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn out_arg<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| null(what))
}

/// Message of the last failed call on this thread, or NULL after a
/// successful one. The pointer stays valid until the next call.
#[no_mangle]
pub extern "C" fn rss_stl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses `src` into a new formula handle.
///
/// # Safety
/// `src` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rss_stl_formula_parse(src: *const c_char, out: *mut *mut RssStlFormula) -> RssStlStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let f = parse_formula(str_arg(src, "src")?)?;
        *out = Box::into_raw(Box::new(RssStlFormula(f)));
        Ok(())
    })
}

/// Builds the RSS rule formula for `params` (NULL for the defaults).
///
/// # Safety
/// `params` must be NULL or valid, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rss_stl_formula_rss(params: *const RssStlParams, out: *mut *mut RssStlFormula) -> RssStlStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let p = params.as_ref().map_or_else(RssParams::default, |p| (*p).into());
        *out = Box::into_raw(Box::new(RssStlFormula(rss_formula(&p)?)));
        Ok(())
    })
}

/// # Safety
/// `f` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rss_stl_formula_free(f: *mut RssStlFormula) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Creates an empty trace with sampling period `dt`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rss_stl_trace_new(dt: f64, out: *mut *mut RssStlTrace) -> RssStlStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = Box::into_raw(Box::new(RssStlTrace(Trace::new(dt)?)));
        Ok(())
    })
}

/// Copies `len` samples into a new channel. All channels must have the
/// same length.
///
/// # Safety
/// `t` must be a live trace handle, `name` a NUL-terminated string and
/// `data` point to `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn rss_stl_trace_push_channel(
    t: *mut RssStlTrace,
    name: *const c_char,
    data: *const f64,
    len: usize,
) -> RssStlStatus {
    guard(|| {
        let t = out_arg(t, "trace")?;
        let name = str_arg(name, "name")?;
        if data.is_null() && len > 0 {
            return Err(null("data"));
        }
        let samples = if len == 0 { Vec::new() } else { std::slice::from_raw_parts(data, len).to_vec() };
        t.0.push_channel(name, samples)?;
        Ok(())
    })
}

/// Number of samples, 0 for a NULL handle.
///
/// # Safety
/// `t` must be NULL or a live trace handle.
#[no_mangle]
pub unsafe extern "C" fn rss_stl_trace_len(t: *const RssStlTrace) -> usize {
    t.as_ref().map_or(0, |t| t.0.len())
}

/// # Safety
/// `t` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rss_stl_trace_free(t: *mut RssStlTrace) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Robustness of `f` on `t` at sample `index`; may be ±infinity.
///
/// # Safety
/// Handles must be live and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn rss_stl_robustness(
    f: *const RssStlFormula,
    t: *const RssStlTrace,
    index: usize,
    out: *mut f64,
) -> RssStlStatus {
    guard(|| {
        let (f, t, out) = (ref_arg(f, "formula")?, ref_arg(t, "trace")?, out_arg(out, "out")?);
        *out = eval_robustness(&f.0, &t.0, index)?.value();
        Ok(())
    })
}

/// Robustness at `index` with the deciding sample, and the deciding atom's
/// name copied NUL-terminated into `atom` (`atom_cap` bytes; empty when no
/// atom decided). With a too small buffer `out` is still filled and
/// `BufferTooSmall` is returned; `atom` may be NULL when `atom_cap` is 0.
///
/// # Safety
/// Handles must be live, `out` valid and `atom` writable for `atom_cap`
/// bytes.
#[no_mangle]
pub unsafe extern "C" fn rss_stl_blame(
    f: *const RssStlFormula,
    t: *const RssStlTrace,
    index: usize,
    out: *mut RssStlBlame,
    atom: *mut c_char,
    atom_cap: usize,
) -> RssStlStatus {
    guard(|| {
        let (f, t, out) = (ref_arg(f, "formula")?, ref_arg(t, "trace")?, out_arg(out, "out")?);
        let report = blame_at(&f.0, &t.0, index)?;
        *out = RssStlBlame {
            robustness: report.robustness.value(),
            sample: report.blamed.as_ref().map_or(-1, |b| b.sample as i64),
            time: report.blamed.as_ref().map_or(f64::NAN, |b| b.time),
        };
        let name = report.blamed_atom().unwrap_or("").as_bytes();
        if atom_cap <= name.len() {
            if !atom.is_null() && atom_cap > 0 {
                *atom = 0;
            }
            return Err(Failure(
                RssStlStatus::BufferTooSmall,
                format!("atom name needs {} bytes, buffer has {atom_cap}", name.len() + 1),
            ));
        }
        if atom.is_null() {
            return Err(null("atom"));
        }
        ptr::copy_nonoverlapping(name.as_ptr(), atom as *mut u8, name.len());
        *atom.add(name.len()) = 0;
        Ok(())
    })
}

/// Writes the default RSS parameters to `out`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rss_stl_params_default(out: *mut RssStlParams) -> RssStlStatus {
    guard(|| {
        *out_arg(out, "out")? = RssParams::default().into();
        Ok(())
    })
}

/// Minimal longitudinal gap behind a car at `v_front` for a follower at
/// `v_rear` (NULL `params` for the defaults).
///
/// # Safety
/// `params` must be NULL or valid, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rss_stl_lon_safe_distance(
    v_rear: f64,
    v_front: f64,
    params: *const RssStlParams,
    out: *mut f64,
) -> RssStlStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let p = params.as_ref().map_or_else(RssParams::default, |p| (*p).into());
        p.validate()?;
        *out = lon_safe_distance(v_rear, v_front, &p)?;
        Ok(())
    })
}

/// Minimal lateral gap between a car on the left moving at `v_left` and one
/// on the right at `v_right`, velocities signed toward the right.
///
/// # Safety
/// `params` must be NULL or valid, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rss_stl_lat_safe_distance(
    v_left: f64,
    v_right: f64,
    params: *const RssStlParams,
    out: *mut f64,
) -> RssStlStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let p = params.as_ref().map_or_else(RssParams::default, |p| (*p).into());
        p.validate()?;
        *out = lat_safe_distance(v_left, v_right, &p)?;
        Ok(())
    })
}
