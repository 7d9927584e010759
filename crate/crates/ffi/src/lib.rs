//! C ABI over `vconc-core`.
//!
//! Couples are opaque handles created by the `vconc_couple_*` constructors
//! and released with [`vconc_couple_free`]. Every fallible call returns a
//! [`VconcStatus`]; on failure the message is available from
//! [`vconc_last_error`] until the next call on the same thread. Strings
//! returned through out-pointers are owned by the caller and released with
//! [`vconc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use vconc::cli::CoupleFile;
use vconc::exact::int;
use vconc::families::{fixture, kmn_couple};
use vconc::invariants::{is_metabolic, order, report, Order};
use vconc::seifert::{SeifertCouple, Side};
use vconc::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VconcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Validation = 3,
    ComputationLimit = 4,
    NotAdmissible = 5,
    NotRegular = 6,
    NotFound = 7,
    Parse = 8,
    Singular = 9,
    NotInvariant = 10,
    Internal = 11,
    Panic = 12,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VconcSide {
    Plus = 0,
    Minus = 1,
}

impl From<VconcSide> for Side {
    fn from(s: VconcSide) -> Side {
        match s {
            VconcSide::Plus => Side::Plus,
            VconcSide::Minus => Side::Minus,
        }
    }
}

/// Opaque couple handle.
pub struct VconcCouple {
    inner: SeifertCouple,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> VconcStatus {
    match e {
        Error::InvalidArgument(_) => VconcStatus::InvalidArgument,
        Error::Validation { .. } => VconcStatus::Validation,
        Error::ComputationLimit(_) => VconcStatus::ComputationLimit,
        Error::NotInvariant => VconcStatus::NotInvariant,
        Error::Singular(_) => VconcStatus::Singular,
        Error::NotAdmissible => VconcStatus::NotAdmissible,
        Error::NotRegular => VconcStatus::NotRegular,
        Error::NotFound(_) => VconcStatus::NotFound,
        Error::Parse { .. } => VconcStatus::Parse,
        Error::Internal(_) => VconcStatus::Internal,
    }
}

/// Run `f`, recording any error or panic.
fn guard<F: FnOnce() -> Result<(), (VconcStatus, String)>>(f: F) -> VconcStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => VconcStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside vconc".into());
            VconcStatus::Panic
        }
    }
}

fn lib<T>(r: vconc::Result<T>) -> Result<T, (VconcStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, (VconcStatus, String)> {
    if p.is_null() {
        return Err((VconcStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (VconcStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn couple_arg<'a>(c: *const VconcCouple) -> Result<&'a SeifertCouple, (VconcStatus, String)> {
    c.as_ref()
        .map(|h| &h.inner)
        .ok_or((VconcStatus::NullPointer, "couple handle is null".into()))
}

unsafe fn write_out<T>(out: *mut T, v: T) -> Result<(), (VconcStatus, String)> {
    if out.is_null() {
        return Err((VconcStatus::NullPointer, "output pointer is null".into()));
    }
    *out = v;
    Ok(())
}

unsafe fn new_handle(out: *mut *mut VconcCouple, c: SeifertCouple) -> Result<(), (VconcStatus, String)> {
    write_out(out, Box::into_raw(Box::new(VconcCouple { inner: c })))
}

/// Message of the last failed call on this thread, or null. Valid until the next call.
#[no_mangle]
pub extern "C" fn vconc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parse a couple from the JSON couple format
/// (`{"name", "ring", "a_plus", "a_minus"}` with string entries).
///
/// # Safety
/// `json` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vconc_couple_from_json(json: *const c_char, out: *mut *mut VconcCouple) -> VconcStatus {
    guard(|| {
        let text = str_arg(json, "json")?;
        let file: CoupleFile = serde_json::from_str(text)
            .map_err(|e| (VconcStatus::InvalidArgument, format!("not a couple file: {e}")))?;
        new_handle(out, lib(file.to_couple())?)
    })
}

/// # Safety
/// `name` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vconc_couple_fixture(name: *const c_char, out: *mut *mut VconcCouple) -> VconcStatus {
    guard(|| {
        let name = str_arg(name, "name")?;
        new_handle(out, lib(fixture(name))?)
    })
}

/// The K(m, n) couple shifted `i` times.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vconc_couple_kmn(m: i64, n: i64, i: i64, out: *mut *mut VconcCouple) -> VconcStatus {
    guard(|| new_handle(out, lib(kmn_couple(&int(m), &int(n), i))?))
}

/// # Safety
/// `c` must be null or a handle from a `vconc_couple_*` constructor, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn vconc_couple_free(c: *mut VconcCouple) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// # Safety
/// `c` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vconc_couple_dim(c: *const VconcCouple, out: *mut usize) -> VconcStatus {
    guard(|| write_out(out, couple_arg(c)?.dim()))
}

/// Order of one side in the rational concordance group: 1, 2 or 4, and 0 for infinite.
///
/// # Safety
/// `c` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vconc_order(c: *const VconcCouple, side: VconcSide, out: *mut u32) -> VconcStatus {
    guard(|| {
        let a = lib(couple_arg(c)?.project(side.into()))?;
        let o = match lib(order(&a))? {
            Order::One => 1,
            Order::Two => 2,
            Order::Four => 4,
            Order::Infinite => 0,
        };
        write_out(out, o)
    })
}

/// # Safety
/// `c` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vconc_is_metabolic(c: *const VconcCouple, side: VconcSide, out: *mut bool) -> VconcStatus {
    guard(|| {
        let a = lib(couple_arg(c)?.project(side.into()))?;
        write_out(out, lib(is_metabolic(&a))?)
    })
}

/// Arf invariant (0 or 1) of an integral couple with regular F_2 form.
///
/// # Safety
/// `c` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vconc_arf(c: *const VconcCouple, side: VconcSide, out: *mut u8) -> VconcStatus {
    guard(|| {
        let q = lib(vconc::arf::quad_form(couple_arg(c)?, side.into()))?;
        write_out(out, lib(vconc::arf::arf(&q))?)
    })
}

/// Full invariant report as a JSON string, released with [`vconc_string_free`].
///
/// # Safety
/// `c` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vconc_report_json(c: *const VconcCouple, side: VconcSide, out: *mut *mut c_char) -> VconcStatus {
    guard(|| {
        let a = lib(couple_arg(c)?.project(side.into()))?;
        let label = match side {
            VconcSide::Plus => "plus",
            VconcSide::Minus => "minus",
        };
        let r = lib(report(&a, label))?;
        let text = serde_json::to_string(&r.to_json()).map_err(|e| (VconcStatus::Internal, e.to_string()))?;
        let s = CString::new(text).map_err(|e| (VconcStatus::Internal, e.to_string()))?;
        write_out(out, s.into_raw())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn vconc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
