//! C ABI for zamen.
//!
//! Every fallible call returns a [`ZamenStatus`]; on failure a message is
//! available from [`zamen_last_error`] on the same thread. Handles are
//! opaque and must be released with their `_free` function. Strings returned
//! through out-parameters are owned by the caller and released with
//! [`zamen_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use zamen::amenability::{am_constant, diagonal, hs_lower_bound, verify_diagonal};
use zamen::central::ClassAlgebra;
use zamen::chartable::{character_table, CharacterTable};
use zamen::group::spec::GroupDocument;
use zamen::group::{conjugacy_structure, ConjugacyStructure, FiniteGroup, GroupOptions};
use zamen::tz2::verify_finabexample;
use zamen::{zoo, Error};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZamenStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// Malformed or invalid input: parse, validation or size-limit errors.
    InvalidInput = 3,
    /// Objects from different groups were combined.
    Mismatch = 4,
    /// The character table could not be separated numerically.
    NumericDegeneracy = 5,
    /// An index was out of range.
    OutOfRange = 6,
    /// Panic or I/O failure inside the library.
    Internal = 7,
}

/// A finite group together with its conjugacy classes.
pub struct ZamenGroup {
    group: FiniteGroup,
    cs: ConjugacyStructure,
}

pub struct ZamenTable {
    table: CharacterTable,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct ZamenAm {
    pub value: f64,
    /// True when `value` was snapped to `numer / denom`; both are 0 otherwise.
    pub snapped: bool,
    pub numer: i64,
    pub denom: i64,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct ZamenDiagonalReport {
    pub module_residual: f64,
    pub multiplication_residual: f64,
    pub passed: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(err: &Error) -> ZamenStatus {
    match err {
        Error::Resource { .. } | Error::Validation(_) | Error::Parse(_) | Error::Json(_) => ZamenStatus::InvalidInput,
        Error::Mismatch(_) => ZamenStatus::Mismatch,
        Error::NumericDegeneracy { .. } => ZamenStatus::NumericDegeneracy,
        Error::Io(_) => ZamenStatus::Internal,
    }
}

struct Fail(ZamenStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(ZamenStatus::NullArgument, format!("{what} is null"))
}

/// Runs `f`, converting errors and panics into a status code.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> ZamenStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            ZamenStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            ZamenStatus::Internal
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(ZamenStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn group_handle(group: FiniteGroup) -> *mut ZamenGroup {
    let cs = conjugacy_structure(&group);
    Box::into_raw(Box::new(ZamenGroup { group, cs }))
}

/// Message for the most recent failure on this thread, or null. Valid until
/// the next zamen call on the same thread.
#[no_mangle]
pub extern "C" fn zamen_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn zamen_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn zamen_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a group from a JSON group document.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zamen_group_from_json(json: *const c_char, out: *mut *mut ZamenGroup) -> ZamenStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let text = str_arg(json, "json")?;
        let group = GroupDocument::parse(text)?.build(&GroupOptions::default())?;
        write_out(out, group_handle(group), "out")
    })
}

/// Builds one of the shipped fixture groups by file stem, e.g. `"s3"`.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zamen_group_from_fixture(name: *const c_char, out: *mut *mut ZamenGroup) -> ZamenStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let group = zoo::load(str_arg(name, "name")?)?;
        write_out(out, group_handle(group), "out")
    })
}

/// # Safety
/// `g` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn zamen_group_free(g: *mut ZamenGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live group handle; the out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn zamen_group_info(
    g: *const ZamenGroup,
    order: *mut usize,
    classes: *mut usize,
    abelian: *mut bool,
) -> ZamenStatus {
    guard(|| {
        let g = handle(g, "group")?;
        write_out(order, g.group.order(), "order")?;
        write_out(classes, g.cs.len(), "classes")?;
        write_out(abelian, g.group.is_abelian(), "abelian")
    })
}

/// Computes and certifies the character table.
///
/// # Safety
/// `g` must be a live group handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zamen_table_new(g: *const ZamenGroup, out: *mut *mut ZamenTable) -> ZamenStatus {
    guard(|| {
        let g = handle(g, "group")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let table = character_table(&g.group, &g.cs)?;
        write_out(out, Box::into_raw(Box::new(ZamenTable { table })), "out")
    })
}

/// # Safety
/// `t` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn zamen_table_free(t: *mut ZamenTable) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Value `χ_irrep(class)`; rows and columns follow the table JSON.
///
/// # Safety
/// `t` must be a live table handle; `re` and `im` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zamen_table_value(
    t: *const ZamenTable,
    irrep: usize,
    class: usize,
    re: *mut f64,
    im: *mut f64,
) -> ZamenStatus {
    guard(|| {
        let t = &handle(t, "table")?.table;
        if irrep >= t.num_irreps() || class >= t.num_classes() {
            return Err(Fail(
                ZamenStatus::OutOfRange,
                format!("({irrep}, {class}) outside a {0}x{0} table", t.num_classes()),
            ));
        }
        let z = t.value(irrep, class);
        write_out(re, z.re, "re")?;
        write_out(im, z.im, "im")
    })
}

/// Largest certification residual of the table.
///
/// # Safety
/// `t` must be a live table handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zamen_table_residual(t: *const ZamenTable, out: *mut f64) -> ZamenStatus {
    guard(|| write_out(out, handle(t, "table")?.table.report().max_residual(), "out"))
}

/// The table as JSON; free with [`zamen_string_free`].
///
/// # Safety
/// `t` must be a live table handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zamen_table_to_json(t: *const ZamenTable, out: *mut *mut c_char) -> ZamenStatus {
    guard(|| {
        let t = &handle(t, "table")?.table;
        if out.is_null() {
            return Err(null("out"));
        }
        let json = serde_json::to_string_pretty(&t.to_json()).map_err(Error::from)?;
        let s = CString::new(json).map_err(|e| Fail(ZamenStatus::Internal, e.to_string()))?;
        write_out(out, s.into_raw(), "out")
    })
}

/// Amenability constant of the centre of the group algebra.
///
/// # Safety
/// `t` must be a live table handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zamen_am_constant(t: *const ZamenTable, out: *mut ZamenAm) -> ZamenStatus {
    guard(|| {
        let am = am_constant(&handle(t, "table")?.table);
        let r = am.snapped;
        let value = ZamenAm {
            value: am.value,
            snapped: r.is_some(),
            numer: r.map_or(0, |r| *r.numer()),
            denom: r.map_or(0, |r| *r.denom()),
        };
        write_out(out, value, "out")
    })
}

/// Hilbert-Schmidt lower bound for the amenability constant.
///
/// # Safety
/// `t` must be a live table handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zamen_hs_lower_bound(t: *const ZamenTable, out: *mut f64) -> ZamenStatus {
    guard(|| write_out(out, hs_lower_bound(&handle(t, "table")?.table), "out"))
}

/// Checks the table-derived diagonal against exact class-sum arithmetic.
/// `t` must have been computed from `g`.
///
/// # Safety
/// `g` and `t` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zamen_verify_diagonal(
    g: *const ZamenGroup,
    t: *const ZamenTable,
    out: *mut ZamenDiagonalReport,
) -> ZamenStatus {
    guard(|| {
        let g = handle(g, "group")?;
        let t = &handle(t, "table")?.table;
        if t.group_hash() != g.group.content_hash() {
            return Err(Fail(ZamenStatus::Mismatch, "table belongs to another group".into()));
        }
        let algebra = ClassAlgebra::new(&g.group, &g.cs);
        let rep = verify_diagonal(&algebra, t, &diagonal(t))?;
        let value = ZamenDiagonalReport {
            module_residual: rep.module_residual,
            multiplication_residual: rep.multiplication_residual,
            passed: rep.passed,
        };
        write_out(out, value, "out")
    })
}

/// Exact check of the `T ⋊ Z₂` central measure on all pairs from
/// `{1, σ, π_1..π_n}`; writes the number of failing pairs.
///
/// # Safety
/// `failures` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zamen_verify_tz2(n: u32, failures: *mut usize) -> ZamenStatus {
    guard(|| write_out(failures, verify_finabexample(n).failures.len(), "failures"))
}
