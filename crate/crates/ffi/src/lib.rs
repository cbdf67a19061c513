//! C interface. Systems and alternating groups are opaque handles; every
//! fallible call returns a [`CoxaltStatus`] and writes its result through an
//! out pointer. Strings handed out must be released with [`coxalt_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use coxalt::genfun::{gf_enumerated, Statistic};
use coxalt::{AltGroup, AltWord, Caps, CoxeterSystem, Error};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoxaltStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    CapExceeded = 4,
    InfiniteBond = 5,
    EvenlyLacedRequired = 6,
    EvenLeafRequired = 7,
    InvalidArgument = 8,
    Overflow = 9,
    Internal = 10,
}

impl From<&Error> for CoxaltStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Parse(_) => Self::Parse,
            Error::CapExceeded { .. } => Self::CapExceeded,
            Error::InfiniteBond { .. } | Error::InfiniteLeafBond => Self::InfiniteBond,
            Error::EvenlyLacedRequired => Self::EvenlyLacedRequired,
            Error::EvenLeafRequired => Self::EvenLeafRequired,
            Error::Overflow(_) => Self::Overflow,
            _ => Self::InvalidArgument,
        }
    }
}

/// Opaque Coxeter system.
pub struct CoxaltSystem(CoxeterSystem);

/// Opaque alternating subgroup of a finite Coxeter group.
pub struct CoxaltGroup(AltGroup);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(e: Error) -> CoxaltStatus {
    let status = CoxaltStatus::from(&e);
    set_error(e.to_string());
    status
}

fn guard(f: impl FnOnce() -> CoxaltStatus) -> CoxaltStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(msg);
            CoxaltStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, CoxaltStatus> {
    if s.is_null() {
        return Err(CoxaltStatus::NullArgument);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("string is not valid UTF-8".into());
        CoxaltStatus::InvalidUtf8
    })
}

fn hand_out(s: String, out: *mut *mut c_char) -> CoxaltStatus {
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            CoxaltStatus::Ok
        }
        Err(_) => CoxaltStatus::Internal,
    }
}

/// Message for the last failing call on this thread, or null. Owned by the
/// library; valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn coxalt_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses a system in the text format (`n=<rank>` then `m i j <order>` lines).
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn coxalt_system_parse(
    text: *const c_char,
    out: *mut *mut CoxaltSystem,
) -> CoxaltStatus {
    if out.is_null() {
        return CoxaltStatus::NullArgument;
    }
    guard(|| {
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match CoxeterSystem::parse(text) {
            Ok(sys) => {
                *out = Box::into_raw(Box::new(CoxaltSystem(sys)));
                CoxaltStatus::Ok
            }
            Err(e) => fail(e.into()),
        }
    })
}

/// Number of generators including `s0`; 0 for null.
///
/// # Safety
/// `sys` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn coxalt_system_rank(sys: *const CoxaltSystem) -> usize {
    sys.as_ref().map_or(0, |s| s.0.rank())
}

/// # Safety
/// `sys` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn coxalt_system_free(sys: *mut CoxaltSystem) {
    if !sys.is_null() {
        drop(Box::from_raw(sys));
    }
}

/// Enumerates `W+`. Honors `COXALT_CAP`.
///
/// # Safety
/// `sys` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn coxalt_group_new(
    sys: *const CoxaltSystem,
    out: *mut *mut CoxaltGroup,
) -> CoxaltStatus {
    let Some(sys) = sys.as_ref() else {
        return CoxaltStatus::NullArgument;
    };
    if out.is_null() {
        return CoxaltStatus::NullArgument;
    }
    guard(
        || match Caps::from_env().and_then(|c| AltGroup::with_caps(&sys.0, c)) {
            Ok(a) => {
                *out = Box::into_raw(Box::new(CoxaltGroup(a)));
                CoxaltStatus::Ok
            }
            Err(e) => fail(e),
        },
    )
}

/// # Safety
/// `g` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn coxalt_group_free(g: *mut CoxaltGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// `|W+|`; 0 for null.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn coxalt_group_order(g: *const CoxaltGroup) -> usize {
    g.as_ref().map_or(0, |g| g.0.order())
}

/// Number of generators `r_1..r_n`; 0 for null.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn coxalt_group_rank(g: *const CoxaltGroup) -> usize {
    g.as_ref().map_or(0, |g| g.0.rank())
}

/// Length over `R ∪ R^-1` of the element spelled by `word` (`1-21`, `e`, ...).
///
/// # Safety
/// `g` must be a live handle, `word` NUL-terminated and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn coxalt_group_word_length(
    g: *const CoxaltGroup,
    word: *const c_char,
    out: *mut usize,
) -> CoxaltStatus {
    let Some(g) = g.as_ref() else {
        return CoxaltStatus::NullArgument;
    };
    if out.is_null() {
        return CoxaltStatus::NullArgument;
    }
    guard(|| {
        let text = match read_str(word) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let w: AltWord = match text.parse() {
            Ok(w) => w,
            Err(e) => return fail(e),
        };
        if let Some(l) = w.letters().iter().find(|l| l.index > g.0.rank()) {
            return fail(Error::Invalid(format!("letter {l} out of range")));
        }
        *out = g.0.ell(g.0.evaluate(&w));
        CoxaltStatus::Ok
    })
}

/// Shortest lex-smallest word for the element spelled by `word`.
///
/// # Safety
/// As [`coxalt_group_word_length`]; the result must be released with
/// [`coxalt_string_free`].
#[no_mangle]
pub unsafe extern "C" fn coxalt_group_reduce(
    g: *const CoxaltGroup,
    word: *const c_char,
    out: *mut *mut c_char,
) -> CoxaltStatus {
    let Some(g) = g.as_ref() else {
        return CoxaltStatus::NullArgument;
    };
    if out.is_null() {
        return CoxaltStatus::NullArgument;
    }
    guard(|| {
        let text = match read_str(word) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let w: AltWord = match text.parse() {
            Ok(w) => w,
            Err(e) => return fail(e),
        };
        if let Some(l) = w.letters().iter().find(|l| l.index > g.0.rank()) {
            return fail(Error::Invalid(format!("letter {l} out of range")));
        }
        hand_out(g.0.canonical_word(g.0.evaluate(&w)).to_string(), out)
    })
}

/// Generating function of a statistic (`ellR`, `ell0-nu`, ...) as text.
///
/// # Safety
/// `g` must be a live handle, `stat` NUL-terminated and `out` valid. The
/// result must be released with [`coxalt_string_free`].
#[no_mangle]
pub unsafe extern "C" fn coxalt_group_series(
    g: *const CoxaltGroup,
    stat: *const c_char,
    out: *mut *mut c_char,
) -> CoxaltStatus {
    let Some(g) = g.as_ref() else {
        return CoxaltStatus::NullArgument;
    };
    if out.is_null() {
        return CoxaltStatus::NullArgument;
    }
    guard(|| {
        let name = match read_str(stat) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let Some(stat) = Statistic::parse(name) else {
            return fail(Error::Invalid(format!("unknown statistic '{name}'")));
        };
        match gf_enumerated(&g.0, stat) {
            Ok(p) => hand_out(p.to_string(), out),
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn coxalt_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
