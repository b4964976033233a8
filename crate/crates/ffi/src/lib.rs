//! C ABI over `ultrapart`.
//!
//! Values cross the boundary as opaque heap handles (`UpLattice`,
//! `UpEpPartition`, `UpScPartition`) released by the matching `*_free`.
//! Every fallible call returns an [`UpStatus`]; on anything but
//! `UP_STATUS_OK` the thread-local message from
//! [`up_last_error_message`] describes the failure. Strings handed out by
//! the library are released with [`up_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ultrapart::partition::{witness_coarse_orthogonal, witness_fine_orthogonal};
use ultrapart::stone::framework_report;
use ultrapart::{
    BottomOrPartition, Complementation, EpPartition, Error, Format, ScMeet, ScPartition,
    Semilattice,
};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Syntax = 3,
    /// Well-formed input that violates a structural requirement
    /// (cycle, missing meet, finite block, zero run, ...).
    InvalidStructure = 4,
    OutOfRange = 5,
    /// The fine join has a finite block, so no partition is returned.
    Bottom = 6,
    /// The coarse meet leaves the column class; no partition is returned.
    FiniteRemainder = 7,
    /// `leq_star` found no threshold.
    Absent = 8,
    Panic = 9,
}

pub struct UpLattice(Semilattice);
pub struct UpEpPartition(EpPartition);
pub struct UpScPartition(ScPartition);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(e: &Error) -> UpStatus {
    match e {
        Error::Syntax { .. } => UpStatus::Syntax,
        Error::IndexOutOfRange { .. } | Error::SizeLimit(_) => UpStatus::OutOfRange,
        _ => UpStatus::InvalidStructure,
    }
}

fn fail(status: UpStatus, msg: impl Into<String>) -> UpStatus {
    set_error(msg);
    status
}

fn from_err(e: Error) -> UpStatus {
    fail(status_of(&e), e.to_string())
}

/// Runs `f`, converting panics to `UP_STATUS_PANIC`.
fn guard(f: impl FnOnce() -> UpStatus) -> UpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(UpStatus::Panic, "internal panic"),
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, UpStatus> {
    if s.is_null() {
        return Err(fail(UpStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(UpStatus::InvalidUtf8, "argument is not valid UTF-8"))
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, UpStatus> {
    p.as_ref()
        .ok_or_else(|| fail(UpStatus::NullPointer, "null handle"))
}

unsafe fn emit<T>(out: *mut *mut T, value: T) -> UpStatus {
    *out = Box::into_raw(Box::new(value));
    UpStatus::Ok
}

unsafe fn emit_string(out: *mut *mut c_char, s: String) -> UpStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            UpStatus::Ok
        }
        Err(_) => fail(UpStatus::Panic, "string contains NUL"),
    }
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

macro_rules! check_out {
    ($out:expr) => {
        if $out.is_null() {
            return fail(UpStatus::NullPointer, "null output pointer");
        }
    };
}

/// Message for the most recent failure on this thread, or NULL. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn up_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn up_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

// ---- semilattices ----

/// Parses a `semilattice v1` description.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn up_lattice_parse(
    text: *const c_char,
    out: *mut *mut UpLattice,
) -> UpStatus {
    guard(|| {
        check_out!(out);
        let text = tri!(read_str(text));
        match Semilattice::parse(text) {
            Ok(l) => emit(out, UpLattice(l)),
            Err(e) => from_err(e),
        }
    })
}

/// # Safety
/// `l` must be NULL or a live handle from `up_lattice_parse`.
#[no_mangle]
pub unsafe extern "C" fn up_lattice_free(l: *mut UpLattice) {
    if !l.is_null() {
        drop(Box::from_raw(l));
    }
}

/// Number of elements, or 0 for a NULL handle.
///
/// # Safety
/// `l` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn up_lattice_len(l: *const UpLattice) -> usize {
    l.as_ref().map_or(0, |l| l.0.len())
}

/// Writes the number of ultrafilters (atoms).
///
/// # Safety
/// `l` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn up_lattice_ultrafilter_count(
    l: *const UpLattice,
    out: *mut usize,
) -> UpStatus {
    guard(|| {
        check_out!(out);
        let l = tri!(deref(l));
        *out = l.0.atoms().len();
        UpStatus::Ok
    })
}

/// # Safety
/// `l` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn up_lattice_is_complemented(
    l: *const UpLattice,
    out: *mut bool,
) -> UpStatus {
    guard(|| {
        check_out!(out);
        let l = tri!(deref(l));
        *out = matches!(l.0.complementation(), Complementation::Present(_));
        UpStatus::Ok
    })
}

/// Renders the framework report as tab-separated lines and writes whether
/// every item passed.
///
/// # Safety
/// `l` must be a live handle; `out` and `passed` must be writable. The
/// string is released with `up_string_free`.
#[no_mangle]
pub unsafe extern "C" fn up_lattice_framework_report(
    l: *const UpLattice,
    out: *mut *mut c_char,
    passed: *mut bool,
) -> UpStatus {
    guard(|| {
        check_out!(out);
        check_out!(passed);
        let l = tri!(deref(l));
        let r = framework_report(&l.0);
        *passed = r.passed();
        emit_string(out, r.render(Format::Tsv))
    })
}

// ---- partitions with finitely many blocks ----

/// Parses an `ep;prefix=…;period=…` literal.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn up_ep_parse(
    text: *const c_char,
    out: *mut *mut UpEpPartition,
) -> UpStatus {
    guard(|| {
        check_out!(out);
        let text = tri!(read_str(text));
        match text.parse::<EpPartition>() {
            Ok(p) => emit(out, UpEpPartition(p)),
            Err(e) => from_err(e),
        }
    })
}

/// # Safety
/// `p` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn up_ep_free(p: *mut UpEpPartition) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Canonical literal of `p`.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn up_ep_to_string(
    p: *const UpEpPartition,
    out: *mut *mut c_char,
) -> UpStatus {
    guard(|| {
        check_out!(out);
        let p = tri!(deref(p));
        emit_string(out, p.0.to_string())
    })
}

/// Number of blocks of `p`, or 0 for a NULL handle.
///
/// # Safety
/// `p` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn up_ep_block_count(p: *const UpEpPartition) -> usize {
    p.as_ref().map_or(0, |p| p.0.block_count())
}

/// Finest common coarsening.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn up_ep_coarse_meet(
    a: *const UpEpPartition,
    b: *const UpEpPartition,
    out: *mut *mut UpEpPartition,
) -> UpStatus {
    guard(|| {
        check_out!(out);
        let (a, b) = (tri!(deref(a)), tri!(deref(b)));
        emit(out, UpEpPartition(a.0.coarse_meet(&b.0)))
    })
}

/// Coarsest common refinement; `UP_STATUS_BOTTOM` if it has a finite block.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn up_ep_fine_join(
    a: *const UpEpPartition,
    b: *const UpEpPartition,
    out: *mut *mut UpEpPartition,
) -> UpStatus {
    guard(|| {
        check_out!(out);
        let (a, b) = (tri!(deref(a)), tri!(deref(b)));
        match a.0.fine_join(&b.0) {
            BottomOrPartition::Partition(p) => emit(out, UpEpPartition(p)),
            BottomOrPartition::Bottom => {
                *out = ptr::null_mut();
                fail(UpStatus::Bottom, "join has a finite block")
            }
        }
    })
}

/// Writes whether `a` is coarser than `b`.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn up_ep_is_coarser(
    a: *const UpEpPartition,
    b: *const UpEpPartition,
    out: *mut bool,
) -> UpStatus {
    guard(|| {
        check_out!(out);
        let (a, b) = (tri!(deref(a)), tri!(deref(b)));
        *out = a.0.is_coarser(&b.0);
        UpStatus::Ok
    })
}

/// Writes whether the coarse meet of `a` and `b` is the trivial partition.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn up_ep_orth_coarse(
    a: *const UpEpPartition,
    b: *const UpEpPartition,
    out: *mut bool,
) -> UpStatus {
    guard(|| {
        check_out!(out);
        let (a, b) = (tri!(deref(a)), tri!(deref(b)));
        *out = a.0.orth_coarse(&b.0);
        UpStatus::Ok
    })
}

/// Writes whether the fine join of `a` and `b` has a finite block.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn up_ep_orth_fine(
    a: *const UpEpPartition,
    b: *const UpEpPartition,
    out: *mut bool,
) -> UpStatus {
    guard(|| {
        check_out!(out);
        let (a, b) = (tri!(deref(a)), tri!(deref(b)));
        *out = a.0.orth_fine(&b.0);
        UpStatus::Ok
    })
}

/// Glues every block meeting `{0, …, n-1}`; `n` must be at least 1.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn up_ep_glue_below(
    p: *const UpEpPartition,
    n: usize,
    out: *mut *mut UpEpPartition,
) -> UpStatus {
    guard(|| {
        check_out!(out);
        let p = tri!(deref(p));
        match p.0.glue_below(n) {
            Ok(g) => emit(out, UpEpPartition(g)),
            Err(e) => from_err(e),
        }
    })
}

unsafe fn family(
    parts: *const *const UpEpPartition,
    len: usize,
) -> Result<Vec<EpPartition>, UpStatus> {
    if len == 0 {
        return Ok(Vec::new());
    }
    if parts.is_null() {
        return Err(fail(UpStatus::NullPointer, "null family"));
    }
    std::slice::from_raw_parts(parts, len)
        .iter()
        .map(|&p| deref(p).map(|p| p.0.clone()))
        .collect()
}

/// A 2-block partition coarse-orthogonal to every member of the family.
///
/// # Safety
/// `parts` must point to `len` live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn up_ep_witness_coarse(
    parts: *const *const UpEpPartition,
    len: usize,
    out: *mut *mut UpEpPartition,
) -> UpStatus {
    guard(|| {
        check_out!(out);
        let xs = tri!(family(parts, len));
        match witness_coarse_orthogonal(&xs) {
            Ok(y) => emit(out, UpEpPartition(y)),
            Err(e) => from_err(e),
        }
    })
}

/// A 2-block partition fine-orthogonal to every member of the family.
/// Requires a nonempty family of non-trivial partitions.
///
/// # Safety
/// `parts` must point to `len` live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn up_ep_witness_fine(
    parts: *const *const UpEpPartition,
    len: usize,
    out: *mut *mut UpEpPartition,
) -> UpStatus {
    guard(|| {
        check_out!(out);
        let xs = tri!(family(parts, len));
        match witness_fine_orthogonal(&xs) {
            Ok(w) => emit(out, UpEpPartition(w.witness)),
            Err(e) => from_err(e),
        }
    })
}

// ---- column partitions ----

/// Parses an `sc;runs=…;periodic=…` literal.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn up_sc_parse(
    text: *const c_char,
    out: *mut *mut UpScPartition,
) -> UpStatus {
    guard(|| {
        check_out!(out);
        let text = tri!(read_str(text));
        match text.parse::<ScPartition>() {
            Ok(p) => emit(out, UpScPartition(p)),
            Err(e) => from_err(e),
        }
    })
}

/// # Safety
/// `p` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn up_sc_free(p: *mut UpScPartition) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Canonical literal of `p`.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn up_sc_to_string(
    p: *const UpScPartition,
    out: *mut *mut c_char,
) -> UpStatus {
    guard(|| {
        check_out!(out);
        let p = tri!(deref(p));
        emit_string(out, p.0.to_string())
    })
}

/// Finest common coarsening; `UP_STATUS_FINITE_REMAINDER` if only finitely
/// many cuts are shared.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn up_sc_coarse_meet(
    a: *const UpScPartition,
    b: *const UpScPartition,
    out: *mut *mut UpScPartition,
) -> UpStatus {
    guard(|| {
        check_out!(out);
        let (a, b) = (tri!(deref(a)), tri!(deref(b)));
        match a.0.coarse_meet(&b.0) {
            ScMeet::Partition(p) => emit(out, UpScPartition(p)),
            m @ ScMeet::FiniteRemainder(_) => {
                *out = ptr::null_mut();
                fail(UpStatus::FiniteRemainder, m.to_string())
            }
        }
    })
}

/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn up_sc_is_coarser(
    a: *const UpScPartition,
    b: *const UpScPartition,
    out: *mut bool,
) -> UpStatus {
    guard(|| {
        check_out!(out);
        let (a, b) = (tri!(deref(a)), tri!(deref(b)));
        *out = a.0.is_coarser(&b.0);
        UpStatus::Ok
    })
}

/// Glues every group touching `{0, …, n-1}`.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn up_sc_glue_below(
    p: *const UpScPartition,
    n: u64,
    out: *mut *mut UpScPartition,
) -> UpStatus {
    guard(|| {
        check_out!(out);
        let p = tri!(deref(p));
        emit(out, UpScPartition(p.0.glue_below(n)))
    })
}

/// Least `n` with `glue_below(a, n)` coarser than `b`; `UP_STATUS_ABSENT`
/// if there is none.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn up_sc_leq_star(
    a: *const UpScPartition,
    b: *const UpScPartition,
    out: *mut u64,
) -> UpStatus {
    guard(|| {
        check_out!(out);
        let (a, b) = (tri!(deref(a)), tri!(deref(b)));
        match a.0.leq_star(&b.0) {
            Some(n) => {
                *out = n;
                UpStatus::Ok
            }
            None => fail(UpStatus::Absent, "a missing cut recurs periodically"),
        }
    })
}
