//! C ABI for `rvq`.
//!
//! Permutations are opaque `RvqGp` handles owned by the caller and released
//! with [`rvq_gp_free`]. Strings returned through `char **` out-parameters
//! are released with [`rvq_string_free`]. Every function returns an
//! [`RvqStatus`]; on failure [`rvq_last_error_message`] describes the error
//! for the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use rvq::components::{canonical_rep, ComponentCatalog};
use rvq::group_analysis::{cycles_closure, harvest_cycles, GroupKind, HarvestConfig};
use rvq::homology::{kz_minus_walk, kz_walk};
use rvq::induction::{apply_arrow, enumerate_class_with, parse_walk, ClassMode, LocalInverse, MoveKind};
use rvq::strata::stratum_signature;
use rvq::{Error, GeneralizedPermutation};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RvqStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed permutation, walk or label.
    Parse = 3,
    /// Induction move not defined.
    MoveUndefined = 4,
    /// A vertex, element or search budget was exhausted.
    Budget = 5,
    /// Output buffer too small; the required length was written.
    BufferTooSmall = 6,
    /// The answer is not known (e.g. component not identified).
    NotFound = 7,
    /// Any other library error.
    Failed = 8,
    /// A panic was caught at the boundary.
    Panic = 9,
}

/// Opaque generalized permutation.
pub struct RvqGp(GeneralizedPermutation);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> RvqStatus {
    match e {
        Error::MalformedText(_)
        | Error::LetterCountError { .. }
        | Error::AlphabetTooLarge(_)
        | Error::AlphabetTooSmall(_)
        | Error::UnknownLetter(_)
        | Error::BadWalkStep(_)
        | Error::UnknownLabel(_)
        | Error::OutOfRange(_) => RvqStatus::Parse,
        Error::MoveUndefined { .. } | Error::ReverseArrowMissing { .. } | Error::ReverseArrowAmbiguous { .. } => {
            RvqStatus::MoveUndefined
        }
        Error::ClassBudgetExceeded(_) | Error::BudgetExceeded { .. } => RvqStatus::Budget,
        _ => RvqStatus::Failed,
    }
}

fn guard(f: impl FnOnce() -> Result<(), RvqStatus>) -> RvqStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            RvqStatus::Ok
        }
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("panic in rvq");
            RvqStatus::Panic
        }
    }
}

fn lib<T>(r: rvq::Result<T>) -> Result<T, RvqStatus> {
    r.map_err(|e| {
        set_error(&e.to_string());
        status_of(&e)
    })
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, RvqStatus> {
    if s.is_null() {
        set_error("null string argument");
        return Err(RvqStatus::NullPointer);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("string argument is not UTF-8");
        RvqStatus::InvalidUtf8
    })
}

unsafe fn read_gp<'a>(gp: *const RvqGp) -> Result<&'a GeneralizedPermutation, RvqStatus> {
    gp.as_ref().map(|g| &g.0).ok_or_else(|| {
        set_error("null permutation handle");
        RvqStatus::NullPointer
    })
}

unsafe fn write_out<T>(out: *mut T, v: T) -> Result<(), RvqStatus> {
    if out.is_null() {
        set_error("null output pointer");
        return Err(RvqStatus::NullPointer);
    }
    *out = v;
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: &str) -> Result<(), RvqStatus> {
    let c = CString::new(s).map_err(|_| RvqStatus::Failed)?;
    write_out(out, c.into_raw())
}

/// Message of the last failed call on this thread (empty after success).
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn rvq_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses `"1 2 3 A A 4 / 4 3 B B 2 1"` or a representative label such as
/// `"tau_zorich(3)"`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rvq_gp_parse(text: *const c_char, out: *mut *mut RvqGp) -> RvqStatus {
    guard(|| {
        let s = read_str(text)?;
        let g = if s.contains('/') { lib(s.parse())? } else { lib(canonical_rep(s))? };
        write_out(out, Box::into_raw(Box::new(RvqGp(g))))
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `gp` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn rvq_gp_free(gp: *mut RvqGp) {
    if !gp.is_null() {
        drop(Box::from_raw(gp));
    }
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn rvq_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Canonical one-line text of a permutation.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn rvq_gp_to_string(gp: *const RvqGp, out: *mut *mut c_char) -> RvqStatus {
    guard(|| write_string(out, &read_gp(gp)?.to_string()))
}

/// Number of letters.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn rvq_gp_letters(gp: *const RvqGp, out: *mut usize) -> RvqStatus {
    guard(|| write_out(out, read_gp(gp)?.d()))
}

/// Irreducibility, and whether duplicates occur in both rows or in none.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn rvq_gp_check(gp: *const RvqGp, irreducible: *mut bool, convention: *mut bool) -> RvqStatus {
    guard(|| {
        let g = read_gp(gp)?;
        write_out(irreducible, g.is_irreducible())?;
        write_out(convention, g.satisfies_convention())
    })
}

/// Stratum label such as `"Q(6,-1,-1)"` and genus.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn rvq_gp_stratum(gp: *const RvqGp, label: *mut *mut c_char, genus: *mut i64) -> RvqStatus {
    guard(|| {
        let s = lib(stratum_signature(read_gp(gp)?))?;
        write_out(genus, s.genus)?;
        write_string(label, &s.to_string())
    })
}

/// Applies a top (`bottom = false`) or bottom move, returning a new handle.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn rvq_gp_move(gp: *const RvqGp, bottom: bool, out: *mut *mut RvqGp) -> RvqStatus {
    guard(|| {
        let kind = if bottom { MoveKind::Bottom } else { MoveKind::Top };
        let a = lib(apply_arrow(read_gp(gp)?, kind))?;
        write_out(out, Box::into_raw(Box::new(RvqGp(a.target))))
    })
}

/// Number of vertices of the Rauzy class (`reduced`: up to relabeling).
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn rvq_class_size(gp: *const RvqGp, reduced: bool, budget: usize, out: *mut usize) -> RvqStatus {
    guard(|| {
        let mode = if reduced { ClassMode::Reduced } else { ClassMode::Labeled };
        let c = lib(enumerate_class_with(read_gp(gp)?, mode, budget))?;
        write_out(out, c.len())
    })
}

/// Cocycle matrix of a walk over `t`, `b`, `T`, `B`, row-major into
/// `buf` (capacity `cap` entries). `dim` receives the side length; when
/// `dim * dim > cap` nothing is written and `BufferTooSmall` is returned.
///
/// # Safety
/// Pointers must be valid; `buf` must hold `cap` entries.
#[no_mangle]
pub unsafe extern "C" fn rvq_cocycle(
    gp: *const RvqGp,
    walk: *const c_char,
    minus: bool,
    buf: *mut i64,
    cap: usize,
    dim: *mut usize,
) -> RvqStatus {
    guard(|| {
        let g = read_gp(gp)?;
        let steps = lib(parse_walk(read_str(walk)?))?;
        let c = if minus {
            lib(kz_minus_walk(g, &steps, Some(&LocalInverse)))?
        } else {
            lib(kz_walk(g, &steps, Some(&LocalInverse)))?
        };
        let n = c.matrix.rows();
        write_out(dim, n)?;
        if n * n > cap {
            set_error(&format!("buffer holds {cap} entries, {} needed", n * n));
            return Err(RvqStatus::BufferTooSmall);
        }
        let rows = c.matrix.to_i64_rows().ok_or_else(|| {
            set_error("matrix entry exceeds 64 bits");
            RvqStatus::Failed
        })?;
        if n > 0 && buf.is_null() {
            set_error("null output buffer");
            return Err(RvqStatus::NullPointer);
        }
        for (i, v) in rows.into_iter().flatten().enumerate() {
            *buf.add(i) = v;
        }
        Ok(())
    })
}

/// Component label such as `"H(4)^odd"`. `NotFound` when no certificate
/// is available. `cache_dir` may be null (no persistence).
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn rvq_identify(gp: *const RvqGp, cache_dir: *const c_char, label: *mut *mut c_char) -> RvqStatus {
    guard(|| {
        let dir = if cache_dir.is_null() { None } else { Some(read_str(cache_dir)?.into()) };
        let catalog = ComponentCatalog::new(dir, rvq::induction::DEFAULT_CLASS_BUDGET);
        match lib(catalog.identify(read_gp(gp)?))? {
            Some(id) => write_string(label, &id.label),
            None => {
                set_error("component not determined");
                Err(RvqStatus::NotFound)
            }
        }
    })
}

/// Order and index in `Sp(2g, F_p)` of the group generated by `cycles`
/// random cycles (length at most `max_len`) modulo `p`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn rvq_group_mod_p(
    gp: *const RvqGp,
    p: u64,
    minus: bool,
    cycles: usize,
    max_len: usize,
    seed: u64,
    order: *mut u64,
    index: *mut u64,
) -> RvqStatus {
    guard(|| {
        let g = read_gp(gp)?;
        let kind = if minus { GroupKind::Minus } else { GroupKind::Plus };
        let class = lib(enumerate_class_with(g, ClassMode::Reduced, rvq::induction::DEFAULT_CLASS_BUDGET))?;
        let cfg = HarvestConfig { cycles, max_len, seed, ..Default::default() };
        let cs = lib(harvest_cycles(g, &class, kind, &cfg))?;
        let r = lib(cycles_closure(g, &cs, kind, &class, p, 10_000_000))?;
        let narrow = |x: u128| {
            u64::try_from(x).map_err(|_| {
                set_error("value exceeds 64 bits");
                RvqStatus::Failed
            })
        };
        write_out(order, narrow(r.order)?)?;
        write_out(index, narrow(r.index)?)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    #[test]
    fn null_handles() {
        let mut n = 0usize;
        assert_eq!(unsafe { rvq_gp_letters(ptr::null(), &mut n) }, RvqStatus::NullPointer);
        let msg = unsafe { CStr::from_ptr(rvq_last_error_message()) };
        assert!(msg.to_str().unwrap().contains("null"));
    }
}
