//! C ABI for `zcap-core`.
//!
//! Pairs live behind an opaque [`ZcapPair`] handle created by one of the
//! `zcap_pair_*` constructors and released with [`zcap_pair_free`]. Every
//! fallible call returns a [`ZcapStatus`]; on failure the message is available
//! from [`zcap_last_error_message`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use zcap_core::arrays::{max_zcz_rect, surface, zcap_check, RootArray};
use zcap_core::constructions::{lemma6_base, theorem2_direct_with, Theorem2Params};
use zcap_core::{gdj_pair, Companion, Error, Permutation};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZcapStatus {
    Ok = 0,
    InvalidArgument = 1,
    NullPointer = 2,
    VerificationFailed = 3,
    BufferTooSmall = 4,
    Panic = 5,
}

/// Which array of a pair.
pub const ZCAP_FIRST: u32 = 0;
pub const ZCAP_SECOND: u32 = 1;

/// Two arrays of equal shape over a common modulus. 1-D pairs are `1 × L`.
pub struct ZcapPair {
    s: RootArray,
    t: RootArray,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

struct Failure(ZcapStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::VerificationFailed(_) => ZcapStatus::VerificationFailed,
            _ => ZcapStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(ZcapStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> ZcapStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ZcapStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            ZcapStatus::Panic
        }
    }
}

/// Reads `len` items, treating a null pointer with `len == 0` as empty.
unsafe fn read_slice<'a, T>(data: *const T, len: usize, what: &str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if data.is_null() {
        return Err(null(what));
    }
    Ok(slice::from_raw_parts(data, len))
}

unsafe fn store(out: *mut *mut ZcapPair, pair: ZcapPair) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(pair));
    Ok(())
}

unsafe fn pair_ref<'a>(pair: *const ZcapPair) -> Result<&'a ZcapPair, Failure> {
    pair.as_ref().ok_or_else(|| null("pair"))
}

fn permutation(images: &[usize], m: usize) -> Result<Permutation, Failure> {
    if images.is_empty() {
        Ok(Permutation::identity(m))
    } else {
        Ok(Permutation::new(images.to_vec())?)
    }
}

fn coefficients(coeffs: &[i64], m: usize) -> Vec<i64> {
    if coeffs.is_empty() {
        vec![0; m + 1]
    } else {
        coeffs.to_vec()
    }
}

/// Golay pair of length `2^m` as a `1 × 2^m` pair. An empty `perm` means the
/// identity and empty `coeffs` means all zero; otherwise `coeffs` holds
/// `v_0..v_m`.
///
/// # Safety
/// `perm` and `coeffs` must point to `perm_len` and `coeffs_len` readable
/// items; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zcap_pair_gdj(
    q: u32,
    m: usize,
    perm: *const usize,
    perm_len: usize,
    coeffs: *const i64,
    coeffs_len: usize,
    out: *mut *mut ZcapPair,
) -> ZcapStatus {
    guard(|| {
        let perm = permutation(read_slice(perm, perm_len, "perm")?, m)?;
        let coeffs = coefficients(read_slice(coeffs, coeffs_len, "coeffs")?, m);
        let (a, b) = gdj_pair(q, m, &perm, &coeffs, Companion::First)?;
        let s = RootArray::new(q, 1, a.len(), a.values().to_vec())?;
        let t = RootArray::new(q, 1, b.len(), b.values().to_vec())?;
        store(out, ZcapPair { s, t })
    })
}

/// The binary `(14, 12)` base pair as a `1 × 14` pair.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zcap_pair_lemma6(out: *mut *mut ZcapPair) -> ZcapStatus {
    guard(|| {
        let (a, b) = lemma6_base();
        let s = RootArray::new(2, 1, 14, a.values().to_vec())?;
        let t = RootArray::new(2, 1, 14, b.values().to_vec())?;
        store(out, ZcapPair { s, t })
    })
}

/// `(14·2^n) × 2^(m-n)` array pair; see [`zcap_pair_gdj`] for `perm` and
/// `coeffs`. With `verify` set, a failed self-check returns
/// `VerificationFailed`.
///
/// # Safety
/// As for [`zcap_pair_gdj`].
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn zcap_pair_theorem2(
    q: u32,
    m: usize,
    n: usize,
    perm: *const usize,
    perm_len: usize,
    coeffs: *const i64,
    coeffs_len: usize,
    verify: bool,
    out: *mut *mut ZcapPair,
) -> ZcapStatus {
    guard(|| {
        let perm = permutation(read_slice(perm, perm_len, "perm")?, m)?;
        let coeffs = coefficients(read_slice(coeffs, coeffs_len, "coeffs")?, m);
        let params = Theorem2Params::new(q, m, n, perm, coeffs)?;
        let out_pair = theorem2_direct_with(&params, verify)?;
        let s = RootArray::lift(&out_pair.s, q)?;
        let t = RootArray::lift(&out_pair.t, q)?;
        store(out, ZcapPair { s, t })
    })
}

/// Wraps two row-major `rows × cols` exponent arrays over `modulus`.
///
/// # Safety
/// `first` and `second` must each point to `rows * cols` readable values.
#[no_mangle]
pub unsafe extern "C" fn zcap_pair_from_exponents(
    modulus: u32,
    rows: usize,
    cols: usize,
    first: *const u32,
    second: *const u32,
    out: *mut *mut ZcapPair,
) -> ZcapStatus {
    guard(|| {
        let len = rows
            .checked_mul(cols)
            .ok_or_else(|| Failure(ZcapStatus::InvalidArgument, "rows * cols overflows".into()))?;
        if len == 0 {
            return Err(Failure(ZcapStatus::InvalidArgument, "empty array".into()));
        }
        let s = RootArray::new(
            modulus,
            rows,
            cols,
            read_slice(first, len, "first")?.to_vec(),
        )?;
        let t = RootArray::new(
            modulus,
            rows,
            cols,
            read_slice(second, len, "second")?.to_vec(),
        )?;
        store(out, ZcapPair { s, t })
    })
}

/// # Safety
/// `pair` must come from a constructor; the out pointers may be null.
#[no_mangle]
pub unsafe extern "C" fn zcap_pair_dims(
    pair: *const ZcapPair,
    rows: *mut usize,
    cols: *mut usize,
    modulus: *mut u32,
) -> ZcapStatus {
    guard(|| {
        let p = pair_ref(pair)?;
        if !rows.is_null() {
            *rows = p.s.rows();
        }
        if !cols.is_null() {
            *cols = p.s.cols();
        }
        if !modulus.is_null() {
            *modulus = p.s.modulus();
        }
        Ok(())
    })
}

/// Copies the row-major exponents of [`ZCAP_FIRST`] or [`ZCAP_SECOND`].
///
/// # Safety
/// `buf` must have room for `len` values.
#[no_mangle]
pub unsafe extern "C" fn zcap_pair_copy_exponents(
    pair: *const ZcapPair,
    which: u32,
    buf: *mut u32,
    len: usize,
) -> ZcapStatus {
    guard(|| {
        let p = pair_ref(pair)?;
        let array = match which {
            ZCAP_FIRST => &p.s,
            ZCAP_SECOND => &p.t,
            other => {
                return Err(Failure(
                    ZcapStatus::InvalidArgument,
                    format!("which = {other}"),
                ))
            }
        };
        let data = array.exponents();
        if len < data.len() {
            return Err(Failure(
                ZcapStatus::BufferTooSmall,
                format!("need {} values, buffer holds {len}", data.len()),
            ));
        }
        if buf.is_null() {
            return Err(null("buf"));
        }
        ptr::copy_nonoverlapping(data.as_ptr(), buf, data.len());
        Ok(())
    })
}

/// Exact check of the zero-correlation rectangle `|u1| < z1`, `|u2| < z2`.
///
/// # Safety
/// `verified` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zcap_pair_check(
    pair: *const ZcapPair,
    z1: usize,
    z2: usize,
    verified: *mut bool,
) -> ZcapStatus {
    guard(|| {
        let p = pair_ref(pair)?;
        if verified.is_null() {
            return Err(null("verified"));
        }
        *verified = zcap_check(&p.s, &p.t, z1, z2)?.verified;
        Ok(())
    })
}

/// Writes the maximal rectangles as `(z1, z2)` pairs into `rects`
/// (`2 * capacity` values) and their number into `count`. The count is
/// written even when the buffer is too small.
///
/// # Safety
/// `rects` must have room for `2 * capacity` values; `count` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zcap_pair_max_rect(
    pair: *const ZcapPair,
    rects: *mut usize,
    capacity: usize,
    count: *mut usize,
) -> ZcapStatus {
    guard(|| {
        let p = pair_ref(pair)?;
        if count.is_null() {
            return Err(null("count"));
        }
        let frontier = max_zcz_rect(&p.s, &p.t)?;
        *count = frontier.rectangles.len();
        if capacity < frontier.rectangles.len() {
            return Err(Failure(
                ZcapStatus::BufferTooSmall,
                format!(
                    "{} rectangles, capacity {capacity}",
                    frontier.rectangles.len()
                ),
            ));
        }
        if rects.is_null() && !frontier.rectangles.is_empty() {
            return Err(null("rects"));
        }
        for (k, &(z1, z2)) in frontier.rectangles.iter().enumerate() {
            *rects.add(2 * k) = z1;
            *rects.add(2 * k + 1) = z2;
        }
        Ok(())
    })
}

/// Fills `buf` with the `(2·rows-1) × (2·cols-1)` grid of autocorrelation
/// sum magnitudes, row `u1 + rows - 1`, column `u2 + cols - 1`.
///
/// # Safety
/// `buf` must have room for `len` values.
#[no_mangle]
pub unsafe extern "C" fn zcap_pair_surface(
    pair: *const ZcapPair,
    buf: *mut f64,
    len: usize,
) -> ZcapStatus {
    guard(|| {
        let p = pair_ref(pair)?;
        let need = (2 * p.s.rows() - 1) * (2 * p.s.cols() - 1);
        if len < need {
            return Err(Failure(
                ZcapStatus::BufferTooSmall,
                format!("need {need} values, buffer holds {len}"),
            ));
        }
        if buf.is_null() {
            return Err(null("buf"));
        }
        let grid = surface(&p.s, &p.t)?;
        for (k, (_, _, m)) in grid.iter().enumerate() {
            *buf.add(k) = m;
        }
        Ok(())
    })
}

/// Releases a pair; null is ignored.
///
/// # Safety
/// `pair` must come from a constructor and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn zcap_pair_free(pair: *mut ZcapPair) {
    if !pair.is_null() {
        drop(Box::from_raw(pair));
    }
}

/// Message of the last failure on this thread, or null. Valid until the next
/// failing call on the same thread.
#[no_mangle]
pub extern "C" fn zcap_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
