//! C ABI for the tilesphere engine: opaque handles, integer status codes,
//! and explicit free functions for every allocation that crosses the
//! boundary.
//!
//! Conventions:
//! - Every function returns a `ts_status`; results come back through `out`
//!   pointers, which are written only on `TS_OK`.
//! - Handles (`ts_classification`, `ts_tiling`) are opaque and owned by the
//!   caller once returned; release them with the matching `_free`.
//! - Strings returned through `char**` are NUL-terminated UTF-8 owned by the
//!   caller; release with `ts_string_free`.

#![allow(non_camel_case_types)]

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use tilesphere::angles::AngleAssignment;
use tilesphere::catalog;
use tilesphere::geometry;
use tilesphere::search::{self, SearchOptions};
use tilesphere::tiling::CompleteTiling;

/// Status codes for every FFI call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ts_status {
    TS_OK = 0,
    /// A required pointer argument was NULL.
    TS_NULL_POINTER = 1,
    /// An argument was outside its documented domain.
    TS_INVALID_ARGUMENT = 2,
    /// No catalog entry with the given id.
    TS_UNKNOWN_ID = 3,
    /// The search hit its node budget before exhausting the space.
    TS_SEARCH_INCOMPLETE = 4,
    /// The metric realization failed at the given angles.
    TS_GEOMETRY_ERROR = 5,
    /// An index was out of range.
    TS_OUT_OF_RANGE = 6,
    /// An internal invariant failed (a bug; never expected).
    TS_INTERNAL_ERROR = 7,
}

use ts_status::*;

/// Opaque classification result handle.
pub struct ts_classification {
    tilings: Vec<CompleteTiling>,
}

/// Opaque tiling handle.
pub struct ts_tiling {
    inner: CompleteTiling,
}

/// Metric realization data returned by value.
#[repr(C)]
#[derive(Clone, Copy)]
pub struct ts_realization {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    /// Polygon edge length (radians).
    pub x: f64,
    /// Quadrilateral edge length (radians); 0 for flat quadrilaterals.
    pub y: f64,
    pub max_vertex_residual: f64,
    pub gauss_bonnet_residual: f64,
    /// 1 when |x − y| is below the degeneracy threshold.
    pub degenerate_xy: i32,
    /// 1 when β + γ = π (zero-excess quadrilateral, y = 0).
    pub flat_quad: i32,
}

fn guarded<F: FnOnce() -> ts_status>(f: F) -> ts_status {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(TS_INTERNAL_ERROR)
}

/// Human-readable message for a status code; static storage, never freed.
#[no_mangle]
pub extern "C" fn ts_status_message(status: ts_status) -> *const c_char {
    let msg: &'static [u8] = match status {
        TS_OK => b"ok\0",
        TS_NULL_POINTER => b"null pointer argument\0",
        TS_INVALID_ARGUMENT => b"invalid argument\0",
        TS_UNKNOWN_ID => b"unknown catalog id\0",
        TS_SEARCH_INCOMPLETE => b"search budget exhausted\0",
        TS_GEOMETRY_ERROR => b"realization failed\0",
        TS_OUT_OF_RANGE => b"index out of range\0",
        TS_INTERNAL_ERROR => b"internal error\0",
    };
    msg.as_ptr() as *const c_char
}

/// Exhaustively classify the tilings for one m.  `single_chirality` ≠ 0
/// restricts the model to one quadrilateral chirality.
#[no_mangle]
pub unsafe extern "C" fn ts_classify(
    m: u32,
    single_chirality: i32,
    out: *mut *mut ts_classification,
) -> ts_status {
    if out.is_null() {
        return TS_NULL_POINTER;
    }
    if m < 3 {
        return TS_INVALID_ARGUMENT;
    }
    guarded(|| {
        let opts = SearchOptions {
            allow_mirrored_quads: single_chirality == 0,
            ..SearchOptions::default()
        };
        let result = search::classify(m, &opts);
        if !result.complete {
            return TS_SEARCH_INCOMPLETE;
        }
        let handle = Box::new(ts_classification {
            tilings: result.tilings.into_values().collect(),
        });
        unsafe { *out = Box::into_raw(handle) };
        TS_OK
    })
}

/// Number of tilings in a classification.
#[no_mangle]
pub unsafe extern "C" fn ts_classification_count(
    c: *const ts_classification,
    out: *mut usize,
) -> ts_status {
    if c.is_null() || out.is_null() {
        return TS_NULL_POINTER;
    }
    unsafe { *out = (*c).tilings.len() };
    TS_OK
}

/// Clone tiling `index` out of a classification into its own handle.
#[no_mangle]
pub unsafe extern "C" fn ts_classification_tiling(
    c: *const ts_classification,
    index: usize,
    out: *mut *mut ts_tiling,
) -> ts_status {
    if c.is_null() || out.is_null() {
        return TS_NULL_POINTER;
    }
    let tilings = unsafe { &(*c).tilings };
    let Some(t) = tilings.get(index) else {
        return TS_OUT_OF_RANGE;
    };
    unsafe { *out = Box::into_raw(Box::new(ts_tiling { inner: t.clone() })) };
    TS_OK
}

#[no_mangle]
pub unsafe extern "C" fn ts_classification_free(c: *mut ts_classification) {
    if !c.is_null() {
        drop(unsafe { Box::from_raw(c) });
    }
}

/// Look up a catalog entry by id ("prism:<m>" or "S1"…"S5").
#[no_mangle]
pub unsafe extern "C" fn ts_catalog_tiling(
    id: *const c_char,
    out: *mut *mut ts_tiling,
) -> ts_status {
    if id.is_null() || out.is_null() {
        return TS_NULL_POINTER;
    }
    let Ok(id) = unsafe { CStr::from_ptr(id) }.to_str() else {
        return TS_INVALID_ARGUMENT;
    };
    guarded(|| match catalog::entry_by_id(id) {
        Ok(entry) => {
            unsafe { *out = Box::into_raw(Box::new(ts_tiling { inner: entry.tiling })) };
            TS_OK
        }
        Err(_) => TS_UNKNOWN_ID,
    })
}

#[no_mangle]
pub unsafe extern "C" fn ts_tiling_face_count(t: *const ts_tiling, out: *mut u32) -> ts_status {
    if t.is_null() || out.is_null() {
        return TS_NULL_POINTER;
    }
    unsafe { *out = (*t).inner.face_count() as u32 };
    TS_OK
}

#[no_mangle]
pub unsafe extern "C" fn ts_tiling_vertex_count(t: *const ts_tiling, out: *mut u32) -> ts_status {
    if t.is_null() || out.is_null() {
        return TS_NULL_POINTER;
    }
    unsafe { *out = (*t).inner.vertex_count() as u32 };
    TS_OK
}

/// Canonical isomorphism code as a hex string.
#[no_mangle]
pub unsafe extern "C" fn ts_tiling_canonical_code(
    t: *const ts_tiling,
    out: *mut *mut c_char,
) -> ts_status {
    if t.is_null() || out.is_null() {
        return TS_NULL_POINTER;
    }
    guarded(|| {
        let code = unsafe { &(*t).inner }.canonical_code().to_string();
        let c = CString::new(code).expect("hex has no NUL");
        unsafe { *out = c.into_raw() };
        TS_OK
    })
}

/// Tiling structure as JSON.
#[no_mangle]
pub unsafe extern "C" fn ts_tiling_json(t: *const ts_tiling, out: *mut *mut c_char) -> ts_status {
    if t.is_null() || out.is_null() {
        return TS_NULL_POINTER;
    }
    guarded(|| {
        let json = unsafe { &(*t).inner }.to_json().to_string();
        let c = CString::new(json).expect("json has no NUL");
        unsafe { *out = c.into_raw() };
        TS_OK
    })
}

/// Metrically realize a tiling at fixed angles (radians).
#[no_mangle]
pub unsafe extern "C" fn ts_tiling_realize(
    t: *const ts_tiling,
    alpha: f64,
    beta: f64,
    gamma: f64,
    out: *mut ts_realization,
) -> ts_status {
    if t.is_null() || out.is_null() {
        return TS_NULL_POINTER;
    }
    guarded(|| {
        let tiling = unsafe { &(*t).inner };
        let assignment = AngleAssignment::numeric(alpha, beta, gamma);
        match geometry::realize(tiling, &assignment, &[]) {
            Ok(r) => {
                unsafe {
                    *out = ts_realization {
                        alpha: r.alpha,
                        beta: r.beta,
                        gamma: r.gamma,
                        x: r.x,
                        y: r.y,
                        max_vertex_residual: r.max_vertex_residual(),
                        gauss_bonnet_residual: r.gauss_bonnet_residual,
                        degenerate_xy: r.degenerate_xy as i32,
                        flat_quad: r.flat_quad as i32,
                    };
                }
                TS_OK
            }
            Err(_) => TS_GEOMETRY_ERROR,
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn ts_tiling_free(t: *mut ts_tiling) {
    if !t.is_null() {
        drop(unsafe { Box::from_raw(t) });
    }
}

/// Free a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn ts_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    #[test]
    fn classify_m4_through_ffi() {
        let mut c: *mut ts_classification = ptr::null_mut();
        assert_eq!(unsafe { ts_classify(4, 0, &mut c) }, TS_OK);
        let mut n = 0usize;
        assert_eq!(unsafe { ts_classification_count(c, &mut n) }, TS_OK);
        assert_eq!(n, 1);
        let mut t: *mut ts_tiling = ptr::null_mut();
        assert_eq!(unsafe { ts_classification_tiling(c, 0, &mut t) }, TS_OK);
        let mut faces = 0u32;
        assert_eq!(unsafe { ts_tiling_face_count(t, &mut faces) }, TS_OK);
        assert_eq!(faces, 6);
        assert_eq!(
            unsafe { ts_classification_tiling(c, 1, &mut t) },
            TS_OUT_OF_RANGE
        );
        unsafe {
            ts_tiling_free(t);
            ts_classification_free(c);
        }
    }

    #[test]
    fn catalog_lookup_and_codes_match() {
        let id = CString::new("prism:4").unwrap();
        let mut t: *mut ts_tiling = ptr::null_mut();
        assert_eq!(unsafe { ts_catalog_tiling(id.as_ptr(), &mut t) }, TS_OK);
        let mut code: *mut c_char = ptr::null_mut();
        assert_eq!(unsafe { ts_tiling_canonical_code(t, &mut code) }, TS_OK);
        let from_ffi = unsafe { CStr::from_ptr(code) }.to_str().unwrap().to_string();
        assert_eq!(
            from_ffi,
            tilesphere::tiling::prism(4).canonical_code().to_string()
        );
        unsafe {
            ts_string_free(code);
            ts_tiling_free(t);
        }
        let bogus = CString::new("S9").unwrap();
        assert_eq!(
            unsafe { ts_catalog_tiling(bogus.as_ptr(), &mut t) },
            TS_UNKNOWN_ID
        );
    }

    #[test]
    fn realize_s5_through_ffi() {
        let id = CString::new("S5").unwrap();
        let mut t: *mut ts_tiling = ptr::null_mut();
        assert_eq!(unsafe { ts_catalog_tiling(id.as_ptr(), &mut t) }, TS_OK);
        let mut r = ts_realization {
            alpha: 0.0,
            beta: 0.0,
            gamma: 0.0,
            x: 0.0,
            y: 0.0,
            max_vertex_residual: 0.0,
            gauss_bonnet_residual: 0.0,
            degenerate_xy: 0,
            flat_quad: 0,
        };
        let pi = std::f64::consts::PI;
        assert_eq!(
            unsafe { ts_tiling_realize(t, 0.4 * pi, 0.6 * pi, 0.4 * pi, &mut r) },
            TS_OK
        );
        assert!((r.x - (1.0 / 5.0f64.sqrt()).acos()).abs() < 1e-9);
        assert_eq!(r.flat_quad, 1);
        assert_eq!(
            unsafe { ts_tiling_realize(t, 0.2 * pi, 0.6 * pi, 0.4 * pi, &mut r) },
            TS_GEOMETRY_ERROR
        );
        unsafe { ts_tiling_free(t) };
    }

    #[test]
    fn null_arguments_are_rejected() {
        assert_eq!(
            unsafe { ts_classify(4, 0, ptr::null_mut()) },
            TS_NULL_POINTER
        );
        assert_eq!(
            unsafe { ts_classify(2, 0, &mut ptr::null_mut()) },
            TS_INVALID_ARGUMENT
        );
        let mut n = 0usize;
        assert_eq!(
            unsafe { ts_classification_count(ptr::null(), &mut n) },
            TS_NULL_POINTER
        );
    }
}
