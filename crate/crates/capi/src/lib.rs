//! C ABI for the equidyn planar-dynamics library.
//!
//! Maps and circle lifts are opaque handles created and freed through this
//! interface; every fallible call returns an [`EqdStatus`] and records a
//! human-readable message retrievable with [`eqd_last_error_message`] (per
//! thread, valid until the next failing call on that thread). Scalar
//! results come back through out-pointers; structured results (periodic
//! orbits, certifier reports, gap tables) are returned as JSON strings that
//! must be released with [`eqd_string_free`].
//!
//! Handles are immutable after construction and safe to share across
//! threads for concurrent evaluation.

use equidyn::basin::basin_raster;
use equidyn::catalog::{self, RadialProfile};
use equidyn::certify::{global_attractor_certifier, CertifierConfig};
use equidyn::circle::{
    denjoy_construct, equivariance_check_circle, periodic_point_probe, rigid_rotation,
    rotation_number, suspend, CircleLift, GapLengthLaw,
};
use equidyn::dynamics::{classify_omega, find_periodic, OmegaConfig};
use equidyn::maps::{
    check_equivariance, classify_origin, dmy_spectral_check, LocalClass, MapError, PlanarMap,
};
use equidyn::plane::{Point, Rect};
use equidyn::symmetry::SymmetryGroup;
use libc::c_char;
use std::cell::RefCell;
use std::ffi::{CStr, CString};

/// Status code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EqdStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// Malformed spec (JSON, group literal, unknown catalog id).
    InvalidSpec = 3,
    /// Structurally valid input whose mathematical precondition fails.
    Precondition = 4,
    /// Evaluation overflowed (escape).
    Overflow = 5,
    /// Internal failure.
    Internal = 6,
}

/// Local type of the origin, mirroring the library classification.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EqdLocalClass {
    Attractor = 0,
    Repellor = 1,
    Saddle = 2,
    DirectSaddle = 3,
    NonHyperbolic = 4,
}

impl From<LocalClass> for EqdLocalClass {
    fn from(c: LocalClass) -> Self {
        match c {
            LocalClass::Attractor => EqdLocalClass::Attractor,
            LocalClass::Repellor => EqdLocalClass::Repellor,
            LocalClass::Saddle => EqdLocalClass::Saddle,
            LocalClass::DirectSaddle => EqdLocalClass::DirectSaddle,
            LocalClass::NonHyperbolic => EqdLocalClass::NonHyperbolic,
        }
    }
}

/// Opaque planar-map handle.
pub struct EqdMap {
    inner: PlanarMap,
}

/// Opaque circle-lift handle.
pub struct EqdLift {
    inner: CircleLift,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn fail(status: EqdStatus, message: impl Into<String>) -> EqdStatus {
    let msg = CString::new(message.into()).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(msg));
    status
}

fn map_error_status(e: &MapError) -> EqdStatus {
    match e {
        MapError::Overflow => EqdStatus::Overflow,
        _ => EqdStatus::Precondition,
    }
}

/// Message of the most recent failure on this thread; the empty string when
/// nothing failed yet. The pointer stays valid until the next failing call
/// on the same thread.
#[no_mangle]
pub extern "C" fn eqd_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| match &*slot.borrow() {
        Some(msg) => msg.as_ptr(),
        None => c"".as_ptr(),
    })
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn eqd_version() -> *const c_char {
    c"0.1.0".as_ptr()
}

unsafe fn parse_cstr<'a>(s: *const c_char) -> Result<&'a str, EqdStatus> {
    if s.is_null() {
        return Err(fail(EqdStatus::NullPointer, "null string argument"));
    }
    unsafe { CStr::from_ptr(s) }
        .to_str()
        .map_err(|_| fail(EqdStatus::InvalidUtf8, "string argument is not UTF-8"))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), EqdStatus> {
    if out.is_null() {
        return Err(fail(EqdStatus::NullPointer, "null out-pointer"));
    }
    unsafe { out.write(value) };
    Ok(())
}

fn to_json_ptr(value: &impl serde::Serialize) -> Result<*mut c_char, EqdStatus> {
    let text = serde_json::to_string(value)
        .map_err(|e| fail(EqdStatus::Internal, format!("serialization failed: {e}")))?;
    CString::new(text)
        .map(CString::into_raw)
        .map_err(|_| fail(EqdStatus::Internal, "JSON contained a NUL byte"))
}

/// Release a string returned by one of the `*_json` calls.
///
/// # Safety
/// `s` must be a pointer previously returned by this library and not yet
/// freed; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn eqd_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

// ---- map construction ----------------------------------------------------

unsafe fn emit_map(map: Result<PlanarMap, MapError>, out: *mut *mut EqdMap) -> EqdStatus {
    match map {
        Ok(inner) => {
            let handle = Box::into_raw(Box::new(EqdMap { inner }));
            match unsafe { write_out(out, handle) } {
                Ok(()) => EqdStatus::Ok,
                Err(status) => status,
            }
        }
        Err(e) => fail(map_error_status(&e), e.to_string()),
    }
}

/// Build a map from the JSON spec format (`{"catalog": ..., "params":
/// {...}}` or `{"polynomial": {...}, "group": ...}`).
///
/// # Safety
/// `spec` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn eqd_map_from_json(
    spec: *const c_char,
    out: *mut *mut EqdMap,
) -> EqdStatus {
    let text = match unsafe { parse_cstr(spec) } {
        Ok(t) => t,
        Err(status) => return status,
    };
    match equidyn::cli::load_map_json(text) {
        Ok(inner) => {
            let handle = Box::into_raw(Box::new(EqdMap { inner }));
            match unsafe { write_out(out, handle) } {
                Ok(()) => EqdStatus::Ok,
                Err(status) => status,
            }
        }
        Err(e) => {
            let status = match e.code() {
                2 => EqdStatus::InvalidSpec,
                3 => EqdStatus::Precondition,
                _ => EqdStatus::Internal,
            };
            fail(status, e.to_string())
        }
    }
}

/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn eqd_map_d2_cubic(a: f64, out: *mut *mut EqdMap) -> EqdStatus {
    unsafe { emit_map(catalog::d2_cubic(a), out) }
}

/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn eqd_map_twist_zn(n: u32, c: f64, out: *mut *mut EqdMap) -> EqdStatus {
    unsafe { emit_map(catalog::twist_zn(n, c), out) }
}

/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn eqd_map_linear_saddle(
    alpha: f64,
    beta: f64,
    out: *mut *mut EqdMap,
) -> EqdStatus {
    unsafe { emit_map(catalog::linear_saddle(alpha, beta), out) }
}

/// SO(2)-equivariant map with the homothety profile `r(rho) = k rho`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn eqd_map_so2_radial_linear(
    k: f64,
    w: f64,
    out: *mut *mut EqdMap,
) -> EqdStatus {
    unsafe { emit_map(catalog::so2_radial(RadialProfile::Linear { k }, w), out) }
}

/// SO(2)-equivariant map with the cubic profile
/// `r(rho) = rho ((1-c) + c rho^2)`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn eqd_map_so2_radial_cubic(
    c: f64,
    w: f64,
    out: *mut *mut EqdMap,
) -> EqdStatus {
    unsafe { emit_map(catalog::so2_radial(RadialProfile::CubicTwist { c }, w), out) }
}

/// # Safety
/// `map` must be a handle from this library, not yet freed; null is
/// ignored.
#[no_mangle]
pub unsafe extern "C" fn eqd_map_free(map: *mut EqdMap) {
    if !map.is_null() {
        drop(unsafe { Box::from_raw(map) });
    }
}

/// Catalog id, parameters and claimed group of the map, as JSON.
///
/// # Safety
/// `map` must be a valid handle; `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn eqd_map_describe_json(
    map: *const EqdMap,
    out_json: *mut *mut c_char,
) -> EqdStatus {
    let Some(map) = (unsafe { map.as_ref() }) else {
        return fail(EqdStatus::NullPointer, "null map handle");
    };
    let value = serde_json::json!({
        "catalog": map.inner.catalog_id(),
        "params": map.inner.params(),
        "group": map.inner.claimed_group().literal(),
    });
    match to_json_ptr(&value) {
        Ok(ptr) => match unsafe { write_out(out_json, ptr) } {
            Ok(()) => EqdStatus::Ok,
            Err(status) => status,
        },
        Err(status) => status,
    }
}

// ---- map operations -------------------------------------------------------

/// Evaluate the map; overflow reports [`EqdStatus::Overflow`].
///
/// # Safety
/// `map` must be a valid handle; `out_x`, `out_y` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn eqd_map_eval(
    map: *const EqdMap,
    x: f64,
    y: f64,
    out_x: *mut f64,
    out_y: *mut f64,
) -> EqdStatus {
    let Some(map) = (unsafe { map.as_ref() }) else {
        return fail(EqdStatus::NullPointer, "null map handle");
    };
    match map.inner.evaluate(Point::new(x, y)) {
        Ok(q) => {
            if let Err(s) = unsafe { write_out(out_x, q.x) } {
                return s;
            }
            match unsafe { write_out(out_y, q.y) } {
                Ok(()) => EqdStatus::Ok,
                Err(s) => s,
            }
        }
        Err(e) => fail(map_error_status(&e), e.to_string()),
    }
}

/// Jacobian at `(x, y)` into a row-major length-4 buffer (exact when the
/// map carries one, otherwise central differences with step `h`).
///
/// # Safety
/// `map` must be a valid handle; `out` must point to 4 writable doubles.
#[no_mangle]
pub unsafe extern "C" fn eqd_map_jacobian(
    map: *const EqdMap,
    x: f64,
    y: f64,
    h: f64,
    out: *mut f64,
) -> EqdStatus {
    let Some(map) = (unsafe { map.as_ref() }) else {
        return fail(EqdStatus::NullPointer, "null map handle");
    };
    if out.is_null() {
        return fail(EqdStatus::NullPointer, "null out-pointer");
    }
    let j = map.inner.jacobian(Point::new(x, y), h);
    unsafe {
        out.add(0).write(j[(0, 0)]);
        out.add(1).write(j[(0, 1)]);
        out.add(2).write(j[(1, 0)]);
        out.add(3).write(j[(1, 1)]);
    }
    EqdStatus::Ok
}

/// Classify the origin. Eigenvalues land in `out_eigs` as
/// `[re0, im0, re1, im1]`, ordered by modulus.
///
/// # Safety
/// `map` must be a valid handle; `out_class` valid; `out_eigs` must point
/// to 4 writable doubles.
#[no_mangle]
pub unsafe extern "C" fn eqd_map_classify_origin(
    map: *const EqdMap,
    tol_hyp: f64,
    out_class: *mut EqdLocalClass,
    out_eigs: *mut f64,
) -> EqdStatus {
    let Some(map) = (unsafe { map.as_ref() }) else {
        return fail(EqdStatus::NullPointer, "null map handle");
    };
    if out_eigs.is_null() {
        return fail(EqdStatus::NullPointer, "null out-pointer");
    }
    match classify_origin(&map.inner, tol_hyp) {
        Ok(c) => {
            unsafe {
                out_eigs.add(0).write(c.eigenvalues[0].re);
                out_eigs.add(1).write(c.eigenvalues[0].im);
                out_eigs.add(2).write(c.eigenvalues[1].re);
                out_eigs.add(3).write(c.eigenvalues[1].im);
            }
            match unsafe { write_out(out_class, c.class.into()) } {
                Ok(()) => EqdStatus::Ok,
                Err(s) => s,
            }
        }
        Err(e) => fail(map_error_status(&e), e.to_string()),
    }
}

/// Sampled equivariance check against a group literal (`O2`, `SO2`,
/// `D<n>`, `Z<n>`, `Z2k`, `Z2`, `triv`).
///
/// # Safety
/// `map` must be a valid handle, `group` a valid string, out-pointers
/// valid.
#[no_mangle]
pub unsafe extern "C" fn eqd_map_equivariance(
    map: *const EqdMap,
    group: *const c_char,
    n_samples: usize,
    radius: f64,
    tol: f64,
    seed: u64,
    out_max_defect: *mut f64,
    out_pass: *mut i32,
) -> EqdStatus {
    let Some(map) = (unsafe { map.as_ref() }) else {
        return fail(EqdStatus::NullPointer, "null map handle");
    };
    let literal = match unsafe { parse_cstr(group) } {
        Ok(t) => t,
        Err(status) => return status,
    };
    let group = match SymmetryGroup::parse(literal) {
        Ok(g) => g,
        Err(e) => return fail(EqdStatus::InvalidSpec, e.to_string()),
    };
    let report = check_equivariance(&map.inner, &group, n_samples, radius, tol, seed);
    if let Err(s) = unsafe { write_out(out_max_defect, report.max_defect) } {
        return s;
    }
    match unsafe { write_out(out_pass, i32::from(report.pass)) } {
        Ok(()) => EqdStatus::Ok,
        Err(s) => s,
    }
}

/// Classify the forward orbit of one point: `out_kind` takes 0 converges,
/// 1 escapes, 2 periodic, 3 undecided.
///
/// # Safety
/// `map` must be a valid handle; out-pointers valid.
#[no_mangle]
pub unsafe extern "C" fn eqd_map_classify_omega(
    map: *const EqdMap,
    x: f64,
    y: f64,
    budget: usize,
    eps_zero: f64,
    r_escape: f64,
    out_kind: *mut i32,
    out_iterations: *mut usize,
) -> EqdStatus {
    let Some(map) = (unsafe { map.as_ref() }) else {
        return fail(EqdStatus::NullPointer, "null map handle");
    };
    let cfg = OmegaConfig {
        budget,
        eps_zero,
        r_escape,
        ..OmegaConfig::default()
    };
    let class = classify_omega(&map.inner, Point::new(x, y), &cfg);
    if let Err(s) = unsafe { write_out(out_kind, i32::from(class.kind.code())) } {
        return s;
    }
    match unsafe { write_out(out_iterations, class.iterations_used) } {
        Ok(()) => EqdStatus::Ok,
        Err(s) => s,
    }
}

/// Rasterize basins over `[x0, x1] x [y0, y1]` into a caller-allocated
/// `nx * ny` byte buffer (row-major from the lower-left cell; codes 0
/// fixed, 1 escape, 2 periodic, 3 undecided).
///
/// # Safety
/// `map` must be a valid handle; `out_cells` must point to `nx * ny`
/// writable bytes.
#[no_mangle]
pub unsafe extern "C" fn eqd_map_basin(
    map: *const EqdMap,
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
    nx: usize,
    ny: usize,
    budget: usize,
    eps_zero: f64,
    r_escape: f64,
    out_cells: *mut u8,
) -> EqdStatus {
    let Some(map) = (unsafe { map.as_ref() }) else {
        return fail(EqdStatus::NullPointer, "null map handle");
    };
    if out_cells.is_null() {
        return fail(EqdStatus::NullPointer, "null out-pointer");
    }
    if nx == 0 || ny == 0 || x0 >= x1 || y0 >= y1 {
        return fail(EqdStatus::InvalidSpec, "empty basin grid");
    }
    let cfg = OmegaConfig {
        budget,
        eps_zero,
        r_escape,
        ..OmegaConfig::default()
    };
    let grid = basin_raster(&map.inner, Rect::new(x0, x1, y0, y1), nx, ny, &cfg);
    unsafe { std::ptr::copy_nonoverlapping(grid.cells.as_ptr(), out_cells, nx * ny) };
    EqdStatus::Ok
}

/// Spectral scan over a square grid: largest sampled spectral radius and
/// whether the sampled spectrum meets `[0, inf)`.
///
/// # Safety
/// `map` must be a valid handle; out-pointers valid.
#[no_mangle]
pub unsafe extern "C" fn eqd_map_dmy_check(
    map: *const EqdMap,
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
    grid_res: usize,
    h: f64,
    out_all_inside: *mut i32,
    out_worst_radius: *mut f64,
    out_meets_nonneg_axis: *mut i32,
) -> EqdStatus {
    let Some(map) = (unsafe { map.as_ref() }) else {
        return fail(EqdStatus::NullPointer, "null map handle");
    };
    let report = dmy_spectral_check(&map.inner, Rect::new(x0, x1, y0, y1), grid_res, h);
    if let Err(s) = unsafe { write_out(out_all_inside, i32::from(report.all_inside_unit_disk)) } {
        return s;
    }
    if let Err(s) = unsafe { write_out(out_worst_radius, report.worst_radius) } {
        return s;
    }
    match unsafe { write_out(out_meets_nonneg_axis, i32::from(report.intersects_nonneg_real_axis)) }
    {
        Ok(()) => EqdStatus::Ok,
        Err(s) => s,
    }
}

/// Periodic-orbit search from a `grid x grid` seed lattice over the given
/// rectangle; the orbit list (points, minimal periods, multipliers) is
/// returned as a JSON string.
///
/// # Safety
/// `map` must be a valid handle; `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn eqd_map_find_periodic_json(
    map: *const EqdMap,
    period: usize,
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
    grid: usize,
    tol: f64,
    max_newton: usize,
    out_json: *mut *mut c_char,
) -> EqdStatus {
    let Some(map) = (unsafe { map.as_ref() }) else {
        return fail(EqdStatus::NullPointer, "null map handle");
    };
    if period == 0 {
        return fail(EqdStatus::Precondition, "period must be at least 1");
    }
    let seeds = Rect::new(x0, x1, y0, y1).grid(grid, grid);
    let orbits = find_periodic(&map.inner, period, &seeds, tol, max_newton);
    match to_json_ptr(&orbits) {
        Ok(ptr) => match unsafe { write_out(out_json, ptr) } {
            Ok(()) => EqdStatus::Ok,
            Err(s) => s,
        },
        Err(status) => status,
    }
}

/// Run the global-attractor certifier with default budgets against a group
/// literal (pass null to use the map's claimed group); the full report is
/// returned as a JSON string.
///
/// # Safety
/// `map` must be a valid handle; `group` null or a valid string;
/// `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn eqd_map_certify_json(
    map: *const EqdMap,
    group: *const c_char,
    seed: u64,
    out_json: *mut *mut c_char,
) -> EqdStatus {
    let Some(map) = (unsafe { map.as_ref() }) else {
        return fail(EqdStatus::NullPointer, "null map handle");
    };
    let group = if group.is_null() {
        map.inner.claimed_group()
    } else {
        let literal = match unsafe { parse_cstr(group) } {
            Ok(t) => t,
            Err(status) => return status,
        };
        match SymmetryGroup::parse(literal) {
            Ok(g) => g,
            Err(e) => return fail(EqdStatus::InvalidSpec, e.to_string()),
        }
    };
    let cfg = CertifierConfig {
        seed,
        ..CertifierConfig::default()
    };
    let report = global_attractor_certifier(&map.inner, &group, &cfg);
    match to_json_ptr(&report) {
        Ok(ptr) => match unsafe { write_out(out_json, ptr) } {
            Ok(()) => EqdStatus::Ok,
            Err(s) => s,
        },
        Err(status) => status,
    }
}

// ---- circle lifts ----------------------------------------------------------

unsafe fn emit_lift(lift: CircleLift, out: *mut *mut EqdLift) -> EqdStatus {
    let handle = Box::into_raw(Box::new(EqdLift { inner: lift }));
    match unsafe { write_out(out, handle) } {
        Ok(()) => EqdStatus::Ok,
        Err(s) => s,
    }
}

/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn eqd_lift_rigid(w: f64, out: *mut *mut EqdLift) -> EqdStatus {
    unsafe { emit_lift(rigid_rotation(w), out) }
}

/// Equivariant Denjoy lift: target rotation number `tau`, symmetry order
/// `m`, orbit truncation `k`, geometric length ratio `lambda`, total gap
/// mass `mass`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn eqd_lift_denjoy(
    tau: f64,
    m: u32,
    k: i32,
    lambda: f64,
    mass: f64,
    out: *mut *mut EqdLift,
) -> EqdStatus {
    match denjoy_construct(
        tau,
        m,
        k,
        GapLengthLaw {
            lambda,
            total_mass: mass,
        },
    ) {
        Ok(lift) => unsafe { emit_lift(lift, out) },
        Err(e) => fail(EqdStatus::Precondition, e.to_string()),
    }
}

/// # Safety
/// `lift` must be a handle from this library, not yet freed; null is
/// ignored.
#[no_mangle]
pub unsafe extern "C" fn eqd_lift_free(lift: *mut EqdLift) {
    if !lift.is_null() {
        drop(unsafe { Box::from_raw(lift) });
    }
}

/// # Safety
/// `lift` must be a valid handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn eqd_lift_eval(lift: *const EqdLift, x: f64, out: *mut f64) -> EqdStatus {
    let Some(lift) = (unsafe { lift.as_ref() }) else {
        return fail(EqdStatus::NullPointer, "null lift handle");
    };
    match unsafe { write_out(out, lift.inner.evaluate(x)) } {
        Ok(()) => EqdStatus::Ok,
        Err(s) => s,
    }
}

/// Rotation-number estimate `(F^n(x0) - x0)/n` with its `1/n` bound.
///
/// # Safety
/// `lift` must be a valid handle; out-pointers valid.
#[no_mangle]
pub unsafe extern "C" fn eqd_lift_rotation_number(
    lift: *const EqdLift,
    x0: f64,
    n_iter: usize,
    out_estimate: *mut f64,
    out_bound: *mut f64,
) -> EqdStatus {
    let Some(lift) = (unsafe { lift.as_ref() }) else {
        return fail(EqdStatus::NullPointer, "null lift handle");
    };
    let est = rotation_number(&lift.inner, x0, n_iter);
    if let Err(s) = unsafe { write_out(out_estimate, est.estimate) } {
        return s;
    }
    match unsafe { write_out(out_bound, est.bound) } {
        Ok(()) => EqdStatus::Ok,
        Err(s) => s,
    }
}

/// Max defect of `F(x + 1/m) - F(x) - 1/m` over a uniform sample grid.
///
/// # Safety
/// `lift` must be a valid handle; out-pointers valid.
#[no_mangle]
pub unsafe extern "C" fn eqd_lift_equivariance(
    lift: *const EqdLift,
    m: u32,
    n_samples: usize,
    tol: f64,
    out_max_defect: *mut f64,
    out_pass: *mut i32,
) -> EqdStatus {
    let Some(lift) = (unsafe { lift.as_ref() }) else {
        return fail(EqdStatus::NullPointer, "null lift handle");
    };
    let report = equivariance_check_circle(&lift.inner, m, n_samples, tol);
    if let Err(s) = unsafe { write_out(out_max_defect, report.max_defect) } {
        return s;
    }
    match unsafe { write_out(out_pass, i32::from(report.pass)) } {
        Ok(()) => EqdStatus::Ok,
        Err(s) => s,
    }
}

/// Minimized displacement `|F^q(x) - x - p|` over the grid, `q <= q_max`.
///
/// # Safety
/// `lift` must be a valid handle; `out_min` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn eqd_lift_periodic_probe(
    lift: *const EqdLift,
    q_max: usize,
    grid_size: usize,
    out_min: *mut f64,
) -> EqdStatus {
    let Some(lift) = (unsafe { lift.as_ref() }) else {
        return fail(EqdStatus::NullPointer, "null lift handle");
    };
    let probe = periodic_point_probe(&lift.inner, q_max, grid_size);
    match unsafe { write_out(out_min, probe.min_displacement) } {
        Ok(()) => EqdStatus::Ok,
        Err(s) => s,
    }
}

/// Gap table of a Denjoy lift as JSON; fails for lifts without one.
///
/// # Safety
/// `lift` must be a valid handle; `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn eqd_lift_gap_table_json(
    lift: *const EqdLift,
    out_json: *mut *mut c_char,
) -> EqdStatus {
    let Some(lift) = (unsafe { lift.as_ref() }) else {
        return fail(EqdStatus::NullPointer, "null lift handle");
    };
    let Some(gaps) = lift.inner.gap_structure() else {
        return fail(EqdStatus::Precondition, "lift carries no gap table");
    };
    match to_json_ptr(gaps) {
        Ok(ptr) => match unsafe { write_out(out_json, ptr) } {
            Ok(()) => EqdStatus::Ok,
            Err(s) => s,
        },
        Err(status) => status,
    }
}

/// Suspend the lift into the plane with radial contraction `c`.
///
/// # Safety
/// `lift` must be a valid handle; `out_map` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn eqd_lift_suspend(
    lift: *const EqdLift,
    c: f64,
    out_map: *mut *mut EqdMap,
) -> EqdStatus {
    let Some(lift) = (unsafe { lift.as_ref() }) else {
        return fail(EqdStatus::NullPointer, "null lift handle");
    };
    unsafe { emit_map(suspend(&lift.inner, c), out_map) }
}
