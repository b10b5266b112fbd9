//! C interface to the giant-qed simulator.
//!
//! Layouts and trajectories are opaque handles created and released through
//! this API. Every function returns a [`GqStatus`]; on failure a message is
//! available from [`gq_last_error_message`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use giant_qed::dynamics::{trajectory, Trajectory};
use giant_qed::experiments::{dimensionless_hamiltonian, find_max, FindMaxOptions};
use giant_qed::model::{make_preset, rates_from_chirality, ChiralitySpec, InitialState};
use giant_qed::{coefficients, Error, LayoutConfiguration, PresetTag};
use num_complex::Complex64 as C64;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GqStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Unphysical = 3,
    Io = 4,
    BufferTooSmall = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GqPreset {
    Separated = 0,
    FullyBraided = 1,
    PartiallyBraided = 2,
    FullyNested = 3,
    PartiallyNested = 4,
}

/// Coupling coefficients at one phase.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct GqCoefficients {
    pub delta_a: f64,
    pub delta_b: f64,
    pub gamma_a: f64,
    pub gamma_b: f64,
    pub gcoll_re: f64,
    pub gcoll_im: f64,
    pub g_re: f64,
    pub g_im: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct GqMaxResult {
    pub c_max: f64,
    pub phi_star: f64,
    pub t_star: f64,
}

/// Opaque layout handle.
pub struct GqLayout {
    inner: LayoutConfiguration,
}

/// Opaque trajectory handle.
pub struct GqTrajectory {
    inner: Trajectory,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(err: &Error) -> GqStatus {
    match err {
        Error::Unphysical(_) => GqStatus::Unphysical,
        Error::Io(_) => GqStatus::Io,
        _ => GqStatus::InvalidArgument,
    }
}

fn guard<F: FnOnce() -> Result<(), GqStatus>>(f: F) -> GqStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => GqStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => {
            set_error("internal panic");
            GqStatus::Panic
        }
    }
}

fn check<T>(r: giant_qed::Result<T>) -> Result<T, GqStatus> {
    r.map_err(|e| {
        set_error(e.to_string());
        status_of(&e)
    })
}

fn non_null<T>(p: *const T, name: &str) -> Result<(), GqStatus> {
    if p.is_null() {
        set_error(format!("{name} is null"));
        Err(GqStatus::NullPointer)
    } else {
        Ok(())
    }
}

unsafe fn initial_from(c0: *const f64) -> Result<InitialState, GqStatus> {
    if c0.is_null() {
        return Ok(InitialState::EG);
    }
    let v = std::slice::from_raw_parts(c0, 4);
    check(InitialState::new(
        C64::new(v[0], v[1]),
        C64::new(v[2], v[3]),
    ))
}

/// Message for the most recent failure on this thread, or NULL.
///
/// The pointer stays valid until the next call into this library on the
/// same thread.
#[no_mangle]
pub extern "C" fn gq_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn gq_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Creates one of the named layouts.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn gq_layout_preset(preset: GqPreset, out: *mut *mut GqLayout) -> GqStatus {
    guard(|| {
        non_null(out, "out")?;
        let tag = match preset {
            GqPreset::Separated => PresetTag::Separated,
            GqPreset::FullyBraided => PresetTag::FullyBraided,
            GqPreset::PartiallyBraided => PresetTag::PartiallyBraided,
            GqPreset::FullyNested => PresetTag::FullyNested,
            GqPreset::PartiallyNested => PresetTag::PartiallyNested,
        };
        *out = Box::into_raw(Box::new(GqLayout {
            inner: make_preset(tag),
        }));
        Ok(())
    })
}

/// Creates a layout from three lattice positions per atom.
///
/// # Safety
/// `a` and `b` must each point to 3 readable `uint32_t`; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gq_layout_from_positions(
    a: *const u32,
    b: *const u32,
    out: *mut *mut GqLayout,
) -> GqStatus {
    guard(|| {
        non_null(a, "a")?;
        non_null(b, "b")?;
        non_null(out, "out")?;
        let cfg = LayoutConfiguration::from_positions(
            std::slice::from_raw_parts(a, 3),
            std::slice::from_raw_parts(b, 3),
        );
        check(cfg.ensure_valid())?;
        *out = Box::into_raw(Box::new(GqLayout { inner: cfg }));
        Ok(())
    })
}

/// Releases a layout. NULL is ignored.
///
/// # Safety
/// `layout` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn gq_layout_free(layout: *mut GqLayout) {
    if !layout.is_null() {
        drop(Box::from_raw(layout));
    }
}

/// Coupling coefficients at phase `phi` for total rate `gamma` and
/// chirality `chi`.
///
/// # Safety
/// `layout` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gq_coefficients(
    layout: *const GqLayout,
    phi: f64,
    gamma: f64,
    chi: f64,
    out: *mut GqCoefficients,
) -> GqStatus {
    guard(|| {
        non_null(layout, "layout")?;
        non_null(out, "out")?;
        let rates = check(ChiralitySpec::new(gamma, chi).and_then(rates_from_chirality))?;
        let c = check(coefficients(&(*layout).inner, phi, rates.right, rates.left))?;
        *out = GqCoefficients {
            delta_a: c.delta_omega_a,
            delta_b: c.delta_omega_b,
            gamma_a: c.gamma_a,
            gamma_b: c.gamma_b,
            gcoll_re: c.gamma_coll.re,
            gcoll_im: c.gamma_coll.im,
            g_re: c.g.re,
            g_im: c.g.im,
        };
        Ok(())
    })
}

/// Evolves from `c0` (`re, im, re, im`, or NULL for |eg>) over the
/// `n_times` values of `gamma t` in `times`.
///
/// # Safety
/// `layout` must be a live handle, `times` must hold `n_times` values,
/// `c0` is NULL or holds 4 values, and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gq_evolve(
    layout: *const GqLayout,
    phi: f64,
    gamma: f64,
    chi: f64,
    c0: *const f64,
    times: *const f64,
    n_times: usize,
    out: *mut *mut GqTrajectory,
) -> GqStatus {
    guard(|| {
        non_null(layout, "layout")?;
        non_null(out, "out")?;
        let ts: &[f64] = if n_times == 0 {
            &[]
        } else {
            non_null(times, "times")?;
            std::slice::from_raw_parts(times, n_times)
        };
        let spec = check(ChiralitySpec::new(gamma, chi))?;
        let init = initial_from(c0)?;
        let h = check(dimensionless_hamiltonian(&(*layout).inner, spec, phi))?;
        let traj = check(trajectory(&h, &init, ts))?;
        *out = Box::into_raw(Box::new(GqTrajectory { inner: traj }));
        Ok(())
    })
}

/// Number of samples in a trajectory, 0 for NULL.
///
/// # Safety
/// `traj` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gq_trajectory_len(traj: *const GqTrajectory) -> usize {
    if traj.is_null() {
        0
    } else {
        (*traj).inner.len()
    }
}

/// Copies the concurrence samples into `buf`.
///
/// # Safety
/// `traj` must be a live handle and `buf` must hold `capacity` doubles.
#[no_mangle]
pub unsafe extern "C" fn gq_trajectory_concurrence(
    traj: *const GqTrajectory,
    buf: *mut f64,
    capacity: usize,
) -> GqStatus {
    guard(|| {
        non_null(traj, "traj")?;
        let c = &(*traj).inner.concurrence;
        if capacity < c.len() {
            set_error(format!("need room for {} values", c.len()));
            return Err(GqStatus::BufferTooSmall);
        }
        if !c.is_empty() {
            non_null(buf, "buf")?;
            ptr::copy_nonoverlapping(c.as_ptr(), buf, c.len());
        }
        Ok(())
    })
}

/// Copies amplitudes as `c_eg.re, c_eg.im, c_ge.re, c_ge.im` per sample,
/// needing `4 * len` doubles.
///
/// # Safety
/// `traj` must be a live handle and `buf` must hold `capacity` doubles.
#[no_mangle]
pub unsafe extern "C" fn gq_trajectory_amplitudes(
    traj: *const GqTrajectory,
    buf: *mut f64,
    capacity: usize,
) -> GqStatus {
    guard(|| {
        non_null(traj, "traj")?;
        let states = &(*traj).inner.states;
        if capacity < 4 * states.len() {
            set_error(format!("need room for {} values", 4 * states.len()));
            return Err(GqStatus::BufferTooSmall);
        }
        if !states.is_empty() {
            non_null(buf, "buf")?;
            let out = std::slice::from_raw_parts_mut(buf, 4 * states.len());
            for (chunk, s) in out.chunks_exact_mut(4).zip(states) {
                chunk.copy_from_slice(&[s.c_eg.re, s.c_eg.im, s.c_ge.re, s.c_ge.im]);
            }
        }
        Ok(())
    })
}

/// Releases a trajectory. NULL is ignored.
///
/// # Safety
/// `traj` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn gq_trajectory_free(traj: *mut GqTrajectory) {
    if !traj.is_null() {
        drop(Box::from_raw(traj));
    }
}

/// Largest concurrence over `phi` in `[phi_lo, phi_hi]` and
/// `gamma t` in `[0, horizon]`, using the default search grids.
///
/// # Safety
/// `layout` must be a live handle, `c0` NULL or 4 values, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gq_find_max(
    layout: *const GqLayout,
    gamma: f64,
    chi: f64,
    c0: *const f64,
    phi_lo: f64,
    phi_hi: f64,
    horizon: f64,
    out: *mut GqMaxResult,
) -> GqStatus {
    guard(|| {
        non_null(layout, "layout")?;
        non_null(out, "out")?;
        let spec = check(ChiralitySpec::new(gamma, chi))?;
        let init = initial_from(c0)?;
        let r = check(find_max(
            &(*layout).inner,
            spec,
            &init,
            (phi_lo, phi_hi),
            horizon,
            &FindMaxOptions::default(),
        ))?;
        *out = GqMaxResult {
            c_max: r.c_max,
            phi_star: r.phi_star,
            t_star: r.t_star,
        };
        Ok(())
    })
}
