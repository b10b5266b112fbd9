use serde::{Deserialize, Serialize};

use super::{dimensionless_hamiltonian, linspace};
use crate::dynamics::{
    dark_modes, trajectory, ModeClass, ModeReport, Trajectory, DEFAULT_MODE_TOL,
};
use crate::error::{Error, Result};
use crate::model::{ChiralitySpec, InitialState, LayoutConfiguration};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SteadyOptions {
    /// Length of the window that must stay flat, in `gamma t`.
    pub window: f64,
    pub tol: f64,
    /// Latest window start that is considered.
    pub horizon: f64,
    /// Sampling step used by [`steady_state`].
    pub step: f64,
}

impl Default for SteadyOptions {
    fn default() -> Self {
        Self {
            window: 10.0,
            tol: 1e-3,
            horizon: 50.0,
            step: 0.01,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SteadyStateReport {
    pub is_steady: bool,
    /// Mean concurrence over the first flat window.
    pub c_ss: Option<f64>,
    /// Start of the first flat window.
    pub settle_time: Option<f64>,
    /// Whether a flat nonzero window was found on the trajectory alone.
    pub window_found: bool,
    pub modes: ModeReport,
}

/// Looks for the first window `[T, T + window]` with `T <= horizon` over
/// which the concurrence stays within `tol` of itself and above `tol`.
///
/// The result is only reported steady when the spectrum agrees: exactly one
/// non-decaying mode whose predicted concurrence matches the window mean.
pub fn detect_steady(
    traj: &Trajectory,
    modes: &ModeReport,
    opts: &SteadyOptions,
) -> Result<SteadyStateReport> {
    if !(opts.window > 0.0) || !(opts.tol > 0.0) || !(opts.horizon >= 0.0) {
        return Err(Error::domain(
            "window, tolerance and horizon must be positive",
        ));
    }
    let needed = opts.horizon + opts.window;
    match traj.times.last() {
        Some(&end) if end >= needed - 1e-9 => {}
        _ => {
            return Err(Error::domain(format!(
                "trajectory must extend to gamma t = {needed}"
            )))
        }
    }
    let (ts, cs) = (&traj.times, &traj.concurrence);
    let mut found = None;
    let mut end = 0usize;
    for start in 0..ts.len() {
        if ts[start] > opts.horizon {
            break;
        }
        if end < start {
            end = start;
        }
        while end + 1 < ts.len() && ts[end + 1] <= ts[start] + opts.window + 1e-9 {
            end += 1;
        }
        let window = &cs[start..=end];
        let (lo, hi) = window
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &c| {
                (lo.min(c), hi.max(c))
            });
        if hi - lo < opts.tol && cs[start] > opts.tol {
            let mean = window.iter().sum::<f64>() / window.len() as f64;
            found = Some((ts[start], mean));
            break;
        }
    }
    let agrees = match (found, modes.classification, modes.predicted_c_ss) {
        (Some((_, mean)), ModeClass::SteadyPlateau, Some(pred)) => {
            (mean - pred).abs() < 2.0 * opts.tol
        }
        _ => false,
    };
    Ok(SteadyStateReport {
        is_steady: agrees,
        c_ss: found.map(|f| f.1),
        settle_time: found.map(|f| f.0),
        window_found: found.is_some(),
        modes: *modes,
    })
}

/// Samples the trajectory at `phi` and runs [`detect_steady`] on it.
pub fn steady_state(
    cfg: &LayoutConfiguration,
    chirality: ChiralitySpec,
    c0: &InitialState,
    phi: f64,
    opts: &SteadyOptions,
) -> Result<SteadyStateReport> {
    if !(opts.step > 0.0) {
        return Err(Error::domain("sampling step must be positive"));
    }
    let h = dimensionless_hamiltonian(cfg, chirality, phi)?;
    let end = opts.horizon + opts.window;
    let n = (end / opts.step).ceil() as usize + 1;
    let traj = trajectory(&h, c0, &linspace(0.0, end, n.max(2)))?;
    detect_steady(&traj, &dark_modes(&h, c0, DEFAULT_MODE_TOL), opts)
}
