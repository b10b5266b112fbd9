//! Studies built on the dynamics: (phi, t) sweeps, maximum search, steady
//! states, special phases, chirality scans, initial-state comparisons and the
//! calibration of layout orderings against reference maxima.
//!
//! Every time in this module is dimensionless, `gamma_total * t`.

mod calibrate;
mod scan;
mod search;
mod special;
mod steady;
mod sweep;

pub use calibrate::{
    all_orderings, calibrate_presets, classify_ordering, Assignment, CalibrationOptions,
    CalibrationResult, CalibrationTargets, OrderingScore, PeakConstraint, TargetBand,
};
pub use scan::{
    chirality_scan, compare_initial_states, count_peaks, ChiralityTrace, InitialStateComparison,
    TimeAxis,
};
pub use search::{find_max, golden_section_max, golden_section_min, FindMaxOptions, MaxResult};
pub use special::{find_special_phases, SpecialKind, SpecialPhase, SpecialPhaseOptions};
pub use steady::{detect_steady, steady_state, SteadyOptions, SteadyStateReport};
pub use sweep::{sweep, SweepGrid, SweepMetadata};

use crate::coefficients::coefficients;
use crate::dynamics::{build_heff, EffectiveHamiltonian};
use crate::error::Result;
use crate::model::{rates_from_chirality, ChiralitySpec, LayoutConfiguration};

/// Effective Hamiltonian in units of `gamma_total`, so that evolving for a
/// time `tau` corresponds to `gamma_total * t = tau`.
pub fn dimensionless_hamiltonian(
    cfg: &LayoutConfiguration,
    chirality: ChiralitySpec,
    phi: f64,
) -> Result<EffectiveHamiltonian> {
    let rates = rates_from_chirality(chirality)?;
    let c = coefficients(cfg, phi, rates.right, rates.left)?;
    Ok(build_heff(&c)?.scaled(1.0 / chirality.gamma_total))
}

/// `count` evenly spaced points from `start` to `stop` inclusive.
pub fn linspace(start: f64, stop: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let step = (stop - start) / (count - 1) as f64;
            (0..count)
                .map(|i| {
                    if i == count - 1 {
                        stop
                    } else {
                        start + step * i as f64
                    }
                })
                .collect()
        }
    }
}
