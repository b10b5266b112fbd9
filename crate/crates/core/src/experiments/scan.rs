use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{dimensionless_hamiltonian, sweep, SweepGrid};
use crate::dynamics::{trajectory, Trajectory};
use crate::error::{Error, Result};
use crate::model::{ChiralitySpec, InitialState, LayoutConfiguration};

/// Which rate the dimensionless time axis is measured against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TimeAxis {
    /// `gamma_total * t`
    #[default]
    GammaT,
    /// `gamma_R * t`
    GammaRT,
}

impl fmt::Display for TimeAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TimeAxis::GammaT => "gamma_t",
            TimeAxis::GammaRT => "gamma_r_t",
        })
    }
}

impl FromStr for TimeAxis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "gamma_t" | "gt" | "total" => Ok(TimeAxis::GammaT),
            "gamma_r_t" | "gamma_rt" | "grt" | "right" => Ok(TimeAxis::GammaRT),
            other => Err(Error::validation(
                "axis",
                format!("unknown time axis '{other}'"),
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChiralityTrace {
    pub chi: f64,
    /// Times are on the requested axis.
    pub trajectory: Trajectory,
    pub peak_count: usize,
}

/// Number of interior local maxima of `c` that exceed `1 - tol`.
pub fn count_peaks(c: &[f64], tol: f64) -> usize {
    c.windows(3)
        .filter(|w| w[1] > w[0] && w[1] >= w[2] && w[1] > 1.0 - tol)
        .count()
}

/// One trajectory per chirality at fixed `phi` and total rate.
///
/// With [`TimeAxis::GammaRT`] each grid value is read as `gamma_R t`, so the
/// physical time span stretches as the right-moving rate shrinks.
pub fn chirality_scan(
    cfg: &LayoutConfiguration,
    gamma_total: f64,
    phi: f64,
    chi_list: &[f64],
    c0: &InitialState,
    t_grid: &[f64],
    axis: TimeAxis,
) -> Result<Vec<ChiralityTrace>> {
    chi_list
        .iter()
        .map(|&chi| {
            let spec = ChiralitySpec::new(gamma_total, chi)?;
            let h = dimensionless_hamiltonian(cfg, spec, phi)?;
            let h = match axis {
                TimeAxis::GammaT => h,
                TimeAxis::GammaRT => {
                    let right_share = spec.gamma_right() / gamma_total;
                    if right_share <= 0.0 {
                        return Err(Error::domain(
                            "gamma_R t axis needs a nonzero right-moving rate",
                        ));
                    }
                    h.scaled(1.0 / right_share)
                }
            };
            let trajectory = trajectory(&h, c0, t_grid)?;
            let peak_count = count_peaks(&trajectory.concurrence, 1e-3);
            Ok(ChiralityTrace {
                chi,
                trajectory,
                peak_count,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InitialStateComparison {
    pub eg: SweepGrid,
    pub ge: SweepGrid,
    pub max_abs_diff: f64,
}

pub fn compare_initial_states(
    cfg: &LayoutConfiguration,
    chirality: ChiralitySpec,
    phi_grid: &[f64],
    t_grid: &[f64],
) -> Result<InitialStateComparison> {
    let eg = sweep(cfg, chirality, &InitialState::EG, phi_grid, t_grid)?;
    let ge = sweep(cfg, chirality, &InitialState::GE, phi_grid, t_grid)?;
    let max_abs_diff = eg
        .c_matrix
        .iter()
        .flatten()
        .zip(ge.c_matrix.iter().flatten())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    Ok(InitialStateComparison {
        eg,
        ge,
        max_abs_diff,
    })
}
