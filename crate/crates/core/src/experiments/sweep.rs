use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::dimensionless_hamiltonian;
use crate::dynamics::{check_time_grid, concurrence, Propagator};
use crate::error::{Error, Result};
use crate::model::{ChiralitySpec, InitialState, LayoutConfiguration, PresetTag};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepMetadata {
    pub ordering: String,
    pub preset: Option<PresetTag>,
    pub chi: f64,
    pub gamma_total: f64,
    pub initial: InitialState,
}

/// Concurrence over a (phi, gamma t) grid; `c_matrix[i][j] = C(t_j; phi_i)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepGrid {
    pub phi_values: Vec<f64>,
    pub t_values: Vec<f64>,
    pub c_matrix: Vec<Vec<f64>>,
    pub metadata: SweepMetadata,
}

impl SweepGrid {
    pub fn max_value(&self) -> f64 {
        self.c_matrix.iter().flatten().copied().fold(0.0, f64::max)
    }
}

pub(crate) fn check_phi_grid(phi_grid: &[f64]) -> Result<()> {
    if phi_grid.is_empty() {
        return Err(Error::domain("phase grid is empty"));
    }
    if phi_grid.iter().any(|p| !p.is_finite()) {
        return Err(Error::domain("phase grid contains non-finite values"));
    }
    if phi_grid.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::domain("phase grid must be sorted"));
    }
    Ok(())
}

pub fn sweep(
    cfg: &LayoutConfiguration,
    chirality: ChiralitySpec,
    c0: &InitialState,
    phi_grid: &[f64],
    t_grid: &[f64],
) -> Result<SweepGrid> {
    check_phi_grid(phi_grid)?;
    if t_grid.is_empty() {
        return Err(Error::domain("time grid is empty"));
    }
    check_time_grid(t_grid, "time grid")?;
    let c_matrix = phi_grid
        .par_iter()
        .map(|&phi| {
            let h = dimensionless_hamiltonian(cfg, chirality, phi)?;
            let prop = Propagator::new(&h, c0);
            Ok(t_grid.iter().map(|&t| concurrence(&prop.at(t))).collect())
        })
        .collect::<Result<Vec<Vec<f64>>>>()?;
    Ok(SweepGrid {
        phi_values: phi_grid.to_vec(),
        t_values: t_grid.to_vec(),
        c_matrix,
        metadata: SweepMetadata {
            ordering: cfg.ordering(),
            preset: cfg.preset,
            chi: chirality.chi,
            gamma_total: chirality.gamma_total,
            initial: *c0,
        },
    })
}
