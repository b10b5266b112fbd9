use std::f64::consts::TAU;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{dimensionless_hamiltonian, golden_section_min};
use crate::coefficients::{coefficients, CoefficientSet};
use crate::dynamics::{build_heff, dark_modes, ModeClass};
use crate::error::{Error, Result};
use crate::model::{rates_from_chirality, ChiralitySpec, InitialState, LayoutConfiguration};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpecialKind {
    /// Every coupling coefficient vanishes.
    Decoupled,
    /// No decay at all, but the exchange coupling survives.
    DecoherenceFree,
    /// Exactly one non-decaying mode with a nonzero overlap on the probe state.
    DarkState,
}

impl SpecialKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            SpecialKind::Decoupled => "decoupled",
            SpecialKind::DecoherenceFree => "decoherence_free",
            SpecialKind::DarkState => "dark_state",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpecialPhase {
    pub phi: f64,
    pub kind: SpecialKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpecialPhaseOptions {
    pub grid_points: usize,
    /// Coefficients below `coupling_tol * gamma_total` count as zero.
    pub coupling_tol: f64,
    pub refine_tol: f64,
    pub min_overlap: f64,
    pub probe: InitialState,
}

impl Default for SpecialPhaseOptions {
    fn default() -> Self {
        Self {
            grid_points: 100_000,
            coupling_tol: 1e-9,
            refine_tol: 1e-10,
            min_overlap: 1e-6,
            probe: InitialState::EG,
        }
    }
}

// The residuals are square roots of quantities that vanish quadratically, so
// every zero is a kink that golden-section search can close in on.
fn decay_residual(c: &CoefficientSet, gamma: f64) -> f64 {
    (c.gamma_a.max(0.0) / gamma).sqrt()
        + (c.gamma_b.max(0.0) / gamma).sqrt()
        + (c.gamma_coll.norm() / gamma).sqrt()
}

fn residuals(cfg: &LayoutConfiguration, chirality: ChiralitySpec, phi: f64) -> Result<[f64; 3]> {
    let rates = rates_from_chirality(chirality)?;
    let gamma = chirality.gamma_total;
    let c = coefficients(cfg, phi, rates.right, rates.left)?;
    let decay = decay_residual(&c, gamma);
    let h = build_heff(&c)?.scaled(1.0 / gamma);
    let [l0, l1] = h.eigenvalues();
    let dark = l0.im.abs().min(l1.im.abs()).sqrt();
    Ok([decay + c.g.norm() / gamma, decay, dark])
}

// The dark residual bottoms out near 1e-8 because the eigenvalue imaginary
// part is a difference of O(1) numbers.
const SNAP: f64 = 1e-7;

fn normalize(phi: f64, snap: f64) -> f64 {
    let p = phi.rem_euclid(TAU);
    if p > TAU - snap || p < snap {
        0.0
    } else {
        p
    }
}

fn classify(
    cfg: &LayoutConfiguration,
    chirality: ChiralitySpec,
    phi: f64,
    candidate: usize,
    opts: &SpecialPhaseOptions,
) -> Result<Option<SpecialKind>> {
    let rates = rates_from_chirality(chirality)?;
    let c = coefficients(cfg, phi, rates.right, rates.left)?;
    let thr = opts.coupling_tol * chirality.gamma_total;
    let no_decay = c.gamma_a.abs() < thr && c.gamma_b.abs() < thr && c.gamma_coll.norm() < thr;
    Ok(match candidate {
        0 if no_decay && c.g.norm() < thr => Some(SpecialKind::Decoupled),
        1 if no_decay && c.g.norm() >= thr => Some(SpecialKind::DecoherenceFree),
        2 => {
            let h = dimensionless_hamiltonian(cfg, chirality, phi)?;
            let modes = dark_modes(&h, &opts.probe, opts.coupling_tol);
            match (modes.classification, modes.dark_population) {
                (ModeClass::SteadyPlateau, Some(p)) if p > opts.min_overlap => {
                    Some(SpecialKind::DarkState)
                }
                _ => None,
            }
        }
        _ => None,
    })
}

/// Phases in `[0, 2 pi)` at which the layout decouples, becomes
/// decoherence-free, or supports a dark state for the probe state.
///
/// Candidates are local minima of a non-negative residual on a uniform
/// grid; each is refined within its neighbouring grid cells and then
/// classified from the coefficients at the refined phase.
pub fn find_special_phases(
    cfg: &LayoutConfiguration,
    chirality: ChiralitySpec,
    opts: &SpecialPhaseOptions,
) -> Result<Vec<SpecialPhase>> {
    if opts.grid_points < 3 {
        return Err(Error::domain("special-phase grid needs at least 3 points"));
    }
    cfg.ensure_valid()?;
    chirality.check()?;
    let n = opts.grid_points;
    let step = TAU / n as f64;
    let grid = (0..n)
        .into_par_iter()
        .map(|i| residuals(cfg, chirality, i as f64 * step))
        .collect::<Result<Vec<[f64; 3]>>>()?;

    let mut found: Vec<SpecialPhase> = Vec::new();
    for k in 0..3 {
        for i in 0..n {
            let r = grid[i][k];
            let prev = grid[(i + n - 1) % n][k];
            let next = grid[(i + 1) % n][k];
            if !(r <= prev && r <= next && r < 0.1) {
                continue;
            }
            let centre = i as f64 * step;
            let (phi, _) = golden_section_min(
                |p| {
                    residuals(cfg, chirality, p)
                        .map(|r| r[k])
                        .unwrap_or(f64::INFINITY)
                },
                centre - step,
                centre + step,
                opts.refine_tol,
            );
            let phi = normalize(phi, SNAP);
            // both modes are undamped at a decoupled or decoherence-free
            // phase, so a slowly decaying neighbour is not a dark state
            if k == 2
                && found.iter().any(|s| {
                    let d = (s.phi - phi).abs();
                    d.min(TAU - d) < 2.0 * step
                })
            {
                continue;
            }
            if let Some(kind) = classify(cfg, chirality, phi, k, opts)? {
                let dup = found.iter().any(|s| {
                    let d = (s.phi - phi).abs();
                    s.kind == kind && d.min(TAU - d) < SNAP
                });
                if !dup {
                    found.push(SpecialPhase { phi, kind });
                }
            }
        }
    }
    found.sort_by(|a, b| a.phi.total_cmp(&b.phi).then(a.kind.cmp(&b.kind)));
    Ok(found)
}
