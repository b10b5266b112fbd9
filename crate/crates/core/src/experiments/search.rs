use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{dimensionless_hamiltonian, linspace};
use crate::dynamics::{concurrence, AmplitudePair, Propagator};
use crate::error::{Error, Result};
use crate::model::{ChiralitySpec, InitialState, LayoutConfiguration};

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section search for a maximum of `f` on `[lo, hi]`.
///
/// The endpoints are evaluated too and the best point seen is returned, so a
/// monotone `f` yields its boundary value exactly.
pub fn golden_section_max<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    hi: f64,
    tol: f64,
) -> (f64, f64) {
    let mut best = (lo, f(lo));
    let consider = |x: f64, fx: f64, best: &mut (f64, f64)| {
        if fx > best.1 {
            *best = (x, fx);
        }
    };
    if hi <= lo {
        return best;
    }
    let fhi = f(hi);
    consider(hi, fhi, &mut best);

    let (mut a, mut b) = (lo, hi);
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    consider(x1, f1, &mut best);
    consider(x2, f2, &mut best);
    while b - a > tol {
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
            consider(x1, f1, &mut best);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
            consider(x2, f2, &mut best);
        }
    }
    best
}

pub fn golden_section_min<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    hi: f64,
    tol: f64,
) -> (f64, f64) {
    let (x, v) = golden_section_max(|x| -f(x), lo, hi, tol);
    (x, -v)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FindMaxOptions {
    pub phi_points: usize,
    pub t_points: usize,
    /// Bracket width at which refinement stops, in both phi and gamma t.
    pub tol: f64,
}

impl Default for FindMaxOptions {
    fn default() -> Self {
        Self {
            phi_points: 2001,
            t_points: 4001,
            tol: 1e-6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MaxResult {
    pub c_max: f64,
    pub phi_star: f64,
    /// In units of `1 / gamma_total`.
    pub t_star: f64,
    pub amplitudes_at_max: AmplitudePair,
}

fn bracket(values: &[f64], i: usize) -> (f64, f64) {
    let lo = values[i.saturating_sub(1)];
    let hi = values[(i + 1).min(values.len() - 1)];
    (lo, hi)
}

/// Global maximum of the concurrence over `phi` in `phi_range` and
/// `gamma t` in `[0, t_horizon]`.
///
/// A coarse grid scan picks the best cell; nested golden-section searches
/// then refine phi and t within one grid step either side. The refined
/// value is never below the best grid value, and ties on the grid resolve
/// to the smallest phi, then the smallest t.
pub fn find_max(
    cfg: &LayoutConfiguration,
    chirality: ChiralitySpec,
    c0: &InitialState,
    phi_range: (f64, f64),
    t_horizon: f64,
    opts: &FindMaxOptions,
) -> Result<MaxResult> {
    let (phi_lo, phi_hi) = phi_range;
    if !(phi_lo.is_finite() && phi_hi.is_finite()) || phi_hi < phi_lo {
        return Err(Error::domain(format!(
            "invalid phase range [{phi_lo}, {phi_hi}]"
        )));
    }
    if !t_horizon.is_finite() || t_horizon < 0.0 {
        return Err(Error::domain(format!("invalid time horizon {t_horizon}")));
    }
    if opts.phi_points == 0 || opts.t_points == 0 {
        return Err(Error::domain("search grids must have at least one point"));
    }
    if !(opts.tol > 0.0) {
        return Err(Error::domain("refinement tolerance must be positive"));
    }
    cfg.ensure_valid()?;
    chirality.check()?;

    let phis = if phi_hi > phi_lo {
        linspace(phi_lo, phi_hi, opts.phi_points)
    } else {
        vec![phi_lo]
    };
    let ts = if t_horizon > 0.0 {
        linspace(0.0, t_horizon, opts.t_points)
    } else {
        vec![0.0]
    };

    let rows = phis
        .par_iter()
        .map(|&phi| {
            let prop = Propagator::new(&dimensionless_hamiltonian(cfg, chirality, phi)?, c0);
            let mut best = (f64::NEG_INFINITY, 0usize);
            for (j, &t) in ts.iter().enumerate() {
                let c = concurrence(&prop.at(t));
                if c > best.0 {
                    best = (c, j);
                }
            }
            Ok(best)
        })
        .collect::<Result<Vec<(f64, usize)>>>()?;

    let mut best = (f64::NEG_INFINITY, 0usize, 0usize);
    for (i, &(c, j)) in rows.iter().enumerate() {
        if c > best.0 {
            best = (c, i, j);
        }
    }
    let (coarse_c, bi, bj) = best;
    let (coarse_phi, coarse_t) = (phis[bi], ts[bj]);

    let (t_lo, t_hi) = bracket(&ts, bj);
    let best_t_at = |phi: f64| -> (f64, f64) {
        match dimensionless_hamiltonian(cfg, chirality, phi) {
            Ok(h) => {
                let prop = Propagator::new(&h, c0);
                golden_section_max(|t| concurrence(&prop.at(t)), t_lo, t_hi, opts.tol)
            }
            Err(_) => (t_lo, f64::NEG_INFINITY),
        }
    };
    let (p_lo, p_hi) = bracket(&phis, bi);
    let (phi_ref, _) = golden_section_max(|phi| best_t_at(phi).1, p_lo, p_hi, opts.tol);
    let (t_ref, c_ref) = best_t_at(phi_ref);

    let (phi_star, t_star) = if c_ref > coarse_c {
        (phi_ref, t_ref)
    } else {
        (coarse_phi, coarse_t)
    };
    let h = dimensionless_hamiltonian(cfg, chirality, phi_star)?;
    let amplitudes = Propagator::new(&h, c0).at(t_star);
    Ok(MaxResult {
        c_max: concurrence(&amplitudes),
        phi_star,
        t_star: t_star / chirality.gamma_total,
        amplitudes_at_max: amplitudes,
    })
}
