//! Waveguide-mediated coefficients of the two-atom master equation: Lamb
//! shifts, individual and collective decay rates, and the exchange coupling.
//!
//! [`coefficients`] evaluates the general directional expressions;
//! [`coefficients_nonchiral`] evaluates the bidirectional expressions directly
//! and serves as an independent path for the symmetric-coupling limit.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{epsilon, DirectionalRates, GiantAtom, LayoutConfiguration};

/// Relative slack in the positive-semidefiniteness check.
pub const PSD_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct CoefficientSet {
    pub delta_omega_a: f64,
    pub delta_omega_b: f64,
    pub gamma_a: f64,
    pub gamma_b: f64,
    pub gamma_coll: C64,
    pub g: C64,
}

impl CoefficientSet {
    /// Largest absolute difference over all fields.
    pub fn max_abs_diff(&self, other: &CoefficientSet) -> f64 {
        [
            (self.delta_omega_a - other.delta_omega_a).abs(),
            (self.delta_omega_b - other.delta_omega_b).abs(),
            (self.gamma_a - other.gamma_a).abs(),
            (self.gamma_b - other.gamma_b).abs(),
            (self.gamma_coll - other.gamma_coll).norm(),
            (self.g - other.g).norm(),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

/// Propagation phase between two lattice sites, `|p - q| * phi`.
pub fn phase_distance(p: u32, q: u32, phi: f64) -> f64 {
    p.abs_diff(q) as f64 * phi
}

fn check_inputs(cfg: &LayoutConfiguration, phi: f64) -> Result<()> {
    let report = cfg.validate();
    if !report.is_valid() {
        return Err(Error::domain(format!("invalid layout: {report}")));
    }
    if !phi.is_finite() {
        return Err(Error::domain(format!(
            "phase shift must be finite, got {phi}"
        )));
    }
    Ok(())
}

/// (Lamb shift, individual decay) of one atom for directional rates.
fn self_terms(atom: &GiantAtom, phi: f64, uniform: DirectionalRates) -> (f64, f64) {
    let mut shift = 0.0;
    let mut decay = 0.0;
    for p in &atom.points {
        let rp = p.rates_or(uniform);
        for q in &atom.points {
            let rq = q.rates_or(uniform);
            let weight = (rp.right * rq.right).sqrt() + (rp.left * rq.left).sqrt();
            let theta = phase_distance(p.position, q.position, phi);
            shift += 0.5 * weight * theta.sin();
            decay += weight * theta.cos();
        }
    }
    (shift, decay)
}

/// Coefficients for arbitrary directional rates `gamma_r`, `gamma_l`.
///
/// Points with their own rates override the uniform values. Every sum runs
/// over all nine (n, m) pairs.
pub fn coefficients(
    cfg: &LayoutConfiguration,
    phi: f64,
    gamma_r: f64,
    gamma_l: f64,
) -> Result<CoefficientSet> {
    check_inputs(cfg, phi)?;
    let rates_ok = [gamma_r, gamma_l]
        .iter()
        .all(|r| r.is_finite() && *r >= 0.0);
    if !rates_ok || gamma_r + gamma_l <= 0.0 {
        return Err(Error::domain(format!(
            "directional rates must be non-negative and not both zero, got ({gamma_r}, {gamma_l})"
        )));
    }
    let uniform = DirectionalRates::new(gamma_r, gamma_l);
    let (delta_omega_a, gamma_a) = self_terms(&cfg.atom_a, phi, uniform);
    let (delta_omega_b, gamma_b) = self_terms(&cfg.atom_b, phi, uniform);

    let mut gamma_coll = C64::new(0.0, 0.0);
    let mut g = C64::new(0.0, 0.0);
    for pa in &cfg.atom_a.points {
        let ra = pa.rates_or(uniform);
        for pb in &cfg.atom_b.points {
            let rb = pb.rates_or(uniform);
            let eps = epsilon(pa.position.into(), pb.position.into()) as f64;
            let theta = phase_distance(pa.position, pb.position, phi);
            let forward = C64::from_polar((ra.right * rb.right).sqrt(), eps * theta);
            let backward = C64::from_polar((ra.left * rb.left).sqrt(), -eps * theta);
            gamma_coll += forward + backward;
            // eps / (2i) = -i eps / 2
            g += C64::new(0.0, -0.5 * eps) * (forward - backward);
        }
    }
    Ok(CoefficientSet {
        delta_omega_a,
        delta_omega_b,
        gamma_a,
        gamma_b,
        gamma_coll,
        g,
    })
}

/// Coefficients for symmetric coupling with total rate `gamma` per point.
pub fn coefficients_nonchiral(
    cfg: &LayoutConfiguration,
    phi: f64,
    gamma: f64,
) -> Result<CoefficientSet> {
    check_inputs(cfg, phi)?;
    if !(gamma.is_finite() && gamma > 0.0) {
        return Err(Error::domain(format!("rate must be positive, got {gamma}")));
    }
    let total = |atom: &GiantAtom| -> Vec<(u32, f64)> {
        atom.points
            .iter()
            .map(|p| (p.position, p.rates.map_or(gamma, |r| r.total())))
            .collect()
    };
    let a = total(&cfg.atom_a);
    let b = total(&cfg.atom_b);

    let pair_sum = |xs: &[(u32, f64)], ys: &[(u32, f64)]| -> (f64, f64) {
        let mut s = 0.0;
        let mut c = 0.0;
        for &(x, gx) in xs {
            for &(y, gy) in ys {
                let w = (gx * gy).sqrt();
                let theta = phase_distance(x, y, phi);
                s += 0.5 * w * theta.sin();
                c += w * theta.cos();
            }
        }
        (s, c)
    };
    let (delta_omega_a, gamma_a) = pair_sum(&a, &a);
    let (delta_omega_b, gamma_b) = pair_sum(&b, &b);
    let (g, gamma_coll) = pair_sum(&a, &b);
    Ok(CoefficientSet {
        delta_omega_a,
        delta_omega_b,
        gamma_a,
        gamma_b,
        gamma_coll: C64::new(gamma_coll, 0.0),
        g: C64::new(g, 0.0),
    })
}

/// True iff the 2x2 collective decay matrix is positive semidefinite.
///
/// Its smallest eigenvalue may dip below zero by `PSD_SLACK` times the
/// overall coefficient magnitude, which absorbs rounding at phases where
/// every decay term cancels.
pub fn check_dissipator_psd(c: &CoefficientSet) -> bool {
    let values = [
        c.delta_omega_a,
        c.delta_omega_b,
        c.gamma_a,
        c.gamma_b,
        c.gamma_coll.norm(),
        c.g.norm(),
    ];
    if values.iter().any(|v| !v.is_finite()) {
        return false;
    }
    let magnitude: f64 = values.iter().map(|v| v.abs()).sum();
    let mean = 0.5 * (c.gamma_a + c.gamma_b);
    let half_gap = 0.5 * (c.gamma_a - c.gamma_b);
    let lambda_min = mean - half_gap.hypot(c.gamma_coll.norm());
    lambda_min >= -PSD_SLACK * magnitude
}
