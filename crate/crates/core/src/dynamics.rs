//! Single-excitation dynamics under the non-Hermitian effective Hamiltonian.
//!
//! The state is `c_eg |e_a g_b> + c_ge |g_a e_b>` and evolves as
//! `i dc/dt = M c` with the 2x2 matrix `M` built by [`build_heff`]. Quantum
//! jumps only feed the ground state, so the amplitudes in the single-excitation
//! block are exact without them.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::coefficients::{check_dissipator_psd, CoefficientSet};
use crate::error::{Error, Result};
use crate::model::InitialState;

/// Relative discriminant below which the two eigenvalues are treated as one.
pub const DEGENERACY_TOL: f64 = 1e-12;

/// Default relative threshold on `|Im lambda|` for a non-decaying mode.
pub const DEFAULT_MODE_TOL: f64 = 1e-9;

const I: C64 = C64::new(0.0, 1.0);
const ZERO: C64 = C64::new(0.0, 0.0);

type Mat2 = [[C64; 2]; 2];

/// Effective Hamiltonian in the ordered basis (|e_a g_b>, |g_a e_b>).
///
/// `m[1][0] = <ge|H|eg> = g - i Gamma_coll / 2` drives transfer from atom a to
/// atom b; `m[0][1]` is the reverse channel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EffectiveHamiltonian {
    pub m: Mat2,
}

impl EffectiveHamiltonian {
    pub fn from_matrix(m: Mat2) -> Self {
        Self { m }
    }

    pub fn zero() -> Self {
        Self { m: [[ZERO; 2]; 2] }
    }

    /// Largest entry modulus; the reference scale for relative tolerances.
    pub fn scale(&self) -> f64 {
        self.m
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.m
            .iter()
            .flatten()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// `i (M - M^dagger)`, the Hermitian decay matrix.
    pub fn decay_matrix(&self) -> Mat2 {
        let m = &self.m;
        let mut d = [[ZERO; 2]; 2];
        for (r, row) in d.iter_mut().enumerate() {
            for (c, entry) in row.iter_mut().enumerate() {
                *entry = I * (m[r][c] - m[c][r].conj());
            }
        }
        d
    }

    fn trace_half(&self) -> C64 {
        (self.m[0][0] + self.m[1][1]) * 0.5
    }

    /// Square of half the eigenvalue splitting.
    fn discriminant(&self) -> C64 {
        let h = (self.m[0][0] - self.m[1][1]) * 0.5;
        h * h + self.m[0][1] * self.m[1][0]
    }

    pub fn eigenvalues(&self) -> [C64; 2] {
        let mu = self.trace_half();
        let delta = self.discriminant().sqrt();
        [mu + delta, mu - delta]
    }

    /// Returns `s * M`, e.g. to measure time in units of `1/gamma`.
    pub fn scaled(&self, s: f64) -> Self {
        let mut m = self.m;
        m.iter_mut().flatten().for_each(|z| *z *= s);
        Self { m }
    }

    pub fn apply(&self, v: [C64; 2]) -> [C64; 2] {
        [
            self.m[0][0] * v[0] + self.m[0][1] * v[1],
            self.m[1][0] * v[0] + self.m[1][1] * v[1],
        ]
    }
}

pub fn build_heff(c: &CoefficientSet) -> Result<EffectiveHamiltonian> {
    if !check_dissipator_psd(c) {
        return Err(Error::Unphysical(format!(
            "Gamma_a = {}, Gamma_b = {}, |Gamma_coll|^2 = {}",
            c.gamma_a,
            c.gamma_b,
            c.gamma_coll.norm_sqr()
        )));
    }
    let half = 0.5 * I;
    Ok(EffectiveHamiltonian {
        m: [
            [
                C64::new(c.delta_omega_a, -0.5 * c.gamma_a),
                c.g.conj() - half * c.gamma_coll.conj(),
            ],
            [
                c.g - half * c.gamma_coll,
                C64::new(c.delta_omega_b, -0.5 * c.gamma_b),
            ],
        ],
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AmplitudePair {
    pub c_eg: C64,
    pub c_ge: C64,
}

impl AmplitudePair {
    pub fn norm_sqr(&self) -> f64 {
        self.c_eg.norm_sqr() + self.c_ge.norm_sqr()
    }

    pub fn as_array(&self) -> [C64; 2] {
        [self.c_eg, self.c_ge]
    }
}

impl From<InitialState> for AmplitudePair {
    fn from(s: InitialState) -> Self {
        Self {
            c_eg: s.c_eg0,
            c_ge: s.c_ge0,
        }
    }
}

/// `2 |c_eg c_ge^*|`.
pub fn concurrence(c: &AmplitudePair) -> f64 {
    2.0 * c.c_eg.norm() * c.c_ge.norm()
}

fn sinc(z: C64) -> C64 {
    if z.norm() < 1e-3 {
        let z2 = z * z;
        1.0 - z2 / 6.0 + z2 * z2 / 120.0
    } else {
        z.sin() / z
    }
}

/// Closed-form propagator for one Hamiltonian and initial state.
///
/// With `mu` the mean eigenvalue, `delta` half the splitting and
/// `N = M - mu I` (so `N^2 = delta^2 I`):
///
/// ```text
/// exp(-i M t) = e^{-i mu t} [ cos(delta t) I - i t sinc(delta t) N ]
/// ```
///
/// which is the spectral sum over the two eigenprojectors. At a degenerate
/// pair it reduces to the confluent form `e^{-i mu t} (I - i N t)`.
#[derive(Debug, Clone, Copy)]
pub struct Propagator {
    mu: C64,
    delta: C64,
    degenerate: bool,
    c0: [C64; 2],
    n_c0: [C64; 2],
}

impl Propagator {
    pub fn new(h: &EffectiveHamiltonian, c0: &InitialState) -> Self {
        let mu = h.trace_half();
        let delta = h.discriminant().sqrt();
        let degenerate = delta.norm() <= DEGENERACY_TOL * h.scale();
        let c0 = c0.as_array();
        let mc0 = h.apply(c0);
        let n_c0 = [mc0[0] - mu * c0[0], mc0[1] - mu * c0[1]];
        Self {
            mu,
            delta,
            degenerate,
            c0,
            n_c0,
        }
    }

    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    pub fn at(&self, t: f64) -> AmplitudePair {
        let (a, b) = if self.degenerate {
            let ph = (-I * self.mu * t).exp();
            (ph, ph * t)
        } else {
            let z = self.delta * t;
            if z.norm() < 0.5 {
                let ph = (-I * self.mu * t).exp();
                (ph * z.cos(), ph * t * sinc(z))
            } else {
                // each factor is bounded by 1 for a decaying spectrum
                let e_plus = (-I * (self.mu + self.delta) * t).exp();
                let e_minus = (-I * (self.mu - self.delta) * t).exp();
                (
                    (e_plus + e_minus) * 0.5,
                    (e_minus - e_plus) / (2.0 * I * self.delta),
                )
            }
        };
        AmplitudePair {
            c_eg: a * self.c0[0] - I * b * self.n_c0[0],
            c_ge: a * self.c0[1] - I * b * self.n_c0[1],
        }
    }
}

/// Exact amplitudes `exp(-i M t) c0`.
pub fn propagate_closed(h: &EffectiveHamiltonian, c0: &InitialState, t: f64) -> AmplitudePair {
    Propagator::new(h, c0).at(t)
}

/// Classical fourth-order Runge-Kutta integration of `i dc/dt = M c`.
///
/// Independent of the closed form; used to cross-check it.
pub fn propagate_numeric(
    h: &EffectiveHamiltonian,
    c0: &InitialState,
    t: f64,
    dt: f64,
) -> Result<AmplitudePair> {
    if !h.is_finite() || !t.is_finite() || !dt.is_finite() {
        return Err(Error::domain("non-finite input to numerical propagation"));
    }
    if t < 0.0 {
        return Err(Error::domain(format!("time must be non-negative, got {t}")));
    }
    if t > 0.0 && dt <= 0.0 {
        return Err(Error::domain(format!("step must be positive, got {dt}")));
    }
    let rhs = |c: [C64; 2]| -> [C64; 2] {
        let mc = h.apply(c);
        [-I * mc[0], -I * mc[1]]
    };
    let axpy = |c: [C64; 2], k: [C64; 2], s: f64| [c[0] + k[0] * s, c[1] + k[1] * s];

    let mut c = c0.as_array();
    let full_steps = (t / dt).floor() as u64;
    let remainder = t - full_steps as f64 * dt;
    let steps = std::iter::repeat_n(dt, full_steps as usize)
        .chain((remainder > 1e-15 * t.max(1.0)).then_some(remainder));
    for step in steps {
        let k1 = rhs(c);
        let k2 = rhs(axpy(c, k1, step / 2.0));
        let k3 = rhs(axpy(c, k2, step / 2.0));
        let k4 = rhs(axpy(c, k3, step));
        for i in 0..2 {
            c[i] += (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]) * (step / 6.0);
        }
    }
    Ok(AmplitudePair {
        c_eg: c[0],
        c_ge: c[1],
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<AmplitudePair>,
    pub concurrence: Vec<f64>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Largest concurrence and the time at which it occurs.
    pub fn peak(&self) -> Option<(f64, f64)> {
        self.concurrence
            .iter()
            .zip(&self.times)
            .fold(None, |best: Option<(f64, f64)>, (&c, &t)| match best {
                Some((bc, _)) if bc >= c => best,
                _ => Some((c, t)),
            })
    }
}

pub(crate) fn check_time_grid(t_grid: &[f64], name: &str) -> Result<()> {
    if t_grid.iter().any(|t| !t.is_finite()) {
        return Err(Error::domain(format!("{name} contains non-finite values")));
    }
    if let Some(&first) = t_grid.first() {
        if first < 0.0 {
            return Err(Error::domain(format!("{name} starts before t = 0")));
        }
    }
    if t_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::domain(format!("{name} must be strictly increasing")));
    }
    Ok(())
}

/// Amplitudes and concurrence at each grid time; each point is evaluated
/// independently from the exact propagator.
pub fn trajectory(
    h: &EffectiveHamiltonian,
    c0: &InitialState,
    t_grid: &[f64],
) -> Result<Trajectory> {
    check_time_grid(t_grid, "time grid")?;
    let prop = Propagator::new(h, c0);
    let states: Vec<AmplitudePair> = t_grid.iter().map(|&t| prop.at(t)).collect();
    let concurrence = states.iter().map(concurrence).collect();
    Ok(Trajectory {
        times: t_grid.to_vec(),
        states,
        concurrence,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeClass {
    DecaysToZero,
    SteadyPlateau,
    PersistentOscillation,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModeReport {
    pub eigenvalues: [C64; 2],
    pub classification: ModeClass,
    /// Long-time concurrence; `None` for persistent oscillation.
    pub predicted_c_ss: Option<f64>,
    /// Squared norm of the initial state's component along the
    /// non-decaying mode, when there is exactly one.
    pub dark_population: Option<f64>,
}

fn pick_larger(u: [C64; 2], v: [C64; 2]) -> [C64; 2] {
    if u[0].norm_sqr() + u[1].norm_sqr() >= v[0].norm_sqr() + v[1].norm_sqr() {
        u
    } else {
        v
    }
}

/// Classifies the long-time behaviour from the spectrum of `M`.
///
/// An eigenvalue counts as non-decaying when `|Im lambda| <= tol * scale`.
pub fn dark_modes(h: &EffectiveHamiltonian, c0: &InitialState, tol: f64) -> ModeReport {
    let eigenvalues = h.eigenvalues();
    let threshold = tol * h.scale();
    let stable: Vec<usize> = (0..2)
        .filter(|&k| eigenvalues[k].im.abs() <= threshold)
        .collect();
    match stable.as_slice() {
        [] => ModeReport {
            eigenvalues,
            classification: ModeClass::DecaysToZero,
            predicted_c_ss: Some(0.0),
            dark_population: None,
        },
        [k] => {
            let m = &h.m;
            let lambda = eigenvalues[*k];
            let right = pick_larger([m[0][1], lambda - m[0][0]], [lambda - m[1][1], m[1][0]]);
            let left = pick_larger([m[1][0], lambda - m[0][0]], [lambda - m[1][1], m[0][1]]);
            let c = c0.as_array();
            let norm = left[0] * right[0] + left[1] * right[1];
            let coeff = (left[0] * c[0] + left[1] * c[1]) / norm;
            let p = [right[0] * coeff, right[1] * coeff];
            ModeReport {
                eigenvalues,
                classification: ModeClass::SteadyPlateau,
                predicted_c_ss: Some(2.0 * p[0].norm() * p[1].norm()),
                dark_population: Some(p[0].norm_sqr() + p[1].norm_sqr()),
            }
        }
        _ => ModeReport {
            eigenvalues,
            classification: ModeClass::PersistentOscillation,
            predicted_c_ss: None,
            dark_population: None,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::{coefficients, coefficients_nonchiral};
    use crate::model::{make_preset, PresetTag};
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn heff(tag: PresetTag, phi: f64, gr: f64, gl: f64) -> EffectiveHamiltonian {
        build_heff(&coefficients(&make_preset(tag), phi, gr, gl).unwrap()).unwrap()
    }

    fn close(a: C64, b: C64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn zero_coefficients_give_zero_matrix() {
        let h = build_heff(&CoefficientSet::default()).unwrap();
        assert_eq!(h, EffectiveHamiltonian::zero());
    }

    #[test]
    fn separated_zero_phase_matrix() {
        let c = coefficients_nonchiral(&make_preset(PresetTag::Separated), 0.0, 1.0).unwrap();
        let h = build_heff(&c).unwrap();
        let expected = C64::new(0.0, -4.5);
        for z in h.m.iter().flatten() {
            assert!(close(*z, expected, 1e-12));
        }
    }

    #[test]
    fn braided_decoherence_free_matrix() {
        let c =
            coefficients_nonchiral(&make_preset(PresetTag::FullyBraided), PI / 3.0, 1.0).unwrap();
        let h = build_heff(&c).unwrap();
        let dw = C64::new(c.delta_omega_a, 0.0);
        assert!((c.delta_omega_a - c.delta_omega_b).abs() < 1e-12);
        assert!(close(h.m[0][0], dw, 1e-12));
        assert!(close(h.m[1][1], dw, 1e-12));
        assert!(close(h.m[0][1], C64::new(3f64.sqrt(), 0.0), 1e-12));
        assert!(close(h.m[1][0], C64::new(3f64.sqrt(), 0.0), 1e-12));
    }

    #[test]
    fn unphysical_coefficients_are_rejected() {
        let bad = CoefficientSet {
            gamma_a: 1.0,
            gamma_b: 1.0,
            gamma_coll: C64::new(2.0, 0.0),
            ..Default::default()
        };
        assert!(matches!(build_heff(&bad), Err(Error::Unphysical(_))));
    }

    #[test]
    fn cascade_has_no_back_action_channel() {
        let h = heff(PresetTag::Separated, 0.83, 1.0, 0.0);
        assert!(h.m[0][1].norm() < 1e-12);
        assert!(h.m[1][0].norm() > 0.1);
    }

    #[test]
    fn nonchiral_matrix_is_complex_symmetric() {
        for tag in PresetTag::NAMED {
            let h = heff(tag, 1.234, 0.5, 0.5);
            assert!(close(h.m[0][1], h.m[1][0], 1e-12));
        }
    }

    #[test]
    fn frozen_dynamics_for_zero_matrix() {
        let c = propagate_closed(&EffectiveHamiltonian::zero(), &InitialState::EG, 7.0);
        assert_eq!(c.c_eg, C64::new(1.0, 0.0));
        assert_eq!(c.c_ge, C64::new(0.0, 0.0));
    }

    #[test]
    fn braided_oscillation_closed_form() {
        let h = heff(PresetTag::FullyBraided, PI / 3.0, 0.5, 0.5);
        let t = PI / (4.0 * 3f64.sqrt());
        let c = propagate_closed(&h, &InitialState::EG, t);
        assert!((c.c_eg.norm() - FRAC_1_SQRT_2).abs() < 1e-12);
        assert!((c.c_ge.norm() - FRAC_1_SQRT_2).abs() < 1e-12);
        assert!((concurrence(&c) - 1.0).abs() < 1e-12);
        for k in 0..200 {
            let t = 0.05 * k as f64;
            let c = propagate_closed(&h, &InitialState::EG, t);
            let oracle = (2.0 * 3f64.sqrt() * t).sin().abs();
            assert!((concurrence(&c) - oracle).abs() < 1e-12, "t = {t}");
        }
    }

    #[test]
    fn separated_dark_state_closed_form() {
        let c = coefficients_nonchiral(&make_preset(PresetTag::Separated), 0.0, 1.0).unwrap();
        let h = build_heff(&c).unwrap();
        for &t in &[0.0, 0.01, 0.3, 1.0, 4.0] {
            let amp = propagate_closed(&h, &InitialState::EG, t);
            let e = (-9.0 * t).exp();
            assert!(close(amp.c_eg, C64::new((1.0 + e) / 2.0, 0.0), 1e-12));
            assert!(close(amp.c_ge, C64::new((e - 1.0) / 2.0, 0.0), 1e-12));
        }
        let late = propagate_closed(&h, &InitialState::EG, 10.0);
        assert!((concurrence(&late) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn degenerate_cascade_uses_confluent_branch() {
        // equal diagonal, one-way coupling: a Jordan block
        let h = heff(PresetTag::Separated, 0.5, 1.0, 0.0);
        let prop = Propagator::new(&h, &InitialState::EG);
        assert!(prop.is_degenerate());
        let lambda = h.m[0][0];
        for &t in &[0.0, 0.5, 1.0, 3.0] {
            let amp = prop.at(t);
            let ph = (-I * lambda * t).exp();
            assert!(close(amp.c_eg, ph, 1e-12));
            assert!(close(amp.c_ge, -I * h.m[1][0] * t * ph, 1e-12));
        }
    }

    #[test]
    fn numeric_matches_closed_examples() {
        let z =
            propagate_numeric(&EffectiveHamiltonian::zero(), &InitialState::GE, 3.0, 1e-3).unwrap();
        assert!(close(z.c_ge, C64::new(1.0, 0.0), 1e-12));
        assert!(z.c_eg.norm() < 1e-12);

        let h = heff(PresetTag::FullyBraided, PI / 3.0, 0.5, 0.5);
        let num = propagate_numeric(&h, &InitialState::EG, 1.0, 1e-3).unwrap();
        let exact = propagate_closed(&h, &InitialState::EG, 1.0);
        assert!(close(num.c_eg, exact.c_eg, 1e-8));
        assert!(close(num.c_ge, exact.c_ge, 1e-8));

        let c = coefficients_nonchiral(&make_preset(PresetTag::Separated), 0.0, 1.0).unwrap();
        let h = build_heff(&c).unwrap();
        let num = propagate_numeric(&h, &InitialState::EG, 2.0, 1e-3).unwrap();
        let e = (-18.0f64).exp();
        assert!(close(num.c_eg, C64::new((1.0 + e) / 2.0, 0.0), 1e-8));
        assert!(close(num.c_ge, C64::new((e - 1.0) / 2.0, 0.0), 1e-8));
    }

    #[test]
    fn numeric_lands_on_final_time() {
        // 0.37 / 0.1 leaves a partial step
        let h = heff(PresetTag::PartiallyNested, 0.9, 0.7, 0.3);
        let num = propagate_numeric(&h, &InitialState::EG, 0.37, 1e-4).unwrap();
        let exact = propagate_closed(&h, &InitialState::EG, 0.37);
        assert!(close(num.c_eg, exact.c_eg, 1e-10));
        let coarse = propagate_numeric(&h, &InitialState::EG, 0.37, 0.1).unwrap();
        assert!(close(coarse.c_ge, exact.c_ge, 1e-3));
    }

    #[test]
    fn numeric_rejects_bad_input() {
        let h = EffectiveHamiltonian::zero();
        assert!(propagate_numeric(&h, &InitialState::EG, f64::NAN, 1e-3).is_err());
        assert!(propagate_numeric(&h, &InitialState::EG, 1.0, 0.0).is_err());
        assert!(propagate_numeric(&h, &InitialState::EG, 0.0, 0.0).is_ok());
    }

    #[test]
    fn concurrence_examples() {
        let h = FRAC_1_SQRT_2;
        let pair = |a: f64, b: f64| AmplitudePair {
            c_eg: C64::new(a, 0.0),
            c_ge: C64::new(b, 0.0),
        };
        assert!((concurrence(&pair(h, h)) - 1.0).abs() < 1e-15);
        assert_eq!(concurrence(&pair(1.0, 0.0)), 0.0);
        assert!((concurrence(&pair(0.5, -0.5)) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn trajectory_examples() {
        let tr = trajectory(
            &EffectiveHamiltonian::zero(),
            &InitialState::EG,
            &[0.0, 1.0, 2.0],
        )
        .unwrap();
        assert_eq!(tr.concurrence, vec![0.0, 0.0, 0.0]);

        let h = heff(PresetTag::FullyBraided, PI / 3.0, 0.5, 0.5);
        let tr = trajectory(&h, &InitialState::EG, &[PI / (4.0 * 3f64.sqrt())]).unwrap();
        assert!((tr.concurrence[0] - 1.0).abs() < 1e-12);

        let c = coefficients_nonchiral(&make_preset(PresetTag::Separated), 0.0, 1.0).unwrap();
        let tr = trajectory(&build_heff(&c).unwrap(), &InitialState::EG, &[0.0, 10.0]).unwrap();
        assert_eq!(tr.concurrence[0], 0.0);
        assert!((tr.concurrence[1] - 0.5).abs() < 1e-6);

        assert!(trajectory(&h, &InitialState::EG, &[1.0, 0.5]).is_err());
        assert!(trajectory(&h, &InitialState::EG, &[-1.0, 0.5]).is_err());
        assert!(trajectory(&h, &InitialState::EG, &[0.5, 0.5]).is_err());
    }

    #[test]
    fn mode_report_examples() {
        let s = make_preset(PresetTag::Separated);
        let h = build_heff(&coefficients_nonchiral(&s, PI / 3.0, 1.0).unwrap()).unwrap();
        let r = dark_modes(&h, &InitialState::EG, DEFAULT_MODE_TOL);
        assert_eq!(r.classification, ModeClass::SteadyPlateau);
        assert!((r.predicted_c_ss.unwrap() - 0.5).abs() < 1e-12);
        assert!((r.dark_population.unwrap() - 0.5).abs() < 1e-12);

        let fb = make_preset(PresetTag::FullyBraided);
        let h = build_heff(&coefficients_nonchiral(&fb, PI / 3.0, 1.0).unwrap()).unwrap();
        let r = dark_modes(&h, &InitialState::EG, DEFAULT_MODE_TOL);
        assert_eq!(r.classification, ModeClass::PersistentOscillation);
        assert_eq!(r.predicted_c_ss, None);

        let h = build_heff(&coefficients_nonchiral(&s, 0.4 * PI, 1.0).unwrap()).unwrap();
        let r = dark_modes(&h, &InitialState::EG, DEFAULT_MODE_TOL);
        assert!(r.eigenvalues.iter().all(|l| l.im < -1e-3));
        assert_eq!(r.classification, ModeClass::DecaysToZero);
        assert_eq!(r.predicted_c_ss, Some(0.0));

        let r = dark_modes(
            &EffectiveHamiltonian::zero(),
            &InitialState::EG,
            DEFAULT_MODE_TOL,
        );
        assert_eq!(r.classification, ModeClass::PersistentOscillation);
    }

    #[test]
    fn decay_matrix_is_hermitian_psd() {
        let h = heff(PresetTag::PartiallyBraided, 1.9, 0.8, 0.2);
        let d = h.decay_matrix();
        assert!(close(d[0][1], d[1][0].conj(), 1e-12));
        assert!(d[0][0].re >= 0.0 && d[1][1].re >= 0.0);
        let det = d[0][0] * d[1][1] - d[0][1] * d[1][0];
        assert!(det.re >= -1e-12);
    }
}
