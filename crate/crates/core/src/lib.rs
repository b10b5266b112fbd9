//! Entanglement dynamics of two three-point giant atoms coupled to a
//! waveguide with direction-dependent decay rates.
//!
//! The pipeline runs layout -> coupling coefficients -> effective
//! Hamiltonian -> amplitudes -> concurrence, with studies layered on top.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod coefficients;
pub mod dynamics;
pub mod error;
pub mod experiments;
pub mod io;
pub mod model;

pub use num_complex::Complex64 as C64;

pub use coefficients::{coefficients, coefficients_nonchiral, CoefficientSet};
pub use dynamics::{
    build_heff, concurrence, dark_modes, propagate_closed, propagate_numeric, trajectory,
    AmplitudePair, EffectiveHamiltonian, ModeClass, ModeReport, Propagator, Trajectory,
};
pub use error::{Error, Result};
pub use model::{make_preset, ChiralitySpec, InitialState, LayoutConfiguration, PresetTag};
