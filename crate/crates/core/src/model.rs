//! Waveguide geometry: coupling points, giant atoms, the five named layouts,
//! and the chirality parametrization of the directional emission rates.
//!
//! Positions are integer multiples of the fixed inter-point spacing, so every
//! propagation phase between two coupling points is an integer multiple of the
//! phase shift `phi`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Number of waveguide connection points per giant atom.
pub const POINTS_PER_ATOM: usize = 3;

const NORM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AtomLabel {
    A,
    B,
}

impl fmt::Display for AtomLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AtomLabel::A => f.write_str("a"),
            AtomLabel::B => f.write_str("b"),
        }
    }
}

/// Emission rates into the right- and left-propagating waveguide modes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DirectionalRates {
    pub right: f64,
    pub left: f64,
}

impl DirectionalRates {
    pub fn new(right: f64, left: f64) -> Self {
        Self { right, left }
    }

    pub fn total(&self) -> f64 {
        self.right + self.left
    }
}

/// A single connection point between an atom and the waveguide.
///
/// `rates` is `None` when the point inherits the uniform rates supplied at the
/// call site.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CouplingPoint {
    pub position: u32,
    pub rates: Option<DirectionalRates>,
}

impl CouplingPoint {
    pub fn at(position: u32) -> Self {
        Self {
            position,
            rates: None,
        }
    }

    pub fn with_rates(position: u32, rates: DirectionalRates) -> Self {
        Self {
            position,
            rates: Some(rates),
        }
    }

    /// Rates of this point, falling back to `uniform` when unset.
    pub fn rates_or(&self, uniform: DirectionalRates) -> DirectionalRates {
        self.rates.unwrap_or(uniform)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GiantAtom {
    pub label: AtomLabel,
    pub points: Vec<CouplingPoint>,
}

impl GiantAtom {
    pub fn new(label: AtomLabel, positions: &[u32]) -> Self {
        Self {
            label,
            points: positions.iter().copied().map(CouplingPoint::at).collect(),
        }
    }

    pub fn positions(&self) -> Vec<u32> {
        self.points.iter().map(|p| p.position).collect()
    }

    /// Smallest and largest position, or `None` for an atom without points.
    pub fn span(&self) -> Option<(u32, u32)> {
        let min = self.points.iter().map(|p| p.position).min()?;
        let max = self.points.iter().map(|p| p.position).max()?;
        Some((min, max))
    }
}

/// The named arrangements of the two atoms' connection points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PresetTag {
    Separated,
    FullyBraided,
    PartiallyBraided,
    FullyNested,
    PartiallyNested,
    Custom,
}

impl PresetTag {
    /// The five named configurations, in presentation order.
    pub const NAMED: [PresetTag; 5] = [
        PresetTag::Separated,
        PresetTag::FullyBraided,
        PresetTag::PartiallyBraided,
        PresetTag::FullyNested,
        PresetTag::PartiallyNested,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            PresetTag::Separated => "separated",
            PresetTag::FullyBraided => "fully_braided",
            PresetTag::PartiallyBraided => "partially_braided",
            PresetTag::FullyNested => "fully_nested",
            PresetTag::PartiallyNested => "partially_nested",
            PresetTag::Custom => "custom",
        }
    }

    /// Canonical a/b ordering of the preset on positions 0..5.
    pub fn canonical_ordering(&self) -> Option<&'static str> {
        match self {
            PresetTag::Separated => Some("aaabbb"),
            PresetTag::FullyBraided => Some("ababab"),
            PresetTag::PartiallyBraided => Some("aababb"),
            PresetTag::FullyNested => Some("abbbaa"),
            PresetTag::PartiallyNested => Some("ababba"),
            PresetTag::Custom => None,
        }
    }
}

impl fmt::Display for PresetTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PresetTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        let tag = match key.as_str() {
            "separated" | "s" => PresetTag::Separated,
            "fully_braided" | "fb" => PresetTag::FullyBraided,
            "partially_braided" | "pb" => PresetTag::PartiallyBraided,
            "fully_nested" | "fn" => PresetTag::FullyNested,
            "partially_nested" | "pn" => PresetTag::PartiallyNested,
            "custom" => PresetTag::Custom,
            _ => return Err(Error::validation("layout", format!("unknown preset `{s}`"))),
        };
        Ok(tag)
    }
}

/// Two giant atoms sharing one waveguide.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayoutConfiguration {
    pub atom_a: GiantAtom,
    pub atom_b: GiantAtom,
    pub preset: Option<PresetTag>,
}

impl LayoutConfiguration {
    pub fn from_positions(a: &[u32], b: &[u32]) -> Self {
        Self {
            atom_a: GiantAtom::new(AtomLabel::A, a),
            atom_b: GiantAtom::new(AtomLabel::B, b),
            preset: Some(PresetTag::Custom),
        }
    }

    /// Builds a layout from a string of `a`/`b` letters, one per consecutive
    /// lattice site starting at 0.
    pub fn from_ordering(ordering: &str) -> Result<Self> {
        let mut a = Vec::new();
        let mut b = Vec::new();
        for (i, ch) in ordering.chars().enumerate() {
            match ch.to_ascii_lowercase() {
                'a' => a.push(i as u32),
                'b' => b.push(i as u32),
                other => {
                    return Err(Error::validation(
                        "layout",
                        format!("ordering may only contain `a` and `b`, found `{other}`"),
                    ))
                }
            }
        }
        let cfg = Self::from_positions(&a, &b);
        cfg.ensure_valid()?;
        Ok(cfg)
    }

    /// The letters of the two atoms read left to right along the waveguide.
    pub fn ordering(&self) -> String {
        let mut sites: Vec<(u32, char)> = self
            .atom_a
            .points
            .iter()
            .map(|p| (p.position, 'a'))
            .chain(self.atom_b.points.iter().map(|p| (p.position, 'b')))
            .collect();
        sites.sort_unstable();
        sites.into_iter().map(|(_, c)| c).collect()
    }

    /// Overrides every coupling point with the same directional rates.
    pub fn with_uniform_rates(mut self, rates: DirectionalRates) -> Self {
        for p in self
            .atom_a
            .points
            .iter_mut()
            .chain(self.atom_b.points.iter_mut())
        {
            p.rates = Some(rates);
        }
        self
    }

    pub fn validate(&self) -> ValidationReport {
        validate_layout(self)
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let report = validate_layout(self);
        if report.is_valid() {
            Ok(())
        } else {
            Err(Error::validation("layout", report.to_string()))
        }
    }
}

/// Canonical layout for a named configuration.
///
/// Panics on [`PresetTag::Custom`], which has no canonical positions.
pub fn make_preset(tag: PresetTag) -> LayoutConfiguration {
    let ordering = tag
        .canonical_ordering()
        .expect("custom layouts have no canonical positions");
    let mut cfg = LayoutConfiguration::from_ordering(ordering).expect("preset orderings are valid");
    cfg.preset = Some(tag);
    cfg
}

#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    WrongPointCount { atom: AtomLabel, count: usize },
    NotIncreasing { atom: AtomLabel, index: usize },
    DuplicatePosition { position: u32 },
    InvalidRate { atom: AtomLabel, index: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::WrongPointCount { atom, count } => write!(
                f,
                "atom {atom} has {count} coupling points, expected {POINTS_PER_ATOM}"
            ),
            Violation::NotIncreasing { atom, index } => write!(
                f,
                "atom {atom}: position {index} is not greater than the previous one"
            ),
            Violation::DuplicatePosition { position } => {
                write!(f, "position {position} is used more than once")
            }
            Violation::InvalidRate { atom, index } => write!(
                f,
                "atom {atom}: point {index} has a negative or non-finite rate"
            ),
        }
    }
}

/// Violations found by [`validate_layout`]; empty iff the layout is valid.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

pub fn validate_layout(cfg: &LayoutConfiguration) -> ValidationReport {
    let mut violations = Vec::new();
    for atom in [&cfg.atom_a, &cfg.atom_b] {
        if atom.points.len() != POINTS_PER_ATOM {
            violations.push(Violation::WrongPointCount {
                atom: atom.label,
                count: atom.points.len(),
            });
        }
        for (i, pair) in atom.points.windows(2).enumerate() {
            if pair[1].position <= pair[0].position {
                violations.push(Violation::NotIncreasing {
                    atom: atom.label,
                    index: i + 1,
                });
            }
        }
        for (i, p) in atom.points.iter().enumerate() {
            if let Some(r) = p.rates {
                let ok = [r.right, r.left].iter().all(|x| x.is_finite() && *x >= 0.0);
                if !ok {
                    violations.push(Violation::InvalidRate {
                        atom: atom.label,
                        index: i,
                    });
                }
            }
        }
    }
    let mut a = cfg.atom_a.positions();
    a.sort_unstable();
    a.dedup();
    let mut b = cfg.atom_b.positions();
    b.sort_unstable();
    b.dedup();
    for &pos in a.iter().filter(|p| b.binary_search(p).is_ok()) {
        violations.push(Violation::DuplicatePosition { position: pos });
    }
    ValidationReport { violations }
}

/// Ordering sign of a cross pair: +1 if `x_a < x_b`, 0 if equal, -1 otherwise.
pub fn epsilon(x_a: i64, x_b: i64) -> i32 {
    match x_a.cmp(&x_b) {
        std::cmp::Ordering::Less => 1,
        std::cmp::Ordering::Equal => 0,
        std::cmp::Ordering::Greater => -1,
    }
}

/// Total emission rate per point and its directional asymmetry `chi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChiralitySpec {
    pub gamma_total: f64,
    pub chi: f64,
}

impl ChiralitySpec {
    pub fn new(gamma_total: f64, chi: f64) -> Result<Self> {
        let spec = Self { gamma_total, chi };
        spec.check()?;
        Ok(spec)
    }

    pub fn nonchiral(gamma_total: f64) -> Result<Self> {
        Self::new(gamma_total, 0.0)
    }

    pub fn check(&self) -> Result<()> {
        if !(self.gamma_total.is_finite() && self.gamma_total > 0.0) {
            return Err(Error::validation(
                "gamma",
                format!("must be a positive finite rate, got {}", self.gamma_total),
            ));
        }
        if !(0.0..=1.0).contains(&self.chi) {
            return Err(Error::validation(
                "chi",
                format!("must lie in [0, 1], got {}", self.chi),
            ));
        }
        Ok(())
    }

    pub fn rates(&self) -> Result<DirectionalRates> {
        rates_from_chirality(*self)
    }

    /// Emission rate into the right-propagating modes, `gamma (1 + chi) / 2`.
    pub fn gamma_right(&self) -> f64 {
        self.gamma_total * (1.0 + self.chi) / 2.0
    }
}

/// Splits the total rate into `gamma_R = gamma (1+chi)/2`, `gamma_L = gamma (1-chi)/2`.
pub fn rates_from_chirality(spec: ChiralitySpec) -> Result<DirectionalRates> {
    spec.check().map_err(|e| Error::domain(e.to_string()))?;
    let g = spec.gamma_total;
    Ok(DirectionalRates {
        right: g * (1.0 + spec.chi) / 2.0,
        left: g * (1.0 - spec.chi) / 2.0,
    })
}

/// Single-excitation amplitudes at `t = 0` in the basis (|e_a g_b>, |g_a e_b>).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InitialState {
    pub c_eg0: C64,
    pub c_ge0: C64,
}

impl InitialState {
    /// Atom a excited, atom b in its ground state.
    pub const EG: InitialState = InitialState {
        c_eg0: C64::new(1.0, 0.0),
        c_ge0: C64::new(0.0, 0.0),
    };

    /// Atom b excited, atom a in its ground state.
    pub const GE: InitialState = InitialState {
        c_eg0: C64::new(0.0, 0.0),
        c_ge0: C64::new(1.0, 0.0),
    };

    pub fn new(c_eg0: C64, c_ge0: C64) -> Result<Self> {
        let norm = c_eg0.norm_sqr() + c_ge0.norm_sqr();
        if !norm.is_finite() || (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::validation(
                "initial",
                format!("amplitudes must be normalized, |c_eg|^2 + |c_ge|^2 = {norm}"),
            ));
        }
        Ok(Self { c_eg0, c_ge0 })
    }

    pub fn as_array(&self) -> [C64; 2] {
        [self.c_eg0, self.c_ge0]
    }

    pub fn is_real(&self) -> bool {
        self.c_eg0.im == 0.0 && self.c_ge0.im == 0.0
    }
}
