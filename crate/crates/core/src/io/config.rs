//! JSON experiment documents.
//!
//! ```json
//! {
//!   "layout": "fully_braided" | {"a": [0, 2, 4], "b": [1, 3, 5]},
//!   "gamma": 1.0,
//!   "chi": 0.0,
//!   "phi": 1.047 | {"start": 0, "stop": 6.283, "count": 2001},
//!   "time": {"start": 0, "stop": 50, "count": 2001},
//!   "initial": "eg" | "ge" | [re, im, re, im],
//!   "window": 10, "tol": 0.001, "horizon": 50,
//!   "chis": [0, 0.5, 1], "axis": "gamma_t",
//!   "out": "result.csv", "format": "csv" | "ndjson" | "svg"
//! }
//! ```
//!
//! Everything except `layout` is optional.

use std::f64::consts::TAU;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::experiments::{linspace, TimeAxis};
use crate::model::{make_preset, ChiralitySpec, InitialState, LayoutConfiguration, PresetTag};
use crate::C64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl GridSpec {
    pub fn values(&self) -> Vec<f64> {
        linspace(self.start, self.stop, self.count)
    }

    fn check(&self, field: &str) -> Result<()> {
        if !(self.start.is_finite() && self.stop.is_finite()) {
            return Err(Error::validation(field, "grid bounds must be finite"));
        }
        if self.count == 0 {
            return Err(Error::validation(field, "grid needs at least one point"));
        }
        if self.stop < self.start || (self.count > 1 && self.stop == self.start) {
            return Err(Error::validation(
                field,
                format!("grid must increase, got {} to {}", self.start, self.stop),
            ));
        }
        Ok(())
    }
}

impl FromStr for GridSpec {
    type Err = String;

    /// `start:stop:count`
    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [start, stop, count] = parts.as_slice() else {
            return Err(format!("expected start:stop:count, got '{s}'"));
        };
        let num = |x: &str| x.trim().parse::<f64>().map_err(|e| format!("'{x}': {e}"));
        Ok(GridSpec {
            start: num(start)?,
            stop: num(stop)?,
            count: count
                .trim()
                .parse()
                .map_err(|e| format!("'{count}': {e}"))?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PhiSpec {
    Single(f64),
    Grid(GridSpec),
}

impl PhiSpec {
    pub fn values(&self) -> Vec<f64> {
        match self {
            PhiSpec::Single(p) => vec![*p],
            PhiSpec::Grid(g) => g.values(),
        }
    }

    pub fn single(&self) -> Option<f64> {
        match self {
            PhiSpec::Single(p) => Some(*p),
            PhiSpec::Grid(_) => None,
        }
    }

    /// Endpoints of the phase interval covered.
    pub fn range(&self) -> (f64, f64) {
        match self {
            PhiSpec::Single(p) => (*p, *p),
            PhiSpec::Grid(g) => (g.start, g.stop),
        }
    }

    fn check(&self) -> Result<()> {
        match self {
            PhiSpec::Single(p) if p.is_finite() => Ok(()),
            PhiSpec::Single(p) => Err(Error::validation("phi", format!("must be finite, got {p}"))),
            PhiSpec::Grid(g) => g.check("phi"),
        }
    }
}

impl FromStr for PhiSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s.contains(':') {
            s.parse().map(PhiSpec::Grid)
        } else {
            s.trim()
                .parse::<f64>()
                .map(PhiSpec::Single)
                .map_err(|e| format!("'{s}': {e}"))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LayoutSpec {
    Preset(String),
    Positions { a: Vec<u32>, b: Vec<u32> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InitialSpec {
    Named(String),
    Amplitudes([f64; 4]),
}

impl FromStr for InitialSpec {
    type Err = String;

    /// `eg`, `ge`, or `re,im,re,im`.
    fn from_str(s: &str) -> Result<Self, String> {
        if !s.contains(',') {
            return Ok(InitialSpec::Named(s.trim().to_string()));
        }
        let values = s
            .split(',')
            .map(|x| x.trim().parse::<f64>().map_err(|e| format!("'{x}': {e}")))
            .collect::<Result<Vec<f64>, String>>()?;
        let arr: [f64; 4] = values
            .try_into()
            .map_err(|v: Vec<f64>| format!("expected 4 numbers, got {}", v.len()))?;
        Ok(InitialSpec::Amplitudes(arr))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Ndjson,
    Svg,
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Ndjson => "ndjson",
            OutputFormat::Svg => "svg",
        })
    }
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "ndjson" | "jsonl" => Ok(OutputFormat::Ndjson),
            "svg" => Ok(OutputFormat::Svg),
            other => Err(format!("unknown format '{other}'")),
        }
    }
}

/// The document as written, before defaults and validation.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub layout: Option<LayoutSpec>,
    #[serde(
        default,
        alias = "gamma_total",
        skip_serializing_if = "Option::is_none"
    )]
    pub gamma: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<PhiSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub time: Option<GridSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial: Option<InitialSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub horizon: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chis: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub axis: Option<TimeAxis>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<OutputFormat>,
}

/// A validated experiment with every default filled in.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub layout: LayoutConfiguration,
    pub chirality: ChiralitySpec,
    pub phi: PhiSpec,
    pub time: GridSpec,
    pub initial: InitialState,
    pub window: f64,
    pub tol: f64,
    pub horizon: f64,
    pub chis: Vec<f64>,
    pub axis: TimeAxis,
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
}

pub const DEFAULT_TIME: GridSpec = GridSpec {
    start: 0.0,
    stop: 50.0,
    count: 2001,
};

pub const DEFAULT_PHI: GridSpec = GridSpec {
    start: 0.0,
    stop: TAU,
    count: 2001,
};

fn resolve_layout(spec: &LayoutSpec) -> Result<LayoutConfiguration> {
    match spec {
        LayoutSpec::Preset(name) => {
            let tag: PresetTag = name.parse()?;
            if tag == PresetTag::Custom {
                return Err(Error::validation(
                    "layout",
                    "a custom layout needs explicit positions",
                ));
            }
            Ok(make_preset(tag))
        }
        LayoutSpec::Positions { a, b } => {
            let cfg = LayoutConfiguration::from_positions(a, b);
            cfg.ensure_valid()?;
            Ok(cfg)
        }
    }
}

fn resolve_initial(spec: &InitialSpec) -> Result<InitialState> {
    match spec {
        InitialSpec::Named(name) => match name.to_ascii_lowercase().as_str() {
            "eg" => Ok(InitialState::EG),
            "ge" => Ok(InitialState::GE),
            other => Err(Error::validation(
                "initial",
                format!("expected 'eg', 'ge' or four numbers, got '{other}'"),
            )),
        },
        InitialSpec::Amplitudes([a, b, c, d]) => {
            InitialState::new(C64::new(*a, *b), C64::new(*c, *d))
        }
    }
}

fn positive(field: &str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::validation(
            field,
            format!("must be positive, got {value}"),
        ))
    }
}

impl RawSpec {
    /// Fields set in `other` replace those set here.
    pub fn merge(mut self, other: RawSpec) -> RawSpec {
        macro_rules! take {
            ($($f:ident),*) => {$(if other.$f.is_some() { self.$f = other.$f; })*};
        }
        take!(
            layout, gamma, chi, phi, time, initial, window, tol, horizon, chis, axis, out, format
        );
        self
    }

    pub fn resolve(&self) -> Result<ExperimentSpec> {
        let layout = match &self.layout {
            Some(l) => resolve_layout(l)?,
            None => return Err(Error::validation("layout", "missing")),
        };
        let chirality = ChiralitySpec::new(self.gamma.unwrap_or(1.0), self.chi.unwrap_or(0.0))?;
        let phi = self.phi.unwrap_or(PhiSpec::Grid(DEFAULT_PHI));
        phi.check()?;
        let time = self.time.unwrap_or(DEFAULT_TIME);
        time.check("time")?;
        if time.start < 0.0 {
            return Err(Error::validation("time", "grid must start at or after 0"));
        }
        let initial = match &self.initial {
            Some(i) => resolve_initial(i)?,
            None => InitialState::EG,
        };
        let chis = self.chis.clone().unwrap_or_else(|| vec![0.0, 0.5, 1.0]);
        if chis.is_empty() {
            return Err(Error::validation("chis", "list is empty"));
        }
        for &c in &chis {
            ChiralitySpec::new(chirality.gamma_total, c)
                .map_err(|_| Error::validation("chis", format!("{c} is outside [0, 1]")))?;
        }
        Ok(ExperimentSpec {
            layout,
            chirality,
            phi,
            time,
            initial,
            window: positive("window", self.window.unwrap_or(10.0))?,
            tol: positive("tol", self.tol.unwrap_or(1e-3))?,
            horizon: positive("horizon", self.horizon.unwrap_or(50.0))?,
            chis,
            axis: self.axis.unwrap_or_default(),
            out: self.out.clone(),
            format: self.format.unwrap_or_default(),
        })
    }
}

impl ExperimentSpec {
    /// A document that parses back to this spec.
    pub fn to_raw(&self) -> RawSpec {
        let layout = match self.layout.preset {
            Some(tag) if tag != PresetTag::Custom => LayoutSpec::Preset(tag.as_str().to_string()),
            _ => LayoutSpec::Positions {
                a: self.layout.atom_a.positions(),
                b: self.layout.atom_b.positions(),
            },
        };
        let initial = if self.initial == InitialState::EG {
            InitialSpec::Named("eg".into())
        } else if self.initial == InitialState::GE {
            InitialSpec::Named("ge".into())
        } else {
            let [a, b] = self.initial.as_array();
            InitialSpec::Amplitudes([a.re, a.im, b.re, b.im])
        };
        RawSpec {
            layout: Some(layout),
            gamma: Some(self.chirality.gamma_total),
            chi: Some(self.chirality.chi),
            phi: Some(self.phi),
            time: Some(self.time),
            initial: Some(initial),
            window: Some(self.window),
            tol: Some(self.tol),
            horizon: Some(self.horizon),
            chis: Some(self.chis.clone()),
            axis: Some(self.axis),
            out: self.out.clone(),
            format: Some(self.format),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_raw()).expect("spec serializes")
    }
}

/// Parses a JSON document into a raw spec without applying defaults.
pub fn parse_raw_config(text: &str) -> Result<RawSpec> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let raw: RawSpec = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        if inner.is_data() {
            let field = path.split('.').next().unwrap_or(&path).to_string();
            let field = if field.is_empty() || field == "?" {
                "document".to_string()
            } else {
                field
            };
            Error::validation(field, inner.to_string())
        } else {
            Error::Parse {
                line: inner.line(),
                column: inner.column(),
                message: inner.to_string(),
            }
        }
    })?;
    Ok(raw)
}

/// Parses and validates a JSON experiment document.
pub fn parse_experiment_config(text: &str) -> Result<ExperimentSpec> {
    parse_raw_config(text)?.resolve()
}
