//! CSV and NDJSON writers with fixed column orders.
//!
//! | result | columns |
//! |---|---|
//! | trajectory | `t,c_eg_re,c_eg_im,c_ge_re,c_ge_im,concurrence` |
//! | sweep | `phi,t,concurrence` (phi outer, t inner) |
//! | coefficients | `phi,delta_a,delta_b,gamma_a,gamma_b,gcoll_re,gcoll_im,g_re,g_im` |
//! | maximum | `c_max,phi_star,t_star,c_eg_re,c_eg_im,c_ge_re,c_ge_im` |
//! | calibration | `configuration,ordering,default_ordering,score,residual_nc_eg,residual_nc_ge,residual_ch_eg,residual_ch_ge,constraints_met,resolved` |
//! | special phases | `phi,kind` |
//! | chirality scan | `chi,t,concurrence,peak_count` |
//! | initial-state comparison | `phi,t,concurrence_eg,concurrence_ge,abs_diff` |
//! | steady state | `is_steady,window_found,c_ss,settle_time,mode,predicted_c_ss` |
//!
//! NDJSON output carries the same keys, one object per CSV row.

use std::io::Write;

use serde_json::{json, Map, Value};

use crate::coefficients::CoefficientSet;
use crate::dynamics::{AmplitudePair, ModeClass, Trajectory};
use crate::error::{Error, Result};
use crate::experiments::{
    CalibrationResult, ChiralityTrace, InitialStateComparison, MaxResult, SpecialPhase,
    SteadyStateReport, SweepGrid,
};

use super::OutputFormat;

/// Shortest decimal text that parses back to the same `f64`.
pub fn format_float(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let a = x.abs();
    if (1e-5..1e16).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

/// Phase-resolved coefficient dump row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoefficientRow {
    pub phi: f64,
    pub coefficients: CoefficientSet,
}

/// Anything the command line can emit.
#[derive(Debug, Clone, Copy)]
pub enum ResultRef<'a> {
    Trajectory(&'a Trajectory),
    Sweep(&'a SweepGrid),
    Coefficients(&'a [CoefficientRow]),
    Max(&'a MaxResult),
    Calibration(&'a CalibrationResult),
    SpecialPhases(&'a [SpecialPhase]),
    ChiralityScan(&'a [ChiralityTrace]),
    Comparison(&'a InitialStateComparison),
    Steady(&'a SteadyStateReport),
}

enum Cell {
    Num(f64),
    Int(usize),
    Text(String),
    Bool(bool),
    Missing,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(x) => format_float(*x),
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Missing => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(x) => json!(x),
            Cell::Int(n) => json!(n),
            Cell::Text(s) => json!(s),
            Cell::Bool(b) => json!(b),
            Cell::Missing => Value::Null,
        }
    }
}

fn opt(x: Option<f64>) -> Cell {
    x.map_or(Cell::Missing, Cell::Num)
}

fn amplitude_cells(a: &AmplitudePair) -> [Cell; 4] {
    [
        Cell::Num(a.c_eg.re),
        Cell::Num(a.c_eg.im),
        Cell::Num(a.c_ge.re),
        Cell::Num(a.c_ge.im),
    ]
}

fn mode_name(m: ModeClass) -> &'static str {
    match m {
        ModeClass::DecaysToZero => "decays_to_zero",
        ModeClass::SteadyPlateau => "steady_plateau",
        ModeClass::PersistentOscillation => "persistent_oscillation",
    }
}

fn table(result: ResultRef<'_>) -> (&'static [&'static str], Vec<Vec<Cell>>) {
    use Cell::*;
    match result {
        ResultRef::Trajectory(tr) => (
            &[
                "t",
                "c_eg_re",
                "c_eg_im",
                "c_ge_re",
                "c_ge_im",
                "concurrence",
            ],
            tr.times
                .iter()
                .zip(&tr.states)
                .zip(&tr.concurrence)
                .map(|((&t, s), &c)| {
                    let mut row = vec![Num(t)];
                    row.extend(amplitude_cells(s));
                    row.push(Num(c));
                    row
                })
                .collect(),
        ),
        ResultRef::Sweep(g) => (
            &["phi", "t", "concurrence"],
            g.phi_values
                .iter()
                .zip(&g.c_matrix)
                .flat_map(|(&phi, row)| {
                    g.t_values
                        .iter()
                        .zip(row)
                        .map(move |(&t, &c)| vec![Num(phi), Num(t), Num(c)])
                })
                .collect(),
        ),
        ResultRef::Coefficients(rows) => (
            &[
                "phi", "delta_a", "delta_b", "gamma_a", "gamma_b", "gcoll_re", "gcoll_im", "g_re",
                "g_im",
            ],
            rows.iter()
                .map(|r| {
                    let c = &r.coefficients;
                    vec![
                        Num(r.phi),
                        Num(c.delta_omega_a),
                        Num(c.delta_omega_b),
                        Num(c.gamma_a),
                        Num(c.gamma_b),
                        Num(c.gamma_coll.re),
                        Num(c.gamma_coll.im),
                        Num(c.g.re),
                        Num(c.g.im),
                    ]
                })
                .collect(),
        ),
        ResultRef::Max(m) => {
            let mut row = vec![Num(m.c_max), Num(m.phi_star), Num(m.t_star)];
            row.extend(amplitude_cells(&m.amplitudes_at_max));
            (
                &[
                    "c_max", "phi_star", "t_star", "c_eg_re", "c_eg_im", "c_ge_re", "c_ge_im",
                ],
                vec![row],
            )
        }
        ResultRef::Calibration(cal) => (
            &[
                "configuration",
                "ordering",
                "default_ordering",
                "score",
                "residual_nc_eg",
                "residual_nc_ge",
                "residual_ch_eg",
                "residual_ch_ge",
                "constraints_met",
                "resolved",
            ],
            cal.assignments
                .iter()
                .map(|a| {
                    let mut row = vec![
                        Text(a.configuration.as_str().into()),
                        Text(a.ordering.clone()),
                        Text(a.default_ordering.clone()),
                        Num(a.score),
                    ];
                    row.extend(a.residuals.iter().map(|&r| Num(r)));
                    row.push(Bool(a.constraints_met));
                    row.push(Bool(a.resolved));
                    row
                })
                .collect(),
        ),
        ResultRef::SpecialPhases(list) => (
            &["phi", "kind"],
            list.iter()
                .map(|s| vec![Num(s.phi), Text(s.kind.as_str().into())])
                .collect(),
        ),
        ResultRef::ChiralityScan(traces) => (
            &["chi", "t", "concurrence", "peak_count"],
            traces
                .iter()
                .flat_map(|tr| {
                    tr.trajectory
                        .times
                        .iter()
                        .zip(&tr.trajectory.concurrence)
                        .map(move |(&t, &c)| vec![Num(tr.chi), Num(t), Num(c), Int(tr.peak_count)])
                })
                .collect(),
        ),
        ResultRef::Comparison(cmp) => (
            &["phi", "t", "concurrence_eg", "concurrence_ge", "abs_diff"],
            cmp.eg
                .phi_values
                .iter()
                .enumerate()
                .flat_map(|(i, &phi)| {
                    cmp.eg.t_values.iter().enumerate().map(move |(j, &t)| {
                        let (a, b) = (cmp.eg.c_matrix[i][j], cmp.ge.c_matrix[i][j]);
                        vec![Num(phi), Num(t), Num(a), Num(b), Num((a - b).abs())]
                    })
                })
                .collect(),
        ),
        ResultRef::Steady(s) => (
            &[
                "is_steady",
                "window_found",
                "c_ss",
                "settle_time",
                "mode",
                "predicted_c_ss",
            ],
            vec![vec![
                Bool(s.is_steady),
                Bool(s.window_found),
                opt(s.c_ss),
                opt(s.settle_time),
                Text(mode_name(s.modes.classification).into()),
                opt(s.modes.predicted_c_ss),
            ]],
        ),
    }
}

/// Writes `result` as CSV (with header) or NDJSON.
pub fn serialize_results<W: Write>(
    result: ResultRef<'_>,
    format: OutputFormat,
    sink: &mut W,
) -> Result<()> {
    let (header, rows) = table(result);
    match format {
        OutputFormat::Csv => {
            writeln!(sink, "{}", header.join(","))?;
            for row in rows {
                let line: Vec<String> = row.iter().map(Cell::csv).collect();
                writeln!(sink, "{}", line.join(","))?;
            }
        }
        OutputFormat::Ndjson => {
            for row in rows {
                let obj: Map<String, Value> = header
                    .iter()
                    .zip(&row)
                    .map(|(k, v)| (k.to_string(), v.json()))
                    .collect();
                writeln!(sink, "{}", Value::Object(obj))?;
            }
        }
        OutputFormat::Svg => {
            return Err(Error::validation(
                "format",
                "svg output is only available for sweeps",
            ))
        }
    }
    sink.flush()?;
    Ok(())
}

pub fn to_string(result: ResultRef<'_>, format: OutputFormat) -> Result<String> {
    let mut buf = Vec::new();
    serialize_results(result, format, &mut buf)?;
    Ok(String::from_utf8(buf).expect("writers emit UTF-8"))
}
