//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage or validation error, 2 I/O error,
//! 3 unphysical coefficients.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{error::ErrorKind, Args, Parser, Subcommand};

use crate::coefficients::coefficients;
use crate::dynamics::trajectory;
use crate::error::{Error, Result};
use crate::experiments::{
    calibrate_presets, chirality_scan, compare_initial_states, dimensionless_hamiltonian, find_max,
    find_special_phases, steady_state, sweep, CalibrationOptions, CalibrationTargets,
    FindMaxOptions, SpecialPhaseOptions, SteadyOptions, TimeAxis,
};
use crate::io::{
    parse_raw_config, render_svg_heatmap, serialize_results, CoefficientRow, ExperimentSpec,
    GridSpec, HeatmapOptions, InitialSpec, LayoutSpec, OutputFormat, PhiSpec, RawSpec, ResultRef,
};
use crate::model::rates_from_chirality;

#[derive(Debug, Parser)]
#[command(
    name = "giant-qed",
    version,
    about = "Two giant atoms in a chiral waveguide"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args, Default)]
struct Common {
    /// JSON experiment document; flags override its fields
    #[arg(long)]
    config: Option<PathBuf>,
    /// separated, fully_braided, partially_braided, fully_nested, partially_nested
    #[arg(long)]
    preset: Option<String>,
    /// A single phase or start:stop:count
    #[arg(long, allow_hyphen_values = true)]
    phi: Option<PhiSpec>,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    chi: Option<f64>,
    /// Time grid in units of 1/gamma, start:stop:count
    #[arg(long)]
    t: Option<GridSpec>,
    /// eg, ge, or re,im,re,im
    #[arg(long, allow_hyphen_values = true)]
    initial: Option<InitialSpec>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// csv, ndjson or svg
    #[arg(long)]
    format: Option<OutputFormat>,
}

#[derive(Debug, Args, Default)]
struct SearchGrid {
    #[arg(long)]
    phi_points: Option<usize>,
    #[arg(long)]
    t_points: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Coupling coefficients over a phase grid
    Coeffs(Common),
    /// Amplitudes and concurrence at one phase
    Evolve(Common),
    /// Concurrence over a (phi, gamma t) grid
    Sweep(Common),
    /// Largest concurrence over phase and time
    FindMax {
        #[command(flatten)]
        common: Common,
        /// Latest gamma t searched
        #[arg(long)]
        horizon: Option<f64>,
        #[command(flatten)]
        grid: SearchGrid,
    },
    /// Decoupled, decoherence-free and dark-state phases
    SpecialPhases {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        grid_points: Option<usize>,
    },
    /// One trajectory per chirality at fixed phase
    ChiralityScan {
        #[command(flatten)]
        common: Common,
        /// Comma-separated chirality values
        #[arg(long, value_delimiter = ',')]
        chis: Option<Vec<f64>>,
        /// gamma_t or gamma_r_t
        #[arg(long)]
        axis: Option<TimeAxis>,
    },
    /// Sweeps from |eg> and from |ge> side by side
    CompareInitial(Common),
    /// Steady-state detection at one phase
    Steady {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        window: Option<f64>,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        horizon: Option<f64>,
    },
    /// Score all 20 orderings against the reference maxima
    Calibrate {
        #[arg(long)]
        horizon: Option<f64>,
        #[command(flatten)]
        grid: SearchGrid,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        format: Option<OutputFormat>,
    },
}

fn load(common: &Common, extra: RawSpec) -> Result<ExperimentSpec> {
    let base = match &common.config {
        Some(path) => parse_raw_config(&std::fs::read_to_string(path)?)?,
        None => RawSpec::default(),
    };
    let flags = RawSpec {
        layout: common.preset.clone().map(LayoutSpec::Preset),
        gamma: common.gamma,
        chi: common.chi,
        phi: common.phi,
        time: common.t,
        initial: common.initial.clone(),
        out: common.out.clone(),
        format: common.format,
        ..Default::default()
    };
    base.merge(flags).merge(extra).resolve()
}

fn single_phi(spec: &ExperimentSpec, command: &str) -> Result<f64> {
    spec.phi.single().ok_or_else(|| {
        Error::validation("phi", format!("{command} needs a single phase, not a grid"))
    })
}

fn search_options(grid: &SearchGrid) -> FindMaxOptions {
    let d = FindMaxOptions::default();
    FindMaxOptions {
        phi_points: grid.phi_points.unwrap_or(d.phi_points),
        t_points: grid.t_points.unwrap_or(d.t_points),
        tol: d.tol,
    }
}

fn open_sink(out: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn emit(result: ResultRef<'_>, format: OutputFormat, out: &Option<PathBuf>) -> Result<()> {
    if format == OutputFormat::Svg {
        return Err(Error::validation(
            "format",
            "svg output is only available for sweeps",
        ));
    }
    let mut sink = open_sink(out)?;
    serialize_results(result, format, &mut sink)
}

fn execute(command: Command) -> Result<()> {
    match command {
        Command::Coeffs(common) => {
            let spec = load(&common, RawSpec::default())?;
            let rates = rates_from_chirality(spec.chirality)?;
            let rows = spec
                .phi
                .values()
                .into_iter()
                .map(|phi| {
                    Ok(CoefficientRow {
                        phi,
                        coefficients: coefficients(&spec.layout, phi, rates.right, rates.left)?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            emit(ResultRef::Coefficients(&rows), spec.format, &spec.out)
        }
        Command::Evolve(common) => {
            let spec = load(&common, RawSpec::default())?;
            let phi = single_phi(&spec, "evolve")?;
            let h = dimensionless_hamiltonian(&spec.layout, spec.chirality, phi)?;
            let tr = trajectory(&h, &spec.initial, &spec.time.values())?;
            emit(ResultRef::Trajectory(&tr), spec.format, &spec.out)
        }
        Command::Sweep(common) => {
            let spec = load(&common, RawSpec::default())?;
            let grid = sweep(
                &spec.layout,
                spec.chirality,
                &spec.initial,
                &spec.phi.values(),
                &spec.time.values(),
            )?;
            if spec.format == OutputFormat::Svg {
                let svg = render_svg_heatmap(&grid, &HeatmapOptions::default())?;
                let mut sink = open_sink(&spec.out)?;
                sink.write_all(svg.as_bytes())?;
                sink.flush()?;
                Ok(())
            } else {
                emit(ResultRef::Sweep(&grid), spec.format, &spec.out)
            }
        }
        Command::FindMax {
            common,
            horizon,
            grid,
        } => {
            let spec = load(
                &common,
                RawSpec {
                    horizon,
                    ..Default::default()
                },
            )?;
            let r = find_max(
                &spec.layout,
                spec.chirality,
                &spec.initial,
                spec.phi.range(),
                spec.horizon,
                &search_options(&grid),
            )?;
            emit(ResultRef::Max(&r), spec.format, &spec.out)
        }
        Command::SpecialPhases {
            common,
            grid_points,
        } => {
            let spec = load(&common, RawSpec::default())?;
            let mut opts = SpecialPhaseOptions {
                probe: spec.initial,
                ..Default::default()
            };
            if let Some(n) = grid_points {
                opts.grid_points = n;
            }
            let list = find_special_phases(&spec.layout, spec.chirality, &opts)?;
            emit(ResultRef::SpecialPhases(&list), spec.format, &spec.out)
        }
        Command::ChiralityScan { common, chis, axis } => {
            let spec = load(
                &common,
                RawSpec {
                    chis,
                    axis,
                    ..Default::default()
                },
            )?;
            let phi = single_phi(&spec, "chirality-scan")?;
            let traces = chirality_scan(
                &spec.layout,
                spec.chirality.gamma_total,
                phi,
                &spec.chis,
                &spec.initial,
                &spec.time.values(),
                spec.axis,
            )?;
            emit(ResultRef::ChiralityScan(&traces), spec.format, &spec.out)
        }
        Command::CompareInitial(common) => {
            let spec = load(&common, RawSpec::default())?;
            let cmp = compare_initial_states(
                &spec.layout,
                spec.chirality,
                &spec.phi.values(),
                &spec.time.values(),
            )?;
            eprintln!("max |C_eg - C_ge| = {}", cmp.max_abs_diff);
            emit(ResultRef::Comparison(&cmp), spec.format, &spec.out)
        }
        Command::Steady {
            common,
            window,
            tol,
            horizon,
        } => {
            let spec = load(
                &common,
                RawSpec {
                    window,
                    tol,
                    horizon,
                    ..Default::default()
                },
            )?;
            let phi = single_phi(&spec, "steady")?;
            let opts = SteadyOptions {
                window: spec.window,
                tol: spec.tol,
                horizon: spec.horizon,
                ..Default::default()
            };
            let report = steady_state(&spec.layout, spec.chirality, &spec.initial, phi, &opts)?;
            emit(ResultRef::Steady(&report), spec.format, &spec.out)
        }
        Command::Calibrate {
            horizon,
            grid,
            out,
            format,
        } => {
            let mut opts = CalibrationOptions {
                search: search_options(&grid),
                ..Default::default()
            };
            if let Some(h) = horizon {
                opts.horizon = h;
            }
            let result = calibrate_presets(&CalibrationTargets::default(), &opts)?;
            emit(
                ResultRef::Calibration(&result),
                format.unwrap_or_default(),
                &out,
            )
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
