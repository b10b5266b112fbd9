//! Configuration documents, result files and heatmaps.

mod config;
mod output;
mod svg;

pub use config::{
    parse_experiment_config, parse_raw_config, ExperimentSpec, GridSpec, InitialSpec, LayoutSpec,
    OutputFormat, PhiSpec, RawSpec, DEFAULT_PHI, DEFAULT_TIME,
};
pub use output::{format_float, serialize_results, to_string, CoefficientRow, ResultRef};
pub use svg::{colormap, render_svg_heatmap, HeatmapOptions};
