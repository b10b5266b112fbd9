//! Static SVG heatmaps of sweep grids, `gamma t` across and `phi / pi` up.

use std::f64::consts::PI;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::experiments::SweepGrid;

const ANCHORS: [(f64, [f64; 3]); 3] = [
    (0.0, [13.0, 8.0, 135.0]),
    (0.5, [204.0, 71.0, 120.0]),
    (1.0, [240.0, 249.0, 33.0]),
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeatmapOptions {
    pub width: u32,
    pub height: u32,
}

impl Default for HeatmapOptions {
    fn default() -> Self {
        Self {
            width: 640,
            height: 480,
        }
    }
}

/// Piecewise-linear colour for a concurrence value, clamped to `[0, 1]`.
pub fn colormap(c: f64) -> [u8; 3] {
    let c = if c.is_nan() { 0.0 } else { c.clamp(0.0, 1.0) };
    let k = if c <= ANCHORS[1].0 { 0 } else { 1 };
    let (x0, lo) = ANCHORS[k];
    let (x1, hi) = ANCHORS[k + 1];
    let s = (c - x0) / (x1 - x0);
    let mut out = [0u8; 3];
    for i in 0..3 {
        out[i] = (lo[i] + s * (hi[i] - lo[i])).round() as u8;
    }
    out
}

fn label(x: f64) -> String {
    let s = format!("{x:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

pub fn render_svg_heatmap(grid: &SweepGrid, opts: &HeatmapOptions) -> Result<String> {
    let (nphi, nt) = (grid.phi_values.len(), grid.t_values.len());
    if nphi == 0 || nt == 0 || grid.c_matrix.len() != nphi {
        return Err(Error::domain("cannot render an empty sweep grid"));
    }
    if grid.c_matrix.iter().any(|r| r.len() != nt) {
        return Err(Error::domain("sweep matrix does not match its grids"));
    }
    let (left, right, top, bottom) = (70.0, 20.0, 20.0, 50.0);
    let (w, h) = (opts.width as f64, opts.height as f64);
    let (pw, ph) = (w - left - right, h - top - bottom);
    if pw <= 0.0 || ph <= 0.0 {
        return Err(Error::domain("image is too small for the plot margins"));
    }
    let (cw, ch) = (pw / nt as f64, ph / nphi as f64);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        opts.width, opts.height, opts.width, opts.height
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(s, r#"<g shape-rendering="crispEdges">"#);
    for (i, row) in grid.c_matrix.iter().enumerate() {
        // first phi at the bottom
        let y = top + ph - (i + 1) as f64 * ch;
        for (j, &c) in row.iter().enumerate() {
            let [r, g, b] = colormap(c);
            let _ = writeln!(
                s,
                r#"<rect x="{:.3}" y="{:.3}" width="{:.3}" height="{:.3}" fill="rgb({r},{g},{b})"/>"#,
                left + j as f64 * cw,
                y,
                cw,
                ch
            );
        }
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(
        s,
        r#"<rect x="{left:.3}" y="{top:.3}" width="{pw:.3}" height="{ph:.3}" fill="none" stroke="black"/>"#
    );

    let font = r#"font-family="sans-serif" font-size="12""#;
    let (t0, t1) = (grid.t_values[0], grid.t_values[nt - 1]);
    let (p0, p1) = (grid.phi_values[0] / PI, grid.phi_values[nphi - 1] / PI);
    let base = top + ph;
    let _ = writeln!(
        s,
        r#"<text x="{left:.3}" y="{:.3}" {font} text-anchor="start">{}</text>"#,
        base + 16.0,
        label(t0)
    );
    let _ = writeln!(
        s,
        r#"<text x="{:.3}" y="{:.3}" {font} text-anchor="end">{}</text>"#,
        left + pw,
        base + 16.0,
        label(t1)
    );
    let _ = writeln!(
        s,
        r#"<text x="{:.3}" y="{:.3}" {font} text-anchor="end">{}</text>"#,
        left - 6.0,
        base,
        label(p0)
    );
    let _ = writeln!(
        s,
        r#"<text x="{:.3}" y="{:.3}" {font} text-anchor="end">{}</text>"#,
        left - 6.0,
        top + 12.0,
        label(p1)
    );
    let _ = writeln!(
        s,
        r#"<text x="{:.3}" y="{:.3}" {font} text-anchor="middle">γt</text>"#,
        left + pw / 2.0,
        base + 36.0
    );
    let _ = writeln!(
        s,
        r#"<text x="16" y="{:.3}" {font} text-anchor="middle" transform="rotate(-90 16 {:.3})">φ/π</text>"#,
        top + ph / 2.0,
        top + ph / 2.0
    );
    s.push_str("</svg>\n");
    Ok(s)
}
