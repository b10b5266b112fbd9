use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{find_max, FindMaxOptions};
use crate::error::{Error, Result};
use crate::model::{make_preset, ChiralitySpec, InitialState, LayoutConfiguration, PresetTag};

/// Closed interval a value should fall into; a point target has `lo == hi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TargetBand {
    pub lo: f64,
    pub hi: f64,
}

impl TargetBand {
    pub const fn point(x: f64) -> Self {
        Self { lo: x, hi: x }
    }

    pub const fn range(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    /// Distance from `x` to the band, zero inside it.
    pub fn deviation(&self, x: f64) -> f64 {
        if x < self.lo {
            self.lo - x
        } else if x > self.hi {
            x - self.hi
        } else {
            0.0
        }
    }
}

/// The largest concurrence over time at each listed phase (nonchiral,
/// `|eg>` start) must lie within `tolerance` of `expected`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeakConstraint {
    pub phis: Vec<f64>,
    pub expected: f64,
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigurationTargets {
    pub configuration: PresetTag,
    /// Nonchiral `|eg>`, nonchiral `|ge>`, chiral `|eg>`, chiral `|ge>`.
    pub table: [TargetBand; 4],
    pub peaks: Vec<PeakConstraint>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CalibrationTargets {
    pub configurations: Vec<ConfigurationTargets>,
}

impl Default for CalibrationTargets {
    fn default() -> Self {
        use TargetBand as B;
        let peak = |phis: Vec<f64>, expected: f64| PeakConstraint {
            phis,
            expected,
            tolerance: 0.02,
        };
        Self {
            configurations: vec![
                ConfigurationTargets {
                    configuration: PresetTag::Separated,
                    table: [B::point(0.5), B::point(0.5), B::point(0.736), B::point(0.0)],
                    peaks: vec![],
                },
                ConfigurationTargets {
                    configuration: PresetTag::FullyBraided,
                    table: [B::point(1.0); 4],
                    peaks: vec![],
                },
                ConfigurationTargets {
                    configuration: PresetTag::PartiallyBraided,
                    table: [
                        B::point(0.77),
                        B::point(0.77),
                        B::range(0.86, 0.87),
                        B::point(0.89),
                    ],
                    peaks: vec![peak(vec![11.0 * PI / 25.0], 0.77)],
                },
                ConfigurationTargets {
                    configuration: PresetTag::FullyNested,
                    table: [
                        B::point(0.87),
                        B::point(0.96),
                        B::point(0.90),
                        B::point(0.98),
                    ],
                    peaks: vec![peak(vec![PI / 4.0], 0.67)],
                },
                ConfigurationTargets {
                    configuration: PresetTag::PartiallyNested,
                    table: [
                        B::point(0.83),
                        B::point(0.78),
                        B::point(0.94),
                        B::point(0.93),
                    ],
                    peaks: vec![peak(vec![PI / 4.0, 7.0 * PI / 4.0], 0.83)],
                },
            ],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CalibrationOptions {
    /// Search horizon in `gamma t`.
    pub horizon: f64,
    pub search: FindMaxOptions,
    /// Scores above this leave an assignment unresolved.
    pub max_score: f64,
}

impl Default for CalibrationOptions {
    fn default() -> Self {
        Self {
            horizon: 40.0,
            search: FindMaxOptions::default(),
            max_score: 0.02,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderingScore {
    pub ordering: String,
    pub class: PresetTag,
    /// Same order as [`ConfigurationTargets::table`].
    pub c_max: [f64; 4],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Assignment {
    pub configuration: PresetTag,
    pub ordering: String,
    pub default_ordering: String,
    pub score: f64,
    pub residuals: [f64; 4],
    /// Peak value at each constrained phase, in constraint order.
    pub peak_values: Vec<f64>,
    pub constraints_met: bool,
    pub resolved: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CalibrationResult {
    pub assignments: Vec<Assignment>,
    pub orderings: Vec<OrderingScore>,
}

impl CalibrationResult {
    pub fn assignment(&self, tag: PresetTag) -> Option<&Assignment> {
        self.assignments.iter().find(|a| a.configuration == tag)
    }
}

/// The 20 ways to interleave three `a`s and three `b`s, in lexicographic order.
pub fn all_orderings() -> Vec<String> {
    (0u32..64)
        .filter(|m| m.count_ones() == 3)
        .map(|m| {
            (0..6)
                .rev()
                .map(|k| if m >> k & 1 == 1 { 'b' } else { 'a' })
                .collect::<String>()
        })
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect()
}

fn positions_of(ordering: &str, label: char) -> Vec<usize> {
    ordering
        .chars()
        .enumerate()
        .filter(|&(_, c)| c == label)
        .map(|(i, _)| i)
        .collect()
}

fn within_one_gap(inner: &[usize], outer: &[usize]) -> bool {
    outer
        .windows(2)
        .any(|w| inner.iter().all(|&x| w[0] < x && x < w[1]))
}

fn span_inside(inner: &[usize], outer: &[usize]) -> bool {
    outer[0] < inner[0] && inner[inner.len() - 1] < outer[outer.len() - 1]
}

/// Topological class of an ordering of two three-point atoms.
pub fn classify_ordering(ordering: &str) -> Result<PresetTag> {
    let ordering = ordering.to_ascii_lowercase();
    LayoutConfiguration::from_ordering(&ordering)?;
    let a = positions_of(&ordering, 'a');
    let b = positions_of(&ordering, 'b');
    let contiguous = |p: &[usize]| p[p.len() - 1] - p[0] == p.len() - 1;
    let alternating = ordering.as_bytes().windows(2).all(|w| w[0] != w[1]);
    Ok(if contiguous(&a) && contiguous(&b) {
        PresetTag::Separated
    } else if alternating {
        PresetTag::FullyBraided
    } else if within_one_gap(&a, &b) || within_one_gap(&b, &a) {
        PresetTag::FullyNested
    } else if span_inside(&a, &b) || span_inside(&b, &a) {
        PresetTag::PartiallyNested
    } else {
        PresetTag::PartiallyBraided
    })
}

fn swap_labels(ordering: &str) -> String {
    ordering
        .chars()
        .map(|c| if c == 'a' { 'b' } else { 'a' })
        .collect()
}

fn table_entries(cfg: &LayoutConfiguration, opts: &CalibrationOptions) -> Result<[f64; 4]> {
    let nonchiral = ChiralitySpec::nonchiral(1.0)?;
    let chiral = ChiralitySpec::new(1.0, 1.0)?;
    let runs = [
        (nonchiral, InitialState::EG),
        (nonchiral, InitialState::GE),
        (chiral, InitialState::EG),
        (chiral, InitialState::GE),
    ];
    let mut out = [0.0; 4];
    for (slot, (spec, c0)) in out.iter_mut().zip(runs) {
        *slot = find_max(cfg, spec, &c0, (0.0, 2.0 * PI), opts.horizon, &opts.search)?.c_max;
    }
    Ok(out)
}

fn peak_at(ordering: &str, phi: f64, opts: &CalibrationOptions) -> Result<f64> {
    let cfg = LayoutConfiguration::from_ordering(ordering)?;
    let spec = ChiralitySpec::nonchiral(1.0)?;
    Ok(find_max(
        &cfg,
        spec,
        &InitialState::EG,
        (phi, phi),
        opts.horizon,
        &opts.search,
    )?
    .c_max)
}

/// Scores every ordering against the reference maxima and picks, for each
/// named configuration, the best ordering of the matching class.
///
/// Swapping the atom labels maps `|eg>` dynamics onto `|ge>` dynamics at the
/// same chirality, so only orderings starting with `a` are simulated and the
/// mirrored entries are filled in from them.
pub fn calibrate_presets(
    targets: &CalibrationTargets,
    opts: &CalibrationOptions,
) -> Result<CalibrationResult> {
    if !(opts.horizon > 0.0) {
        return Err(Error::domain("calibration horizon must be positive"));
    }
    let representatives: Vec<String> = all_orderings()
        .into_iter()
        .filter(|o| o.starts_with('a'))
        .collect();
    let simulated = representatives
        .par_iter()
        .map(|o| table_entries(&LayoutConfiguration::from_ordering(o)?, opts))
        .collect::<Result<Vec<[f64; 4]>>>()?;

    let mut orderings = Vec::with_capacity(20);
    for (o, c) in representatives.iter().zip(&simulated) {
        orderings.push(OrderingScore {
            ordering: o.clone(),
            class: classify_ordering(o)?,
            c_max: *c,
        });
        let mirrored = swap_labels(o);
        orderings.push(OrderingScore {
            class: classify_ordering(&mirrored)?,
            ordering: mirrored,
            c_max: [c[1], c[0], c[3], c[2]],
        });
    }
    orderings.sort_by(|x, y| x.ordering.cmp(&y.ordering));

    let mut assignments = Vec::new();
    for t in &targets.configurations {
        let mut best: Option<(bool, f64, Assignment)> = None;
        for cand in orderings.iter().filter(|o| o.class == t.configuration) {
            let residuals: [f64; 4] = std::array::from_fn(|k| t.table[k].deviation(cand.c_max[k]));
            let score = residuals.iter().copied().fold(0.0, f64::max);
            let mut peak_values = Vec::new();
            let mut constraints_met = true;
            for pc in &t.peaks {
                for &phi in &pc.phis {
                    let v = peak_at(&cand.ordering, phi, opts)?;
                    constraints_met &= (v - pc.expected).abs() <= pc.tolerance;
                    peak_values.push(v);
                }
            }
            let better = match &best {
                None => true,
                Some((met, s, _)) => (constraints_met, -score) > (*met, -*s),
            };
            if better {
                let a = Assignment {
                    configuration: t.configuration,
                    ordering: cand.ordering.clone(),
                    default_ordering: make_default(t.configuration),
                    score,
                    residuals,
                    peak_values,
                    constraints_met,
                    resolved: constraints_met && score <= opts.max_score,
                };
                best = Some((constraints_met, score, a));
            }
        }
        match best {
            Some((_, _, a)) => assignments.push(a),
            None => {
                return Err(Error::domain(format!(
                    "no ordering belongs to class {}",
                    t.configuration
                )))
            }
        }
    }
    Ok(CalibrationResult {
        assignments,
        orderings,
    })
}

fn make_default(tag: PresetTag) -> String {
    match tag {
        PresetTag::Custom => String::new(),
        named => make_preset(named).ordering(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    #[test]
    fn twenty_distinct_orderings() {
        let all = all_orderings();
        assert_eq!(all.len(), 20);
        assert_eq!(all[0], "aaabbb");
        assert_eq!(all[19], "bbbaaa");
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn class_sizes() {
        let mut counts: HashMap<PresetTag, usize> = HashMap::new();
        for o in all_orderings() {
            *counts.entry(classify_ordering(&o).unwrap()).or_default() += 1;
        }
        assert_eq!(counts[&PresetTag::Separated], 2);
        assert_eq!(counts[&PresetTag::FullyBraided], 2);
        assert_eq!(counts[&PresetTag::FullyNested], 4);
        assert_eq!(counts[&PresetTag::PartiallyNested], 4);
        assert_eq!(counts[&PresetTag::PartiallyBraided], 8);
    }

    #[test]
    fn presets_belong_to_their_class() {
        for tag in PresetTag::NAMED {
            let o = make_preset(tag).ordering();
            assert_eq!(classify_ordering(&o).unwrap(), tag, "{o}");
        }
        assert!(classify_ordering("aabbbb").is_err());
    }

    #[test]
    fn band_deviation() {
        let b = TargetBand::range(0.86, 0.87);
        assert_eq!(b.deviation(0.865), 0.0);
        assert!((b.deviation(0.875) - 0.005).abs() < 1e-12);
        assert!((b.deviation(0.85) - 0.01).abs() < 1e-12);
    }

    #[test]
    fn label_swap_mirrors_initial_states() {
        let opts = CalibrationOptions {
            horizon: 10.0,
            search: FindMaxOptions {
                phi_points: 61,
                t_points: 201,
                tol: 1e-6,
            },
            max_score: 0.02,
        };
        for o in ["aababb", "abbbaa", "ababba"] {
            let direct =
                table_entries(&LayoutConfiguration::from_ordering(o).unwrap(), &opts).unwrap();
            let swapped = table_entries(
                &LayoutConfiguration::from_ordering(&swap_labels(o)).unwrap(),
                &opts,
            )
            .unwrap();
            let mirrored = [direct[1], direct[0], direct[3], direct[2]];
            for (x, y) in swapped.iter().zip(mirrored) {
                assert!((x - y).abs() < 1e-9, "{o}: {swapped:?} vs {mirrored:?}");
            }
        }
    }
}
