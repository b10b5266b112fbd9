use std::f64::consts::{PI, TAU};

use giant_qed::experiments::{
    chirality_scan, compare_initial_states, find_max, linspace, sweep, FindMaxOptions, TimeAxis,
};
use giant_qed::model::{make_preset, ChiralitySpec, InitialState, PresetTag};

fn spec(chi: f64) -> ChiralitySpec {
    ChiralitySpec::new(1.0, chi).unwrap()
}

#[test]
fn maxima_with_default_search() {
    let opts = FindMaxOptions::default();
    let fb = find_max(
        &make_preset(PresetTag::FullyBraided),
        spec(0.0),
        &InitialState::EG,
        (0.0, TAU),
        50.0,
        &opts,
    )
    .unwrap();
    assert!((fb.c_max - 1.0).abs() < 1e-4, "{}", fb.c_max);
    let s = find_max(
        &make_preset(PresetTag::Separated),
        spec(0.0),
        &InitialState::EG,
        (0.0, TAU),
        50.0,
        &opts,
    )
    .unwrap();
    assert!((s.c_max - 0.5).abs() < 0.005, "{}", s.c_max);
}

#[test]
fn nested_initial_states_differ() {
    let cmp = compare_initial_states(
        &make_preset(PresetTag::FullyNested),
        spec(0.0),
        &linspace(0.0, TAU, 201),
        &linspace(0.0, 50.0, 501),
    )
    .unwrap();
    assert!(cmp.max_abs_diff > 0.05, "{}", cmp.max_abs_diff);
    assert!(cmp.eg.max_value() < cmp.ge.max_value());
}

#[test]
fn braided_peak_count_grows_as_chirality_weakens() {
    let ts = linspace(0.0, 50.0, 50001);
    let traces = chirality_scan(
        &make_preset(PresetTag::FullyBraided),
        1.0,
        PI / 3.0,
        &[0.1, 0.01],
        &InitialState::EG,
        &ts,
        TimeAxis::GammaRT,
    )
    .unwrap();
    assert!(traces[1].peak_count >= traces[0].peak_count);
}

#[test]
fn sweep_is_independent_of_thread_count() {
    let cfg = make_preset(PresetTag::PartiallyNested);
    let phis = linspace(0.0, TAU, 64);
    let ts = linspace(0.0, 30.0, 301);
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| sweep(&cfg, spec(0.3), &InitialState::EG, &phis, &ts).unwrap())
    };
    let a = run(1);
    let b = run(4);
    assert_eq!(a.c_matrix, b.c_matrix);
}
