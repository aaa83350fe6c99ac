//! Pinned refinement studies reproducing the published Burgers and blood-flow tables.

use crate::dg::BoundaryMode;
use crate::error::{Error, Result};
use crate::timestep::SchemeKind;

use super::config::{StudyConfig, Sweep};

pub const PRESETS: &[(&str, &str)] = &[
    ("paper-burgers-space", "Burgers, k=1..3, h=1/2..1/32, dt=1e-4, 10 AB2 steps"),
    ("paper-burgers-time", "Burgers, k=8,9, h=1/4, dt=2^-10..2^-13, T=1"),
    ("paper-bloodflow-space", "blood flow, k=1..3, h=1/2..1/32, dt=2e-5, 10 AB2 steps"),
    ("paper-bloodflow-time", "blood flow, k=8,9, h=1/4, dt=2^-10..2^-13, T=1"),
];

pub fn preset_names() -> Vec<&'static str> {
    PRESETS.iter().map(|(n, _)| *n).collect()
}

fn dyadic(from: i32, to: i32) -> Vec<f64> {
    (from..=to).map(|m| 2f64.powi(-m)).collect()
}

pub fn preset(name: &str) -> Result<StudyConfig> {
    let (problem, space) = match name {
        "paper-burgers-space" => ("burgers", Some(1e-4)),
        "paper-burgers-time" => ("burgers", None),
        "paper-bloodflow-space" => ("bloodflow", Some(2e-5)),
        "paper-bloodflow-time" => ("bloodflow", None),
        other => {
            return Err(Error::invalid(format!(
                "unknown preset '{other}' (available: {})",
                preset_names().join(", ")
            )))
        }
    };
    let (degrees, resolutions, sweep) = match space {
        Some(dt) => (vec![1, 2, 3], dyadic(1, 5), Sweep::Space { dt, num_steps: 10 }),
        None => (
            vec![8, 9],
            dyadic(10, 13),
            Sweep::Time {
                h: 0.25,
                final_time: 1.0,
            },
        ),
    };
    Ok(StudyConfig {
        problem: problem.into(),
        degrees,
        resolutions,
        sweep,
        scheme: SchemeKind::AdamsBashforth2,
        bc: BoundaryMode::Periodic,
        flux: "llf".into(),
        // a single forward-Euler start step reproduces the published time tables
        ab2_substeps: Some(1),
        output: None,
    })
}
