//! Convergence studies: refinement sweeps, observed rates and table output.

mod config;
mod output;
mod presets;
mod study;

pub use config::{parse_key_values, StudyConfig, StudyMode, Sweep};
pub use output::{emit_csv, format_sci, render_table};
pub use presets::{preset, preset_names, PRESETS};
pub use study::{compute_rates, run_study, DegreeGroup, RateRow, RateTable};
