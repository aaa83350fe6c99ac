use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{error_quad_points, l2_error};
use crate::flux::flux_registry;
use crate::mesh::Mesh;
use crate::problems::{problem_registry, ManufacturedProblem};
use crate::timestep::{integrate, scheme_registry, SchemeOptions};

use super::config::{StudyConfig, Sweep};

/// One (degree, resolution) cell.
#[derive(Debug, Clone, PartialEq)]
pub struct RateRow {
    pub resolution: f64,
    /// Per-component L² errors; empty when the run failed.
    pub errors: Vec<f64>,
    /// Per-component observed rates; `None` on the first row and next to failures.
    pub rates: Vec<Option<f64>>,
    pub failure: Option<String>,
}

impl RateRow {
    pub fn is_failed(&self) -> bool {
        self.failure.is_some()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DegreeGroup {
    pub degree: usize,
    pub rows: Vec<RateRow>,
}

/// Errors and rates grouped by polynomial degree, rows in decreasing resolution.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RateTable {
    pub components: Vec<String>,
    pub groups: Vec<DegreeGroup>,
}

impl RateTable {
    pub fn has_failures(&self) -> bool {
        self.groups.iter().flat_map(|g| &g.rows).any(RateRow::is_failed)
    }

    pub fn group(&self, degree: usize) -> Option<&DegreeGroup> {
        self.groups.iter().find(|g| g.degree == degree)
    }

    pub fn component_index(&self, name: &str) -> Option<usize> {
        self.components.iter().position(|c| c == name)
    }

    /// Recomputes every rate column from the stored errors.
    pub fn refresh_rates(&mut self) -> Result<()> {
        let m = self.components.len();
        for g in &mut self.groups {
            for r in &mut g.rows {
                r.rates = vec![None; m];
            }
            for c in 0..m {
                // rates only across contiguous runs of successful rows
                let mut start = 0;
                while start < g.rows.len() {
                    if g.rows[start].is_failed() {
                        start += 1;
                        continue;
                    }
                    let mut end = start;
                    while end < g.rows.len() && !g.rows[end].is_failed() {
                        end += 1;
                    }
                    let errs: Vec<f64> = g.rows[start..end].iter().map(|r| r.errors[c]).collect();
                    let res: Vec<f64> = g.rows[start..end].iter().map(|r| r.resolution).collect();
                    for (i, rate) in compute_rates(&errs, &res)?.into_iter().enumerate() {
                        g.rows[start + i].rates[c] = rate;
                    }
                    start = end;
                }
            }
        }
        Ok(())
    }
}

/// Observed orders `log(e[i-1]/e[i]) / log(r[i-1]/r[i])`; the first entry is `None`.
pub fn compute_rates(errors: &[f64], resolutions: &[f64]) -> Result<Vec<Option<f64>>> {
    if errors.len() != resolutions.len() {
        return Err(Error::invalid("errors and resolutions differ in length"));
    }
    if errors.iter().chain(resolutions).any(|v| !(v.is_finite() && *v > 0.0)) {
        return Err(Error::invalid("errors and resolutions must be positive"));
    }
    let mut out = Vec::with_capacity(errors.len());
    for i in 0..errors.len() {
        if i == 0 {
            out.push(None);
        } else {
            let ratio = resolutions[i - 1] / resolutions[i];
            if ratio == 1.0 {
                return Err(Error::invalid("repeated resolution"));
            }
            out.push(Some((errors[i - 1] / errors[i]).ln() / ratio.ln()));
        }
    }
    Ok(out)
}

fn steps_for(final_time: f64, dt: f64) -> Result<usize> {
    let n = final_time / dt;
    let rounded = n.round();
    if rounded < 1.0 || (n - rounded).abs() > 1e-9 * n {
        return Err(Error::invalid(format!(
            "final time {final_time} is not an integer multiple of dt = {dt}"
        )));
    }
    Ok(rounded as usize)
}

struct Cell {
    degree: usize,
    mesh: Mesh,
    dt: f64,
    num_steps: usize,
}

/// Runs every (degree, resolution) cell and assembles the rate table.
///
/// Configuration problems abort with an error; a solver failure in one cell is
/// recorded on that row and the rest of the table is still produced.
pub fn run_study(cfg: &StudyConfig) -> Result<RateTable> {
    cfg.validate()?;
    let problem = problem_registry().build_default(&cfg.problem)?;
    let flux = flux_registry().build_default(&cfg.flux)?;
    let scheme = scheme_registry().build(
        cfg.scheme.as_str(),
        &SchemeOptions {
            ab2_substeps: cfg.ab2_substeps,
        },
    )?;
    let length = problem.domain_length();

    let mut cells = Vec::new();
    for &degree in &cfg.degrees {
        for &r in &cfg.resolutions {
            let cell = match cfg.sweep {
                Sweep::Space { dt, num_steps } => Cell {
                    degree,
                    mesh: Mesh::with_width(length, r)?,
                    dt,
                    num_steps,
                },
                Sweep::Time { h, final_time } => Cell {
                    degree,
                    mesh: Mesh::with_width(length, h)?,
                    dt: r,
                    num_steps: steps_for(final_time, r)?,
                },
            };
            cells.push(cell);
        }
    }

    let problem: &dyn ManufacturedProblem = problem.as_ref();
    let outcomes: Vec<std::result::Result<Vec<f64>, String>> = cells
        .par_iter()
        .map(|cell| {
            let t_final = cell.num_steps as f64 * cell.dt;
            integrate(
                problem,
                scheme.as_ref(),
                flux.as_ref(),
                &cell.mesh,
                cell.degree,
                cell.dt,
                cell.num_steps,
                cfg.bc,
            )
            .and_then(|u| {
                l2_error(
                    &u,
                    |x, out| problem.exact(x, t_final, out),
                    error_quad_points(cell.degree),
                )
            })
            .map_err(|e| e.to_string())
        })
        .collect();

    let n_res = cfg.resolutions.len();
    let mut table = RateTable {
        components: problem.component_names(),
        groups: cfg
            .degrees
            .iter()
            .enumerate()
            .map(|(gi, &degree)| DegreeGroup {
                degree,
                rows: cfg
                    .resolutions
                    .iter()
                    .enumerate()
                    .map(|(ri, &resolution)| match &outcomes[gi * n_res + ri] {
                        Ok(errors) => RateRow {
                            resolution,
                            errors: errors.clone(),
                            rates: Vec::new(),
                            failure: None,
                        },
                        Err(msg) => RateRow {
                            resolution,
                            errors: Vec::new(),
                            rates: Vec::new(),
                            failure: Some(msg.clone()),
                        },
                    })
                    .collect(),
            })
            .collect(),
    };
    table.refresh_rates()?;
    Ok(table)
}
