//! Explicit time integrators over DG residuals.
//!
//! Both schemes advance modal coefficients directly because the residual is
//! already mass-inverted:
//!
//! * forward Euler: `uⁿ⁺¹ = uⁿ + Δt R(uⁿ, tⁿ)`
//! * Adams–Bashforth 2: `uⁿ⁺¹ = uⁿ + Δt (3/2 R(uⁿ, tⁿ) − 1/2 R(uⁿ⁻¹, tⁿ⁻¹))`
//!
//! AB2 needs `u¹`; [`ab2_start`] produces it with forward-Euler substeps.

use crate::dg::{BoundaryMode, DgOperator, ResidualField};
use crate::error::{Error, Result};
use crate::field::{l2_project, DGField};
use crate::flux::NumericalFlux;
use crate::mesh::Mesh;
use crate::problems::ManufacturedProblem;
use crate::registry::Registry;

/// Coefficient magnitude above which a run is declared unstable.
pub const BLOW_UP_THRESHOLD: f64 = 1e12;

/// Upper bound on the default number of AB2 start substeps.
pub const MAX_DEFAULT_SUBSTEPS: usize = 10_000;

/// `R(u, t)`.
pub type ResidualFn<'a> = dyn Fn(&DGField, f64) -> Result<ResidualField> + Sync + 'a;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchemeKind {
    ForwardEuler,
    AdamsBashforth2,
}

impl SchemeKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            SchemeKind::ForwardEuler => "fe",
            SchemeKind::AdamsBashforth2 => "ab2",
        }
    }
}

impl std::str::FromStr for SchemeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fe" => Ok(SchemeKind::ForwardEuler),
            "ab2" => Ok(SchemeKind::AdamsBashforth2),
            other => Err(Error::invalid(format!(
                "unknown scheme '{other}' (expected fe or ab2)"
            ))),
        }
    }
}

/// Solution at `tⁿ` plus the AB2 history.
#[derive(Debug, Clone)]
pub struct IntegratorState {
    pub current: DGField,
    pub prev_residual: Option<ResidualField>,
    pub step_index: usize,
    pub t: f64,
    pub dt: f64,
}

impl IntegratorState {
    pub fn new(initial: DGField, dt: f64) -> Self {
        Self {
            current: initial,
            prev_residual: None,
            step_index: 0,
            t: 0.0,
            dt,
        }
    }
}

fn check_dt(dt: f64) -> Result<()> {
    if dt.is_finite() && dt > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(format!("time step must be positive, got {dt}")))
    }
}

fn check_finite(field: &DGField, step: usize) -> Result<()> {
    let max_coeff = field.max_abs_coeff();
    if max_coeff.is_finite() && max_coeff <= BLOW_UP_THRESHOLD {
        Ok(())
    } else {
        Err(Error::BlowUp { step, max_coeff })
    }
}

pub fn forward_euler_step<R>(state: IntegratorState, residual: R) -> Result<IntegratorState>
where
    R: Fn(&DGField, f64) -> Result<ResidualField>,
{
    check_dt(state.dt)?;
    let r = residual(&state.current, state.t)?;
    let mut next = state.current;
    next.axpy(state.dt, &r)?;
    let step_index = state.step_index + 1;
    check_finite(&next, step_index)?;
    Ok(IntegratorState {
        current: next,
        prev_residual: None,
        step_index,
        t: (step_index as f64) * state.dt,
        dt: state.dt,
    })
}

pub fn ab2_step<R>(state: IntegratorState, residual: R) -> Result<IntegratorState>
where
    R: Fn(&DGField, f64) -> Result<ResidualField>,
{
    check_dt(state.dt)?;
    let prev = state.prev_residual.ok_or(Error::MissingHistory)?;
    let r = residual(&state.current, state.t)?;
    let mut next = state.current;
    next.axpy(1.5 * state.dt, &r)?;
    next.axpy(-0.5 * state.dt, &prev)?;
    let step_index = state.step_index + 1;
    check_finite(&next, step_index)?;
    Ok(IntegratorState {
        current: next,
        prev_residual: Some(r),
        step_index,
        t: (step_index as f64) * state.dt,
        dt: state.dt,
    })
}

/// `⌈1/Δt⌉` capped at [`MAX_DEFAULT_SUBSTEPS`], so the substep is about `Δt²`.
pub fn default_start_substeps(dt: f64) -> usize {
    ((1.0 / dt).ceil() as usize).clamp(1, MAX_DEFAULT_SUBSTEPS)
}

/// AB2 starting values: `u¹` from `substeps` forward-Euler substeps over
/// `[0, Δt]`, and `R(u⁰, 0)` for the history.
pub fn ab2_start<R>(
    u0: &DGField,
    residual: R,
    dt: f64,
    substeps: usize,
) -> Result<(DGField, ResidualField)>
where
    R: Fn(&DGField, f64) -> Result<ResidualField>,
{
    check_dt(dt)?;
    if substeps == 0 {
        return Err(Error::invalid("AB2 start needs at least one substep"));
    }
    let r0 = residual(u0, 0.0)?;
    let tau = dt / substeps as f64;
    let mut u = u0.clone();
    for s in 0..substeps {
        let r = if s == 0 { r0.clone() } else { residual(&u, s as f64 * tau)? };
        u.axpy(tau, &r)?;
        check_finite(&u, 1)?;
    }
    Ok((u, r0))
}

/// Time integrator strategy.
pub trait TimeScheme: Send + Sync {
    fn kind(&self) -> SchemeKind;

    fn name(&self) -> &'static str {
        self.kind().as_str()
    }

    /// Advances `initial` by `num_steps` steps of size `dt` starting at `t = 0`.
    fn advance(
        &self,
        initial: DGField,
        residual: &ResidualFn<'_>,
        dt: f64,
        num_steps: usize,
    ) -> Result<DGField>;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ForwardEuler;

impl TimeScheme for ForwardEuler {
    fn kind(&self) -> SchemeKind {
        SchemeKind::ForwardEuler
    }

    fn advance(
        &self,
        initial: DGField,
        residual: &ResidualFn<'_>,
        dt: f64,
        num_steps: usize,
    ) -> Result<DGField> {
        check_dt(dt)?;
        let mut state = IntegratorState::new(initial, dt);
        for _ in 0..num_steps {
            state = forward_euler_step(state, residual)?;
        }
        Ok(state.current)
    }
}

/// Two-step Adams–Bashforth with a forward-Euler substepped start.
#[derive(Debug, Clone, Copy, Default)]
pub struct AdamsBashforth2 {
    /// Overrides [`default_start_substeps`].
    pub start_substeps: Option<usize>,
}

impl TimeScheme for AdamsBashforth2 {
    fn kind(&self) -> SchemeKind {
        SchemeKind::AdamsBashforth2
    }

    fn advance(
        &self,
        initial: DGField,
        residual: &ResidualFn<'_>,
        dt: f64,
        num_steps: usize,
    ) -> Result<DGField> {
        check_dt(dt)?;
        if num_steps == 0 {
            return Ok(initial);
        }
        let substeps = self
            .start_substeps
            .unwrap_or_else(|| default_start_substeps(dt));
        let (u1, r0) = ab2_start(&initial, residual, dt, substeps)?;
        let mut state = IntegratorState {
            current: u1,
            prev_residual: Some(r0),
            step_index: 1,
            t: dt,
            dt,
        };
        while state.step_index < num_steps {
            state = ab2_step(state, residual)?;
        }
        Ok(state.current)
    }
}

/// Options shared by scheme constructors.
#[derive(Debug, Clone, Copy, Default)]
pub struct SchemeOptions {
    pub ab2_substeps: Option<usize>,
}

pub fn scheme_registry() -> Registry<dyn TimeScheme, SchemeOptions> {
    let mut r: Registry<dyn TimeScheme, SchemeOptions> = Registry::new("time scheme");
    r.register("fe", "first-order forward Euler", |_| Box::new(ForwardEuler));
    r.register(
        "ab2",
        "second-order Adams-Bashforth, forward-Euler substepped start",
        |o: &SchemeOptions| {
            Box::new(AdamsBashforth2 {
                start_substeps: o.ab2_substeps,
            })
        },
    );
    r
}

/// Projects the problem's initial data and runs `scheme` for `num_steps`.
#[allow(clippy::too_many_arguments)]
pub fn integrate(
    problem: &dyn ManufacturedProblem,
    scheme: &dyn TimeScheme,
    flux: &dyn NumericalFlux,
    mesh: &Mesh,
    degree: usize,
    dt: f64,
    num_steps: usize,
    bc: BoundaryMode,
) -> Result<DGField> {
    let law = problem.law();
    let m = law.num_components();
    let u0 = l2_project(|x, out| problem.exact(x, 0.0, out), mesh, degree, m)?;
    if num_steps == 0 {
        return Ok(u0);
    }
    let forcing = |x: f64, t: f64, out: &mut [f64]| problem.forcing(x, t, out);
    let op = DgOperator::new(law, flux, mesh, degree, bc)?.with_forcing(&forcing);
    let residual = |u: &DGField, t: f64| op.residual(u, t);
    scheme.advance(u0, &residual, dt, num_steps)
}

/// How [`cfl_dt`] scales with the mesh.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CflMode {
    /// `Δt = safety · constant · h²`, the regime assumed by the error analysis.
    Theoretical { constant: f64 },
    /// `Δt = safety · h / ((2k + 1) · max wave speed)`.
    Practical,
}

pub fn cfl_dt(
    mesh: &Mesh,
    degree: usize,
    max_wavespeed: f64,
    safety: f64,
    mode: CflMode,
) -> Result<f64> {
    if !(max_wavespeed.is_finite() && max_wavespeed > 0.0) {
        return Err(Error::invalid(format!(
            "max wave speed must be positive, got {max_wavespeed}"
        )));
    }
    let h = mesh.h();
    Ok(match mode {
        CflMode::Theoretical { constant } => safety * constant * h * h,
        CflMode::Practical => safety * h / ((2 * degree + 1) as f64 * max_wavespeed),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dg::dg_residual;
    use crate::field::l2_project_scalar;
    use crate::flux::LocalLaxFriedrichs;
    use crate::laws::CustomScalarLaw;

    fn one_dof(v: f64) -> DGField {
        let mesh = Mesh::new(1.0, 1).unwrap();
        // k = 0: value = c · φ_0 = c / √2
        DGField::from_coeffs(&mesh, 0, 1, vec![v * std::f64::consts::SQRT_2]).unwrap()
    }

    fn value(u: &DGField) -> f64 {
        u.eval(0, 0.0).unwrap()[0]
    }

    fn growth() -> CustomScalarLaw {
        CustomScalarLaw::new("growth", |_| 0.0, |_| 0.0).with_source(|_, _, u| u)
    }

    #[test]
    fn zero_residual_only_advances_time() {
        let u = one_dof(2.0);
        let zero = |f: &DGField, _t: f64| DGField::zeros(f.mesh(), f.degree(), 1);
        let s = forward_euler_step(IntegratorState::new(u.clone(), 0.1), zero).unwrap();
        assert_eq!(s.current, u);
        assert!((s.t - 0.1).abs() < 1e-15);
        let (u1, _) = ab2_start(&u, zero, 0.1, 7).unwrap();
        assert_eq!(u1, u);
    }

    #[test]
    fn euler_on_exponential_growth() {
        let law = growth();
        let r = |u: &DGField, t| dg_residual(&law, &LocalLaxFriedrichs, u, t, BoundaryMode::Periodic, None);
        let s = forward_euler_step(IntegratorState::new(one_dof(1.0), 0.1), r).unwrap();
        assert!((value(&s.current) - 1.1).abs() < 1e-14);
    }

    #[test]
    fn start_compounds_substeps() {
        let law = growth();
        let r = |u: &DGField, t| dg_residual(&law, &LocalLaxFriedrichs, u, t, BoundaryMode::Periodic, None);
        let (u1, r0) = ab2_start(&one_dof(1.0), r, 0.1, 10).unwrap();
        assert!((value(&u1) - 1.01f64.powi(10)).abs() < 1e-13);
        assert!((value(&r0) - 1.0).abs() < 1e-14);

        let (single, _) = ab2_start(&one_dof(1.0), r, 0.1, 1).unwrap();
        let fe = forward_euler_step(IntegratorState::new(one_dof(1.0), 0.1), r).unwrap();
        assert_eq!(single, fe.current);
        assert!(ab2_start(&one_dof(1.0), r, 0.1, 0).is_err());
    }

    #[test]
    fn ab2_with_constant_residual_equals_euler() {
        let mesh = Mesh::new(1.0, 3).unwrap();
        let u = l2_project_scalar(|x| x * x, &mesh, 2).unwrap();
        let c = l2_project_scalar(|x| 1.0 + x, &mesh, 2).unwrap();
        let constant = |_: &DGField, _t: f64| Ok(c.clone());
        let fe = forward_euler_step(IntegratorState::new(u.clone(), 0.01), constant).unwrap();
        let ab = ab2_step(
            IntegratorState {
                prev_residual: Some(c.clone()),
                ..IntegratorState::new(u, 0.01)
            },
            constant,
        )
        .unwrap();
        for (a, b) in fe.current.coeffs().iter().zip(ab.current.coeffs()) {
            assert!((a - b).abs() <= 1e-15);
        }
    }

    #[test]
    fn ab2_requires_history() {
        let zero = |f: &DGField, _t: f64| DGField::zeros(f.mesh(), f.degree(), 1);
        let err = ab2_step(IntegratorState::new(one_dof(1.0), 0.1), zero).unwrap_err();
        assert!(matches!(err, Error::MissingHistory));
    }

    #[test]
    fn blow_up_is_reported() {
        let huge = |f: &DGField, _t: f64| {
            let mut r = f.clone();
            r.coeffs_mut().fill(1e15);
            Ok(r)
        };
        let err = forward_euler_step(IntegratorState::new(one_dof(1.0), 1.0), huge).unwrap_err();
        assert!(matches!(err, Error::BlowUp { step: 1, .. }), "{err}");
    }

    #[test]
    fn nonpositive_dt_rejected() {
        let zero = |f: &DGField, _t: f64| DGField::zeros(f.mesh(), f.degree(), 1);
        assert!(forward_euler_step(IntegratorState::new(one_dof(1.0), 0.0), zero).is_err());
    }

    #[test]
    fn ab2_second_order_on_growth() {
        let law = growth();
        let r = |u: &DGField, t| dg_residual(&law, &LocalLaxFriedrichs, u, t, BoundaryMode::Periodic, None);
        let mut errs = Vec::new();
        for dt in [0.1, 0.05] {
            let steps = (1.0f64 / dt).round() as usize;
            // exact start u¹ = e^{Δt}
            let mut state = IntegratorState {
                current: one_dof(dt.exp()),
                prev_residual: Some(r(&one_dof(1.0), 0.0).unwrap()),
                step_index: 1,
                t: dt,
                dt,
            };
            while state.step_index < steps {
                state = ab2_step(state, r).unwrap();
            }
            errs.push((value(&state.current) - 1f64.exp()).abs());
        }
        let ratio = errs[0] / errs[1];
        assert!((ratio - 4.0).abs() < 0.4, "ratio {ratio}");
    }

    #[test]
    fn cfl_examples() {
        let m = Mesh::new(1.0, 10).unwrap();
        let dt = cfl_dt(&m, 1, 1.0, 1.0, CflMode::Theoretical { constant: 3.0 }).unwrap();
        assert!((dt - 0.03).abs() < 1e-15);
        let m2 = Mesh::new(1.0, 20).unwrap();
        let dt2 = cfl_dt(&m2, 1, 1.0, 1.0, CflMode::Theoretical { constant: 3.0 }).unwrap();
        assert!((dt / dt2 - 4.0).abs() < 1e-12);
        let m3 = Mesh::new(3.0, 10).unwrap();
        let p = cfl_dt(&m3, 1, 2.0, 0.9, CflMode::Practical).unwrap();
        assert!((p - 0.045).abs() < 1e-15);
        assert!(cfl_dt(&m3, 1, 0.0, 0.9, CflMode::Practical).is_err());
    }

    #[test]
    fn default_substeps() {
        assert_eq!(default_start_substeps(0.1), 10);
        assert_eq!(default_start_substeps(1.0 / 1024.0), 1024);
        assert_eq!(default_start_substeps(1e-5), MAX_DEFAULT_SUBSTEPS);
        assert_eq!(default_start_substeps(2.0), 1);
    }

    #[test]
    fn registry_builds_both_schemes() {
        let r = scheme_registry();
        assert_eq!(r.names(), vec!["fe", "ab2"]);
        let opts = SchemeOptions { ab2_substeps: Some(3) };
        assert_eq!(r.build("ab2", &opts).unwrap().kind(), SchemeKind::AdamsBashforth2);
        assert_eq!(r.build("fe", &opts).unwrap().kind(), SchemeKind::ForwardEuler);
    }
}
