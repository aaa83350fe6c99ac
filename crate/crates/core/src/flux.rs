//! Conservation-law interfaces and interface numerical fluxes.
//!
//! A [`ConservationLaw`] is anything the DG operator can discretize: it
//! reports its physical flux, source and the dissipation coefficient `J`
//! used by Lax–Friedrichs type fluxes. Scalar laws implement the narrower
//! [`ScalarLaw`] trait and pick up [`ConservationLaw`] automatically.
//!
//! Interface fluxes implement [`NumericalFlux`] and are looked up by name in
//! [`flux_registry`].

use crate::error::{DomainError, Error, Result};
use crate::registry::Registry;

/// Hyperbolic balance law `u_t + f(u)_x = s(x, t, u)` with `m` components.
pub trait ConservationLaw: Send + Sync {
    fn name(&self) -> &str;

    fn num_components(&self) -> usize;

    /// Physical flux `f(u)` written to `out`.
    fn flux(&self, u: &[f64], out: &mut [f64]) -> std::result::Result<(), DomainError>;

    /// Physical source term (excluding any manufactured forcing).
    fn source(
        &self,
        _x: f64,
        _t: f64,
        _u: &[f64],
        out: &mut [f64],
    ) -> std::result::Result<(), DomainError> {
        out.fill(0.0);
        Ok(())
    }

    /// Dissipation coefficient `J(u⁻, u⁺)` of the local Lax–Friedrichs flux.
    fn max_wave_speed(&self, minus: &[f64], plus: &[f64])
        -> std::result::Result<f64, DomainError>;

    fn admissible(&self, _u: &[f64]) -> bool {
        true
    }
}

/// Scalar law `u_t + f(u)_x = s(x, t, u)`.
pub trait ScalarLaw: Send + Sync {
    fn name(&self) -> &str;

    fn flux(&self, u: f64) -> f64;

    fn dflux(&self, u: f64) -> f64;

    fn d2flux(&self, _u: f64) -> Option<f64> {
        None
    }

    fn source(&self, _x: f64, _t: f64, _u: f64) -> f64 {
        0.0
    }

    /// Every point where `f''` vanishes, if known in closed form.
    ///
    /// `Some(vec![])` means `f'` is monotone, so its extremes on any
    /// interval sit at the endpoints.
    fn dflux_critical_points(&self) -> Option<Vec<f64>> {
        None
    }

    /// `max |f'(w)|` for `w` between `a` and `b`.
    fn max_abs_dflux(&self, a: f64, b: f64) -> f64 {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let mut best = self.dflux(lo).abs().max(self.dflux(hi).abs());
        match self.dflux_critical_points() {
            Some(points) => {
                for w in points.into_iter().filter(|w| (lo..=hi).contains(w)) {
                    best = best.max(self.dflux(w).abs());
                }
            }
            None => {
                const SAMPLES: usize = 33;
                for i in 1..SAMPLES - 1 {
                    let w = lo + (hi - lo) * i as f64 / (SAMPLES - 1) as f64;
                    best = best.max(self.dflux(w).abs());
                }
            }
        }
        best
    }
}

impl<L: ScalarLaw> ConservationLaw for L {
    fn name(&self) -> &str {
        ScalarLaw::name(self)
    }

    fn num_components(&self) -> usize {
        1
    }

    fn flux(&self, u: &[f64], out: &mut [f64]) -> std::result::Result<(), DomainError> {
        out[0] = ScalarLaw::flux(self, u[0]);
        Ok(())
    }

    fn source(
        &self,
        x: f64,
        t: f64,
        u: &[f64],
        out: &mut [f64],
    ) -> std::result::Result<(), DomainError> {
        out[0] = ScalarLaw::source(self, x, t, u[0]);
        Ok(())
    }

    fn max_wave_speed(
        &self,
        minus: &[f64],
        plus: &[f64],
    ) -> std::result::Result<f64, DomainError> {
        Ok(self.max_abs_dflux(minus[0], plus[0]))
    }
}

/// Interface flux value together with its dissipation coefficient `J ≥ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct FluxResult<V = Vec<f64>> {
    pub value: V,
    pub dissipation: f64,
}

/// Single-valued flux at an element interface from the two traces.
pub trait NumericalFlux: Send + Sync {
    fn name(&self) -> &str;

    /// Writes `f̂(u⁻, u⁺)` into `out` and returns the dissipation coefficient.
    fn interface_flux(
        &self,
        law: &dyn ConservationLaw,
        minus: &[f64],
        plus: &[f64],
        out: &mut [f64],
    ) -> std::result::Result<f64, DomainError>;
}

/// `f̂ = {f(u)} + J/2 [u]`.
#[derive(Debug, Clone, Copy, Default)]
pub struct LocalLaxFriedrichs;

const STACK_COMPONENTS: usize = 4;

impl NumericalFlux for LocalLaxFriedrichs {
    fn name(&self) -> &str {
        "llf"
    }

    fn interface_flux(
        &self,
        law: &dyn ConservationLaw,
        minus: &[f64],
        plus: &[f64],
        out: &mut [f64],
    ) -> std::result::Result<f64, DomainError> {
        let m = out.len();
        let j = law.max_wave_speed(minus, plus)?;
        let mut stack = [0.0; STACK_COMPONENTS];
        let mut heap;
        let f_plus: &mut [f64] = if m <= STACK_COMPONENTS {
            &mut stack[..m]
        } else {
            heap = vec![0.0; m];
            &mut heap
        };
        law.flux(minus, out)?;
        law.flux(plus, f_plus)?;
        for c in 0..m {
            out[c] = 0.5 * (out[c] + f_plus[c]) + 0.5 * j * (minus[c] - plus[c]);
        }
        Ok(j)
    }
}

/// All interface fluxes known to the solver, keyed by name.
pub fn flux_registry() -> Registry<dyn NumericalFlux> {
    let mut r: Registry<dyn NumericalFlux> = Registry::new("numerical flux");
    r.register("llf", "local Lax-Friedrichs (Rusanov) flux", |_| {
        Box::new(LocalLaxFriedrichs)
    });
    r
}

/// Local Lax–Friedrichs flux for a scalar law.
pub fn llf_scalar<L: ScalarLaw + ?Sized>(
    law: &L,
    v_minus: f64,
    v_plus: f64,
) -> Result<FluxResult<f64>> {
    if v_minus.is_nan() || v_plus.is_nan() {
        return Err(Error::invalid("NaN trace passed to numerical flux"));
    }
    let j = law.max_abs_dflux(v_minus, v_plus);
    let avg = 0.5 * (law.flux(v_minus) + law.flux(v_plus));
    Ok(FluxResult {
        value: avg + 0.5 * j * (v_minus - v_plus),
        dissipation: j,
    })
}

/// Local Lax–Friedrichs flux for a system; both states must be admissible.
pub fn llf_system(
    law: &dyn ConservationLaw,
    u_minus: &[f64],
    u_plus: &[f64],
) -> Result<FluxResult> {
    let m = law.num_components();
    if u_minus.len() != m || u_plus.len() != m {
        return Err(Error::invalid(format!("expected states of length {m}")));
    }
    for (side, u) in [("left", u_minus), ("right", u_plus)] {
        if !law.admissible(u) {
            return Err(Error::domain(
                format!("{side} interface state"),
                DomainError(format!("inadmissible state {u:?} for {}", law.name())),
            ));
        }
    }
    let mut value = vec![0.0; m];
    let dissipation = LocalLaxFriedrichs
        .interface_flux(law, u_minus, u_plus, &mut value)
        .map_err(|e| Error::domain("interface", e))?;
    Ok(FluxResult { value, dissipation })
}

/// Interface viscosity `α(v) = [v]⁻¹ (f̂(v⁻, v⁺) − f({v}))`, or `|f'({v})| / 2`
/// when the jump is below `1e-10 (1 + |{v}|)`.
pub fn alpha_viscosity<L, F>(law: &L, flux_fn: F, v_minus: f64, v_plus: f64) -> f64
where
    L: ScalarLaw + ?Sized,
    F: Fn(f64, f64) -> f64,
{
    let jump = v_minus - v_plus;
    let avg = 0.5 * (v_minus + v_plus);
    if jump.abs() > 1e-10 * (1.0 + avg.abs()) {
        (flux_fn(v_minus, v_plus) - law.flux(avg)) / jump
    } else {
        0.5 * law.dflux(avg).abs()
    }
}
