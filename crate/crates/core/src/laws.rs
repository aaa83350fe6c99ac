//! Scalar conservation laws.

use crate::flux::ScalarLaw;

/// Inviscid Burgers, `f(u) = u² / 2`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Burgers;

impl ScalarLaw for Burgers {
    fn name(&self) -> &str {
        "burgers"
    }

    fn flux(&self, u: f64) -> f64 {
        0.5 * u * u
    }

    fn dflux(&self, u: f64) -> f64 {
        u
    }

    fn d2flux(&self, _u: f64) -> Option<f64> {
        Some(1.0)
    }

    fn dflux_critical_points(&self) -> Option<Vec<f64>> {
        Some(Vec::new())
    }
}

/// Linear advection, `f(u) = a u`.
#[derive(Debug, Clone, Copy)]
pub struct LinearAdvection {
    pub speed: f64,
}

impl ScalarLaw for LinearAdvection {
    fn name(&self) -> &str {
        "advection"
    }

    fn flux(&self, u: f64) -> f64 {
        self.speed * u
    }

    fn dflux(&self, _u: f64) -> f64 {
        self.speed
    }

    fn d2flux(&self, _u: f64) -> Option<f64> {
        Some(0.0)
    }

    fn dflux_critical_points(&self) -> Option<Vec<f64>> {
        Some(Vec::new())
    }
}

type Fn1 = Box<dyn Fn(f64) -> f64 + Send + Sync>;
type SourceFn = Box<dyn Fn(f64, f64, f64) -> f64 + Send + Sync>;

/// Scalar law assembled from closures.
pub struct CustomScalarLaw {
    name: String,
    flux: Fn1,
    dflux: Fn1,
    d2flux: Option<Fn1>,
    source: Option<SourceFn>,
}

impl CustomScalarLaw {
    pub fn new<F, D>(name: impl Into<String>, flux: F, dflux: D) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
        D: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self {
            name: name.into(),
            flux: Box::new(flux),
            dflux: Box::new(dflux),
            d2flux: None,
            source: None,
        }
    }

    pub fn with_d2flux(mut self, d2: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.d2flux = Some(Box::new(d2));
        self
    }

    pub fn with_source(mut self, s: impl Fn(f64, f64, f64) -> f64 + Send + Sync + 'static) -> Self {
        self.source = Some(Box::new(s));
        self
    }
}

impl std::fmt::Debug for CustomScalarLaw {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CustomScalarLaw").field("name", &self.name).finish()
    }
}

impl ScalarLaw for CustomScalarLaw {
    fn name(&self) -> &str {
        &self.name
    }

    fn flux(&self, u: f64) -> f64 {
        (self.flux)(u)
    }

    fn dflux(&self, u: f64) -> f64 {
        (self.dflux)(u)
    }

    fn d2flux(&self, u: f64) -> Option<f64> {
        self.d2flux.as_ref().map(|d| d(u))
    }

    fn source(&self, x: f64, t: f64, u: f64) -> f64 {
        self.source.as_ref().map_or(0.0, |s| s(x, t, u))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{rngs::StdRng, Rng, SeedableRng};

    fn check_derivatives(law: &dyn ScalarLaw) {
        let mut rng = StdRng::seed_from_u64(7);
        let eps = 1e-5;
        for _ in 0..20 {
            let u: f64 = rng.gen_range(-3.0..3.0);
            let fd = (law.flux(u + eps) - law.flux(u - eps)) / (2.0 * eps);
            let d = law.dflux(u);
            assert!((fd - d).abs() <= 1e-6 * d.abs().max(1.0), "{} at {u}", law.name());
            if let Some(d2) = law.d2flux(u) {
                let fd2 = (law.dflux(u + eps) - law.dflux(u - eps)) / (2.0 * eps);
                assert!((fd2 - d2).abs() <= 1e-6 * d2.abs().max(1.0));
            }
        }
    }

    #[test]
    fn derivatives_consistent() {
        check_derivatives(&Burgers);
        check_derivatives(&LinearAdvection { speed: -0.7 });
        check_derivatives(
            &CustomScalarLaw::new("cubic", |u| u.powi(3) / 3.0, |u| u * u).with_d2flux(|u| 2.0 * u),
        );
    }
}
