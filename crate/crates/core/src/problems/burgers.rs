use std::f64::consts::PI;

use crate::flux::ConservationLaw;
use crate::laws::Burgers;

use super::ManufacturedProblem;

/// Burgers with `u(x, t) = cos(2πx) sin t + sin(2πx) cos t = sin(2πx + t)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct BurgersMms {
    law: Burgers,
}

pub fn burgers_mms() -> BurgersMms {
    BurgersMms::default()
}

impl ManufacturedProblem for BurgersMms {
    fn name(&self) -> &str {
        "burgers"
    }

    fn law(&self) -> &dyn ConservationLaw {
        &self.law
    }

    fn component_names(&self) -> Vec<String> {
        vec!["u".into()]
    }

    fn exact(&self, x: f64, t: f64, out: &mut [f64]) {
        let (s, c) = (2.0 * PI * x).sin_cos();
        out[0] = c * t.sin() + s * t.cos();
    }

    fn forcing(&self, x: f64, t: f64, out: &mut [f64]) {
        // u_t = cos θ, u_x = 2π cos θ with θ = 2πx + t
        let (s, c) = (2.0 * PI * x + t).sin_cos();
        out[0] = c + s * 2.0 * PI * c;
    }
}
