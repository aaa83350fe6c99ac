//! Independent oracles shared by the integration tests. Nothing here calls
//! the solver's own derivative or eigenvalue code.

#![allow(dead_code)]

use dgab::flux::ConservationLaw;
use dgab::problems::ManufacturedProblem;

/// Sixth-order central difference of `g` at `x`.
pub fn d6(g: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    let c = [
        (1.0, 3.0 / 4.0),
        (2.0, -3.0 / 20.0),
        (3.0, 1.0 / 60.0),
    ];
    c.iter()
        .map(|&(k, w)| w * (g(x + k * h) - g(x - k * h)))
        .sum::<f64>()
        / h
}

/// Pointwise PDE residual `u_t + f(u)_x − s(u) − forcing` of the exact
/// solution, by finite differences in both `t` and `x`.
pub fn mms_residual(problem: &dyn ManufacturedProblem, x: f64, t: f64) -> Vec<f64> {
    let law = problem.law();
    let m = law.num_components();
    let h = 1e-3;
    let exact = |x: f64, t: f64| {
        let mut u = vec![0.0; m];
        problem.exact(x, t, &mut u);
        u
    };
    let flux_at = |x: f64, c: usize| {
        let u = exact(x, t);
        let mut f = vec![0.0; m];
        law.flux(&u, &mut f).unwrap();
        f[c]
    };
    let u = exact(x, t);
    let mut s = vec![0.0; m];
    law.source(x, t, &u, &mut s).unwrap();
    let mut g = vec![0.0; m];
    problem.forcing(x, t, &mut g);
    (0..m)
        .map(|c| {
            let ut = d6(|tt| exact(x, tt)[c], t, h);
            let fx = d6(|xx| flux_at(xx, c), x, h);
            ut + fx - s[c] - g[c]
        })
        .collect()
}

/// Fourth-order finite-difference Jacobian of a two-component flux.
pub fn fd_jacobian(law: &dyn ConservationLaw, u: [f64; 2]) -> [[f64; 2]; 2] {
    let eps = 1e-4;
    let f = |v: [f64; 2]| {
        let mut out = [0.0; 2];
        law.flux(&v, &mut out).unwrap();
        out
    };
    let mut jac = [[0.0; 2]; 2];
    for col in 0..2 {
        let shift = |k: f64| {
            let mut v = u;
            v[col] += k * eps;
            f(v)
        };
        let (p1, m1, p2, m2) = (shift(1.0), shift(-1.0), shift(2.0), shift(-2.0));
        for row in 0..2 {
            jac[row][col] = (8.0 * (p1[row] - m1[row]) - (p2[row] - m2[row])) / (12.0 * eps);
        }
    }
    jac
}

/// Real eigenvalues of a 2×2 matrix, ascending, via its characteristic polynomial.
pub fn eig2(m: [[f64; 2]; 2]) -> (f64, f64) {
    let tr = m[0][0] + m[1][1];
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let disc = (0.25 * tr * tr - det).max(0.0).sqrt();
    (0.5 * tr - disc, 0.5 * tr + disc)
}

/// Adaptive Simpson quadrature on `[a, b]`.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(f: &dyn Fn(f64) -> f64, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
        let m = 0.5 * (a + b);
        let fm = f(m);
        (m, fm, (b - a) / 6.0 * (fa + 4.0 * fm + fb))
    }
    #[allow(clippy::too_many_arguments)]
    fn rec(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        whole: f64,
        m: f64,
        fm: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let (lm, flm, left) = simpson(f, a, fa, m, fm);
        let (rm, frm, right) = simpson(f, m, fm, b, fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            rec(f, a, fa, m, fm, left, lm, flm, tol / 2.0, depth - 1)
                + rec(f, m, fm, b, fb, right, rm, frm, tol / 2.0, depth - 1)
        }
    }
    let (fa, fb) = (f(a), f(b));
    let (m, fm, whole) = simpson(f, a, fa, b, fb);
    rec(f, a, fa, b, fb, whole, m, fm, tol, 50)
}
