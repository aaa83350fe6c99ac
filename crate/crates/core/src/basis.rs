//! Orthonormal Legendre basis on the reference element `[-1, 1]`.
//!
//! `phi_i(xi) = sqrt((2i + 1) / 2) * P_i(xi)`, so that the element mass matrix
//! in physical coordinates is `(h / 2) * I`.

use crate::error::Result;
use crate::quadrature::{gauss_legendre, QuadratureRule};

/// Values of `phi_0 .. phi_degree` at `xi`.
pub fn orthonormal_legendre(degree: usize, xi: f64) -> Vec<f64> {
    let mut vals = vec![0.0; degree + 1];
    let mut ders = vec![0.0; degree + 1];
    eval_into(degree, xi, &mut vals, &mut ders);
    vals
}

/// Derivatives `d phi_i / d xi` at `xi`.
pub fn orthonormal_legendre_derivatives(degree: usize, xi: f64) -> Vec<f64> {
    let mut vals = vec![0.0; degree + 1];
    let mut ders = vec![0.0; degree + 1];
    eval_into(degree, xi, &mut vals, &mut ders);
    ders
}

fn eval_into(degree: usize, xi: f64, vals: &mut [f64], ders: &mut [f64]) {
    // raw Legendre P_n and P_n' first; P'_{n+1} = P'_{n-1} + (2n+1) P_n
    vals[0] = 1.0;
    ders[0] = 0.0;
    if degree >= 1 {
        vals[1] = xi;
        ders[1] = 1.0;
    }
    for n in 1..degree {
        let nf = n as f64;
        vals[n + 1] = ((2.0 * nf + 1.0) * xi * vals[n] - nf * vals[n - 1]) / (nf + 1.0);
        ders[n + 1] = ders[n - 1] + (2.0 * nf + 1.0) * vals[n];
    }
    for i in 0..=degree {
        let s = ((2 * i + 1) as f64 / 2.0).sqrt();
        vals[i] *= s;
        ders[i] *= s;
    }
}

/// Basis values tabulated at a quadrature rule and at both endpoints.
#[derive(Debug, Clone)]
pub struct ReferenceElement {
    degree: usize,
    quad: QuadratureRule,
    /// `values[q * nb + i] = phi_i(xi_q)`
    values: Vec<f64>,
    /// `derivatives[q * nb + i] = phi_i'(xi_q)`
    derivatives: Vec<f64>,
    left: Vec<f64>,
    right: Vec<f64>,
}

impl ReferenceElement {
    pub fn new(degree: usize, quad_points: usize) -> Result<Self> {
        let quad = gauss_legendre(quad_points)?;
        let nb = degree + 1;
        let mut values = Vec::with_capacity(quad.len() * nb);
        let mut derivatives = Vec::with_capacity(quad.len() * nb);
        let mut v = vec![0.0; nb];
        let mut d = vec![0.0; nb];
        for &xi in &quad.points {
            eval_into(degree, xi, &mut v, &mut d);
            values.extend_from_slice(&v);
            derivatives.extend_from_slice(&d);
        }
        Ok(Self {
            degree,
            left: orthonormal_legendre(degree, -1.0),
            right: orthonormal_legendre(degree, 1.0),
            quad,
            values,
            derivatives,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn num_basis(&self) -> usize {
        self.degree + 1
    }

    pub fn quadrature(&self) -> &QuadratureRule {
        &self.quad
    }

    #[inline]
    pub fn values_at(&self, q: usize) -> &[f64] {
        let nb = self.num_basis();
        &self.values[q * nb..(q + 1) * nb]
    }

    #[inline]
    pub fn derivatives_at(&self, q: usize) -> &[f64] {
        let nb = self.num_basis();
        &self.derivatives[q * nb..(q + 1) * nb]
    }

    /// Basis values at `xi = -1`.
    pub fn left(&self) -> &[f64] {
        &self.left
    }

    /// Basis values at `xi = +1`.
    pub fn right(&self) -> &[f64] {
        &self.right
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orthonormal_up_to_degree_nine() {
        let q = gauss_legendre(12).unwrap();
        let tab: Vec<Vec<f64>> = q.points.iter().map(|&x| orthonormal_legendre(9, x)).collect();
        for i in 0..=9 {
            for j in 0..=9 {
                let ip: f64 = tab
                    .iter()
                    .zip(&q.weights)
                    .map(|(v, w)| w * v[i] * v[j])
                    .sum();
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((ip - expected).abs() < 1e-12, "({i},{j}) -> {ip}");
            }
        }
    }

    #[test]
    fn endpoint_values() {
        let r = orthonormal_legendre(5, 1.0);
        let l = orthonormal_legendre(5, -1.0);
        for i in 0..=5 {
            let s = ((2 * i + 1) as f64 / 2.0).sqrt();
            assert!((r[i] - s).abs() < 1e-14);
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            assert!((l[i] - sign * s).abs() < 1e-14);
        }
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let eps = 1e-6;
        for &xi in &[-0.9, -0.3, 0.0, 0.41, 0.77] {
            let d = orthonormal_legendre_derivatives(7, xi);
            let p = orthonormal_legendre(7, xi + eps);
            let m = orthonormal_legendre(7, xi - eps);
            for i in 0..=7 {
                let fd = (p[i] - m[i]) / (2.0 * eps);
                assert!((fd - d[i]).abs() < 1e-6 * (1.0 + d[i].abs()), "i={i} xi={xi}");
            }
        }
    }
}
