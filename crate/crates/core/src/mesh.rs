use crate::error::{Error, Result};

/// Uniform partition of `[0, L]` into equal elements.
#[derive(Debug, Clone, PartialEq)]
pub struct Mesh {
    length: f64,
    num_elements: usize,
    h: f64,
}

impl Mesh {
    pub fn new(length: f64, num_elements: usize) -> Result<Self> {
        if !(length.is_finite() && length > 0.0) {
            return Err(Error::invalid(format!("mesh length must be positive, got {length}")));
        }
        if num_elements == 0 {
            return Err(Error::invalid("mesh needs at least one element"));
        }
        Ok(Self {
            length,
            num_elements,
            h: length / num_elements as f64,
        })
    }

    /// Mesh of `[0, length]` with element width `h`; `length / h` must be an integer.
    pub fn with_width(length: f64, h: f64) -> Result<Self> {
        if !(h.is_finite() && h > 0.0) {
            return Err(Error::invalid(format!("element width must be positive, got {h}")));
        }
        let n = length / h;
        let rounded = n.round();
        if rounded < 1.0 || (n - rounded).abs() > 1e-9 * n.max(1.0) {
            return Err(Error::invalid(format!(
                "element width {h} does not divide domain length {length}"
            )));
        }
        Self::new(length, rounded as usize)
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn num_elements(&self) -> usize {
        self.num_elements
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    /// Number of nodes `x_0 .. x_{N+1}`.
    pub fn num_nodes(&self) -> usize {
        self.num_elements + 1
    }

    pub fn node(&self, j: usize) -> f64 {
        if j == self.num_elements {
            self.length
        } else {
            j as f64 * self.h
        }
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.num_nodes()).map(|j| self.node(j)).collect()
    }

    /// Physical coordinate of reference point `xi ∈ [-1, 1]` on `element`.
    #[inline]
    pub fn map_to_physical(&self, element: usize, xi: f64) -> f64 {
        self.node(element) + 0.5 * (xi + 1.0) * self.h
    }
}

/// Convenience constructor mirroring `Mesh::new`.
pub fn build_mesh(length: f64, num_elements: usize) -> Result<Mesh> {
    Mesh::new(length, num_elements)
}
