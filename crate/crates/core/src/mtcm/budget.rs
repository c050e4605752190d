use crate::{Error, Result};

/// The unit-product set `B = {b ∈ (0, ∞)^d : Π b_j = 1}` in log coordinates.
///
/// A point `x ∈ R^{d-1}` maps to `b = (e^{x_1}, …, e^{x_{d-1}}, e^{-(x_1+…+x_{d-1})})`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BudgetSet {
    dim: usize,
}

impl BudgetSet {
    pub fn new(dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::param("dimension", format!("must be at least 2, got {dim}")));
        }
        Ok(Self { dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of free log coordinates, `d - 1`.
    pub fn free_dim(&self) -> usize {
        self.dim - 1
    }

    pub fn embed(&self, x: &[f64]) -> Vec<f64> {
        debug_assert_eq!(x.len(), self.free_dim());
        let mut b = Vec::with_capacity(self.dim);
        b.extend(x.iter().map(|v| v.exp()));
        b.push((-x.iter().sum::<f64>()).exp());
        b
    }

    /// Log coordinates of a point of `B` (the last coordinate is implied).
    pub fn log_coords(&self, b: &[f64]) -> Vec<f64> {
        b[..self.dim - 1].iter().map(|v| v.ln()).collect()
    }
}
