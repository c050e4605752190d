//! Small numerical helpers shared by the evaluation code.

use crate::{Error, Result};

/// `(Σ y_j^p)^{1/p}` for nonnegative `y`, scaled by the largest entry so that
/// large exponents neither overflow nor underflow. Zero entries contribute 0.
pub fn power_sum(values: &[f64], p: f64) -> f64 {
    let top = values.iter().copied().fold(0.0_f64, f64::max);
    if top == 0.0 {
        return 0.0;
    }
    let inner: f64 = values
        .iter()
        .filter(|&&y| y > 0.0)
        .map(|&y| (y / top).powf(p))
        .sum();
    top * inner.powf(1.0 / p)
}

/// Neumaier's compensated summation.
#[derive(Debug, Default, Clone, Copy)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// Checks length, finiteness and sign of an evaluation point.
pub(crate) fn check_point(x: &[f64], dim: usize) -> Result<()> {
    if x.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: x.len(),
        });
    }
    for (index, &value) in x.iter().enumerate() {
        if !value.is_finite() {
            return Err(Error::NonFinite { index });
        }
        if value < 0.0 {
            return Err(Error::NegativeCoordinate { index, value });
        }
    }
    Ok(())
}

pub(crate) fn min_of(x: &[f64]) -> f64 {
    x.iter().copied().fold(f64::INFINITY, f64::min)
}

pub(crate) fn max_of(x: &[f64]) -> f64 {
    x.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}
