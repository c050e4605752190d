//! Parametric stable tail dependence functions.
//!
//! A stable tail dependence function `ℓ: [0, ∞)^d → [0, ∞)` is convex,
//! 1-homogeneous and satisfies `max_j x_j ≤ ℓ(x) ≤ Σ_j x_j`. The survival
//! extreme value copula it generates drives the inclusion–exclusion tail copula
//! in [`crate::tail_copula`], and it is the `ℓ` of an Archimax copula.
//!
//! All evaluation is done in homogeneous form; the Tawn models are written on
//! `x` directly instead of on the 2-simplex, which avoids the rounding of
//! `w_3 = 1 - w_1 - w_2` going negative.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::numeric::{check_point, max_of, power_sum};
use crate::{Error, Result};

/// A validated stable tail dependence function.
#[derive(Debug, Clone, PartialEq)]
pub struct StdfModel {
    kind: StdfKind,
}

/// Family and parameters of a [`StdfModel`].
#[derive(Debug, Clone, PartialEq)]
pub enum StdfKind {
    /// `ℓ(x) = Σ x_j`.
    Independence { dim: usize },
    /// `ℓ(x) = max x_j`.
    Comonotone { dim: usize },
    /// Symmetric logistic (Gumbel) model, `ℓ(x) = (Σ x_j^s)^{1/s}`.
    Logistic { s: f64, dim: usize },
    /// `ℓ(x) = Σ (1 - α_j) x_j + max_j α_j x_j`.
    MarshallOlkin { alpha: Vec<f64> },
    /// Tawn's trivariate type I asymmetric logistic model.
    TawnTypeI { s: f64, r: f64, theta: [f64; 3] },
    /// Tawn's trivariate type II nested logistic model.
    TawnTypeII { s: f64, r: f64, t: f64, phi: f64 },
    /// `w ℓ_1 + (1 - w) ℓ_2`.
    Mixture {
        weight: f64,
        first: Box<StdfModel>,
        second: Box<StdfModel>,
    },
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 {
        return Err(Error::param("dimension", "must be at least 1"));
    }
    Ok(())
}

fn check_exponent(name: &str, value: f64) -> Result<()> {
    if !value.is_finite() || value < 1.0 {
        return Err(Error::param(name, format!("must be a finite real >= 1, got {value}")));
    }
    Ok(())
}

fn check_unit(name: &str, value: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&value) {
        return Err(Error::param(name, format!("must lie in [0, 1], got {value}")));
    }
    Ok(())
}

impl StdfModel {
    pub fn independence(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self {
            kind: StdfKind::Independence { dim },
        })
    }

    pub fn comonotone(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self {
            kind: StdfKind::Comonotone { dim },
        })
    }

    pub fn logistic(s: f64, dim: usize) -> Result<Self> {
        check_dim(dim)?;
        check_exponent("s", s)?;
        Ok(Self {
            kind: StdfKind::Logistic { s, dim },
        })
    }

    /// Marshall–Olkin model with `α ∈ (0, 1)^d`.
    pub fn marshall_olkin(alpha: Vec<f64>) -> Result<Self> {
        check_dim(alpha.len())?;
        for (j, &a) in alpha.iter().enumerate() {
            if !(a > 0.0 && a < 1.0) {
                return Err(Error::param(
                    format!("alpha[{j}]"),
                    format!("must lie in (0, 1), got {a}"),
                ));
            }
        }
        Ok(Self {
            kind: StdfKind::MarshallOlkin { alpha },
        })
    }

    /// Marshall–Olkin model on the closed box `[0, 1]^d`.
    ///
    /// Only meant for boundary checks: `α_j = 1` for all `j` gives `ℓ = max`,
    /// `α_j = 0` for all `j` gives independence.
    pub fn marshall_olkin_closed_box(alpha: Vec<f64>) -> Result<Self> {
        check_dim(alpha.len())?;
        for (j, &a) in alpha.iter().enumerate() {
            check_unit(&format!("alpha[{j}]"), a)?;
        }
        Ok(Self {
            kind: StdfKind::MarshallOlkin { alpha },
        })
    }

    pub fn tawn_type_i(s: f64, r: f64, theta: [f64; 3]) -> Result<Self> {
        check_exponent("s", s)?;
        check_exponent("r", r)?;
        for (j, &t) in theta.iter().enumerate() {
            check_unit(&format!("theta{}", j + 1), t)?;
        }
        Ok(Self {
            kind: StdfKind::TawnTypeI { s, r, theta },
        })
    }

    pub fn tawn_type_ii(s: f64, r: f64, t: f64, phi: f64) -> Result<Self> {
        check_exponent("s", s)?;
        check_exponent("r", r)?;
        check_exponent("t", t)?;
        check_unit("phi", phi)?;
        Ok(Self {
            kind: StdfKind::TawnTypeII { s, r, t, phi },
        })
    }

    pub fn mixture(weight: f64, first: StdfModel, second: StdfModel) -> Result<Self> {
        check_unit("weight", weight)?;
        if first.dim() != second.dim() {
            return Err(Error::DimensionMismatch {
                expected: first.dim(),
                got: second.dim(),
            });
        }
        Ok(Self {
            kind: StdfKind::Mixture {
                weight,
                first: Box::new(first),
                second: Box::new(second),
            },
        })
    }

    pub fn kind(&self) -> &StdfKind {
        &self.kind
    }

    pub fn dim(&self) -> usize {
        match &self.kind {
            StdfKind::Independence { dim }
            | StdfKind::Comonotone { dim }
            | StdfKind::Logistic { dim, .. } => *dim,
            StdfKind::MarshallOlkin { alpha } => alpha.len(),
            StdfKind::TawnTypeI { .. } | StdfKind::TawnTypeII { .. } => 3,
            StdfKind::Mixture { first, .. } => first.dim(),
        }
    }

    /// Whether `ℓ` is invariant under every permutation of its arguments.
    ///
    /// This is a structural check on the parameters and may return `false`
    /// for a model that happens to be exchangeable for another reason.
    pub fn is_exchangeable(&self) -> bool {
        match &self.kind {
            StdfKind::Independence { .. } | StdfKind::Comonotone { .. } | StdfKind::Logistic { .. } => {
                true
            }
            StdfKind::MarshallOlkin { alpha } => alpha.iter().all(|&a| a == alpha[0]),
            StdfKind::TawnTypeI { theta, .. } => theta.iter().all(|&t| t == 1.0),
            StdfKind::TawnTypeII { .. } => false,
            StdfKind::Mixture { first, second, .. } => {
                first.is_exchangeable() && second.is_exchangeable()
            }
        }
    }

    /// Evaluates `ℓ(x)` for `x ∈ [0, ∞)^d`.
    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        check_point(x, self.dim())?;
        Ok(self.eval_unchecked(x))
    }

    /// Evaluates the margin `ℓ_S(x)`, i.e. `ℓ` with every coordinate outside
    /// `subset` (0-based indices) set to zero.
    pub fn margin(&self, x: &[f64], subset: &[usize]) -> Result<f64> {
        check_point(x, self.dim())?;
        if subset.is_empty() {
            return Err(Error::param("subset", "must be nonempty"));
        }
        let mut y = vec![0.0; x.len()];
        for &j in subset {
            if j >= x.len() {
                return Err(Error::param(
                    "subset",
                    format!("index {j} out of range for dimension {}", x.len()),
                ));
            }
            y[j] = x[j];
        }
        Ok(self.eval_unchecked(&y))
    }

    pub(crate) fn eval_unchecked(&self, x: &[f64]) -> f64 {
        match &self.kind {
            StdfKind::Independence { .. } => x.iter().sum(),
            StdfKind::Comonotone { .. } => max_of(x).max(0.0),
            StdfKind::Logistic { s, .. } => power_sum(x, *s),
            StdfKind::MarshallOlkin { alpha } => {
                let linear: f64 = alpha.iter().zip(x).map(|(a, v)| (1.0 - a) * v).sum();
                let shock = alpha
                    .iter()
                    .zip(x)
                    .map(|(a, v)| a * v)
                    .fold(0.0_f64, f64::max);
                linear + shock
            }
            StdfKind::TawnTypeI { s, r, theta } => {
                let asym = power_sum(&[(1.0 - theta[0]) * x[0], (1.0 - theta[1]) * x[1]], *r);
                let logistic = power_sum(
                    &[theta[0] * x[0], theta[1] * x[1], theta[2] * x[2]],
                    *s,
                );
                (1.0 - theta[2]) * x[2] + asym + logistic
            }
            StdfKind::TawnTypeII { s, r, t, phi } => {
                let inner = power_sum(&[x[0], x[1]], r * s);
                let nested = power_sum(&[inner, x[2]], *s);
                let split = power_sum(&[x[0], x[1]], *t) + x[2];
                phi * nested + (1.0 - phi) * split
            }
            StdfKind::Mixture {
                weight,
                first,
                second,
            } => weight * first.eval_unchecked(x) + (1.0 - weight) * second.eval_unchecked(x),
        }
    }

    /// Randomized check of the bounds `max ≤ ℓ ≤ sum` and of 1-homogeneity.
    pub fn validate(&self, samples: usize, seed: u64) -> ValidationReport {
        const TOL: f64 = 1e-12;
        let d = self.dim();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut report = ValidationReport {
            samples,
            ..ValidationReport::default()
        };
        let mut x = vec![0.0; d];
        for _ in 0..samples {
            for v in x.iter_mut() {
                *v = if rng.gen_bool(0.1) {
                    0.0
                } else {
                    rng.gen_range(-3.0_f64..3.0).exp()
                };
            }
            let value = self.eval_unchecked(&x);
            let lower = max_of(&x).max(0.0);
            let upper: f64 = x.iter().sum();
            let scale = upper.max(1.0);
            let bound_violation = (lower - value).max(value - upper).max(0.0) / scale;
            let mut failed = bound_violation > TOL;
            report.worst_bound_violation = report.worst_bound_violation.max(bound_violation);
            for t in [0.1, 1.0, 10.0] {
                let scaled: Vec<f64> = x.iter().map(|v| t * v).collect();
                let lhs = self.eval_unchecked(&scaled);
                let err = (lhs - t * value).abs() / (t * value).max(1.0);
                report.worst_homogeneity_violation = report.worst_homogeneity_violation.max(err);
                failed |= err > TOL;
            }
            if failed {
                report.failures += 1;
            }
        }
        report.passed = report.failures == 0 && samples > 0;
        report
    }
}

/// Outcome of [`StdfModel::validate`]. Violations are reported relative to
/// `max(1, ·)` of the quantity they are measured against.
#[derive(Debug, Clone, Default, PartialEq, serde::Serialize)]
pub struct ValidationReport {
    pub samples: usize,
    pub passed: bool,
    pub failures: usize,
    pub worst_bound_violation: f64,
    pub worst_homogeneity_violation: f64,
}
