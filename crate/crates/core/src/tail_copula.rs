//! Lower tail copulas `Λ(x; C) = lim_{t↓0} C(t x) / t`.
//!
//! Supported routes:
//!
//! - survival extreme value copulas, by inclusion–exclusion over the margins
//!   of `ℓ`: `Λ(x) = Σ_{∅≠S} (-1)^{|S|-1} ℓ_S(x)`;
//! - Archimax copulas with `ψ ∈ RV_{-α}`: `Λ(x) = ℓ(x^{-1/α})^{-α}`;
//! - Archimedean copulas (`ℓ = Σ`), kept as a separate fast path;
//! - nested Archimedean trees (see [`crate::nac`]);
//! - two-component mixtures.

use serde::{Deserialize, Serialize};

use crate::nac::NacTree;
use crate::numeric::{check_point, min_of, CompensatedSum};
use crate::stdf::{StdfKind, StdfModel};
use crate::{Error, Result};

/// Largest dimension accepted by the inclusion–exclusion route.
pub const MAX_INCLUSION_EXCLUSION_DIM: usize = 20;

/// Negative round-off tolerated (and clamped) by inclusion–exclusion,
/// relative to `max(1, max_j x_j)`.
const CLAMP_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct TailCopulaModel {
    kind: TailCopulaKind,
}

#[derive(Debug, Clone, PartialEq)]
pub enum TailCopulaKind {
    SurvivalEvc(StdfModel),
    Archimax { stdf: StdfModel, alpha: f64 },
    Archimedean { alpha: f64, dim: usize },
    Nac(NacTree),
    Mixture {
        weight: f64,
        first: Box<TailCopulaModel>,
        second: Box<TailCopulaModel>,
    },
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(Error::param("alpha", format!("must be a positive finite real, got {alpha}")));
    }
    Ok(())
}

impl TailCopulaModel {
    pub fn survival_evc(stdf: StdfModel) -> Result<Self> {
        if stdf.dim() > MAX_INCLUSION_EXCLUSION_DIM {
            return Err(Error::DimensionTooLarge {
                dim: stdf.dim(),
                max: MAX_INCLUSION_EXCLUSION_DIM,
            });
        }
        Ok(Self {
            kind: TailCopulaKind::SurvivalEvc(stdf),
        })
    }

    pub fn archimax(stdf: StdfModel, alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        Ok(Self {
            kind: TailCopulaKind::Archimax { stdf, alpha },
        })
    }

    pub fn archimedean(alpha: f64, dim: usize) -> Result<Self> {
        check_alpha(alpha)?;
        if dim == 0 {
            return Err(Error::param("dimension", "must be at least 1"));
        }
        Ok(Self {
            kind: TailCopulaKind::Archimedean { alpha, dim },
        })
    }

    pub fn nac(tree: NacTree) -> Self {
        Self {
            kind: TailCopulaKind::Nac(tree),
        }
    }

    pub fn mixture(weight: f64, first: TailCopulaModel, second: TailCopulaModel) -> Result<Self> {
        if !(0.0..=1.0).contains(&weight) {
            return Err(Error::param("weight", format!("must lie in [0, 1], got {weight}")));
        }
        if first.dim() != second.dim() {
            return Err(Error::DimensionMismatch {
                expected: first.dim(),
                got: second.dim(),
            });
        }
        Ok(Self {
            kind: TailCopulaKind::Mixture {
                weight,
                first: Box::new(first),
                second: Box::new(second),
            },
        })
    }

    pub fn kind(&self) -> &TailCopulaKind {
        &self.kind
    }

    pub fn dim(&self) -> usize {
        match &self.kind {
            TailCopulaKind::SurvivalEvc(stdf) | TailCopulaKind::Archimax { stdf, .. } => stdf.dim(),
            TailCopulaKind::Archimedean { dim, .. } => *dim,
            TailCopulaKind::Nac(tree) => tree.dim(),
            TailCopulaKind::Mixture { first, .. } => first.dim(),
        }
    }

    /// `Λ(x)` for `x ∈ [0, ∞)^d`; any zero coordinate gives 0.
    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        check_point(x, self.dim())?;
        if x.contains(&0.0) {
            return Ok(0.0);
        }
        self.eval_positive(x)
    }

    /// Tail dependence coefficient `Λ(1, …, 1)`.
    pub fn diagonal(&self) -> Result<f64> {
        self.eval(&vec![1.0; self.dim()])
    }

    /// Evaluation on a point already known to be finite and strictly positive.
    pub(crate) fn eval_positive(&self, x: &[f64]) -> Result<f64> {
        match &self.kind {
            TailCopulaKind::SurvivalEvc(stdf) => inclusion_exclusion(stdf, x),
            TailCopulaKind::Archimax { stdf, alpha } => Ok(archimax(stdf, *alpha, x)),
            TailCopulaKind::Archimedean { alpha, .. } => Ok(archimedean(*alpha, x)),
            TailCopulaKind::Nac(tree) => Ok(tree.tail_copula_at(tree.root(), x)),
            TailCopulaKind::Mixture {
                weight,
                first,
                second,
            } => Ok(weight * first.eval_positive(x)? + (1.0 - weight) * second.eval_positive(x)?),
        }
    }
}

/// Survival-EVC tail copula; subsets are visited in Gray-code order so each
/// step toggles one coordinate of the margin vector.
fn inclusion_exclusion(stdf: &StdfModel, x: &[f64]) -> Result<f64> {
    let d = x.len();
    if d > MAX_INCLUSION_EXCLUSION_DIM {
        return Err(Error::DimensionTooLarge {
            dim: d,
            max: MAX_INCLUSION_EXCLUSION_DIM,
        });
    }
    // Closed forms that the inclusion–exclusion sum reduces to exactly.
    match stdf.kind() {
        StdfKind::Independence { .. } => return Ok(0.0),
        StdfKind::Comonotone { .. } => return Ok(min_of(x)),
        _ => {}
    }
    let mut margin = vec![0.0; d];
    let mut acc = CompensatedSum::new();
    let mut gray: u32 = 0;
    for k in 1u32..(1u32 << d) {
        let bit = k.trailing_zeros() as usize;
        gray ^= 1 << bit;
        margin[bit] = if gray & (1 << bit) != 0 { x[bit] } else { 0.0 };
        let value = stdf.eval_unchecked(&margin);
        if gray.count_ones() % 2 == 1 {
            acc.add(value);
        } else {
            acc.add(-value);
        }
    }
    let upper = min_of(x);
    let tol = CLAMP_TOL * x.iter().copied().fold(1.0, f64::max);
    let value = acc.value();
    if value < -tol || value > upper + tol {
        return Err(Error::TailCopulaOutOfRange { value, upper });
    }
    Ok(value.clamp(0.0, upper))
}

/// `ℓ(x^{-1/α})^{-α}`, rescaled by `m = min x` so that
/// `Λ(x) = m · ℓ((m / x)^{1/α})^{-α}` with arguments in `(0, 1]`.
fn archimax(stdf: &StdfModel, alpha: f64, x: &[f64]) -> f64 {
    let m = min_of(x);
    let y: Vec<f64> = x.iter().map(|&v| (m / v).powf(1.0 / alpha)).collect();
    m * stdf.eval_unchecked(&y).powf(-alpha)
}

/// `(Σ x_j^{-1/α})^{-α}` with the same rescaling as [`archimax`].
fn archimedean(alpha: f64, x: &[f64]) -> f64 {
    let m = min_of(x);
    let inner: f64 = x.iter().map(|&v| (m / v).powf(1.0 / alpha)).sum();
    m * inner.powf(-alpha)
}

/// A transformed Archimedean generator whose regular-variation index is
/// known in closed form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GeneratorTransform {
    /// `ψ(t) = (1 + t)^{-1/θ}`.
    Clayton { theta: f64 },
    /// `ψ(t)^{1/γ}`, `γ ∈ (0, 1]`.
    InnerPower { base: Box<GeneratorTransform>, gamma: f64 },
    /// `ψ(t^{1/β})`, `β ≥ 1`.
    OuterPower { base: Box<GeneratorTransform>, beta: f64 },
    /// Clayton `ψ((c^β + t)^{1/β} - c)`, `β ≥ 1`, `c ≥ 0`.
    TiltedClayton { theta: f64, beta: f64, c: f64 },
    /// Clayton `ψ(t + h) / ψ(h)`, `h ≥ 0`.
    ShiftedClayton { theta: f64, h: f64 },
}

fn positive(name: &str, v: f64) -> Result<()> {
    if !(v.is_finite() && v > 0.0) {
        return Err(Error::param(name, format!("must be positive, got {v}")));
    }
    Ok(())
}

fn at_least_one(name: &str, v: f64) -> Result<()> {
    if !(v.is_finite() && v >= 1.0) {
        return Err(Error::param(name, format!("must be >= 1, got {v}")));
    }
    Ok(())
}

fn nonnegative(name: &str, v: f64) -> Result<()> {
    if !(v.is_finite() && v >= 0.0) {
        return Err(Error::param(name, format!("must be >= 0, got {v}")));
    }
    Ok(())
}

/// Index `α` such that the transformed generator lies in `RV_{-α}`.
pub fn rv_index(transform: &GeneratorTransform) -> Result<f64> {
    match transform {
        GeneratorTransform::Clayton { theta } => {
            positive("theta", *theta)?;
            Ok(1.0 / theta)
        }
        GeneratorTransform::InnerPower { base, gamma } => {
            if !(gamma.is_finite() && *gamma > 0.0 && *gamma <= 1.0) {
                return Err(Error::param("gamma", format!("must lie in (0, 1], got {gamma}")));
            }
            Ok(rv_index(base)? / gamma)
        }
        GeneratorTransform::OuterPower { base, beta } => {
            at_least_one("beta", *beta)?;
            Ok(rv_index(base)? / beta)
        }
        GeneratorTransform::TiltedClayton { theta, beta, c } => {
            positive("theta", *theta)?;
            at_least_one("beta", *beta)?;
            nonnegative("c", *c)?;
            Ok(1.0 / (theta * beta))
        }
        GeneratorTransform::ShiftedClayton { theta, h } => {
            positive("theta", *theta)?;
            nonnegative("h", *h)?;
            Ok(1.0 / theta)
        }
    }
}
