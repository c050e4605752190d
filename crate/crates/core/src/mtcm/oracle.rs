//! Brute-force lattice search over the log coordinates of `B`.

use std::cmp::Ordering;

use rayon::prelude::*;

use super::{degenerate, lexicographic, BudgetSet, Diagnostics, Method, MtcmResult, DEGENERACY_THRESHOLD};
use crate::tail_copula::TailCopulaModel;
use crate::{Error, Result};

/// Largest lattice the oracle will evaluate.
pub const MAX_GRID_POINTS: u64 = 10_000_000;

/// Points per axis of the local refinement grid; its spacing is one tenth of
/// the coarse spacing and it spans one coarse cell on each side.
const REFINE_POINTS: usize = 21;

#[derive(Debug, Clone, PartialEq)]
pub struct OracleConfig {
    pub grid_points: usize,
    pub log_range: f64,
    /// Run the local refinement around the coarse maximizer.
    pub refine: bool,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            grid_points: 201,
            log_range: 50f64.ln(),
            refine: true,
        }
    }
}

#[derive(Debug, Clone)]
struct Candidate {
    value: f64,
    b: Vec<f64>,
    x: Vec<f64>,
}

fn better(a: Candidate, b: Candidate) -> Candidate {
    match a.value.total_cmp(&b.value) {
        Ordering::Greater => a,
        Ordering::Less => b,
        Ordering::Equal => {
            if lexicographic(&b.b, &a.b) == Ordering::Less {
                b
            } else {
                a
            }
        }
    }
}

/// Maximum of `Λ` over the lattice `{-L, …, L}^{d-1}` with `N` points per
/// axis, embedded into `B`, followed by an optional 10× finer local grid.
/// Supports `d ∈ {2, 3, 4}`.
pub fn mtcm_oracle(model: &TailCopulaModel, config: &OracleConfig) -> Result<MtcmResult> {
    let d = model.dim();
    if !(2..=4).contains(&d) {
        return Err(Error::InvalidConfig(format!(
            "the grid oracle supports dimensions 2 to 4, got {d}"
        )));
    }
    if config.grid_points < 3 {
        return Err(Error::InvalidConfig("grid_points must be at least 3".into()));
    }
    if !(config.log_range.is_finite() && config.log_range > 0.0) {
        return Err(Error::InvalidConfig("log_range must be a positive real".into()));
    }
    let set = BudgetSet::new(d)?;
    let n = set.free_dim();
    let points = (config.grid_points as u64)
        .checked_pow(n as u32)
        .unwrap_or(u64::MAX);
    if points > MAX_GRID_POINTS {
        return Err(Error::GridTooLarge {
            points,
            limit: MAX_GRID_POINTS,
        });
    }

    let spacing = 2.0 * config.log_range / (config.grid_points - 1) as f64;
    let origin = vec![-config.log_range; n];
    let mut best = scan(model, set, &origin, spacing, config.grid_points)?;
    let mut evaluated = points;
    let mut final_step = spacing;

    if config.refine {
        let fine = spacing / 10.0;
        let half = (REFINE_POINTS / 2) as f64;
        let local_origin: Vec<f64> = best.x.iter().map(|c| c - half * fine).collect();
        let local = scan(model, set, &local_origin, fine, REFINE_POINTS)?;
        evaluated += (REFINE_POINTS as u64).pow(n as u32);
        best = better(best, local);
        final_step = fine;
    }

    let diagnostics = Diagnostics {
        starts_used: 1,
        best_start: 0,
        function_evals: evaluated,
        converged: true,
        final_step,
    };
    if best.value < DEGENERACY_THRESHOLD {
        return Ok(degenerate(d, Method::Oracle, diagnostics));
    }
    Ok(MtcmResult {
        lambda_star: best.value,
        b_star: best.b,
        method: Method::Oracle,
        diagnostics,
    })
}

fn scan(
    model: &TailCopulaModel,
    set: BudgetSet,
    origin: &[f64],
    spacing: f64,
    per_axis: usize,
) -> Result<Candidate> {
    let n = origin.len();
    let total = per_axis.pow(n as u32);
    (0..total)
        .into_par_iter()
        .map(|flat| {
            let mut rest = flat;
            let x: Vec<f64> = origin
                .iter()
                .map(|o| {
                    let i = rest % per_axis;
                    rest /= per_axis;
                    o + i as f64 * spacing
                })
                .collect();
            let b = set.embed(&x);
            let value = model.eval_positive(&b)?;
            Ok(Candidate { value, b, x })
        })
        .try_reduce_with(|a, b| Ok(better(a, b)))
        .expect("grid is nonempty")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stdf::StdfModel;

    fn evc(stdf: StdfModel) -> TailCopulaModel {
        TailCopulaModel::survival_evc(stdf).unwrap()
    }

    #[test]
    fn independence_is_degenerate() {
        let r = mtcm_oracle(&evc(StdfModel::independence(3).unwrap()), &OracleConfig::default()).unwrap();
        assert_eq!(r.lambda_star, 0.0);
        assert_eq!(r.b_star, vec![1.0; 3]);
        assert_eq!(r.method, Method::Oracle);
    }

    #[test]
    fn logistic_table_value() {
        let cfg = OracleConfig {
            grid_points: 201,
            log_range: 10f64.ln(),
            refine: false,
        };
        let r = mtcm_oracle(&evc(StdfModel::logistic(1.59, 3).unwrap()), &cfg).unwrap();
        assert!((r.lambda_star - 0.356).abs() <= 2e-3, "{r:?}");
    }

    #[test]
    fn marshall_olkin_grid_value() {
        let cfg = OracleConfig {
            grid_points: 401,
            log_range: 50f64.ln(),
            refine: false,
        };
        let alpha = [0.2, 0.5, 0.8];
        let model = evc(StdfModel::marshall_olkin(alpha.to_vec()).unwrap());
        let r = mtcm_oracle(&model, &cfg).unwrap();
        // independent lattice maximum of min_j α_j b_j
        let (n, l) = (cfg.grid_points, cfg.log_range);
        let h = 2.0 * l / (n - 1) as f64;
        let mut lattice = 0.0f64;
        for i in 0..n {
            for k in 0..n {
                let (x1, x2) = (-l + i as f64 * h, -l + k as f64 * h);
                let v = (alpha[0] * x1.exp()).min(alpha[1] * x2.exp()).min(alpha[2] * (-x1 - x2).exp());
                lattice = lattice.max(v);
            }
        }
        assert!((r.lambda_star - lattice).abs() <= 1e-15, "{r:?} vs {lattice}");
        // the kink of min sits between lattice points, so the coarse value
        // trails the closed form by O(λ* h)
        let exact = 0.08f64.cbrt();
        assert!(r.lambda_star <= exact && exact - r.lambda_star <= exact * h, "{r:?}");
        let refined = mtcm_oracle(&model, &OracleConfig::default()).unwrap();
        assert!((refined.lambda_star - 0.08f64.cbrt()).abs() <= 1e-3, "{refined:?}");
    }

    #[test]
    fn rejects_bad_configurations() {
        let m5 = evc(StdfModel::logistic(2.0, 5).unwrap());
        assert!(mtcm_oracle(&m5, &OracleConfig::default()).is_err());
        let m4 = evc(StdfModel::logistic(2.0, 4).unwrap());
        let huge = OracleConfig {
            grid_points: 300,
            ..OracleConfig::default()
        };
        assert!(matches!(mtcm_oracle(&m4, &huge), Err(Error::GridTooLarge { .. })));
        let tiny = OracleConfig {
            grid_points: 2,
            ..OracleConfig::default()
        };
        assert!(mtcm_oracle(&m4, &tiny).is_err());
    }
}
