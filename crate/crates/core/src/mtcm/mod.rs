//! The maximal tail concordance measure `λ* = max_{b ∈ B} Λ(b)` and its
//! maximizer `b*`.
//!
//! Closed forms cover survival Marshall–Olkin copulas, exchangeable Archimax
//! copulas and nested Archimedean trees. Everything else goes through a
//! multi-start simplex search in the log coordinates of [`BudgetSet`]; the
//! grid oracle in [`mtcm_oracle`] is the brute-force check for both.

mod budget;
mod oracle;
mod simplex;

use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use budget::BudgetSet;
pub use oracle::{mtcm_oracle, OracleConfig};

use crate::numeric::{max_of, min_of};
use crate::stdf::{StdfKind, StdfModel};
use crate::tail_copula::{TailCopulaKind, TailCopulaModel};
use crate::{Error, Result};
use simplex::Tolerances;

/// `λ*` below this is reported as exactly 0 with `b* = 1_d`.
pub const DEGENERACY_THRESHOLD: f64 = 1e-12;

/// Starts whose values are within this of the best are tie-broken by the
/// lexicographically smallest `b*`.
pub const TIE_TOLERANCE: f64 = 1e-10;

const SPREAD_TOL: f64 = 1e-12;
const INITIAL_STEP: f64 = 0.5;
const RESTART_STEP: f64 = 0.05;
const MAX_RESTARTS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedMo,
    ClosedArchimaxExchangeable,
    ClosedNac,
    Optimizer,
    Oracle,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::ClosedMo => "closed_mo",
            Method::ClosedArchimaxExchangeable => "closed_archimax_exchangeable",
            Method::ClosedNac => "closed_nac",
            Method::Optimizer => "optimizer",
            Method::Oracle => "oracle",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub starts_used: usize,
    pub best_start: usize,
    pub function_evals: u64,
    pub converged: bool,
    pub final_step: f64,
}

impl Diagnostics {
    fn exact() -> Self {
        Diagnostics {
            starts_used: 0,
            best_start: 0,
            function_evals: 0,
            converged: true,
            final_step: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MtcmResult {
    pub lambda_star: f64,
    pub b_star: Vec<f64>,
    pub method: Method,
    pub diagnostics: Diagnostics,
}

/// Settings of the multi-start simplex search.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OptimizerConfig {
    /// Random starts in addition to the diagonal start `x = 0`.
    pub starts: usize,
    pub seed: u64,
    /// Evaluation budget per start.
    pub max_evals: usize,
    /// Random starts are drawn uniformly from `[-range_log, range_log]^{d-1}`.
    pub range_log: f64,
    /// Simplex diameter at which a run stops.
    pub tol: f64,
}

pub const DEFAULT_SEED: u64 = 271_828;

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            starts: 16,
            seed: DEFAULT_SEED,
            max_evals: 100_000,
            range_log: 10f64.ln(),
            tol: 1e-9,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_evals == 0 {
            return Err(Error::InvalidConfig("max_evals must be positive".into()));
        }
        if !(self.range_log.is_finite() && self.range_log > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "range_log must be a positive real, got {}",
                self.range_log
            )));
        }
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "tol must be a positive real, got {}",
                self.tol
            )));
        }
        Ok(())
    }
}

/// Closed form for the survival Marshall–Olkin copula with `α ∈ (0, 1)^d`:
/// `λ* = Π α_j^{1/d}` and `b*_j = λ* / α_j`.
pub fn mtcm_closed_mo(alpha: &[f64]) -> Result<MtcmResult> {
    if alpha.len() < 2 {
        return Err(Error::param("alpha", "needs at least two components"));
    }
    for (j, &a) in alpha.iter().enumerate() {
        if !(a > 0.0 && a < 1.0) {
            return Err(Error::param(format!("alpha[{j}]"), format!("must lie in (0, 1), got {a}")));
        }
    }
    let d = alpha.len() as f64;
    let lambda = (alpha.iter().map(|a| a.ln()).sum::<f64>() / d).exp();
    Ok(MtcmResult {
        lambda_star: lambda,
        b_star: alpha.iter().map(|a| lambda / a).collect(),
        method: Method::ClosedMo,
        diagnostics: Diagnostics::exact(),
    })
}

/// MTCM of the Archimax copula generated by `ℓ` and `ψ ∈ RV_{-α}`.
///
/// With `exchangeable_hint` the result is `ℓ(1_d)^{-α}` at `b* = 1_d`; the hint
/// is trusted. Otherwise `ℓ` is minimized over `B` and the minimizer `z*` is
/// mapped to `b*_j = (z*_j)^{-α}`.
pub fn mtcm_archimax(
    stdf: &StdfModel,
    alpha: f64,
    exchangeable_hint: bool,
    config: &OptimizerConfig,
) -> Result<MtcmResult> {
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(Error::param("alpha", format!("must be a positive finite real, got {alpha}")));
    }
    let d = stdf.dim();
    let set = BudgetSet::new(d)?;
    if exchangeable_hint {
        let ones = vec![1.0; d];
        return Ok(MtcmResult {
            lambda_star: stdf.eval_unchecked(&ones).powf(-alpha),
            b_star: ones,
            method: Method::ClosedArchimaxExchangeable,
            diagnostics: Diagnostics::exact(),
        });
    }
    config.validate()?;
    // maximize -ℓ(z); ℓ(z) ≥ max_j z_j gives the pruning bound
    let search = multi_start(
        set,
        &|z: &[f64]| -stdf.eval_unchecked(z),
        &|z: &[f64]| -max_of(z),
        config,
    );
    let z = set.embed(&search.x);
    let level = stdf.eval_unchecked(&z);
    Ok(MtcmResult {
        lambda_star: level.powf(-alpha),
        b_star: z.iter().map(|v| v.powf(-alpha)).collect(),
        method: Method::Optimizer,
        diagnostics: search.diagnostics,
    })
}

/// Numerical `λ*` for any tail copula by multi-start simplex search over the
/// log coordinates of `B`.
///
/// Because `Λ(b) ≤ min_j b_j`, a point whose smallest coordinate lies below
/// the best value found so far in its run is not evaluated; this confines
/// the search to the compact set where the maximum can lie.
pub fn mtcm_optimize(model: &TailCopulaModel, config: &OptimizerConfig) -> Result<MtcmResult> {
    config.validate()?;
    let set = BudgetSet::new(model.dim())?;
    let objective = |b: &[f64]| model.eval_positive(b).unwrap_or(f64::NEG_INFINITY);
    let search = multi_start(set, &objective, &|b: &[f64]| min_of(b), config);
    if search.value < DEGENERACY_THRESHOLD {
        return Ok(degenerate(model.dim(), Method::Optimizer, search.diagnostics));
    }
    let b = set.embed(&search.x);
    Ok(MtcmResult {
        lambda_star: model.eval_positive(&b)?,
        b_star: b,
        method: Method::Optimizer,
        diagnostics: search.diagnostics,
    })
}

pub(crate) fn degenerate(dim: usize, method: Method, mut diagnostics: Diagnostics) -> MtcmResult {
    diagnostics.converged = true;
    MtcmResult {
        lambda_star: 0.0,
        b_star: vec![1.0; dim],
        method,
        diagnostics,
    }
}

/// Routes to the tightest available method.
///
/// - survival Marshall–Olkin: closed form;
/// - nested Archimedean: closed form and exact maximizer;
/// - Archimedean, or Archimax with exchangeable `ℓ`: closed form;
/// - Archimax with non-exchangeable `ℓ`: minimization of `ℓ` over `B`;
/// - everything else: [`mtcm_optimize`].
pub fn mtcm_dispatch(model: &TailCopulaModel, config: &OptimizerConfig) -> Result<MtcmResult> {
    match model.kind() {
        TailCopulaKind::SurvivalEvc(stdf) => match stdf.kind() {
            StdfKind::MarshallOlkin { alpha } if alpha.iter().all(|&a| a > 0.0 && a < 1.0) => {
                mtcm_closed_mo(alpha)
            }
            _ => mtcm_optimize(model, config),
        },
        TailCopulaKind::Nac(tree) => {
            let root = tree.root();
            Ok(MtcmResult {
                lambda_star: tree.mtcm_closed(root)?,
                b_star: tree.maximizer(root)?,
                method: Method::ClosedNac,
                diagnostics: Diagnostics::exact(),
            })
        }
        TailCopulaKind::Archimedean { alpha, dim } => {
            let d = *dim as f64;
            BudgetSet::new(*dim)?;
            Ok(MtcmResult {
                lambda_star: d.powf(-alpha),
                b_star: vec![1.0; *dim],
                method: Method::ClosedArchimaxExchangeable,
                diagnostics: Diagnostics::exact(),
            })
        }
        TailCopulaKind::Archimax { stdf, alpha } => {
            mtcm_archimax(stdf, *alpha, stdf.is_exchangeable(), config)
        }
        TailCopulaKind::Mixture { .. } => mtcm_optimize(model, config),
    }
}

struct Search {
    x: Vec<f64>,
    value: f64,
    diagnostics: Diagnostics,
}

struct StartOutcome {
    x: Vec<f64>,
    b: Vec<f64>,
    value: f64,
    evals: u64,
    converged: bool,
    final_step: f64,
}

/// Larger value first; within [`TIE_TOLERANCE`] of each other, smaller `b`
/// (lexicographically) first.
fn lexicographic(a: &[f64], b: &[f64]) -> Ordering {
    for (u, v) in a.iter().zip(b) {
        match u.total_cmp(v) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

fn multi_start<O, U>(set: BudgetSet, objective: &O, upper_bound: &U, config: &OptimizerConfig) -> Search
where
    O: Fn(&[f64]) -> f64 + Sync,
    U: Fn(&[f64]) -> f64 + Sync,
{
    let n = set.free_dim();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut starts = vec![vec![0.0; n]];
    for _ in 0..config.starts {
        starts.push(
            (0..n)
                .map(|_| rng.gen_range(-config.range_log..=config.range_log))
                .collect(),
        );
    }
    let seed_value = objective(&vec![1.0; set.dim()]);

    let outcomes: Vec<StartOutcome> = starts
        .par_iter()
        .map(|x0| run_start(set, objective, upper_bound, x0, seed_value, config))
        .collect();

    let top = outcomes
        .iter()
        .map(|o| o.value)
        .fold(f64::NEG_INFINITY, f64::max);
    // Ties never admit a value below the diagonal, which start 0 attains.
    let floor = f64::max(top - TIE_TOLERANCE, seed_value.min(top));
    let mut best_index = 0;
    for (i, o) in outcomes.iter().enumerate() {
        if o.value < floor {
            continue;
        }
        let current = &outcomes[best_index];
        if current.value < floor || lexicographic(&o.b, &current.b) == Ordering::Less {
            best_index = i;
        }
    }
    let best = &outcomes[best_index];
    Search {
        x: best.x.clone(),
        value: best.value,
        diagnostics: Diagnostics {
            starts_used: outcomes.len(),
            best_start: best_index,
            function_evals: outcomes.iter().map(|o| o.evals).sum(),
            converged: best.converged,
            final_step: best.final_step,
        },
    }
}

/// One start: a simplex run followed by restarts from the incumbent until a
/// restart no longer improves it.
fn run_start<O, U>(
    set: BudgetSet,
    objective: &O,
    upper_bound: &U,
    x0: &[f64],
    seed_value: f64,
    config: &OptimizerConfig,
) -> StartOutcome
where
    O: Fn(&[f64]) -> f64,
    U: Fn(&[f64]) -> f64,
{
    let mut running_best = seed_value;
    let mut evals = 0u64;
    // best point this start actually evaluated; pruned points only carry a bound
    let mut incumbent: Option<(f64, Vec<f64>)> = None;
    let mut f = |x: &[f64]| {
        let b = set.embed(x);
        let bound = upper_bound(&b);
        if bound < running_best {
            return bound;
        }
        evals += 1;
        let value = objective(&b);
        if value > running_best {
            running_best = value;
        }
        if incumbent.as_ref().is_none_or(|(v, _)| value > *v) {
            incumbent = Some((value, x.to_vec()));
        }
        value
    };
    let tol = Tolerances {
        diameter: config.tol,
        spread: SPREAD_TOL,
    };
    let mut budget = config.max_evals;
    let mut out = simplex::maximize(&mut f, x0, INITIAL_STEP, tol, &mut budget);
    for _ in 0..MAX_RESTARTS {
        if budget == 0 {
            break;
        }
        let next = simplex::maximize(&mut f, &out.x, RESTART_STEP, tol, &mut budget);
        let improved = next.value > out.value;
        if next.value >= out.value {
            out = next;
        }
        if !improved {
            break;
        }
    }
    let (value, x) = incumbent.unwrap_or((f64::NEG_INFINITY, out.x));
    StartOutcome {
        value,
        b: set.embed(&x),
        x,
        evals,
        converged: out.converged,
        final_step: out.final_step,
    }
}
