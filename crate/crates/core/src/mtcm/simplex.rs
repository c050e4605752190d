//! Derivative-free simplex (Nelder–Mead) maximization in `R^n`.

use std::cmp::Ordering;

const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;

#[derive(Debug, Clone)]
pub(crate) struct SimplexOutcome {
    pub x: Vec<f64>,
    pub value: f64,
    pub converged: bool,
    /// Simplex diameter (max-norm distance from the best vertex) at exit.
    pub final_step: f64,
}

/// Stopping rules for one simplex run.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Tolerances {
    pub diameter: f64,
    pub spread: f64,
}

fn descending(a: &(Vec<f64>, f64), b: &(Vec<f64>, f64)) -> Ordering {
    b.1.total_cmp(&a.1)
}

/// Maximizes `f` from an axis-aligned initial simplex of size `step` around
/// `x0`. `budget` is decremented once per call of `f`.
pub(crate) fn maximize<F>(
    f: &mut F,
    x0: &[f64],
    step: f64,
    tol: Tolerances,
    budget: &mut usize,
) -> SimplexOutcome
where
    F: FnMut(&[f64]) -> f64,
{
    let n = x0.len();
    let mut eval = |x: &[f64], budget: &mut usize| {
        *budget = budget.saturating_sub(1);
        f(x)
    };
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    simplex.push((x0.to_vec(), eval(x0, budget)));
    for i in 0..n {
        let mut x = x0.to_vec();
        x[i] += step;
        let v = eval(&x, budget);
        simplex.push((x, v));
    }

    loop {
        simplex.sort_by(descending);
        let best = &simplex[0];
        let diameter = simplex[1..]
            .iter()
            .map(|(x, _)| {
                x.iter()
                    .zip(&best.0)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max);
        let spread = best.1 - simplex[n].1;
        if diameter < tol.diameter || spread.abs() < tol.spread {
            return SimplexOutcome {
                x: best.0.clone(),
                value: best.1,
                converged: true,
                final_step: diameter,
            };
        }
        if *budget == 0 {
            return SimplexOutcome {
                x: best.0.clone(),
                value: best.1,
                converged: false,
                final_step: diameter,
            };
        }

        let mut centroid = vec![0.0; n];
        for (x, _) in &simplex[..n] {
            for (c, v) in centroid.iter_mut().zip(x) {
                *c += v / n as f64;
            }
        }
        let worst = simplex[n].clone();
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&worst.0)
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };

        let reflected = along(REFLECT);
        let fr = eval(&reflected, budget);
        if fr > simplex[0].1 {
            let expanded = along(REFLECT * EXPAND);
            let fe = eval(&expanded, budget);
            simplex[n] = if fe > fr { (expanded, fe) } else { (reflected, fr) };
            continue;
        }
        if fr > simplex[n - 1].1 {
            simplex[n] = (reflected, fr);
            continue;
        }
        let (candidate, target) = if fr > worst.1 {
            (along(REFLECT * CONTRACT), fr)
        } else {
            (along(-CONTRACT), worst.1)
        };
        let fc = eval(&candidate, budget);
        if fc > target || (fr > worst.1 && fc >= target) {
            simplex[n] = (candidate, fc);
            continue;
        }
        let anchor = simplex[0].0.clone();
        for vertex in simplex.iter_mut().skip(1) {
            let x: Vec<f64> = anchor
                .iter()
                .zip(&vertex.0)
                .map(|(a, v)| a + SHRINK * (v - a))
                .collect();
            let v = eval(&x, budget);
            *vertex = (x, v);
        }
    }
}
