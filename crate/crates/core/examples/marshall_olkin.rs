//! Survival Marshall–Olkin copula: closed form, numerical search and grid
//! oracle side by side.

use tailmax::{mtcm_closed_mo, mtcm_optimize, mtcm_oracle, OptimizerConfig, OracleConfig, StdfModel, TailCopulaModel};

fn show(label: &str, lambda: f64, b: &[f64]) {
    let b: Vec<String> = b.iter().map(|v| format!("{v:.6}")).collect();
    println!("{label:<10} lambda* = {lambda:.8}  b* = ({})", b.join(", "));
}

fn main() -> tailmax::Result<()> {
    let alpha = vec![0.2, 0.5, 0.8];
    let model = TailCopulaModel::survival_evc(StdfModel::marshall_olkin(alpha.clone())?)?;

    let closed = mtcm_closed_mo(&alpha)?;
    let opt = mtcm_optimize(&model, &OptimizerConfig::default())?;
    let grid = mtcm_oracle(&model, &OracleConfig::default())?;

    show("closed", closed.lambda_star, &closed.b_star);
    show("optimizer", opt.lambda_star, &opt.b_star);
    show("oracle", grid.lambda_star, &grid.b_star);
    println!(
        "optimizer used {} starts and {} evaluations; diagonal value {:.6}",
        opt.diagnostics.starts_used,
        opt.diagnostics.function_evals,
        model.diagonal()?
    );
    Ok(())
}
