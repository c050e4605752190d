//! Tail copulas of the survival extreme value, Archimax, Archimedean and
//! mixture constructions, with the diagonal tail dependence coefficient.

use tailmax::{StdfModel, TailCopulaModel};

fn main() -> tailmax::Result<()> {
    let d = 4;
    let models = [
        ("survival logistic s=2", TailCopulaModel::survival_evc(StdfModel::logistic(2.0, d)?)?),
        (
            "survival marshall-olkin",
            TailCopulaModel::survival_evc(StdfModel::marshall_olkin(vec![0.3, 0.5, 0.7, 0.9])?)?,
        ),
        ("archimedean alpha=0.5", TailCopulaModel::archimedean(0.5, d)?),
        ("archimax logistic", TailCopulaModel::archimax(StdfModel::logistic(2.0, d)?, 0.5)?),
        (
            "mixture",
            TailCopulaModel::mixture(
                0.5,
                TailCopulaModel::archimedean(0.5, d)?,
                TailCopulaModel::survival_evc(StdfModel::comonotone(d)?)?,
            )?,
        ),
    ];
    let x = [0.5, 1.0, 2.0, 4.0];
    println!("{:<24} {:>12} {:>12} {:>12}", "model", "Lambda(1)", "Lambda(x)", "2 Lambda(x/2)");
    for (name, m) in &models {
        let half: Vec<f64> = x.iter().map(|v| v / 2.0).collect();
        println!(
            "{:<24} {:>12.6} {:>12.6} {:>12.6}",
            name,
            m.diagonal()?,
            m.eval(&x)?,
            2.0 * m.eval(&half)?
        );
    }
    Ok(())
}
