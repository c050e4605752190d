//! Archimax copulas: regular-variation indices of transformed Clayton
//! generators, and the MTCM for exchangeable and non-exchangeable `l`.

use tailmax::{mtcm_archimax, rv_index, GeneratorTransform, OptimizerConfig, StdfModel};

fn main() -> tailmax::Result<()> {
    let clayton = |theta| GeneratorTransform::Clayton { theta };
    let generators = [
        ("clayton theta=2", clayton(2.0)),
        ("inner power gamma=0.5", GeneratorTransform::InnerPower { base: Box::new(clayton(2.0)), gamma: 0.5 }),
        ("outer power beta=2", GeneratorTransform::OuterPower { base: Box::new(clayton(2.0)), beta: 2.0 }),
        ("tilted clayton", GeneratorTransform::TiltedClayton { theta: 2.0, beta: 1.5, c: 1.0 }),
        ("shifted clayton", GeneratorTransform::ShiftedClayton { theta: 2.0, h: 0.5 }),
    ];
    for (name, g) in &generators {
        println!("{name:<24} alpha = {:.4}", rv_index(g)?);
    }
    println!();

    let cfg = OptimizerConfig::default();
    let alpha = rv_index(&generators[0].1)?;
    let logistic = StdfModel::logistic(2.0, 3)?;
    let mo = StdfModel::marshall_olkin(vec![0.2, 0.5, 0.8])?;
    for (name, stdf) in [("logistic", &logistic), ("marshall-olkin", &mo)] {
        let r = mtcm_archimax(stdf, alpha, stdf.is_exchangeable(), &cfg)?;
        let b: Vec<String> = r.b_star.iter().map(|v| format!("{v:.5}")).collect();
        println!(
            "{name:<16} lambda* = {:.6}  b* = ({})  via {}",
            r.lambda_star,
            b.join(", "),
            r.method.as_str()
        );
    }
    Ok(())
}
