//! Evaluates each stable tail dependence family at a few points and runs the
//! randomized axiom checks.

use tailmax::StdfModel;

fn main() -> tailmax::Result<()> {
    let models = [
        ("independence", StdfModel::independence(3)?),
        ("comonotone", StdfModel::comonotone(3)?),
        ("logistic s=1.59", StdfModel::logistic(1.59, 3)?),
        ("marshall-olkin", StdfModel::marshall_olkin(vec![0.2, 0.5, 0.8])?),
        ("tawn I", StdfModel::tawn_type_i(2.48, 1.0, [1.0, 1.0, 0.25])?),
        ("tawn II", StdfModel::tawn_type_ii(1.69, 1.25, 7.44, 0.74)?),
        (
            "mixture",
            StdfModel::mixture(0.3, StdfModel::logistic(2.0, 3)?, StdfModel::comonotone(3)?)?,
        ),
    ];
    let points = [[1.0, 1.0, 1.0], [2.0, 0.5, 1.0], [1.0, 0.0, 3.0]];

    println!("{:<16} {:>10} {:>10} {:>10} {:>12}", "model", "l(1,1,1)", "l(2,.5,1)", "l(1,0,3)", "l_{1,2}(1,1)");
    for (name, m) in &models {
        let values: Vec<f64> = points.iter().map(|x| m.eval(x)).collect::<Result<_, _>>()?;
        let margin = m.margin(&[1.0, 1.0, 1.0], &[0, 1])?;
        println!(
            "{:<16} {:>10.6} {:>10.6} {:>10.6} {:>12.6}",
            name, values[0], values[1], values[2], margin
        );
    }

    println!();
    for (name, m) in &models {
        let report = m.validate(10_000, 7);
        println!(
            "{:<16} {} samples, {} failures, worst bound gap {:.1e}",
            name, report.samples, report.failures, report.worst_bound_violation
        );
    }
    Ok(())
}
