//! The five fitted trivariate sea-level models compared with their
//! published values.

use tailmax::sealevel::{format_report, sealevel_report};
use tailmax::OptimizerConfig;

fn main() -> tailmax::Result<()> {
    let rows = sealevel_report(&OptimizerConfig::default())?;
    print!("{}", format_report(&rows));
    let passed = rows.iter().filter(|r| r.pass).count();
    println!("{passed} of {} rows within tolerance", rows.len());
    Ok(())
}
