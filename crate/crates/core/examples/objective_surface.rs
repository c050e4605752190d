//! Writes the objective `Lambda(e^x1, e^x2, e^(-x1-x2))` of a sea-level
//! model on a grid, for plotting elsewhere.
//!
//! Usage: `cargo run --example objective_surface -- [LABEL] [OUT.csv]`

use std::fs::File;
use std::io::BufWriter;

use tailmax::sealevel::{sealevel_surface, write_surface_csv, SeaLevelLabel};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let label: SeaLevelLabel = args.next().as_deref().unwrap_or("I-2").parse()?;
    let out = args.next().unwrap_or_else(|| "surface.csv".into());

    let points = sealevel_surface(label, 121, 10f64.ln())?;
    write_surface_csv(&points, BufWriter::new(File::create(&out)?))?;

    let top = points
        .iter()
        .max_by(|a, b| a.lambda.total_cmp(&b.lambda))
        .expect("non-empty grid");
    println!(
        "{label}: {} points written to {out}; grid maximum {:.5} at x = ({:.3}, {:.3})",
        points.len(),
        top.lambda,
        top.x1,
        top.x2
    );
    Ok(())
}
