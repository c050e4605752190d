//! Parsing JSON model descriptions, dispatching to the tightest method and
//! emitting the model back out.

use serde_json::json;
use tailmax::schema::{parse_tail_copula, tail_copula_to_json, to_json_string};
use tailmax::{mtcm_dispatch, OptimizerConfig};

fn main() -> tailmax::Result<()> {
    let specs = [
        json!({"family": "marshall_olkin", "params": {"alpha": [0.2, 0.5, 0.8]}}),
        json!({"family": "archimedean", "dimension": 4, "params": {"generator": {"kind": "clayton", "theta": 2.0}}}),
        json!({"family": "nac", "params": {"tree": {"alpha": 2, "children": [{"leaf": 1}, {"alpha": 1, "children": [{"leaf": 2}, {"leaf": 3}]}]}}}),
        json!({"family": "tawn2", "params": {"s": 1.69, "r": 1.25, "t": 7.44, "phi": 0.74}}),
        json!({"family": "logistic", "dimension": 3, "params": {"s": 0.5}}),
    ];
    let cfg = OptimizerConfig::default();
    for spec in &specs {
        let family = spec["family"].as_str().unwrap_or("?");
        match parse_tail_copula(spec) {
            Ok(model) => {
                let r = mtcm_dispatch(&model, &cfg)?;
                println!("{family:<16} lambda* = {:.6} via {}", r.lambda_star, r.method.as_str());
                assert_eq!(parse_tail_copula(&tail_copula_to_json(&model))?, model);
            }
            Err(e) => println!("{family:<16} rejected: {e}"),
        }
    }
    let model = parse_tail_copula(&specs[0])?;
    print!("\n{}", to_json_string(&tail_copula_to_json(&model))?);
    Ok(())
}
