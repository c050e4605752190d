//! A nested Archimedean tree: nesting check, the recursive and product forms
//! of the MTCM, and the exact maximizer checked against the tail copula.

use tailmax::nac::NacNode;
use tailmax::{mtcm_optimize, NacTree, OptimizerConfig, TailCopulaModel};

fn main() -> tailmax::Result<()> {
    // root over a 2-block and a 3-block
    let tree = NacTree::new(NacNode::internal(
        2.0,
        vec![NacNode::internal(1.0, NacNode::leaves(2)), NacNode::internal(0.5, NacNode::leaves(3))],
    ))?;
    let report = tree.check_clayton_nesting();
    println!("dimension {}, Clayton nesting holds: {}", tree.dim(), report.valid);

    let root = tree.root();
    let b = tree.maximizer(root)?;
    println!("recursive  lambda* = {:.12}", tree.mtcm_recursive());
    println!("closed     lambda* = {:.12}", tree.mtcm_closed(root)?);
    println!("Lambda(b*)         = {:.12}", tree.tail_copula(&b)?);
    let shown: Vec<String> = b.iter().map(|v| format!("{v:.6}")).collect();
    println!("b* = ({}), product {:.3e}", shown.join(", "), b.iter().product::<f64>() - 1.0);

    let r = mtcm_optimize(&TailCopulaModel::nac(tree.clone()), &OptimizerConfig::default())?;
    println!("optimizer  lambda* = {:.12}", r.lambda_star);

    for v in tree.internal_vertices().filter(|&v| v != root) {
        println!("subtree {v}: leaves {:?}, lambda* {:.6}", tree.leaves(v), tree.mtcm_closed(v)?);
    }
    println!("\n{}", serde_json::to_string_pretty(&tree.to_json())?);
    Ok(())
}
