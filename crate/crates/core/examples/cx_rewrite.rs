//! Walks the rewrite chain between two spider forms of CX.
use qudit_surgery::zx::{cx_diagrams, cx_rewrite_chain, equal, evaluate};

fn main() -> qudit_surgery::Result<()> {
    let d = 3;
    let [start, end, ..] = cx_diagrams(d)?;
    println!("start has {} nodes; CX up to scalar: {}", start.nodes.len(), equal(&start, &end, true, 1e-9)?);
    let before = evaluate(&start)?;
    for (rule, g) in cx_rewrite_chain(d)? {
        let same = (evaluate(&g)? - &before).norm() < 1e-9;
        println!("{rule:?}: {} nodes, tensor unchanged: {same}", g.nodes.len());
    }
    println!("{}", end.to_json());
    Ok(())
}
