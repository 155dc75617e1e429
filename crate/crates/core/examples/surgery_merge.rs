//! Smooth merge of two minimal patches: one Kraus operator per charge n.
use qudit_surgery::lattice::DEFAULT_BUDGET;
use qudit_surgery::surgery::{extract_logical_map, Primitive};

fn main() -> qudit_surgery::Result<()> {
    let d = 2;
    let p = Primitive::SmoothMerge;
    let maps = extract_logical_map(d, &p.inputs(), None, DEFAULT_BUDGET, 1e-9, |e, r| p.run(e, r))?;
    println!("{} -> {:?}, leakage {:.1e}", maps.inputs.join(","), maps.outputs, maps.max_leakage);
    for (n, k) in &maps.kraus {
        println!("n = {n:?}{:.3}", k.map(|z| z.re));
    }
    let c = maps.completeness();
    println!("Σ K†K is the identity: {}", (c.clone() - qudit_surgery::linalg::identity(c.nrows())).norm() < 1e-9);
    Ok(())
}
