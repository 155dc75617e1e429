//! Logical strings on a 1x1 patch: labels add, and a closed loop fixes the vacuum.
use qudit_surgery::lattice::{build_patch, StringSpec, DEFAULT_BUDGET};
use qudit_surgery::sim::logical_basis_state;

fn main() -> qudit_surgery::Result<()> {
    let d = 3;
    let g = build_patch(d, 1, 1)?;
    let zero = logical_basis_state(&g, 0, DEFAULT_BUDGET)?;
    let x = g.x_logical();
    let moved = zero.applied(&x.operator(d, 2))?;
    for k in 0..d as i64 {
        let v = logical_basis_state(&g, k, DEFAULT_BUDGET)?;
        println!("|<{k}|X_L^2|0>| = {:.3}", v.overlap(&moved)?.norm());
    }

    let lp = StringSpec::z_path(&g, &[(0, 0), (1, 0), (1, 1), (0, 1), (0, 0)])?;
    let kept = zero.applied(&lp.delta_operator(d, 0)?)?;
    let killed = zero.applied(&lp.delta_operator(d, 1)?)?;
    println!("closed δ_0 loop keeps norm {:.3}, δ_1 loop leaves {:.3}", kept.norm(), killed.norm());
    Ok(())
}
