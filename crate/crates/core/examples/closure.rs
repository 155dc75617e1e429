//! The gates reachable from X, Z, F and S form a finite group without √X.
use qudit_surgery::closure::{sqrt_x, GateGroup};

fn main() -> qudit_surgery::Result<()> {
    for d in [2, 3] {
        let g = GateGroup::clifford_fragment(d)?;
        println!("d={d}: {} elements up to phase, contains √X: {}", g.len(), g.contains(&sqrt_x(d)));
    }
    Ok(())
}
