//! Builds the smallest patches and checks their stabilizers.
use qudit_surgery::lattice::{build_patch, validate_patch, DEFAULT_BUDGET};

fn main() -> qudit_surgery::Result<()> {
    for (d, rows, cols) in [(2, 0, 1), (3, 1, 1), (5, 0, 1)] {
        let g = build_patch(d, rows, cols)?;
        let r = validate_patch(&g, 1e-12, DEFAULT_BUDGET)?;
        println!("d={d} {rows}x{cols}: {} edges, {} vertices, {} faces, vacuum rank {:?}", r.edges, r.vertices, r.faces, r.vacuum_rank);
        for c in &r.checks {
            println!("  [{}] {}", if c.passed { "ok" } else { "FAIL" }, c.name);
        }
    }
    Ok(())
}
