//! Checks every surgery primitive against its spider diagram.
use qudit_surgery::commands::dict_verify;
use qudit_surgery::lattice::DEFAULT_BUDGET;
use qudit_surgery::zx::dictionary_diagram;

fn main() -> qudit_surgery::Result<()> {
    for row in dict_verify(2, DEFAULT_BUDGET, 1e-9, &dictionary_diagram)? {
        println!(
            "{:<14} branches={} target={} diagram={} complete={}",
            row.name, row.branches, row.surgery_matches_target, row.diagram_matches_surgery, row.complete
        );
    }
    Ok(())
}
