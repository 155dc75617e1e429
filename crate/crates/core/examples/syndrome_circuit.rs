//! Measures a face through an ancilla and compares with the direct projectors.
use qudit_surgery::lattice::{Site, SiteKind};
use qudit_surgery::sim::{measure_site_with_ancilla, site_branches, PureState};

fn main() -> qudit_surgery::Result<()> {
    let d = 3;
    let site = Site { kind: SiteKind::Face, pos: None, edges: vec![(0, 1), (1, 1), (2, -1), (3, -1)] };
    let s = PureState::basis(d, &[2, 1, 0, 2], 1 << 16)?;
    for (a, b) in site_branches(&s, &site)?.iter().zip(measure_site_with_ancilla(&s, &site, 1 << 16)?) {
        println!("outcome {}: direct p={:.3}, ancilla p={:.3}", a.outcome, a.state.norm_sqr(), b.state.norm_sqr());
    }
    Ok(())
}
