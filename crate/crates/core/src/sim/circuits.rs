//! Syndrome extraction with one ancilla and controlled shifts.

use super::measure::{basis_vector, Branch, MeasureBasis};
use super::state::PureState;
use crate::algebra::{gate, GateKind};
use crate::error::{Error, Result};
use crate::lattice::{LocalOperator, Site, SiteKind};

fn two_qudit(d: usize, control: usize, target: usize) -> Result<LocalOperator> {
    LocalOperator::dense(d, vec![control, target], gate(GateKind::CX, d)?.entries)
}

fn antipode(d: usize, q: usize) -> Result<LocalOperator> {
    LocalOperator::dense(d, vec![q], gate(GateKind::S, d)?.entries)
}

/// Applies `CX^{|s|}` with `S`-conjugation on the data qudit when `s < 0`.
fn signed_cx(state: &mut PureState, data: usize, anc: usize, s: i64, data_controls: bool) -> Result<()> {
    let d = state.d();
    let (c, t) = if data_controls { (data, anc) } else { (anc, data) };
    let cx = two_qudit(d, c, t)?;
    let flip = antipode(d, data)?;
    if s < 0 {
        state.apply(&flip)?;
    }
    for _ in 0..s.unsigned_abs() {
        state.apply(&cx)?;
    }
    if s < 0 {
        state.apply(&flip)?;
    }
    Ok(())
}

/// Measures a site through an ancilla appended after the data qudits.
///
/// Faces: ancilla starts in `|0⟩`, every edge controls a shift of the
/// ancilla, and the ancilla is read in the computational basis. Vertices:
/// ancilla starts in the uniform superposition, controls shifts of every
/// edge, and is read in the shift eigenbasis. The ancilla is removed; each
/// returned branch equals the site projector applied to the input.
pub fn measure_site_with_ancilla(state: &PureState, site: &Site, budget: usize) -> Result<Vec<Branch>> {
    let d = state.d();
    let n = state.qudits();
    if let Some((e, _)) = site.edges.iter().find(|(e, _)| *e >= n) {
        return Err(Error::Support { index: *e, edges: n });
    }
    let (prep, read, data_controls) = match site.kind {
        SiteKind::Face => (basis_vector(d, MeasureBasis::Z, 0), MeasureBasis::Z, true),
        SiteKind::Vertex => (basis_vector(d, MeasureBasis::X, 0), MeasureBasis::X, false),
    };
    let mut s = state.adjoin(&prep, budget)?;
    for (e, sign) in &site.edges {
        signed_cx(&mut s, *e, n, *sign, data_controls)?;
    }
    super::measure::edge_branches(&s, n, read, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::build_patch;
    use crate::linalg::{max_abs_diff, C64};
    use crate::sim::measure::site_branches;

    #[test]
    fn ancilla_circuit_matches_projectors() {
        let d = 3;
        let g = build_patch(d, 0, 1).unwrap();
        let n = g.edge_count();
        let amps: Vec<C64> = (0..d.pow(n as u32)).map(|i| C64::new((i as f64 * 0.37).sin(), (i as f64 * 0.11).cos())).collect();
        let psi = PureState::from_amps(d, n, amps).unwrap().normalized().unwrap();
        for site in g.vertices().iter().chain(g.faces()) {
            let a = measure_site_with_ancilla(&psi, site, 1 << 20).unwrap();
            let b = site_branches(&psi, site).unwrap();
            assert_eq!(a.len(), b.len());
            for (x, y) in a.iter().zip(&b) {
                assert_eq!(x.outcome, y.outcome);
                assert!(max_abs_diff(x.state.amplitudes(), y.state.amplitudes()) < 1e-12);
            }
        }
    }
}
