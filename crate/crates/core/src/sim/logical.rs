use super::state::PureState;
use crate::error::{Error, Result};
use crate::lattice::{LocalOperator, PatchGeometry};
use crate::linalg::C64;
use crate::sim::measure::{basis_vector, MeasureBasis};

/// `|0⟩_L`: every vertex projector applied to `|0…0⟩`, normalized.
pub fn logical_zero(g: &PatchGeometry, budget: usize) -> Result<PureState> {
    let mut s = PureState::zeros(g.d(), g.edge_count(), budget)?;
    for v in g.vertices() {
        s.apply(&LocalOperator::vertex_projector(g.d(), v, 0))?;
    }
    s.normalized().map_err(|_| Error::ZeroProjection("vertex projectors annihilate |0…0⟩".into()))
}

/// `|k⟩_L = X_L^k |0⟩_L`.
pub fn logical_basis_state(g: &PatchGeometry, k: i64, budget: usize) -> Result<PureState> {
    let mut s = logical_zero(g, budget)?;
    s.apply(&g.x_logical().operator(g.d(), k))?;
    Ok(s)
}

/// `|δ_0⟩_L`: every face projector applied to `|+…+⟩`, normalized.
pub fn logical_delta_zero(g: &PatchGeometry, budget: usize) -> Result<PureState> {
    let plus: Vec<Vec<C64>> = vec![basis_vector(g.d(), MeasureBasis::X, 0); g.edge_count()];
    let mut s = PureState::product(g.d(), &plus, budget)?;
    for f in g.faces() {
        s.apply(&LocalOperator::face_projector(g.d(), f, 0))?;
    }
    s.normalized().map_err(|_| Error::ZeroProjection("face projectors annihilate |+…+⟩".into()))
}

/// `|δ_i⟩_L = Z_L^i |δ_0⟩_L`.
pub fn logical_delta(g: &PatchGeometry, i: i64, budget: usize) -> Result<PureState> {
    let mut s = logical_delta_zero(g, budget)?;
    s.apply(&g.z_logical().operator(g.d(), i))?;
    Ok(s)
}
