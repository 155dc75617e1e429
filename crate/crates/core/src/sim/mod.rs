//! Dense state-vector simulation of patches.

mod circuits;
mod dump;
mod logical;
mod measure;
mod state;

pub use circuits::measure_site_with_ancilla;
pub use dump::dump;
pub use logical::{logical_basis_state, logical_delta, logical_delta_zero, logical_zero};
pub use measure::{basis_vector, edge_branches, sample, site_branches, Branch, MeasureBasis, BRANCH_CUTOFF};
pub use state::{check_budget, PureState};
