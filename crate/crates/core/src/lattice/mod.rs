//! Patch geometry, local operators and string operators.

mod geometry;
mod operator;
mod strings;
mod validate;

pub use geometry::{
    build_patch, cell_edge_sign, vertex_edge_sign, Boundary, EdgeKey, GridShape, PatchFile, PatchGeometry, Point, Site, SiteId, SiteKind,
};
pub use operator::{Action, LocalOperator};
pub use strings::{StringKind, StringSpec};
pub use validate::{vacuum_rank, validate_patch, Check, ValidationReport, DEFAULT_BUDGET};
