//! Logical operations on patches and extraction of the maps they induce.

mod board;
mod ops;

pub use board::{Board, Patch};
pub use ops::{Executor, LogicalGate, Mode, Run, SurgeryKind};
mod extract;

pub use extract::{extract_logical_map, sample_final_state, sample_logical_map, LogicalMaps, PatchSpec, Shot};
mod dictionary;

pub use dictionary::{delta_vector, Primitive};
mod script;

pub use script::{Correction, Script, Step};
