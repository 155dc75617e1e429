//! Diagrams over the two Frobenius structures, their tensors and rewrites.

mod diagram;
mod eval;
mod library;
mod rewrite;
mod rules;

pub use diagram::{Color, Diagram, Node, NodeId, Source, Target, Wire};
pub use eval::{equal, evaluate};
pub use library::{cx_diagrams, cx_rewrite_chain, dictionary_diagram, from_surgery, gate_diagram, random_diagram};
pub use rewrite::{applicable_rewrites, fuse_all, Rewrite};
