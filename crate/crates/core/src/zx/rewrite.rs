use serde::{Deserialize, Serialize};

use super::diagram::{Diagram, Node, NodeId, Source, Target};
use super::rules;
use crate::error::Result;

/// A rewrite rule together with the location it applies at.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum Rewrite {
    /// Absorbs spider `b` into spider `a`; needs a wire from `a` to `b`.
    SpiderFuse {
        a: NodeId,
        b: NodeId,
    },
    SpiderUnfuse {
        node: NodeId,
        #[serde(default)]
        inputs: Vec<usize>,
        #[serde(default)]
        outputs: Vec<usize>,
        #[serde(default)]
        phase: i64,
    },
    IdentityRemove {
        node: NodeId,
    },
    ColorChange {
        node: NodeId,
    },
    Bialgebra {
        top: NodeId,
        bottom: NodeId,
    },
    AntipodeCancel {
        a: NodeId,
        b: NodeId,
    },
    FourierSquare {
        a: NodeId,
        b: NodeId,
    },
    CupCapSnake {
        cup: NodeId,
        cap: NodeId,
    },
    SwapDual {
        node: NodeId,
        #[serde(default)]
        leg: usize,
    },
    AntipodeSlide {
        node: NodeId,
    },
}

impl Rewrite {
    /// The rewritten diagram; the input is left untouched. The scalar is
    /// updated so that the tensor is preserved exactly.
    pub fn apply(&self, g: &Diagram) -> Result<Diagram> {
        g.validate()?;
        let mut out = g.clone();
        match self {
            Rewrite::SpiderFuse { a, b } => rules::spider_fuse(&mut out, *a, *b)?,
            Rewrite::SpiderUnfuse { node, inputs, outputs, phase } => {
                rules::spider_unfuse(&mut out, *node, inputs, outputs, *phase)?;
            }
            Rewrite::IdentityRemove { node } => rules::identity_remove(&mut out, *node)?,
            Rewrite::ColorChange { node } => rules::color_change(&mut out, *node)?,
            Rewrite::Bialgebra { top, bottom } => rules::bialgebra(&mut out, *top, *bottom)?,
            Rewrite::AntipodeCancel { a, b } => rules::antipode_cancel(&mut out, *a, *b)?,
            Rewrite::FourierSquare { a, b } => rules::fourier_square(&mut out, *a, *b)?,
            Rewrite::CupCapSnake { cup, cap } => rules::cup_cap_snake(&mut out, *cup, *cap)?,
            Rewrite::SwapDual { node, leg } => rules::swap_dual(&mut out, *node, *leg)?,
            Rewrite::AntipodeSlide { node } => rules::antipode_slide(&mut out, *node)?,
        }
        debug_assert!(out.validate().is_ok());
        Ok(out)
    }
}

/// Every rewrite that matches somewhere in `g`, in a fixed order.
///
/// Unfusing is listed once per spider with inputs (moving input 0 and phase 1).
pub fn applicable_rewrites(g: &Diagram) -> Vec<Rewrite> {
    let mut found = Vec::new();
    let mut pairs: Vec<(NodeId, NodeId)> = g
        .wires
        .iter()
        .filter_map(|w| match (w.from, w.to) {
            (Source::Node(a, _), Target::Node(b, _)) if a != b => Some((a, b)),
            _ => None,
        })
        .collect();
    pairs.sort_unstable();
    pairs.dedup();
    for &(a, b) in &pairs {
        for r in [
            Rewrite::SpiderFuse { a, b },
            Rewrite::Bialgebra { top: a, bottom: b },
            Rewrite::AntipodeCancel { a, b },
            Rewrite::FourierSquare { a, b },
            Rewrite::CupCapSnake { cup: a, cap: b },
        ] {
            if r.apply(g).is_ok() {
                found.push(r);
            }
        }
    }
    for (&node, n) in &g.nodes {
        let mut local = vec![
            Rewrite::IdentityRemove { node },
            Rewrite::ColorChange { node },
            Rewrite::AntipodeSlide { node },
            Rewrite::SwapDual { node, leg: 0 },
        ];
        if let Node::Spider { inputs, .. } = n {
            if *inputs > 0 {
                local.push(Rewrite::SpiderUnfuse { node, inputs: vec![0], outputs: vec![], phase: 1 });
            }
        }
        found.extend(local.into_iter().filter(|r| r.apply(g).is_ok()));
    }
    found
}

/// Greedy simplification: fuses spiders and removes identities until
/// nothing matches or `max_steps` rewrites have been made.
pub fn fuse_all(g: &Diagram, max_steps: usize) -> Result<Diagram> {
    let mut g = g.clone();
    for _ in 0..max_steps {
        let next = applicable_rewrites(&g).into_iter().find(|r| matches!(r, Rewrite::SpiderFuse { .. } | Rewrite::IdentityRemove { .. }));
        match next {
            Some(r) => g = r.apply(&g)?,
            None => break,
        }
    }
    Ok(g)
}
