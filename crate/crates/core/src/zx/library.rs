use rand::seq::SliceRandom;
use rand::Rng;

use super::diagram::{Color, Diagram, Node, NodeId, Source, Target};
use super::rewrite::Rewrite;
use crate::error::{Error, Result};
use crate::surgery::{LogicalGate, Primitive, Script, Step, SurgeryKind};

fn color(kind: SurgeryKind) -> Color {
    match kind {
        SurgeryKind::Smooth => Color::Green,
        SurgeryKind::Rough => Color::Red,
    }
}

/// Diagram for one dictionary row with merge/counit charge `n`.
pub fn dictionary_diagram(p: Primitive, d: usize, n: i64) -> Result<Diagram> {
    let single = |node| Diagram::single(d, node);
    match p {
        Primitive::SmoothSplit => single(Node::green(0, 1, 2)),
        Primitive::RoughSplit => single(Node::red(0, 1, 2)),
        Primitive::SmoothUnit => single(Node::green(0, 0, 1)),
        Primitive::RoughUnit => single(Node::red(0, 0, 1)),
        Primitive::SmoothCounit => single(Node::green(n, 1, 0)),
        Primitive::RoughCounit => single(Node::red(-n, 1, 0)),
        Primitive::Rotation => single(Node::Fourier { dagger: false }),
        Primitive::SmoothMerge => charged_merge(d, Color::Green, n),
        Primitive::RoughMerge => charged_merge(d, Color::Red, n),
    }
}

/// A 2→1 spider with an opposite-colour phase `n` on its first input.
fn charged_merge(d: usize, c: Color, n: i64) -> Result<Diagram> {
    let mut g = Diagram::new(d, 2, 1)?;
    let shift = g.add(Node::spider(c.other(), n, 1, 1));
    let m = g.add(Node::spider(c, 0, 2, 1));
    g.connect(Source::Input(0), Target::Node(shift, 0));
    g.connect(Source::Node(shift, 0), Target::Node(m, 0));
    g.connect(Source::Input(1), Target::Node(m, 1));
    g.connect(Source::Node(m, 0), Target::Output(0));
    Ok(g)
}

/// Logical gate `gate^power`: `X^a` is a red phase, `Z^b` a green phase `-b`.
pub fn gate_diagram(d: usize, gate: LogicalGate, power: i64) -> Result<Diagram> {
    Diagram::single(
        d,
        match gate {
            LogicalGate::X => Node::red(power, 1, 1),
            LogicalGate::Z => Node::green(-power, 1, 1),
        },
    )
}

/// Diagram of the `n = 0` branch of a surgery script.
pub fn from_surgery(script: &Script, d: usize) -> Result<Diagram> {
    let mut g = Diagram::new(d, script.inputs.len(), 0)?;
    let mut open: Vec<(String, Source)> = script.inputs.iter().enumerate().map(|(i, p)| (p.name.clone(), Source::Input(i))).collect();
    let take = |open: &mut Vec<(String, Source)>, name: &str| -> Result<(usize, Source)> {
        let i = open.iter().position(|(n, _)| n == name).ok_or_else(|| Error::Procedure(format!("no patch named {name:?}")))?;
        Ok((i, open.remove(i).1))
    };
    for step in &script.steps {
        match step {
            Step::Unit { kind, name, .. } => {
                let u = g.add(Node::spider(color(*kind), 0, 0, 1));
                open.push((name.clone(), Source::Node(u, 0)));
            }
            Step::Split { kind, patch, into, .. } => {
                let (i, s) = take(&mut open, patch)?;
                let n = g.add(Node::spider(color(*kind), 0, 1, 2));
                g.connect(s, Target::Node(n, 0));
                open.insert(i, (into[0].clone(), Source::Node(n, 0)));
                open.insert(i + 1, (into[1].clone(), Source::Node(n, 1)));
            }
            Step::Merge { kind, patches, into, .. } => {
                let idx = open.iter().position(|(n, _)| *n == patches[0]);
                let (_, a) = take(&mut open, &patches[0])?;
                let (_, b) = take(&mut open, &patches[1])?;
                let n = g.add(Node::spider(color(*kind), 0, 2, 1));
                g.connect(a, Target::Node(n, 0));
                g.connect(b, Target::Node(n, 1));
                let at = idx.unwrap_or(0).min(open.len());
                open.insert(at, (into.clone(), Source::Node(n, 0)));
            }
            Step::Counit { kind, patch } => {
                let (_, s) = take(&mut open, patch)?;
                let n = g.add(Node::spider(color(*kind), 0, 1, 0));
                g.connect(s, Target::Node(n, 0));
            }
            Step::Fourier { patch } => {
                let (i, s) = take(&mut open, patch)?;
                let n = g.add(Node::Fourier { dagger: false });
                g.connect(s, Target::Node(n, 0));
                open.insert(i, (patch.clone(), Source::Node(n, 0)));
            }
            Step::Gate { patch, gate, power } => {
                let (i, s) = take(&mut open, patch)?;
                let n = g.add(match gate {
                    LogicalGate::X => Node::red(*power, 1, 1),
                    LogicalGate::Z => Node::green(-power, 1, 1),
                });
                g.connect(s, Target::Node(n, 0));
                open.insert(i, (patch.clone(), Source::Node(n, 0)));
            }
            Step::Extract { .. } => {}
        }
    }
    let order: Vec<String> = script.output_order().unwrap_or_else(|| open.iter().map(|(n, _)| n.clone()).collect());
    if order.len() != open.len() {
        return Err(Error::Procedure(format!("outputs {order:?} do not cover the open patches")));
    }
    for (j, name) in order.iter().enumerate() {
        let (_, s) = take(&mut open, name)?;
        g.connect(s, Target::Output(j));
    }
    g.outputs = order.len();
    g.validate()?;
    Ok(g)
}

/// The four two-qudit CX diagrams, control first.
pub fn cx_diagrams(d: usize) -> Result<[Diagram; 4]> {
    Ok([cx_copy_add(d)?, cx_add_copy(d)?, cx_cup(d, false)?, cx_cup(d, true)?])
}

/// Green copy of the control, red addition into the target.
fn cx_copy_add(d: usize) -> Result<Diagram> {
    let mut g = Diagram::new(d, 2, 2)?;
    let c = g.add(Node::green(0, 1, 2));
    let t = g.add(Node::red(0, 2, 1));
    g.connect(Source::Input(0), Target::Node(c, 0));
    g.connect(Source::Node(c, 0), Target::Output(0));
    g.connect(Source::Node(c, 1), Target::Node(t, 0));
    g.connect(Source::Input(1), Target::Node(t, 1));
    g.connect(Source::Node(t, 0), Target::Output(1));
    Ok(g)
}

/// Red split of the target, one leg inverted and merged into the control.
fn cx_add_copy(d: usize) -> Result<Diagram> {
    let mut g = Diagram::new(d, 2, 2)?;
    let t = g.add(Node::red(0, 1, 2));
    let s = g.add(Node::Antipode);
    let c = g.add(Node::green(0, 2, 1));
    g.connect(Source::Input(1), Target::Node(t, 0));
    g.connect(Source::Node(t, 0), Target::Node(s, 0));
    g.connect(Source::Node(s, 0), Target::Node(c, 1));
    g.connect(Source::Input(0), Target::Node(c, 0));
    g.connect(Source::Node(c, 0), Target::Output(0));
    g.connect(Source::Node(t, 1), Target::Output(1));
    Ok(g)
}

/// A cup linking a green merge on the control to a red merge on the target,
/// with the antipode on the control leg when `flip`.
fn cx_cup(d: usize, flip: bool) -> Result<Diagram> {
    let mut g = Diagram::new(d, 2, 2)?;
    let cup = g.add(Node::Cup);
    let c = g.add(Node::green(0, 2, 1));
    let s = g.add(Node::Antipode);
    let t = g.add(Node::red(0, 2, 1));
    g.connect(Source::Input(0), Target::Node(c, 0));
    g.connect(Source::Input(1), Target::Node(t, 1));
    g.connect(Source::Node(c, 0), Target::Output(0));
    g.connect(Source::Node(t, 0), Target::Output(1));
    if flip {
        g.connect(Source::Node(cup, 0), Target::Node(s, 0));
        g.connect(Source::Node(s, 0), Target::Node(c, 1));
        g.connect(Source::Node(cup, 1), Target::Node(t, 0));
    } else {
        g.connect(Source::Node(cup, 0), Target::Node(c, 1));
        g.connect(Source::Node(cup, 1), Target::Node(s, 0));
        g.connect(Source::Node(s, 0), Target::Node(t, 0));
    }
    Ok(g)
}

/// Rewrites taking the copy/add CX diagram through the cup forms to the
/// add/copy form, each paired with the diagram it produces.
pub fn cx_rewrite_chain(d: usize) -> Result<Vec<(Rewrite, Diagram)>> {
    let mut g = cx_copy_add(d)?;
    let mut steps = Vec::new();
    let mut push = |g: &mut Diagram, r: Rewrite| -> Result<()> {
        *g = r.apply(g)?;
        steps.push((r, g.clone()));
        Ok(())
    };
    // node 0 copies the control, node 1 adds into the target
    push(&mut g, Rewrite::SpiderUnfuse { node: 0, inputs: vec![], outputs: vec![1], phase: 0 })?;
    let split = last_added(&g);
    let leg = match super::rules::sink(&g, Source::Node(split, 0)) {
        Target::Node(1, _) => 0,
        _ => 1,
    };
    push(&mut g, Rewrite::SwapDual { node: split, leg })?;
    let s = last_added(&g);
    push(&mut g, Rewrite::AntipodeSlide { node: s })?;
    push(&mut g, Rewrite::SwapDual { node: split, leg: 0 })?;
    push(&mut g, Rewrite::SpiderFuse { a: split, b: 1 })?;
    Ok(steps)
}

fn last_added(g: &Diagram) -> NodeId {
    *g.nodes.keys().next_back().expect("nonempty diagram")
}

const MAX_OPEN: usize = 4;

/// A random well-formed diagram with at most `max_nodes` nodes and a few
/// open wires, built by stacking generators.
pub fn random_diagram<R: Rng + ?Sized>(rng: &mut R, d: usize, max_nodes: usize) -> Result<Diagram> {
    let inputs = rng.random_range(0..=2);
    let mut g = Diagram::new(d, inputs, 0)?;
    let mut open: Vec<Source> = (0..inputs).map(Source::Input).collect();
    let count = rng.random_range(1..=max_nodes.max(1));
    for _ in 0..count {
        open.shuffle(rng);
        let node = match rng.random_range(0..10) {
            0..=5 => {
                let ins = rng.random_range(0..=open.len().min(2));
                let outs = rng.random_range(usize::from(ins == 0)..=2);
                let c = if rng.random_bool(0.5) { Color::Green } else { Color::Red };
                Node::spider(c, rng.random_range(0..d as i64), ins, outs)
            }
            6 if !open.is_empty() => Node::Fourier { dagger: rng.random_bool(0.5) },
            7 if !open.is_empty() => Node::Antipode,
            8 => Node::Cup,
            9 if open.len() >= 2 => Node::Cap,
            _ => Node::green(0, 0, 1),
        };
        let (ins, outs) = node.arity();
        let (node, ins, outs) = if open.len() + outs > ins + MAX_OPEN && !open.is_empty() {
            (Node::red(rng.random_range(0..d as i64), 1, 0), 1, 0)
        } else {
            (node, ins, outs)
        };
        let id = g.add(node);
        for p in 0..ins {
            let s = open.pop().expect("enough open wires");
            g.connect(s, Target::Node(id, p));
        }
        open.extend((0..outs).map(|p| Source::Node(id, p)));
    }
    open.shuffle(rng);
    g.outputs = open.len();
    for (j, s) in open.into_iter().enumerate() {
        g.connect(s, Target::Output(j));
    }
    g.validate()?;
    Ok(g)
}
