use super::diagram::{Color, Diagram, Node, NodeId, Source, Target, Wire};
use crate::error::{Error, Result};
use crate::linalg::C64;

fn no_match(msg: impl Into<String>) -> Error {
    Error::NoMatch(msg.into())
}

pub(super) fn spider(g: &Diagram, id: NodeId) -> Result<(Color, i64, usize, usize)> {
    match g.node(id)? {
        Node::Spider { color, phase, inputs, outputs } => Ok((*color, *phase, *inputs, *outputs)),
        other => Err(no_match(format!("node {id} is {other:?}, not a spider"))),
    }
}

pub(super) fn feeder(g: &Diagram, t: Target) -> Source {
    g.wires[g.wire_to(t).expect("validated diagram")].from
}

pub(super) fn sink(g: &Diagram, s: Source) -> Target {
    g.wires[g.wire_from(s).expect("validated diagram")].to
}

/// Maps every wire through `f`; `None` drops it.
fn rewire(g: &mut Diagram, mut f: impl FnMut(Wire) -> Option<Wire>) {
    g.wires = g.wires.iter().filter_map(|w| f(*w)).collect();
}

fn scale(g: &mut Diagram, s: f64) {
    g.scalar *= C64::new(s, 0.0);
}

/// Fuses spider `b` into spider `a` along every wire from `a` to `b`.
pub(super) fn spider_fuse(g: &mut Diagram, a: NodeId, b: NodeId) -> Result<()> {
    let (ca, pa, ia, oa) = spider(g, a)?;
    let (cb, pb, ib, ob) = spider(g, b)?;
    if a == b || ca != cb {
        return Err(no_match(format!("nodes {a} and {b} are not distinct spiders of one colour")));
    }
    let link = |w: &Wire| matches!((w.from, w.to), (Source::Node(x, _), Target::Node(y, _)) if x == a && y == b);
    let links: Vec<Wire> = g.wires.iter().copied().filter(link).collect();
    if links.is_empty() {
        return Err(no_match(format!("no wire from {a} to {b}")));
    }
    let a_kept: Vec<usize> = (0..oa).filter(|p| !links.iter().any(|w| w.from == Source::Node(a, *p))).collect();
    let b_kept: Vec<usize> = (0..ib).filter(|p| !links.iter().any(|w| w.to == Target::Node(b, *p))).collect();
    let k = links.len();
    rewire(g, |w| {
        if link(&w) {
            return None;
        }
        let from = match w.from {
            Source::Node(x, p) if x == a => Source::Node(a, a_kept.iter().position(|q| *q == p).expect("kept")),
            Source::Node(x, p) if x == b => Source::Node(a, a_kept.len() + p),
            s => s,
        };
        let to = match w.to {
            Target::Node(x, p) if x == b => Target::Node(a, ia + b_kept.iter().position(|q| *q == p).expect("kept")),
            t => t,
        };
        Some(Wire { from, to })
    });
    g.nodes.remove(&b);
    g.nodes.insert(a, Node::spider(ca, (pa + pb).rem_euclid(g.d as i64), ia + b_kept.len(), a_kept.len() + ob));
    if ca == Color::Red {
        scale(g, (g.d as f64).powi(k as i32 - 1));
    }
    Ok(())
}

/// Splits the listed ports (and `phase`) of a spider off into a new spider of
/// the same colour, joined to the old one by one wire. Returns the new id.
pub(super) fn spider_unfuse(g: &mut Diagram, id: NodeId, inputs: &[usize], outputs: &[usize], phase: i64) -> Result<NodeId> {
    let (c, p, ins, outs) = spider(g, id)?;
    let valid = |ports: &[usize], n: usize| ports.iter().all(|x| *x < n) && (1..ports.len()).all(|i| !ports[..i].contains(&ports[i]));
    if !valid(inputs, ins) || !valid(outputs, outs) {
        return Err(no_match(format!("bad port selection on node {id}")));
    }
    let kept_in: Vec<usize> = (0..ins).filter(|x| !inputs.contains(x)).collect();
    let kept_out: Vec<usize> = (0..outs).filter(|x| !outputs.contains(x)).collect();
    let n = g.add(Node::spider(c, phase, inputs.len(), outputs.len() + 1));
    let d = g.d as i64;
    g.nodes.insert(id, Node::spider(c, (p - phase).rem_euclid(d), kept_in.len() + 1, kept_out.len()));
    rewire(g, |w| {
        let from = match w.from {
            Source::Node(x, q) if x == id => match kept_out.iter().position(|k| *k == q) {
                Some(i) => Source::Node(id, i),
                None => Source::Node(n, outputs.iter().position(|k| *k == q).expect("moved")),
            },
            s => s,
        };
        let to = match w.to {
            Target::Node(x, q) if x == id => match kept_in.iter().position(|k| *k == q) {
                Some(i) => Target::Node(id, i),
                None => Target::Node(n, inputs.iter().position(|k| *k == q).expect("moved")),
            },
            t => t,
        };
        Some(Wire { from, to })
    });
    g.connect(Source::Node(n, outputs.len()), Target::Node(id, kept_in.len()));
    Ok(n)
}

/// Replaces the 1→1 node `id` by a plain wire, multiplying the scalar by `factor`.
fn splice(g: &mut Diagram, id: NodeId, factor: f64) {
    let s = feeder(g, Target::Node(id, 0));
    let t = sink(g, Source::Node(id, 0));
    rewire(g, |w| if w.from == Source::Node(id, 0) || w.to == Target::Node(id, 0) { None } else { Some(w) });
    g.nodes.remove(&id);
    if s == Source::Node(id, 0) {
        // a box closed on itself: the loop is its trace
        scale(g, factor * g.d as f64);
    } else {
        g.connect(s, t);
        scale(g, factor);
    }
}

pub(super) fn identity_remove(g: &mut Diagram, id: NodeId) -> Result<()> {
    match spider(g, id)? {
        (_, 0, 1, 1) => {
            splice(g, id, 1.0);
            Ok(())
        }
        _ => Err(no_match(format!("node {id} is not a phaseless 1→1 spider"))),
    }
}

fn insert_box(g: &mut Diagram, on: Wire, node: Node) {
    let i = g.wires.iter().position(|w| *w == on).expect("wire present");
    g.wires.remove(i);
    let b = g.add(node);
    g.connect(on.from, Target::Node(b, 0));
    g.connect(Source::Node(b, 0), on.to);
}

/// Swaps a spider's colour, surrounding it with Fourier boxes.
pub(super) fn color_change(g: &mut Diagram, id: NodeId) -> Result<()> {
    let (c, p, ins, outs) = spider(g, id)?;
    let d = g.d as f64;
    // green = d^{1-m-n} · (H on inputs, red, H† on outputs); red = (1/d) · (H† on inputs, green, H on outputs)
    let (in_dagger, factor) = match c {
        Color::Green => (false, d.powi(1 - ins as i32 - outs as i32)),
        Color::Red => (true, 1.0 / d),
    };
    g.nodes.insert(id, Node::spider(c.other(), p, ins, outs));
    for q in 0..ins {
        let w = g.wires[g.wire_to(Target::Node(id, q)).expect("validated")];
        insert_box(g, w, Node::Fourier { dagger: in_dagger });
    }
    for q in 0..outs {
        let w = g.wires[g.wire_from(Source::Node(id, q)).expect("validated")];
        insert_box(g, w, Node::Fourier { dagger: !in_dagger });
    }
    scale(g, factor);
    Ok(())
}

/// A phaseless 2→1 spider whose output feeds a phaseless 1→2 spider of the
/// other colour becomes the crossed square of copies.
pub(super) fn bialgebra(g: &mut Diagram, top: NodeId, bottom: NodeId) -> Result<()> {
    let (ct, pt, it, ot) = spider(g, top)?;
    let (cb, pb, ib, ob) = spider(g, bottom)?;
    let joined = sink(g, Source::Node(top, 0)) == Target::Node(bottom, 0);
    if (it, ot, ib, ob, pt, pb) != (2, 1, 1, 2, 0, 0) || ct == cb || !joined {
        return Err(no_match(format!("nodes {top} → {bottom} are not a bialgebra pattern")));
    }
    let ins = [feeder(g, Target::Node(top, 0)), feeder(g, Target::Node(top, 1))];
    let outs = [sink(g, Source::Node(bottom, 0)), sink(g, Source::Node(bottom, 1))];
    if ins.iter().any(|s| matches!(s, Source::Node(x, _) if *x == bottom)) {
        return Err(no_match("bialgebra pattern closes on itself"));
    }
    rewire(g, |w| {
        let touches = |x: NodeId| matches!(w.from, Source::Node(y, _) if y == x) || matches!(w.to, Target::Node(y, _) if y == x);
        if touches(top) || touches(bottom) {
            None
        } else {
            Some(w)
        }
    });
    g.nodes.remove(&top);
    g.nodes.remove(&bottom);
    let c0 = g.add(Node::spider(cb, 0, 1, 2));
    let c1 = g.add(Node::spider(cb, 0, 1, 2));
    let m0 = g.add(Node::spider(ct, 0, 2, 1));
    let m1 = g.add(Node::spider(ct, 0, 2, 1));
    let (copies, merges) = ([c0, c1], [m0, m1]);
    for i in 0..2 {
        g.connect(ins[i], Target::Node(copies[i], 0));
        g.connect(Source::Node(merges[i], 0), outs[i]);
        for (j, m) in merges.iter().enumerate() {
            g.connect(Source::Node(copies[i], j), Target::Node(*m, i));
        }
    }
    Ok(())
}

fn chained(g: &Diagram, a: NodeId, b: NodeId) -> Result<()> {
    if a == b || sink(g, Source::Node(a, 0)) != Target::Node(b, 0) || feeder(g, Target::Node(a, 0)) == Source::Node(b, 0) {
        return Err(no_match(format!("node {a} does not feed node {b} along an open chain")));
    }
    Ok(())
}

/// Collapses `a` then `b` into `replacement` (or a plain wire) times `factor`.
fn collapse(g: &mut Diagram, a: NodeId, b: NodeId, replacement: Option<Node>, factor: f64) {
    let s = feeder(g, Target::Node(a, 0));
    let t = sink(g, Source::Node(b, 0));
    rewire(g, |w| {
        let touches = |x: NodeId| matches!(w.from, Source::Node(y, _) if y == x) || matches!(w.to, Target::Node(y, _) if y == x);
        if touches(a) || touches(b) {
            None
        } else {
            Some(w)
        }
    });
    g.nodes.remove(&a);
    g.nodes.remove(&b);
    match replacement {
        Some(node) => {
            let n = g.add(node);
            g.connect(s, Target::Node(n, 0));
            g.connect(Source::Node(n, 0), t);
        }
        None => g.connect(s, t),
    }
    scale(g, factor);
}

pub(super) fn antipode_cancel(g: &mut Diagram, a: NodeId, b: NodeId) -> Result<()> {
    if g.node(a)? != &Node::Antipode || g.node(b)? != &Node::Antipode {
        return Err(no_match(format!("nodes {a}, {b} are not antipodes")));
    }
    chained(g, a, b)?;
    collapse(g, a, b, None, 1.0);
    Ok(())
}

/// Two Fourier boxes in a row: `d·S` for equal daggers, `d·id` otherwise.
pub(super) fn fourier_square(g: &mut Diagram, a: NodeId, b: NodeId) -> Result<()> {
    let (Node::Fourier { dagger: x }, Node::Fourier { dagger: y }) = (g.node(a)?.clone(), g.node(b)?.clone()) else {
        return Err(no_match(format!("nodes {a}, {b} are not Fourier boxes")));
    };
    chained(g, a, b)?;
    let d = g.d as f64;
    collapse(g, a, b, (x == y).then_some(Node::Antipode), d);
    Ok(())
}

/// A cup leg bent into a cap straightens to a wire.
pub(super) fn cup_cap_snake(g: &mut Diagram, cup: NodeId, cap: NodeId) -> Result<()> {
    if g.node(cup)? != &Node::Cup || g.node(cap)? != &Node::Cap {
        return Err(no_match(format!("nodes {cup}, {cap} are not a cup and a cap")));
    }
    let bent: Vec<(usize, usize)> = (0..2)
        .filter_map(|p| match sink(g, Source::Node(cup, p)) {
            Target::Node(x, r) if x == cap => Some((p, r)),
            _ => None,
        })
        .collect();
    if bent.is_empty() {
        return Err(no_match(format!("cup {cup} does not meet cap {cap}")));
    }
    let ends = (bent.len() == 1).then(|| {
        let (p, r) = bent[0];
        (feeder(g, Target::Node(cap, 1 - r)), sink(g, Source::Node(cup, 1 - p)))
    });
    rewire(g, |w| {
        let touches = |x: NodeId| matches!(w.from, Source::Node(y, _) if y == x) || matches!(w.to, Target::Node(y, _) if y == x);
        if touches(cup) || touches(cap) {
            None
        } else {
            Some(w)
        }
    });
    g.nodes.remove(&cup);
    g.nodes.remove(&cap);
    match ends {
        Some((s, t)) => g.connect(s, t),
        None => scale(g, g.d as f64),
    }
    Ok(())
}

/// Trades a cup or cap for the equal red spider and back; a phaseless green
/// 0→2 (2→0) spider becomes a cup (cap) with an antipode on leg `leg`.
pub(super) fn swap_dual(g: &mut Diagram, id: NodeId, leg: usize) -> Result<()> {
    let node = g.node(id)?.clone();
    let plain = match node {
        Node::Cup => Some(Node::red(0, 0, 2)),
        Node::Cap => Some(Node::red(0, 2, 0)),
        Node::Spider { color: Color::Red, phase: 0, inputs: 0, outputs: 2 } => Some(Node::Cup),
        Node::Spider { color: Color::Red, phase: 0, inputs: 2, outputs: 0 } => Some(Node::Cap),
        _ => None,
    };
    if let Some(n) = plain {
        g.nodes.insert(id, n);
        return Ok(());
    }
    if leg > 1 {
        return Err(no_match(format!("leg {leg} out of range")));
    }
    match node {
        Node::Spider { color: Color::Green, phase: 0, inputs: 0, outputs: 2 } => {
            g.nodes.insert(id, Node::Cup);
            let w = g.wires[g.wire_from(Source::Node(id, leg)).expect("validated")];
            insert_box(g, w, Node::Antipode);
        }
        Node::Spider { color: Color::Green, phase: 0, inputs: 2, outputs: 0 } => {
            g.nodes.insert(id, Node::Cap);
            let w = g.wires[g.wire_to(Target::Node(id, leg)).expect("validated")];
            insert_box(g, w, Node::Antipode);
        }
        other => return Err(no_match(format!("node {id} ({other:?}) has no dual form"))),
    }
    Ok(())
}

/// Moves an antipode sitting on one leg of a cup or cap to the other leg.
pub(super) fn antipode_slide(g: &mut Diagram, id: NodeId) -> Result<()> {
    if g.node(id)? != &Node::Antipode {
        return Err(no_match(format!("node {id} is not an antipode")));
    }
    let other_leg = match (feeder(g, Target::Node(id, 0)), sink(g, Source::Node(id, 0))) {
        (Source::Node(c, p), _) if g.node(c)? == &Node::Cup => g.wires[g.wire_from(Source::Node(c, 1 - p)).expect("validated")],
        (_, Target::Node(c, r)) if g.node(c)? == &Node::Cap => g.wires[g.wire_to(Target::Node(c, 1 - r)).expect("validated")],
        _ => return Err(no_match(format!("antipode {id} is not on a cup or cap leg"))),
    };
    if other_leg.to == Target::Node(id, 0) || other_leg.from == Source::Node(id, 0) {
        return Err(no_match(format!("antipode {id} closes a loop")));
    }
    splice(g, id, 1.0);
    insert_box(g, other_leg, Node::Antipode);
    Ok(())
}
