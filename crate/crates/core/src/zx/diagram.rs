use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{check_dim, modd};
use crate::error::{Error, Result};
use crate::linalg::{C64, ONE};

pub type NodeId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Green,
    Red,
}

impl Color {
    pub fn other(self) -> Color {
        match self {
            Color::Green => Color::Red,
            Color::Red => Color::Green,
        }
    }
}

/// Diagram generators.
///
/// A green spider with phase `b` forces every leg to one value `k` and
/// weighs it by `q^{bk}`. A red spider with phase `a` is the indicator of
/// `Σ outputs = Σ inputs + a`. `Fourier` is `Σ q^{-jk} |k⟩⟨j|` (the dagger
/// flips the sign), `Antipode` is `|j⟩ ↦ |−j⟩`, `Cup` is `Σ_k |k, −k⟩` and
/// `Cap` is `⟨a, b| ↦ [a + b = 0]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Node {
    Spider {
        color: Color,
        #[serde(default)]
        phase: i64,
        inputs: usize,
        outputs: usize,
    },
    Fourier {
        #[serde(default)]
        dagger: bool,
    },
    Antipode,
    Cup,
    Cap,
}

impl Node {
    pub fn spider(color: Color, phase: i64, inputs: usize, outputs: usize) -> Node {
        Node::Spider { color, phase, inputs, outputs }
    }

    pub fn green(phase: i64, inputs: usize, outputs: usize) -> Node {
        Node::spider(Color::Green, phase, inputs, outputs)
    }

    pub fn red(phase: i64, inputs: usize, outputs: usize) -> Node {
        Node::spider(Color::Red, phase, inputs, outputs)
    }

    /// `(inputs, outputs)`.
    pub fn arity(&self) -> (usize, usize) {
        match self {
            Node::Spider { inputs, outputs, .. } => (*inputs, *outputs),
            Node::Fourier { .. } | Node::Antipode => (1, 1),
            Node::Cup => (0, 2),
            Node::Cap => (2, 0),
        }
    }
}

/// Where a wire starts: a node output port or a diagram input.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Input(usize),
    Node(NodeId, usize),
}

/// Where a wire ends: a node input port or a diagram output.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    Output(usize),
    Node(NodeId, usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Wire {
    pub from: Source,
    pub to: Target,
}

/// An open diagram with ordered boundary inputs and outputs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Diagram {
    pub d: usize,
    pub inputs: usize,
    pub outputs: usize,
    pub nodes: BTreeMap<NodeId, Node>,
    pub wires: Vec<Wire>,
    #[serde(default = "unit_scalar")]
    pub scalar: C64,
}

fn unit_scalar() -> C64 {
    ONE
}

impl Diagram {
    pub fn new(d: usize, inputs: usize, outputs: usize) -> Result<Self> {
        check_dim(d)?;
        Ok(Diagram { d, inputs, outputs, nodes: BTreeMap::new(), wires: Vec::new(), scalar: ONE })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let g: Diagram = serde_json::from_str(text)?;
        check_dim(g.d)?;
        g.validate()?;
        Ok(g)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("diagram serializes")
    }

    pub fn add(&mut self, node: Node) -> NodeId {
        let id = self.nodes.keys().next_back().map_or(0, |k| k + 1);
        let node = match node {
            Node::Spider { color, phase, inputs, outputs } => Node::Spider { color, phase: modd(phase, self.d) as i64, inputs, outputs },
            other => other,
        };
        self.nodes.insert(id, node);
        id
    }

    pub fn connect(&mut self, from: Source, to: Target) {
        self.wires.push(Wire { from, to });
    }

    pub fn node(&self, id: NodeId) -> Result<&Node> {
        self.nodes.get(&id).ok_or_else(|| Error::Diagram(format!("no node {id}")))
    }

    /// Wire leaving `source`, if any.
    pub fn wire_from(&self, source: Source) -> Option<usize> {
        self.wires.iter().position(|w| w.from == source)
    }

    /// Wire entering `target`, if any.
    pub fn wire_to(&self, target: Target) -> Option<usize> {
        self.wires.iter().position(|w| w.to == target)
    }

    /// Checks that every port and boundary slot carries exactly one wire.
    pub fn validate(&self) -> Result<()> {
        let mut sources = BTreeMap::new();
        let mut targets = BTreeMap::new();
        for w in &self.wires {
            if let Source::Node(id, p) = w.from {
                let (_, outs) = self.node(id)?.arity();
                if p >= outs {
                    return Err(Error::Diagram(format!("node {id} has no output port {p}")));
                }
            }
            if let Source::Input(i) = w.from {
                if i >= self.inputs {
                    return Err(Error::Diagram(format!("no diagram input {i}")));
                }
            }
            if let Target::Node(id, p) = w.to {
                let (ins, _) = self.node(id)?.arity();
                if p >= ins {
                    return Err(Error::Diagram(format!("node {id} has no input port {p}")));
                }
            }
            if let Target::Output(j) = w.to {
                if j >= self.outputs {
                    return Err(Error::Diagram(format!("no diagram output {j}")));
                }
            }
            *sources.entry(w.from).or_insert(0) += 1;
            *targets.entry(w.to).or_insert(0) += 1;
        }
        let mut expected_sources: Vec<Source> = (0..self.inputs).map(Source::Input).collect();
        let mut expected_targets: Vec<Target> = (0..self.outputs).map(Target::Output).collect();
        for (id, n) in &self.nodes {
            let (ins, outs) = n.arity();
            expected_sources.extend((0..outs).map(|p| Source::Node(*id, p)));
            expected_targets.extend((0..ins).map(|p| Target::Node(*id, p)));
        }
        for s in expected_sources {
            if sources.get(&s) != Some(&1) {
                return Err(Error::Diagram(format!("{s:?} must start exactly one wire")));
            }
        }
        for t in expected_targets {
            if targets.get(&t) != Some(&1) {
                return Err(Error::Diagram(format!("{t:?} must end exactly one wire")));
            }
        }
        Ok(())
    }

    /// Plain wires: the identity on `n` qudits.
    pub fn identity(d: usize, n: usize) -> Result<Self> {
        let mut g = Diagram::new(d, n, n)?;
        for i in 0..n {
            g.connect(Source::Input(i), Target::Output(i));
        }
        Ok(g)
    }

    /// A single node whose ports are the diagram boundary, in order.
    pub fn single(d: usize, node: Node) -> Result<Self> {
        let (ins, outs) = node.arity();
        let mut g = Diagram::new(d, ins, outs)?;
        let id = g.add(node);
        for i in 0..ins {
            g.connect(Source::Input(i), Target::Node(id, i));
        }
        for j in 0..outs {
            g.connect(Source::Node(id, j), Target::Output(j));
        }
        Ok(g)
    }

    fn shifted(&self, offset: NodeId) -> (BTreeMap<NodeId, Node>, Vec<Wire>) {
        let nodes = self.nodes.iter().map(|(k, v)| (k + offset, v.clone())).collect();
        let wires = self
            .wires
            .iter()
            .map(|w| Wire {
                from: match w.from {
                    Source::Node(id, p) => Source::Node(id + offset, p),
                    s => s,
                },
                to: match w.to {
                    Target::Node(id, p) => Target::Node(id + offset, p),
                    t => t,
                },
            })
            .collect();
        (nodes, wires)
    }

    fn next_id(&self) -> NodeId {
        self.nodes.keys().next_back().map_or(0, |k| k + 1)
    }

    /// Side-by-side composition; `other`'s boundary comes after this one's.
    pub fn tensor(&self, other: &Diagram) -> Result<Diagram> {
        if self.d != other.d {
            return Err(Error::DimensionMismatch(self.d, other.d));
        }
        let (nodes, wires) = other.shifted(self.next_id());
        let mut g = self.clone();
        g.inputs += other.inputs;
        g.outputs += other.outputs;
        g.scalar *= other.scalar;
        g.nodes.extend(nodes);
        for w in wires {
            g.wires.push(Wire {
                from: match w.from {
                    Source::Input(i) => Source::Input(i + self.inputs),
                    s => s,
                },
                to: match w.to {
                    Target::Output(j) => Target::Output(j + self.outputs),
                    t => t,
                },
            });
        }
        Ok(g)
    }

    /// `other ∘ self`: this diagram's outputs feed `other`'s inputs.
    pub fn then(&self, other: &Diagram) -> Result<Diagram> {
        if self.d != other.d {
            return Err(Error::DimensionMismatch(self.d, other.d));
        }
        if self.outputs != other.inputs {
            return Err(Error::Diagram(format!("cannot feed {} outputs into {} inputs", self.outputs, other.inputs)));
        }
        let (nodes, wires) = other.shifted(self.next_id());
        let mut g = Diagram::new(self.d, self.inputs, other.outputs)?;
        g.scalar = self.scalar * other.scalar;
        g.nodes = self.nodes.clone();
        g.nodes.extend(nodes);
        let mut into: BTreeMap<usize, Target> = BTreeMap::new();
        for w in &wires {
            if let Source::Input(i) = w.from {
                into.insert(i, w.to);
            }
        }
        let mut from_first: BTreeMap<usize, Source> = BTreeMap::new();
        for w in &self.wires {
            match w.to {
                Target::Output(j) => {
                    from_first.insert(j, w.from);
                }
                _ => g.wires.push(*w),
            }
        }
        for w in &wires {
            if let Source::Input(_) = w.from {
                continue;
            }
            g.wires.push(*w);
        }
        for (j, src) in from_first {
            g.wires.push(Wire { from: src, to: into[&j] });
        }
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_node_is_valid() {
        let g = Diagram::single(3, Node::green(1, 2, 1)).unwrap();
        g.validate().unwrap();
        let text = g.to_json();
        assert_eq!(Diagram::from_json(&text).unwrap(), g);
    }

    #[test]
    fn dangling_port_rejected() {
        let mut g = Diagram::new(2, 1, 1).unwrap();
        let n = g.add(Node::red(0, 1, 1));
        g.connect(Source::Input(0), Target::Node(n, 0));
        assert!(g.validate().is_err());
    }

    #[test]
    fn composition_wires_up() {
        let a = Diagram::single(2, Node::green(0, 1, 2)).unwrap();
        let b = Diagram::single(2, Node::red(0, 2, 1)).unwrap();
        let g = a.then(&b).unwrap();
        g.validate().unwrap();
        assert_eq!(g.nodes.len(), 2);
        let t = a.tensor(&Diagram::identity(2, 1).unwrap()).unwrap();
        t.validate().unwrap();
        assert_eq!((t.inputs, t.outputs), (2, 3));
    }
}
