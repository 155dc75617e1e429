use std::collections::BTreeMap;

use super::diagram::{Color, Diagram, Node, Source, Target};
use crate::algebra::{modd, RootOfUnity};
use crate::error::{Error, Result};
use crate::linalg::{digits_be, matrices_close, matrices_proportional, Matrix, C64, ONE, ZERO};

/// Dense tensor over labelled legs, first label most significant.
#[derive(Clone, Debug)]
struct Tensor {
    labels: Vec<usize>,
    data: Vec<C64>,
}

impl Tensor {
    fn scalar(x: C64) -> Self {
        Tensor { labels: Vec::new(), data: vec![x] }
    }

    /// Sums over every pair of repeated labels.
    fn self_trace(self, d: usize) -> Tensor {
        let mut unique: Vec<usize> = Vec::new();
        for l in &self.labels {
            if !unique.contains(l) {
                unique.push(*l);
            }
        }
        if unique.len() == self.labels.len() {
            return self;
        }
        let keep: Vec<usize> = unique.iter().copied().filter(|l| self.labels.iter().filter(|x| *x == l).count() == 1).collect();
        let n = self.labels.len();
        let mut data = vec![ZERO; d.pow(keep.len() as u32)];
        for (idx, x) in self.data.iter().enumerate() {
            let digits = digits_be(idx, d, n);
            let mut value: BTreeMap<usize, usize> = BTreeMap::new();
            if self.labels.iter().zip(&digits).any(|(l, v)| *value.entry(*l).or_insert(*v) != *v) {
                continue;
            }
            let out = keep.iter().fold(0, |acc, l| acc * d + value[l]);
            data[out] += x;
        }
        Tensor { labels: keep, data }
    }

    fn contract(&self, other: &Tensor, d: usize) -> Tensor {
        let shared: Vec<usize> = self.labels.iter().copied().filter(|l| other.labels.contains(l)).collect();
        let a_free: Vec<usize> = self.labels.iter().copied().filter(|l| !shared.contains(l)).collect();
        let b_free: Vec<usize> = other.labels.iter().copied().filter(|l| !shared.contains(l)).collect();
        let pos = |labels: &[usize], l: usize| labels.iter().position(|x| *x == l).expect("label present");
        let stride = |labels: &[usize], l: usize| d.pow((labels.len() - 1 - pos(labels, l)) as u32);
        let a_sh: Vec<usize> = shared.iter().map(|l| stride(&self.labels, *l)).collect();
        let b_sh: Vec<usize> = shared.iter().map(|l| stride(&other.labels, *l)).collect();
        let a_fr: Vec<usize> = a_free.iter().map(|l| stride(&self.labels, *l)).collect();
        let b_fr: Vec<usize> = b_free.iter().map(|l| stride(&other.labels, *l)).collect();
        let offsets = |strides: &[usize]| -> Vec<usize> {
            (0..d.pow(strides.len() as u32)).map(|i| digits_be(i, d, strides.len()).iter().zip(strides).map(|(v, s)| v * s).sum()).collect()
        };
        let (sa, sb) = (offsets(&a_sh), offsets(&b_sh));
        let (fa, fb) = (offsets(&a_fr), offsets(&b_fr));
        let mut data = Vec::with_capacity(fa.len() * fb.len());
        for ia in &fa {
            for ib in &fb {
                let mut acc = ZERO;
                for (ja, jb) in sa.iter().zip(&sb) {
                    acc += self.data[ia + ja] * other.data[ib + jb];
                }
                data.push(acc);
            }
        }
        let mut labels = a_free;
        labels.extend(b_free);
        Tensor { labels, data }
    }
}

fn node_tensor(node: &Node, d: usize) -> Vec<C64> {
    let q = RootOfUnity::new(d);
    let (ins, outs) = node.arity();
    let legs = ins + outs;
    (0..d.pow(legs as u32))
        .map(|idx| {
            let v: Vec<i64> = digits_be(idx, d, legs).into_iter().map(|x| x as i64).collect();
            let (vin, vout) = v.split_at(ins);
            match node {
                Node::Spider { color: Color::Green, phase, .. } => {
                    if v.is_empty() {
                        (0..d as i64).map(|k| q.pow(phase * k)).sum()
                    } else if v.iter().all(|x| *x == v[0]) {
                        q.pow(phase * v[0])
                    } else {
                        ZERO
                    }
                }
                Node::Spider { color: Color::Red, phase, .. } => {
                    let s: i64 = vout.iter().sum::<i64>() - vin.iter().sum::<i64>() - phase;
                    if modd(s, d) == 0 {
                        ONE
                    } else {
                        ZERO
                    }
                }
                Node::Fourier { dagger } => {
                    let sign = if *dagger { 1 } else { -1 };
                    q.pow(sign * v[0] * v[1])
                }
                Node::Antipode => {
                    if modd(v[0] + v[1], d) == 0 {
                        ONE
                    } else {
                        ZERO
                    }
                }
                Node::Cup | Node::Cap => {
                    if modd(v[0] + v[1], d) == 0 {
                        ONE
                    } else {
                        ZERO
                    }
                }
            }
        })
        .collect()
}

/// Tensor of a diagram as a `d^outputs × d^inputs` matrix, first boundary
/// wire most significant.
pub fn evaluate(g: &Diagram) -> Result<Matrix> {
    g.validate()?;
    let d = g.d;
    // every wire is one label; node legs are inputs then outputs
    let label_of_target = |t: Target| g.wires.iter().position(|w| w.to == t).expect("validated");
    let label_of_source = |s: Source| g.wires.iter().position(|w| w.from == s).expect("validated");
    let mut tensors: Vec<Tensor> = Vec::new();
    for (id, node) in &g.nodes {
        let (ins, outs) = node.arity();
        let mut labels: Vec<usize> = (0..ins).map(|p| label_of_target(Target::Node(*id, p))).collect();
        labels.extend((0..outs).map(|p| label_of_source(Source::Node(*id, p))));
        tensors.push(Tensor { labels, data: node_tensor(node, d) }.self_trace(d));
    }
    // open labels in boundary order; a plain input→output wire appears twice
    let boundary: Vec<usize> = (0..g.inputs)
        .map(|i| label_of_source(Source::Input(i)))
        .chain((0..g.outputs).map(|j| label_of_target(Target::Output(j))))
        .collect();
    loop {
        let mut best: Option<(usize, usize, usize)> = None;
        for a in 0..tensors.len() {
            for b in a + 1..tensors.len() {
                if tensors[a].labels.iter().any(|l| tensors[b].labels.contains(l)) {
                    let free = tensors[a].labels.len() + tensors[b].labels.len();
                    if best.is_none_or(|(_, _, f)| free < f) {
                        best = Some((a, b, free));
                    }
                }
            }
        }
        let Some((a, b, _)) = best else { break };
        let tb = tensors.swap_remove(b);
        let ta = tensors.swap_remove(a);
        tensors.push(ta.contract(&tb, d));
    }
    let mut total = Tensor::scalar(g.scalar);
    for t in tensors {
        total = total.contract(&t, d);
    }
    let rows = d.pow(g.outputs as u32);
    let cols = d.pow(g.inputs as u32);
    let mut m = Matrix::zeros(rows, cols);
    let n = boundary.len();
    for r in 0..rows {
        for c in 0..cols {
            let digits: Vec<usize> = digits_be(c, d, g.inputs).into_iter().chain(digits_be(r, d, g.outputs)).collect();
            let mut value: BTreeMap<usize, usize> = BTreeMap::new();
            if boundary.iter().zip(&digits).any(|(l, v)| *value.entry(*l).or_insert(*v) != *v) {
                continue;
            }
            let idx = total.labels.iter().fold(0, |acc, l| acc * d + value[l]);
            m[(r, c)] = total.data[idx];
        }
    }
    debug_assert_eq!(n, g.inputs + g.outputs);
    Ok(m)
}

/// Compares two diagrams by their tensors, optionally up to one nonzero scalar.
pub fn equal(a: &Diagram, b: &Diagram, up_to_scalar: bool, tol: f64) -> Result<bool> {
    if a.d != b.d || a.inputs != b.inputs || a.outputs != b.outputs {
        return Err(Error::Diagram(format!(
            "cannot compare a {}→{} diagram with a {}→{} diagram",
            a.inputs, a.outputs, b.inputs, b.outputs
        )));
    }
    let (ta, tb) = (evaluate(a)?, evaluate(b)?);
    Ok(if up_to_scalar { matrices_proportional(&ta, &tb, tol).is_some_and(|s| s.norm() > tol) } else { matrices_close(&ta, &tb, tol) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{gate, GateKind};
    use crate::zx::diagram::Node;

    #[test]
    fn phase_gates() {
        for d in [2, 3, 5] {
            let x = evaluate(&Diagram::single(d, Node::red(2, 1, 1)).unwrap()).unwrap();
            assert!(matrices_close(&x, &gate(GateKind::X(2), d).unwrap().entries, 1e-12));
            let z = evaluate(&Diagram::single(d, Node::green(1, 1, 1)).unwrap()).unwrap();
            assert!(matrices_close(&z, &gate(GateKind::Z(1), d).unwrap().entries, 1e-12));
            let id = evaluate(&Diagram::single(d, Node::green(0, 1, 1)).unwrap()).unwrap();
            assert!(matrices_close(&id, &Matrix::identity(d, d), 1e-12));
        }
    }

    #[test]
    fn fourier_box_and_bare_wires() {
        let d = 3;
        let h = evaluate(&Diagram::single(d, Node::Fourier { dagger: false }).unwrap()).unwrap();
        assert!(matrices_close(&h, &gate(GateKind::H, d).unwrap().entries, 1e-12));
        let id = evaluate(&Diagram::identity(d, 2).unwrap()).unwrap();
        assert!(matrices_close(&id, &Matrix::identity(9, 9), 1e-12));
    }

    #[test]
    fn self_loop_on_red_spider_costs_d() {
        let d = 3;
        let mut g = Diagram::new(d, 1, 1).unwrap();
        let n = g.add(Node::red(0, 2, 2));
        g.connect(Source::Input(0), Target::Node(n, 0));
        g.connect(Source::Node(n, 0), Target::Output(0));
        g.connect(Source::Node(n, 1), Target::Node(n, 1));
        let m = evaluate(&g).unwrap();
        assert!(matrices_close(&m, &Matrix::identity(d, d).map(|x| x * 3.0), 1e-12));
    }

    #[test]
    fn green_and_red_multiplications_differ() {
        let d = 3;
        let g = Diagram::single(d, Node::green(0, 2, 1)).unwrap();
        let r = Diagram::single(d, Node::red(0, 2, 1)).unwrap();
        assert!(!equal(&g, &r, true, 1e-9).unwrap());
        assert!(equal(&g, &g, false, 1e-12).unwrap());
        assert!(equal(&g, &Diagram::single(d, Node::green(0, 1, 1)).unwrap(), true, 1e-9).is_err());
    }
}
