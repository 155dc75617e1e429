//! Finite closure of the one-qudit gates reachable without magic: `X`, `Z`,
//! the unitary Fourier gate and the antipode, taken modulo global scalars.

use std::collections::{HashSet, VecDeque};

use crate::algebra::{check_dim, fourier_unitary, gate, GateKind};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, C64};
use crate::sim::{basis_vector, MeasureBasis};

/// Rounding grid for matrix keys.
const GRID: f64 = 1e6;

type Key = Vec<(i64, i64)>;

/// Key of `m` modulo nonzero scalars: rescaled to unit row norm on average
/// and rotated so the first significant entry is real positive.
pub fn projective_key(m: &Matrix, tol: f64) -> Option<Key> {
    let norm = m.norm();
    if norm <= tol {
        return None;
    }
    let first = *m.iter().find(|x| x.norm() > tol * norm)?;
    let s = (m.nrows() as f64).sqrt() / norm / (first / first.norm());
    Some(
        m.iter()
            .map(|x| {
                let y = x * s;
                ((y.re * GRID).round() as i64, (y.im * GRID).round() as i64)
            })
            .collect(),
    )
}

/// The group generated by a set of one-qudit gates, modulo scalars.
#[derive(Clone, Debug)]
pub struct GateGroup {
    pub d: usize,
    pub elements: Vec<Matrix>,
    keys: HashSet<Key>,
}

impl GateGroup {
    /// Breadth-first closure of `generators` under multiplication.
    pub fn generate(d: usize, generators: &[Matrix], limit: usize) -> Result<Self> {
        check_dim(d)?;
        let mut group = GateGroup { d, elements: Vec::new(), keys: HashSet::new() };
        let mut queue = VecDeque::from([Matrix::identity(d, d)]);
        while let Some(m) = queue.pop_front() {
            let key = projective_key(&m, 1e-9).ok_or_else(|| Error::Shape("generator is singular".into()))?;
            if !group.keys.insert(key) {
                continue;
            }
            group.elements.push(m.clone());
            if group.elements.len() > limit {
                return Err(Error::Procedure(format!("closure exceeds {limit} elements; the group may be infinite")));
            }
            for g in generators {
                queue.push_back(g * &m);
            }
        }
        Ok(group)
    }

    /// `⟨X, Z, F, S⟩` with `F` the unitary Fourier gate.
    pub fn clifford_fragment(d: usize) -> Result<Self> {
        let gens = [gate(GateKind::X(1), d)?.entries, gate(GateKind::Z(1), d)?.entries, fourier_unitary(d), gate(GateKind::S, d)?.entries];
        Self::generate(d, &gens, 100_000)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Membership up to a nonzero scalar.
    pub fn contains(&self, m: &Matrix) -> bool {
        m.nrows() == self.d && m.ncols() == self.d && projective_key(m, 1e-9).is_some_and(|k| self.keys.contains(&k))
    }
}

/// Principal square root of the shift `X`: `Σ_m e^{iπm/d} |f_m⟩⟨f_m|` over
/// its eigenvectors `f_m = d^{-1/2} Σ_k q^{-mk} |k⟩`.
pub fn sqrt_x(d: usize) -> Matrix {
    let f: Vec<Vec<C64>> = (0..d).map(|m| basis_vector(d, MeasureBasis::X, m as i64)).collect();
    Matrix::from_fn(d, d, |r, c| {
        (0..d).map(|m| C64::from_polar(1.0, std::f64::consts::PI * m as f64 / d as f64) * f[m][r] * f[m][c].conj()).sum()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrices_close;

    #[test]
    fn group_orders() {
        assert_eq!(GateGroup::clifford_fragment(2).unwrap().len(), 8);
        assert_eq!(GateGroup::clifford_fragment(3).unwrap().len(), 36);
    }

    #[test]
    fn root_of_shift() {
        for d in [2, 3, 5] {
            let r = sqrt_x(d);
            let x = gate(GateKind::X(1), d).unwrap().entries;
            assert!(matrices_close(&(&r * &r), &x, 1e-12));
            assert!(!GateGroup::clifford_fragment(d.min(3)).unwrap().contains(&sqrt_x(d.min(3))));
        }
    }
}
