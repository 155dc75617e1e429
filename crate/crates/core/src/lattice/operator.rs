use crate::algebra::{modd, AlgebraElement, Basis, RootOfUnity};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, C64, ONE, ZERO};

use super::geometry::{PatchGeometry, Site, SiteId, SiteKind};

/// How a [`LocalOperator`] acts on its support.
#[derive(Clone, Debug, PartialEq)]
pub enum Action {
    /// Diagonal: multiplies a basis state by `values[Σ s_e a_e mod d]`.
    PhaseBySum(Vec<C64>),
    /// `Σ_k coeffs[k] ∏_e X^{k s_e}`.
    ShiftSum(Vec<C64>),
    /// Dense matrix on the support, first support edge most significant.
    /// Signs are ignored.
    Dense(Matrix),
}

impl Action {
    /// `∏ X^{k s_e}` for a fixed `k`.
    pub fn shift_by(d: usize, k: i64) -> Action {
        let mut c = vec![ZERO; d];
        c[modd(k, d)] = ONE;
        Action::ShiftSum(c)
    }

    /// `∏ Z^{k s_e}` for a fixed `k`.
    pub fn clock(d: usize, k: i64) -> Action {
        let q = RootOfUnity::new(d);
        Action::PhaseBySum((0..d).map(|t| q.pow(k * t as i64)).collect())
    }
}

/// An operator acting on a few edges of a patch.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalOperator {
    pub d: usize,
    pub support: Vec<usize>,
    pub signs: Vec<i64>,
    pub action: Action,
}

impl LocalOperator {
    pub fn new(d: usize, support: Vec<usize>, signs: Vec<i64>, action: Action) -> Self {
        debug_assert_eq!(support.len(), signs.len());
        LocalOperator { d, support, signs, action }
    }

    pub fn dense(d: usize, support: Vec<usize>, m: Matrix) -> Result<Self> {
        let dim = d.pow(support.len() as u32);
        if m.shape() != (dim, dim) {
            return Err(Error::Shape(format!("{}x{} matrix on {} edges of dimension {d}", m.nrows(), m.ncols(), support.len())));
        }
        let signs = vec![0; support.len()];
        Ok(LocalOperator::new(d, support, signs, Action::Dense(m)))
    }

    fn from_site(d: usize, site: &Site, action: Action) -> Self {
        LocalOperator::new(d, site.edges.iter().map(|(e, _)| *e).collect(), site.edges.iter().map(|(_, s)| *s).collect(), action)
    }

    /// Vertex projector `(1/d) Σ_k q^{jk} ∏ X^{k o_e}`.
    pub fn vertex_projector(d: usize, site: &Site, j: i64) -> Self {
        let q = RootOfUnity::new(d);
        let c = (0..d).map(|k| q.pow(j * k as i64) / d as f64).collect();
        Self::from_site(d, site, Action::ShiftSum(c))
    }

    /// Face projector onto `Σ σ_e a_e = j`.
    pub fn face_projector(d: usize, site: &Site, j: i64) -> Self {
        let jj = modd(j, d);
        let v = (0..d).map(|t| if t == jj { ONE } else { ZERO }).collect();
        Self::from_site(d, site, Action::PhaseBySum(v))
    }

    pub fn site_projector(g: &PatchGeometry, id: SiteId, j: i64) -> Result<Self> {
        let site = g.site(id).ok_or_else(|| Error::Geometry(format!("no site {id:?}")))?;
        Ok(match id.kind {
            SiteKind::Vertex => Self::vertex_projector(g.d(), site, j),
            SiteKind::Face => Self::face_projector(g.d(), site, j),
        })
    }

    /// Action of an algebra element at a site: group elements shift the
    /// star of a vertex, functions weigh the boundary sum of a face.
    pub fn site_action(g: &PatchGeometry, id: SiteId, element: &AlgebraElement) -> Result<Self> {
        let site = g.site(id).ok_or_else(|| Error::Geometry(format!("no site {id:?}")))?;
        if element.d() != g.d() {
            return Err(Error::DimensionMismatch(element.d(), g.d()));
        }
        let expected = match id.kind {
            SiteKind::Vertex => Basis::Group,
            SiteKind::Face => Basis::Function,
        };
        if element.basis() != expected {
            return Err(Error::BasisMismatch { expected, got: element.basis() });
        }
        let amps = element.amps().to_vec();
        Ok(match id.kind {
            SiteKind::Vertex => Self::from_site(g.d(), site, Action::ShiftSum(amps)),
            SiteKind::Face => Self::from_site(g.d(), site, Action::PhaseBySum(amps)),
        })
    }

    pub fn check_support(&self, edges: usize) -> Result<()> {
        match self.support.iter().find(|e| **e >= edges) {
            Some(e) => Err(Error::Support { index: *e, edges }),
            None => Ok(()),
        }
    }

    /// Applies the operator to little-endian amplitudes over `n` edges.
    pub fn apply(&self, amps: &[C64], n: usize) -> Result<Vec<C64>> {
        self.check_support(n)?;
        let d = self.d;
        if amps.len() != d.pow(n as u32) {
            return Err(Error::Shape(format!("{} amplitudes for {n} edges of dimension {d}", amps.len())));
        }
        let strides: Vec<usize> = self.support.iter().map(|e| d.pow(*e as u32)).collect();
        let digit = |idx: usize, k: usize| (idx / strides[k]) % d;
        match &self.action {
            Action::PhaseBySum(values) => Ok(amps
                .iter()
                .enumerate()
                .map(|(idx, a)| {
                    let s: i64 = (0..strides.len()).map(|k| self.signs[k] * digit(idx, k) as i64).sum();
                    a * values[modd(s, d)]
                })
                .collect()),
            Action::ShiftSum(coeffs) => {
                let mut out = vec![ZERO; amps.len()];
                for (k, c) in coeffs.iter().enumerate() {
                    if *c == ZERO {
                        continue;
                    }
                    for (idx, a) in amps.iter().enumerate() {
                        if *a == ZERO {
                            continue;
                        }
                        let mut target = idx;
                        for (p, stride) in strides.iter().enumerate() {
                            let old = digit(idx, p);
                            let new = modd(old as i64 + k as i64 * self.signs[p], d);
                            target = target - old * stride + new * stride;
                        }
                        out[target] += c * a;
                    }
                }
                Ok(out)
            }
            Action::Dense(m) => {
                let w = strides.len();
                let local = d.pow(w as u32);
                let offsets: Vec<usize> = (0..local)
                    .map(|l| {
                        let mut rest = l;
                        let mut off = 0;
                        for p in (0..w).rev() {
                            off += (rest % d) * strides[p];
                            rest /= d;
                        }
                        off
                    })
                    .collect();
                let mut out = vec![ZERO; amps.len()];
                let mut buf = vec![ZERO; local];
                for base in 0..amps.len() {
                    if (0..w).any(|p| digit(base, p) != 0) {
                        continue;
                    }
                    for (l, off) in offsets.iter().enumerate() {
                        buf[l] = amps[base + off];
                    }
                    for (r, off) in offsets.iter().enumerate() {
                        out[base + off] = (0..local).map(|c| m[(r, c)] * buf[c]).sum();
                    }
                }
                Ok(out)
            }
        }
    }

    /// Matrix of the operator restricted to its support, first support edge
    /// most significant.
    pub fn matrix(&self) -> Matrix {
        if let Action::Dense(m) = &self.action {
            return m.clone();
        }
        let w = self.support.len();
        let d = self.d;
        let local = LocalOperator::new(d, (0..w).rev().collect(), self.signs.clone(), self.action.clone());
        let dim = d.pow(w as u32);
        let mut m = Matrix::zeros(dim, dim);
        for c in 0..dim {
            let mut v = vec![ZERO; dim];
            v[c] = ONE;
            let col = local.apply(&v, w).expect("support in range");
            for (r, x) in col.into_iter().enumerate() {
                m[(r, c)] = x;
            }
        }
        m
    }
}
