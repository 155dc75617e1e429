use rand::Rng;
use serde::{Deserialize, Serialize};

use super::state::PureState;
use crate::algebra::RootOfUnity;
use crate::error::{Error, Result};
use crate::lattice::{LocalOperator, Site, SiteKind};
use crate::linalg::{C64, ONE, ZERO};

/// Branches whose squared norm falls below this are treated as impossible.
pub const BRANCH_CUTOFF: f64 = 1e-24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MeasureBasis {
    /// Computational basis `|m⟩`.
    Z,
    /// Shift eigenbasis `f_m = d^{-1/2} Σ_k q^{-mk} |k⟩`, with `X f_m = q^m f_m`.
    X,
}

pub fn basis_vector(d: usize, basis: MeasureBasis, m: i64) -> Vec<C64> {
    match basis {
        MeasureBasis::Z => {
            let mut v = vec![ZERO; d];
            v[crate::algebra::modd(m, d)] = ONE;
            v
        }
        MeasureBasis::X => {
            let q = RootOfUnity::new(d);
            let s = 1.0 / (d as f64).sqrt();
            (0..d).map(|k| q.pow(-m * k as i64) * s).collect()
        }
    }
}

/// A measurement outcome together with the unnormalized post-measurement state.
#[derive(Clone, Debug)]
pub struct Branch {
    pub outcome: i64,
    pub state: PureState,
}

impl Branch {
    pub fn is_possible(&self) -> bool {
        self.state.norm_sqr() > BRANCH_CUTOFF
    }
}

/// Every outcome `0..d` (ascending, impossible ones included with a zero
/// state) of measuring a stabilizer site (edge indices must
/// refer to the state's qudits).
pub fn site_branches(state: &PureState, site: &Site) -> Result<Vec<Branch>> {
    let d = state.d();
    let mut out = Vec::with_capacity(d);
    for j in 0..d as i64 {
        let p = match site.kind {
            SiteKind::Vertex => LocalOperator::vertex_projector(d, site, j),
            SiteKind::Face => LocalOperator::face_projector(d, site, j),
        };
        out.push(Branch { outcome: j, state: state.applied(&p)? });
    }
    Ok(out)
}

/// Every outcome `0..d` of measuring qudit `q` in `basis`, ascending. With `remove`, the
/// measured qudit is traced out of each branch.
pub fn edge_branches(state: &PureState, q: usize, basis: MeasureBasis, remove: bool) -> Result<Vec<Branch>> {
    let d = state.d();
    if q >= state.qudits() {
        return Err(Error::Support { index: q, edges: state.qudits() });
    }
    let mut out = Vec::with_capacity(d);
    for m in 0..d as i64 {
        let v = basis_vector(d, basis, m);
        let reduced = state.contract(q, &v)?;
        let st = if remove {
            reduced
        } else {
            let front: Vec<usize> = (0..state.qudits())
                .map(|i| {
                    if i < q {
                        i
                    } else if i == q {
                        state.qudits() - 1
                    } else {
                        i - 1
                    }
                })
                .collect();
            reduced.adjoin(&v, usize::MAX)?.permute(&front)?
        };
        out.push(Branch { outcome: m, state: st });
    }
    Ok(out)
}

/// Born-rule choice among the possible branches. Returns the chosen branch
/// and its probability.
pub fn sample<R: Rng + ?Sized>(branches: Vec<Branch>, rng: &mut R) -> Result<(Branch, f64)> {
    let branches: Vec<Branch> = branches.into_iter().filter(Branch::is_possible).collect();
    let total: f64 = branches.iter().map(|b| b.state.norm_sqr()).sum();
    if branches.is_empty() || total <= BRANCH_CUTOFF {
        return Err(Error::ZeroProjection("every measurement branch vanished".into()));
    }
    let mut r = rng.random::<f64>() * total;
    let last = branches.len() - 1;
    for (i, b) in branches.into_iter().enumerate() {
        let p = b.state.norm_sqr();
        if r < p || i == last {
            return Ok((b, p / total));
        }
        r -= p;
    }
    unreachable!("loop returns on the last branch")
}
