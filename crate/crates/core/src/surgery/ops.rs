use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::board::{Board, Patch};
use crate::algebra::fourier_unitary;
use crate::error::{Error, Result};
use crate::lattice::{EdgeKey, GridShape, LocalOperator, PatchGeometry, Point, SiteKind, StringSpec};
use crate::sim::{basis_vector, edge_branches, logical_basis_state, logical_delta_zero, site_branches, MeasureBasis};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SurgeryKind {
    Rough,
    Smooth,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LogicalGate {
    X,
    Z,
}

/// One branch of a procedure: the board plus every raw outcome so far and
/// the logical charges (one per merge or counit).
#[derive(Clone, Debug)]
pub struct Run {
    pub board: Board,
    pub outcomes: Vec<i64>,
    pub charges: Vec<i64>,
}

impl Run {
    pub fn new(board: Board) -> Self {
        Run { board, outcomes: Vec::new(), charges: Vec::new() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Follow every measurement branch.
    Enumerate,
    /// Follow one Born-sampled branch.
    Sample,
}

/// Branches lighter than this fraction of their parent are dropped.
const RELATIVE_CUTOFF: f64 = 1e-20;

/// Executes surgery primitives on sets of branches.
pub struct Executor {
    rng: Option<ChaCha8Rng>,
}

fn shape_of(p: &Patch) -> Result<GridShape> {
    if p.is_rotated() {
        return Err(Error::Procedure(format!("patch {:?} is rotated; apply the Fourier transform again first", p.name)));
    }
    p.geometry().shape().ok_or_else(|| Error::Procedure(format!("patch {:?} is not rectangular", p.name)))
}

fn vertical(x: i32, from: i32, to: i32) -> Vec<Point> {
    if from <= to {
        (from..=to).map(|y| (x, y)).collect()
    } else {
        (to..=from).rev().map(|y| (x, y)).collect()
    }
}

fn horizontal(y: i32, from: i32, to: i32) -> Vec<Point> {
    if from <= to {
        (from..=to).map(|x| (x, y)).collect()
    } else {
        (to..=from).rev().map(|x| (x, y)).collect()
    }
}

impl Executor {
    pub fn new(mode: Mode, seed: u64) -> Self {
        Executor {
            rng: match mode {
                Mode::Enumerate => None,
                Mode::Sample => Some(ChaCha8Rng::seed_from_u64(seed)),
            },
        }
    }

    fn expand<F>(&mut self, runs: Vec<Run>, f: F) -> Result<Vec<Run>>
    where
        F: Fn(&Board) -> Result<Vec<(i64, Board)>>,
    {
        let mut out = Vec::new();
        for run in runs {
            let floor = run.board.state().norm_sqr() * RELATIVE_CUTOFF;
            let mut branches: Vec<(i64, Board)> = f(&run.board)?.into_iter().filter(|(_, b)| b.state().norm_sqr() > floor).collect();
            if let Some(rng) = self.rng.as_mut() {
                let total: f64 = branches.iter().map(|(_, b)| b.state().norm_sqr()).sum();
                if branches.is_empty() {
                    return Err(Error::ZeroProjection("every measurement branch vanished".into()));
                }
                let mut r = rng.random::<f64>() * total;
                let mut pick = branches.len() - 1;
                for (i, (_, b)) in branches.iter().enumerate() {
                    let p = b.state().norm_sqr();
                    if r < p {
                        pick = i;
                        break;
                    }
                    r -= p;
                }
                let (m, mut b) = branches.swap_remove(pick);
                let s = b.state().clone().normalized()?;
                b.replace_state(s);
                branches = vec![(m, b)];
            }
            for (m, b) in branches {
                let mut outcomes = run.outcomes.clone();
                outcomes.push(m);
                out.push(Run { board: b, outcomes, charges: run.charges.clone() });
            }
        }
        Ok(out)
    }

    fn measure_edge(&mut self, runs: Vec<Run>, key: EdgeKey, basis: MeasureBasis) -> Result<Vec<Run>> {
        self.expand(runs, |b| {
            let q = b.qudit(key)?;
            Ok(b.with_branches(edge_branches(b.state(), q, basis, true)?, Some(key)))
        })
    }

    fn measure_site(&mut self, runs: Vec<Run>, patch: &str, kind: SiteKind, pos: Point) -> Result<Vec<Run>> {
        self.expand(runs, |b| {
            let g = b.patch(patch)?.geometry();
            let id = g.site_at(kind, pos).ok_or_else(|| Error::Procedure(format!("no {kind:?} site at {pos:?}")))?;
            let site = b.lift_site(g, g.site(id).expect("site exists"))?;
            Ok(b.with_branches(site_branches(b.state(), &site)?, None))
        })
    }

    /// Prepares a new patch in the unit state of the given kind: `|0⟩_L` for
    /// rough, `|δ_0⟩_L` (uniform over logical values) for smooth.
    pub fn unit(&mut self, mut runs: Vec<Run>, kind: SurgeryKind, name: &str, rows: usize, cols: usize, origin: Point) -> Result<Vec<Run>> {
        for run in &mut runs {
            let g = PatchGeometry::grid(run.board.d(), rows, cols, origin)?;
            let s = match kind {
                SurgeryKind::Rough => logical_basis_state(&g, 0, run.board.budget())?,
                SurgeryKind::Smooth => logical_delta_zero(&g, run.board.budget())?,
            };
            run.board.add_patch(Patch::new(name, g), &s)?;
        }
        Ok(runs)
    }

    /// Splits `name` into two patches. For a smooth split the cut is a
    /// column of horizontal edges after `at` columns; for a rough split, a row
    /// of horizontal edges after `at` rows plus one.
    pub fn split(&mut self, runs: Vec<Run>, kind: SurgeryKind, name: &str, at: usize, into: [&str; 2]) -> Result<Vec<Run>> {
        let Some(first) = runs.first() else { return Ok(runs) };
        let shape = shape_of(first.board.patch(name)?)?;
        let d = first.board.d();
        let (ox, oy) = shape.origin;
        let (r, c) = (shape.rows as i32, shape.cols as i32);
        let at_i = at as i32;
        let (seam, basis, g1, g2): (Vec<EdgeKey>, _, _, _) = match kind {
            SurgeryKind::Smooth => {
                if at == 0 || at + 2 > shape.cols {
                    return Err(Error::Procedure(format!(
                        "smooth split at column {at} of a {}-column patch leaves an empty side",
                        shape.cols
                    )));
                }
                let x = ox + at_i;
                (
                    (oy..=oy + r).map(|y| EdgeKey::H(x, y)).collect(),
                    MeasureBasis::X,
                    PatchGeometry::grid(d, shape.rows, at, (ox, oy))?,
                    PatchGeometry::grid(d, shape.rows, shape.cols - at - 1, (x + 1, oy))?,
                )
            }
            SurgeryKind::Rough => {
                if at + 2 > shape.rows {
                    return Err(Error::Procedure(format!("rough split after row {at} of a {}-row patch leaves an empty side", shape.rows)));
                }
                let ys = oy + at_i + 1;
                (
                    (ox..ox + c).map(|x| EdgeKey::H(x, ys)).collect(),
                    MeasureBasis::Z,
                    PatchGeometry::grid(d, at, shape.cols, (ox, oy))?,
                    PatchGeometry::grid(d, shape.rows - at - 2, shape.cols, (ox, ys + 1))?,
                )
            }
        };
        let mut runs = runs;
        for key in &seam {
            runs = self.measure_edge(runs, *key, basis)?;
        }
        let k = seam.len();
        for run in &mut runs {
            let m: Vec<i64> = run.outcomes[run.outcomes.len() - k..].to_vec();
            let idx = run.board.patch_index(name)?;
            run.board.regroup(&[name], vec![(idx, Patch::new(into[0], g1.clone())), (idx + 1, Patch::new(into[1], g2.clone()))])?;
            match kind {
                SurgeryKind::Smooth => {
                    let x = ox + at_i;
                    for (i, mi) in m.iter().enumerate() {
                        let y = oy + i as i32;
                        // child vertex syndromes are +m (left) and -m (right)
                        for (g, vx, j) in [(&g1, x, *mi), (&g2, x + 1, -mi)] {
                            let path = if y == oy { vertical(vx, y, oy - 1) } else { vertical(vx, y, oy + r + 1) };
                            let s = StringSpec::z_path(g, &path)?;
                            run.board.apply_string(g, &s, -j)?;
                        }
                    }
                }
                SurgeryKind::Rough => {
                    let ys = oy + at_i + 1;
                    for (i, ai) in m.iter().enumerate() {
                        let x = ox + i as i32;
                        // child face syndromes are -a (below) and +a (above)
                        for (g, cy, j) in [(&g1, ys - 1, -ai), (&g2, ys, *ai)] {
                            let s = StringSpec::x_path(g, &horizontal(cy, x, ox + c))?;
                            run.board.apply_string(g, &s, -j)?;
                        }
                    }
                }
            }
        }
        Ok(runs)
    }

    /// Merges `a` and `b` into `into`, recording one logical charge.
    ///
    /// Smooth: `b` must sit one column right of `a` with equal rows. Rough:
    /// `b` must sit two rows above `a` with equal columns.
    pub fn merge(&mut self, runs: Vec<Run>, kind: SurgeryKind, a: &str, b: &str, into: &str) -> Result<Vec<Run>> {
        let Some(first) = runs.first() else { return Ok(runs) };
        let sa = shape_of(first.board.patch(a)?)?;
        let sb = shape_of(first.board.patch(b)?)?;
        let d = first.board.d();
        let (ox, oy) = sa.origin;
        let (seam, merged, prep, sites): (Vec<EdgeKey>, _, _, Vec<Point>) = match kind {
            SurgeryKind::Smooth => {
                let x = ox + sa.cols as i32;
                if sb.rows != sa.rows || sb.origin != (x + 1, oy) {
                    return Err(Error::Procedure(format!("smooth merge needs {b:?} at {:?} with {} rows", (x + 1, oy), sa.rows)));
                }
                (
                    (oy..=oy + sa.rows as i32).map(|y| EdgeKey::H(x, y)).collect(),
                    PatchGeometry::grid(d, sa.rows, sa.cols + sb.cols + 1, (ox, oy))?,
                    basis_vector(d, MeasureBasis::X, 0),
                    (oy - 1..=oy + sa.rows as i32).map(|y| (x, y)).collect(),
                )
            }
            SurgeryKind::Rough => {
                let ys = oy + sa.rows as i32 + 1;
                if sb.cols != sa.cols || sb.origin != (ox, ys + 1) {
                    return Err(Error::Procedure(format!("rough merge needs {b:?} at {:?} with {} columns", (ox, ys + 1), sa.cols)));
                }
                (
                    (ox..ox + sa.cols as i32).map(|x| EdgeKey::H(x, ys)).collect(),
                    PatchGeometry::grid(d, sa.rows + sb.rows + 2, sa.cols, (ox, oy))?,
                    basis_vector(d, MeasureBasis::Z, 0),
                    (ox..=ox + sa.cols as i32).map(|x| (x, ys)).collect(),
                )
            }
        };
        let mut runs = runs;
        for run in &mut runs {
            for key in &seam {
                run.board.adjoin_edge(*key, &prep)?;
            }
            let idx = run.board.patch_index(a)?;
            run.board.regroup(&[a, b], vec![(idx, Patch::new(into, merged.clone()))])?;
        }
        let site_kind = match kind {
            SurgeryKind::Smooth => SiteKind::Face,
            SurgeryKind::Rough => SiteKind::Vertex,
        };
        for pos in &sites {
            runs = self.measure_site(runs, into, site_kind, *pos)?;
        }
        let k = sites.len();
        for run in &mut runs {
            let m: Vec<i64> = run.outcomes[run.outcomes.len() - k..].to_vec();
            for (pos, j) in sites.iter().zip(&m) {
                let s = match kind {
                    SurgeryKind::Smooth => StringSpec::x_path(&merged, &horizontal(pos.1, pos.0, ox - 1))?,
                    SurgeryKind::Rough => StringSpec::z_path(&merged, &vertical(pos.0, pos.1, oy - 1))?,
                };
                run.board.apply_string(&merged, &s, -j)?;
            }
            let total: i64 = m.iter().sum();
            let n = match kind {
                SurgeryKind::Smooth => total,
                SurgeryKind::Rough => -total,
            };
            run.charges.push(n.rem_euclid(d as i64));
        }
        Ok(runs)
    }

    /// Destroys a patch by measuring every edge, recording one charge: the
    /// logical value read in the computational basis (rough) or the
    /// character label read in the shift eigenbasis (smooth).
    pub fn counit(&mut self, runs: Vec<Run>, kind: SurgeryKind, name: &str) -> Result<Vec<Run>> {
        let Some(first) = runs.first() else { return Ok(runs) };
        let g = first.board.patch(name)?.geometry().clone();
        let basis = match kind {
            SurgeryKind::Rough => MeasureBasis::Z,
            SurgeryKind::Smooth => MeasureBasis::X,
        };
        let mut runs = runs;
        for key in g.edges() {
            runs = self.measure_edge(runs, *key, basis)?;
        }
        let k = g.edge_count();
        let d = g.d() as i64;
        for run in &mut runs {
            let m = &run.outcomes[run.outcomes.len() - k..];
            let n = match kind {
                SurgeryKind::Rough => -g.z_logical().crossings.iter().map(|(e, s)| s * m[*e]).sum::<i64>(),
                SurgeryKind::Smooth => g.x_logical().crossings.iter().map(|(e, s)| s * m[*e]).sum::<i64>(),
            };
            run.charges.push(n.rem_euclid(d));
            run.board.regroup(&[name], Vec::new())?;
        }
        Ok(runs)
    }

    /// Transversal Fourier transform on every edge of the patch.
    pub fn fourier(&mut self, mut runs: Vec<Run>, name: &str) -> Result<Vec<Run>> {
        for run in &mut runs {
            let f = fourier_unitary(run.board.d());
            let n = run.board.patch(name)?.geometry().edge_count();
            for e in 0..n {
                run.board.apply(name, &LocalOperator::dense(run.board.d(), vec![e], f.clone())?)?;
            }
            run.board.patch_mut(name)?.toggle_rotation();
        }
        Ok(runs)
    }

    /// Applies `X_L^power` or `Z_L^power` on a patch.
    pub fn gate(&mut self, mut runs: Vec<Run>, name: &str, gate: LogicalGate, power: i64) -> Result<Vec<Run>> {
        for run in &mut runs {
            let g = run.board.patch(name)?.geometry().clone();
            let s = match gate {
                LogicalGate::X => g.x_logical(),
                LogicalGate::Z => g.z_logical(),
            };
            run.board.apply_string(&g, s, power)?;
        }
        Ok(runs)
    }
}
