use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::board::{Board, Patch};
use super::ops::{Executor, Mode, Run};
use crate::error::{Error, Result};
use crate::lattice::{PatchGeometry, Point};
use crate::linalg::{digits_be, matrices_proportional, Matrix, C64, ZERO};
use crate::sim::PureState;

/// A rectangular input patch of a procedure.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PatchSpec {
    pub name: String,
    pub rows: usize,
    pub cols: usize,
    #[serde(default)]
    pub origin: Point,
}

impl PatchSpec {
    pub fn new(name: &str, rows: usize, cols: usize, origin: Point) -> Self {
        PatchSpec { name: name.to_string(), rows, cols, origin }
    }
}

/// Logical maps induced by a procedure.
///
/// Rows index the output logical basis and columns the input logical basis,
/// both as tensor products with the first patch most significant.
#[derive(Clone, Debug)]
pub struct LogicalMaps {
    pub d: usize,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    /// One matrix per full record of raw outcomes.
    pub fine: BTreeMap<Vec<i64>, Matrix>,
    /// One Kraus operator per tuple of logical charges.
    pub kraus: BTreeMap<Vec<i64>, Matrix>,
    /// Largest squared norm found outside the output logical space.
    pub max_leakage: f64,
}

impl LogicalMaps {
    /// `Σ_n K_n† K_n`.
    pub fn completeness(&self) -> Matrix {
        let dim = self.d.pow(self.inputs.len() as u32);
        self.kraus.values().fold(Matrix::zeros(dim, dim), |acc, k| acc + k.adjoint() * k)
    }

    /// Kraus operator for the all-zero charge record.
    pub fn zero_branch(&self) -> Option<&Matrix> {
        self.kraus.iter().find(|(n, _)| n.iter().all(|x| *x == 0)).map(|(_, k)| k)
    }
}

fn start_board(d: usize, budget: usize, inputs: &[PatchSpec], digits: &[usize]) -> Result<Board> {
    let mut board = Board::new(d, budget)?;
    for (p, k) in inputs.iter().zip(digits) {
        let g = PatchGeometry::grid(d, p.rows, p.cols, p.origin)?;
        board.add_logical(Patch::new(p.name.clone(), g), *k as i64)?;
    }
    Ok(board)
}

fn output_names(run: &Run, outputs: Option<&[String]>) -> Vec<String> {
    match outputs {
        Some(o) => o.to_vec(),
        None => run.board.patches().iter().map(|p| p.name.clone()).collect(),
    }
}

/// Coefficients of a branch state in the output logical basis, plus the
/// squared norm left over.
fn project(run: &Run, names: &[String]) -> Result<(Vec<C64>, f64)> {
    let d = run.board.d();
    let dim = d.pow(names.len() as u32);
    let mut coeffs = Vec::with_capacity(dim);
    for row in 0..dim {
        let digits = digits_be(row, d, names.len());
        let basis = run.board.logical_product(names, &digits)?;
        coeffs.push(basis.overlap(run.board.state())?);
    }
    let inside: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum();
    Ok((coeffs, (run.board.state().norm_sqr() - inside).max(0.0)))
}

/// Runs `procedure` on every logical basis input and assembles the induced
/// maps, per raw outcome record and per charge record.
///
/// Records sharing a charge record must give proportional maps; their Kraus
/// operator is the common direction scaled to the summed weight.
pub fn extract_logical_map<F>(
    d: usize,
    inputs: &[PatchSpec],
    outputs: Option<&[String]>,
    budget: usize,
    tol: f64,
    procedure: F,
) -> Result<LogicalMaps>
where
    F: Fn(&mut Executor, Vec<Run>) -> Result<Vec<Run>>,
{
    let cols = d.pow(inputs.len() as u32);
    let mut fine: BTreeMap<Vec<i64>, Matrix> = BTreeMap::new();
    let mut charges: BTreeMap<Vec<i64>, Vec<i64>> = BTreeMap::new();
    let mut out_names: Option<Vec<String>> = None;
    let mut max_leakage: f64 = 0.0;
    for col in 0..cols {
        let digits = digits_be(col, d, inputs.len());
        let board = start_board(d, budget, inputs, &digits)?;
        let mut exec = Executor::new(Mode::Enumerate, 0);
        let runs = procedure(&mut exec, vec![Run::new(board)])?;
        for run in runs {
            let names = output_names(&run, outputs);
            match &out_names {
                None => out_names = Some(names.clone()),
                Some(prev) if *prev != names => {
                    return Err(Error::Procedure(format!("branches end with different patches: {prev:?} vs {names:?}")));
                }
                _ => {}
            }
            let (coeffs, leak) = project(&run, &names)?;
            max_leakage = max_leakage.max(leak);
            if leak > tol {
                return Err(Error::Leakage { leakage: leak, tol });
            }
            if let Some(prev) = charges.insert(run.outcomes.clone(), run.charges.clone()) {
                if prev != run.charges {
                    return Err(Error::Procedure(format!("outcomes {:?} gave two charge records", run.outcomes)));
                }
            }
            let rows = coeffs.len();
            let m = fine.entry(run.outcomes.clone()).or_insert_with(|| Matrix::from_element(rows, cols, ZERO));
            for (r, c) in coeffs.into_iter().enumerate() {
                m[(r, col)] = c;
            }
        }
    }
    let outputs = out_names.unwrap_or_default();
    let mut groups: BTreeMap<Vec<i64>, Vec<&Matrix>> = BTreeMap::new();
    for (o, m) in &fine {
        groups.entry(charges[o].clone()).or_default().push(m);
    }
    let mut kraus = BTreeMap::new();
    for (n, ms) in groups {
        let reference = ms.iter().max_by(|a, b| a.norm().total_cmp(&b.norm())).expect("nonempty group");
        let weight: f64 = ms.iter().map(|m| m.norm_squared()).sum();
        for m in &ms {
            if matrices_proportional(reference, m, tol).is_none() {
                return Err(Error::Procedure(format!("outcomes with charges {n:?} induce inequivalent maps")));
            }
        }
        let k = reference.map(|x| x * (weight.sqrt() / reference.norm()));
        kraus.insert(n, k);
    }
    Ok(LogicalMaps { d, inputs: inputs.iter().map(|p| p.name.clone()).collect(), outputs, fine, kraus, max_leakage })
}

/// One sampled run per logical basis input.
#[derive(Clone, Debug)]
pub struct Shot {
    pub input: Vec<usize>,
    pub outcomes: Vec<i64>,
    pub charges: Vec<i64>,
    /// Normalized output coefficients in the logical basis.
    pub output: Vec<C64>,
    pub leakage: f64,
}

/// Sample-mode counterpart of [`extract_logical_map`].
pub fn sample_logical_map<F>(
    d: usize,
    inputs: &[PatchSpec],
    outputs: Option<&[String]>,
    budget: usize,
    seed: u64,
    procedure: F,
) -> Result<Vec<Shot>>
where
    F: Fn(&mut Executor, Vec<Run>) -> Result<Vec<Run>>,
{
    let cols = d.pow(inputs.len() as u32);
    let mut exec = Executor::new(Mode::Sample, seed);
    let mut shots = Vec::with_capacity(cols);
    for col in 0..cols {
        let digits = digits_be(col, d, inputs.len());
        let board = start_board(d, budget, inputs, &digits)?;
        let runs = procedure(&mut exec, vec![Run::new(board)])?;
        let run = runs.into_iter().next().ok_or_else(|| Error::Procedure("procedure produced no branch".into()))?;
        let names = output_names(&run, outputs);
        let (coeffs, leakage) = project(&run, &names)?;
        shots.push(Shot { input: digits, outcomes: run.outcomes, charges: run.charges, output: coeffs, leakage });
    }
    Ok(shots)
}

/// Final board state of one sampled run on the all-zero logical input.
pub fn sample_final_state<F>(d: usize, inputs: &[PatchSpec], budget: usize, seed: u64, procedure: F) -> Result<PureState>
where
    F: Fn(&mut Executor, Vec<Run>) -> Result<Vec<Run>>,
{
    let board = start_board(d, budget, inputs, &vec![0; inputs.len()])?;
    let mut exec = Executor::new(Mode::Sample, seed);
    let run = procedure(&mut exec, vec![Run::new(board)])?
        .into_iter()
        .next()
        .ok_or_else(|| Error::Procedure("procedure produced no branch".into()))?;
    Ok(run.board.state().clone())
}
