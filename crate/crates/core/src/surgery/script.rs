use serde::{Deserialize, Serialize};

use super::extract::{extract_logical_map, sample_final_state, sample_logical_map, LogicalMaps, PatchSpec, Shot};
use super::ops::{Executor, LogicalGate, Run, SurgeryKind};
use crate::error::{Error, Result};
use crate::lattice::Point;
use crate::sim::PureState;

fn one() -> i64 {
    1
}

/// Outcome-dependent gate applied right after a merge: `gate^{scale·n}` on
/// `patch`, with `n` the merge charge.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Correction {
    pub patch: String,
    pub gate: LogicalGate,
    #[serde(default = "one")]
    pub scale: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum Step {
    #[serde(alias = "build")]
    Unit {
        kind: SurgeryKind,
        name: String,
        rows: usize,
        cols: usize,
        #[serde(default)]
        origin: Point,
    },
    Split {
        kind: SurgeryKind,
        patch: String,
        at: usize,
        into: [String; 2],
    },
    Merge {
        kind: SurgeryKind,
        patches: [String; 2],
        into: String,
        #[serde(default)]
        correct: Vec<Correction>,
    },
    Counit {
        kind: SurgeryKind,
        patch: String,
    },
    Fourier {
        patch: String,
    },
    Gate {
        patch: String,
        gate: LogicalGate,
        #[serde(default = "one")]
        power: i64,
    },
    /// Fixes which patches form the output and in what order; must be last.
    Extract {
        patches: Vec<String>,
    },
}

/// A surgery procedure: input patches, steps and optional output order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Script {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(default)]
    pub inputs: Vec<PatchSpec>,
    pub steps: Vec<Step>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outputs: Option<Vec<String>>,
}

impl Script {
    pub fn from_json(text: &str) -> Result<Self> {
        let s: Script = serde_json::from_str(text)?;
        if let Some(i) = s.steps.iter().position(|st| matches!(st, Step::Extract { .. })) {
            if i + 1 != s.steps.len() {
                return Err(Error::Procedure("extract must be the last step".into()));
            }
        }
        Ok(s)
    }

    /// Output patch order: the extract step, else the `outputs` field.
    pub fn output_order(&self) -> Option<Vec<String>> {
        match self.steps.last() {
            Some(Step::Extract { patches }) => Some(patches.clone()),
            _ => self.outputs.clone(),
        }
    }

    /// Dimension from the script, overridden by `d` when given.
    pub fn dimension(&self, d: Option<usize>) -> Result<usize> {
        d.or(self.d).ok_or_else(|| Error::Procedure("no dimension given in the script or on the command line".into()))
    }

    pub fn run(&self, exec: &mut Executor, mut runs: Vec<Run>) -> Result<Vec<Run>> {
        for step in &self.steps {
            runs = match step {
                Step::Unit { kind, name, rows, cols, origin } => exec.unit(runs, *kind, name, *rows, *cols, *origin)?,
                Step::Split { kind, patch, at, into } => exec.split(runs, *kind, patch, *at, [&into[0], &into[1]])?,
                Step::Merge { kind, patches, into, correct } => {
                    let mut out = exec.merge(runs, *kind, &patches[0], &patches[1], into)?;
                    for c in correct {
                        let mut next = Vec::with_capacity(out.len());
                        for run in out {
                            let n = *run.charges.last().expect("merge records a charge");
                            next.extend(exec.gate(vec![run], &c.patch, c.gate, c.scale * n)?);
                        }
                        out = next;
                    }
                    out
                }
                Step::Counit { kind, patch } => exec.counit(runs, *kind, patch)?,
                Step::Fourier { patch } => exec.fourier(runs, patch)?,
                Step::Gate { patch, gate, power } => exec.gate(runs, patch, *gate, *power)?,
                Step::Extract { .. } => runs,
            };
        }
        Ok(runs)
    }

    pub fn extract(&self, d: usize, budget: usize, tol: f64) -> Result<LogicalMaps> {
        let outputs = self.output_order();
        extract_logical_map(d, &self.inputs, outputs.as_deref(), budget, tol, |e, r| self.run(e, r))
    }

    pub fn sample(&self, d: usize, budget: usize, seed: u64) -> Result<Vec<Shot>> {
        let outputs = self.output_order();
        sample_logical_map(d, &self.inputs, outputs.as_deref(), budget, seed, |e, r| self.run(e, r))
    }

    /// Board state after one sampled run on the all-zero input.
    pub fn sample_state(&self, d: usize, budget: usize, seed: u64) -> Result<PureState> {
        sample_final_state(d, &self.inputs, budget, seed, |e, r| self.run(e, r))
    }
}
