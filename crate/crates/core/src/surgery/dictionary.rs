use serde::{Deserialize, Serialize};

use super::extract::PatchSpec;
use super::ops::{Executor, Run, SurgeryKind};
use crate::algebra::{modd, RootOfUnity};
use crate::error::Result;
use crate::linalg::{Matrix, C64, ONE, ZERO};

/// The nine surgery primitives with a logical dictionary entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Primitive {
    SmoothSplit,
    RoughSplit,
    SmoothMerge,
    RoughMerge,
    SmoothUnit,
    RoughUnit,
    SmoothCounit,
    RoughCounit,
    Rotation,
}

impl Primitive {
    pub const ALL: [Primitive; 9] = [
        Primitive::SmoothSplit,
        Primitive::RoughSplit,
        Primitive::SmoothMerge,
        Primitive::RoughMerge,
        Primitive::SmoothUnit,
        Primitive::RoughUnit,
        Primitive::SmoothCounit,
        Primitive::RoughCounit,
        Primitive::Rotation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Primitive::SmoothSplit => "smooth split",
            Primitive::RoughSplit => "rough split",
            Primitive::SmoothMerge => "smooth merge",
            Primitive::RoughMerge => "rough merge",
            Primitive::SmoothUnit => "smooth unit",
            Primitive::RoughUnit => "rough unit",
            Primitive::SmoothCounit => "smooth counit",
            Primitive::RoughCounit => "rough counit",
            Primitive::Rotation => "rotation",
        }
    }

    /// True when the primitive records a logical charge.
    pub fn has_charge(self) -> bool {
        matches!(self, Primitive::SmoothMerge | Primitive::RoughMerge | Primitive::SmoothCounit | Primitive::RoughCounit)
    }

    /// Smallest input patches on which the primitive runs.
    pub fn inputs(self) -> Vec<PatchSpec> {
        match self {
            Primitive::SmoothSplit => vec![PatchSpec::new("a", 0, 3, (0, 0))],
            Primitive::RoughSplit => vec![PatchSpec::new("a", 2, 1, (0, 0))],
            Primitive::SmoothMerge => vec![PatchSpec::new("a", 0, 1, (0, 0)), PatchSpec::new("b", 0, 1, (2, 0))],
            Primitive::RoughMerge => vec![PatchSpec::new("a", 0, 1, (0, 0)), PatchSpec::new("b", 0, 1, (0, 2))],
            Primitive::SmoothUnit | Primitive::RoughUnit => Vec::new(),
            Primitive::SmoothCounit | Primitive::RoughCounit => vec![PatchSpec::new("a", 0, 1, (0, 0))],
            Primitive::Rotation => vec![PatchSpec::new("a", 1, 1, (0, 0))],
        }
    }

    pub fn run(self, exec: &mut Executor, runs: Vec<Run>) -> Result<Vec<Run>> {
        use SurgeryKind::{Rough, Smooth};
        match self {
            Primitive::SmoothSplit => exec.split(runs, Smooth, "a", 1, ["a", "b"]),
            Primitive::RoughSplit => exec.split(runs, Rough, "a", 0, ["a", "b"]),
            Primitive::SmoothMerge => exec.merge(runs, Smooth, "a", "b", "a"),
            Primitive::RoughMerge => exec.merge(runs, Rough, "a", "b", "a"),
            Primitive::SmoothUnit => exec.unit(runs, Smooth, "a", 0, 1, (0, 0)),
            Primitive::RoughUnit => exec.unit(runs, Rough, "a", 0, 1, (0, 0)),
            Primitive::SmoothCounit => exec.counit(runs, Smooth, "a"),
            Primitive::RoughCounit => exec.counit(runs, Rough, "a"),
            Primitive::Rotation => exec.fourier(runs, "a"),
        }
    }

    /// The logical map for charge `n` (ignored by charge-free primitives), in
    /// the group basis, up to normalization.
    pub fn target(self, d: usize, n: i64) -> Matrix {
        let q = RootOfUnity::new(d);
        let delta = |a: i64, b: i64| if modd(a - b, d) == 0 { ONE } else { ZERO };
        let two = |i: usize| ((i / d) as i64, (i % d) as i64);
        match self {
            Primitive::SmoothSplit => Matrix::from_fn(d * d, d, |r, c| {
                let (a, b) = two(r);
                delta(a, c as i64) * delta(b, c as i64)
            }),
            Primitive::RoughSplit => Matrix::from_fn(d * d, d, |r, c| {
                let (a, b) = two(r);
                delta(a + b, c as i64)
            }),
            Primitive::SmoothMerge => Matrix::from_fn(d, d * d, |r, c| {
                let (i, j) = two(c);
                delta(i + n, j) * delta(r as i64, j)
            }),
            Primitive::RoughMerge => Matrix::from_fn(d, d * d, |r, c| {
                let (i, j) = two(c);
                q.pow(i * n) * delta(r as i64, i + j)
            }),
            Primitive::SmoothUnit => Matrix::from_element(d, 1, ONE),
            Primitive::RoughUnit => Matrix::from_fn(d, 1, |r, _| delta(r as i64, 0)),
            Primitive::SmoothCounit => Matrix::from_fn(1, d, |_, c| q.pow(c as i64 * n)),
            Primitive::RoughCounit => Matrix::from_fn(1, d, |_, c| delta(c as i64, n)),
            Primitive::Rotation => Matrix::from_fn(d, d, |r, c| q.pow(-((r * c) as i64))),
        }
    }
}

/// Group-basis vector `Σ_k q^{-ik} |k⟩` (the logical `|δ_i⟩`), unnormalized.
pub fn delta_vector(d: usize, i: i64) -> Vec<C64> {
    let q = RootOfUnity::new(d);
    (0..d).map(|k| q.pow(-i * k as i64)).collect()
}
