//! The Hopf algebras ℂZ_d (group basis) and ℂ(Z_d) (function basis), the
//! Fourier isomorphism between them, and the single-qudit gate matrices.
//!
//! Structure maps keep their exact scalars: the group integral is
//! `(1/d) Σ|i⟩`, the function integral is `|δ_0⟩`, and the Fourier maps are
//! `|j⟩ ↦ Σ_k q^{jk} |δ_k⟩` and `|δ_j⟩ ↦ (1/d) Σ_k q^{-jk} |k⟩`.

use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, C64, ONE, ZERO};

pub fn check_dim(d: usize) -> Result<()> {
    if (2..=crate::MAX_DIM).contains(&d) {
        Ok(())
    } else {
        Err(Error::BadDimension(d))
    }
}

/// Reduce a signed integer into `0..d`.
pub fn modd(x: i64, d: usize) -> usize {
    x.rem_euclid(d as i64) as usize
}

/// The primitive root `q = e^{2πi/d}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RootOfUnity {
    pub d: usize,
    pub q: C64,
}

impl RootOfUnity {
    pub fn new(d: usize) -> Self {
        RootOfUnity { d, q: C64::from_polar(1.0, TAU / d as f64) }
    }

    /// `q^k`, evaluated from `k mod d` so large exponents do not drift.
    pub fn pow(&self, k: i64) -> C64 {
        let r = modd(k, self.d);
        C64::from_polar(1.0, TAU * r as f64 / self.d as f64)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    /// `{|i⟩}`, the group algebra ℂZ_d.
    Group,
    /// `{|δ_i⟩}`, the function algebra ℂ(Z_d).
    Function,
}

impl Basis {
    pub fn dual(self) -> Basis {
        match self {
            Basis::Group => Basis::Function,
            Basis::Function => Basis::Group,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement {
    d: usize,
    basis: Basis,
    amps: Vec<C64>,
}

impl AlgebraElement {
    pub fn new(d: usize, basis: Basis, amps: Vec<C64>) -> Result<Self> {
        check_dim(d)?;
        if amps.len() != d {
            return Err(Error::DimensionMismatch(d, amps.len()));
        }
        Ok(AlgebraElement { d, basis, amps })
    }

    pub fn basis_vector(d: usize, basis: Basis, i: i64) -> Result<Self> {
        check_dim(d)?;
        let mut amps = vec![ZERO; d];
        amps[modd(i, d)] = ONE;
        Ok(AlgebraElement { d, basis, amps })
    }

    pub fn zero(d: usize, basis: Basis) -> Result<Self> {
        Self::new(d, basis, vec![ZERO; d])
    }

    /// `Σ_j q^{m j} |δ_j⟩` (or the same coefficients on `|j⟩`).
    pub fn character(d: usize, basis: Basis, m: i64) -> Result<Self> {
        let q = RootOfUnity::new(d);
        Self::new(d, basis, (0..d as i64).map(|j| q.pow(m * j)).collect())
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn amps(&self) -> &[C64] {
        &self.amps
    }

    pub fn scale(&self, s: C64) -> Self {
        AlgebraElement { amps: self.amps.iter().map(|a| a * s).collect(), ..self.clone() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HopfKind {
    Mult,
    Comult,
    Unit,
    Counit,
    Antipode,
    Integral,
}

/// Result of a structure map: an algebra element, an element of `A ⊗ A`
/// (`d²` amplitudes, first factor most significant), or a scalar.
#[derive(Clone, Debug, PartialEq)]
pub enum HopfValue {
    Element(AlgebraElement),
    Pair { d: usize, basis: Basis, amps: Vec<C64> },
    Scalar(C64),
}

impl HopfValue {
    pub fn element(&self) -> Option<&AlgebraElement> {
        match self {
            HopfValue::Element(e) => Some(e),
            _ => None,
        }
    }

    pub fn scalar(&self) -> Option<C64> {
        match self {
            HopfValue::Scalar(s) => Some(*s),
            _ => None,
        }
    }
}

fn expect_args(op: &'static str, args: &[AlgebraElement], n: usize) -> Result<()> {
    if args.len() != n {
        return Err(Error::Arity { op, expected: n, got: args.len() });
    }
    Ok(())
}

/// Apply one Hopf structure map by linear extension of its basis rule.
///
/// `mult` takes two elements and multiplies `a ⊗ b`; `comult` returns a
/// [`HopfValue::Pair`]; `unit` and `integral` take no arguments.
pub fn hopf_op(kind: HopfKind, basis: Basis, d: usize, args: &[AlgebraElement]) -> Result<HopfValue> {
    check_dim(d)?;
    for a in args {
        if a.d != d {
            return Err(Error::DimensionMismatch(d, a.d));
        }
        if a.basis != basis {
            return Err(Error::BasisMismatch { expected: basis, got: a.basis });
        }
    }
    let di = d as i64;
    match kind {
        HopfKind::Mult => {
            expect_args("mult", args, 2)?;
            let (a, b) = (&args[0].amps, &args[1].amps);
            let mut out = vec![ZERO; d];
            for i in 0..d {
                for j in 0..d {
                    let c = a[i] * b[j];
                    match basis {
                        Basis::Group => out[(i + j) % d] += c,
                        Basis::Function if i == j => out[i] += c,
                        Basis::Function => {}
                    }
                }
            }
            Ok(HopfValue::Element(AlgebraElement::new(d, basis, out)?))
        }
        HopfKind::Comult => {
            expect_args("comult", args, 1)?;
            let a = &args[0].amps;
            let mut out = vec![ZERO; d * d];
            for (i, c) in a.iter().enumerate() {
                match basis {
                    Basis::Group => out[i * d + i] += c,
                    Basis::Function => {
                        for h in 0..d {
                            out[h * d + modd(i as i64 - h as i64, d)] += c;
                        }
                    }
                }
            }
            Ok(HopfValue::Pair { d, basis, amps: out })
        }
        HopfKind::Unit => {
            expect_args("unit", args, 0)?;
            let amps = match basis {
                Basis::Group => {
                    let mut v = vec![ZERO; d];
                    v[0] = ONE;
                    v
                }
                Basis::Function => vec![ONE; d],
            };
            Ok(HopfValue::Element(AlgebraElement::new(d, basis, amps)?))
        }
        HopfKind::Counit => {
            expect_args("counit", args, 1)?;
            let a = &args[0].amps;
            let s = match basis {
                Basis::Group => a.iter().sum(),
                Basis::Function => a[0],
            };
            Ok(HopfValue::Scalar(s))
        }
        HopfKind::Antipode => {
            expect_args("antipode", args, 1)?;
            let a = &args[0].amps;
            let out = (0..di).map(|i| a[modd(-i, d)]).collect();
            Ok(HopfValue::Element(AlgebraElement::new(d, basis, out)?))
        }
        HopfKind::Integral => {
            expect_args("integral", args, 0)?;
            let amps = match basis {
                Basis::Group => vec![C64::new(1.0 / d as f64, 0.0); d],
                Basis::Function => {
                    let mut v = vec![ZERO; d];
                    v[0] = ONE;
                    v
                }
            };
            Ok(HopfValue::Element(AlgebraElement::new(d, basis, amps)?))
        }
    }
}

/// The structure map as a matrix (columns indexed by the domain basis,
/// tensor indices most significant first). Built column-by-column through
/// [`hopf_op`] so the matrix and the element-level rule cannot diverge.
pub fn structure_matrix(kind: HopfKind, basis: Basis, d: usize) -> Result<Matrix> {
    let e = |i: usize| AlgebraElement::basis_vector(d, basis, i as i64);
    let to_col = |v: HopfValue| -> Vec<C64> {
        match v {
            HopfValue::Element(x) => x.amps,
            HopfValue::Pair { amps, .. } => amps,
            HopfValue::Scalar(s) => vec![s],
        }
    };
    let cols: Vec<Vec<C64>> = match kind {
        HopfKind::Mult => {
            let mut cols = Vec::with_capacity(d * d);
            for i in 0..d {
                for j in 0..d {
                    cols.push(to_col(hopf_op(kind, basis, d, &[e(i)?, e(j)?])?));
                }
            }
            cols
        }
        HopfKind::Unit | HopfKind::Integral => vec![to_col(hopf_op(kind, basis, d, &[])?)],
        _ => (0..d).map(|i| Ok(to_col(hopf_op(kind, basis, d, &[e(i)?])?))).collect::<Result<_>>()?,
    };
    let rows = cols[0].len();
    Ok(Matrix::from_fn(rows, cols.len(), |r, c| cols[c][r]))
}

/// The Fourier isomorphism; the output basis tag is the dual of the input's.
pub fn fourier(x: &AlgebraElement) -> AlgebraElement {
    let d = x.d;
    let q = RootOfUnity::new(d);
    let mut out = vec![ZERO; d];
    for (j, a) in x.amps.iter().enumerate() {
        for (k, o) in out.iter_mut().enumerate() {
            match x.basis {
                Basis::Group => *o += a * q.pow((j * k) as i64),
                Basis::Function => *o += a * q.pow(-((j * k) as i64)) / d as f64,
            }
        }
    }
    AlgebraElement { d, basis: x.basis.dual(), amps: out }
}

/// Matrix of [`fourier`] acting on elements tagged `from`.
pub fn fourier_matrix(d: usize, from: Basis) -> Result<Matrix> {
    let cols = (0..d).map(|j| Ok(fourier(&AlgebraElement::basis_vector(d, from, j as i64)?).amps)).collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_fn(d, d, |r, c| cols[c][r]))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GateKind {
    /// `X^l |i⟩ = |i+l⟩`
    X(i64),
    /// `Z^m |i⟩ = q^{mi} |i⟩`
    Z(i64),
    /// `H = Σ_{j,k} q^{-jk} |k⟩⟨j|` (unnormalized)
    H,
    /// `H²|i⟩ = d |−i⟩`
    HSquared,
    /// `|i⟩ ↦ |−i⟩`
    S,
    /// `|i⟩⊗|j⟩ ↦ |i⟩⊗|i+j⟩`
    CX,
    Custom,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GateMatrix {
    pub d: usize,
    pub kind: GateKind,
    pub entries: Matrix,
    /// Factor that makes `entries` unitary (`1/√d` for `H`).
    pub normalization: f64,
}

impl GateMatrix {
    pub fn unitary(&self) -> Matrix {
        self.entries.map(|x| x * self.normalization)
    }

    pub fn custom(d: usize, entries: Matrix) -> Self {
        GateMatrix { d, kind: GateKind::Custom, entries, normalization: 1.0 }
    }
}

pub fn gate(kind: GateKind, d: usize) -> Result<GateMatrix> {
    check_dim(d)?;
    let q = RootOfUnity::new(d);
    let di = d as i64;
    let mut normalization = 1.0;
    let entries = match &kind {
        GateKind::X(l) => Matrix::from_fn(d, d, |r, c| if r == modd(c as i64 + l, d) { ONE } else { ZERO }),
        GateKind::Z(m) => Matrix::from_fn(d, d, |r, c| if r == c { q.pow(m * c as i64) } else { ZERO }),
        GateKind::H => {
            normalization = 1.0 / (d as f64).sqrt();
            Matrix::from_fn(d, d, |k, j| q.pow(-((j * k) as i64)))
        }
        GateKind::HSquared => {
            normalization = 1.0 / d as f64;
            Matrix::from_fn(d, d, |r, c| if r == modd(-(c as i64), d) { C64::new(d as f64, 0.0) } else { ZERO })
        }
        GateKind::S => Matrix::from_fn(d, d, |r, c| if r == modd(-(c as i64), d) { ONE } else { ZERO }),
        GateKind::CX => Matrix::from_fn(d * d, d * d, |r, c| {
            let (i, j) = (c as i64 / di, c as i64 % di);
            if r as i64 == i * di + (i + j).rem_euclid(di) {
                ONE
            } else {
                ZERO
            }
        }),
        GateKind::Custom => return Err(Error::UnknownGate("custom gates are built with GateMatrix::custom".into())),
    };
    Ok(GateMatrix { d, kind, entries, normalization })
}

/// Unitary single-qudit Fourier transform `H/√d`.
pub fn fourier_unitary(d: usize) -> Matrix {
    gate(GateKind::H, d).expect("valid d").unitary()
}
