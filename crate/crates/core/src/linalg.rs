//! Small dense linear-algebra helpers shared by the algebraic checks.

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type C64 = Complex64;
pub type Matrix = DMatrix<C64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

/// Kronecker product with the first factor most significant.
pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let (ar, ac) = a.shape();
    let (br, bc) = b.shape();
    Matrix::from_fn(ar * br, ac * bc, |r, c| a[(r / br, c / bc)] * b[(r % br, c % bc)])
}

pub fn kron_all(ms: &[&Matrix]) -> Matrix {
    let mut acc = Matrix::from_element(1, 1, ONE);
    for m in ms {
        acc = kron(&acc, m);
    }
    acc
}

pub fn identity(n: usize) -> Matrix {
    Matrix::identity(n, n)
}

/// Swap of two `d`-dimensional tensor factors.
pub fn swap(d: usize) -> Matrix {
    Matrix::from_fn(d * d, d * d, |r, c| {
        let (i, j) = (c / d, c % d);
        if r == j * d + i {
            ONE
        } else {
            ZERO
        }
    })
}

pub fn max_abs_diff(a: &[C64], b: &[C64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn matrices_close(a: &Matrix, b: &Matrix, tol: f64) -> bool {
    a.shape() == b.shape() && max_abs_diff(a.as_slice(), b.as_slice()) <= tol
}

/// If `b = s * a` for a single nonzero complex `s`, returns `s`.
///
/// Both all-zero counts as proportional with `s = 1`; exactly one all-zero does not.
pub fn proportionality(a: &[C64], b: &[C64], tol: f64) -> Option<C64> {
    if a.len() != b.len() {
        return None;
    }
    let pivot = a.iter().enumerate().max_by(|x, y| x.1.norm().total_cmp(&y.1.norm())).map(|(k, _)| k);
    let amax = pivot.map(|k| a[k].norm()).unwrap_or(0.0);
    let bmax = b.iter().map(|x| x.norm()).fold(0.0, f64::max);
    if amax <= tol && bmax <= tol {
        return Some(ONE);
    }
    if amax <= tol || bmax <= tol {
        return None;
    }
    let k = pivot?;
    let s = b[k] / a[k];
    let ok = a.iter().zip(b).all(|(x, y)| (x * s - y).norm() <= tol * (1.0 + s.norm()));
    ok.then_some(s)
}

pub fn matrices_proportional(a: &Matrix, b: &Matrix, tol: f64) -> Option<C64> {
    if a.shape() != b.shape() {
        return None;
    }
    proportionality(a.as_slice(), b.as_slice(), tol)
}

/// Numerical rank via singular values.
pub fn rank(m: &Matrix, tol: f64) -> usize {
    m.clone().svd(false, false).singular_values.iter().filter(|s| **s > tol).count()
}

pub fn inner(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn norm(a: &[C64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Digits of `index` in base `d`, most significant first.
pub fn digits_be(mut index: usize, d: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = index % d;
        index /= d;
    }
    out
}

pub fn index_be(digits: &[usize], d: usize) -> usize {
    digits.iter().fold(0, |acc, x| acc * d + x)
}
