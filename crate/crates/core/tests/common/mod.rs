#![allow(dead_code)]

use qudit_surgery::algebra::{fourier_matrix, structure_matrix, Basis, HopfKind};
use qudit_surgery::linalg::{identity, kron, swap, Matrix};

fn diff(a: &Matrix, b: &Matrix) -> f64 {
    assert_eq!(a.shape(), b.shape());
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Worst violation over the bialgebra, antipode, integral and Fourier laws,
/// each written as a matrix identity on the structure maps.
pub fn hopf_law_error(d: usize) -> f64 {
    let mut worst: f64 = 0.0;
    let i = identity(d);
    for basis in [Basis::Group, Basis::Function] {
        let s = |k| structure_matrix(k, basis, d).unwrap();
        let (m, c, u, e, a, l) =
            (s(HopfKind::Mult), s(HopfKind::Comult), s(HopfKind::Unit), s(HopfKind::Counit), s(HopfKind::Antipode), s(HopfKind::Integral));
        let laws = [
            (&m * kron(&m, &i), &m * kron(&i, &m)),
            (kron(&c, &i) * &c, kron(&i, &c) * &c),
            (&m * kron(&u, &i), i.clone()),
            (&m * kron(&i, &u), i.clone()),
            (kron(&e, &i) * &c, i.clone()),
            (kron(&i, &e) * &c, i.clone()),
            (&m * kron(&a, &i) * &c, &u * &e),
            (&m * kron(&i, &a) * &c, &u * &e),
            (&c * &m, kron(&m, &m) * kron_all3(&i, &swap(d), &i) * kron(&c, &c)),
            (&e * &m, kron(&e, &e)),
            (&c * &u, kron(&u, &u)),
            (&a * &a, i.clone()),
            (&m * kron(&l, &i), &l * &e),
            (&m * kron(&i, &l), &l * &e),
            (&e * &l, identity(1)),
        ];
        for (x, y) in &laws {
            worst = worst.max(diff(x, y));
        }
    }
    let f = fourier_matrix(d, Basis::Group).unwrap();
    let g = fourier_matrix(d, Basis::Function).unwrap();
    let mg = structure_matrix(HopfKind::Mult, Basis::Group, d).unwrap();
    let mf = structure_matrix(HopfKind::Mult, Basis::Function, d).unwrap();
    worst = worst.max(diff(&(&f * &mg), &(&mf * kron(&f, &f))));
    worst = worst.max(diff(&(&g * &f), &i));
    worst.max(diff(&(&f * &g), &i))
}

fn kron_all3(a: &Matrix, b: &Matrix, c: &Matrix) -> Matrix {
    kron(&kron(a, b), c)
}
