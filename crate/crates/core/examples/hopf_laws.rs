//! Structure maps of ℂZ_d and ℂ(Z_d), and the Fourier map between them.
use qudit_surgery::algebra::*;
use qudit_surgery::linalg::C64;

fn show(amps: &[C64]) -> String {
    let terms: Vec<String> = amps.iter().enumerate().filter(|(_, a)| a.norm() > 1e-12).map(|(i, a)| format!("{a:.3}·[{i}]")).collect();
    terms.join(" + ")
}

fn main() -> qudit_surgery::Result<()> {
    let d = 3;
    let g = |i| AlgebraElement::basis_vector(d, Basis::Group, i);
    let prod = hopf_op(HopfKind::Mult, Basis::Group, d, &[g(1)?, g(2)?])?;
    println!("|1>·|2> = {}", show(prod.element().unwrap().amps()));

    // pair index a·d + b stands for δ_a ⊗ δ_b
    if let HopfValue::Pair { amps, .. } =
        hopf_op(HopfKind::Comult, Basis::Function, d, &[AlgebraElement::basis_vector(d, Basis::Function, 1)?])?
    {
        println!("Δ(δ_1) = {}", show(&amps));
    }

    let s = structure_matrix(HopfKind::Antipode, Basis::Group, d)?;
    println!("antipode:{:.0}", s.map(|z| z.re));

    let chi = fourier(&g(1)?);
    println!("F|1> in the {:?} basis: {}", chi.basis(), show(chi.amps()));
    Ok(())
}
