use qudit_surgery::algebra::{gate, modd, GateKind, RootOfUnity};
use qudit_surgery::lattice::{build_patch, PatchGeometry, DEFAULT_BUDGET};
use qudit_surgery::linalg::{matrices_close, matrices_proportional, Matrix, C64, ONE, ZERO};
use qudit_surgery::sim::{logical_basis_state, logical_delta};
use qudit_surgery::surgery::*;
use qudit_surgery::Error;

const TOL: f64 = 1e-9;

fn maps(p: Primitive, d: usize) -> LogicalMaps {
    extract_logical_map(d, &p.inputs(), None, DEFAULT_BUDGET, TOL, |e, r| p.run(e, r)).unwrap()
}

fn proportional(a: &Matrix, b: &Matrix) -> bool {
    matrices_proportional(a, b, TOL).is_some_and(|s| s.norm() > TOL)
}

#[test]
fn delta_states_are_fourier_combinations() {
    for d in [2, 3] {
        let q = RootOfUnity::new(d);
        for (rows, cols) in [(0, 1), (1, 1)] {
            let g = build_patch(d, rows, cols).unwrap();
            let basis: Vec<_> = (0..d as i64).map(|k| logical_basis_state(&g, k, DEFAULT_BUDGET).unwrap()).collect();
            for i in 0..d as i64 {
                let delta = logical_delta(&g, i, DEFAULT_BUDGET).unwrap();
                let coeffs: Vec<C64> = basis.iter().map(|b| b.overlap(&delta).unwrap()).collect();
                let want: Vec<C64> = (0..d as i64).map(|k| q.pow(-i * k) / (d as f64).sqrt()).collect();
                let s = qudit_surgery::linalg::proportionality(&want, &coeffs, TOL).expect("proportional");
                assert!((s.norm() - 1.0).abs() < TOL, "d={d} {rows}x{cols} i={i}");
            }
        }
    }
}

#[test]
fn smooth_merge_kraus_family() {
    for d in [2, 3] {
        let m = maps(Primitive::SmoothMerge, d);
        assert_eq!(m.kraus.len(), d);
        for (n, k) in &m.kraus {
            let n = n[0];
            // √d·K_n |i,j⟩ = δ_{i+n,j} |j⟩ up to the branch weight 1/√d
            let want = Matrix::from_fn(d, d * d, |r, c| {
                let (i, j) = ((c / d) as i64, (c % d) as i64);
                if modd(i + n - j, d) == 0 && r as i64 == j {
                    ONE
                } else {
                    ZERO
                }
            });
            assert!(matrices_close(k, &want, TOL), "d={d} n={n}");
        }
        assert!(matrices_close(&m.completeness(), &Matrix::identity(d * d, d * d), TOL));
    }
}

#[test]
fn rough_merge_kraus_family() {
    for d in [2, 3] {
        let q = RootOfUnity::new(d);
        let m = maps(Primitive::RoughMerge, d);
        assert_eq!(m.kraus.len(), d);
        for (n, k) in &m.kraus {
            let n = n[0];
            let want = Matrix::from_fn(d, d * d, |r, c| {
                let (i, j) = ((c / d) as i64, (c % d) as i64);
                if modd(i + j - r as i64, d) == 0 {
                    q.pow(i * n) / (d as f64).sqrt()
                } else {
                    ZERO
                }
            });
            assert!(matrices_close(k, &want, TOL), "d={d} n={n}");
        }
        assert!(matrices_close(&m.completeness(), &Matrix::identity(d * d, d * d), TOL));
    }
}

#[test]
fn counit_branches() {
    for d in [2, 3] {
        let q = RootOfUnity::new(d);
        for (n, k) in &maps(Primitive::RoughCounit, d).kraus {
            let want = Matrix::from_fn(1, d, |_, i| if modd(i as i64 - n[0], d) == 0 { ONE } else { ZERO });
            assert!(matrices_close(k, &want, TOL));
        }
        for (n, k) in &maps(Primitive::SmoothCounit, d).kraus {
            let want = Matrix::from_fn(1, d, |_, i| q.pow(i as i64 * n[0]) / (d as f64).sqrt());
            assert!(matrices_close(k, &want, TOL));
        }
    }
}

#[test]
fn splits_copy_and_spread() {
    for d in [2, 3] {
        let smooth = maps(Primitive::SmoothSplit, d);
        assert_eq!(smooth.outputs, ["a", "b"]);
        assert!(proportional(smooth.zero_branch().unwrap(), &Primitive::SmoothSplit.target(d, 0)));
        let rough = maps(Primitive::RoughSplit, d);
        assert!(proportional(rough.zero_branch().unwrap(), &Primitive::RoughSplit.target(d, 0)));
    }
}

fn fourier_maps(d: usize, times: usize) -> LogicalMaps {
    let inputs = [PatchSpec::new("a", 1, 1, (0, 0))];
    extract_logical_map(d, &inputs, None, DEFAULT_BUDGET, TOL, |e, mut r| {
        for _ in 0..times {
            r = e.fourier(r, "a")?;
        }
        Ok(r)
    })
    .unwrap()
}

#[test]
fn transversal_fourier_and_antipode() {
    for d in [2, 3, 5] {
        let h = fourier_maps(d, 1);
        let k = h.zero_branch().unwrap();
        assert!(matrices_close(k, &gate(GateKind::H, d).unwrap().unitary(), TOL), "d={d}");
        let s = fourier_maps(d, 2);
        assert!(matrices_close(s.zero_branch().unwrap(), &gate(GateKind::S, d).unwrap().entries, TOL));
    }
}

#[test]
fn rotated_patch_is_still_a_patch() {
    let g = build_patch(3, 1, 1).unwrap();
    let r: PatchGeometry = g.rotated();
    let report = qudit_surgery::lattice::validate_patch(&r, 1e-12, DEFAULT_BUDGET).unwrap();
    assert!(report.all_passed());
    assert_eq!(r.rotated().x_logical().crossings, g.x_logical().crossings);
}

#[test]
fn cx_script_extracts_cx() {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/data/cx.json")).unwrap();
    let s = Script::from_json(&text).unwrap();
    let m = s.extract(2, DEFAULT_BUDGET, TOL).unwrap();
    let cx = gate(GateKind::CX, 2).unwrap().entries;
    for k in m.kraus.values() {
        assert!(proportional(k, &cx));
    }
    assert!(matrices_close(&m.completeness(), &Matrix::identity(4, 4), TOL));
    assert!(matches!(s.extract(3, DEFAULT_BUDGET, TOL), Err(Error::Budget { .. })));
}

#[test]
fn gates_and_bad_scripts() {
    let d = 3;
    let inputs = [PatchSpec::new("a", 0, 1, (0, 0))];
    let x = extract_logical_map(d, &inputs, None, DEFAULT_BUDGET, TOL, |e, r| e.gate(r, "a", LogicalGate::X, 1)).unwrap();
    assert!(matrices_close(x.zero_branch().unwrap(), &gate(GateKind::X(1), d).unwrap().entries, TOL));
    let z = extract_logical_map(d, &inputs, None, DEFAULT_BUDGET, TOL, |e, r| e.gate(r, "a", LogicalGate::Z, 1)).unwrap();
    assert!(matrices_close(z.zero_branch().unwrap(), &gate(GateKind::Z(-1), d).unwrap().entries, TOL));
    let missing = r#"{"inputs": [{"name": "a", "rows": 0, "cols": 1}], "steps": [{"op": "fourier", "patch": "b"}]}"#;
    assert!(Script::from_json(missing).unwrap().extract(d, DEFAULT_BUDGET, TOL).is_err());
}

#[test]
fn sampled_shots_are_normalized() {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/data/smooth_merge.json")).unwrap();
    let shots = Script::from_json(&text).unwrap().sample(2, DEFAULT_BUDGET, 3).unwrap();
    assert_eq!(shots.len(), 4);
    for s in shots {
        let norm: f64 = s.output.iter().map(|a| a.norm_sqr()).sum();
        assert!((norm - 1.0).abs() < TOL);
        let j = s.output.iter().position(|a| a.norm() > 0.5).unwrap();
        // the merged patch holds the second input's value
        assert_eq!(j, s.input[1]);
    }
}
