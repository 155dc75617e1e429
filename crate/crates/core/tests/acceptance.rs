//! One PASS/FAIL line per acceptance criterion (`cargo test --test acceptance`).

mod common;

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qudit_surgery::algebra::{gate, modd, GateKind, RootOfUnity};
use qudit_surgery::closure::{sqrt_x, GateGroup};
use qudit_surgery::commands::dict_verify;
use qudit_surgery::lattice::*;
use qudit_surgery::linalg::{digits_be, matrices_close, matrices_proportional, max_abs_diff, proportionality, Matrix, C64, ONE, ZERO};
use qudit_surgery::sim::*;
use qudit_surgery::surgery::*;
use qudit_surgery::zx;

const TOL: f64 = 1e-9;
const EXACT: f64 = 1e-12;
const BIG: usize = 1 << 22;

type Outcome = Result<String, String>;

fn need(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn proportional(a: &Matrix, b: &Matrix) -> bool {
    a.shape() == b.shape() && matrices_proportional(a, b, TOL).is_some_and(|s| s.norm() > TOL)
}

fn close(a: &PureState, b: &PureState, tol: f64) -> bool {
    max_abs_diff(a.amplitudes(), b.amplitudes()) < tol
}

fn apply(op: &LocalOperator, s: &PureState) -> PureState {
    s.applied(op).unwrap()
}

fn vacua(g: &PatchGeometry) -> Vec<PureState> {
    (0..g.d() as i64).map(|k| logical_basis_state(g, k, BIG).unwrap()).collect()
}

fn random_state(d: usize, n: usize, seed: u64) -> PureState {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let amps = (0..d.pow(n as u32)).map(|_| C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)).collect();
    PureState::from_amps(d, n, amps).unwrap().normalized().unwrap()
}

fn maps(d: usize, inputs: &[PatchSpec], f: impl Fn(&mut Executor, Vec<Run>) -> qudit_surgery::Result<Vec<Run>>) -> LogicalMaps {
    extract_logical_map(d, inputs, None, BIG, TOL, f).unwrap()
}

fn hopf_laws() -> Outcome {
    let worst = (2..=5).map(common::hopf_law_error).fold(0.0, f64::max);
    need(worst < EXACT, || format!("worst deviation {worst:e}"))?;
    Ok(format!("worst deviation {worst:.1e}"))
}

fn patch_validation() -> Outcome {
    let mut n = 0;
    for d in [2, 3, 5] {
        for (rows, cols) in [(0, 1), (1, 1)] {
            let g = build_patch(d, rows, cols).unwrap();
            let r = validate_patch(&g, EXACT, BIG).unwrap();
            let failed: Vec<_> = r.checks.iter().filter(|c| !c.passed).map(|c| c.name.clone()).collect();
            need(failed.is_empty(), || format!("d={d} {rows}x{cols}: {failed:?}"))?;
            need(r.vacuum_rank == Some(d as u128), || format!("d={d} {rows}x{cols}: rank {:?}", r.vacuum_rank))?;
            n += 1;
        }
    }
    Ok(format!("{n} patches, rank = d"))
}

fn fourier_basis_states() -> Outcome {
    let mut worst: f64 = 0.0;
    for d in [2, 3] {
        let q = RootOfUnity::new(d);
        let g = build_patch(d, 0, 1).unwrap();
        let basis = vacua(&g);
        for j in 0..d as i64 {
            let delta = logical_delta(&g, j, BIG).unwrap();
            let got: Vec<C64> = basis.iter().map(|b| b.overlap(&delta).unwrap()).collect();
            let want: Vec<C64> = (0..d as i64).map(|i| q.pow(-i * j) / (d as f64).sqrt()).collect();
            let s = proportionality(&want, &got, TOL).ok_or(format!("d={d} j={j}: not proportional"))?;
            worst = worst.max((s.norm() - 1.0).abs());
        }
    }
    need(worst < TOL, || format!("norm deviation {worst:e}"))?;
    Ok(format!("overlap deviation {worst:.1e}"))
}

fn string_laws() -> Outcome {
    let mut checks = 0;
    for d in [2, 3] {
        let g = build_patch(d, 1, 1).unwrap();
        let psi = random_state(d, g.edge_count(), 7);
        for s in [g.x_logical(), g.z_logical()] {
            for i in 0..d as i64 {
                for j in 0..d as i64 {
                    let twice = apply(&s.operator(d, i), &apply(&s.operator(d, j), &psi));
                    need(close(&twice, &apply(&s.operator(d, i + j), &psi), EXACT), || format!("composition d={d} {i}+{j}"))?;
                    checks += 1;
                }
            }
        }
        let first = StringSpec::x_path(&g, &[(-1, 0), (0, 0)]).unwrap();
        let second = StringSpec::x_path(&g, &[(0, 0), (1, 0)]).unwrap();
        let whole = StringSpec::x_path(&g, &[(-1, 0), (0, 0), (1, 0)]).unwrap();
        for i in 0..d as i64 {
            let parts = apply(&second.operator(d, i), &apply(&first.operator(d, i), &psi));
            need(close(&parts, &apply(&whole.operator(d, i), &psi), EXACT), || format!("concatenation d={d} i={i}"))?;
            checks += 1;
        }
        let z = StringSpec::z_path(&g, &[(0, 0), (1, 0), (1, 1), (0, 1), (0, 0)]).unwrap();
        let wide = build_patch(d, 1, 2).unwrap();
        let x = StringSpec::x_path(&wide, &[(0, -1), (1, -1), (1, 0), (0, 0), (0, -1)]).unwrap();
        for v in vacua(&wide) {
            for i in 0..d as i64 {
                need(close(&apply(&x.operator(d, i), &v), &v, EXACT), || format!("X loop d={d} i={i}"))?;
                checks += 1;
            }
        }
        let site = Site { kind: SiteKind::Face, pos: None, edges: z.crossings.clone() };
        for v in vacua(&g) {
            for m in 0..d as i64 {
                need(close(&apply(&z.operator(d, m), &v), &v, EXACT), || format!("Z loop d={d} m={m}"))?;
            }
            for h in 0..d as i64 {
                let kept = apply(&z.delta_operator(d, h).unwrap(), &v);
                let ok = if h == 0 { close(&kept, &v, EXACT) } else { kept.norm() < EXACT };
                need(ok, || format!("delta loop d={d} h={h}"))?;
                checks += 2;
            }
            let branches = site_branches(&v, &site).unwrap();
            need(branches.len() == d && branches[1..].iter().all(|b| !b.is_possible()), || format!("enumerated loop branches d={d}"))?;
        }
    }
    Ok(format!("{checks} identities, impossible branches enumerated"))
}

fn dictionary() -> Outcome {
    let mut rows = 0;
    for d in [2, 3] {
        for r in dict_verify(d, BIG, TOL, &|p, d, n| zx::dictionary_diagram(p, d, n)).unwrap() {
            need(r.ok(), || format!("d={d} {}: {r:?}", r.name))?;
            rows += 1;
        }
    }
    Ok(format!("{rows}/18 rows, every branch complete"))
}

fn ancilla_circuits() -> Outcome {
    let mut inputs = 0;
    for d in [2usize, 3] {
        for kind in [SiteKind::Vertex, SiteKind::Face] {
            let site = Site { kind, pos: None, edges: vec![(0, 1), (1, 1), (2, -1), (3, -1)] };
            for idx in 0..d.pow(4) {
                let s = PureState::basis(d, &digits_be(idx, d, 4), BIG).unwrap();
                let direct = site_branches(&s, &site).unwrap();
                let circuit = measure_site_with_ancilla(&s, &site, BIG).unwrap();
                let same = direct.len() == circuit.len()
                    && direct
                        .iter()
                        .zip(&circuit)
                        .all(|(a, b)| a.outcome == b.outcome && max_abs_diff(a.state.amplitudes(), b.state.amplitudes()) < EXACT);
                need(same, || format!("{kind:?} d={d} input {idx}"))?;
                inputs += 1;
            }
        }
    }
    Ok(format!("{inputs} basis inputs"))
}

fn outcome_bookkeeping() -> Outcome {
    let mut branches = 0;
    for d in [2, 3] {
        let q = RootOfUnity::new(d);
        let delta = |a: i64| if modd(a, d) == 0 { ONE } else { ZERO };
        for p in [Primitive::SmoothMerge, Primitive::RoughMerge, Primitive::SmoothCounit, Primitive::RoughCounit] {
            let m = maps(d, &p.inputs(), |e, r| p.run(e, r));
            need(m.kraus.len() == d, || format!("{} d={d}: {} branches", p.name(), m.kraus.len()))?;
            for (n, k) in &m.kraus {
                let n = n[0];
                let pair = |c: usize| ((c / d) as i64, (c % d) as i64);
                let want = match p {
                    Primitive::SmoothMerge => Matrix::from_fn(d, d * d, |r, c| {
                        let (i, j) = pair(c);
                        delta(i + n - j) * delta(r as i64 - j)
                    }),
                    Primitive::RoughMerge => Matrix::from_fn(d, d * d, |r, c| {
                        let (i, j) = pair(c);
                        q.pow(i * n) * delta(i + j - r as i64)
                    }),
                    Primitive::SmoothCounit => Matrix::from_fn(1, d, |_, j| q.pow(n * j as i64)),
                    _ => Matrix::from_fn(1, d, |_, j| delta(j as i64 - n)),
                };
                need(proportional(k, &want), || format!("{} d={d} n={n}", p.name()))?;
                branches += 1;
            }
            let dim = m.completeness().nrows();
            need(matrices_close(&m.completeness(), &Matrix::identity(dim, dim), TOL), || format!("{} d={d} completeness", p.name()))?;
        }
    }
    Ok(format!("{branches} branches"))
}

fn transversal_fourier() -> Outcome {
    for d in [2, 3, 5] {
        let inputs = [PatchSpec::new("a", 1, 1, (0, 0))];
        let once = maps(d, &inputs, |e, r| e.fourier(r, "a"));
        let twice = maps(d, &inputs, |e, r| {
            let r = e.fourier(r, "a")?;
            e.fourier(r, "a")
        });
        let h = gate(GateKind::H, d).unwrap().unitary();
        let s = gate(GateKind::S, d).unwrap().entries;
        need(matrices_close(once.zero_branch().unwrap(), &h, TOL), || format!("H_L at d={d}"))?;
        need(matrices_close(twice.zero_branch().unwrap(), &s, TOL), || format!("H_L^2 at d={d}"))?;
    }
    Ok("d = 2, 3, 5".into())
}

fn cx_equivalence() -> Outcome {
    for d in [2, 3, 5] {
        let cx = gate(GateKind::CX, d).unwrap().entries;
        for (i, g) in zx::cx_diagrams(d).unwrap().iter().enumerate() {
            need(proportional(&zx::evaluate(g).unwrap(), &cx), || format!("diagram {i} at d={d}"))?;
        }
        let mut prev = zx::evaluate(&zx::cx_diagrams(d).unwrap()[0]).unwrap();
        for (r, g) in zx::cx_rewrite_chain(d).unwrap() {
            let next = zx::evaluate(&g).unwrap();
            need(matrices_close(&prev, &next, TOL), || format!("{r:?} at d={d}"))?;
            prev = next;
        }
    }
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/data/cx.json")).unwrap();
    let m = Script::from_json(&text).unwrap().extract(2, BIG, TOL).unwrap();
    let cx = gate(GateKind::CX, 2).unwrap().entries;
    need(proportional(m.zero_branch().unwrap(), &cx), || "surgery CX script".into())?;
    Ok("4 diagrams, 5-step chain, surgery script".into())
}

fn rewrite_soundness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut applied = 0;
    while applied < 1000 {
        let d = rng.random_range(2..=3);
        let g = zx::random_diagram(&mut rng, d, 8).unwrap();
        let rules = zx::applicable_rewrites(&g);
        if rules.is_empty() {
            continue;
        }
        let r = &rules[rng.random_range(0..rules.len())];
        let after = r.apply(&g).map_err(|e| format!("{r:?}: {e}"))?;
        need(proportional(&zx::evaluate(&g).unwrap(), &zx::evaluate(&after).unwrap()), || format!("{r:?} at d={d}"))?;
        applied += 1;
    }
    Ok(format!("{applied} rewrites"))
}

/// Every logical map of one qudit the surgery layer can produce, all branches.
fn one_qudit_maps(d: usize) -> Vec<Matrix> {
    use SurgeryKind::{Rough, Smooth};
    let single = [PatchSpec::new("a", 0, 1, (0, 0))];
    let mut out = Vec::new();
    let mut keep = |m: LogicalMaps| out.extend(m.kraus.into_values());
    for p in 0..d as i64 {
        keep(maps(d, &single, |e, r| e.gate(r, "a", LogicalGate::X, p)));
        keep(maps(d, &single, |e, r| e.gate(r, "a", LogicalGate::Z, p)));
    }
    keep(maps(d, &[PatchSpec::new("a", 1, 1, (0, 0))], |e, r| e.fourier(r, "a")));
    for (split, at, input) in [(Smooth, 1, (0, 3)), (Rough, 0, (2, 1))] {
        for counit in [Smooth, Rough] {
            let inputs = [PatchSpec::new("a", input.0, input.1, (0, 0))];
            keep(maps(d, &inputs, |e, r| {
                let r = e.split(r, split, "a", at, ["a", "b"])?;
                e.counit(r, counit, "b")
            }));
        }
    }
    for (merge, origin) in [(Smooth, (2, 0)), (Rough, (0, 2))] {
        for unit in [Smooth, Rough] {
            let inputs = [PatchSpec::new("b", 0, 1, origin)];
            keep(maps(d, &inputs, |e, r| {
                let r = e.unit(r, unit, "a", 0, 1, (0, 0))?;
                e.merge(r, merge, "a", "b", "a")
            }));
        }
    }
    out
}

fn non_universality() -> Outcome {
    let mut summary = Vec::new();
    for d in [2, 3] {
        let fragment = GateGroup::clifford_fragment(d).unwrap();
        let all = one_qudit_maps(d);
        let invertible: Vec<Matrix> =
            all.iter().filter(|m| m.shape() == (d, d) && qudit_surgery::linalg::rank(m, TOL) == d).cloned().collect();
        let generated = GateGroup::generate(d, &invertible, 10_000).map_err(|e| e.to_string())?;
        need(generated.elements.iter().all(|m| fragment.contains(m)), || format!("d={d}: surgery map outside the group"))?;
        need(!generated.contains(&sqrt_x(d)) && !fragment.contains(&sqrt_x(d)), || format!("d={d}: sqrt X reached"))?;
        summary.push(format!(
            "d={d}: {} maps ({} invertible) close to {} of {}",
            all.len(),
            invertible.len(),
            generated.len(),
            fragment.len()
        ));
    }
    Ok(summary.join("; "))
}

type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

fn main() -> std::process::ExitCode {
    let criteria: [Criterion; 11] = [
        ("Hopf laws", hopf_laws, Some(Duration::from_secs(1))),
        ("patch validation", patch_validation, Some(Duration::from_secs(30))),
        ("Fourier-basis logical states", fourier_basis_states, None),
        ("string-operator laws", string_laws, None),
        ("surgery dictionary", dictionary, Some(Duration::from_secs(300))),
        ("ancilla syndrome circuits", ancilla_circuits, None),
        ("outcome bookkeeping", outcome_bookkeeping, None),
        ("transversal Fourier and antipode", transversal_fourier, None),
        ("CX equivalence", cx_equivalence, None),
        ("rewrite soundness", rewrite_soundness, None),
        ("non-universality witness", non_universality, None),
    ];
    let mut failed = 0;
    for (i, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let result = match (result, limit) {
            (Ok(_), Some(l)) if took > *l => Err(format!("took {took:.2?}, limit {l:?}")),
            (r, _) => r,
        };
        match result {
            Ok(detail) => println!("PASS {:>2}. {name}: {detail} [{took:.2?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2}. {name}: {why} [{took:.2?}]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        std::process::ExitCode::SUCCESS
    } else {
        std::process::ExitCode::FAILURE
    }
}
