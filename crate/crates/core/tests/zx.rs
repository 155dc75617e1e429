use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qudit_surgery::algebra::{gate, GateKind};
use qudit_surgery::linalg::{matrices_close, matrices_proportional, Matrix};
use qudit_surgery::surgery::{Primitive, Script};
use qudit_surgery::zx::*;

const TOL: f64 = 1e-9;

fn same(a: &Diagram, b: &Diagram) -> bool {
    matrices_close(&evaluate(a).unwrap(), &evaluate(b).unwrap(), TOL)
}

fn proportional(m: &Matrix, t: &Matrix) -> bool {
    matrices_proportional(m, t, TOL).is_some_and(|s| s.norm() > TOL)
}

#[test]
fn cx_diagrams_are_cx() {
    for d in [2, 3, 5] {
        let cx = gate(GateKind::CX, d).unwrap().entries;
        for (i, g) in cx_diagrams(d).unwrap().iter().enumerate() {
            assert!(proportional(&evaluate(g).unwrap(), &cx), "diagram {i} at d={d}");
        }
        let [a, b, ..] = cx_diagrams(d).unwrap();
        assert!(equal(&a, &b, true, TOL).unwrap());
    }
}

#[test]
fn cx_chain_visits_every_form() {
    for d in [2, 3, 5] {
        let forms = cx_diagrams(d).unwrap();
        let chain = cx_rewrite_chain(d).unwrap();
        let mut prev = forms[0].clone();
        for (r, g) in &chain {
            assert!(same(&prev, g), "{r:?} at d={d}");
            prev = g.clone();
        }
        // swap_dual lands on the third form, the slide on the fourth, the fusion on the second
        assert!(same(&chain[1].1, &forms[2]));
        assert!(same(&chain[2].1, &forms[3]));
        assert!(same(&chain[4].1, &forms[1]));
        assert_eq!(chain[4].1.nodes.len(), 3);
    }
}

#[test]
fn fusing_phases_one_and_two_at_three() {
    let mut g = Diagram::new(3, 1, 1).unwrap();
    let a = g.add(Node::green(1, 1, 1));
    let b = g.add(Node::green(2, 1, 1));
    g.connect(Source::Input(0), Target::Node(a, 0));
    g.connect(Source::Node(a, 0), Target::Node(b, 0));
    g.connect(Source::Node(b, 0), Target::Output(0));
    let f = Rewrite::SpiderFuse { a, b }.apply(&g).unwrap();
    assert_eq!(f.nodes.len(), 1);
    assert_eq!(f.nodes.values().next(), Some(&Node::green(0, 1, 1)));
    assert!(same(&g, &f));
    let bare = Rewrite::IdentityRemove { node: a }.apply(&f).unwrap();
    assert!(bare.nodes.is_empty());
    assert!(same(&bare, &Diagram::identity(3, 1).unwrap()));
}

#[test]
fn fourier_twice_is_antipode() {
    for d in [2, 3, 5] {
        let h = Diagram::single(d, Node::Fourier { dagger: false }).unwrap();
        let hh = h.then(&h).unwrap();
        let ids: Vec<NodeId> = hh.nodes.keys().copied().collect();
        let r = Rewrite::FourierSquare { a: ids[0], b: ids[1] }.apply(&hh).unwrap();
        assert_eq!(r.nodes.values().collect::<Vec<_>>(), vec![&Node::Antipode]);
        assert!(same(&hh, &r));
        assert!(equal(&r, &Diagram::single(d, Node::Antipode).unwrap(), true, TOL).unwrap());
    }
}

#[test]
fn color_change_is_exact() {
    for d in [2, 3, 5] {
        for (ins, outs) in [(1, 1), (2, 1), (1, 2), (0, 2), (2, 0), (0, 1)] {
            for node in [Node::green(1, ins, outs), Node::red(d as i64 - 1, ins, outs)] {
                let g = Diagram::single(d, node).unwrap();
                let r = Rewrite::ColorChange { node: 0 }.apply(&g).unwrap();
                assert!(same(&g, &r), "{:?} d={d}", g.nodes[&0]);
            }
        }
    }
}

#[test]
fn bialgebra_both_colour_orders() {
    for d in [2, 3] {
        for c in [Color::Green, Color::Red] {
            let top = Diagram::single(d, Node::spider(c, 0, 2, 1)).unwrap();
            let bottom = Diagram::single(d, Node::spider(c.other(), 0, 1, 2)).unwrap();
            let g = top.then(&bottom).unwrap();
            let r = Rewrite::Bialgebra { top: 0, bottom: 1 }.apply(&g).unwrap();
            assert_eq!(r.nodes.len(), 4);
            assert!(same(&g, &r));
        }
    }
}

#[test]
fn snake_and_antipode_laws() {
    let d = 3;
    for (leg, port) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        let mut g = Diagram::new(d, 1, 1).unwrap();
        let cup = g.add(Node::Cup);
        let cap = g.add(Node::Cap);
        g.connect(Source::Input(0), Target::Node(cap, 1 - port));
        g.connect(Source::Node(cup, leg), Target::Node(cap, port));
        g.connect(Source::Node(cup, 1 - leg), Target::Output(0));
        assert!(same(&g, &Diagram::identity(d, 1).unwrap()));
        let r = Rewrite::CupCapSnake { cup, cap }.apply(&g).unwrap();
        assert!(r.nodes.is_empty());
    }
    let s = Diagram::single(d, Node::Antipode).unwrap();
    let ss = s.then(&s).unwrap();
    let r = Rewrite::AntipodeCancel { a: 0, b: 1 }.apply(&ss).unwrap();
    assert!(same(&r, &Diagram::identity(d, 1).unwrap()));
}

#[test]
fn mismatched_locations_are_rejected() {
    let g = Diagram::single(3, Node::green(1, 1, 1)).unwrap();
    assert!(Rewrite::IdentityRemove { node: 0 }.apply(&g).is_err());
    assert!(Rewrite::SpiderFuse { a: 0, b: 0 }.apply(&g).is_err());
    assert!(Rewrite::AntipodeSlide { node: 0 }.apply(&g).is_err());
    assert!(Rewrite::ColorChange { node: 7 }.apply(&g).is_err());
}

#[test]
fn dictionary_diagrams_match_targets() {
    for d in [2, 3] {
        for p in Primitive::ALL {
            let charges: Vec<i64> = if p.has_charge() { (0..d as i64).collect() } else { vec![0] };
            for n in charges {
                let m = evaluate(&dictionary_diagram(p, d, n).unwrap()).unwrap();
                assert!(proportional(&m, &p.target(d, n)), "{} n={n} d={d}", p.name());
            }
        }
    }
}

#[test]
fn scripts_translate_to_spiders() {
    let merge = r#"{"inputs": [{"name": "a", "rows": 0, "cols": 1}, {"name": "b", "rows": 0, "cols": 1, "origin": [2, 0]}],
        "steps": [{"op": "merge", "kind": "smooth", "patches": ["a", "b"], "into": "a"}]}"#;
    let g = from_surgery(&Script::from_json(merge).unwrap(), 3).unwrap();
    assert!(equal(&g, &Diagram::single(3, Node::green(0, 2, 1)).unwrap(), false, TOL).unwrap());
    let rough = merge.replace("smooth", "rough").replace("[2, 0]", "[0, 2]");
    let g = from_surgery(&Script::from_json(&rough).unwrap(), 3).unwrap();
    assert!(equal(&g, &Diagram::single(3, Node::red(0, 2, 1)).unwrap(), false, TOL).unwrap());
    let rot = r#"{"inputs": [{"name": "a", "rows": 1, "cols": 1}], "steps": [{"op": "fourier", "patch": "a"}]}"#;
    let g = from_surgery(&Script::from_json(rot).unwrap(), 3).unwrap();
    assert!(matrices_close(&evaluate(&g).unwrap(), &gate(GateKind::H, 3).unwrap().entries, TOL));
}

fn phase_total(g: &Diagram) -> (usize, i64) {
    let total = g
        .nodes
        .values()
        .map(|n| match n {
            Node::Spider { phase, .. } => *phase,
            _ => 0,
        })
        .sum::<i64>();
    (g.nodes.len(), total.rem_euclid(g.d as i64))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn every_applicable_rewrite_preserves_the_tensor(seed in any::<u64>(), d in 2usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_diagram(&mut rng, d, 8).unwrap();
        let before = evaluate(&g).unwrap();
        for r in applicable_rewrites(&g) {
            let after = evaluate(&r.apply(&g).unwrap()).unwrap();
            prop_assert!(matrices_close(&before, &after, TOL), "{:?}", r);
        }
    }

    #[test]
    fn fusion_order_does_not_matter(phases in prop::collection::vec(0i64..3, 2..6), order in any::<u64>()) {
        let d = 3;
        let mut g = Diagram::new(d, 1, 1).unwrap();
        let mut prev = Source::Input(0);
        for p in &phases {
            let n = g.add(Node::red(*p, 1, 1));
            g.connect(prev, Target::Node(n, 0));
            prev = Source::Node(n, 0);
        }
        g.connect(prev, Target::Output(0));
        let greedy = fuse_all(&g, 100).unwrap();
        let mut h = g.clone();
        let mut rng = ChaCha8Rng::seed_from_u64(order);
        loop {
            let fusions: Vec<Rewrite> = applicable_rewrites(&h).into_iter().filter(|r| matches!(r, Rewrite::SpiderFuse { .. })).collect();
            if fusions.is_empty() {
                break;
            }
            use rand::Rng;
            h = fusions[rng.random_range(0..fusions.len())].apply(&h).unwrap();
        }
        prop_assert_eq!(phase_total(&h), (1, phases.iter().sum::<i64>() % 3));
        prop_assert!(same(&h, &g) && same(&greedy, &g));
    }
}
