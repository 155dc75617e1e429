use std::process::Command;

use clap::Parser;
use qudit_surgery::commands::{dict_verify, execute, Cli, Report};
use qudit_surgery::lattice::DEFAULT_BUDGET;
use qudit_surgery::surgery::Primitive;
use qudit_surgery::zx::{dictionary_diagram, Diagram, Node};

fn data(name: &str) -> String {
    format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> qudit_surgery::Result<Report> {
    let cli = Cli::try_parse_from(std::iter::once("qsurgery").chain(args.iter().copied())).expect("arguments parse");
    execute(&cli)
}

fn exit_code(args: &[&str]) -> i32 {
    Command::new(env!("CARGO_BIN_EXE_qsurgery")).args(args).output().expect("binary runs").status.code().expect("exit code")
}

#[test]
fn minimal_patch_passes() {
    let r = run(&["patch", "validate", "--d", "3"]).unwrap();
    assert!(r.ok);
    assert!(r.body.contains("rank=3, all checks pass"));
    let f = run(&["patch", "validate", "--patch-file", &data("patch_minimal.json")]).unwrap();
    assert!(f.body.contains("rank=3, all checks pass"));
}

#[test]
fn bad_patches_fail() {
    let r = run(&["patch", "validate", "--patch-file", &data("patch_single_edge.json")]).unwrap();
    assert!(!r.ok);
    assert_eq!(exit_code(&["patch", "validate", "--patch-file", &data("patch_single_edge.json")]), 1);
    assert!(matches!(run(&["patch", "validate", "--d", "5", "--rows", "4", "--cols", "4"]), Err(qudit_surgery::Error::Budget { .. })));
}

#[test]
fn smooth_merge_gives_two_branches() {
    let r = run(&["map", "extract", "--script", &data("smooth_merge.json")]).unwrap();
    assert!(r.ok);
    assert_eq!(r.body.matches("# charges=").count(), 2);
    // branch 0 keeps |00⟩ and |11⟩, branch 1 maps |01⟩ → |1⟩ and |10⟩ → |0⟩
    let branches: Vec<&str> = r.body.split("# charges=").skip(1).collect();
    assert!(branches[0].contains("0,0,1.0") && branches[0].contains("1,3,1.0"));
    assert!(branches[1].contains("1,1,1.0") && branches[1].contains("0,2,1.0"));
}

#[test]
fn identity_and_cx_scripts() {
    let r = run(&["map", "extract", "--script", &data("identity.json")]).unwrap();
    for k in 0..3 {
        assert!(r.body.contains(&format!("{k},{k},1.000000000000,0.000000000000")));
    }
    let cx = run(&["map", "extract", "--script", &data("cx.json"), "--mode", "sample", "--seed", "5", "--format", "csv"]).unwrap();
    let outputs: Vec<&str> = cx.body.lines().skip(1).map(|l| l.split(',').nth(3).unwrap()).collect();
    assert_eq!(outputs.iter().map(|o| &o[..1]).collect::<Vec<_>>(), ["0", "1", "3", "2"]);
    assert!(run(&["map", "extract", "--script", &data("cx.json"), "--mode", "sample"]).is_err());
}

#[test]
fn same_config_same_report() {
    let args = ["map", "extract", "--script", &data("cx.json"), "--mode", "sample", "--seed", "11"];
    assert_eq!(run(&args).unwrap().body, run(&args).unwrap().body);
}

#[test]
fn dictionary_rows_all_match() {
    let r = run(&["dict", "verify", "--d", "2"]).unwrap();
    assert!(r.ok);
    assert!(r.body.contains("9/9 rows match"));
}

#[test]
fn corrupted_dictionary_is_reported() {
    let corrupt = |p: Primitive, d: usize, n: i64| {
        if p == Primitive::SmoothMerge {
            Diagram::single(d, Node::red(0, 2, 1))
        } else {
            dictionary_diagram(p, d, n)
        }
    };
    let rows = dict_verify(2, DEFAULT_BUDGET, 1e-9, &corrupt).unwrap();
    let bad: Vec<&str> = rows.iter().filter(|r| !r.ok()).map(|r| r.name).collect();
    assert_eq!(bad, ["smooth merge"]);
}

#[test]
fn diagram_commands() {
    let eq = run(&["zx", "equal", "--diagram", &data("cx_copy_add.json"), &data("cx_add_copy.json")]).unwrap();
    assert_eq!(eq.body, "equal up to scalar: true\n");
    let wire = run(&["zx", "eval", "--diagram", &data("wire.json")]).unwrap();
    assert_eq!(wire.body.lines().filter(|l| l.ends_with(",1.000000000000,0.000000000000")).count(), 3);
    let fused = run(&["zx", "rewrite", "--diagram", &data("fuse.json"), "--rule", r#"{"rule":"spider_fuse","a":0,"b":1}"#]).unwrap();
    assert!(fused.ok);
    let g = Diagram::from_json(&fused.body).unwrap();
    assert_eq!(g.nodes.values().collect::<Vec<_>>(), [&Node::green(0, 1, 1)]);
    assert!(run(&["zx", "equal", "--diagram", &data("cx_copy_add.json"), &data("wire.json")]).is_err());
    assert_eq!(exit_code(&["zx", "equal", "--diagram", &data("cx_copy_add.json"), &data("wire.json")]), 2);
}

#[test]
fn environment_overrides_flags() {
    let out = Command::new(env!("CARGO_BIN_EXE_qsurgery"))
        .args(["patch", "validate"])
        .env("QSURGERY_D", "3")
        .env("QSURGERY_FORMAT", "csv")
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("check,result,detail"));
    assert!(text.contains("rank=3"));
}
