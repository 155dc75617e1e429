//! Runs the merge/split CX procedure from a JSON script and samples it.
use qudit_surgery::lattice::DEFAULT_BUDGET;
use qudit_surgery::surgery::Script;

fn main() -> qudit_surgery::Result<()> {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/data/cx.json"))?;
    let script = Script::from_json(&text)?;
    let maps = script.extract(2, DEFAULT_BUDGET, 1e-9)?;
    println!("{} charge records; n=0 branch:{:.2}", maps.kraus.len(), maps.zero_branch().unwrap().map(|z| z.re));
    for shot in script.sample(2, DEFAULT_BUDGET, 11)? {
        println!(
            "input {:?} charges {:?} -> {:?}",
            shot.input,
            shot.charges,
            shot.output.iter().map(|a| a.norm_sqr().round()).collect::<Vec<_>>()
        );
    }
    Ok(())
}
