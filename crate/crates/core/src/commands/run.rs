use std::fmt::Write;
use std::fs;
use std::path::Path;

use super::format::{clean, matrix, pass, table, Format};
use super::{Cli, Command, DictCommand, MapArgs, MapCommand, PatchArgs, PatchCommand, RunMode, ZxCommand};
use crate::error::{Error, Result};
use crate::lattice::{vacuum_rank, validate_patch, PatchFile, PatchGeometry};
use crate::linalg::{matrices_close, matrices_proportional, Matrix};
use crate::sim::dump;
use crate::surgery::{extract_logical_map, Primitive, Script};
use crate::zx::{self, dictionary_diagram, Diagram, Rewrite};

/// Text output of a command and whether all of its checks passed.
#[derive(Clone, Debug)]
pub struct Report {
    pub body: String,
    pub ok: bool,
}

impl Report {
    pub fn write(&self, out: Option<&Path>) -> Result<()> {
        match out {
            Some(p) => fs::write(p, &self.body)?,
            None => print!("{}", self.body),
        }
        Ok(())
    }
}

pub fn execute(cli: &Cli) -> Result<Report> {
    let c = &cli.common;
    match &cli.command {
        Command::Patch(PatchCommand::Validate(args)) => patch_validate(args, c.budget, c.tol, c.format.unwrap_or(Format::Md)),
        Command::Map(MapCommand::Extract(args)) => map_extract(args, c.budget, c.tol, c.format.unwrap_or(Format::Csv)),
        Command::Dict(DictCommand::Verify { d }) => {
            let rows = dict_verify(*d, c.budget, c.tol, &dictionary_diagram)?;
            Ok(dict_report(*d, &rows, c.format.unwrap_or(Format::Md)))
        }
        Command::Zx(cmd) => zx_command(cmd, c.tol, c.format.unwrap_or(Format::Csv)),
    }
}

fn read(path: &Path) -> Result<String> {
    Ok(fs::read_to_string(path)?)
}

fn patch_validate(args: &PatchArgs, budget: usize, tol: f64, format: Format) -> Result<Report> {
    let g = match &args.patch_file {
        Some(p) => {
            let file: PatchFile = serde_json::from_str(&read(p)?)?;
            if let Some(d) = args.d {
                if d != file.d() {
                    return Err(Error::DimensionMismatch(d, file.d()));
                }
            }
            file.build()?
        }
        None => PatchGeometry::grid(args.d.unwrap_or(2), args.rows, args.cols, (0, 0))?,
    };
    vacuum_rank(&g, budget)?;
    let report = validate_patch(&g, tol, budget)?;
    let rows: Vec<Vec<String>> = report.checks.iter().map(|c| vec![c.name.clone(), pass(c.passed), c.detail.replace(',', ";")]).collect();
    let mut body = String::new();
    table(&mut body, &["check", "result", "detail"], &rows, format);
    let rank = report.vacuum_rank.map_or("?".to_string(), |r| r.to_string());
    let failed = report.checks.iter().filter(|c| !c.passed).count();
    if failed == 0 {
        let _ = writeln!(body, "\nrank={rank}, all checks pass");
    } else {
        let _ = writeln!(body, "\nrank={rank}, {failed} check(s) failed");
    }
    Ok(Report { body, ok: failed == 0 })
}

fn map_extract(args: &MapArgs, budget: usize, tol: f64, format: Format) -> Result<Report> {
    let script = Script::from_json(&read(&args.script)?)?;
    let d = script.dimension(args.d)?;
    let mut body = String::new();
    match args.mode {
        RunMode::Enumerate => {
            let maps = script.extract(d, budget, tol)?;
            let _ = writeln!(body, "# d={d} inputs={:?} outputs={:?}", maps.inputs, maps.outputs);
            for (n, k) in &maps.kraus {
                let _ = writeln!(body, "# charges={n:?}");
                matrix(&mut body, k, format);
            }
            let dim = d.pow(maps.inputs.len() as u32);
            let complete = matrices_close(&maps.completeness(), &Matrix::identity(dim, dim), tol.max(1e-9));
            let _ = writeln!(body, "# max_leakage={:.3e}", maps.max_leakage);
            let _ = writeln!(body, "# completeness {}", pass(complete));
            Ok(Report { body, ok: complete })
        }
        RunMode::Sample => {
            let seed = args.seed.ok_or_else(|| Error::Procedure("sample mode needs --seed".into()))?;
            let shots = script.sample(d, budget, seed)?;
            let rows: Vec<Vec<String>> = shots
                .iter()
                .map(|s| {
                    let amps: Vec<String> = s
                        .output
                        .iter()
                        .enumerate()
                        .filter(|(_, a)| a.norm() > 1e-9)
                        .map(|(i, a)| format!("{i}:{:.6}{:+.6}i", clean(a.re), clean(a.im)))
                        .collect();
                    vec![
                        format!("{:?}", s.input).replace(',', ""),
                        format!("{:?}", s.outcomes).replace(',', ""),
                        format!("{:?}", s.charges).replace(',', ""),
                        amps.join(" "),
                        format!("{:.3e}", s.leakage),
                    ]
                })
                .collect();
            table(&mut body, &["input", "outcomes", "charges", "output", "leakage"], &rows, format);
            if let Some(path) = &args.dump {
                fs::write(path, dump(&script.sample_state(d, budget, seed)?, 1e-12))?;
            }
            let ok = shots.iter().all(|s| s.leakage <= tol);
            Ok(Report { body, ok })
        }
    }
}

/// One dictionary row checked through both pipelines.
#[derive(Clone, Debug)]
pub struct DictRow {
    pub name: &'static str,
    /// Charges seen, one Kraus operator each.
    pub branches: usize,
    pub surgery_matches_target: bool,
    pub diagram_matches_surgery: bool,
    /// `Σ K†K = I`.
    pub complete: bool,
}

impl DictRow {
    pub fn ok(&self) -> bool {
        self.surgery_matches_target && self.diagram_matches_surgery && self.complete
    }
}

fn proportional(a: &Matrix, b: &Matrix, tol: f64) -> bool {
    a.shape() == b.shape() && matrices_proportional(a, b, tol).is_some_and(|s| s.norm() > tol)
}

/// Runs every dictionary row through surgery extraction and through
/// `diagram`, comparing each charge branch with the expected map.
pub fn dict_verify(d: usize, budget: usize, tol: f64, diagram: &dyn Fn(Primitive, usize, i64) -> Result<Diagram>) -> Result<Vec<DictRow>> {
    let mut rows = Vec::new();
    for p in Primitive::ALL {
        let maps = extract_logical_map(d, &p.inputs(), None, budget, tol, |e, r| p.run(e, r))?;
        let mut surgery_ok = maps.kraus.len() == if p.has_charge() { d } else { 1 };
        let mut diagram_ok = true;
        for (charges, k) in &maps.kraus {
            let n = charges.last().copied().unwrap_or(0);
            surgery_ok &= proportional(k, &p.target(d, n), tol);
            diagram_ok &= proportional(&zx::evaluate(&diagram(p, d, n)?)?, k, tol);
        }
        let dim = d.pow(p.inputs().len() as u32);
        rows.push(DictRow {
            name: p.name(),
            branches: maps.kraus.len(),
            surgery_matches_target: surgery_ok,
            diagram_matches_surgery: diagram_ok,
            complete: matrices_close(&maps.completeness(), &Matrix::identity(dim, dim), tol.max(1e-9)),
        });
    }
    Ok(rows)
}

fn dict_report(d: usize, rows: &[DictRow], format: Format) -> Report {
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.name.to_string(),
                r.branches.to_string(),
                pass(r.surgery_matches_target),
                pass(r.diagram_matches_surgery),
                pass(r.complete),
            ]
        })
        .collect();
    let mut body = String::new();
    table(&mut body, &["operation", "branches", "surgery = target", "diagram = surgery", "complete"], &cells, format);
    let good = rows.iter().filter(|r| r.ok()).count();
    let _ = writeln!(body, "\nd={d}: {good}/{} rows match", rows.len());
    Report { body, ok: good == rows.len() }
}

fn zx_command(cmd: &ZxCommand, tol: f64, format: Format) -> Result<Report> {
    let load = |p: &Path| -> Result<Diagram> { Diagram::from_json(&read(p)?) };
    match cmd {
        ZxCommand::Eval { diagram } => {
            let mut body = String::new();
            matrix(&mut body, &zx::evaluate(&load(diagram)?)?, format);
            Ok(Report { body, ok: true })
        }
        ZxCommand::Rewrite { diagram, rule, fuse } => {
            let original = load(diagram)?;
            let mut g = original.clone();
            for text in rule {
                let r: Rewrite = serde_json::from_str(text)?;
                g = r.apply(&g)?;
            }
            if let Some(steps) = fuse {
                g = zx::fuse_all(&g, *steps)?;
            }
            let ok = zx::equal(&original, &g, false, tol)?;
            let mut body = g.to_json();
            body.push('\n');
            Ok(Report { body, ok })
        }
        ZxCommand::Equal { diagram, exact } => {
            let (a, b) = (load(&diagram[0])?, load(&diagram[1])?);
            let same = zx::equal(&a, &b, !exact, tol)?;
            let label = if *exact { "equal" } else { "equal up to scalar" };
            Ok(Report { body: format!("{label}: {same}\n"), ok: same })
        }
    }
}
