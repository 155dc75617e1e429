use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::geometry::{PatchGeometry, Site, SiteKind};
use super::operator::{Action, LocalOperator};
use super::strings::StringSpec;
use crate::algebra::modd;
use crate::error::{Error, Result};
use crate::linalg::{matrices_close, max_abs_diff, C64, ONE, ZERO};

/// Default ceiling on the number of amplitudes any single check may touch.
pub const DEFAULT_BUDGET: usize = 1 << 24;

/// Local dimension up to which operator checks are done on every basis vector.
const EXHAUSTIVE_DIM: usize = 729;
/// Local dimension above which only the integer commutation test is used.
const NUMERIC_DIM: usize = 1 << 16;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub d: usize,
    pub edges: usize,
    pub vertices: usize,
    pub faces: usize,
    pub checks: Vec<Check>,
    pub vacuum_rank: Option<u128>,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn push(&mut self, name: &str, passed: bool, detail: String) {
        self.checks.push(Check { name: name.to_string(), passed, detail });
    }
}

fn generator(d: usize, site: &Site) -> LocalOperator {
    let support = site.edges.iter().map(|(e, _)| *e).collect();
    let signs = site.edges.iter().map(|(_, s)| *s).collect();
    let action = match site.kind {
        SiteKind::Vertex => Action::shift_by(d, 1),
        SiteKind::Face => Action::clock(d, 1),
    };
    LocalOperator::new(d, support, signs, action)
}

fn overlap(a: &[(usize, i64)], b: &[(usize, i64)]) -> i64 {
    a.iter().map(|(e, s)| s * b.iter().filter(|(f, _)| f == e).map(|(_, t)| t).sum::<i64>()).sum()
}

fn relabel(op: &LocalOperator, union: &[usize]) -> LocalOperator {
    let support = op.support.iter().map(|e| union.iter().position(|u| u == e).expect("edge in union")).collect();
    LocalOperator { support, ..op.clone() }
}

/// Vectors on which local operator identities are tested.
fn probe_vectors(dim: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<C64>> {
    if dim <= EXHAUSTIVE_DIM {
        (0..dim)
            .map(|k| {
                let mut v = vec![ZERO; dim];
                v[k] = ONE;
                v
            })
            .collect()
    } else {
        (0..3).map(|_| (0..dim).map(|_| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect()).collect()
    }
}

/// `Some(true)` when `a b = b a` on every probe, `None` when too large to test.
fn commute_numeric(a: &LocalOperator, b: &LocalOperator, tol: f64, rng: &mut ChaCha8Rng) -> Option<bool> {
    let mut union: Vec<usize> = a.support.iter().chain(&b.support).copied().collect();
    union.sort();
    union.dedup();
    let dim = a.d.checked_pow(union.len() as u32)?;
    if dim > NUMERIC_DIM {
        return None;
    }
    let (la, lb) = (relabel(a, &union), relabel(b, &union));
    let n = union.len();
    Some(probe_vectors(dim, rng).iter().all(|v| {
        let ab = la.apply(&lb.apply(v, n).unwrap(), n).unwrap();
        let ba = lb.apply(&la.apply(v, n).unwrap(), n).unwrap();
        max_abs_diff(&ab, &ba) <= tol
    }))
}

fn idempotent_numeric(p: &LocalOperator, tol: f64) -> Option<bool> {
    let dim = p.d.checked_pow(p.support.len() as u32)?;
    if dim > EXHAUSTIVE_DIM {
        return None;
    }
    let m = p.matrix();
    Some(matrices_close(&(&m * &m), &m, tol))
}

/// Runs the structural checks on a patch.
pub fn validate_patch(g: &PatchGeometry, tol: f64, budget: usize) -> Result<ValidationReport> {
    let d = g.d();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut report = ValidationReport {
        d,
        edges: g.edge_count(),
        vertices: g.vertices().len(),
        faces: g.faces().len(),
        checks: Vec::new(),
        vacuum_rank: None,
    };
    let sites: Vec<&Site> = g.vertices().iter().chain(g.faces()).collect();

    let thin: Vec<String> = sites.iter().filter(|s| s.weight() < 2).map(|s| format!("{:?}@{:?}", s.kind, s.pos)).collect();
    report.push("no single-edge stabilizers", thin.is_empty(), thin.join(", "));

    let mut bad = Vec::new();
    let mut skipped = 0usize;
    for (i, a) in sites.iter().enumerate() {
        for b in &sites[i + 1..] {
            let k = overlap(&a.edges, &b.edges);
            if k == 0 && !a.edges.iter().any(|(e, _)| b.sign_of(*e).is_some()) {
                continue;
            }
            let integer_ok = a.kind == b.kind || modd(k, d) == 0;
            let numeric = commute_numeric(&generator(d, a), &generator(d, b), tol, &mut rng);
            if numeric.is_none() {
                skipped += 1;
            }
            if !integer_ok || numeric == Some(false) {
                bad.push(format!("{:?}@{:?} vs {:?}@{:?}", a.kind, a.pos, b.kind, b.pos));
            }
        }
    }
    let detail = if bad.is_empty() { format!("{skipped} pair(s) checked by sign sums only") } else { bad.join("; ") };
    report.push("stabilizers commute", bad.is_empty(), detail);

    let mut bad = Vec::new();
    for id in g.site_ids() {
        let p = LocalOperator::site_projector(g, id, 0)?;
        if idempotent_numeric(&p, tol) == Some(false) {
            bad.push(format!("{id:?}"));
        }
    }
    report.push("site projectors idempotent", bad.is_empty(), bad.join(", "));

    let mut bad = Vec::new();
    let strings: [(&str, &StringSpec, SiteKind); 2] = [("X", g.x_logical(), SiteKind::Face), ("Z", g.z_logical(), SiteKind::Vertex)];
    for (name, s, against) in strings {
        if s.crossings.is_empty() {
            bad.push(format!("{name} logical is empty"));
            continue;
        }
        let op = s.operator(d, 1);
        let list = match against {
            SiteKind::Vertex => g.vertices(),
            SiteKind::Face => g.faces(),
        };
        for site in list {
            let k = overlap(&s.crossings, &site.edges);
            let numeric = if site.edges.iter().any(|(e, _)| s.exponent(*e) != 0) {
                commute_numeric(&op, &generator(d, site), tol, &mut rng)
            } else {
                Some(true)
            };
            if modd(k, d) != 0 || numeric == Some(false) {
                bad.push(format!("{name} logical vs {:?}@{:?}", site.kind, site.pos));
            }
        }
    }
    report.push("logical strings commute with stabilizers", bad.is_empty(), bad.join("; "));

    let pair = modd(overlap(&g.x_logical().crossings, &g.z_logical().crossings), d);
    report.push("logical strings form a conjugate pair", gcd(pair, d) == 1, format!("intersection number {pair} mod {d}"));

    match vacuum_rank(g, budget) {
        Ok(r) => {
            report.vacuum_rank = Some(r);
            report.push("vacuum has dimension d", r == d as u128, format!("rank {r}"));
        }
        Err(Error::Budget { amplitudes, budget }) => {
            report.push("vacuum has dimension d", false, format!("not computed: {amplitudes} configurations over budget {budget}"));
        }
        Err(e) => return Err(e),
    }
    Ok(report)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Iterates over every vector in `Z_d^n`, calling `f` on each.
fn for_each_config(d: usize, n: usize, mut f: impl FnMut(&[usize])) {
    let mut digits = vec![0usize; n];
    loop {
        f(&digits);
        let mut k = 0;
        loop {
            if k == n {
                return;
            }
            digits[k] += 1;
            if digits[k] < d {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
    }
}

fn check_budget(d: usize, n: usize, budget: usize) -> Result<()> {
    let size = (d as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if size > budget as u128 {
        return Err(Error::Budget { amplitudes: size, budget });
    }
    Ok(())
}

/// Rank of the product of all zero-syndrome projectors.
///
/// Equals the trace of that product: the number of edge configurations
/// satisfying every face, times the number of vertex labelings whose net
/// shift vanishes on every edge, divided by `d^{#vertices}`.
pub fn vacuum_rank(g: &PatchGeometry, budget: usize) -> Result<u128> {
    let d = g.d();
    let n = g.edge_count();
    let nv = g.vertices().len();
    check_budget(d, n, budget)?;
    check_budget(d, nv, budget)?;
    let mut satisfying: u128 = 0;
    for_each_config(d, n, |a| {
        let ok = g.faces().iter().all(|f| modd(f.edges.iter().map(|(e, s)| s * a[*e] as i64).sum(), d) == 0);
        if ok {
            satisfying += 1;
        }
    });
    let mut trivial: u128 = 0;
    let mut net = vec![0i64; n];
    for_each_config(d, nv, |l| {
        net.iter_mut().for_each(|x| *x = 0);
        for (v, lv) in g.vertices().iter().zip(l) {
            for (e, s) in &v.edges {
                net[*e] += s * *lv as i64;
            }
        }
        if net.iter().all(|x| modd(*x, d) == 0) {
            trivial += 1;
        }
    });
    let denom = (d as u128).pow(nv as u32);
    let total = satisfying * trivial;
    if !total.is_multiple_of(denom) {
        return Err(Error::Geometry(format!("vacuum trace {total}/{denom} is not an integer")));
    }
    Ok(total / denom)
}
