//! Batch jobs: configuration, orchestration, JSON export and SVG rendering.

pub mod config;
pub mod export;
pub mod svg;

use std::fs;

use serde_json::Value;

use crate::bott_samelson::{spanning_check, GeneratorKind, SpanningOptions, TruncatedBasis};
use crate::cellular::{mat_is_symmetric, CellularBasis};
use crate::combinatorics::{multipartitions_ph, standard_tableaux, tableau_degree, BoxOrder};
use crate::error::{Error, Result};
use crate::geometry::Geometry;
use crate::klr::{Kernel, Record};
use crate::lightleaves::{coordinate_degree, LightLeavesBasis, VectorPolicy};
use crate::linalg::{is_prime, Field, Fp, Q};
use crate::paths::Path;
use crate::quotient::QuotientOptions;
use crate::relations::{check_cyclotomic, check_relations};

pub use config::{JobConfig, Task};
use export::*;

#[derive(Clone, Debug, PartialEq)]
pub struct RunOutput {
    pub json: Value,
    pub svg: Option<String>,
    /// False when `verify` found a failure.
    pub ok: bool,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_IO: i32 = 4;
pub const EXIT_OTHER: i32 = 5;

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidParams(_) | Error::Parse(_) | Error::ComponentOutOfRange(..) => EXIT_CONFIG,
        Error::Budget(_) => EXIT_BUDGET,
        Error::Io(_) => EXIT_IO,
        _ => EXIT_OTHER,
    }
}

pub fn run(cfg: &JobConfig) -> Result<RunOutput> {
    cfg.params()?;
    if cfg.task == Task::Render {
        return render(cfg);
    }
    match cfg.modulus {
        None => run_over::<Q>(cfg, ()),
        Some(p) if is_prime(p) => run_over::<Fp>(cfg, p),
        Some(p) => Err(Error::InvalidParams(format!("modulus {p} is not prime"))),
    }
}

/// Runs `cfg` and writes its artifact to `cfg.out` (or stdout); returns the exit status.
pub fn execute(cfg: &JobConfig) -> i32 {
    let out = match run(cfg) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    let text = match &out.svg {
        Some(s) => s.clone(),
        None => match serde_json::to_string_pretty(&out.json) {
            Ok(s) => s + "\n",
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_OTHER;
            }
        },
    };
    match &cfg.out {
        Some(path) => {
            if let Err(e) = fs::write(path, text) {
                eprintln!("error: {}: {e}", path.display());
                return EXIT_IO;
            }
        }
        None => print!("{text}"),
    }
    if out.ok {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    }
}

fn quotient_options(cfg: &JobConfig) -> QuotientOptions {
    let mut o = QuotientOptions::default();
    if let Some(b) = cfg.budget {
        o.budget = b;
    }
    o
}

fn geometry(cfg: &JobConfig) -> Result<Geometry> {
    Geometry::new(&cfg.params()?)
}

fn policies(cfg: &JobConfig) -> Result<Vec<VectorPolicy>> {
    if cfg.policy == "all" {
        return Ok(VectorPolicy::ALL
            .iter()
            .map(|p| match p {
                VectorPolicy::Random(_) => VectorPolicy::Random(cfg.seed),
                q => *q,
            })
            .collect());
    }
    cfg.policy.split(',').map(|s| VectorPolicy::parse(s.trim(), cfg.seed)).collect()
}

fn json<T: serde::Serialize>(x: &T) -> Result<Value> {
    Ok(serde_json::to_value(x)?)
}

fn run_over<F: Field>(cfg: &JobConfig, ctx: F::Ctx) -> Result<RunOutput> {
    let p = cfg.params()?;
    let cb = CellularBasis::<F>::build(&p, ctx, &quotient_options(cfg))?;
    if let Some(c) = cfg.cell {
        if c >= cb.cells.len() {
            return Err(Error::InvalidParams(format!("cell {c} out of range ({} cells)", cb.cells.len())));
        }
    }
    let ok = |json| Ok(RunOutput { json, svg: None, ok: true });
    match cfg.task {
        Task::Basis => ok(json(&basis_export(&cb, cfg.modulus))?),
        Task::Gram => ok(json(&gram_export(&cb, cfg.cell, cfg.modulus)?)?),
        Task::Specht => ok(json(&specht_export(&cb, cfg.cell, cfg.modulus)?)?),
        Task::LightLeaves => {
            let g = geometry(cfg)?;
            let runs = policies(cfg)?
                .into_iter()
                .map(|pol| LightLeavesBasis::build(&cb, &g, pol).map(|b| light_leaves_run(&b)))
                .collect::<Result<Vec<_>>>()?;
            ok(json(&LightLeavesExport {
                task: "light-leaves".into(),
                params: p,
                field: field_name(cfg.modulus),
                seed: cfg.seed,
                runs,
            })?)
        }
        Task::BsBasis => {
            let g = geometry(cfg)?;
            let drop = cfg.drop.iter().map(|s| GeneratorKind::parse(s)).collect::<Result<Vec<_>>>()?;
            let opts = SpanningOptions {
                drop,
                cap: cfg.cap,
                ..Default::default()
            };
            let spanning = spanning_check(&cb, &g, &opts)?;
            let control = SpanningOptions {
                drop: vec![GeneratorKind::Spot],
                cap: cfg.cap,
                ..Default::default()
            };
            let drop_spot = spanning_check(&cb, &g, &control)?;
            let tb = TruncatedBasis::build(&cb, &g, cfg.cap)?;
            ok(json(&BsExport {
                task: "bs-basis".into(),
                params: p,
                field: field_name(cfg.modulus),
                spanning,
                drop_spot,
                truncated_basis: tb.report,
            })?)
        }
        Task::Verify => verify(cfg, &cb),
        Task::Render => unreachable!("render does not build a basis"),
    }
}

fn check(name: &str, passed: bool, detail: impl Into<String>) -> Check {
    Check {
        name: name.into(),
        passed,
        detail: detail.into(),
    }
}

/// The invariant suite at the configured parameters, plus an optional golden comparison.
fn verify<F: Field>(cfg: &JobConfig, cb: &CellularBasis<F>) -> Result<RunOutput> {
    let p = cb.params().clone();
    let mut checks = Vec::new();

    let small = p.n.min(3);
    let rel = check_relations(p.e, small)?;
    checks.push(check("relations", rel.passed(), format!("{} identities at n = {small}", rel.checked)));
    let cyc = check_cyclotomic(&p.with_n(small))?;
    checks.push(check("cyclotomic", cyc.passed(), format!("{} identities at n = {small}", cyc.checked)));

    let expected: usize = multipartitions_ph(&p, p.n)
        .iter()
        .map(|l| standard_tableaux(l).len().pow(2))
        .sum();
    checks.push(check(
        "dimension",
        cb.len() == expected && cb.is_full_rank(),
        format!("{} elements, rank {}, expected {expected}", cb.len(), cb.rank()),
    ));

    let mut bad = 0;
    for l in &cb.labels {
        if coordinate_degree(&cb.quotient, cb.element(l))? != Some(Some(cb.label_degree(l))) {
            bad += 1;
        }
    }
    checks.push(check("homogeneity", bad == 0, format!("{bad} inhomogeneous elements")));

    let grams = (0..cb.cells.len()).map(|i| cb.gram_matrix(i)).collect::<Result<Vec<_>>>()?;
    let asym = grams.iter().filter(|g| !mat_is_symmetric(g)).count();
    checks.push(check("gram-symmetric", asym == 0, format!("{asym} asymmetric of {}", grams.len())));

    let mut restriction_ok = true;
    for i in 0..cb.cells.len() {
        let layers = cb.restriction_filtration(i)?;
        let mut seen: Vec<usize> = layers.iter().flat_map(|l| l.members.clone()).collect();
        seen.sort();
        restriction_ok &= layers.iter().all(|l| l.uniform_shift)
            && seen == (0..cb.tableaux[i].len()).collect::<Vec<_>>()
            && layers.iter().all(|l| standard_tableaux(&l.shape).len() == l.members.len());
    }
    checks.push(check("restriction", restriction_ok, "layers partition the cell with uniform shifts"));

    match Geometry::new(&p) {
        Ok(g) => {
            let mut bad = 0;
            for ts in &cb.tableaux {
                for t in ts {
                    let path = Path::from_tableau(&g, t)?;
                    if path.degree(&g) != tableau_degree(t, BoxOrder::Cyl, &p)? {
                        bad += 1;
                    }
                }
            }
            checks.push(check("path-degree", bad == 0, format!("{bad} mismatches")));
            let pol = VectorPolicy::Random(cfg.seed);
            let r = LightLeavesBasis::build(cb, &g, pol)?.report;
            let passed = r.full_rank && r.triangular && r.diagonal_invertible && r.homogeneous && r.target_scalars_nonzero;
            checks.push(check("light-leaves", passed, format!("policy {}, rank {}/{}", pol.name(), r.rank, r.size)));
        }
        Err(e) => checks.push(check("geometry", true, format!("skipped: {e}"))),
    }

    let golden = match &cfg.golden {
        Some(path) => Some(compare_golden(cfg, path)?),
        None => None,
    };
    let passed = checks.iter().all(|c| c.passed) && golden.as_ref().is_none_or(|g| g.matches);
    let rep = VerifyExport {
        task: "verify".into(),
        params: p,
        field: field_name(cfg.modulus),
        seed: cfg.seed,
        checks,
        golden,
        passed,
    };
    Ok(RunOutput {
        json: json(&rep)?,
        svg: None,
        ok: passed,
    })
}

/// Recomputes the job recorded in a golden JSON file and compares the outputs.
fn compare_golden(cfg: &JobConfig, path: &std::path::Path) -> Result<GoldenCheck> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let gold: Value = serde_json::from_str(&text)?;
    let task: Task = gold
        .get("task")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Parse("golden file has no task".into()))?
        .parse()?;
    if task == Task::Verify {
        return Err(Error::Invalid("a golden file cannot be a verify report".into()));
    }
    let mut job = cfg.clone();
    job.task = task;
    job.golden = None;
    job.out = None;
    if let Some(p) = gold.get("params") {
        let p: crate::params::AlgebraParams = serde_json::from_value(p.clone())?;
        job.e = p.e;
        job.sigma = p.sigma;
        job.h = p.h;
        job.n = p.n;
    }
    if let Some(s) = gold.get("seed").and_then(Value::as_u64) {
        job.seed = s;
    }
    let fresh = run(&job)?.json;
    let diff = first_difference(&fresh, &gold);
    Ok(GoldenCheck {
        path: path.display().to_string(),
        task: task.name().into(),
        matches: diff.is_none(),
        first_difference: diff,
    })
}

fn render(cfg: &JobConfig) -> Result<RunOutput> {
    if let Some(steps) = &cfg.path {
        let g = geometry(cfg)?;
        let path = Path::from_one_based(steps)?;
        if path.steps.iter().any(|&s| s >= g.h) {
            return Err(Error::InvalidParams(format!("path steps must lie in 1..={}", g.h)));
        }
        let s = svg::render_path(&g, &path);
        let rep = RenderExport {
            task: "render".into(),
            kind: "alcove-walk".into(),
            strands: 0,
            dots: 0,
            svg: s.clone(),
        };
        return Ok(RunOutput {
            json: json(&rep)?,
            svg: Some(s),
            ok: true,
        });
    }
    let x = match cfg.element.as_deref() {
        None | Some("sample") => svg::sample_element()?,
        Some(file) => {
            let text = fs::read_to_string(file).map_err(|e| Error::Io(format!("{file}: {e}")))?;
            let records: Vec<Record> = serde_json::from_str(&text)?;
            let n = records.first().map_or(0, |r| r.iseq.len());
            Kernel::new(cfg.e).from_records(n, &records)?
        }
    };
    let s = svg::render_element(&x);
    let rep = RenderExport {
        task: "render".into(),
        kind: "diagram".into(),
        strands: s.matches("class=\"strand\"").count(),
        dots: s.matches("class=\"dot\"").count(),
        svg: s.clone(),
    };
    Ok(RunOutput {
        json: json(&rep)?,
        svg: Some(s),
        ok: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn job(task: Task) -> JobConfig {
        JobConfig {
            task,
            n: 3,
            ..Default::default()
        }
    }

    #[test]
    fn render_sample() {
        let out = run(&job(Task::Render)).unwrap();
        assert_eq!(out.json["strands"], 13);
        assert_eq!(out.json["dots"], 3);
        assert_eq!(out, run(&job(Task::Render)).unwrap());
    }

    #[test]
    fn verify_passes_small() {
        let out = run(&job(Task::Verify)).unwrap();
        assert!(out.ok, "{}", out.json);
    }

    #[test]
    fn bad_configs_have_codes() {
        let mut c = job(Task::Basis);
        c.e = 1;
        assert_eq!(exit_code(&run(&c).unwrap_err()), EXIT_CONFIG);
        let mut c = job(Task::Basis);
        c.modulus = Some(10);
        assert_eq!(exit_code(&run(&c).unwrap_err()), EXIT_CONFIG);
        let mut c = job(Task::Basis);
        c.n = 4;
        c.budget = Some(0);
        assert_eq!(exit_code(&run(&c).unwrap_err()), EXIT_BUDGET);
        let mut c = job(Task::Verify);
        c.golden = Some("/nonexistent/golden.json".into());
        assert_eq!(exit_code(&run(&c).unwrap_err()), EXIT_IO);
    }
}
