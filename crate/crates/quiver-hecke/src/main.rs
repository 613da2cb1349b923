use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use quiver_hecke::cli_io::{exit_code, execute, JobConfig, Task, EXIT_IO};

#[derive(Parser)]
#[command(name = "qhecke", version, about = "Exact computations in quotients of cyclotomic quiver Hecke algebras")]
struct Cli {
    #[command(subcommand)]
    task: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Graded cellular tableaux basis as JSON records.
    Basis,
    /// Light leaves bases for one or more path-vector policies.
    LightLeaves,
    /// Spanning check and truncated basis in the path category.
    BsBasis,
    /// Gram matrices of the cell modules.
    Gram,
    /// Matrices of the generators on the cell modules.
    Specht,
    /// Invariant suite, optionally against a golden JSON file.
    Verify,
    /// SVG of a KLR diagram or of an alcove walk.
    Render,
}

#[derive(Args)]
struct Opts {
    /// Flat `key = value` file applied before the flags below.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    e: Option<String>,
    /// Multicharge, comma separated.
    #[arg(long, global = true, allow_hyphen_values = true)]
    sigma: Option<String>,
    /// Column counts per component, comma separated.
    #[arg(long, global = true)]
    h: Option<String>,
    #[arg(long, global = true)]
    n: Option<String>,
    /// Prime modulus; rational arithmetic if absent.
    #[arg(long, global = true)]
    modulus: Option<String>,
    #[arg(long, global = true)]
    budget: Option<String>,
    #[arg(long, global = true)]
    out: Option<String>,
    #[arg(long, global = true)]
    seed: Option<String>,
    /// tableau, reduced-target, reduced-everywhere, random[:seed] or all.
    #[arg(long, global = true)]
    policy: Option<String>,
    /// Generator families to leave out of the spanning check.
    #[arg(long, global = true)]
    drop: Option<String>,
    #[arg(long, global = true)]
    cell: Option<String>,
    #[arg(long, global = true)]
    golden: Option<String>,
    /// `sample` or a JSON file of records.
    #[arg(long, global = true)]
    element: Option<String>,
    /// 1-based steps of a path to draw.
    #[arg(long, global = true)]
    path: Option<String>,
    #[arg(long, global = true)]
    cap: Option<String>,
}

fn task(c: Command) -> Task {
    match c {
        Command::Basis => Task::Basis,
        Command::LightLeaves => Task::LightLeaves,
        Command::BsBasis => Task::BsBasis,
        Command::Gram => Task::Gram,
        Command::Specht => Task::Specht,
        Command::Verify => Task::Verify,
        Command::Render => Task::Render,
    }
}

fn config(cli: &Cli) -> quiver_hecke::Result<JobConfig> {
    let mut cfg = JobConfig::default();
    if let Some(path) = &cli.opts.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| quiver_hecke::Error::Io(format!("{}: {e}", path.display())))?;
        cfg.apply_kv(&text)?;
    }
    let o = &cli.opts;
    let flags = [
        ("e", &o.e),
        ("sigma", &o.sigma),
        ("h", &o.h),
        ("n", &o.n),
        ("modulus", &o.modulus),
        ("budget", &o.budget),
        ("out", &o.out),
        ("seed", &o.seed),
        ("policy", &o.policy),
        ("drop", &o.drop),
        ("cell", &o.cell),
        ("golden", &o.golden),
        ("element", &o.element),
        ("path", &o.path),
        ("cap", &o.cap),
    ];
    for (k, v) in flags {
        if let Some(v) = v {
            cfg.set(k, v)?;
        }
    }
    cfg.task = task(cli.task);
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match config(&cli) {
        Ok(cfg) => execute(&cfg),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                quiver_hecke::Error::Io(_) => EXIT_IO,
                e => exit_code(&e),
            }
        }
    };
    ExitCode::from(code as u8)
}
