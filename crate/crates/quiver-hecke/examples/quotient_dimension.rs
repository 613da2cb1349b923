//! Dimension of the quotient against the tableau count.
use std::time::Instant;

use quiver_hecke::combinatorics::{multipartitions_ph, standard_tableaux};
use quiver_hecke::linalg::Q;
use quiver_hecke::quotient::{IdempotentPruning, Quotient, QuotientOptions};
use quiver_hecke::AlgebraParams;

fn main() -> quiver_hecke::Result<()> {
    let args: Vec<String> = std::env::args().collect();
    let e: usize = args.get(1).map_or(4, |s| s.parse().unwrap());
    let h: usize = args.get(2).map_or(2, |s| s.parse().unwrap());
    let n: usize = args.get(3).map_or(5, |s| s.parse().unwrap());
    let pruning = match args.get(4).map(String::as_str) {
        Some("minimal") => IdempotentPruning::Minimal,
        Some("j-tableau") => IdempotentPruning::NullJTableau,
        _ => IdempotentPruning::Standard,
    };
    let p = AlgebraParams::level_one(e, h, n)?;
    let t = Instant::now();
    let q = Quotient::<Q>::build(&p, (), &QuotientOptions { pruning, ..Default::default() })?;
    let want: usize = multipartitions_ph(&p, n).iter().map(|l| standard_tableaux(l).len().pow(2)).sum();
    println!("e={e} h={h} n={n} {pruning:?}: dim {} (tableaux {want}) {:?} in {:.2?}", q.dim(), q.stats(), t.elapsed());
    Ok(())
}
