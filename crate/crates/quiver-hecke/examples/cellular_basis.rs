//! Build the tableaux cellular basis, check rank and grading, print Gram matrices.
use std::time::Instant;

use quiver_hecke::cellular::CellularBasis;
use quiver_hecke::linalg::{dense_rank, Field, Q};
use quiver_hecke::quotient::QuotientOptions;
use quiver_hecke::AlgebraParams;

fn main() -> quiver_hecke::Result<()> {
    let args: Vec<String> = std::env::args().collect();
    let e: usize = args.get(1).map_or(4, |s| s.parse().unwrap());
    let h: usize = args.get(2).map_or(2, |s| s.parse().unwrap());
    let n: usize = args.get(3).map_or(5, |s| s.parse().unwrap());
    let p = AlgebraParams::level_one(e, h, n)?;
    let t0 = Instant::now();
    let b = CellularBasis::<Q>::build(&p, (), &QuotientOptions::default())?;
    println!("{} basis elements, rank {} of {} ({:.2?})", b.len(), b.rank(), b.quotient.dim(), t0.elapsed());
    let graded = b.labels.iter().all(|l| b.element(l).degree(e).is_none_or(|d| d == b.label_degree(l)));
    println!("homogeneous of degree deg S + deg T: {graded}");
    for (c, lam) in b.cells.iter().enumerate() {
        let g = b.gram_matrix(c)?;
        let ints: Vec<Vec<i64>> = g.iter().map(|r| r.iter().map(|x| x.to_i64().unwrap()).collect()).collect();
        println!("{lam}: dim {} gram rank {} {:?}", ints.len(), dense_rank::<Q>(&ints, ()), ints);
    }
    println!("total {:.2?}", t0.elapsed());
    Ok(())
}
