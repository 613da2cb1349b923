//! Light leaves bases for every path-vector policy, certified against the tableaux basis.
//!
//! Usage: `light_leaves [e] [h] [n] [seed]`
use std::time::Instant;

use quiver_hecke::cellular::CellularBasis;
use quiver_hecke::geometry::Geometry;
use quiver_hecke::lightleaves::{LightLeavesBasis, VectorPolicy};
use quiver_hecke::linalg::Q;
use quiver_hecke::quotient::QuotientOptions;
use quiver_hecke::AlgebraParams;

fn main() -> quiver_hecke::Result<()> {
    let args: Vec<String> = std::env::args().collect();
    let e: usize = args.get(1).map_or(4, |s| s.parse().unwrap());
    let h: usize = args.get(2).map_or(2, |s| s.parse().unwrap());
    let n: usize = args.get(3).map_or(5, |s| s.parse().unwrap());
    let seed: u64 = args.get(4).map_or(7, |s| s.parse().unwrap());
    let p = AlgebraParams::level_one(e, h, n)?;
    let g = Geometry::new(&p)?;
    let cb = CellularBasis::<Q>::build(&p, (), &QuotientOptions::default())?;
    println!("e={e} h={h} n={n}: {} tableaux basis elements", cb.len());
    for pol in [
        VectorPolicy::Tableau,
        VectorPolicy::ReducedTarget,
        VectorPolicy::ReducedEverywhere,
        VectorPolicy::Random(seed),
    ] {
        let t = Instant::now();
        let r = LightLeavesBasis::build(&cb, &g, pol)?.report;
        println!(
            "{:<20} rank {}/{} triangular {} unit diagonal {} homogeneous {} k = {} ({:.2?})",
            pol.name(),
            r.rank,
            r.size,
            r.triangular,
            r.diagonal_units,
            r.homogeneous,
            r.target_scalars.join(","),
            t.elapsed()
        );
    }
    Ok(())
}
