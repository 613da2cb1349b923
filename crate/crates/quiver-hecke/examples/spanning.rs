//! Generators in context span the truncation `f𝓗f`; dropping the spot family does not.
//!
//! Usage: `spanning [e] [h] [n]` with `h | n`.
use quiver_hecke::bott_samelson::{spanning_check, GeneratorKind, SpanningOptions, TruncatedBasis};
use quiver_hecke::cellular::CellularBasis;
use quiver_hecke::geometry::Geometry;
use quiver_hecke::linalg::Q;
use quiver_hecke::quotient::QuotientOptions;
use quiver_hecke::AlgebraParams;

fn main() -> quiver_hecke::Result<()> {
    let args: Vec<String> = std::env::args().collect();
    let e: usize = args.get(1).map_or(4, |s| s.parse().unwrap());
    let h: usize = args.get(2).map_or(2, |s| s.parse().unwrap());
    let n: usize = args.get(3).map_or(6, |s| s.parse().unwrap());
    let p = AlgebraParams::level_one(e, h, n)?;
    let g = Geometry::new(&p)?;
    let cb = CellularBasis::<Q>::build(&p, (), &QuotientOptions::default())?;
    let full = spanning_check(&cb, &g, &SpanningOptions::default())?;
    println!("all families: span {} of {} after {} rounds {:?}", full.span_dim, full.target_dim, full.rounds, full.generator_counts);
    let opts = SpanningOptions {
        drop: vec![GeneratorKind::Spot],
        ..Default::default()
    };
    let cut = spanning_check(&cb, &g, &opts)?;
    println!("without spot: span {} of {}", cut.span_dim, cut.target_dim);
    let tb = TruncatedBasis::build(&cb, &g, 100_000)?;
    let r = &tb.report;
    println!(
        "c^S_P c^P_T: {} elements, rank {} of {}, basis {}, unit diagonal {}, classes {:?}",
        r.size, r.rank, r.target_dim, r.basis, r.diagonal_units, r.class_counts
    );
    Ok(())
}
