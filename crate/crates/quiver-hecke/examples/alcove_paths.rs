//! Wall distances, block paths in the dominant chamber, and branching coefficients.
//!
//! Usage: `alcove_paths [e] [h] [n]`
use quiver_hecke::bott_samelson::classify_block;
use quiver_hecke::geometry::{Geometry, Letter};
use quiver_hecke::lightleaves::branching_coeffs;
use quiver_hecke::paths::{flat_path, std_n_sigma, sun_path};
use quiver_hecke::AlgebraParams;

fn main() -> quiver_hecke::Result<()> {
    let args: Vec<String> = std::env::args().collect();
    let e: usize = args.get(1).map_or(5, |s| s.parse().unwrap());
    let h: usize = args.get(2).map_or(3, |s| s.parse().unwrap());
    let n: usize = args.get(3).map_or(12, |s| s.parse().unwrap());
    let p = AlgebraParams::level_one(e, h, n)?;
    let g = Geometry::new(&p)?;
    for t in 0..h {
        let l = Letter::Pi(t);
        println!("b({}) = {}", g.letter_name(l), g.b_distance(l)?);
    }
    for bp in std_n_sigma(&g, n, 100_000)? {
        let names: Vec<String> = bp.blocks.iter().map(|b| b.name(&g)).collect();
        let classes = (0..bp.blocks.len())
            .map(|i| classify_block(&g, &bp, i).map(|c| c.map_or("-".to_string(), |c| format!("{c:?}"))))
            .collect::<quiver_hecke::Result<Vec<_>>>()?;
        println!(
            "{:<40} shape {} degree {} classes {}",
            names.join(" ⊠ "),
            bp.shape,
            bp.path.degree(&g),
            classes.join(" ")
        );
    }
    let (s, t) = (flat_path(&g, h - 1)?, sun_path(&g, h - 1)?);
    println!("S = {s}\nT = {t}");
    for d in branching_coeffs(&g, &s, &t)? {
        if !d.word.is_empty() {
            println!("d_{} = w^{}_{} sign {}", d.p, d.p, d.q, d.sign);
        }
    }
    Ok(())
}
