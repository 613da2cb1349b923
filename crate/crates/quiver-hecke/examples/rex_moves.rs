//! Chains of hex/com/adj moves between enriched alcove words, and their composite `Υ` elements.
use quiver_hecke::bott_samelson::rex_search;
use quiver_hecke::geometry::{Geometry, Letter::*};
use quiver_hecke::klr::Kernel;
use quiver_hecke::lightleaves::upsilon;
use quiver_hecke::paths::distinguished_path;
use quiver_hecke::AlgebraParams;

fn main() -> quiver_hecke::Result<()> {
    let p = AlgebraParams::new(5, vec![0], vec![3], 18)?;
    let g = Geometry::new(&p)?;
    let k = Kernel::cyclotomic(&p);
    let pairs = [
        (vec![Pi(2), Empty, Empty], vec![Empty, Empty, Pi(2)]),
        (vec![Pi(2), Pi(0), Pi(1), Pi(0)], vec![Pi(2), Pi(1), Pi(0), Pi(1)]),
        (vec![Pi(2), Pi(1), Empty], vec![Empty, Pi(2), Pi(1)]),
    ];
    for (a, b) in pairs {
        let chain = rex_search(&g, &a, &b, 1000)?;
        let names: Vec<String> = chain
            .iter()
            .map(|w| w.iter().map(|l| g.letter_name(*l)).collect::<Vec<_>>().join(" "))
            .collect();
        println!("{}", names.join("  ->  "));
        let ps = chain.iter().map(|w| distinguished_path(&g, w)).collect::<quiver_hecke::Result<Vec<_>>>()?;
        let mut x = upsilon(&k, &g, &ps[0], &ps[0])?;
        for w in ps.windows(2) {
            x = k.multiply(&x, &upsilon(&k, &g, &w[0], &w[1])?)?;
        }
        let direct = upsilon(&k, &g, &ps[0], ps.last().unwrap())?;
        println!("  {} moves, composite equals direct Υ: {} ({} terms)", chain.len() - 1, x == direct, x.len());
    }
    Ok(())
}
