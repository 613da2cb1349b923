//! R1–R5 and the cyclotomic relation as identities between normal forms.
use quiver_hecke::relations::{check_cyclotomic, check_relations};
use quiver_hecke::AlgebraParams;

fn main() -> quiver_hecke::Result<()> {
    for e in 3..=5 {
        for n in 1..=4 {
            let r = check_relations(e, n)?;
            println!("e={e} n={n}: {} identities, {} failures", r.checked, r.failures.len());
        }
    }
    for p in [
        AlgebraParams::level_one(4, 2, 4)?,
        AlgebraParams::new(5, vec![0, 2], vec![1, 1], 4)?,
    ] {
        let r = check_cyclotomic(&p)?;
        println!("cyclotomic σ={:?}: {} checks, {} failures", p.sigma, r.checked, r.failures.len());
    }
    Ok(())
}
