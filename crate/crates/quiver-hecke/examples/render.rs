//! Writes an SVG of a KLR diagram and one of an alcove walk into a directory.
//!
//! Usage: `render [dir]`
use std::fs;
use std::path::PathBuf;

use quiver_hecke::cli_io::svg::{render_element, render_path, sample_element};
use quiver_hecke::geometry::Geometry;
use quiver_hecke::geometry::Letter::*;
use quiver_hecke::paths::distinguished_path;
use quiver_hecke::AlgebraParams;

fn main() -> quiver_hecke::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| ".".into()));
    let x = sample_element()?;
    println!("{}", x.display_terms());
    fs::write(dir.join("diagram.svg"), render_element(&x))?;
    let p = AlgebraParams::new(5, vec![0], vec![3], 12)?;
    let g = Geometry::new(&p)?;
    let path = distinguished_path(&g, &[Pi(2), Pi(1), Empty])?;
    println!("{path}");
    fs::write(dir.join("walk.svg"), render_path(&g, &path))?;
    println!("wrote diagram.svg and walk.svg to {}", dir.display());
    Ok(())
}
