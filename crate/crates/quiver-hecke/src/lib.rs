//! Exact computations in quasi-hereditary quotients of cyclotomic quiver Hecke algebras.

pub mod bott_samelson;
pub mod cellular;
pub mod cli_io;
pub mod combinatorics;
pub mod error;
pub mod geometry;
pub mod klr;
pub mod lightleaves;
pub mod linalg;
pub mod params;
pub mod paths;
pub mod perm;
pub mod quotient;
pub mod relations;

pub use error::{Error, Result};
pub use params::{AlgebraParams, Residue};
