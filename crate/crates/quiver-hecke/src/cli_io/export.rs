//! JSON shapes written by the CLI. Every type here round-trips through `serde_json`.

use serde::{Deserialize, Serialize};

use crate::bott_samelson::{SpanningReport, TruncatedBasisReport};
use crate::cellular::{mat_is_symmetric, CellularBasis};
use crate::combinatorics::{Multipartition, Tableau};
use crate::error::Result;
use crate::klr::Record;
use crate::lightleaves::{LightLeavesBasis, LightLeavesReport};
use crate::linalg::{rank, Field, SparseVec};
use crate::params::{AlgebraParams, Residue};

/// Rows of entries per component.
pub type Rows = Vec<Vec<Vec<usize>>>;
pub type Matrix = Vec<Vec<String>>;

pub fn rows(t: &Tableau, ell: usize) -> Rows {
    t.rows(ell)
}

pub fn matrix<F: Field>(m: &[Vec<F>]) -> Matrix {
    m.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
}

pub fn matrix_rank<F: Field>(m: &[Vec<F>]) -> usize {
    let vs: Vec<SparseVec<F>> = m
        .iter()
        .map(|r| r.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect())
        .collect();
    rank(&vs)
}

pub fn field_name(modulus: Option<u64>) -> String {
    match modulus {
        Some(p) => format!("F_{p}"),
        None => "Q".into(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellExport {
    pub index: usize,
    pub shape: Multipartition,
    pub size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementExport {
    pub cell: usize,
    pub s: Rows,
    pub t: Rows,
    pub degree: i64,
    pub terms: Vec<Record>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisExport {
    pub task: String,
    pub params: AlgebraParams,
    pub field: String,
    pub dim: usize,
    pub rank: usize,
    pub cells: Vec<CellExport>,
    pub elements: Vec<ElementExport>,
}

fn cells<F: Field>(cb: &CellularBasis<F>) -> Vec<CellExport> {
    cb.cells
        .iter()
        .enumerate()
        .map(|(i, lam)| CellExport {
            index: i,
            shape: lam.clone(),
            size: cb.tableaux[i].len(),
        })
        .collect()
}

pub fn basis_export<F: Field>(cb: &CellularBasis<F>, modulus: Option<u64>) -> BasisExport {
    let ell = cb.params().ell();
    let elements = cb
        .labels
        .iter()
        .map(|l| ElementExport {
            cell: l.cell,
            s: rows(&cb.tableaux[l.cell][l.s], ell),
            t: rows(&cb.tableaux[l.cell][l.t], ell),
            degree: cb.label_degree(l),
            terms: cb.element(l).to_records(),
        })
        .collect();
    BasisExport {
        task: "basis".into(),
        params: cb.params().clone(),
        field: field_name(modulus),
        dim: cb.quotient.dim(),
        rank: cb.rank(),
        cells: cells(cb),
        elements,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LightLeavesRun {
    pub report: LightLeavesReport,
    /// Target path `Q_λ` per cell, 0-based steps.
    pub targets: Vec<Vec<usize>>,
    /// `vectors[cell][s]`: the path vector of the `s`-th tableau.
    pub vectors: Vec<Vec<Vec<Vec<usize>>>>,
    pub diagonal_determinants: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LightLeavesExport {
    pub task: String,
    pub params: AlgebraParams,
    pub field: String,
    pub seed: u64,
    pub runs: Vec<LightLeavesRun>,
}

pub fn light_leaves_run<F: Field>(b: &LightLeavesBasis<F>) -> LightLeavesRun {
    LightLeavesRun {
        report: b.report.clone(),
        targets: b.targets.iter().map(|p| p.steps.clone()).collect(),
        vectors: b
            .vectors
            .iter()
            .map(|cell| cell.iter().map(|v| v.iter().map(|p| p.steps.clone()).collect()).collect())
            .collect(),
        diagonal_determinants: b.diagonal_determinants.iter().map(|x| x.to_string()).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BsExport {
    pub task: String,
    pub params: AlgebraParams,
    pub field: String,
    pub spanning: SpanningReport,
    /// The same check with the spot family removed.
    pub drop_spot: SpanningReport,
    pub truncated_basis: TruncatedBasisReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GramCell {
    pub index: usize,
    pub shape: Multipartition,
    pub dim: usize,
    pub matrix: Matrix,
    pub rank: usize,
    pub symmetric: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GramExport {
    pub task: String,
    pub params: AlgebraParams,
    pub field: String,
    pub cells: Vec<GramCell>,
}

pub fn gram_export<F: Field>(cb: &CellularBasis<F>, only: Option<usize>, modulus: Option<u64>) -> Result<GramExport> {
    let mut out = Vec::new();
    for i in 0..cb.cells.len() {
        if only.is_some_and(|c| c != i) {
            continue;
        }
        let g = cb.gram_matrix(i)?;
        out.push(GramCell {
            index: i,
            shape: cb.cells[i].clone(),
            dim: g.len(),
            matrix: matrix(&g),
            rank: matrix_rank(&g),
            symmetric: mat_is_symmetric(&g),
        });
    }
    Ok(GramExport {
        task: "gram".into(),
        params: cb.params().clone(),
        field: field_name(modulus),
        cells: out,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpechtCell {
    pub index: usize,
    pub shape: Multipartition,
    pub basis: Vec<Rows>,
    pub residues: Vec<Vec<Residue>>,
    pub degrees: Vec<i64>,
    /// Matrices of `y_1, …, y_n`; column `j` is the image of basis vector `j`.
    pub y: Vec<Matrix>,
    /// Matrices of `ψ_1, …, ψ_{n−1}`.
    pub psi: Vec<Matrix>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpechtExport {
    pub task: String,
    pub params: AlgebraParams,
    pub field: String,
    pub cells: Vec<SpechtCell>,
}

pub fn specht_export<F: Field>(cb: &CellularBasis<F>, only: Option<usize>, modulus: Option<u64>) -> Result<SpechtExport> {
    let ell = cb.params().ell();
    let mut out = Vec::new();
    for i in 0..cb.cells.len() {
        if only.is_some_and(|c| c != i) {
            continue;
        }
        let m = cb.specht_module(i)?;
        out.push(SpechtCell {
            index: i,
            shape: m.lambda.clone(),
            basis: m.basis.iter().map(|t| rows(t, ell)).collect(),
            residues: m.residues.clone(),
            degrees: m.degrees.clone(),
            y: m.y.iter().map(|x| matrix(x)).collect(),
            psi: m.psi.iter().map(|x| matrix(x)).collect(),
        });
    }
    Ok(SpechtExport {
        task: "specht".into(),
        params: cb.params().clone(),
        field: field_name(modulus),
        cells: out,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenCheck {
    pub path: String,
    pub task: String,
    pub matches: bool,
    /// First JSON pointer where the recomputed output differs.
    pub first_difference: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyExport {
    pub task: String,
    pub params: AlgebraParams,
    pub field: String,
    pub seed: u64,
    pub checks: Vec<Check>,
    pub golden: Option<GoldenCheck>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RenderExport {
    pub task: String,
    pub kind: String,
    pub strands: usize,
    pub dots: usize,
    pub svg: String,
}

/// The first JSON pointer at which `a` and `b` differ.
pub fn first_difference(a: &serde_json::Value, b: &serde_json::Value) -> Option<String> {
    use serde_json::Value;
    match (a, b) {
        (Value::Object(x), Value::Object(y)) => {
            let mut keys: Vec<&String> = x.keys().chain(y.keys()).collect();
            keys.sort();
            keys.dedup();
            for k in keys {
                match (x.get(k), y.get(k)) {
                    (Some(u), Some(v)) => {
                        if let Some(p) = first_difference(u, v) {
                            return Some(format!("/{k}{p}"));
                        }
                    }
                    _ => return Some(format!("/{k}")),
                }
            }
            None
        }
        (Value::Array(x), Value::Array(y)) => {
            for (i, (u, v)) in x.iter().zip(y).enumerate() {
                if let Some(p) = first_difference(u, v) {
                    return Some(format!("/{i}{p}"));
                }
            }
            (x.len() != y.len()).then(|| format!("/{}", x.len().min(y.len())))
        }
        _ => (a != b).then(String::new),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Q;
    use crate::quotient::QuotientOptions;
    use serde::de::DeserializeOwned;

    fn round_trip<T: Serialize + DeserializeOwned + PartialEq + std::fmt::Debug>(x: &T) {
        let s = serde_json::to_string(x).unwrap();
        let y: T = serde_json::from_str(&s).unwrap();
        assert_eq!(&y, x);
    }

    #[test]
    fn exports_round_trip() {
        let p = AlgebraParams::level_one(4, 2, 3).unwrap();
        let cb = CellularBasis::<Q>::build(&p, (), &QuotientOptions::default()).unwrap();
        let b = basis_export(&cb, None);
        assert_eq!(b.elements.len(), b.dim);
        round_trip(&b);
        let g = gram_export(&cb, None, None).unwrap();
        assert!(g.cells.iter().all(|c| c.symmetric));
        round_trip(&g);
        round_trip(&specht_export(&cb, Some(0), None).unwrap());
    }

    #[test]
    fn differences_are_located() {
        let a = serde_json::json!({"x": [1, 2, {"y": 3}]});
        let b = serde_json::json!({"x": [1, 2, {"y": 4}]});
        assert_eq!(first_difference(&a, &a), None);
        assert_eq!(first_difference(&a, &b).as_deref(), Some("/x/2/y"));
    }
}
