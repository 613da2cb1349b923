//! The tableaux cellular basis of the quotient, straightening, Specht modules,
//! Gram forms and the restriction filtration.
//!
//! Cells are the multipartitions of `P_h(n)` ordered by ≻ (index 0 is the
//! ≻-largest). "Higher" means strictly ≻-larger.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::combinatorics::{
    addable_removable, multipartitions_ph, permutation_between, standard_tableaux, t_lambda,
    tableau_degree, BoxOrder, Multipartition, Node, Tableau,
};
use crate::error::{Error, Result};
use crate::klr::generators::{psi_e, y_e};
use crate::klr::{KlrElement, Monomial};
use crate::linalg::{Field, Solver, SparseVec};
use crate::params::{AlgebraParams, Residue};
use crate::quotient::{Quotient, QuotientOptions};

/// `(λ, s, t)` by index: cell, row tableau, column tableau.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CellLabel {
    pub cell: usize,
    pub s: usize,
    pub t: usize,
}

/// `ψ^S_T`-style element `ψ_{ĉ(w)} e_{res T}` with `w(T) = S`.
pub fn psi_tableaux(s: &Tableau, t: &Tableau, p: &AlgebraParams) -> Result<KlrElement> {
    let w = permutation_between(s, t)?;
    let m = Monomial {
        dots: vec![0; t.n()],
        perm: w.iter().map(|&x| x as u8).collect(),
        bottom: t.residue_sequence(p),
    };
    Ok(KlrElement::monomial(m))
}

/// A spanning family of the quotient with its coordinates and rank.
pub struct Certified<F: Field> {
    pub elements: Vec<KlrElement>,
    pub coords: Vec<SparseVec<F>>,
    pub rank: usize,
    solver: Solver<F>,
}

impl<F: Field> Certified<F> {
    pub fn new(q: &Quotient<F>, elements: Vec<KlrElement>) -> Result<Self> {
        let mut solver = Solver::new(q.ctx());
        let mut coords = Vec::with_capacity(elements.len());
        for x in &elements {
            let c = q.coordinates(x)?;
            solver.insert(&c);
            coords.push(c);
        }
        Ok(Certified {
            elements,
            coords,
            rank: solver.rank(),
            solver,
        })
    }

    pub fn is_basis(&self, dim: usize) -> bool {
        self.rank == dim && self.elements.len() == dim
    }

    /// Coefficients of a coordinate vector in this family.
    pub fn solve(&self, v: &SparseVec<F>) -> Result<SparseVec<F>> {
        self.solver.solve(v).ok_or(Error::NotInSpan)
    }
}

pub struct CellularBasis<F: Field> {
    pub quotient: Quotient<F>,
    pub cells: Vec<Multipartition>,
    /// Standard tableaux per cell; `t_λ` is first.
    pub tableaux: Vec<Vec<Tableau>>,
    pub labels: Vec<CellLabel>,
    pub label_index: HashMap<CellLabel, usize>,
    pub family: Certified<F>,
    /// `ψ^S_{t_λ}` per cell and tableau.
    pub down: Vec<Vec<KlrElement>>,
}

impl<F: Field> CellularBasis<F> {
    pub fn build(p: &AlgebraParams, ctx: F::Ctx, opts: &QuotientOptions) -> Result<Self> {
        let q = Quotient::<F>::build(p, ctx, opts)?;
        Self::from_quotient(q)
    }

    pub fn from_quotient(q: Quotient<F>) -> Result<Self> {
        let p = q.params().clone();
        let cells = multipartitions_ph(&p, p.n);
        let mut tableaux = Vec::new();
        let mut down = Vec::new();
        for lam in &cells {
            let tl = t_lambda(lam);
            let mut ts = standard_tableaux(lam);
            ts.retain(|t| *t != tl);
            ts.insert(0, tl.clone());
            let d: Vec<KlrElement> = ts
                .iter()
                .map(|s| psi_tableaux(s, &tl, &p))
                .collect::<Result<_>>()?;
            tableaux.push(ts);
            down.push(d);
        }
        let mut labels = Vec::new();
        let mut elements = Vec::new();
        for (c, ts) in tableaux.iter().enumerate() {
            let ups: Vec<KlrElement> = down[c].iter().map(|x| q.kernel().star(x)).collect();
            for s in 0..ts.len() {
                for (t, up) in ups.iter().enumerate() {
                    labels.push(CellLabel { cell: c, s, t });
                    elements.push(q.multiply(&down[c][s], up)?);
                }
            }
        }
        let family = Certified::new(&q, elements)?;
        let label_index = labels.iter().enumerate().map(|(i, l)| (*l, i)).collect();
        Ok(CellularBasis {
            quotient: q,
            cells,
            tableaux,
            labels,
            label_index,
            family,
            down,
        })
    }

    pub fn params(&self) -> &AlgebraParams {
        self.quotient.params()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.family.rank
    }

    pub fn is_full_rank(&self) -> bool {
        self.family.is_basis(self.quotient.dim())
    }

    pub fn element(&self, l: &CellLabel) -> &KlrElement {
        &self.family.elements[self.label_index[l]]
    }

    /// `deg(S) + deg(T)`.
    pub fn label_degree(&self, l: &CellLabel) -> i64 {
        let p = self.params();
        let ts = &self.tableaux[l.cell];
        tableau_degree(&ts[l.s], BoxOrder::Cyl, p).unwrap_or(0)
            + tableau_degree(&ts[l.t], BoxOrder::Cyl, p).unwrap_or(0)
    }

    /// Express `x` in the cellular basis.
    pub fn straighten(&self, x: &KlrElement) -> Result<Vec<(CellLabel, F)>> {
        let v = self.quotient.coordinates(x)?;
        let c = self.family.solve(&v)?;
        Ok(c.into_iter().map(|(i, f)| (self.labels[i], f)).collect())
    }

    pub fn cell_index(&self, lam: &Multipartition) -> Option<usize> {
        self.cells.iter().position(|c| c == lam)
    }

    fn framed_generator(&self, g: Generator, top: &[Residue]) -> Result<KlrElement> {
        match g {
            Generator::Y(k) => y_e(k, top),
            Generator::Psi(r) => {
                // ψ_r e_{s_r·top} has top `top`.
                let mut b = top.to_vec();
                b.swap(r - 1, r);
                psi_e(r, &b)
            }
        }
    }

    /// Matrices of `y_k` and `ψ_r` on the cell module of `λ`.
    pub fn specht_module(&self, cell: usize) -> Result<SpechtModule<F>> {
        let p = self.params().clone();
        let n = p.n;
        let ts = &self.tableaux[cell];
        let dim = ts.len();
        let zero = F::from_i64(0, self.quotient.ctx());
        let residues: Vec<Vec<Residue>> = ts.iter().map(|t| t.residue_sequence(&p)).collect();
        let mut gens = Vec::new();
        for k in 1..=n {
            gens.push(Generator::Y(k));
        }
        for r in 1..n {
            gens.push(Generator::Psi(r));
        }
        let mut mats = Vec::new();
        for &g in &gens {
            let mut m = vec![vec![zero.clone(); dim]; dim];
            for s in 0..dim {
                let x = self.framed_generator(g, &residues[s])?;
                let prod = self.quotient.multiply(&x, &self.down[cell][s])?;
                for (l, c) in self.straighten(&prod)? {
                    if l.cell > cell {
                        return Err(Error::Invalid(format!(
                            "term in lower cell {} from cell {}",
                            l.cell, cell
                        )));
                    }
                    if l.cell < cell {
                        continue;
                    }
                    if l.t != 0 {
                        return Err(Error::Invalid("cell term with t ≠ t_λ".into()));
                    }
                    m[l.s][s] = c;
                }
            }
            mats.push(m);
        }
        let degrees = ts
            .iter()
            .map(|t| tableau_degree(t, BoxOrder::Cyl, &p))
            .collect::<Result<_>>()?;
        Ok(SpechtModule {
            lambda: self.cells[cell].clone(),
            basis: ts.clone(),
            residues,
            degrees,
            y: mats[..n].to_vec(),
            psi: mats[n..].to_vec(),
        })
    }

    /// `⟨s, t⟩` from `ψ^{t_λ}_s ψ^t_{t_λ} ≡ ⟨s,t⟩ e_{t_λ}` modulo higher cells.
    pub fn gram_matrix(&self, cell: usize) -> Result<Vec<Vec<F>>> {
        let dim = self.tableaux[cell].len();
        let zero = F::from_i64(0, self.quotient.ctx());
        let mut g = vec![vec![zero; dim]; dim];
        let ups: Vec<KlrElement> = self.down[cell]
            .iter()
            .map(|x| self.quotient.kernel().star(x))
            .collect();
        for s in 0..dim {
            for t in 0..dim {
                let x = self.quotient.multiply(&ups[s], &self.down[cell][t])?;
                for (l, c) in self.straighten(&x)? {
                    if l.cell > cell {
                        return Err(Error::Invalid("Gram product leaves the cell ideal".into()));
                    }
                    if l.cell == cell {
                        if l.s != 0 || l.t != 0 {
                            return Err(Error::Invalid("Gram product not a multiple of e_{t_λ}".into()));
                        }
                        g[s][t] = c;
                    }
                }
            }
        }
        Ok(g)
    }

    /// Layers of the restriction of the cell module of `λ` to rank `n − 1`.
    pub fn restriction_filtration(&self, cell: usize) -> Result<Vec<RestrictionLayer>> {
        let p = self.params();
        let lam = &self.cells[cell];
        let cfg = lam.to_config();
        let (_, mut rem) = addable_removable(&cfg, None, p);
        // A_1 ≻ A_2 ≻ … : Node order is ≻-decreasing.
        rem.sort();
        let ts = &self.tableaux[cell];
        let mut out = Vec::new();
        for a in rem {
            let members: Vec<usize> = (0..ts.len())
                .filter(|&i| ts[i].node_of(p.n) == a)
                .collect();
            let shifts: Vec<i64> = members
                .iter()
                .map(|&i| {
                    let full = tableau_degree(&ts[i], BoxOrder::Cyl, p).unwrap_or(0);
                    let part = tableau_degree(&ts[i].restrict(p.n - 1), BoxOrder::Cyl, p).unwrap_or(0);
                    full - part
                })
                .collect();
            let sub = cfg.without(&a).to_multipartition(p.ell()).ok_or_else(|| {
                Error::Invalid("removing a box left a non-partition".into())
            })?;
            out.push(RestrictionLayer {
                removed: a,
                shape: sub,
                members,
                shift: shifts.first().copied().unwrap_or(0),
                uniform_shift: shifts.windows(2).all(|w| w[0] == w[1]),
            });
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    Y(usize),
    Psi(usize),
}

/// One layer `S(λ − A)⟨shift⟩` of the restriction.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RestrictionLayer {
    pub removed: Node,
    pub shape: Multipartition,
    /// Indices (into the cell's tableaux) of `s` with `s(A) = n`.
    pub members: Vec<usize>,
    pub shift: i64,
    pub uniform_shift: bool,
}

/// Matrices of the generators on a cell module, columns indexed by the basis.
#[derive(Clone, Debug)]
pub struct SpechtModule<F: Field> {
    pub lambda: Multipartition,
    pub basis: Vec<Tableau>,
    pub residues: Vec<Vec<Residue>>,
    pub degrees: Vec<i64>,
    /// `y[k-1]`.
    pub y: Vec<Vec<Vec<F>>>,
    /// `psi[r-1]`.
    pub psi: Vec<Vec<Vec<F>>>,
}

impl<F: Field> SpechtModule<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Diagonal projection onto basis vectors of residue sequence `i`.
    pub fn idempotent(&self, i: &[Residue]) -> Vec<Vec<F>> {
        let ctx = self.ctx();
        let d = self.dim();
        let mut m = vec![vec![F::from_i64(0, ctx); d]; d];
        for (s, r) in self.residues.iter().enumerate() {
            if r == i {
                m[s][s] = F::from_i64(1, ctx);
            }
        }
        m
    }

    fn ctx(&self) -> F::Ctx {
        self.y
            .first()
            .and_then(|m| m.first())
            .and_then(|r| r.first())
            .map(|x| x.ctx())
            .expect("module of positive rank")
    }
}

pub fn mat_mul<F: Field>(a: &[Vec<F>], b: &[Vec<F>]) -> Vec<Vec<F>> {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    let k = b.len();
    let mut out = Vec::with_capacity(n);
    for row in a {
        let mut r = Vec::with_capacity(m);
        for j in 0..m {
            let mut acc: Option<F> = None;
            for t in 0..k {
                let v = row[t].mul(&b[t][j]);
                acc = Some(match acc {
                    None => v,
                    Some(x) => x.add(&v),
                });
            }
            r.push(acc.expect("nonempty"));
        }
        out.push(r);
    }
    out
}

pub fn mat_is_symmetric<F: Field>(a: &[Vec<F>]) -> bool {
    (0..a.len()).all(|i| (0..a.len()).all(|j| a[i][j] == a[j][i]))
}

/// The tableaux of a fixed shape, indexed for lookup.
pub fn tableau_index(ts: &[Tableau]) -> HashMap<Tableau, usize> {
    ts.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Q;

    #[test]
    fn basis_small() {
        let p = AlgebraParams::level_one(4, 2, 4).unwrap();
        let b = CellularBasis::<Q>::build(&p, (), &QuotientOptions::default()).unwrap();
        assert_eq!(b.len(), 14);
        assert!(b.is_full_rank());
        for (c, _) in b.cells.iter().enumerate() {
            let g = b.gram_matrix(c).unwrap();
            assert!(mat_is_symmetric(&g));
            assert_eq!(g[0][0], Q::from_i64(1, ()));
        }
    }
}
