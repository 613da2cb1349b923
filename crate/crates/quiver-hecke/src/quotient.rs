//! The finite-dimensional quotient `𝓗 = H^σ_n / (y_h)` as a linear model.
//!
//! For every surviving idempotent `e_j` the right module `e_j 𝓗` is computed as
//! the span of normal monomials with top `j` modulo the right closure of the
//! ideal generators. Elimination runs block by block, a block being the
//! monomials of one degree and one bottom idempotent, and the standard
//! monomials (non-pivots) give coordinates for the whole algebra.
//!
//! Two reductions keep this finite:
//! - total dot degree is truncated at `max tableau degree + 1`, since `y^a e_j`
//!   of larger degree exceeds every degree present in `e_j 𝓗 e_j`;
//! - idempotents outside the chosen `alive` set are killed, and every path
//!   through a killed idempotent is fed back in as a relation.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::combinatorics::{
    j_tableau, multipartitions_ph, standard_tableaux, tableau_degree, y_ideal_generators, BoxOrder,
    IdealGenerator,
};
use crate::error::{Error, Result};
use crate::klr::{all_sequences, Kernel, KlrElement, Monomial, Prune};
use crate::linalg::{Echelon, Field, SparseVec};
use crate::params::{AlgebraParams, Residue};

/// Which idempotents are treated as zero from the start.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum IdempotentPruning {
    /// Only `Λ(j_1) = 0` and the bare idempotent summands of `y_h`.
    Minimal,
    /// Also every `j` whose J-tableau is null.
    NullJTableau,
    /// Everything that is not the residue sequence of a standard tableau.
    #[default]
    Standard,
}

#[derive(Clone, Debug)]
pub struct QuotientOptions {
    pub pruning: IdempotentPruning,
    /// Override of the dot truncation.
    pub dot_cap: Option<usize>,
    /// Maximum number of independent relations accepted before giving up.
    pub budget: usize,
}

impl Default for QuotientOptions {
    fn default() -> Self {
        QuotientOptions {
            pruning: IdempotentPruning::Standard,
            dot_cap: None,
            budget: 5_000_000,
        }
    }
}

#[derive(Clone, Debug)]
struct Block<F: Field> {
    monos: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    ech: Echelon<F>,
    /// Global coordinate of each non-pivot column.
    coord: Vec<Option<usize>>,
}

impl<F: Field> Block<F> {
    fn new() -> Self {
        Block {
            monos: Vec::new(),
            index: HashMap::new(),
            ech: Echelon::new(),
            coord: Vec::new(),
        }
    }
}

type BlockKey = (i64, Vec<Residue>);

/// Summary numbers of a build.
#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq, Eq)]
pub struct QuotientStats {
    pub alive: usize,
    pub monomials: usize,
    pub relations: usize,
    pub dimension: usize,
    pub dot_cap: usize,
}

pub struct Quotient<F: Field> {
    params: AlgebraParams,
    ctx: F::Ctx,
    kernel: Kernel,
    alive: Arc<HashSet<Vec<Residue>>>,
    dot_cap: usize,
    tops: BTreeMap<Vec<Residue>, HashMap<BlockKey, Block<F>>>,
    standard: Vec<Monomial>,
    stats: QuotientStats,
}

/// Residue sequences of standard tableaux over `P_h(n)`.
pub fn tableau_residue_sequences(p: &AlgebraParams) -> HashSet<Vec<Residue>> {
    let mut out = HashSet::new();
    for lam in multipartitions_ph(p, p.n) {
        for t in standard_tableaux(&lam) {
            out.insert(t.residue_sequence(p));
        }
    }
    out
}

/// Largest `deg_≻` of a standard tableau over `P_h(n)`.
pub fn max_tableau_degree(p: &AlgebraParams) -> i64 {
    let mut best = 0;
    for lam in multipartitions_ph(p, p.n) {
        for t in standard_tableaux(&lam) {
            if let Ok(d) = tableau_degree(&t, BoxOrder::Cyl, p) {
                best = best.max(d);
            }
        }
    }
    best
}

fn killed_by_prefix(j: &[Residue], gens: &[IdealGenerator]) -> bool {
    gens.iter()
        .any(|g| g.is_idempotent() && j.len() >= g.len() && j[..g.len()] == g.residues[..])
}

/// The set of idempotents kept by a pruning policy.
pub fn alive_sequences(p: &AlgebraParams, pruning: IdempotentPruning) -> HashSet<Vec<Residue>> {
    let gens = y_ideal_generators(p);
    let base = |j: &Vec<Residue>| {
        (j.is_empty() || p.charge_count(j[0]) > 0) && !killed_by_prefix(j, &gens)
    };
    match pruning {
        IdempotentPruning::Standard => tableau_residue_sequences(p).into_iter().filter(base).collect(),
        IdempotentPruning::NullJTableau => all_sequences(p.n, p.e)
            .into_iter()
            .filter(base)
            .filter(|j| j_tableau(j, p).is_some())
            .collect(),
        IdempotentPruning::Minimal => all_sequences(p.n, p.e).into_iter().filter(base).collect(),
    }
}

/// Permutations `π` (bottom position ↦ top position) with `top[π(x)] = bottom[x]`.
fn perms_between(bottom: &[Residue], top: &[Residue]) -> Vec<Vec<u8>> {
    let n = bottom.len();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(
        x: usize,
        bottom: &[Residue],
        top: &[Residue],
        cur: &mut Vec<u8>,
        used: &mut [bool],
        out: &mut Vec<Vec<u8>>,
    ) {
        if x == bottom.len() {
            out.push(cur.clone());
            return;
        }
        for y in 0..top.len() {
            if !used[y] && top[y] == bottom[x] {
                used[y] = true;
                cur.push(y as u8);
                rec(x + 1, bottom, top, cur, used, out);
                cur.pop();
                used[y] = false;
            }
        }
    }
    rec(0, bottom, top, &mut cur, &mut used, &mut out);
    out
}

/// Dot vectors of total degree `< cap`.
fn dot_vectors(n: usize, cap: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for v in &out {
            let s: usize = v.iter().map(|&d| d as usize).sum();
            for d in 0..cap.saturating_sub(s) {
                let mut w = v.clone();
                w.push(d as u8);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

fn same_content(a: &[Residue], b: &[Residue]) -> bool {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    x.sort_unstable();
    y.sort_unstable();
    x == y
}

impl<F: Field> Quotient<F> {
    pub fn build(p: &AlgebraParams, ctx: F::Ctx, opts: &QuotientOptions) -> Result<Self> {
        p.validate()?;
        let alive = Arc::new(alive_sequences(p, opts.pruning));
        let dot_cap = opts
            .dot_cap
            .unwrap_or_else(|| max_tableau_degree(p).max(0) as usize + 1);
        let prune = Prune {
            dot_cap: Some(dot_cap),
            ..Prune::cyclotomic(p)
        };
        let kernel = Kernel::with_prune(p.e, prune);
        let mut q = Quotient {
            params: p.clone(),
            ctx,
            kernel,
            alive: alive.clone(),
            dot_cap,
            tops: BTreeMap::new(),
            standard: Vec::new(),
            stats: QuotientStats {
                alive: alive.len(),
                dot_cap,
                ..QuotientStats::default()
            },
        };
        let mut tops: Vec<Vec<Residue>> = alive.iter().cloned().collect();
        tops.sort();
        let all: Vec<Vec<Residue>> = match opts.pruning {
            IdempotentPruning::Minimal | IdempotentPruning::NullJTableau => all_sequences(p.n, p.e),
            IdempotentPruning::Standard => {
                // Only sequences with the content of some alive top matter.
                let mut contents: HashSet<Vec<Residue>> = HashSet::new();
                for j in &tops {
                    let mut c = j.clone();
                    c.sort_unstable();
                    contents.insert(c);
                }
                all_sequences(p.n, p.e)
                    .into_iter()
                    .filter(|k| {
                        let mut c = k.clone();
                        c.sort_unstable();
                        contents.contains(&c)
                    })
                    .collect()
            }
        };
        let mut relations = 0usize;
        for j in &tops {
            relations += q.build_top(j, &all, opts.budget.saturating_sub(relations))?;
        }
        q.stats.relations = relations;
        q.assign_coordinates();
        Ok(q)
    }

    fn build_top(&mut self, j: &[Residue], all: &[Vec<Residue>], budget: usize) -> Result<usize> {
        let n = self.params.n;
        let dots = dot_vectors(n, self.dot_cap);
        let mut blocks: HashMap<BlockKey, Block<F>> = HashMap::new();
        let mut monomials: Vec<Monomial> = Vec::new();
        let mut dead_monomials: Vec<Monomial> = Vec::new();
        for k in all.iter().filter(|k| same_content(k, j)) {
            let is_alive = self.alive.contains(k);
            for perm in perms_between(k, j) {
                for d in &dots {
                    let m = Monomial {
                        dots: d.clone(),
                        perm: perm.clone(),
                        bottom: k.clone(),
                    };
                    if self.kernel.prune().kills(&m) {
                        continue;
                    }
                    if is_alive {
                        monomials.push(m);
                    } else {
                        dead_monomials.push(m);
                    }
                }
            }
        }
        // Columns: more dots and longer permutations first, so they become pivots.
        monomials.sort_by_key(|m| {
            let len = crate::perm::length(&m.perm_usize());
            (std::cmp::Reverse(m.dot_degree()), std::cmp::Reverse(len), m.clone())
        });
        let e = self.params.e;
        for m in monomials {
            let key = (m.degree(e), m.bottom.clone());
            let b = blocks.entry(key).or_insert_with(Block::new);
            b.index.insert(m.clone(), b.monos.len());
            b.monos.push(m);
        }
        self.stats.monomials += blocks.values().map(|b| b.monos.len()).sum::<usize>();

        let mut queue: VecDeque<KlrElement> = VecDeque::new();
        let mut accepted = 0usize;
        let mut gens: Vec<KlrElement> = Vec::new();

        // Cyclotomic and y_h relations on the right of every spanning monomial.
        let ideal = y_ideal_generators(&self.params);
        let lam: Vec<usize> = (0..e).map(|r| self.params.charge_count(r as Residue)).collect();
        for b in blocks.values() {
            for m in &b.monos {
                let x = KlrElement::monomial(m.clone());
                let k = &m.bottom;
                let c = lam[k[0] as usize];
                let mut y = x.clone();
                for _ in 0..c {
                    y = self.kernel.times_y(&y, 1)?;
                }
                gens.push(y);
                for g in ideal.iter().filter(|g| !g.is_idempotent()) {
                    if k.len() >= g.len() && k[..g.len()] == g.residues[..] {
                        let mut y = x.clone();
                        for (pos, &d) in g.dots.iter().enumerate() {
                            for _ in 0..d {
                                y = self.kernel.times_y(&y, pos + 1)?;
                            }
                        }
                        gens.push(y);
                    }
                }
            }
        }
        // Leaving a killed idempotent.
        for m in &dead_monomials {
            let x = KlrElement::monomial(m.clone());
            for t in 1..n {
                let mut k = m.bottom.clone();
                k.swap(t - 1, t);
                if self.alive.contains(&k) {
                    gens.push(self.kernel.times_psi(&x, t)?);
                }
            }
        }
        for g in gens {
            self.absorb(&mut blocks, g, &mut queue, &mut accepted, budget)?;
        }
        while let Some(x) = queue.pop_front() {
            for pos in 1..=n {
                let y = self.kernel.times_y(&x, pos)?;
                self.absorb(&mut blocks, y, &mut queue, &mut accepted, budget)?;
            }
            for t in 1..n {
                let y = self.kernel.times_psi(&x, t)?;
                self.absorb(&mut blocks, y, &mut queue, &mut accepted, budget)?;
            }
        }
        self.tops.insert(j.to_vec(), blocks);
        Ok(accepted)
    }

    fn absorb(
        &self,
        blocks: &mut HashMap<BlockKey, Block<F>>,
        x: KlrElement,
        queue: &mut VecDeque<KlrElement>,
        accepted: &mut usize,
        budget: usize,
    ) -> Result<()> {
        let x = self.project(&x);
        let Some((m0, _)) = x.terms.iter().next() else {
            return Ok(());
        };
        let key = (m0.degree(self.params.e), m0.bottom.clone());
        let Some(block) = blocks.get_mut(&key) else {
            return Err(Error::Invalid(format!("no block for {m0}")));
        };
        let mut v: Vec<(usize, F)> = Vec::with_capacity(x.terms.len());
        for (m, &c) in &x.terms {
            let Some(&i) = block.index.get(m) else {
                return Err(Error::Invalid(format!("monomial {m} outside its block")));
            };
            v.push((i, F::from_i64(c, self.ctx)));
        }
        v.sort_by_key(|(i, _)| *i);
        let v: SparseVec<F> = v.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if block.ech.insert(&v) {
            *accepted += 1;
            if *accepted > budget {
                return Err(Error::Budget(format!("more than {budget} relations")));
            }
            queue.push_back(x);
        }
        Ok(())
    }

    /// Drop monomials through killed idempotents or killed by the kernel's rules.
    pub fn project(&self, x: &KlrElement) -> KlrElement {
        let mut out = KlrElement::zero(x.n);
        for (m, &c) in &x.terms {
            if self.kernel.prune().kills(m) {
                continue;
            }
            if !self.alive.contains(&m.bottom) || !self.alive.contains(&m.top()) {
                continue;
            }
            out.add_term(m.clone(), c);
        }
        out
    }

    fn assign_coordinates(&mut self) {
        let mut standard = Vec::new();
        for blocks in self.tops.values_mut() {
            let mut keys: Vec<BlockKey> = blocks.keys().cloned().collect();
            keys.sort();
            for key in keys {
                let b = blocks.get_mut(&key).unwrap();
                b.coord = vec![None; b.monos.len()];
                for i in 0..b.monos.len() {
                    if !b.ech.is_pivot(i) {
                        b.coord[i] = Some(standard.len());
                        standard.push(b.monos[i].clone());
                    }
                }
            }
        }
        self.stats.dimension = standard.len();
        self.standard = standard;
    }

    pub fn params(&self) -> &AlgebraParams {
        &self.params
    }

    pub fn ctx(&self) -> F::Ctx {
        self.ctx
    }

    pub fn kernel(&self) -> &Kernel {
        &self.kernel
    }

    pub fn dim(&self) -> usize {
        self.standard.len()
    }

    pub fn stats(&self) -> &QuotientStats {
        &self.stats
    }

    pub fn dot_cap(&self) -> usize {
        self.dot_cap
    }

    pub fn is_alive(&self, j: &[Residue]) -> bool {
        self.alive.contains(j)
    }

    pub fn alive(&self) -> &HashSet<Vec<Residue>> {
        &self.alive
    }

    /// The standard monomial of a coordinate.
    pub fn standard_monomial(&self, i: usize) -> &Monomial {
        &self.standard[i]
    }

    pub fn standard_monomials(&self) -> &[Monomial] {
        &self.standard
    }

    /// Coordinates of `x` in the standard monomial basis.
    pub fn coordinates(&self, x: &KlrElement) -> Result<SparseVec<F>> {
        let x = self.project(x);
        let mut groups: BTreeMap<(Vec<Residue>, BlockKey), Vec<(usize, F)>> = BTreeMap::new();
        for (m, &c) in &x.terms {
            let top = m.top();
            let key = (m.degree(self.params.e), m.bottom.clone());
            let block = self
                .tops
                .get(&top)
                .and_then(|bs| bs.get(&key))
                .ok_or_else(|| Error::Invalid(format!("monomial {m} outside the model")))?;
            let &i = block
                .index
                .get(m)
                .ok_or_else(|| Error::Invalid(format!("monomial {m} outside the model")))?;
            groups
                .entry((top, key))
                .or_default()
                .push((i, F::from_i64(c, self.ctx)));
        }
        let mut out: Vec<(usize, F)> = Vec::new();
        for ((top, key), mut v) in groups {
            let block = &self.tops[&top][&key];
            v.sort_by_key(|(i, _)| *i);
            let r = block.ech.reduce(&v);
            for (i, c) in r {
                let g = block.coord[i].expect("reduced vector has a pivot entry");
                out.push((g, c));
            }
        }
        out.sort_by_key(|(i, _)| *i);
        Ok(out)
    }

    /// `a · b` in the kernel, projected to the model.
    pub fn multiply(&self, a: &KlrElement, b: &KlrElement) -> Result<KlrElement> {
        let x = self.kernel.multiply(&self.project(a), &self.project(b))?;
        Ok(self.project(&x))
    }

    pub fn product(&self, xs: &[&KlrElement]) -> Result<KlrElement> {
        let mut it = xs.iter();
        let first = it.next().ok_or_else(|| Error::Invalid("empty product".into()))?;
        let mut acc = self.project(first);
        for x in it {
            acc = self.multiply(&acc, x)?;
        }
        Ok(acc)
    }

    pub fn is_zero(&self, x: &KlrElement) -> Result<bool> {
        Ok(self.coordinates(x)?.is_empty())
    }

    /// Degree of a standard coordinate.
    pub fn coordinate_degree(&self, i: usize) -> i64 {
        self.standard[i].degree(self.params.e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Q;

    #[test]
    fn small_dimensions() {
        for n in 1..=3 {
            let p = AlgebraParams::level_one(4, 2, n).unwrap();
            let q = Quotient::<Q>::build(&p, (), &QuotientOptions::default()).unwrap();
            let want: usize = multipartitions_ph(&p, n)
                .iter()
                .map(|l| standard_tableaux(l).len().pow(2))
                .sum();
            assert_eq!(q.dim(), want, "n = {n}");
        }
    }

    #[test]
    fn helpers() {
        assert_eq!(perms_between(&[0, 1, 0], &[0, 0, 1]).len(), 2);
        assert_eq!(dot_vectors(3, 2).len(), 4);
    }
}
