//! Paths in the alcove geometry and the distinguished paths built from alcove words.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::combinatorics::{BoxOrder, Multipartition, Node, Tableau};
use crate::error::{Error, Result};
use crate::geometry::{Geometry, Letter, Root, Side, Weight};
use crate::params::Residue;

/// A path from the origin, stored as its 0-based steps `ε_{p(1)}, …, ε_{p(n)}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Path {
    pub steps: Vec<usize>,
}

impl Path {
    pub fn new(steps: Vec<usize>) -> Self {
        Path { steps }
    }

    pub fn empty() -> Self {
        Path { steps: Vec::new() }
    }

    /// Steps given 1-based, as written `(ε_1, ε_2, …)`.
    pub fn from_one_based(steps: &[usize]) -> Result<Self> {
        if steps.contains(&0) {
            return Err(Error::NonUnitStep);
        }
        Ok(Path::new(steps.iter().map(|s| s - 1).collect()))
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    fn check(&self, g: &Geometry) -> Result<()> {
        match self.steps.iter().find(|&&s| s >= g.h) {
            Some(&s) => Err(Error::IndexOutOfRange(s)),
            None => Ok(()),
        }
    }

    /// `P(0), …, P(n)`.
    pub fn points(&self, g: &Geometry) -> Vec<Weight> {
        let mut cur = vec![0; g.h];
        let mut out = vec![cur.clone()];
        for &s in &self.steps {
            cur[s] += 1;
            out.push(cur.clone());
        }
        out
    }

    pub fn point(&self, g: &Geometry, k: usize) -> Weight {
        let mut cur = vec![0; g.h];
        for &s in &self.steps[..k] {
            cur[s] += 1;
        }
        cur
    }

    pub fn endpoint(&self, g: &Geometry) -> Weight {
        self.point(g, self.len())
    }

    pub fn shape(&self, g: &Geometry) -> Option<Multipartition> {
        g.weight_to_multipartition(&self.endpoint(g))
    }

    /// Every point lies strictly inside the dominant chamber.
    pub fn is_dominant(&self, g: &Geometry) -> bool {
        self.points(g).iter().all(|x| g.is_dominant(x))
    }

    /// Place `k` in the first empty box of column `c_k` of component `m_k`.
    pub fn to_tableau(&self, g: &Geometry) -> Result<Tableau> {
        self.check(g)?;
        let mut filled = vec![0usize; g.h];
        let mut pos = Vec::with_capacity(self.len());
        for &s in &self.steps {
            filled[s] += 1;
            let (m, c) = g.slots[s];
            pos.push(Node::new(filled[s], c, m));
        }
        Tableau::from_positions(pos)
    }

    pub fn from_tableau(g: &Geometry, t: &Tableau) -> Result<Self> {
        let steps = t
            .positions()
            .iter()
            .map(|b| {
                g.index_of(b.comp, b.col)
                    .ok_or_else(|| Error::MissingBox(b.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Path { steps })
    }

    pub fn residues(&self, g: &Geometry) -> Result<Vec<Residue>> {
        Ok(self.to_tableau(g)?.residue_sequence(g.params()))
    }

    pub fn degree(&self, g: &Geometry) -> i64 {
        let pts = self.points(g);
        pts.windows(2).map(|w| step_degree(g, &w[0], &w[1])).sum()
    }
    /// No step changes degree against any hyperplane.
    /// No step moves off a `Π`-hyperplane towards the origin or onto one from beyond.
    pub fn is_reduced(&self, g: &Geometry) -> bool {
        let pi = g.positive_roots();
        let pts = self.points(g);
        pts.windows(2)
            .all(|w| pi.iter().all(|r| step_degree_root(g, r, &w[0], &w[1]) == 0))
    }

    /// Swap `ε_a` and `ε_b` in every step after position `s`.
    pub fn reflect_tail(&self, s: usize, root: &Root) -> Path {
        let steps = self
            .steps
            .iter()
            .enumerate()
            .map(|(k, &x)| {
                if k < s {
                    x
                } else if x == root.a {
                    root.b
                } else if x == root.b {
                    root.a
                } else {
                    x
                }
            })
            .collect();
        Path { steps }
    }

    pub fn concat(&self, other: &Path) -> Path {
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&other.steps);
        Path { steps }
    }

    pub fn power(&self, k: usize) -> Path {
        Path {
            steps: self.steps.repeat(k),
        }
    }

    /// `self ⊗_w other`: the steps of `other` transported by `w̄`.
    pub fn concat_contextual(&self, g: &Geometry, w: &[Letter], other: &Path) -> Path {
        let perm = g.finite_part(w);
        let mut steps = self.steps.clone();
        steps.extend(other.steps.iter().map(|&j| perm[j]));
        Path { steps }
    }

    /// `self ⊗ other` when the endpoint lies in a unique alcove.
    pub fn concat_auto(&self, g: &Geometry, other: &Path) -> Result<Path> {
        let w = g.alcove_of(&self.endpoint(g))?;
        Ok(self.concat_contextual(g, &w, other))
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.steps.iter().map(|x| format!("ε{}", x + 1)).collect();
        write!(f, "({})", s.join(","))
    }
}

fn step_degree_root(g: &Geometry, r: &Root, prev: &[i64], next: &[i64]) -> i64 {
    if let Some(level) = g.level_through(prev, r) {
        if g.hyperplane_side(next, r, level) == Side::Below {
            return 1;
        }
    }
    if let Some(level) = g.level_through(next, r) {
        if g.hyperplane_side(prev, r, level) == Side::Above {
            return -1;
        }
    }
    0
}

/// `d(P(k), P(k−1))`, each hyperplane counted once.
pub fn step_degree(g: &Geometry, prev: &[i64], next: &[i64]) -> i64 {
    g.positive_roots()
        .iter()
        .map(|r| step_degree_root(g, r, prev, next))
        .sum()
}

/// The dominant members of the class of `p` under wall reflections of paths.
pub fn equivalence_class(g: &Geometry, p: &Path, cap: usize) -> Result<Vec<Path>> {
    p.check(g)?;
    let roots = g.positive_roots();
    let mut seen: HashSet<Path> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(p.clone());
    queue.push_back(p.clone());
    while let Some(q) = queue.pop_front() {
        for (s, x) in q.points(g).iter().enumerate() {
            if s == q.len() {
                break;
            }
            for r in &roots {
                if g.level_through(x, r).is_none() {
                    continue;
                }
                let nq = q.reflect_tail(s, r);
                if seen.insert(nq.clone()) {
                    if seen.len() > cap {
                        return Err(Error::Budget(format!("class exceeds {cap} paths")));
                    }
                    queue.push_back(nq);
                }
            }
        }
    }
    let mut out: Vec<Path> = seen.into_iter().filter(|q| q.is_dominant(g)).collect();
    out.sort();
    Ok(out)
}

/// The member whose endpoint shape is ≻-minimal, earlier shapes breaking ties.
pub fn min_of_class(g: &Geometry, class: &[Path]) -> Option<Path> {
    let key = |p: &Path| -> Vec<crate::combinatorics::BoxConfig> {
        let t = p.to_tableau(g).expect("in range");
        (0..=p.len()).rev().map(|k| t.restrict(k).shape()).collect()
    };
    class
        .iter()
        .min_by(|a, b| {
            let (ka, kb) = (key(a), key(b));
            for (x, y) in ka.iter().zip(&kb) {
                match x.compare(y, BoxOrder::Cyl) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
        .cloned()
}

/// Building blocks of distinguished paths.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Block {
    /// `P_α`, crossing the wall `α`.
    Alpha(usize),
    /// `P_α^♭`, bouncing off the wall `α`.
    Flat(usize),
    /// `P_∅`.
    Empty,
}

impl Block {
    /// The alcove letter recording where the block ends.
    pub fn letter(&self) -> Option<Letter> {
        match self {
            Block::Alpha(t) => Some(Letter::Pi(*t)),
            _ => None,
        }
    }

    pub fn len(&self, g: &Geometry) -> Result<usize> {
        Ok(block_path(g, *self)?.len())
    }

    pub fn name(&self, g: &Geometry) -> String {
        match self {
            Block::Alpha(t) => format!("P[{}]", g.letter_name(Letter::Pi(*t))),
            Block::Flat(t) => format!("P♭[{}]", g.letter_name(Letter::Pi(*t))),
            Block::Empty => "P[∅]".into(),
        }
    }
}

fn all_but(g: &Geometry, i: usize) -> Path {
    Path::new((0..g.h).filter(|&j| j != i).collect())
}

fn pi_index(g: &Geometry, t: usize) -> Result<(usize, usize, usize)> {
    if t >= g.h {
        return Err(Error::NotSimple);
    }
    let b = g.b_distance(Letter::Pi(t))? as usize;
    Ok((t, (t + 1) % g.h, b))
}

/// `P_∅ = (ε_1, …, ε_h)`.
pub fn empty_path(g: &Geometry) -> Path {
    Path::new((0..g.h).collect())
}

/// `P_α = (ε_j : j ≠ i)^{b_α} ⊠ (ε_{i+1})^{b_α}`.
pub fn alpha_path(g: &Geometry, t: usize) -> Result<Path> {
    let (i, i1, b) = pi_index(g, t)?;
    Ok(all_but(g, i).power(b).concat(&Path::new(vec![i1; b])))
}

/// `P_α^♭ = (ε_j : j ≠ i)^{b_α} ⊠ (ε_i)^{b_α}`.
pub fn flat_path(g: &Geometry, t: usize) -> Result<Path> {
    let (i, _, b) = pi_index(g, t)?;
    Ok(all_but(g, i).power(b).concat(&Path::new(vec![i; b])))
}

/// `P_☉ = (P_∅)^{b_α}`, the path to `δ_{b_α}` with the length of `P_α`.
pub fn sun_path(g: &Geometry, t: usize) -> Result<Path> {
    let (_, _, b) = pi_index(g, t)?;
    Ok(empty_path(g).power(b))
}

pub fn block_path(g: &Geometry, b: Block) -> Result<Path> {
    match b {
        Block::Alpha(t) => alpha_path(g, t),
        Block::Flat(t) => flat_path(g, t),
        Block::Empty => Ok(empty_path(g)),
    }
}

/// `Q_1 ⊗ (Q_2 ⊗ (⋯ ⊗ Q_k))`.
pub fn concat_blocks(g: &Geometry, blocks: &[Block]) -> Result<Path> {
    let mut out = Path::empty();
    let mut word: Vec<Letter> = Vec::new();
    for b in blocks {
        out = out.concat_contextual(g, &word, &block_path(g, *b)?);
        if let Some(l) = b.letter() {
            word.push(l);
        }
    }
    Ok(out)
}

/// The distinguished path `P_w` of an enriched alcove word.
pub fn distinguished_path(g: &Geometry, w: &[Letter]) -> Result<Path> {
    let blocks: Vec<Block> = w
        .iter()
        .map(|l| match l {
            Letter::Pi(t) => Block::Alpha(*t),
            Letter::Empty => Block::Empty,
        })
        .collect();
    concat_blocks(g, &blocks)
}

/// A member of `Std_{n,σ}` with one block factorisation producing it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockPath {
    pub blocks: Vec<Block>,
    pub path: Path,
    pub shape: Multipartition,
}

/// All dominant paths of length `n` obtained by contextualised concatenation of blocks.
pub fn std_n_sigma(g: &Geometry, n: usize, cap: usize) -> Result<Vec<BlockPath>> {
    enumerate_blocks(g, n, cap, true)
}

/// Every block factorisation of length `n` with a dominant path; a path may repeat.
pub fn block_sequences(g: &Geometry, n: usize, cap: usize) -> Result<Vec<BlockPath>> {
    enumerate_blocks(g, n, cap, false)
}

fn enumerate_blocks(g: &Geometry, n: usize, cap: usize, dedup: bool) -> Result<Vec<BlockPath>> {
    let mut blocks = vec![Block::Empty];
    for t in 0..g.h {
        blocks.push(Block::Alpha(t));
        blocks.push(Block::Flat(t));
    }
    let paths: Vec<(Block, Path)> = blocks
        .iter()
        .map(|&b| Ok((b, block_path(g, b)?)))
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    let mut stack: Vec<(Vec<Block>, Vec<Letter>, Path)> = vec![(Vec::new(), Vec::new(), Path::empty())];
    while let Some((bs, word, cur)) = stack.pop() {
        if cur.len() == n {
            if !dedup || seen.insert(cur.clone()) {
                let shape = cur.shape(g).ok_or(Error::NotStandard)?;
                out.push(BlockPath {
                    blocks: bs,
                    path: cur,
                    shape,
                });
                if out.len() > cap {
                    return Err(Error::Budget(format!("more than {cap} block paths")));
                }
            }
            continue;
        }
        for (b, p) in paths.iter().rev() {
            if cur.len() + p.len() > n {
                continue;
            }
            let next = cur.concat_contextual(g, &word, p);
            let pts = next.points(g);
            if !pts[cur.len()..].iter().all(|x| g.is_dominant(x)) {
                continue;
            }
            let mut nb = bs.clone();
            nb.push(*b);
            let mut nw = word.clone();
            nw.extend(b.letter());
            stack.push((nb, nw, next));
        }
    }
    out.sort_by(|a, b| a.blocks.cmp(&b.blocks));
    Ok(out)
}

/// Distinct residue sequences of `Std_{n,σ}`: the idempotents summed in `f_{n,σ}`.
pub fn truncation_residues(g: &Geometry, n: usize, cap: usize) -> Result<Vec<Vec<Residue>>> {
    let set: BTreeSet<Vec<Residue>> = std_n_sigma(g, n, cap)?
        .iter()
        .map(|bp| bp.path.residues(g))
        .collect::<Result<_>>()?;
    Ok(set.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{multipartitions_ph, standard_tableaux, tableau_degree};
    use crate::params::AlgebraParams;

    fn geo(e: usize, sigma: Vec<i64>, h: Vec<usize>) -> Geometry {
        Geometry::new(&AlgebraParams::new(e, sigma, h, 0).unwrap()).unwrap()
    }

    #[test]
    fn blocks_level_one() {
        let g = geo(5, vec![0], vec![3]);
        let flat = flat_path(&g, 2).unwrap();
        assert_eq!(flat, Path::from_one_based(&[1, 2, 1, 2, 1, 2, 3, 3, 3]).unwrap());
        assert!(g.same_point(&flat.endpoint(&g), &[0, 0, 0]));
        let a = alpha_path(&g, 2).unwrap();
        assert_eq!(a, Path::from_one_based(&[1, 2, 1, 2, 1, 2, 1, 1, 1]).unwrap());
        let x = a.endpoint(&g);
        assert_eq!(g.alcove_of(&x).unwrap(), vec![Letter::Pi(2)]);
        assert!(a.is_dominant(&g) && flat.is_dominant(&g));
    }

    #[test]
    fn tableau_round_trip() {
        let g = geo(9, vec![0, 3, 6], vec![2, 2, 1]);
        let t = Path::from_one_based(&[1, 2, 3, 4, 5, 1, 3, 4, 5, 1, 3, 5]).unwrap();
        let tab = t.to_tableau(&g).unwrap();
        assert!(tab.is_standard());
        let lam = Multipartition::new(vec![vec![2, 1, 1], vec![2, 2, 1], vec![1, 1, 1]]).unwrap();
        assert_eq!(tab.shape(), lam.to_config());
        assert_eq!(tab, crate::combinatorics::t_lambda(&lam));
        assert_eq!(Path::from_tableau(&g, &tab).unwrap(), t);
    }

    #[test]
    fn degree_matches_tableaux() {
        for (e, sigma, h) in [
            (5, vec![0], vec![3]),
            (4, vec![0], vec![2]),
            (7, vec![0, 3], vec![2, 2]),
            (9, vec![0, 3, 6], vec![2, 2, 1]),
        ] {
            let p = AlgebraParams::new(e, sigma.clone(), h.clone(), 0).unwrap();
            let g = Geometry::new(&p).unwrap();
            for n in 0..=6 {
                for lam in multipartitions_ph(&p, n) {
                    for t in standard_tableaux(&lam) {
                        let path = Path::from_tableau(&g, &t).unwrap();
                        assert!(path.is_dominant(&g));
                        assert_eq!(
                            path.degree(&g),
                            tableau_degree(&t, BoxOrder::Cyl, &p).unwrap(),
                            "{t} e={e}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn word_shape() {
        let g = geo(5, vec![0], vec![3]);
        let w: Vec<Letter> = [2, 1, 0, 2, 1, 0].iter().map(|&t| Letter::Pi(t)).collect();
        let p = distinguished_path(&g, &w).unwrap();
        assert_eq!(p.len(), 30);
        assert!(p.is_dominant(&g));
        let lam = Multipartition::new(vec![[vec![3; 5], vec![1; 15]].concat()]).unwrap();
        assert_eq!(p.shape(&g).unwrap(), lam);
        assert!(p.is_reduced(&g));
    }
}
