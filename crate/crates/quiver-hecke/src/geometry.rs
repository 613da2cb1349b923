//! Alcove geometry: weights, roots, the ρ-shifted affine Weyl action, walls and alcoves.
//!
//! Coordinates are indexed `0..h` with index `H_{m-1} + c - 1` standing for
//! `ε_{c,m}`. Hyperplanes are `⟨x + ρ, α⟩ = re`; the shift is
//! `ρ_{c,m} = -σ_m - c`, so that `x` lies on `E(ε_a − ε_b, re)` exactly
//! when the addable boxes of columns `a` and `b` share a residue.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::combinatorics::Multipartition;
use crate::error::{Error, Result};
use crate::params::AlgebraParams;

pub type Weight = Vec<i64>;

/// `ε_a − ε_b` (0-based indices).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Root {
    pub a: usize,
    pub b: usize,
}

impl Root {
    pub fn new(a: usize, b: usize) -> Self {
        assert_ne!(a, b, "a root needs two distinct indices");
        Root { a, b }
    }

    pub fn pair(&self, x: &[i64]) -> i64 {
        x[self.a] - x[self.b]
    }

    pub fn negate(&self) -> Root {
        Root { a: self.b, b: self.a }
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ε{}−ε{}", self.a + 1, self.b + 1)
    }
}

/// `s_{α, re}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineReflection {
    pub root: Root,
    pub r: i64,
}

/// A letter of an enriched alcove word: a colour in `Π` (index `t`, with
/// `t = h − 1` the affine root `α_0`) or the explicit identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Letter {
    Pi(usize),
    Empty,
}

pub type AlcoveWord = Vec<Letter>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    Below,
    On,
    Above,
}

/// An affine map `y ↦ P y + e·shift` on ρ-shifted coordinates, with `(P y)_{perm[i]} = y_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct AffineMap {
    perm: Vec<usize>,
    shift: Vec<i64>,
}

impl AffineMap {
    fn identity(h: usize) -> Self {
        AffineMap {
            perm: (0..h).collect(),
            shift: vec![0; h],
        }
    }

    fn reflection(s: &AffineReflection, h: usize) -> Self {
        let mut m = AffineMap::identity(h);
        m.perm.swap(s.root.a, s.root.b);
        m.shift[s.root.a] += s.r;
        m.shift[s.root.b] -= s.r;
        m
    }

    fn apply(&self, y: &[i64], e: i64) -> Vec<i64> {
        let mut out = vec![0; y.len()];
        for (i, &v) in y.iter().enumerate() {
            out[self.perm[i]] = v;
        }
        for (o, s) in out.iter_mut().zip(&self.shift) {
            *o += e * s;
        }
        out
    }

    /// `self ∘ other`.
    fn compose(&self, other: &AffineMap) -> AffineMap {
        let perm: Vec<usize> = other.perm.iter().map(|&j| self.perm[j]).collect();
        let mut shift = vec![0; self.shift.len()];
        for (i, &s) in other.shift.iter().enumerate() {
            shift[self.perm[i]] += s;
        }
        for (i, s) in self.shift.iter().enumerate() {
            shift[i] += s;
        }
        AffineMap { perm, shift }
    }

    /// Image of the hyperplane `⟨y, α⟩ = re`.
    fn map_hyperplane(&self, root: Root, r: i64) -> (Root, i64) {
        let beta = Root::new(self.perm[root.a], self.perm[root.b]);
        (beta, r + self.shift[beta.a] - self.shift[beta.b])
    }
}

/// The geometry attached to a set of parameters (requires `e > h`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Geometry {
    pub e: i64,
    pub h: usize,
    pub rho: Vec<i64>,
    /// `(component, column)` of each coordinate, column 1-based.
    pub slots: Vec<(usize, usize)>,
    params: AlgebraParams,
}

impl Geometry {
    pub fn new(p: &AlgebraParams) -> Result<Self> {
        p.validate()?;
        let h = p.total_h();
        if !p.geometric() {
            return Err(Error::InvalidParams(format!(
                "the geometry needs e > h (e = {}, h = {h})",
                p.e
            )));
        }
        let mut rho = Vec::with_capacity(h);
        let mut slots = Vec::with_capacity(h);
        for m in 0..p.ell() {
            for c in 1..=p.h[m] {
                rho.push(-p.sigma[m] - c as i64);
                slots.push((m, c));
            }
        }
        Ok(Geometry {
            e: p.e as i64,
            h,
            rho,
            slots,
            params: p.clone(),
        })
    }

    pub fn params(&self) -> &AlgebraParams {
        &self.params
    }

    /// Coordinate of `ε_{c,m}` (column `c` 1-based).
    pub fn index_of(&self, comp: usize, col: usize) -> Option<usize> {
        self.slots.iter().position(|&s| s == (comp, col))
    }

    pub fn unit(&self, i: usize) -> Weight {
        let mut v = vec![0; self.h];
        v[i] = 1;
        v
    }

    /// Column lengths of the first `h_m` columns of each component.
    pub fn embed(&self, lam: &Multipartition) -> Weight {
        self.slots
            .iter()
            .map(|&(m, c)| lam.column_lengths(m).get(c - 1).copied().unwrap_or(0) as i64)
            .collect()
    }

    /// The multipartition with the given column lengths, if they are weakly decreasing.
    pub fn weight_to_multipartition(&self, x: &[i64]) -> Option<Multipartition> {
        let mut parts = Vec::new();
        for m in 0..self.params.ell() {
            let cols: Vec<i64> = (0..self.h)
                .filter(|&i| self.slots[i].0 == m)
                .map(|i| x[i])
                .collect();
            if cols.iter().any(|&c| c < 0) || cols.windows(2).any(|w| w[0] < w[1]) {
                return None;
            }
            let rows = cols.first().copied().unwrap_or(0) as usize;
            let part: Vec<usize> = (0..rows)
                .map(|r| cols.iter().filter(|&&c| c as usize > r).count())
                .collect();
            parts.push(part);
        }
        Multipartition::new(parts).ok()
    }

    pub fn shifted(&self, x: &[i64]) -> Vec<i64> {
        x.iter().zip(&self.rho).map(|(a, b)| a + b).collect()
    }

    fn unshift(&self, y: &[i64]) -> Weight {
        y.iter().zip(&self.rho).map(|(a, b)| a - b).collect()
    }

    /// All roots `ε_a − ε_b`, `a ≠ b`.
    pub fn roots(&self) -> Vec<Root> {
        let mut out = Vec::new();
        for a in 0..self.h {
            for b in 0..self.h {
                if a != b {
                    out.push(Root::new(a, b));
                }
            }
        }
        out
    }

    /// One root per hyperplane direction: `a < b`.
    pub fn positive_roots(&self) -> Vec<Root> {
        let mut out = Vec::new();
        for a in 0..self.h {
            for b in a + 1..self.h {
                out.push(Root::new(a, b));
            }
        }
        out
    }

    /// Roots inside one component.
    pub fn finite_roots(&self) -> Vec<Root> {
        self.roots()
            .into_iter()
            .filter(|r| self.slots[r.a].0 == self.slots[r.b].0)
            .collect()
    }

    pub fn simple_roots(&self) -> Vec<Root> {
        (0..self.h.saturating_sub(1)).map(|t| Root::new(t, t + 1)).collect()
    }

    pub fn alpha0(&self) -> Root {
        Root::new(self.h - 1, 0)
    }

    /// `Π = Δ ∪ {α_0}`, indexed so that `Letter::Pi(t)` is `pi()[t]`.
    pub fn pi(&self) -> Vec<Root> {
        let mut v = self.simple_roots();
        v.push(self.alpha0());
        v
    }

    pub fn is_simple_or_affine(&self, r: &Root) -> bool {
        self.pi().contains(r)
    }

    /// The generator `s_t ∈ S`: `s_{α,0}` for `α ∈ Δ`, `s_{α_0, −e}` for the affine root.
    pub fn reflection_of(&self, l: Letter) -> Option<AffineReflection> {
        match l {
            Letter::Empty => None,
            Letter::Pi(t) if t + 1 < self.h => Some(AffineReflection {
                root: Root::new(t, t + 1),
                r: 0,
            }),
            Letter::Pi(_) => Some(AffineReflection {
                root: self.alpha0(),
                r: -1,
            }),
        }
    }

    pub fn letter_of_root(&self, r: &Root) -> Option<Letter> {
        self.pi().iter().position(|x| x == r || *x == r.negate()).map(Letter::Pi)
    }

    /// `s_{α,re} · x`.
    pub fn reflect(&self, s: &AffineReflection, x: &[i64]) -> Weight {
        let y = self.shifted(x);
        let v = s.root.pair(&y) - s.r * self.e;
        let mut out = y;
        out[s.root.a] -= v;
        out[s.root.b] += v;
        self.unshift(&out)
    }

    fn word_map(&self, w: &[Letter]) -> AffineMap {
        let mut m = AffineMap::identity(self.h);
        for &l in w {
            if let Some(s) = self.reflection_of(l) {
                m = m.compose(&AffineMap::reflection(&s, self.h));
            }
        }
        m
    }

    /// `w · x` for `w = s_1 ⋯ s_k` (rightmost letter acts first).
    pub fn dot_word(&self, w: &[Letter], x: &[i64]) -> Weight {
        let m = self.word_map(w);
        self.unshift(&m.apply(&self.shifted(x), self.e))
    }

    /// The finite permutation `w̄` of coordinates: `ε_i ↦ ε_{w̄(i)}`.
    pub fn finite_part(&self, w: &[Letter]) -> Vec<usize> {
        self.word_map(w).perm
    }

    pub fn hyperplane_side(&self, x: &[i64], root: &Root, r: i64) -> Side {
        let v = root.pair(&self.shifted(x)) - r * self.e;
        let o = root.pair(&self.rho) - r * self.e;
        debug_assert!(o != 0, "origin on a hyperplane");
        if v == 0 {
            Side::On
        } else if (v > 0) == (o > 0) {
            Side::Below
        } else {
            Side::Above
        }
    }

    /// Levels `r` with `x ∈ E(α, re)`.
    pub fn level_through(&self, x: &[i64], root: &Root) -> Option<i64> {
        let v = root.pair(&self.shifted(x));
        (v.rem_euclid(self.e) == 0).then(|| v / self.e)
    }

    pub fn is_regular_weight(&self, x: &[i64]) -> bool {
        self.positive_roots()
            .iter()
            .all(|r| self.level_through(x, r).is_none())
    }

    pub fn is_regular(&self, lam: &Multipartition) -> bool {
        self.is_regular_weight(&self.embed(lam))
    }

    /// Strictly inside the dominant chamber.
    pub fn is_dominant(&self, x: &[i64]) -> bool {
        let y = self.shifted(x);
        (0..self.h).all(|a| {
            (a + 1..self.h).all(|b| self.slots[a].0 != self.slots[b].0 || y[a] > y[b])
        })
    }

    /// Equal in the quotient by the all-ones vector.
    pub fn same_point(&self, x: &[i64], y: &[i64]) -> bool {
        let d: Vec<i64> = x.iter().zip(y).map(|(a, b)| a - b).collect();
        d.windows(2).all(|w| w[0] == w[1])
    }

    /// `b_α` from the case formulas.
    pub fn b_distance(&self, l: Letter) -> Result<i64> {
        let p = &self.params;
        let t = match l {
            Letter::Empty => return Ok(1),
            Letter::Pi(t) if t < self.h => t,
            Letter::Pi(_) => return Err(Error::NotSimple),
        };
        if t + 1 == self.h {
            let last = p.ell() - 1;
            return Ok(self.e + p.sigma[0] - p.sigma[last] - p.h[last] as i64 + 1);
        }
        let (m, _) = self.slots[t];
        let (m2, _) = self.slots[t + 1];
        if m == m2 {
            Ok(1)
        } else {
            Ok(p.sigma[m2] - p.sigma[m] - p.h[m] as i64 + 1)
        }
    }

    /// `b_α` measured directly: the distance from the origin to the wall of `A_0`.
    pub fn wall_distance(&self, l: Letter) -> Option<i64> {
        let s = self.reflection_of(l)?;
        Some((s.root.pair(&self.rho) - s.r * self.e).abs())
    }

    /// A reduced word `w` with `x ∈ w A_0`, by crossing walls of `A_0` back towards it.
    pub fn alcove_of(&self, x: &[i64]) -> Result<AlcoveWord> {
        if !self.is_regular_weight(x) {
            return Err(Error::NotRegularDominant);
        }
        let mut cur = x.to_vec();
        let mut word = Vec::new();
        for _ in 0..10_000 {
            let far = (0..self.h).find(|&t| {
                let s = self.reflection_of(Letter::Pi(t)).unwrap();
                self.hyperplane_side(&cur, &s.root, s.r) == Side::Above
            });
            match far {
                None => return Ok(word),
                Some(t) => {
                    let s = self.reflection_of(Letter::Pi(t)).unwrap();
                    cur = self.reflect(&s, &cur);
                    word.push(Letter::Pi(t));
                }
            }
        }
        Err(Error::Budget("more than 10^4 wall crossings".into()))
    }

    /// Walls of `w A_0` as `(colour, root, level)`.
    pub fn walls_of(&self, w: &[Letter]) -> Vec<(Letter, Root, i64)> {
        let m = self.word_map(w);
        (0..self.h)
            .map(|t| {
                let s = self.reflection_of(Letter::Pi(t)).unwrap();
                let (root, r) = m.map_hyperplane(s.root, s.r);
                (Letter::Pi(t), root, r)
            })
            .collect()
    }

    /// Reduced after deleting identity letters: the word's alcove is at its length.
    pub fn is_reduced_word(&self, w: &[Letter]) -> bool {
        let core: Vec<Letter> = w.iter().copied().filter(|l| *l != Letter::Empty).collect();
        let x = self.dot_word(&core, &vec![0; self.h]);
        self.alcove_of(&x).map(|v| v.len() == core.len()).unwrap_or(false)
    }

    pub fn letter_name(&self, l: Letter) -> String {
        match l {
            Letter::Empty => "∅".into(),
            Letter::Pi(t) => match self.reflection_of(l) {
                Some(s) if t + 1 == self.h => format!("{}", s.root),
                Some(s) => format!("{}", s.root),
                None => "?".into(),
            },
        }
    }
}

/// Compare two weights by their ρ-shifted pairing with a root.
pub fn compare_on(root: &Root, x: &[i64], y: &[i64]) -> Ordering {
    root.pair(x).cmp(&root.pair(y))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(e: usize, sigma: Vec<i64>, h: Vec<usize>) -> Geometry {
        Geometry::new(&AlgebraParams::new(e, sigma, h, 0).unwrap()).unwrap()
    }

    #[test]
    fn b_values() {
        let g1 = g(5, vec![0], vec![3]);
        let b: Vec<i64> = (0..3).map(|t| g1.b_distance(Letter::Pi(t)).unwrap()).collect();
        assert_eq!(b, vec![1, 1, 3]);
        assert_eq!(g1.b_distance(Letter::Empty).unwrap(), 1);
        let g2 = g(7, vec![0, 3], vec![2, 2]);
        assert_eq!(g2.b_distance(Letter::Pi(3)).unwrap(), 3);
        assert_eq!(g2.b_distance(Letter::Pi(1)).unwrap(), 2);
        for gg in [&g1, &g2] {
            for t in 0..gg.h {
                assert_eq!(gg.wall_distance(Letter::Pi(t)), gg.b_distance(Letter::Pi(t)).ok());
            }
        }
    }

    #[test]
    fn origin_inside() {
        let gg = g(7, vec![0, 3], vec![2, 2]);
        let z = vec![0; 4];
        assert!(gg.is_dominant(&z) && gg.is_regular_weight(&z));
        assert!(gg.alcove_of(&z).unwrap().is_empty());
        for t in 0..4 {
            let s = gg.reflection_of(Letter::Pi(t)).unwrap();
            assert_eq!(gg.hyperplane_side(&z, &s.root, s.r), Side::Below);
            let x = gg.reflect(&s, &z);
            assert_eq!(gg.hyperplane_side(&x, &s.root, s.r), Side::Above);
            assert_eq!(gg.reflect(&s, &x), z);
            assert_eq!(gg.alcove_of(&x).unwrap(), vec![Letter::Pi(t)]);
        }
    }

    #[test]
    fn walls_of_origin() {
        let gg = g(5, vec![0], vec![3]);
        let w = gg.walls_of(&[]);
        assert_eq!(w[2], (Letter::Pi(2), Root::new(2, 0), -1));
    }
}
