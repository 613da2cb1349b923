//! Exact sparse linear algebra over `Q` and `F_p`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    type Ctx: Copy + fmt::Debug + Send + Sync + PartialEq;
    fn from_i64(x: i64, ctx: Self::Ctx) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Panics on zero.
    fn inv(&self) -> Self;
    fn ctx(&self) -> Self::Ctx;
    /// Integer value when the element is one (exact or canonical representative).
    fn to_i64(&self) -> Option<i64>;
}

/// Exact rationals.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Q(pub BigRational);

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Field for Q {
    type Ctx = ();
    fn from_i64(x: i64, _: ()) -> Self {
        Q(BigRational::from_integer(BigInt::from(x)))
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        Q(&self.0 + &o.0)
    }
    fn sub(&self, o: &Self) -> Self {
        Q(&self.0 - &o.0)
    }
    fn mul(&self, o: &Self) -> Self {
        Q(&self.0 * &o.0)
    }
    fn neg(&self) -> Self {
        Q(-&self.0)
    }
    fn inv(&self) -> Self {
        assert!(!self.0.is_zero(), "inverse of zero");
        Q(self.0.recip())
    }
    fn ctx(&self) {}
    fn to_i64(&self) -> Option<i64> {
        if self.0.is_integer() {
            self.0.to_integer().to_i64()
        } else {
            None
        }
    }
}

impl Q {
    pub fn is_unit_integer(&self) -> bool {
        self.0.is_integer() && self.0.abs().is_one()
    }
}

/// Integers modulo a prime `p < 2^32`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Fp {
    pub v: u64,
    pub p: u64,
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl Field for Fp {
    type Ctx = u64;
    fn from_i64(x: i64, p: u64) -> Self {
        Fp {
            v: x.rem_euclid(p as i64) as u64,
            p,
        }
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn add(&self, o: &Self) -> Self {
        Fp {
            v: (self.v + o.v) % self.p,
            p: self.p,
        }
    }
    fn sub(&self, o: &Self) -> Self {
        Fp {
            v: (self.v + self.p - o.v) % self.p,
            p: self.p,
        }
    }
    fn mul(&self, o: &Self) -> Self {
        Fp {
            v: (self.v * o.v) % self.p,
            p: self.p,
        }
    }
    fn neg(&self) -> Self {
        Fp {
            v: (self.p - self.v) % self.p,
            p: self.p,
        }
    }
    fn inv(&self) -> Self {
        assert!(self.v != 0, "inverse of zero");
        let mut r = 1u64;
        let mut b = self.v;
        let mut e = self.p - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % self.p;
            }
            b = b * b % self.p;
            e >>= 1;
        }
        Fp { v: r, p: self.p }
    }
    fn ctx(&self) -> u64 {
        self.p
    }
    fn to_i64(&self) -> Option<i64> {
        let v = self.v as i64;
        Some(if v > (self.p / 2) as i64 { v - self.p as i64 } else { v })
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Sparse vector: strictly increasing indices, nonzero entries.
pub type SparseVec<F> = Vec<(usize, F)>;

pub fn sparse_from_map<F: Field>(m: BTreeMap<usize, F>) -> SparseVec<F> {
    m.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

pub fn sparse_from_i64<F: Field>(entries: &[(usize, i64)], ctx: F::Ctx) -> SparseVec<F> {
    let mut m: BTreeMap<usize, F> = BTreeMap::new();
    for &(i, c) in entries {
        let x = F::from_i64(c, ctx);
        let slot = m.entry(i).or_insert_with(|| F::from_i64(0, ctx));
        *slot = slot.add(&x);
    }
    sparse_from_map(m)
}

/// `a + s·b`.
pub fn axpy<F: Field>(a: &SparseVec<F>, s: &F, b: &SparseVec<F>) -> SparseVec<F> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            let v = s.mul(&b[j].1);
            if !v.is_zero() {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = a[i].1.add(&s.mul(&b[j].1));
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale<F: Field>(a: &SparseVec<F>, s: &F) -> SparseVec<F> {
    a.iter()
        .map(|(i, v)| (*i, v.mul(s)))
        .filter(|(_, v)| !v.is_zero())
        .collect()
}

/// Semi-echelon form: each row is normalised to 1 at its leading index.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    rows: Vec<SparseVec<F>>,
    pivot_row: HashMap<usize, usize>,
}

impl<F: Field> Default for Echelon<F> {
    fn default() -> Self {
        Echelon {
            rows: Vec::new(),
            pivot_row: HashMap::new(),
        }
    }
}

impl<F: Field> Echelon<F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row.contains_key(&col)
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivot_row.keys().copied()
    }

    /// Remove every pivot index from `v`.
    pub fn reduce(&self, v: &SparseVec<F>) -> SparseVec<F> {
        if self.rows.is_empty() {
            return v.clone();
        }
        let mut cur = v.clone();
        let mut pos = 0;
        while pos < cur.len() {
            let (col, coef) = (cur[pos].0, cur[pos].1.clone());
            if let Some(&r) = self.pivot_row.get(&col) {
                cur = axpy(&cur, &coef.neg(), &self.rows[r]);
                // cur[pos] is gone; entries before pos are untouched.
            } else {
                pos += 1;
            }
        }
        cur
    }

    /// Insert after reduction; returns whether the rank grew.
    pub fn insert(&mut self, v: &SparseVec<F>) -> bool {
        let r = self.reduce(v);
        if r.is_empty() {
            return false;
        }
        let inv = r[0].1.inv();
        let r = scale(&r, &inv);
        self.pivot_row.insert(r[0].0, self.rows.len());
        self.rows.push(r);
        true
    }
}

/// Echelon form that remembers how each row combines the inserted vectors.
#[derive(Clone, Debug)]
pub struct Solver<F: Field> {
    ctx: F::Ctx,
    rows: Vec<(SparseVec<F>, SparseVec<F>)>,
    pivot_row: HashMap<usize, usize>,
    inserted: usize,
    dependent: Vec<usize>,
}

impl<F: Field> Solver<F> {
    pub fn new(ctx: F::Ctx) -> Self {
        Solver {
            ctx,
            rows: Vec::new(),
            pivot_row: HashMap::new(),
            inserted: 0,
            dependent: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Labels (insertion indices) of vectors that were dependent on earlier ones.
    pub fn dependent(&self) -> &[usize] {
        &self.dependent
    }

    fn reduce_tracked(&self, v: &SparseVec<F>, combo: SparseVec<F>) -> (SparseVec<F>, SparseVec<F>) {
        let mut cur = v.clone();
        let mut comb = combo;
        let mut pos = 0;
        while pos < cur.len() {
            let (col, coef) = (cur[pos].0, cur[pos].1.clone());
            if let Some(&r) = self.pivot_row.get(&col) {
                let neg = coef.neg();
                cur = axpy(&cur, &neg, &self.rows[r].0);
                comb = axpy(&comb, &neg, &self.rows[r].1);
            } else {
                pos += 1;
            }
        }
        (cur, comb)
    }

    /// Insert the next basis vector (label = insertion count); returns whether independent.
    pub fn insert(&mut self, v: &SparseVec<F>) -> bool {
        let label = self.inserted;
        self.inserted += 1;
        let (r, c) = self.reduce_tracked(v, vec![(label, F::from_i64(1, self.ctx))]);
        if r.is_empty() {
            self.dependent.push(label);
            return false;
        }
        let inv = r[0].1.inv();
        let r = scale(&r, &inv);
        let c = scale(&c, &inv);
        self.pivot_row.insert(r[0].0, self.rows.len());
        self.rows.push((r, c));
        true
    }

    /// Coefficients `c` with `Σ c_label · v_label = x`, if `x` is in the span.
    pub fn solve(&self, x: &SparseVec<F>) -> Option<SparseVec<F>> {
        let (r, c) = self.reduce_tracked(x, Vec::new());
        if !r.is_empty() {
            return None;
        }
        // x - Σ rows·coef = 0 and the tracked combo is minus the expression.
        Some(scale(&c, &F::from_i64(-1, self.ctx)))
    }
}

/// Rank of a set of sparse vectors.
pub fn rank<F: Field>(vs: &[SparseVec<F>]) -> usize {
    let mut e = Echelon::new();
    for v in vs {
        e.insert(v);
    }
    e.rank()
}

/// Dense integer matrix helpers.
pub fn dense_rank<F: Field>(m: &[Vec<i64>], ctx: F::Ctx) -> usize {
    let vs: Vec<SparseVec<F>> = m
        .iter()
        .map(|row| {
            let e: Vec<(usize, i64)> = row.iter().copied().enumerate().filter(|(_, x)| *x != 0).collect();
            sparse_from_i64(&e, ctx)
        })
        .collect();
    rank(&vs)
}

/// Determinant over any field.
pub fn determinant_field<F: Field>(m: &[Vec<F>], ctx: F::Ctx) -> F {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = F::from_i64(1, ctx);
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return F::from_i64(0, ctx);
        };
        if p != c {
            a.swap(p, c);
            det = det.neg();
        }
        det = det.mul(&a[c][c]);
        let inv = a[c][c].inv();
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = a[r][c].mul(&inv);
            for k in c..n {
                let t = f.mul(&a[c][k]);
                a[r][k] = a[r][k].sub(&t);
            }
        }
    }
    det
}

/// Determinant of a square integer matrix, computed over `Q`.
pub fn determinant(m: &[Vec<i64>]) -> BigRational {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
        .collect();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= a[c][c].clone();
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &a[c][c];
            for k in c..n {
                let t = &f * &a[c][k];
                a[r][k] -= t;
            }
        }
    }
    det
}
