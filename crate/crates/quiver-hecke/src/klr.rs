//! Elements of the quiver Hecke algebra in normal form.
//!
//! A normal monomial is `e_top · y^dots · ψ_{ĉ(π)} · e_bottom` with all dots on
//! top, `ĉ(π)` the canonical reduced word of [`perm::canonical_word`], and
//! `π` sending bottom positions to top positions. These monomials form a basis
//! of the (non-cyclotomic) algebra; the kernel rewrites any product into them.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::rc::Rc;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::{AlgebraParams, Residue};
use crate::perm;

pub type Coeff = i64;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial {
    pub dots: Vec<u8>,
    pub perm: Vec<u8>,
    pub bottom: Vec<Residue>,
}

impl Monomial {
    pub fn idempotent(iseq: &[Residue]) -> Self {
        let n = iseq.len();
        Monomial {
            dots: vec![0; n],
            perm: (0..n as u8).collect(),
            bottom: iseq.to_vec(),
        }
    }

    pub fn n(&self) -> usize {
        self.bottom.len()
    }

    pub fn top(&self) -> Vec<Residue> {
        let mut t = vec![0; self.n()];
        for (x, &r) in self.bottom.iter().enumerate() {
            t[self.perm[x] as usize] = r;
        }
        t
    }

    pub fn perm_usize(&self) -> Vec<usize> {
        self.perm.iter().map(|&x| x as usize).collect()
    }

    pub fn word(&self) -> Vec<usize> {
        perm::canonical_word(&self.perm_usize())
    }

    pub fn dot_degree(&self) -> usize {
        self.dots.iter().map(|&d| d as usize).sum()
    }

    pub fn degree(&self, e: usize) -> i64 {
        let mut d = 2 * self.dot_degree() as i64;
        let n = self.n();
        for x in 0..n {
            for y in x + 1..n {
                if self.perm[x] > self.perm[y] {
                    d += crossing_degree(self.bottom[x], self.bottom[y], e);
                }
            }
        }
        d
    }

    /// Horizontal concatenation.
    pub fn boxtimes(&self, other: &Monomial) -> Monomial {
        let m = self.n() as u8;
        let mut dots = self.dots.clone();
        dots.extend_from_slice(&other.dots);
        let mut perm = self.perm.clone();
        perm.extend(other.perm.iter().map(|&x| x + m));
        let mut bottom = self.bottom.clone();
        bottom.extend_from_slice(&other.bottom);
        Monomial { dots, perm, bottom }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, &d) in self.dots.iter().enumerate() {
            match d {
                0 => {}
                1 => write!(f, "y{} ", k + 1)?,
                _ => write!(f, "y{}^{} ", k + 1, d)?,
            }
        }
        for a in self.word() {
            write!(f, "ψ{a} ")?;
        }
        let s: Vec<String> = self.bottom.iter().map(|r| r.to_string()).collect();
        write!(f, "e({})", s.join(","))
    }
}

/// Degree of a crossing of strands with residues `a`, `b`.
pub fn crossing_degree(a: Residue, b: Residue, e: usize) -> i64 {
    let d = (a as i64 - b as i64).rem_euclid(e as i64);
    if d == 0 {
        -2
    } else if d == 1 || d == e as i64 - 1 {
        1
    } else {
        0
    }
}

/// A finite integer combination of normal monomials of a fixed rank.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct KlrElement {
    pub n: usize,
    pub terms: BTreeMap<Monomial, Coeff>,
}

impl KlrElement {
    pub fn zero(n: usize) -> Self {
        KlrElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Monomial, Coeff)>) -> Self {
        let mut out = KlrElement::zero(n);
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn monomial(m: Monomial) -> Self {
        let n = m.n();
        KlrElement::from_terms(n, [(m, 1)])
    }

    /// `e(i)`.
    pub fn idempotent(iseq: &[Residue]) -> Self {
        KlrElement::monomial(Monomial::idempotent(iseq))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: Coeff) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == 0 {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn add(&self, other: &KlrElement) -> KlrElement {
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &KlrElement) -> KlrElement {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, s: Coeff) -> KlrElement {
        KlrElement::from_terms(self.n, self.terms.iter().map(|(m, &c)| (m.clone(), c * s)))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The common degree, or `None` for zero or inhomogeneous elements.
    pub fn degree(&self, e: usize) -> Option<i64> {
        let mut it = self.terms.keys().map(|m| m.degree(e));
        let first = it.next()?;
        if it.all(|d| d == first) {
            Some(first)
        } else {
            None
        }
    }

    pub fn boxtimes(&self, other: &KlrElement) -> KlrElement {
        let mut out = KlrElement::zero(self.n + other.n);
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                out.add_term(a.boxtimes(b), ca * cb);
            }
        }
        out
    }

    /// Serialization records `(coeff, bottom, word, dots)`.
    pub fn to_records(&self) -> Vec<Record> {
        self.terms
            .iter()
            .map(|(m, &c)| Record {
                coeff: c,
                iseq: m.bottom.clone(),
                word: m.word(),
                dots: m.dots.clone(),
            })
            .collect()
    }

    pub fn display_terms(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("{c}·{m}"))
            .collect();
        parts.join(" + ")
    }
}

/// One serialized term: `coeff · y^dots ψ_word e(iseq)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub coeff: Coeff,
    pub iseq: Vec<Residue>,
    pub word: Vec<usize>,
    pub dots: Vec<u8>,
}

type Terms = Vec<(Monomial, Coeff)>;

fn accumulate(acc: &mut HashMap<Monomial, Coeff>, m: Monomial, c: Coeff) {
    if c == 0 {
        return;
    }
    let v = acc.entry(m).or_insert(0);
    *v += c;
}

fn finish(acc: HashMap<Monomial, Coeff>) -> Terms {
    let mut v: Terms = acc.into_iter().filter(|(_, c)| *c != 0).collect();
    v.sort_unstable_by(|a, b| a.0.cmp(&b.0));
    v
}

fn swap_seq(k: &[Residue], t: usize) -> Vec<Residue> {
    let mut v = k.to_vec();
    v.swap(t - 1, t);
    v
}

/// Which monomials are treated as zero.
#[derive(Clone, Default)]
pub struct Prune {
    /// `Λ(r)` per residue: `y_1^{Λ(top_1)}` vanishes.
    pub cyclotomic: Option<Vec<usize>>,
    /// Total dot degree at which monomials vanish.
    pub dot_cap: Option<usize>,
    /// Idempotents not listed vanish (on either side).
    pub allowed: Option<Arc<HashSet<Vec<Residue>>>>,
}

impl Prune {
    pub fn none() -> Self {
        Prune::default()
    }

    pub fn cyclotomic(p: &AlgebraParams) -> Self {
        Prune {
            cyclotomic: Some((0..p.e).map(|r| p.charge_count(r as Residue)).collect()),
            ..Prune::default()
        }
    }

    /// Full test: the monomial lies in the ideal described by this rule.
    pub fn kills(&self, m: &Monomial) -> bool {
        if self.kills_dots(m) {
            return true;
        }
        if self.cyclotomic.is_some() || self.allowed.is_some() {
            let top = m.top();
            if let Some(lam) = &self.cyclotomic {
                if m.n() > 0 && m.dots[0] as usize >= lam[top[0] as usize] {
                    return true;
                }
            }
            if let Some(allowed) = &self.allowed {
                if !allowed.contains(&top) || !allowed.contains(&m.bottom) {
                    return true;
                }
            }
        }
        false
    }

    /// The part of the rule that only looks at dots (never kills a dot-free monomial).
    ///
    /// Only this part is applied inside the memoised recursion: dots never
    /// migrate back into dot-free terms, so it cannot disturb leading terms.
    pub fn kills_dots(&self, m: &Monomial) -> bool {
        let deg = m.dot_degree();
        if deg == 0 {
            return false;
        }
        if let Some(cap) = self.dot_cap {
            if deg >= cap {
                return true;
            }
        }
        if let Some(lam) = &self.cyclotomic {
            if m.dots[0] > 0 {
                let top0 = m.bottom[m.perm.iter().position(|&x| x == 0).unwrap()];
                if m.dots[0] as usize >= lam[top0 as usize] {
                    return true;
                }
            }
        }
        false
    }
}

type Key = (Vec<u8>, u8, Vec<Residue>);

/// The rewriting engine: memoised right multiplication by `ψ_t` and `y_p`.
pub struct Kernel {
    e: usize,
    prune: Prune,
    rmul_memo: RefCell<HashMap<Key, Rc<Terms>>>,
    dot_memo: RefCell<HashMap<Key, Rc<Terms>>>,
    words: RefCell<HashMap<Vec<u8>, Rc<Vec<u8>>>>,
}

impl Kernel {
    /// Kernel for the free algebra `H_n` (no relations beyond R1–R5).
    pub fn new(e: usize) -> Self {
        Kernel::with_prune(e, Prune::none())
    }

    /// Kernel for the cyclotomic quotient.
    pub fn cyclotomic(p: &AlgebraParams) -> Self {
        Kernel::with_prune(p.e, Prune::cyclotomic(p))
    }

    pub fn with_prune(e: usize, prune: Prune) -> Self {
        Kernel {
            e,
            prune,
            rmul_memo: RefCell::new(HashMap::new()),
            dot_memo: RefCell::new(HashMap::new()),
            words: RefCell::new(HashMap::new()),
        }
    }

    pub fn e(&self) -> usize {
        self.e
    }

    pub fn prune(&self) -> &Prune {
        &self.prune
    }

    pub fn memo_sizes(&self) -> (usize, usize) {
        (self.rmul_memo.borrow().len(), self.dot_memo.borrow().len())
    }

    fn canon(&self, p: &[u8]) -> Rc<Vec<u8>> {
        if let Some(w) = self.words.borrow().get(p) {
            return w.clone();
        }
        let pu: Vec<usize> = p.iter().map(|&x| x as usize).collect();
        let w: Vec<u8> = perm::canonical_word(&pu).into_iter().map(|x| x as u8).collect();
        let w = Rc::new(w);
        self.words.borrow_mut().insert(p.to_vec(), w.clone());
        w
    }

    fn last_letter(&self, p: &[u8]) -> Option<usize> {
        self.canon(p).last().map(|&x| x as usize)
    }

    fn mono(&self, p: Vec<u8>, k: Vec<Residue>) -> Monomial {
        Monomial {
            dots: vec![0; k.len()],
            perm: p,
            bottom: k,
        }
    }

    fn push_mono(&self, acc: &mut HashMap<Monomial, Coeff>, p: Vec<u8>, k: Vec<Residue>, c: Coeff) {
        accumulate(acc, self.mono(p, k), c);
    }

    fn add_dots_into(&self, acc: &mut HashMap<Monomial, Coeff>, terms: &Terms, dots: &[u8], c: Coeff) {
        for (m, c2) in terms {
            let mut m = m.clone();
            for (a, b) in m.dots.iter_mut().zip(dots) {
                *a += b;
            }
            if !self.prune.kills_dots(&m) {
                accumulate(acc, m, c * c2);
            }
        }
    }

    /// `X · ψ_t` for a normal-form combination `X`.
    fn rmul_terms(&self, x: &Terms, t: usize) -> Terms {
        let mut acc = HashMap::new();
        for (m, c) in x {
            let knew = swap_seq(&m.bottom, t);
            let r = self.rmul(&m.perm, t, &knew);
            self.add_dots_into(&mut acc, &r, &m.dots, *c);
        }
        finish(acc)
    }

    /// `X · y_pos`.
    fn rdot_terms(&self, x: &Terms, pos: usize) -> Terms {
        let mut acc = HashMap::new();
        for (m, c) in x {
            let r = self.dot(&m.perm, pos, &m.bottom);
            self.add_dots_into(&mut acc, &r, &m.dots, *c);
        }
        finish(acc)
    }

    /// `NF(ψ_{ĉ(z)} ψ_{a_1} ⋯ ψ_{a_j} e_k)`.
    fn nf_word(&self, z: &[u8], letters: &[usize], k: &[Residue]) -> Terms {
        let mut b0 = k.to_vec();
        for &a in letters.iter().rev() {
            b0.swap(a - 1, a);
        }
        let mut x: Terms = vec![(self.mono(z.to_vec(), b0), 1)];
        for &a in letters {
            x = self.rmul_terms(&x, a);
        }
        x
    }

    /// Subtract the leading monomial `ψ_{ĉ(w)} e_k` from an expansion.
    fn minus_leading(&self, mut n: Terms, w: &[u8], k: &[Residue]) -> Terms {
        let lead = self.mono(w.to_vec(), k.to_vec());
        let i = n
            .iter()
            .position(|(m, _)| *m == lead)
            .expect("leading term missing from expansion");
        assert_eq!(n[i].1, 1, "leading coefficient must be one");
        n.remove(i);
        n
    }

    /// `NF(ψ_{ĉ(w)} ψ_t e_k)`; `k` is the new bottom.
    fn rmul(&self, w: &[u8], t: usize, k: &[Residue]) -> Rc<Terms> {
        let key = (w.to_vec(), t as u8, k.to_vec());
        if let Some(r) = self.rmul_memo.borrow().get(&key) {
            return r.clone();
        }
        let r = Rc::new(self.rmul_compute(w, t, k));
        self.rmul_memo.borrow_mut().insert(key, r.clone());
        r
    }

    fn rmul_compute(&self, w: &[u8], t: usize, k: &[Residue]) -> Terms {
        let mut u = w.to_vec();
        u.swap(t - 1, t);
        let k1 = swap_seq(k, t);
        let mut acc = HashMap::new();
        if w[t - 1] < w[t] {
            // Length goes up.
            let tp = self.last_letter(&u).expect("nonidentity");
            if tp == t {
                self.push_mono(&mut acc, u, k.to_vec(), 1);
                return finish(acc);
            }
            let braid = tp.abs_diff(t) == 1;
            let mut z = u.clone();
            z.swap(t - 1, t);
            z.swap(tp - 1, tp);
            if braid {
                z.swap(t - 1, t);
            }
            let (a, b): (Vec<usize>, Vec<usize>) = if braid {
                (vec![t, tp], vec![tp, t])
            } else {
                (vec![tp], vec![t])
            };
            let n = self.nf_word(&z, &a, &k1);
            let c = self.minus_leading(n, w, &k1);
            let x = self.nf_word(&z, &b, &swap_seq(k, tp));
            for (m, cf) in self.rmul_terms(&x, tp) {
                accumulate(&mut acc, m, cf);
            }
            if braid {
                let kappa = if tp == t + 1 {
                    braid_constant(k, t, self.e)
                } else {
                    -braid_constant(k, t - 1, self.e)
                };
                if kappa != 0 {
                    self.push_mono(&mut acc, z.clone(), k.to_vec(), kappa);
                }
            }
            for (m, cf) in self.rmul_terms(&c, t) {
                accumulate(&mut acc, m, -cf);
            }
        } else {
            // Length goes down: ψ_t² appears.
            if self.last_letter(w) != Some(t) {
                let n = self.rmul(&u, t, &k1);
                let c = self.minus_leading((*n).clone(), w, &k1);
                for (m, cf) in self.rmul_terms(&c, t) {
                    accumulate(&mut acc, m, -cf);
                }
            }
            self.quadratic_into(&mut acc, &u, t, k);
        }
        finish(acc)
    }

    /// Adds `ψ_{ĉ(u)} · (ψ_t² e_k)` expanded by the quadratic relation.
    fn quadratic_into(&self, acc: &mut HashMap<Monomial, Coeff>, u: &[u8], t: usize, k: &[Residue]) {
        let (a, b) = (k[t - 1] as i64, k[t] as i64);
        let e = self.e as i64;
        let d = (b - a).rem_euclid(e);
        if d == 0 {
            return;
        }
        if d == 1 || d == e - 1 {
            // d == 1: y_{t+1} - y_t ; d == e-1: y_t - y_{t+1}
            let s = if d == 1 { 1 } else { -1 };
            let hi = self.dot(u, t + 1, k);
            let lo = self.dot(u, t, k);
            for (m, c) in hi.iter() {
                accumulate(acc, m.clone(), s * c);
            }
            for (m, c) in lo.iter() {
                accumulate(acc, m.clone(), -s * c);
            }
            return;
        }
        self.push_mono(acc, u.to_vec(), k.to_vec(), 1);
    }

    /// `NF(ψ_{ĉ(w)} y_pos e_k)`.
    fn dot(&self, w: &[u8], pos: usize, k: &[Residue]) -> Rc<Terms> {
        let key = (w.to_vec(), pos as u8, k.to_vec());
        if let Some(r) = self.dot_memo.borrow().get(&key) {
            return r.clone();
        }
        let r = Rc::new(self.dot_compute(w, pos, k));
        self.dot_memo.borrow_mut().insert(key, r.clone());
        r
    }

    fn dot_compute(&self, w: &[u8], pos: usize, k: &[Residue]) -> Terms {
        let mut acc = HashMap::new();
        let Some(t) = self.last_letter(w) else {
            let mut m = Monomial::idempotent(k);
            m.dots[pos - 1] = 1;
            if !self.prune.kills_dots(&m) {
                accumulate(&mut acc, m, 1);
            }
            return finish(acc);
        };
        let mut u = w.to_vec();
        u.swap(t - 1, t);
        let k1 = swap_seq(k, t);
        let delta = if k[t - 1] == k[t] { 1 } else { 0 };
        let moved = if pos == t {
            t + 1
        } else if pos == t + 1 {
            t
        } else {
            pos
        };
        let inner = self.dot(&u, moved, &k1);
        for (m, c) in self.rmul_terms(&inner, t) {
            accumulate(&mut acc, m, c);
        }
        if delta == 1 {
            if pos == t {
                self.push_mono(&mut acc, u, k.to_vec(), -1);
            } else if pos == t + 1 {
                self.push_mono(&mut acc, u, k.to_vec(), 1);
            }
        }
        finish(acc)
    }

    fn prune_element(&self, x: &KlrElement) -> Terms {
        x.terms
            .iter()
            .filter(|(m, _)| !self.prune.kills(m))
            .map(|(m, &c)| (m.clone(), c))
            .collect()
    }

    /// Normal form of `a · b`.
    pub fn multiply(&self, a: &KlrElement, b: &KlrElement) -> Result<KlrElement> {
        if a.n != b.n {
            return Err(Error::RankMismatch(a.n, b.n));
        }
        let n = a.n;
        let mut acc = HashMap::new();
        let bs: Vec<(Monomial, Coeff, Vec<Residue>)> = b
            .terms
            .iter()
            .filter(|(m, _)| !self.prune.kills(m))
            .map(|(m, &c)| (m.clone(), c, m.top()))
            .collect();
        for (ma, &ca) in &a.terms {
            if self.prune.kills(ma) {
                continue;
            }
            for (mb, cb, top_b) in &bs {
                if *top_b != ma.bottom {
                    continue;
                }
                let x = self.mul_mono(ma, mb);
                for (m, c) in x {
                    accumulate(&mut acc, m, c * ca * cb);
                }
            }
        }
        Ok(KlrElement::from_terms(n, finish(acc)))
    }

    fn mul_mono(&self, ma: &Monomial, mb: &Monomial) -> Terms {
        let mut x: Terms = vec![(self.mono(ma.perm.clone(), ma.bottom.clone()), 1)];
        for (p, &d) in mb.dots.iter().enumerate() {
            for _ in 0..d {
                x = self.prune_terms(self.rdot_terms(&x, p + 1));
            }
        }
        for &a in self.canon(&mb.perm).iter() {
            x = self.prune_terms(self.rmul_terms(&x, a as usize));
        }
        let mut acc = HashMap::new();
        self.add_dots_into(&mut acc, &x, &ma.dots, 1);
        self.prune_terms(finish(acc))
    }

    fn prune_terms(&self, x: Terms) -> Terms {
        x.into_iter().filter(|(m, _)| !self.prune.kills(m)).collect()
    }

    /// Product of several elements, left to right.
    pub fn product(&self, xs: &[&KlrElement]) -> Result<KlrElement> {
        let mut it = xs.iter();
        let first = it.next().ok_or_else(|| Error::Invalid("empty product".into()))?;
        let mut acc = (*first).clone();
        for x in it {
            acc = self.multiply(&acc, x)?;
        }
        Ok(acc)
    }

    /// `e_top · ψ_{a_1} ⋯ ψ_{a_j}` for an arbitrary (not necessarily reduced) word;
    /// the bottom idempotent is determined by `top`.
    pub fn word_from_top(&self, top: &[Residue], word: &[usize]) -> Result<KlrElement> {
        let n = top.len();
        if word.iter().any(|&a| a == 0 || a >= n) {
            return Err(Error::IndexOutOfRange(*word.iter().max().unwrap_or(&0)));
        }
        let mut x = self.prune_element(&KlrElement::idempotent(top));
        for &a in word {
            x = self.prune_terms(self.rmul_terms(&x, a));
        }
        Ok(KlrElement::from_terms(n, x))
    }

    /// `ψ_{a_1} ⋯ ψ_{a_j} e_bottom`.
    pub fn word_from_bottom(&self, word: &[usize], bottom: &[Residue]) -> Result<KlrElement> {
        let mut top = bottom.to_vec();
        for &a in word.iter().rev() {
            if a == 0 || a >= top.len() {
                return Err(Error::IndexOutOfRange(a));
            }
            top.swap(a - 1, a);
        }
        self.word_from_top(&top, word)
    }

    /// Right multiplication of a normal-form element by `y_pos` (1-based).
    pub fn times_y(&self, x: &KlrElement, pos: usize) -> Result<KlrElement> {
        if pos == 0 || pos > x.n {
            return Err(Error::IndexOutOfRange(pos));
        }
        Ok(KlrElement::from_terms(
            x.n,
            self.prune_terms(self.rdot_terms(&self.prune_element(x), pos)),
        ))
    }

    /// Right multiplication of a normal-form element by `ψ_t`.
    pub fn times_psi(&self, x: &KlrElement, t: usize) -> Result<KlrElement> {
        if t == 0 || t >= x.n {
            return Err(Error::IndexOutOfRange(t));
        }
        Ok(KlrElement::from_terms(
            x.n,
            self.prune_terms(self.rmul_terms(&self.prune_element(x), t)),
        ))
    }

    /// Left multiplication by `y_pos`: dots sit on top, so this only bumps exponents.
    pub fn y_times(&self, pos: usize, x: &KlrElement) -> Result<KlrElement> {
        if pos == 0 || pos > x.n {
            return Err(Error::IndexOutOfRange(pos));
        }
        let mut out = KlrElement::zero(x.n);
        for (m, &c) in &x.terms {
            let mut m = m.clone();
            m.dots[pos - 1] += 1;
            if !self.prune.kills(&m) {
                out.add_term(m, c);
            }
        }
        Ok(out)
    }

    /// Rebuild an element from serialized records (words need not be canonical).
    pub fn from_records(&self, n: usize, records: &[Record]) -> Result<KlrElement> {
        let mut out = KlrElement::zero(n);
        for r in records {
            if r.iseq.len() != n || r.dots.len() != n {
                return Err(Error::RankMismatch(r.iseq.len(), n));
            }
            let x = self.word_from_bottom(&r.word, &r.iseq)?;
            let mut d = KlrElement::from_terms(n, self.prune_element(&x));
            for (p, &k) in r.dots.iter().enumerate() {
                for _ in 0..k {
                    d = self.y_times(p + 1, &d)?;
                }
            }
            out = out.add(&d.scale(r.coeff));
        }
        Ok(out)
    }

    /// The anti-involution fixing generators.
    pub fn star(&self, x: &KlrElement) -> KlrElement {
        let mut out = KlrElement::zero(x.n);
        for (m, &c) in &x.terms {
            let mut word = m.word();
            word.reverse();
            let mut t = self.prune_element(&KlrElement::idempotent(&m.bottom));
            for &a in &word {
                t = self.prune_terms(self.rmul_terms(&t, a));
            }
            for (p, &d) in m.dots.iter().enumerate() {
                for _ in 0..d {
                    t = self.prune_terms(self.rdot_terms(&t, p + 1));
                }
            }
            for (mm, cc) in t {
                out.add_term(mm, c * cc);
            }
        }
        out
    }

    /// Drop monomials the pruning rule treats as zero.
    pub fn reduce(&self, x: &KlrElement) -> KlrElement {
        KlrElement::from_terms(x.n, self.prune_element(x))
    }
}

/// The constant in `ψ_rψ_{r+1}ψ_r e_k = ψ_{r+1}ψ_rψ_{r+1} e_k + c`.
pub fn braid_constant(k: &[Residue], r: usize, e: usize) -> Coeff {
    let (a, b, c) = (k[r - 1] as i64, k[r] as i64, k[r + 1] as i64);
    if a != c {
        return 0;
    }
    let e = e as i64;
    if a == (b + 1).rem_euclid(e) {
        -1
    } else if a == (b - 1).rem_euclid(e) {
        1
    } else {
        0
    }
}

/// Every residue sequence of length `n`.
pub fn all_sequences(n: usize, e: usize) -> Vec<Vec<Residue>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(out.len() * e);
        for s in &out {
            for r in 0..e {
                let mut v = s.clone();
                v.push(r as Residue);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// Unframed generators summed over all idempotents (feasible for small `e^n`).
pub mod generators {
    use super::*;

    pub fn one(n: usize, e: usize) -> KlrElement {
        let mut out = KlrElement::zero(n);
        for s in all_sequences(n, e) {
            out.add_term(Monomial::idempotent(&s), 1);
        }
        out
    }

    pub fn e(iseq: &[Residue]) -> KlrElement {
        KlrElement::idempotent(iseq)
    }

    /// `y_k e(i)`.
    pub fn y_e(k: usize, iseq: &[Residue]) -> Result<KlrElement> {
        if k == 0 || k > iseq.len() {
            return Err(Error::IndexOutOfRange(k));
        }
        let mut m = Monomial::idempotent(iseq);
        m.dots[k - 1] = 1;
        Ok(KlrElement::monomial(m))
    }

    /// `ψ_r e(i)`.
    pub fn psi_e(r: usize, iseq: &[Residue]) -> Result<KlrElement> {
        let n = iseq.len();
        if r == 0 || r >= n {
            return Err(Error::IndexOutOfRange(r));
        }
        let mut perm: Vec<u8> = (0..n as u8).collect();
        perm.swap(r - 1, r);
        Ok(KlrElement::monomial(Monomial {
            dots: vec![0; n],
            perm,
            bottom: iseq.to_vec(),
        }))
    }

    pub fn y(k: usize, n: usize, e: usize) -> Result<KlrElement> {
        let mut out = KlrElement::zero(n);
        for s in all_sequences(n, e) {
            out = out.add(&y_e(k, &s)?);
        }
        Ok(out)
    }

    pub fn psi(r: usize, n: usize, e: usize) -> Result<KlrElement> {
        let mut out = KlrElement::zero(n);
        for s in all_sequences(n, e) {
            out = out.add(&psi_e(r, &s)?);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::generators::*;
    use super::*;

    #[test]
    fn quadratic_relations() {
        let k = Kernel::new(5);
        let i = [0u8, 0, 3];
        let p = psi_e(1, &i).unwrap();
        assert!(k.multiply(&p, &p).unwrap().is_zero());
        let i = [0u8, 1, 3];
        let sq = k.word_from_bottom(&[1, 1], &i).unwrap();
        let want = y_e(2, &i).unwrap().sub(&y_e(1, &i).unwrap());
        assert_eq!(sq, want);
        let i = [0u8, 2, 3];
        assert_eq!(k.word_from_bottom(&[1, 1], &i).unwrap(), e(&i));
    }

    #[test]
    fn dot_slide() {
        let k = Kernel::new(5);
        let i = [2u8, 2];
        let lhs = k.multiply(&y_e(2, &i).unwrap(), &psi_e(1, &i).unwrap()).unwrap();
        let rhs = k
            .multiply(&psi_e(1, &i).unwrap(), &y_e(1, &i).unwrap())
            .unwrap()
            .add(&e(&i));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn braid_with_constant() {
        let k = Kernel::new(5);
        let i = [1u8, 0, 1];
        let lhs = k.word_from_bottom(&[1, 2, 1], &i).unwrap();
        let rhs = k.word_from_bottom(&[2, 1, 2], &i).unwrap().sub(&e(&i));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn cyclotomic_pruning() {
        let p = AlgebraParams::level_one(5, 2, 2).unwrap();
        let k = Kernel::cyclotomic(&p);
        assert!(k.reduce(&e(&[1, 0])).is_zero());
        assert!(k.reduce(&y_e(1, &[0, 1]).unwrap()).is_zero());
        assert!(!k.reduce(&e(&[0, 1])).is_zero());
    }

    #[test]
    fn degrees() {
        assert_eq!(y_e(1, &[0, 1]).unwrap().degree(5), Some(2));
        assert_eq!(psi_e(1, &[0, 0]).unwrap().degree(5), Some(-2));
        assert_eq!(psi_e(1, &[0, 1]).unwrap().degree(5), Some(1));
        assert_eq!(psi_e(1, &[0, 2]).unwrap().degree(5), Some(0));
    }
}
